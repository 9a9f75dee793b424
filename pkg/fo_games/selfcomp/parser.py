# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
"""Noninterference specification format.

.. code-block:: text

    observer a;
    secret A2 declass !Conf(a, y2);
    admissible 1: Conf, Assign;

A secret without ``declass`` discloses nothing. ``admissible`` blocks are optional; when
none is given the admissible predicates are computed.
"""

from __future__ import annotations

import logging
from typing import Dict, List, Optional

import pyparsing as pp

try:
    from pydantic.v1 import ValidationError
except (ImportError, AttributeError):
    from pydantic import ValidationError  # type: ignore[no-redef, assignment]

from fo_games.exceptions import GameSemanticError
from fo_games.game.parser import NODE, SEMI
from fo_games.logic import Formula
from fo_games.logic.parser import COMMENT, FORMULA, FURTHEST_FAILURE, IDENTIFIER, raise_parse_error
from fo_games.selfcomp.models import NiSpec

log = logging.getLogger(__name__)


def build_ni_grammar() -> pp.ParserElement:
    observer = pp.Group(pp.Keyword("observer") + IDENTIFIER + SEMI)
    declass = pp.Optional(pp.Suppress(pp.Keyword("declass")) + FORMULA, default="")
    secret = pp.Group(pp.Keyword("secret") + IDENTIFIER + declass + SEMI)
    admissible = pp.Group(
        pp.Keyword("admissible")
        + NODE
        + pp.Suppress(":")
        + pp.Group(pp.Optional(pp.DelimitedList(IDENTIFIER)))
        + SEMI,
    )
    grammar = pp.ZeroOrMore(observer | secret | admissible)
    grammar.ignore(COMMENT)
    return grammar


NI_SPEC = build_ni_grammar()


def parse_ni_spec(text: str) -> NiSpec:
    """Parse a noninterference specification.

    Examples
    --------

    >>> from fo_games.selfcomp import parse_ni_spec
    >>> spec = parse_ni_spec("observer a; secret A2 declass !Conf(a, y2); admissible 1: Conf, Assign;")
    >>> spec.observer, spec.secrets["A2"].to_text(), spec.admissible["1"]
    ('a', '!Conf(a, y2)', ('Conf', 'Assign'))
    >>> parse_ni_spec("secret A2; secret A2;")
    Traceback (most recent call last):
        ...
    fo_games.exceptions.GameSemanticError: Secret 'A2' declared twice
    """
    FURTHEST_FAILURE.reset()
    try:
        statements = NI_SPEC.parse_string(text, parse_all=True)
    except pp.ParseBaseException as e:
        raise_parse_error(e)

    observers: List[str] = []
    secrets: Dict[str, Optional[Formula]] = {}
    admissible: Dict[str, List[str]] = {}
    for statement in statements:
        kind, *toks = statement
        if kind == "observer":
            observers.append(toks[0])
        elif kind == "secret":
            name, formula = toks
            formula = formula if isinstance(formula, Formula) else None
            if name in secrets:
                raise GameSemanticError(f"Secret {name!r} declared twice")
            secrets[name] = formula
        else:
            node, preds = toks
            admissible.setdefault(node, []).extend(preds)

    if len(observers) > 1:
        raise GameSemanticError(f"Several observers declared: {observers}")
    try:
        spec = NiSpec(
            observer=observers[0] if observers else "a",
            secrets=secrets,
            admissible=admissible or None,
        )
    except ValidationError as e:
        raise GameSemanticError(str(e.errors()[0]["msg"])) from e
    log.debug("|Parser| NI spec for observer %r with secrets %s", spec.observer, sorted(spec.secrets))
    return spec
