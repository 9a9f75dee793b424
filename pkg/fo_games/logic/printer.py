# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
from __future__ import annotations

from typing import Dict, Optional

from fo_games.logic.formula import (
    RESERVED_PREFIX,
    And,
    Atom,
    Bottom,
    Const,
    CountExists,
    Eq,
    Exists,
    Forall,
    Formula,
    Not,
    Or,
    SOExists,
    SOForall,
    Term,
    Top,
    Var,
    subformulas,
)

# binding strength, higher binds tighter
_OR = 1
_AND = 2
_NOT = 3
_ATOM = 4


def _term(term: Term, names: Dict[str, str]) -> str:
    if isinstance(term, Var):
        return names.get(term.name, term.name)
    return term.name


def _render(formula: Formula, names: Dict[str, str]) -> tuple[str, int]:  # noqa: WPS212, WPS231
    if isinstance(formula, Top):
        return "true", _ATOM
    if isinstance(formula, Bottom):
        return "false", _ATOM
    if isinstance(formula, Atom):
        if not formula.args:
            return formula.pred, _ATOM
        args = ", ".join(_term(arg, names) for arg in formula.args)
        return f"{formula.pred}({args})", _ATOM
    if isinstance(formula, Eq):
        return f"{_term(formula.left, names)} = {_term(formula.right, names)}", _ATOM
    if isinstance(formula, Not):
        if isinstance(formula.body, Eq):
            body = formula.body
            return f"{_term(body.left, names)} != {_term(body.right, names)}", _ATOM
        return f"!{_operand(formula.body, names, _NOT)}", _NOT
    if isinstance(formula, And):
        return " & ".join(_operand(item, names, _AND + 1) for item in formula.items), _AND
    if isinstance(formula, Or):
        return " | ".join(_operand(item, names, _OR + 1) for item in formula.items), _OR
    if isinstance(formula, (Forall, Exists)):
        keyword = "forall" if isinstance(formula, Forall) else "exists"
        variables = ", ".join(names.get(var, var) for var in formula.vars)
        return f"{keyword} {variables}. {_render(formula.body, names)[0]}", 0
    if isinstance(formula, CountExists):
        var = names.get(formula.var, formula.var)
        return f"exists>={formula.threshold} {var}. {_render(formula.body, names)[0]}", 0
    if isinstance(formula, (SOForall, SOExists)):
        keyword = "forall" if isinstance(formula, SOForall) else "exists"
        return f"{keyword} {formula.pred}/{formula.arity}. {_render(formula.body, names)[0]}", 0
    raise TypeError(f"Unknown formula node {formula!r}")


def _operand(formula: Formula, names: Dict[str, str], strength: int) -> str:
    text, own = _render(formula, names)
    if own < strength:
        return f"({text})"
    return text


def _readable_names(formula: Formula) -> Dict[str, str]:
    used: set[str] = set()
    reserved: list[str] = []
    for sub in subformulas(formula):
        candidates: list[str] = []
        if isinstance(sub, (Forall, Exists)):
            candidates.extend(sub.vars)
        elif isinstance(sub, CountExists):
            candidates.append(sub.var)
        elif isinstance(sub, Atom):
            candidates.extend(arg.name for arg in sub.args if isinstance(arg, Var))
        elif isinstance(sub, Eq):
            candidates.extend(term.name for term in (sub.left, sub.right) if isinstance(term, Var))
        for name in candidates:
            if name.startswith(RESERVED_PREFIX):
                if name not in reserved:
                    reserved.append(name)
            else:
                used.add(name)
        if isinstance(sub, Atom):
            used.add(sub.pred)
            used.update(arg.name for arg in sub.args if isinstance(arg, Const))

    names: Dict[str, str] = {}
    counter = 0
    for name in reserved:
        counter += 1
        while f"v{counter}" in used:
            counter += 1
        names[name] = f"v{counter}"
    return names


def print_formula(formula: Formula, names: Optional[Dict[str, str]] = None) -> str:
    """Render a formula in the concrete syntax accepted by :obj:`parse_formula`.

    Variables with the reserved prefix are given readable names not used elsewhere in the formula.

    Examples
    --------

    >>> from fo_games.logic import parse_formula, print_formula
    >>> print_formula(parse_formula("forall x, p, r. !(Conf(x, p) & Read(x, p, r))"))
    'forall x, p, r. !(Conf(x, p) & Read(x, p, r))'
    >>> print_formula(parse_formula("a -> b"))
    '!a | b'
    """
    if names is None:
        names = _readable_names(formula)
    return _render(formula, names)[0]


def raw_text(formula: Formula) -> str:
    """Text with variable names exactly as stored, used for ordering."""
    return _render(formula, {})[0]
