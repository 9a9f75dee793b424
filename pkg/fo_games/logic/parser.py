# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
"""Concrete formula syntax.

``!`` binds tightest, then ``&``, ``|``, ``->`` (right associative) and ``<->``.
Quantifiers ``forall x, y. e``, ``exists x. e``, counting ``exists>=2 x. e`` and
second-order ``forall B/2. e`` extend as far right as possible.
"""

from __future__ import annotations

from typing import Iterable, Optional

import pyparsing as pp

from fo_games.exceptions import FormulaParseError
from fo_games.logic.formula import (
    FALSE,
    RESERVED_PREFIX,
    TRUE,
    And,
    Atom,
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
    Var,
)

pp.ParserElement.enable_packrat()

KEYWORDS = ("forall", "exists", "true", "false")

FORALL = pp.Keyword("forall")
EXISTS = pp.Keyword("exists")
TRUE_KW = pp.Keyword("true")
FALSE_KW = pp.Keyword("false")
INTEGER = pp.Word(pp.nums).set_parse_action(lambda toks: int(toks[0]))
COMMENT = pp.python_style_comment


def _check_identifier(text: str, loc: int, toks: pp.ParseResults) -> str:
    name = toks[0]
    if name.startswith(RESERVED_PREFIX):
        raise pp.ParseFatalException(text, loc, f"identifier {name!r} uses the reserved prefix {RESERVED_PREFIX!r}")
    return name


IDENTIFIER = (
    ~(FORALL | EXISTS | TRUE_KW | FALSE_KW) + pp.Regex(r"[A-Za-z_][A-Za-z0-9_]*'*").set_parse_action(_check_identifier)
).set_name("identifier")


def _fold_right(kind: str, operands: list) -> Formula:
    result = operands[-1]
    for operand in reversed(operands[:-1]):
        if kind == "->":
            result = Or((Not(operand), result))
        else:
            result = And((Or((Not(operand), result)), Or((Not(result), operand))))
    return result


def _binary(toks: pp.ParseResults) -> Formula:
    group = list(toks[0])
    operator = group[1]
    operands = group[::2]
    if operator == "&":
        return And(tuple(operands))
    if operator == "|":
        return Or(tuple(operands))
    if operator == "->":
        return _fold_right("->", operands)
    result = operands[0]
    for operand in operands[1:]:
        result = And((Or((Not(result), operand)), Or((Not(operand), result))))
    return result


def _negation(toks: pp.ParseResults) -> Formula:
    return Not(toks[0][1])


def _atom(toks: pp.ParseResults) -> Formula:
    return Atom(toks[0], tuple(Var(arg) for arg in toks[1:]))


def _equality(toks: pp.ParseResults) -> Formula:
    left, operator, right = toks
    formula = Eq(Var(left), Var(right))
    return Not(formula) if operator == "!=" else formula


def _fo_quantifier(toks: pp.ParseResults) -> Formula:
    kind = Forall if toks[0] == "forall" else Exists
    return kind(tuple(toks[1:-1]), toks[-1])


def _so_quantifier(toks: pp.ParseResults) -> Formula:
    kind = SOForall if toks[0] == "forall" else SOExists
    return kind(toks[1], toks[2], toks[3])


def _count_quantifier(toks: pp.ParseResults) -> Formula:
    return CountExists(toks[1], toks[2], toks[3])


class _FurthestFailure:
    """Deepest operand failure of the last parse, reported instead of the enclosing alternative."""

    def __init__(self) -> None:
        self.error: Optional[pp.ParseBaseException] = None

    def reset(self) -> None:
        self.error = None

    def __call__(self, text: str, loc: int, expr: pp.ParserElement, error: pp.ParseBaseException) -> None:
        if self.error is None or error.loc > self.error.loc:
            self.error = error


FURTHEST_FAILURE = _FurthestFailure()


def build_formula_grammar() -> pp.ParserElement:
    expression = pp.Forward().set_name("formula")
    dot = pp.Suppress(".")
    comma = pp.Suppress(",")

    term = IDENTIFIER.copy()
    arguments = pp.Suppress("(") + pp.Optional(term + pp.ZeroOrMore(comma + term)) + pp.Suppress(")")
    atom = (IDENTIFIER + pp.Optional(arguments)).set_parse_action(_atom)
    equality = (term + (pp.Literal("!=") | pp.Literal("=")) + term).set_parse_action(_equality)

    variables = IDENTIFIER + pp.ZeroOrMore(comma + IDENTIFIER)
    count_quantifier = (EXISTS + pp.Suppress(">=") + INTEGER + IDENTIFIER + dot + expression).set_parse_action(
        _count_quantifier,
    )
    so_quantifier = ((FORALL | EXISTS) + IDENTIFIER + pp.Suppress("/") + INTEGER + dot + expression).set_parse_action(
        _so_quantifier,
    )
    fo_quantifier = ((FORALL | EXISTS) + variables + dot + expression).set_parse_action(_fo_quantifier)
    constant = TRUE_KW.copy().set_parse_action(lambda: TRUE) | FALSE_KW.copy().set_parse_action(lambda: FALSE)

    operand = (count_quantifier | so_quantifier | fo_quantifier | constant | equality | atom).set_name("operand")
    operand.set_fail_action(FURTHEST_FAILURE)
    expression <<= pp.infix_notation(
        operand,
        [
            (pp.Literal("!") + ~pp.FollowedBy("="), 1, pp.OpAssoc.RIGHT, _negation),
            ("&", 2, pp.OpAssoc.LEFT, _binary),
            ("|", 2, pp.OpAssoc.LEFT, _binary),
            ("->", 2, pp.OpAssoc.RIGHT, _binary),
            ("<->", 2, pp.OpAssoc.LEFT, _binary),
        ],
    )
    expression.ignore(COMMENT)
    return expression


FORMULA = build_formula_grammar()


def bind_constants(formula: Formula, constants: Iterable[str]) -> Formula:
    """Turn free variables named like a constant into :obj:`Const` terms."""
    names = frozenset(constants)
    if not names:
        return formula
    return _bind(formula, names)


def _bind_term(term, names: frozenset):
    if isinstance(term, Var) and term.name in names:
        return Const(term.name)
    return term


def _bind(formula: Formula, names: frozenset) -> Formula:  # noqa: WPS212
    if isinstance(formula, Atom):
        return Atom(formula.pred, tuple(_bind_term(arg, names) for arg in formula.args))
    if isinstance(formula, Eq):
        return Eq(_bind_term(formula.left, names), _bind_term(formula.right, names))
    if isinstance(formula, Not):
        return Not(_bind(formula.body, names))
    if isinstance(formula, And):
        return And(tuple(_bind(item, names) for item in formula.items))
    if isinstance(formula, Or):
        return Or(tuple(_bind(item, names) for item in formula.items))
    if isinstance(formula, (Forall, Exists)):
        return type(formula)(formula.vars, _bind(formula.body, names - set(formula.vars)))
    if isinstance(formula, CountExists):
        return CountExists(formula.threshold, formula.var, _bind(formula.body, names - {formula.var}))
    if isinstance(formula, (SOForall, SOExists)):
        return type(formula)(formula.pred, formula.arity, _bind(formula.body, names))
    return formula


def raise_parse_error(error: pp.ParseBaseException):
    furthest = FURTHEST_FAILURE.error
    if furthest is not None and furthest.pstr == error.pstr and furthest.loc > error.loc:
        error = furthest
    raise FormulaParseError(error.msg, line=error.lineno, column=error.col) from error


def parse_formula(text: str, constants: Iterable[str] = ()) -> Formula:
    """Parse a formula; free identifiers listed in ``constants`` become constants.

    Examples
    --------

    >>> from fo_games.logic import parse_formula
    >>> parse_formula("forall x. P(x, c)", constants=["c"]).to_text()
    'forall x. P(x, c)'
    >>> parse_formula("forall _x. P(_x)")
    Traceback (most recent call last):
        ...
    fo_games.exceptions.FormulaParseError: line 1, column 8: identifier '_x' uses the reserved prefix '_'
    """
    FURTHEST_FAILURE.reset()
    try:
        result = FORMULA.parse_string(text, parse_all=True)
    except pp.ParseBaseException as e:
        raise_parse_error(e)
    return bind_constants(result[0], constants)
