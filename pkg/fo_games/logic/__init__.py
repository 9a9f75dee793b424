# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
from fo_games.logic.evaluate import all_relations, evaluate
from fo_games.logic.formula import (
    FALSE,
    TRUE,
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
    atom,
    atoms,
    conj,
    constants,
    count_exists,
    disj,
    eq,
    exists,
    forall,
    fresh_name,
    has_so_quantifier,
    iff,
    implies,
    is_literal,
    is_quantifier_free,
    neg,
    neq,
    predicates,
    size,
    so_exists,
    so_forall,
    subformulas,
)
from fo_games.logic.grounding import (
    Grounder,
    GroundModel,
    bounded_sat,
    bounded_valid,
    equivalent_bounded,
    satisfiable_at,
)
from fo_games.logic.parser import parse_formula
from fo_games.logic.printer import print_formula
from fo_games.logic.simplify import (
    canonical_form,
    condense,
    condense_clause,
    simplify,
    universal_clauses,
)
from fo_games.logic.transform import (
    Lambda,
    PrenexCNF,
    apply_substitution,
    cnf_clauses,
    expand_counting,
    free_vars,
    instantiate,
    is_universal,
    rename_apart,
    substitute_predicate,
    substitute_terms,
    to_nnf,
    to_prenex,
    to_prenex_cnf,
)

__all__ = [
    "FALSE",
    "TRUE",
    "And",
    "Atom",
    "Bottom",
    "Const",
    "CountExists",
    "Eq",
    "Exists",
    "Forall",
    "Formula",
    "GroundModel",
    "Grounder",
    "Lambda",
    "Not",
    "Or",
    "PrenexCNF",
    "SOExists",
    "SOForall",
    "Term",
    "Top",
    "Var",
    "all_relations",
    "apply_substitution",
    "atom",
    "atoms",
    "bounded_sat",
    "bounded_valid",
    "canonical_form",
    "condense",
    "condense_clause",
    "cnf_clauses",
    "conj",
    "constants",
    "count_exists",
    "disj",
    "eq",
    "equivalent_bounded",
    "evaluate",
    "exists",
    "expand_counting",
    "forall",
    "free_vars",
    "fresh_name",
    "has_so_quantifier",
    "iff",
    "implies",
    "instantiate",
    "is_literal",
    "is_quantifier_free",
    "is_universal",
    "neg",
    "neq",
    "parse_formula",
    "predicates",
    "print_formula",
    "rename_apart",
    "satisfiable_at",
    "simplify",
    "size",
    "so_exists",
    "so_forall",
    "subformulas",
    "substitute_predicate",
    "substitute_terms",
    "to_nnf",
    "to_prenex",
    "to_prenex_cnf",
    "universal_clauses",
]
