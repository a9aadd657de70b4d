"""Abstract syntax for the truth language.

The language is first-order arithmetic (zero, successor, addition,
multiplication, equality) extended by a unary truth predicate T, a stock
of decidable code predicates, and function symbols for primitive
recursive operations on codes.  Connectives are negation, conjunction
and the universal quantifier; other connectives are surface notation
handled by the parser.

All values are immutable; every helper here is a pure function.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Union

# ---------------------------------------------------------------------------
# terms


@dataclass(frozen=True)
class Var:
    """Object variable v_i."""

    index: int


@dataclass(frozen=True)
class Num:
    """Canonical numeral with value n.

    Numerals are stored compressed: Num(0) is the constant zero and
    Num(n) stands for the n-fold successor of zero.  Numerals of Goedel
    codes are astronomically large, so successor chains are never
    materialised; use suc() to apply successor.
    """

    value: int


@dataclass(frozen=True)
class Suc:
    # the suc() factory folds successors of numerals; raw Suc trees over
    # Num are still legal terms, just not the preferred spelling
    arg: "Term"


@dataclass(frozen=True)
class Add:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Mul:
    left: "Term"
    right: "Term"


# function symbols for operations on codes, with arities
CODE_OP_ARITY: dict[str, int] = {
    "neg": 1,   # code of phi to code of !phi
    "and": 2,   # codes of phi, psi to code of (phi & psi)
    "all": 2,   # code of a variable, code of phi to code of forall v phi
    "tr": 1,    # code of a term t to code of T(t)
    "eq": 2,    # codes of terms s, t to code of s = t
    "num": 1,   # value n to code of the numeral for n
    "sub": 3,   # expression code, term code, variable code: substitution
    "val": 1,   # code of a closed term to its value
}


@dataclass(frozen=True)
class CodeOp:
    """A code-operation function symbol applied to argument terms."""

    kind: str
    args: tuple["Term", ...]

    def __post_init__(self) -> None:
        arity = CODE_OP_ARITY.get(self.kind)
        if arity is None:
            raise ValueError(f"unknown code operation {self.kind!r}")
        if len(self.args) != arity:
            raise ValueError(
                f"code operation {self.kind!r} expects {arity} arguments, "
                f"got {len(self.args)}"
            )


Term = Union[Var, Num, Suc, Add, Mul, CodeOp]
TERM_TYPES = (Var, Num, Suc, Add, Mul, CodeOp)


def suc(t: "Term") -> "Term":
    """Successor with numeral folding."""
    if isinstance(t, Num):
        return Num(t.value + 1)
    return Suc(t)


# ---------------------------------------------------------------------------
# formulas


@dataclass(frozen=True)
class Equal:
    left: Term
    right: Term


@dataclass(frozen=True)
class Tr:
    """The truth predicate applied to a term."""

    arg: Term


_FIXED_DEF_ATOMS: dict[str, int] = {
    "Sent": 1,
    "ClTerm": 1,
    "Var": 1,
    "Eq": 1,
    "Ver": 1,
    "Ord": 1,
    "Prec": 2,
}


def def_atom_arity(name: str) -> Optional[int]:
    """Arity of a defined-predicate name, or None if unknown.

    Fml_n and FmlPA_n are unbounded families indexed by a decimal n.
    """
    if name in _FIXED_DEF_ATOMS:
        return _FIXED_DEF_ATOMS[name]
    for prefix in ("FmlPA_", "Fml_"):
        if name.startswith(prefix):
            digits = name[len(prefix):]
            if digits.isdigit() and (digits == "0" or digits[0] != "0"):
                return 1
            return None
    return None


@dataclass(frozen=True)
class DefAtom:
    """Atom built from a decidable code predicate.

    These predicates are decidable on closed arguments and treated
    schematically on open ones; they are never expanded to primitive
    arithmetic.
    """

    name: str
    args: tuple[Term, ...]

    def __post_init__(self) -> None:
        arity = def_atom_arity(self.name)
        if arity is None:
            raise ValueError(f"unknown defined predicate {self.name!r}")
        if len(self.args) != arity:
            raise ValueError(
                f"predicate {self.name!r} expects {arity} arguments, "
                f"got {len(self.args)}"
            )


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class All:
    """Universal quantification over the variable with the given index."""

    var: int
    body: "Formula"


Formula = Union[Equal, Tr, DefAtom, Not, And, All]
FORMULA_TYPES = (Equal, Tr, DefAtom, Not, And, All)

Expr = Union[Term, Formula]


# ---------------------------------------------------------------------------
# structural queries


def is_term(e: Expr) -> bool:
    return isinstance(e, TERM_TYPES)


def is_formula(e: Expr) -> bool:
    return isinstance(e, FORMULA_TYPES)


def is_atom(phi: Formula) -> bool:
    return isinstance(phi, (Equal, Tr, DefAtom))


def is_literal(phi: Formula) -> bool:
    """Atomic or the negation of an atomic formula."""
    if is_atom(phi):
        return True
    return isinstance(phi, Not) and is_atom(phi.body)


def literal_atom(phi: Formula) -> Formula:
    """The atom underlying a literal."""
    if is_atom(phi):
        return phi
    if isinstance(phi, Not) and is_atom(phi.body):
        return phi.body
    raise ValueError(f"not a literal: {show(phi)}")


def is_t_free(phi: Formula) -> bool:
    """True when the truth predicate does not occur in phi.

    Defined code predicates count as arithmetic: they abbreviate
    formulas of the base language, so a formula built from them is
    still T-free.
    """
    if isinstance(phi, Tr):
        return False
    if isinstance(phi, DefAtom):
        return True
    if isinstance(phi, Equal):
        return True
    if isinstance(phi, Not):
        return is_t_free(phi.body)
    if isinstance(phi, And):
        return is_t_free(phi.left) and is_t_free(phi.right)
    if isinstance(phi, All):
        return is_t_free(phi.body)
    raise TypeError(f"not a formula: {phi!r}")


def free_vars(e: Expr) -> frozenset[int]:
    """Free variable indices of a term or formula."""
    if isinstance(e, Var):
        return frozenset((e.index,))
    if isinstance(e, Num):
        return frozenset()
    if isinstance(e, Suc):
        return free_vars(e.arg)
    if isinstance(e, (Add, Mul)):
        return free_vars(e.left) | free_vars(e.right)
    if isinstance(e, CodeOp):
        out: frozenset[int] = frozenset()
        for a in e.args:
            out |= free_vars(a)
        return out
    if isinstance(e, Equal):
        return free_vars(e.left) | free_vars(e.right)
    if isinstance(e, Tr):
        return free_vars(e.arg)
    if isinstance(e, DefAtom):
        out = frozenset()
        for a in e.args:
            out |= free_vars(a)
        return out
    if isinstance(e, Not):
        return free_vars(e.body)
    if isinstance(e, And):
        return free_vars(e.left) | free_vars(e.right)
    if isinstance(e, All):
        return free_vars(e.body) - {e.var}
    raise TypeError(f"not an expression: {e!r}")


def all_vars(e: Expr) -> frozenset[int]:
    """Every variable index occurring in e, free or bound."""
    if isinstance(e, Var):
        return frozenset((e.index,))
    if isinstance(e, Num):
        return frozenset()
    if isinstance(e, Suc):
        return all_vars(e.arg)
    if isinstance(e, (Add, Mul)):
        return all_vars(e.left) | all_vars(e.right)
    if isinstance(e, (CodeOp, DefAtom)):
        out: frozenset[int] = frozenset()
        for a in e.args:
            out |= all_vars(a)
        return out
    if isinstance(e, Equal):
        return all_vars(e.left) | all_vars(e.right)
    if isinstance(e, Tr):
        return all_vars(e.arg)
    if isinstance(e, Not):
        return all_vars(e.body)
    if isinstance(e, And):
        return all_vars(e.left) | all_vars(e.right)
    if isinstance(e, All):
        return all_vars(e.body) | {e.var}
    raise TypeError(f"not an expression: {e!r}")


def closed(e: Expr) -> bool:
    return not free_vars(e)


def fresh_var(avoid: Iterable[int]) -> int:
    """Smallest variable index not in avoid."""
    taken = set(avoid)
    i = 0
    while i in taken:
        i += 1
    return i


# ---------------------------------------------------------------------------
# substitution


def subst_term(t: Term, mapping: Mapping[int, Term]) -> Term:
    if isinstance(t, Var):
        return mapping.get(t.index, t)
    if isinstance(t, Num):
        return t
    if isinstance(t, Suc):
        # substitution is syntactically strict: S over a numeral stays S
        return Suc(subst_term(t.arg, mapping))
    if isinstance(t, Add):
        return Add(subst_term(t.left, mapping), subst_term(t.right, mapping))
    if isinstance(t, Mul):
        return Mul(subst_term(t.left, mapping), subst_term(t.right, mapping))
    if isinstance(t, CodeOp):
        return CodeOp(t.kind, tuple(subst_term(a, mapping) for a in t.args))
    raise TypeError(f"not a term: {t!r}")


def subst_formula(phi: Formula, mapping: Mapping[int, Term]) -> Formula:
    """Capture-avoiding simultaneous substitution."""
    if isinstance(phi, Equal):
        return Equal(subst_term(phi.left, mapping), subst_term(phi.right, mapping))
    if isinstance(phi, Tr):
        return Tr(subst_term(phi.arg, mapping))
    if isinstance(phi, DefAtom):
        return DefAtom(phi.name, tuple(subst_term(a, mapping) for a in phi.args))
    if isinstance(phi, Not):
        return Not(subst_formula(phi.body, mapping))
    if isinstance(phi, And):
        return And(subst_formula(phi.left, mapping), subst_formula(phi.right, mapping))
    if isinstance(phi, All):
        body_free = free_vars(phi.body)
        live = {
            k: t for k, t in mapping.items() if k != phi.var and k in body_free
        }
        if not live:
            return phi
        v = phi.var
        body = phi.body
        incoming: set[int] = set()
        for t in live.values():
            incoming |= free_vars(t)
        if v in incoming:
            # bound variable would capture; rename it first
            v2 = fresh_var(incoming | body_free | set(live))
            body = subst_formula(body, {v: Var(v2)})
            v = v2
        return All(v, subst_formula(body, live))
    raise TypeError(f"not a formula: {phi!r}")


def substitute(e: Expr, t: Term, v: int):
    """e with t substituted for every free occurrence of variable v."""
    if is_term(e):
        return subst_term(e, {v: t})
    return subst_formula(e, {v: t})


# ---------------------------------------------------------------------------
# positive complexity

def positive_complexity(phi: Formula) -> int:
    """Measure driving cut reduction.

    Literals sit at 0; each connective layer that some rule can unfold
    adds 1, with negated conjunctions counted through their de Morgan
    components.
    """
    if is_atom(phi):
        return 0
    if isinstance(phi, And):
        return max(positive_complexity(phi.left), positive_complexity(phi.right)) + 1
    if isinstance(phi, All):
        return positive_complexity(phi.body) + 1
    if isinstance(phi, Not):
        body = phi.body
        if is_atom(body):
            return 0
        if isinstance(body, Not):
            return positive_complexity(body.body) + 1
        if isinstance(body, And):
            return max(
                positive_complexity(Not(body.left)),
                positive_complexity(Not(body.right)),
            ) + 1
        if isinstance(body, All):
            return positive_complexity(Not(body.body)) + 1
    raise TypeError(f"not a formula: {phi!r}")


def formula_size(phi: Formula) -> int:
    """Number of connective and atom nodes; numerals count 1."""
    if is_atom(phi):
        return 1
    if isinstance(phi, Not):
        return formula_size(phi.body) + 1
    if isinstance(phi, And):
        return formula_size(phi.left) + formula_size(phi.right) + 1
    if isinstance(phi, All):
        return formula_size(phi.body) + 1
    raise TypeError(f"not a formula: {phi!r}")


def universal_closure(phi: Formula) -> Formula:
    for v in sorted(free_vars(phi), reverse=True):
        phi = All(v, phi)
    return phi


# ---------------------------------------------------------------------------
# printing; the parser reverses this exactly


def show_term(t: Term) -> str:
    if isinstance(t, Var):
        return f"v{t.index}"
    if isinstance(t, Num):
        return str(t.value)
    if isinstance(t, Suc):
        return f"S({show_term(t.arg)})"
    if isinstance(t, Add):
        return f"({show_term(t.left)} + {show_term(t.right)})"
    if isinstance(t, Mul):
        return f"({show_term(t.left)} * {show_term(t.right)})"
    if isinstance(t, CodeOp):
        args = ",".join(show_term(a) for a in t.args)
        if t.kind in ("num", "sub", "val"):
            return f"{t.kind}({args})"
        return f"{t.kind}.({args})"
    raise TypeError(f"not a term: {t!r}")


def show_formula(phi: Formula) -> str:
    if isinstance(phi, Equal):
        return f"{show_term(phi.left)} = {show_term(phi.right)}"
    if isinstance(phi, Tr):
        return f"T({show_term(phi.arg)})"
    if isinstance(phi, DefAtom):
        args = ",".join(show_term(a) for a in phi.args)
        return f"{phi.name}({args})"
    if isinstance(phi, Not):
        body = phi.body
        # equalities get parens so the negation scope stays visible;
        # conjunctions already print their own parens
        if isinstance(body, Equal):
            return f"!({show_formula(body)})"
        return f"!{show_formula(body)}"
    if isinstance(phi, And):
        return f"({show_formula(phi.left)} & {show_formula(phi.right)})"
    if isinstance(phi, All):
        return f"forall v{phi.var} {show_formula(phi.body)}"
    raise TypeError(f"not a formula: {phi!r}")


def show(e: Expr) -> str:
    if is_term(e):
        return show_term(e)
    return show_formula(e)
