"""Sequent calculi over partial and classical valuation schemes, with truth.

A sequent is a pair of finite formula sets.  A derivation is a finite tree
whose nodes carry a rule identifier, explicit metavariable bindings, and the
sequent they conclude.  The checker verifies the bindings; it never searches
for them, so it stays a small auditable kernel.  Initial sequents are the one
exception: their instantiations are recovered from the sequent itself by a
bounded scan (that scan is also exposed as match_axiom).

The registry covers three families:

* pure logics FDE, CL, K3, LP, KS3 and their identity extensions ("=");
* classical truth theories KF, KF_cs, KF_cp, KF_S, each with full,
  restricted ("-restr"), internal ("-int"), or internal-restricted
  induction;
* their partial counterparts PKF, PKF_cs, PKF_cp, PKF_S, each plain,
  with restricted induction, or extended by transfinite induction below
  epsilon_0 ("-plus").

Canonical system keys are lower-case kebab strings such as "ks3-eq" or
"kf-cs-int"; normalize_name accepts the usual typeset spellings ("KS3=",
"KF_cs^int", "PKF+") as aliases.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Mapping, Optional, Sequence, Union

from .coding import eval_closed_atom, decode_formula
from .coding import (
    certify_clterm,
    certify_eq,
    certify_fml,
    certify_sent,
    certify_var,
)
from .ordinals import decode_notation
from .syntax import (
    All,
    And,
    CodeOp,
    DefAtom,
    Equal,
    Formula,
    Not,
    Num,
    Suc,
    Term,
    Tr,
    Var,
    FORMULA_TYPES,
    TERM_TYPES,
    closed,
    free_vars,
    is_atom,
    is_literal,
    is_t_free,
    positive_complexity,
    show,
    substitute,
)
from .coding import term_value


# ---------------------------------------------------------------------------
# sequents and derivations


@dataclass(frozen=True)
class Sequent:
    """Antecedent and succedent, each a finite set of formulas."""

    ant: frozenset
    suc: frozenset

    def formulas(self) -> frozenset:
        return self.ant | self.suc


def sequent(ant: Iterable[Formula] = (), suc: Iterable[Formula] = ()) -> Sequent:
    return Sequent(frozenset(ant), frozenset(suc))


def sequent_free_vars(s: Sequent) -> frozenset:
    out: frozenset = frozenset()
    for f in s.formulas():
        out |= free_vars(f)
    return out


def show_sequent(s: Sequent) -> str:
    # sorted by printed form so output is deterministic
    left = ", ".join(sorted(show(f) for f in s.ant))
    right = ", ".join(sorted(show(f) for f in s.suc))
    return f"{left} => {right}".strip()


@dataclass
class Node:
    """One derivation node: rule id, conclusion, premises, bindings.

    Axiom leaves use an axiom id and no premises.  Binding values are
    formulas, terms, or variable indices, keyed by the schema's
    metavariable names.
    """

    rule: str
    sequent: Sequent
    premises: tuple = ()
    bindings: dict = field(default_factory=dict)


def node(rule: str, seq: Sequent, premises: Sequence[Node] = (), **bindings) -> Node:
    return Node(rule, seq, tuple(premises), dict(bindings))


def height(d: Node) -> int:
    h = 0
    stack = [(d, 0)]
    while stack:
        n, depth = stack.pop()
        if not n.premises:
            h = max(h, depth)
        for p in n.premises:
            stack.append((p, depth + 1))
    return h


def _cut_formula_rank(n: Node) -> int:
    phi = n.bindings.get("phi")
    if isinstance(phi, FORMULA_TYPES):
        return positive_complexity(phi)
    return 0


def cut_rank(d: Node) -> int:
    """Supremum of the ranks of the cut formulas; 0 when cut free."""
    rank = 0
    stack = [d]
    while stack:
        n = stack.pop()
        if n.rule == "cut":
            rank = max(rank, _cut_formula_rank(n))
        stack.extend(n.premises)
    return rank


def rule_histogram(d: Node) -> dict:
    hist: Counter = Counter()
    stack = [d]
    while stack:
        n = stack.pop()
        hist[n.rule] += 1
        stack.extend(n.premises)
    return dict(hist)


def iter_nodes(d: Node) -> Iterator[tuple]:
    """Yield (path, node) pairs in preorder; the root path is ()."""
    stack = [((), d)]
    while stack:
        path, n = stack.pop()
        yield path, n
        for i in range(len(n.premises) - 1, -1, -1):
            stack.append((path + (i,), n.premises[i]))


# ---------------------------------------------------------------------------
# the check report


@dataclass(frozen=True)
class CheckFailure:
    path: tuple
    rule: str
    condition: str


@dataclass(frozen=True)
class CheckReport:
    verdict: bool
    system: str
    height: int
    cut_rank: int
    histogram: dict
    failures: tuple

    @property
    def failing_path(self) -> Optional[tuple]:
        return self.failures[0].path if self.failures else None

    @property
    def violated_condition(self) -> Optional[str]:
        return self.failures[0].condition if self.failures else None


# ---------------------------------------------------------------------------
# formula construction helpers shared by rule schemata


def _cv(x: Term) -> Term:
    return CodeOp("val", (x,))


def _cneg(x: Term) -> Term:
    return CodeOp("neg", (x,))


def _cand(x: Term, y: Term) -> Term:
    return CodeOp("and", (x, y))


def _call(v: Term, x: Term) -> Term:
    return CodeOp("all", (v, x))


def _ctr(x: Term) -> Term:
    return CodeOp("tr", (x,))


def _ceq(x: Term, y: Term) -> Term:
    return CodeOp("eq", (x, y))


def _cnum(t: Term) -> Term:
    return CodeOp("num", (t,))


def _csub(x: Term, t: Term, v: Term) -> Term:
    return CodeOp("sub", (x, t, v))


def _sent(x: Term) -> Formula:
    return DefAtom("Sent", (x,))


def _clterm(x: Term) -> Formula:
    return DefAtom("ClTerm", (x,))


def _subst_inst(x: Term, w: Term, v: Term) -> Formula:
    # T of the code of x with the numeral of w substituted for variable v
    return Tr(_csub(x, _cnum(w), v))


def bounded_universal(z: int, bound: Term, phi: Formula, v: int) -> Formula:
    """The formula "for all z below bound, phi[z/v]".

    Expands the defined disjunction: forall z (not(not not(Ord(z) and
    Ord(bound) and z < bound) and not phi[z/v])), with the triple
    conjunction grouped to the left.  Choose z outside phi's bound
    variables; the substitution is capture avoiding, so a clash would
    silently rename and the caller's z would no longer bind.
    """
    guard = And(
        And(DefAtom("Ord", (Var(z),)), DefAtom("Ord", (bound,))),
        DefAtom("Prec", (Var(z), bound)),
    )
    return All(z, Not(And(Not(Not(guard)), Not(substitute(phi, Var(z), v)))))


# ---------------------------------------------------------------------------
# arithmetic axioms


@dataclass(frozen=True)
class _Meta:
    """Metavariable leaf used inside axiom matrices (internal only)."""

    name: str


_MA = _Meta("a")
_MB = _Meta("b")


def _match_term(pat, t, env) -> bool:
    if isinstance(pat, _Meta):
        if pat.name in env:
            return env[pat.name] == t
        if not isinstance(t, TERM_TYPES):
            return False
        env[pat.name] = t
        return True
    if type(pat) is not type(t):
        return False
    if isinstance(pat, (Var, Num)):
        return pat == t
    if isinstance(pat, Suc):
        return _match_term(pat.arg, t.arg, env)
    if isinstance(pat, CodeOp):
        if pat.kind != t.kind or len(pat.args) != len(t.args):
            return False
        return all(_match_term(p, a, env) for p, a in zip(pat.args, t.args))
    # Add, Mul
    return _match_term(pat.left, t.left, env) and _match_term(pat.right, t.right, env)


def _match_formula(pat, phi, env) -> bool:
    if type(pat) is not type(phi):
        return False
    if isinstance(pat, Equal):
        return _match_term(pat.left, phi.left, env) and _match_term(
            pat.right, phi.right, env
        )
    if isinstance(pat, Tr):
        return _match_term(pat.arg, phi.arg, env)
    if isinstance(pat, DefAtom):
        if pat.name != phi.name:
            return False
        return all(_match_term(p, a, env) for p, a in zip(pat.args, phi.args))
    if isinstance(pat, Not):
        return _match_formula(pat.body, phi.body, env)
    if isinstance(pat, And):
        return _match_formula(pat.left, phi.left, env) and _match_formula(
            pat.right, phi.right, env
        )
    if isinstance(pat, All):
        return pat.var == phi.var and _match_formula(pat.body, phi.body, env)
    return False


def _build_pa_matrices():
    from .syntax import Add, Mul

    a, b = _MA, _MB
    return (
        Not(Equal(Suc(a), Num(0))),
        Not(And(Equal(Suc(a), Suc(b)), Not(Equal(a, b)))),
        Equal(Add(a, Num(0)), a),
        Equal(Add(a, Suc(b)), Suc(Add(a, b))),
        Equal(Mul(a, Num(0)), Num(0)),
        Equal(Mul(a, Suc(b)), Add(Mul(a, b), a)),
    )


_PA_MATRICES = _build_pa_matrices()


def is_pa_axiom(phi: Formula) -> bool:
    """Instance test for the arithmetic axioms.

    Leading universal quantifiers are stripped; the matrix may then be
    instantiated by arbitrary terms, so both the closed closures and
    their open instances qualify.
    """
    body = phi
    while isinstance(body, All):
        body = body.body
    return any(_match_formula(m, body, {}) for m in _PA_MATRICES)


def pa_axiom_closures() -> tuple:
    """The six closed arithmetic axioms (universal closures)."""
    from .syntax import universal_closure

    out = []
    for m in _PA_MATRICES:
        inst = _instantiate_matrix(m, {"a": Var(0), "b": Var(1)})
        out.append(universal_closure(inst))
    return tuple(out)


def _instantiate_matrix(pat, env):
    if isinstance(pat, _Meta):
        return env[pat.name]
    if isinstance(pat, (Var, Num)):
        return pat
    if isinstance(pat, Suc):
        return Suc(_instantiate_matrix(pat.arg, env))
    if isinstance(pat, CodeOp):
        return CodeOp(pat.kind, tuple(_instantiate_matrix(a, env) for a in pat.args))
    if isinstance(pat, Equal):
        return Equal(_instantiate_matrix(pat.left, env), _instantiate_matrix(pat.right, env))
    if isinstance(pat, Not):
        return Not(_instantiate_matrix(pat.body, env))
    if isinstance(pat, And):
        return And(_instantiate_matrix(pat.left, env), _instantiate_matrix(pat.right, env))
    from .syntax import Add, Mul

    if isinstance(pat, (Add, Mul)):
        return type(pat)(_instantiate_matrix(pat.left, env), _instantiate_matrix(pat.right, env))
    raise TypeError(f"unexpected pattern node {pat!r}")


# ---------------------------------------------------------------------------
# initial sequents

# Every axiom carries arbitrary context: a sequent instantiates a schema as
# soon as the displayed formulas are present on the displayed sides (and any
# evaluation side conditions hold).


def _closed_fact(phi: Formula) -> Optional[bool]:
    if not isinstance(phi, (Equal, DefAtom)):
        return None
    if not closed(phi):
        return None
    return eval_closed_atom(phi)


def _certified(phi: Formula) -> bool:
    """Dispatch a formula to the symbolic coding-fact certifiers."""
    if isinstance(phi, Equal):
        return certify_eq(phi.left, phi.right)
    if isinstance(phi, DefAtom):
        if phi.name == "ClTerm":
            return certify_clterm(phi.args[0])
        if phi.name == "Sent":
            return certify_sent(phi.args[0])
        if phi.name == "Var":
            return certify_var(phi.args[0])
        if phi.name.startswith("FmlPA_"):
            return certify_fml(phi.args[0], int(phi.name[6:]), pa_only=True)
        if phi.name.startswith("Fml_"):
            return certify_fml(phi.args[0], int(phi.name[4:]))
    return False


def _m_init(s: Sequent) -> bool:
    return any(is_literal(f) for f in s.ant & s.suc)


def _m_pa(s: Sequent) -> bool:
    return any(is_pa_axiom(f) for f in s.suc)


def _m_pa_neg(s: Sequent) -> bool:
    return any(isinstance(f, Not) and is_pa_axiom(f.body) for f in s.ant)


def _m_af_true(s: Sequent) -> bool:
    return any(_closed_fact(f) is True for f in s.suc)


def _m_af_false(s: Sequent) -> bool:
    return any(_closed_fact(f) is False for f in s.ant)


def _m_af_true_neg(s: Sequent) -> bool:
    return any(isinstance(f, Not) and _closed_fact(f.body) is True for f in s.ant)


def _m_af_false_neg(s: Sequent) -> bool:
    return any(isinstance(f, Not) and _closed_fact(f.body) is False for f in s.suc)


def _m_cf(name: str):
    def m(s: Sequent) -> bool:
        for f in s.suc:
            if isinstance(f, DefAtom) and (
                f.name == name
                or (name == "Fml" and f.name.startswith("Fml_"))
                or (name == "FmlPA" and f.name.startswith("FmlPA_"))
            ):
                if _certified(f):
                    return True
        return False

    return m


def _m_cf_eq(s: Sequent) -> bool:
    return any(isinstance(f, Equal) and certify_eq(f.left, f.right) for f in s.suc)


def _m_cf_neg(s: Sequent) -> bool:
    return any(isinstance(f, Not) and _certified(f.body) for f in s.ant)


def _cfc_guard_sets(f: Formula):
    """Guard sets under which the code predicate fact f follows.

    Conditional coding facts with open arguments: each yielded set of
    premiss atoms entails f for every instantiation, junk codes included.
    """
    if not isinstance(f, DefAtom):
        return
    if f.name == "Sent":
        t = f.args[0]
        if isinstance(t, CodeOp):
            if t.kind == "eq":
                a, b = t.args
                yield {_clterm(a), _clterm(b)}
            elif t.kind == "neg":
                yield {_sent(t.args[0])}
            elif t.kind == "and":
                a, b = t.args
                yield {_sent(a), _sent(b)}
            elif t.kind == "sub":
                x, a, v = t.args
                yield {_sent(_call(v, x)), _clterm(a)}
                if isinstance(a, CodeOp) and a.kind == "num":
                    yield {_sent(_call(v, x))}
            elif t.kind == "all":
                v, x = t.args
                if isinstance(x, CodeOp) and x.kind == "neg":
                    yield {_sent(_call(v, x.args[0]))}
    elif f.name == "ClTerm":
        t = f.args[0]
        if (
            isinstance(t, CodeOp)
            and t.kind == "num"
            and isinstance(t.args[0], CodeOp)
            and t.args[0].kind == "val"
        ):
            yield {_clterm(t.args[0].args[0])}


def _m_cfc(s: Sequent) -> bool:
    for f in s.suc:
        for guards in _cfc_guard_sets(f):
            if guards <= s.ant:
                return True
        if isinstance(f, DefAtom) and f.name == "Var":
            v = f.args[0]
            for g in s.ant:
                if isinstance(g, DefAtom) and g.name == "Sent":
                    t = g.args[0]
                    if isinstance(t, CodeOp) and t.kind == "all" and t.args[0] == v:
                        return True
        if isinstance(f, DefAtom) and f.name == "Fml_1":
            x = f.args[0]
            for g in s.ant:
                if isinstance(g, DefAtom) and g.name == "Sent":
                    t = g.args[0]
                    if isinstance(t, CodeOp) and t.kind == "sub" and t.args[0] == x:
                        return True
        if isinstance(f, DefAtom) and f.name == "Sent":
            # decompositions keyed on an antecedent conjunction or negation
            x = f.args[0]
            for g in s.ant:
                if isinstance(g, DefAtom) and g.name == "Sent":
                    t = g.args[0]
                    if isinstance(t, CodeOp) and t.kind in ("neg", "and") and x in t.args:
                        return True
    return False


def _m_t_eq_i(s: Sequent) -> bool:
    for f in s.suc:
        if isinstance(f, Tr) and isinstance(f.arg, CodeOp) and f.arg.kind == "eq":
            x, y = f.arg.args
            need = {_clterm(x), _clterm(y), Equal(_cv(x), _cv(y))}
            if need <= s.ant:
                return True
    return False


def _m_t_eq_ii(s: Sequent) -> bool:
    for f in s.ant:
        if isinstance(f, Tr) and isinstance(f.arg, CodeOp) and f.arg.kind == "eq":
            x, y = f.arg.args
            if {_clterm(x), _clterm(y)} <= s.ant and Equal(_cv(x), _cv(y)) in s.suc:
                return True
    return False


def _neq_code_args(f: Formula):
    # T(neg.(eq.(x, y))) -> (x, y)
    if (
        isinstance(f, Tr)
        and isinstance(f.arg, CodeOp)
        and f.arg.kind == "neg"
        and isinstance(f.arg.args[0], CodeOp)
        and f.arg.args[0].kind == "eq"
    ):
        return f.arg.args[0].args
    return None


def _m_t_neq_i(s: Sequent) -> bool:
    for f in s.suc:
        args = _neq_code_args(f)
        if args is not None:
            x, y = args
            need = {_clterm(x), _clterm(y), Not(Equal(_cv(x), _cv(y)))}
            if need <= s.ant:
                return True
    return False


def _m_t_neq_ii(s: Sequent) -> bool:
    for f in s.ant:
        args = _neq_code_args(f)
        if args is not None:
            x, y = args
            if {_clterm(x), _clterm(y)} <= s.ant and Not(Equal(_cv(x), _cv(y))) in s.suc:
                return True
    return False


def _m_t_sent(s: Sequent) -> bool:
    for f in s.ant:
        if isinstance(f, Tr) and _sent(f.arg) in s.suc:
            return True
    return False


def _m_t_nsent(s: Sequent) -> bool:
    for f in s.ant:
        if isinstance(f, Not) and isinstance(f.body, DefAtom) and f.body.name == "Sent":
            if Not(Tr(f.body.args[0])) in s.suc:
                return True
    return False


def _m_cons(s: Sequent) -> bool:
    for f in s.suc:
        if isinstance(f, Not) and isinstance(f.body, Tr):
            x = f.body.arg
            if {_sent(x), Tr(_cneg(x))} <= s.ant:
                return True
    return False


def _m_comp(s: Sequent) -> bool:
    for f in s.suc:
        if isinstance(f, Tr) and isinstance(f.arg, CodeOp) and f.arg.kind == "neg":
            x = f.arg.args[0]
            if {_sent(x), Not(Tr(x))} <= s.ant:
                return True
    return False


def _m_gog(s: Sequent) -> bool:
    left = [
        f.arg
        for f in s.ant
        if isinstance(f, Tr) and isinstance(f.arg, CodeOp) and f.arg.kind == "neg"
    ]
    right = [
        f.arg
        for f in s.suc
        if isinstance(f, Tr) and isinstance(f.arg, CodeOp) and f.arg.kind == "neg"
    ]
    for nx in left:
        x = nx.args[0]
        if not ({_sent(x), Tr(x)} <= s.ant):
            continue
        for ny in right:
            y = ny.args[0]
            if _sent(y) in s.ant and Tr(y) in s.suc:
                return True
    return False


def _reg_parts(f: Formula):
    # T(sub(x, num(val(y)), z)) -> (x, y, z)
    if isinstance(f, Tr) and isinstance(f.arg, CodeOp) and f.arg.kind == "sub":
        x, mid, z = f.arg.args
        if isinstance(mid, CodeOp) and mid.kind == "num":
            inner = mid.args[0]
            if isinstance(inner, CodeOp) and inner.kind == "val":
                return x, inner.args[0], z
    return None


def _reg_guards(x: Term, y: Term, z: Term) -> set:
    return {DefAtom("Var", (z,)), _clterm(y), _sent(_call(z, x))}


def _m_t_reg_i(s: Sequent) -> bool:
    for f in s.suc:
        parts = _reg_parts(f)
        if parts is not None:
            x, y, z = parts
            if _reg_guards(x, y, z) <= s.ant and Tr(_csub(x, y, z)) in s.ant:
                return True
    return False


def _m_t_reg_ii(s: Sequent) -> bool:
    for f in s.ant:
        parts = _reg_parts(f)
        if parts is not None:
            x, y, z = parts
            if _reg_guards(x, y, z) <= s.ant and Tr(_csub(x, y, z)) in s.suc:
                return True
    return False


def _decoded_atom(t: Term):
    if not isinstance(t, Num):
        return None
    phi = decode_formula(t.value)
    if phi is None:
        return None
    return phi


def _m_t_def_true(s: Sequent) -> bool:
    for f in s.suc:
        if isinstance(f, Tr):
            phi = _decoded_atom(f.arg)
            if phi is not None and _closed_fact(phi) is True:
                return True
    return False


def _m_t_def_false(s: Sequent) -> bool:
    for f in s.ant:
        if isinstance(f, Tr):
            phi = _decoded_atom(f.arg)
            if phi is not None and _closed_fact(phi) is False:
                return True
    return False


def _m_t_ndef_true(s: Sequent) -> bool:
    # T of the code of a negated atom whose unnegated form holds: left side
    for f in s.ant:
        if isinstance(f, Tr):
            phi = _decoded_atom(f.arg)
            if isinstance(phi, Not) and _closed_fact(phi.body) is True:
                return True
    return False


def _m_t_ndef_false(s: Sequent) -> bool:
    for f in s.suc:
        if isinstance(f, Tr):
            phi = _decoded_atom(f.arg)
            if isinstance(phi, Not) and _closed_fact(phi.body) is False:
                return True
    return False


_AXIOM_MATCHERS: dict = {
    "init": _m_init,
    "pa": _m_pa,
    "pa-neg": _m_pa_neg,
    "af-true": _m_af_true,
    "af-false": _m_af_false,
    "af-true-neg": _m_af_true_neg,
    "af-false-neg": _m_af_false_neg,
    "cf-clterm": _m_cf("ClTerm"),
    "cf-sent": _m_cf("Sent"),
    "cf-var": _m_cf("Var"),
    "cf-fml": _m_cf("Fml"),
    "cf-fmlpa": _m_cf("FmlPA"),
    "cf-eq": _m_cf_eq,
    "cf-neg": _m_cf_neg,
    "cfc": _m_cfc,
    "t-eq-i": _m_t_eq_i,
    "t-eq-ii": _m_t_eq_ii,
    "t-neq-i": _m_t_neq_i,
    "t-neq-ii": _m_t_neq_ii,
    "t-sent": _m_t_sent,
    "t-nsent": _m_t_nsent,
    "cons": _m_cons,
    "comp": _m_comp,
    "gog": _m_gog,
    "t-reg-i": _m_t_reg_i,
    "t-reg-ii": _m_t_reg_ii,
    "t-def-true": _m_t_def_true,
    "t-def-false": _m_t_def_false,
    "t-ndef-true": _m_t_ndef_true,
    "t-ndef-false": _m_t_ndef_false,
}

AXIOM_IDS = frozenset(_AXIOM_MATCHERS)


# ---------------------------------------------------------------------------
# rule schemata

# Binding sorts: "formula", "term", "var" (a variable index).
BINDING_SORTS: dict = {
    "cut": {"phi": "formula"},
    "and-l": {"phi": "formula", "psi": "formula"},
    "and-r": {"phi": "formula", "psi": "formula"},
    "all-l": {"phi": "formula", "v": "var", "t": "term"},
    "all-r": {"phi": "formula", "v": "var", "u": "var"},
    "neg-neg-l": {"phi": "formula"},
    "neg-neg-r": {"phi": "formula"},
    "neg-and-l": {"phi": "formula", "psi": "formula"},
    "neg-and-r": {"phi": "formula", "psi": "formula"},
    "neg-all-l": {"phi": "formula", "v": "var", "u": "var"},
    "neg-all-r": {"phi": "formula", "v": "var", "t": "term"},
    "neg-l": {"phi": "formula"},
    "neg-r": {"phi": "formula"},
    "gg": {"phi": "formula", "psi": "formula"},
    "ref": {"t": "term"},
    "rep-l": {"phi": "formula", "v": "var", "s": "term", "t": "term"},
    "rep-r": {"phi": "formula", "v": "var", "s": "term", "t": "term"},
    "eq-neg-l": {"s": "term", "t": "term"},
    "eq-neg-r": {"s": "term", "t": "term"},
    "atom-neg-l": {"phi": "formula"},
    "atom-neg-r": {"phi": "formula"},
    "t-rep-l": {"x": "term"},
    "t-rep-r": {"x": "term"},
    "t-nrep-l": {"x": "term"},
    "t-nrep-r": {"x": "term"},
    "t-dneg-l": {"x": "term"},
    "t-dneg-r": {"x": "term"},
    "t-and-l": {"x": "term", "y": "term"},
    "t-and-r": {"x": "term", "y": "term"},
    "t-nand-l": {"x": "term", "y": "term"},
    "t-nand-r": {"x": "term", "y": "term"},
    "t-all-l": {"x": "term", "v": "term", "y": "var"},
    "t-all-r": {"x": "term", "v": "term", "z": "var"},
    "t-nall-l": {"x": "term", "v": "term", "z": "var"},
    "t-nall-r": {"x": "term", "v": "term", "z": "var"},
    "ind": {"phi": "formula", "v": "var", "u": "var", "t": "term"},
    "ind-int": {"x": "term", "v": "term", "u": "var", "z": "term"},
    "ti": {
        "phi": "formula",
        "v": "var",
        "z": "var",
        "y": "var",
        "x": "var",
        "a": "term",
    },
}

RULE_IDS = frozenset(BINDING_SORTS)


def _coerce_bindings(n: Node, sorts: Mapping[str, str]):
    env = {}
    for name, sort in sorts.items():
        if name not in n.bindings:
            return None, f"missing binding {name}"
        val = n.bindings[name]
        if sort == "var":
            if isinstance(val, Var):
                val = val.index
            if not isinstance(val, int) or val < 0:
                return None, f"binding {name} must be a variable"
        elif sort == "term":
            if not isinstance(val, TERM_TYPES):
                return None, f"binding {name} must be a term"
        else:
            if not isinstance(val, FORMULA_TYPES):
                return None, f"binding {name} must be a formula"
        env[name] = val
    return env, None


def _expect(n: Node, prin_l: Sequence[Formula], prin_r: Sequence[Formula],
            premises: Sequence[tuple]) -> Optional[str]:
    # The context is a free metavariable, so a principal formula may also
    # persist in it: each premise side must lie between context+actives
    # and conclusion+actives.
    s = n.sequent
    for f in prin_l:
        if f not in s.ant:
            return f"principal formula not in antecedent: {show(f)}"
    for f in prin_r:
        if f not in s.suc:
            return f"principal formula not in succedent: {show(f)}"
    if len(n.premises) != len(premises):
        return f"expected {len(premises)} premises, found {len(n.premises)}"
    gamma = s.ant.difference(prin_l)
    delta = s.suc.difference(prin_r)
    for i, (act_l, act_r) in enumerate(premises):
        got = n.premises[i].sequent
        need = Sequent(gamma.union(act_l), delta.union(act_r))
        if not (
            need.ant <= got.ant <= s.ant.union(act_l)
            and need.suc <= got.suc <= s.suc.union(act_r)
        ):
            return f"premise {i} should be [{show_sequent(need)}]"
    return None


def _eigen(n: Node, u: int, extra_ignore: frozenset = frozenset()) -> Optional[str]:
    occurs = sequent_free_vars(n.sequent) - extra_ignore
    if u in occurs:
        return f"eigenvariable v{u} occurs free in the conclusion"
    return None


def _v_cut(sysc, n, b):
    if len(n.premises) != 2:
        return f"expected 2 premises, found {len(n.premises)}"
    phi = b["phi"]
    p1 = n.premises[0].sequent
    p2 = n.premises[1].sequent
    if phi not in p1.suc:
        return "cut formula not in the succedent of the first premise"
    if phi not in p2.ant:
        return "cut formula not in the antecedent of the second premise"
    # the cut formula may happen to persist in a context set
    want = Sequent(p1.ant | (p2.ant - {phi}), (p1.suc - {phi}) | p2.suc)
    if not (
        want.ant <= n.sequent.ant <= p1.ant | p2.ant
        and want.suc <= n.sequent.suc <= p1.suc | p2.suc
    ):
        return f"conclusion should be [{show_sequent(want)}]"
    return None


def _v_and_l(sysc, n, b):
    return _expect(n, [And(b["phi"], b["psi"])], [], [([b["phi"], b["psi"]], [])])


def _v_and_r(sysc, n, b):
    return _expect(
        n, [], [And(b["phi"], b["psi"])], [([], [b["phi"]]), ([], [b["psi"]])]
    )


def _v_all_l(sysc, n, b):
    inst = substitute(b["phi"], b["t"], b["v"])
    return _expect(n, [All(b["v"], b["phi"])], [], [([inst], [])])


def _v_all_r(sysc, n, b):
    inst = substitute(b["phi"], Var(b["u"]), b["v"])
    err = _expect(n, [], [All(b["v"], b["phi"])], [([], [inst])])
    return err or _eigen(n, b["u"])


def _v_neg_neg_l(sysc, n, b):
    return _expect(n, [Not(Not(b["phi"]))], [], [([b["phi"]], [])])


def _v_neg_neg_r(sysc, n, b):
    return _expect(n, [], [Not(Not(b["phi"]))], [([], [b["phi"]])])


def _v_neg_and_l(sysc, n, b):
    return _expect(
        n,
        [Not(And(b["phi"], b["psi"]))],
        [],
        [([Not(b["phi"])], []), ([Not(b["psi"])], [])],
    )


def _v_neg_and_r(sysc, n, b):
    return _expect(
        n, [], [Not(And(b["phi"], b["psi"]))], [([], [Not(b["phi"]), Not(b["psi"])])]
    )


def _v_neg_all_l(sysc, n, b):
    inst = Not(substitute(b["phi"], Var(b["u"]), b["v"]))
    err = _expect(n, [Not(All(b["v"], b["phi"]))], [], [([inst], [])])
    return err or _eigen(n, b["u"])


def _v_neg_all_r(sysc, n, b):
    inst = Not(substitute(b["phi"], b["t"], b["v"]))
    return _expect(n, [], [Not(All(b["v"], b["phi"]))], [([], [inst])])


def _v_neg_l(sysc, n, b):
    if sysc.neg_left == "atomic" and not is_atom(b["phi"]):
        return "this system restricts the rule to atomic formulas"
    return _expect(n, [Not(b["phi"])], [], [([], [b["phi"]])])


def _v_neg_r(sysc, n, b):
    if sysc.neg_right == "atomic" and not is_atom(b["phi"]):
        return "this system restricts the rule to atomic formulas"
    return _expect(n, [], [Not(b["phi"])], [([b["phi"]], [])])


def _v_gg(sysc, n, b):
    if not is_atom(b["phi"]) or not is_atom(b["psi"]):
        return "both metavariables must be atomic"
    return _expect(
        n,
        [b["phi"], Not(b["phi"])],
        [],
        [([b["psi"]], []), ([Not(b["psi"])], [])],
    )


def _v_ref(sysc, n, b):
    return _expect(n, [], [], [([Equal(b["t"], b["t"])], [])])


def _v_rep_l(sysc, n, b):
    if not is_literal(b["phi"]):
        return "replacement needs a literal"
    at_s = substitute(b["phi"], b["s"], b["v"])
    at_t = substitute(b["phi"], b["t"], b["v"])
    return _expect(n, [Equal(b["s"], b["t"]), at_s], [], [([at_t], [])])


def _v_rep_r(sysc, n, b):
    if not is_literal(b["phi"]):
        return "replacement needs a literal"
    at_s = substitute(b["phi"], b["s"], b["v"])
    at_t = substitute(b["phi"], b["t"], b["v"])
    return _expect(
        n, [], [at_s], [([], [at_t]), ([], [Equal(b["s"], b["t"])])]
    )


def _v_eq_neg_l(sysc, n, b):
    eq = Equal(b["s"], b["t"])
    return _expect(n, [Not(eq)], [], [([], [eq])])


def _v_eq_neg_r(sysc, n, b):
    eq = Equal(b["s"], b["t"])
    return _expect(n, [], [Not(eq)], [([eq], [])])


def _v_atom_neg_l(sysc, n, b):
    if not isinstance(b["phi"], DefAtom):
        return "the rule applies to defined-predicate atoms"
    return _expect(n, [Not(b["phi"])], [], [([], [b["phi"]])])


def _v_atom_neg_r(sysc, n, b):
    if not isinstance(b["phi"], DefAtom):
        return "the rule applies to defined-predicate atoms"
    return _expect(n, [], [Not(b["phi"])], [([b["phi"]], [])])


def _v_t_rep_l(sysc, n, b):
    g = _clterm(b["x"])
    return _expect(
        n, [g, Tr(_ctr(b["x"]))], [], [([g, Tr(_cv(b["x"]))], [])]
    )


def _v_t_rep_r(sysc, n, b):
    g = _clterm(b["x"])
    return _expect(n, [g], [Tr(_ctr(b["x"]))], [([g], [Tr(_cv(b["x"]))])])


def _v_t_nrep_l(sysc, n, b):
    x = b["x"]
    g = _clterm(x)
    return _expect(
        n,
        [g, Tr(_cneg(_ctr(x)))],
        [],
        [([g, Tr(_cneg(_cv(x)))], []), ([g, Not(_sent(_cv(x)))], [])],
    )


def _v_t_nrep_r(sysc, n, b):
    x = b["x"]
    g = _clterm(x)
    return _expect(
        n,
        [g],
        [Tr(_cneg(_ctr(x)))],
        [([g], [Tr(_cneg(_cv(x))), Not(_sent(_cv(x)))])],
    )


def _v_t_dneg_l(sysc, n, b):
    x = b["x"]
    g = _sent(x)
    return _expect(n, [g, Tr(_cneg(_cneg(x)))], [], [([g, Tr(x)], [])])


def _v_t_dneg_r(sysc, n, b):
    x = b["x"]
    g = _sent(x)
    return _expect(n, [g], [Tr(_cneg(_cneg(x)))], [([g], [Tr(x)])])


def _v_t_and_l(sysc, n, b):
    x, y = b["x"], b["y"]
    g = _sent(_cand(x, y))
    return _expect(n, [g, Tr(_cand(x, y))], [], [([g, Tr(x), Tr(y)], [])])


def _v_t_and_r(sysc, n, b):
    x, y = b["x"], b["y"]
    g = _sent(_cand(x, y))
    return _expect(
        n, [g], [Tr(_cand(x, y))], [([g], [Tr(x)]), ([g], [Tr(y)])]
    )


def _v_t_nand_l(sysc, n, b):
    x, y = b["x"], b["y"]
    g = _sent(_cand(x, y))
    return _expect(
        n,
        [g, Tr(_cneg(_cand(x, y)))],
        [],
        [([g, Tr(_cneg(x))], []), ([g, Tr(_cneg(y))], [])],
    )


def _v_t_nand_r(sysc, n, b):
    x, y = b["x"], b["y"]
    g = _sent(_cand(x, y))
    return _expect(
        n,
        [g],
        [Tr(_cneg(_cand(x, y)))],
        [([g], [Tr(_cneg(x)), Tr(_cneg(y))])],
    )


def _v_t_all_l(sysc, n, b):
    x, v = b["x"], b["v"]
    g = _sent(_call(v, x))
    inner = All(b["y"], _subst_inst(x, Var(b["y"]), v))
    return _expect(n, [g, Tr(_call(v, x))], [], [([g, inner], [])])


def _v_t_all_r(sysc, n, b):
    x, v = b["x"], b["v"]
    g = _sent(_call(v, x))
    inner = All(b["z"], _subst_inst(x, Var(b["z"]), v))
    return _expect(n, [g], [Tr(_call(v, x))], [([g], [inner])])


def _neg_inst_all(x: Term, v: Term, z: int) -> Formula:
    # not forall z not T(neg.(sub(x, num(z), v)))
    body = Not(Tr(_cneg(_csub(x, _cnum(Var(z)), v))))
    return Not(All(z, body))


def _v_t_nall_l(sysc, n, b):
    x, v = b["x"], b["v"]
    g = _sent(_call(v, x))
    return _expect(
        n,
        [g, Tr(_cneg(_call(v, x)))],
        [],
        [([g, _neg_inst_all(x, v, b["z"])], [])],
    )


def _v_t_nall_r(sysc, n, b):
    x, v = b["x"], b["v"]
    g = _sent(_call(v, x))
    return _expect(
        n,
        [g],
        [Tr(_cneg(_call(v, x)))],
        [([g], [_neg_inst_all(x, v, b["z"])])],
    )


def _v_ind(sysc, n, b):
    phi, v, u, t = b["phi"], b["v"], b["u"], b["t"]
    if sysc.induction == "restricted" and not is_t_free(phi):
        return "restricted induction allows only truth-free formulas"
    base = substitute(phi, Num(0), v)
    goal = substitute(phi, t, v)
    step_lo = substitute(phi, Var(u), v)
    step_hi = substitute(phi, Suc(Var(u)), v)
    err = _expect(n, [base], [goal], [([step_lo], [step_hi])])
    if err:
        return err
    gamma = n.sequent.ant - {base}
    delta = n.sequent.suc - {goal}
    occurs = frozenset()
    for f in gamma | delta | {base}:
        occurs |= free_vars(f)
    if u in occurs:
        return f"eigenvariable v{u} occurs free in the context or base formula"
    return None


def _v_ind_int(sysc, n, b):
    x, v, u, z = b["x"], b["v"], b["u"], b["z"]
    if sysc.induction == "internal-restricted":
        guards = ("FmlPA_1",)
    else:
        guards = ("Fml_1", "FmlPA_1")
    base = _subst_inst(x, Num(0), v)
    goal = _subst_inst(x, z, v)
    step_lo = _subst_inst(x, Var(u), v)
    step_hi = _subst_inst(x, Suc(Var(u)), v)
    err = None
    for gname in guards:
        g = DefAtom(gname, (x,))
        err = _expect(n, [base], [goal], [([g, step_lo], [step_hi])])
        if err is None:
            break
    if err:
        return err
    return _eigen(n, u)


def _v_ti(sysc, n, b):
    phi, v = b["phi"], b["v"]
    z, y, xv, a = b["z"], b["y"], b["x"], b["a"]
    try:
        bound_code = term_value(a)
    except ValueError:
        return "the ordinal bound must be a closed term"
    if decode_notation(bound_code) is None:
        return "the ordinal bound does not code a notation below epsilon_0"
    concl = bounded_universal(xv, a, phi, v)
    prem_guard = bounded_universal(z, Var(y), phi, v)
    prem_goal = substitute(phi, Var(y), v)
    err = _expect(n, [], [concl], [([prem_guard], [prem_goal])])
    return err or _eigen(n, y)


_RULE_VERIFIERS: dict = {
    "cut": _v_cut,
    "and-l": _v_and_l,
    "and-r": _v_and_r,
    "all-l": _v_all_l,
    "all-r": _v_all_r,
    "neg-neg-l": _v_neg_neg_l,
    "neg-neg-r": _v_neg_neg_r,
    "neg-and-l": _v_neg_and_l,
    "neg-and-r": _v_neg_and_r,
    "neg-all-l": _v_neg_all_l,
    "neg-all-r": _v_neg_all_r,
    "neg-l": _v_neg_l,
    "neg-r": _v_neg_r,
    "gg": _v_gg,
    "ref": _v_ref,
    "rep-l": _v_rep_l,
    "rep-r": _v_rep_r,
    "eq-neg-l": _v_eq_neg_l,
    "eq-neg-r": _v_eq_neg_r,
    "atom-neg-l": _v_atom_neg_l,
    "atom-neg-r": _v_atom_neg_r,
    "t-rep-l": _v_t_rep_l,
    "t-rep-r": _v_t_rep_r,
    "t-nrep-l": _v_t_nrep_l,
    "t-nrep-r": _v_t_nrep_r,
    "t-dneg-l": _v_t_dneg_l,
    "t-dneg-r": _v_t_dneg_r,
    "t-and-l": _v_t_and_l,
    "t-and-r": _v_t_and_r,
    "t-nand-l": _v_t_nand_l,
    "t-nand-r": _v_t_nand_r,
    "t-all-l": _v_t_all_l,
    "t-all-r": _v_t_all_r,
    "t-nall-l": _v_t_nall_l,
    "t-nall-r": _v_t_nall_r,
    "ind": _v_ind,
    "ind-int": _v_ind_int,
    "ti": _v_ti,
}


# ---------------------------------------------------------------------------
# the system registry


TRUTH_RULES = frozenset(
    {
        "t-rep-l",
        "t-rep-r",
        "t-nrep-l",
        "t-nrep-r",
        "t-dneg-l",
        "t-dneg-r",
        "t-and-l",
        "t-and-r",
        "t-nand-l",
        "t-nand-r",
        "t-all-l",
        "t-all-r",
        "t-nall-l",
        "t-nall-r",
    }
)

_NEGATED_COMPOUND_RULES = frozenset(
    {"neg-neg-l", "neg-neg-r", "neg-and-l", "neg-and-r", "neg-all-l", "neg-all-r"}
)

_BASE_RULES = frozenset({"cut", "and-l", "and-r", "all-l", "all-r"})

_CF_AXIOMS = frozenset(
    {"cf-clterm", "cf-sent", "cf-var", "cf-fml", "cf-fmlpa", "cf-eq", "cf-neg", "cfc"}
)

_AF_AXIOMS = frozenset({"af-true", "af-false", "af-true-neg", "af-false-neg"})

_TRUTH_AXIOMS_COMMON = frozenset(
    {
        "t-eq-i",
        "t-eq-ii",
        "t-neq-i",
        "t-neq-ii",
        "t-sent",
        "t-nsent",
        "t-reg-i",
        "t-reg-ii",
        "t-def-true",
        "t-def-false",
        "t-ndef-true",
        "t-ndef-false",
    }
)


class UnknownCalculusError(ValueError):
    pass


@dataclass(frozen=True)
class SystemConfig:
    """Immutable description of one calculus."""

    name: str
    family: str          # "logic" | "kf" | "pkf"
    base_logic: str      # fde | cl | k3 | lp | ks3
    has_identity: bool
    neg_left: str        # "none" | "atomic" | "full"
    neg_right: str
    has_gg: bool
    has_cons: bool
    has_comp: bool
    has_gog: bool
    induction: str       # "none" | "full" | "restricted" | "internal" | "internal-restricted"
    has_ti: bool
    rules: frozenset
    axioms: frozenset

    def has_rule(self, rid: str) -> bool:
        return rid in self.rules or rid in self.axioms


def _logic_system(base: str, identity: bool) -> SystemConfig:
    neg_l = {"cl": "full", "k3": "atomic"}.get(base, "none")
    neg_r = {"cl": "full", "lp": "atomic"}.get(base, "none")
    gg = base == "ks3"
    rules = set(_BASE_RULES)
    if base != "cl":
        rules |= _NEGATED_COMPOUND_RULES
    if neg_l != "none":
        rules.add("neg-l")
    if neg_r != "none":
        rules.add("neg-r")
    if gg:
        rules.add("gg")
    if identity:
        rules.add("ref")
        rules.add("rep-r" if base == "lp" else "rep-l")
    name = base + ("-eq" if identity else "")
    return SystemConfig(
        name=name,
        family="logic",
        base_logic=base,
        has_identity=identity,
        neg_left=neg_l,
        neg_right=neg_r,
        has_gg=gg,
        has_cons=False,
        has_comp=False,
        has_gog=False,
        induction="none",
        has_ti=False,
        rules=frozenset(rules),
        axioms=frozenset({"init"}),
    )


def _truth_axioms(family: str, sub: str) -> frozenset:
    ax = {"init", "pa"} | _AF_AXIOMS | _CF_AXIOMS | _TRUTH_AXIOMS_COMMON
    if family == "pkf":
        ax |= {"pa-neg", "cons", "comp"}
        if sub == "cs":
            pass  # the consistency axiom is already present
    else:
        if sub == "cs":
            ax.add("cons")
        if sub == "cp":
            ax.add("comp")
        if sub == "s":
            ax.add("gog")
    return frozenset(ax)


def _kf_system(sub: str, induction: str) -> SystemConfig:
    rules = set(_BASE_RULES) | {"neg-l", "neg-r", "ref", "rep-l"} | set(TRUTH_RULES)
    if induction in ("full", "restricted"):
        rules.add("ind")
    else:
        rules.add("ind-int")
    name = "kf" + (f"-{sub}" if sub else "")
    if induction in ("internal", "internal-restricted"):
        name += "-int"
    if induction in ("restricted", "internal-restricted"):
        name += "-restr"
    return SystemConfig(
        name=name,
        family="kf",
        base_logic="cl",
        has_identity=True,
        neg_left="full",
        neg_right="full",
        has_gg=False,
        has_cons=sub == "cs",
        has_comp=sub == "cp",
        has_gog=sub == "s",
        induction=induction,
        has_ti=False,
        rules=frozenset(rules),
        axioms=_truth_axioms("kf", sub),
    )


def _pkf_system(sub: str, variant: str) -> SystemConfig:
    rules = (
        set(_BASE_RULES)
        | _NEGATED_COMPOUND_RULES
        | {"ref", "rep-l", "eq-neg-l", "eq-neg-r", "atom-neg-l", "atom-neg-r", "ind"}
        | set(TRUTH_RULES)
    )
    neg_l = "atomic" if sub == "cs" else "none"
    neg_r = "atomic" if sub == "cp" else "none"
    if neg_l != "none":
        rules.add("neg-l")
    if neg_r != "none":
        rules.add("neg-r")
    if sub == "s":
        rules.add("gg")
    if variant == "plus":
        rules.add("ti")
    name = "pkf" + (f"-{sub}" if sub else "")
    if variant == "restr":
        name += "-restr"
    elif variant == "plus":
        name += "-plus"
    return SystemConfig(
        name=name,
        family="pkf",
        base_logic="fde",
        has_identity=True,
        neg_left=neg_l,
        neg_right=neg_r,
        has_gg=sub == "s",
        has_cons=True,
        has_comp=True,
        has_gog=False,
        induction="restricted" if variant == "restr" else "full",
        has_ti=variant == "plus",
        rules=frozenset(rules),
        axioms=_truth_axioms("pkf", sub),
    )


def _build_registry() -> dict:
    systems: dict = {}
    for base in ("fde", "cl", "k3", "lp", "ks3"):
        for identity in (False, True):
            cfg = _logic_system(base, identity)
            systems[cfg.name] = cfg
    for sub in ("", "cs", "cp", "s"):
        for induction in ("full", "restricted", "internal", "internal-restricted"):
            cfg = _kf_system(sub, induction)
            systems[cfg.name] = cfg
        for variant in ("", "restr", "plus"):
            cfg = _pkf_system(sub, variant)
            systems[cfg.name] = cfg
    return systems


_SYSTEMS = _build_registry()

# the published base names; induction and restriction modifiers are reached
# through the naming grammar accepted by normalize_name
REGISTRY_NAMES = (
    "fde",
    "cl",
    "k3",
    "lp",
    "ks3",
    "fde-eq",
    "cl-eq",
    "k3-eq",
    "lp-eq",
    "ks3-eq",
    "kf",
    "kf-cs",
    "kf-cp",
    "kf-s",
    "pkf",
    "pkf-cs",
    "pkf-cp",
    "pkf-s",
    "pkf-plus",
)


def all_system_names() -> tuple:
    return tuple(sorted(_SYSTEMS))


_BASES = ("ks3", "fde", "pkf", "cl", "k3", "lp", "kf")

_MOD_ALIASES = {
    "cs": "cs",
    "cp": "cp",
    "s": "s",
    "int": "int",
    "internal": "int",
    "restr": "restr",
    "restricted": "restr",
    "eq": "eq",
    "id": "eq",
    "plus": "plus",
}


def normalize_name(name: str) -> str:
    """Map a system name or alias to its canonical registry key."""
    raw = name
    s = name.strip()
    for ch in ("⋆", "°", "★", "*"):
        if ch in s:
            raise UnknownCalculusError(
                f"{raw!r} contains a placeholder marker; name a concrete variant"
            )
    s = s.replace("↾", "-restr")  # restriction harpoon
    s = s.replace("|PA", "-restr").replace("|pa", "-restr")
    s = s.lower()
    s = s.replace("^", "-").replace("_", "-").replace(" ", "")
    if s.endswith("="):
        s = s[:-1] + "-eq"
    s = s.replace("=", "-eq-")
    if s.endswith("+"):
        s = s[:-1] + "-plus"
    parts = [p for p in s.split("-") if p]
    if not parts:
        raise UnknownCalculusError(f"empty system name {raw!r}")
    head = parts[0]
    base = None
    for cand in _BASES:
        if head == cand:
            base = cand
            rest = parts[1:]
            break
        if head.startswith(cand):
            base = cand
            rest = [head[len(cand):]] + parts[1:]
            break
    if base is None:
        raise UnknownCalculusError(f"unknown system {raw!r}")
    mods = []
    for p in rest:
        if p in _MOD_ALIASES:
            mods.append(_MOD_ALIASES[p])
        elif p == "intrestr":
            mods.extend(["int", "restr"])
        else:
            raise UnknownCalculusError(f"unknown modifier {p!r} in {raw!r}")
    sub = ""
    for m in ("cs", "cp", "s"):
        if m in mods:
            sub = m
            mods = [x for x in mods if x != m]
            break
    key = base + (f"-{sub}" if sub else "")
    for m in ("eq", "int", "restr", "plus"):
        if m in mods:
            key += f"-{m}"
    if key not in _SYSTEMS:
        raise UnknownCalculusError(f"unknown system {raw!r} (normalized {key!r})")
    return key


def calculus(name: str) -> SystemConfig:
    """Look up a system by canonical key or accepted alias."""
    if isinstance(name, SystemConfig):
        return name
    return _SYSTEMS[normalize_name(name)]


def display_name(key: str) -> str:
    """Typeset-style spelling of a canonical key, for messages."""
    cfg = calculus(key)
    key = cfg.name
    if cfg.family == "logic":
        base = key.split("-")[0].upper()
        return base + ("=" if cfg.has_identity else "")
    parts = key.split("-")
    out = parts[0].upper()
    rest = parts[1:]
    if rest and rest[0] in ("cs", "cp", "s"):
        out += "_" + ("S" if rest[0] == "s" else rest[0])
        rest = rest[1:]
    for m in rest:
        if m == "int":
            out += "^int"
        elif m == "restr":
            out += "↾"
        elif m == "plus":
            out += "+"
    return out


_PAIRING = {}
for _sub in ("", "cs", "cp", "s"):
    _k = f"-{_sub}" if _sub else ""
    _PAIRING[f"kf{_k}-restr"] = f"pkf{_k}-restr"
    _PAIRING[f"kf{_k}-int-restr"] = f"pkf{_k}-restr"
    _PAIRING[f"kf{_k}-int"] = f"pkf{_k}"
    _PAIRING[f"kf{_k}"] = f"pkf{_k}-plus"


def paired_pkf(kf_name: str) -> str:
    """The partner system whose provable sequents are the significant
    inferences of the given classical truth theory."""
    key = normalize_name(kf_name)
    if key not in _PAIRING:
        raise UnknownCalculusError(f"{kf_name!r} has no significant-inference partner")
    return _PAIRING[key]


def pairing_table() -> dict:
    return dict(_PAIRING)


# ---------------------------------------------------------------------------
# checking


def match_axiom(system, s: Sequent) -> list:
    """All initial-sequent schemata of the system that s instantiates."""
    sysc = calculus(system) if isinstance(system, str) else system
    out = []
    for aid in sorted(sysc.axioms):
        if _AXIOM_MATCHERS[aid](s):
            out.append(aid)
    return out


def check(system, d: Node) -> CheckReport:
    """Verify a derivation against a system; failures become verdicts."""
    sysc = calculus(system) if isinstance(system, str) else system
    failures = []
    for path, n in iter_nodes(d):
        cond = _check_node(sysc, n)
        if cond is not None:
            failures.append(CheckFailure(path, n.rule, cond))
    failures.sort(key=lambda f: f.path)
    return CheckReport(
        verdict=not failures,
        system=sysc.name,
        height=height(d),
        cut_rank=cut_rank(d),
        histogram=rule_histogram(d),
        failures=tuple(failures),
    )


def _check_node(sysc: SystemConfig, n: Node) -> Optional[str]:
    rid = n.rule
    if rid in _AXIOM_MATCHERS:
        if rid not in sysc.axioms:
            return f"axiom {rid} is not part of {display_name(sysc.name)}"
        if n.premises:
            return "initial sequents take no premises"
        if not _AXIOM_MATCHERS[rid](n.sequent):
            return f"sequent does not instantiate the {rid} schema"
        return None
    if rid in _RULE_VERIFIERS:
        if rid not in sysc.rules:
            return f"rule {rid} is not part of {display_name(sysc.name)}"
        env, err = _coerce_bindings(n, BINDING_SORTS[rid])
        if err:
            return err
        return _RULE_VERIFIERS[rid](sysc, n, env)
    return f"unknown rule {rid!r}"
