"""Derivation transformations.

Everything here rewrites checked derivations into checked derivations:
weakening, substitution, quantifier inversion, negation flips, cut
reduction down to quasi-normal form (or full cut freedom in the pure
logics), contraposition for the partial truth theories, the
literal-sequent rewrite from the classical truth theories with
internal induction into their partial counterparts, the reverse
embedding, node-weakening for derivations of truth-internalized
sequents, and the significant-inference check built on top of them.

Derivations are plain `Node` trees from `calculi`; no transformation
mutates its input.  Outputs are meant to be validated with
`calculi.check` by the caller (the test suite does so for every
operation).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence, Union

from .calculi import (
    All,
    And,
    BINDING_SORTS,
    CodeOp,
    DefAtom,
    Equal,
    Formula,
    Node,
    Not,
    Num,
    Sequent,
    Suc,
    SystemConfig,
    Term,
    Tr,
    Var,
    bounded_universal,
    calculus,
    check,
    cut_rank,
    height,
    is_atom,
    is_literal,
    is_pa_axiom,
    is_t_free,
    iter_nodes,
    match_axiom,
    node,
    pairing_table,
    sequent,
)
from .calculi import (
    _call,
    _cand,
    _ceq,
    _certified,
    _cfc_guard_sets,
    _clterm,
    _cneg,
    _cnum,
    _csub,
    _ctr,
    _cv,
    _neg_inst_all,
    _sent,
    _subst_inst,
)
from .coding import certify_eq, certify_sent, decode_formula, encode, eval_closed_atom
from .syntax import (
    Add,
    all_vars,
    closed,
    formula_size,
    free_vars,
    fresh_var,
    positive_complexity,
    show_formula,
    substitute,
)


class TransformError(Exception):
    """A transformation received input outside its contract."""


class UnsupportedTransform(TransformError):
    """The requested rewrite is not available for this input.

    Raised with a stable identifier first (e.g. ``"unsupported-spec"``)
    so callers and the command line can dispatch on it.
    """

    @property
    def code(self) -> str:
        return self.args[0] if self.args else "unsupported"


def _system(spec: Union[str, SystemConfig]) -> SystemConfig:
    return spec if isinstance(spec, SystemConfig) else calculus(spec)


# ---------------------------------------------------------------------------
# variable bookkeeping


def _fv_all(formulas: Iterable[Formula]) -> frozenset:
    out = frozenset()
    for f in formulas:
        out |= free_vars(f)
    return out


def _binders(e) -> frozenset:
    """All variable indices bound by a quantifier somewhere inside e."""
    out = frozenset()
    if isinstance(e, All):
        out |= {e.var}
    for sub in getattr(e, "__dict__", {}).values():
        if isinstance(sub, (tuple, list)):
            for x in sub:
                out |= _binders(x)
        elif hasattr(sub, "__dict__"):
            out |= _binders(sub)
    return out


# rules that bind an eigenvariable, and the binding key that names it
_EIGEN_KEY = {
    "all-r": "u",
    "neg-all-l": "u",
    "ind": "u",
    "ind-int": "u",
    "ti": "y",
}

# rules whose phi binding is a template over the variable named by key v
_TEMPLATE_RULES = {
    "all-l",
    "all-r",
    "neg-all-l",
    "neg-all-r",
    "rep-l",
    "rep-r",
    "ind",
    "ti",
}


def derivation_vars(d: Node) -> frozenset:
    """Every variable index occurring anywhere in the derivation."""
    out = frozenset()
    for _, n in iter_nodes(d):
        for f in n.sequent.ant | n.sequent.suc:
            out |= all_vars(f)
        for key, sort in BINDING_SORTS.get(n.rule, {}).items():
            val = n.bindings[key]
            if sort == "var":
                out |= {val}
            else:
                out |= all_vars(val)
    return out


def _eigen_of(n: Node) -> Optional[int]:
    key = _EIGEN_KEY.get(n.rule)
    return n.bindings[key] if key is not None else None


def _mk(rule: str, seq: Sequent, premises: Sequence[Node], bindings) -> Node:
    return node(rule, seq, tuple(premises), **dict(bindings))


# ---------------------------------------------------------------------------
# substitution through a derivation


def rename_eigen(n: Node, new: int) -> Node:
    """Rename the eigenvariable of n's rule to a globally fresh index."""
    key = _EIGEN_KEY[n.rule]
    old = n.bindings[key]
    if old == new:
        return n
    b = dict(n.bindings)
    b[key] = new
    prem = tuple(subst_deriv(p, Var(new), old) for p in n.premises)
    return _mk(n.rule, n.sequent, prem, b)


def subst_deriv(d: Node, t: Term, v: int) -> Node:
    """Substitute the term t for the free variable v everywhere in d.

    Eigenvariables that collide with t are renamed first.  A quantifier
    binder colliding with a free variable of t would be silently
    alpha-renamed by `substitute`, desynchronizing the recorded rule
    bindings, so that case is rejected instead.
    """
    fvt = free_vars(t)

    def go(n: Node) -> Node:
        eig = _eigen_of(n)
        if eig == v:
            # the rule binds v; no free occurrences above it
            return n
        if eig is not None and eig in fvt:
            n = rename_eigen(
                n, fresh_var(derivation_vars(n) | fvt | {v})
            )
        for f in n.sequent.ant | n.sequent.suc:
            clash = _binders(f) & fvt
            if clash:
                raise TransformError(
                    "substitution would capture: binder v%d occurs in %s"
                    % (sorted(clash)[0], show_formula(f))
                )
        sorts = BINDING_SORTS.get(n.rule, {})
        b = {}
        for key, sort in sorts.items():
            val = n.bindings[key]
            if sort == "var":
                b[key] = val
            elif (
                key == "phi"
                and n.rule in _TEMPLATE_RULES
                and n.bindings.get("v") == v
            ):
                b[key] = val  # template variable shadows v
            else:
                b[key] = substitute(val, t, v)
        seq = sequent(
            (substitute(f, t, v) for f in n.sequent.ant),
            (substitute(f, t, v) for f in n.sequent.suc),
        )
        return _mk(n.rule, seq, tuple(go(p) for p in n.premises), b)

    return go(d)


# ---------------------------------------------------------------------------
# weakening


def weaken(d: Node, extra_ant: Iterable[Formula] = (), extra_suc: Iterable[Formula] = ()) -> Node:
    """Add context formulas to every sequent in the derivation.

    Eigenvariables clashing with the added formulas are renamed, so the
    result checks whenever the input did.
    """
    add_a = frozenset(extra_ant)
    add_s = frozenset(extra_suc)
    if not add_a and not add_s:
        return d
    fv = _fv_all(add_a | add_s)

    def go(n: Node) -> Node:
        eig = _eigen_of(n)
        if eig is not None and eig in fv:
            n = rename_eigen(n, fresh_var(derivation_vars(n) | fv))
        seq = Sequent(n.sequent.ant | add_a, n.sequent.suc | add_s)
        return _mk(n.rule, seq, tuple(go(p) for p in n.premises), n.bindings)

    return go(d)


def weaken_to(d: Node, target: Sequent) -> Node:
    """Weaken d so its end sequent becomes exactly target."""
    s = d.sequent
    if not (s.ant <= target.ant and s.suc <= target.suc):
        raise TransformError(
            "cannot weaken: end sequent is not contained in the target"
        )
    if s == target:
        return d
    return weaken(d, target.ant - s.ant, target.suc - s.suc)


# ---------------------------------------------------------------------------
# premise shapes

# For each rule instance, the active formulas each premise must carry
# beyond the conclusion's context.  Mirrors the kernel's rule checkers;
# used to decide where a formula can be removed from a premise and
# where it is consumed by the rule itself.


def _ind_int_guard(n: Node) -> Formula:
    x = n.bindings["x"]
    for gname in ("Fml_1", "FmlPA_1"):
        g = DefAtom(gname, (x,))
        if all(g in p.sequent.ant for p in n.premises):
            return g
    return DefAtom("Fml_1", (x,))


def _premise_spec(n: Node):
    """List of (ant actives, suc actives) for each premise of n."""
    r = n.rule
    b = n.bindings
    if r == "cut":
        return [((), (b["phi"],)), ((b["phi"],), ())]
    if r == "and-l":
        return [((b["phi"], b["psi"]), ())]
    if r == "and-r":
        return [((), (b["phi"],)), ((), (b["psi"],))]
    if r == "all-l":
        return [((substitute(b["phi"], b["t"], b["v"]),), ())]
    if r == "all-r":
        return [((), (substitute(b["phi"], Var(b["u"]), b["v"]),))]
    if r == "neg-neg-l":
        return [((b["phi"],), ())]
    if r == "neg-neg-r":
        return [((), (b["phi"],))]
    if r == "neg-and-l":
        return [((Not(b["phi"]),), ()), ((Not(b["psi"]),), ())]
    if r == "neg-and-r":
        return [((), (Not(b["phi"]), Not(b["psi"])))]
    if r == "neg-all-l":
        return [((Not(substitute(b["phi"], Var(b["u"]), b["v"])),), ())]
    if r == "neg-all-r":
        return [((), (Not(substitute(b["phi"], b["t"], b["v"])),))]
    if r == "neg-l":
        return [((), (b["phi"],))]
    if r == "neg-r":
        return [((b["phi"],), ())]
    if r == "gg":
        return [((b["psi"],), ()), ((Not(b["psi"]),), ())]
    if r == "ref":
        return [((Equal(b["t"], b["t"]),), ())]
    if r == "rep-l":
        return [((substitute(b["phi"], b["t"], b["v"]),), ())]
    if r == "rep-r":
        return [
            ((), (substitute(b["phi"], b["t"], b["v"]),)),
            ((), (Equal(b["s"], b["t"]),)),
        ]
    if r == "eq-neg-l":
        return [((), (Equal(b["s"], b["t"]),))]
    if r == "eq-neg-r":
        return [((Equal(b["s"], b["t"]),), ())]
    if r == "atom-neg-l":
        return [((), (b["phi"],))]
    if r == "atom-neg-r":
        return [((b["phi"],), ())]
    if r == "t-rep-l":
        g = _clterm(b["x"])
        return [((g, Tr(_cv(b["x"]))), ())]
    if r == "t-rep-r":
        g = _clterm(b["x"])
        return [((g,), (Tr(_cv(b["x"])),))]
    if r == "t-nrep-l":
        x = b["x"]
        g = _clterm(x)
        return [
            ((g, Tr(_cneg(_cv(x)))), ()),
            ((g, Not(_sent(_cv(x)))), ()),
        ]
    if r == "t-nrep-r":
        x = b["x"]
        g = _clterm(x)
        return [((g,), (Tr(_cneg(_cv(x))), Not(_sent(_cv(x)))))]
    if r == "t-dneg-l":
        g = _sent(b["x"])
        return [((g, Tr(b["x"])), ())]
    if r == "t-dneg-r":
        g = _sent(b["x"])
        return [((g,), (Tr(b["x"]),))]
    if r == "t-and-l":
        g = _sent(_cand(b["x"], b["y"]))
        return [((g, Tr(b["x"]), Tr(b["y"])), ())]
    if r == "t-and-r":
        g = _sent(_cand(b["x"], b["y"]))
        return [((g,), (Tr(b["x"]),)), ((g,), (Tr(b["y"]),))]
    if r == "t-nand-l":
        g = _sent(_cand(b["x"], b["y"]))
        return [
            ((g, Tr(_cneg(b["x"]))), ()),
            ((g, Tr(_cneg(b["y"]))), ()),
        ]
    if r == "t-nand-r":
        g = _sent(_cand(b["x"], b["y"]))
        return [((g,), (Tr(_cneg(b["x"])), Tr(_cneg(b["y"]))))]
    if r == "t-all-l":
        g = _sent(_call(b["v"], b["x"]))
        inner = All(b["y"], _subst_inst(b["x"], Var(b["y"]), b["v"]))
        return [((g, inner), ())]
    if r == "t-all-r":
        g = _sent(_call(b["v"], b["x"]))
        inner = All(b["z"], _subst_inst(b["x"], Var(b["z"]), b["v"]))
        return [((g,), (inner,))]
    if r == "t-nall-l":
        g = _sent(_call(b["v"], b["x"]))
        return [((g, _neg_inst_all(b["x"], b["v"], b["z"])), ())]
    if r == "t-nall-r":
        g = _sent(_call(b["v"], b["x"]))
        return [((g,), (_neg_inst_all(b["x"], b["v"], b["z"]),))]
    if r == "ind":
        lo = substitute(b["phi"], Var(b["u"]), b["v"])
        hi = substitute(b["phi"], Suc(Var(b["u"])), b["v"])
        return [((lo,), (hi,))]
    if r == "ind-int":
        lo = _subst_inst(b["x"], Var(b["u"]), b["v"])
        hi = _subst_inst(b["x"], Suc(Var(b["u"])), b["v"])
        return [((_ind_int_guard(n), lo), (hi,))]
    if r == "ti":
        guard = bounded_universal(b["z"], Var(b["y"]), b["phi"], b["v"])
        goal = substitute(b["phi"], Var(b["y"]), b["v"])
        return [((guard,), (goal,))]
    return [((), ()) for _ in n.premises]


# ---------------------------------------------------------------------------
# small derivations used as building blocks


def init_leaf(phi: Formula, ant: Iterable[Formula] = (), suc: Iterable[Formula] = ()) -> Node:
    if not is_literal(phi):
        raise TransformError("identity leaves need a literal")
    return node("init", sequent(set(ant) | {phi}, set(suc) | {phi}))


def _axiom_leaf(sysc: SystemConfig, seq: Sequent) -> Node:
    ids = match_axiom(sysc, seq)
    if not ids:
        raise TransformError(
            "no axiom of %s matches the rebuilt leaf" % sysc.name
        )
    return node(ids[0], seq)


def identity_expansion(sysc: SystemConfig, phi: Formula, ant=(), suc=()) -> Node:
    """A derivation of phi, ant => suc, phi built from literal leaves."""
    A = frozenset(ant)
    S = frozenset(suc)
    tgt = Sequent(A | {phi}, S | {phi})
    if is_literal(phi):
        return init_leaf(phi, A, S)
    if isinstance(phi, And):
        a, c = phi.left, phi.right
        p1 = _mk(
            "and-l",
            Sequent(A | {phi}, S | {a}),
            (weaken(identity_expansion(sysc, a, A, S), {c}, ()),),
            {"phi": a, "psi": c},
        )
        p2 = _mk(
            "and-l",
            Sequent(A | {phi}, S | {c}),
            (weaken(identity_expansion(sysc, c, A, S), {a}, ()),),
            {"phi": a, "psi": c},
        )
        return _mk("and-r", tgt, (p1, p2), {"phi": a, "psi": c})
    if isinstance(phi, All):
        v, body = phi.var, phi.body
        u = fresh_var(all_vars(phi) | _fv_all(A | S))
        inst = substitute(body, Var(u), v)
        core = identity_expansion(sysc, inst, A, S)
        below = _mk(
            "all-l",
            Sequent(A | {phi}, S | {inst}),
            (core,),
            {"phi": body, "v": v, "t": Var(u)},
        )
        return _mk(
            "all-r", tgt, (below,), {"phi": body, "v": v, "u": u}
        )
    if isinstance(phi, Not):
        body = phi.body
        if sysc.neg_left == "full" and sysc.neg_right == "full":
            core = identity_expansion(sysc, body, A, S)
            nl = _mk(
                "neg-l",
                Sequent(A | {phi, body}, S),
                (core,),
                {"phi": body},
            )
            return _mk("neg-r", tgt, (nl,), {"phi": body})
        if isinstance(body, Not):
            core = identity_expansion(sysc, body.body, A, S)
            below = _mk(
                "neg-neg-l",
                Sequent(A | {phi}, S | {body.body}),
                (core,),
                {"phi": body.body},
            )
            return _mk("neg-neg-r", tgt, (below,), {"phi": body.body})
        if isinstance(body, And):
            a, c = body.left, body.right
            na, nc = Not(a), Not(c)
            p1 = weaken(identity_expansion(sysc, na, A, S), (), {nc})
            p2 = weaken(identity_expansion(sysc, nc, A, S), (), {na})
            below = _mk(
                "neg-and-l",
                Sequent(A | {phi}, S | {na, nc}),
                (p1, p2),
                {"phi": a, "psi": c},
            )
            return _mk("neg-and-r", tgt, (below,), {"phi": a, "psi": c})
        if isinstance(body, All):
            # neg-all-l carries the eigencondition, so it must sit at
            # the root where the instance no longer appears
            v, inner = body.var, body.body
            u = fresh_var(all_vars(phi) | _fv_all(A | S))
            ninst = Not(substitute(inner, Var(u), v))
            core = identity_expansion(sysc, ninst, A, S)
            below = _mk(
                "neg-all-r",
                Sequent(A | {ninst}, S | {phi}),
                (core,),
                {"phi": inner, "v": v, "t": Var(u)},
            )
            return _mk(
                "neg-all-l",
                tgt,
                (below,),
                {"phi": inner, "v": v, "u": u},
            )
    raise TransformError(
        "no identity expansion for %s in %s" % (show_formula(phi), sysc.name)
    )


def symmetry_deriv(s: Term, t: Term, ant=(), suc=()) -> Node:
    """s=t, ant => suc, t=s using replacement on the left and reflexivity."""
    A = frozenset(ant)
    S = frozenset(suc)
    w = fresh_var(all_vars(s) | all_vars(t) | _fv_all(A | S))
    ts = Equal(t, s)
    leaf = init_leaf(ts, A, S)
    r1 = _mk(
        "rep-l",
        Sequent(A | {Equal(s, t), Equal(s, s)}, S | {ts}),
        (leaf,),
        {"phi": Equal(Var(w), s), "v": w, "s": s, "t": t},
    )
    return _mk(
        "ref",
        Sequent(A | {Equal(s, t)}, S | {ts}),
        (r1,),
        {"t": s},
    )


def rep_schema(phi: Formula, v: int, s: Term, t: Term, ant=(), suc=()) -> Node:
    """s=t, phi[s/v], ant => suc, phi[t/v], cut free."""
    if not is_literal(phi):
        raise TransformError("replacement schema needs a literal")
    A = frozenset(ant)
    S = frozenset(suc)
    at_s = substitute(phi, s, v)
    at_t = substitute(phi, t, v)
    leaf = init_leaf(at_t, A, S)
    return _mk(
        "rep-l",
        Sequent(A | {Equal(s, t), at_s}, S | {at_t}),
        (leaf,),
        {"phi": phi, "v": v, "s": s, "t": t},
    )


def rep_schema_rev(phi: Formula, v: int, s: Term, t: Term, ant=(), suc=()) -> Node:
    """s=t, phi[t/v], ant => suc, phi[s/v]; one literal cut on t=s."""
    A = frozenset(ant)
    S = frozenset(suc)
    at_s = substitute(phi, s, v)
    at_t = substitute(phi, t, v)
    sy = symmetry_deriv(s, t, A | {at_t}, S | {at_s})
    rs = rep_schema(phi, v, t, s, A, S)
    return _mk(
        "cut",
        Sequent(A | {Equal(s, t), at_t}, S | {at_s}),
        (sy, rs),
        {"phi": Equal(t, s)},
    )


# ---------------------------------------------------------------------------
# classical behaviour of negation on truth-free formulas


def classical_arith(phi: Formula, ant=(), suc=(), family: str = "pkf"):
    """Excluded middle and explosion for a truth-free formula.

    Returns a pair (em, ex) with em deriving ant => suc, phi, ~phi and
    ex deriving phi, ~phi, ant => suc.  In the partial family both are
    built by recursion on phi from the equality and defined-predicate
    negation rules; with family="cl" the classical negation rules are
    used instead and phi may mention the truth predicate.
    """
    A = frozenset(ant)
    S = frozenset(suc)
    neg = Not(phi)
    em_seq = Sequent(A, S | {phi, neg})
    ex_seq = Sequent(A | {phi, neg}, S)
    if family == "cl":
        sysc = calculus("cl-eq")
        em = _mk(
            "neg-r",
            em_seq,
            (identity_expansion(sysc, phi, A, S | {phi}),),
            {"phi": phi},
        )
        ex = _mk(
            "neg-l",
            ex_seq,
            (identity_expansion(sysc, phi, A | {phi}, S),),
            {"phi": phi},
        )
        return em, ex
    if not is_t_free(phi):
        raise TransformError(
            "classical negation figures need a truth-free formula"
        )
    if isinstance(phi, Equal):
        b = {"s": phi.left, "t": phi.right}
        em = _mk("eq-neg-r", em_seq, (init_leaf(phi, A, S | {phi}),), b)
        ex = _mk("eq-neg-l", ex_seq, (init_leaf(phi, A | {phi}, S),), b)
        return em, ex
    if isinstance(phi, DefAtom):
        b = {"phi": phi}
        em = _mk("atom-neg-r", em_seq, (init_leaf(phi, A, S | {phi}),), b)
        ex = _mk("atom-neg-l", ex_seq, (init_leaf(phi, A | {phi}, S),), b)
        return em, ex
    if isinstance(phi, Not):
        body = phi.body
        em0, ex0 = classical_arith(body, A, S, family)
        em = _mk("neg-neg-r", em_seq, (em0,), {"phi": body})
        ex = _mk("neg-neg-l", ex_seq, (ex0,), {"phi": body})
        return em, ex
    if isinstance(phi, And):
        a, c = phi.left, phi.right
        na, nc = Not(a), Not(c)
        em_a, ex_a = classical_arith(a, A, S, family)
        em_c, ex_c = classical_arith(c, A, S, family)
        # right half: prove each conjunct alongside ~(a & c)
        b1 = _mk(
            "neg-and-r",
            Sequent(A, S | {a, neg}),
            (weaken(em_a, (), {nc}),),
            {"phi": a, "psi": c},
        )
        b2 = _mk(
            "neg-and-r",
            Sequent(A, S | {c, neg}),
            (weaken(em_c, (), {na}),),
            {"phi": a, "psi": c},
        )
        em = _mk("and-r", em_seq, (b1, b2), {"phi": a, "psi": c})
        # left half: decompose the conjunction, split on which half fails
        a1 = _mk(
            "and-l",
            Sequent(A | {phi, na}, S),
            (weaken(ex_a, {c}, ()),),
            {"phi": a, "psi": c},
        )
        a2 = _mk(
            "and-l",
            Sequent(A | {phi, nc}, S),
            (weaken(ex_c, {a}, ()),),
            {"phi": a, "psi": c},
        )
        ex = _mk("neg-and-l", ex_seq, (a1, a2), {"phi": a, "psi": c})
        return em, ex
    if isinstance(phi, All):
        v, body = phi.var, phi.body
        u = fresh_var(all_vars(phi) | _fv_all(A | S))
        inst = substitute(body, Var(u), v)
        em_i, ex_i = classical_arith(inst, A, S, family)
        # ant => suc, forall, neg forall
        st1 = _mk(
            "neg-all-r",
            Sequent(A, S | {inst, neg}),
            (em_i,),
            {"phi": body, "v": v, "t": Var(u)},
        )
        em = _mk(
            "all-r", em_seq, (st1,), {"phi": body, "v": v, "u": u}
        )
        # forall, neg forall, ant => suc
        st2 = _mk(
            "all-l",
            Sequent(A | {phi, Not(inst)}, S),
            (ex_i,),
            {"phi": body, "v": v, "t": Var(u)},
        )
        ex = _mk(
            "neg-all-l", ex_seq, (st2,), {"phi": body, "v": v, "u": u}
        )
        return em, ex
    raise TransformError("unexpected formula shape: " + show_formula(phi))


def make_neg_l(d: Node, phi: Formula, family: str = "pkf") -> Node:
    """From a derivation of Gamma => Delta, phi build ~phi, Gamma => Delta."""
    if phi not in d.sequent.suc:
        raise TransformError("the formula is not on the succedent")
    gamma = d.sequent.ant
    delta = d.sequent.suc - {phi}
    _, ex = classical_arith(phi, gamma, delta, family)
    return _mk(
        "cut",
        Sequent(gamma | {Not(phi)}, delta),
        (d, ex),
        {"phi": phi},
    )


def make_neg_r(d: Node, phi: Formula, family: str = "pkf") -> Node:
    """From a derivation of phi, Gamma => Delta build Gamma => Delta, ~phi."""
    if phi not in d.sequent.ant:
        raise TransformError("the formula is not on the antecedent")
    gamma = d.sequent.ant - {phi}
    delta = d.sequent.suc
    em, _ = classical_arith(phi, gamma, delta | {Not(phi)}, family)
    return _mk(
        "cut",
        Sequent(gamma, delta | {Not(phi)}),
        (em, d),
        {"phi": phi},
    )


# ---------------------------------------------------------------------------
# literal splitting


@dataclass(frozen=True)
class LiteralSplit:
    """A literal sequent sorted into positive and negated atoms."""

    gamma_plus: frozenset
    gamma_minus: frozenset
    delta_plus: frozenset
    delta_minus: frozenset

    @property
    def sequent(self) -> Sequent:
        return Sequent(
            self.gamma_plus | self.delta_minus,
            self.gamma_minus | self.delta_plus,
        )


def split_literals(s: Sequent) -> LiteralSplit:
    def sort(side):
        plus, minus = set(), set()
        for f in side:
            if is_atom(f):
                plus.add(f)
            elif isinstance(f, Not) and is_atom(f.body):
                minus.add(f.body)
            else:
                raise TransformError(
                    "not a literal: " + show_formula(f)
                )
        return frozenset(plus), frozenset(minus)

    gp, gm = sort(s.ant)
    dp, dm = sort(s.suc)
    return LiteralSplit(gp, gm, dp, dm)


# ---------------------------------------------------------------------------
# quantifier inversion


def _rewrite_leaf(sysc: SystemConfig, tgt: Sequent) -> Node:
    return _axiom_leaf(sysc, tgt)


def invert_forall_right(sysc: SystemConfig, d: Node, target: Formula, u: int) -> Node:
    """Replace a universal on the succedent by its u-instance, height preserving."""
    if not isinstance(target, All):
        raise TransformError("right inversion expects a universal")
    if u in derivation_vars(d):
        raise TransformError(
            "the inversion eigenvariable must be globally fresh"
        )
    inst = substitute(target.body, Var(u), target.var)

    def go(n: Node) -> Node:
        if target not in n.sequent.suc:
            return n
        tgt = Sequent(n.sequent.ant, (n.sequent.suc - {target}) | {inst})
        if (
            n.rule == "all-r"
            and All(n.bindings["v"], n.bindings["phi"]) == target
        ):
            p = n.premises[0]
            if n.bindings["u"] != u:
                p = subst_deriv(p, Var(u), n.bindings["u"])
            if target in p.sequent.suc:
                p = go(p)
            return weaken_to(p, tgt)
        if not n.premises:
            return _rewrite_leaf(sysc, tgt)
        if n.rule == "cut" and n.bindings["phi"] == target:
            raise TransformError("cannot invert through a cut on the target")
        spec = _premise_spec(n)
        prem = []
        for p, (_, sacts) in zip(n.premises, spec):
            if target in p.sequent.suc and target not in sacts:
                prem.append(go(p))
            else:
                prem.append(weaken(p, (), {inst}))
        return _mk(n.rule, tgt, prem, n.bindings)

    return go(d)


def invert_forall_left(
    sysc: SystemConfig,
    d: Node,
    target: Formula,
    fallback: Optional[Term] = None,
) -> Node:
    """Replace a universal on the antecedent by a single witness instance.

    The witness is read off the derivation; distinct witnesses at
    different introduction sites are not supported.
    """
    if not isinstance(target, All):
        raise TransformError("left inversion expects a universal")
    witnesses = set()
    for _, n in iter_nodes(d):
        if (
            n.rule == "all-l"
            and All(n.bindings["v"], n.bindings["phi"]) == target
        ):
            witnesses.add(n.bindings["t"])
    if len(witnesses) > 1:
        raise UnsupportedTransform(
            "multi-witness",
            "the universal is instantiated with %d different terms"
            % len(witnesses),
        )
    w = next(iter(witnesses)) if witnesses else (fallback if fallback is not None else Num(0))
    eigs = {
        _eigen_of(n) for _, n in iter_nodes(d) if _eigen_of(n) is not None
    }
    if free_vars(w) & eigs:
        raise UnsupportedTransform(
            "witness-eigen-clash",
            "the witness mentions an eigenvariable of the derivation",
        )
    inst = substitute(target.body, w, target.var)

    def go(n: Node) -> Node:
        if target not in n.sequent.ant:
            return n
        tgt = Sequent((n.sequent.ant - {target}) | {inst}, n.sequent.suc)
        if (
            n.rule == "all-l"
            and All(n.bindings["v"], n.bindings["phi"]) == target
        ):
            p = n.premises[0]
            if target in p.sequent.ant:
                p = go(p)
            return weaken_to(p, tgt)
        if not n.premises:
            return _rewrite_leaf(sysc, tgt)
        if n.rule == "cut" and n.bindings["phi"] == target:
            raise TransformError("cannot invert through a cut on the target")
        spec = _premise_spec(n)
        prem = []
        for p, (aacts, _) in zip(n.premises, spec):
            if target in p.sequent.ant and target not in aacts:
                prem.append(go(p))
            else:
                prem.append(weaken(p, {inst}, ()))
        return _mk(n.rule, tgt, prem, n.bindings)

    return go(d), w


def invert_forall(spec, d: Node, side: str, target: Formula, witness=None) -> Node:
    """Public inversion entry point for the internal-induction systems."""
    sysc = _system(spec)
    if not (
        sysc.family == "kf"
        and sysc.induction in ("internal", "internal-restricted")
    ):
        raise TransformError(
            "inversion is provided for the internal-induction systems"
        )
    s = d.sequent
    if side == "right":
        if target not in s.suc:
            raise TransformError("occurrence absent from the succedent")
        if not isinstance(witness, int):
            raise TransformError(
                "right inversion needs a fresh variable index"
            )
        return invert_forall_right(sysc, d, target, witness)
    if side == "left":
        if target not in s.ant:
            raise TransformError("occurrence absent from the antecedent")
        out, _ = invert_forall_left(sysc, d, target, witness)
        return out
    raise TransformError("side must be left or right")


# ---------------------------------------------------------------------------
# negation flips

# Move a negated formula across the sequent arrow: from a derivation
# with ~psi on the succedent produce one with psi on the antecedent
# (and dually).  Supported where the negation is introduced by the
# full negation rules or, for literals, by replacement; this covers
# the classical truth systems and the pure classical logic.


def flip_neg_right(sysc: SystemConfig, d: Node, target: Formula) -> Node:
    if not isinstance(target, Not):
        raise TransformError("flips act on negated formulas")
    body = target.body

    def go(n: Node) -> Node:
        if target not in n.sequent.suc:
            return n
        tgt = Sequent(n.sequent.ant | {body}, n.sequent.suc - {target})
        if n.rule == "neg-r" and n.bindings["phi"] == body:
            p = n.premises[0]
            if target in p.sequent.suc:
                p = go(p)
            return weaken_to(p, tgt)
        if n.rule in ("neg-all-r", "neg-neg-r", "neg-and-r", "rep-r"):
            concl_active = {
                "neg-all-r": lambda b: Not(All(b["v"], b["phi"])),
                "neg-neg-r": lambda b: Not(Not(b["phi"])),
                "neg-and-r": lambda b: Not(And(b["phi"], b["psi"])),
                "rep-r": lambda b: substitute(b["phi"], b["s"], b["v"]),
            }[n.rule](n.bindings)
            if concl_active == target:
                raise TransformError(
                    "flip does not cover an introduction by " + n.rule
                )
        if not n.premises:
            try:
                return _rewrite_leaf(sysc, tgt)
            except TransformError:
                if target in tgt.ant and is_atom(body) and "neg-l" in sysc.rules:
                    leaf = init_leaf(body, tgt.ant, tgt.suc)
                    return _mk("neg-l", tgt, (leaf,), {"phi": body})
                raise
        if n.rule == "cut" and n.bindings["phi"] == target:
            raise TransformError("cannot flip through a cut on the target")
        spec = _premise_spec(n)
        prem = []
        for p, (_, sacts) in zip(n.premises, spec):
            if target in p.sequent.suc and target not in sacts:
                prem.append(go(p))
            else:
                prem.append(weaken(p, {body}, ()))
        return _mk(n.rule, tgt, prem, n.bindings)

    return go(d)


def flip_neg_left(sysc: SystemConfig, d: Node, target: Formula) -> Node:
    if not isinstance(target, Not):
        raise TransformError("flips act on negated formulas")
    body = target.body

    def go(n: Node) -> Node:
        if target not in n.sequent.ant:
            return n
        tgt = Sequent(n.sequent.ant - {target}, n.sequent.suc | {body})
        if n.rule == "neg-l" and n.bindings["phi"] == body:
            p = n.premises[0]
            if target in p.sequent.ant:
                p = go(p)
            return weaken_to(p, tgt)
        if n.rule == "rep-l":
            b = n.bindings
            at_s = substitute(b["phi"], b["s"], b["v"])
            if at_s == target:
                # the negated literal was produced by replacement;
                # reroute through the schema on its positive atom
                if not is_atom(body):
                    raise TransformError(
                        "flip through replacement needs a negated atom"
                    )
                pat = b["phi"].body
                at_t = substitute(b["phi"], b["t"], b["v"])
                p = n.premises[0]
                q = flip_neg_left(sysc, p, at_t) if at_t in p.sequent.ant else p
                if target in q.sequent.ant:
                    q = go(q)
                # q : C => D, body[t]
                qs = q.sequent
                body_t = substitute(pat, b["t"], b["v"])
                body_s = body
                eq = Equal(b["s"], b["t"])
                ctx_a = qs.ant
                ctx_s = qs.suc - {body_t}
                s1 = rep_schema(
                    pat, b["v"], b["t"], b["s"], ctx_a, ctx_s
                )
                sy = symmetry_deriv(
                    b["s"], b["t"], ctx_a | {body_t}, ctx_s | {body_s}
                )
                t1 = _lit_cut(
                    sysc,
                    sy,
                    s1,
                    Equal(b["t"], b["s"]),
                    Sequent(ctx_a | {eq, body_t}, ctx_s | {body_s}),
                )
                t2 = _lit_cut(
                    sysc,
                    q,
                    t1,
                    body_t,
                    Sequent(ctx_a | {eq}, ctx_s | {body_s}),
                )
                return weaken_to(t2, tgt)
        if not n.premises:
            try:
                return _rewrite_leaf(sysc, tgt)
            except TransformError:
                if target in tgt.suc and is_atom(body) and "neg-r" in sysc.rules:
                    leaf = init_leaf(body, tgt.ant, tgt.suc)
                    return _mk("neg-r", tgt, (leaf,), {"phi": body})
                if is_pa_axiom(body) and "pa" in sysc.axioms:
                    return node("pa", tgt)
                raise
        if n.rule == "cut" and n.bindings["phi"] == target:
            raise TransformError("cannot flip through a cut on the target")
        spec = _premise_spec(n)
        prem = []
        for p, (aacts, _) in zip(n.premises, spec):
            if target in p.sequent.ant and target not in aacts:
                prem.append(go(p))
            else:
                prem.append(weaken(p, (), {body}))
        return _mk(n.rule, tgt, prem, n.bindings)

    return go(d)


# ---------------------------------------------------------------------------
# double negation inversion (partial systems)


def invert_negneg_right(sysc: SystemConfig, d: Node, target: Formula) -> Node:
    """Replace ~~psi on the succedent by psi."""
    if not (isinstance(target, Not) and isinstance(target.body, Not)):
        raise TransformError("expected a doubly negated formula")
    psi = target.body.body

    def go(n: Node) -> Node:
        if target not in n.sequent.suc:
            return n
        tgt = Sequent(n.sequent.ant, (n.sequent.suc - {target}) | {psi})
        if n.rule == "neg-neg-r" and n.bindings["phi"] == psi:
            p = n.premises[0]
            if target in p.sequent.suc:
                p = go(p)
            return weaken_to(p, tgt)
        if n.rule == "cut" and n.bindings["phi"] == target:
            p1 = go(n.premises[0])
            p2 = invert_negneg_left(sysc, n.premises[1], target)
            return _mk("cut", tgt, (p1, p2), {"phi": psi})
        if not n.premises:
            return _rewrite_leaf(sysc, tgt)
        spec = _premise_spec(n)
        prem = []
        for p, (_, sacts) in zip(n.premises, spec):
            if target in p.sequent.suc and target not in sacts:
                prem.append(go(p))
            else:
                prem.append(weaken(p, (), {psi}))
        return _mk(n.rule, tgt, prem, n.bindings)

    return go(d)


def invert_negneg_left(sysc: SystemConfig, d: Node, target: Formula) -> Node:
    """Replace ~~psi on the antecedent by psi."""
    if not (isinstance(target, Not) and isinstance(target.body, Not)):
        raise TransformError("expected a doubly negated formula")
    psi = target.body.body

    def go(n: Node) -> Node:
        if target not in n.sequent.ant:
            return n
        tgt = Sequent((n.sequent.ant - {target}) | {psi}, n.sequent.suc)
        if n.rule == "neg-neg-l" and n.bindings["phi"] == psi:
            p = n.premises[0]
            if target in p.sequent.ant:
                p = go(p)
            return weaken_to(p, tgt)
        if n.rule == "cut" and n.bindings["phi"] == target:
            p1 = invert_negneg_right(sysc, n.premises[0], target)
            p2 = go(n.premises[1])
            return _mk("cut", tgt, (p1, p2), {"phi": psi})
        if not n.premises:
            try:
                return _rewrite_leaf(sysc, tgt)
            except TransformError:
                # ~psi can be an arithmetic axiom matched through the
                # double negation; recover by cutting on it
                if is_t_free(psi) and "pa" in sysc.axioms and is_pa_axiom(Not(psi)):
                    pa = node(
                        "pa", Sequent(tgt.ant, tgt.suc | {Not(psi)})
                    )
                    _, ex = classical_arith(
                        psi, tgt.ant, tgt.suc
                    )
                    return _mk(
                        "cut", tgt, (pa, ex), {"phi": Not(psi)}
                    )
                raise
        spec = _premise_spec(n)
        prem = []
        for p, (aacts, _) in zip(n.premises, spec):
            if target in p.sequent.ant and target not in aacts:
                prem.append(go(p))
            else:
                prem.append(weaken(p, {psi}, ()))
        return _mk(n.rule, tgt, prem, n.bindings)

    return go(d)


# ---------------------------------------------------------------------------
# cut reduction


def _cut_seq(left: Node, right: Node, phi: Formula) -> Sequent:
    return Sequent(
        left.sequent.ant | (right.sequent.ant - {phi}),
        (left.sequent.suc - {phi}) | right.sequent.suc,
    )


_RIGHT_INTRO = {
    "and-r": lambda b: And(b["phi"], b["psi"]),
    "all-r": lambda b: All(b["v"], b["phi"]),
    "neg-neg-r": lambda b: Not(Not(b["phi"])),
    "neg-and-r": lambda b: Not(And(b["phi"], b["psi"])),
    "neg-all-r": lambda b: Not(All(b["v"], b["phi"])),
    "neg-r": lambda b: Not(b["phi"]),
}

_LEFT_INTRO = {
    "and-l": lambda b: And(b["phi"], b["psi"]),
    "all-l": lambda b: All(b["v"], b["phi"]),
    "neg-neg-l": lambda b: Not(Not(b["phi"])),
    "neg-and-l": lambda b: Not(And(b["phi"], b["psi"])),
    "neg-all-l": lambda b: Not(All(b["v"], b["phi"])),
    "neg-l": lambda b: Not(b["phi"]),
}


def _principal_right(n: Node, phi: Formula) -> bool:
    fn = _RIGHT_INTRO.get(n.rule)
    return fn is not None and fn(n.bindings) == phi


def _principal_left(n: Node, phi: Formula) -> bool:
    fn = _LEFT_INTRO.get(n.rule)
    return fn is not None and fn(n.bindings) == phi


def _freshen_eigen(d: Node, avoid: frozenset) -> Node:
    eig = _eigen_of(d)
    if eig is not None and eig in avoid:
        return rename_eigen(
            d, fresh_var(derivation_vars(d) | avoid)
        )
    return d


def _norm_left(sysc, p: Node, d2: Node, phi: Formula, full: bool) -> Node:
    """Remove phi from p's succedent, importing d2's contexts."""
    tgt = _cut_seq(p, d2, phi)
    if phi in p.sequent.suc:
        return _cut_elim(sysc, p, d2, phi, tgt, full)
    return weaken_to(p, tgt)


def _norm_right(sysc, d1: Node, q: Node, phi: Formula, full: bool) -> Node:
    """Remove phi from q's antecedent, importing d1's contexts."""
    tgt = _cut_seq(d1, q, phi)
    if phi in q.sequent.ant:
        return _cut_elim(sysc, d1, q, phi, tgt, full)
    return weaken_to(q, tgt)


def _push_into_left(sysc, d1, d2, phi, target, full) -> Node:
    inc_a = d2.sequent.ant - {phi}
    inc_s = d2.sequent.suc
    d1 = _freshen_eigen(d1, _fv_all(inc_a | inc_s))
    spec = _premise_spec(d1)
    prem = []
    for p, (_, sacts) in zip(d1.premises, spec):
        if phi in p.sequent.suc:
            q = _cut_elim(sysc, p, d2, phi, _cut_seq(p, d2, phi), full)
            if phi in sacts:
                q = weaken(q, (), {phi})
            prem.append(q)
        else:
            prem.append(weaken(p, inc_a, inc_s))
    return _mk(d1.rule, target, prem, d1.bindings)


def _push_into_right(sysc, d1, d2, phi, target, full) -> Node:
    inc_a = d1.sequent.ant
    inc_s = d1.sequent.suc - {phi}
    d2 = _freshen_eigen(d2, _fv_all(inc_a | inc_s))
    spec = _premise_spec(d2)
    prem = []
    for p, (aacts, _) in zip(d2.premises, spec):
        if phi in p.sequent.ant:
            q = _cut_elim(sysc, d1, p, phi, _cut_seq(d1, p, phi), full)
            if phi in aacts:
                q = weaken(q, {phi}, ())
            prem.append(q)
        else:
            prem.append(weaken(p, inc_a, inc_s))
    return _mk(d2.rule, target, prem, d2.bindings)


def _pair_reduce(sysc, d1, d2, phi, target, full) -> Node:
    """Both premises introduce phi principally; cut the subformulas."""
    if d1.rule == "and-r" and d2.rule == "and-l":
        a, c = phi.left, phi.right
        a1 = _norm_left(sysc, d1.premises[0], d2, phi, full)
        a2 = _norm_left(sysc, d1.premises[1], d2, phi, full)
        bc = _norm_right(sysc, d1, d2.premises[0], phi, full)
        c1 = _cut_elim(sysc, a2, bc, c, _cut_seq(a2, bc, c), full)
        out = _cut_elim(sysc, a1, c1, a, _cut_seq(a1, c1, a), full)
        return weaken_to(out, target)
    if d1.rule == "all-r" and d2.rule == "all-l":
        w = d2.bindings["t"]
        d1 = _freshen_eigen(d1, free_vars(w))
        u = d1.bindings["u"]
        a = _norm_left(sysc, d1.premises[0], d2, phi, full)
        q = _norm_right(sysc, d1, d2.premises[0], phi, full)
        inst = substitute(phi.body, w, phi.var)
        a_w = subst_deriv(a, w, u)
        out = _cut_elim(sysc, a_w, q, inst, _cut_seq(a_w, q, inst), full)
        return weaken_to(out, target)
    if d1.rule == "neg-r" and d2.rule == "neg-l":
        psi = phi.body
        p1 = _norm_left(sysc, d1.premises[0], d2, phi, full)
        p2 = _norm_right(sysc, d1, d2.premises[0], phi, full)
        out = _cut_elim(sysc, p2, p1, psi, _cut_seq(p2, p1, psi), full)
        return weaken_to(out, target)
    if d1.rule == "neg-neg-r" and d2.rule == "neg-neg-l":
        psi = phi.body.body
        p1 = _norm_left(sysc, d1.premises[0], d2, phi, full)
        p2 = _norm_right(sysc, d1, d2.premises[0], phi, full)
        out = _cut_elim(sysc, p1, p2, psi, _cut_seq(p1, p2, psi), full)
        return weaken_to(out, target)
    if d1.rule == "neg-and-r" and d2.rule == "neg-and-l":
        na = Not(phi.body.left)
        nc = Not(phi.body.right)
        p = _norm_left(sysc, d1.premises[0], d2, phi, full)
        q1 = _norm_right(sysc, d1, d2.premises[0], phi, full)
        q2 = _norm_right(sysc, d1, d2.premises[1], phi, full)
        c1 = _cut_elim(sysc, p, q1, na, _cut_seq(p, q1, na), full)
        out = _cut_elim(sysc, c1, q2, nc, _cut_seq(c1, q2, nc), full)
        return weaken_to(out, target)
    if d1.rule == "neg-all-r" and d2.rule == "neg-all-l":
        w = d1.bindings["t"]
        d2 = _freshen_eigen(d2, free_vars(w))
        u = d2.bindings["u"]
        p = _norm_left(sysc, d1.premises[0], d2, phi, full)
        q = _norm_right(sysc, d1, d2.premises[0], phi, full)
        q_w = subst_deriv(q, w, u)
        ninst = Not(substitute(phi.body.body, w, phi.body.var))
        out = _cut_elim(sysc, p, q_w, ninst, _cut_seq(p, q_w, ninst), full)
        return weaken_to(out, target)
    if not d1.premises and d2.rule == "all-l":
        # an axiom carrying the universal: re-instantiate it directly
        w = d2.bindings["t"]
        inst = substitute(phi.body, w, phi.var)
        leaf_seq = Sequent(target.ant, target.suc | {inst})
        leaf = _axiom_leaf(sysc, leaf_seq)
        q = _norm_right(sysc, d1, d2.premises[0], phi, full)
        out = _cut_elim(sysc, leaf, q, inst, _cut_seq(leaf, q, inst), full)
        return weaken_to(out, target)
    raise TransformError(
        "no reduction for a cut between %s and %s on %s"
        % (d1.rule, d2.rule, show_formula(phi))
    )


def _lit_cut(sysc, d1, d2, phi, target) -> Node:
    """Eliminate a cut on a literal in a pure logic."""
    s1, s2 = d1.sequent, d2.sequent
    if phi not in s1.suc or phi in s2.suc:
        return weaken_to(d1, target)
    if phi not in s2.ant or phi in s1.ant:
        return weaken_to(d2, target)
    if sysc.base_logic == "lp":
        # no rule of LP introduces a literal on the left
        if not d2.premises:
            red = Sequent(s2.ant - {phi}, s2.suc)
            ids = match_axiom(sysc, red)
            if ids:
                return node(ids[0], target)
            raise TransformError("stuck literal cut against " + d2.rule)
        return _push_into_right(sysc, d1, d2, phi, target, True)
    # elsewhere no rule introduces a literal on the right, except the
    # classical negation rule, which is flipped away
    if not d1.premises:
        red = Sequent(s1.ant, s1.suc - {phi})
        ids = match_axiom(sysc, red)
        if ids:
            return node(ids[0], target)
        raise TransformError("stuck literal cut against " + d1.rule)
    if (
        d1.rule == "neg-r"
        and sysc.neg_right == "full"
        and Not(d1.bindings["phi"]) == phi
    ):
        atom = d1.bindings["phi"]
        p1 = d1.premises[0]
        if phi in p1.sequent.suc:
            p1 = _lit_cut(
                sysc, p1, d2, phi, _cut_seq(p1, d2, phi)
            )
        else:
            p1 = weaken_to(p1, _cut_seq_keep(p1, d2, phi))
        w = flip_neg_left(sysc, d2, phi)
        out = _lit_cut(sysc, w, p1, atom, _cut_seq(w, p1, atom))
        return weaken_to(out, target)
    return _push_into_left(sysc, d1, d2, phi, target, True)


def _cut_seq_keep(p: Node, other: Node, phi: Formula) -> Sequent:
    # like _cut_seq on the left but p keeps its own sides untouched
    return Sequent(
        p.sequent.ant | (other.sequent.ant - {phi}),
        p.sequent.suc | other.sequent.suc,
    )


def _cut_elim(sysc, d1, d2, phi, target, full) -> Node:
    s1, s2 = d1.sequent, d2.sequent
    if phi not in s1.suc:
        return weaken_to(d1, target)
    if phi not in s2.ant:
        return weaken_to(d2, target)
    if phi in s1.ant:
        return weaken_to(d2, target)
    if phi in s2.suc:
        return weaken_to(d1, target)
    if positive_complexity(phi) == 0:
        if not full:
            return _mk("cut", target, (d1, d2), {"phi": phi})
        return _lit_cut(sysc, d1, d2, phi, target)
    if not d1.premises:
        red = Sequent(s1.ant, s1.suc - {phi})
        ids = match_axiom(sysc, red)
        if ids:
            return node(ids[0], target)
    if not d2.premises:
        red = Sequent(s2.ant - {phi}, s2.suc)
        ids = match_axiom(sysc, red)
        if ids:
            return node(ids[0], target)
        raise TransformError(
            "a compound cut formula is required by the leaf " + d2.rule
        )
    d1p = (not d1.premises) or _principal_right(d1, phi)
    d2p = _principal_left(d2, phi)
    if d1p and d2p:
        return _pair_reduce(sysc, d1, d2, phi, target, full)
    if d1p:
        return _push_into_right(sysc, d1, d2, phi, target, full)
    return _push_into_left(sysc, d1, d2, phi, target, full)


def _reduce(sysc, d: Node, full: bool) -> Node:
    prem = tuple(_reduce(sysc, p, full) for p in d.premises)
    n = _mk(d.rule, d.sequent, prem, d.bindings)
    if n.rule != "cut":
        return n
    phi = n.bindings["phi"]
    if not full and positive_complexity(phi) == 0:
        return n
    return _cut_elim(sysc, prem[0], prem[1], phi, n.sequent, full)


def reduce_cuts(spec, d: Node, cut_free: Optional[bool] = None) -> Node:
    """Rewrite d to quasi-normal form, or to cut freedom in a pure logic.

    Only the pure logics and the classical truth systems with internal
    induction are supported; for the others cut reduction genuinely
    fails and the caller gets an unsupported-spec error.
    """
    sysc = _system(spec)
    if sysc.family == "logic":
        full = True if cut_free is None else cut_free
    elif sysc.family == "kf" and sysc.induction in (
        "internal",
        "internal-restricted",
    ):
        full = False
    else:
        raise UnsupportedTransform(
            "unsupported-spec",
            "cut reduction is not available for %s" % sysc.name,
        )
    return _reduce(sysc, d, full)


# ---------------------------------------------------------------------------
# contraposition for the partial truth theories
#
# In the symmetric systems a derivation of Gamma => Delta can be turned
# around into one of ~Delta => ~Gamma.  The recursion below does this
# rule by rule.  The helpers package the recurring figures: the
# completeness and consistency axioms as leaves, case splits on
# truth-free atoms, discharge of coding-fact guards, and the two
# bridges between T x and ~T neg.x.


def _contra_seq(s: Sequent) -> Sequent:
    return Sequent(
        frozenset(Not(f) for f in s.suc),
        frozenset(Not(f) for f in s.ant),
    )


def _cut_on(d1: Node, d2: Node, phi: Formula) -> Node:
    # d1 carries phi on the right, d2 on the left
    return _mk("cut", _cut_seq(d1, d2, phi), (d1, d2), {"phi": phi})


def _comp_leaf(sysc: SystemConfig, x: Term, ant=(), suc=()) -> Node:
    """Sent x, ~T x, ant => suc, T neg.x as a completeness leaf."""
    seq = Sequent(
        frozenset(ant) | {_sent(x), Not(Tr(x))},
        frozenset(suc) | {Tr(_cneg(x))},
    )
    return _axiom_leaf(sysc, seq)


def _cons_leaf(sysc: SystemConfig, x: Term, ant=(), suc=()) -> Node:
    """Sent x, T neg.x, ant => suc, ~T x as a consistency leaf."""
    seq = Sequent(
        frozenset(ant) | {_sent(x), Tr(_cneg(x))},
        frozenset(suc) | {Not(Tr(x))},
    )
    return _axiom_leaf(sysc, seq)


def _discharge(sysc: SystemConfig, d: Node, fact: Formula, guards=()) -> Node:
    """Cut an antecedent fact against the axiom leaf that proves it.

    The leaf may use the guard formulas, which remain in the antecedent
    of the result.
    """
    if fact not in d.sequent.ant:
        return d
    ant = (d.sequent.ant - {fact}) | frozenset(guards)
    leaf = _axiom_leaf(sysc, Sequent(ant, d.sequent.suc | {fact}))
    return _cut_on(leaf, d, fact)


def _by_cases(sysc: SystemConfig, g: Formula, yes: Node, no: Optional[Node] = None) -> Node:
    """Split on a truth-free atom g sitting on the left of yes.

    Without a no branch the failing case must already be absorbed: ~g
    has to appear on the right of yes.
    """
    tgt = Sequent(yes.sequent.ant - {g}, yes.sequent.suc)
    if no is None:
        if Not(g) not in tgt.suc:
            raise TransformError("nothing absorbs the failing case of the split")
        em, _ = classical_arith(g, tgt.ant, tgt.suc - {Not(g)})
        return _cut_on(em, yes, g)
    em, _ = classical_arith(g, tgt.ant, tgt.suc)
    c1 = _cut_on(em, yes, g)
    return _cut_on(c1, no, Not(g))


def _tnn_elim(sysc: SystemConfig, x: Term, ant=(), suc=()) -> Node:
    """Sent x, ~T neg.x, ant => suc, T x.

    Completeness at neg.x gives T neg.neg.x, and the double negation
    rule strips the two inner negations.
    """
    A = frozenset(ant)
    S = frozenset(suc)
    nx = _cneg(x)
    g = _sent(x)
    gn = _sent(nx)
    i1 = init_leaf(Tr(x), A | {g, gn}, S)
    i2 = _mk(
        "t-dneg-l",
        Sequent(A | {g, gn, Tr(_cneg(nx))}, S | {Tr(x)}),
        (i1,),
        {"x": x},
    )
    i3 = _comp_leaf(sysc, nx, A | {g}, S | {Tr(x)})
    i4 = _cut_on(i3, i2, Tr(_cneg(nx)))
    return _discharge(sysc, i4, gn)


def _tpos_nneg(sysc: SystemConfig, x: Term, ant=(), suc=()) -> Node:
    """Sent x, T x, ant => suc, ~T neg.x (truth tolerates no glut)."""
    A = frozenset(ant)
    S = frozenset(suc)
    nx = _cneg(x)
    g = _sent(x)
    gn = _sent(nx)
    j1 = init_leaf(Tr(x), A | {g, gn}, S)
    j2 = _mk(
        "t-dneg-r",
        Sequent(A | {g, gn, Tr(x)}, S | {Tr(_cneg(nx))}),
        (j1,),
        {"x": x},
    )
    j3 = _cons_leaf(sysc, nx, A | {g, Tr(x)}, S)
    j4 = _cut_on(j2, j3, Tr(_cneg(nx)))
    return _discharge(sysc, j4, gn)


def _guard_transfer(sysc: SystemConfig, part: Term, whole: Term, ant=(), suc=()) -> Node:
    """~Sent part, ant => suc, ~Sent whole when part sits inside whole."""
    A = frozenset(ant)
    S = frozenset(suc)
    sp = _sent(part)
    sw = _sent(whole)
    leaf = _axiom_leaf(sysc, Sequent(A | {Not(sp), sw}, S | {sp}))
    a1 = _mk("atom-neg-l", Sequent(A | {Not(sp), sw}, S), (leaf,), {"phi": sp})
    return _mk("atom-neg-r", Sequent(A | {Not(sp)}, S | {Not(sw)}), (a1,), {"phi": sw})


def _t_code_bridge(sysc: SystemConfig, src: Term, dst: Term, ant=(), suc=()) -> Node:
    """T src, ant => suc, T dst for codes equal under evaluation."""
    A = frozenset(ant)
    S = frozenset(suc)
    w = fresh_var(all_vars(src) | all_vars(dst) | _fv_all(A | S))
    eq = Equal(src, dst)
    r = rep_schema(Tr(Var(w)), w, src, dst, A, S)
    leaf = _axiom_leaf(sysc, Sequent(A | {Tr(src)}, S | {Tr(dst), eq}))
    return _cut_on(leaf, r, eq)


def _pa_leaf(pi: Formula, ant=(), suc=()) -> Node:
    return node("pa", Sequent(frozenset(ant), frozenset(suc) | {pi}))


def _refl_fig(t: Term, ant=(), suc=()) -> Node:
    """ant => suc, t=t."""
    A = frozenset(ant)
    S = frozenset(suc)
    eq = Equal(t, t)
    leaf = init_leaf(eq, A, S)
    return _mk("ref", Sequent(A, S | {eq}), (leaf,), {"t": t})


def _eq_trans(a: Term, b: Term, c: Term, ant=(), suc=()) -> Node:
    """b=c, a=b, ant => suc, a=c."""
    A = frozenset(ant)
    S = frozenset(suc)
    u = fresh_var(all_vars(a) | all_vars(b) | all_vars(c) | _fv_all(A | S))
    return rep_schema(Equal(a, Var(u)), u, b, c, A, S)


def _sym_suc(d: Node, p: Term, q: Term) -> Node:
    """Replace p=q on the right of d by q=p."""
    eq = Equal(p, q)
    sy = symmetry_deriv(p, q, d.sequent.ant, d.sequent.suc - {eq})
    return _cut_on(d, sy, eq)


def _cong_suc(a: Term, b: Term, ant=(), suc=()) -> Node:
    """a=b, ant => suc, S a = S b."""
    A = frozenset(ant)
    S = frozenset(suc)
    sa = Suc(a)
    goal = Equal(sa, Suc(b))
    rf = _refl_fig(sa, A | {Equal(a, b)}, S | {goal})
    u = fresh_var(all_vars(a) | all_vars(b) | _fv_all(A | S))
    rep = rep_schema(Equal(sa, Suc(Var(u))), u, a, b, A, S)
    return _cut_on(rf, rep, Equal(sa, sa))


def _zero_plus(sysc: SystemConfig, t: Term, ant=(), suc=()) -> Node:
    """ant => suc, 0+t = t, by induction on the right summand."""
    A = frozenset(ant)
    S = frozenset(suc)
    goal = Equal(Add(Num(0), t), t)
    used = all_vars(t) | _fv_all(A | S)
    v0 = fresh_var(used)
    w2 = fresh_var(used | {v0})
    chi = Equal(Add(Num(0), Var(v0)), Var(v0))
    chi0 = Equal(Add(Num(0), Num(0)), Num(0))
    chiw = Equal(Add(Num(0), Var(w2)), Var(w2))
    chisw = Equal(Add(Num(0), Suc(Var(w2))), Suc(Var(w2)))
    lhs = Add(Num(0), Suc(Var(w2)))
    mid = Suc(Add(Num(0), Var(w2)))
    # step: 0+Sw = S(0+w) = Sw
    c1 = _cong_suc(Add(Num(0), Var(w2)), Var(w2), A, S | {chisw})
    c2 = _eq_trans(lhs, mid, Suc(Var(w2)), A | {chiw}, S)
    c3 = _cut_on(c1, c2, Equal(mid, Suc(Var(w2))))
    p1 = _pa_leaf(Equal(lhs, mid), A | {chiw}, S | {chisw})
    c4 = _cut_on(p1, c3, Equal(lhs, mid))
    ind = _mk(
        "ind",
        Sequent(A | {chi0}, S | {goal}),
        (c4,),
        {"phi": chi, "v": v0, "u": w2, "t": t},
    )
    base = _pa_leaf(chi0, A, S | {goal})
    return _cut_on(base, ind, chi0)


def _swap_suc(sysc: SystemConfig, a: Term, b: Term, ant=(), suc=()) -> Node:
    """ant => suc, (S a)+b = a+(S b), by induction on b."""
    A = frozenset(ant)
    S = frozenset(suc)
    sa = Suc(a)
    goal = Equal(Add(sa, b), Add(a, Suc(b)))
    used = all_vars(a) | all_vars(b) | _fv_all(A | S)
    n0 = fresh_var(used)
    n1 = fresh_var(used | {n0})
    chi = Equal(Add(sa, Var(n0)), Add(a, Suc(Var(n0))))
    chi0 = Equal(Add(sa, Num(0)), Add(a, Suc(Num(0))))
    chin = Equal(Add(sa, Var(n1)), Add(a, Suc(Var(n1))))
    chisn = Equal(Add(sa, Suc(Var(n1))), Add(a, Suc(Suc(Var(n1)))))
    # base: Sa+0 = Sa = S(a+0) = a+S0
    S1 = S | {goal, chi0}
    q1 = _pa_leaf(Equal(Add(sa, Num(0)), sa), A, S1)
    q2 = _pa_leaf(Equal(Add(a, Suc(Num(0))), Suc(Add(a, Num(0)))), A, S1)
    q3 = _pa_leaf(Equal(Add(a, Num(0)), a), A, S1)
    q4 = _cong_suc(Add(a, Num(0)), a, A, S1)
    q5 = _cut_on(q3, q4, Equal(Add(a, Num(0)), a))
    tr1 = _eq_trans(Add(a, Suc(Num(0))), Suc(Add(a, Num(0))), sa, A, S1)
    x1 = _cut_on(q5, tr1, Equal(Suc(Add(a, Num(0))), sa))
    x2 = _cut_on(q2, x1, Equal(Add(a, Suc(Num(0))), Suc(Add(a, Num(0)))))
    x3 = _sym_suc(x2, Add(a, Suc(Num(0))), sa)
    tr2 = _eq_trans(Add(sa, Num(0)), sa, Add(a, Suc(Num(0))), A, S | {goal})
    x4 = _cut_on(x3, tr2, Equal(sa, Add(a, Suc(Num(0)))))
    base = _cut_on(q1, x4, Equal(Add(sa, Num(0)), sa))
    # step: Sa+Sn = S(Sa+n) = S(a+Sn) = a+SSn
    S2 = S | {chisn}
    r1 = _pa_leaf(Equal(Add(sa, Suc(Var(n1))), Suc(Add(sa, Var(n1)))), A | {chin}, S2)
    r2 = _cong_suc(Add(sa, Var(n1)), Add(a, Suc(Var(n1))), A, S2)
    tr3 = _eq_trans(
        Add(sa, Suc(Var(n1))),
        Suc(Add(sa, Var(n1))),
        Suc(Add(a, Suc(Var(n1)))),
        A | {chin},
        S2,
    )
    r3 = _cut_on(r2, tr3, Equal(Suc(Add(sa, Var(n1))), Suc(Add(a, Suc(Var(n1))))))
    r4 = _cut_on(r1, r3, Equal(Add(sa, Suc(Var(n1))), Suc(Add(sa, Var(n1)))))
    r5 = _pa_leaf(Equal(Add(a, Suc(Suc(Var(n1)))), Suc(Add(a, Suc(Var(n1))))), A | {chin}, S2)
    r6 = _sym_suc(r5, Add(a, Suc(Suc(Var(n1)))), Suc(Add(a, Suc(Var(n1)))))
    tr4 = _eq_trans(
        Add(sa, Suc(Var(n1))),
        Suc(Add(a, Suc(Var(n1)))),
        Add(a, Suc(Suc(Var(n1)))),
        A | {chin},
        S,
    )
    r7 = _cut_on(r6, tr4, Equal(Suc(Add(a, Suc(Var(n1)))), Add(a, Suc(Suc(Var(n1))))))
    r8 = _cut_on(r4, r7, Equal(Add(sa, Suc(Var(n1))), Suc(Add(a, Suc(Var(n1))))))
    ind = _mk(
        "ind",
        Sequent(A | {chi0}, S | {goal}),
        (r8,),
        {"phi": chi, "v": n0, "u": n1, "t": b},
    )
    return _cut_on(base, ind, chi0)


def _leibniz(sysc: SystemConfig, phi: Formula, v: int, s: Term, t: Term, ant=(), suc=()) -> Node:
    """s=t, phi[s/v], ant => suc, phi[t/v] for an arbitrary pattern.

    Replacement is a rule only for literals; compound patterns are taken
    apart, rewritten inside, and reassembled.  No classical negation is
    used, so the pattern may mention T.
    """
    A = frozenset(ant)
    S = frozenset(suc)
    eq = Equal(s, t)
    at_s = substitute(phi, s, v)
    at_t = substitute(phi, t, v)
    if at_s == at_t:
        return weaken(identity_expansion(sysc, at_s, A, S), (eq,), ())
    if is_literal(phi):
        return rep_schema(phi, v, s, t, A, S)
    if isinstance(phi, And):
        a, c = phi.left, phi.right
        a_s, a_t = substitute(a, s, v), substitute(a, t, v)
        c_s, c_t = substitute(c, s, v), substitute(c, t, v)
        core_a = _leibniz(sysc, a, v, s, t, A | {a_s, c_s}, S)
        core_c = _leibniz(sysc, c, v, s, t, A | {a_s, c_s}, S)
        k = _mk(
            "and-r",
            Sequent(A | {eq, a_s, c_s}, S | {at_t}),
            (core_a, core_c),
            {"phi": a_t, "psi": c_t},
        )
        return _mk(
            "and-l",
            Sequent(A | {eq, at_s}, S | {at_t}),
            (k,),
            {"phi": a_s, "psi": c_s},
        )
    if isinstance(phi, All):
        w = fresh_var(all_vars(phi) | all_vars(s) | all_vars(t) | {v} | _fv_all(A | S))
        inner = substitute(phi.body, Var(w), phi.var)
        inner_t = substitute(inner, t, v)
        core = _leibniz(sysc, inner, v, s, t, A | {at_s}, S)
        mid = _mk(
            "all-l",
            Sequent(A | {eq, at_s}, S | {inner_t}),
            (core,),
            {"phi": at_s.body, "v": at_s.var, "t": Var(w)},
        )
        return _mk(
            "all-r",
            Sequent(A | {eq, at_s}, S | {at_t}),
            (mid,),
            {"phi": at_t.body, "v": at_t.var, "u": w},
        )
    if isinstance(phi, Not):
        b = phi.body
        if isinstance(b, Not):
            inner = b.body
            i_s, i_t = substitute(inner, s, v), substitute(inner, t, v)
            core = _leibniz(sysc, inner, v, s, t, A, S)
            mid = _mk(
                "neg-neg-l",
                Sequent(A | {eq, at_s}, S | {i_t}),
                (core,),
                {"phi": i_s},
            )
            return _mk(
                "neg-neg-r",
                Sequent(A | {eq, at_s}, S | {at_t}),
                (mid,),
                {"phi": i_t},
            )
        if isinstance(b, And):
            a, c = b.left, b.right
            a_s, a_t = substitute(a, s, v), substitute(a, t, v)
            c_s, c_t = substitute(c, s, v), substitute(c, t, v)
            core_a = _leibniz(sysc, Not(a), v, s, t, A, S | {Not(c_t)})
            core_c = _leibniz(sysc, Not(c), v, s, t, A, S | {Not(a_t)})
            m1 = _mk(
                "neg-and-r",
                Sequent(A | {eq, Not(a_s)}, S | {at_t}),
                (core_a,),
                {"phi": a_t, "psi": c_t},
            )
            m2 = _mk(
                "neg-and-r",
                Sequent(A | {eq, Not(c_s)}, S | {at_t}),
                (core_c,),
                {"phi": a_t, "psi": c_t},
            )
            return _mk(
                "neg-and-l",
                Sequent(A | {eq, at_s}, S | {at_t}),
                (m1, m2),
                {"phi": a_s, "psi": c_s},
            )
        if isinstance(b, All):
            w = fresh_var(all_vars(phi) | all_vars(s) | all_vars(t) | {v} | _fv_all(A | S))
            inner = Not(substitute(b.body, Var(w), b.var))
            i_s = substitute(inner, s, v)
            core = _leibniz(sysc, inner, v, s, t, A, S)
            bs = at_s.body
            bt = at_t.body
            mid = _mk(
                "neg-all-r",
                Sequent(A | {eq, i_s}, S | {at_t}),
                (core,),
                {"phi": bt.body, "v": bt.var, "t": Var(w)},
            )
            return _mk(
                "neg-all-l",
                Sequent(A | {eq, at_s}, S | {at_t}),
                (mid,),
                {"phi": bs.body, "v": bs.var, "u": w},
            )
    raise TransformError("replacement pattern out of shape: %s" % show_formula(phi))


# --- the contraposition recursion ---------------------------------------


def _contra_premise(sysc: SystemConfig, n: Node, k: int, tgt: Sequent) -> Node:
    """Contrapose premise k and pad it onto the target plus the negated
    premise actives."""
    aacts, sacts = _premise_spec(n)[k]
    ih = _contra(sysc, n.premises[k])
    want = Sequent(
        tgt.ant | {Not(f) for f in sacts},
        tgt.suc | {Not(f) for f in aacts},
    )
    return weaken_to(ih, want)


def _cr_and_l(sysc, n, tgt):
    b = n.bindings
    ih = _contra_premise(sysc, n, 0, tgt)
    return _mk("neg-and-r", tgt, (ih,), {"phi": b["phi"], "psi": b["psi"]})


def _cr_and_r(sysc, n, tgt):
    b = n.bindings
    ih1 = _contra_premise(sysc, n, 0, tgt)
    ih2 = _contra_premise(sysc, n, 1, tgt)
    return _mk("neg-and-l", tgt, (ih1, ih2), {"phi": b["phi"], "psi": b["psi"]})


def _cr_all_l(sysc, n, tgt):
    b = n.bindings
    ih = _contra_premise(sysc, n, 0, tgt)
    return _mk("neg-all-r", tgt, (ih,), {"phi": b["phi"], "v": b["v"], "t": b["t"]})


def _cr_all_r(sysc, n, tgt):
    b = n.bindings
    ih = _contra_premise(sysc, n, 0, tgt)
    return _mk("neg-all-l", tgt, (ih,), {"phi": b["phi"], "v": b["v"], "u": b["u"]})


def _cr_neg_neg_l(sysc, n, tgt):
    phi = n.bindings["phi"]
    ih = _contra_premise(sysc, n, 0, tgt)
    return _mk("neg-neg-r", tgt, (ih,), {"phi": Not(phi)})


def _cr_neg_neg_r(sysc, n, tgt):
    phi = n.bindings["phi"]
    ih = _contra_premise(sysc, n, 0, tgt)
    return _mk("neg-neg-l", tgt, (ih,), {"phi": Not(phi)})


def _cr_neg_and_l(sysc, n, tgt):
    b = n.bindings
    phi, psi = b["phi"], b["psi"]
    k1 = weaken_to(
        invert_negneg_right(sysc, _contra_premise(sysc, n, 0, tgt), Not(Not(phi))),
        Sequent(tgt.ant, tgt.suc | {phi}),
    )
    k2 = weaken_to(
        invert_negneg_right(sysc, _contra_premise(sysc, n, 1, tgt), Not(Not(psi))),
        Sequent(tgt.ant, tgt.suc | {psi}),
    )
    k = _mk("and-r", Sequent(tgt.ant, tgt.suc | {And(phi, psi)}), (k1, k2),
            {"phi": phi, "psi": psi})
    return _mk("neg-neg-r", tgt, (k,), {"phi": And(phi, psi)})


def _cr_neg_and_r(sysc, n, tgt):
    b = n.bindings
    phi, psi = b["phi"], b["psi"]
    ih = _contra_premise(sysc, n, 0, tgt)
    l1 = invert_negneg_left(sysc, ih, Not(Not(phi)))
    l2 = invert_negneg_left(sysc, l1, Not(Not(psi)))
    k0 = weaken_to(l2, Sequent(tgt.ant | {phi, psi}, tgt.suc))
    k = _mk("and-l", Sequent(tgt.ant | {And(phi, psi)}, tgt.suc), (k0,),
            {"phi": phi, "psi": psi})
    return _mk("neg-neg-l", tgt, (k,), {"phi": And(phi, psi)})


def _cr_neg_all_l(sysc, n, tgt):
    b = n.bindings
    phi, v, u = b["phi"], b["v"], b["u"]
    inst = substitute(phi, Var(u), v)
    inv = weaken_to(
        invert_negneg_right(sysc, _contra_premise(sysc, n, 0, tgt), Not(Not(inst))),
        Sequent(tgt.ant, tgt.suc | {inst}),
    )
    ar = _mk("all-r", Sequent(tgt.ant, tgt.suc | {All(v, phi)}), (inv,),
             {"phi": phi, "v": v, "u": u})
    return _mk("neg-neg-r", tgt, (ar,), {"phi": All(v, phi)})


def _cr_neg_all_r(sysc, n, tgt):
    b = n.bindings
    phi, v, t = b["phi"], b["v"], b["t"]
    inst = substitute(phi, t, v)
    inv = weaken_to(
        invert_negneg_left(sysc, _contra_premise(sysc, n, 0, tgt), Not(Not(inst))),
        Sequent(tgt.ant | {inst}, tgt.suc),
    )
    al = _mk("all-l", Sequent(tgt.ant | {All(v, phi)}, tgt.suc), (inv,),
             {"phi": phi, "v": v, "t": t})
    return _mk("neg-neg-l", tgt, (al,), {"phi": All(v, phi)})


def _cr_cut(sysc, n, tgt):
    phi = n.bindings["phi"]
    ih1 = _contra_premise(sysc, n, 0, tgt)
    ih2 = _contra_premise(sysc, n, 1, tgt)
    return _cut_on(ih2, ih1, Not(phi))


def _cr_ref(sysc, n, tgt):
    t = n.bindings["t"]
    eq = Equal(t, t)
    ih = _contra_premise(sysc, n, 0, tgt)
    rr = _refl_fig(t, tgt.ant, tgt.suc)
    z = _mk("eq-neg-l", Sequent(tgt.ant | {Not(eq)}, tgt.suc), (rr,),
            {"s": t, "t": t})
    return _cut_on(ih, z, Not(eq))


def _cr_rep_l(sysc, n, tgt):
    b = n.bindings
    pat, v, s, t = b["phi"], b["v"], b["s"], b["t"]
    at_s = substitute(pat, s, v)
    at_t = substitute(pat, t, v)
    ih = _contra_premise(sysc, n, 0, tgt)
    lb = _leibniz(sysc, Not(pat), v, t, s, tgt.ant, tgt.suc - {Not(at_s)})
    sy = symmetry_deriv(s, t, tgt.ant | {Not(at_t)}, tgt.suc)
    k = _cut_on(sy, lb, Equal(t, s))
    p = _cut_on(ih, k, Not(at_t))
    return _mk("eq-neg-r", tgt, (p,), {"s": s, "t": t})


def _cr_lit_neg_l(sysc, n, tgt):
    b = n.bindings
    a = Equal(b["s"], b["t"]) if n.rule == "eq-neg-l" else b["phi"]
    ih = _contra_premise(sysc, n, 0, tgt)
    em, _ = classical_arith(a, tgt.ant, tgt.suc)
    c = _cut_on(em, ih, Not(a))
    return _mk("neg-neg-r", tgt, (c,), {"phi": a})


def _cr_lit_neg_r(sysc, n, tgt):
    b = n.bindings
    a = Equal(b["s"], b["t"]) if n.rule == "eq-neg-r" else b["phi"]
    ih = _contra_premise(sysc, n, 0, tgt)
    _, ex = classical_arith(a, tgt.ant, tgt.suc)
    c = _cut_on(ih, ex, Not(a))
    return _mk("neg-neg-l", tgt, (c,), {"phi": a})


def _cr_gg(sysc, n, tgt):
    b = n.bindings
    phi, psi = b["phi"], b["psi"]
    ih1 = _contra_premise(sysc, n, 0, tgt)
    ih2 = _contra_premise(sysc, n, 1, tgt)
    p1 = _mk(
        "neg-neg-r",
        Sequent(tgt.ant | {phi}, tgt.suc),
        (init_leaf(phi, tgt.ant, tgt.suc - {Not(Not(phi))}),),
        {"phi": phi},
    )
    p2 = init_leaf(Not(phi), tgt.ant, tgt.suc - {Not(phi)})
    g = _mk("gg", Sequent(tgt.ant | {psi, Not(psi)}, tgt.suc), (p1, p2),
            {"phi": psi, "psi": phi})
    x1 = _cut_on(ih1, g, Not(psi))
    inv = weaken_to(
        invert_negneg_right(sysc, ih2, Not(Not(psi))),
        Sequent(tgt.ant, tgt.suc | {psi}),
    )
    return _cut_on(inv, x1, psi)


def _cr_ind(sysc, n, tgt):
    b = n.bindings
    pat, v, u, t = b["phi"], b["v"], b["u"], b["t"]
    used = set(derivation_vars(n)) | _fv_all(tgt.ant | tgt.suc)
    used |= all_vars(pat) | all_vars(t) | {v, u}
    if is_t_free(pat):
        u2 = fresh_var(used)
        ih = _contra(sysc, subst_deriv(n.premises[0], Var(u2), u))
        lo = substitute(pat, Var(u2), v)
        hi = substitute(pat, Suc(Var(u2)), v)
        ihw = weaken_to(ih, Sequent(tgt.ant | {Not(hi)}, tgt.suc | {Not(lo)}))
        _, ex_u = classical_arith(lo, tgt.ant, tgt.suc | {hi})
        a1 = _cut_on(ihw, ex_u, Not(lo))
        em_su, _ = classical_arith(hi, tgt.ant | {lo}, tgt.suc)
        a2 = _cut_on(em_su, a1, Not(hi))
        base = substitute(pat, Num(0), v)
        goal = substitute(pat, t, v)
        ind = _mk(
            "ind",
            Sequent(tgt.ant | {base}, tgt.suc | {goal}),
            (a2,),
            {"phi": pat, "v": v, "u": u2, "t": t},
        )
        em0, _ = classical_arith(base, tgt.ant, tgt.suc | {goal})
        j1 = _cut_on(em0, ind, base)
        _, ex_t = classical_arith(goal, tgt.ant, tgt.suc)
        return _cut_on(j1, ex_t, goal)
    return _cr_ind_counting(sysc, n, tgt, used)


def _cr_ind_counting(sysc, n, tgt, used):
    # induction over a truth-dependent formula: run a truth-free counting
    # induction on "every k with k+w = t refutes phi(k)" instead
    b = n.bindings
    pat, v, u, t = b["phi"], b["v"], b["u"], b["t"]
    kv = fresh_var(used)
    wv = fresh_var(used | {kv})
    u0 = fresh_var(used | {kv, wv})
    k1 = fresh_var(used | {kv, wv, u0})
    k0 = fresh_var(used | {kv, wv, u0, k1})
    rv = fresh_var(used | {kv, wv, u0, k1, k0})

    def mshape(kk, ww):
        return Not(And(Equal(Add(kk, ww), t), substitute(pat, kk, v)))

    def theta(ww):
        return All(kv, mshape(Var(kv), ww))

    theta_pat = All(kv, mshape(Var(kv), Var(wv)))
    # base: theta(0), since k+0 = k = t lets the context refutation of
    # phi(t) carry over to phi(k)
    e = Equal(Add(Var(k1), Num(0)), t)
    phik1 = substitute(pat, Var(k1), v)
    y0 = _pa_leaf(Equal(Add(Var(k1), Num(0)), Var(k1)),
                  tgt.ant | {e}, tgt.suc | {Not(phik1)})
    rp = rep_schema(Equal(Var(rv), t), rv, Add(Var(k1), Num(0)), Var(k1),
                    tgt.ant, tgt.suc | {Not(phik1)})
    y1 = _cut_on(y0, rp, Equal(Add(Var(k1), Num(0)), Var(k1)))
    y2 = _sym_suc(y1, Var(k1), t)
    lb = _leibniz(sysc, Not(pat), v, t, Var(k1), tgt.ant | {e}, tgt.suc)
    y3 = _cut_on(y2, lb, Equal(t, Var(k1)))
    em_e, _ = classical_arith(e, tgt.ant, tgt.suc | {Not(phik1)})
    d = _cut_on(em_e, y3, e)
    b1 = _mk("neg-and-r", Sequent(tgt.ant, tgt.suc | {mshape(Var(k1), Num(0))}),
             (d,), {"phi": e, "psi": phik1})
    base = _mk("all-r", Sequent(tgt.ant, tgt.suc | {theta(Num(0))}), (b1,),
               {"phi": mshape(Var(kv), Num(0)), "v": kv, "u": k1})
    # step: theta(u0) gives theta(S u0) through the contraposed premise
    ep = Equal(Add(Var(k0), Suc(Var(u0))), t)
    epp = Equal(Add(Suc(Var(k0)), Var(u0)), t)
    phik0 = substitute(pat, Var(k0), v)
    phisk0 = substitute(pat, Suc(Var(k0)), v)
    sw = _swap_suc(sysc, Var(k0), Var(u0), tgt.ant | {ep}, tgt.suc | {Not(phik0)})
    tr = _eq_trans(Add(Suc(Var(k0)), Var(u0)), Add(Var(k0), Suc(Var(u0))), t,
                   tgt.ant, tgt.suc | {Not(phik0)})
    xx = _cut_on(sw, tr, Equal(Add(Suc(Var(k0)), Var(u0)), Add(Var(k0), Suc(Var(u0)))))
    en = _mk("eq-neg-l", Sequent(tgt.ant | {ep, Not(epp)}, tgt.suc | {Not(phik0)}),
             (xx,), {"s": Add(Suc(Var(k0)), Var(u0)), "t": t})
    er = _mk("eq-neg-r", Sequent(tgt.ant | {Not(epp)}, tgt.suc | {Not(ep), Not(phik0)}),
             (en,), {"s": Add(Var(k0), Suc(Var(u0))), "t": t})
    ih = _contra(sysc, subst_deriv(n.premises[0], Var(k0), u))
    cb = weaken_to(ih, Sequent(tgt.ant | {Not(phisk0)},
                               tgt.suc | {Not(ep), Not(phik0)}))
    nl = _mk("neg-and-l",
             Sequent(tgt.ant | {mshape(Suc(Var(k0)), Var(u0))},
                     tgt.suc | {Not(ep), Not(phik0)}),
             (er, cb), {"phi": epp, "psi": phisk0})
    al = _mk("all-l",
             Sequent(tgt.ant | {theta(Var(u0))}, tgt.suc | {Not(ep), Not(phik0)}),
             (nl,), {"phi": mshape(Var(kv), Var(u0)), "v": kv, "t": Suc(Var(k0))})
    b2 = _mk("neg-and-r",
             Sequent(tgt.ant | {theta(Var(u0))},
                     tgt.suc | {mshape(Var(k0), Suc(Var(u0)))}),
             (al,), {"phi": ep, "psi": phik0})
    step = _mk("all-r",
               Sequent(tgt.ant | {theta(Var(u0))}, tgt.suc | {theta(Suc(Var(u0)))}),
               (b2,), {"phi": mshape(Var(kv), Suc(Var(u0))), "v": kv, "u": k0})
    ind = _mk("ind",
              Sequent(tgt.ant | {theta(Num(0))}, tgt.suc | {theta(t)}),
              (step,), {"phi": theta_pat, "v": wv, "u": u0, "t": t})
    j = _cut_on(base, ind, theta(Num(0)))
    # theta(t) at k = 0 contradicts 0+t = t and the refuted phi(0)
    e0 = Equal(Add(Num(0), t), t)
    phi0 = substitute(pat, Num(0), v)
    zp = _zero_plus(sysc, t, tgt.ant, tgt.suc)
    ka = _mk("eq-neg-l", Sequent(tgt.ant | {Not(e0)}, tgt.suc), (zp,),
             {"s": Add(Num(0), t), "t": t})
    kb = identity_expansion(sysc, Not(phi0), tgt.ant, tgt.suc - {Not(phi0)})
    nl0 = _mk("neg-and-l", Sequent(tgt.ant | {mshape(Num(0), t)}, tgt.suc),
              (ka, kb), {"phi": e0, "psi": phi0})
    k = _mk("all-l", Sequent(tgt.ant | {theta(t)}, tgt.suc), (nl0,),
            {"phi": mshape(Var(kv), t), "v": kv, "t": Num(0)})
    return _cut_on(j, k, theta(t))


def _cr_ti(sysc, n, tgt):
    b = n.bindings
    pat, v, z, y, xv, a = b["phi"], b["v"], b["z"], b["y"], b["x"], b["a"]
    if not is_t_free(pat):
        raise UnsupportedTransform(
            "ti-contraposition",
            "transfinite induction over a truth-dependent formula has no "
            "internal contrapositive here",
        )
    used = set(derivation_vars(n)) | _fv_all(tgt.ant | tgt.suc)
    used |= all_vars(pat) | all_vars(a) | {v, z, y, xv}
    y2 = fresh_var(used)
    ih = _contra(sysc, subst_deriv(n.premises[0], Var(y2), y))
    guard = bounded_universal(z, Var(y2), pat, v)
    goal = substitute(pat, Var(y2), v)
    ihw = weaken_to(ih, Sequent(tgt.ant | {Not(goal)}, tgt.suc | {Not(guard)}))
    em, _ = classical_arith(goal, tgt.ant, tgt.suc | {Not(guard)})
    a1 = _cut_on(em, ihw, Not(goal))
    _, ex_b = classical_arith(guard, tgt.ant, tgt.suc | {goal})
    a2 = _cut_on(a1, ex_b, Not(guard))
    concl = bounded_universal(xv, a, pat, v)
    ti = _mk("ti", Sequent(tgt.ant, tgt.suc | {concl}), (a2,),
             {"phi": pat, "v": v, "z": z, "y": y2, "x": xv, "a": a})
    _, ex_a = classical_arith(concl, tgt.ant, tgt.suc)
    return _cut_on(ti, ex_a, concl)


def _sent_guard_split(sysc, d, x, y, cxy, tgt):
    """Case out the Sent x and Sent y assumptions sitting on the left of d."""
    n_y = _guard_transfer(sysc, y, cxy, tgt.ant | {_sent(x)},
                          tgt.suc - {Not(_sent(cxy))})
    inner = _by_cases(sysc, _sent(y), d, n_y)
    n_x = _guard_transfer(sysc, x, cxy, tgt.ant, tgt.suc - {Not(_sent(cxy))})
    return _by_cases(sysc, _sent(x), inner, n_x)


def _cr_t_dneg_l(sysc, n, tgt):
    x = n.bindings["x"]
    nx = _cneg(x)
    ih = _contra_premise(sysc, n, 0, tgt)
    c1 = _cut_on(ih, _comp_leaf(sysc, x, tgt.ant, tgt.suc), Not(Tr(x)))
    c1w = weaken_to(c1, Sequent(tgt.ant | {_sent(x), _sent(nx)},
                                tgt.suc | {Tr(nx)}))
    c2 = _mk(
        "t-dneg-r",
        Sequent(tgt.ant | {_sent(x), _sent(nx)}, tgt.suc | {Tr(_cneg(_cneg(nx)))}),
        (c1w,),
        {"x": nx},
    )
    c3 = _cons_leaf(sysc, _cneg(nx), tgt.ant | {_sent(x), _sent(nx)},
                    tgt.suc - {Not(Tr(_cneg(nx)))})
    c4 = _cut_on(c2, c3, Tr(_cneg(_cneg(nx))))
    c5 = _discharge(sysc, c4, _sent(_cneg(nx)), guards=(_sent(nx),))
    c6 = _discharge(sysc, c5, _sent(nx), guards=(_sent(x),))
    return _by_cases(sysc, _sent(x), c6)


def _cr_t_dneg_r(sysc, n, tgt):
    x = n.bindings["x"]
    nx = _cneg(x)
    ih = _contra_premise(sysc, n, 0, tgt)
    d1 = _cons_leaf(sysc, x, tgt.ant, tgt.suc)
    d2 = _cut_on(d1, ih, Not(Tr(x)))
    d2w = weaken_to(d2, Sequent(tgt.ant | {_sent(x), _sent(nx), Tr(nx)}, tgt.suc))
    d3 = _mk(
        "t-dneg-l",
        Sequent(tgt.ant | {_sent(x), _sent(nx), Tr(_cneg(_cneg(nx)))}, tgt.suc),
        (d2w,),
        {"x": nx},
    )
    d4 = _comp_leaf(sysc, _cneg(nx), tgt.ant | {_sent(x), _sent(nx)}, tgt.suc)
    d5 = _cut_on(d4, d3, Tr(_cneg(_cneg(nx))))
    d6 = _discharge(sysc, d5, _sent(_cneg(nx)), guards=(_sent(nx),))
    d7 = _discharge(sysc, d6, _sent(nx), guards=(_sent(x),))
    return _by_cases(sysc, _sent(x), d7)


def _cr_t_and_l(sysc, n, tgt):
    x, y = n.bindings["x"], n.bindings["y"]
    cxy = _cand(x, y)
    g = _sent(cxy)
    ih = _contra_premise(sysc, n, 0, tgt)
    c_x = _comp_leaf(sysc, x, tgt.ant | {_sent(y)}, tgt.suc | {Tr(_cneg(y))})
    m1 = _cut_on(ih, c_x, Not(Tr(x)))
    c_y = _comp_leaf(sysc, y, tgt.ant | {_sent(x)}, tgt.suc | {Tr(_cneg(x))})
    m2 = _cut_on(m1, c_y, Not(Tr(y)))
    m2w = weaken_to(m2, Sequent(tgt.ant | {g, _sent(x), _sent(y)},
                                tgt.suc | {Tr(_cneg(x)), Tr(_cneg(y))}))
    nr = _mk(
        "t-nand-r",
        Sequent(tgt.ant | {g, _sent(x), _sent(y)}, tgt.suc | {Tr(_cneg(cxy))}),
        (m2w,),
        {"x": x, "y": y},
    )
    cl = _cons_leaf(sysc, cxy, tgt.ant | {_sent(x), _sent(y)},
                    tgt.suc - {Not(Tr(cxy))})
    q = _cut_on(nr, cl, Tr(_cneg(cxy)))
    dg = _discharge(sysc, q, g, guards=(_sent(x), _sent(y)))
    return _sent_guard_split(sysc, dg, x, y, cxy, tgt)


def _cr_t_and_r(sysc, n, tgt):
    x, y = n.bindings["x"], n.bindings["y"]
    cxy = _cand(x, y)
    g = _sent(cxy)
    r1 = _cut_on(_cons_leaf(sysc, x, tgt.ant, tgt.suc),
                 _contra_premise(sysc, n, 0, tgt), Not(Tr(x)))
    r2 = _cut_on(_cons_leaf(sysc, y, tgt.ant, tgt.suc),
                 _contra_premise(sysc, n, 1, tgt), Not(Tr(y)))
    ctx = tgt.ant | {g, _sent(x), _sent(y)}
    r1w = weaken_to(r1, Sequent(ctx | {Tr(_cneg(x))}, tgt.suc))
    r2w = weaken_to(r2, Sequent(ctx | {Tr(_cneg(y))}, tgt.suc))
    nl = _mk(
        "t-nand-l",
        Sequent(ctx | {Tr(_cneg(cxy))}, tgt.suc),
        (r1w, r2w),
        {"x": x, "y": y},
    )
    cp = _comp_leaf(sysc, cxy, tgt.ant | {_sent(x), _sent(y)}, tgt.suc)
    q = _cut_on(cp, nl, Tr(_cneg(cxy)))
    dg = _discharge(sysc, q, g, guards=(_sent(x), _sent(y)))
    return _sent_guard_split(sysc, dg, x, y, cxy, tgt)


def _cr_t_nand_l(sysc, n, tgt):
    x, y = n.bindings["x"], n.bindings["y"]
    cxy = _cand(x, y)
    g = _sent(cxy)
    b1 = _cut_on(_contra_premise(sysc, n, 0, tgt),
                 _tnn_elim(sysc, x, tgt.ant, tgt.suc), Not(Tr(_cneg(x))))
    b2 = _cut_on(_contra_premise(sysc, n, 1, tgt),
                 _tnn_elim(sysc, y, tgt.ant, tgt.suc), Not(Tr(_cneg(y))))
    ctx = tgt.ant | {g, _sent(x), _sent(y)}
    b1w = weaken_to(b1, Sequent(ctx, tgt.suc | {Tr(x)}))
    b2w = weaken_to(b2, Sequent(ctx, tgt.suc | {Tr(y)}))
    ar = _mk("t-and-r", Sequent(ctx, tgt.suc | {Tr(cxy)}), (b1w, b2w),
             {"x": x, "y": y})
    dr = _mk("t-dneg-r", Sequent(ctx, tgt.suc | {Tr(_cneg(_cneg(cxy)))}), (ar,),
             {"x": cxy})
    csl = _cons_leaf(sysc, _cneg(cxy), tgt.ant | {g, _sent(x), _sent(y)},
                     tgt.suc - {Not(Tr(_cneg(cxy)))})
    q = _cut_on(dr, csl, Tr(_cneg(_cneg(cxy))))
    q = _discharge(sysc, q, _sent(_cneg(cxy)), guards=(g,))
    dg = _discharge(sysc, q, g, guards=(_sent(x), _sent(y)))
    return _sent_guard_split(sysc, dg, x, y, cxy, tgt)


def _cr_t_nand_r(sysc, n, tgt):
    x, y = n.bindings["x"], n.bindings["y"]
    cxy = _cand(x, y)
    g = _sent(cxy)
    ih = _contra_premise(sysc, n, 0, tgt)
    u1 = _cut_on(_tpos_nneg(sysc, x, tgt.ant | {Not(Tr(_cneg(y)))}, tgt.suc),
                 ih, Not(Tr(_cneg(x))))
    u2 = _cut_on(_tpos_nneg(sysc, y, tgt.ant | {_sent(x), Tr(x)}, tgt.suc),
                 u1, Not(Tr(_cneg(y))))
    ctx = tgt.ant | {g, _sent(x), _sent(y)}
    u2w = weaken_to(u2, Sequent(ctx | {Tr(x), Tr(y)}, tgt.suc))
    al = _mk("t-and-l", Sequent(ctx | {Tr(cxy)}, tgt.suc), (u2w,),
             {"x": x, "y": y})
    te = _tnn_elim(sysc, cxy, tgt.ant | {_sent(x), _sent(y)}, tgt.suc)
    q = _cut_on(te, al, Tr(cxy))
    dg = _discharge(sysc, q, g, guards=(_sent(x), _sent(y)))
    return _sent_guard_split(sysc, dg, x, y, cxy, tgt)


def _cr_t_all_l(sysc, n, tgt):
    b = n.bindings
    x, v, y = b["x"], b["v"], b["y"]
    c = _call(v, x)
    g = _sent(c)
    used = set(derivation_vars(n)) | _fv_all(tgt.ant | tgt.suc)
    used |= all_vars(x) | all_vars(v) | {y}
    w = fresh_var(used)
    zv = fresh_var(used | {w})
    sub_w = _csub(x, _cnum(Var(w)), v)
    inner = All(y, Tr(_csub(x, _cnum(Var(y)), v)))
    neginst = _neg_inst_all(x, v, zv)
    ih = _contra_premise(sysc, n, 0, tgt)
    e0 = _comp_leaf(sysc, sub_w, tgt.ant | {g}, tgt.suc)
    e1 = _mk(
        "neg-neg-r",
        Sequent(tgt.ant | {g, _sent(sub_w), Not(Tr(sub_w))},
                tgt.suc | {Not(Not(Tr(_cneg(sub_w))))}),
        (e0,),
        {"phi": Tr(_cneg(sub_w))},
    )
    e2 = _mk(
        "neg-all-r",
        Sequent(tgt.ant | {g, _sent(sub_w), Not(Tr(sub_w))}, tgt.suc | {neginst}),
        (e1,),
        {"phi": Not(Tr(_cneg(_csub(x, _cnum(Var(zv)), v)))), "v": zv, "t": Var(w)},
    )
    e3 = _discharge(sysc, e2, _sent(sub_w), guards=(g,))
    c1 = _mk(
        "neg-all-l",
        Sequent(tgt.ant | {g, Not(inner)}, tgt.suc | {neginst}),
        (e3,),
        {"phi": Tr(_csub(x, _cnum(Var(y)), v)), "v": y, "u": w},
    )
    m1 = _cut_on(ih, c1, Not(inner))
    m2 = _mk("t-nall-r", Sequent(tgt.ant | {g}, tgt.suc | {Tr(_cneg(c))}), (m1,),
             {"x": x, "v": v, "z": zv})
    m3 = _cons_leaf(sysc, c, tgt.ant, tgt.suc - {Not(Tr(c))})
    m4 = _cut_on(m2, m3, Tr(_cneg(c)))
    return _by_cases(sysc, g, m4)


def _cr_t_all_r(sysc, n, tgt):
    b = n.bindings
    x, v, z = b["x"], b["v"], b["z"]
    c = _call(v, x)
    g = _sent(c)
    used = set(derivation_vars(n)) | _fv_all(tgt.ant | tgt.suc)
    used |= all_vars(x) | all_vars(v) | {z}
    w = fresh_var(used)
    zv2 = fresh_var(used | {w})
    sub_w = _csub(x, _cnum(Var(w)), v)
    inner = All(z, Tr(_csub(x, _cnum(Var(z)), v)))
    neginst = _neg_inst_all(x, v, zv2)
    ih = _contra_premise(sysc, n, 0, tgt)
    f1 = _cons_leaf(sysc, sub_w, tgt.ant | {g}, tgt.suc)
    f2 = _mk(
        "neg-all-r",
        Sequent(tgt.ant | {g, _sent(sub_w), Tr(_cneg(sub_w))},
                tgt.suc | {Not(inner)}),
        (f1,),
        {"phi": Tr(_csub(x, _cnum(Var(z)), v)), "v": z, "t": Var(w)},
    )
    f3 = _cut_on(f2, ih, Not(inner))
    f4 = _discharge(sysc, f3, _sent(sub_w), guards=(g,))
    f5 = _mk(
        "neg-neg-l",
        Sequent(tgt.ant | {g, Not(Not(Tr(_cneg(sub_w))))}, tgt.suc),
        (f4,),
        {"phi": Tr(_cneg(sub_w))},
    )
    f6 = _mk(
        "neg-all-l",
        Sequent(tgt.ant | {g, neginst}, tgt.suc),
        (f5,),
        {"phi": Not(Tr(_cneg(_csub(x, _cnum(Var(zv2)), v)))), "v": zv2, "u": w},
    )
    n2 = _mk("t-nall-l", Sequent(tgt.ant | {g, Tr(_cneg(c))}, tgt.suc), (f6,),
             {"x": x, "v": v, "z": zv2})
    n1 = _comp_leaf(sysc, c, tgt.ant, tgt.suc)
    n3 = _cut_on(n1, n2, Tr(_cneg(c)))
    return _by_cases(sysc, g, n3)


def _cr_t_nall_l(sysc, n, tgt):
    b = n.bindings
    x, v, z = b["x"], b["v"], b["z"]
    c = _call(v, x)
    g = _sent(c)
    neginst = _neg_inst_all(x, v, z)
    allneg = All(z, Not(Tr(_cneg(_csub(x, _cnum(Var(z)), v)))))
    used = set(derivation_vars(n)) | _fv_all(tgt.ant | tgt.suc)
    used |= all_vars(x) | all_vars(v) | {z}
    w = fresh_var(used)
    yv = fresh_var(used | {w})
    sub_w = _csub(x, _cnum(Var(w)), v)
    inner = All(yv, Tr(_csub(x, _cnum(Var(yv)), v)))
    ih = _contra_premise(sysc, n, 0, tgt)
    inv = invert_negneg_right(sysc, ih, Not(neginst))
    w_inv = weaken_to(inv, Sequent(tgt.ant, tgt.suc | {allneg}))
    t1 = _tnn_elim(sysc, sub_w, tgt.ant | {g}, tgt.suc)
    t2 = _discharge(sysc, t1, _sent(sub_w), guards=(g,))
    t3 = _mk(
        "all-l",
        Sequent(tgt.ant | {g, allneg}, tgt.suc | {Tr(sub_w)}),
        (t2,),
        {"phi": Not(Tr(_cneg(_csub(x, _cnum(Var(z)), v)))), "v": z, "t": Var(w)},
    )
    t4 = _cut_on(w_inv, t3, allneg)
    a2 = _mk(
        "all-r",
        Sequent(tgt.ant | {g}, tgt.suc | {inner}),
        (t4,),
        {"phi": Tr(_csub(x, _cnum(Var(yv)), v)), "v": yv, "u": w},
    )
    a3 = _mk("t-all-r", Sequent(tgt.ant | {g}, tgt.suc | {Tr(c)}), (a2,),
             {"x": x, "v": v, "z": yv})
    a4 = _mk("t-dneg-r", Sequent(tgt.ant | {g}, tgt.suc | {Tr(_cneg(_cneg(c)))}),
             (a3,), {"x": c})
    a5 = _cons_leaf(sysc, _cneg(c), tgt.ant | {g}, tgt.suc - {Not(Tr(_cneg(c)))})
    a6 = _cut_on(a4, a5, Tr(_cneg(_cneg(c))))
    a7 = _discharge(sysc, a6, _sent(_cneg(c)), guards=(g,))
    return _by_cases(sysc, g, a7)


def _cr_t_nall_r(sysc, n, tgt):
    b = n.bindings
    x, v, z = b["x"], b["v"], b["z"]
    c = _call(v, x)
    g = _sent(c)
    neginst = _neg_inst_all(x, v, z)
    allneg = All(z, Not(Tr(_cneg(_csub(x, _cnum(Var(z)), v)))))
    used = set(derivation_vars(n)) | _fv_all(tgt.ant | tgt.suc)
    used |= all_vars(x) | all_vars(v) | {z}
    w = fresh_var(used)
    yv = fresh_var(used | {w})
    sub_w = _csub(x, _cnum(Var(w)), v)
    inner = All(yv, Tr(_csub(x, _cnum(Var(yv)), v)))
    ih = _contra_premise(sysc, n, 0, tgt)
    z1 = _tpos_nneg(sysc, sub_w, tgt.ant | {g, inner}, tgt.suc)
    z2 = _discharge(sysc, z1, _sent(sub_w), guards=(g,))
    z3 = _mk(
        "all-l",
        Sequent(tgt.ant | {g, inner}, tgt.suc | {Not(Tr(_cneg(sub_w)))}),
        (z2,),
        {"phi": Tr(_csub(x, _cnum(Var(yv)), v)), "v": yv, "t": Var(w)},
    )
    z4 = _mk(
        "all-r",
        Sequent(tgt.ant | {g, inner}, tgt.suc | {allneg}),
        (z3,),
        {"phi": Not(Tr(_cneg(_csub(x, _cnum(Var(z)), v)))), "v": z, "u": w},
    )
    w_inv = weaken_to(invert_negneg_left(sysc, ih, Not(neginst)),
                      Sequent(tgt.ant | {allneg, g, inner}, tgt.suc))
    e = _cut_on(z4, w_inv, allneg)
    d1 = _mk("t-all-l", Sequent(tgt.ant | {g, Tr(c)}, tgt.suc), (e,),
             {"x": x, "v": v, "y": yv})
    d2 = _mk("t-dneg-l", Sequent(tgt.ant | {g, Tr(_cneg(_cneg(c)))}, tgt.suc),
             (d1,), {"x": c})
    d3 = _comp_leaf(sysc, _cneg(c), tgt.ant | {g}, tgt.suc)
    d4 = _cut_on(d3, d2, Tr(_cneg(_cneg(c))))
    d5 = _discharge(sysc, d4, _sent(_cneg(c)), guards=(g,))
    return _by_cases(sysc, g, d5)


def _cr_t_rep_l(sysc, n, tgt):
    x = n.bindings["x"]
    g = _clterm(x)
    vx = _cv(x)
    trx = _ctr(x)
    sv = _sent(vx)
    ih = _contra_premise(sysc, n, 0, tgt)
    em, _ = classical_arith(sv, tgt.ant, tgt.suc | {Tr(_cneg(vx))})
    comp = _comp_leaf(sysc, vx, tgt.ant, tgt.suc | {Not(sv)})
    xx = _cut_on(em, comp, sv)
    p = _cut_on(ih, xx, Not(Tr(vx)))
    pw = weaken_to(p, Sequent(tgt.ant | {g},
                              tgt.suc | {Not(sv), Tr(_cneg(vx))}))
    r1 = _mk("t-nrep-r", Sequent(tgt.ant | {g}, tgt.suc | {Tr(_cneg(trx))}),
             (pw,), {"x": x})
    r1w = weaken_to(r1, Sequent(tgt.ant | {g, _sent(trx)},
                                tgt.suc | {Tr(_cneg(trx))}))
    cy = _cons_leaf(sysc, trx, tgt.ant | {g}, tgt.suc - {Not(Tr(trx))})
    y1 = _cut_on(r1w, cy, Tr(_cneg(trx)))
    nn = _axiom_leaf(sysc, Sequent(tgt.ant | {g, Not(_sent(trx))}, tgt.suc))
    vv = _by_cases(sysc, _sent(trx), y1, nn)
    return _by_cases(sysc, g, vv)


def _cr_t_rep_r(sysc, n, tgt):
    x = n.bindings["x"]
    g = _clterm(x)
    vx = _cv(x)
    trx = _ctr(x)
    sv = _sent(vx)
    if not certify_sent(trx):
        raise UnsupportedTransform(
            "rep-contraposition",
            "cannot certify the truth ascription as a sentence for this code",
        )
    ih = _contra_premise(sysc, n, 0, tgt)
    cons = _cons_leaf(sysc, vx, tgt.ant, tgt.suc)
    p1 = _cut_on(cons, ih, Not(Tr(vx)))
    prem1 = weaken_to(p1, Sequent(tgt.ant | {g, sv, Tr(_cneg(vx))}, tgt.suc))
    _, p2 = classical_arith(sv, tgt.ant, tgt.suc)
    prem2 = weaken_to(p2, Sequent(tgt.ant | {g, sv, Not(sv)}, tgt.suc))
    d = _mk("t-nrep-l", Sequent(tgt.ant | {g, sv, Tr(_cneg(trx))}, tgt.suc),
            (prem1, prem2), {"x": x})
    cp = _comp_leaf(sysc, trx, tgt.ant | {g, sv}, tgt.suc)
    dy = _cut_on(cp, d, Tr(_cneg(trx)))
    yes = _discharge(sysc, dy, _sent(trx))
    tn = _axiom_leaf(sysc, Sequent(tgt.ant | {g, Not(sv)},
                                   tgt.suc | {Not(Tr(vx))}))
    ihw2 = weaken_to(ih, Sequent(tgt.ant | {g, Not(sv), Not(Tr(vx))}, tgt.suc))
    no = _cut_on(tn, ihw2, Not(Tr(vx)))
    vv = _by_cases(sysc, sv, yes, no)
    return _by_cases(sysc, g, vv)


def _cr_t_nrep_l(sysc, n, tgt):
    x = n.bindings["x"]
    g = _clterm(x)
    vx = _cv(x)
    trx = _ctr(x)
    sv = _sent(vx)
    ih1 = _contra_premise(sysc, n, 0, tgt)
    ih2 = _contra_premise(sysc, n, 1, tgt)
    w1 = _cut_on(ih1, _tnn_elim(sysc, vx, tgt.ant, tgt.suc), Not(Tr(_cneg(vx))))
    inv2 = weaken_to(invert_negneg_right(sysc, ih2, Not(Not(sv))),
                     Sequent(tgt.ant, tgt.suc | {sv}))
    w1b = _cut_on(inv2, w1, sv)
    w1w = weaken_to(w1b, Sequent(tgt.ant | {g}, tgt.suc | {Tr(vx)}))
    w2 = _mk("t-rep-r", Sequent(tgt.ant | {g}, tgt.suc | {Tr(trx)}), (w1w,),
             {"x": x})
    w2w = weaken_to(w2, Sequent(tgt.ant | {g, _sent(trx)}, tgt.suc | {Tr(trx)}))
    w3 = _mk("t-dneg-r",
             Sequent(tgt.ant | {g, _sent(trx)}, tgt.suc | {Tr(_cneg(_cneg(trx)))}),
             (w2w,), {"x": trx})
    w4 = _cons_leaf(sysc, _cneg(trx), tgt.ant | {g, _sent(trx)},
                    tgt.suc - {Not(Tr(_cneg(trx)))})
    w5 = _cut_on(w3, w4, Tr(_cneg(_cneg(trx))))
    yes = _discharge(sysc, w5, _sent(_cneg(trx)), guards=(_sent(trx),))
    a3 = _guard_transfer(sysc, trx, _cneg(trx), tgt.ant | {g}, tgt.suc)
    tnsl = _axiom_leaf(
        sysc,
        Sequent(tgt.ant | {g, Not(_sent(trx)), Not(_sent(_cneg(trx)))}, tgt.suc),
    )
    no = _cut_on(a3, tnsl, Not(_sent(_cneg(trx))))
    vv = _by_cases(sysc, _sent(trx), yes, no)
    return _by_cases(sysc, g, vv)


def _cr_t_nrep_r(sysc, n, tgt):
    x = n.bindings["x"]
    g = _clterm(x)
    vx = _cv(x)
    trx = _ctr(x)
    sv = _sent(vx)
    if not certify_sent(trx):
        raise UnsupportedTransform(
            "rep-contraposition",
            "cannot certify the truth ascription as a sentence for this code",
        )
    ih = _contra_premise(sysc, n, 0, tgt)
    i0 = init_leaf(sv, tgt.ant, tgt.suc)
    nn = _mk("neg-neg-r", Sequent(tgt.ant | {sv}, tgt.suc | {Not(Not(sv))}),
             (i0,), {"phi": sv})
    k0 = _cut_on(nn, ih, Not(Not(sv)))
    k1 = _cut_on(_tpos_nneg(sysc, vx, tgt.ant | {sv}, tgt.suc), k0,
                 Not(Tr(_cneg(vx))))
    k1w = weaken_to(k1, Sequent(tgt.ant | {g, sv, Tr(vx)}, tgt.suc))
    k2 = _mk("t-rep-l", Sequent(tgt.ant | {g, sv, Tr(trx)}, tgt.suc), (k1w,),
             {"x": x})
    k2w = weaken_to(k2, Sequent(tgt.ant | {g, sv, _sent(trx), Tr(trx)}, tgt.suc))
    k3 = _mk("t-dneg-l",
             Sequent(tgt.ant | {g, sv, _sent(trx), Tr(_cneg(_cneg(trx)))}, tgt.suc),
             (k2w,), {"x": trx})
    k4 = _comp_leaf(sysc, _cneg(trx), tgt.ant | {g, sv, _sent(trx)}, tgt.suc)
    k5 = _cut_on(k4, k3, Tr(_cneg(_cneg(trx))))
    k6 = _discharge(sysc, k5, _sent(_cneg(trx)), guards=(_sent(trx),))
    yes = _discharge(sysc, k6, _sent(trx))
    b3 = _axiom_leaf(sysc, Sequent(tgt.ant | {g, Not(sv), Tr(vx)},
                                   tgt.suc | {sv}))
    b4 = _mk("atom-neg-l", Sequent(tgt.ant | {g, Not(sv), Tr(vx)}, tgt.suc),
             (b3,), {"phi": sv})
    b4w = weaken_to(b4, Sequent(tgt.ant | {g, Not(sv), Tr(vx)}, tgt.suc))
    b5 = _mk("t-rep-l", Sequent(tgt.ant | {g, Not(sv), Tr(trx)}, tgt.suc),
             (b4w,), {"x": x})
    b5w = weaken_to(b5, Sequent(tgt.ant | {g, Not(sv), _sent(trx), Tr(trx)},
                                tgt.suc))
    b6 = _mk("t-dneg-l",
             Sequent(tgt.ant | {g, Not(sv), _sent(trx), Tr(_cneg(_cneg(trx)))},
                     tgt.suc),
             (b5w,), {"x": trx})
    b7 = _comp_leaf(sysc, _cneg(trx), tgt.ant | {g, Not(sv), _sent(trx)}, tgt.suc)
    b8 = _cut_on(b7, b6, Tr(_cneg(_cneg(trx))))
    b9 = _discharge(sysc, b8, _sent(_cneg(trx)), guards=(_sent(trx),))
    no = _discharge(sysc, b9, _sent(trx))
    vv = _by_cases(sysc, sv, yes, no)
    return _by_cases(sysc, g, vv)


_CONTRA_RULES = {
    "and-l": _cr_and_l,
    "and-r": _cr_and_r,
    "all-l": _cr_all_l,
    "all-r": _cr_all_r,
    "neg-neg-l": _cr_neg_neg_l,
    "neg-neg-r": _cr_neg_neg_r,
    "neg-and-l": _cr_neg_and_l,
    "neg-and-r": _cr_neg_and_r,
    "neg-all-l": _cr_neg_all_l,
    "neg-all-r": _cr_neg_all_r,
    "cut": _cr_cut,
    "ref": _cr_ref,
    "rep-l": _cr_rep_l,
    "eq-neg-l": _cr_lit_neg_l,
    "eq-neg-r": _cr_lit_neg_r,
    "atom-neg-l": _cr_lit_neg_l,
    "atom-neg-r": _cr_lit_neg_r,
    "gg": _cr_gg,
    "ind": _cr_ind,
    "ti": _cr_ti,
    "t-rep-l": _cr_t_rep_l,
    "t-rep-r": _cr_t_rep_r,
    "t-nrep-l": _cr_t_nrep_l,
    "t-nrep-r": _cr_t_nrep_r,
    "t-dneg-l": _cr_t_dneg_l,
    "t-dneg-r": _cr_t_dneg_r,
    "t-and-l": _cr_t_and_l,
    "t-and-r": _cr_t_and_r,
    "t-nand-l": _cr_t_nand_l,
    "t-nand-r": _cr_t_nand_r,
    "t-all-l": _cr_t_all_l,
    "t-all-r": _cr_t_all_r,
    "t-nall-l": _cr_t_nall_l,
    "t-nall-r": _cr_t_nall_r,
}


def _neq_args(f: Formula):
    """x, y whenever f is T applied to a coded negated equation."""
    if not (isinstance(f, Tr) and isinstance(f.arg, CodeOp)):
        return None
    t = f.arg
    if t.kind != "neg":
        return None
    inner = t.args[0]
    if isinstance(inner, CodeOp) and inner.kind == "eq":
        return inner.args[0], inner.args[1]
    return None


def _cfc_instance(s: Sequent):
    """Recover one (fact, guards) pair witnessing the conditional coding match."""
    for f in s.suc:
        for guards in _cfc_guard_sets(f):
            if guards <= s.ant:
                return f, frozenset(guards)
        if isinstance(f, DefAtom) and f.name == "Var":
            v = f.args[0]
            for g in s.ant:
                if isinstance(g, DefAtom) and g.name == "Sent":
                    t = g.args[0]
                    if isinstance(t, CodeOp) and t.kind == "all" and t.args[0] == v:
                        return f, frozenset({g})
        if isinstance(f, DefAtom) and f.name == "Fml_1":
            x = f.args[0]
            for g in s.ant:
                if isinstance(g, DefAtom) and g.name == "Sent":
                    t = g.args[0]
                    if isinstance(t, CodeOp) and t.kind == "sub" and t.args[0] == x:
                        return f, frozenset({g})
        if isinstance(f, DefAtom) and f.name == "Sent":
            x = f.args[0]
            for g in s.ant:
                if isinstance(g, DefAtom) and g.name == "Sent":
                    t = g.args[0]
                    if (isinstance(t, CodeOp) and t.kind in ("neg", "and")
                            and x in t.args):
                        return f, frozenset({g})
    return None


def _contra_tdef(sysc, n, tgt, rule):
    s = n.sequent
    if rule == "t-def-true":
        for f in s.suc:
            if not (isinstance(f, Tr) and isinstance(f.arg, Num)):
                continue
            alpha = decode_formula(f.arg.value)
            if alpha is None or not is_atom(alpha) or not closed(alpha):
                continue
            if eval_closed_atom(alpha) is not True:
                continue
            nc = f.arg
            nc2 = Num(encode(Not(alpha)))
            a0 = tgt.ant - {Not(f)}
            comp = _comp_leaf(sysc, nc, a0, tgt.suc)
            br = _t_code_bridge(sysc, _cneg(nc), nc2,
                                a0 | {_sent(nc), Not(f)}, tgt.suc)
            c1 = _cut_on(comp, br, Tr(_cneg(nc)))
            nd = _axiom_leaf(sysc, Sequent(a0 | {_sent(nc), Not(f), Tr(nc2)},
                                           tgt.suc))
            c2 = _cut_on(c1, nd, Tr(nc2))
            return _discharge(sysc, c2, _sent(nc))
    elif rule == "t-def-false":
        for f in s.ant:
            if not (isinstance(f, Tr) and isinstance(f.arg, Num)):
                continue
            alpha = decode_formula(f.arg.value)
            if alpha is None or not is_atom(alpha) or not closed(alpha):
                continue
            if eval_closed_atom(alpha) is not False:
                continue
            nc = f.arg
            nc2 = Num(encode(Not(alpha)))
            s0 = tgt.suc - {Not(f)}
            nd = _axiom_leaf(sysc, Sequent(tgt.ant, s0 | {Tr(nc2)}))
            br = _t_code_bridge(sysc, nc2, _cneg(nc), tgt.ant, s0)
            c1 = _cut_on(nd, br, Tr(nc2))
            cons = _cons_leaf(sysc, nc, tgt.ant, s0)
            c2 = _cut_on(c1, cons, Tr(_cneg(nc)))
            return _discharge(sysc, c2, _sent(nc))
    elif rule == "t-ndef-true":
        for f in s.ant:
            if not (isinstance(f, Tr) and isinstance(f.arg, Num)):
                continue
            beta = decode_formula(f.arg.value)
            if not (isinstance(beta, Not) and is_atom(beta.body)
                    and closed(beta.body)):
                continue
            if eval_closed_atom(beta.body) is not True:
                continue
            nc2 = f.arg
            nc1 = Num(encode(beta.body))
            s0 = tgt.suc - {Not(f)}
            df = _axiom_leaf(sysc, Sequent(tgt.ant | {_sent(nc1)},
                                           s0 | {Tr(nc1)}))
            dr = _mk(
                "t-dneg-r",
                Sequent(tgt.ant | {_sent(nc1)}, s0 | {Tr(_cneg(_cneg(nc1)))}),
                (df,),
                {"x": nc1},
            )
            br = _t_code_bridge(sysc, _cneg(_cneg(nc1)), _cneg(nc2),
                                tgt.ant | {_sent(nc1)}, s0)
            x1 = _cut_on(dr, br, Tr(_cneg(_cneg(nc1))))
            cons = _cons_leaf(sysc, nc2, tgt.ant | {_sent(nc1)}, s0)
            x2 = _cut_on(x1, cons, Tr(_cneg(nc2)))
            x3 = _discharge(sysc, x2, _sent(nc2))
            return _discharge(sysc, x3, _sent(nc1))
    elif rule == "t-ndef-false":
        for f in s.suc:
            if not (isinstance(f, Tr) and isinstance(f.arg, Num)):
                continue
            beta = decode_formula(f.arg.value)
            if not (isinstance(beta, Not) and is_atom(beta.body)
                    and closed(beta.body)):
                continue
            if eval_closed_atom(beta.body) is not False:
                continue
            nc2 = f.arg
            nc1 = Num(encode(beta.body))
            a0 = tgt.ant - {Not(f)}
            comp = _comp_leaf(sysc, nc2, a0, tgt.suc)
            br = _t_code_bridge(sysc, _cneg(nc2), _cneg(_cneg(nc1)),
                                a0 | {_sent(nc2), Not(f)}, tgt.suc)
            x1 = _cut_on(comp, br, Tr(_cneg(nc2)))
            df = _axiom_leaf(
                sysc,
                Sequent(a0 | {Not(f), _sent(nc2), _sent(nc1), Tr(nc1)}, tgt.suc),
            )
            dl = _mk(
                "t-dneg-l",
                Sequent(a0 | {Not(f), _sent(nc2), _sent(nc1),
                              Tr(_cneg(_cneg(nc1)))}, tgt.suc),
                (df,),
                {"x": nc1},
            )
            x2 = _cut_on(x1, dl, Tr(_cneg(_cneg(nc1))))
            x3 = _discharge(sysc, x2, _sent(nc1))
            return _discharge(sysc, x3, _sent(nc2))
    raise TransformError("no contrapositive found for a %s leaf" % rule)


def _contra_axiom(sysc, n, tgt):
    ids = match_axiom(sysc, tgt)
    if ids:
        return node(ids[0], tgt)
    s = n.sequent
    rule = n.rule
    if rule == "init":
        for f in s.ant & s.suc:
            if not is_literal(f):
                continue
            if isinstance(f, Not):
                alpha = f.body
                nn = Not(Not(alpha))
                a0 = tgt.ant - {nn}
                s0 = tgt.suc - {nn}
                leaf = identity_expansion(sysc, alpha, a0, s0)
                r = _mk("neg-neg-r", Sequent(a0 | {alpha}, tgt.suc), (leaf,),
                        {"phi": alpha})
                return _mk("neg-neg-l", tgt, (r,), {"phi": alpha})
            return identity_expansion(sysc, Not(f), tgt.ant - {Not(f)},
                                      tgt.suc - {Not(f)})
    if rule == "pa-neg":
        for f in s.ant:
            if isinstance(f, Not) and is_pa_axiom(f.body):
                pi = f.body
                leaf = node("pa", Sequent(tgt.ant,
                                          (tgt.suc - {Not(Not(pi))}) | {pi}))
                return _mk("neg-neg-r", tgt, (leaf,), {"phi": pi})
    if rule == "af-true-neg":
        for f in s.ant:
            if (isinstance(f, Not) and is_atom(f.body) and closed(f.body)
                    and not isinstance(f.body, Tr)
                    and eval_closed_atom(f.body) is True):
                alpha = f.body
                leaf = node("af-true",
                            Sequent(tgt.ant,
                                    (tgt.suc - {Not(Not(alpha))}) | {alpha}))
                return _mk("neg-neg-r", tgt, (leaf,), {"phi": alpha})
    if rule == "af-false-neg":
        for f in s.suc:
            if (isinstance(f, Not) and is_atom(f.body) and closed(f.body)
                    and not isinstance(f.body, Tr)
                    and eval_closed_atom(f.body) is False):
                alpha = f.body
                leaf = node("af-false",
                            Sequent((tgt.ant - {Not(Not(alpha))}) | {alpha},
                                    tgt.suc))
                return _mk("neg-neg-l", tgt, (leaf,), {"phi": alpha})
    if rule == "cf-neg":
        for f in s.ant:
            if isinstance(f, Not) and _certified(f.body):
                delta = f.body
                leaf = _axiom_leaf(
                    sysc,
                    Sequent(tgt.ant, (tgt.suc - {Not(Not(delta))}) | {delta}),
                )
                return _mk("neg-neg-r", tgt, (leaf,), {"phi": delta})
    if rule == "cf-eq":
        for f in s.suc:
            if isinstance(f, Equal) and certify_eq(f.left, f.right):
                leaf = _axiom_leaf(
                    sysc, Sequent(tgt.ant - {Not(f)}, tgt.suc | {f}))
                return _mk("eq-neg-l", tgt, (leaf,),
                           {"s": f.left, "t": f.right})
    if rule == "t-nsent":
        for f in s.ant:
            if (isinstance(f, Not) and isinstance(f.body, DefAtom)
                    and f.body.name == "Sent"):
                z = f.body.args[0]
                if Not(Tr(z)) not in s.suc:
                    continue
                sz = f.body
                leaf = _axiom_leaf(
                    sysc,
                    Sequent((tgt.ant - {Not(Not(Tr(z)))}) | {Tr(z)},
                            (tgt.suc - {Not(Not(sz))}) | {sz}),
                )
                a = _mk("neg-neg-r",
                        Sequent((tgt.ant - {Not(Not(Tr(z)))}) | {Tr(z)},
                                tgt.suc),
                        (leaf,), {"phi": sz})
                return _mk("neg-neg-l", tgt, (a,), {"phi": Tr(z)})
    if rule == "cfc":
        found = _cfc_instance(s)
        if found is not None:
            fact, guards = found
            yes0 = _axiom_leaf(
                sysc,
                Sequent((tgt.ant - {Not(fact)}) | guards, tgt.suc | {fact}),
            )
            cur = _mk("atom-neg-l", Sequent(tgt.ant | guards, tgt.suc),
                      (yes0,), {"phi": fact})
            for gd in guards:
                cur = _by_cases(sysc, gd, cur)
            return cur
    if rule == "cons":
        for f in s.suc:
            if not (isinstance(f, Not) and isinstance(f.body, Tr)):
                continue
            x = f.body.arg
            if not ({_sent(x), Tr(_cneg(x))} <= s.ant):
                continue
            core = _tpos_nneg(sysc, x, tgt.ant - {Not(f)},
                              tgt.suc - {Not(Tr(_cneg(x)))})
            mid = _by_cases(sysc, _sent(x), core)
            return _mk("neg-neg-l", tgt, (mid,), {"phi": f.body})
    if rule == "comp":
        for f in s.suc:
            if not (isinstance(f, Tr) and isinstance(f.arg, CodeOp)
                    and f.arg.kind == "neg"):
                continue
            x = f.arg.args[0]
            if not ({_sent(x), Not(Tr(x))} <= s.ant):
                continue
            core = _tnn_elim(sysc, x, tgt.ant - {Not(f)},
                             tgt.suc - {Not(Not(Tr(x)))})
            e2 = _mk(
                "neg-neg-r",
                Sequent(core.sequent.ant,
                        (core.sequent.suc - {Tr(x)}) | {Not(Not(Tr(x)))}),
                (core,),
                {"phi": Tr(x)},
            )
            return _by_cases(sysc, _sent(x), e2)
    if rule == "t-eq-i":
        for f in s.suc:
            if not (isinstance(f, Tr) and isinstance(f.arg, CodeOp)
                    and f.arg.kind == "eq"):
                continue
            x, y = f.arg.args
            guards = frozenset({_clterm(x), _clterm(y)})
            if not (guards | {Equal(_cv(x), _cv(y))} <= s.ant):
                continue
            k = f.arg
            a0 = tgt.ant - {Not(f)}
            leaf = _axiom_leaf(
                sysc, Sequent(a0 | guards | {Tr(_cneg(k))}, tgt.suc))
            cp = _comp_leaf(sysc, k, a0 | guards, tgt.suc)
            out = _cut_on(cp, leaf, Tr(_cneg(k)))
            out = _discharge(sysc, out, _sent(k))
            for gd in guards:
                out = _by_cases(sysc, gd, out)
            return out
    if rule == "t-eq-ii":
        for f in s.ant:
            if not (isinstance(f, Tr) and isinstance(f.arg, CodeOp)
                    and f.arg.kind == "eq"):
                continue
            x, y = f.arg.args
            guards = frozenset({_clterm(x), _clterm(y)})
            eqv = Equal(_cv(x), _cv(y))
            if not (guards <= s.ant and eqv in s.suc):
                continue
            k = f.arg
            s0 = tgt.suc - {Not(f)}
            leaf = _axiom_leaf(
                sysc, Sequent(tgt.ant | guards, s0 | {Tr(_cneg(k))}))
            cs = _cons_leaf(sysc, k, tgt.ant | guards, s0)
            out = _cut_on(leaf, cs, Tr(_cneg(k)))
            out = _discharge(sysc, out, _sent(k))
            for gd in guards:
                out = _by_cases(sysc, gd, out)
            return out
    if rule == "t-neq-i":
        for f in s.suc:
            pair = _neq_args(f)
            if pair is None:
                continue
            x, y = pair
            guards = frozenset({_clterm(x), _clterm(y)})
            eqv = Equal(_cv(x), _cv(y))
            if not (guards <= s.ant and Not(eqv) in s.ant):
                continue
            k = _ceq(x, y)
            a0 = tgt.ant - {Not(f)}
            s0 = tgt.suc - {Not(Not(eqv))}
            h1 = _axiom_leaf(
                sysc, Sequent(a0 | guards | {Tr(k)}, s0 | {eqv}))
            h2 = _mk("neg-neg-r", Sequent(a0 | guards | {Tr(k)}, tgt.suc),
                     (h1,), {"phi": eqv})
            h3 = _tnn_elim(sysc, k, a0 | guards, tgt.suc)
            out = _cut_on(h3, h2, Tr(k))
            out = _discharge(sysc, out, _sent(k))
            for gd in guards:
                out = _by_cases(sysc, gd, out)
            return out
    if rule == "t-neq-ii":
        for f in s.ant:
            pair = _neq_args(f)
            if pair is None:
                continue
            x, y = pair
            guards = frozenset({_clterm(x), _clterm(y)})
            eqv = Equal(_cv(x), _cv(y))
            if not (guards <= s.ant and Not(eqv) in s.suc):
                continue
            k = _ceq(x, y)
            nn = Not(Not(eqv))
            s0 = tgt.suc - {Not(f)}
            a0 = tgt.ant - {nn}
            j1 = _axiom_leaf(
                sysc, Sequent(a0 | guards | {eqv}, s0 | {Tr(k)}))
            j2 = _tpos_nneg(sysc, k, a0 | guards | {eqv}, s0)
            j3 = _cut_on(j1, j2, Tr(k))
            j3 = _discharge(sysc, j3, _sent(k))
            for gd in guards:
                j3 = _by_cases(sysc, gd, j3)
            return _mk("neg-neg-l", tgt, (j3,), {"phi": eqv})
    if rule in ("t-def-true", "t-def-false", "t-ndef-true", "t-ndef-false"):
        return _contra_tdef(sysc, n, tgt, rule)
    if rule in ("t-reg-i", "t-reg-ii"):
        raise UnsupportedTransform(
            "reg-contraposition",
            "the regularity axioms have no derivable contrapositive here",
        )
    raise TransformError("no contrapositive construction for a %r leaf" % rule)


def _contra(sysc, n):
    tgt = _contra_seq(n.sequent)
    if not n.premises:
        out = _contra_axiom(sysc, n, tgt)
    else:
        fn = _CONTRA_RULES.get(n.rule)
        if fn is None:
            raise UnsupportedTransform(
                "unsupported-rule",
                "no contrapositive construction for rule %r" % n.rule)
        out = fn(sysc, n, tgt)
    return weaken_to(out, tgt)


def contrapose(spec, d: Node) -> Node:
    """Turn a derivation of Gamma => Delta into one of ~Delta => ~Gamma.

    Works over the truth systems whose external negation rules are absent;
    the symmetry of the remaining rule set makes the flip derivable.
    """
    sysc = _system(spec)
    if sysc.family != "pkf" or sysc.neg_left != "none" or sysc.neg_right != "none":
        raise UnsupportedTransform(
            "unsupported-spec",
            "contraposition is only available for the symmetric truth systems",
        )
    rep = check(sysc, d)
    if not rep.verdict:
        raise TransformError("input derivation fails to check: %s"
                             % (rep.violated_condition,))
    return _contra(sysc, d)
