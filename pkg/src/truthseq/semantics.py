"""Independent oracles: four-valued valuations and Kripke fixed points.

Nothing here consults the proof checker.  The valuation side evaluates
formulas over the four values true/both/neither/false under the standard
strong-Kleene matrices, with a valuation class per logic (K3 forbids
both, LP forbids neither, KS3 forbids a single valuation from mixing a
gap with a glut, CL is two valued).  The fixed-point side iterates the
strong-Kleene jump over a finite pool of sentences until it stabilises.

Truth atoms are always opaque to a valuation; closed arithmetic atoms
(equalities and coding-predicate atoms) are decided outright by
computation and cannot be assigned.  Free variables are understood
universally and are grounded over an explicit numeral bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .coding import decode_formula, encode, eval_closed_atom, term_value
from .calculi import Sequent, match_axiom, sequent, sequent_free_vars
from .syntax import (
    All,
    And,
    DefAtom,
    Equal,
    Formula,
    Not,
    Num,
    Tr,
    closed,
    free_vars,
    is_atom,
    is_literal,
    literal_atom,
    show,
    substitute,
)

# values are two-bit masks: bit 1 says "contains truth", bit 0 says
# "contains falsity"
NEITHER = 0
FALSE = 1
TRUE = 2
BOTH = 3
FOUR_VALUES = (NEITHER, FALSE, TRUE, BOTH)

VALUE_NAMES = {NEITHER: "neither", FALSE: "false", TRUE: "true", BOTH: "both"}


def neg_val(v: int) -> int:
    return ((v & 1) << 1) | (v >> 1)


def and_val(a: int, b: int) -> int:
    return (a & b & 2) | ((a | b) & 1)


def meet(vals: Iterable[int]) -> int:
    out = TRUE
    for v in vals:
        out = and_val(out, v)
    return out


def designated(v: int) -> bool:
    return bool(v & 2)


_ALLOWED = {
    "fde": (NEITHER, FALSE, TRUE, BOTH),
    "k3": (NEITHER, FALSE, TRUE),
    "lp": (FALSE, TRUE, BOTH),
    "ks3": (NEITHER, FALSE, TRUE, BOTH),
    "cl": (FALSE, TRUE),
}

LOGICS = tuple(_ALLOWED)


def allowed_values(logic: str) -> tuple:
    try:
        return _ALLOWED[logic]
    except KeyError:
        raise ValueError(f"unknown logic {logic!r}") from None


def _mixed(values: Iterable[int]) -> bool:
    vs = set(values)
    return BOTH in vs and NEITHER in vs


@dataclass
class Valuation:
    """Assignment of four-values to opaque atoms, tagged with its class."""

    logic: str
    assignment: dict

    def well_formed(self) -> bool:
        allowed = allowed_values(self.logic)
        if not all(v in allowed for v in self.assignment.values()):
            return False
        if self.logic == "ks3" and _mixed(self.assignment.values()):
            return False
        return True

    def value(self, atom: Formula) -> int:
        key = atom_key(atom)
        if key not in self.assignment:
            raise ValueError(f"unbound atom {show(atom)}")
        return self.assignment[key]


def atom_key(atom: Formula) -> Formula:
    """Canonical dictionary key for an opaque atom.

    Closed truth atoms are keyed by the value of their argument so that
    provably equal terms share an atom; everything else keys as itself.
    """
    if isinstance(atom, Tr) and closed(atom.arg):
        return Tr(Num(term_value(atom.arg)))
    return atom


def _decided(atom: Formula) -> Optional[int]:
    fact = eval_closed_atom(atom)
    if fact is None:
        return None
    return TRUE if fact else FALSE


def eval_formula(v: Valuation, phi: Formula, bound: Optional[int] = None) -> int:
    """Homomorphic four-valued evaluation; quantifiers need a bound."""
    if isinstance(phi, (Equal, DefAtom, Tr)):
        fixed = _decided(phi)
        if fixed is not None:
            return fixed
        return v.value(phi)
    if isinstance(phi, Not):
        return neg_val(eval_formula(v, phi.body, bound))
    if isinstance(phi, And):
        return and_val(
            eval_formula(v, phi.left, bound), eval_formula(v, phi.right, bound)
        )
    if isinstance(phi, All):
        if bound is None:
            raise ValueError("quantified evaluation needs a numeral bound")
        return meet(
            eval_formula(v, substitute(phi.body, Num(i), phi.var), bound)
            for i in range(bound + 1)
        )
    raise TypeError(f"not a formula: {phi!r}")


def collect_atom_keys(formulas: Iterable[Formula], bound: Optional[int] = None) -> list:
    """Opaque atom keys of the formulas, sorted by printed form.

    Quantified subformulas are grounded over 0..bound first.
    """
    keys = set()

    def walk(phi: Formula) -> None:
        if isinstance(phi, (Equal, DefAtom, Tr)):
            if _decided(phi) is None:
                keys.add(atom_key(phi))
        elif isinstance(phi, Not):
            walk(phi.body)
        elif isinstance(phi, And):
            walk(phi.left)
            walk(phi.right)
        elif isinstance(phi, All):
            if bound is None:
                raise ValueError("quantified atom collection needs a numeral bound")
            for i in range(bound + 1):
                walk(substitute(phi.body, Num(i), phi.var))

    for f in formulas:
        walk(f)
    return sorted(keys, key=show)


def valuations(logic: str, atoms: Sequence[Formula]) -> Iterator[Valuation]:
    """All class valuations over the given atom keys."""
    allowed = allowed_values(logic)
    for combo in product(allowed, repeat=len(atoms)):
        if logic == "ks3" and _mixed(combo):
            continue
        yield Valuation(logic, dict(zip(atoms, combo)))


_MAX_ATOMS = 10
_MAX_GROUND = 6


def sequent_valid(
    logic: str,
    s: Sequent,
    atoms: Optional[Sequence[Formula]] = None,
    bound: int = 2,
) -> bool:
    """Validity oracle: antecedent designated forces succedent designated.

    Free variables are read universally and grounded over 0..bound, so
    the answer is relative to that finite slice of the domain.
    """
    fvs = sorted(sequent_free_vars(s))
    if len(fvs) > _MAX_GROUND:
        raise ValueError("too many free variables to ground at desk scale")
    for assignment in product(range(bound + 1), repeat=len(fvs)):
        ant = list(s.ant)
        suc = list(s.suc)
        for var, val in zip(fvs, assignment):
            ant = [substitute(f, Num(val), var) for f in ant]
            suc = [substitute(f, Num(val), var) for f in suc]
        keys = collect_atom_keys(ant + suc, bound)
        if atoms is not None:
            keys = sorted(set(keys) | {atom_key(a) for a in atoms}, key=show)
        if len(keys) > _MAX_ATOMS:
            raise ValueError("too many atoms to enumerate valuations")
        for v in valuations(logic, keys):
            if all(designated(eval_formula(v, f, bound)) for f in ant) and not any(
                designated(eval_formula(v, f, bound)) for f in suc
            ):
                return False
    return True


# ---------------------------------------------------------------------------
# bitmask validity for bulk enumeration
#
# With n atoms there are 4^n valuations, indexed so that atom i carries
# value (index >> 2i) & 3.  A formula's designation mask has bit j set
# when the formula is designated under valuation j; sequent validity over
# a class mask is then three integer operations.


def value_vector(phi: Formula, atoms: Sequence[Formula]) -> list:
    index = {atom_key(a): i for i, a in enumerate(atoms)}
    n = len(atoms)
    total = 4 ** n

    def ev(p: Formula, j: int) -> int:
        if isinstance(p, (Equal, DefAtom, Tr)):
            fixed = _decided(p)
            if fixed is not None:
                return fixed
            return (j >> (2 * index[atom_key(p)])) & 3
        if isinstance(p, Not):
            return neg_val(ev(p.body, j))
        if isinstance(p, And):
            return and_val(ev(p.left, j), ev(p.right, j))
        raise ValueError("value_vector handles quantifier-free formulas only")

    return [ev(phi, j) for j in range(total)]


def designation_mask(phi: Formula, atoms: Sequence[Formula]) -> int:
    mask = 0
    for j, v in enumerate(value_vector(phi, atoms)):
        if designated(v):
            mask |= 1 << j
    return mask


def class_mask(logic: str, n_atoms: int) -> int:
    allowed = set(allowed_values(logic))
    mask = 0
    for j in range(4 ** n_atoms):
        vals = [(j >> (2 * i)) & 3 for i in range(n_atoms)]
        if any(v not in allowed for v in vals):
            continue
        if logic == "ks3" and _mixed(vals):
            continue
        mask |= 1 << j
    return mask


def mask_sequent_valid(ant_masks: Iterable[int], suc_masks: Iterable[int],
                       cmask: int, n_atoms: int) -> bool:
    ant = (1 << (4 ** n_atoms)) - 1
    for m in ant_masks:
        ant &= m
    suc = 0
    for m in suc_masks:
        suc |= m
    return (ant & cmask & ~suc) == 0


# ---------------------------------------------------------------------------
# cut-free provability for the quantifier-free fragment
#
# The compound rules of these calculi are invertible, so a sequent is
# provable exactly when every full decomposition into literal sequents
# lands in the provable-literal table.  Each formula decomposes into a
# list of alternative literal sets (two-premise rules fork, one-premise
# rules merge); a sequent's decompositions are the products across its
# formulas.  The literal table itself is a least fixpoint over the
# atomic rules of the logic.


def _product_union(blocks: Sequence[tuple]) -> tuple:
    acc = [frozenset()]
    for alts in blocks:
        acc = [a | b for a in acc for b in alts]
    return tuple(acc)


def literal_branches_left(phi: Formula) -> tuple:
    if is_literal(phi):
        return (frozenset([phi]),)
    if isinstance(phi, And):
        return _product_union(
            [literal_branches_left(phi.left), literal_branches_left(phi.right)]
        )
    if isinstance(phi, Not):
        body = phi.body
        if isinstance(body, Not):
            return literal_branches_left(body.body)
        if isinstance(body, And):
            return literal_branches_left(Not(body.left)) + literal_branches_left(
                Not(body.right)
            )
    raise ValueError(f"not quantifier free: {show(phi)}")


def literal_branches_right(phi: Formula) -> tuple:
    if is_literal(phi):
        return (frozenset([phi]),)
    if isinstance(phi, And):
        return literal_branches_right(phi.left) + literal_branches_right(phi.right)
    if isinstance(phi, Not):
        body = phi.body
        if isinstance(body, Not):
            return literal_branches_right(body.body)
        if isinstance(body, And):
            return _product_union(
                [
                    literal_branches_right(Not(body.left)),
                    literal_branches_right(Not(body.right)),
                ]
            )
    raise ValueError(f"not quantifier free: {show(phi)}")


def _literal_mask(lits: Iterable[Formula], atoms: dict) -> int:
    m = 0
    for lit in lits:
        atom = literal_atom(lit)
        i = atoms[atom_key(atom)]
        if isinstance(lit, Not):
            m |= 1 << (2 * i + 1)
        else:
            m |= 1 << (2 * i)
    return m


def literal_table(logic: str, n_atoms: int) -> bytearray:
    """Provability of every literal sequent over n atoms, as a bit table.

    The state (ant_mask, suc_mask) packs each side into 2n bits (even
    bits positive, odd bits negated).  Built bottom up: initial sequents
    first, then closure under the logic's atomic rules until stable.
    """
    if n_atoms > 5:
        raise ValueError("literal table too large past five atoms")
    width = 1 << (2 * n_atoms)
    table = bytearray(width * width)

    def init_ok(am: int, sm: int) -> bool:
        return bool(am & sm)

    for am in range(width):
        for sm in range(width):
            if init_ok(am, sm):
                table[am * width + sm] = 1

    neg_l = logic in ("k3", "cl")
    neg_r = logic in ("lp", "cl")
    gg = logic == "ks3"

    changed = True
    while changed:
        changed = False
        for am in range(width):
            base = am * width
            for sm in range(width):
                if table[base + sm]:
                    continue
                ok = False
                if neg_l:
                    for i in range(n_atoms):
                        nb = 1 << (2 * i + 1)
                        if am & nb:
                            pm = sm | (1 << (2 * i))
                            if table[base + pm] or table[(am ^ nb) * width + pm]:
                                ok = True
                                break
                if not ok and neg_r:
                    for i in range(n_atoms):
                        nb = 1 << (2 * i + 1)
                        if sm & nb:
                            pa = am | (1 << (2 * i))
                            if table[pa * width + sm] or table[pa * width + (sm ^ nb)]:
                                ok = True
                                break
                if not ok and gg:
                    for i in range(n_atoms):
                        pb, nb = 1 << (2 * i), 1 << (2 * i + 1)
                        if (am & pb) and (am & nb):
                            for ctx in (am, am ^ pb, am ^ nb, am ^ pb ^ nb):
                                hit = False
                                for j in range(n_atoms):
                                    qp, qn = 1 << (2 * j), 1 << (2 * j + 1)
                                    if (
                                        table[(ctx | qp) * width + sm]
                                        and table[(ctx | qn) * width + sm]
                                    ):
                                        hit = True
                                        break
                                if hit:
                                    ok = True
                                    break
                            if ok:
                                break
                if ok:
                    table[base + sm] = 1
                    changed = True
    return table


def provable_quantifier_free(logic: str, s: Sequent) -> bool:
    """Cut-free provability through exhaustive invertible decomposition.

    All atoms are treated opaquely: the pure calculi carry no arithmetic
    axioms, so a decided closed equality is still just an atom here.
    """
    alphabet = set()

    def gather(phi: Formula) -> None:
        if isinstance(phi, (Equal, DefAtom, Tr)):
            alphabet.add(atom_key(phi))
        elif isinstance(phi, Not):
            gather(phi.body)
        elif isinstance(phi, And):
            gather(phi.left)
            gather(phi.right)
        else:
            raise ValueError("provability oracle is quantifier free")

    for f in s.formulas():
        gather(f)
    alpha = sorted(alphabet, key=show)
    index = {a: i for i, a in enumerate(alpha)}
    table = literal_table(logic, len(alpha))
    width = 1 << (2 * len(alpha))
    left = _product_union([literal_branches_left(f) for f in s.ant])
    right = _product_union([literal_branches_right(f) for f in s.suc])
    for la in left:
        am = _literal_mask(la, index)
        for rb in right:
            sm = _literal_mask(rb, index)
            if not table[am * width + sm]:
                return False
    return True


# ---------------------------------------------------------------------------
# bounded backward search
#
# Used as a refuting search at desk scale: it tries the rules whose
# backward application is driven by formulas present in the sequent,
# plus reflexivity over a finite term universe and, optionally, analytic
# cuts.  Induction, transfinite induction, and rules whose conclusion
# requires guard atoms the sequent lacks cannot fire on the sequent
# classes this is used for; the search does not attempt them.


def _subterms(t) -> set:
    from .syntax import Suc, Add, Mul, CodeOp, Var as V

    out = {t}
    if isinstance(t, Suc):
        out |= _subterms(t.arg)
    elif isinstance(t, (Add, Mul)):
        out |= _subterms(t.left) | _subterms(t.right)
    elif isinstance(t, CodeOp):
        for a in t.args:
            out |= _subterms(a)
    return out


def _sequent_terms(s: Sequent) -> set:
    out = set()

    def walk(phi):
        if isinstance(phi, Equal):
            out.update(_subterms(phi.left) | _subterms(phi.right))
        elif isinstance(phi, Tr):
            out.update(_subterms(phi.arg))
        elif isinstance(phi, DefAtom):
            for a in phi.args:
                out.update(_subterms(a))
        elif isinstance(phi, Not):
            walk(phi.body)
        elif isinstance(phi, And):
            walk(phi.left)
            walk(phi.right)
        elif isinstance(phi, All):
            walk(phi.body)

    for f in s.formulas():
        walk(f)
    return out


def search_derivation(
    system,
    s: Sequent,
    max_depth: int,
    terms: Optional[Sequence] = None,
    analytic_cut: bool = False,
):
    """Bounded backward proof search; returns a derivation Node or None."""
    from .calculi import Node, calculus, node

    sysc = calculus(system) if isinstance(system, str) else system
    universe = set(terms) if terms is not None else _sequent_terms(s)

    def attempt(seq: Sequent, depth: int, seen: frozenset):
        axioms = match_axiom(sysc, seq)
        if axioms:
            return node(axioms[0], seq)
        if depth == 0 or seq in seen:
            return None
        seen = seen | {seq}

        def sub(child: Sequent):
            return attempt(child, depth - 1, seen)

        gamma_moves = []
        for f in seq.ant:
            if isinstance(f, And) and "and-l" in sysc.rules:
                gamma_moves.append(
                    (
                        "and-l",
                        {"phi": f.left, "psi": f.right},
                        [Sequent(seq.ant | {f.left, f.right}, seq.suc)],
                    )
                )
            if isinstance(f, Not):
                b = f.body
                if isinstance(b, Not) and "neg-neg-l" in sysc.rules:
                    gamma_moves.append(
                        ("neg-neg-l", {"phi": b.body}, [Sequent(seq.ant | {b.body}, seq.suc)])
                    )
                if isinstance(b, And) and "neg-and-l" in sysc.rules:
                    gamma_moves.append(
                        (
                            "neg-and-l",
                            {"phi": b.left, "psi": b.right},
                            [
                                Sequent(seq.ant | {Not(b.left)}, seq.suc),
                                Sequent(seq.ant | {Not(b.right)}, seq.suc),
                            ],
                        )
                    )
                if "neg-l" in sysc.rules and (
                    sysc.neg_left == "full" or is_atom(b)
                ):
                    gamma_moves.append(
                        ("neg-l", {"phi": b}, [Sequent(seq.ant, seq.suc | {b})])
                    )
                if isinstance(b, Equal) and "eq-neg-l" in sysc.rules:
                    gamma_moves.append(
                        (
                            "eq-neg-l",
                            {"s": b.left, "t": b.right},
                            [Sequent(seq.ant, seq.suc | {b})],
                        )
                    )
                if isinstance(b, DefAtom) and "atom-neg-l" in sysc.rules:
                    gamma_moves.append(
                        ("atom-neg-l", {"phi": b}, [Sequent(seq.ant, seq.suc | {b})])
                    )
        for f in seq.suc:
            if isinstance(f, And) and "and-r" in sysc.rules:
                gamma_moves.append(
                    (
                        "and-r",
                        {"phi": f.left, "psi": f.right},
                        [
                            Sequent(seq.ant, seq.suc | {f.left}),
                            Sequent(seq.ant, seq.suc | {f.right}),
                        ],
                    )
                )
            if isinstance(f, Not):
                b = f.body
                if isinstance(b, Not) and "neg-neg-r" in sysc.rules:
                    gamma_moves.append(
                        ("neg-neg-r", {"phi": b.body}, [Sequent(seq.ant, seq.suc | {b.body})])
                    )
                if isinstance(b, And) and "neg-and-r" in sysc.rules:
                    gamma_moves.append(
                        (
                            "neg-and-r",
                            {"phi": b.left, "psi": b.right},
                            [Sequent(seq.ant, seq.suc | {Not(b.left), Not(b.right)})],
                        )
                    )
                if "neg-r" in sysc.rules and (
                    sysc.neg_right == "full" or is_atom(b)
                ):
                    gamma_moves.append(
                        ("neg-r", {"phi": b}, [Sequent(seq.ant | {b}, seq.suc)])
                    )
                if isinstance(b, Equal) and "eq-neg-r" in sysc.rules:
                    gamma_moves.append(
                        (
                            "eq-neg-r",
                            {"s": b.left, "t": b.right},
                            [Sequent(seq.ant | {b}, seq.suc)],
                        )
                    )
                if isinstance(b, DefAtom) and "atom-neg-r" in sysc.rules:
                    gamma_moves.append(
                        ("atom-neg-r", {"phi": b}, [Sequent(seq.ant | {b}, seq.suc)])
                    )
        if "gg" in sysc.rules:
            for f in seq.ant:
                if is_atom(f) and Not(f) in seq.ant:
                    for g in seq.formulas():
                        cand = literal_atom(g) if is_literal(g) else None
                        if cand is None:
                            continue
                        gamma_moves.append(
                            (
                                "gg",
                                {"phi": f, "psi": cand},
                                [
                                    Sequent(seq.ant | {cand}, seq.suc),
                                    Sequent(seq.ant | {Not(cand)}, seq.suc),
                                ],
                            )
                        )
        if "ref" in sysc.rules:
            for t in universe:
                if not free_vars(t):
                    gamma_moves.append(
                        ("ref", {"t": t}, [Sequent(seq.ant | {Equal(t, t)}, seq.suc)])
                    )
        if analytic_cut and "cut" in sysc.rules:
            for f in seq.formulas():
                gamma_moves.append(
                    (
                        "cut",
                        {"phi": f},
                        [
                            Sequent(seq.ant, seq.suc | {f}),
                            Sequent(seq.ant | {f}, seq.suc),
                        ],
                    )
                )
        for rule, bindings, children in gamma_moves:
            kids = []
            for child in children:
                k = sub(child)
                if k is None:
                    kids = None
                    break
                kids.append(k)
            if kids is not None:
                return Node(rule, seq, tuple(kids), dict(bindings))
        return None

    return attempt(s, max_depth, frozenset())


# ---------------------------------------------------------------------------
# Kripke fixed points


@dataclass(frozen=True)
class FixedPoint:
    """Extension/antiextension pair over a finite sentence pool."""

    extension: frozenset
    antiextension: frozenset
    pool: tuple
    bound: int
    stages: int
    entry_stage: dict = field(default_factory=dict, compare=False)

    def value_of(self, code: int) -> str:
        if code in self.extension:
            return "true"
        if code in self.antiextension:
            return "false"
        return "neither"


def _sk_value(phi: Formula, ext: frozenset, anti: frozenset, bound: int) -> int:
    """Four-valued reading of a sentence relative to (ext, anti)."""
    if isinstance(phi, Tr):
        code = term_value(phi.arg)
        dec = decode_formula(code)
        not_sentence = dec is None or bool(free_vars(dec))
        t = code in ext
        f = code in anti or not_sentence
        return (2 if t else 0) | (1 if f else 0)
    if isinstance(phi, (Equal, DefAtom)):
        fact = eval_closed_atom(phi)
        if fact is None:
            raise ValueError(f"open atom in pool sentence: {show(phi)}")
        return TRUE if fact else FALSE
    if isinstance(phi, Not):
        return neg_val(_sk_value(phi.body, ext, anti, bound))
    if isinstance(phi, And):
        return and_val(
            _sk_value(phi.left, ext, anti, bound),
            _sk_value(phi.right, ext, anti, bound),
        )
    if isinstance(phi, All):
        return meet(
            _sk_value(substitute(phi.body, Num(i), phi.var), ext, anti, bound)
            for i in range(bound + 1)
        )
    raise TypeError(f"not a formula: {phi!r}")


def _tr_codes_needed(phi: Formula, bound: int, out: set) -> None:
    if isinstance(phi, Tr):
        if closed(phi.arg):
            out.add(term_value(phi.arg))
    elif isinstance(phi, Not):
        _tr_codes_needed(phi.body, bound, out)
    elif isinstance(phi, And):
        _tr_codes_needed(phi.left, bound, out)
        _tr_codes_needed(phi.right, bound, out)
    elif isinstance(phi, All):
        for i in range(bound + 1):
            _tr_codes_needed(substitute(phi.body, Num(i), phi.var), bound, out)


_POOL_CAP = 2000


def build_pool(seeds: Iterable[Formula], bound: int) -> tuple:
    """Close a seed set under the sentences its truth atoms refer to."""
    pool = []
    codes = set()
    queue = list(seeds)
    while queue:
        phi = queue.pop()
        if free_vars(phi):
            raise ValueError(f"pool members must be sentences: {show(phi)}")
        c = encode(phi)
        if c in codes:
            continue
        codes.add(c)
        pool.append(phi)
        if len(pool) > _POOL_CAP:
            raise ValueError("pool closure exceeded the desk-scale cap")
        referred: set = set()
        _tr_codes_needed(phi, bound, referred)
        for rc in referred:
            dec = decode_formula(rc)
            if dec is not None and not free_vars(dec) and rc not in codes:
                queue.append(dec)
    pool.sort(key=show)
    return tuple(pool)


def missing_pool_codes(pool: Sequence[Formula], bound: int) -> list:
    codes = {encode(phi) for phi in pool}
    missing = []
    for phi in pool:
        referred: set = set()
        _tr_codes_needed(phi, bound, referred)
        for rc in referred:
            dec = decode_formula(rc)
            if dec is not None and not free_vars(dec) and rc not in codes:
                missing.append(rc)
    return missing


def kripke_lfp(pool: Sequence[Formula], bound: int) -> FixedPoint:
    """Least fixed point of the strong-Kleene jump on the pool."""
    missing = missing_pool_codes(pool, bound)
    if missing:
        raise ValueError(
            f"pool not closed: {len(missing)} referred sentence(s) missing"
        )
    coded = [(encode(phi), phi) for phi in pool]
    ext: frozenset = frozenset()
    anti: frozenset = frozenset()
    entry: dict = {}
    stage = 0
    while True:
        stage += 1
        new_ext = set(ext)
        new_anti = set(anti)
        for code, phi in coded:
            v = _sk_value(phi, ext, anti, bound)
            if v == TRUE and code not in new_ext:
                new_ext.add(code)
                entry.setdefault(code, (stage, "true"))
            if v == FALSE and code not in new_anti:
                new_anti.add(code)
                entry.setdefault(code, (stage, "false"))
        if new_ext == ext and new_anti == anti:
            break
        ext, anti = frozenset(new_ext), frozenset(new_anti)
        if stage > len(pool) + 2:
            raise RuntimeError("jump failed to stabilise within the pool bound")
    if ext & anti:
        raise RuntimeError("least fixed point is inconsistent")
    return FixedPoint(ext, anti, tuple(pool), bound, stage - 1, entry)


def holds_in_all_fixed_points(
    phi: Formula, pool: Iterable[Formula], bound: int
) -> bool:
    """Membership of phi in the least fixed point's extension.

    By monotonicity on the finite pool this settles membership in every
    fixed point extending it.
    """
    full = build_pool(list(pool) + [phi], bound)
    fp = kripke_lfp(full, bound)
    return encode(phi) in fp.extension


# ---------------------------------------------------------------------------
# the diagonal sentence


def liar_sentence() -> Formula:
    """The sentence asserting its own untruth, by honest diagonalisation.

    psi(v0) says "the result of substituting the numeral of v0 into the
    formula coded by v0 is not true"; instantiating v0 with psi's own
    code yields a sentence whose inner term evaluates to that sentence's
    own code.
    """
    from .syntax import CodeOp, Var

    var_code = encode(Var(0))
    psi = Not(
        Tr(
            CodeOp(
                "sub",
                (Var(0), CodeOp("num", (Var(0),)), Num(var_code)),
            )
        )
    )
    a = encode(psi)
    lam = substitute(psi, Num(a), 0)
    return lam
