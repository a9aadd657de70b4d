"""Goedel coding, code operations, and decidable code predicates.

The numbering is a fixed deterministic pairing scheme, stable across
versions and documented in docs/coding-scheme.md:

  code(numeral n)        = 2n
  code(anything else)    = 2 * pair(tag, payload) + 1

with pair the Cantor pairing function and tags

  0 Var(i)            payload i
  2 Suc(t)            payload code t
  3 Add  4 Mul        payload pair(code left, code right)
  5 neg  6 and  7 all  8 tr  9 eq  10 num  11 sub  12 val
                      code-operation terms, payload by arity
  13 Equal            payload pair(code left, code right)
  14 Tr               payload code of the argument term
  15 DefAtom          payload pair(name code, argument payload)
  16 Not              payload code of the body
  17 And              payload pair(code left, code right)
  18 All              payload pair(bound index, code of the body)

Giving numerals the even codes makes the numeral and value operations
O(1), which is what lets a diagonal sentence carry the numeral of its
own code without ever materialising a successor chain.

Besides the concrete evaluators this module houses a small symbolic
evaluator for code terms.  It certifies schematic coding facts (such as
val(num(t)) = t, or sentencehood of a substitution chain) that hold for
every value of the object variables involved; the proof kernel's
coding-fact initial sequents call into it.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Optional, Sequence

from .syntax import (
    CODE_OP_ARITY,
    Add,
    All,
    And,
    CodeOp,
    DefAtom,
    Equal,
    Expr,
    Formula,
    Mul,
    Not,
    Num,
    Suc,
    Term,
    Tr,
    Var,
    def_atom_arity,
    suc,
)

# ---------------------------------------------------------------------------
# pairing


def pair(a: int, b: int) -> int:
    """Cantor pairing."""
    return (a + b) * (a + b + 1) // 2 + b


def unpair(z: int) -> tuple[int, int]:
    w = (isqrt(8 * z + 1) - 1) // 2
    t = w * (w + 1) // 2
    b = z - t
    return w - b, b


_TAG_VAR = 0
_TAG_SUC = 2
_TAG_ADD = 3
_TAG_MUL = 4
_CODE_OP_TAGS = {"neg": 5, "and": 6, "all": 7, "tr": 8, "eq": 9,
                 "num": 10, "sub": 11, "val": 12}
_TAG_EQUAL = 13
_TAG_TR = 14
_TAG_DEFATOM = 15
_TAG_NOT = 16
_TAG_AND = 17
_TAG_ALL = 18
_TAG_JUNK = 99

#: flagged junk code; odd, tag 99, never decodes
JUNK_CODE = 2 * pair(_TAG_JUNK, 0) + 1

_FIXED_NAMES = ("Sent", "ClTerm", "Var", "Eq", "Ver", "Ord", "Prec")


def _name_code(name: str) -> int:
    if name in _FIXED_NAMES:
        return pair(0, _FIXED_NAMES.index(name))
    if name.startswith("FmlPA_"):
        return pair(2, int(name[6:]))
    # validated by DefAtom, so only Fml_n remains
    return pair(1, int(name[4:]))


def _name_decode(c: int) -> Optional[str]:
    fam, k = unpair(c)
    if fam == 0:
        return _FIXED_NAMES[k] if k < len(_FIXED_NAMES) else None
    if fam == 1:
        return f"Fml_{k}"
    if fam == 2:
        return f"FmlPA_{k}"
    return None


def _odd(structural: int) -> int:
    return 2 * structural + 1


def _pack(codes: Sequence[int]) -> int:
    # right-nested pairs; a single code packs as itself
    out = codes[-1]
    for c in reversed(codes[:-1]):
        out = pair(c, out)
    return out


def encode(e: Expr) -> int:
    """Goedel number of a term or formula."""
    if isinstance(e, Num):
        return 2 * e.value
    if isinstance(e, Var):
        return _odd(pair(_TAG_VAR, e.index))
    if isinstance(e, Suc):
        return _odd(pair(_TAG_SUC, encode(e.arg)))
    if isinstance(e, Add):
        return _odd(pair(_TAG_ADD, pair(encode(e.left), encode(e.right))))
    if isinstance(e, Mul):
        return _odd(pair(_TAG_MUL, pair(encode(e.left), encode(e.right))))
    if isinstance(e, CodeOp):
        return _odd(pair(_CODE_OP_TAGS[e.kind], _pack([encode(a) for a in e.args])))
    if isinstance(e, Equal):
        return _odd(pair(_TAG_EQUAL, pair(encode(e.left), encode(e.right))))
    if isinstance(e, Tr):
        return _odd(pair(_TAG_TR, encode(e.arg)))
    if isinstance(e, DefAtom):
        payload = _pack([encode(a) for a in e.args])
        return _odd(pair(_TAG_DEFATOM, pair(_name_code(e.name), payload)))
    if isinstance(e, Not):
        return _odd(pair(_TAG_NOT, encode(e.body)))
    if isinstance(e, And):
        return _odd(pair(_TAG_AND, pair(encode(e.left), encode(e.right))))
    if isinstance(e, All):
        return _odd(pair(_TAG_ALL, pair(e.var, encode(e.body))))
    raise TypeError(f"not an expression: {e!r}")


def decode_term(c: int) -> Optional[Term]:
    if c < 0:
        return None
    if c % 2 == 0:
        return Num(c // 2)
    tag, payload = unpair(c // 2)
    if tag == _TAG_VAR:
        return Var(payload)
    if tag == _TAG_SUC:
        inner = decode_term(payload)
        return None if inner is None else Suc(inner)
    if tag in (_TAG_ADD, _TAG_MUL):
        a, b = unpair(payload)
        left, right = decode_term(a), decode_term(b)
        if left is None or right is None:
            return None
        return Add(left, right) if tag == _TAG_ADD else Mul(left, right)
    for kind, ktag in _CODE_OP_TAGS.items():
        if tag != ktag:
            continue
        arity = CODE_OP_ARITY[kind]
        parts = [payload]
        for _ in range(arity - 1):
            a, rest = unpair(parts.pop())
            parts.extend([a, rest])
        args = [decode_term(p) for p in parts]
        if any(a is None for a in args):
            return None
        return CodeOp(kind, tuple(args))  # type: ignore[arg-type]
    return None


def decode_formula(c: int) -> Optional[Formula]:
    if c < 0 or c % 2 == 0:
        return None
    tag, payload = unpair(c // 2)
    if tag == _TAG_EQUAL:
        a, b = unpair(payload)
        left, right = decode_term(a), decode_term(b)
        if left is None or right is None:
            return None
        return Equal(left, right)
    if tag == _TAG_TR:
        inner = decode_term(payload)
        return None if inner is None else Tr(inner)
    if tag == _TAG_DEFATOM:
        nc, argpack = unpair(payload)
        name = _name_decode(nc)
        if name is None:
            return None
        arity = def_atom_arity(name)
        if arity is None:
            return None
        parts = [argpack]
        for _ in range(arity - 1):
            a, rest = unpair(parts.pop())
            parts.extend([a, rest])
        args = [decode_term(p) for p in parts]
        if any(a is None for a in args):
            return None
        return DefAtom(name, tuple(args))  # type: ignore[arg-type]
    if tag == _TAG_NOT:
        inner = decode_formula(payload)
        return None if inner is None else Not(inner)
    if tag == _TAG_AND:
        a, b = unpair(payload)
        left, right = decode_formula(a), decode_formula(b)
        if left is None or right is None:
            return None
        return And(left, right)
    if tag == _TAG_ALL:
        v, b = unpair(payload)
        body = decode_formula(b)
        return None if body is None else All(v, body)
    return None


def decode_expression(c: int) -> Optional[Expr]:
    """Term or formula coded by c, or None when c codes neither."""
    if c < 0:
        return None
    if c % 2 == 0:
        return Num(c // 2)
    tag, _ = unpair(c // 2)
    if tag < _TAG_EQUAL:
        return decode_term(c)
    return decode_formula(c)


def is_code(c: int) -> bool:
    return decode_expression(c) is not None


# ---------------------------------------------------------------------------
# code operations as total numeric functions


def code_op(kind: str, args: Sequence[int]) -> int:
    """The operation named by kind, applied to numbers.

    Total: a category mismatch returns the flagged JUNK_CODE rather
    than raising, mirroring primitive recursive totality.
    """
    if kind == "num":
        return 2 * args[0]
    if kind == "val":
        t = decode_term(args[0])
        if t is None or not _closed_term(t):
            return JUNK_CODE
        return term_value(t)
    if kind == "neg":
        if decode_formula(args[0]) is None:
            return JUNK_CODE
        return _odd(pair(_TAG_NOT, args[0]))
    if kind == "and":
        if decode_formula(args[0]) is None or decode_formula(args[1]) is None:
            return JUNK_CODE
        return _odd(pair(_TAG_AND, pair(args[0], args[1])))
    if kind == "all":
        v = decode_term(args[0])
        if not isinstance(v, Var) or decode_formula(args[1]) is None:
            return JUNK_CODE
        return _odd(pair(_TAG_ALL, pair(v.index, args[1])))
    if kind == "tr":
        if decode_term(args[0]) is None:
            return JUNK_CODE
        return _odd(pair(_TAG_TR, args[0]))
    if kind == "eq":
        if decode_term(args[0]) is None or decode_term(args[1]) is None:
            return JUNK_CODE
        return _odd(pair(_TAG_EQUAL, pair(args[0], args[1])))
    if kind == "sub":
        from .syntax import substitute

        e = decode_expression(args[0])
        t = decode_term(args[1])
        v = decode_term(args[2])
        if e is None or t is None or not isinstance(v, Var):
            return JUNK_CODE
        return encode(substitute(e, t, v.index))
    raise ValueError(f"unknown code operation {kind!r}")


def _closed_term(t: Term) -> bool:
    from .syntax import closed

    return closed(t)


def term_value(t: Term) -> int:
    """Value of a closed term.  Raises on free variables."""
    if isinstance(t, Num):
        return t.value
    if isinstance(t, Var):
        raise ValueError(f"open term has no value: v{t.index}")
    if isinstance(t, Suc):
        return term_value(t.arg) + 1
    if isinstance(t, Add):
        return term_value(t.left) + term_value(t.right)
    if isinstance(t, Mul):
        return term_value(t.left) * term_value(t.right)
    if isinstance(t, CodeOp):
        return code_op(t.kind, [term_value(a) for a in t.args])
    raise TypeError(f"not a term: {t!r}")


# ---------------------------------------------------------------------------
# decidable code predicates


def code_pred(name: str, args: Sequence[int]) -> bool:
    """Evaluate a defined predicate on numbers.  Total."""
    c = args[0]
    if name == "Sent":
        phi = decode_formula(c)
        return phi is not None and not _free(phi)
    if name == "ClTerm":
        t = decode_term(c)
        return t is not None and not _free(t)
    if name == "Var":
        return isinstance(decode_term(c), Var)
    if name == "Eq":
        phi = decode_formula(c)
        return (
            isinstance(phi, Equal)
            and not _free(phi.left)
            and not _free(phi.right)
        )
    if name == "Ver":
        phi = decode_formula(c)
        return (
            isinstance(phi, Equal)
            and not _free(phi.left)
            and not _free(phi.right)
            and term_value(phi.left) == term_value(phi.right)
        )
    if name == "Ord":
        from .ordinals import decode_notation

        return decode_notation(c) is not None
    if name == "Prec":
        from .ordinals import compare, decode_notation

        a, b = decode_notation(args[0]), decode_notation(args[1])
        return a is not None and b is not None and compare(a, b) < 0
    if name.startswith("FmlPA_"):
        from .syntax import is_t_free

        phi = decode_formula(c)
        return (
            phi is not None
            and len(_free(phi)) <= int(name[6:])
            and is_t_free(phi)
        )
    if name.startswith("Fml_"):
        phi = decode_formula(c)
        return phi is not None and len(_free(phi)) <= int(name[4:])
    raise ValueError(f"unknown defined predicate {name!r}")


def _free(e: Expr) -> frozenset[int]:
    from .syntax import free_vars

    return free_vars(e)


def eval_closed_atom(phi: Formula) -> Optional[bool]:
    """Truth value of a closed non-T atom; None when not decidable here.

    T atoms are never decided syntactically, and open atoms have no
    standalone value.
    """
    if _free(phi):
        return None
    if isinstance(phi, Equal):
        return term_value(phi.left) == term_value(phi.right)
    if isinstance(phi, DefAtom):
        return code_pred(phi.name, [term_value(a) for a in phi.args])
    return None


# ---------------------------------------------------------------------------
# symbolic evaluation of code terms
#
# Symbolic expression trees reuse the ordinary constructors plus two
# leaves of their own.  SymNum(t) is the numeral whose value equals the
# value of the object term t; it is closed as syntax no matter what
# variables t contains.  CodeVal(e) is a term-level normal form: the
# number coding the symbolic expression e.


@dataclass(frozen=True)
class SymNum:
    src: Term


@dataclass(frozen=True)
class CodeVal:
    expr: object


_SYM_TERM_TYPES = (Var, Num, Suc, Add, Mul, CodeOp, SymNum, CodeVal)


def _sym_is_term(e) -> bool:
    return isinstance(e, _SYM_TERM_TYPES)


def _sym_free(e) -> frozenset[int]:
    if isinstance(e, (SymNum, CodeVal, Num)):
        return frozenset()
    if isinstance(e, Var):
        return frozenset((e.index,))
    if isinstance(e, (Suc, Tr)):
        return _sym_free(e.arg)
    if isinstance(e, (Add, Mul, Equal, And)):
        return _sym_free(e.left) | _sym_free(e.right)
    if isinstance(e, (CodeOp, DefAtom)):
        out: frozenset[int] = frozenset()
        for a in e.args:
            out |= _sym_free(a)
        return out
    if isinstance(e, Not):
        return _sym_free(e.body)
    if isinstance(e, All):
        return _sym_free(e.body) - {e.var}
    raise TypeError(f"not a symbolic expression: {e!r}")


def _sym_concrete(e) -> bool:
    """No symbolic leaves anywhere: a real term or formula."""
    if isinstance(e, (SymNum, CodeVal)):
        return False
    if isinstance(e, (Var, Num)):
        return True
    if isinstance(e, (Suc, Tr)):
        return _sym_concrete(e.arg)
    if isinstance(e, (Add, Mul, Equal, And)):
        return _sym_concrete(e.left) and _sym_concrete(e.right)
    if isinstance(e, (CodeOp, DefAtom)):
        return all(_sym_concrete(a) for a in e.args)
    if isinstance(e, Not):
        return _sym_concrete(e.body)
    if isinstance(e, All):
        return _sym_concrete(e.body)
    raise TypeError(f"not a symbolic expression: {e!r}")


def _sym_t_free(e) -> bool:
    if isinstance(e, Tr):
        return False
    if isinstance(e, (Var, Num, SymNum, CodeVal, Suc, Add, Mul, CodeOp,
                      Equal, DefAtom)):
        return True
    if isinstance(e, Not):
        return _sym_t_free(e.body)
    if isinstance(e, And):
        return _sym_t_free(e.left) and _sym_t_free(e.right)
    if isinstance(e, All):
        return _sym_t_free(e.body)
    raise TypeError(f"not a symbolic expression: {e!r}")


def _sym_subst(e, repl, v: int):
    """Substitute the symbolic term repl for Var(v), capture-avoiding."""
    if isinstance(e, Var):
        return repl if e.index == v else e
    if isinstance(e, (Num, SymNum, CodeVal)):
        return e
    if isinstance(e, Suc):
        return Suc(_sym_subst(e.arg, repl, v))
    if isinstance(e, Add):
        return Add(_sym_subst(e.left, repl, v), _sym_subst(e.right, repl, v))
    if isinstance(e, Mul):
        return Mul(_sym_subst(e.left, repl, v), _sym_subst(e.right, repl, v))
    if isinstance(e, CodeOp):
        return CodeOp(e.kind, tuple(_sym_subst(a, repl, v) for a in e.args))
    if isinstance(e, Equal):
        return Equal(_sym_subst(e.left, repl, v), _sym_subst(e.right, repl, v))
    if isinstance(e, Tr):
        return Tr(_sym_subst(e.arg, repl, v))
    if isinstance(e, DefAtom):
        return DefAtom(e.name, tuple(_sym_subst(a, repl, v) for a in e.args))
    if isinstance(e, Not):
        return Not(_sym_subst(e.body, repl, v))
    if isinstance(e, And):
        return And(_sym_subst(e.left, repl, v), _sym_subst(e.right, repl, v))
    if isinstance(e, All):
        if e.var == v or v not in _sym_free(e.body):
            return e
        if e.var in _sym_free(repl):
            from .syntax import fresh_var

            v2 = fresh_var(_sym_free(repl) | _sym_free(e.body) | {v})
            body = _sym_subst(e.body, Var(v2), e.var)
            return All(v2, _sym_subst(body, repl, v))
        return All(e.var, _sym_subst(e.body, repl, v))
    raise TypeError(f"not a symbolic expression: {e!r}")


def sym_eval_code(t: Term):
    """Symbolic expression coded by the value of t, or None.

    Sound but partial: a non-None result describes the decoded value
    correctly for every assignment to t's free variables.
    """
    norm = sym_term_norm(t)
    if norm is None:
        return None
    return _code_of_norm(norm)


def _code_of_norm(norm):
    if isinstance(norm, Num):
        return decode_expression(norm.value)
    if isinstance(norm, CodeVal):
        return norm.expr
    return None


def sym_term_norm(t: Term):
    """Canonical symbolic form of the value of t, or None when unknown.

    Equal normal forms denote equal values under every assignment; the
    coding-fact initial sequents for equalities rest on this.
    """
    if isinstance(t, (Var, Num)):
        return t
    if isinstance(t, Suc):
        inner = sym_term_norm(t.arg)
        if inner is None:
            return None
        return suc(inner) if isinstance(inner, Num) else Suc(inner)
    if isinstance(t, Add):
        left, right = sym_term_norm(t.left), sym_term_norm(t.right)
        if left is None or right is None:
            return None
        if isinstance(left, Num) and isinstance(right, Num):
            return Num(left.value + right.value)
        return Add(left, right)
    if isinstance(t, Mul):
        left, right = sym_term_norm(t.left), sym_term_norm(t.right)
        if left is None or right is None:
            return None
        if isinstance(left, Num) and isinstance(right, Num):
            return Num(left.value * right.value)
        return Mul(left, right)
    if isinstance(t, CodeOp):
        return _sym_code_op(t)
    raise TypeError(f"not a term: {t!r}")


def _finish_code(e):
    """Wrap a symbolic expression as a term normal form."""
    if e is None:
        return None
    if _sym_concrete(e):
        return Num(encode(e))
    return CodeVal(e)


def _sym_code_op(t: CodeOp):
    kind = t.kind
    if kind == "num":
        inner = sym_term_norm(t.args[0])
        if inner is None:
            return None
        if isinstance(inner, Num):
            return Num(2 * inner.value)
        return CodeVal(SymNum(inner))
    if kind == "val":
        e = sym_eval_code(t.args[0])
        if e is None:
            return None
        if isinstance(e, SymNum):
            # val after num is the identity; src is stored normalised
            return e.src
        if _sym_is_term(e) and _sym_concrete(e) and not _sym_free(e):
            return Num(term_value(e))
        return None
    if kind == "neg":
        e = sym_eval_code(t.args[0])
        if e is None or _sym_is_term(e):
            return None
        return _finish_code(Not(e))
    if kind == "and":
        a = sym_eval_code(t.args[0])
        b = sym_eval_code(t.args[1])
        if a is None or b is None or _sym_is_term(a) or _sym_is_term(b):
            return None
        return _finish_code(And(a, b))
    if kind == "all":
        v = sym_eval_code(t.args[0])
        f = sym_eval_code(t.args[1])
        if not isinstance(v, Var) or f is None or _sym_is_term(f):
            return None
        return _finish_code(All(v.index, f))
    if kind == "tr":
        s = sym_eval_code(t.args[0])
        if s is None or not _sym_is_term(s):
            return None
        return _finish_code(Tr(s))
    if kind == "eq":
        a = sym_eval_code(t.args[0])
        b = sym_eval_code(t.args[1])
        if a is None or b is None or not _sym_is_term(a) or not _sym_is_term(b):
            return None
        return _finish_code(Equal(a, b))
    if kind == "sub":
        e = sym_eval_code(t.args[0])
        s = sym_eval_code(t.args[1])
        v = sym_eval_code(t.args[2])
        if e is None or s is None or not isinstance(v, Var):
            return None
        if not _sym_is_term(s):
            return None
        return _finish_code(_sym_subst(e, s, v.index))
    raise ValueError(f"unknown code operation {kind!r}")


# certifiers for the coding-fact initial sequents; each returns a bool
# and must never claim a fact that can fail under some assignment


def certify_clterm(t: Term) -> bool:
    e = sym_eval_code(t)
    return e is not None and _sym_is_term(e) and not _sym_free(e)


def certify_sent(t: Term) -> bool:
    e = sym_eval_code(t)
    return e is not None and not _sym_is_term(e) and not _sym_free(e)


def certify_fml(t: Term, n: int, pa_only: bool = False) -> bool:
    e = sym_eval_code(t)
    if e is None or _sym_is_term(e):
        return False
    if len(_sym_free(e)) > n:
        return False
    return _sym_t_free(e) if pa_only else True


def certify_var(t: Term) -> bool:
    return isinstance(sym_eval_code(t), Var)


def certify_eq(s: Term, t: Term) -> bool:
    a = sym_term_norm(s)
    b = sym_term_norm(t)
    return a is not None and a == b
