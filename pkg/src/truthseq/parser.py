"""Text grammar for terms, formulas and sequents.

Connective spellings: `!` for negation, `&` for conjunction, `forall`
for the universal quantifier, `T(...)` for the truth predicate and `=`
for equality.  `->`, `\\/` and `exists` are accepted and expanded into
the primitive connectives at parse time; the printer never emits them.
Code operations that share a name with a connective carry a trailing
dot: `neg.(x)`, `and.(x,y)`, `all.(v,x)`, `tr.(x)`, `eq.(x,y)`; `num`,
`sub` and `val` appear undotted.

The printer in syntax.py is the exact inverse: print then parse is the
identity on trees.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .syntax import (
    Add,
    All,
    And,
    CodeOp,
    DefAtom,
    Equal,
    Formula,
    Mul,
    Not,
    Num,
    Suc,
    Term,
    Tr,
    Var,
    def_atom_arity,
)


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


@dataclass(frozen=True)
class _Tok:
    kind: str  # ident, number, punct
    text: str
    pos: int


_PUNCT = ("=>", "->", "\\/", "(", ")", ",", "=", "+", "*", "&", "!", "|")


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(_Tok("number", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            # a trailing dot marks a code operation
            if j < n and text[j] == "." and word in ("neg", "and", "all", "tr", "eq"):
                word += "."
                j += 1
            toks.append(_Tok("ident", word, i))
            i = j
            continue
        for p in _PUNCT:
            if text.startswith(p, i):
                toks.append(_Tok("punct", p, i))
                i += len(p)
                break
        else:
            raise ParseError(f"unexpected character {ch!r}", i)
    toks.append(_Tok("end", "", n))
    return toks


_DOTTED_OPS = {"neg.": "neg", "and.": "and", "all.": "all", "tr.": "tr", "eq.": "eq"}
_PLAIN_OPS = ("num", "sub", "val")


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def eat(self, kind: str, text: Optional[str] = None) -> _Tok:
        t = self.tok
        if t.kind != kind or (text is not None and t.text != text):
            want = text if text is not None else kind
            raise ParseError(f"expected {want!r}, found {t.text!r}", t.pos)
        self.i += 1
        return t

    def at(self, kind: str, text: Optional[str] = None) -> bool:
        t = self.tok
        return t.kind == kind and (text is None or t.text == text)

    # ----- terms

    def term(self) -> Term:
        out = self.addend()
        while self.at("punct", "+"):
            self.i += 1
            out = Add(out, self.addend())
        return out

    def addend(self) -> Term:
        out = self.factor()
        while self.at("punct", "*"):
            self.i += 1
            out = Mul(out, self.factor())
        return out

    def factor(self) -> Term:
        t = self.tok
        if t.kind == "number":
            self.i += 1
            return Num(int(t.text))
        if t.kind == "punct" and t.text == "(":
            self.i += 1
            out = self.term()
            self.eat("punct", ")")
            return out
        if t.kind == "ident":
            word = t.text
            if word == "S":
                self.i += 1
                self.eat("punct", "(")
                inner = self.term()
                self.eat("punct", ")")
                return Suc(inner)
            if word in _DOTTED_OPS or word in _PLAIN_OPS:
                kind = _DOTTED_OPS.get(word, word)
                self.i += 1
                args = self.call_args()
                from .syntax import CODE_OP_ARITY

                if len(args) != CODE_OP_ARITY[kind]:
                    raise ParseError(
                        f"{word} takes {CODE_OP_ARITY[kind]} arguments", t.pos
                    )
                return CodeOp(kind, tuple(args))
            if word[0] == "v" and word[1:].isdigit():
                self.i += 1
                return Var(int(word[1:]))
        raise ParseError(f"expected a term, found {t.text!r}", t.pos)

    def call_args(self) -> list[Term]:
        self.eat("punct", "(")
        args = [self.term()]
        while self.at("punct", ","):
            self.i += 1
            args.append(self.term())
        self.eat("punct", ")")
        return args

    # ----- formulas

    def formula(self) -> Formula:
        left = self.disjunction()
        if self.at("punct", "->"):
            self.i += 1
            right = self.formula()
            return Not(And(left, Not(right)))
        return left

    def disjunction(self) -> Formula:
        out = self.conjunction()
        while self.at("punct", "\\/"):
            self.i += 1
            right = self.conjunction()
            out = Not(And(Not(out), Not(right)))
        return out

    def conjunction(self) -> Formula:
        out = self.unary()
        while self.at("punct", "&"):
            self.i += 1
            out = And(out, self.unary())
        return out

    def unary(self) -> Formula:
        t = self.tok
        if t.kind == "punct" and t.text == "!":
            self.i += 1
            return Not(self.unary())
        if t.kind == "ident" and t.text in ("forall", "exists"):
            self.i += 1
            v = self.eat("ident")
            if not (v.text[0] == "v" and v.text[1:].isdigit()):
                raise ParseError(f"expected a variable, found {v.text!r}", v.pos)
            body = self.unary()
            if t.text == "forall":
                return All(int(v.text[1:]), body)
            return Not(All(int(v.text[1:]), Not(body)))
        if t.kind == "punct" and t.text == "(":
            # could be a bracketed formula or a bracketed term of an equality
            mark = self.i
            try:
                self.i += 1
                out = self.formula()
                self.eat("punct", ")")
                return out
            except ParseError:
                self.i = mark
                return self.equality()
        return self.atom()

    def atom(self) -> Formula:
        t = self.tok
        if t.kind == "ident":
            if t.text == "T":
                self.i += 1
                self.eat("punct", "(")
                inner = self.term()
                self.eat("punct", ")")
                return Tr(inner)
            arity = def_atom_arity(t.text)
            if arity is not None:
                self.i += 1
                args = self.call_args()
                if len(args) != arity:
                    raise ParseError(f"{t.text} takes {arity} arguments", t.pos)
                return DefAtom(t.text, tuple(args))
        return self.equality()

    def equality(self) -> Formula:
        left = self.term()
        self.eat("punct", "=")
        right = self.term()
        return Equal(left, right)

    def done(self) -> None:
        t = self.tok
        if t.kind != "end":
            raise ParseError(f"trailing input {t.text!r}", t.pos)


def parse_term(text: str) -> Term:
    p = _Parser(text)
    out = p.term()
    p.done()
    return out


def parse_formula(text: str) -> Formula:
    p = _Parser(text)
    out = p.formula()
    p.done()
    return out


def parse_formula_list(text: str) -> list[Formula]:
    """Comma-separated formulas; empty and whitespace-only mean none."""
    p = _Parser(text)
    if p.at("end"):
        return []
    out = [p.formula()]
    while p.at("punct", ","):
        p.i += 1
        out.append(p.formula())
    p.done()
    return out


def parse_sequent_parts(text: str) -> tuple[list[Formula], list[Formula]]:
    """Split `Gamma => Delta` and parse both sides."""
    p = _Parser(text)
    ant: list[Formula] = []
    if not p.at("punct", "=>"):
        ant.append(p.formula())
        while p.at("punct", ","):
            p.i += 1
            ant.append(p.formula())
    p.eat("punct", "=>")
    suc: list[Formula] = []
    if not p.at("end"):
        suc.append(p.formula())
        while p.at("punct", ","):
            p.i += 1
            suc.append(p.formula())
    p.done()
    return ant, suc
