"""Ordinal notations below epsilon_0 in Cantor normal form.

A notation is a finite sum  w^a1 * k1 + ... + w^an * kn  with the
exponents themselves notations, strictly decreasing, and positive
integer coefficients.  The empty sum is 0.  These house the ordinal
bounds of the transfinite-induction rule and the Ord and Prec code
predicates.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .coding import pair, unpair


@dataclass(frozen=True)
class OrdNotation:
    terms: tuple[tuple["OrdNotation", int], ...]

    def __post_init__(self) -> None:
        for exp, coeff in self.terms:
            if coeff < 1:
                raise ValueError("coefficients must be positive")
        for (e1, _), (e2, _) in zip(self.terms, self.terms[1:]):
            if compare(e1, e2) <= 0:
                raise ValueError("exponents must strictly decrease")


ZERO = OrdNotation(())
ONE = OrdNotation(((ZERO, 1),))
OMEGA = OrdNotation(((ONE, 1),))


def from_int(n: int) -> OrdNotation:
    if n < 0:
        raise ValueError("no negative ordinals")
    return ZERO if n == 0 else OrdNotation(((ZERO, n),))


def compare(a: OrdNotation, b: OrdNotation) -> int:
    """-1, 0 or 1 as a is below, equal to, or above b."""
    for (ea, ka), (eb, kb) in zip(a.terms, b.terms):
        c = compare(ea, eb)
        if c != 0:
            return c
        if ka != kb:
            return -1 if ka < kb else 1
    if len(a.terms) != len(b.terms):
        return -1 if len(a.terms) < len(b.terms) else 1
    return 0


def omega_power(a: OrdNotation) -> OrdNotation:
    return OrdNotation(((a, 1),))


def iterate_omega_power(m: int, a: OrdNotation) -> OrdNotation:
    for _ in range(m):
        a = omega_power(a)
    return a


# ---------------------------------------------------------------------------
# codes; lists are coded as 0 for nil and pair(head, tail) + 1 for cons


def encode_notation(a: OrdNotation) -> int:
    code = 0
    for exp, coeff in reversed(a.terms):
        code = pair(pair(encode_notation(exp), coeff), code) + 1
    return code


def decode_notation(c: int) -> Optional[OrdNotation]:
    """Inverse of encode_notation; None flags a non-notation."""
    terms = []
    while c > 0:
        head, c = unpair(c - 1)
        ec, coeff = unpair(head)
        exp = decode_notation(ec)
        if exp is None or coeff < 1:
            return None
        terms.append((exp, coeff))
    for (e1, _), (e2, _) in zip(terms, terms[1:]):
        if compare(e1, e2) <= 0:
            return None
    return OrdNotation(tuple(terms))


# ---------------------------------------------------------------------------
# text format for corpus files: w^(w + 1)*3 + w*2 + 5


def show_ordinal(a: OrdNotation) -> str:
    if not a.terms:
        return "0"
    parts = []
    for exp, coeff in a.terms:
        if not exp.terms:
            parts.append(str(coeff))
            continue
        if exp == ONE:
            base = "w"
        else:
            base = f"w^({show_ordinal(exp)})"
        parts.append(base if coeff == 1 else f"{base}*{coeff}")
    return " + ".join(parts)


class OrdinalSyntaxError(ValueError):
    pass


def parse_ordinal(text: str) -> OrdNotation:
    parser = _OrdParser(text)
    out = parser.parse_sum()
    parser.skip_ws()
    if parser.pos != len(parser.text):
        raise OrdinalSyntaxError(
            f"trailing input at position {parser.pos}: {text!r}"
        )
    return out


class _OrdParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def fail(self, what: str):
        raise OrdinalSyntaxError(f"expected {what} at position {self.pos}")

    def parse_sum(self) -> OrdNotation:
        terms = [self.parse_term()]
        while True:
            self.skip_ws()
            if self.text[self.pos:self.pos + 1] == "+":
                self.pos += 1
                terms.append(self.parse_term())
            else:
                break
        flat: list[tuple[OrdNotation, int]] = []
        for exp, coeff in terms:
            if flat and compare(flat[-1][0], exp) == 0:
                flat[-1] = (exp, flat[-1][1] + coeff)
            else:
                flat.append((exp, coeff))
        if flat == [(ZERO, 0)]:
            return ZERO
        flat = [(e, k) for e, k in flat if k > 0]
        return OrdNotation(tuple(flat))

    def parse_term(self) -> tuple[OrdNotation, int]:
        self.skip_ws()
        ch = self.text[self.pos:self.pos + 1]
        if ch == "w":
            self.pos += 1
            exp = ONE
            if self.text[self.pos:self.pos + 1] == "^":
                self.pos += 1
                self.skip_ws()
                if self.text[self.pos:self.pos + 1] == "(":
                    self.pos += 1
                    exp = self.parse_sum()
                    self.skip_ws()
                    if self.text[self.pos:self.pos + 1] != ")":
                        self.fail(")")
                    self.pos += 1
                else:
                    exp = OrdNotation((self.parse_term(),))
            coeff = 1
            self.skip_ws()
            if self.text[self.pos:self.pos + 1] == "*":
                self.pos += 1
                coeff = self.parse_nat()
            return (exp, coeff)
        if ch.isdigit():
            return (ZERO, self.parse_nat())
        self.fail("ordinal term")

    def parse_nat(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.fail("number")
        return int(self.text[start:self.pos])
