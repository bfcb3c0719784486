"""Text form of towers and polytowers.

Grammar (whitespace between tokens is ignored)::

    polytower   := "0" | [ "-" ] signed_term ( ( "+" | "-" ) signed_term )*
    signed_term := [ integer "*" ] tower
    tower       := "1" | "(" tower ")" | factor ( "*" factor )*
    factor      := pillar [ "^" "(" [ "-" ] tower ")" ]
    pillar      := "p" positive-integer

Pillars print as indices (``p1`` is the first prime, 2). Exponent 1 is
elided and the printer never emits redundant parentheses.
"""
from __future__ import annotations

import re
from typing import List, Tuple, Union

from .errors import CanonicalError, EvaluationOverflow, TowerSyntaxError
from .tower import ONE, Factor, Polytower, Tower, decode

_TOKEN = re.compile(r"(p\d+)|(\d+)|([-+*^()])")
_SPACE = re.compile(r"\s*")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    n = len(text)
    pos = _SPACE.match(text, 0).end()
    while pos < n:
        m = _TOKEN.match(text, pos)
        if not m:
            raise TowerSyntaxError(f"unexpected character {text[pos]!r}", pos)
        if m.group(1):
            kind = "pillar"
        elif m.group(2):
            kind = "int"
        else:
            kind = m.group(3)
        tokens.append((kind, m.group(), pos))
        pos = _SPACE.match(text, m.end()).end()
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def kind(self) -> str:
        return self.tokens[self.i][0]

    @property
    def pos(self) -> int:
        return self.tokens[self.i][2]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str):
        if self.kind != kind:
            want = "end of input" if kind == "end" else repr(kind)
            got = "end of input" if self.kind == "end" else repr(self.tokens[self.i][1])
            raise TowerSyntaxError(f"expected {want}, got {got}", self.pos)
        return self.advance()

    def polytower(self) -> Tuple[Polytower, bool]:
        """Returns the value and whether the text was a single bare tower."""
        if self.kind == "int" and self.tokens[self.i][1] == "0" and self.tokens[self.i + 1][0] == "end":
            self.advance()
            return Polytower(), False
        terms = []
        bare = True
        sign = 1
        if self.kind == "-":
            self.advance()
            sign = -1
            bare = False
        while True:
            coeff, tower, had_coeff = self.signed_term()
            bare = bare and not had_coeff
            terms.append((tower, sign * coeff))
            if self.kind in ("+", "-"):
                sign = 1 if self.advance()[0] == "+" else -1
                bare = False
                continue
            break
        self.expect("end")
        return Polytower(terms), bare and len(terms) == 1

    def signed_term(self) -> Tuple[int, Tower, bool]:
        if self.kind == "int" and self.tokens[self.i + 1][0] == "*":
            coeff = int(self.advance()[1])
            if coeff == 0:
                raise TowerSyntaxError("zero coefficient", self.tokens[self.i - 1][2])
            self.advance()
            return coeff, self.tower(), True
        return 1, self.tower(), False

    def tower(self) -> Tower:
        if self.kind == "(":
            self.advance()
            t = self.tower()
            self.expect(")")
            return t
        if self.kind == "int":
            kind, text, pos = self.advance()
            if text != "1":
                raise TowerSyntaxError(f"integer {text} is not a tower (only 1 is)", pos)
            return ONE
        factors = [self.factor()]
        while self.kind == "*":
            self.advance()
            factors.append(self.factor())
        seen = set()
        for start, f in factors:
            if f.pillar in seen:
                raise CanonicalError(f"repeated pillar p{f.pillar} at position {start}")
            seen.add(f.pillar)
        return Tower(sorted((f for _, f in factors), key=lambda f: f.pillar))

    def factor(self) -> Tuple[int, Factor]:
        kind, text, pos = self.expect("pillar")
        k = int(text[1:])
        if k < 1:
            raise TowerSyntaxError("pillar indices start at 1", pos)
        if self.kind != "^":
            return pos, Factor(k, ONE)
        self.advance()
        self.expect("(")
        sign = 1
        if self.kind == "-":
            self.advance()
            sign = -1
        exp = self.tower()
        self.expect(")")
        return pos, Factor(k, exp, sign)


def parse_polytower(text: str) -> Polytower:
    return _Parser(text).polytower()[0]


def parse_tower(text: str) -> Tower:
    p = _Parser(text)
    t = p.tower()
    p.expect("end")
    return t


def parse(text: str) -> Union[Tower, Polytower]:
    """Parse text; a single bare tower yields a Tower, anything else a Polytower."""
    poly, bare = _Parser(text).polytower()
    if bare:
        (t,) = poly.towers()
        return t
    return poly


def format_tower(t: Tower) -> str:
    if t.is_one:
        return "1"
    parts = []
    for f in t.factors:
        if f.sign > 0 and f.exponent.is_one:
            parts.append(f"p{f.pillar}")
        else:
            neg = "-" if f.sign < 0 else ""
            parts.append(f"p{f.pillar}^({neg}{format_tower(f.exponent)})")
    return "*".join(parts)


def structural_key(t: Tower) -> tuple:
    """A total order on towers that needs no evaluation."""
    return tuple((f.pillar, f.sign, structural_key(f.exponent)) for f in t.factors)


def value_order(towers) -> List[Tower]:
    """Sort towers ascending by value.

    Towers whose value overflows the evaluation cap sort after all others,
    among themselves by structure.
    """
    keyed = []
    for t in towers:
        try:
            keyed.append(((0, decode(t), ()), t))
        except EvaluationOverflow:
            keyed.append(((1, 0, structural_key(t)), t))
    keyed.sort(key=lambda kt: kt[0])
    return [t for _, t in keyed]


def format_polytower(p: Polytower) -> str:
    if not p:
        return "0"
    out = []
    for t in value_order(p.towers()):
        c = p.coefficient(t)
        body = format_tower(t) if abs(c) == 1 else f"{abs(c)}*{format_tower(t)}"
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


def format_value(v: Union[Tower, Polytower]) -> str:
    return format_tower(v) if isinstance(v, Tower) else format_polytower(v)
