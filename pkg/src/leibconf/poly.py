"""Exact multivariate polynomial arithmetic over the rationals.

Polynomials live in Q[d, x1, x2, ...] where variable 0 is the
distinguished symbol ``d`` (the translation operator) and variable i >= 1
is the i-th formal parameter (written ``x``, ``x2``, ``x3``, ... in the
input language).  Every value is kept in canonical form: a mapping from
exponent vectors (tuples with no trailing zeros) to nonzero Fractions, so
mathematical equality is structural equality.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

PARTIAL = 0  # variable id of the d symbol


def param(i: int) -> int:
    """Variable id of the i-th formal parameter (i >= 1)."""
    if i < 1:
        raise ValueError("parameter index must be >= 1")
    return i


Scalar = Union[int, Fraction]


def _trim(exps: tuple) -> tuple:
    n = len(exps)
    while n and exps[n - 1] == 0:
        n -= 1
    return exps[:n]


class Poly:
    """Immutable polynomial in canonical (expanded, trimmed) form."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple, Scalar] | None = None):
        clean = {}
        if terms:
            for exps, c in terms.items():
                c = Fraction(c)
                if c == 0:
                    continue
                exps = _trim(tuple(exps))
                prev = clean.get(exps)
                if prev is None:
                    clean[exps] = c
                else:
                    s = prev + c
                    if s:
                        clean[exps] = s
                    else:
                        del clean[exps]
        self._terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "Poly":
        return _ZERO

    @staticmethod
    def const(c: Scalar) -> "Poly":
        return Poly({(): Fraction(c)})

    @staticmethod
    def var(i: int) -> "Poly":
        exps = tuple(0 for _ in range(i)) + (1,)
        return Poly({exps: Fraction(1)})

    # -- queries ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not e for e in self._terms)

    def constant_value(self) -> Fraction:
        """The constant term."""
        return self._terms.get((), Fraction(0))

    def terms(self) -> Mapping[tuple, Fraction]:
        return self._terms

    def degree(self, v: int) -> int:
        """Degree in variable v (-1 for the zero polynomial)."""
        if not self._terms:
            return -1
        return max((e[v] if v < len(e) else 0) for e in self._terms)

    def variables(self) -> set:
        out = set()
        for e in self._terms:
            for i, k in enumerate(e):
                if k:
                    out.add(i)
        return out

    def max_param(self) -> int:
        """Largest parameter index that occurs (0 if none)."""
        best = 0
        for e in self._terms:
            for i in range(len(e) - 1, 0, -1):
                if e[i]:
                    best = max(best, i)
                    break
        return best

    # -- ring operations ----------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self._terms:
            return other
        if not other._terms:
            return self
        terms = dict(self._terms)
        for e, c in other._terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        out = Poly.__new__(Poly)
        out._terms = terms
        out._hash = None
        return out

    __radd__ = __add__

    def __neg__(self):
        out = Poly.__new__(Poly)
        out._terms = {e: -c for e, c in self._terms.items()}
        out._hash = None
        return out

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self._terms or not other._terms:
            return _ZERO
        terms: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                if len(e1) >= len(e2):
                    e = tuple(
                        a + (e2[i] if i < len(e2) else 0) for i, a in enumerate(e1)
                    )
                else:
                    e = tuple(
                        (e1[i] if i < len(e1) else 0) + b for i, b in enumerate(e2)
                    )
                c = c1 * c2
                s = terms.get(e, 0) + c
                if s:
                    terms[e] = s
                else:
                    terms.pop(e, None)
        out = Poly.__new__(Poly)
        out._terms = terms
        out._hash = None
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- substitution -------------------------------------------------

    def subs(self, mapping: Mapping[int, "Poly"]) -> "Poly":
        """Simultaneously substitute polynomials for variables.

        Variables absent from the mapping are left alone.  Substitution
        is a ring homomorphism.
        """
        if not mapping or not self._terms:
            return self
        touched = set(mapping)
        out = _ZERO
        cache: dict = {}
        for e, c in self._terms.items():
            mono = Poly.const(c)
            for i, k in enumerate(e):
                if not k:
                    continue
                if i in touched:
                    key = (i, k)
                    p = cache.get(key)
                    if p is None:
                        p = mapping[i] ** k
                        cache[key] = p
                    mono = mono * p
                else:
                    mono = mono * Poly({tuple(0 for _ in range(i)) + (k,): 1})
            out = out + mono
        return out

    def substitute(self, v: int, s: "Poly") -> "Poly":
        """Replace every occurrence of variable v by polynomial s."""
        return self.subs({v: s})

    # -- printing -----------------------------------------------------

    def __str__(self):
        return poly_to_str(self)

    def __repr__(self):
        return "Poly(%s)" % poly_to_str(self)


def _coerce(x) -> "Poly":
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return Poly.const(x)
    return NotImplemented


_ZERO = Poly()
ONE = Poly.const(1)
D = Poly.var(PARTIAL)
X1 = Poly.var(1)
X2 = Poly.var(2)
X3 = Poly.var(3)


def var_name(i: int) -> str:
    if i == PARTIAL:
        return "d"
    if i == 1:
        return "x"
    return "x%d" % i


def _mono_key(e: tuple):
    return (sum(e), tuple(-k for k in e))


def poly_to_str(p: Poly) -> str:
    """Render in the input-language syntax; parse(poly_to_str(p)) == p."""
    if p.is_zero():
        return "0"
    items = sorted(p.terms().items(), key=lambda kv: _mono_key(kv[0]), reverse=True)
    parts = []
    for e, c in items:
        factors = []
        for i, k in enumerate(e):
            if k == 0:
                continue
            factors.append(var_name(i) if k == 1 else "%s^%d" % (var_name(i), k))
        if not factors:
            body = _frac_str(abs(c))
        elif abs(c) == 1:
            body = "*".join(factors)
        else:
            body = "*".join([_frac_str(abs(c))] + factors)
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


def _frac_str(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return "%d/%d" % (q.numerator, q.denominator)


# -- parsing ----------------------------------------------------------


class PolyParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__("%s (line %d, column %d)" % (message, line, col))
        self.line = line
        self.col = col


_VAR_TOKENS = {"d": PARTIAL, "x": 1}
for _i in range(2, 10):
    _VAR_TOKENS["x%d" % _i] = _i


class _Scanner:
    """Tokens: NUM (rational), NAME, and single-char punctuation."""

    def __init__(self, text: str, line: int = 1, col: int = 1):
        self.text = text
        self.pos = 0
        self.line = line
        self.col = col
        self.tok = None
        self.tok_line = line
        self.tok_col = col
        self._advance()

    def _peek_char(self):
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _take_char(self):
        ch = self.text[self.pos]
        self.pos += 1
        if ch == "\n":
            self.line += 1
            self.col = 1
        else:
            self.col += 1
        return ch

    def _advance(self):
        while True:
            ch = self._peek_char()
            if ch and ch in " \t\r\n":
                self._take_char()
            elif ch == "#":
                while self._peek_char() and self._peek_char() != "\n":
                    self._take_char()
            else:
                break
        self.tok_line, self.tok_col = self.line, self.col
        ch = self._peek_char()
        if not ch:
            self.tok = ("eof", "")
            return
        if ch.isdigit():
            num = ""
            while self._peek_char().isdigit():
                num += self._take_char()
            self.tok = ("num", num)
            return
        if ch.isalpha() or ch == "_":
            name = ""
            while self._peek_char().isalnum() or self._peek_char() == "_":
                name += self._take_char()
            self.tok = ("name", name)
            return
        self.tok = ("punct", self._take_char())

    def error(self, message: str):
        raise PolyParseError(message, self.tok_line, self.tok_col)

    def accept(self, kind: str, value: str | None = None):
        k, v = self.tok
        if k == kind and (value is None or v == value):
            self._advance()
            return v
        return None

    def expect(self, kind: str, value: str | None = None):
        got = self.accept(kind, value)
        if got is None:
            shown = self.tok[1] or "end of input"
            want = value if value is not None else kind
            self.error("expected %r, found %r" % (want, shown))
        return got


def _parse_expr(sc: _Scanner) -> Poly:
    negate = sc.accept("punct", "-") is not None
    p = _parse_term(sc)
    if negate:
        p = -p
    while True:
        if sc.accept("punct", "+"):
            p = p + _parse_term(sc)
        elif sc.accept("punct", "-"):
            p = p - _parse_term(sc)
        else:
            return p


def _parse_term(sc: _Scanner) -> Poly:
    p = _parse_factor(sc)
    while sc.accept("punct", "*"):
        p = p * _parse_factor(sc)
    return p


def _parse_factor(sc: _Scanner) -> Poly:
    p = _parse_atom(sc)
    if sc.accept("punct", "^"):
        n = sc.expect("num")
        return p ** int(n)
    return p


def _parse_atom(sc: _Scanner) -> Poly:
    if sc.accept("punct", "("):
        p = _parse_expr(sc)
        sc.expect("punct", ")")
        return p
    kind, value = sc.tok
    if kind == "num":
        sc._advance()
        if sc.accept("punct", "/"):
            den = sc.expect("num")
            if int(den) == 0:
                sc.error("zero denominator")
            return Poly.const(Fraction(int(value), int(den)))
        return Poly.const(int(value))
    if kind == "name":
        if value in _VAR_TOKENS:
            sc._advance()
            return Poly.var(_VAR_TOKENS[value])
        sc.error("unknown identifier %r" % value)
    sc.error("expected a polynomial atom")


def parse_poly(text: str) -> Poly:
    """Parse the polynomial grammar (d, x, x2..x9, rationals, + - * ^)."""
    sc = _Scanner(text)
    p = _parse_expr(sc)
    if sc.tok[0] != "eof":
        sc.error("trailing input %r" % sc.tok[1])
    return p
