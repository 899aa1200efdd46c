"""Exact sparse Laurent polynomials in one variable T.

Coefficients are arbitrary-precision rationals (`int` where possible,
`fractions.Fraction` otherwise).  Values are canonical: no zero
coefficient is ever stored, so two polynomials are equal exactly when
their term dictionaries are equal.  All operations return fresh values;
nothing mutates in place.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Mapping, Union

Coef = Union[int, Fraction]
Scalar = Union[int, Fraction, "LaurentPoly"]


class InexactDivisionError(ArithmeticError):
    """Raised when an exact polynomial division leaves a remainder."""


def _norm_coef(c: Coef) -> Coef:
    if isinstance(c, Fraction):
        return int(c) if c.denominator == 1 else c
    if isinstance(c, int):
        return c
    raise TypeError(f"coefficient must be exact (int or Fraction), got {type(c).__name__}")


class LaurentPoly:
    """A Laurent polynomial sum(c_k * T^k) stored as {exponent: coefficient}."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, Coef] | Coef = ()):
        if isinstance(terms, (int, Fraction)):
            terms = {0: terms}
        store: dict[int, Coef] = {}
        for exp, coef in dict(terms).items():
            if not isinstance(exp, int):
                raise TypeError(f"exponent must be int, got {type(exp).__name__}")
            coef = _norm_coef(coef)
            if coef:
                store[exp] = coef
        self._terms = store

    # -- constructors ------------------------------------------------

    @staticmethod
    def monomial(exp: int, coef: Coef = 1) -> "LaurentPoly":
        return LaurentPoly({exp: coef})

    @staticmethod
    def from_json(obj: Mapping[str, str]) -> "LaurentPoly":
        """Inverse of :meth:`to_json`: exponent-string -> coefficient-string."""
        return LaurentPoly({int(e): Fraction(c) for e, c in obj.items()})

    # -- inspection --------------------------------------------------

    def items(self) -> Iterator[tuple[int, Coef]]:
        return iter(sorted(self._terms.items()))

    def coefficient(self, exp: int) -> Coef:
        return self._terms.get(exp, 0)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def min_exp(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        return min(self._terms)

    @property
    def max_exp(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        return max(self._terms)

    def is_integral(self) -> bool:
        """True when every coefficient is an integer."""
        return all(isinstance(c, int) for c in self._terms.values())

    def is_palindromic(self) -> bool:
        """True when the polynomial is invariant under T -> 1/T."""
        return self == self.invert_variable()

    # -- ring operations ----------------------------------------------

    def __add__(self, other: Scalar) -> "LaurentPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self._terms)
        for exp, coef in other._terms.items():
            s = terms.get(exp, 0) + coef
            if s:
                terms[exp] = s
            else:
                terms.pop(exp, None)
        return _raw(terms)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return _raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: Scalar) -> "LaurentPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other: Scalar) -> "LaurentPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._terms, other._terms
        if len(a) > len(b):
            a, b = b, a
        acc: dict[int, Coef] = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = ea + eb
                s = acc.get(e, 0) + ca * cb
                if s:
                    acc[e] = s
                else:
                    del acc[e]
        return _raw(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- substitutions -------------------------------------------------

    def evaluate(self, t0):
        """Substitute a nonzero number for T.

        Exact for `int`/`Fraction` arguments, floating for `float`.
        """
        if t0 == 0:
            raise ZeroDivisionError("cannot evaluate a Laurent polynomial at T=0")
        return sum((c * t0 ** e for e, c in self._terms.items()),
                   start=0 * t0)

    def invert_variable(self) -> "LaurentPoly":
        """Substitute T -> 1/T (negate every exponent)."""
        return _raw({-e: c for e, c in self._terms.items()})

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by T^k (add k to every exponent)."""
        if not isinstance(k, int):
            raise TypeError("shift exponent must be int")
        return _raw({e + k: c for e, c in self._terms.items()})

    # -- division ------------------------------------------------------

    def exact_div(self, divisor: Scalar) -> "LaurentPoly":
        """Divide exactly, raising InexactDivisionError on any remainder."""
        divisor = _coerce(divisor)
        if divisor is NotImplemented or divisor.is_zero:
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero:
            return ZERO
        # Work with ordinary polynomials: slide both factors to exponent 0.
        shift_back = self.min_exp - divisor.min_exp
        num = {e - self.min_exp: c for e, c in self._terms.items()}
        den = {e - divisor.min_exp: c for e, c in divisor._terms.items()}
        ddeg = max(den)
        dlead = den[ddeg]
        quot: dict[int, Coef] = {}
        while num:
            ndeg = max(num)
            if ndeg < ddeg:
                raise InexactDivisionError(f"{self} is not divisible by {divisor}")
            q = _norm_coef(Fraction(num[ndeg]) / Fraction(dlead))
            qexp = ndeg - ddeg
            quot[qexp] = q
            for e, c in den.items():
                s = num.get(e + qexp, 0) - q * c
                if s:
                    num[e + qexp] = _norm_coef(s if isinstance(s, int) else Fraction(s))
                else:
                    num.pop(e + qexp, None)
        return _raw({e + shift_back: c for e, c in quot.items()})

    def divisible_by(self, divisor: Scalar) -> bool:
        try:
            self.exact_div(divisor)
        except InexactDivisionError:
            return False
        return True

    def content(self) -> Fraction:
        """Positive rational c with self = c * (primitive integer polynomial).

        The sign is carried by the cofactor; content of 0 is 0.
        """
        if self.is_zero:
            return Fraction(0)
        fracs = [Fraction(c) for c in self._terms.values()]
        num_gcd = 0
        den_lcm = 1
        for f in fracs:
            num_gcd = _gcd(num_gcd, abs(f.numerator))
            den_lcm = den_lcm * f.denominator // _gcd(den_lcm, f.denominator)
        return Fraction(num_gcd, den_lcm)

    # -- rendering -----------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for exp, coef in sorted(self._terms.items()):
            if exp == 0:
                body = str(coef)
            else:
                tpow = "T" if exp == 1 else f"T^{exp}"
                if coef == 1:
                    body = tpow
                elif coef == -1:
                    body = f"-{tpow}"
                else:
                    body = f"{coef}*{tpow}"
            if parts and not body.startswith("-"):
                parts.append("+" + body)
            else:
                parts.append(body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def to_json(self) -> dict[str, str]:
        return {str(e): str(c) for e, c in sorted(self._terms.items())}


def _raw(terms: dict[int, Coef]) -> LaurentPoly:
    """Build without re-validating; callers guarantee canonical terms."""
    p = LaurentPoly.__new__(LaurentPoly)
    p._terms = terms
    return p


def _coerce(x: Scalar) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPoly(x)
    return NotImplemented


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


ZERO = LaurentPoly()
ONE = LaurentPoly(1)
T = LaurentPoly.monomial(1)


def parse_poly(text: str) -> LaurentPoly:
    """Parse the canonical text form, e.g. ``-T^-2+2*T^-1-2+2*T-T^2``.

    Accepts any sum of ``[coef][*]T[^exp]`` terms with rational
    coefficients; whitespace is ignored.
    """
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial text")
    terms: dict[int, Coef] = {}
    i = 0
    n = len(s)
    while i < n:
        sign = 1
        while i < n and s[i] in "+-":
            if s[i] == "-":
                sign = -sign
            i += 1
        start = i
        while i < n and (s[i].isdigit() or s[i] == "/"):
            i += 1
        coef_text = s[start:i]
        coef: Coef = Fraction(coef_text) if coef_text else Fraction(1)
        if i < n and s[i] == "*":
            i += 1
        exp = 0
        if i < n and s[i] == "T":
            i += 1
            exp = 1
            if i < n and s[i] == "^":
                i += 1
                estart = i
                if i < n and s[i] == "-":
                    i += 1
                while i < n and s[i].isdigit():
                    i += 1
                if i == estart:
                    raise ValueError(f"missing exponent at offset {estart} in {text!r}")
                exp = int(s[estart:i])
        elif not coef_text:
            raise ValueError(f"dangling operator at offset {start} in {text!r}")
        prev = terms.get(exp, 0)
        total = prev + sign * coef
        if total:
            terms[exp] = total
        else:
            terms.pop(exp, None)
    return LaurentPoly(terms)
