"""Exact Laurent polynomials in one variable ``v`` with integer coefficients.

Storage is dense over the window between the lowest and highest nonzero
exponent.  Python integers give arbitrary precision for free.
"""

from __future__ import annotations

from typing import Iterable, Union

__all__ = ["LaurentPoly", "ZERO", "ONE", "V", "V_INV"]

Scalar = Union["LaurentPoly", int]


class LaurentPoly:
    """Immutable element of Z[v, v^-1].

    ``LaurentPoly(low, coeffs)`` is ``sum(c * v**(low + i))``.  The stored form
    is trimmed so the first and last coefficients are nonzero; the zero
    polynomial has ``low == 0`` and no coefficients.
    """

    __slots__ = ("_low", "_coeffs", "_hash")

    def __init__(self, low: int = 0, coeffs: Iterable[int] = ()):
        cs = list(coeffs)
        start = 0
        while start < len(cs) and cs[start] == 0:
            start += 1
        end = len(cs)
        while end > start and cs[end - 1] == 0:
            end -= 1
        if start == end:
            self._low = 0
            self._coeffs: tuple[int, ...] = ()
        else:
            self._low = low + start
            self._coeffs = tuple(int(c) for c in cs[start:end])
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "LaurentPoly":
        return cls(exponent, (coeff,))

    @classmethod
    def from_dict(cls, terms: dict[int, int]) -> "LaurentPoly":
        terms = {k: c for k, c in terms.items() if c}
        if not terms:
            return ZERO
        lo, hi = min(terms), max(terms)
        return cls(lo, (terms.get(k, 0) for k in range(lo, hi + 1)))

    @classmethod
    def coerce(cls, x: Scalar) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, int):
            return cls(0, (x,))
        raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")

    # -- accessors --------------------------------------------------------

    @property
    def low(self) -> int:
        return self._low

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self._coeffs

    @property
    def high(self) -> int:
        """Highest exponent with nonzero coefficient (``low - 1`` for zero)."""
        return self._low + len(self._coeffs) - 1

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def coeff(self, k: int) -> int:
        i = k - self._low
        if 0 <= i < len(self._coeffs):
            return self._coeffs[i]
        return 0

    def terms(self) -> dict[int, int]:
        return {self._low + i: c for i, c in enumerate(self._coeffs) if c}

    # -- positivity predicates ------------------------------------------

    def in_nonneg_poly(self) -> bool:
        """True iff the polynomial lies in Z_{>=0}[v]."""
        return self.is_zero() or (self._low >= 0 and all(c >= 0 for c in self._coeffs))

    def in_v_zv(self) -> bool:
        """True iff the polynomial lies in vZ[v]."""
        return self.is_zero() or self._low >= 1

    def in_one_plus_v_zv(self) -> bool:
        return (self - 1).in_v_zv()

    def is_monomial(self) -> bool:
        return len(self._coeffs) == 1

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: Scalar) -> "LaurentPoly":
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        if not other._coeffs:
            return self
        if not self._coeffs:
            return other
        lo = min(self._low, other._low)
        hi = max(self.high, other.high)
        out = [0] * (hi - lo + 1)
        for i, c in enumerate(self._coeffs):
            out[self._low - lo + i] += c
        for i, c in enumerate(other._coeffs):
            out[other._low - lo + i] += c
        return LaurentPoly(lo, out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self._low, (-c for c in self._coeffs))

    def __sub__(self, other: Scalar) -> "LaurentPoly":
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "LaurentPoly":
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other: Scalar) -> "LaurentPoly":
        if isinstance(other, int):
            if other == 0:
                return ZERO
            return LaurentPoly(self._low, (c * other for c in self._coeffs))
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self._coeffs, other._coeffs
        if not a or not b:
            return ZERO
        if len(b) == 1:
            return LaurentPoly(self._low + other._low, (c * b[0] for c in a))
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return LaurentPoly(self._low + other._low, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if not self.is_monomial() or abs(self._coeffs[0]) != 1:
                raise ValueError("only units can be raised to negative powers")
            return LaurentPoly(-self._low * -n, (self._coeffs[0] ** -n,))
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by v**k."""
        if not self._coeffs:
            return self
        return LaurentPoly(self._low + k, self._coeffs)

    def bar(self) -> "LaurentPoly":
        """The involution v -> v^-1."""
        if not self._coeffs:
            return self
        return LaurentPoly(-self.high, reversed(self._coeffs))

    def evaluate(self, v: int) -> int:
        if self._low < 0 and v not in (1, -1):
            raise ValueError("negative exponents need v = +-1 for an integer value")
        return sum(c * v ** (self._low + i) for i, c in enumerate(self._coeffs))

    # -- comparison / hashing -------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.coerce(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._low == other._low and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._low, self._coeffs))
        return self._hash

    # -- text forms -------------------------------------------------------

    def to_text(self) -> str:
        """Serialize as ``"low:c0,c1,..."``; zero is ``"0"``."""
        if not self._coeffs:
            return "0"
        return f"{self._low}:" + ",".join(str(c) for c in self._coeffs)

    @classmethod
    def from_text(cls, text: str) -> "LaurentPoly":
        text = text.strip()
        if text == "0":
            return ZERO
        low, sep, body = text.partition(":")
        if not sep or not body:
            raise ValueError(f"malformed Laurent polynomial {text!r}")
        try:
            return cls(int(low), (int(c) for c in body.split(",")))
        except ValueError:
            raise ValueError(f"malformed Laurent polynomial {text!r}") from None

    def pretty(self, var: str = "v") -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for k, c in sorted(self.terms().items()):
            if k == 0:
                mono = ""
            elif k == 1:
                mono = var
            else:
                mono = f"{var}^{k}"
            if mono and c == 1:
                s = mono
            elif mono and c == -1:
                s = "-" + mono
            else:
                s = f"{c}{mono}"
            parts.append(s)
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __str__(self) -> str:
        return self.pretty()

    def __repr__(self) -> str:
        return f"LaurentPoly({self.to_text()!r})"


ZERO = LaurentPoly()
ONE = LaurentPoly(0, (1,))
V = LaurentPoly(1, (1,))
V_INV = LaurentPoly(-1, (1,))
