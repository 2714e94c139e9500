"""Hecke algebra in the standard basis, with Kazhdan-Lusztig basis and pairing.

Normalization: ``h_x h_s = h_{xs}`` if ``xs > x`` and
``(v^-1 - v) h_x + h_{xs}`` otherwise; ``b_s = h_s + v h_e``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .coxeter import CoxeterSystem, GroupElement, ResourceLimitError
from .laurent import ONE, V, V_INV, ZERO, LaurentPoly

__all__ = ["HeckeElt", "HeckeAlgebra", "KLPoly", "hecke_algebra"]

_V_INV_MINUS_V = V_INV - V
_V_MINUS_V_INV = V - V_INV

DEFAULT_MAX_INTERVAL = 10**5


class HeckeElt:
    """Finite sum ``sum c_x h_x`` with Laurent polynomial coefficients.

    Immutable; zero coefficients are never stored.
    """

    __slots__ = ("system", "_terms")

    def __init__(self, system: CoxeterSystem, terms: Mapping[GroupElement, LaurentPoly] = ()):
        self.system = system
        self._terms = {x: c for x, c in dict(terms).items() if c}

    @classmethod
    def basis(cls, system: CoxeterSystem, x: GroupElement, coeff=ONE) -> "HeckeElt":
        return cls(system, {x: LaurentPoly.coerce(coeff)})

    @property
    def terms(self) -> dict[GroupElement, LaurentPoly]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def support(self) -> list[GroupElement]:
        return sorted(self._terms, key=self.system.sort_key)

    def coeff(self, x: GroupElement) -> LaurentPoly:
        return self._terms.get(x, ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __add__(self, other: "HeckeElt") -> "HeckeElt":
        out = dict(self._terms)
        for x, c in other._terms.items():
            out[x] = out.get(x, ZERO) + c
        return HeckeElt(self.system, out)

    def __neg__(self) -> "HeckeElt":
        return HeckeElt(self.system, {x: -c for x, c in self._terms.items()})

    def __sub__(self, other: "HeckeElt") -> "HeckeElt":
        return self + (-other)

    def scale(self, c) -> "HeckeElt":
        c = LaurentPoly.coerce(c)
        if c.is_zero():
            return HeckeElt(self.system)
        return HeckeElt(self.system, {x: c * a for x, a in self._terms.items()})

    def __rmul__(self, c) -> "HeckeElt":
        if isinstance(c, (int, LaurentPoly)):
            return self.scale(c)
        return NotImplemented

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HeckeElt):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def to_text(self) -> str:
        """``"word=poly; ..."`` with terms in decreasing length order."""
        if not self._terms:
            return "0"
        W = self.system
        return "; ".join(
            f"{W.format_word(x)}={self._terms[x].to_text()}" for x in reversed(self.support())
        )

    @classmethod
    def from_text(cls, system: CoxeterSystem, text: str) -> "HeckeElt":
        text = text.strip()
        if text == "0":
            return cls(system)
        out: dict[GroupElement, LaurentPoly] = {}
        for chunk in text.split(";"):
            word, sep, poly = chunk.partition("=")
            if not sep:
                raise ValueError(f"malformed Hecke term {chunk.strip()!r}")
            x = system.parse_element(word)
            out[x] = out.get(x, ZERO) + LaurentPoly.from_text(poly)
        return cls(system, out)

    def __repr__(self) -> str:
        return f"HeckeElt({self.to_text()!r})"

    def pretty(self) -> str:
        if not self._terms:
            return "0"
        W = self.system
        return " + ".join(
            f"({self._terms[x].pretty()})h[{W.format_word(x)}]" for x in reversed(self.support())
        )


@dataclass(frozen=True)
class KLPoly:
    h: LaurentPoly
    p: LaurentPoly  # polynomial in q, same storage type
    mu: int


class HeckeAlgebra:
    """Hecke algebra of one Coxeter system with per-instance memo tables for
    ``bar(h_x)`` and ``b_x``.

    The memo dictionaries are only ever extended with fully computed values,
    so concurrent readers see either a missing entry or a final one.
    """

    def __init__(self, system: CoxeterSystem, *, max_interval: int = DEFAULT_MAX_INTERVAL):
        self.W = system
        self.max_interval = max_interval
        self._bar_memo: dict[GroupElement, HeckeElt] = {}
        self._kl_memo: dict[GroupElement, HeckeElt] = {}

    # -- construction helpers -----------------------------------------------

    def zero(self) -> HeckeElt:
        return HeckeElt(self.W)

    def one(self) -> HeckeElt:
        return HeckeElt.basis(self.W, self.W.identity)

    def h(self, x: GroupElement | Iterable[int]) -> HeckeElt:
        if not isinstance(x, GroupElement):
            x = self.W.element(x)
        return HeckeElt.basis(self.W, x)

    def b_gen(self, s: int) -> HeckeElt:
        W = self.W
        return HeckeElt(W, {W.gen(s): ONE, W.identity: V})

    # -- multiplication -------------------------------------------------------

    def mul_std_gen(self, h: HeckeElt, s: int, basis: str = "h") -> HeckeElt:
        """Right multiplication by ``h_s`` (``basis="h"``) or ``b_s``."""
        W = self.W
        W.check_generator(s)
        out: dict[GroupElement, LaurentPoly] = {}
        if basis == "h":
            for x, c in h.items():
                xs = W._mul_right(x, s)
                out[xs] = out.get(xs, ZERO) + c
                if xs.length < x.length:
                    out[x] = out.get(x, ZERO) + c * _V_INV_MINUS_V
        elif basis == "b":
            for x, c in h.items():
                xs = W._mul_right(x, s)
                out[xs] = out.get(xs, ZERO) + c
                shift = 1 if xs.length > x.length else -1
                out[x] = out.get(x, ZERO) + c.shift(shift)
        else:
            raise ValueError(f"basis must be 'h' or 'b', got {basis!r}")
        return HeckeElt(W, out)

    def mul_b_word(self, h: HeckeElt, word: Iterable[int]) -> HeckeElt:
        for s in word:
            h = self.mul_std_gen(h, s, "b")
        return h

    def multiply(self, a: HeckeElt, b: HeckeElt) -> HeckeElt:
        """General product, expanding ``h_y`` along a reduced word of ``y``."""
        total = self.zero()
        for y, c in b.items():
            part = a
            for s in self.W.word(y):
                part = self.mul_std_gen(part, s, "h")
            total = total + part.scale(c)
        return total

    # -- bar involution -----------------------------------------------------

    def bar_h(self, x: GroupElement) -> HeckeElt:
        """``bar(h_x) = (h_{x^-1})^-1``, built as ``bar(h_{xs}) * bar(h_s)``."""
        cached = self._bar_memo.get(x)
        if cached is not None:
            return cached
        W = self.W
        if x.length == 0:
            result = self.one()
        else:
            s = W.first_right_descent(x)
            prev = self.bar_h(W._mul_right(x, s))
            # bar(h_s) = h_s + (v - v^-1) h_e
            result = self.mul_std_gen(prev, s, "h") + prev.scale(_V_MINUS_V_INV)
        self._bar_memo[x] = result
        return result

    def bar(self, h: HeckeElt) -> HeckeElt:
        total: dict[GroupElement, LaurentPoly] = {}
        for x, c in h.items():
            cb = c.bar()
            for y, d in self.bar_h(x).items():
                total[y] = total.get(y, ZERO) + cb * d
        return HeckeElt(self.W, total)

    # -- Kazhdan-Lusztig basis ----------------------------------------------

    def kl_element(self, x: GroupElement) -> HeckeElt:
        """``b_x`` by the descent recursion ``b_{xs} b_s - sum mu b_z``."""
        cached = self._kl_memo.get(x)
        if cached is not None:
            return cached
        W = self.W
        if x.length == 0:
            result = self.one()
        else:
            s = W.first_right_descent(x)
            xs = W._mul_right(x, s)
            cur = self.mul_std_gen(self.kl_element(xs), s, "b")
            if len(cur) > self.max_interval:
                raise ResourceLimitError(f"Bruhat interval below {x} exceeds {self.max_interval}")
            for level in range(x.length - 1, -1, -1):
                for z in [z for z, c in cur.items() if z.length == level]:
                    c0 = cur.coeff(z).coeff(0)
                    if c0:
                        cur = cur - self.kl_element(z).scale(c0)
            result = cur
        self._kl_memo[x] = result
        return result

    def kl_element_by_triangular_solve(self, x: GroupElement) -> HeckeElt:
        """``b_x`` from bar-invariance alone, without the descent recursion.

        Writes ``bar(h_y) = sum_z r_{z,y} h_z`` and solves
        ``h_z - bar(h_z) = sum_{z<y<=x} bar(h_y) r_{z,y}`` downwards in length,
        keeping the strictly positive part.
        """
        W = self.W
        interval = W.lower_interval(x)
        if len(interval) > self.max_interval:
            raise ResourceLimitError(f"Bruhat interval below {x} exceeds {self.max_interval}")
        coeffs: dict[GroupElement, LaurentPoly] = {x: ONE}
        bars = {y: self.bar_h(y) for y in interval}
        for z in reversed(interval):
            if z == x:
                continue
            rhs = ZERO
            for y, hy in coeffs.items():
                r = bars[y].coeff(z)
                if r:
                    rhs = rhs + hy.bar() * r
            positive = LaurentPoly.from_dict({k: c for k, c in rhs.terms().items() if k > 0})
            if (positive - positive.bar()) != rhs:
                raise ArithmeticError(f"bar-invariance system inconsistent at {z}")
            if positive:
                coeffs[z] = positive
        return HeckeElt(W, coeffs)

    def kl_poly(self, x: GroupElement, y: GroupElement) -> KLPoly:
        """``h_{x,y}``, its classical ``p_{x,y}(q)`` and ``mu(x,y)``."""
        h = self.kl_element(y).coeff(x)
        p = classical_p(h, y.length - x.length)
        return KLPoly(h, p, h.coeff(1))

    def kl_expand(self, h: HeckeElt) -> dict[GroupElement, LaurentPoly]:
        """Coefficients of ``h`` in the Kazhdan-Lusztig basis."""
        W = self.W
        out: dict[GroupElement, LaurentPoly] = {}
        cur = h
        while not cur.is_zero():
            top = max(cur._terms, key=W.sort_key)
            c = cur.coeff(top)
            out[top] = c
            cur = cur - self.kl_element(top).scale(c)
        return out

    # -- pairing ---------------------------------------------------------------

    @staticmethod
    def pairing(a: HeckeElt, b: HeckeElt) -> LaurentPoly:
        small, big = (a, b) if len(a) <= len(b) else (b, a)
        total = ZERO
        for x, c in small.items():
            d = big._terms.get(x)
            if d is not None:
                total = total + c * d
        return total

    # -- cache support -------------------------------------------------------

    def kl_table(self) -> dict[GroupElement, HeckeElt]:
        return dict(self._kl_memo)

    def load_kl_table(self, table: Mapping[GroupElement, HeckeElt]) -> None:
        self._kl_memo.update(table)


def classical_p(h: LaurentPoly, gap: int) -> LaurentPoly:
    """``p(q)`` with ``h(v) = v^gap * p(v^-2)``; returned in the variable q."""
    if h.is_zero():
        return h
    g = h.shift(-gap)
    out: dict[int, int] = {}
    for k, c in g.terms().items():
        if k > 0 or k % 2:
            raise ValueError(f"{h} is not of the form v^{gap} p(v^-2)")
        out[-k // 2] = c
    return LaurentPoly.from_dict(out)


def hecke_algebra(system: CoxeterSystem) -> HeckeAlgebra:
    """Shared algebra (and memo tables) for a system instance."""
    alg = getattr(system, "_hecke_algebra", None)
    if alg is None:
        alg = HeckeAlgebra(system)
        system._hecke_algebra = alg
    return alg
