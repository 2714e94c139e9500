"""Bott-Samelson bimodules over an exact polynomial ring.

``R`` is the polynomial ring over Q in the simple roots ``a1..an`` (degree
2 each) with the Weyl group acting through the Cartan matrix:
``s_i(a_j) = a_j - A[i][j] a_i`` where ``A[i][j] = <a_i^vee, a_j>``.

For ``B_s = R (x)_{R^s} R(1)`` we use the right basis ``{1 (x) 1, d_s (x) 1}``
with ``d_s = a_s / 2``.  A polynomial in the left factor is pushed right with
``f = f_0 + d_s * D_s(f)``, where ``D_s`` is the Demazure operator and
``f_0 = f - d_s D_s(f)`` is ``s``-invariant.  An element of
``B_{s_1} ... B_{s_m}`` is therefore a map from 01-labels ``b`` to right
coordinates, ``sum_b (d_1^{b_1} (x) ... (x) d_m^{b_m} (x) 1) g_b``.
"""

from __future__ import annotations

import random
import re
from itertools import product
from typing import Iterable, Mapping, Sequence

try:
    from gmpy2 import mpq as Fraction
except ImportError:  # pragma: no cover
    from fractions import Fraction

from .coxeter import CoxeterError, CoxeterSystem, ResourceLimitError
from .deodhar import Expression, IdentityError, decorate
from .laurent import V, V_INV, LaurentPoly

__all__ = [
    "Poly",
    "PolyRing",
    "DemazureError",
    "NotCrystallographicError",
    "BSModule",
    "BSElement",
    "build_bs",
    "demazure",
    "left_act",
    "m_chain_eval",
    "cll_degree",
    "CLL_STEP_DEGREE",
]

DEFAULT_MAX_BS_LETTERS = 10

# degree of the map used at each step of the canonical light leaf construction
CLL_STEP_DEGREE = {"U0": 1, "U1": 0, "D0": -1, "D1": 0}


class DemazureError(ArithmeticError):
    """``f - s(f)`` was not divisible by the root; the action is broken."""


class NotCrystallographicError(CoxeterError):
    pass


Monomial = tuple[int, ...]

_BITS = 16
_MASK = (1 << _BITS) - 1


def _pack(mono: Sequence[int]) -> int:
    key = 0
    for i, k in enumerate(mono):
        if not 0 <= k <= _MASK:
            raise ValueError(f"exponent {k} out of range")
        key |= k << (_BITS * i)
    return key


def _unpack(key: int, nvars: int) -> Monomial:
    return tuple((key >> (_BITS * i)) & _MASK for i in range(nvars))


def _exponent(key: int, i: int) -> int:
    return (key >> (_BITS * i)) & _MASK


class Poly:
    """Sparse polynomial with exact rational coefficients; immutable.

    Monomials are stored packed into one integer, ``_BITS`` bits per
    variable, so monomial multiplication is integer addition.
    """

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Monomial, object] | Iterable = ()):
        self.nvars = nvars
        items = terms.items() if isinstance(terms, Mapping) else terms
        out: dict[int, Fraction] = {}
        for mono, c in items:
            if len(mono) != nvars:
                raise ValueError(f"monomial {mono} has the wrong number of variables")
            key = _pack(mono)
            t = out.get(key, 0) + Fraction(c)
            if t:
                out[key] = t
            else:
                out.pop(key, None)
        self._terms = out
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "Poly":
        p = cls.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, nvars: int, c) -> "Poly":
        c = Fraction(c)
        return cls._raw(nvars, {0: c} if c else {})

    @classmethod
    def var(cls, nvars: int, i: int, c=1) -> "Poly":
        return cls._raw(nvars, {1 << (_BITS * i): Fraction(c)})

    def terms(self) -> dict[Monomial, Fraction]:
        return {_unpack(k, self.nvars): c for k, c in self._terms.items()}

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(self.nvars, other)
        raise TypeError(f"cannot combine Poly with {type(other).__name__}")

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            t = out.get(m, 0) + c
            if t:
                out[m] = t
            else:
                del out[m]
        return Poly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw(self.nvars, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Fraction(other)
            if not other:
                return Poly._raw(self.nvars, {})
            return Poly._raw(self.nvars, {m: c * other for m, c in self._terms.items()})
        out: dict[int, Fraction] = {}
        get = out.get
        b = list(other._terms.items())
        for m1, c1 in self._terms.items():
            for m2, c2 in b:
                m = m1 + m2
                out[m] = get(m, 0) + c1 * c2
        return Poly._raw(self.nvars, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        result = Poly.const(self.nvars, 1)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            try:
                other = self._coerce(other)
            except TypeError:
                return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def _total(self, key: int) -> int:
        return sum(_exponent(key, i) for i in range(self.nvars))

    def degree(self) -> int | None:
        """Grading degree (twice the polynomial degree) if homogeneous."""
        degs = {self._total(k) for k in self._terms}
        if len(degs) != 1:
            return None
        return 2 * degs.pop()

    def max_total_degree(self) -> int:
        return max((self._total(k) for k in self._terms), default=-1)

    def divide_by_var(self, i: int) -> "Poly":
        step = 1 << (_BITS * i)
        out = {}
        for m, c in self._terms.items():
            if not _exponent(m, i):
                raise DemazureError(f"{self} is not divisible by a{i + 1}")
            out[m - step] = c
        return Poly._raw(self.nvars, out)

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        # graded lex, highest first
        return sorted(self.terms().items(), key=lambda mc: (sum(mc[0]), mc[0]), reverse=True)

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for mono, c in self.sorted_terms():
            coef = str(c)
            factors = "".join(f"a{i + 1}^{k}" for i, k in enumerate(mono) if k)
            parts.append(f"{coef}·{factors}" if factors else coef)
        return " + ".join(parts)

    @classmethod
    def from_text(cls, nvars: int, text: str) -> "Poly":
        text = text.strip()
        if text == "0":
            return cls(nvars)
        terms = []
        for part in text.split(" + "):
            coef, _, factors = part.strip().partition("·")
            if factors and not re.fullmatch(r"(a\d+\^\d+)+", factors):
                raise ValueError(f"malformed monomial {factors!r}")
            mono = [0] * nvars
            for i, k in re.findall(r"a(\d+)\^(\d+)", factors):
                if not 1 <= int(i) <= nvars:
                    raise ValueError(f"variable a{i} out of range")
                mono[int(i) - 1] += int(k)
            try:
                terms.append((tuple(mono), Fraction(coef)))
            except ValueError:
                raise ValueError(f"malformed coefficient {coef!r}") from None
        return cls(nvars, terms)

    def __repr__(self) -> str:
        return f"Poly({self.to_text()!r})"

    __str__ = to_text


class PolyRing:
    """``Q[a1..an]`` with the reflection action of a crystallographic system."""

    def __init__(self, cartan: Sequence[Sequence[int]]):
        self.cartan = tuple(tuple(row) for row in cartan)
        self.rank = n = len(self.cartan)
        self.one = Poly.const(n, 1)
        self.zero = Poly(n)
        self.alphas = [Poly.var(n, i) for i in range(n)]
        self._deltas = [a * Fraction(1, 2) for a in self.alphas]
        # image of a_j under s_i
        self._images = {
            (i, j): self.alphas[j] - self.alphas[i] * self.cartan[i][j]
            for i in range(n)
            for j in range(n)
        }
        self._pow_cache: dict[tuple[int, int, int], Poly] = {}
        self._act_cache: dict[tuple[int, int], Poly] = {}
        self._dem_cache: dict[tuple[int, int], Poly] = {}

    @classmethod
    def for_system(cls, system: CoxeterSystem) -> "PolyRing":
        if not system.is_crystallographic:
            raise NotCrystallographicError(
                f"{system.descriptor} has no integral Cartan matrix; Bott-Samelson "
                "modules need a crystallographic system"
            )
        return cls(system.cartan)

    def alpha(self, s: int) -> Poly:
        return self.alphas[s - 1]

    def delta(self, s: int) -> Poly:
        return self._deltas[s - 1]

    def const(self, c) -> Poly:
        return Poly.const(self.rank, c)

    def _image_power(self, i: int, j: int, k: int) -> Poly:
        key = (i, j, k)
        p = self._pow_cache.get(key)
        if p is None:
            p = self._images[i, j] if k == 1 else self._image_power(i, j, k - 1) * self._images[i, j]
            self._pow_cache[key] = p
        return p

    def _act_monomial(self, i: int, mono: int) -> Poly:
        key = (i, mono)
        p = self._act_cache.get(key)
        if p is None:
            p = self.one
            for j in range(self.rank):
                k = _exponent(mono, j)
                if k:
                    p = p * self._image_power(i, j, k)
            self._act_cache[key] = p
        return p

    def _demazure_monomial(self, i: int, mono: int) -> Poly:
        key = (i, mono)
        p = self._dem_cache.get(key)
        if p is None:
            own = Poly._raw(self.rank, {mono: Fraction(1)})
            p = (own - self._act_monomial(i, mono)).divide_by_var(i)
            self._dem_cache[key] = p
        return p

    def _linear(self, table, i: int, f: Poly) -> Poly:
        out: dict[int, Fraction] = {}
        get = out.get
        for mono, c in f._terms.items():
            for m2, c2 in table(i, mono)._terms.items():
                out[m2] = get(m2, 0) + c * c2
        return Poly._raw(self.rank, {m: c for m, c in out.items() if c})

    def act(self, s: int, f: Poly) -> Poly:
        """The ring automorphism ``s`` applied to ``f``."""
        return self._linear(self._act_monomial, s - 1, f)

    def demazure(self, s: int, f: Poly) -> Poly:
        """``(f - s(f)) / a_s``, exact; linear, so computed monomial by monomial."""
        return self._linear(self._demazure_monomial, s - 1, f)

    def split(self, s: int, f: Poly) -> tuple[Poly, Poly]:
        """``(f_0, D_s f)`` with ``f = f_0 + d_s D_s f`` and both parts s-invariant."""
        df = self.demazure(s, f)
        return f - self.delta(s) * df, df

    def random_poly(self, rng: random.Random, max_degree: int, n_terms: int = 4, bound: int = 5) -> Poly:
        terms = []
        for _ in range(n_terms):
            deg = rng.randint(0, max_degree)
            mono = [0] * self.rank
            for _ in range(deg):
                mono[rng.randrange(self.rank)] += 1
            terms.append((tuple(mono), Fraction(rng.randint(-bound, bound), rng.randint(1, 3))))
        return Poly(self.rank, terms)


def demazure(ring: PolyRing, s: int, f: Poly) -> Poly:
    return ring.demazure(s, f)


# ---------------------------------------------------------------------------
# Bott-Samelson modules

Label = tuple[int, ...]


class BSModule:
    """``B_ybar`` as a free right ``R``-module on the labels ``{0,1}^m``."""

    def __init__(self, ybar: Expression, ring: PolyRing):
        self.expression = ybar
        self.ring = ring
        self.letters = ybar.letters
        m = len(ybar)
        self.labels: list[Label] = list(product((0, 1), repeat=m))
        self.degrees = {b: 2 * sum(b) - m for b in self.labels}
        self._basis_product: dict[Label, Poly] = {}

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def grk(self) -> LaurentPoly:
        """Graded rank: sum over the basis of ``v^deg``."""
        terms: dict[int, int] = {}
        for d in self.degrees.values():
            terms[d] = terms.get(d, 0) + 1
        return LaurentPoly.from_dict(terms)

    def element(self, coords: Mapping[Label, Poly]) -> "BSElement":
        return BSElement(self, coords)

    def basis_element(self, label: Sequence[int], coeff: Poly | None = None) -> "BSElement":
        return BSElement(self, {tuple(label): coeff if coeff is not None else self.ring.one})

    def c_bot(self) -> "BSElement":
        """``1 (x) 1 (x) ... (x) 1``, spanning the bottom degree ``-m``."""
        return self.basis_element((0,) * len(self.letters))

    def zero(self) -> "BSElement":
        return BSElement(self, {})

    def basis_product(self, label: Label) -> Poly:
        """Product of the left factors of a basis label, ``prod d_i^{b_i}``."""
        p = self._basis_product.get(label)
        if p is None:
            p = self.ring.one
            for s, b in zip(self.letters, label):
                if b:
                    p = p * self.ring.delta(s)
            self._basis_product[label] = p
        return p

    def random_element(self, rng: random.Random, max_degree: int, n_labels: int = 2) -> "BSElement":
        labels = rng.sample(self.labels, min(n_labels, len(self.labels)))
        return BSElement(self, {b: self.ring.random_poly(rng, max_degree, n_terms=2) for b in labels})


class BSElement:
    __slots__ = ("module", "coords")

    def __init__(self, module: BSModule, coords: Mapping[Label, Poly]):
        self.module = module
        self.coords: dict[Label, Poly] = {tuple(b): p for b, p in coords.items() if p}

    def __add__(self, other: "BSElement") -> "BSElement":
        out = dict(self.coords)
        for b, p in other.coords.items():
            out[b] = out[b] + p if b in out else p
        return BSElement(self.module, out)

    def __sub__(self, other: "BSElement") -> "BSElement":
        return self + other.right_act(self.module.ring.const(-1))

    def right_act(self, g: Poly) -> "BSElement":
        return BSElement(self.module, {b: p * g for b, p in self.coords.items()})

    def left_act(self, f: Poly) -> "BSElement":
        return left_act(f, self)

    def degree(self) -> int | None:
        """Degree if homogeneous; ``None`` for zero or inhomogeneous elements."""
        degs = set()
        for b, p in self.coords.items():
            for mono in p._terms:
                degs.add(self.module.degrees[b] + 2 * p._total(mono))
        return degs.pop() if len(degs) == 1 else None

    def __eq__(self, other) -> bool:
        if not isinstance(other, BSElement):
            return NotImplemented
        return self.module is other.module and self.coords == other.coords

    def to_text(self) -> str:
        return "\n".join(
            f"{''.join(map(str, b))}: {self.coords[b].to_text()}" for b in sorted(self.coords)
        )

    def __repr__(self) -> str:
        return f"BSElement({self.to_text()!r})"


def build_bs(ybar: Expression, *, max_letters: int = DEFAULT_MAX_BS_LETTERS) -> tuple[BSModule, LaurentPoly]:
    if len(ybar) > max_letters:
        raise ResourceLimitError(
            f"Bott-Samelson module of length {len(ybar)} exceeds the cap {max_letters}"
        )
    ring = PolyRing.for_system(ybar.system)
    module = BSModule(ybar, ring)
    return module, module.grk


def left_act(f: Poly, elt: BSElement) -> BSElement:
    """``f * elt``: push ``f`` through the tensor slots left to right."""
    module = elt.module
    ring = module.ring
    letters = module.letters
    out: dict[Label, dict] = {}
    for label, g in elt.coords.items():
        # carried polynomial for each partially built new label
        states: dict[Label, Poly] = {(): f}
        for s, b in zip(letters, label):
            nxt: dict[Label, Poly] = {}
            for prefix, carried in states.items():
                if b:
                    carried = carried * ring.delta(s)
                f0, df = ring.split(s, carried)
                if f0:
                    nxt[prefix + (0,)] = f0
                if df:
                    nxt[prefix + (1,)] = df
            states = nxt
        for new_label, carried in states.items():
            acc = out.setdefault(new_label, {})
            for m1, c1 in carried._terms.items():
                for m2, c2 in g._terms.items():
                    m = m1 + m2
                    acc[m] = acc.get(m, 0) + c1 * c2
    n = ring.rank
    return BSElement(module, {b: Poly._raw(n, {m: c for m, c in acc.items() if c}) for b, acc in out.items()})


def m_chain_eval(elt: BSElement) -> Poly:
    """Apply ``m_{s_1} (x) ... (x) m_{s_m}``: multiply all tensor slots."""
    module = elt.module
    total = module.ring.zero
    for label, g in elt.coords.items():
        total = total + module.basis_product(label) * g
    return total


def cll_degree(ybar: Expression, e: Sequence[int]) -> int:
    """Degree of the canonical light leaf for ``e`` from its decorations
    (``m_s`` +1, ``alpha`` 0, ``beta`` -1, ``gamma . beta`` 0)."""
    dec = decorate(ybar, e)
    degree = sum(CLL_STEP_DEGREE[d] for d in dec.decorations)
    if degree != dec.defect:
        raise IdentityError(f"light leaf degree {degree} differs from defect {dec.defect}")
    return degree


def grk_expected(m: int) -> LaurentPoly:
    return (V + V_INV) ** m
