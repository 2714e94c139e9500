"""Subexpressions, Deodhar's defect and the identities built from them.

A subexpression of an expression ``(s_1, ..., s_m)`` is a 01-word ``e``.  The
running products ``w_i = s_1^{e_1} ... s_i^{e_i}`` decide the decorations:
position ``i`` is ``U`` when ``w_{i-1} s_i > w_{i-1}`` and ``D`` otherwise.  The
defect is ``#U0 - #D0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from . import kernels
from .coxeter import CoxeterSystem, GroupElement, ResourceLimitError
from .hecke import HeckeAlgebra, HeckeElt, hecke_algebra
from .laurent import LaurentPoly

__all__ = [
    "Expression",
    "DecoratedSubexpr",
    "SolvabilityError",
    "IdentityError",
    "decorate",
    "enumerate_subexpr",
    "bs_character",
    "deodhar_sum",
    "verify_deodhar_identity",
    "gdim_D",
    "defect_classes",
    "subset_solutions",
    "count_solutions",
    "classify",
    "hom_gdim",
    "verify_lemma_hom",
]

DEFAULT_MAX_LETTERS = 24


class SolvabilityError(RuntimeError):
    """Some KL coefficient exceeds the number of subexpressions of that
    defect.  Deodhar's existence result rules this out, so it means a bug
    upstream."""


class IdentityError(AssertionError):
    """An identity that must hold exactly failed."""


@dataclass(frozen=True)
class Expression:
    system: CoxeterSystem = field(repr=False, compare=False)
    letters: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        for s in self.letters:
            self.system.check_generator(s)

    @classmethod
    def parse(cls, system: CoxeterSystem, text: str) -> "Expression":
        return cls(system, system.parse_word(text))

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def product(self) -> GroupElement:
        return self.system.element(self.letters)

    @property
    def reduced(self) -> bool:
        return self.product.length == len(self.letters)

    def __str__(self) -> str:
        return self.system.format_word(self.letters)


@dataclass(frozen=True)
class DecoratedSubexpr:
    bits: tuple[int, ...]
    decorations: tuple[str, ...]
    prefixes: tuple[GroupElement, ...]  # w_0 .. w_m
    element: GroupElement
    defect: int

    @property
    def decoration_string(self) -> str:
        return " ".join(self.decorations)

    @property
    def bit_string(self) -> str:
        return "".join(map(str, self.bits))

    def as_dict(self) -> dict:
        W = self.element.system
        return {
            "bits": self.bit_string,
            "decorations": self.decoration_string,
            "element": W.format_word(self.element),
            "defect": self.defect,
        }


def _as_expression(ybar, system: CoxeterSystem | None = None) -> Expression:
    if isinstance(ybar, Expression):
        return ybar
    if system is None:
        raise TypeError("pass an Expression or give the system")
    return Expression(system, tuple(ybar))


def _check_letters(m: int, cap: int) -> None:
    if m > cap:
        raise ResourceLimitError(f"2^{m} subexpressions exceeds the cap 2^{cap}")


def decorate(ybar: Expression, e: Sequence[int]) -> DecoratedSubexpr:
    e = tuple(int(b) for b in e)
    if len(e) != len(ybar):
        raise ValueError(f"subexpression has length {len(e)}, expression has {len(ybar)}")
    if any(b not in (0, 1) for b in e):
        raise ValueError("subexpression entries must be 0 or 1")
    W = ybar.system
    w = W.identity
    prefixes = [w]
    decorations = []
    defect = 0
    for s, b in zip(ybar.letters, e):
        ws = W._mul_right(w, s)
        up = ws.length > w.length
        decorations.append(("U" if up else "D") + str(b))
        if b:
            w = ws
        else:
            defect += 1 if up else -1
        prefixes.append(w)
    return DecoratedSubexpr(e, tuple(decorations), tuple(prefixes), w, defect)


def _code_to_bits(code: int, m: int) -> tuple[int, ...]:
    return tuple((code >> (m - 1 - i)) & 1 for i in range(m))


def enumerate_subexpr(
    ybar: Expression,
    x: GroupElement | None = None,
    *,
    max_letters: int = DEFAULT_MAX_LETTERS,
) -> Iterator[DecoratedSubexpr]:
    """Stream the decorated subexpressions of ``ybar`` in lexicographic bit
    order, optionally only those expressing ``x``."""
    m = len(ybar)
    _check_letters(m, max_letters)
    if x is not None:
        if x.length > m:
            return
        table = kernels.element_table(ybar.system, m)
        codes, _ = kernels.expressing_codes(table, ybar.letters, x)
        for code in codes:
            yield decorate(ybar, _code_to_bits(int(code), m))
        return
    yield from _walk_all(ybar)


def _walk_all(ybar: Expression) -> Iterator[DecoratedSubexpr]:
    W = ybar.system
    letters = ybar.letters
    m = len(letters)
    bits: list[int] = []
    decs: list[str] = []
    prefixes = [W.identity]

    def rec(i: int, defect: int):
        if i == m:
            w = prefixes[-1]
            yield DecoratedSubexpr(tuple(bits), tuple(decs), tuple(prefixes), w, defect)
            return
        w = prefixes[-1]
        ws = W._mul_right(w, letters[i])
        up = ws.length > w.length
        for b in (0, 1):
            bits.append(b)
            decs.append(("U" if up else "D") + str(b))
            prefixes.append(ws if b else w)
            yield from rec(i + 1, defect + (0 if b else (1 if up else -1)))
            bits.pop()
            decs.pop()
            prefixes.pop()

    yield from rec(0, 0)


# ---------------------------------------------------------------------------
# Deodhar's identity


def bs_character(ybar: Expression) -> HeckeElt:
    """``b_{s_1} ... b_{s_m}`` in the standard basis."""
    H = hecke_algebra(ybar.system)
    return H.mul_b_word(H.one(), ybar.letters)


def _histogram_to_hecke(table: kernels.ElementTable, hist, m: int) -> HeckeElt:
    out = {}
    for i in hist.any(axis=1).nonzero()[0]:
        out[table.elements[i]] = LaurentPoly(-m, (int(c) for c in hist[i]))
    return HeckeElt(table.system, out)


def deodhar_sum(ybar: Expression, *, max_letters: int = DEFAULT_MAX_LETTERS) -> HeckeElt:
    """``sum_e v^{df(e)} h_{ybar^e}`` by brute force over all 01-words."""
    m = len(ybar)
    _check_letters(m, max_letters)
    table = kernels.element_table(ybar.system, m)
    hist = kernels.defect_histogram(table, ybar.letters)
    return _histogram_to_hecke(table, hist, m)


@dataclass
class IdentityReport:
    expression: tuple[int, ...]
    ok: bool
    discrepancies: list[tuple[GroupElement, LaurentPoly, LaurentPoly]]

    def as_dict(self) -> dict:
        return {
            "expression": " ".join(map(str, self.expression)) or "e",
            "ok": self.ok,
            "discrepancies": [
                {"element": str(x), "character": a.to_text(), "defect_sum": b.to_text()}
                for x, a, b in self.discrepancies
            ],
        }


def compare_hecke(a: HeckeElt, b: HeckeElt) -> list[tuple[GroupElement, LaurentPoly, LaurentPoly]]:
    keys = set(a._terms) | set(b._terms)
    W = a.system
    return [
        (x, a.coeff(x), b.coeff(x))
        for x in sorted(keys, key=W.sort_key)
        if a.coeff(x) != b.coeff(x)
    ]


def verify_deodhar_identity(
    ybar: Expression, *, character: HeckeElt | None = None, max_letters: int = DEFAULT_MAX_LETTERS
) -> IdentityReport:
    """Compare ``bs_character(ybar)`` with the defect sum coefficient by coefficient."""
    lhs = character if character is not None else bs_character(ybar)
    rhs = deodhar_sum(ybar, max_letters=max_letters)
    diff = compare_hecke(lhs, rhs)
    return IdentityReport(ybar.letters, not diff, diff)


def defect_classes(
    x: GroupElement, ybar: Expression, *, max_letters: int = DEFAULT_MAX_LETTERS
) -> dict[int, list[tuple[int, ...]]]:
    """Subexpressions expressing ``x`` grouped by defect, each class in
    lexicographic bit order."""
    m = len(ybar)
    _check_letters(m, max_letters)
    classes: dict[int, list[tuple[int, ...]]] = {}
    if x.length > m:
        return classes
    table = kernels.element_table(ybar.system, m)
    codes, defects = kernels.expressing_codes(table, ybar.letters, x)
    for code, d in zip(codes.tolist(), defects.tolist()):
        classes.setdefault(d, []).append(_code_to_bits(code, m))
    return dict(sorted(classes.items()))


def gdim_D(
    x: GroupElement,
    ybar: Expression,
    *,
    check: bool = True,
    max_letters: int = DEFAULT_MAX_LETTERS,
) -> LaurentPoly:
    """Graded dimension of ``D_{x, ybar}``: ``sum_{e expressing x} v^{df(e)}``.

    With ``check`` the result is compared against the ``h_x`` coefficient of
    the Bott-Samelson character.
    """
    classes = defect_classes(x, ybar, max_letters=max_letters)
    result = LaurentPoly.from_dict({d: len(es) for d, es in classes.items()})
    if check:
        expected = bs_character(ybar).coeff(x)
        if expected != result:
            raise IdentityError(
                f"gdim D_{{{x},{ybar}}} = {result} but character coefficient is {expected}"
            )
    return result


# ---------------------------------------------------------------------------
# Subset selection


@dataclass
class SubsetSolutions:
    table: dict[int, tuple[int, int]]  # defect -> (n_d, c_d)
    count: int
    forced: bool
    witness: list[tuple[int, ...]]
    h: LaurentPoly | None = None
    gdim: LaurentPoly | None = None

    def as_dict(self) -> dict:
        return {
            "table": {str(d): {"n": n, "c": c} for d, (n, c) in self.table.items()},
            "count": str(self.count),
            "forced": self.forced,
            "witness": ["".join(map(str, e)) for e in self.witness],
        }


def count_solutions(table: dict[int, tuple[int, int]]) -> tuple[int, bool]:
    """Number of subsets picking exactly ``c_d`` of the ``n_d`` elements of
    each defect class, and whether that choice is forced."""
    count = 1
    forced = True
    for d, (n, c) in table.items():
        if c > n or c < 0:
            raise SolvabilityError(f"defect {d}: need {c} of {n} subexpressions")
        count *= math.comb(n, c)
        forced = forced and c in (0, n)
    return count, forced


def subset_solutions(
    x: GroupElement, ybar: Expression, *, max_letters: int = DEFAULT_MAX_LETTERS
) -> SubsetSolutions:
    """Census of subsets X of subexpressions for ``x`` with
    ``sum_{e in X} v^{df(e)} = h_{x,y}``."""
    if not ybar.reduced:
        raise ValueError(f"expression {ybar} is not reduced")
    y = ybar.product
    H = hecke_algebra(ybar.system)
    h = H.kl_poly(x, y).h
    classes = defect_classes(x, ybar, max_letters=max_letters)
    degrees = sorted(set(classes) | set(h.terms()))
    table = {d: (len(classes.get(d, ())), h.coeff(d)) for d in degrees}
    count, forced = count_solutions(table)
    witness = sorted(e for d, (n, c) in table.items() for e in classes.get(d, [])[:c])
    gdim = LaurentPoly.from_dict({d: n for d, (n, _) in table.items()})
    return SubsetSolutions(table, count, forced, witness, h, gdim)


# ---------------------------------------------------------------------------
# Classification and hom spaces


@dataclass(frozen=True)
class Classification:
    rationally_smooth: bool
    dihedral: bool
    universal: bool

    def as_dict(self) -> dict:
        return {
            "rationally_smooth": self.rationally_smooth,
            "dihedral": self.dihedral,
            "universal": self.universal,
        }


def classify(x: GroupElement, y: GroupElement) -> Classification:
    W = y.system
    if not W.bruhat_leq(x, y):
        raise ValueError(f"{x} is not below {y} in the Bruhat order")
    h = hecke_algebra(W).kl_poly(x, y).h
    smooth = h == LaurentPoly.monomial(y.length - x.length)
    return Classification(smooth, W.is_dihedral, W.is_universal)


def hom_gdim(chM: HeckeElt, chN: HeckeElt) -> LaurentPoly:
    """Graded rank of ``Hom(M, N)`` from characters: ``(ch M, bar(ch N))``."""
    H = hecke_algebra(chM.system)
    return HeckeAlgebra.pairing(chM, H.bar(chN))


@dataclass
class LemmaHomReport:
    x: GroupElement
    s: int
    dims: tuple[int, int, int]
    pairings: tuple[LaurentPoly, LaurentPoly, LaurentPoly]

    @property
    def ok(self) -> bool:
        return self.dims == (1, 1, 1)

    def as_dict(self) -> dict:
        return {
            "x": str(self.x),
            "s": self.s,
            "dims": list(self.dims),
            "pairings": [p.to_text() for p in self.pairings],
            "ok": self.ok,
        }


def verify_lemma_hom(x: GroupElement, s: int) -> LemmaHomReport:
    """Dimensions of ``Hom^0(B_x B_s, B_xs)``, ``Hom^-1(B_xs B_s, B_xs)`` and
    ``Hom^1(B_xs, B_x)`` via the hom formula, for ``x < xs``."""
    W = x.system
    xs = W.mul_gen(x, s)
    if xs.length < x.length:
        raise ValueError(f"need x < xs, but {s} is a right descent of {x}")
    H = hecke_algebra(W)
    bx, bxs = H.kl_element(x), H.kl_element(xs)
    p0 = hom_gdim(H.mul_std_gen(bx, s, "b"), bxs)
    p1 = hom_gdim(H.mul_std_gen(bxs, s, "b"), bxs)
    p2 = hom_gdim(bxs, bx)
    return LemmaHomReport(x, s, (p0.coeff(0), p1.coeff(-1), p2.coeff(1)), (p0, p1, p2))
