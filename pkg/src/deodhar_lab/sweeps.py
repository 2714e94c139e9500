"""Exhaustive checks over all small expressions or pairs of a Coxeter system."""

from __future__ import annotations

from dataclasses import dataclass, field

from .coxeter import CoxeterSystem, GroupElement
from .deodhar import (
    Expression,
    IdentityReport,
    LemmaHomReport,
    classify,
    subset_solutions,
    verify_deodhar_identity,
)
from .hecke import hecke_algebra

__all__ = [
    "identity_sweep",
    "lemma_hom_sweep",
    "classify_census",
    "problem_census",
    "pairs_below",
]


@dataclass
class IdentitySweep:
    checked: int = 0
    failures: list[IdentityReport] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {"checked": self.checked, "failures": [f.as_dict() for f in self.failures]}


def identity_sweep(W: CoxeterSystem, max_len: int, **caps) -> IdentitySweep:
    """Deodhar's identity for every expression with at most ``max_len`` letters.

    Characters are built depth first so each prefix product ``b_{s_1}...b_{s_k}``
    is computed once; the defect side is a fresh brute force per expression.
    """
    H = hecke_algebra(W)
    report = IdentitySweep()

    def rec(letters: tuple[int, ...], character) -> None:
        r = verify_deodhar_identity(Expression(W, letters), character=character, **caps)
        report.checked += 1
        if not r.ok:
            report.failures.append(r)
        if len(letters) < max_len:
            for s in W.generators:
                rec(letters + (s,), H.mul_std_gen(character, s, "b"))

    rec((), H.one())
    return report


def lemma_hom_sweep(W: CoxeterSystem, max_len: int) -> list[LemmaHomReport]:
    """``verify_lemma_hom`` for every ``x < xs`` with ``l(xs) <= max_len``."""
    from .deodhar import verify_lemma_hom

    out = []
    for x in W.elements(max(max_len - 1, 0)):
        for s in W.generators:
            if not W.is_right_descent(x, s):
                out.append(verify_lemma_hom(x, s))
    return out


def pairs_below(W: CoxeterSystem, max_len: int) -> list[tuple[GroupElement, GroupElement]]:
    """All Bruhat pairs ``x <= y`` with ``l(y) <= max_len``."""
    pairs = []
    for y in W.elements(max_len):
        for x in W.lower_interval(y):
            pairs.append((x, y))
    return pairs


@dataclass
class ClassifyCensus:
    pairs: int
    rationally_smooth: int
    singular: list[tuple[GroupElement, GroupElement]]
    dihedral: bool
    universal: bool

    def as_dict(self) -> dict:
        return {
            "pairs": self.pairs,
            "rationally_smooth": self.rationally_smooth,
            "not_rationally_smooth": [{"x": str(x), "y": str(y)} for x, y in self.singular],
            "dihedral": self.dihedral,
            "universal": self.universal,
        }


def classify_census(W: CoxeterSystem, max_len: int) -> ClassifyCensus:
    pairs = pairs_below(W, max_len)
    singular = [(x, y) for x, y in pairs if not classify(x, y).rationally_smooth]
    return ClassifyCensus(len(pairs), len(pairs) - len(singular), singular, W.is_dihedral, W.is_universal)


@dataclass
class ProblemInstance:
    x: GroupElement
    y: GroupElement
    word: tuple[int, ...]
    solutions: object  # SubsetSolutions


def problem_census(W: CoxeterSystem, max_len: int) -> list[ProblemInstance]:
    """``subset_solutions`` for every pair ``x <= y``, using the canonical
    reduced word of ``y``."""
    out = []
    for x, y in pairs_below(W, max_len):
        word = W.word(y)
        out.append(ProblemInstance(x, y, word, subset_solutions(x, Expression(W, word))))
    return out
