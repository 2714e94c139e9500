import itertools
import math

import pytest

from deodhar_lab.coxeter import ResourceLimitError, coxeter_system
from deodhar_lab.deodhar import (
    Expression,
    IdentityError,
    SolvabilityError,
    bs_character,
    classify,
    count_solutions,
    decorate,
    deodhar_sum,
    enumerate_subexpr,
    gdim_D,
    hom_gdim,
    subset_solutions,
    verify_deodhar_identity,
    verify_lemma_hom,
)
from deodhar_lab.hecke import hecke_algebra
from deodhar_lab.laurent import ONE, V, V_INV, LaurentPoly
from oracles import brute_subexpressions, brute_subset_count


@pytest.fixture
def A2():
    return coxeter_system("A2")


@pytest.fixture
def A3():
    return coxeter_system("A3")


def test_decorate_examples(A2):
    ss = Expression(A2, (1, 1))
    d = decorate(ss, (1, 0))
    assert d.decorations == ("U1", "D0") and d.element == A2.gen(1) and d.defect == -1
    d = decorate(ss, (0, 0))
    assert d.decoration_string == "U0 U0" and d.element == A2.identity and d.defect == 2
    d = decorate(Expression(A2, (1, 2, 1)), (1, 1, 1))
    assert d.decorations == ("U1",) * 3 and d.defect == 0
    assert [w.length for w in d.prefixes] == [0, 1, 2, 3]


def test_decorate_rejects_bad_input(A2):
    with pytest.raises(ValueError):
        decorate(Expression(A2, (1, 2)), (1,))
    with pytest.raises(ValueError):
        decorate(Expression(A2, (1, 2)), (1, 2))


@pytest.mark.parametrize("desc, max_len", [("A3", 5), ("I2(5)", 6), ("U3", 4), ("At2", 4)])
def test_enumeration_matches_brute_force(desc, max_len):
    W = coxeter_system(desc)
    for word in W.iter_words(max_len):
        ybar = Expression(W, word)
        brute = brute_subexpressions(W, word)
        full = list(enumerate_subexpr(ybar))
        assert [(d.bits, d.element, d.defect) for d in full] == brute
        for d in full:
            assert (d.defect - len(word) + d.element.length) % 2 == 0
        x = brute[len(brute) // 3][1]
        only_x = list(enumerate_subexpr(ybar, x))
        assert [(d.bits, d.defect) for d in only_x] == [(b, df) for b, y, df in brute if y == x]


def test_enumerate_examples(A2):
    got = [(d.bits, d.defect) for d in enumerate_subexpr(Expression(A2, (1, 1)), A2.gen(1))]
    assert got == [((0, 1), 1), ((1, 0), -1)]
    got = [(d.bits, d.defect) for d in enumerate_subexpr(Expression(A2, (1, 2, 1)), A2.gen(1))]
    assert got == [((0, 0, 1), 2), ((1, 0, 0), 0)]
    assert list(enumerate_subexpr(Expression(A2, (1, 2)), A2.element((1, 2, 1)))) == []


def test_enumeration_cap(A2):
    ybar = Expression(A2, (1, 2) * 5)
    with pytest.raises(ResourceLimitError):
        list(enumerate_subexpr(ybar, max_letters=8))
    with pytest.raises(ResourceLimitError):
        list(enumerate_subexpr(ybar, A2.identity, max_letters=8))


def test_character_examples(A2):
    H = hecke_algebra(A2)
    ch = bs_character(Expression(A2, (1, 1)))
    assert ch == H.h((1,)).scale(V + V_INV) + H.one().scale(V**2 + 1)
    assert bs_character(Expression(A2, (1, 2, 1))).coeff(A2.gen(1)) == 1 + V**2
    assert bs_character(Expression(A2, ())) == H.one()
    for word in [(1, 1), (1, 2, 1), ()]:
        assert verify_deodhar_identity(Expression(A2, word)).ok


def test_gdim_examples(A2, A3):
    assert gdim_D(A2.gen(1), Expression(A2, (1, 1))) == V_INV + V
    assert gdim_D(A2.gen(1), Expression(A2, (1, 2, 1))) == 1 + V**2
    assert gdim_D(A3.gen(2), Expression(A3, (2, 1, 3, 2))) == V + V**3


@pytest.mark.parametrize("desc, max_len", [("A3", 5), ("B2", 6), ("At2", 4)])
def test_gdim_is_kl_expansion_of_character(desc, max_len):
    """``gdim_D(x) = sum_z m_z h_{x,z}`` with ``prod b_s = sum m_z b_z`` and ``m_z >= 0``."""
    W = coxeter_system(desc)
    H = hecke_algebra(W)
    for word in W.iter_words(max_len, min_len=max_len):
        ybar = Expression(W, word)
        mult = H.kl_expand(bs_character(ybar))
        assert all(m.terms() and min(m.terms().values()) > 0 for m in mult.values())
        for x in W.elements(max_len)[:: 3]:
            want = sum((m * H.kl_poly(x, z).h for z, m in mult.items()), LaurentPoly())
            assert gdim_D(x, ybar) == want


def test_gdim_detects_mismatch(A2, monkeypatch):
    import deodhar_lab.deodhar as dd

    monkeypatch.setattr(dd, "bs_character", lambda ybar: hecke_algebra(A2).zero())
    with pytest.raises(IdentityError):
        dd.gdim_D(A2.gen(1), Expression(A2, (1, 2, 1)))


def test_deodhar_sum_equals_character_on_long_word():
    W = coxeter_system("A3")
    ybar = Expression(W, (1, 2, 3, 1, 2, 1, 3, 2, 1, 3))
    assert deodhar_sum(ybar) == bs_character(ybar)


def test_subset_examples(A2, A3):
    sol = subset_solutions(A2.gen(1), Expression(A2, (1, 2, 1)))
    assert sol.table == {0: (1, 0), 2: (1, 1)}
    assert (sol.count, sol.forced, sol.witness) == (1, True, [(0, 0, 1)])
    assert sol.as_dict()["witness"] == ["001"] and sol.as_dict()["count"] == "1"
    sol = subset_solutions(A3.gen(2), Expression(A3, (2, 1, 3, 2)))
    assert sol.table == {1: (1, 1), 3: (1, 1)} and sol.count == 1 and sol.forced
    assert count_solutions({0: (3, 2)}) == (3, False)
    with pytest.raises(SolvabilityError):
        count_solutions({0: (1, 2)})
    with pytest.raises(ValueError):
        subset_solutions(A2.gen(1), Expression(A2, (1, 1, 2)))


def test_subset_census_against_brute_force(A3):
    H = hecke_algebra(A3)
    checked = 0
    for y in A3.elements(5):
        ybar = Expression(A3, A3.word(y))
        for x in A3.lower_interval(y):
            sol = subset_solutions(x, ybar)
            subs = list(enumerate_subexpr(ybar, x))
            if len(subs) > 12:
                continue
            h = H.kl_poly(x, y).h
            defects = [d.defect for d in subs]
            assert sol.count == brute_subset_count(defects, h.terms())
            # witness is the lexicographically least solution
            best = None
            for r in range(len(subs) + 1):
                for pick in itertools.combinations(range(len(subs)), r):
                    gf = LaurentPoly.from_dict({})
                    for i in pick:
                        gf = gf + V ** defects[i]
                    if gf == h:
                        cand = sorted(subs[i].bits for i in pick)
                        best = cand if best is None or cand < best else best
            assert sol.witness == best
            checked += 1
    assert checked > 50


def test_solution_count_is_product_of_binomials():
    assert count_solutions({1: (4, 2), 3: (2, 2), 5: (3, 0)}) == (math.comb(4, 2), False)
    assert count_solutions({}) == (1, True)


def test_classify(A2, A3):
    for y in A2.elements(3):
        for x in A2.lower_interval(y):
            c = classify(x, y)
            assert c.rationally_smooth and c.dihedral and not c.universal
    c = classify(A3.gen(2), A3.parse_element("2 1 3 2"))
    assert not c.rationally_smooth and not c.dihedral
    with pytest.raises(ValueError):
        classify(A2.element((1, 2)), A2.element((2, 1)))


def test_hom_gdim_and_lemma(A2):
    H = hecke_algebra(A2)
    b1 = H.b_gen(1)
    assert hom_gdim(b1, b1) == 1 + V**2
    rep = verify_lemma_hom(A2.gen(1), 2)
    assert rep.dims == (1, 1, 1) and rep.ok
    assert rep.pairings[0] == 1 + 2 * V**2 + V**4
    assert rep.pairings[1] == (V + V_INV) * (1 + 2 * V**2 + V**4)
    assert rep.pairings[2] == V + V**3
    for s in A2.generators:
        assert verify_lemma_hom(A2.identity, s).ok
    with pytest.raises(ValueError):
        verify_lemma_hom(A2.gen(1), 1)


def test_expression_properties(A3):
    e = Expression.parse(A3, "2 1 3 2")
    assert e.reduced and len(e) == 4 and e.product == A3.parse_element("2 3 1 2")
    assert not Expression.parse(A3, "1 1").reduced
    assert str(Expression.parse(A3, "e")) == "e"
    assert Expression.parse(A3, "e").product == A3.identity
    assert gdim_D(A3.identity, Expression(A3, ())) == ONE


def test_gdim_depends_on_the_reduced_word(A2):
    x = A2.gen(1)
    assert gdim_D(x, Expression(A2, (1, 2, 1))) == 1 + V**2
    assert gdim_D(x, Expression(A2, (2, 1, 2))) == V**2
    # both words still bound h_{x,y} = v^2 from above
    y = A2.element((1, 2, 1))
    assert hecke_algebra(A2).kl_poly(x, y).h == V**2


def test_problem_census_uses_lex_least_words(A3):
    from deodhar_lab.sweeps import problem_census

    census = problem_census(A3, 3)
    assert all(p.word == min(A3.reduced_words(p.y)) for p in census)
    assert all(p.solutions.count >= 1 for p in census)
