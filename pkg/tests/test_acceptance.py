"""Acceptance criteria, one check per criterion, all exact.

Run under pytest (a summary line per criterion is printed at the end of the
session) or directly with ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import io
import itertools
import os
import random
import subprocess
import sys
import tempfile
import time
from pathlib import Path

import pytest

from deodhar_lab.bottsamelson import build_bs, cll_degree, demazure, grk_expected, left_act, m_chain_eval
from deodhar_lab.cache import CacheError, load_kl_cache, save_kl_cache
from deodhar_lab.cli import EXIT_USAGE, run
from deodhar_lab.coxeter import coxeter_system
from deodhar_lab.deodhar import (
    Expression,
    bs_character,
    classify,
    decorate,
    enumerate_subexpr,
    gdim_D,
    subset_solutions,
    verify_lemma_hom,
)
from deodhar_lab.hecke import HeckeAlgebra
from deodhar_lab.laurent import V
from deodhar_lab.sweeps import identity_sweep, pairs_below

sys.path.insert(0, str(Path(__file__).parent))
from oracles import brute_subset_count  # noqa: E402

DIHEDRAL = range(2, 9)


def c1_identity_sweep():
    cases = [("A3", 8), ("I2(5)", 8), ("I2(7)", 8), ("U3", 8), ("At2", 7)]
    parts, ok = [], True
    for desc, L in cases:
        rep = identity_sweep(coxeter_system(desc), L)
        ok = ok and rep.ok
        parts.append(f"{desc}<={L}: {rep.checked} exprs, {len(rep.failures)} bad")
    return ok, "; ".join(parts)


def _kl_consistent(W, max_len):
    H = HeckeAlgebra(W)
    els = W.elements(max_len)
    for x in els:
        b = H.kl_element(x)
        if b != H.kl_element_by_triangular_solve(x) or H.bar(b) != b:
            return False
        for y, c in b.items():
            if (y != x and not c.in_v_zv()) or not c.in_nonneg_poly():
                return False
    return len(els)


def c2_kl_self_consistency():
    cases = [("A3", 6)] + [(f"I2({m})", m) for m in DIHEDRAL] + [("U2", 6)]
    total = 0
    for desc, L in cases:
        n = _kl_consistent(coxeter_system(desc), L)
        if not n:
            return False, f"{desc} failed"
        total += n
    return True, f"{total} elements over {len(cases)} systems"


def c3_gdim_over_reduced_words():
    """Two clauses: gdim D equals the character coefficient for every reduced
    word, and gdim D does not depend on the reduced word.  The second clause
    is false (already for y = s1 s2 s1 in A2), so this criterion reports FAIL
    with the number of word-dependent pairs and the first counterexample."""
    W = coxeter_system("A3")
    checked = pairs = dependent = 0
    first = None
    for y in W.elements(6):
        words = sorted(W.reduced_words(y))
        chars = [bs_character(Expression(W, w)) for w in words]
        for x in W.lower_interval(y):
            values = {}
            for w, ch in zip(words, chars):
                g = gdim_D(x, Expression(W, w), check=False)
                if g != ch.coeff(x):
                    return False, f"gdim D differs from the character at x={x}, word={w}"
                values[w] = g
                checked += 1
            pairs += 1
            if len(set(values.values())) != 1:
                dependent += 1
                if first is None:
                    (w1, g1), (w2, g2) = sorted(values.items())[0], sorted(values.items())[-1]
                    first = f"x={x}: {w1} gives {g1.to_text()}, {w2} gives {g2.to_text()}"
    detail = f"character clause holds on {checked} (x, word) pairs; "
    if dependent:
        return False, detail + f"word independence fails for {dependent}/{pairs} pairs, e.g. {first}"
    return True, detail + f"independent of the word on all {pairs} pairs"


def c4_lemma_hom():
    count = 0
    for desc in ["A3"] + [f"I2({m})" for m in range(3, 9)]:
        W = coxeter_system(desc)
        for x in W.elements(100):
            for s in W.generators:
                if not W.is_right_descent(x, s):
                    if not verify_lemma_hom(x, s).ok:
                        return False, f"{desc}: x={x}, s={s}"
                    count += 1
    return True, f"{count} pairs (x, s) all (1, 1, 1)"


def c5_problem_census():
    W = coxeter_system("A3")
    H = HeckeAlgebra(W)
    instances = brute = 0
    for x, y in pairs_below(W, 6):
        ybar = Expression(W, W.word(y))
        sol = subset_solutions(x, ybar)
        instances += 1
        if any(c > n for n, c in sol.table.values()):
            return False, f"c_d > n_d at x={x}, y={y}"
        defects = [d.defect for d in enumerate_subexpr(ybar, x)]
        if len(defects) <= 20:
            if sol.count != brute_subset_count(defects, H.kl_poly(x, y).h.terms()):
                return False, f"count mismatch at x={x}, y={y}"
            brute += 1
    small = 0
    for desc in ["A2"] + [f"I2({m})" for m in DIHEDRAL]:
        G = coxeter_system(desc)
        HG = HeckeAlgebra(G)
        for x, y in pairs_below(G, 100):
            if not classify(x, y).rationally_smooth:
                return False, f"{desc}: ({x}, {y}) not rationally smooth"
            ybar = Expression(G, G.word(y))
            sol = subset_solutions(x, ybar)
            if gdim_D(x, ybar) == HG.kl_poly(x, y).h and not sol.forced:
                return False, f"{desc}: ({x}, {y}) not forced"
            small += 1
    return True, f"A3: {instances} instances, {brute} brute-forced; A2/I2: {small} pairs"


def c6_golden_values():
    W = coxeter_system("A3")
    H = HeckeAlgebra(W)
    x, y = W.parse_element("2"), W.parse_element("2 1 3 2")
    # re-derive from bar-invariance alone before comparing with the goldens
    h_oracle = H.kl_element_by_triangular_solve(y).coeff(x)
    kl = H.kl_poly(x, y)
    ybar = Expression(W, (2, 1, 3, 2))
    subs = list(enumerate_subexpr(ybar, x))
    sol = subset_solutions(x, ybar)
    ok = (
        h_oracle == kl.h == V + V**3
        and kl.mu == 1
        and len(subs) == 2
        and sorted(d.defect for d in subs) == [1, 3]
        and sol.count == 1
    )
    return ok, f"h={kl.h.to_text()}, mu={kl.mu}, defects={sorted(d.defect for d in subs)}, count={sol.count}"


def c7_bott_samelson():
    rng = random.Random(20240101)
    words = 0
    for desc in ("A2", "A3"):
        W = coxeter_system(desc)
        for word in W.iter_words(6):
            ybar = Expression(W, word)
            mod, grk = build_bs(ybar)
            if grk != grk_expected(len(word)) or m_chain_eval(mod.c_bot()) != mod.ring.one:
                return False, f"{desc} {word}: grk or m-chain"
            for e in itertools.product((0, 1), repeat=len(word)):
                if cll_degree(ybar, e) != decorate(ybar, e).defect:
                    return False, f"{desc} {word} {e}: cll degree"
            words += 1
        R = mod.ring
        for _ in range(100):
            f, g = R.random_poly(rng, 8), R.random_poly(rng, 8)
            for s in W.generators:
                if demazure(R, s, demazure(R, s, f)) != R.zero:
                    return False, f"{desc}: D_s^2 != 0"
                if demazure(R, s, f * g) != demazure(R, s, f) * g + R.act(s, f) * demazure(R, s, g):
                    return False, f"{desc}: twisted Leibniz"
    W = coxeter_system("A3")
    for _ in range(100):
        word = tuple(rng.choice(W.generators) for _ in range(rng.randint(0, 6)))
        mod, _ = build_bs(Expression(W, word))
        R = mod.ring
        x = mod.random_element(rng, 2)
        f, g = R.random_poly(rng, 2, 2), R.random_poly(rng, 2, 2)
        if left_act(f * g, x) != left_act(f, left_act(g, x)):
            return False, f"{word}: not an action"
        if left_act(f, x.right_act(g)) != left_act(f, x).right_act(g):
            return False, f"{word}: left and right actions do not commute"
    return True, f"{words} expressions, 200 random polynomials, 100 action triples"


def _cli(argv):
    out, err = io.StringIO(), io.StringIO()
    return run(argv, stdout=out, stderr=err), out.getvalue(), err.getvalue()


def c8_cli_and_cache():
    argv = [sys.executable, "-m", "deodhar_lab.cli", "identity-check", "--group", "A3", "--max-len", "4", "--json", "--no-timing"]
    outs = []
    for seed in ("1", "2"):
        env = dict(os.environ, PYTHONHASHSEED=seed)
        res = subprocess.run(argv, capture_output=True, env=env)
        if res.returncode != 0:
            return False, "identity-check failed"
        outs.append(res.stdout)
    if outs[0] != outs[1]:
        return False, "JSON differs between runs"

    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "a3.klc"
        W = coxeter_system("A3")
        H = HeckeAlgebra(W)
        for y in W.elements(6):
            H.kl_element(y)
        save_kl_cache(path, H)
        fresh = HeckeAlgebra(coxeter_system("A3"))
        load_kl_cache(path, fresh, verify=True)
        before = {W.format_word(k): v.to_text() for k, v in H.kl_table().items()}
        after = {fresh.W.format_word(k): v.to_text() for k, v in fresh.kl_table().items()}
        if before != after or len(after) != 24:
            return False, "round trip changed the table"

        code, _, err = _cli(["klpoly", "--group", "A2", "--x", "e", "--y", "1", "--cache", str(path)])
        if code != EXIT_USAGE or "'A3'" not in err:
            return False, "descriptor mismatch not reported"
        lines = path.read_text().splitlines()
        lines[7] = lines[7].split("\t")[0]
        path.write_text("\n".join(lines) + "\n")
        try:
            load_kl_cache(path, HeckeAlgebra(coxeter_system("A3")))
            return False, "corruption not detected"
        except CacheError as exc:
            if "line 8" not in str(exc):
                return False, f"corruption message lacks the line: {exc}"
        code, _, err = _cli(["klpoly", "--group", "A3", "--x", "e", "--y", "1", "--cache", str(path)])
        if code != EXIT_USAGE:
            return False, "CLI accepted a corrupt cache"
    return True, "byte-identical JSON, 24-element round trip, mismatch and line-8 corruption reported"


CRITERIA = [
    (1, "Deodhar identity sweeps", c1_identity_sweep, 120),
    (2, "KL self-consistency", c2_kl_self_consistency, 30),
    (3, "gdim D over all reduced words (A3)", c3_gdim_over_reduced_words, 120),
    (4, "hom lemma dimensions", c4_lemma_hom, 10),
    (5, "problem census", c5_problem_census, 60),
    (6, "A3 golden values", c6_golden_values, 10),
    (7, "Bott-Samelson layer", c7_bott_samelson, 60),
    (8, "CLI and cache", c8_cli_and_cache, 10),
]


def evaluate(number: int) -> tuple[bool, str]:
    _, name, fn, budget = CRITERIA[number - 1]
    t0 = time.perf_counter()
    ok, detail = fn()
    dt = time.perf_counter() - t0
    within = dt <= budget
    verdict = "PASS" if ok and within else "FAIL"
    line = f"[{verdict}] criterion {number}: {name} ({dt:.1f}s, budget {budget}s) {detail}"
    if ok and not within:
        line += " [over time budget]"
    return ok and within, line


# Criterion 3 asks for word independence of gdim D, which does not hold: the
# defect generating function is the h_x coefficient of the product b_{s_1}...b_{s_m},
# and that product changes with the word (b1 b2 b1 = b_121 + b_1, b2 b1 b2 = b_121 + b_2).
_KNOWN_FALSE = {3: "gdim D depends on the reduced word; see the criterion detail line"}


def _params():
    for n, *_ in CRITERIA:
        marks = [pytest.mark.xfail(strict=True, reason=_KNOWN_FALSE[n])] if n in _KNOWN_FALSE else []
        yield pytest.param(n, id=f"c{n}", marks=marks)


@pytest.mark.parametrize("number", list(_params()))
def test_acceptance(number, acceptance_log):
    ok, line = evaluate(number)
    print(line)
    acceptance_log.append(line)
    assert ok, line


if __name__ == "__main__":
    results = [evaluate(n) for n, *_ in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
