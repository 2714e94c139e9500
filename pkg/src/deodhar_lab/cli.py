"""Command-line front end.

Every subcommand prints either a human-readable table or one JSON object
with keys ``group, command, inputs, result, checks, elapsed_ms``.  Exit codes:
0 success, 1 a check failed, 2 usage error, 3 resource cap hit.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import kernels
from .bottsamelson import build_bs, cll_degree, grk_expected, m_chain_eval
from .cache import CacheError, load_kl_cache, save_kl_cache
from .coxeter import CoxeterError, ResourceLimitError, coxeter_system
from .deodhar import (
    Expression,
    IdentityError,
    SolvabilityError,
    bs_character,
    decorate,
    enumerate_subexpr,
    gdim_D,
    subset_solutions,
)
from .hecke import hecke_algebra
from .sweeps import classify_census, identity_sweep, lemma_hom_sweep

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3

CACHE_ENV = "DEODHAR_LAB_CACHE"


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    group: str
    command: str
    args: dict
    output: str = "table"
    cache: str | None = None
    verify_cache: bool = False
    len_cap: int = 12
    max_subexpr: int = 24
    max_bs: int = 10
    max_elements: int = 10**6

    def __post_init__(self):
        for name in ("len_cap", "max_subexpr", "max_bs", "max_elements"):
            if getattr(self, name) <= 0:
                raise UsageError(f"--{name.replace('_', '-')} must be positive")


@dataclass
class Outcome:
    result: dict
    checks: list[dict] = field(default_factory=list)
    table: list[str] = field(default_factory=list)

    def check(self, name: str, ok: bool) -> None:
        self.checks.append({"name": name, "ok": bool(ok)})


# ---------------------------------------------------------------------------
# subcommands


def _cmd_klpoly(W, cfg: RunConfig) -> Outcome:
    x = W.parse_element(cfg.args["x"])
    y = W.parse_element(cfg.args["y"])
    H = hecke_algebra(W)
    kl = H.kl_poly(x, y)
    leq = W.bruhat_leq(x, y)
    out = Outcome(
        {
            "x": W.format_word(x),
            "y": W.format_word(y),
            "bruhat_leq": leq,
            "h": kl.h.to_text(),
            "p": kl.p.to_text(),
            "mu": kl.mu,
        }
    )
    out.check("h vanishes off the Bruhat interval", leq or kl.h.is_zero())
    out.check("h has non-negative coefficients", kl.h.in_nonneg_poly())
    out.table = [
        f"x = {W.format_word(x)}, y = {W.format_word(y)}",
        f"h_{{x,y}} = {kl.h.pretty()}    [{kl.h.to_text()}]",
        f"p_{{x,y}} = {kl.p.pretty('q')}    [{kl.p.to_text()}]",
        f"mu = {kl.mu}",
    ]
    return out


def _cmd_deodhar(W, cfg: RunConfig) -> Outcome:
    ybar = Expression.parse(W, cfg.args["word"])
    x = W.parse_element(cfg.args["x"])
    cap = cfg.max_subexpr
    rows = [d.as_dict() for d in enumerate_subexpr(ybar, x, max_letters=cap)]
    gdim = gdim_D(x, ybar, check=False, max_letters=cap)
    expected = bs_character(ybar).coeff(x)
    result = {
        "expression": str(ybar),
        "reduced": ybar.reduced,
        "x": W.format_word(x),
        "subexpressions": rows,
        "gdim": gdim.to_text(),
        "h": None,
        "solutions": None,
    }
    out = Outcome(result)
    out.check("gdim D equals the character coefficient", gdim == expected)
    out.table = [f"{'bits':<{max(len(ybar), 4)}}  {'decorations':<{3 * len(ybar)}}  element  defect"]
    for r in rows:
        out.table.append(
            f"{r['bits']:<{max(len(ybar), 4)}}  {r['decorations']:<{3 * len(ybar)}}  {r['element']:<7}  {r['defect']}"
        )
    out.table.append(f"gdim D = {gdim.pretty()}    [{gdim.to_text()}]")
    if ybar.reduced:
        sol = subset_solutions(x, ybar, max_letters=cap)
        result["h"] = sol.h.to_text()
        result["solutions"] = sol.as_dict()
        out.check("h_{x,y} <= gdim D coefficientwise", all(c <= n for n, c in sol.table.values()))
        out.table.append(f"h_{{x,y}} = {sol.h.pretty()}    [{sol.h.to_text()}]")
        out.table.append("defect  n_d  c_d")
        for d, (n, c) in sol.table.items():
            out.table.append(f"{d:>6}  {n:>3}  {c:>3}")
        out.table.append(f"solutions = {sol.count}, forced = {str(sol.forced).lower()}")
        out.table.append("witness = " + (", ".join(result["solutions"]["witness"]) or "{}"))
    else:
        out.table.append("expression is not reduced: no subset census")
    return out


def _cmd_identity(W, cfg: RunConfig) -> Outcome:
    L = _sweep_len(cfg)
    rep = identity_sweep(W, L, max_letters=cfg.max_subexpr)
    out = Outcome({"max_len": L, **rep.as_dict()})
    out.check("Deodhar identity on every expression", rep.ok)
    out.table = [f"expressions checked: {rep.checked}", f"failures: {len(rep.failures)}"]
    out.table += [f"  {f.as_dict()}" for f in rep.failures]
    return out


def _cmd_lemma_hom(W, cfg: RunConfig) -> Outcome:
    L = _sweep_len(cfg)
    reports = lemma_hom_sweep(W, L)
    ok = all(r.ok for r in reports)
    out = Outcome(
        {
            "max_len": L,
            "pairs": len(reports),
            "reports": [{"x": str(r.x), "s": r.s, "dims": list(r.dims)} for r in reports],
        }
    )
    out.check("all three hom spaces one-dimensional", ok)
    out.table = [f"pairs (x, s) with x < xs: {len(reports)}"]
    out.table += [f"  x = {r.x:<12} s = {r.s}  dims = {r.dims}" for r in reports if not r.ok]
    out.table.append("all (1, 1, 1)" if ok else "FAILURES above")
    return out


def _cmd_classify(W, cfg: RunConfig) -> Outcome:
    L = _sweep_len(cfg)
    census = classify_census(W, L)
    out = Outcome({"max_len": L, **census.as_dict()})
    out.table = [
        f"pairs x <= y with l(y) <= {L}: {census.pairs}",
        f"rationally smooth: {census.rationally_smooth}",
        f"dihedral: {census.dihedral}, universal: {census.universal}",
    ]
    out.table += [f"  not smooth: x = {x}, y = {y}" for x, y in census.singular]
    return out


def _cmd_bs(W, cfg: RunConfig) -> Outcome:
    ybar = Expression.parse(W, cfg.args["word"])
    module, grk = build_bs(ybar, max_letters=cfg.max_bs)
    cbot = module.c_bot()
    image = m_chain_eval(cbot)
    rows = []
    cll_ok = True
    for label in module.labels:
        dec = decorate(ybar, label)
        try:
            deg = cll_degree(ybar, label)
        except IdentityError:
            deg, cll_ok = None, False
        rows.append(
            {
                "bits": dec.bit_string,
                "decorations": dec.decoration_string,
                "cll_degree": deg,
                "defect": dec.defect,
            }
        )
    out = Outcome(
        {
            "expression": str(ybar),
            "grk": grk.to_text(),
            "c_bot_degree": cbot.degree(),
            "m_chain_c_bot": image.to_text(),
            "m_chain_degree_shift": len(ybar),
            "rows": rows,
        }
    )
    out.check("grk equals (v + v^-1)^m", grk == grk_expected(len(ybar)))
    out.check("m-chain sends c_bot to 1", image == module.ring.one)
    out.check("light leaf degree equals defect", cll_ok)
    out.table = [
        f"expression: {ybar}",
        f"grk = {grk.pretty()}    [{grk.to_text()}]",
        f"m-chain(c_bot) = {image.to_text()}  (degree {cbot.degree()} -> 0)",
        "bits  decorations  cll_degree  defect",
    ]
    out.table += [f"{r['bits']:<5} {r['decorations']:<12} {r['cll_degree']:>10}  {r['defect']:>6}" for r in rows]
    return out


COMMANDS = {
    "klpoly": _cmd_klpoly,
    "deodhar": _cmd_deodhar,
    "identity-check": _cmd_identity,
    "lemma-hom": _cmd_lemma_hom,
    "classify": _cmd_classify,
    "bs": _cmd_bs,
}


def _sweep_len(cfg: RunConfig) -> int:
    L = cfg.args["max_len"]
    if L < 0:
        raise UsageError("--max-len must be non-negative")
    if L > cfg.len_cap:
        raise ResourceLimitError(f"--max-len {L} exceeds --len-cap {cfg.len_cap}")
    return L


# ---------------------------------------------------------------------------
# argument parsing and driver


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--group", "-g", required=True, help='e.g. "A3", "At2", "I2(7)", "U3"')
    common.add_argument("--output", "-o", choices=("table", "json"), default="table")
    common.add_argument("--json", dest="output", action="store_const", const="json")
    common.add_argument("--cache", default=None, help=f"KL cache file (default ${CACHE_ENV})")
    common.add_argument("--verify-cache", action="store_true")
    common.add_argument("--len-cap", type=int, default=12, help="largest --max-len accepted")
    common.add_argument("--max-subexpr", type=int, default=24, help="largest expression enumerated")
    common.add_argument("--max-bs", type=int, default=10, help="largest Bott-Samelson expression")
    common.add_argument("--max-elements", type=int, default=10**6)
    common.add_argument("--no-timing", action="store_true", help="report elapsed_ms as 0")

    parser = _Parser(prog="deodhar-lab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = sub.add_parser("klpoly", parents=[common], help="h_{x,y}, p_{x,y} and mu")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p = sub.add_parser("deodhar", parents=[common], help="subexpression table and subset census")
    p.add_argument("--word", required=True)
    p.add_argument("--x", required=True)
    for name, text in (
        ("identity-check", "Deodhar identity on all expressions"),
        ("lemma-hom", "hom dimensions for all x < xs"),
        ("classify", "rationally smooth census"),
    ):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--max-len", type=int, required=True)
    p = sub.add_parser("bs", parents=[common], help="Bott-Samelson module data")
    p.add_argument("--word", required=True)
    return parser


def parse_config(argv) -> tuple[RunConfig, bool]:
    ns = build_parser().parse_args(argv)
    skip = {
        "group", "command", "output", "cache", "verify_cache", "len_cap",
        "max_subexpr", "max_bs", "max_elements", "no_timing",
    }
    args = {k: v for k, v in vars(ns).items() if k not in skip}
    cfg = RunConfig(
        group=ns.group,
        command=ns.command,
        args=args,
        output=ns.output,
        cache=ns.cache if ns.cache is not None else os.environ.get(CACHE_ENV) or None,
        verify_cache=ns.verify_cache,
        len_cap=ns.len_cap,
        max_subexpr=ns.max_subexpr,
        max_bs=ns.max_bs,
        max_elements=ns.max_elements,
    )
    return cfg, ns.no_timing


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    start = time.perf_counter()
    try:
        cfg, no_timing = parse_config(argv)
        W = coxeter_system(cfg.group, max_elements=cfg.max_elements)
        H = hecke_algebra(W)
        if cfg.cache and Path(cfg.cache).exists():
            load_kl_cache(cfg.cache, H, verify=cfg.verify_cache)
        outcome = COMMANDS[cfg.command](W, cfg)
        if cfg.cache:
            save_kl_cache(cfg.cache, H)
    except UsageError as exc:
        print(f"usage error: {exc}", file=stderr)
        return EXIT_USAGE
    except (CoxeterError, CacheError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=stderr)
        return EXIT_CAP
    except (IdentityError, SolvabilityError) as exc:
        print(f"check failed: {exc}", file=stderr)
        return EXIT_CHECK
    elapsed = 0 if no_timing else round((time.perf_counter() - start) * 1000)
    if cfg.output == "json":
        doc = {
            "group": W.descriptor,
            "command": cfg.command,
            "inputs": cfg.args,
            "result": outcome.result,
            "checks": outcome.checks,
            "elapsed_ms": elapsed,
        }
        stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        stdout.write(f"group {W.descriptor} · {cfg.command} · kernel {kernels.BACKEND}\n")
        stdout.write("\n".join(outcome.table) + "\n")
        for c in outcome.checks:
            stdout.write(f"[{'PASS' if c['ok'] else 'FAIL'}] {c['name']}\n")
    return EXIT_OK if all(c["ok"] for c in outcome.checks) else EXIT_CHECK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
