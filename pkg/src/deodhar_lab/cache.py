"""Plain-text persistence of the Kazhdan-Lusztig memo table.

Format::

    KLCACHE v1 <descriptor>
    <y word>\t<x word>\t<h_{x,y} as laurent text>
    ...
"""

from __future__ import annotations

import os
from pathlib import Path

from .coxeter import CoxeterError, GroupElement
from .hecke import HeckeAlgebra, HeckeElt
from .laurent import ONE, LaurentPoly

__all__ = ["CacheError", "save_kl_cache", "load_kl_cache", "HEADER"]

HEADER = "KLCACHE v1"


class CacheError(ValueError):
    pass


def save_kl_cache(path: str | os.PathLike, H: HeckeAlgebra) -> int:
    """Write every memoized ``b_y``; returns the number of records."""
    W = H.W
    lines = [f"{HEADER} {W.descriptor}"]
    for y in sorted(H.kl_table(), key=W.sort_key):
        b = H.kl_table()[y]
        yw = W.format_word(y)
        for x in reversed(b.support()):
            lines.append(f"{yw}\t{W.format_word(x)}\t{b.coeff(x).to_text()}")
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text("\n".join(lines) + "\n", encoding="utf-8")
    tmp.replace(path)
    return len(lines) - 1


def load_kl_cache(path: str | os.PathLike, H: HeckeAlgebra, *, verify: bool = False) -> int:
    """Merge a cache file into ``H``'s memo table; returns the number of
    ``b_y`` loaded.  With ``verify`` each ``b_y`` is re-checked against the
    two defining conditions."""
    W = H.W
    text = Path(path).read_text(encoding="utf-8")
    lines = text.splitlines()
    if text and not text.endswith("\n"):
        raise CacheError(f"{path}: line {len(lines)}: truncated record (no trailing newline)")
    if not lines or not lines[0].startswith(HEADER + " "):
        raise CacheError(f"{path}: line 1: missing '{HEADER} <descriptor>' header")
    descriptor = lines[0][len(HEADER) + 1 :].strip()
    if descriptor != W.descriptor:
        raise CacheError(
            f"{path}: cache is for {descriptor!r}, but the loaded group is {W.descriptor!r}"
        )
    table: dict[GroupElement, dict[GroupElement, LaurentPoly]] = {}
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        fields = line.split("\t")
        if len(fields) != 3:
            raise CacheError(f"{path}: line {lineno}: expected 3 tab-separated fields, got {len(fields)}")
        try:
            y = W.parse_element(fields[0])
            x = W.parse_element(fields[1])
            h = LaurentPoly.from_text(fields[2])
        except (CoxeterError, ValueError) as exc:
            raise CacheError(f"{path}: line {lineno}: {exc}") from None
        if len(W.parse_word(fields[0])) != y.length:
            raise CacheError(f"{path}: line {lineno}: word {fields[0]!r} is not reduced")
        table.setdefault(y, {})[x] = h
    loaded = {}
    for y, terms in table.items():
        b = HeckeElt(W, terms)
        if b.coeff(y) != ONE:
            raise CacheError(f"{path}: b_{{{y}}} is missing its top coefficient 1")
        # h_{x,y} is nonzero exactly on the Bruhat interval below y
        if set(b.support()) != set(W.lower_interval(y)):
            raise CacheError(f"{path}: b_{{{y}}} does not cover the interval below {y}")
        if verify:
            _verify(H, y, b, path)
        loaded[y] = b
    H.load_kl_table(loaded)
    return len(loaded)


def _verify(H: HeckeAlgebra, y: GroupElement, b: HeckeElt, path) -> None:
    if H.bar(b) != b:
        raise CacheError(f"{path}: b_{{{y}}} is not bar-invariant")
    for x, c in b.items():
        if x != y and not c.in_v_zv():
            raise CacheError(f"{path}: coefficient of h_{{{x}}} in b_{{{y}}} is not in vZ[v]")
