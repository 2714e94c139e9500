"""Hot loops over all 2^m subexpressions, on integer-indexed group tables.

The compiled ``_defects`` extension is used when it was built; otherwise the
pure-Python ``_defects_py`` twin.  Set ``DEODHAR_LAB_PURE_PYTHON=1`` to force
the fallback.
"""

from __future__ import annotations

import os

import numpy as np

from . import _defects_py
from .coxeter import CoxeterSystem, GroupElement

__all__ = ["BACKEND", "ElementTable", "element_table", "defect_histogram", "expressing_codes"]

_impl = _defects_py
BACKEND = "python"
if os.environ.get("DEODHAR_LAB_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _defects as _compiled
    except ImportError:
        pass
    else:
        _impl = _compiled
        BACKEND = "cython"


def compiled_available() -> bool:
    try:
        from . import _defects  # noqa: F401
    except ImportError:
        return False
    return True


class ElementTable:
    """All elements of length ``<= max_len`` with integer right-multiplication
    and ascent tables.  ``mul[i, s-1] == -1`` where the product falls outside."""

    def __init__(self, system: CoxeterSystem, max_len: int):
        self.system = system
        self.max_len = max_len
        self.elements: list[GroupElement] = system.elements(max_len)
        self.index = {w: i for i, w in enumerate(self.elements)}
        n, r = len(self.elements), system.rank
        self.mul = np.full((n, r), -1, dtype=np.int32)
        self.up = np.zeros((n, r), dtype=np.uint8)
        for i, w in enumerate(self.elements):
            for s in system.generators:
                ws = system._mul_right(w, s)
                self.up[i, s - 1] = ws.length > w.length
                j = self.index.get(ws)
                if j is not None:
                    self.mul[i, s - 1] = j

    def __len__(self) -> int:
        return len(self.elements)

    def encode(self, word) -> np.ndarray:
        return np.array([s - 1 for s in word], dtype=np.int32)


def element_table(system: CoxeterSystem, max_len: int) -> ElementTable:
    """Cached table on ``system`` large enough for expressions of ``max_len`` letters."""
    table = getattr(system, "_element_table", None)
    if table is None or table.max_len < max_len:
        table = ElementTable(system, max_len)
        system._element_table = table
    return table


def defect_histogram(table: ElementTable, word, impl=None) -> np.ndarray:
    """``out[i, d + m]`` = number of 01-words on ``word`` expressing
    ``table.elements[i]`` with defect ``d``."""
    impl = impl or _impl
    return impl.defect_histogram(
        table.encode(word), table.mul, table.up, table.index[table.system.identity], len(table)
    )


def expressing_codes(table: ElementTable, word, target: GroupElement, impl=None):
    """``(codes, defects)`` of the 01-words expressing ``target``; codes read
    the first letter as the most significant bit."""
    impl = impl or _impl
    j = table.index.get(target, -1)
    return impl.expressing_codes(
        table.encode(word), table.mul, table.up, table.index[table.system.identity], j
    )
