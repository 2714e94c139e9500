"""Coxeter groups with exact normal forms.

Three backends cover the groups we care about:

* ``CartanSystem``: a generalized Cartan matrix (finite and affine Weyl
  groups).  An element is the integer matrix of its action on simple-root
  coordinates, stored column by column together with its inverse.
* ``DihedralSystem``: ``I2(m)`` with ``m`` finite or infinite.  Elements are
  ``(first letter, length)`` with the longest element stored once.
* ``UniversalSystem``: all ``m_st`` infinite.  Elements are their unique
  reduced word.

Generators are the integers ``1..rank`` everywhere.  Use
:func:`coxeter_system` to build a system from a descriptor such as ``"A3"``,
``"At2"``, ``"I2(7)"``, ``"I2(inf)"`` or ``"U3"``.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, Sequence

__all__ = [
    "CoxeterError",
    "ResourceLimitError",
    "GroupElement",
    "CoxeterSystem",
    "CartanSystem",
    "DihedralSystem",
    "UniversalSystem",
    "coxeter_system",
    "cartan_matrix",
    "INF",
]

INF = 0  # sentinel for an infinite m_st in Coxeter matrices

DEFAULT_MAX_ELEMENTS = 10**6
DEFAULT_MAX_REDUCED_WORDS = 10**5


class CoxeterError(ValueError):
    """Bad descriptor, generator or word."""


class ResourceLimitError(RuntimeError):
    """A configured size cap was exceeded."""


class GroupElement:
    """An element of a Coxeter group.

    Equality and hashing use only the canonical ``key``; ``length`` is cached
    at construction.  ``aux`` carries backend data that is a function of the
    key (the inverse matrix for Cartan systems).
    """

    __slots__ = ("system", "key", "length", "aux", "_hash")

    def __init__(self, system: "CoxeterSystem", key, length: int, aux=None):
        self.system = system
        self.key = key
        self.length = length
        self.aux = aux
        self._hash = hash(key)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.key == other.key

    def __hash__(self) -> int:
        return self._hash

    @property
    def word(self) -> tuple[int, ...]:
        return self.system.word(self)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return self.system.multiply(self, other)

    def __repr__(self) -> str:
        return f"<{self.system.descriptor}: {self.system.format_word(self)}>"

    def __str__(self) -> str:
        return self.system.format_word(self)


class CoxeterSystem:
    """Common machinery; backends implement the ``_mul_right``/``_mul_left``
    primitives, the descent tests and ``identity``."""

    kind: str = ""

    def __init__(
        self,
        descriptor: str,
        rank: int,
        *,
        max_elements: int = DEFAULT_MAX_ELEMENTS,
        max_reduced_words: int = DEFAULT_MAX_REDUCED_WORDS,
    ):
        if rank < 1:
            raise CoxeterError("rank must be positive")
        self.descriptor = descriptor
        self.rank = rank
        self.generators: tuple[int, ...] = tuple(range(1, rank + 1))
        self.max_elements = max_elements
        self.max_reduced_words = max_reduced_words
        self._bruhat_memo: dict[tuple, bool] = {}
        self._word_memo: dict[GroupElement, tuple[int, ...]] = {}

    # -- backend primitives ----------------------------------------------

    @property
    def identity(self) -> GroupElement:
        raise NotImplementedError

    def is_right_descent(self, w: GroupElement, s: int) -> bool:
        raise NotImplementedError

    def is_left_descent(self, w: GroupElement, s: int) -> bool:
        raise NotImplementedError

    def _mul_right(self, w: GroupElement, s: int) -> GroupElement:
        raise NotImplementedError

    def _mul_left(self, w: GroupElement, s: int) -> GroupElement:
        raise NotImplementedError

    def inverse(self, w: GroupElement) -> GroupElement:
        raise NotImplementedError

    def coxeter_matrix(self) -> list[list[int]]:
        """Matrix of orders ``m_st``; :data:`INF` (0) marks infinite order."""
        raise NotImplementedError

    @property
    def is_crystallographic(self) -> bool:
        return False

    # -- group law ----------------------------------------------------------

    def check_generator(self, s: int) -> int:
        if not isinstance(s, int) or not 1 <= s <= self.rank:
            raise CoxeterError(f"{s!r} is not a generator of {self.descriptor}")
        return s

    def mul_gen(self, w: GroupElement, s: int, side: str = "right") -> GroupElement:
        self.check_generator(s)
        if side == "right":
            return self._mul_right(w, s)
        if side == "left":
            return self._mul_left(w, s)
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")

    def gen(self, s: int) -> GroupElement:
        return self.mul_gen(self.identity, s)

    def element(self, word: Iterable[int]) -> GroupElement:
        """Product of a (not necessarily reduced) word."""
        w = self.identity
        for s in word:
            w = self.mul_gen(w, s)
        return w

    def multiply(self, x: GroupElement, y: GroupElement) -> GroupElement:
        for s in self.word(y):
            x = self._mul_right(x, s)
        return x

    def right_descents(self, w: GroupElement) -> frozenset[int]:
        return frozenset(s for s in self.generators if self.is_right_descent(w, s))

    def left_descents(self, w: GroupElement) -> frozenset[int]:
        return frozenset(s for s in self.generators if self.is_left_descent(w, s))

    def length_and_descents(self, w: GroupElement) -> tuple[int, frozenset[int], frozenset[int]]:
        return w.length, self.left_descents(w), self.right_descents(w)

    def first_right_descent(self, w: GroupElement) -> int | None:
        for s in self.generators:
            if self.is_right_descent(w, s):
                return s
        return None

    # -- words ----------------------------------------------------------------

    def word(self, w: GroupElement) -> tuple[int, ...]:
        """Canonical reduced word: the lexicographically least one, built by
        always stripping the smallest left descent."""
        cached = self._word_memo.get(w)
        if cached is not None:
            return cached
        letters = []
        u = w
        while u.length:
            s = next(t for t in self.generators if self.is_left_descent(u, t))
            letters.append(s)
            u = self._mul_left(u, s)
        result = tuple(letters)
        self._word_memo[w] = result
        return result

    def reduced_words(self, w: GroupElement) -> set[tuple[int, ...]]:
        memo: dict[GroupElement, set[tuple[int, ...]]] = {}

        def rec(u: GroupElement) -> set[tuple[int, ...]]:
            if u.length == 0:
                return {()}
            if u in memo:
                return memo[u]
            out: set[tuple[int, ...]] = set()
            for s in self.generators:
                if self.is_right_descent(u, s):
                    out.update(word + (s,) for word in rec(self._mul_right(u, s)))
                    if len(out) > self.max_reduced_words:
                        raise ResourceLimitError(
                            f"more than {self.max_reduced_words} reduced words"
                        )
            memo[u] = out
            return out

        return rec(w)

    def is_reduced(self, word: Sequence[int]) -> bool:
        return self.element(word).length == len(word)

    def parse_word(self, text: str) -> tuple[int, ...]:
        text = text.strip()
        if text in ("", "e"):
            return ()
        try:
            letters = tuple(int(tok) for tok in text.replace(",", " ").split())
        except ValueError:
            raise CoxeterError(f"malformed word {text!r}") from None
        for s in letters:
            self.check_generator(s)
        return letters

    def parse_element(self, text: str) -> GroupElement:
        return self.element(self.parse_word(text))

    def format_word(self, w: GroupElement | Sequence[int]) -> str:
        word = self.word(w) if isinstance(w, GroupElement) else tuple(w)
        return " ".join(str(s) for s in word) if word else "e"

    def sort_key(self, w: GroupElement) -> tuple:
        return (w.length, self.word(w))

    # -- Bruhat order ---------------------------------------------------------

    def bruhat_leq(self, x: GroupElement, y: GroupElement) -> bool:
        """Bruhat order via the lifting property, memoized per system."""
        memo = self._bruhat_memo
        stack = []
        while True:
            if y.length == 0:
                result = x.length == 0
                break
            if x.length > y.length:
                result = False
                break
            if x.length == y.length:
                result = x == y
                break
            cached = memo.get((x, y))
            if cached is not None:
                result = cached
                break
            stack.append((x, y))
            s = self.first_right_descent(y)
            if self.is_right_descent(x, s):
                x = self._mul_right(x, s)
            y = self._mul_right(y, s)
        for pair in stack:
            memo[pair] = result
        return result

    def bruhat_lt(self, x: GroupElement, y: GroupElement) -> bool:
        return x != y and self.bruhat_leq(x, y)

    def lower_interval(self, w: GroupElement) -> list[GroupElement]:
        """All ``u <= w``, sorted by length then canonical word."""
        below = {self.identity}
        for s in self.word(w):
            below |= {self._mul_right(u, s) for u in below}
            if len(below) > self.max_elements:
                raise ResourceLimitError(f"Bruhat interval exceeds {self.max_elements} elements")
        return sorted(below, key=self.sort_key)

    # -- enumeration ----------------------------------------------------------

    def enumerate_elements(self, max_len: int) -> list[list[GroupElement]]:
        """Elements of length ``0..max_len`` grouped by length.

        Strata stop early for finite groups once they are exhausted.
        """
        if max_len < 0:
            raise ValueError("max_len must be non-negative")
        strata = [[self.identity]]
        total = 1
        while len(strata) <= max_len:
            nxt: dict[GroupElement, None] = {}
            for w in strata[-1]:
                for s in self.generators:
                    if not self.is_right_descent(w, s):
                        nxt[self._mul_right(w, s)] = None
            if not nxt:
                break
            total += len(nxt)
            if total > self.max_elements:
                raise ResourceLimitError(
                    f"enumeration of {self.descriptor} exceeds {self.max_elements} elements"
                )
            strata.append(sorted(nxt, key=self.sort_key))
        return strata

    def elements(self, max_len: int) -> list[GroupElement]:
        return [w for stratum in self.enumerate_elements(max_len) for w in stratum]

    def iter_words(self, max_len: int, min_len: int = 0) -> Iterator[tuple[int, ...]]:
        """All expressions (reduced or not) with length in ``[min_len, max_len]``,
        shorter first, lexicographic within a length."""
        import itertools

        for m in range(min_len, max_len + 1):
            yield from itertools.product(self.generators, repeat=m)

    # -- classification -------------------------------------------------------

    @property
    def is_dihedral(self) -> bool:
        return self.rank == 2

    @property
    def is_universal(self) -> bool:
        m = self.coxeter_matrix()
        return all(m[i][j] == INF for i in range(self.rank) for j in range(self.rank) if i != j)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.descriptor!r})"


# ---------------------------------------------------------------------------
# Cartan matrices


def _finite_cartan(letter: str, n: int) -> list[list[int]]:
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i: int, j: int, aij: int = -1, aji: int = -1) -> None:
        a[i - 1][j - 1] = aij
        a[j - 1][i - 1] = aji

    if letter == "A" and n >= 1:
        for i in range(1, n):
            link(i, i + 1)
    elif letter in "BC" and n >= 2:
        for i in range(1, n - 1):
            link(i, i + 1)
        if letter == "B":
            link(n - 1, n, -1, -2)
        else:
            link(n - 1, n, -2, -1)
    elif letter == "D" and n >= 4:
        for i in range(1, n - 1):
            link(i, i + 1)
        a[n - 2][n - 1] = a[n - 1][n - 2] = 0
        link(n - 2, n)
    elif letter == "E" and n in (6, 7, 8):
        link(1, 3)
        link(3, 4)
        link(2, 4)
        for i in range(4, n):
            link(i, i + 1)
    elif letter == "F" and n == 4:
        link(1, 2)
        link(2, 3, -2, -1)
        link(3, 4)
    elif letter == "G" and n == 2:
        link(1, 2, -1, -3)
    else:
        raise CoxeterError(f"no finite type {letter}{n}")
    return a


def _positive_roots(a: list[list[int]]) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Positive roots of a finite Cartan matrix, each paired with its coroot
    (both in simple coordinates)."""
    n = len(a)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    found = {r: r for r in simple}  # root -> coroot
    frontier = list(simple)
    while frontier:
        nxt = []
        for root in frontier:
            coroot = found[root]
            for j in range(n):
                pair = sum(a[j][k] * root[k] for k in range(n))
                new = list(root)
                new[j] -= pair
                new = tuple(new)
                if all(c >= 0 for c in new) and new not in found:
                    copair = sum(coroot[k] * a[k][j] for k in range(n))
                    newco = list(coroot)
                    newco[j] -= copair
                    found[new] = tuple(newco)
                    nxt.append(new)
        frontier = nxt
        if len(found) > 10**4:
            raise CoxeterError("root system is not finite")
    return list(found.items())


def _affine_cartan(letter: str, n: int) -> list[list[int]]:
    if letter == "A" and n == 1:
        return [[2, -2], [-2, 2]]
    fin = _finite_cartan(letter, n)
    theta, theta_co = max(_positive_roots(fin), key=lambda rc: sum(rc[0]))
    a = [row + [0] for row in fin] + [[0] * (n + 1)]
    for j in range(n):
        a[j][n] = -sum(theta[k] * fin[j][k] for k in range(n))
        a[n][j] = -sum(theta_co[k] * fin[k][j] for k in range(n))
    a[n][n] = 2
    return a


def cartan_matrix(label: str) -> list[list[int]]:
    m = re.fullmatch(r"(?:t([A-G])(\d+)|([A-G])t(\d+)|([A-G])(\d+))", label)
    if not m:
        raise CoxeterError(f"unknown Cartan type {label!r}")
    if m.group(5):
        return _finite_cartan(m.group(5), int(m.group(6)))
    letter = m.group(1) or m.group(3)
    n = int(m.group(2) or m.group(4))
    return _affine_cartan(letter, n)


def _order_from_cartan(aij: int, aji: int) -> int:
    p = aij * aji
    return {0: 2, 1: 3, 2: 4, 3: 6}.get(p, INF)


# ---------------------------------------------------------------------------
# Backends


class CartanSystem(CoxeterSystem):
    """Crystallographic backend; ``key`` is the tuple of columns ``w(alpha_j)``."""

    kind = "crystallographic"

    def __init__(self, descriptor: str, cartan: Sequence[Sequence[int]], **caps):
        a = [list(map(int, row)) for row in cartan]
        n = len(a)
        if any(len(row) != n for row in a):
            raise CoxeterError("Cartan matrix must be square")
        for i in range(n):
            if a[i][i] != 2:
                raise CoxeterError("Cartan matrix diagonal must be 2")
            for j in range(n):
                if i != j:
                    if a[i][j] > 0:
                        raise CoxeterError("off-diagonal Cartan entries must be <= 0")
                    if (a[i][j] == 0) != (a[j][i] == 0):
                        raise CoxeterError("a_ij = 0 iff a_ji = 0")
        super().__init__(descriptor, n, **caps)
        self.cartan = tuple(tuple(row) for row in a)
        unit = tuple(tuple(int(i == j) for i in range(n)) for j in range(n))
        self._identity = GroupElement(self, unit, 0, unit)

    @property
    def is_crystallographic(self) -> bool:
        return True

    @property
    def identity(self) -> GroupElement:
        return self._identity

    def coxeter_matrix(self) -> list[list[int]]:
        a = self.cartan
        n = self.rank
        return [
            [1 if i == j else _order_from_cartan(a[i][j], a[j][i]) for j in range(n)]
            for i in range(n)
        ]

    @staticmethod
    def _negative(col: tuple[int, ...]) -> bool:
        for c in col:
            if c:
                return c < 0
        raise AssertionError("zero root")

    def is_right_descent(self, w: GroupElement, s: int) -> bool:
        return self._negative(w.key[s - 1])

    def is_left_descent(self, w: GroupElement, s: int) -> bool:
        return self._negative(w.aux[s - 1])

    def _reflect_columns(self, cols, s: int):
        # column operation: right multiplication by s
        i = s - 1
        ci = cols[i]
        row = self.cartan[i]
        out = []
        for j, cj in enumerate(cols):
            if j == i:
                out.append(tuple(-c for c in ci))
            elif row[j]:
                f = row[j]
                out.append(tuple(x - f * y for x, y in zip(cj, ci)))
            else:
                out.append(cj)
        return tuple(out)

    def _reflect_roots(self, cols, s: int):
        # apply s to every column: left multiplication by s
        i = s - 1
        row = self.cartan[i]
        out = []
        for col in cols:
            pair = sum(r * c for r, c in zip(row, col) if r)
            if pair:
                col = col[:i] + (col[i] - pair,) + col[i + 1 :]
            out.append(col)
        return tuple(out)

    def _mul_right(self, w: GroupElement, s: int) -> GroupElement:
        step = -1 if self.is_right_descent(w, s) else 1
        return GroupElement(
            self, self._reflect_columns(w.key, s), w.length + step, self._reflect_roots(w.aux, s)
        )

    def _mul_left(self, w: GroupElement, s: int) -> GroupElement:
        step = -1 if self.is_left_descent(w, s) else 1
        return GroupElement(
            self, self._reflect_roots(w.key, s), w.length + step, self._reflect_columns(w.aux, s)
        )

    def inverse(self, w: GroupElement) -> GroupElement:
        return GroupElement(self, w.aux, w.length, w.key)

    def matrix(self, w: GroupElement) -> list[list[int]]:
        """The action on simple-root coordinates as a row-major matrix."""
        n = self.rank
        return [[w.key[j][i] for j in range(n)] for i in range(n)]


class DihedralSystem(CoxeterSystem):
    """``I2(m)``; ``m=None`` means infinite order.

    ``key`` is ``(first letter, length)``; identity and the longest element
    use first letter ``0``.
    """

    kind = "dihedral"

    def __init__(self, descriptor: str, m: int | None, **caps):
        if m is not None and m < 2:
            raise CoxeterError("dihedral order must be at least 2")
        super().__init__(descriptor, 2, **caps)
        self.m = m
        self._identity = GroupElement(self, (0, 0), 0)

    @property
    def identity(self) -> GroupElement:
        return self._identity

    def coxeter_matrix(self) -> list[list[int]]:
        m = INF if self.m is None else self.m
        return [[1, m], [m, 1]]

    def _make(self, first: int, length: int) -> GroupElement:
        if length == 0 or length == self.m:
            first = 0
        return GroupElement(self, (first, length), length)

    @staticmethod
    def _last(first: int, length: int) -> int:
        return first if length % 2 else 3 - first

    def is_right_descent(self, w: GroupElement, s: int) -> bool:
        first, k = w.key
        if k == 0:
            return False
        if first == 0:
            return True
        return self._last(first, k) == s

    def is_left_descent(self, w: GroupElement, s: int) -> bool:
        first, k = w.key
        return k > 0 and (first == 0 or first == s)

    def _mul_right(self, w: GroupElement, s: int) -> GroupElement:
        first, k = w.key
        if k == 0:
            return self._make(s, 1)
        if first == 0:
            # longest element: drop a final s
            other = 3 - s
            start = other if (k - 1) % 2 else s
            return self._make(start, k - 1)
        if self._last(first, k) == s:
            return self._make(first, k - 1)
        return self._make(first, k + 1)

    def inverse(self, w: GroupElement) -> GroupElement:
        first, k = w.key
        if first == 0:
            return w
        return self._make(self._last(first, k), k)

    def _mul_left(self, w: GroupElement, s: int) -> GroupElement:
        return self.inverse(self._mul_right(self.inverse(w), s))


class UniversalSystem(CoxeterSystem):
    """Universal Coxeter group; ``key`` is the unique reduced word."""

    kind = "universal"

    def __init__(self, descriptor: str, rank: int, **caps):
        super().__init__(descriptor, rank, **caps)
        self._identity = GroupElement(self, (), 0)

    @property
    def identity(self) -> GroupElement:
        return self._identity

    def coxeter_matrix(self) -> list[list[int]]:
        n = self.rank
        return [[1 if i == j else INF for j in range(n)] for i in range(n)]

    def is_right_descent(self, w: GroupElement, s: int) -> bool:
        return bool(w.key) and w.key[-1] == s

    def is_left_descent(self, w: GroupElement, s: int) -> bool:
        return bool(w.key) and w.key[0] == s

    def _mul_right(self, w: GroupElement, s: int) -> GroupElement:
        if w.key and w.key[-1] == s:
            return GroupElement(self, w.key[:-1], w.length - 1)
        return GroupElement(self, w.key + (s,), w.length + 1)

    def _mul_left(self, w: GroupElement, s: int) -> GroupElement:
        if w.key and w.key[0] == s:
            return GroupElement(self, w.key[1:], w.length - 1)
        return GroupElement(self, (s,) + w.key, w.length + 1)

    def inverse(self, w: GroupElement) -> GroupElement:
        return GroupElement(self, w.key[::-1], w.length)

    def word(self, w: GroupElement) -> tuple[int, ...]:
        return w.key


_DIHEDRAL_RE = re.compile(r"I2\((\d+|inf)\)")
_UNIVERSAL_RE = re.compile(r"U(\d+)")


def coxeter_system(descriptor: str, **caps) -> CoxeterSystem:
    """Build a system from a descriptor string.

    >>> coxeter_system("A2").enumerate_elements(3)[3]
    [<A2: 1 2 1>]
    """
    d = descriptor.strip()
    m = _DIHEDRAL_RE.fullmatch(d)
    if m:
        order = None if m.group(1) == "inf" else int(m.group(1))
        return DihedralSystem(d, order, **caps)
    m = _UNIVERSAL_RE.fullmatch(d)
    if m:
        return UniversalSystem(d, int(m.group(1)), **caps)
    return CartanSystem(d, cartan_matrix(d), **caps)
