"""Brute-force oracles: tableaux, words and permutations with their statistics.

Nothing here uses a product formula; these generators exist to check them.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import permutations
from typing import Callable, Iterable, Iterator, Sequence

from .qpoly import IntPolynomial, poly_from_pairs
from .shapes import AnyShape, Cell, ReverseFilling, SkewShape, as_skew

DEFAULT_SYT_CAP = 14
DEFAULT_WORD_CAP = 10


class SizeCapError(ValueError):
    """Brute-force enumeration refused because the input exceeds its cap."""


def syt_cap() -> int:
    return int(os.environ.get("MAJSTAT_CAP_SYT", DEFAULT_SYT_CAP))


@dataclass(frozen=True)
class Tableau:
    shape: SkewShape
    rows_of: tuple[int, ...]
    """``rows_of[i - 1]`` is the row holding label ``i``."""
    cols_of: tuple[int, ...]

    @property
    def entries(self) -> dict[Cell, int]:
        return {Cell(r, c): i for i, (r, c) in enumerate(zip(self.rows_of, self.cols_of), 1)}

    @classmethod
    def from_rows(cls, shape: AnyShape, rows: Sequence[Sequence[int | None]]) -> "Tableau":
        """Build from row lists; ``None`` marks cells of the inner shape."""
        shape = as_skew(shape)
        n = shape.size
        pos: dict[int, tuple[int, int]] = {}
        for r, row in enumerate(rows):
            for c, v in enumerate(row):
                if v is not None:
                    pos[v] = (r, c)
        if sorted(pos) != list(range(1, n + 1)) or set(map(Cell._make, pos.values())) != set(
            shape.cells()
        ):
            raise ValueError("rows do not describe a bijective filling of the shape")
        t = cls(shape, tuple(pos[i][0] for i in range(1, n + 1)), tuple(pos[i][1] for i in range(1, n + 1)))
        ent = t.entries
        for (r, c), v in ent.items():
            if ent.get(Cell(r, c + 1), n + 1) <= v or ent.get(Cell(r + 1, c), n + 1) <= v:
                raise ValueError("filling is not standard")
        return t


def syt_iter(shape: AnyShape, cap: int | None = None) -> Iterator[Tableau]:
    """Every standard tableau of ``shape`` once.

    Labels ``1..n`` are placed in turn into each currently addable cell,
    scanning rows top to bottom, so the output order is deterministic.
    """
    shape = as_skew(shape)
    cap = syt_cap() if cap is None else cap
    n = shape.size
    if n > cap:
        raise SizeCapError(f"shape {shape} has {n} cells, over the SYT enumeration cap of {cap}")
    bounds = shape.row_bounds()
    filled = [lo for lo, _ in bounds]  # next free column in each row
    rows: list[int] = []
    cols: list[int] = []

    def addable(r: int) -> bool:
        c = filled[r]
        if c >= bounds[r][1]:
            return False
        if r == 0:
            return True
        up_lo = bounds[r - 1][0]
        return c < up_lo or c < filled[r - 1]

    def rec(k: int) -> Iterator[Tableau]:
        if k == n:
            yield Tableau(shape, tuple(rows), tuple(cols))
            return
        for r in range(len(bounds)):
            if addable(r):
                rows.append(r)
                cols.append(filled[r])
                filled[r] += 1
                yield from rec(k + 1)
                filled[r] -= 1
                rows.pop()
                cols.pop()

    return rec(0)


def rsyt_iter(shape: AnyShape, cap: int | None = None) -> Iterator[ReverseFilling]:
    """Reverse standard fillings, via ``T -> n + 1 - T`` on standard tableaux."""
    shape = as_skew(shape)
    n = shape.size
    for t in syt_iter(shape, cap):
        yield ReverseFilling(shape, {cell: n + 1 - v for cell, v in t.entries.items()})


def tab_descents(t: Tableau) -> set[int]:
    rows = t.rows_of
    return {i for i in range(1, len(rows)) if rows[i] > rows[i - 1]}


def tab_maj(t: Tableau) -> int:
    rows = t.rows_of
    return sum(i for i in range(1, len(rows)) if rows[i] > rows[i - 1])


def tableau_to_word(t: Tableau) -> "Word":
    """Letter ``i`` is the row of ``i`` counted from the bottom, starting at 1."""
    height = len(t.shape.outer)
    return Word(tuple(height - r for r in t.rows_of))


@dataclass(frozen=True)
class Word:
    letters: tuple[int, ...]

    @property
    def type(self) -> tuple[int, ...]:
        if not self.letters:
            return ()
        top = max(self.letters)
        return tuple(self.letters.count(i) for i in range(1, top + 1))

    def __str__(self) -> str:
        return "".join(map(str, self.letters))


def words_iter(alpha: Sequence[int], cap: int = DEFAULT_WORD_CAP) -> Iterator[Word]:
    """All words of type ``alpha`` in lexicographic order."""
    n = sum(alpha)
    if n > cap:
        raise SizeCapError(f"composition {tuple(alpha)} has size {n}, over the word cap of {cap}")
    w = [i for i, a in enumerate(alpha, 1) for _ in range(a)]
    while True:
        yield Word(tuple(w))
        # next multiset permutation
        i = n - 2
        while i >= 0 and w[i] >= w[i + 1]:
            i -= 1
        if i < 0:
            return
        j = n - 1
        while w[j] <= w[i]:
            j -= 1
        w[i], w[j] = w[j], w[i]
        w[i + 1:] = reversed(w[i + 1:])


def descents(seq: Sequence[int]) -> set[int]:
    return {i for i in range(1, len(seq)) if seq[i - 1] > seq[i]}


def inversions(seq: Sequence[int]) -> int:
    return sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])


def word_stats(w: Word | Sequence[int]) -> tuple[int, int, set[int]]:
    letters = w.letters if isinstance(w, Word) else tuple(w)
    des = descents(letters)
    return inversions(letters), sum(des), des


def perm_baj(w: Sequence[int]) -> int:
    n = len(w)
    return sum(i * (n - i) for i in descents(w))


def perms_iter(n: int, cap: int = DEFAULT_WORD_CAP) -> Iterator[tuple[int, ...]]:
    if n > cap:
        raise SizeCapError(f"S_{n} is over the permutation cap of {cap}")
    return permutations(range(1, n + 1))


def stat_gf(stream: Iterable, stat: Callable[[object], int]) -> IntPolynomial:
    return poly_from_pairs(stat(x) for x in stream)


STATISTICS: dict[str, Callable] = {
    "maj": lambda x: tab_maj(x) if isinstance(x, Tableau) else word_stats(x)[1],
    "inv": lambda x: word_stats(x)[0],
    "baj-inv": lambda x: perm_baj(x) - inversions(x),
}


def maj_poly_dp(shape: AnyShape) -> IntPolynomial:
    """Maj generating polynomial by exhaustive counting with shared prefixes.

    Walks the same tree as :func:`syt_iter`, but merges tableau prefixes
    that fill the same cells and end in the same row, since the remaining
    descents only depend on that.  No product formula is involved, and
    there is no size cap: the state count grows with the number of
    sub-shapes, not with the number of tableaux.
    """
    from functools import lru_cache

    shape = as_skew(shape)
    bounds = shape.row_bounds()
    n = shape.size
    rows = len(bounds)

    @lru_cache(maxsize=None)
    def rest(filled: tuple[int, ...], last: int) -> tuple[int, ...]:
        k = sum(f - lo for f, (lo, _) in zip(filled, bounds))
        if k == n:
            return (1,)
        acc: list[int] = []
        for r in range(rows):
            c = filled[r]
            if c >= bounds[r][1]:
                continue
            if r and not (c < bounds[r - 1][0] or c < filled[r - 1]):
                continue
            nxt = filled[:r] + (c + 1,) + filled[r + 1:]
            sub = rest(nxt, r)
            shift = k if (k and r > last) else 0  # label k then k+1 one row lower
            if len(acc) < shift + len(sub):
                acc.extend([0] * (shift + len(sub) - len(acc)))
            for i, x in enumerate(sub):
                acc[shift + i] += x
        return tuple(acc)

    if n == 0:
        return IntPolynomial((1,))
    return IntPolynomial(rest(tuple(lo for lo, _ in bounds), rows))
