"""Straight, skew and block-diagonal shapes and their cell combinatorics.

Cells are ``(row, col)`` pairs, 0-based, English notation: row 0 is the
top row and columns grow to the right.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Sequence, Union


class ShapeError(ValueError):
    """Raised for malformed partitions or shape strings."""


class RegimeError(ValueError):
    """The shape is outside the large-hook regime a construction needs."""


class Cell(NamedTuple):
    row: int
    col: int

    def one_based(self) -> tuple[int, int]:
        return (self.row + 1, self.col + 1)


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p <= 0 for p in parts):
            raise ShapeError(f"partition parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ShapeError(f"partition parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __str__(self) -> str:
        return ",".join(map(str, self.parts))

    def transpose(self) -> "Partition":
        return transpose(self)


@dataclass(frozen=True)
class SkewShape:
    outer: Partition
    inner: Partition = field(default_factory=Partition)

    def __post_init__(self):
        outer, inner = coerce_partition(self.outer), coerce_partition(self.inner)
        if len(inner) > len(outer) or any(
            inner[i] > outer[i] for i in range(len(inner))
        ):
            raise ShapeError(f"inner shape {inner} is not contained in {outer}")
        object.__setattr__(self, "outer", outer)
        object.__setattr__(self, "inner", inner)

    @property
    def size(self) -> int:
        return self.outer.size - self.inner.size

    def row_bounds(self) -> list[tuple[int, int]]:
        """Half-open column range ``[start, stop)`` for every row of ``outer``."""
        inner = self.inner.parts + (0,) * (len(self.outer) - len(self.inner))
        return list(zip(inner, self.outer.parts))

    def cells(self) -> list[Cell]:
        return [
            Cell(r, c)
            for r, (lo, hi) in enumerate(self.row_bounds())
            for c in range(lo, hi)
        ]

    def is_straight(self) -> bool:
        return not self.inner.parts

    def transpose(self) -> "SkewShape":
        return SkewShape(transpose(self.outer), transpose(self.inner))

    def __str__(self) -> str:
        if self.is_straight():
            return str(self.outer)
        return f"{self.outer}/{self.inner}"


@dataclass(frozen=True)
class BlockDiagonalShape:
    blocks: tuple[Partition, ...]

    def __post_init__(self):
        blocks = tuple(coerce_partition(b) for b in self.blocks)
        if not blocks:
            raise ShapeError("a block diagonal shape needs at least one block")
        if any(not b.parts for b in blocks):
            raise ShapeError("blocks of a block diagonal shape must be nonempty")
        object.__setattr__(self, "blocks", blocks)

    @property
    def size(self) -> int:
        return sum(b.size for b in self.blocks)

    def __str__(self) -> str:
        return ";".join(str(b) for b in self.blocks)


@dataclass(frozen=True)
class ReverseFilling:
    """A bijective filling strictly decreasing along rows and down columns.

    ``transposed`` records that the construction ran on the transposed
    shape; ``entries`` are always reported on ``shape`` itself.
    """

    shape: SkewShape
    entries: dict
    region: tuple[Cell, ...] = ()
    transposed: bool = False

    def rows(self) -> list[list[int | None]]:
        width = self.shape.outer[0] if self.shape.outer.parts else 0
        grid: list[list[int | None]] = [[None] * width for _ in self.shape.outer]
        for cell, value in self.entries.items():
            grid[cell.row][cell.col] = value
        return [row[:hi] for row, hi in zip(grid, self.shape.outer)]


AnyShape = Union[Partition, SkewShape, BlockDiagonalShape, Sequence[int]]


def coerce_partition(p) -> Partition:
    if isinstance(p, Partition):
        return p
    return Partition(tuple(p))


def as_skew(shape: AnyShape) -> SkewShape:
    if isinstance(shape, SkewShape):
        return shape
    if isinstance(shape, BlockDiagonalShape):
        return embed_block_diagonal(shape)
    return SkewShape(coerce_partition(shape))


def transpose(p) -> Partition:
    parts = coerce_partition(p).parts
    if not parts:
        return Partition()
    return Partition(tuple(sum(1 for x in parts if x > j) for j in range(parts[0])))


def rank(p) -> int:
    return sum(i * x for i, x in enumerate(coerce_partition(p).parts))


def embed_block_diagonal(b: BlockDiagonalShape) -> SkewShape:
    """Place the blocks in disjoint rows and columns, first block top-right."""
    if not isinstance(b, BlockDiagonalShape):
        b = BlockDiagonalShape(tuple(b))
    outer: list[int] = []
    inner: list[int] = []
    offset = sum(blk[0] for blk in b.blocks)
    for blk in b.blocks:
        offset -= blk[0]
        outer.extend(offset + x for x in blk)
        inner.extend([offset] * len(blk))
    while inner and inner[-1] == 0:
        inner.pop()
    return SkewShape(Partition(tuple(outer)), Partition(tuple(inner)))


def _column_heights(shape: SkewShape) -> list[int]:
    return list(transpose(shape.outer).parts)


def arm_leg(shape: AnyShape) -> dict[Cell, tuple[int, int]]:
    """Map every cell to ``(arm, leg)``, both counting the cell itself."""
    shape = as_skew(shape)
    heights = _column_heights(shape)
    return {
        cell: (shape.outer[cell.row] - cell.col, heights[cell.col] - cell.row)
        for cell in shape.cells()
    }


def hook_lengths(shape: AnyShape) -> list[int]:
    """Hook lengths in row-major cell order."""
    return [a + l - 1 for a, l in arm_leg(shape).values()]


def aft(shape: AnyShape) -> int:
    shape = as_skew(shape)
    al = arm_leg(shape)
    if not al:
        return 0
    return shape.size - max(max(a, l) for a, l in al.values())


def corners(shape: AnyShape) -> set[Cell]:
    return {c for c, (a, l) in arm_leg(shape).items() if a + l - 1 == 1}


def max_hook_cell(shape: AnyShape) -> Cell:
    """Lexicographically smallest cell among those with maximal hook length."""
    al = arm_leg(shape)
    best = max(a + l for a, l in al.values())
    return min(c for c, (a, l) in al.items() if a + l == best)


def is_reverse_filling(shape: SkewShape, entries: dict) -> bool:
    n = shape.size
    if sorted(entries.values()) != list(range(1, n + 1)):
        return False
    for (r, c), v in entries.items():
        right, below = entries.get(Cell(r, c + 1)), entries.get(Cell(r + 1, c))
        if (right is not None and right >= v) or (below is not None and below >= v):
            return False
    return True


def greedy_rsyt(
    shape: AnyShape, variant: str = "lower", *, require_regime: bool = True
) -> ReverseFilling:
    """Greedy reverse standard filling from the large-hook bound constructions.

    Cells are added one at a time; each addition bumps all earlier labels by
    one and labels the new cell 1, so the k-th added cell ends with label
    ``n - k``.  ``variant="lower"`` first adds the row of the max-hook cell
    ``m`` up to the last cell of ``R`` (row cells after ``m`` alone in their
    column); ``variant="upper"`` first adds the topmost cell of every column
    meeting the row of ``m``.  The rest follows row by row, top to bottom.

    With ``require_regime`` the max hook must be at least ``0.8 n``.
    """
    if variant not in ("lower", "upper"):
        raise ValueError(f"unknown variant {variant!r}")
    shape = as_skew(shape)
    n = shape.size
    if n == 0:
        return ReverseFilling(shape, {})
    al = arm_leg(shape)
    m = max_hook_cell(shape)
    arm, leg = al[m]
    if require_regime and 5 * (arm + leg - 1) < 4 * n:
        raise RegimeError(
            f"max hook {arm + leg - 1} of {shape} is below 0.8*n = {0.8 * n:g}"
        )
    if arm < leg:
        t = greedy_rsyt(shape.transpose(), variant, require_regime=False)
        entries = {Cell(c.col, c.row): v for c, v in t.entries.items()}
        region = tuple(Cell(c.col, c.row) for c in t.region)
        return ReverseFilling(shape, entries, region, transposed=True)

    cells = shape.cells()
    row_cells = [c for c in cells if c.row == m.row]
    cellset = set(cells)
    region = tuple(
        c for c in row_cells[1:] if al[c][1] == 1 and Cell(c.row - 1, c.col) not in cellset
    )
    if variant == "lower":
        stop = row_cells.index(region[-1]) + 1 if region else 1
        first = row_cells[:stop]
    else:
        first = [min((x for x in cells if x.col == c.col), key=lambda x: x.row) for c in row_cells]
    seen = set(first)
    order = first + [c for c in cells if c not in seen]
    entries = {cell: n - k for k, cell in enumerate(order)}
    if not is_reverse_filling(shape, entries):
        raise RegimeError(f"greedy {variant} construction is not reverse standard on {shape}")
    return ReverseFilling(shape, entries, region)


def partitions(n: int) -> Iterator[tuple[int, ...]]:
    """All partitions of ``n`` in reverse lexicographic order."""
    if n < 0:
        return
    if n == 0:
        yield ()
        return
    a = [n]
    while True:
        yield tuple(a)
        ones = 0
        while a and a[-1] == 1:
            a.pop()
            ones += 1
        if not a:
            return
        x = a.pop() - 1
        rem = x + 1 + ones
        while rem >= x:
            a.append(x)
            rem -= x
        if rem:
            a.append(rem)


def parse_partition(text: str) -> Partition:
    text = text.strip().strip("()")
    if not text or text == "0":
        return Partition()
    parts = []
    for tok in text.split(","):
        tok = tok.strip()
        try:
            parts.append(int(tok))
        except ValueError:
            raise ShapeError(f"bad partition part {tok!r} in {text!r}") from None
    while parts and parts[-1] == 0:
        parts.pop()
    return Partition(tuple(parts))


def parse_shape(text: str) -> Partition | SkewShape | BlockDiagonalShape:
    """Parse ``"6,3,3"``, ``"7,6,4,4,3/4,4,3,3"`` or ``"3,2;1,1;3"``."""
    text = text.strip()
    if ";" in text:
        return BlockDiagonalShape(tuple(parse_partition(t) for t in text.split(";")))
    if "/" in text:
        outer, _, inner = text.partition("/")
        if "/" in inner:
            raise ShapeError(f"too many '/' in {text!r}")
        return SkewShape(parse_partition(outer), parse_partition(inner))
    return parse_partition(text)
