"""Cauchon diagrams: representation, validation, parsing and enumeration.

A Cauchon diagram (elsewhere called a Le-diagram) is an m x n grid in which
some squares are coloured black, subject to the condition that every black
square has either all squares strictly to its left black, or all squares
strictly above it black. Diagrams are stored as one bitmask per row, with
bit (col - 1) set when the square in that column is black; rows and columns
are 1-indexed throughout.

Enumeration is deterministic: diagrams are emitted in lexicographic order of
the row-major black mask (reading the grid row by row, left to right, with
white < black), smallest first, so the all-white diagram always comes first.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator

__all__ = [
    "GridError",
    "NonRectangularError",
    "BadCharacterError",
    "NotCauchonError",
    "CauchonDiagram",
    "LabeledCauchonDiagram",
    "validate",
    "parse_grid",
    "format_grid",
    "enumerate_diagrams",
    "count_diagrams",
    "count_diagrams_no_black_column",
    "strip_black_columns",
    "transpose",
    "canonical_labels",
    "with_labels",
]

WHITE_CHAR = "."
BLACK_CHAR = "#"


class GridError(ValueError):
    """Grid text or mask that does not describe a valid diagram."""


class NonRectangularError(GridError):
    def __init__(self, row: int, length: int, expected: int):
        self.row = row
        super().__init__(
            f"row {row} has length {length}, expected {expected}: grid is not rectangular"
        )


class BadCharacterError(GridError):
    def __init__(self, row: int, col: int, char: str):
        self.row = row
        self.col = col
        super().__init__(
            f"bad character {char!r} at cell ({row}, {col}); "
            f"expected {WHITE_CHAR!r} (white) or {BLACK_CHAR!r} (black)"
        )


class NotCauchonError(GridError):
    def __init__(self, row: int, col: int):
        self.row = row
        self.col = col
        super().__init__(
            f"cell ({row}, {col}) is black but has a white square to its left "
            f"in its row and a white square above it in its column"
        )


def _lowest_zero_bit(mask: int) -> int:
    return ((mask + 1) & ~mask).bit_length() - 1


def _row_violation(mask: int, above_black: int) -> int:
    """0 if the row is admissible, else the bitmask of offending cells.

    ``above_black`` holds the columns that are entirely black in all rows
    above. A black square is admissible when it sits in the leading black
    run of its row (everything to its left black) or in a fully-black
    column; anything else violates the diagram condition.
    """
    run = _lowest_zero_bit(mask)
    beyond_run = (mask >> (run + 1)) << (run + 1)
    return beyond_run & ~above_black


@dataclass(frozen=True)
class CauchonDiagram:
    """An m x n Cauchon diagram.

    ``row_masks[i]`` has bit (col - 1) set iff square (i + 1, col) is black.
    Construction validates the diagram condition, so every instance is a
    genuine Cauchon diagram. Instances are immutable values.
    """

    rows: int
    cols: int
    row_masks: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 1:
            raise ValueError(f"rows must be >= 1, got {self.rows}")
        if self.cols < 0:
            raise ValueError(f"cols must be >= 0, got {self.cols}")
        if len(self.row_masks) != self.rows:
            raise ValueError(
                f"expected {self.rows} row masks, got {len(self.row_masks)}"
            )
        full = (1 << self.cols) - 1
        above = full
        for i, mask in enumerate(self.row_masks, start=1):
            if mask & ~full:
                raise ValueError(f"row {i} mask {mask:#x} has bits beyond column {self.cols}")
            bad = _row_violation(mask, above)
            if bad:
                raise NotCauchonError(i, (bad & -bad).bit_length())
            above &= mask

    @classmethod
    def all_white(cls, rows: int, cols: int) -> "CauchonDiagram":
        return cls(rows, cols, (0,) * rows)

    @classmethod
    def all_black(cls, rows: int, cols: int) -> "CauchonDiagram":
        return cls(rows, cols, ((1 << cols) - 1,) * rows)

    def is_black(self, row: int, col: int) -> bool:
        if not (1 <= row <= self.rows and 1 <= col <= self.cols):
            raise IndexError(f"cell ({row}, {col}) outside {self.rows}x{self.cols} grid")
        return bool(self.row_masks[row - 1] >> (col - 1) & 1)

    @property
    def black_count(self) -> int:
        return sum(mask.bit_count() for mask in self.row_masks)

    @property
    def white_count(self) -> int:
        return self.rows * self.cols - self.black_count

    def white_cells(self) -> tuple[tuple[int, int], ...]:
        """White squares in row-major order, as 1-indexed (row, col) pairs."""
        cells = []
        for i, mask in enumerate(self.row_masks, start=1):
            for col in range(1, self.cols + 1):
                if not mask >> (col - 1) & 1:
                    cells.append((i, col))
        return tuple(cells)

    def black_cells(self) -> tuple[tuple[int, int], ...]:
        cells = []
        for i, mask in enumerate(self.row_masks, start=1):
            while mask:
                low = mask & -mask
                cells.append((i, low.bit_length()))
                mask ^= low
        return tuple(cells)

    def black_column_mask(self) -> int:
        """Bitmask of columns that are entirely black."""
        acc = (1 << self.cols) - 1
        for mask in self.row_masks:
            acc &= mask
        return acc

    def __str__(self) -> str:
        return format_grid(self)


def validate(black_cells: Iterable[tuple[int, int]], m: int, n: int) -> bool:
    """True iff the given black mask satisfies the diagram condition.

    ``black_cells`` is any iterable of 1-indexed (row, col) pairs; it must
    lie inside the m x n grid (cells outside raise ValueError). The check
    itself is total: any in-grid mask yields True or False.
    """
    if m < 1 or n < 0:
        raise ValueError(f"grid shape {m}x{n} is not valid")
    masks = [0] * m
    for row, col in black_cells:
        if not (1 <= row <= m and 1 <= col <= n):
            raise ValueError(f"cell ({row}, {col}) outside {m}x{n} grid")
        masks[row - 1] |= 1 << (col - 1)
    above = (1 << n) - 1
    for mask in masks:
        if _row_violation(mask, above):
            return False
        above &= mask
    return True


def parse_grid(text: str) -> CauchonDiagram:
    """Parse '.'/'#' grid text (rows separated by newlines) into a diagram.

    A single trailing newline is accepted. Raises NonRectangularError,
    BadCharacterError or NotCauchonError with the offending row/cell.
    """
    if text.endswith("\n"):
        text = text[:-1]
    lines = text.split("\n")
    if not lines or lines == [""]:
        raise GridError("empty grid text")
    n = len(lines[0])
    masks = []
    for i, line in enumerate(lines, start=1):
        if len(line) != n:
            raise NonRectangularError(i, len(line), n)
        mask = 0
        for j, ch in enumerate(line, start=1):
            if ch == BLACK_CHAR:
                mask |= 1 << (j - 1)
            elif ch != WHITE_CHAR:
                raise BadCharacterError(i, j, ch)
        masks.append(mask)
    return CauchonDiagram(len(lines), n, tuple(masks))


def format_grid(diagram: CauchonDiagram) -> str:
    """Render as '.'/'#' rows joined by newlines, without trailing newline."""
    lines = []
    for mask in diagram.row_masks:
        lines.append(
            "".join(
                BLACK_CHAR if mask >> (col - 1) & 1 else WHITE_CHAR
                for col in range(1, diagram.cols + 1)
            )
        )
    return "\n".join(lines)


def _lex_key(mask: int, n: int) -> int:
    # value of the row read left to right, column 1 most significant
    key = 0
    for _ in range(n):
        key = (key << 1) | (mask & 1)
        mask >>= 1
    return key


@lru_cache(maxsize=None)
def _row_candidates(n: int, above_black: int) -> tuple[int, ...]:
    """All admissible next-row masks given the fully-black columns so far.

    Every admissible row is a leading black run of some length p, plus black
    squares in fully-black columns strictly right of column p + 1 (column
    p + 1 itself stays white, which is what makes p the run length). Results
    are sorted in left-to-right lexicographic order, white first.
    """
    full = (1 << n) - 1
    out = [full]
    for p in range(n):
        prefix = (1 << p) - 1
        free = above_black & full & ~((1 << (p + 1)) - 1)
        sub = 0
        while True:
            out.append(prefix | sub)
            if sub == free:
                break
            sub = (sub - free) & free
    out.sort(key=lambda mask: _lex_key(mask, n))
    return tuple(out)


def _iter_row_masks(
    m: int, n: int, first_row: int | None = None
) -> Iterator[tuple[int, ...]]:
    """Yield the row-mask tuples of every m x n diagram in lexicographic order.

    ``first_row`` restricts the stream to diagrams whose first row equals the
    given mask (any mask is admissible as a first row); this is the unit of
    work for parallel partitioning.
    """
    full = (1 << n) - 1

    def rec(level: int, above: int, acc: list[int]) -> Iterator[tuple[int, ...]]:
        if level == m:
            yield tuple(acc)
            return
        for mask in _row_candidates(n, above):
            acc.append(mask)
            yield from rec(level + 1, above & mask, acc)
            acc.pop()

    if first_row is None:
        yield from rec(0, full, [])
    else:
        if first_row & ~full:
            raise ValueError(f"first row mask {first_row:#x} has bits beyond column {n}")
        yield from rec(1, full & first_row, [first_row])


def enumerate_diagrams(m: int, n: int) -> Iterator[CauchonDiagram]:
    """Yield every m x n diagram exactly once, lexicographically by mask.

    n = 0 yields the single empty diagram.
    """
    if m < 1 or n < 0:
        raise ValueError(f"grid shape {m}x{n} is not valid")
    for masks in _iter_row_masks(m, n):
        yield CauchonDiagram(m, n, masks)


@lru_cache(maxsize=None)
def _state_counts(m: int, n: int) -> dict[int, int]:
    # distribution of the fully-black-column mask after m rows
    dist = {(1 << n) - 1: 1}
    for _ in range(m):
        new: dict[int, int] = {}
        for above, count in dist.items():
            for mask in _row_candidates(n, above):
                key = above & mask
                new[key] = new.get(key, 0) + count
        dist = new
    return dist


def count_diagrams(m: int, n: int) -> int:
    """|C_{m,n}|, via a transfer computation over fully-black-column states.

    Agrees with the length of :func:`enumerate_diagrams` (tested), and with
    the binomial relation expressing it through the no-black-column counts.
    """
    if m < 1 or n < 0:
        raise ValueError(f"grid shape {m}x{n} is not valid")
    return sum(_state_counts(m, n).values())


def count_diagrams_no_black_column(m: int, n: int) -> int:
    """Number of m x n diagrams with no entirely black column."""
    if m < 1 or n < 0:
        raise ValueError(f"grid shape {m}x{n} is not valid")
    return _state_counts(m, n).get(0, 0)


def strip_black_columns(diagram: CauchonDiagram) -> CauchonDiagram:
    """Remove every entirely black column.

    White squares, their relative order, and the Pfaffian are unchanged; an
    all-black diagram maps to the m x 0 empty diagram.
    """
    dead = diagram.black_column_mask()
    if dead == 0:
        return diagram
    keep = [col for col in range(1, diagram.cols + 1) if not dead >> (col - 1) & 1]
    masks = []
    for mask in diagram.row_masks:
        new = 0
        for new_col, col in enumerate(keep):
            if mask >> (col - 1) & 1:
                new |= 1 << new_col
        masks.append(new)
    return CauchonDiagram(diagram.rows, len(keep), tuple(masks))


def transpose(diagram: CauchonDiagram) -> CauchonDiagram:
    """Reflect along the main diagonal; always a valid diagram.

    Transposition swaps the two clauses of the diagram condition, so the
    image of a diagram is again a diagram.
    """
    masks = []
    for col in range(1, diagram.cols + 1):
        mask = 0
        for row in range(1, diagram.rows + 1):
            if diagram.row_masks[row - 1] >> (col - 1) & 1:
                mask |= 1 << (row - 1)
        masks.append(mask)
    return CauchonDiagram(diagram.cols, diagram.rows, tuple(masks))


@dataclass(frozen=True)
class LabeledCauchonDiagram:
    """A diagram with integer labels on its white squares.

    ``labels`` lists the labels of the white squares in row-major order.
    Admissibility means the sequence is strictly increasing and positive;
    this is equivalent to labels increasing left to right within each row
    and every label in a row being smaller than every label in later rows.
    """

    diagram: CauchonDiagram
    labels: tuple[int, ...]

    def __post_init__(self):
        d = self.diagram.white_count
        if len(self.labels) != d:
            raise ValueError(f"expected {d} labels, got {len(self.labels)}")
        if d and self.labels[0] < 1:
            raise ValueError("labels must be positive integers")
        for a, b in zip(self.labels, self.labels[1:]):
            if a >= b:
                raise ValueError(
                    f"labels must be strictly increasing in row-major order; got {a} before {b}"
                )

    @cached_property
    def cells(self) -> tuple[tuple[int, int], ...]:
        """White squares in row-major order; ``cells[k]`` carries ``labels[k]``."""
        return self.diagram.white_cells()

    @cached_property
    def _cell_by_label(self) -> dict[int, tuple[int, int]]:
        return dict(zip(self.labels, self.cells))

    def cell_of(self, label: int) -> tuple[int, int]:
        return self._cell_by_label[label]

    def label_of(self, row: int, col: int) -> int:
        idx = self.cells.index((row, col))
        return self.labels[idx]

    @property
    def white_count(self) -> int:
        return self.diagram.white_count


def canonical_labels(diagram: CauchonDiagram) -> LabeledCauchonDiagram:
    """Label white squares 1..d in row-major order."""
    return LabeledCauchonDiagram(diagram, tuple(range(1, diagram.white_count + 1)))


def with_labels(diagram: CauchonDiagram, labels: Iterable[int]) -> LabeledCauchonDiagram:
    """Attach an explicit admissible labeling (row-major order)."""
    return LabeledCauchonDiagram(diagram, tuple(labels))
