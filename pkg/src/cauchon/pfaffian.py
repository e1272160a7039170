"""Exact linear algebra on the skew adjacency matrix of a diagram.

``A_C`` is the d x d skew-symmetric matrix over the white squares: entry
(i, j) is +1 when square i is strictly above square j in the same column or
strictly left of it in the same row, -1 in the mirrored cases, 0 otherwise.
A torus-invariant prime is primitive exactly when this matrix is invertible,
i.e. when its Pfaffian is nonzero; the nullity counts the central Laurent
variables of the associated quantum torus (for skew-symmetric matrices the
kernel of the transpose has the same dimension, so a single nullity is
exposed).

All arithmetic is exact; elimination runs through the selected backend
kernel (compiled or pure Python), never floating point.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import backend
from .diagram import CauchonDiagram, LabeledCauchonDiagram, canonical_labels

__all__ = [
    "SkewAdjacency",
    "skew_adjacency",
    "pfaffian",
    "determinant",
    "nullity",
    "rank",
    "is_primitive",
]


@dataclass(frozen=True)
class SkewAdjacency:
    """Skew-symmetric 0/+-1 adjacency matrix of the white-square graph."""

    d: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.d:
            raise ValueError(f"expected {self.d} rows, got {len(self.entries)}")
        for i, row in enumerate(self.entries):
            if len(row) != self.d:
                raise ValueError(f"row {i} has length {len(row)}, expected {self.d}")
            for j, v in enumerate(row):
                if v not in (-1, 0, 1):
                    raise ValueError(f"entry ({i}, {j}) is {v}, expected -1, 0 or +1")
                if v != -self.entries[j][i]:
                    raise ValueError(f"entries ({i}, {j}) and ({j}, {i}) are not antisymmetric")


def _white_coordinates(diagram: CauchonDiagram) -> tuple[list[int], list[int]]:
    rows: list[int] = []
    cols: list[int] = []
    for i, mask in enumerate(diagram.row_masks, start=1):
        for col in range(1, diagram.cols + 1):
            if not mask >> (col - 1) & 1:
                rows.append(i)
                cols.append(col)
    return rows, cols


def skew_adjacency(source: CauchonDiagram | LabeledCauchonDiagram) -> SkewAdjacency:
    """Build A_C; the matrix depends only on the white squares' positions.

    With admissible labels, sorting by label is exactly row-major order, so
    any admissible labeling yields the same matrix.
    """
    labeled = source if isinstance(source, LabeledCauchonDiagram) else canonical_labels(source)
    cells = labeled.cells
    d = len(cells)
    entries = [[0] * d for _ in range(d)]
    for a in range(d):
        ra, ca = cells[a]
        for b in range(a + 1, d):
            rb, cb = cells[b]
            if ra == rb or ca == cb:
                entries[a][b] = 1
                entries[b][a] = -1
    return SkewAdjacency(d, tuple(tuple(row) for row in entries))


def _classify(diagram: CauchonDiagram) -> tuple[int, int]:
    rows, cols = _white_coordinates(diagram)
    return backend.classify_cells(rows, cols)


def pfaffian(diagram: CauchonDiagram) -> int:
    """Pfaffian of A_C by exact elimination.

    1 for the empty matrix (no white squares), 0 for odd white counts;
    always equal to the signed matching sum.
    """
    return _classify(diagram)[0]


def determinant(diagram: CauchonDiagram) -> int:
    """det(A_C) by exact fraction-free elimination; equals pfaffian(C)**2."""
    matrix = skew_adjacency(diagram).entries
    return backend.determinant(matrix)


def nullity(diagram: CauchonDiagram) -> int:
    """dim ker(A_C): the count of central Laurent variables of the stratum.

    Zero exactly when the diagram is primitive. The rank of a skew-symmetric
    matrix is even, so the nullity always has the parity of the white count.
    """
    return _classify(diagram)[1]


def rank(diagram: CauchonDiagram) -> int:
    """rank(A_C); always even."""
    return diagram.white_count - nullity(diagram)


def is_primitive(diagram: CauchonDiagram) -> bool:
    """True iff the corresponding torus-invariant prime is primitive.

    Equivalent tests: nonzero Pfaffian, nonzero determinant, zero nullity.
    """
    return pfaffian(diagram) != 0
