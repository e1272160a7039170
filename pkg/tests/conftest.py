import random

import pytest

from cauchon import CauchonDiagram, enumerate_diagrams

# A well-formed 4x6 grid with 14 white squares; black cells exercise both
# clauses of the diagram condition.
GRID_4x6 = "..#.#.\n#.#...\n##....\n####.."

# An admissible gapped labeling of GRID_4x6's white squares, row-major.
GAPPED_LABELS_4x6 = (1, 3, 4, 7, 8, 10, 11, 13, 15, 16, 17, 18, 19, 22)

# A 2x6 grid without black columns: row 2 has a single leading black square.
GRID_2x6 = "..#.#.\n#....."


@pytest.fixture(scope="session")
def small_diagrams():
    """All diagrams for every shape with m, n <= 3, keyed by (m, n)."""
    return {
        (m, n): list(enumerate_diagrams(m, n))
        for m in range(1, 4)
        for n in range(1, 4)
    }


def sample_diagrams(max_m: int, max_n: int, count: int, seed: int) -> list[CauchonDiagram]:
    """Deterministic random sample across all shapes up to max_m x max_n."""
    rng = random.Random(seed)
    pools = [
        list(enumerate_diagrams(m, n))
        for m in range(1, max_m + 1)
        for n in range(1, max_n + 1)
    ]
    out = []
    for _ in range(count):
        pool = rng.choice(pools)
        out.append(rng.choice(pool))
    return out
