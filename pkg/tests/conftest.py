import itertools
import sys

import pytest

from rmclass.burnside import InexactDivisionError, count
from rmclass.conjclasses import ConjCell
from rmclass.gf2 import BitMatrix, BitVector, rank
from rmclass.group import AffineElement

# running example on 3 variables: an involution x -> (x1+x2+1, x2, x3)
EXAMPLE_A_ROWS = ["110", "010", "001"]
EXAMPLE_B_ENTRIES = [1, 0, 0]

# its action matrix on degree-3 coefficient vectors, found by substitution
TAU_ROWS = [
    "10000000", "01000000", "00100000", "00110000",
    "00001000", "00001100", "00100010", "00001001",
]
# the fixture value the acceptance suite pins for the same matrix; it
# disagrees with the algebra in a single entry of row 7 (see the notes in
# the acceptance module)
TAU_ROWS_PINNED = [
    "10000000", "01000000", "00100000", "00110000",
    "00001000", "00001100", "00010010", "00001001",
]


def make_example() -> AffineElement:
    return AffineElement(3, BitMatrix.from_strings(EXAMPLE_A_ROWS),
                         BitVector.from_entries(EXAMPLE_B_ENTRIES))


@pytest.fixture
def example_element() -> AffineElement:
    return make_example()


_matrix_cache: dict[int, list[BitMatrix]] = {}
_element_cache: dict[int, list[AffineElement]] = {}


def all_matrices(n: int) -> list[BitMatrix]:
    """Every invertible n x n matrix over GF(2), by filtering all row tuples."""
    if n not in _matrix_cache:
        out = []
        for rows in itertools.product(range(1 << n), repeat=n):
            m = BitMatrix(n, n, tuple(rows))
            if rank(m) == n:
                out.append(m)
        _matrix_cache[n] = out
    return _matrix_cache[n]


def all_elements(n: int) -> list[AffineElement]:
    """The full n-bit affine group by direct enumeration (n <= 3 only)."""
    if n not in _element_cache:
        _element_cache[n] = [
            AffineElement(n, m, BitVector(n, b))
            for m in all_matrices(n) for b in range(1 << n)
        ]
    return _element_cache[n]


def find_inexact_swap(n: int, cells: list[ConjCell]):
    """Return (tampered_cells, s, k): a size-swapped copy of `cells` (total
    preserved) and a window where the count is provably non-integral."""
    for i, j in itertools.combinations(range(len(cells)), 2):
        if cells[i].size == cells[j].size:
            continue
        tampered = list(cells)
        tampered[i] = ConjCell(cells[i].rep, cells[j].size)
        tampered[j] = ConjCell(cells[j].rep, cells[i].size)
        for s in range(n + 1):
            for k in range(-1, s):
                try:
                    count(n, s, k, cells=tampered)
                except InexactDivisionError:
                    return tampered, s, k
    raise AssertionError("no tampering produced an inexact division")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None) if mod else None
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
