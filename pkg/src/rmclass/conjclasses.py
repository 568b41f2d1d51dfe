"""Conjugation-closed cell decompositions of AGL(n,2).

Three interchangeable providers feed the counting engine:

- exhaustive_cells: walk the whole group (n <= 4 only) and split it into
  true conjugacy classes.
- affine_cells: parametrize GL(n,2) classes by rational canonical form,
  then split each fiber of translations into orbits under conjugations
  that fix the linear part. The orbit generators are sampled, so cells may
  refine true classes; that is harmless for counting because members of a
  cell are still mutually conjugate and the sizes still cover the group
  exactly once (see the orbit construction below).
- import_cells: read a decomposition computed elsewhere from a text file.

Every provider guarantees: each cell's members are mutually conjugate, and
cell sizes sum to |AGL(n,2)|.
"""

from __future__ import annotations

import functools
import random
import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .gf2 import (
    BitMatrix,
    BitVector,
    SingularMatrixError,
    identity,
    image_basis,
    inverse,
    rank,
    solve,
    solve_commutant,
)
from .group import AffineElement, group_orders

DEFAULT_SEED = 1


class CellFormatError(ValueError):
    """Cell file does not parse."""


class CellDecompositionError(ValueError):
    """Cells parse but do not form a valid decomposition."""


@dataclass(frozen=True)
class ConjCell:
    """A set of mutually conjugate elements: one representative, exact size."""

    rep: AffineElement
    size: int

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("cell size must be positive")


@dataclass(frozen=True)
class GlClassDescriptor:
    """A GL(n,2) conjugacy class in rational canonical form.

    assignment maps each monic irreducible polynomial (coefficient-packed
    int, bit i = coefficient of x^i; p(x) = x excluded) to the partition
    listing the exponents of its elementary divisors; pairs are sorted by
    (degree, coefficient bits). rep is the direct sum of the companion
    matrices of p^e.
    """

    assignment: tuple[tuple[int, tuple[int, ...]], ...]
    rep: BitMatrix
    size: int
    centralizer: int


# --- polynomials over GF(2), packed as ints (bit i = coefficient of x^i) ---

def _poly_mul(a: int, b: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def _poly_rem(a: int, m: int) -> int:
    dm = m.bit_length()
    while a.bit_length() >= dm:
        a ^= m << (a.bit_length() - dm)
    return a


def _poly_pow(p: int, e: int) -> int:
    r = 1
    for _ in range(e):
        r = _poly_mul(r, p)
    return r


def poly_str(p: int) -> str:
    if p == 0:
        return "0"
    parts = []
    for i in range(p.bit_length() - 1, -1, -1):
        if (p >> i) & 1:
            parts.append("1" if i == 0 else ("x" if i == 1 else f"x^{i}"))
    return "+".join(parts)


@functools.lru_cache(maxsize=None)
def irreducible_polys(max_degree: int) -> tuple[int, ...]:
    """All monic irreducibles of degree 1..max_degree except p(x) = x,
    sorted by (degree, coefficient bits). Found by trial division."""
    out = []
    for deg in range(1, max_degree + 1):
        for p in range(1 << deg, 1 << (deg + 1)):
            if not p & 1:
                continue  # divisible by x
            if all(_poly_rem(p, q) != 0
                   for q in range(2, 1 << (deg // 2 + 1))):
                out.append(p)
    return tuple(out)


@functools.lru_cache(maxsize=None)
def _partitions(total: int) -> tuple[tuple[int, ...], ...]:
    """All partitions of total as descending tuples."""
    if total == 0:
        return ((),)
    out = []

    def rec(remaining, cap, prefix):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for part in range(min(cap, remaining), 0, -1):
            rec(remaining - part, part, prefix + [part])

    rec(total, total, [])
    return tuple(out)


def _conjugate_partition(lam: tuple[int, ...]) -> tuple[int, ...]:
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p >= i) for i in range(1, lam[0] + 1))


def _companion(poly: int) -> BitMatrix:
    """Companion matrix of a monic polynomial: maps e_j to e_{j+1}, with the
    last column holding the low coefficients."""
    d = poly.bit_length() - 1
    rows = []
    for i in range(d):
        r = (1 << (i - 1)) if i else 0
        if (poly >> i) & 1:
            r |= 1 << (d - 1)
        rows.append(r)
    return BitMatrix(d, d, tuple(rows))


def _direct_sum(blocks: list[BitMatrix]) -> BitMatrix:
    n = sum(b.rows for b in blocks)
    rows = []
    off = 0
    for b in blocks:
        rows.extend(r << off for r in b.row_bits)
        off += b.rows
    return BitMatrix(n, n, tuple(rows))


def _centralizer_order(assignment) -> int:
    """|{X in GL : X commutes with the class rep}|, from the partition data:
    product over polynomials of q^(sum of squared conjugate-partition parts)
    times prod over part sizes k of prod_{j=1}^{mult(k)} (1 - q^-j)."""
    total = Fraction(1)
    for poly, lam in assignment:
        q = 1 << (poly.bit_length() - 1)
        e = sum(c * c for c in _conjugate_partition(lam))
        f = Fraction(q) ** e
        for mult in Counter(lam).values():
            for j in range(1, mult + 1):
                f *= 1 - Fraction(1, q ** j)
        total *= f
    if total.denominator != 1:
        raise ArithmeticError(f"centralizer order not integral: {total}")
    return total.numerator


@functools.lru_cache(maxsize=None)
def _gl_classes_cached(n: int) -> tuple[GlClassDescriptor, ...]:
    polys = irreducible_polys(n)
    gl_order = group_orders(n)[0]

    assignments: list[tuple[tuple[int, tuple[int, ...]], ...]] = []

    def rec(i, remaining, chosen):
        if remaining == 0:
            assignments.append(tuple(chosen))
            return
        if i == len(polys):
            return
        deg = polys[i].bit_length() - 1
        rec(i + 1, remaining, chosen)
        for weight in range(1, remaining // deg + 1):
            for lam in _partitions(weight):
                rec(i + 1, remaining - weight * deg,
                    chosen + [(polys[i], lam)])

    rec(0, n, [])
    out = []
    for assignment in sorted(assignments):
        cent = _centralizer_order(assignment)
        size, rem = divmod(gl_order, cent)
        if rem:
            raise ArithmeticError(
                f"centralizer {cent} does not divide |GL|={gl_order}")
        blocks = [_companion(_poly_pow(poly, e))
                  for poly, lam in assignment for e in lam]
        out.append(GlClassDescriptor(assignment, _direct_sum(blocks),
                                     size, cent))
    if sum(c.size for c in out) != gl_order:
        raise ArithmeticError("GL class sizes do not sum to the group order")
    return tuple(out)


def gl_classes(n: int) -> list[GlClassDescriptor]:
    """All conjugacy classes of GL(n,2): every assignment of partitions to
    irreducible polynomials with total degree-weighted size n."""
    if not 1 <= n <= 10:
        raise ValueError(f"n={n} out of supported range 1..10")
    return list(_gl_classes_cached(n))


# --- the fiber over one GL class -------------------------------------------
#
# Conjugating (A, b) by (C, d) with C in the commutant of A gives
# (A, C b xor (A xor I) d): the linear part is untouched and the translation
# moves by an invertible map plus anything in Im(A xor I). Orbits of the
# group generated by such maps therefore split {A} x F_2^n into cells of
# mutually conjugate elements, whatever subset of generators we use.

def _flat(m: BitMatrix) -> int:
    acc = 0
    for i, r in enumerate(m.row_bits):
        acc |= r << (i * m.cols)
    return acc


def _unflat(bits: int, n: int) -> BitMatrix:
    mask = (1 << n) - 1
    return BitMatrix(n, n, tuple((bits >> (i * n)) & mask for i in range(n)))


def commutant_units(a: BitMatrix, rng: random.Random,
                    budget: int | None = None) -> list[BitMatrix]:
    """Invertible members of the commutant of a: the identity, each basis
    matrix and its identity-offset when invertible, plus seeded random
    combinations (default budget 4 n^2 draws). Deduplicated, sorted."""
    n = a.rows
    if budget is None:
        budget = 4 * n * n
    basis = [_flat(m) for m in solve_commutant(a)]
    ident = _flat(identity(n))
    found = {}

    def consider(flat):
        if flat in found or flat == 0:
            return
        m = _unflat(flat, n)
        if rank(m) == n:
            found[flat] = m

    consider(ident)
    for f in basis:
        consider(f)
        consider(f ^ ident)
    for _ in range(budget):
        combo = rng.getrandbits(len(basis))
        acc = 0
        i = 0
        while combo:
            if combo & 1:
                acc ^= basis[i]
            combo >>= 1
            i += 1
        consider(acc)
    return [found[f] for f in sorted(found)]


def fiber_generators(a: BitMatrix, rng: random.Random | None = None,
                     budget: int | None = None) -> list[AffineElement]:
    """Witnesses (C, d) whose conjugation fixes the linear part a: the
    sampled commutant units with d = 0, plus for each basis vector v of
    Im(a xor I) one witness (I, d) with (a xor I) d = v. Conjugating (a, b)
    by a witness moves b to C b xor (a xor I) d."""
    n = a.rows
    if rng is None:
        rng = random.Random(DEFAULT_SEED)
    zero = BitVector(n, 0)
    out = [AffineElement(n, c, zero) for c in commutant_units(a, rng, budget)]
    axi = a ^ identity(n)
    for v in image_basis(axi):
        d = solve(axi, v)
        assert d is not None  # v is in the image by construction
        out.append(AffineElement(n, identity(n), d))
    return out


def _mv_rows(rows: tuple[int, ...], v: int) -> int:
    out = 0
    for i, r in enumerate(rows):
        if (r & v).bit_count() & 1:
            out |= 1 << i
    return out


@functools.lru_cache(maxsize=None)
def _affine_cells_cached(n: int, seed: int) -> tuple[ConjCell, ...]:
    cells = []
    for idx, cls in enumerate(gl_classes(n)):
        rng = random.Random(seed * 1_000_003 + idx)
        a = cls.rep
        units = [u.row_bits for u in commutant_units(a, rng)]
        im_rows = [v.bits for v in image_basis(a ^ identity(n))]
        r = len(im_rows)

        def reduce(b):
            # im_rows is reduced echelon; clearing pivot bits canonicalizes
            # the coset b xor Im(A xor I)
            for row in im_rows:
                if (b >> (row.bit_length() - 1)) & 1:
                    b ^= row
            return b

        pivot_set = {row.bit_length() - 1 for row in im_rows}
        free = [j for j in range(n) if j not in pivot_set]
        reps = []
        for m in range(1 << len(free)):
            v = 0
            for t, pos in enumerate(free):
                if (m >> t) & 1:
                    v |= 1 << pos
            reps.append(v)

        seen = set()
        for start in reps:
            if start in seen:
                continue
            orbit = {start}
            queue = [start]
            while queue:
                b = queue.pop()
                for rows in units:
                    nb = reduce(_mv_rows(rows, b))
                    if nb not in orbit:
                        orbit.add(nb)
                        queue.append(nb)
            seen |= orbit
            # every coset has 2^r elements, all reachable by translations
            cells.append(ConjCell(
                AffineElement(n, a, BitVector(n, min(orbit))),
                cls.size * (len(orbit) << r)))
    total = sum(c.size for c in cells)
    if total != group_orders(n)[1]:
        raise CellDecompositionError(
            f"cell sizes sum to {total}, not |AGL({n},2)|")
    return tuple(cells)


def affine_cells(n: int, seed: int = DEFAULT_SEED) -> list[ConjCell]:
    """Cell decomposition via GL canonical forms and fiber orbits; cells may
    refine true conjugacy classes but always cover the group exactly."""
    if not 1 <= n <= 10:
        raise ValueError(f"n={n} out of supported range 1..10")
    return list(_affine_cells_cached(n, seed))


# --- exhaustive small-n provider --------------------------------------------

def _mm_rows(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    out = []
    for row in a:
        acc = 0
        m = row
        while m:
            low = m & -m
            acc ^= b[low.bit_length() - 1]
            m ^= low
        out.append(acc)
    return tuple(out)


def _agl_generators(n: int) -> list[tuple[tuple[int, ...], int]]:
    """(rows, b) pairs generating AGL(n,2): translation by e_1, and for
    n >= 2 the coordinate cycle and one transvection."""
    ident_rows = tuple(1 << i for i in range(n))
    gens = [(ident_rows, 1)]
    if n >= 2:
        cycle = tuple(1 << ((i - 1) % n) for i in range(n))
        trans = (0b11,) + ident_rows[1:]
        gens += [(cycle, 0), (trans, 0)]
    return gens


@functools.lru_cache(maxsize=None)
def _exhaustive_cells_cached(n: int) -> tuple[ConjCell, ...]:
    order = group_orders(n)[1]
    gens = _agl_generators(n)
    ident_rows = tuple(1 << i for i in range(n))

    # close the generators into the full group; the size check proves the
    # generating set is complete, which the class split below relies on
    elements = {(ident_rows, 0)}
    queue = [(ident_rows, 0)]
    while queue:
        arows, ab = queue.pop()
        for grows, gb in gens:
            nrows = _mm_rows(grows, arows)
            nb = _mv_rows(grows, ab) ^ gb
            key = (nrows, nb)
            if key not in elements:
                elements.add(key)
                queue.append(key)
    if len(elements) != order:
        raise RuntimeError(
            f"generators produced {len(elements)} of {order} elements")

    # conjugating by a generating set reaches the whole conjugacy class
    conj = []
    for grows, gb in gens:
        ginv = inverse(BitMatrix(n, n, grows)).row_bits
        conj.append((grows, ginv, gb))

    cells = []
    assigned = set()
    for key in sorted(elements):
        if key in assigned:
            continue
        cls = {key}
        queue = [key]
        while queue:
            arows, ab = queue.pop()
            for crows, cinv, d in conj:
                mrows = _mm_rows(_mm_rows(crows, arows), cinv)
                mxi = tuple(r ^ (1 << i) for i, r in enumerate(mrows))
                nb = _mv_rows(mxi, d) ^ _mv_rows(crows, ab)
                nkey = (mrows, nb)
                if nkey not in cls:
                    cls.add(nkey)
                    queue.append(nkey)
        assigned |= cls
        rrows, rb = min(cls)
        cells.append(ConjCell(
            AffineElement(n, BitMatrix(n, n, rrows), BitVector(n, rb)),
            len(cls)))
    assert sum(c.size for c in cells) == order
    return tuple(cells)


def exhaustive_cells(n: int) -> list[ConjCell]:
    """True conjugacy classes of AGL(n,2) by full enumeration; n <= 4."""
    if not 1 <= n <= 4:
        raise ValueError(f"exhaustive provider supports n <= 4, got n={n}")
    return list(_exhaustive_cells_cached(n))


# --- cell files --------------------------------------------------------------

_HEADER_RE = re.compile(r"^rmclass-cells v1 n=(\d+) count=(\d+)$")
_CELL_RE = re.compile(r"^cell (\d+) size (\d+)$")


def export_cells(cells: list[ConjCell], path) -> None:
    if not cells:
        raise ValueError("refusing to export an empty decomposition")
    n = cells[0].rep.n
    lines = [f"rmclass-cells v1 n={n} count={len(cells)}"]
    for idx, c in enumerate(cells):
        if c.rep.n != n:
            raise ValueError("mixed n in cell list")
        lines.append(f"cell {idx} size {c.size}")
        lines.extend(c.rep.a.to_strings())
        lines.append(str(c.rep.b))
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii")


def import_cells(path) -> list[ConjCell]:
    """Parse and validate a cell file: representatives must be invertible
    and sizes must sum to |AGL(n,2)|."""
    text = Path(path).read_text(encoding="ascii")
    lines = text.splitlines()
    if not lines:
        raise CellFormatError(f"{path}: empty cell file")
    head = _HEADER_RE.match(lines[0].strip())
    if not head:
        raise CellFormatError(f"{path}: bad header {lines[0]!r}")
    n, count = int(head.group(1)), int(head.group(2))
    if not 1 <= n <= 10:
        raise CellFormatError(f"{path}: unsupported n={n}")
    cells = []
    pos = 1
    for idx in range(count):
        if pos >= len(lines):
            raise CellFormatError(f"{path}: truncated at cell {idx}")
        m = _CELL_RE.match(lines[pos].strip())
        if not m or int(m.group(1)) != idx:
            raise CellFormatError(f"{path}: bad cell header {lines[pos]!r}")
        size = int(m.group(2))
        pos += 1
        if pos + n + 1 > len(lines):
            raise CellFormatError(f"{path}: truncated matrix in cell {idx}")
        rows = [ln.strip() for ln in lines[pos:pos + n]]
        bline = lines[pos + n].strip()
        pos += n + 1
        for ln in rows + [bline]:
            if len(ln) != n or set(ln) - {"0", "1"}:
                raise CellFormatError(f"{path}: bad 0/1 line {ln!r}")
        try:
            rep = AffineElement(
                n, BitMatrix.from_strings(rows),
                BitVector.from_entries(int(c) for c in bline))
        except SingularMatrixError:
            raise CellDecompositionError(
                f"{path}: singular linear part in cell {idx}") from None
        if size < 1:
            raise CellDecompositionError(f"{path}: cell {idx} has size {size}")
        cells.append(ConjCell(rep, size))
    if any(ln.strip() for ln in lines[pos:]):
        raise CellFormatError(f"{path}: trailing garbage after cell {count - 1}")
    total = sum(c.size for c in cells)
    if total != group_orders(n)[1]:
        raise CellDecompositionError(
            f"{path}: sizes sum to {total}, not |AGL({n},2)|")
    return cells
