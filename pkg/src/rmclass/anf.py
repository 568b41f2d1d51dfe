"""Boolean polynomials in algebraic normal form.

A polynomial on n variables is a set of monomials; the set is packed into a
2**n-bit int (bit u = the monomial whose variables are the set bits of u,
bit t of u meaning x_{t+1}). Addition is xor of term sets; multiplication
expands with the idempotency x_j^2 = x_j, i.e. the product of two monomials
is the union of their masks.

Point vectors use the same layout (bit t = value of x_{t+1}), so evaluating
a monomial at a point is a subset test. The big-endian integer convention
for points (coordinate 1 = most significant bit of the index) lives in
group.py; here only truth tables, indexed by that convention, touch it.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from itertools import combinations
from typing import TYPE_CHECKING, Iterable

from .gf2 import BitVector

if TYPE_CHECKING:  # pragma: no cover
    from .group import AffineElement


class DegreeOutOfRangeError(ValueError):
    """A term's degree falls outside the admissible window (k, s]."""


def check_params(n: int, s: int, k: int) -> None:
    """Validate a quotient-space parameter triple; k = -1 means no quotient."""
    if not (-1 <= k < s <= n):
        raise ValueError(f"need -1 <= k < s <= n, got n={n} s={s} k={k}")


def space_dimension(n: int, s: int, k: int) -> int:
    """Dimension of the coefficient space: sum of C(n,i) for k < i <= s."""
    check_params(n, s, k)
    return sum(math.comb(n, i) for i in range(k + 1, s + 1))


@dataclass(frozen=True)
class Monomial:
    """Product of distinct variables; mask bit t set means x_{t+1} divides it."""

    n: int
    mask: int

    def __post_init__(self):
        if self.n < 0 or not 0 <= self.mask < (1 << self.n):
            raise ValueError(f"mask {self.mask} out of range for n={self.n}")

    @classmethod
    def from_variables(cls, n: int, variables: Iterable[int]) -> "Monomial":
        mask = 0
        for v in variables:
            if not 1 <= v <= n:
                raise ValueError(f"variable x{v} out of range for n={n}")
            mask |= 1 << (v - 1)
        return cls(n, mask)

    @property
    def degree(self) -> int:
        return self.mask.bit_count()

    @property
    def variables(self) -> tuple[int, ...]:
        """1-based variable indices, ascending."""
        return tuple(t + 1 for t in range(self.n) if (self.mask >> t) & 1)

    def __str__(self) -> str:
        if self.mask == 0:
            return "1"
        return "*".join(f"x{v}" for v in self.variables)


@functools.lru_cache(maxsize=None)
def monomial_order(n: int, s: int, k: int) -> tuple[Monomial, ...]:
    """Ordered basis of the coefficient space: degrees descending from s to
    k+1; within a degree, ascending lexicographic order of the sorted
    variable-index tuples (x1x2 before x1x3 before x2x3)."""
    check_params(n, s, k)
    order = []
    for deg in range(s, k, -1):
        for combo in combinations(range(1, n + 1), deg):
            order.append(Monomial.from_variables(n, combo))
    return tuple(order)


@dataclass(frozen=True)
class Anf:
    """A Boolean function as its xor-of-monomials normal form."""

    n: int
    terms: int  # bit u set = monomial with mask u present

    def __post_init__(self):
        if self.n < 0 or not 0 <= self.terms < (1 << (1 << self.n)):
            raise ValueError("terms out of range")

    @classmethod
    def zero(cls, n: int) -> "Anf":
        return cls(n, 0)

    @classmethod
    def one(cls, n: int) -> "Anf":
        return cls(n, 1)

    @classmethod
    def from_masks(cls, n: int, masks: Iterable[int]) -> "Anf":
        terms = 0
        for u in masks:
            if not 0 <= u < (1 << n):
                raise ValueError(f"mask {u} out of range for n={n}")
            terms ^= 1 << u
        return cls(n, terms)

    def monomials(self) -> list[Monomial]:
        return [Monomial(self.n, u) for u in self.masks()]

    def masks(self) -> list[int]:
        out = []
        t = self.terms
        while t:
            low = t & -t
            out.append(low.bit_length() - 1)
            t ^= low
        return out

    def degree(self) -> int:
        """Max term degree; -1 for the zero polynomial."""
        return max((u.bit_count() for u in self.masks()), default=-1)

    def min_degree(self) -> int:
        return min((u.bit_count() for u in self.masks()), default=-1)

    def contains(self, mask: int) -> bool:
        return bool((self.terms >> mask) & 1)

    def is_zero(self) -> bool:
        return self.terms == 0

    def __xor__(self, other: "Anf") -> "Anf":
        if self.n != other.n:
            raise ValueError("variable count mismatch")
        return Anf(self.n, self.terms ^ other.terms)

    def __mul__(self, other: "Anf") -> "Anf":
        if self.n != other.n:
            raise ValueError("variable count mismatch")
        acc = 0
        for u in self.masks():
            for v in other.masks():
                acc ^= 1 << (u | v)
        return Anf(self.n, acc)

    def __str__(self) -> str:
        return format_anf(self)


@dataclass(frozen=True)
class CoefficientVector:
    """Coordinates of a function in the canonical monomial order of the
    quotient space with parameters (n, s, k)."""

    n: int
    s: int
    k: int
    bits: BitVector

    def __post_init__(self):
        d = space_dimension(self.n, self.s, self.k)
        if self.bits.n != d:
            raise ValueError(f"expected length {d}, got {self.bits.n}")

    def entries(self) -> tuple[int, ...]:
        return self.bits.entries()

    def __str__(self) -> str:
        return str(self.bits)


def cv(f: Anf, s: int, k: int) -> CoefficientVector:
    """Coefficient vector of f; every term must have degree in (k, s]."""
    order = monomial_order(f.n, s, k)
    for u in f.masks():
        deg = u.bit_count()
        if deg > s or deg <= k:
            raise DegreeOutOfRangeError(
                f"term of degree {deg} outside window ({k}, {s}]")
    bits = 0
    for pos, m in enumerate(order):
        if f.contains(m.mask):
            bits |= 1 << pos
    return CoefficientVector(f.n, s, k, BitVector(len(order), bits))


def anf_of_cv(c: CoefficientVector) -> Anf:
    """Inverse of cv: rebuild the polynomial from its coordinates."""
    order = monomial_order(c.n, c.s, c.k)
    terms = 0
    for pos, m in enumerate(order):
        if c.bits[pos]:
            terms ^= 1 << m.mask
    return Anf(c.n, terms)


def project(f: Anf, s: int, k: int) -> CoefficientVector:
    """Drop terms of degree <= k (reduction mod the lower-order space), then
    encode; terms of degree > s are an error."""
    check_params(f.n, s, k)
    if f.degree() > s:
        raise DegreeOutOfRangeError(f"degree {f.degree()} exceeds s={s}")
    kept = Anf(f.n, f.terms & _window_indicator(f.n, s, k))
    return cv(kept, s, k)


# --- substitution kernel -------------------------------------------------
#
# Dense term sets make multiplying by one linear form cheap: multiplying
# every present monomial by x_t maps bit u to bit u|2^t, which is a masked
# shift on the whole 2^n-bit set at once.

@functools.lru_cache(maxsize=None)
def _var_masks(n: int) -> tuple[int, ...]:
    """has[t] = positions u (as one 2**n-bit constant) with bit t of u set."""
    out = []
    size = 1 << n
    for t in range(n):
        step = 1 << t
        block = ((1 << step) - 1) << step  # bits [2^t, 2^(t+1))
        pat = 0
        for base in range(0, size, step << 1):
            pat |= block << base
        out.append(pat)
    return tuple(out)


@functools.lru_cache(maxsize=None)
def _window_indicator(n: int, s: int, k: int) -> int:
    """Bit u set iff k < popcount(u) <= s; selects a window of term degrees."""
    check_params(n, s, k)
    ind = 0
    for u in range(1 << n):
        if k < u.bit_count() <= s:
            ind |= 1 << u
    return ind


def mul_by_variable(terms: int, t: int, n: int) -> int:
    """Multiply a dense term set by x_{t+1} (with x^2 = x and cancellation)."""
    has = _var_masks(n)[t]
    keep = terms & has
    return keep ^ ((terms ^ keep) << (1 << t))


def mul_by_linear(terms: int, row_bits: int, const: int, n: int) -> int:
    """Multiply a dense term set by the affine form (sum of x_{t+1} over set
    bits t of row_bits) xor const."""
    acc = terms if const else 0
    has = _var_masks(n)
    r = row_bits
    while r:
        low = r & -r
        t = low.bit_length() - 1
        keep = terms & has[t]
        acc ^= keep ^ ((terms ^ keep) << (1 << t))
        r ^= low
    return acc


def substitute(m: Monomial, g: "AffineElement") -> Anf:
    """ANF of x -> m(Ax xor b): the product of the affine forms replacing
    each variable of m."""
    if m.n != g.n:
        raise ValueError("variable count mismatch")
    terms = 1  # the constant monomial
    u = m.mask
    while u:
        low = u & -u
        j = low.bit_length() - 1  # variable x_{j+1}, row j of A
        terms = mul_by_linear(terms, g.a.row_bits[j], g.b[j], m.n)
        u ^= low
    return Anf(m.n, terms)


def substitute_anf(f: Anf, g: "AffineElement") -> Anf:
    """ANF of x -> f(Ax xor b)."""
    if f.n != g.n:
        raise ValueError("variable count mismatch")
    acc = 0
    for u in f.masks():
        acc ^= substitute(Monomial(f.n, u), g).terms
    return Anf(f.n, acc)


# --- truth tables ---------------------------------------------------------

def _point_of_index(i: int, n: int) -> int:
    """Truth-table index -> point bits in the internal layout (reverse the
    n-bit string: coordinate 1 is the most significant bit of the index)."""
    v = 0
    for t in range(n):
        if (i >> t) & 1:
            v |= 1 << (n - 1 - t)
    return v


def evaluate(f: Anf, x: BitVector) -> int:
    """Value of f at a point given in coordinate layout (bit t = x_{t+1})."""
    if x.n != f.n:
        raise ValueError("point length mismatch")
    # indicator of all submasks of x: bit u set iff u subset of x.bits
    ind = 1
    v = x.bits
    while v:
        low = v & -v
        ind |= ind << low
        v ^= low
    return (f.terms & ind).bit_count() & 1


def truth_table(f: Anf) -> BitVector:
    """Truth table of f as a 2**n-bit vector, bit i = f at the point whose
    big-endian expansion is i."""
    n = f.n
    tbl = f.terms
    # zeta transform over the subset lattice: tbl[v] = xor of terms u <= v
    for t in range(n):
        has = _var_masks(n)[t]
        tbl ^= (tbl & ~has) << (1 << t)
    size = 1 << n
    out = 0
    for i in range(size):
        if (tbl >> _point_of_index(i, n)) & 1:
            out |= 1 << i
    return BitVector(size, out)


def anf_from_truth_table(t: BitVector) -> Anf:
    """Binary Moebius transform of a truth table (inverse of truth_table)."""
    size = t.n
    n = size.bit_length() - 1
    if size < 1 or (1 << n) != size:
        raise ValueError(f"table length {size} is not a power of two")
    tbl = 0
    for i in range(size):
        if t[i]:
            tbl |= 1 << _point_of_index(i, n)
    # the GF(2) Moebius transform is the same butterfly as the zeta transform
    for tt in range(n):
        has = _var_masks(n)[tt]
        tbl ^= (tbl & ~has) << (1 << tt)
    return Anf(n, tbl)


# --- text form ------------------------------------------------------------

def format_anf(f: Anf) -> str:
    """Render as `x1*x2 + x3 + 1`; xor is written `+`; zero is `0`."""
    if f.is_zero():
        return "0"
    monos = sorted(f.monomials(), key=lambda m: (-m.degree, m.variables))
    return " + ".join(str(m) for m in monos)


def parse_anf(text: str, n: int) -> Anf:
    """Parse the format_anf syntax; unknown variables or malformed terms
    raise ValueError. Repeated equal terms cancel (xor semantics)."""
    text = text.strip()
    if not text:
        raise ValueError("empty polynomial text")
    terms = 0
    for raw in text.split("+"):
        term = raw.strip()
        if not term:
            raise ValueError(f"empty term in {text!r}")
        if term == "0":
            continue
        if term == "1":
            terms ^= 1
            continue
        mask = 0
        for factor in term.split("*"):
            factor = factor.strip()
            if not factor.startswith("x"):
                raise ValueError(f"bad factor {factor!r}")
            try:
                v = int(factor[1:])
            except ValueError:
                raise ValueError(f"bad factor {factor!r}") from None
            if not 1 <= v <= n:
                raise ValueError(f"variable {factor!r} out of range for n={n}")
            mask |= 1 << (v - 1)
        terms ^= 1 << mask
    return Anf(n, terms)
