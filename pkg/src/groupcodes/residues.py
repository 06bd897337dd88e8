"""Exact linear algebra over Z_M for arbitrary M >= 2.

The whole package reduces to row-span arithmetic in (Z_M)^n.  Because M need
not be prime, reduced row echelon form does not exist; the canonical form for
row spans over Z_M is the Howell form, which restores the two properties we
need everywhere:

* span equality is basis identity, and
* greedy reduction against the basis yields a canonical coset representative.

A ``Subgroup`` is an immutable row span held in Howell form.  Everything else
(duals, sums, intersections, quotient invariants) is built on top of it.
"""

from __future__ import annotations

from math import gcd, prod
from typing import Iterable, Iterator, Sequence

import numpy as np

from .snf import lattice_quotient_invariants


class OrderExceedsCap(Exception):
    """Enumeration was asked for more elements than its cap allows."""


def check_modulus(modulus: int) -> int:
    if not isinstance(modulus, (int, np.integer)) or modulus < 2:
        raise ValueError(f"modulus must be an integer >= 2, got {modulus!r}")
    return int(modulus)


def entry_dtype(modulus: int):
    # int64 products overflow at M ~ 2^31; fall back to exact object ints,
    # which numpy propagates through mixed arithmetic
    return np.int64 if modulus <= (1 << 31) else object


def as_residue_matrix(modulus: int, rows: Iterable[Sequence[int]] | np.ndarray,
                      ambient: int | None = None) -> np.ndarray:
    """Normalize ``rows`` into an (r, n) array with entries in [0, M)."""
    M = check_modulus(modulus)
    dtype = entry_dtype(M)
    a = np.array(list(rows) if not isinstance(rows, np.ndarray) else rows,
                 dtype=dtype)
    if a.size == 0:
        n = ambient if ambient is not None else (a.shape[1] if a.ndim == 2 else 0)
        return np.zeros((0, n), dtype=dtype)
    if a.ndim != 2:
        raise ValueError("expected a 2-d array of residues")
    if ambient is not None and a.shape[1] != ambient:
        raise ValueError(f"expected {ambient} columns, got {a.shape[1]}")
    return a % M


def _gcdex(a: int, b: int) -> tuple[int, int, int, int, int]:
    """Return (g, s, t, u, v) with s*a + t*b = g, u*a + v*b = 0, s*v - t*u = 1.

    The 2x2 matrix [[s, t], [u, v]] has determinant 1 over the integers, so it
    is invertible over Z_M for every M; applying it as a row operation
    preserves row spans.
    """
    if b == 0:
        return a, 1, 0, 0, 1
    if a == 0:
        return b, 0, 1, 1, 0
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    g = old_r
    return g, old_s, old_t, -(b // g), a // g


def _unit_lifting(a: int, M: int) -> tuple[int, int]:
    """Return (d, u) with d = gcd(a, M) and u a unit of Z_M, u*a = d (mod M).

    gcd(a/d, M/d) = 1, so an inverse of a/d exists mod M/d; it is then nudged
    along the progression u0 + t*(M/d) until it is coprime to M itself.
    """
    a %= M
    d = gcd(a, M)
    if d == M:  # a == 0
        return M, 1
    u = pow(a // d, -1, M // d)
    step = M // d
    while gcd(u, M) != 1:
        u += step
    return d, u % M


def howell_form(modulus: int, rows: np.ndarray) -> np.ndarray:
    """Compute the Howell form of the row span of ``rows`` over Z_M.

    The result is the unique matrix with the following properties whose rows
    span the same subgroup of (Z_M)^n:

    * rows are nonzero with strictly increasing pivot columns;
    * every pivot entry divides M;
    * entries above a pivot are reduced modulo that pivot;
    * for each row with pivot p, the row (M/p)*row lies in the span of the
      later rows (the Howell property, which makes greedy coset reduction
      canonical).
    """
    M = check_modulus(modulus)
    dtype = entry_dtype(M)
    n = rows.shape[1]
    work = [r.astype(dtype) % M for r in rows if (r % M).any()]
    pivots: list[tuple[int, int]] = []  # (column, divisor) per result row
    result: list[np.ndarray] = []
    for col in range(n):
        hits = [r for r in work if r[col]]
        rest = [r for r in work if not r[col]]
        if not hits:
            work = rest
            continue
        pivot_row = hits[0]
        for r in hits[1:]:
            g, s, t, u, v = _gcdex(int(pivot_row[col]), int(r[col]))
            pivot_row, residual = ((s * pivot_row + t * r) % M,
                                   (u * pivot_row + v * r) % M)
            if residual.any():
                rest.append(residual)
        d, unit = _unit_lifting(int(pivot_row[col]), M)
        pivot_row = (unit * pivot_row) % M
        # Howell closure: (M/d)*row drops out of this column but may carry
        # information further right; keep it in play.
        extra = ((M // d) * pivot_row) % M
        if extra.any():
            rest.append(extra)
        result.append(pivot_row)
        pivots.append((col, d))
        work = rest
    # Reduce entries above each pivot modulo the pivot.
    for i in range(len(result) - 2, -1, -1):
        for j in range(i + 1, len(result)):
            col, d = pivots[j]
            q = int(result[i][col]) // d
            if q:
                result[i] = (result[i] - q * result[j]) % M
    if not result:
        return np.zeros((0, n), dtype=dtype)
    return np.array(result, dtype=dtype)


class Subgroup:
    """A subgroup of (Z_M)^n, held as the Howell basis of its row span.

    Instances are immutable and canonical: two Subgroups are equal iff they
    are the same subgroup.
    """

    __slots__ = ("modulus", "ambient", "basis", "_pivots", "_hash")

    def __init__(self, modulus: int, basis: np.ndarray, ambient: int,
                 _canonical: bool = False):
        self.modulus = check_modulus(modulus)
        mat = as_residue_matrix(modulus, basis, ambient)
        if not _canonical:
            mat = howell_form(self.modulus, mat)
        mat.setflags(write=False)
        self.ambient = ambient
        self.basis = mat
        self._pivots = tuple(
            (int(np.argmax(row != 0)), int(row[np.argmax(row != 0)]))
            for row in mat)
        self._hash: int | None = None

    # -- construction -----------------------------------------------------

    @classmethod
    def span(cls, modulus: int, rows: Iterable[Sequence[int]] | np.ndarray,
             ambient: int) -> "Subgroup":
        return cls(modulus, as_residue_matrix(modulus, rows, ambient), ambient)

    @classmethod
    def trivial(cls, modulus: int, ambient: int) -> "Subgroup":
        return cls(modulus, np.zeros((0, ambient), dtype=entry_dtype(modulus)),
                   ambient, _canonical=True)

    @classmethod
    def full(cls, modulus: int, ambient: int) -> "Subgroup":
        return cls(modulus, np.eye(ambient, dtype=entry_dtype(modulus)), ambient,
                   _canonical=True)

    # -- basic protocol ----------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return (self.modulus == other.modulus
                and self.ambient == other.ambient
                and self.basis.shape == other.basis.shape
                and bool(np.array_equal(self.basis, other.basis)))

    def __hash__(self) -> int:
        if self._hash is None:
            key = (self.basis.tobytes() if self.basis.dtype == np.int64
                   else tuple(int(x) for x in self.basis.flat))
            self._hash = hash((self.modulus, self.ambient, self.basis.shape, key))
        return self._hash

    def __repr__(self) -> str:
        rows = [list(map(int, r)) for r in self.basis]
        return f"Subgroup(mod {self.modulus}, ambient {self.ambient}, basis {rows})"

    @property
    def num_generators(self) -> int:
        return self.basis.shape[0]

    def is_trivial(self) -> bool:
        return self.basis.shape[0] == 0

    # -- core operations ---------------------------------------------------

    def _vector(self, v: Sequence[int] | np.ndarray) -> np.ndarray:
        a = np.asarray(v, dtype=entry_dtype(self.modulus))
        if a.shape != (self.ambient,):
            raise ValueError(
                f"expected a vector of length {self.ambient}, got shape {a.shape}")
        return a % self.modulus

    def reduce(self, v: Sequence[int] | np.ndarray) -> np.ndarray:
        """Canonical representative of the coset ``self + v``.

        Greedy reduction against the Howell basis: two vectors reduce to the
        same representative iff they differ by an element of the subgroup.
        """
        M = self.modulus
        r = self._vector(v)
        for row, (col, d) in zip(self.basis, self._pivots):
            q = int(r[col]) // d
            if q:
                r = (r - q * row) % M
        return r

    def contains(self, v: Sequence[int] | np.ndarray) -> bool:
        return not self.reduce(v).any()

    def contains_subgroup(self, other: "Subgroup") -> bool:
        self._check_compatible(other)
        return all(self.contains(row) for row in other.basis)

    def order(self) -> int:
        """Exact number of elements of the subgroup."""
        return prod(self.modulus // d for _, d in self._pivots)

    def enumerate(self, cap: int = 1 << 20) -> Iterator[np.ndarray]:
        """Yield every element exactly once (unique pivot-coefficient sweep)."""
        if self.order() > cap:
            raise OrderExceedsCap(f"subgroup order {self.order()} exceeds cap {cap}")
        M = self.modulus
        out = np.zeros(self.ambient, dtype=entry_dtype(M))

        def rec(i: int, acc: np.ndarray) -> Iterator[np.ndarray]:
            if i == self.num_generators:
                yield acc % M
                return
            _, d = self._pivots[i]
            row = self.basis[i]
            for t in range(M // d):
                yield from rec(i + 1, acc + t * row)

        yield from rec(0, out)

    def _check_compatible(self, other: "Subgroup") -> None:
        if self.modulus != other.modulus:
            raise ValueError("modulus mismatch")
        if self.ambient != other.ambient:
            raise ValueError("ambient dimension mismatch")


def span(modulus: int, rows: Iterable[Sequence[int]] | np.ndarray,
         ambient: int) -> Subgroup:
    """Howell-canonical subgroup spanned by ``rows`` inside (Z_M)^ambient."""
    return Subgroup.span(modulus, rows, ambient)


def add(h1: Subgroup, h2: Subgroup) -> Subgroup:
    """Sum of subgroups: span of the stacked bases."""
    h1._check_compatible(h2)
    stacked = np.vstack([h1.basis, h2.basis]) if h1.num_generators or h2.num_generators \
        else np.zeros((0, h1.ambient), dtype=entry_dtype(h1.modulus))
    return Subgroup(h1.modulus, stacked, h1.ambient)


def left_kernel(modulus: int, mat: np.ndarray, ambient: int) -> Subgroup:
    """{x in (Z_M)^r : x @ mat = 0 (mod M)} for an (r, n) matrix.

    Works by Howell-reducing [mat | I]: by the Howell property, the rows whose
    first n columns vanish span exactly the kernel, read off in the identity
    block.
    """
    M = check_modulus(modulus)
    r, n = mat.shape
    if ambient != r:
        raise ValueError("ambient must equal the row count of mat")
    aug = np.hstack([(mat % M).astype(entry_dtype(M)),
                     np.eye(r, dtype=entry_dtype(M))])
    h = howell_form(M, aug)
    keep = [row[n:] for row in h if not row[:n].any()]
    if not keep:
        return Subgroup.trivial(M, r)
    return Subgroup(M, np.array(keep, dtype=entry_dtype(M)), r, _canonical=True)


def orthogonal(h: Subgroup) -> Subgroup:
    """Annihilator {x : b . x = 0 (mod M) for every basis row b}.

    Satisfies orthogonal(orthogonal(h)) == h and
    order(h) * order(orthogonal(h)) == M ** ambient.
    """
    if h.num_generators == 0:
        return Subgroup.full(h.modulus, h.ambient)
    return left_kernel(h.modulus, h.basis.T.copy(), h.ambient)


def intersect(h1: Subgroup, h2: Subgroup) -> Subgroup:
    """Exact intersection, via the sum of the annihilators."""
    h1._check_compatible(h2)
    return orthogonal(add(orthogonal(h1), orthogonal(h2)))


def quotient_invariants(a: Subgroup, b: Subgroup) -> tuple[int, ...]:
    """Invariant factors d_1 | d_2 | ... of the finite abelian group a/b.

    Requires b <= a.  Both groups are identified with integer lattices between
    M*Z^n and Z^n; the quotient's elementary divisors come from an integer
    Smith normal form, which sidesteps the zero divisors of Z_M.  Unit factors
    are dropped, so the trivial group is ().
    """
    a._check_compatible(b)
    if not a.contains_subgroup(b):
        raise ValueError("quotient_invariants requires b to be a subgroup of a")
    factors = lattice_quotient_invariants(
        a.modulus, a.ambient,
        [list(map(int, row)) for row in a.basis],
        [list(map(int, row)) for row in b.basis])
    return factors


def invariants(h: Subgroup) -> tuple[int, ...]:
    """Invariant factors of the subgroup itself (quotient by the trivial group)."""
    return quotient_invariants(h, Subgroup.trivial(h.modulus, h.ambient))


def group_order(factors: Sequence[int]) -> int:
    return prod(factors) if factors else 1


def format_group(factors: Sequence[int]) -> str:
    """Render an invariant-factor list as 'Z2 x Z4', or 'trivial'."""
    if not factors:
        return "trivial"
    return " x ".join(f"Z{d}" for d in factors)
