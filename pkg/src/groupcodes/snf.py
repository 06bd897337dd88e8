"""Integer Hermite and Smith normal forms for small dense matrices.

Used to classify finite abelian quotients A/B of subgroups of (Z_M)^n.  Both
subgroups are lifted to integer lattices sandwiched between M*Z^n and Z^n;
the invariant factors of the quotient are the nontrivial elementary divisors
of the change-of-basis matrix between the two lattices.

Everything here runs on plain Python ints: intermediate entries in a Smith
reduction can overflow fixed-width words even for small inputs.
"""

from __future__ import annotations

from math import gcd
from typing import Sequence

Matrix = list[list[int]]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def hermite_basis(rows: Sequence[Sequence[int]], n: int) -> Matrix:
    """Row-style Hermite basis of the lattice spanned by ``rows`` in Z^n.

    Returns an upper-triangular full-rank basis (the input lattices here
    always contain M*Z^n, hence have rank n), with positive diagonal and
    off-diagonal entries reduced modulo the pivot below them.
    """
    work: Matrix = [list(map(int, r)) for r in rows if any(r)]
    basis: Matrix = []
    for col in range(n):
        hits = [r for r in work if r[col] != 0]
        rest = [r for r in work if r[col] == 0]
        if not hits:
            raise ValueError("lattice is not full rank")
        pivot = hits[0]
        for r in hits[1:]:
            g, s, t = _xgcd(pivot[col], r[col])
            u, v = -(r[col] // g), pivot[col] // g
            pivot, r = ([s * x + t * y for x, y in zip(pivot, r)],
                        [u * x + v * y for x, y in zip(pivot, r)])
            if any(r):
                rest.append(r)
        if pivot[col] < 0:
            pivot = [-x for x in pivot]
        basis.append(pivot)
        work = rest
    # reduce above-diagonal entries
    for i in range(n - 2, -1, -1):
        for j in range(i + 1, n):
            q = basis[i][j] // basis[j][j]
            if q:
                basis[i] = [x - q * y for x, y in zip(basis[i], basis[j])]
    return basis


def solve_upper_triangular(basis: Matrix, target: Sequence[int]) -> list[int]:
    """Solve x @ basis == target exactly over Z (basis upper triangular)."""
    n = len(basis)
    x = [0] * n
    for j in range(n):
        acc = target[j] - sum(x[i] * basis[i][j] for i in range(j))
        if acc % basis[j][j]:
            raise ValueError("target is not in the lattice")
        x[j] = acc // basis[j][j]
    return x


def smith_diagonal(mat: Matrix) -> list[int]:
    """Diagonal of the Smith normal form of a square integer matrix.

    Classic pivoting algorithm: move a smallest nonzero entry to the corner,
    clear its row and column, restore the divisibility chain, recurse.
    """
    a = [row[:] for row in mat]
    n = len(a)
    diag: list[int] = []
    top = 0
    while top < n:
        # locate smallest nonzero entry in the trailing block
        best = None
        for i in range(top, n):
            for j in range(top, n):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            diag.extend(0 for _ in range(n - top))
            break
        i, j = best
        a[top], a[i] = a[i], a[top]
        for row in a:
            row[top], row[j] = row[j], row[top]
        dirty = False
        for i in range(top + 1, n):
            q = a[i][top] // a[top][top]
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[top])]
            if a[i][top]:
                dirty = True
        for j in range(top + 1, n):
            q = a[top][j] // a[top][top]
            if q:
                for row in a:
                    row[j] -= q * row[top]
            if a[top][j]:
                dirty = True
        if dirty:
            continue
        # pivot must divide every remaining entry; if not, fold the offending
        # row into the pivot row and redo this corner
        p = a[top][top]
        offender = None
        for i in range(top + 1, n):
            for j in range(top + 1, n):
                if a[i][j] % p:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            a[top] = [x + y for x, y in zip(a[top], a[offender])]
            continue
        diag.append(abs(p))
        top += 1
    return diag


def lattice_quotient_invariants(modulus: int, ambient: int,
                                a_rows: Sequence[Sequence[int]],
                                b_rows: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Invariant factors of L_A / L_B, where L_X = span_Z(X) + M*Z^ambient.

    Callers guarantee span(b) <= span(a) over Z_M, which makes L_B <= L_A.
    """
    m_block = [[modulus if i == j else 0 for j in range(ambient)]
               for i in range(ambient)]
    ha = hermite_basis(list(a_rows) + m_block, ambient)
    hb = hermite_basis(list(b_rows) + m_block, ambient)
    change = [solve_upper_triangular(ha, row) for row in hb]
    factors = [d for d in smith_diagonal(change) if d > 1]
    for small, big in zip(factors, factors[1:]):
        if big % small:
            raise AssertionError(f"broken divisor chain {factors}")
    return tuple(factors)
