"""Fraction-free exact linear algebra over the scalar ring.

Works on plain lists of lists of scalars.  Determinants use Bareiss'
one-step elimination; inverses use the Gauss-Jordan variant (Montante's
method) whose divisions by the previous pivot are exact, so intermediate
entries stay polynomial.  Both tolerate zero pivots via row swaps.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import SingularMatrixError
from .scalars import Ring, Scalar

Matrix = list[list[Scalar]]


def identity(n: int, ring: Ring) -> Matrix:
    one, zero = ring.one(), ring.zero()
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def mat_mul(a: Matrix, b: Matrix, ring: Ring) -> Matrix:
    n, m, p = len(a), len(b[0]), len(b)
    out = [[ring.zero()] * m for _ in range(n)]
    for i in range(n):
        for k in range(p):
            aik = a[i][k]
            if aik.is_zero():
                continue
            row = out[i]
            brow = b[k]
            for j in range(m):
                if not brow[j].is_zero():
                    row[j] = row[j] + aik * brow[j]
    return out


def conj_transpose(a: Matrix) -> Matrix:
    n, m = len(a), len(a[0])
    return [[a[i][j].conj() for i in range(n)] for j in range(m)]


def bareiss_det(rows: Matrix, ring: Ring) -> Scalar:
    """Exact determinant by fraction-free elimination with row pivoting."""
    n = len(rows)
    if n == 0:
        return ring.one()
    a = [list(r) for r in rows]
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        if a[k][k].is_zero():
            for r in range(k + 1, n):
                if not a[r][k].is_zero():
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return ring.zero()
        piv = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                a[i][j] = (piv * a[i][j] - aik * a[k][j]).exact_div(prev)
            a[i][k] = ring.zero()
        prev = piv
    det = a[n - 1][n - 1]
    return -det if sign < 0 else det


def montante_inverse(rows: Matrix, ring: Ring) -> tuple[Matrix, Scalar, Scalar]:
    """Fraction-free Gauss-Jordan on [A | I].

    Returns (num, piv, det) with A^{-1} = num / piv entrywise and det the
    sign-corrected determinant (piv is det up to the row-swap sign).
    Raises SingularMatrixError when A is singular.
    """
    n = len(rows)
    a = [list(rows[i]) + [ring.one() if i == j else ring.zero() for j in range(n)]
         for i in range(n)]
    sign = 1
    prev = ring.one()
    for k in range(n):
        if a[k][k].is_zero():
            for r in range(k + 1, n):
                if not a[r][k].is_zero():
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                raise SingularMatrixError("matrix is singular")
        piv = a[k][k]
        for i in range(n):
            if i == k:
                continue
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(2 * n):
                row_i[j] = (piv * row_i[j] - aik * row_k[j]).exact_div(prev)
        prev = piv
    # The left block now carries the last pivot on every diagonal entry.
    piv = a[n - 1][n - 1]
    num = [row[n:] for row in a]
    det = -piv if sign < 0 else piv
    return num, piv, det


def exact_inverse(rows: Matrix, ring: Ring) -> Matrix:
    """A^{-1} with entries in the scalar ring; the division by the
    determinant must be exact (it is whenever det is a monomial)."""
    num, piv, _ = montante_inverse(rows, ring)
    return [[c.exact_div(piv) for c in row] for row in num]


def char_poly(rows: Matrix, ring: Ring) -> list[Scalar]:
    """Coefficients [1, c1, ..., cn] of det(x*I - A) = x^n + c1 x^{n-1} + ...

    Faddeev-LeVerrier recursion; the only divisions are by integers.
    """
    n = len(rows)
    coeffs = [ring.one()]
    m = identity(n, ring)
    for k in range(1, n + 1):
        m = mat_mul(rows, m, ring)
        tr = ring.zero()
        for i in range(n):
            tr = tr + m[i][i]
        ck = tr * Fraction(-1, k)
        coeffs.append(ck)
        for i in range(n):
            m[i][i] = m[i][i] + ck
    return coeffs


def matrix_rank(rows: Matrix, ring: Ring) -> int:
    """Rank by fraction-free row echelon with full column scanning."""
    if not rows:
        return 0
    a = [list(r) for r in rows]
    n, m = len(a), len(a[0])
    rank = 0
    prev = ring.one()
    col = 0
    while rank < n and col < m:
        pivot_row = None
        for r in range(rank, n):
            if not a[r][col].is_zero():
                pivot_row = r
                break
        if pivot_row is None:
            col += 1
            continue
        a[rank], a[pivot_row] = a[pivot_row], a[rank]
        piv = a[rank][col]
        for i in range(rank + 1, n):
            aic = a[i][col]
            for j in range(col, m):
                a[i][j] = (piv * a[i][j] - aic * a[rank][j]).exact_div(prev)
        prev = piv
        rank += 1
        col += 1
    return rank


def is_hermitian(rows: Matrix) -> bool:
    n = len(rows)
    return all(
        rows[i][j] == rows[j][i].conj() for i in range(n) for j in range(i, n)
    )


def psd_certificate(rows: Matrix, ring: Ring) -> tuple[bool, list]:
    """Decide positive semidefiniteness of a Hermitian matrix exactly.

    Uses the sign pattern of the characteristic polynomial: with
    det(xI - A) = x^n + c1 x^{n-1} + ..., the sums of principal k-minors
    are e_k = (-1)^k c_k, and a Hermitian matrix is PSD iff all e_k >= 0.
    Entries must be constant scalars.  Returns (verdict, [e_1..e_n]).
    """
    coeffs = char_poly(rows, ring)
    minors = []
    ok = True
    for k in range(1, len(coeffs)):
        ek = coeffs[k].constant() * ((-1) ** k)
        if not ek.is_real():
            ok = False
        minors.append(ek)
        if ek.re < 0:
            ok = False
    return ok, minors


def principal_minor_sums_bruteforce(rows: Matrix, ring: Ring) -> list:
    """Sums of principal k-minors by direct enumeration (oracle for
    psd_certificate on small matrices)."""
    from itertools import combinations

    n = len(rows)
    sums = []
    for k in range(1, n + 1):
        total = ring.zero()
        for subset in combinations(range(n), k):
            sub = [[rows[i][j] for j in subset] for i in subset]
            total = total + bareiss_det(sub, ring)
        sums.append(total)
    return sums
