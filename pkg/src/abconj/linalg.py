"""Exact integer and rational linear algebra.

Matrices are tuples of row tuples, vectors are tuples. Every entry is a
Python ``int`` (or ``Fraction`` where a rational result is documented), so
arithmetic never overflows and never rounds.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Optional, Sequence, Tuple

from .errors import DomainError, UsageError

IntVector = Tuple[int, ...]
IntMatrix = Tuple[IntVector, ...]


def as_vector(entries: Sequence[int]) -> IntVector:
    out = []
    for x in entries:
        if isinstance(x, bool) or not isinstance(x, int):
            raise UsageError(f"vector entries must be integers, got {x!r}")
        out.append(x)
    return tuple(out)


def as_matrix(rows: Sequence[Sequence[int]]) -> IntMatrix:
    """Validate a rectangular integer grid and freeze it."""
    mat = tuple(as_vector(r) for r in rows)
    if mat and any(len(r) != len(mat[0]) for r in mat):
        raise UsageError("matrix rows have unequal lengths")
    return mat


def shape(A: IntMatrix) -> Tuple[int, int]:
    return (len(A), len(A[0]) if A else 0)


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def is_identity(A: IntMatrix) -> bool:
    return all(A[i][j] == (i == j) for i in range(len(A)) for j in range(len(A[i])))


def _check_square(A: IntMatrix, what: str = "matrix") -> int:
    rows, cols = shape(A)
    if rows != cols:
        raise UsageError(f"{what} must be square, got {rows}x{cols}")
    return rows


def vec_add(x: Sequence, y: Sequence) -> tuple:
    if len(x) != len(y):
        raise UsageError(f"vector length mismatch: {len(x)} vs {len(y)}")
    return tuple(a + b for a, b in zip(x, y))


def vec_sub(x: Sequence, y: Sequence) -> tuple:
    if len(x) != len(y):
        raise UsageError(f"vector length mismatch: {len(x)} vs {len(y)}")
    return tuple(a - b for a, b in zip(x, y))


def vec_scale(c, x: Sequence) -> tuple:
    return tuple(c * a for a in x)


def mat_vec(A: IntMatrix, x: Sequence) -> tuple:
    if A and len(A[0]) != len(x):
        raise UsageError(f"cannot apply {len(A)}x{len(A[0])} matrix to vector of length {len(x)}")
    return tuple(sum(a * b for a, b in zip(row, x)) for row in A)


def mat_mul(A: IntMatrix, B: IntMatrix) -> IntMatrix:
    (m, k), (k2, n) = shape(A), shape(B)
    if k != k2:
        raise UsageError(f"inner dimensions disagree: {m}x{k} times {k2}x{n}")
    cols = tuple(zip(*B)) if B else ()
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in A)


def transpose(A: IntMatrix) -> IntMatrix:
    return tuple(zip(*A))


def mat_pow(A: IntMatrix, k: int) -> IntMatrix:
    """``A**k`` by binary exponentiation; negative ``k`` needs ``|det A| = 1``."""
    n = _check_square(A)
    if k < 0:
        A = inverse_unimodular(A)
        k = -k
    result = identity(n)
    base = A
    while k:
        if k & 1:
            result = mat_mul(result, base)
        k >>= 1
        if k:
            base = mat_mul(base, base)
    return result


def determinant(A: IntMatrix) -> int:
    """Bareiss fraction-free elimination; every division is exact."""
    n = _check_square(A)
    if n == 0:
        return 1
    M = [list(r) for r in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = M[k][k]
        for i in range(k + 1, n):
            mik = M[i][k]
            row_i, row_k = M[i], M[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pk - mik * row_k[j]) // prev
        prev = pk
    return sign * M[n - 1][n - 1]


def is_unimodular(A: IntMatrix) -> bool:
    return abs(determinant(A)) == 1


def inverse_unimodular(A: IntMatrix) -> IntMatrix:
    """Integer inverse of a matrix with determinant +-1.

    The Smith form of a unimodular matrix is the identity, so
    ``U A V = I`` gives ``A^-1 = V U`` with no rational arithmetic.
    """
    _check_square(A)
    det = determinant(A)
    if abs(det) != 1:
        raise DomainError(f"matrix is not unimodular (determinant {det})")
    snf = smith_normal_form(A)
    return mat_mul(snf.V, snf.U)


def adjugate_solver(A: IntMatrix) -> Tuple[IntMatrix, int]:
    """Return ``(R, d)`` with ``A R = d I`` and ``d = +-det A``.

    Fraction-free Gauss-Jordan on ``[A | I]``; ``d`` is zero when ``A`` is
    singular, in which case ``R`` is meaningless.
    """
    n = _check_square(A)
    M = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(A)]
    width = 2 * n
    prev = 1
    for k in range(n):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    break
            else:
                return identity(n), 0
        pk = M[k][k]
        row_k = M[k]
        for i in range(n):
            if i == k:
                continue
            row_i = M[i]
            mik = row_i[k]
            for j in range(width):
                if j != k:
                    row_i[j] = (pk * row_i[j] - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = pk
    # Every diagonal entry now equals the last pivot.
    return tuple(tuple(M[i][n:]) for i in range(n)), prev


class SmithDecomposition(NamedTuple):
    """``U @ A @ V == D`` with ``U``, ``V`` unimodular and ``D`` in Smith form."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def invariant_factors(self) -> Tuple[int, ...]:
        m, n = shape(self.D)
        return tuple(self.D[i][i] for i in range(min(m, n)))


def _egcd(a: int, b: int) -> Tuple[int, int, int]:
    """``(g, x, y)`` with ``g = gcd(a, b) >= 0`` and ``a x + b y = g``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def smith_normal_form(A: IntMatrix) -> SmithDecomposition:
    """Smith normal form with unimodular transforms.

    gcd-driven reduction: the pivot row (column) is combined pairwise with
    each other row (column) by a 2x2 unimodular extended-gcd transform, so
    a single elimination step touches only two rows of the transform.
    Sweeping every row at once instead compounds entry growth stage after
    stage.
    """
    m, n = shape(A)
    D = [list(r) for r in A]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def combine_rows(M, i, j, a, b, c, d):
        # (row_i, row_j) <- (a row_i + b row_j, c row_i + d row_j)
        ri, rj = M[i], M[j]
        M[i] = [a * x + b * y for x, y in zip(ri, rj)]
        M[j] = [c * x + d * y for x, y in zip(ri, rj)]

    def combine_cols(M, i, j, a, b, c, d):
        for row in M:
            x, y = row[i], row[j]
            row[i] = a * x + b * y
            row[j] = c * x + d * y

    def clear(t, pivot_entry, other_entry, count, combine, mats):
        for j in range(t + 1, count):
            p, a = pivot_entry(), other_entry(j)
            if not a:
                continue
            if p and a % p == 0:
                coeffs = (1, 0, -(a // p), 1)
            else:
                g, x, y = _egcd(p, a)
                coeffs = (x, y, -(a // g), p // g)
            for M in mats:
                combine(M, t, j, *coeffs)

    for t in range(min(m, n)):
        nonzero = next(
            ((i, j) for i in range(t, m) for j in range(t, n) if D[i][j]), None
        )
        if nonzero is None:
            break
        pi, pj = nonzero
        if pi != t:
            D[t], D[pi] = D[pi], D[t]
            U[t], U[pi] = U[pi], U[t]
        if pj != t:
            for M in (D, V):
                for row in M:
                    row[t], row[pj] = row[pj], row[t]
        while True:
            while any(D[i][t] for i in range(t + 1, m)) or any(D[t][j] for j in range(t + 1, n)):
                clear(t, lambda: D[t][t], lambda i: D[i][t], m, combine_rows, (D, U))
                clear(t, lambda: D[t][t], lambda j: D[t][j], n, combine_cols, (D, V))
            p = D[t][t]
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p),
                None,
            )
            if bad is None:
                break
            combine_rows(D, t, bad, 1, 1, 0, 1)
            combine_rows(U, t, bad, 1, 1, 0, 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    return _freeze_smith(U, D, V)


def _freeze_smith(U, D, V) -> SmithDecomposition:
    return SmithDecomposition(
        tuple(map(tuple, U)), tuple(map(tuple, D)), tuple(map(tuple, V))
    )


class IntegerSolver:
    """Reusable solver for ``A b = c`` over the integers.

    The Smith decomposition is computed once; each :meth:`solve` is a
    matrix-vector product plus divisibility checks.
    """

    def __init__(self, A: IntMatrix):
        self.A = A
        self.shape = shape(A)
        self.snf = smith_normal_form(A)
        self.diagonal = self.snf.invariant_factors

    def solve(self, c: Sequence[int]) -> Optional[IntVector]:
        m, n = self.shape
        if len(c) != m:
            raise UsageError(f"right-hand side has length {len(c)}, expected {m}")
        uc = mat_vec(self.snf.U, c)
        y = [0] * n
        for i in range(m):
            d = self.diagonal[i] if i < len(self.diagonal) else 0
            if d == 0:
                if uc[i]:
                    return None
                continue
            q, r = divmod(uc[i], d)
            if r:
                return None
            y[i] = q
        return mat_vec(self.snf.V, y)


def solve_integer(A: IntMatrix, c: Sequence[int]) -> Optional[IntVector]:
    """Some integer ``b`` with ``A b = c``, or ``None`` if there is none.

    Free variables of the diagonalised system are set to zero, so the
    answer is deterministic.
    """
    return IntegerSolver(A).solve(c)


class KrylovBasis:
    """Echelon basis of the Krylov space ``span{x, Ax, A^2 x, ...}``.

    Each stored row remembers its expression in terms of the Krylov
    vectors, which yields both the minimal polynomial of ``A`` relative to
    ``x`` and coordinates of arbitrary vectors in the Krylov basis.
    """

    def __init__(self, A: IntMatrix, x: Sequence[int]):
        n = _check_square(A)
        if len(x) != n:
            raise UsageError(f"vector has length {len(x)}, expected {n}")
        if not any(x):
            raise DomainError("Krylov space of the zero vector is trivial")
        self.A = A
        self.x = tuple(x)
        self._rows = []  # (pivot column, reduced vector, Krylov combination)
        v = tuple(x)
        while True:
            k = len(self._rows)
            combo = [Fraction(0)] * k + [Fraction(1)]
            residual, combo = self._reduce(v, combo)
            if not any(residual):
                # A^k x = -sum combo_i A^i x, i.e. combo (monic) annihilates x
                self.relation = combo
                break
            pivot = next(i for i, a in enumerate(residual) if a)
            self._rows.append((pivot, residual, combo))
            v = mat_vec(A, v)

    @property
    def dimension(self) -> int:
        return len(self._rows)

    def _reduce(self, v, combo):
        r = [Fraction(a) for a in v]
        combo = list(combo)
        for pivot, row, row_combo in self._rows:
            if r[pivot]:
                f = r[pivot] / row[pivot]
                r = [a - f * b for a, b in zip(r, row)]
                for i, c in enumerate(row_combo):
                    combo[i] -= f * c
        return r, combo

    def minimal_polynomial(self) -> Tuple[int, ...]:
        coeffs = []
        for c in self.relation:
            if c.denominator != 1:
                raise ArithmeticError("relative minimal polynomial is not integral")
            coeffs.append(int(c))
        return tuple(coeffs)

    def express(self, y: Sequence[int]) -> Optional[Tuple[Fraction, ...]]:
        """Coefficients ``q`` (low degree first) with ``y = q(A) x``."""
        if len(y) != len(self.x):
            raise UsageError(f"vector has length {len(y)}, expected {len(self.x)}")
        d = self.dimension
        residual, combo = self._reduce(y, [Fraction(0)] * d)
        if any(residual):
            return None
        return tuple(-c for c in combo)


def minimal_polynomial_rel(A: IntMatrix, x: Sequence[int]) -> Tuple[int, ...]:
    """Monic integer polynomial ``m`` of least degree with ``m(A) x = 0``.

    Coefficients are returned low degree first.
    """
    return KrylovBasis(A, x).minimal_polynomial()
