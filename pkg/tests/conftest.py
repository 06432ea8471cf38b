import itertools
import math
from fractions import Fraction

import pytest

from abconj.group import make_group

FIB_PHI = ((2, 1), (1, 1))
SWAP = ((0, 1), (1, 0))
ROT4 = ((0, -1), (1, 0))


@pytest.fixture
def fib_group():
    return make_group(2, FIB_PHI)


@pytest.fixture
def swap_group():
    return make_group(2, SWAP)


@pytest.fixture
def rot_group():
    return make_group(2, ROT4)


# Independent reference helpers; none of these touch the package's algorithms.


def naive_matmul(A, B):
    return tuple(
        tuple(sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0])))
        for i in range(len(A))
    )


def naive_matvec(A, x):
    return tuple(sum(a * b for a, b in zip(row, x)) for row in A)


def cofactor_det(A):
    n = len(A)
    if n == 0:
        return 1
    if n == 1:
        return A[0][0]
    return sum(
        (-1) ** j * A[0][j] * cofactor_det([row[:j] + row[j + 1 :] for row in A[1:]])
        for j in range(n)
    )


def determinantal_divisors(A):
    """gcd of all k x k minors for k = 1..min(m, n)."""
    m, n = len(A), len(A[0])
    out = []
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in itertools.combinations(range(m), k):
            for cols in itertools.combinations(range(n), k):
                g = math.gcd(g, cofactor_det([[A[i][j] for j in cols] for i in rows]))
        out.append(g)
    return out


def rational_rank(vectors):
    rows = [[Fraction(a) for a in v] for v in vectors]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][c] != 0:
                f = rows[r][c] / rows[rank][c]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def naive_power(A, k):
    n = len(A)
    out = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    for _ in range(k):
        out = naive_matmul(out, A)
    return out


def outside_span_instance(seed, n_max=5):
    """``(A, x, y)`` with ``y`` provably outside the Krylov span of ``x``.

    ``A = P diag(B1, B2) P^-1`` keeps ``P (Z^k x 0)`` invariant, so starting
    from ``x`` there the orbit never leaves it while ``y`` has a nonzero
    component in the second block.
    """
    import random

    from abconj.linalg import inverse_unimodular, mat_mul, mat_vec
    from abconj.oracle import random_unimodular

    rng = random.Random(seed)
    n = rng.randint(2, n_max)
    k = rng.randint(1, n - 1)
    B1 = random_unimodular(k, rng.randint(0, 10), rng.randrange(2**32))
    B2 = random_unimodular(n - k, rng.randint(0, 10), rng.randrange(2**32))
    D = [[0] * n for _ in range(n)]
    for i in range(k):
        D[i][:k] = B1[i]
    for i in range(n - k):
        D[k + i][k:] = B2[i]
    P = random_unimodular(n, rng.randint(0, 12), rng.randrange(2**32))
    A = mat_mul(mat_mul(P, tuple(map(tuple, D))), inverse_unimodular(P))
    x1 = [rng.randint(-5, 5) for _ in range(k)]
    if not any(x1):
        x1[0] = 1
    y1 = [rng.randint(-5, 5) for _ in range(k)]
    y2 = [rng.randint(-5, 5) for _ in range(n - k)]
    if not any(y2):
        y2[0] = 1
    x = mat_vec(P, tuple(x1) + (0,) * (n - k))
    y = mat_vec(P, tuple(y1) + tuple(y2))
    return A, x, y


_ACCEPTANCE_LINES = []


@pytest.fixture
def report():
    """Record one verdict line per acceptance criterion."""

    def emit(number, ok, detail):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} ({detail})"
        print(line)
        _ACCEPTANCE_LINES.append(line)
        return ok

    return emit


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
