import random

import pytest

from abconj import poly
from abconj.conjugacy import (
    TwistedSolver,
    conjugacy,
    is_power_identity,
    matrix_order,
    solve_twisted_abelian,
)
from abconj.errors import DomainError, UsageError
from abconj.group import GroupElement, conjugate, make_group, random_element
from abconj.linalg import inverse_unimodular, mat_mul
from abconj.oracle import brute_conjugacy, random_conjugate_pair, random_unimodular

from conftest import FIB_PHI, ROT4, SWAP, naive_matmul, naive_matvec


def E(w, k=0):
    return GroupElement(tuple(w), k)


def companion(p):
    """Companion matrix of a monic integer polynomial, low degree first."""
    d = len(p) - 1
    return tuple(
        tuple((1 if i == j + 1 else 0) if j < d - 1 else -p[i] for j in range(d)) for i in range(d)
    )


def block_diag(*blocks):
    n = sum(len(b) for b in blocks)
    M = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, a in enumerate(row):
                M[off + i][off + j] = a
        off += len(b)
    return tuple(map(tuple, M))


def brute_order(A, limit):
    n = len(A)
    I = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    P = A
    for d in range(1, limit + 1):
        if P == I:
            return d
        P = naive_matmul(P, A)
    return None


class TestExamples:
    def test_fib(self, fib_group):
        assert conjugacy(fib_group, E([1, 1], 1), E([3, 2], 1)) == E([-1, -1])

    def test_exponent_mismatch(self, fib_group):
        trace = []
        assert conjugacy(fib_group, E([1, 1], 2), E([1, 1], 3), trace=trace) is None
        assert trace[0]["step"] == "exponent-mismatch"

    @pytest.mark.parametrize("u", [E([0, 0]), E([4, -1], 3), E([2, 2], -5)])
    def test_self(self, fib_group, u):
        a = conjugacy(fib_group, u, u)
        assert a is not None and conjugate(fib_group, a, u) == u

    def test_swap_order_two_branch(self, swap_group):
        a = conjugacy(swap_group, E([1, 0], 2), E([0, 1], 2))
        assert a == E([0, 0], 1)
        assert brute_conjugacy(swap_group, E([1, 0], 2), E([0, 1], 2), 2, 2) is not None

    def test_trivial_exponent_uses_orbit(self, fib_group):
        trace = []
        assert conjugacy(fib_group, E([1, 1]), E([8, 5]), trace=trace) == E([0, 0], 2)
        assert trace[0]["solver"] == "krylov"

    def test_not_conjugate_abelian_part(self, fib_group):
        assert conjugacy(fib_group, E([1, 1]), E([1, 2])) is None

    def test_dimension_mismatch(self, fib_group):
        with pytest.raises(UsageError):
            conjugacy(fib_group, E([1]), E([1, 1]))


class TestTwisted:
    def test_identity_psi(self):
        assert solve_twisted_abelian(((1, 0), (0, 1)), (2, 3), (2, 3)) == (0, 0)
        assert solve_twisted_abelian(((1, 0), (0, 1)), (2, 3), (2, 4)) is None

    def test_fib(self):
        assert solve_twisted_abelian(FIB_PHI, (0, 0), (-1, -1)) == (1, 0)

    def test_swap_has_no_solution(self):
        assert solve_twisted_abelian(SWAP, (0, 0), (1, 0)) is None
        # (I - psi) b has coordinate sum zero
        for b1 in range(-10, 11):
            for b2 in range(-10, 11):
                assert (b1 - b2, b2 - b1) != (1, 0)

    def test_inverse_needs_nonsingular(self):
        with pytest.raises(DomainError):
            TwistedSolver(SWAP, "inverse")
        assert TwistedSolver(SWAP, "auto").method == "smith"
        assert TwistedSolver(FIB_PHI, "auto").method == "inverse"

    def test_unknown_method(self):
        with pytest.raises(UsageError):
            TwistedSolver(FIB_PHI, "magic")

    @pytest.mark.parametrize("seed", range(100))
    def test_methods_agree(self, seed):
        rng = random.Random(seed)
        n = rng.randint(1, 5)
        psi = random_unimodular(n, rng.randint(0, 20), seed)
        w = tuple(rng.randint(-9, 9) for _ in range(n))
        if rng.random() < 0.5:
            b = tuple(rng.randint(-9, 9) for _ in range(n))
            pb = naive_matvec(psi, b)
            x = tuple(bi + wi - pi for bi, wi, pi in zip(b, w, pb))
        else:
            x = tuple(rng.randint(-9, 9) for _ in range(n))
        by_smith = solve_twisted_abelian(psi, w, x, "smith")
        solutions = [by_smith]
        try:
            solutions.append(solve_twisted_abelian(psi, w, x, "inverse"))
        except DomainError:
            pass
        assert len({s is None for s in solutions}) == 1
        for s in solutions:
            if s is not None:
                ps = naive_matvec(psi, s)
                assert tuple(si + wi - pi for si, wi, pi in zip(s, w, ps)) == x


class TestOrder:
    def test_examples(self):
        assert matrix_order(((1, 0), (0, 1))) == 1
        assert matrix_order(ROT4) == 4
        assert matrix_order(FIB_PHI) is None
        assert matrix_order(((1, 1), (0, 1))) is None

    def test_not_unimodular(self):
        with pytest.raises(DomainError):
            matrix_order(((2, 0), (0, 1)))

    @pytest.mark.parametrize("seed", range(40))
    def test_finite_against_brute_force(self, seed):
        rng = random.Random(seed)
        ks = [rng.choice([1, 2, 3, 4, 6, 5, 8, 10, 12]) for _ in range(rng.randint(1, 3))]
        blocks = [companion(poly.cyclotomic(k)) for k in ks]
        B = block_diag(*blocks)
        P = random_unimodular(len(B), 12, seed)
        A = mat_mul(mat_mul(P, B), inverse_unimodular(P))
        assert matrix_order(A) == brute_order(A, 200)

    @pytest.mark.parametrize("seed", range(40))
    def test_random_against_brute_force(self, seed):
        A = random_unimodular(3, 6, seed)
        expected = brute_order(A, 60)
        got = matrix_order(A)
        if got is not None:
            assert got == expected
        else:
            # finite orders in GL_3(Z) are at most 6, so the limit is conclusive
            assert expected is None

    def test_is_power_identity(self, fib_group, rot_group):
        assert is_power_identity(fib_group, 0)
        assert not is_power_identity(fib_group, 10**6)
        assert is_power_identity(rot_group, 8)
        assert not is_power_identity(rot_group, 6)
        assert is_power_identity(rot_group, -4 * 10**12)


class TestProperties:
    @pytest.mark.parametrize("seed", range(150))
    def test_completeness_on_planted(self, seed):
        rng = random.Random(seed)
        n = rng.randint(1, 4)
        G = make_group(n, random_unimodular(n, rng.randint(0, 15), seed))
        bundle = random_conjugate_pair(G, seed, 10, 12)
        a = conjugacy(G, bundle.u, bundle.v)
        assert a is not None and conjugate(G, a, bundle.u) == bundle.v

    @pytest.mark.parametrize("seed", range(150))
    def test_soundness_against_brute_force(self, seed):
        rng = random.Random(seed)
        G = make_group(2, random_unimodular(2, rng.randint(0, 8), seed))
        u = random_element(G, 3, 3, rng=rng)
        v = GroupElement(tuple(rng.randint(-3, 3) for _ in range(2)), u.k)
        a = conjugacy(G, u, v)
        found = brute_conjugacy(G, u, v, 3, 4)
        if found is not None:
            assert a is not None
        if a is not None:
            assert conjugate(G, a, u) == v

    @pytest.mark.parametrize("seed", range(60))
    def test_shift_invariance(self, seed):
        # u and phi(u) = t u t^-1 are always conjugate
        rng = random.Random(seed)
        n = rng.randint(1, 4)
        G = make_group(n, random_unimodular(n, 10, seed))
        u = random_element(G, 8, 8, rng=rng)
        shifted = conjugate(G, E([0] * n, 1), u)
        for v in (shifted, u):
            a = conjugacy(G, v, u)
            assert a is not None and conjugate(G, a, v) == u

    @pytest.mark.parametrize("seed", range(60))
    def test_solvability_is_periodic_in_e(self, seed):
        # replacing e by e + s leaves the twisted system's solvability unchanged
        rng = random.Random(seed)
        n = rng.randint(1, 3)
        G = make_group(n, random_unimodular(n, rng.randint(0, 10), seed))
        s = rng.choice([-3, -2, -1, 1, 2, 3])
        psi = G.phi_power(s)
        bundle = random_conjugate_pair(G, seed, 4, 3, s=s)
        w, x = bundle.u.w, bundle.v.w
        for e in range(abs(s)):
            base = solve_twisted_abelian(psi, G.act(e, w), x) is not None
            for shift in (-2, -1, 1, 2):
                shifted = solve_twisted_abelian(psi, G.act(e + shift * s, w), x) is not None
                assert shifted == base

    @pytest.mark.parametrize("seed", range(60))
    def test_witness_window(self, seed):
        rng = random.Random(seed)
        n = rng.randint(1, 4)
        G = make_group(n, random_unimodular(n, 12, seed))
        bundle = random_conjugate_pair(G, seed, 6, 9)
        s = bundle.u.k
        a = conjugacy(G, bundle.u, bundle.v)
        if not is_power_identity(G, s):
            assert 0 <= a.k < abs(s)

    @pytest.mark.parametrize("seed", range(60))
    def test_symmetry_and_transitivity(self, seed):
        rng = random.Random(seed)
        n = rng.randint(1, 3)
        G = make_group(n, random_unimodular(n, 10, seed))
        u = random_element(G, 6, 6, rng=rng)
        a1, a2 = random_element(G, 6, 6, rng=rng), random_element(G, 6, 6, rng=rng)
        v = conjugate(G, a1, u)
        x = conjugate(G, a2, v)
        back = conjugacy(G, v, u)
        assert back is not None and conjugate(G, back, v) == u
        through = conjugacy(G, u, x)
        assert through is not None and conjugate(G, through, u) == x

    @pytest.mark.parametrize("method", ["auto", "smith"])
    def test_methods_same_decision(self, method):
        for seed in range(40):
            rng = random.Random(seed)
            G = make_group(2, random_unimodular(2, 6, seed))
            u = random_element(G, 4, 4, rng=rng)
            v = GroupElement(tuple(rng.randint(-4, 4) for _ in range(2)), u.k)
            ref = conjugacy(G, u, v, method="smith")
            got = conjugacy(G, u, v, method=method)
            assert (ref is None) == (got is None)

    def test_huge_exponent_finite_order(self, rot_group):
        s = 10**9
        u = E([3, 1], s)
        v = conjugate(rot_group, E([0, 0], 3), u)
        a = conjugacy(rot_group, u, v)
        assert a is not None and conjugate(rot_group, a, u) == v
