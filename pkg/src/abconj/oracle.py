"""Brute-force reference answers and seeded instance generators.

The searches here only ever prove existence: finding nothing within the
bounds says nothing about non-conjugacy.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence, Tuple

from .errors import UsageError
from .group import AbcGroup, GroupElement, conjugate, random_element
from .linalg import IntMatrix, IntVector, inverse_unimodular, mat_vec


@dataclass(frozen=True)
class InstanceBundle:
    group: AbcGroup
    u: GroupElement
    v: GroupElement
    planted_conjugator: Optional[GroupElement]
    seed: int


def _signed_range(bound: int) -> Iterator[int]:
    """0, 1, -1, 2, -2, ..., bound, -bound."""
    yield 0
    for k in range(1, bound + 1):
        yield k
        yield -k


def _linf_shell(n: int, radius: int) -> Iterator[Tuple[int, ...]]:
    """Vectors with max-norm exactly ``radius``, in lexicographic order."""
    for b in itertools.product(range(-radius, radius + 1), repeat=n):
        if radius == 0 or max(abs(c) for c in b) == radius:
            yield b


def brute_conjugacy(
    G: AbcGroup, u: GroupElement, v: GroupElement, coord_bound: int, exp_bound: int
) -> Optional[GroupElement]:
    """First ``a = b t^e`` with ``a u a^-1 = v`` in a fixed order.

    Order: ``e`` by increasing ``|e|`` (nonnegative first), then ``b`` shell
    by shell in max-norm, lexicographically within a shell.
    """
    if coord_bound < 0 or exp_bound < 0:
        raise UsageError("bounds must be nonnegative")
    if u.k != v.k:
        return None
    for e in _signed_range(exp_bound):
        for radius in range(coord_bound + 1):
            for b in _linf_shell(G.n, radius):
                a = GroupElement(b, e)
                if conjugate(G, a, u) == v:
                    return a
    return None


def brute_orbit(A: IntMatrix, x: Sequence[int], y: Sequence[int], exp_bound: int) -> Optional[int]:
    """Smallest ``|e| <= exp_bound`` with ``A^e x = y``, nonnegative on ties."""
    x, y = tuple(x), tuple(y)
    if x == y:
        return 0
    A_inv = inverse_unimodular(A)
    fwd = bwd = x
    for e in range(1, exp_bound + 1):
        fwd = mat_vec(A, fwd)
        bwd = mat_vec(A_inv, bwd)
        if fwd == y:
            return e
        if bwd == y:
            return -e
    return None


def fibonacci(n: int) -> int:
    """F(1) = F(2) = 1."""
    if n < 1:
        raise UsageError("Fibonacci index must be at least 1")
    a, b = 0, 1
    for _ in range(n - 1):
        a, b = b, a + b
    return b


def random_unimodular(n: int, ops: int, seed: int) -> IntMatrix:
    """Identity transformed by ``ops`` random elementary row operations.

    Operations are transvections ``row_i += c row_j`` with ``c = +-1``, row
    swaps and row negations, so ``|det| = 1`` by construction.
    """
    if n < 1 or ops < 0:
        raise UsageError("need n >= 1 and ops >= 0")
    rng = random.Random(seed)
    M = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(ops):
        kind = rng.random()
        if n == 1 or kind < 0.1:
            i = rng.randrange(n)
            M[i] = [-a for a in M[i]]
        elif kind < 0.2:
            i, j = rng.sample(range(n), 2)
            M[i], M[j] = M[j], M[i]
        else:
            i, j = rng.sample(range(n), 2)
            c = rng.choice((-1, 1))
            M[i] = [a + c * b for a, b in zip(M[i], M[j])]
    return tuple(map(tuple, M))


def random_conjugate_pair(
    G: AbcGroup,
    seed: int,
    coord_bound: int = 20,
    exp_bound: int = 50,
    s: Optional[int] = None,
) -> InstanceBundle:
    """``u`` random, ``a`` random, ``v = a u a^-1``.

    Both ``u`` and the planted ``a`` draw coordinates from
    ``[-coord_bound, coord_bound]`` and exponents from
    ``[-exp_bound, exp_bound]``; passing ``s`` fixes the exponent of ``u``.
    """
    rng = random.Random(seed)
    u = random_element(G, coord_bound, exp_bound, rng=rng)
    if s is not None:
        u = GroupElement(u.w, s)
    a = random_element(G, coord_bound, exp_bound, rng=rng)
    return InstanceBundle(G, u, conjugate(G, a, u), a, seed)


def random_vector(n: int, bound: int, rng: random.Random) -> IntVector:
    return tuple(rng.randint(-bound, bound) for _ in range(n))
