"""Normal-form arithmetic in the semidirect product Z^n x|_phi Z.

The group is presented by generators ``g1..gn, t`` with the ``gi``
commuting and ``t gi t^-1 = phi(gi)``. Every element has a unique normal
form ``w t^k`` with ``w`` in Z^n, and products follow

    w t^k * w' t^k' = (w + phi^k(w')) t^(k + k').
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence, Tuple, Union

from .errors import DomainError, UsageError
from .linalg import (
    IntMatrix,
    IntVector,
    as_matrix,
    as_vector,
    determinant,
    identity,
    inverse_unimodular,
    mat_pow,
    mat_vec,
    shape,
    vec_add,
    vec_sub,
)

Generator = Union[int, str]
GroupWord = Tuple[Tuple[Generator, int], ...]


@dataclass(frozen=True)
class GroupElement:
    """Normal form ``w t^k``; ``w`` holds the exponents of ``g1..gn``."""

    w: IntVector
    k: int = 0

    def __post_init__(self):
        object.__setattr__(self, "w", as_vector(self.w))
        if isinstance(self.k, bool) or not isinstance(self.k, int):
            raise UsageError(f"t-exponent must be an integer, got {self.k!r}")

    def __str__(self):
        return format_element(self)


@dataclass(frozen=True)
class AbcGroup:
    """The group Z^n x|_phi Z for a unimodular ``phi``.

    Build instances with :func:`make_group`, which validates ``phi`` and
    precomputes its inverse.
    """

    n: int
    phi: IntMatrix
    phi_inv: IntMatrix = field(repr=False)

    @cached_property
    def order(self) -> Optional[int]:
        """Order of ``phi`` in GL_n(Z), or ``None`` when it is infinite.

        Filled lazily on first access; the computation is deterministic, so
        concurrent first accesses store the same value.
        """
        from .conjugacy import matrix_order

        return matrix_order(self.phi)

    def identity(self) -> GroupElement:
        return GroupElement((0,) * self.n, 0)

    def phi_power(self, k: int) -> IntMatrix:
        if k >= 0:
            return mat_pow(self.phi, k)
        return mat_pow(self.phi_inv, -k)

    def act(self, k: int, w: Sequence[int]) -> IntVector:
        """``phi^k(w)``."""
        if k == 0 or not any(w):
            return tuple(w)
        return mat_vec(self.phi_power(k), w)


def make_group(n: int, phi: Sequence[Sequence[int]]) -> AbcGroup:
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise UsageError(f"dimension must be a positive integer, got {n!r}")
    phi = as_matrix(phi)
    if shape(phi) != (n, n):
        raise UsageError(f"phi must be {n}x{n}, got {shape(phi)[0]}x{shape(phi)[1]}")
    det = determinant(phi)
    if abs(det) != 1:
        raise DomainError(f"phi is not in GL_n(Z): determinant is {det}")
    return AbcGroup(n, phi, inverse_unimodular(phi))


def _check(G: AbcGroup, *elements: GroupElement) -> None:
    for g in elements:
        if len(g.w) != G.n:
            raise UsageError(f"element has dimension {len(g.w)}, group has {G.n}")


def multiply(G: AbcGroup, g: GroupElement, h: GroupElement) -> GroupElement:
    _check(G, g, h)
    return GroupElement(vec_add(g.w, G.act(g.k, h.w)), g.k + h.k)


def inverse(G: AbcGroup, g: GroupElement) -> GroupElement:
    """``(w t^k)^-1 = (-phi^-k(w)) t^-k``."""
    _check(G, g)
    return GroupElement(tuple(-a for a in G.act(-g.k, g.w)), -g.k)


def conjugate(G: AbcGroup, a: GroupElement, u: GroupElement) -> GroupElement:
    """``a u a^-1`` computed directly.

    For ``a = b t^e`` and ``u = w t^s`` this is ``(b + phi^e(w) - phi^s(b)) t^s``.
    """
    _check(G, a, u)
    b, e = a.w, a.k
    w, s = u.w, u.k
    return GroupElement(vec_sub(vec_add(b, G.act(e, w)), G.act(s, b)), s)


def power(G: AbcGroup, g: GroupElement, m: int) -> GroupElement:
    _check(G, g)
    if m < 0:
        g, m = inverse(G, g), -m
    result = G.identity()
    while m:
        if m & 1:
            result = multiply(G, result, g)
        m >>= 1
        if m:
            g = multiply(G, g, g)
    return result


def generator(G: AbcGroup, gen: Generator, exponent: int = 1) -> GroupElement:
    """The normal form of a single letter ``gen^exponent``."""
    if gen == "t":
        return GroupElement((0,) * G.n, exponent)
    if isinstance(gen, bool) or not isinstance(gen, int) or not 1 <= gen <= G.n:
        raise UsageError(f"generator g{gen} is out of range 1..{G.n}")
    w = [0] * G.n
    w[gen - 1] = exponent
    return GroupElement(tuple(w), 0)


def collect(G: AbcGroup, word: GroupWord) -> GroupElement:
    """Normal form of a word, folding the product rule left to right.

    Only the running ``phi^k`` is kept, so each ``t`` letter costs one
    matrix power rather than a rewrite of the whole word.
    """
    acc_w = [0] * G.n
    acc_k = 0
    act = identity(G.n)
    for gen, exponent in word:
        if gen == "t":
            if exponent:
                acc_k += exponent
                act = G.phi_power(acc_k)
            continue
        if isinstance(gen, bool) or not isinstance(gen, int) or not 1 <= gen <= G.n:
            raise UsageError(f"generator g{gen} is out of range 1..{G.n}")
        col = gen - 1
        for i in range(G.n):
            acc_w[i] += act[i][col] * exponent
    return GroupElement(tuple(acc_w), acc_k)


def length(G: AbcGroup, g: GroupElement) -> int:
    """``|w t^k| = |w|_1 + |k|``."""
    _check(G, g)
    return sum(abs(a) for a in g.w) + abs(g.k)


def random_element(
    G: AbcGroup, coord_bound: int, exp_bound: int, seed: Optional[int] = None, rng=None
) -> GroupElement:
    """Uniform coordinates in ``[-coord_bound, coord_bound]`` and exponent in
    ``[-exp_bound, exp_bound]``; deterministic for a given seed."""
    if coord_bound < 0 or exp_bound < 0:
        raise UsageError("bounds must be nonnegative")
    rng = rng if rng is not None else random.Random(seed)
    w = tuple(rng.randint(-coord_bound, coord_bound) for _ in range(G.n))
    return GroupElement(w, rng.randint(-exp_bound, exp_bound))


def format_element(g: GroupElement) -> str:
    return "[" + ",".join(str(a) for a in g.w) + f"] t^{g.k}"
