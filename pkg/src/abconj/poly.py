"""Univariate polynomials over the integers and rationals.

A polynomial is a tuple of coefficients, lowest degree first, with no
trailing zeros; the zero polynomial is ``()``. Integer polynomials hold
``int`` coefficients, rational ones ``Fraction``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import List, Sequence, Tuple

from .errors import DomainError
from .linalg import IntMatrix, mat_vec, minimal_polynomial_rel, shape

Poly = Tuple

ONE = (1,)
Z = (0, 1)

# Scanning k <= 2 d^2 + 1 is exhaustive because phi(k) >= sqrt(k / 2).
MAX_CYCLOTOMIC_DEGREE = 64


def trim(p: Sequence) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def degree(p: Poly) -> int:
    """Degree, with ``-1`` for the zero polynomial."""
    return len(trim(p)) - 1


def is_monic(p: Poly) -> bool:
    p = trim(p)
    return bool(p) and p[-1] == 1


def add(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def sub(p: Poly, q: Poly) -> Poly:
    return add(p, scale(-1, q))


def scale(c, p: Poly) -> Poly:
    return trim([c * a for a in p])


def mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def divmod_poly(p: Poly, q: Poly) -> Tuple[Poly, Poly]:
    """Quotient and remainder; exact in integers when ``q`` is monic."""
    q = trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    lead = q[-1]
    r = list(trim(p))
    dq = len(q) - 1
    if len(r) <= dq:
        return (), tuple(r)
    quot = [0] * (len(r) - dq)
    for i in range(len(r) - 1, dq - 1, -1):
        c = r[i]
        if not c:
            continue
        c = c if lead == 1 else Fraction(c) / lead
        quot[i - dq] = c
        for j in range(dq + 1):
            r[i - dq + j] -= c * q[j]
    return trim(quot), trim(r[:dq])


def monic(p: Poly) -> Poly:
    p = trim(p)
    if not p:
        return ()
    lead = p[-1]
    if lead == 1:
        return p
    return tuple(Fraction(a) / lead for a in p)


def gcd(p: Poly, q: Poly) -> Poly:
    """Monic greatest common divisor over the rationals."""
    a, b = trim(p), trim(q)
    while b:
        a, b = b, divmod_poly(a, b)[1]
    return normalize(monic(a))


def lcm(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    return normalize(monic(divmod_poly(mul(p, q), gcd(p, q))[0]))


def derivative(p: Poly) -> Poly:
    return trim([i * a for i, a in enumerate(p)][1:])


def squarefree_part(p: Poly) -> Poly:
    """Monic product of the distinct irreducible factors of ``p``."""
    return normalize(monic(divmod_poly(p, gcd(p, derivative(p)))[0]))


def is_integral(p: Poly) -> bool:
    return all(Fraction(a).denominator == 1 for a in p)


def normalize(p: Poly) -> Poly:
    """Turn integral ``Fraction`` coefficients back into ``int``."""
    if all(isinstance(a, int) for a in p):
        return trim(p)
    if is_integral(p):
        return trim(int(a) for a in p)
    return trim(p)


def evaluate(p: Poly, z):
    """Horner evaluation at any ring element supporting ``*`` and ``+``."""
    acc = 0
    for a in reversed(p):
        acc = acc * z + a
    return acc


def apply_to_vector(A: IntMatrix, p: Poly, x: Sequence) -> tuple:
    """``p(A) x`` by Horner's rule on vectors."""
    acc = tuple(0 for _ in x)
    for a in reversed(p):
        acc = tuple(u + a * v for u, v in zip(mat_vec(A, acc), x))
    return acc


def powmod(base: Poly, e: int, m: Poly) -> Poly:
    """``base**e`` reduced modulo the monic polynomial ``m``."""
    m = trim(m)
    if not is_monic(m) or degree(m) < 1:
        raise DomainError("modulus must be monic of degree at least 1")
    if e < 0:
        raise DomainError("exponent must be nonnegative")
    result = divmod_poly(ONE, m)[1]
    b = divmod_poly(base, m)[1]
    while e:
        if e & 1:
            result = divmod_poly(mul(result, b), m)[1]
        e >>= 1
        if e:
            b = divmod_poly(mul(b, b), m)[1]
    return tuple(Fraction(a) for a in result)


poly_powmod = powmod


def euler_phi(k: int) -> int:
    result, n, p = k, k, 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


@lru_cache(maxsize=None)
def cyclotomic(k: int) -> Poly:
    """The ``k``-th cyclotomic polynomial as an integer polynomial."""
    if k < 1:
        raise DomainError("cyclotomic index must be positive")
    p = (-1,) + (0,) * (k - 1) + (1,)
    for d in range(1, k):
        if k % d == 0:
            p = divmod_poly(p, cyclotomic(d))[0]
    return p


def cyclotomic_cofactor(m: Poly) -> Tuple[List[Tuple[int, int]], Poly]:
    """Split off every cyclotomic factor of the monic polynomial ``m``.

    Returns ``([(k, multiplicity), ...], remainder)``; the remainder has no
    cyclotomic factor.
    """
    m = trim(m)
    if not is_monic(m):
        raise DomainError("polynomial must be monic")
    if m[0] == 0:
        raise DomainError("polynomial vanishes at zero")
    d = degree(m)
    if d > MAX_CYCLOTOMIC_DEGREE:
        raise DomainError(f"degree {d} exceeds the cyclotomic scan limit {MAX_CYCLOTOMIC_DEGREE}")
    factors = []
    rest = m
    for k in range(1, 2 * d * d + 2):
        if degree(rest) < 1:
            break
        if euler_phi(k) > degree(rest):
            continue
        c = cyclotomic(k)
        mult = 0
        while True:
            q, r = divmod_poly(rest, c)
            if r:
                break
            rest = q
            mult += 1
        if mult:
            factors.append((k, mult))
    return factors, rest


def matrix_minimal_polynomial(A: IntMatrix) -> Poly:
    """Minimal polynomial of ``A``: lcm of those relative to each basis vector."""
    n = shape(A)[0]
    m = ONE
    for i in range(n):
        e = tuple(int(i == j) for j in range(n))
        m = lcm(m, minimal_polynomial_rel(A, e))
    return m


def format_poly(p: Poly, var: str = "z") -> str:
    p = trim(p)
    if not p:
        return "0"
    terms = []
    for i in range(len(p) - 1, -1, -1):
        c = p[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        c = abs(c)
        if i == 0:
            body = str(c)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if c == 1 else f"{c}*{mono}"
        terms.append((sign, body))
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def lcm_int(values) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out
