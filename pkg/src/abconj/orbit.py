"""The orbit problem in GL_n(Z): find ``e`` with ``A^e x = y``.

Everything happens inside the Krylov space of ``x``. There ``A`` acts as
the companion matrix of ``m``, the minimal polynomial of ``A`` relative to
``x``, so ``A^e x = y`` is equivalent to ``z^e = q (mod m)`` where
``y = q(A) x``. The case split on ``m``:

* ``m`` a squarefree product of cyclotomics: ``A`` has finite order ``N``
  on the Krylov space, enumerate ``0..N-1``.
* ``m`` has a non-cyclotomic factor: it has a root ``lam`` with
  ``|lam| > 1`` and ``|lam|^e = |q(lam)|`` pins ``e`` down.
* otherwise ``m`` has a repeated root of unity ``lam`` and
  ``e lam^(e-1) = q'(lam)`` gives ``|e| = |q'(lam)|``.

Floating point only proposes candidates; each one is checked exactly.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence

import mpmath
from mpmath.libmp import NoConvergence

from . import poly
from .errors import DomainError, UndecidedAtPrecision, UsageError
from .linalg import (
    IntMatrix,
    KrylovBasis,
    determinant,
    inverse_unimodular,
    mat_pow,
    mat_vec,
    shape,
)

DEFAULT_PRECISION = 256
MAX_PRECISION = 4096
DEFAULT_WINDOW = 2
SCAN_LIMIT = 64
STABLE = 2.0 ** -20


@dataclass
class OrbitTrace:
    """Diagnostic record of one orbit decision."""

    krylov_dim: Optional[int] = None
    residue_poly: Optional[List[str]] = None
    case_tag: Optional[str] = None
    candidates: List[int] = field(default_factory=list)
    precision: Optional[int] = None
    period: Optional[int] = None

    def to_json(self) -> dict:
        return asdict(self)


def verify_exponent(A: IntMatrix, x: Sequence[int], y: Sequence[int], e: int) -> bool:
    return mat_vec(mat_pow(A, e), x) == tuple(y)


def krylov_express(A: IntMatrix, x: Sequence[int], y: Sequence[int]):
    """Rational ``q`` with ``deg q < dim`` and ``y = q(A) x``, or ``None``."""
    coeffs = KrylovBasis(A, x).express(y)
    return None if coeffs is None else poly.trim(coeffs)


def _smallest(exponents) -> Optional[int]:
    exponents = list(exponents)
    if not exponents:
        return None
    return min(exponents, key=lambda e: (abs(e), e < 0))


def _window(value: int, window: int) -> List[int]:
    return list(range(value - window, value + window + 1))


def _magnitude_value(rest, q, prec):
    """``log|q(lam)| / log|lam|`` at an extreme root ``lam`` of ``rest``.

    ``rest`` has constant term +-1 and a root off the unit circle, so it
    has roots both outside and inside. Positive exponents make ``|q|``
    large at the outer root and negative ones at the inner root; the larger
    value avoids cancellation in evaluating ``q``.
    """
    sf = poly.squarefree_part(rest)
    with mpmath.workprec(prec):
        coeffs = [mpmath.mpf(Fraction(c).numerator) / Fraction(c).denominator for c in reversed(sf)]
        roots = mpmath.polyroots(coeffs, maxsteps=200 + 20 * len(coeffs), extraprec=prec)
        qc = [mpmath.mpf(c.numerator) / c.denominator for c in map(Fraction, q)]
        best = None
        for lam in (max(roots, key=abs), min(roots, key=abs)):
            q_lam = abs(poly.evaluate(qc, lam))
            if best is None or q_lam > best[0]:
                best = (q_lam, abs(lam))
        q_lam, lam = best
        if q_lam == 0 or lam == 1:
            return None
        return mpmath.log(q_lam) / mpmath.log(lam)


def _derivative_value(k, q, prec):
    """``|q'(lam)|`` at ``lam = exp(2 pi i / k)``."""
    with mpmath.workprec(prec):
        lam = mpmath.expjpi(mpmath.mpf(2) / k)
        dq = [mpmath.mpf(c.numerator) / c.denominator for c in map(Fraction, poly.derivative(q))]
        return abs(poly.evaluate(dq, lam))


def candidate_exponents(
    m,
    q,
    precision: int = DEFAULT_PRECISION,
    window: int = DEFAULT_WINDOW,
    max_precision: int = MAX_PRECISION,
    trace: Optional[OrbitTrace] = None,
) -> List[int]:
    """Integers containing every ``e`` with ``z^e = q (mod m)``.

    ``m`` must not be a squarefree product of cyclotomic polynomials.
    Precision doubles until two successive estimates agree; an agreed value
    more than 1/4 from every integer means there is no solution.
    """
    if precision <= 0:
        raise UsageError("precision must be positive")
    m = poly.trim(m)
    if not poly.is_monic(m) or m[0] == 0:
        raise DomainError("modulus must be monic with nonzero constant term")
    factors, rest = poly.cyclotomic_cofactor(m)
    if poly.degree(rest) >= 1:
        tag = "magnitude"

        def estimate(p):
            return _magnitude_value(rest, q, p)

        signs = (1,)
    else:
        repeated = [k for k, mult in factors if mult > 1]
        if not repeated:
            raise DomainError("finite-order modulus: enumerate the orbit instead")
        tag = "derivative"
        k = repeated[0]

        def estimate(p):
            return _derivative_value(k, q, p)

        signs = (1, -1)
    if trace is not None:
        trace.case_tag = tag

    max_precision = max(max_precision, 2 * precision)
    prec = precision
    previous = None
    while True:
        try:
            value = estimate(prec)
        except NoConvergence:
            value = None
        # Trust an estimate only once two successive precisions agree.
        if value is not None and previous is not None and abs(value - previous) < STABLE:
            if trace is not None:
                trace.precision = prec
            nearest = int(mpmath.nint(value))
            if abs(value - nearest) > 0.25:
                return []
            out = set()
            for sign in signs:
                out.update(_window(sign * nearest, window))
            return sorted(out, key=lambda e: (abs(e), e < 0))
        previous = value
        if prec >= max_precision:
            break
        prec = min(2 * prec, max_precision)
    raise UndecidedAtPrecision(f"could not isolate an exponent at {max_precision} bits", max_precision)


def orbit(
    A: IntMatrix,
    x: Sequence[int],
    y: Sequence[int],
    precision: int = DEFAULT_PRECISION,
    trace: Optional[OrbitTrace] = None,
) -> Optional[int]:
    """Some ``e`` with ``A^e x = y``, or ``None`` when no exponent exists.

    The returned exponent has the smallest absolute value among all
    solutions, preferring the nonnegative one on ties.
    """
    n = shape(A)[0]
    if shape(A) != (n, n) or len(x) != n or len(y) != n:
        raise UsageError("matrix and vectors have inconsistent dimensions")
    det = determinant(A)
    if abs(det) != 1:
        raise DomainError(f"matrix is not unimodular (determinant {det})")
    trace = trace if trace is not None else OrbitTrace()
    x, y = tuple(x), tuple(y)

    if not any(x) or not any(y):
        trace.case_tag = "zero-vector"
        return 0 if x == y else None

    # Cheap exact scan over small exponents, both directions.
    if x == y:
        trace.case_tag = "periodic-scan"
        return 0
    A_inv = inverse_unimodular(A)
    fwd = bwd = x
    for e in range(1, SCAN_LIMIT + 1):
        fwd = mat_vec(A, fwd)
        bwd = mat_vec(A_inv, bwd)
        if fwd == y:
            trace.case_tag = "periodic-scan"
            return e
        if bwd == y:
            trace.case_tag = "periodic-scan"
            return -e
        if fwd == x:
            # Period e: every residue class already visited.
            trace.case_tag = "periodic-scan"
            trace.period = e
            return None

    basis = KrylovBasis(A, x)
    m = basis.minimal_polynomial()
    trace.krylov_dim = basis.dimension
    coeffs = basis.express(y)
    if coeffs is None:
        trace.case_tag = "not-in-span"
        return None
    q = poly.normalize(poly.trim(coeffs))
    trace.residue_poly = [str(c) for c in q]
    # m(0) = +-1, so z is a unit mod m and every z^e reduces to an
    # integer polynomial.
    if not poly.is_integral(q) or poly.degree(poly.gcd(q, m)) > 0:
        trace.case_tag = "not-in-lattice"
        return None

    factors, rest = poly.cyclotomic_cofactor(m)
    if rest == poly.ONE and all(mult == 1 for _, mult in factors):
        trace.case_tag = "finite-order"
        period = poly.lcm_int(k for k, _ in factors)
        trace.period = period
        cur = x
        for e in range(period):
            if cur == y:
                trace.candidates = [e, e - period] if e else [0]
                return _smallest(trace.candidates)
            cur = mat_vec(A, cur)
        return None

    candidates = candidate_exponents(m, q, precision, trace=trace)
    trace.candidates = candidates
    # Sorted by |e| with nonnegative first, so the first hit is the answer.
    for e in candidates:
        if verify_exponent(A, x, y, e):
            return e
    return None
