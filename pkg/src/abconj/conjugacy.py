"""Conjugacy decision and search in Z^n x|_phi Z.

For ``u = w t^s`` and ``v = x t^r`` a conjugator ``b t^e`` must satisfy
``s = r`` and

    x - phi^e(w) = (I - phi^s) b.

If ``phi^s`` is the identity this collapses to the orbit problem
``x = phi^e(w)``. Otherwise replacing ``e`` by ``e + s`` does not change
solvability, so only ``e`` in ``0..|s|-1`` needs checking, each one an
integer linear system.
"""

from __future__ import annotations

from typing import List, Optional, Sequence

from . import poly
from .errors import DomainError, UsageError
from .group import AbcGroup, GroupElement, conjugate
from .linalg import (
    IntegerSolver,
    IntMatrix,
    IntVector,
    adjugate_solver,
    determinant,
    is_identity,
    mat_pow,
    mat_vec,
    shape,
    vec_sub,
)
from .orbit import DEFAULT_PRECISION, OrbitTrace, orbit

METHODS = ("auto", "smith", "inverse")


def matrix_order(phi: IntMatrix) -> Optional[int]:
    """Multiplicative order of a unimodular matrix; ``None`` if infinite.

    The order is finite exactly when the minimal polynomial is a squarefree
    product of cyclotomic polynomials, and then it is the lcm of their
    indices.
    """
    det = determinant(phi)
    if abs(det) != 1:
        raise DomainError(f"matrix is not unimodular (determinant {det})")
    if not phi:
        return 1
    m = poly.matrix_minimal_polynomial(phi)
    factors, rest = poly.cyclotomic_cofactor(m)
    if rest != poly.ONE or any(mult > 1 for _, mult in factors):
        return None
    d = poly.lcm_int(k for k, _ in factors)
    if not is_identity(mat_pow(phi, d)):
        raise ArithmeticError(f"order {d} failed the exact power check")
    return d


def is_power_identity(G: AbcGroup, s: int) -> bool:
    """Whether ``phi^s`` is the identity, without forming ``phi^s``."""
    if s == 0:
        return True
    order = G.order
    return order is not None and s % order == 0


class TwistedSolver:
    """Solves ``x = b + w - psi b`` for ``b`` with ``psi`` fixed.

    ``method="smith"`` goes through the Smith form of ``I - psi``;
    ``"inverse"`` uses the fraction-free adjugate and an integrality check,
    which needs ``I - psi`` nonsingular; ``"auto"`` picks ``"inverse"``
    whenever it applies.
    """

    def __init__(self, psi: IntMatrix, method: str = "auto"):
        if method not in METHODS:
            raise UsageError(f"unknown method {method!r}")
        n = shape(psi)[0]
        if shape(psi) != (n, n):
            raise UsageError("twisting matrix must be square")
        self.n = n
        self.system = tuple(
            tuple(int(i == j) - psi[i][j] for j in range(n)) for i in range(n)
        )
        self._adjugate = None
        self._smith = None
        if method in ("auto", "inverse"):
            adj, d = adjugate_solver(self.system)
            if d:
                self._adjugate, self._det = adj, d
            elif method == "inverse":
                raise DomainError("I - psi is singular; the inverse shortcut does not apply")
        if self._adjugate is None:
            self._smith = IntegerSolver(self.system)
        self.method = "inverse" if self._adjugate is not None else "smith"

    def solve(self, w: Sequence[int], x: Sequence[int]) -> Optional[IntVector]:
        if len(w) != self.n or len(x) != self.n:
            raise UsageError("vector dimensions do not match the twisting matrix")
        rhs = vec_sub(x, w)
        if self._smith is not None:
            return self._smith.solve(rhs)
        d = self._det
        b = []
        for v in mat_vec(self._adjugate, rhs):
            q, r = divmod(v, d)
            if r:
                return None
            b.append(q)
        return tuple(b)


def solve_twisted_abelian(
    psi: IntMatrix, w: Sequence[int], x: Sequence[int], method: str = "smith"
) -> Optional[IntVector]:
    """``b`` with ``x = b + w - psi(b)`` over the integers, or ``None``.

    In multiplicative terms ``x = b w psi(b)^-1``: ``w`` and ``x`` are
    twisted conjugate by ``psi`` with twisting element ``b``.
    """
    return TwistedSolver(psi, method).solve(w, x)


def conjugacy(
    G: AbcGroup,
    u: GroupElement,
    v: GroupElement,
    method: str = "auto",
    precision: int = DEFAULT_PRECISION,
    trace: Optional[List[dict]] = None,
) -> Optional[GroupElement]:
    """A conjugator ``c`` with ``c u c^-1 = v``, or ``None`` if none exists.

    Events are appended to ``trace`` when a list is supplied, so a caller
    interrupting a long run still has the partial record.
    """
    if len(u.w) != G.n or len(v.w) != G.n:
        raise UsageError(f"elements must have dimension {G.n}")
    log = trace.append if trace is not None else (lambda event: None)
    w, s = u.w, u.k
    x, r = v.w, v.k

    if s != r:
        log({"step": "exponent-mismatch", "s": s, "r": r})
        return None

    witness = None
    if is_power_identity(G, s):
        if s == 0:
            log({"step": "orbit", "solver": "krylov"})
            orbit_trace = OrbitTrace()
            e = orbit(G.phi, w, x, precision=precision, trace=orbit_trace)
            log({"step": "orbit-result", "exponent": e, "trace": orbit_trace.to_json()})
        else:
            order = G.order
            log({"step": "orbit", "solver": "finite-order", "order": order})
            e = None
            cur = w
            for k in range(order):
                if cur == x:
                    e = k
                    break
                cur = mat_vec(G.phi, cur)
        if e is not None:
            witness = GroupElement((0,) * G.n, e)
    else:
        psi = G.phi_power(s)
        solver = TwistedSolver(psi, method)
        log({"step": "twisted", "s": s, "method": solver.method})
        cur = w
        for e in range(abs(s)):
            b = solver.solve(cur, x)
            log({"step": "try", "e": e, "solvable": b is not None})
            if b is not None:
                witness = GroupElement(b, e)
                break
            cur = mat_vec(G.phi, cur)

    if witness is None:
        return None
    if conjugate(G, witness, u) != v:
        raise ArithmeticError(f"witness {witness} failed verification")
    return witness

