"""Singular-value analytics, Weyl multipliers and operator-norm estimation."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import (InvalidExponentError, InvalidInputError,
                     NumericalFailureError)
from .weyl import KernelOperator, PhaseSpaceFunction, inverse_weyl, weyl_transform


@dataclass(frozen=True)
class MultiplierSymbol:
    """Either an operator M (acting by ``W(C_M f) = M W(f)``) or a function g
    (acting by ``W^{-1}(phi_g T) = g W^{-1}(T)``)."""

    operator: KernelOperator | None = None
    scalar_field: PhaseSpaceFunction | None = None

    def __post_init__(self):
        if (self.operator is None) == (self.scalar_field is None):
            raise InvalidInputError("exactly one of operator / scalar_field must be set")


def singular_values(T: KernelOperator) -> np.ndarray:
    """Descending singular values, clamped at zero and cached on ``T``."""
    return T.singular_values


def conjugate_exponent(p: float) -> float:
    if p == 1:
        return np.inf
    if np.isinf(p):
        return 1.0
    return p / (p - 1.0)


def schatten_lorentz_norm(T, p: float, q: float) -> float:
    """``(sum_n (n^(1/p - 1/q) S_n)^q)^(1/q)``, or ``sup_n n^(1/p) S_n`` for q = inf.

    ``T`` may be a :class:`KernelOperator` or a descending sequence.  With
    ``q = p`` this is the Schatten norm; ``p = q = inf`` is the operator norm.
    """
    if not p > 0 or not q > 0:
        raise InvalidExponentError(f"exponents must be positive, got p={p}, q={q}")
    s = singular_values(T) if isinstance(T, KernelOperator) else np.asarray(T, float)
    if s.size == 0:
        return 0.0
    n = np.arange(1, s.size + 1, dtype=float)
    if np.isinf(q):
        if np.isinf(p):
            return float(s.max())
        return float(np.max(n ** (1.0 / p) * s))
    if np.isinf(p):
        raise InvalidExponentError("p = inf requires q = inf")
    if q == p:
        return float(np.sum(s ** p) ** (1.0 / p))
    return float(np.sum((n ** (1.0 / p - 1.0 / q) * s) ** q) ** (1.0 / q))


def _same_group(a, b):
    if a.group != b.group:
        raise InvalidInputError(f"group mismatch: {a.group} vs {b.group}")


def apply_left_multiplier(M: KernelOperator, f: PhaseSpaceFunction, mode: str = "fast") -> PhaseSpaceFunction:
    """``C_M f = W^{-1}(M W(f))``."""
    _same_group(M, f)
    return inverse_weyl(M @ weyl_transform(f, mode), mode)


def apply_symbol_multiplier(g: PhaseSpaceFunction, T: KernelOperator, mode: str = "fast") -> KernelOperator:
    """``phi_g(T) = W(g * W^{-1}(T))``."""
    _same_group(g, T)
    h = inverse_weyl(T, mode)
    return weyl_transform(PhaseSpaceFunction(g.group, g.values * h.values), mode)


def sv_threshold_split(T: KernelOperator, cut: float) -> tuple[KernelOperator, KernelOperator]:
    """Split ``T = T_0 + T_1`` with T_0 carrying the singular triples with ``S_n > cut``."""
    if not cut > 0:
        raise InvalidInputError(f"cut must be positive, got {cut}")
    try:
        u, s, vh = np.linalg.svd(T.matrix)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailureError(f"SVD failed: {exc}") from exc
    big = s > cut
    t0 = (u[:, big] * s[big]) @ vh[big]
    t1 = (u[:, ~big] * s[~big]) @ vh[~big]
    return KernelOperator(T.group, t0), KernelOperator(T.group, t1)


# --- operator-norm estimation --------------------------------------------

def _unit_phase(z):
    # angle() stays finite on subnormal entries, where z / |z| can overflow
    return np.where(z == 0, 0.0, np.exp(1j * np.angle(z)))


class _LpGeometry:
    """L^p on atoms with masses ``m``: norm and the norming dual vector."""

    def __init__(self, p, masses):
        self.p = p
        self.m = masses

    def norm(self, x):
        a = np.abs(x)
        if np.isinf(self.p):
            return float(a.max())
        return float(np.sum(a ** self.p * self.m) ** (1.0 / self.p))

    def norm_dual(self, y):
        return self.norm(y), self.dual(y)

    def dual(self, y):
        """z with ``<y, z> = ||y||_p`` and ``||z||_{p'} = 1`` under the pairing sum y conj(z) m."""
        p = self.p
        if np.isinf(p):
            # ties go to the lowest index (argmax convention)
            j = int(np.argmax(np.abs(y)))
            z = np.zeros_like(y, dtype=complex)
            z.flat[j] = _unit_phase(y.flat[j]) / self.m.flat[j]
            return z
        if p == 1:
            return _unit_phase(y)
        nrm = self.norm(y)
        return np.abs(y) ** (p - 1) * _unit_phase(y) / nrm ** (p - 1)

    def normalize(self, x):
        return x / self.norm(x)

    def conjugate(self):
        return _LpGeometry(conjugate_exponent(self.p), self.m)


class _SchattenGeometry:
    """B_p on matrices with the Hilbert-Schmidt pairing ``tr(z^* y)``."""

    def __init__(self, p):
        self.p = p

    def norm(self, x):
        s = np.linalg.svd(x, compute_uv=False)
        if np.isinf(self.p):
            return float(s[0])
        return float(np.sum(s ** self.p) ** (1.0 / self.p))

    def norm_dual(self, y):
        """Norm of y and the unit vector of the dual class norming it, from one SVD."""
        u, s, vh = np.linalg.svd(y)
        p = self.p
        if np.isinf(p):
            return float(s[0]), np.outer(u[:, 0], vh[0])
        nrm = float(np.sum(s ** p) ** (1.0 / p))
        if p == 1:
            keep = s > s[0] * 1e-14
            return nrm, u[:, keep] @ vh[keep]
        return nrm, (u * (s / nrm) ** (p - 1)) @ vh

    def dual(self, y):
        return self.norm_dual(y)[1]

    def normalize(self, x):
        return x / self.norm(x)

    def conjugate(self):
        return _SchattenGeometry(conjugate_exponent(self.p))


def _power_ascent(apply, adjoint, src, dst, x0, iters, rtol):
    """Generalized power iteration for ``||A||_{src -> dst}``.

    Each step maps ``x -> A x -> dual(Ax) -> A^* dual(Ax) -> dual'(.)``; the
    estimate ``||A x||`` is nondecreasing along the iteration.  Stops after
    three consecutive steps with relative gain below ``rtol``.
    """
    x = src.normalize(x0)
    y = apply(x)
    best, z = dst.norm_dual(y)
    # norming vector of w in the dual space is a unit vector of src
    dual_src = src.conjugate()
    stall = 0
    for _ in range(iters):
        w = adjoint(z)
        if not np.any(w):
            break
        x = dual_src.dual(w)
        y = apply(x)
        est, z = dst.norm_dual(y)
        stall = stall + 1 if est <= best * (1.0 + rtol) else 0
        best = max(best, est)
        if stall >= 3:
            break
    return best


def _check_pq(p, q):
    for name, v in (("p", p), ("q", q)):
        if not v >= 1:
            raise InvalidExponentError(f"{name} must be in [1, inf], got {v}")


def materialize(apply: Callable[[np.ndarray], np.ndarray], shape) -> np.ndarray:
    """Dense matrix of a linear map on arrays of ``shape`` (column j = image of e_j)."""
    size = int(np.prod(shape))
    cols = np.empty((size, size), dtype=complex)
    e = np.zeros(size, dtype=complex)
    for j in range(size):
        e[j] = 1.0
        cols[:, j] = np.asarray(apply(e.reshape(shape))).ravel()
        e[j] = 0.0
    return cols


def _restart_rngs(seed, restarts):
    # spawned children are prefix-stable, so more restarts only add candidates
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(restarts)]


def opnorm_lp_lq_estimate(apply: Callable[[np.ndarray], np.ndarray], p: float, q: float, *,
                          group=None, shape=None, adjoint=None, restarts: int = 4,
                          iters: int = 500, seed: int = 0, rtol: float = 1e-12) -> float:
    """Lower bound on ``||A||_{L^p -> L^q}`` over G x G^ (mass 1/N per point).

    ``apply`` maps an ``(N, N)`` complex array to another.  ``adjoint`` is the
    adjoint for the pairing ``(1/N) sum a conj(b)``; if omitted the map is
    materialized densely, which is only practical for small groups.  The
    result is the best value over ``restarts`` random starts of the
    generalized power iteration, deterministic given ``seed``.
    """
    _check_pq(p, q)
    if restarts < 1 or iters < 1:
        raise InvalidInputError("restarts and iters must be >= 1")
    if group is not None:
        shape = (group.order, group.order)
    if shape is None:
        raise InvalidInputError("pass group= or shape=")
    size = int(np.prod(shape))
    masses = np.full(shape, 1.0 / shape[0]) if group is not None else np.ones(shape)
    if adjoint is None:
        mat = materialize(apply, shape)
        # uniform masses: the weighted adjoint is the conjugate transpose
        adj_mat = mat.conj().T
        adjoint = lambda z: (adj_mat @ z.ravel()).reshape(shape)  # noqa: E731
    src, dst = _LpGeometry(p, masses), _LpGeometry(q, masses)
    best = 0.0
    for rng in _restart_rngs(seed, restarts):
        x0 = (rng.standard_normal(size) + 1j * rng.standard_normal(size)).reshape(shape)
        best = max(best, _power_ascent(apply, adjoint, src, dst, x0, iters, rtol))
    return best


def opnorm_schatten_estimate(apply: Callable[[np.ndarray], np.ndarray], p: float, q: float, *,
                             n: int, adjoint: Callable[[np.ndarray], np.ndarray], restarts: int = 4,
                             iters: int = 500, seed: int = 0, rtol: float = 1e-12) -> float:
    """Lower bound on ``||A||_{B_p -> B_q}`` for a linear map on ``n x n`` matrices.

    Same ascent as :func:`opnorm_lp_lq_estimate`, with Schatten norms and the
    Hilbert-Schmidt pairing; ``adjoint`` is the adjoint for that pairing.
    """
    _check_pq(p, q)
    if restarts < 1 or iters < 1:
        raise InvalidInputError("restarts and iters must be >= 1")
    src, dst = _SchattenGeometry(p), _SchattenGeometry(q)
    best = 0.0
    for rng in _restart_rngs(seed, restarts):
        x0 = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        best = max(best, _power_ascent(apply, adjoint, src, dst, x0, iters, rtol))
    return best
