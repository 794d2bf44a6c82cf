"""Explicit constants for the inequality ratios.

All constants come from tracking the classical Marcinkiewicz interpolation
theorem,

    ||T||_{L^p -> L^p} <= 2 (p/(p - p0) + p/(p1 - p))^(1/p)
                          A0^((1/p - 1/p1)/(1/p0 - 1/p1)) A1^((1/p0 - 1/p)/(1/p0 - 1/p1)),

with p0 = 1, weak-(1,1) constant A0 = 2 ||phi||_{weak l^1} and p1 = 2,
strong-(2,2) constant A1 = 1 (Plancherel), followed by Holder interpolation
and the constant-1 Hausdorff-Young endpoints.  Every ratio computed in
:mod:`weylkit.inequalities` is normalized so that the weight quasinorm factor
cancels and the bound is a function of the exponents only.
"""

from __future__ import annotations

import math

from .errors import InvalidExponentError
from .operators import conjugate_exponent


def marcinkiewicz_constant(p: float, p0: float, p1: float, a0: float, a1: float) -> float:
    if not p0 < p < p1:
        raise InvalidExponentError(f"need {p0} < p < {p1}, got {p}")
    span = 1.0 / p0 - 1.0 / p1
    theta0 = (1.0 / p - 1.0 / p1) / span
    theta1 = (1.0 / p0 - 1.0 / p) / span
    return 2.0 * (p / (p - p0) + p / (p1 - p)) ** (1.0 / p) * a0 ** theta0 * a1 ** theta1


def paley_constant(p: float) -> float:
    """Bound on the Paley ratios; exactly 1 at p = 2 (Plancherel)."""
    if p == 2:
        return 1.0
    if not 1 < p < 2:
        raise InvalidExponentError(f"Paley exponent must be in (1, 2], got {p}")
    # the weak-l^1 norm of the weight is factored out of the ratio, so A0 = 2
    return marcinkiewicz_constant(p, 1.0, 2.0, 2.0, 1.0)


def hyp_constant(p: float, b: float) -> float:
    """Bound for the Hausdorff-Young-Paley ratios, ``p <= b <= p'``.

    Holder between the Paley sum (b = p) and the Hausdorff-Young sum
    (b = p', constant 1) with weight ``alpha = (p' - b)/(p' - p)`` on the
    Paley side gives ``paley_constant(p) ** (p * alpha / b)``.
    """
    pc = conjugate_exponent(p)
    if p == 2:
        return 1.0
    if not p <= b <= pc:
        raise InvalidExponentError(f"need p <= b <= p', got p={p}, b={b}")
    alpha = (pc - b) / (pc - p)
    return paley_constant(p) ** (p * alpha / b)


def hormander_constant(p: float, q: float) -> float:
    """Bound for both multiplier ratios, ``1 < p <= 2 <= q < inf``.

    Horn's majorization gives ``sum S_n(MA)^t <= sum (S_n(M) S_n(A))^t`` with
    constant 1, and both Hausdorff-Young steps have constant 1, so the bound
    is the HYP constant at ``b = q'``; when ``q' < p`` the adjoint problem
    ``L^{q'} -> L^{p'}`` is used instead.
    """
    if not (1 < p <= 2 <= q < math.inf):
        raise InvalidExponentError(f"need 1 < p <= 2 <= q < inf, got p={p}, q={q}")
    qc = conjugate_exponent(q)
    if p <= qc:
        return hyp_constant(p, qc)
    return hyp_constant(qc, p)


def lorentz_domain_constant(p: float) -> float:
    """Bound for ``||W f||_{B_p'} / ||f||_{L^{p,p'}}`` and ``||f||_{L^{p',p}} / ||W f||_{B_p}``.

    The range bound is the inverse Paley inequality with the weight
    ``psi_i^(2-p) = N * int_{(i-1)/N}^{i/N} t^(p-2) dt`` placed along the
    rearrangement; its weak-l^1 norm is at most ``max((p-1)^(-1/(2-p)), 2)``.
    The domain bound follows from it by duality and the Lorentz Holder
    inequality (constant 1).
    """
    if p == 2:
        return 1.0
    if not 1 < p < 2:
        raise InvalidExponentError(f"Lorentz exponent must be in (1, 2], got {p}")
    weak = max((p - 1.0) ** (-1.0 / (2.0 - p)), 2.0)
    return paley_constant(p) * weak ** ((2.0 - p) / p)


def schatten_lorentz_paley_constant(p: float) -> float:
    """Bound for ``||W f||_{B_{p',p}} / ||f||_p``: the Paley ratio with phi(n) = 1/n."""
    return paley_constant(p)
