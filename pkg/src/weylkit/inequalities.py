"""Left- and right-hand sides of the Weyl-transform inequalities.

Each function returns an :class:`InequalityResult` with the exact LHS, the
RHS without the unspecified universal constant, and their ratio.  The
measure convention of :mod:`weylkit.weyl` makes every p = 2 case an exact
equality; :mod:`weylkit.bounds` gives the constants the ratios are checked
against elsewhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidExponentError, InvalidInputError, InvalidWeightError
from .operators import (apply_left_multiplier, apply_symbol_multiplier,
                        conjugate_exponent, opnorm_lp_lq_estimate,
                        opnorm_schatten_estimate, schatten_lorentz_norm,
                        singular_values)
from .spaces import WeightField, lorentz_norm, lp_norm, weak_type_sup
from .weyl import (KernelOperator, PhaseSpaceFunction, inverse_weyl, inverse_weyl_array,
                   weyl_array, weyl_transform)

# endpoint comparisons (b == p, b == p') tolerate this much rounding
_ENDPOINT_SLACK = 1e-12


@dataclass
class InequalityResult:
    lhs: float
    rhs: float
    ratio: float
    params: dict = field(default_factory=dict)
    skipped: bool = False


def _result(lhs, rhs, **params):
    if rhs == 0 and lhs == 0:
        return InequalityResult(0.0, 0.0, 0.0, params, skipped=True)
    ratio = lhs / rhs if rhs > 0 else math.inf
    return InequalityResult(float(lhs), float(rhs), float(ratio), params)


def _skip(**params):
    return InequalityResult(0.0, 0.0, 0.0, params, skipped=True)


def _is_zero(a):
    return not np.any(a.values if isinstance(a, PhaseSpaceFunction) else a.matrix)


def _check_p(p, lo_open=True):
    ok = (1 < p <= 2) if lo_open else (1 <= p <= 2)
    if not ok:
        interval = "(1, 2]" if lo_open else "[1, 2]"
        raise InvalidExponentError(f"p must be in {interval}, got {p}")


def _check_sequence_weight(phi, n):
    phi = np.asarray(phi, dtype=float).ravel()
    if phi.size != n:
        raise InvalidInputError(f"weight sequence must have length {n}, got {phi.size}")
    if not np.all(phi > 0) or not np.all(np.isfinite(phi)):
        raise InvalidWeightError("weight sequence must be strictly positive")
    return phi


def _check_field_weight(w, group):
    if not isinstance(w, WeightField):
        w = WeightField(group, w)
    if w.group != group:
        raise InvalidInputError("weight lives on a different group")
    return w


def _resolve_b(p, b):
    pc = conjugate_exponent(p)
    if abs(b - p) <= _ENDPOINT_SLACK:
        return p
    if abs(b - pc) <= _ENDPOINT_SLACK:
        return pc
    if not p <= b <= pc:
        raise InvalidExponentError(f"b must lie in [p, p'] = [{p}, {pc}], got {b}")
    return b


def hy_ratio(f: PhaseSpaceFunction, p: float, mode: str = "fast") -> InequalityResult:
    """``||W f||_{B_p'} / ||f||_p``; at most 1 under the fixed normalization."""
    _check_p(p, lo_open=False)
    if _is_zero(f):
        return _skip(p=p)
    pc = conjugate_exponent(p)
    lhs = schatten_lorentz_norm(weyl_transform(f, mode), pc, pc)
    return _result(lhs, lp_norm(f, p), p=p)


def paley_ratio(f: PhaseSpaceFunction, phi, p: float, mode: str = "fast") -> InequalityResult:
    """Paley inequality: ``(sum S_n(W f)^p phi(n)^(2-p))^(1/p)`` against
    ``||phi||_{l^{1,inf}}^((2-p)/p) ||f||_p``."""
    _check_p(p)
    phi = _check_sequence_weight(phi, f.group.order)
    if _is_zero(f):
        return _skip(p=p)
    s = singular_values(weyl_transform(f, mode))
    lhs = np.sum(s ** p * phi ** (2.0 - p)) ** (1.0 / p)
    rhs = lorentz_norm(phi, 1.0, math.inf) ** ((2.0 - p) / p) * lp_norm(f, p)
    return _result(lhs, rhs, p=p)


def hyp_ratio(f: PhaseSpaceFunction, phi, p: float, b: float, mode: str = "fast") -> InequalityResult:
    """Hausdorff-Young-Paley: weight exponent ``1/b - 1/p'`` interpolates between
    Paley (b = p) and Hausdorff-Young (b = p')."""
    _check_p(p)
    b = _resolve_b(p, b)
    phi = _check_sequence_weight(phi, f.group.order)
    if _is_zero(f):
        return _skip(p=p, b=b)
    e = 1.0 / b - 1.0 / conjugate_exponent(p)
    s = singular_values(weyl_transform(f, mode))
    lhs = np.sum((s * phi ** e) ** b) ** (1.0 / b)
    rhs = lorentz_norm(phi, 1.0, math.inf) ** e * lp_norm(f, p)
    return _result(lhs, rhs, p=p, b=b)


def _multiplier_norm_bracket(values, p, q, space=None):
    return weak_type_sup(values, 1.0 / p - 1.0 / q, space)


def hormander_check(M: KernelOperator, p: float, q: float, trials: int = 4, seed: int = 0,
                    iters: int = 500, mode: str = "fast") -> InequalityResult:
    """Estimated ``||C_M||_{L^p -> L^q}`` against ``sup_s s #{S_n(M) > s}^(1/p - 1/q)``.

    The LHS is a lower bound found by ``trials`` restarts of the power ascent,
    so the ratio never overstates the true one.
    """
    if not (1 < p <= 2 <= q < math.inf):
        raise InvalidExponentError(f"need 1 < p <= 2 <= q < inf, got p={p}, q={q}")
    if _is_zero(M):
        return _skip(p=p, q=q)
    g = M.group
    rhs = _multiplier_norm_bracket(singular_values(M), p, q)
    Madj = M.adjoint()

    if mode == "fast":
        m, madj = M.matrix, Madj.matrix

        def fwd(x):
            return inverse_weyl_array(m @ weyl_array(x, g), g)

        def adj(x):
            return inverse_weyl_array(madj @ weyl_array(x, g), g)
    else:
        def fwd(x):
            return apply_left_multiplier(M, PhaseSpaceFunction(g, x), mode).values

        def adj(x):
            return apply_left_multiplier(Madj, PhaseSpaceFunction(g, x), mode).values

    lhs = opnorm_lp_lq_estimate(fwd, p, q, group=g, adjoint=adj, restarts=trials,
                                iters=iters, seed=seed)
    return _result(lhs, rhs, p=p, q=q)


def paley_inverse_ratio(T: KernelOperator, psi, p: float, mode: str = "fast") -> InequalityResult:
    """Inverse Paley: ``(int |W^{-1} T|^p psi^(2-p))^(1/p)`` against
    ``M_psi^((2-p)/p) ||T||_{B_p}`` with ``M_psi = ||psi||_{L^{1,inf}}``."""
    _check_p(p)
    psi = _check_field_weight(psi, T.group)
    if _is_zero(T):
        return _skip(p=p)
    h = inverse_weyl(T, mode)
    lhs = lp_norm(h, p, weight=psi, weight_exponent=2.0 - p)
    rhs = lorentz_norm(psi, 1.0, math.inf) ** ((2.0 - p) / p) * schatten_lorentz_norm(T, p, p)
    return _result(lhs, rhs, p=p)


def hyp_inverse_ratio(T: KernelOperator, psi, p: float, b: float, mode: str = "fast") -> InequalityResult:
    """Inverse Hausdorff-Young-Paley: ``(int (|W^{-1} T| psi^(1/b - 1/p'))^b)^(1/b)``
    against ``M_psi^(1/b - 1/p') ||T||_{B_p}``."""
    _check_p(p)
    b = _resolve_b(p, b)
    psi = _check_field_weight(psi, T.group)
    if _is_zero(T):
        return _skip(p=p, b=b)
    e = 1.0 / b - 1.0 / conjugate_exponent(p)
    h = inverse_weyl(T, mode)
    lhs = lp_norm(h, b, weight=psi, weight_exponent=e * b)
    rhs = lorentz_norm(psi, 1.0, math.inf) ** e * schatten_lorentz_norm(T, p, p)
    return _result(lhs, rhs, p=p, b=b)


def hormander_inverse_check(g: PhaseSpaceFunction, p: float, q: float, trials: int = 4,
                            seed: int = 0, iters: int = 500, mode: str = "fast") -> InequalityResult:
    """Estimated ``||phi_g||_{B_p -> B_q}`` against
    ``sup_s s mu{|g| > s}^(1/p - 1/q)`` (mass 1/N per point)."""
    if not (1 < p <= 2 <= q < math.inf):
        raise InvalidExponentError(f"need 1 < p <= 2 <= q < inf, got p={p}, q={q}")
    if _is_zero(g):
        return _skip(p=p, q=q)
    grp = g.group
    rhs = _multiplier_norm_bracket(g, p, q)
    gbar = PhaseSpaceFunction(grp, g.values.conj())

    if mode == "fast":
        gv, gbv = g.values, gbar.values

        def fwd(x):
            return weyl_array(gv * inverse_weyl_array(x, grp), grp)

        def adj(x):
            return weyl_array(gbv * inverse_weyl_array(x, grp), grp)
    else:
        def fwd(x):
            return apply_symbol_multiplier(g, KernelOperator(grp, x), mode).matrix

        def adj(x):
            return apply_symbol_multiplier(gbar, KernelOperator(grp, x), mode).matrix

    lhs = opnorm_schatten_estimate(fwd, p, q, n=grp.order, adjoint=adj, restarts=trials,
                                   iters=iters, seed=seed)
    return _result(lhs, rhs, p=p, q=q)


def hardy_littlewood_ratio(T: KernelOperator, mu, beta: float, p: float,
                           mode: str = "fast") -> InequalityResult:
    """Hardy-Littlewood: ``(int mu^(-beta(2-p)) |W^{-1} T|^p)^(1/p)`` against
    ``C_w^((2-p)/p) ||T||_{B_p}`` with ``C_w = int mu^(-beta)``."""
    _check_p(p)
    if not beta > 0:
        raise InvalidWeightError(f"beta must be positive, got {beta}")
    mu = _check_field_weight(mu, T.group)
    if _is_zero(T):
        return _skip(p=p, beta=beta)
    h = inverse_weyl(T, mode)
    lhs = lp_norm(h, p, weight=mu, weight_exponent=-beta * (2.0 - p))
    c_w = lp_norm(WeightField(mu.group, mu.values ** -beta), 1.0)
    rhs = c_w ** ((2.0 - p) / p) * schatten_lorentz_norm(T, p, p)
    return _result(lhs, rhs, p=p, beta=beta)


DIRECTIONS = ("domain_lorentz", "range_lorentz")


def lorentz_paley_ratio(f: PhaseSpaceFunction, p: float, direction: str = "domain_lorentz",
                        mode: str = "fast") -> InequalityResult:
    """Lorentz-space refinements of Hausdorff-Young.

    All three ratios land in ``params``:

    ``ratio_domain_lorentz``
        ``||W f||_{B_p'} / ||f||_{L^{p,p'}}``
    ``ratio_schatten_lorentz``
        ``||W f||_{B_{p',p}} / ||f||_p``
    ``ratio_range_lorentz``
        ``||f||_{L^{p',p}} / ||W f||_{B_p}``

    ``direction`` picks which of the first and third becomes ``ratio``.
    """
    _check_p(p)
    if direction not in DIRECTIONS:
        raise InvalidInputError(f"direction must be one of {DIRECTIONS}, got {direction!r}")
    if _is_zero(f):
        return _skip(p=p, direction=direction)
    pc = conjugate_exponent(p)
    W = weyl_transform(f, mode)
    w_pc = schatten_lorentz_norm(W, pc, pc)
    f_p_pc = lorentz_norm(f, p, pc)
    r_domain = w_pc / f_p_pc
    r_sl = schatten_lorentz_norm(W, pc, p) / lp_norm(f, p)
    w_p = schatten_lorentz_norm(W, p, p)
    f_pc_p = lorentz_norm(f, pc, p)
    r_range = f_pc_p / w_p
    extra = dict(p=p, direction=direction, ratio_domain_lorentz=r_domain,
                 ratio_schatten_lorentz=r_sl, ratio_range_lorentz=r_range)
    if direction == "domain_lorentz":
        return _result(w_pc, f_p_pc, **extra)
    return _result(f_pc_p, w_p, **extra)
