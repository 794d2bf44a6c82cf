"""Norms on purely atomic measure spaces.

Two measure spaces are used throughout: G x G^ with mass 1/N per point, and
{1, ..., n} with unit masses (sequence spaces).  Functions here accept either a
:class:`PhaseSpaceFunction` / :class:`WeightField` (phase-space masses) or a
plain array (unit masses unless an :class:`AtomicMeasureSpace` is given).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .abelian_group import FiniteAbelianGroup
from .errors import InvalidExponentError, InvalidInputError, InvalidWeightError
from .weyl import PhaseSpaceFunction


@dataclass(frozen=True, eq=False)
class AtomicMeasureSpace:
    atom_masses: np.ndarray

    def __post_init__(self):
        m = np.array(self.atom_masses, dtype=float).ravel()
        if m.size == 0 or not np.all(m > 0) or not np.all(np.isfinite(m)):
            raise InvalidInputError("atom masses must be positive and finite")
        m.setflags(write=False)
        object.__setattr__(self, "atom_masses", m)

    @property
    def total_mass(self) -> float:
        return float(self.atom_masses.sum())

    @classmethod
    def counting(cls, n: int) -> "AtomicMeasureSpace":
        return cls(np.ones(n))

    @classmethod
    def phase_space(cls, g: FiniteAbelianGroup) -> "AtomicMeasureSpace":
        n = g.order
        return cls(np.full(n * n, 1.0 / n))


@dataclass(frozen=True, eq=False)
class WeightField:
    """Strictly positive real function on G x G^."""

    group: FiniteAbelianGroup
    values: np.ndarray

    def __post_init__(self):
        vals = np.array(self.values, dtype=float)
        n = self.group.order
        if vals.shape != (n, n):
            raise InvalidInputError(f"expected shape {(n, n)}, got {vals.shape}")
        if not np.all(np.isfinite(vals)) or not np.all(vals > 0):
            raise InvalidWeightError("weight must be strictly positive and finite")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)


@dataclass(frozen=True, eq=False)
class RearrangementProfile:
    """Step function f* = ``levels[i]`` on ``[edges[i], edges[i+1])``."""

    levels: np.ndarray
    widths: np.ndarray
    # zero values are dropped, so widths sum to the measure of the support

    @property
    def edges(self) -> np.ndarray:
        return np.concatenate([[0.0], np.cumsum(self.widths)])

    @property
    def total_mass(self) -> float:
        return float(self.widths.sum())

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        right = np.cumsum(self.widths)
        i = np.searchsorted(right, t, side="right")
        padded = np.concatenate([self.levels, [0.0]])
        return padded[np.minimum(i, len(self.levels))]


def _values_and_masses(f, space: AtomicMeasureSpace | None = None):
    if isinstance(f, (PhaseSpaceFunction, WeightField)):
        vals = np.abs(f.values).ravel()
        if space is None:
            return vals, np.full(vals.size, 1.0 / f.group.order)
    else:
        vals = np.abs(np.asarray(f)).ravel()
    if space is None:
        return vals, np.ones(vals.size)
    if space.atom_masses.size != vals.size:
        raise InvalidInputError(
            f"{vals.size} values but {space.atom_masses.size} atoms in measure space"
        )
    return vals, space.atom_masses


def lp_norm(f, p: float, weight=None, weight_exponent: float = 1.0,
            space: AtomicMeasureSpace | None = None) -> float:
    """Weighted L^p norm ``(sum |f|^p w^e m)^(1/p)``; ``p = inf`` gives ``max |f|``."""
    if not p >= 1:
        raise InvalidExponentError(f"p must be >= 1, got {p}")
    vals, masses = _values_and_masses(f, space)
    if np.isinf(p):
        return float(vals.max(initial=0.0))
    dens = masses
    if weight is not None:
        w = weight.values if isinstance(weight, WeightField) else np.asarray(weight, float)
        w = w.ravel()
        if w.size != vals.size or not np.all(w > 0):
            raise InvalidWeightError("weight must be positive with one value per atom")
        dens = masses * w ** weight_exponent
    return float(np.sum(vals ** p * dens) ** (1.0 / p))


def distribution_function(f, s: float, space: AtomicMeasureSpace | None = None) -> float:
    """Measure of ``{|f| > s}``."""
    vals, masses = _values_and_masses(f, space)
    return float(masses[vals > s].sum())


def decreasing_rearrangement(f, space: AtomicMeasureSpace | None = None) -> RearrangementProfile:
    vals, masses = _values_and_masses(f, space)
    keep = vals > 0
    vals, masses = vals[keep], masses[keep]
    # stable sort keeps ties in original index order
    order = np.argsort(-vals, kind="stable")
    vals, masses = vals[order], masses[order]
    if vals.size == 0:
        return RearrangementProfile(np.zeros(0), np.zeros(0))
    starts = np.concatenate([[True], vals[1:] != vals[:-1]])
    group_ids = np.cumsum(starts) - 1
    levels = vals[starts]
    widths = np.bincount(group_ids, weights=masses)
    return RearrangementProfile(levels, widths)


def lorentz_norm(f, p: float, q: float, space: AtomicMeasureSpace | None = None) -> float:
    """Lorentz quasinorm ``||f||_{L^{p,q}}`` evaluated exactly on the steps of f*.

    For ``q < inf`` each step ``[a, b)`` contributes ``level^q (p/q)(b^(q/p) - a^(q/p))``;
    for ``q = inf`` the supremum of ``t^(1/p) f*(t)`` is the maximum over right
    endpoints of the steps.
    """
    if not p > 0 or not q > 0:
        raise InvalidExponentError(f"Lorentz exponents must be positive, got p={p}, q={q}")
    prof = decreasing_rearrangement(f, space)
    edges = prof.edges
    lev = prof.levels
    if np.isinf(p):
        if np.isinf(q):
            return float(lev.max(initial=0.0))
        raise InvalidExponentError("p = inf requires q = inf")
    if np.isinf(q):
        return float(np.max(lev * edges[1:] ** (1.0 / p), initial=0.0))
    a = q / p
    steps = lev ** q * (p / q) * (edges[1:] ** a - edges[:-1] ** a)
    return float(steps.sum() ** (1.0 / q))


def weak_type_sup(f, exponent: float = 1.0, space: AtomicMeasureSpace | None = None) -> float:
    """``sup_{s>0} s * mu{|f| > s}^exponent``, exact at the jumps of the count.

    Just below each distinct level ``v`` the measure is ``mu{|f| >= v}``, so the
    supremum is ``max_v v * mu{|f| >= v}^exponent``.  ``exponent = 1`` is the
    weak-L^1 quasinorm.
    """
    prof = decreasing_rearrangement(f, space)
    lev = prof.levels
    mass = np.cumsum(prof.widths)
    keep = lev > 0
    if not keep.any():
        return 0.0
    return float(np.max(lev[keep] * mass[keep] ** exponent))
