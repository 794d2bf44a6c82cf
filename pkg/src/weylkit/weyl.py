"""Schrodinger representation and the Weyl transform on G x G^.

Measure convention: counting measure on G and mass 1/N per character, so every
point of G x G^ carries mass 1/N.  With this choice

    W(f) = (1/N) sum_{x,k} f(x, k) rho(x, chi_k),
    K(y, z) = (1/N) sum_k f(z - y, k) chi_k(y),

and W is an isometry from L^2(G x G^) onto the Hilbert-Schmidt class.  The
inverse is the trace pairing ``f(x, k) = tr(rho(x, chi_k)^* T)``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

import numpy as np

from .abelian_group import FiniteAbelianGroup, character_eval, group_add
from .errors import InvalidInputError, NumericalFailureError

MODES = ("reference", "fast")


@dataclass(frozen=True, eq=False)
class PhaseSpaceFunction:
    """Complex function on G x G^, ``values[x_index, chi_index]``."""

    group: FiniteAbelianGroup
    values: np.ndarray

    def __post_init__(self):
        vals = np.array(self.values, dtype=complex)
        n = self.group.order
        if vals.shape != (n, n):
            raise InvalidInputError(f"expected shape {(n, n)}, got {vals.shape}")
        if not np.all(np.isfinite(vals)):
            raise InvalidInputError("phase-space function has non-finite entries")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def __add__(self, other):
        return PhaseSpaceFunction(self.group, self.values + other.values)

    def __mul__(self, c):
        return PhaseSpaceFunction(self.group, self.values * c)

    __rmul__ = __mul__


@dataclass(eq=False)
class KernelOperator:
    """Operator on l^2(G) with matrix ``K[y, z]``: ``(T phi)(y) = sum_z K(y, z) phi(z)``.

    Singular values are computed on first use and cached; the cache is guarded
    by a lock so instances can be shared between threads.
    """

    group: FiniteAbelianGroup
    matrix: np.ndarray
    _singular_values: np.ndarray | None = field(default=None, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def __post_init__(self):
        mat = np.array(self.matrix, dtype=complex)
        n = self.group.order
        if mat.shape != (n, n):
            raise InvalidInputError(f"expected shape {(n, n)}, got {mat.shape}")
        if not np.all(np.isfinite(mat)):
            raise InvalidInputError("operator has non-finite entries")
        mat.setflags(write=False)
        self.matrix = mat

    @property
    def singular_values(self) -> np.ndarray:
        with self._lock:
            if self._singular_values is None:
                try:
                    s = np.linalg.svd(self.matrix, compute_uv=False)
                except np.linalg.LinAlgError as exc:
                    raise NumericalFailureError(f"SVD failed: {exc}") from exc
                s = np.maximum(s, 0.0)
                s.setflags(write=False)
                self._singular_values = s
            return self._singular_values

    def __matmul__(self, other: "KernelOperator") -> "KernelOperator":
        return KernelOperator(self.group, self.matrix @ other.matrix)

    def adjoint(self) -> "KernelOperator":
        return KernelOperator(self.group, self.matrix.conj().T)


def schrodinger_rep(g: FiniteAbelianGroup, x, chi) -> KernelOperator:
    """Matrix of rho(x, chi): entries ``chi(y)`` at ``(y, x + y)``, zero elsewhere."""
    n = g.order
    mat = np.zeros((n, n), dtype=complex)
    for iy in range(n):
        y = g.element(iy)
        mat[iy, g.index(group_add(g, x, y))] = character_eval(g, chi, y)
    return KernelOperator(g, mat)


def _check_mode(mode):
    if mode not in MODES:
        raise InvalidInputError(f"mode must be one of {MODES}, got {mode!r}")


def _group_axes(g: FiniteAbelianGroup):
    return tuple(range(1, g.rank + 1))


def weyl_transform(f: PhaseSpaceFunction, mode: str = "fast") -> KernelOperator:
    """Weyl transform of a phase-space function.

    ``reference`` sums ``f(x, k) rho(x, chi_k) / N`` over all N^2 points
    (O(N^4)); ``fast`` fills each diagonal offset with an inverse DFT over the
    character index (O(N^2 log N)).
    """
    _check_mode(mode)
    if not isinstance(f, PhaseSpaceFunction):
        raise InvalidInputError("weyl_transform expects a PhaseSpaceFunction")
    g = f.group
    n = g.order
    if mode == "reference":
        chars = g.character_table
        add = g.addition_table
        mat = np.zeros((n, n), dtype=complex)
        rows = np.arange(n)
        for ix in range(n):
            cols = add[ix]
            for ik in range(n):
                c = f.values[ix, ik]
                if c != 0:
                    # rho(x, chi_k) has entry chi_k(y) at (y, x + y)
                    mat[rows, cols] += c * chars[ik]
        return KernelOperator(g, mat / n)
    return KernelOperator(g, weyl_array(f.values, g))


def inverse_weyl(T: KernelOperator, mode: str = "fast") -> PhaseSpaceFunction:
    """Inverse Weyl transform ``f(x, k) = tr(rho(x, chi_k)^* T)``."""
    _check_mode(mode)
    if not isinstance(T, KernelOperator):
        raise InvalidInputError("inverse_weyl expects a KernelOperator")
    g = T.group
    n = g.order
    # d[x, y] = T(y, x + y)
    diag = T.matrix[np.arange(n)[None, :], g.addition_table]
    if mode == "reference":
        vals = diag @ g.character_table.conj().T
        return PhaseSpaceFunction(g, vals)
    return PhaseSpaceFunction(g, inverse_weyl_array(T.matrix, g))


def weyl_array(values: np.ndarray, g: FiniteAbelianGroup) -> np.ndarray:
    """Fast-path kernel matrix of ``values`` (no validation)."""
    n = g.order
    # D[x, y] = (1/N) sum_k f(x, k) chi_k(y); ifftn carries the 1/N
    diag = np.fft.ifftn(values.reshape((n,) + g.orders), axes=_group_axes(g)).reshape(n, n)
    mat = np.empty((n, n), dtype=complex)
    mat[np.arange(n)[None, :], g.addition_table] = diag
    return mat


def inverse_weyl_array(matrix: np.ndarray, g: FiniteAbelianGroup) -> np.ndarray:
    """Fast-path inverse transform of a kernel matrix (no validation)."""
    n = g.order
    diag = matrix[np.arange(n)[None, :], g.addition_table]
    return np.fft.fftn(diag.reshape((n,) + g.orders), axes=_group_axes(g)).reshape(n, n)


def atom(g: FiniteAbelianGroup, x_index: int, chi_index: int, height: complex | None = None) -> PhaseSpaceFunction:
    """``height`` times the indicator of one point; default height N (unit mass)."""
    vals = np.zeros((g.order, g.order), dtype=complex)
    vals[x_index, chi_index] = g.order if height is None else height
    return PhaseSpaceFunction(g, vals)
