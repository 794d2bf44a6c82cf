"""Seeded random inputs: phase-space functions, operators, symbols, weights."""

from __future__ import annotations

import math
import re
import zlib

import numpy as np
from scipy.stats import unitary_group

from ..abelian_group import FiniteAbelianGroup
from ..errors import ConfigError
from ..spaces import WeightField
from ..weyl import KernelOperator, PhaseSpaceFunction, inverse_weyl

FUNCTION_KINDS = ("gaussian", "sparse", "rank_one", "constant")
SYMBOL_KINDS = ("gaussian", "flat", "atom", "power(r)")
_POWER = re.compile(r"^power\(\s*([^)]+)\s*\)$")


def derive_seed(master: int, *parts) -> int:
    """Stable 64-bit seed for a sweep cell.

    ``parts`` (strings are reduced with CRC-32) become the spawn key of a
    :class:`numpy.random.SeedSequence` rooted at ``master``; the first 64-bit
    word of its state is the cell seed.  Independent of scheduling and of the
    order in which cells are visited.
    """
    key = tuple(zlib.crc32(p.encode()) if isinstance(p, str) else int(p) for p in parts)
    ss = np.random.SeedSequence(entropy=int(master), spawn_key=key)
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def _complex_normal(rng, shape):
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / math.sqrt(2.0)


def _unit_vector(rng, n):
    v = _complex_normal(rng, n)
    return v / np.linalg.norm(v)


def generate_function(g: FiniteAbelianGroup, kind: str, seed: int) -> PhaseSpaceFunction:
    n = g.order
    rng = np.random.default_rng(seed)
    if kind == "gaussian":
        vals = _complex_normal(rng, (n, n))
    elif kind == "sparse":
        k = math.ceil(n / 4)
        vals = np.zeros(n * n, dtype=complex)
        vals[rng.choice(n * n, size=k, replace=False)] = 1.0
        vals = vals.reshape(n, n)
    elif kind == "rank_one":
        u, v = _unit_vector(rng, n), _unit_vector(rng, n)
        return inverse_weyl(KernelOperator(g, np.outer(u, v.conj())))
    elif kind == "constant":
        vals = np.ones((n, n), dtype=complex)
    else:
        raise ConfigError(f"unknown function kind {kind!r}; expected one of {FUNCTION_KINDS}")
    return PhaseSpaceFunction(g, vals)


def parse_decay(decay) -> tuple[str, float | None]:
    """``"flat"``, ``"random_gaussian"``, ``"power(r)"`` or ``("power", r)``."""
    if isinstance(decay, (tuple, list)):
        name, r = decay
        return str(name), float(r)
    m = _POWER.match(str(decay).strip())
    if m:
        try:
            return "power", float(m.group(1))
        except ValueError:
            raise ConfigError(f"bad power exponent in {decay!r}") from None
    return str(decay), None


def target_spectrum(n: int, decay) -> np.ndarray:
    name, r = parse_decay(decay)
    if name == "flat":
        return np.ones(n)
    if name == "power":
        if r is None or not r > 0:
            raise ConfigError(f"power decay needs r > 0, got {r}")
        return np.arange(1, n + 1, dtype=float) ** (-1.0 / r)
    raise ConfigError(f"decay {decay!r} has no target spectrum")


def generate_operator(g: FiniteAbelianGroup, decay, seed: int) -> KernelOperator:
    """``U diag(spectrum) V^*`` with Haar unitaries, or i.i.d. complex normal entries."""
    n = g.order
    rng = np.random.default_rng(seed)
    name, _ = parse_decay(decay)
    if name == "random_gaussian":
        return KernelOperator(g, _complex_normal(rng, (n, n)))
    if name not in ("flat", "power"):
        raise ConfigError(f"unknown decay {decay!r}")
    s = target_spectrum(n, decay)
    if n == 1:
        u = v = np.exp(2j * np.pi * rng.random((1, 1)))
    else:
        u = unitary_group.rvs(n, random_state=rng)
        v = unitary_group.rvs(n, random_state=rng)
    return KernelOperator(g, (u * s) @ v.conj().T)


def generate_symbol(g: FiniteAbelianGroup, kind, seed: int) -> PhaseSpaceFunction:
    """Multiplier symbols on G x G^.

    ``power(r)`` places the moduli ``(i/N)^(-1/r)``, i = 1..N^2, at random
    points with random phases, so its weak-L^r quasinorm is exactly 1; ``flat``
    has unit modulus and ``atom`` is a Gaussian background with one dominant
    point.
    """
    n = g.order
    rng = np.random.default_rng(seed)
    name, r = parse_decay(kind)
    phases = np.exp(2j * np.pi * rng.random(n * n))
    if name == "gaussian":
        vals = _complex_normal(rng, n * n)
    elif name == "flat":
        vals = phases
    elif name == "power":
        if r is None or not r > 0:
            raise ConfigError(f"power symbol needs r > 0, got {r}")
        mags = (np.arange(1, n * n + 1) / n) ** (-1.0 / r)
        vals = mags[rng.permutation(n * n)] * phases
    elif name == "atom":
        vals = _complex_normal(rng, n * n)
        j = rng.integers(n * n)
        vals[j] = phases[j] * (2.0 * np.abs(vals).max() + 1.0)
    else:
        raise ConfigError(f"unknown symbol kind {kind!r}")
    return PhaseSpaceFunction(g, vals.reshape(n, n))


def harmonic_sequence(n: int) -> np.ndarray:
    """phi(n) = 1/n, whose weak-l^1 quasinorm is 1 for every length."""
    return 1.0 / np.arange(1, n + 1, dtype=float)


def index_decay_weight(g: FiniteAbelianGroup) -> WeightField:
    """psi(x, k) = 1 / (1 + row-major index of (x, k))."""
    n = g.order
    return WeightField(g, 1.0 / (1.0 + np.arange(n * n, dtype=float)).reshape(n, n))


def index_growth_weight(g: FiniteAbelianGroup) -> WeightField:
    """mu(x, k) = 1 + row-major index of (x, k)."""
    n = g.order
    return WeightField(g, (1.0 + np.arange(n * n, dtype=float)).reshape(n, n))
