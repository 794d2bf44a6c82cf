"""Finite abelian groups Z_{n1} x ... x Z_{nd} and their characters.

Elements and characters share one index set: the row-major enumeration of
residue tuples.  A character is labelled by its frequency tuple ``k`` and acts
by ``chi_k(x) = exp(2 pi i sum_j k_j x_j / n_j)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import GroupSizeError, InvalidElementError, InvalidGroupError

DEFAULT_SIZE_CAP = 4096


@dataclass(frozen=True)
class GroupElement:
    residues: tuple[int, ...]


@dataclass(frozen=True)
class Character:
    frequencies: tuple[int, ...]


@dataclass(frozen=True, eq=True)
class FiniteAbelianGroup:
    """Product of cyclic groups with a fixed row-major enumeration."""

    orders: tuple[int, ...]
    order: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "order", int(np.prod(self.orders, dtype=np.int64)))

    def __repr__(self):
        return f"FiniteAbelianGroup({self.spec})"

    @property
    def spec(self) -> str:
        """Group specification string, e.g. ``"2x3x4"``."""
        return "x".join(str(n) for n in self.orders)

    @property
    def rank(self) -> int:
        return len(self.orders)

    @cached_property
    def elements(self) -> np.ndarray:
        """``(N, d)`` integer array of residue tuples in row-major order."""
        grids = np.indices(self.orders).reshape(self.rank, -1)
        out = grids.T.copy()
        out.setflags(write=False)
        return out

    @cached_property
    def addition_table(self) -> np.ndarray:
        """``table[a, b] = index(element(a) + element(b))``."""
        res = self.elements
        total = (res[:, None, :] + res[None, :, :]) % np.asarray(self.orders)
        table = np.ravel_multi_index(
            tuple(np.moveaxis(total, -1, 0)), self.orders
        )
        table.setflags(write=False)
        return table

    @cached_property
    def character_table(self) -> np.ndarray:
        """``table[k, x] = chi_k(x)``; symmetric and unitary up to a factor N."""
        res = self.elements
        n = np.asarray(self.orders)
        phase = ((res[:, None, :] * res[None, :, :]) % n / n).sum(-1)
        table = np.exp(2j * np.pi * phase)
        table.setflags(write=False)
        return table

    def element(self, i: int) -> GroupElement:
        if not 0 <= i < self.order:
            raise InvalidElementError(f"index {i} out of range for group of order {self.order}")
        return GroupElement(tuple(int(r) for r in self.elements[i]))

    def character(self, i: int) -> Character:
        return Character(self.element(i).residues)

    def index(self, a) -> int:
        """Row-major index of an element, character, or residue tuple."""
        res = self._residues(a)
        return int(np.ravel_multi_index(res, self.orders))

    def _residues(self, a) -> tuple[int, ...]:
        if isinstance(a, GroupElement):
            res = a.residues
        elif isinstance(a, Character):
            res = a.frequencies
        else:
            res = tuple(a) if not np.isscalar(a) else (a,)
        if len(res) != self.rank:
            raise InvalidElementError(
                f"expected {self.rank} residues for group {self.spec}, got {len(res)}"
            )
        for r, n in zip(res, self.orders):
            if not 0 <= int(r) < n:
                raise InvalidElementError(f"residue {r} not in [0, {n})")
        return tuple(int(r) for r in res)


def make_group(orders: Sequence[int], size_cap: int = DEFAULT_SIZE_CAP) -> FiniteAbelianGroup:
    """Build Z_{n1} x ... x Z_{nd}.

    Raises
    ------
    InvalidGroupError
        If ``orders`` is empty or contains a non-positive entry.
    GroupSizeError
        If the group order exceeds ``size_cap``.
    """
    orders = tuple(int(n) for n in orders)
    if not orders:
        raise InvalidGroupError("group needs at least one cyclic factor")
    if any(n < 1 for n in orders):
        raise InvalidGroupError(f"cyclic orders must be >= 1, got {orders}")
    total = int(np.prod(orders, dtype=np.int64))
    if total > size_cap:
        raise GroupSizeError(f"group order {total} exceeds cap {size_cap}")
    return FiniteAbelianGroup(orders)


def parse_group(spec: str, size_cap: int = DEFAULT_SIZE_CAP) -> FiniteAbelianGroup:
    """Parse ``"n1xn2x...xnd"`` into a group."""
    try:
        orders = [int(tok) for tok in spec.strip().lower().split("x")]
    except ValueError:
        raise InvalidGroupError(f"malformed group spec {spec!r}") from None
    return make_group(orders, size_cap=size_cap)


def group_add(g: FiniteAbelianGroup, a, b) -> GroupElement:
    ra, rb = g._residues(a), g._residues(b)
    return GroupElement(tuple((x + y) % n for x, y, n in zip(ra, rb, g.orders)))


def group_neg(g: FiniteAbelianGroup, a) -> GroupElement:
    return GroupElement(tuple((-x) % n for x, n in zip(g._residues(a), g.orders)))


def character_eval(g: FiniteAbelianGroup, chi, x) -> complex:
    k = g._residues(chi)
    xs = g._residues(x)
    # reduce the numerator mod n_j first so exact multiples land on 1.0
    phase = sum(((kj * xj) % n) / n for kj, xj, n in zip(k, xs, g.orders))
    return complex(np.exp(2j * np.pi * phase))
