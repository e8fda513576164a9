"""Single-branch walk evolution: conditional shift, coined steps, multi-step
propagators, and definite-order compositions under cyclic reorderings.

Ordering convention, fixed once for the whole package: a sequence of coins or
processes is always applied first-to-last, i.e. ``coins[0]`` acts before
``coins[1]``.  The operator-expansion oracle re-derives the same evolutions
through an independent route, so an accidental reversal here cannot survive
the cross-validation suite.

A walk step is coin-then-shift.  The shift moves FORWARD amplitude one site
right and BACKWARD amplitude one site left; exact lattice sizing guarantees
the boundary columns are empty before every shift, which is asserted.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .coins import ProcessSpec, su2_coin
from .errors import LatticeSizingError
from .state import SystemState

__all__ = [
    "apply_shift",
    "apply_coin",
    "step",
    "evolve_process",
    "left_cyclic",
    "evolve_composition",
]


def _branch_view(amps: np.ndarray, order_slice: int | None) -> np.ndarray:
    """(k, 2, n) working view of the selected order branches."""
    if order_slice is None:
        return amps
    return amps[order_slice : order_slice + 1]


def _shift_inplace(buf: np.ndarray) -> None:
    """Conditional displacement on a (k, 2, n) buffer; ends must be empty."""
    if np.any(buf[:, 0, -1] != 0):
        raise LatticeSizingError("forward amplitude at max_site would leave the lattice")
    if np.any(buf[:, 1, 0] != 0):
        raise LatticeSizingError("backward amplitude at min_site would leave the lattice")
    buf[:, 0, 1:] = buf[:, 0, :-1]
    buf[:, 0, 0] = 0.0
    buf[:, 1, :-1] = buf[:, 1, 1:]
    buf[:, 1, -1] = 0.0


def _coin_inplace(buf: np.ndarray, coin: np.ndarray) -> None:
    """Apply a 2×2 coin to the chirality axis of a (k, 2, n) buffer."""
    # matmul broadcasts over the leading branch axis; RHS is evaluated fully
    # before assignment, so the buffer never aliases a partial result.
    buf[:] = coin @ buf


def apply_shift(state: SystemState, order_slice: int | None = None) -> SystemState:
    """Move FORWARD amplitudes to n+1 and BACKWARD amplitudes to n-1."""
    amps = state.copy_amps()
    _shift_inplace(_branch_view(amps, order_slice))
    return SystemState(lattice=state.lattice, amps=amps, origin=state.origin)


def apply_coin(
    state: SystemState, coin: np.ndarray, order_slice: int | None = None
) -> SystemState:
    """Mix the two chirality amplitudes at every site with a 2×2 unitary."""
    amps = state.copy_amps()
    _coin_inplace(_branch_view(amps, order_slice), coin)
    return SystemState(lattice=state.lattice, amps=amps, origin=state.origin)


def step(state: SystemState, coin: np.ndarray, order_slice: int | None = None) -> SystemState:
    """One walk step: coin toss followed by the conditional shift."""
    amps = state.copy_amps()
    view = _branch_view(amps, order_slice)
    _coin_inplace(view, coin)
    _shift_inplace(view)
    return SystemState(lattice=state.lattice, amps=amps, origin=state.origin)


def _evolve_process_inplace(view: np.ndarray, process: ProcessSpec) -> None:
    for params in process.coins:
        coin = su2_coin(params)
        _coin_inplace(view, coin)
        _shift_inplace(view)


def evolve_process(
    state: SystemState, process: ProcessSpec, order_slice: int | None = None
) -> SystemState:
    """Run every step of one process, coins applied in index order 0..σ-1."""
    amps = state.copy_amps()
    _evolve_process_inplace(_branch_view(amps, order_slice), process)
    return SystemState(lattice=state.lattice, amps=amps, origin=state.origin)


def left_cyclic(processes: Sequence[ProcessSpec], n: int) -> tuple[ProcessSpec, ...]:
    """Application order for the n-th cyclic rotation: p_n first, wrapping.

    n = 0 is the identity ordering (p0 first).
    """
    if not 0 <= n < len(processes):
        raise IndexError(f"ordering index {n} out of range for {len(processes)} processes")
    return tuple(processes[n:]) + tuple(processes[:n])


def evolve_composition(
    state: SystemState,
    processes: Sequence[ProcessSpec],
    n: int,
    order_slice: int | None = None,
) -> SystemState:
    """Apply all processes under the n-th cyclic ordering, one after another."""
    amps = state.copy_amps()
    view = _branch_view(amps, order_slice)
    for process in left_cyclic(processes, n):
        _evolve_process_inplace(view, process)
    return SystemState(lattice=state.lattice, amps=amps, origin=state.origin)
