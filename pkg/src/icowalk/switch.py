"""Order-controlled evolution: the 2-switch and the cyclic N-switch.

Branch k of the order register carries the coin⊗walker state evolved under
the k-th cyclic ordering of the process list.  The controlled unitary is
never materialized as a matrix; evolving each branch independently *is* its
action on a product input, and costs O(N · lattice) memory instead of the
squared footprint of an explicit operator.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .coins import ProcessSpec
from .engine import _evolve_process_inplace, left_cyclic
from .state import SystemState

__all__ = ["apply_2switch", "apply_nswitch"]


def apply_nswitch(initial: SystemState, processes: Sequence[ProcessSpec]) -> SystemState:
    """Evolve order branch n under the n-th left-cyclic process ordering.

    Requires order_dim == len(processes) >= 2 and a lattice sized for the
    total step count Σσ.
    """
    n_proc = len(processes)
    if n_proc < 2:
        raise ValueError(f"switch needs at least 2 processes, got {n_proc}")
    if initial.order_dim != n_proc:
        raise ValueError(
            f"order register dimension {initial.order_dim} does not match "
            f"{n_proc} processes"
        )
    amps = initial.copy_amps()
    for n in range(n_proc):
        branch = amps[n : n + 1]
        for process in left_cyclic(processes, n):
            _evolve_process_inplace(branch, process)
    return SystemState(lattice=initial.lattice, amps=amps, origin=initial.origin)


def apply_2switch(initial: SystemState, p0: ProcessSpec, p1: ProcessSpec) -> SystemState:
    """Two-process switch: branch 0 runs p0-then-p1, branch 1 runs p1-then-p0."""
    if initial.order_dim != 2:
        raise ValueError(f"2-switch needs order_dim 2, got {initial.order_dim}")
    return apply_nswitch(initial, (p0, p1))
