"""State representation for the order-control ⊗ coin ⊗ walker system.

The joint state is a dense complex tensor ``amps[k, c, n]`` indexed by the
order-control basis state ``k``, the coin chirality ``c`` (FORWARD = 0 moves
the walker right, BACKWARD = 1 moves it left) and the lattice site ``n``.
All states in scope are pure, so a vector of amplitudes suffices; density
matrices are built on demand by :func:`walker_density` for coherence-level
comparisons.

Lattices are sized exactly for the planned number of steps (one spare site
beyond the light cone at each end), so evolution never truncates amplitude
and never wraps around.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from typing import Sequence

import numpy as np

from .errors import LatticeSizingError, NormalizationError
from .tolerances import AMPLITUDE_ATOL


class Chirality(IntEnum):
    """Coin basis labels: FORWARD shifts the walker +1, BACKWARD shifts it -1."""

    FORWARD = 0
    BACKWARD = 1

    @property
    def opposite(self) -> "Chirality":
        return Chirality(1 - self.value)


@dataclass(frozen=True)
class PositionLattice:
    """Bounded window [min_site, max_site] of the integer line."""

    min_site: int
    max_site: int

    def __post_init__(self) -> None:
        if self.min_site > self.max_site:
            raise LatticeSizingError(
                f"empty lattice: min_site {self.min_site} > max_site {self.max_site}"
            )

    @property
    def n_sites(self) -> int:
        return self.max_site - self.min_site + 1

    def index(self, site: int) -> int:
        """Array index of an absolute site; raises if outside the window."""
        if not self.min_site <= site <= self.max_site:
            raise LatticeSizingError(
                f"site {site} outside lattice [{self.min_site}, {self.max_site}]"
            )
        return site - self.min_site

    def sites(self) -> np.ndarray:
        """All absolute site labels, ascending."""
        return np.arange(self.min_site, self.max_site + 1)

    def contains(self, other: "PositionLattice") -> bool:
        return self.min_site <= other.min_site and self.max_site >= other.max_site


@dataclass(frozen=True)
class SystemState:
    """Pure state of order-control ⊗ coin ⊗ walker.

    ``amps`` has shape (order_dim, 2, lattice.n_sites) and dtype complex128.
    ``origin`` records the walker's starting site so downstream distributions
    can report offsets relative to it.  Instances are treated as immutable;
    evolution returns new states.
    """

    lattice: PositionLattice
    amps: np.ndarray
    origin: int

    @property
    def order_dim(self) -> int:
        return self.amps.shape[0]

    def copy_amps(self) -> np.ndarray:
        return self.amps.copy()


@dataclass(frozen=True)
class ConditionalState:
    """Coin ⊗ walker state left after projecting the order register.

    Amplitudes are kept exactly as the projection produced them (no
    renormalization), so the squared norm *is* the branch probability.
    ``chirality`` is set once a coin projection has additionally been applied;
    the discarded coin slice is then identically zero.
    """

    lattice: PositionLattice
    amps: np.ndarray  # shape (2, n_sites)
    origin: int
    chirality: Chirality | None = None

    @property
    def weight(self) -> float:
        """Branch probability: squared norm of the stored amplitudes."""
        return norm_squared(self)


@dataclass(frozen=True)
class WalkerDensityMatrix:
    """Position-basis density matrix of a single-chirality walker state.

    ``matrix[i, j]`` corresponds to sites ``window.min_site + i/j``; it is the
    outer product of the (non-normalized) walker amplitudes, so the trace
    equals the branch weight and the diagonal holds the population terms.
    """

    window: PositionLattice
    matrix: np.ndarray

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    @property
    def populations(self) -> np.ndarray:
        return np.real(np.diag(self.matrix)).copy()


def make_initial_state(
    order_dim: int,
    order_amplitudes: Sequence[complex],
    n0: int,
    phi0: Chirality,
    total_steps: int,
) -> SystemState:
    """Product state: order register in ``order_amplitudes``, coin in ``phi0``,
    walker localized at ``n0``, on a lattice sized exactly for ``total_steps``.

    Raises :class:`NormalizationError` if the order vector is not unit norm,
    and rejects negative ``total_steps``.
    """
    if order_dim < 1:
        raise NormalizationError(f"order_dim must be positive, got {order_dim}")
    if total_steps < 0:
        raise LatticeSizingError(f"total_steps must be >= 0, got {total_steps}")
    order_vec = np.asarray(order_amplitudes, dtype=np.complex128)
    if order_vec.shape != (order_dim,):
        raise NormalizationError(
            f"order vector has length {order_vec.size}, expected {order_dim}"
        )
    nrm = float(np.sum(np.abs(order_vec) ** 2))
    if abs(nrm - 1.0) > AMPLITUDE_ATOL:
        raise NormalizationError(f"order vector norm² = {nrm!r}, expected 1")

    lattice = PositionLattice(n0 - total_steps - 1, n0 + total_steps + 1)
    amps = np.zeros((order_dim, 2, lattice.n_sites), dtype=np.complex128)
    amps[:, int(phi0), lattice.index(n0)] = order_vec
    return SystemState(lattice=lattice, amps=amps, origin=n0)


def norm_squared(state: SystemState | ConditionalState) -> float:
    """Total probability Σ|amplitude|² of a (possibly non-normalized) state."""
    return float(np.sum(np.abs(state.amps) ** 2))


def walker_density(state: ConditionalState, window: PositionLattice) -> WalkerDensityMatrix:
    """Outer product of the walker amplitudes of a single-chirality state.

    ``window`` must cover the state's support; the returned matrix is indexed
    over the window's sites.
    """
    if state.chirality is None:
        raise ValueError("walker_density requires a coin-projected (single-chirality) state")
    psi_full = state.amps[int(state.chirality)]

    support = np.nonzero(np.abs(psi_full) > 0.0)[0]
    if support.size:
        lo = state.lattice.min_site + int(support[0])
        hi = state.lattice.min_site + int(support[-1])
        if not (window.min_site <= lo and window.max_site >= hi):
            raise LatticeSizingError(
                f"window [{window.min_site}, {window.max_site}] does not cover "
                f"support [{lo}, {hi}]"
            )

    psi = np.zeros(window.n_sites, dtype=np.complex128)
    overlap_lo = max(window.min_site, state.lattice.min_site)
    overlap_hi = min(window.max_site, state.lattice.max_site)
    if overlap_lo <= overlap_hi:
        dst = slice(overlap_lo - window.min_site, overlap_hi - window.min_site + 1)
        src = slice(overlap_lo - state.lattice.min_site, overlap_hi - state.lattice.min_site + 1)
        psi[dst] = psi_full[src]
    return WalkerDensityMatrix(window=window, matrix=np.outer(psi, psi.conj()))
