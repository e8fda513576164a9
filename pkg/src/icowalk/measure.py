"""Measurements: Fourier-basis readout of the order register, projective coin
measurement, branch probabilities, and position distributions.

The Fourier ket of dimension d, index m, has components e^{-i·2πmk/d}/√d; the
projection therefore contracts with the conjugate, e^{+i·2πmk/d}/√d.  Branch
states keep their non-normalized amplitudes, so projecting is linear and the
branch weights sum to the norm of the input across all outcomes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ZeroBranchError
from .state import Chirality, ConditionalState, PositionLattice, SystemState
from .tolerances import NEGATIVE_PROBABILITY_FLOOR

__all__ = [
    "FourierVector",
    "Distribution",
    "fourier_vector",
    "project_order",
    "project_coin",
    "distribution",
    "branch_probability",
]


@dataclass(frozen=True)
class FourierVector:
    """One element |F_m⟩ of the d-dimensional Fourier basis."""

    d: int
    m: int
    components: np.ndarray


def fourier_vector(d: int, m: int) -> FourierVector:
    """Fourier basis ket: component k is e^{-i·2πmk/d}/√d."""
    if not 0 <= m < d:
        raise IndexError(f"Fourier index m={m} out of range for dimension {d}")
    k = np.arange(d)
    components = np.exp(-2j * np.pi * m * k / d) / np.sqrt(d)
    return FourierVector(d=d, m=m, components=components)


def project_order(state: SystemState, m: int) -> ConditionalState:
    """Project the order register onto |F_m⟩, keeping amplitudes non-normalized.

    The coin⊗walker amplitudes become Σ_k conj(F_m[k])·amps[k]; the squared
    norm of the result is the probability of outcome m.
    """
    fm = fourier_vector(state.order_dim, m)
    amps = np.einsum("k,kcn->cn", fm.components.conj(), state.amps)
    return ConditionalState(lattice=state.lattice, amps=amps, origin=state.origin)


def project_coin(state: ConditionalState, phi: Chirality) -> ConditionalState:
    """Keep one chirality slice; the discarded slice is zeroed."""
    amps = np.zeros_like(state.amps)
    amps[int(phi)] = state.amps[int(phi)]
    return ConditionalState(
        lattice=state.lattice, amps=amps, origin=state.origin, chirality=phi
    )


def branch_probability(state: ConditionalState) -> float:
    """Probability of the measurement record that produced this branch."""
    return state.weight


@dataclass(frozen=True)
class Distribution:
    """Position distribution of a branch: support sites and their probabilities.

    ``total_mass`` is the branch weight before any normalization; when
    ``normalized`` is set the probabilities sum to 1.  Sites with exactly zero
    probability are not stored; :meth:`probability_at` returns 0.0 for them.
    """

    origin: int
    positions: np.ndarray
    probabilities: np.ndarray
    normalized: bool
    total_mass: float

    def probability_at(self, site: int) -> float:
        idx = np.searchsorted(self.positions, site)
        if idx < self.positions.size and self.positions[idx] == site:
            return float(self.probabilities[idx])
        return 0.0

    @property
    def support_min(self) -> int:
        return int(self.positions[0])

    @property
    def support_max(self) -> int:
        return int(self.positions[-1])


def clean_probabilities(values: np.ndarray) -> np.ndarray:
    """Clamp roundoff negatives in [-1e-15, 0) to zero; reject larger ones."""
    values = np.asarray(values, dtype=np.float64)
    if np.any(values < NEGATIVE_PROBABILITY_FLOOR):
        worst = float(values.min())
        raise ValueError(f"probability {worst!r} below the roundoff floor")
    return np.where(values < 0.0, 0.0, values)


def make_distribution(
    sites: np.ndarray,
    values: np.ndarray,
    origin: int,
    normalized: bool,
    total_mass: float,
) -> Distribution:
    """Assemble a Distribution from aligned site/probability arrays."""
    values = clean_probabilities(values)
    keep = values > 0.0
    return Distribution(
        origin=origin,
        positions=np.asarray(sites)[keep].astype(np.int64),
        probabilities=values[keep],
        normalized=normalized,
        total_mass=float(total_mass),
    )


def distribution(state: ConditionalState, normalize: bool = False) -> Distribution:
    """Per-site probabilities |amplitude|², summed over any remaining chirality.

    With ``normalize`` the values are divided by the branch weight; requesting
    that on a zero-weight branch raises :class:`ZeroBranchError`.
    """
    values = np.sum(np.abs(state.amps) ** 2, axis=0)
    mass = float(values.sum())
    if normalize:
        if mass <= 0.0:
            raise ZeroBranchError("cannot normalize a zero-weight branch")
        values = values / mass
    return make_distribution(
        state.lattice.sites(), values, state.origin, normalize, mass
    )
