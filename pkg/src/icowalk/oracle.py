"""Brute-force operator-expansion oracle for cross-validating the engine.

A σ-step propagator factors, step by step, into a sum over all 2^σ chirality
words: each word contributes a coin-space matrix (the product of projected
coins, one per step) tensored with a pure displacement X_D, where D counts
forward minus backward moves.  Displacements obey X_a·X_b = X_{a+b}, so
compositions of propagators multiply the coin matrices and add the D's.
After merging terms with equal D, a σ-step expansion has at most σ+1 terms
and applying it to a localized state reproduces the walk exactly.

This module re-derives every evolution through that route, on purpose without
touching the engine's evolution code: agreement between the two is evidence,
not tautology.  The only shared ingredients are the coin matrix definition
and the Distribution container.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .coins import ProcessSpec, random_coin, su2_coin
from .errors import ExpansionSizeError
from .measure import Distribution, make_distribution
from .report import CheckReport, make_report
from .state import Chirality, PositionLattice
from .tolerances import PROBABILITY_ATOL

__all__ = [
    "ShiftTerm",
    "ExpansionTerm",
    "OperatorExpansion",
    "x_compose",
    "expand_propagator",
    "compose_expansions",
    "add_expansions",
    "scale_expansion",
    "commutator_expansion",
    "apply_expansion",
    "oracle_distribution",
    "contraction_amplitudes",
    "commutator_contraction_asymmetry",
    "verify_expansion_against_engine",
    "MAX_EXPANSION_SIGMA",
]

# 2^σ word-enumeration guard
MAX_EXPANSION_SIGMA = 14


@dataclass(frozen=True)
class ShiftTerm:
    """Pure walker displacement X_a: |n⟩ ↦ |n+a⟩."""

    a: int


def x_compose(first: ShiftTerm, second: ShiftTerm) -> ShiftTerm:
    """Displacements compose additively and commute; X_0 is the identity."""
    return ShiftTerm(first.a + second.a)


@dataclass(frozen=True)
class ExpansionTerm:
    """One merged term A ⊗ X_D: coin-space matrix A at net displacement D."""

    matrix: np.ndarray  # (2, 2) complex
    displacement: int


@dataclass(frozen=True)
class OperatorExpansion:
    """Displacement-resolved form of an operator: Σ_D A_D ⊗ X_D.

    Terms are merged by displacement, sorted ascending, with exactly-zero
    matrices dropped.
    """

    terms: tuple[ExpansionTerm, ...]

    def matrix_at(self, displacement: int) -> np.ndarray:
        for term in self.terms:
            if term.displacement == displacement:
                return term.matrix
        return np.zeros((2, 2), dtype=np.complex128)

    @property
    def displacements(self) -> tuple[int, ...]:
        return tuple(t.displacement for t in self.terms)


def _merge(raw: dict[int, np.ndarray]) -> OperatorExpansion:
    terms = tuple(
        ExpansionTerm(matrix=raw[d], displacement=d)
        for d in sorted(raw)
        if np.any(raw[d] != 0)
    )
    return OperatorExpansion(terms=terms)


def identity_expansion() -> OperatorExpansion:
    return OperatorExpansion(
        terms=(ExpansionTerm(np.eye(2, dtype=np.complex128), 0),)
    )


def expand_propagator(
    process: ProcessSpec, phi_first: Chirality = Chirality.FORWARD
) -> OperatorExpansion:
    """Expand a σ-step propagator over all 2^σ chirality words.

    Word k assigns a chirality to each step; bit i of k selects the step-i
    projector, with bit value 0 meaning ``phi_first`` (so word 0 is the
    all-``phi_first`` term).  Each word's matrix is the right-to-left product
    of (|w_i⟩⟨w_i|·C_i) and its displacement is (#forward − #backward).  The
    merged result does not depend on ``phi_first``.
    """
    sigma = process.sigma
    if sigma > MAX_EXPANSION_SIGMA:
        raise ExpansionSizeError(
            f"σ = {sigma} would enumerate 2^{sigma} terms (guard: σ ≤ {MAX_EXPANSION_SIGMA})"
        )
    base = int(phi_first)
    # projected coins: proj[i][b] = |w⟩⟨w|·C_i for word-bit b at step i
    proj: list[tuple[np.ndarray, np.ndarray]] = []
    for params in process.coins:
        coin = su2_coin(params)
        rows = []
        for b in (0, 1):
            w = base ^ b
            p = np.zeros((2, 2), dtype=np.complex128)
            p[w, :] = coin[w, :]
            rows.append(p)
        proj.append((rows[0], rows[1]))

    raw: dict[int, np.ndarray] = {}
    for k in range(2**sigma):
        matrix = np.eye(2, dtype=np.complex128)
        disp = 0
        for i in range(sigma):
            b = (k >> i) & 1
            matrix = proj[i][b] @ matrix
            disp += 1 if (base ^ b) == int(Chirality.FORWARD) else -1
        if disp in raw:
            raw[disp] = raw[disp] + matrix
        else:
            raw[disp] = matrix
    return _merge(raw)


def _span(expansion: OperatorExpansion) -> int:
    if not expansion.terms:
        return 0
    return max(abs(t.displacement) for t in expansion.terms)


def compose_expansions(
    later: OperatorExpansion, earlier: OperatorExpansion
) -> OperatorExpansion:
    """Product of two expansions: matrices multiply, displacements add."""
    if _span(later) + _span(earlier) > 2 * MAX_EXPANSION_SIGMA:
        raise ExpansionSizeError("composed expansion exceeds the displacement guard")
    raw: dict[int, np.ndarray] = {}
    for tl in later.terms:
        for tk in earlier.terms:
            d = tl.displacement + tk.displacement
            product = tl.matrix @ tk.matrix
            if d in raw:
                raw[d] = raw[d] + product
            else:
                raw[d] = product
    return _merge(raw)


def add_expansions(
    a: OperatorExpansion, b: OperatorExpansion, coeff_b: complex = 1.0
) -> OperatorExpansion:
    """Termwise sum a + coeff_b·b, merged by displacement."""
    raw: dict[int, np.ndarray] = {t.displacement: t.matrix.copy() for t in a.terms}
    for term in b.terms:
        d = term.displacement
        if d in raw:
            raw[d] = raw[d] + coeff_b * term.matrix
        else:
            raw[d] = coeff_b * term.matrix
    return _merge(raw)


def scale_expansion(e: OperatorExpansion, factor: complex) -> OperatorExpansion:
    return OperatorExpansion(
        terms=tuple(
            ExpansionTerm(matrix=factor * t.matrix, displacement=t.displacement)
            for t in e.terms
        )
    )


def commutator_expansion(
    e0: OperatorExpansion, e1: OperatorExpansion
) -> OperatorExpansion:
    """Expansion of (later∘earlier − earlier∘later) for e1 after e0."""
    return add_expansions(
        compose_expansions(e1, e0), compose_expansions(e0, e1), coeff_b=-1.0
    )


def apply_expansion(
    expansion: OperatorExpansion,
    phi_in: Chirality,
    n0: int,
    lattice: PositionLattice,
) -> np.ndarray:
    """Amplitudes (2, n_sites) of the expansion acting on |phi_in, n0⟩."""
    out = np.zeros((2, lattice.n_sites), dtype=np.complex128)
    for term in expansion.terms:
        out[:, lattice.index(n0 + term.displacement)] += term.matrix[:, int(phi_in)]
    return out


def oracle_distribution(
    expansion: OperatorExpansion,
    phi_in: Chirality,
    phi_out: Chirality,
    n0: int,
    scale: complex = 1.0,
) -> Distribution:
    """Position distribution of one (coin-in, coin-out) contraction.

    Probability at n0 + D is |scale · ⟨phi_out|A_D|phi_in⟩|² per merged term.
    """
    sites = []
    values = []
    for term in expansion.terms:
        amp = scale * term.matrix[int(phi_out), int(phi_in)]
        sites.append(n0 + term.displacement)
        values.append(abs(amp) ** 2)
    order = np.argsort(sites) if sites else np.array([], dtype=int)
    sites_arr = np.asarray(sites, dtype=np.int64)[order]
    values_arr = np.asarray(values, dtype=np.float64)[order]
    return make_distribution(
        sites_arr, values_arr, origin=n0, normalized=False,
        total_mass=float(values_arr.sum()) if values_arr.size else 0.0,
    )


def contraction_amplitudes(
    expansion: OperatorExpansion, phi_out: Chirality, phi_in: Chirality
) -> dict[int, complex]:
    """⟨phi_out|A_D|phi_in⟩ for every merged displacement."""
    return {
        t.displacement: complex(t.matrix[int(phi_out), int(phi_in)])
        for t in expansion.terms
    }


def commutator_contraction_asymmetry(
    e0: OperatorExpansion, e1: OperatorExpansion, phi: Chirality = Chirality.FORWARD
) -> float:
    """Max | |amp(D)| − |amp(−D)| | over the ⟨phi|·|phi⟩ commutator contraction.

    Zero (to roundoff) for every pair of three-angle coin processes: the
    mirrored displacement's amplitude is the (sign-flipped) complex conjugate.
    """
    comm = commutator_expansion(e0, e1)
    amps = contraction_amplitudes(comm, phi, phi)
    displacements = set(amps) | {-d for d in amps}
    worst = 0.0
    for d in displacements:
        lhs = abs(amps.get(d, 0.0))
        rhs = abs(amps.get(-d, 0.0))
        worst = max(worst, abs(lhs - rhs))
    return worst


def _switch_branch_expansion(
    e0: OperatorExpansion, e1: OperatorExpansion, m: int
) -> OperatorExpansion:
    """Amplitude operator of Fourier outcome m for a balanced 2-switch input.

    ⟨F_m| applied to (|0⟩(e1∘e0) + |1⟩(e0∘e1))/√2 gives
    ½·(e1∘e0 + (−1)^m · e0∘e1).
    """
    sign = 1.0 if m == 0 else -1.0
    return scale_expansion(
        add_expansions(compose_expansions(e1, e0), compose_expansions(e0, e1), sign),
        0.5,
    )


def _compare_pair_to_engine(p0: ProcessSpec, p1: ProcessSpec) -> float:
    """Max probability deviation, oracle vs engine, over every branch."""
    # imported here so the oracle's own calculus stays engine-free
    from .measure import distribution, project_coin, project_order
    from .state import make_initial_state
    from .switch import apply_2switch

    root2 = float(np.sqrt(2.0))
    total = p0.sigma + p1.sigma
    e0 = expand_propagator(p0)
    e1 = expand_propagator(p1)
    worst = 0.0
    for phi_in in (Chirality.FORWARD, Chirality.BACKWARD):
        initial = make_initial_state(2, [1 / root2, 1 / root2], 0, phi_in, total)
        evolved = apply_2switch(initial, p0, p1)
        for m in (0, 1):
            cond = project_order(evolved, m)
            branch = _switch_branch_expansion(e0, e1, m)
            for phi_out in (Chirality.FORWARD, Chirality.BACKWARD):
                engine_dist = distribution(project_coin(cond, phi_out))
                oracle_dist = oracle_distribution(branch, phi_in, phi_out, 0)
                sites = set(engine_dist.positions) | set(oracle_dist.positions)
                for site in sites:
                    dev = abs(
                        engine_dist.probability_at(site)
                        - oracle_dist.probability_at(site)
                    )
                    worst = max(worst, dev)
    return worst


def verify_expansion_against_engine(
    processes: Sequence[ProcessSpec] | None = None,
    trials: int = 0,
    seed: int = 0,
    sigma_max: int = 4,
) -> CheckReport:
    """Cross-validate engine and oracle distributions on 2-switch branches.

    When ``processes`` (a pair) is given it is compared first; ``trials``
    further comparisons use freshly drawn coin angles with σ0, σ1 uniform in
    [1, sigma_max].  Every (order outcome, coin outcome) pair must agree
    within the probability tolerance.  Total step counts above 12 are
    rejected up front.
    """
    pairs: list[tuple[ProcessSpec, ProcessSpec]] = []
    if processes is not None:
        if len(processes) != 2:
            raise ValueError("explicit comparison needs exactly two processes")
        if processes[0].sigma + processes[1].sigma > 12:
            raise ExpansionSizeError("σ0 + σ1 must be ≤ 12 for oracle verification")
        pairs.append((processes[0], processes[1]))
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        sigma0 = int(rng.integers(1, sigma_max + 1))
        sigma1 = int(rng.integers(1, sigma_max + 1))
        pairs.append(
            (
                ProcessSpec("p0", tuple(random_coin(rng) for _ in range(sigma0))),
                ProcessSpec("p1", tuple(random_coin(rng) for _ in range(sigma1))),
            )
        )

    details = []
    worst = 0.0
    for p0, p1 in pairs:
        dev = _compare_pair_to_engine(p0, p1)
        details.append(
            {"sigma0": p0.sigma, "sigma1": p1.sigma, "max_deviation": dev}
        )
        worst = max(worst, dev)
    return make_report(
        check_name="oracle-equivalence",
        seed=seed,
        trials=len(pairs),
        max_deviation=worst,
        tolerance=PROBABILITY_ATOL,
        details=tuple(details),
    )
