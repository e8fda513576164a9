"""Executable numerical checks for every named property of the switch walks,
plus the canonical uniform-distribution construction they certify.

Each check runs a batch of seeded random trials (or a fixed construction),
measures the worst deviation from the claimed identity, and returns a
:class:`~icowalk.report.CheckReport`.  Checks are deterministic given
(seed, trials).  Trials whose hypothesis degenerates (zero-weight branches on
both sides of a comparison) are counted as vacuous rather than passed.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .coins import CoinParams, HADAMARD_PARAMS, ProcessSpec, random_coin
from .engine import evolve_composition
from .measure import (
    Distribution,
    distribution,
    make_distribution,
    project_coin,
    project_order,
)
from .report import CheckReport, make_report
from .state import Chirality, ConditionalState, SystemState, make_initial_state, walker_density
from .tolerances import AMPLITUDE_ATOL, PROBABILITY_ATOL, ZERO_BRANCH_WEIGHT
from .switch import apply_nswitch

__all__ = [
    "check_theorem1",
    "check_lemma1",
    "check_corollary1",
    "check_lemma2",
    "check_corollary2",
    "check_lemma3",
    "check_theorem2",
    "check_theorem3",
    "uniform_walk_processes",
    "ico_uniform_distribution",
]

# deviations held to a tighter bar than the report tolerance are scaled into
# it by the tolerance ratio, so "passed ⇔ max_deviation ≤ tolerance" stays true
_TIGHT_RATIO = PROBABILITY_ATOL / AMPLITUDE_ATOL


def _random_process(rng: np.random.Generator, sigma: int, label: str) -> ProcessSpec:
    return ProcessSpec(label, tuple(random_coin(rng) for _ in range(sigma)))


def _random_diagonal_process(
    rng: np.random.Generator, sigma: int, label: str
) -> ProcessSpec:
    coins = tuple(
        CoinParams(float(rng.uniform(0, 2 * math.pi)), float(rng.uniform(0, 2 * math.pi)), 0.0)
        for _ in range(sigma)
    )
    return ProcessSpec(label, coins)


def _balanced_switch_state(
    processes: Sequence[ProcessSpec], n0: int, phi0: Chirality
) -> SystemState:
    n = len(processes)
    total = sum(p.sigma for p in processes)
    control = np.full(n, 1.0 / math.sqrt(n))
    initial = make_initial_state(n, control, n0, phi0, total)
    return apply_nswitch(initial, processes)


def _definite_state(
    processes: Sequence[ProcessSpec], ordering: int, n0: int, phi0: Chirality
) -> ConditionalState:
    """ϱ_ordering as a coin⊗walker state (trivial order register projected out)."""
    total = sum(p.sigma for p in processes)
    initial = make_initial_state(1, [1.0], n0, phi0, total)
    evolved = evolve_composition(initial, processes, ordering)
    return project_order(evolved, 0)


def _populations(state: ConditionalState, phi: Chirality) -> np.ndarray:
    """Non-normalized per-site populations of one coin slice, full lattice."""
    return np.abs(state.amps[int(phi)]) ** 2


def _density_moduli(state: ConditionalState, phi: Chirality) -> np.ndarray:
    dens = walker_density(project_coin(state, phi), state.lattice)
    return np.abs(dens.matrix)


def check_theorem1(
    seed: int = 1, trials: int = 100, sigma_max: int = 5
) -> CheckReport:
    """Reflection symmetry about the start site of the (φ0, F1) distribution."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    details = []
    for _ in range(trials):
        sigma0 = int(rng.integers(1, sigma_max + 1))
        sigma1 = int(rng.integers(1, sigma_max + 1))
        p0 = _random_process(rng, sigma0, "p0")
        p1 = _random_process(rng, sigma1, "p1")
        n0 = int(rng.integers(-3, 4))
        trial_dev = 0.0
        for phi0 in (Chirality.FORWARD, Chirality.BACKWARD):
            evolved = _balanced_switch_state((p0, p1), n0, phi0)
            branch = project_coin(project_order(evolved, 1), phi0)
            dist = distribution(branch)
            reach = sigma0 + sigma1
            for offset in range(1, reach + 1):
                dev = abs(
                    dist.probability_at(n0 - offset) - dist.probability_at(n0 + offset)
                )
                trial_dev = max(trial_dev, dev)
        worst = max(worst, trial_dev)
        details.append(
            {"sigma0": sigma0, "sigma1": sigma1, "n0": n0, "deviation": trial_dev}
        )
    return make_report("theorem1", seed, trials, worst, PROBABILITY_ATOL, details=tuple(details))


def check_lemma1(seed: int = 1, trials: int = 50, sigma_max: int = 4) -> CheckReport:
    """Operator identity: F0 branch + F1 branch = half the two definite orders."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    details = []
    for _ in range(trials):
        sigma0 = int(rng.integers(1, sigma_max + 1))
        sigma1 = int(rng.integers(1, sigma_max + 1))
        p0 = _random_process(rng, sigma0, "p0")
        p1 = _random_process(rng, sigma1, "p1")
        n0 = int(rng.integers(-2, 3))
        phi0 = Chirality(int(rng.integers(0, 2)))
        evolved = _balanced_switch_state((p0, p1), n0, phi0)
        rho = [project_order(evolved, m) for m in (0, 1)]
        var = [_definite_state((p0, p1), n, n0, phi0) for n in (0, 1)]
        window = evolved.lattice
        trial_dev = 0.0
        for phi in (Chirality.FORWARD, Chirality.BACKWARD):
            lhs = sum(
                walker_density(project_coin(r, phi), window).matrix for r in rho
            )
            rhs = 0.5 * sum(
                walker_density(project_coin(v, phi), window).matrix for v in var
            )
            trial_dev = max(trial_dev, float(np.max(np.abs(lhs - rhs))))
        worst = max(worst, trial_dev)
        details.append(
            {"sigma0": sigma0, "sigma1": sigma1, "n0": n0, "deviation": trial_dev}
        )
    return make_report("lemma1", seed, trials, worst, AMPLITUDE_ATOL, details=tuple(details))


def _corollary1_hypothesis(
    rng: np.random.Generator, sigma_max: int = 4
) -> tuple[ProcessSpec, ProcessSpec, int, Chirality]:
    """Random instance of: p0 arbitrary, p1 diagonal, σ1 ≥ σ0."""
    sigma0 = int(rng.integers(1, sigma_max + 1))
    sigma1 = int(rng.integers(sigma0, sigma_max + 3))
    p0 = _random_process(rng, sigma0, "p0")
    p1 = _random_diagonal_process(rng, sigma1, "p1")
    n0 = int(rng.integers(-2, 3))
    phi0 = Chirality(int(rng.integers(0, 2)))
    return p0, p1, n0, phi0


def check_corollary1(seed: int = 1, trials: int = 50, sigma_max: int = 4) -> CheckReport:
    """The (φ0, F1) branch is empty when p1 is diagonal and σ1 ≥ σ0."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    details = []
    for _ in range(trials):
        p0, p1, n0, phi0 = _corollary1_hypothesis(rng, sigma_max)
        evolved = _balanced_switch_state((p0, p1), n0, phi0)
        weight = project_coin(project_order(evolved, 1), phi0).weight
        worst = max(worst, weight)
        details.append({"sigma0": p0.sigma, "sigma1": p1.sigma, "weight": weight})
    return make_report(
        "corollary1", seed, trials, worst, ZERO_BRANCH_WEIGHT, details=tuple(details)
    )


def check_lemma2(seed: int = 1, trials: int = 50, sigma_max: int = 4) -> CheckReport:
    """Both Fourier branches of the flipped coin agree in populations and
    density moduli under the Corollary-1 hypothesis."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    vacuous = 0
    details = []
    for _ in range(trials):
        p0, p1, n0, phi0 = _corollary1_hypothesis(rng, sigma_max)
        evolved = _balanced_switch_state((p0, p1), n0, phi0)
        branches = [project_order(evolved, m) for m in (0, 1)]
        flipped = phi0.opposite
        weights = [project_coin(b, flipped).weight for b in branches]
        if max(weights) < ZERO_BRANCH_WEIGHT:
            vacuous += 1
            details.append({"sigma0": p0.sigma, "sigma1": p1.sigma, "vacuous": True})
            continue
        pops = [_populations(b, flipped) for b in branches]
        moduli = [_density_moduli(b, flipped) for b in branches]
        trial_dev = max(
            float(np.max(np.abs(pops[0] - pops[1]))),
            float(np.max(np.abs(moduli[0] - moduli[1]))),
        )
        worst = max(worst, trial_dev)
        details.append(
            {"sigma0": p0.sigma, "sigma1": p1.sigma, "deviation": trial_dev}
        )
    return make_report(
        "lemma2", seed, trials, worst, PROBABILITY_ATOL,
        vacuous_trials=vacuous, details=tuple(details),
    )


def check_corollary2(seed: int = 1, trials: int = 50, sigma_max: int = 4) -> CheckReport:
    """Flipped-coin branch populations equal a quarter of the summed definite
    orders, in the non-normalized convention."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    vacuous = 0
    details = []
    for _ in range(trials):
        p0, p1, n0, phi0 = _corollary1_hypothesis(rng, sigma_max)
        evolved = _balanced_switch_state((p0, p1), n0, phi0)
        flipped = phi0.opposite
        target = 0.25 * sum(
            _populations(_definite_state((p0, p1), n, n0, phi0), flipped)
            for n in (0, 1)
        )
        if float(np.max(target)) < ZERO_BRANCH_WEIGHT:
            vacuous += 1
            details.append({"sigma0": p0.sigma, "sigma1": p1.sigma, "vacuous": True})
            continue
        trial_dev = 0.0
        for m in (0, 1):
            pops = _populations(project_order(evolved, m), flipped)
            trial_dev = max(trial_dev, float(np.max(np.abs(pops - target))))
        worst = max(worst, trial_dev)
        details.append(
            {"sigma0": p0.sigma, "sigma1": p1.sigma, "deviation": trial_dev}
        )
    return make_report(
        "corollary2", seed, trials, worst, AMPLITUDE_ATOL,
        vacuous_trials=vacuous, details=tuple(details),
    )


def check_lemma3(seed: int = 1, trials: int = 50, sigma_max: int = 4) -> CheckReport:
    """ϱ1's flipped-coin populations are ϱ0's translated by 2σ1.

    The translation points forward for a FORWARD initial coin and backward
    for the mirrored (BACKWARD) start, since the diagonal process drags the
    untouched chirality the other way.
    """
    rng = np.random.default_rng(seed)
    worst = 0.0
    vacuous = 0
    details = []
    for _ in range(trials):
        p0, p1, n0, phi0 = _corollary1_hypothesis(rng, sigma_max)
        flipped = phi0.opposite
        pops = [
            _populations(_definite_state((p0, p1), n, n0, phi0), flipped)
            for n in (0, 1)
        ]
        if max(float(p.max()) for p in pops) < ZERO_BRANCH_WEIGHT:
            vacuous += 1
            details.append({"sigma0": p0.sigma, "sigma1": p1.sigma, "vacuous": True})
            continue
        shift = 2 * p1.sigma if phi0 is Chirality.FORWARD else -2 * p1.sigma
        if shift >= 0:
            shifted0 = np.concatenate([np.zeros(shift), pops[0]])[: pops[0].size]
        else:
            shifted0 = np.concatenate([pops[0][-shift:], np.zeros(-shift)])
        trial_dev = float(np.max(np.abs(pops[1] - shifted0)))
        worst = max(worst, trial_dev)
        details.append(
            {"sigma0": p0.sigma, "sigma1": p1.sigma, "deviation": trial_dev}
        )
    return make_report(
        "lemma3", seed, trials, worst, AMPLITUDE_ATOL,
        vacuous_trials=vacuous, details=tuple(details),
    )


def check_theorem2(
    seed: int = 1, trials: int = 50, n_max: int = 5, sigma_max: int = 3
) -> CheckReport:
    """Cyclic N-switch generalization: every Fourier branch of the flipped
    coin is equivalent, and equals (1/N²)·Σ over definite cyclic orders.

    The branch-equivalence deviation is held to the probability tolerance;
    the decomposition deviation, 100× tighter, is scaled into the shared
    report tolerance.
    """
    rng = np.random.default_rng(seed)
    worst = 0.0
    vacuous = 0
    details = []
    for _ in range(trials):
        n_proc = int(rng.integers(2, n_max + 1))
        sigma0 = int(rng.integers(1, sigma_max + 1))
        # the diagonal step counts only need to dominate sigma0; their mutual
        # order is free
        diag_sigmas = [
            int(rng.integers(sigma0, sigma0 + 3)) for _ in range(n_proc - 1)
        ]
        processes = [_random_process(rng, sigma0, "p0")] + [
            _random_diagonal_process(rng, s, f"p{i + 1}")
            for i, s in enumerate(diag_sigmas)
        ]
        n0 = int(rng.integers(-2, 3))
        phi0 = Chirality(int(rng.integers(0, 2)))
        flipped = phi0.opposite
        evolved = _balanced_switch_state(processes, n0, phi0)
        branches = [project_order(evolved, m) for m in range(n_proc)]
        weights = [project_coin(b, flipped).weight for b in branches]
        if max(weights) < ZERO_BRANCH_WEIGHT:
            vacuous += 1
            details.append({"n": n_proc, "vacuous": True})
            continue
        pops = [_populations(b, flipped) for b in branches]
        moduli = [_density_moduli(b, flipped) for b in branches]
        pair_dev = 0.0
        for i in range(n_proc):
            for j in range(i + 1, n_proc):
                pair_dev = max(pair_dev, float(np.max(np.abs(pops[i] - pops[j]))))
                pair_dev = max(pair_dev, float(np.max(np.abs(moduli[i] - moduli[j]))))
        target = sum(
            _populations(_definite_state(processes, n, n0, phi0), flipped)
            for n in range(n_proc)
        ) / n_proc**2
        decomp_dev = max(float(np.max(np.abs(p - target))) for p in pops)
        worst = max(worst, pair_dev, decomp_dev * _TIGHT_RATIO)
        details.append(
            {
                "n": n_proc,
                "sigma0": sigma0,
                "diag_sigmas": diag_sigmas,
                "pairwise_deviation": pair_dev,
                "decomposition_deviation": decomp_dev,
            }
        )
    return make_report(
        "theorem2", seed, trials, worst, PROBABILITY_ATOL,
        vacuous_trials=vacuous, details=tuple(details),
    )


def uniform_walk_processes(n_processes: int, sigma: int) -> list[ProcessSpec]:
    """Canonical switch input: σ balanced coins, then N-1 trivial diagonal runs."""
    if n_processes < 2:
        raise ValueError(f"need at least 2 processes, got {n_processes}")
    if sigma not in (2, 4):
        raise ValueError(f"uniform construction requires σ ∈ {{2, 4}}, got {sigma}")
    trivial = CoinParams(0.0, 0.0, 0.0)
    return [ProcessSpec("p0", (HADAMARD_PARAMS,) * sigma)] + [
        ProcessSpec(f"p{i}", (trivial,) * sigma) for i in range(1, n_processes)
    ]


def ico_uniform_distribution(
    n_processes: int,
    sigma: int,
    n0: int = 0,
    phi0: Chirality = Chirality.FORWARD,
) -> tuple[Distribution, float]:
    """Success-conditioned uniform distribution of the canonical N-switch walk.

    Aggregates the flipped-coin populations over every Fourier outcome and
    normalizes by their total weight (the success probability, returned
    alongside).
    """
    processes = uniform_walk_processes(n_processes, sigma)
    evolved = _balanced_switch_state(processes, n0, phi0)
    flipped = phi0.opposite
    total = np.zeros(evolved.lattice.n_sites)
    for m in range(n_processes):
        total += _populations(project_order(evolved, m), flipped)
    success = float(total.sum())
    dist = make_distribution(
        evolved.lattice.sites(), total / success, origin=n0,
        normalized=True, total_mass=success,
    )
    return dist, success


def check_theorem3(n_processes: int, sigma: int, n0: int = 0) -> CheckReport:
    """Uniformity, success probability, and ballistic edge of the canonical walk.

    Asserts, for every Fourier outcome m: the normalized flipped-coin
    distribution equals 1/(Nσ) on the even offsets [-Nσ, Nσ-2] and nowhere
    else.  The summed branch weight must equal 1/σ (held 100× tighter and
    scaled into the report tolerance) and the support must reach n0 - Nσ
    exactly; a support mismatch reports an infinite deviation.
    """
    processes = uniform_walk_processes(n_processes, sigma)
    evolved = _balanced_switch_state(processes, n0, Chirality.FORWARD)
    reach = n_processes * sigma
    expected_sites = [n0 + off for off in range(-reach, reach - 1, 2)]
    uniform_value = 1.0 / reach

    shape_dev = 0.0
    success = 0.0
    support_ok = True
    for m in range(n_processes):
        branch = project_coin(project_order(evolved, m), Chirality.BACKWARD)
        success += branch.weight
        dist = distribution(branch, normalize=True)
        if list(dist.positions) != expected_sites:
            support_ok = False
            continue
        shape_dev = max(
            shape_dev, float(np.max(np.abs(dist.probabilities - uniform_value)))
        )
    success_dev = abs(success - 1.0 / sigma)
    worst = max(shape_dev, success_dev * _TIGHT_RATIO)
    if not support_ok:
        worst = math.inf
    return make_report(
        f"theorem3-n{n_processes}-sigma{sigma}",
        seed=0,
        trials=1,
        max_deviation=worst,
        tolerance=PROBABILITY_ATOL,
        details=(
            {
                "n": n_processes,
                "sigma": sigma,
                "uniformity_deviation": shape_dev,
                "success_probability": success,
                "success_deviation": success_dev,
                "support_exact": support_ok,
            },
        ),
    )
