"""Machine-readable result record shared by every verification check."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one numerical check over a batch of trials.

    ``passed`` is defined as ``max_deviation <= tolerance``.  Trials whose
    hypothesis turned out degenerate (e.g. a zero-weight branch) count in
    ``vacuous_trials`` instead of silently passing.
    """

    check_name: str
    seed: int
    trials: int
    passed: bool
    max_deviation: float
    tolerance: float
    vacuous_trials: int = 0
    details: tuple = field(default_factory=tuple)


def make_report(
    check_name: str,
    seed: int,
    trials: int,
    max_deviation: float,
    tolerance: float,
    vacuous_trials: int = 0,
    details: tuple = (),
) -> CheckReport:
    return CheckReport(
        check_name=check_name,
        seed=seed,
        trials=trials,
        passed=bool(max_deviation <= tolerance),
        max_deviation=float(max_deviation),
        tolerance=float(tolerance),
        vacuous_trials=vacuous_trials,
        details=details,
    )
