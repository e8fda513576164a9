"""Coin operators and process specifications.

A coin is a unitary 2×2 matrix acting on the chirality space in the
(FORWARD, BACKWARD) basis, with rows indexing the outgoing chirality and
columns the incoming one.  The three-angle family

    C(α, β, θ) = [[ e^{iα}·cosθ,   e^{iβ}·sinθ ],
                  [ e^{-iβ}·sinθ, -e^{-iα}·cosθ ]]

covers every coin used here; θ = 0 gives the strictly diagonal coins that
never flip chirality.  A process is an ordered list of coin parameters: one
walk step per coin, applied first to last.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Sequence

import numpy as np

from .errors import ProcessSpecError

__all__ = [
    "CoinParams",
    "ProcessSpec",
    "su2_coin",
    "diagonal_coin",
    "hadamard_coin",
    "random_coin",
    "load_process_specs",
    "HADAMARD_PARAMS",
]


@dataclass(frozen=True)
class CoinParams:
    """Angles (radians) selecting one member of the three-angle coin family."""

    alpha: float
    beta: float
    theta: float

    def __post_init__(self) -> None:
        for name in ("alpha", "beta", "theta"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ProcessSpecError(f"coin angle {name} must be finite, got {value!r}")

    @property
    def is_diagonal(self) -> bool:
        return self.theta == 0.0


# Balanced coin used throughout the uniform-distribution constructions.
HADAMARD_PARAMS = CoinParams(0.0, 0.0, math.pi / 4)


@dataclass(frozen=True)
class ProcessSpec:
    """Labelled, ordered coin sequence defining one multi-step propagator."""

    label: str
    coins: tuple[CoinParams, ...]

    def __post_init__(self) -> None:
        if len(self.coins) < 1:
            raise ProcessSpecError(f"process {self.label}: empty coin list")

    @property
    def sigma(self) -> int:
        """Number of walk steps this process performs."""
        return len(self.coins)

    def __iter__(self) -> Iterator[CoinParams]:
        return iter(self.coins)


def su2_coin(params: CoinParams) -> np.ndarray:
    """2×2 unitary for the given angles, (out-chirality row, in-chirality column)."""
    a = np.exp(1j * params.alpha)
    b = np.exp(1j * params.beta)
    c, s = np.cos(params.theta), np.sin(params.theta)
    return np.array(
        [[a * c, b * s], [np.conj(b) * s, -np.conj(a) * c]],
        dtype=np.complex128,
    )


def diagonal_coin(alpha: float, beta: float) -> np.ndarray:
    """Coin with θ forced to 0: chirality-preserving, phases only."""
    return su2_coin(CoinParams(alpha, beta, 0.0))


def hadamard_coin() -> np.ndarray:
    """The balanced coin C(0, 0, π/4) = (1/√2)[[1, 1], [1, -1]]."""
    return su2_coin(HADAMARD_PARAMS)


def random_coin(rng: np.random.Generator) -> CoinParams:
    """Draw coin angles: α, β uniform on [0, 2π), θ uniform on [0, π].

    Deterministic given the generator's state, so seeded property tests are
    reproducible.
    """
    return CoinParams(
        alpha=float(rng.uniform(0.0, 2.0 * math.pi)),
        beta=float(rng.uniform(0.0, 2.0 * math.pi)),
        theta=float(rng.uniform(0.0, math.pi)),
    )


def _require_number(value: object, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ProcessSpecError(f"{path}: expected a number, got {value!r}")
    if not math.isfinite(value):
        raise ProcessSpecError(f"{path}: angle must be finite, got {value!r}")
    return float(value)


def load_process_specs(document: str | Path | dict) -> list[ProcessSpec]:
    """Parse a process-spec document into an ordered list of processes.

    Accepts a JSON string, a path to a JSON file, or an already-decoded dict.
    Schema::

        {"processes": [{"label": "p0",
                        "coins": [{"alpha": 0.0, "beta": 0.0, "theta": 0.785}, ...]},
                       ...]}

    Angles are radians; coins apply first to last.  Malformed input raises
    :class:`ProcessSpecError` naming the offending path.
    """
    if isinstance(document, Path):
        document = document.read_text()
    if isinstance(document, str):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ProcessSpecError(f"invalid JSON: {exc}") from exc
    if not isinstance(document, dict):
        raise ProcessSpecError(f"top level: expected an object, got {type(document).__name__}")

    processes = document.get("processes")
    if not isinstance(processes, list) or not processes:
        raise ProcessSpecError('top level: missing or empty "processes" array')

    specs: list[ProcessSpec] = []
    for j, entry in enumerate(processes):
        where = f"processes[{j}]"
        if not isinstance(entry, dict):
            raise ProcessSpecError(f"{where}: expected an object")
        label = entry.get("label", f"p{j}")
        if not isinstance(label, str):
            raise ProcessSpecError(f"{where}.label: expected a string")
        coins_doc = entry.get("coins")
        if not isinstance(coins_doc, list):
            raise ProcessSpecError(f"{where}.coins: expected an array")
        if not coins_doc:
            raise ProcessSpecError(f"process {label}: empty coin list")
        coins = []
        for i, coin_doc in enumerate(coins_doc):
            cpath = f"{where}.coins[{i}]"
            if not isinstance(coin_doc, dict):
                raise ProcessSpecError(f"{cpath}: expected an object")
            angles = {}
            for key in ("alpha", "beta", "theta"):
                if key not in coin_doc:
                    raise ProcessSpecError(f"{cpath}.{key}: missing")
                angles[key] = _require_number(coin_doc[key], f"{cpath}.{key}")
            coins.append(CoinParams(**angles))
        specs.append(ProcessSpec(label=label, coins=tuple(coins)))
    return specs


def canonical_pair(sigma: int = 2) -> tuple[ProcessSpec, ProcessSpec]:
    """The reference pair: σ balanced coins vs σ trivial diagonal coins."""
    return (
        ProcessSpec("p0", (HADAMARD_PARAMS,) * sigma),
        ProcessSpec("p1", (CoinParams(0.0, 0.0, 0.0),) * sigma),
    )
