"""Single-particle Szilard cycle powered by a correlated memory bit.

The memory bit predicts which half of the box holds the particle; the
prediction is wrong with probability eps = (1 - |E|)/2.  The agent reads
the bit, inserts the partition at the middle, and moves it quasi-statically
until a fraction x of the box lies on the predicted side.  Isothermal
expansion (or compression, when the bit was wrong) gives the branch works

    correct:  ln(2x)          wrong:  ln(2(1 - x))

in k_B*T units, so the expected work per cycle is

    W(eps, x) = (1 - eps) ln(2x) + eps ln(2(1 - x)).

W is concave in x with its maximum at x = 1 - eps, where it equals
ln 2 - h2(eps): exactly the mutual information of the bit, so the optimal
protocol converts the whole correlation into work and no choice of x can
do better.  eps = 0 pushes the optimum to the boundary x = 1 (plain
expansion from half the box to all of it, worth ln 2).

simulate() runs the cycle as a Monte Carlo over bit correctness with the
repo's counter-based stream, so results are reproducible from the seed
alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .information import LN2
from .rng import RandomStream

_CHUNK = 1 << 20


@dataclass(frozen=True)
class EngineConfig:
    """Parameters of one Monte Carlo run."""

    error_prob: float
    partition_fraction: float
    trials: int
    seed: int

    def __post_init__(self) -> None:
        if not (0.0 <= self.error_prob <= 0.5):
            raise ValueError(f"error_prob {self.error_prob!r} outside [0, 1/2]")
        if not (0.0 < self.partition_fraction < 1.0):
            raise ValueError(
                f"partition_fraction {self.partition_fraction!r} outside (0, 1)"
            )
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")


@dataclass(frozen=True)
class CycleResult:
    """Monte Carlo estimate of the mean work per cycle."""

    mean_work_kT: float
    std_error: float
    n: int


def expected_work(epsilon: float, x: float) -> float:
    """Closed-form mean work (1-eps) ln(2x) + eps ln(2(1-x)), in k_B*T.

    x outside (0, 1) is rejected: a branch would be compressed to zero
    volume, which costs unbounded work.
    """
    if not (0.0 <= epsilon <= 0.5):
        raise ValueError(f"epsilon {epsilon!r} outside [0, 1/2]")
    if not (0.0 < x < 1.0):
        raise ValueError(f"partition fraction {x!r} outside (0, 1)")
    return (1.0 - epsilon) * math.log(2.0 * x) + epsilon * math.log(2.0 * (1.0 - x))


@dataclass(frozen=True)
class PartitionOptimum:
    """Best final partition position and the work it yields."""

    x_opt: float
    w_opt_kT: float
    boundary: bool = False


def optimal_partition(epsilon: float) -> PartitionOptimum:
    """Work-maximizing partition fraction x = 1 - eps and its yield.

    The yield equals ln 2 - h2(eps), the mutual information of the memory
    bit, so the optimal cycle saturates the correlation-work bound.  The
    stationarity of the returned point is re-checked numerically via the
    sign change of dW/dx.  eps = 0 has no interior optimum; the supremum
    sits at the boundary x = 1 with yield ln 2 and is flagged as such.
    """
    if not (0.0 <= epsilon <= 0.5):
        raise ValueError(f"epsilon {epsilon!r} outside [0, 1/2]")
    if epsilon == 0.0:
        return PartitionOptimum(x_opt=1.0, w_opt_kT=LN2, boundary=True)

    x_opt = 1.0 - epsilon

    def slope(x: float) -> float:
        return (1.0 - epsilon) / x - epsilon / (1.0 - x)

    h = min(1e-6, epsilon / 2.0, (1.0 - epsilon) / 2.0)
    if not (slope(x_opt - h) > 0.0 > slope(x_opt + h)):
        raise ArithmeticError(
            f"no derivative sign change around x = {x_opt} for eps = {epsilon}"
        )
    return PartitionOptimum(x_opt=x_opt, w_opt_kT=expected_work(epsilon, x_opt))


def simulate(config: EngineConfig) -> CycleResult:
    """Monte Carlo over memory-bit correctness.

    Each trial draws one uniform; the bit is correct when it falls below
    1 - eps, and the trial contributes the matching branch work.  The
    stream is consumed in blocks, one uniform per trial, so a given seed
    yields one fixed sequence of outcomes regardless of chunking.
    """
    eps = config.error_prob
    x = config.partition_fraction
    n = config.trials
    w_correct = math.log(2.0 * x)
    w_wrong = math.log(2.0 * (1.0 - x))

    stream = RandomStream(config.seed)
    correct = 0
    remaining = n
    while remaining > 0:
        block = min(remaining, _CHUNK)
        u = stream.uniform_block(block)
        correct += int(np.count_nonzero(u < 1.0 - eps))
        remaining -= block

    wrong = n - correct
    if wrong == 0 or correct == 0:
        # every trial is the same branch: the mean is exact, variance zero
        mean = w_correct if wrong == 0 else w_wrong
        return CycleResult(mean_work_kT=mean, std_error=0.0, n=n)
    mean = (correct * w_correct + wrong * w_wrong) / n
    ss = correct * (w_correct - mean) ** 2 + wrong * (w_wrong - mean) ** 2
    std_error = math.sqrt(ss / (n - 1)) / math.sqrt(n)
    return CycleResult(mean_work_kT=mean, std_error=std_error, n=n)
