"""Bipartite correlation laws and the joint distribution they induce.

Three two-outcome correlation laws E(theta), each a function of the relative
angle theta between the two parties' measurement directions:

    classical     E(theta) = -1 + 2*theta/pi        (linear)
    quantum       E(theta) = -cos(theta)            (singlet cosine)
    superquantum  E(theta) = sgn(2*theta/pi - 1)    (step, sgn(0) = 0)

plus a tabulated law interpolated from user-supplied (theta, E) knots.
Any E in [-1, 1] induces a no-signaling joint distribution with uniform
marginals over outcomes x, y in {-1, +1}:

    P(x, y) = (1 + x*y*E) / 4

Angles are canonicalized to [0, pi] on construction by reflecting modulo
2*pi, so every law is total over the reals.
"""

from __future__ import annotations

import csv
import enum
import math
from dataclasses import dataclass

import numpy as np

from .rng import RandomStream

_TWO_PI = 2.0 * math.pi

#: tolerance for the probability-sum and marginal invariants
PROB_TOL = 1e-12


@dataclass(frozen=True)
class Angle:
    """A relative measurement angle, stored canonically in [0, pi]."""

    radians: float

    def __post_init__(self) -> None:
        r = self.radians
        if not isinstance(r, (int, float)) or not math.isfinite(r):
            raise ValueError(f"angle must be a finite number, got {r!r}")
        object.__setattr__(self, "radians", _reflect(float(r)))


def _reflect(raw: float) -> float:
    """Reduce to [0, pi]: theta -> min(theta mod 2pi, 2pi - theta mod 2pi)."""
    r = math.fmod(raw, _TWO_PI)
    if r < 0.0:
        r += _TWO_PI
    return min(r, _TWO_PI - r)


def canonicalize_angle(raw: float) -> Angle:
    """Canonical Angle for any finite radian value (idempotent)."""
    return Angle(raw)


def _radians(theta: Angle | float) -> float:
    if isinstance(theta, Angle):
        return theta.radians
    return Angle(theta).radians


def eval_classical(theta: Angle | float) -> float:
    """Linear law E(theta) = -1 + 2*theta/pi."""
    return -1.0 + 2.0 * _radians(theta) / math.pi


def eval_quantum(theta: Angle | float) -> float:
    """Singlet cosine law E(theta) = -cos(theta)."""
    return -math.cos(_radians(theta))


def eval_superquantum(theta: Angle | float) -> float:
    """Step law E(theta) = sgn(2*theta/pi - 1), with sgn(0) = 0."""
    arg = 2.0 * _radians(theta) / math.pi - 1.0
    if arg > 0.0:
        return 1.0
    if arg < 0.0:
        return -1.0
    return 0.0


class LawKind(enum.Enum):
    """The supported correlation-law families; values are the CLI names."""

    CLASSICAL_LINEAR = "classical"
    QUANTUM_COSINE = "quantum"
    SUPERQUANTUM_STEP = "superquantum"
    TABULATED = "tabulated"


@dataclass(frozen=True)
class CorrelationLaw:
    """A total map from relative angle to a correlation value in [-1, 1].

    ``table`` is only set for the tabulated kind: canonical-angle knots,
    strictly increasing, linearly interpolated and clamped outside the
    knot range.
    """

    kind: LawKind
    table: tuple[tuple[float, float], ...] | None = None

    def __post_init__(self) -> None:
        if self.kind is LawKind.TABULATED:
            if not self.table:
                raise ValueError("tabulated law requires a non-empty table")
            prev = -math.inf
            for theta, e in self.table:
                if not (0.0 <= theta <= math.pi):
                    raise ValueError(
                        f"table angle {theta!r} outside canonical range [0, pi]"
                    )
                if theta <= prev:
                    raise ValueError("table angles must be strictly increasing")
                if not (-1.0 <= e <= 1.0):
                    raise ValueError(f"table correlation {e!r} outside [-1, 1]")
                prev = theta
        elif self.table is not None:
            raise ValueError(f"{self.kind.value} law does not take a table")

    @classmethod
    def classical(cls) -> "CorrelationLaw":
        return cls(LawKind.CLASSICAL_LINEAR)

    @classmethod
    def quantum(cls) -> "CorrelationLaw":
        return cls(LawKind.QUANTUM_COSINE)

    @classmethod
    def superquantum(cls) -> "CorrelationLaw":
        return cls(LawKind.SUPERQUANTUM_STEP)

    @classmethod
    def tabulated(cls, knots) -> "CorrelationLaw":
        return cls(LawKind.TABULATED, tuple((float(t), float(e)) for t, e in knots))

    @classmethod
    def from_name(cls, name: str) -> "CorrelationLaw":
        """Law for a CLI name: classical, quantum, or superquantum."""
        for kind in (
            LawKind.CLASSICAL_LINEAR,
            LawKind.QUANTUM_COSINE,
            LawKind.SUPERQUANTUM_STEP,
        ):
            if name == kind.value:
                return cls(kind)
        valid = "classical, quantum, superquantum, table:<path>"
        raise ValueError(f"unknown law name {name!r}; valid names: {valid}")

    @property
    def name(self) -> str:
        return self.kind.value

    def evaluate(self, theta: Angle | float) -> float:
        if self.kind is LawKind.CLASSICAL_LINEAR:
            return eval_classical(theta)
        if self.kind is LawKind.QUANTUM_COSINE:
            return eval_quantum(theta)
        if self.kind is LawKind.SUPERQUANTUM_STEP:
            return eval_superquantum(theta)
        return self._interpolate(_radians(theta))

    def _interpolate(self, t: float) -> float:
        table = self.table
        assert table is not None
        if t <= table[0][0]:
            return table[0][1]
        if t >= table[-1][0]:
            return table[-1][1]
        lo, hi = 0, len(table) - 1
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if table[mid][0] <= t:
                lo = mid
            else:
                hi = mid
        t0, e0 = table[lo]
        t1, e1 = table[hi]
        return e0 + (e1 - e0) * (t - t0) / (t1 - t0)


def tabulated_from_csv(path) -> CorrelationLaw:
    """Load a tabulated law from a two-column CSV ``theta_radians,e``.

    The file must carry exactly that header, strictly increasing angles in
    [0, pi], and correlations in [-1, 1].  Parse errors name the offending
    line number.
    """
    knots: list[tuple[float, float]] = []
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None:
            raise ValueError(f"{path}: line 1: empty file, expected header theta_radians,e")
        if [h.strip() for h in header] != ["theta_radians", "e"]:
            raise ValueError(f"{path}: line 1: expected header 'theta_radians,e'")
        for lineno, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != 2:
                raise ValueError(f"{path}: line {lineno}: expected 2 fields, got {len(row)}")
            try:
                theta = float(row[0])
                e = float(row[1])
            except ValueError as exc:
                raise ValueError(f"{path}: line {lineno}: non-numeric field") from exc
            if not (0.0 <= theta <= math.pi):
                raise ValueError(f"{path}: line {lineno}: theta {theta} outside [0, pi]")
            if knots and theta <= knots[-1][0]:
                raise ValueError(f"{path}: line {lineno}: theta must be strictly increasing")
            if not (-1.0 <= e <= 1.0):
                raise ValueError(f"{path}: line {lineno}: e {e} outside [-1, 1]")
            knots.append((theta, e))
    if not knots:
        raise ValueError(f"{path}: no data rows")
    return CorrelationLaw.tabulated(knots)


@dataclass(frozen=True)
class JointDistribution:
    """No-signaling outcome distribution P(x, y) with uniform marginals.

    Cell order is (x, y) in {(+,+), (+,-), (-,+), (-,-)}.
    """

    p_pp: float
    p_pm: float
    p_mp: float
    p_mm: float

    def __post_init__(self) -> None:
        cells = (self.p_pp, self.p_pm, self.p_mp, self.p_mm)
        for name, p in zip(("p_pp", "p_pm", "p_mp", "p_mm"), cells):
            if not (0.0 <= p <= 1.0):
                raise ValueError(f"{name}={p!r} outside [0, 1]")
        if abs(sum(cells) - 1.0) > PROB_TOL:
            raise ValueError(f"cell probabilities sum to {sum(cells)!r}, expected 1")
        if abs(self.p_pp + self.p_pm - 0.5) > PROB_TOL:
            raise ValueError("first-party marginal is not uniform")
        if abs(self.p_pp + self.p_mp - 0.5) > PROB_TOL:
            raise ValueError("second-party marginal is not uniform")

    @classmethod
    def from_correlation(cls, e: float) -> "JointDistribution":
        """P(x, y) = (1 + x*y*e) / 4 for e in [-1, 1]."""
        if not (-1.0 <= e <= 1.0):
            raise ValueError(f"correlation {e!r} outside [-1, 1]")
        same = (1.0 + e) / 4.0
        diff = (1.0 - e) / 4.0
        return cls(same, diff, diff, same)

    def correlation(self) -> float:
        """Recover E = sum over cells of x*y*P(x, y)."""
        return (self.p_pp + self.p_mm) - (self.p_pm + self.p_mp)

    def cells(self) -> tuple[float, float, float, float]:
        return (self.p_pp, self.p_pm, self.p_mp, self.p_mm)


_OUTCOMES = ((1, 1), (1, -1), (-1, 1), (-1, -1))


def joint_distribution(e: float) -> JointDistribution:
    """Alias for JointDistribution.from_correlation."""
    return JointDistribution.from_correlation(e)


def sample_pair(dist: JointDistribution, stream: RandomStream) -> tuple[int, int]:
    """Draw one outcome pair (x, y), each in {-1, +1}."""
    u = stream.next_uniform()
    acc = 0.0
    for p, outcome in zip(dist.cells(), _OUTCOMES):
        acc += p
        if u < acc:
            return outcome
    return _OUTCOMES[-1]


def sample_pairs(dist: JointDistribution, stream: RandomStream, n: int) -> np.ndarray:
    """Draw n outcome pairs as an (n, 2) array of -1/+1 ints.

    Consumes the stream exactly like n sample_pair calls and produces the
    same outcomes.
    """
    u = stream.uniform_block(n)
    p_pp, p_pm, p_mp, _ = dist.cells()
    edges = np.array([p_pp, p_pp + p_pm, p_pp + p_pm + p_mp])
    idx = np.searchsorted(edges, u, side="right")
    outcomes = np.array(_OUTCOMES, dtype=np.int64)
    return outcomes[idx]
