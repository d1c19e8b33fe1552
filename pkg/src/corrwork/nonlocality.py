"""CHSH parameter, local-realist ceiling, and the quantum operator bound.

The CHSH parameter for a correlation law E and four measurement angles is

    S = |E(a,b) + E(a,b') + E(a',b) - E(a',b')|

with each correlator evaluated at the canonicalized relative angle.  Three
reference ceilings apply: deterministic local strategies give exactly 2,
the two-level operator construction caps the singlet value at 2*sqrt(2),
and the algebra allows at most 4.

The operator bound is checked constructively: with planar observables
A(phi) = cos(phi) Z + sin(phi) X the 4x4 operator

    B = A(phi_a) (x) (B(phi_b) + B(phi_b')) + A(phi_a') (x) (B(phi_b) - B(phi_b'))

is real symmetric, and its spectral norm (via the in-repo Jacobi solver)
never exceeds 2*sqrt(2).

maximize_chsh searches the four angle settings for the largest S: a coarse
grid at step pi/36 followed by derivative-free compass refinement, chosen
because the step law is discontinuous.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .jacobi import spectral_norm
from .laws import Angle, CorrelationLaw

TSIRELSON_BOUND = 2.0 * math.sqrt(2.0)

#: coarse stage of maximize_chsh: grid step over each angle
GRID_STEP = math.pi / 36.0
#: refinement stops once the compass step falls below this
REFINE_STEP_FLOOR = 1e-7
#: hard cap on refinement evaluations
REFINE_MAX_EVALS = 10_000


@dataclass(frozen=True)
class ChshSettings:
    """Four measurement angles (phi_a, phi_a', phi_b, phi_b') in radians."""

    phi_a: float
    phi_a_prime: float
    phi_b: float
    phi_b_prime: float

    def __post_init__(self) -> None:
        for name, phi in self.as_dict().items():
            if not isinstance(phi, (int, float)) or not math.isfinite(phi):
                raise ValueError(f"{name} must be finite, got {phi!r}")

    @classmethod
    def standard(cls) -> "ChshSettings":
        """The angles that maximize the singlet value: 0, pi/2, pi/4, -pi/4."""
        return cls(0.0, math.pi / 2.0, math.pi / 4.0, -math.pi / 4.0)

    def as_dict(self) -> dict[str, float]:
        return {
            "phi_a": self.phi_a,
            "phi_a_prime": self.phi_a_prime,
            "phi_b": self.phi_b,
            "phi_b_prime": self.phi_b_prime,
        }

    def relative_angles(self) -> tuple[Angle, Angle, Angle, Angle]:
        """Canonical relative angles for (a,b), (a,b'), (a',b), (a',b')."""
        return (
            Angle(self.phi_a - self.phi_b),
            Angle(self.phi_a - self.phi_b_prime),
            Angle(self.phi_a_prime - self.phi_b),
            Angle(self.phi_a_prime - self.phi_b_prime),
        )


def chsh_value(law: CorrelationLaw, settings: ChshSettings) -> float:
    """S = |E(a,b) + E(a,b') + E(a',b) - E(a',b')| for the given law."""
    t_ab, t_abp, t_apb, t_apbp = settings.relative_angles()
    return abs(
        law.evaluate(t_ab)
        + law.evaluate(t_abp)
        + law.evaluate(t_apb)
        - law.evaluate(t_apbp)
    )


def lhv_deterministic_max(settings: ChshSettings) -> float:
    """Largest CHSH combination over all 16 deterministic strategies.

    Each party pre-assigns outcomes A, A', B, B' in {-1, +1}; the
    correlator of two fixed outcomes is their product.  The result is
    settings-independent and always exactly 2; the argument is kept for
    interface uniformity with chsh_value.
    """
    del settings
    best = 0.0
    for a, ap, b, bp in itertools.product((-1, 1), repeat=4):
        s = abs(a * b + a * bp + ap * b - ap * bp)
        if s > best:
            best = float(s)
    return best


def _observable(phi: float) -> list[list[float]]:
    """Planar two-level observable cos(phi) Z + sin(phi) X; eigenvalues +-1."""
    c, s = math.cos(phi), math.sin(phi)
    return [[c, s], [s, -c]]


def _kron4(a: list[list[float]], b: list[list[float]]) -> list[list[float]]:
    out = [[0.0] * 4 for _ in range(4)]
    for i in range(2):
        for j in range(2):
            for k in range(2):
                for l in range(2):
                    out[2 * i + k][2 * j + l] = a[i][j] * b[k][l]
    return out


def chsh_operator(settings: ChshSettings) -> list[list[float]]:
    """The 4x4 real symmetric CHSH operator for planar observables."""
    a = _observable(settings.phi_a)
    ap = _observable(settings.phi_a_prime)
    b = _observable(settings.phi_b)
    bp = _observable(settings.phi_b_prime)
    b_sum = [[b[i][j] + bp[i][j] for j in range(2)] for i in range(2)]
    b_diff = [[b[i][j] - bp[i][j] for j in range(2)] for i in range(2)]
    first = _kron4(a, b_sum)
    second = _kron4(ap, b_diff)
    return [[first[i][j] + second[i][j] for j in range(4)] for i in range(4)]


def chsh_operator_norm(settings: ChshSettings) -> float:
    """Spectral norm of the CHSH operator; at most 2*sqrt(2) for any angles."""
    return spectral_norm(chsh_operator(settings))


def maximize_chsh(law: CorrelationLaw) -> tuple[ChshSettings, float]:
    """Angles maximizing the CHSH parameter for a law, and the value there.

    Stage 1 evaluates S on a grid of step pi/36 over [0, 2pi) in each of
    the four angles, keeping the first maximum in lexicographic angle
    order.  Stage 2 refines with compass search (probe +-step on each
    coordinate, take the best improvement, halve the step on failure)
    until the step drops below REFINE_STEP_FLOOR or the evaluation budget
    runs out.  Compass search needs no derivatives, which the step law
    does not have.
    """
    n = 72
    grid = [i * GRID_STEP for i in range(n)]
    # one correlator matrix serves all four angle pairs
    m = np.empty((n, n))
    for i, phi_u in enumerate(grid):
        for j, phi_v in enumerate(grid):
            m[i, j] = law.evaluate(Angle(phi_u - phi_v))

    best_val = -1.0
    best_idx = (0, 0, 0, 0)
    for ia in range(n):
        # S[a', b, b'] = |(m[a,b] + m[a',b]) + (m[a,b'] - m[a',b'])|
        c1 = m[ia, :][None, :] + m          # (a', b)
        c2 = m[ia, :][None, :] - m          # (a', b')
        s = np.abs(c1[:, :, None] + c2[:, None, :])
        flat = int(np.argmax(s))
        val = float(s.flat[flat])
        if val > best_val:
            iap, ib, ibp = np.unravel_index(flat, s.shape)
            best_val = val
            best_idx = (ia, int(iap), int(ib), int(ibp))

    x = [grid[k] for k in best_idx]

    def f(angles: list[float]) -> float:
        return chsh_value(law, ChshSettings(*angles))

    fx = f(x)
    step = GRID_STEP
    evals = 0
    while step >= REFINE_STEP_FLOOR and evals < REFINE_MAX_EVALS:
        best_probe = None
        best_probe_val = fx
        for k in range(4):
            for sign in (1.0, -1.0):
                probe = list(x)
                probe[k] += sign * step
                val = f(probe)
                evals += 1
                if val > best_probe_val:
                    best_probe = probe
                    best_probe_val = val
        if best_probe is None:
            step *= 0.5
        else:
            x = best_probe
            fx = best_probe_val
    return ChshSettings(*x), fx
