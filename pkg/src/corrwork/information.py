"""Entropy and mutual information for the binary symmetric pair, in nats.

For a correlation value E, the joint distribution P(x, y) = (1 + x*y*E)/4
has uniform marginals, so H(A) = ln 2 and

    I(A:E)  = ln 2 - h2((1 + E) / 2)
    H(A|E)  =        h2((1 + E) / 2)

where h2(p) = -p ln p - (1-p) ln(1-p).  Each named law also admits a closed
form in the angle, which mutual_information_law uses directly; the generic
route above must agree with it to 1e-12, and the tests hold both routes to
that.
"""

from __future__ import annotations

import math

from .laws import Angle, CorrelationLaw, LawKind, _radians

LN2 = math.log(2.0)


def binary_entropy(p: float) -> float:
    """h2(p) in nats, with the 0*ln(0) = 0 convention at the endpoints."""
    if not (0.0 <= p <= 1.0):
        raise ValueError(f"probability {p!r} outside [0, 1]")
    if p == 0.0 or p == 1.0:
        return 0.0
    return -p * math.log(p) - (1.0 - p) * math.log(1.0 - p)


def conditional_entropy(e: float) -> float:
    """Residual uncertainty H(A|E) = h2((1 + E)/2) for correlation E."""
    if not (-1.0 <= e <= 1.0):
        raise ValueError(f"correlation {e!r} outside [-1, 1]")
    return binary_entropy((1.0 + e) / 2.0)


def mutual_information(e: float) -> float:
    """I(A:E) = ln 2 - h2((1 + E)/2), in nats.  Even in E."""
    return LN2 - conditional_entropy(e)


def mutual_information_law(law: CorrelationLaw, theta: Angle | float) -> float:
    """Mutual information of a law at an angle, via its closed form.

    classical     ln 2 - h2(theta/pi)
    quantum       ln 2 - h2(sin^2(theta/2))
    superquantum  ln 2 for theta != pi/2, else 0
    tabulated     generic route through the interpolated correlation
    """
    t = _radians(theta)
    if law.kind is LawKind.CLASSICAL_LINEAR:
        return LN2 - binary_entropy(t / math.pi)
    if law.kind is LawKind.QUANTUM_COSINE:
        return LN2 - binary_entropy(math.sin(t / 2.0) ** 2)
    if law.kind is LawKind.SUPERQUANTUM_STEP:
        return 0.0 if 2.0 * t / math.pi == 1.0 else LN2
    return mutual_information(law.evaluate(t))
