"""Cross-polarization discrimination over a path with aligned particles.

The differential constants (attenuation in Np/km, phase in rad/km) are
inputs; nothing here derives them from particle shape.
"""

import math
from dataclasses import dataclass

from .errors import InvalidInput, NonPositiveDistance


@dataclass(frozen=True)
class DifferentialPropagation:
    atten_h: float
    atten_v: float
    phase_h: float
    phase_v: float

    def __post_init__(self):
        values = (self.atten_h, self.atten_v, self.phase_h, self.phase_v)
        if not all(math.isfinite(v) for v in values):
            raise InvalidInput(f"non-finite propagation constant in {self!r}")
        if self.atten_h < 0 or self.atten_v < 0:
            raise InvalidInput("attenuation constants must be >= 0")

    def scaled(self, factor) -> "DifferentialPropagation":
        """All four constants multiplied by ``factor`` (e.g. a concentration ratio)."""
        return DifferentialPropagation(
            self.atten_h * factor, self.atten_v * factor,
            self.phase_h * factor, self.phase_v * factor,
        )


@dataclass(frozen=True)
class DepolFactors:
    m: float
    phi: float

    def __post_init__(self):
        if not 0.0 < self.m <= 1.0:
            raise InvalidInput(f"m must lie in (0, 1], got {self.m}")


def depol_factors(diff: DifferentialPropagation, distance) -> DepolFactors:
    if not distance > 0:
        raise NonPositiveDistance(f"distance must be positive, got {distance}")
    m = math.exp(-abs(diff.atten_h - diff.atten_v) * distance)
    return DepolFactors(m, (diff.phase_h - diff.phase_v) * distance)


def xpd(factors: DepolFactors) -> float:
    """XPD in dB; ``math.inf`` when the medium does not depolarize at all.

    Uses 1 -/+ 2 m cos(phi) + m**2 = (1 -/+ m)**2 +/- 4 m sin(phi/2)**2,
    which avoids the cancellation near m = 1, phi = 0.
    """
    m = factors.m
    s = 4.0 * m * math.sin(0.5 * factors.phi) ** 2
    num = (1.0 + m) ** 2 - s
    den = (1.0 - m) ** 2 + s
    if den <= 0.0:
        return math.inf
    if num <= 0.0:
        return -math.inf
    return 10.0 * math.log10(num / den)


def xpd_over_path(diff: DifferentialPropagation, distance) -> float:
    return xpd(depol_factors(diff, distance))
