"""Complex permittivity of dust-laden air.

The loss factor ``eps2`` is always stored as a non-negative magnitude, so a
measured value quoted as ``6.3485 - j0.0929`` becomes
``ComplexPermittivity(6.3485, 0.0929)``. The sign only matters inside the
Looyenga cube roots, where the lossy medium is represented as
``eps1 - 1j * eps2``.
"""

import math
import warnings
from dataclasses import dataclass
from typing import Sequence

from .errors import (
    EmptySampleSet,
    FractionSumMismatch,
    HumidityOutOfRange,
    InvalidPermittivity,
    NegativeFraction,
)

FRACTION_SUM_TOL = 1e-9

# cubic humidity correction, coefficients of H, H**2, H**3 (H in percent)
_HUMIDITY_EPS1 = (0.04, -7.78e-4, 5.56e-6)
_HUMIDITY_EPS2 = (0.02, -3.71e-4, 2.76e-6)


@dataclass(frozen=True)
class ComplexPermittivity:
    """Relative permittivity as (dielectric constant, loss factor)."""

    eps1: float
    eps2: float

    def __post_init__(self):
        if not (math.isfinite(self.eps1) and math.isfinite(self.eps2)):
            raise InvalidPermittivity(f"non-finite permittivity {self!r}")
        if self.eps2 < 0:
            raise InvalidPermittivity(
                f"loss factor must be stored as a positive magnitude, got {self.eps2}"
            )
        if self.eps1 < 1.0 - 1e-9:
            warnings.warn(
                f"dielectric constant {self.eps1} < 1 is unphysical", RuntimeWarning, stacklevel=3
            )

    @classmethod
    def from_complex(cls, z: complex) -> "ComplexPermittivity":
        """Build from ``eps1 - 1j*eps2``; a tiny positive imaginary part is clipped."""
        return cls(z.real, max(-z.imag, 0.0))

    def to_complex(self) -> complex:
        return complex(self.eps1, -self.eps2)


@dataclass(frozen=True)
class MineralSample:
    volume_fraction: float
    eps: ComplexPermittivity

    def __post_init__(self):
        if not 0.0 <= self.volume_fraction <= 1.0:
            raise NegativeFraction(
                f"volume fraction must lie in [0, 1], got {self.volume_fraction}"
            )


def looyenga_mix(samples: Sequence[MineralSample]) -> ComplexPermittivity:
    """Effective permittivity of a mixture by the Looyenga cube-root rule.

    Cube roots are taken on the principal branch. Real and imaginary parts
    are accumulated with ``math.fsum`` so the result does not depend on the
    order of ``samples``.
    """
    if not samples:
        raise EmptySampleSet("at least one mineral sample is required")
    for s in samples:
        if s.volume_fraction < 0:
            raise NegativeFraction(f"negative volume fraction {s.volume_fraction}")
    total = math.fsum(s.volume_fraction for s in samples)
    if abs(total - 1.0) > FRACTION_SUM_TOL:
        raise FractionSumMismatch(f"volume fractions sum to {total!r}, expected 1")

    roots = [s.volume_fraction * s.eps.to_complex() ** (1.0 / 3.0) for s in samples]
    mean_root = complex(math.fsum(r.real for r in roots), math.fsum(r.imag for r in roots))
    return ComplexPermittivity.from_complex(mean_root**3)


def _poly(coeffs, x):
    a1, a2, a3 = coeffs
    return x * (a1 + x * (a2 + x * a3))


def apply_humidity(eps: ComplexPermittivity, humidity: float) -> ComplexPermittivity:
    """Add the empirical cubic moisture correction to both parts of ``eps``.

    ``humidity`` is relative humidity in percent. Outputs are not clamped.
    """
    if not 0.0 <= humidity <= 100.0:
        raise HumidityOutOfRange(f"humidity must be within [0, 100] %, got {humidity}")
    if humidity == 0:
        return eps
    return ComplexPermittivity(
        eps.eps1 + _poly(_HUMIDITY_EPS1, humidity),
        eps.eps2 + _poly(_HUMIDITY_EPS2, humidity),
    )


# measured mixture for the studied North-African region
REGION_EPS = ComplexPermittivity(6.3485, 0.0929)
# dry dust and dust with 4 % water content, used for the depolarization scenarios
DRY_DUST_EPS = ComplexPermittivity(5.23, 0.26)
WET_DUST_EPS = ComplexPermittivity(6.23, 0.57)
