"""Free-space and dust-augmented path loss."""

import math
from dataclasses import dataclass

from .errors import NegativeAttenuation, NonPositiveInput

SPEED_OF_LIGHT = 299_792_458.0  # m/s
# 20*log10(4*pi*1e12/c) for f in GHz and d in km, rounded as in common practice
FSPL_CONSTANT_DB = 92.44


@dataclass(frozen=True)
class PathLossBreakdown:
    fspl: float
    dust_attenuation: float
    total: float


def wavelength(freq_ghz):
    """Wavelength in meters for a frequency in GHz."""
    if freq_ghz <= 0:
        raise NonPositiveInput(f"frequency must be positive, got {freq_ghz}")
    return SPEED_OF_LIGHT / (freq_ghz * 1e9)


def fspl_from_wavelength(distance, wavelength):
    """Free-space loss in dB, ``distance`` and ``wavelength`` both in meters."""
    if distance <= 0 or wavelength <= 0:
        raise NonPositiveInput(
            f"distance and wavelength must be positive (d={distance}, lambda={wavelength})"
        )
    return 20.0 * math.log10(4.0 * math.pi * distance / wavelength)


def fspl(freq, distance):
    """Free-space loss in dB with ``freq`` in GHz and ``distance`` in km."""
    if freq <= 0 or distance <= 0:
        raise NonPositiveInput(f"frequency and distance must be positive (f={freq}, d={distance})")
    return FSPL_CONSTANT_DB + 20.0 * math.log10(freq) + 20.0 * math.log10(distance)


def total_path_loss(freq, distance, dust_atten=0.0) -> PathLossBreakdown:
    """Free-space loss plus the path-integrated dust attenuation ``dust_atten`` (dB)."""
    if not dust_atten >= 0:
        raise NegativeAttenuation(f"dust attenuation must be >= 0 dB, got {dust_atten}")
    free = fspl(freq, distance)
    return PathLossBreakdown(free, dust_atten, free + dust_atten)
