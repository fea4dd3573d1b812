"""Specific and path-integrated attenuation of a dust/sand storm.

Specific attenuation follows the small-particle Mie expansion

    A = (a f / V) * (C1 + C2 (a f)**2 + C3 (a f)**3)      [dB/km]

with the particle radius ``a`` in meters, the frequency ``f`` in GHz and the
visibility ``V`` in kilometers. The coefficients are evaluated exactly as
published, including the C3 numerator, which is nonzero for vacuum particles.
"""

import math
from dataclasses import dataclass, replace
from typing import Sequence

from .errors import EmptyProfile, HumidityOutOfRange, NonPositiveInput, ZeroGamma
from .permittivity import REGION_EPS, ComplexPermittivity, apply_humidity

VISIBILITY_GAMMA = 1.07
VISIBILITY_B = 0.28


def visibility_at_height(v0, h0, h, gamma=VISIBILITY_GAMMA, b=VISIBILITY_B):
    """Visibility at height ``h`` given ``v0`` observed at reference height ``h0``.

    Solves ``V**gamma = v0**gamma * (h/h0)**b``; the result has the unit of ``v0``.
    """
    if v0 <= 0 or h0 <= 0 or h <= 0:
        raise NonPositiveInput(f"visibility and heights must be positive (v0={v0}, h0={h0}, h={h})")
    if gamma == 0:
        raise ZeroGamma("gamma must be nonzero")
    if h == h0 or b == 0:
        return v0
    return v0 * (h / h0) ** (b / gamma)


@dataclass(frozen=True)
class DustMedium:
    """A homogeneous storm.

    particle_radius is in meters, visibility in kilometers at ``ref_height``
    (meters), humidity in percent. ``base_eps`` is the dry permittivity
    before the humidity correction. ``calibration_scale`` multiplies the
    specific attenuation and defaults to 1.
    """

    particle_radius: float
    visibility: float
    ref_height: float
    humidity: float = 0.0
    base_eps: ComplexPermittivity = REGION_EPS
    calibration_scale: float = 1.0

    def __post_init__(self):
        for name in ("particle_radius", "visibility", "ref_height", "calibration_scale"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise NonPositiveInput(f"{name} must be positive and finite, got {value}")
        if not 0.0 <= self.humidity <= 100.0:
            raise HumidityOutOfRange(f"humidity must be within [0, 100] %, got {self.humidity}")

    def with_(self, **changes) -> "DustMedium":
        return replace(self, **changes)

    @property
    def eps(self) -> ComplexPermittivity:
        """Permittivity after the humidity correction."""
        return apply_humidity(self.base_eps, self.humidity)


@dataclass(frozen=True)
class MieCoefficients:
    c1: float
    c2: float
    c3: float


def mie_coefficients(eps: ComplexPermittivity) -> MieCoefficients:
    e1, e2 = eps.eps1, eps.eps2
    denom = (e1 + 2.0) ** 2 + e2**2
    c1 = 6.0 * e2 / denom
    c2 = e2 * (
        (67.0 * e1**2 + 7.0 * e2**2 + 4.0 * e1 - 20.0) / (5.0 * denom**2)
        + 1.0 / 15.0
        + 5.0 / (3.0 * ((2.0 * e1 + 3.0) ** 2 + 4.0 * e2**2))
    )
    c3 = (4.0 / 3.0) * (
        ((e1 - 1.0) ** 2 * (e1 + 2.0) + (2.0 * (e1 - 1.0) * (e1 + 2.0) - 9.0) + e2**4)
        / denom**2
    )
    return MieCoefficients(c1, c2, c3)


def mie_attenuation(coeffs: MieCoefficients, radius, freq, visibility, scale=1.0):
    """Specific attenuation in dB/km from precomputed coefficients.

    ``radius`` in meters, ``freq`` in GHz, ``visibility`` in km (already
    height-corrected).
    """
    x = radius * freq
    return scale * (x / visibility) * (coeffs.c1 + coeffs.c2 * x**2 + coeffs.c3 * x**3)


def specific_attenuation(medium: DustMedium, freq, height) -> float:
    """Dust attenuation in dB/km seen by an antenna at ``height`` meters."""
    if freq <= 0:
        raise NonPositiveInput(f"frequency must be positive, got {freq}")
    if height <= 0:
        raise NonPositiveInput(f"height must be positive, got {height}")
    coeffs = mie_coefficients(medium.eps)
    vis = visibility_at_height(medium.visibility, medium.ref_height, height)
    return mie_attenuation(coeffs, medium.particle_radius, freq, vis, medium.calibration_scale)


@dataclass(frozen=True)
class StormProfile:
    """Piecewise-constant storm along the path: ``(length_km, medium)`` pairs."""

    segments: tuple

    def __init__(self, segments: Sequence):
        segs = tuple((float(length), medium) for length, medium in segments)
        for length, _ in segs:
            if not (math.isfinite(length) and length >= 0):
                raise NonPositiveInput(f"segment length must be >= 0, got {length}")
        object.__setattr__(self, "segments", segs)

    @classmethod
    def uniform(cls, medium: DustMedium, length) -> "StormProfile":
        return cls([(length, medium)])

    @property
    def length(self) -> float:
        return math.fsum(length for length, _ in self.segments)

    def __add__(self, other: "StormProfile") -> "StormProfile":
        return StormProfile(self.segments + other.segments)


def path_attenuation(profile: StormProfile, freq, height) -> float:
    """Total dust attenuation in dB along ``profile``."""
    if not profile.segments or profile.length <= 0:
        raise EmptyProfile("storm profile has zero total length")
    return math.fsum(
        specific_attenuation(medium, freq, height) * length
        for length, medium in profile.segments
        if length > 0
    )
