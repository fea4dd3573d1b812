"""Link budget, fade margin and threshold solvers for point-to-point links."""

import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np
from scipy.optimize import bisect

from .dusty_channel import (
    DustMedium,
    StormProfile,
    mie_attenuation,
    mie_coefficients,
    path_attenuation,
    specific_attenuation,
    visibility_at_height,
)
from .errors import (
    LinkDownInClearAir,
    NegativeAttenuation,
    NonPositiveBracket,
    NonPositiveInput,
    NoPositiveRange,
    ProfileLengthMismatch,
)
from .path_loss import PathLossBreakdown, fspl, total_path_loss
from .permittivity import REGION_EPS

PROFILE_LENGTH_TOL = 1e-9  # km
DEFAULT_ANTENNA_HEIGHT = 10.0  # m, not given for the reference links


@dataclass(frozen=True)
class LinkSpec:
    """A point-to-point link: GHz, km, dBm, dBi and meters."""

    name: str
    freq: float
    distance: float
    tx_power: float
    tx_gain: float
    rx_gain: float
    rx_threshold: float
    antenna_height: float = DEFAULT_ANTENNA_HEIGHT

    def __post_init__(self):
        for name in ("freq", "distance", "antenna_height"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise NonPositiveInput(f"{name} must be positive and finite, got {value}")
        for name in ("tx_power", "tx_gain", "rx_gain", "rx_threshold"):
            if not math.isfinite(getattr(self, name)):
                raise NonPositiveInput(f"{name} must be finite")

    def with_(self, **changes) -> "LinkSpec":
        return replace(self, **changes)

    @property
    def eirp_plus_rx_gain(self) -> float:
        return self.tx_power + self.tx_gain + self.rx_gain


@dataclass(frozen=True)
class BudgetResult:
    path_loss: PathLossBreakdown
    rx_power: float
    margin: float
    link_up: bool


@dataclass(frozen=True)
class DustSample:
    name: str
    radius_avg: float  # m
    radius_max: float  # m


ML_6363 = LinkSpec("ML-6363", 21.8, 1.8, 20.0, 40.7, 40.7, -79.0)
ML_6352 = LinkSpec("ML-6352", 73.5, 1.8, 15.0, 46.5, 46.5, -75.0)

# base capacity in Mbps; metadata only
BASE_CAPACITY_MBPS = {"ML-6363": 28.0, "ML-6352": 100.0}

DUST_SAMPLES = (
    DustSample("sample-1", 94.43e-6, 538.04e-6),
    DustSample("sample-2", 64.34e-6, 159.61e-6),
    DustSample("sample-3", 25.23e-6, 128.68e-6),
)

# average mass density of the studied region in g/m^3; enters no computation
REGION_DENSITY = 2.5764


def preset_links():
    return [ML_6363, ML_6352]


def preset_dust_samples():
    return list(DUST_SAMPLES)


def preset_link(name: str) -> LinkSpec:
    for link in preset_links():
        if link.name == name:
            return link
    raise KeyError(f"unknown link preset {name!r}; known: {[l.name for l in preset_links()]}")


def region_permittivity():
    return REGION_EPS


def evaluate(link: LinkSpec, profile: Optional[StormProfile] = None) -> BudgetResult:
    """Received power and fade margin of ``link`` through ``profile`` (clear air if None)."""
    if profile is None:
        alpha = 0.0
    else:
        if abs(profile.length - link.distance) > PROFILE_LENGTH_TOL:
            raise ProfileLengthMismatch(
                f"storm profile covers {profile.length} km but the link is {link.distance} km"
            )
        alpha = path_attenuation(profile, link.freq, link.antenna_height)
    loss = total_path_loss(link.freq, link.distance, alpha)
    rx_power = link.eirp_plus_rx_gain - loss.total
    margin = rx_power - link.rx_threshold
    return BudgetResult(loss, rx_power, margin, margin >= 0)


def clear_air_margin(link: LinkSpec) -> float:
    return evaluate(link).margin


def attenuation_constant(link: LinkSpec, medium: DustMedium) -> float:
    """K such that the full-path dust loss is K / V for reference visibility V in km."""
    coeffs = mie_coefficients(medium.eps)
    # specific attenuation at unit visibility, corrected to the antenna height
    unit_vis = visibility_at_height(1.0, medium.ref_height, link.antenna_height)
    per_km = mie_attenuation(
        coeffs, medium.particle_radius, link.freq, unit_vis, medium.calibration_scale
    )
    return per_km * link.distance


def critical_visibility(link: LinkSpec, medium_template: DustMedium) -> float:
    """Reference visibility (km) at which a uniform storm drives the margin to zero.

    The visibility of ``medium_template`` is ignored.
    """
    margin = clear_air_margin(link)
    if margin <= 0:
        raise LinkDownInClearAir(f"{link.name}: clear-air margin is {margin:.3f} dB")
    k = attenuation_constant(link, medium_template)
    if not k > 0:
        raise NonPositiveBracket(
            f"dust loss constant is {k}; the storm never consumes the margin"
        )
    return k / margin


def max_range(link: LinkSpec, medium: Optional[DustMedium], visibility=None, xtol=1e-9) -> float:
    """Longest distance (km) with non-negative margin under a uniform storm.

    ``visibility`` (km) overrides the medium's reference visibility. With
    ``medium=None`` the clear-air range is returned.
    """
    if medium is not None and visibility is not None:
        medium = medium.with_(visibility=visibility)
    per_km = 0.0 if medium is None else specific_attenuation(medium, link.freq, link.antenna_height)
    if per_km < 0:
        raise NegativeAttenuation(f"specific attenuation is negative ({per_km} dB/km)")
    budget = link.eirp_plus_rx_gain - link.rx_threshold

    def margin(d):
        return budget - fspl(link.freq, d) - per_km * d

    lo = 1e-12
    if margin(lo) <= 0:
        raise NoPositiveRange(f"{link.name}: margin is negative at any positive distance")
    hi = max(link.distance, 1.0)
    while margin(hi) > 0:
        hi *= 2.0
        if hi > 1e12:
            raise NoPositiveRange(f"{link.name}: margin never crosses zero")
    return bisect(margin, lo, hi, xtol=xtol, rtol=4 * np.finfo(float).eps, maxiter=500)
