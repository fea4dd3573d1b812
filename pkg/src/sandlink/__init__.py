"""Dust and sand storm impairments on millimeter-wave terrestrial links."""

__version__ = "0.1.0"

from .depolarization import (
    DepolFactors,
    DifferentialPropagation,
    depol_factors,
    xpd,
    xpd_over_path,
)
from .dusty_channel import (
    DustMedium,
    MieCoefficients,
    StormProfile,
    mie_attenuation,
    mie_coefficients,
    path_attenuation,
    specific_attenuation,
    visibility_at_height,
)
from .link_budget import (
    ML_6352,
    ML_6363,
    BudgetResult,
    LinkSpec,
    critical_visibility,
    evaluate,
    max_range,
    preset_dust_samples,
    preset_links,
)
from .path_loss import PathLossBreakdown, fspl, fspl_from_wavelength, total_path_loss, wavelength
from .permittivity import (
    DRY_DUST_EPS,
    REGION_EPS,
    WET_DUST_EPS,
    ComplexPermittivity,
    MineralSample,
    apply_humidity,
    looyenga_mix,
)
