"""
Cross-polarization discrimination
=================================

XPD along 1.8, 5 and 20 km paths for a fixed set of differential propagation
constants. The constants below are illustrative; supply measured or modelled
values for real planning.
"""

import numpy as np

from sandlink import DifferentialPropagation, xpd_over_path

dry = DifferentialPropagation(atten_h=0.012, atten_v=0.010, phase_h=0.30, phase_v=0.25)
wet = DifferentialPropagation(atten_h=0.016, atten_v=0.013, phase_h=0.40, phase_v=0.33)

print(f"{'d [km]':>7} {'XPD dry':>10} {'XPD wet':>10}")
for d in (1.8, 5.0, 20.0):
    print(f"{d:7.1f} {xpd_over_path(dry, d):10.3f} {xpd_over_path(wet, d):10.3f}")

# Constants quoted at 10 m visibility, scaled with dust concentration (1/V).
print("\nXPD at 1.8 km vs visibility (dry)")
for v in np.geomspace(1, 500, 8):
    print(f"  V={v:7.2f} m  XPD={xpd_over_path(dry.scaled(10.0 / v), 1.8):8.3f} dB")

# No differential effect at all means no depolarization: the result is +inf.
print("isotropic:", xpd_over_path(DifferentialPropagation(0.01, 0.01, 0.2, 0.2), 1.8))
