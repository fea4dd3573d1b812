"""
Permittivity of a dusty medium
==============================

Mix mineral constituents with the Looyenga rule, then add the moisture
correction used throughout the rest of the package.
"""

from sandlink import ComplexPermittivity, MineralSample, REGION_EPS, apply_humidity, looyenga_mix

# Two constituents in equal volume. Loss factors are given as positive
# magnitudes, so 9.0 - j0.9 is written (9.0, 0.9).
quartz_like = ComplexPermittivity(4.0, 0.2)
clay_like = ComplexPermittivity(9.0, 0.9)
mix = looyenga_mix([MineralSample(0.5, quartz_like), MineralSample(0.5, clay_like)])
print(f"50/50 mixture: eps1={mix.eps1:.5f}  eps2={mix.eps2:.5f}")

# The measured mixture of the studied region ships as REGION_EPS.
print(f"region (dry):  eps1={REGION_EPS.eps1}  eps2={REGION_EPS.eps2}")
for humidity in (0, 20, 40, 60, 80, 100):
    wet = apply_humidity(REGION_EPS, humidity)
    print(f"  H={humidity:3d} %  eps1={wet.eps1:.5f}  eps2={wet.eps2:.5f}")
