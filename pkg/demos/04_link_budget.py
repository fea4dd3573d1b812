"""
Fade margin and threshold solvers
=================================

Clear-air budgets of the two reference links, the visibility at which a
storm uses up the whole fade margin, and the longest hop that survives a
given storm.
"""

from sandlink import ML_6352, ML_6363, DustMedium, critical_visibility, evaluate, max_range, preset_dust_samples

for link in (ML_6363, ML_6352):
    res = evaluate(link)
    print(f"{link.name}: FSPL {res.path_loss.fspl:.2f} dB, Rx {res.rx_power:.2f} dBm, margin {res.margin:.2f} dB")

sample = preset_dust_samples()[0]
storm = DustMedium(particle_radius=sample.radius_avg, visibility=0.01, ref_height=10.0, humidity=0.0)
for scale in (1.0, 1e4, 1e6):
    medium = storm.with_(calibration_scale=scale)
    for link in (ML_6363, ML_6352):
        v = critical_visibility(link, medium)
        print(f"scale {scale:g}: {link.name} loses the link below V = {v * 1e3:.6g} m")

medium = storm.with_(calibration_scale=1e4)
for v_m in (1, 10, 100):
    ranges = [max_range(link, medium, visibility=v_m * 1e-3) for link in (ML_6363, ML_6352)]
    print(f"V={v_m:4d} m: max range ML-6363 {ranges[0]:.3f} km, ML-6352 {ranges[1]:.3f} km")
print(f"clear air: ML-6363 {max_range(ML_6363, None):.1f} km, ML-6352 {max_range(ML_6352, None):.1f} km")
