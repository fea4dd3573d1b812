import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sandlink.dusty_channel import DustMedium, StormProfile, specific_attenuation
from sandlink.errors import LinkDownInClearAir, NoPositiveRange, NonPositiveBracket, ProfileLengthMismatch
from sandlink.link_budget import (
    DUST_SAMPLES,
    ML_6352,
    ML_6363,
    REGION_DENSITY,
    LinkSpec,
    attenuation_constant,
    critical_visibility,
    evaluate,
    max_range,
    preset_dust_samples,
    preset_link,
    preset_links,
    region_permittivity,
)
from sandlink.permittivity import ComplexPermittivity


def storm(link, **kw):
    base = dict(particle_radius=DUST_SAMPLES[0].radius_avg, visibility=0.01, ref_height=link.antenna_height)
    base.update(kw)
    return DustMedium(**base)


def margin_at_visibility(link, medium, v):
    return evaluate(link, StormProfile.uniform(medium.with_(visibility=v), link.distance)).margin


def bisect_visibility(link, medium, lo=1e-9, hi=10.0):
    """Reference solver: bisection in log(V) until the bracket is relatively tiny."""
    assert margin_at_visibility(link, medium, lo) < 0 < margin_at_visibility(link, medium, hi)
    for _ in range(400):
        mid = math.sqrt(lo * hi)
        if margin_at_visibility(link, medium, mid) < 0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-15 * hi:
            break
    return 0.5 * (lo + hi)


def test_presets():
    links = preset_links()
    assert len(links) == 2
    assert preset_link("ML-6363").freq == 21.8
    assert preset_link("ML-6352").rx_threshold == -75.0
    assert (ML_6363.tx_power, ML_6363.tx_gain, ML_6363.rx_gain, ML_6363.rx_threshold) == (20.0, 40.7, 40.7, -79.0)
    assert (ML_6352.freq, ML_6352.tx_power, ML_6352.tx_gain) == (73.5, 15.0, 46.5)
    assert all(l.distance == 1.8 and l.antenna_height == 10.0 for l in links)
    with pytest.raises(KeyError):
        preset_link("ML-9999")


def test_dust_presets():
    samples = preset_dust_samples()
    assert len(samples) == 3
    assert samples[0].radius_max == pytest.approx(538.04e-6)
    assert samples[2].radius_avg == pytest.approx(25.23e-6)
    assert [round(s.radius_avg * 1e6, 2) for s in samples] == [94.43, 64.34, 25.23]
    assert [round(s.radius_max * 1e6, 2) for s in samples] == [538.04, 159.61, 128.68]
    assert region_permittivity() == ComplexPermittivity(6.3485, 0.0929)
    assert REGION_DENSITY == 2.5764


@pytest.mark.parametrize("link, rx, margin", [
    (ML_6363, -22.914579974158218, 56.085420025841782),
    (ML_6352, -26.871196883750019, 48.128803116249981),
])
def test_clear_air(link, rx, margin):
    res = evaluate(link)
    assert res.rx_power == pytest.approx(rx, abs=1e-9)
    assert res.margin == pytest.approx(margin, abs=1e-9)
    assert res.link_up
    assert res.rx_power == link.tx_power + link.tx_gain + link.rx_gain - res.path_loss.total


def test_excess_loss_breaks_link():
    clear = evaluate(ML_6363).margin
    # a storm whose path loss is margin + 1 dB
    m = storm(ML_6363)
    per_km = specific_attenuation(m, ML_6363.freq, ML_6363.antenna_height)
    v = m.visibility * per_km * ML_6363.distance / (clear + 1.0)
    res = evaluate(ML_6363, StormProfile.uniform(m.with_(visibility=v), ML_6363.distance))
    assert res.path_loss.dust_attenuation == pytest.approx(clear + 1.0, rel=1e-12)
    assert res.margin == pytest.approx(-1.0, abs=1e-9)
    assert not res.link_up


def test_transmit_power_comes_from_link():
    boosted = ML_6363.with_(tx_power=30.0)
    assert evaluate(boosted).rx_power == pytest.approx(evaluate(ML_6363).rx_power + 10.0, abs=1e-12)


def test_profile_length_must_match():
    with pytest.raises(ProfileLengthMismatch):
        evaluate(ML_6363, StormProfile.uniform(storm(ML_6363), 1.7))
    evaluate(ML_6363, StormProfile.uniform(storm(ML_6363), 1.8 + 5e-10))


@given(st.floats(1e-5, 1.0), st.floats(1e-6, 1e-3))
def test_rx_power_consistent_with_parts(v, a):
    m = storm(ML_6352, visibility=v, particle_radius=a)
    res = evaluate(ML_6352, StormProfile.uniform(m, ML_6352.distance))
    assert res.rx_power == ML_6352.tx_power + ML_6352.tx_gain + ML_6352.rx_gain - res.path_loss.total
    assert res.margin == res.rx_power - ML_6352.rx_threshold
    assert res.link_up == (res.margin >= 0)


def test_higher_frequency_link_suffers_more_dust_loss():
    m = storm(ML_6363)
    p = StormProfile.uniform(m, 1.8)
    a_k = evaluate(ML_6363, p).path_loss.dust_attenuation
    a_v = evaluate(ML_6352, p).path_loss.dust_attenuation
    assert a_v > a_k > 0


# ------------------------------------------------------------ critical visibility


def test_closed_form_definition():
    link = ML_6363
    m = storm(link)
    k = attenuation_constant(link, m)
    # pick a calibration so that K equals the clear-air margin
    m_unit = m.with_(calibration_scale=evaluate(link).margin / k)
    assert critical_visibility(link, m_unit) == pytest.approx(1.0, rel=1e-12)


def test_critical_visibility_ml6363():
    m = storm(ML_6363, humidity=0.0)
    v = critical_visibility(ML_6363, m)
    assert v == pytest.approx(bisect_visibility(ML_6363, m), rel=1e-9)
    assert abs(margin_at_visibility(ML_6363, m, v)) <= 1e-9


def test_halving_scale_halves_critical_visibility():
    m = storm(ML_6363)
    assert critical_visibility(ML_6363, m.with_(calibration_scale=0.5)) == pytest.approx(
        0.5 * critical_visibility(ML_6363, m), rel=1e-15
    )


def test_critical_visibility_with_height_correction():
    link = ML_6352.with_(antenna_height=25.0)
    m = storm(link, ref_height=2.0, calibration_scale=1e4)
    v = critical_visibility(link, m)
    assert v == pytest.approx(bisect_visibility(link, m), rel=1e-9)


def test_critical_visibility_randomized():
    rng = random.Random(23)
    for _ in range(10):
        link = LinkSpec("rand", rng.uniform(5, 100), rng.uniform(0.5, 10), rng.uniform(10, 30),
                        rng.uniform(30, 50), rng.uniform(30, 50), rng.uniform(-90, -60), rng.uniform(2, 40))
        m = DustMedium(rng.uniform(1e-5, 1e-3), 1.0, rng.uniform(1, 30), rng.uniform(0, 100),
                       ComplexPermittivity(rng.uniform(3, 10), rng.uniform(0.01, 1)), rng.uniform(1, 1e5))
        v = critical_visibility(link, m)
        assert v == pytest.approx(bisect_visibility(link, m, lo=v * 1e-6, hi=v * 1e6), rel=1e-9)


def test_link_down_in_clear_air():
    with pytest.raises(LinkDownInClearAir):
        critical_visibility(ML_6363.with_(distance=5000.0), storm(ML_6363))


def test_lossless_dust_never_breaks_link():
    m = storm(ML_6363, base_eps=ComplexPermittivity(1.0, 0.0))
    with pytest.raises(NonPositiveBracket):
        critical_visibility(ML_6363, m)


# ------------------------------------------------------------ max range


def clear_range(link):
    budget = link.tx_power + link.tx_gain + link.rx_gain - link.rx_threshold
    return 10 ** ((budget - 92.44 - 20 * math.log10(link.freq)) / 20)


def test_clear_air_range_ml6363():
    expected = 10 ** ((20 + 40.7 + 40.7 + 79 - 92.44 - 20 * math.log10(21.8)) / 20)
    assert expected == pytest.approx(1146.9474136222162, rel=1e-12)
    assert max_range(ML_6363, None) == pytest.approx(expected, abs=1e-6)


def test_max_range_randomized_clear_air():
    rng = random.Random(29)
    for _ in range(10):
        link = LinkSpec("rand", rng.uniform(5, 100), 1.0, rng.uniform(0, 30),
                        rng.uniform(0, 50), rng.uniform(0, 50), rng.uniform(-100, -60))
        assert max_range(link, None) == pytest.approx(clear_range(link), abs=1e-6)


def test_max_range_in_storm_zeroes_margin():
    m = storm(ML_6352, calibration_scale=1e4)
    d = max_range(ML_6352, m, visibility=0.05)
    res = evaluate(ML_6352.with_(distance=d), StormProfile.uniform(m.with_(visibility=0.05), d))
    assert abs(res.margin) <= 1e-6
    assert d < max_range(ML_6352, None)


@given(st.floats(1e-4, 1.0), st.floats(1.01, 100.0))
def test_range_grows_with_visibility(v, factor):
    m = storm(ML_6363, calibration_scale=1e5)
    assert max_range(ML_6363, m, visibility=v * factor) >= max_range(ML_6363, m, visibility=v)


def test_no_positive_range():
    hopeless = ML_6363.with_(tx_power=-400.0)
    with pytest.raises(NoPositiveRange):
        max_range(hopeless, None)
