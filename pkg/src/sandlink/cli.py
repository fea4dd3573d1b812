"""Command line front end.

Examples::

    sandlink presets
    sandlink run fig2.json --out results/
    sandlink atten --freq 21.8 --vis 0.01 --radius 94.43 --humidity 60
    sandlink budget --link ML-6352 --vis 0.01 --radius 538.04
    sandlink xpd --dist 5 --atten-h 0.05 --atten-v 0 --phase-h 0.02 --phase-v 0
"""

import argparse
import sys

from . import __version__
from .depolarization import DifferentialPropagation, depol_factors, xpd
from .dusty_channel import DustMedium, StormProfile, mie_coefficients, path_attenuation, specific_attenuation
from .errors import ComputeError, InvalidInput, SandlinkError, ScenarioValidationError
from .link_budget import (
    BASE_CAPACITY_MBPS,
    REGION_DENSITY,
    critical_visibility,
    evaluate,
    max_range,
    preset_dust_samples,
    preset_link,
    preset_links,
)
from .path_loss import total_path_loss
from .permittivity import DRY_DUST_EPS, REGION_EPS, WET_DUST_EPS, ComplexPermittivity
from .report import bundled_scenarios, format_value, run_scenario


def _print(name, value, unit=""):
    suffix = f" {unit}" if unit else ""
    print(f"{name} = {format_value(value)}{suffix}")


def _add_medium_args(p, required=False):
    p.add_argument("--vis", type=float, required=required, help="visibility in km at the reference height")
    p.add_argument("--radius", type=float, required=required, help="particle radius in um")
    p.add_argument("--humidity", type=float, default=0.0, help="relative humidity in %%")
    p.add_argument("--eps1", type=float, default=REGION_EPS.eps1, help="dielectric constant")
    p.add_argument("--eps2", type=float, default=REGION_EPS.eps2, help="loss factor (positive)")
    p.add_argument("--ref-height", type=float, default=None, help="visibility reference height in m")
    p.add_argument("--height", type=float, default=None, help="antenna height in m")
    p.add_argument("--scale", type=float, default=1.0, help="calibration scale on the specific attenuation")


def _medium(args, default_height):
    if args.vis is None or args.radius is None:
        return None
    ref = args.ref_height if args.ref_height is not None else default_height
    return DustMedium(
        particle_radius=args.radius * 1e-6,
        visibility=args.vis,
        ref_height=ref,
        humidity=args.humidity,
        base_eps=ComplexPermittivity(args.eps1, args.eps2),
        calibration_scale=args.scale,
    )


def cmd_presets(args):
    print("links:")
    for link in preset_links():
        print(
            f"  {link.name}: freq={link.freq} GHz distance={link.distance} km "
            f"tx_power={link.tx_power} dBm gains={link.tx_gain}/{link.rx_gain} dBi "
            f"threshold={link.rx_threshold} dBm antenna_height={link.antenna_height} m "
            f"capacity={BASE_CAPACITY_MBPS[link.name]} Mbps"
        )
    print("dust samples (radius avg / max, um):")
    for s in preset_dust_samples():
        print(f"  {s.name}: {s.radius_avg * 1e6:.2f} / {s.radius_max * 1e6:.2f}")
    print("permittivity (eps1, eps2):")
    for name, eps in (("region", REGION_EPS), ("dry-dust", DRY_DUST_EPS), ("wet-dust-4pct", WET_DUST_EPS)):
        print(f"  {name}: {eps.eps1}, {eps.eps2}")
    print(f"region density: {REGION_DENSITY} g/m^3")
    print("bundled scenarios: " + " ".join(bundled_scenarios()))


def cmd_run(args):
    report = run_scenario(args.scenario, out_dir=args.out, workers=args.workers)
    for path in report.written:
        print(path)


def cmd_atten(args):
    height = args.height if args.height is not None else 10.0
    medium = _medium(args, height)
    c = mie_coefficients(medium.eps)
    _print("eps1", medium.eps.eps1)
    _print("eps2", medium.eps.eps2)
    _print("c1", c.c1)
    _print("c2", c.c2)
    _print("c3", c.c3)
    _print("specific_attenuation", specific_attenuation(medium, args.freq, height), "dB/km")
    if args.dist is not None:
        alpha = path_attenuation(StormProfile.uniform(medium, args.dist), args.freq, height)
        _print("path_attenuation", alpha, "dB")


def cmd_pathloss(args):
    height = args.height if args.height is not None else 10.0
    medium = _medium(args, height)
    alpha = 0.0
    if medium is not None:
        alpha = path_attenuation(StormProfile.uniform(medium, args.dist), args.freq, height)
    loss = total_path_loss(args.freq, args.dist, alpha)
    _print("fspl", loss.fspl, "dB")
    _print("dust_attenuation", loss.dust_attenuation, "dB")
    _print("total", loss.total, "dB")


def cmd_xpd(args):
    diff = DifferentialPropagation(args.atten_h, args.atten_v, args.phase_h, args.phase_v)
    factors = depol_factors(diff, args.dist)
    _print("m", factors.m)
    _print("phi", factors.phi, "rad")
    _print("xpd", xpd(factors), "dB")


def cmd_budget(args):
    link = preset_link(args.link)
    overrides = {}
    for flag, name in (("freq", "freq"), ("dist", "distance"), ("tx_power", "tx_power"), ("height", "antenna_height")):
        if getattr(args, flag) is not None:
            overrides[name] = getattr(args, flag)
    link = link.with_(**overrides)
    medium = _medium(args, link.antenna_height)
    profile = None if medium is None else StormProfile.uniform(medium, link.distance)
    result = evaluate(link, profile)
    _print("fspl", result.path_loss.fspl, "dB")
    _print("dust_attenuation", result.path_loss.dust_attenuation, "dB")
    _print("rx_power", result.rx_power, "dBm")
    _print("margin", result.margin, "dB")
    print(f"link_up = {str(result.link_up).lower()}")
    if medium is not None:
        try:
            _print("critical_visibility", critical_visibility(link, medium), "km")
        except SandlinkError as exc:
            print(f"critical_visibility: {exc}", file=sys.stderr)
    try:
        _print("max_range", max_range(link, medium), "km")
    except SandlinkError as exc:
        print(f"max_range: {exc}", file=sys.stderr)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="sandlink",
        description="Dust and sand storm impairments on millimeter-wave point-to-point links",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("presets", help="print the reference links, dust samples and permittivities")
    p.set_defaults(func=cmd_presets)

    p = sub.add_parser("run", help="run a scenario file and write its CSV report")
    p.add_argument("scenario", help="scenario JSON file, or the name of a bundled one (e.g. fig2.json)")
    p.add_argument("--out", default=".", help="output directory")
    p.add_argument("--workers", type=int, default=1, help="threads used to evaluate grid points")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("atten", help="specific attenuation of a dust medium")
    p.add_argument("--freq", type=float, required=True, help="frequency in GHz")
    p.add_argument("--dist", type=float, default=None, help="path length in km")
    _add_medium_args(p, required=True)
    p.set_defaults(func=cmd_atten)

    p = sub.add_parser("pathloss", help="free-space plus dust path loss")
    p.add_argument("--freq", type=float, required=True, help="frequency in GHz")
    p.add_argument("--dist", type=float, required=True, help="path length in km")
    _add_medium_args(p)
    p.set_defaults(func=cmd_pathloss)

    p = sub.add_parser("xpd", help="cross-polarization discrimination over a path")
    p.add_argument("--dist", type=float, required=True, help="path length in km")
    p.add_argument("--atten-h", type=float, required=True, help="horizontal attenuation, Np/km")
    p.add_argument("--atten-v", type=float, required=True, help="vertical attenuation, Np/km")
    p.add_argument("--phase-h", type=float, required=True, help="horizontal phase constant, rad/km")
    p.add_argument("--phase-v", type=float, required=True, help="vertical phase constant, rad/km")
    p.set_defaults(func=cmd_xpd)

    p = sub.add_parser("budget", help="link budget of a preset link, optionally in a storm")
    p.add_argument("--link", default="ML-6363", choices=[l.name for l in preset_links()])
    p.add_argument("--freq", type=float, default=None, help="override frequency in GHz")
    p.add_argument("--dist", type=float, default=None, help="override path length in km")
    p.add_argument("--tx-power", type=float, default=None, help="override transmit power in dBm")
    _add_medium_args(p)
    p.set_defaults(func=cmd_budget)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except (ScenarioValidationError, InvalidInput) as exc:
        print(f"sandlink: validation error: {exc}", file=sys.stderr)
        return ScenarioValidationError.exit_code
    except ComputeError as exc:
        print(f"sandlink: compute error: {exc}", file=sys.stderr)
        return exc.exit_code
    except SandlinkError as exc:
        code = getattr(exc, "exit_code", ComputeError.exit_code)
        kind = "parse error" if code == 2 else "error"
        print(f"sandlink: {kind}: {exc}", file=sys.stderr)
        return code
    return 0


if __name__ == "__main__":
    sys.exit(main())
