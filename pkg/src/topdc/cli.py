"""Command-line front end.

Devices, scenarios, and sweeps are declared in an INI-style config file with
unit-suffixed values ("100 mW", "1 cm", "2.9e4 GHz"); frequencies follow the
angular convention (1 GHz = 1e9 rad/s).  Subcommands:

  rate        evaluate every [scenario:*] section and report the rates
  sweep       run a [sweep:*] section: CSV plus a log-log SVG plot
  phasematch  search a phase-matched wavelength set for a device
  bandwidth   analytic and numeric generation bandwidths for a device
  overlap     effective area and gamma from four mode-profile exports

Exit codes: 0 success, 2 config/usage errors, 3 physics errors (no root,
vanishing overlap, non-convergence), each naming the failing scenario.
"""

from __future__ import annotations

import argparse
import configparser
import json
import sys
from pathlib import Path

import numpy as np

from . import bandwidth as bw
from . import rates, sampledata
from .dispersion import DispersionError, IndexTable, build_model
from .modeoverlap import (
    ModeProfile,
    NonlinearParameterSet,
    OverlapError,
    effective_area_waveguide,
    gamma_general,
)
from .phasematch import (
    PhaseMatchError,
    RingResonance,
    RingSpec,
    WaveguideSpec,
    find_phase_matched,
)
from .units import (
    UnitError,
    angular_ghz,
    cyclic_ghz,
    parse_quantity,
    wavelength_to_omega,
)

EXIT_CONFIG = 2
EXIT_PHYSICS = 3

_BANDS = ("F", "P", "G", "S", "GBAR")

ASSUMPTIONS = {
    "frequency_convention": "angular; 1 GHz input = 1e9 rad/s",
    "escape_efficiency_default": sampledata.ESCAPE_EFFICIENCY,
    "powers": "channel (bus) powers; ring enhancement applied internally",
}


class ConfigError(Exception):
    pass


def _load_config(path: str) -> configparser.ConfigParser:
    cp = configparser.ConfigParser()
    read = cp.read(path)
    if not read:
        raise ConfigError(f"config file not found: {path}")
    return cp


def _sections(cp, prefix):
    return {
        name.split(":", 1)[1]: cp[name]
        for name in cp.sections()
        if name.startswith(prefix + ":")
    }


def _gammas_from_section(sec) -> NonlinearParameterSet:
    return NonlinearParameterSet.from_values(
        parse_quantity(sec.get("gamma_spm", "4.3")),
        parse_quantity(sec.get("gamma_xpm", "0.8")),
        parse_quantity(sec.get("gamma_topdc", "0.19")),
    )


def _build_device(name, sec, config_dir: Path):
    if sec.getboolean("sample", fallback=False):
        kind = sec.get("type", "waveguide")
        if kind == "ring":
            ring = sampledata.sample_ring(
                parse_quantity(sec.get("circumference", "750 um"))
            )
            return ring
        return sampledata.sample_waveguide(parse_quantity(sec.get("length", "1 cm")))

    kind = sec.get("type")
    gammas = _gammas_from_section(sec)
    if kind == "waveguide":
        models = {}
        centers = {}
        for band in _BANDS:
            lam_key = f"lambda_{band.lower()}"
            if lam_key not in sec:
                continue
            lam = parse_quantity(sec[lam_key])
            centers[band] = wavelength_to_omega(lam)
            table_key = f"table_{band.lower()}"
            if table_key in sec:
                table = IndexTable.from_csv(config_dir / sec[table_key])
                models[band] = build_model(table, reference_wavelength_m=lam)
        if not centers:
            raise ConfigError(f"device {name!r}: no bands declared")
        return WaveguideSpec(
            length=parse_quantity(sec.get("length", "1 cm")),
            band_centers=centers,
            gammas=gammas,
            models=models or None,
        )
    if kind == "ring":
        resonances = {}
        for band in _BANDS:
            lam_key = f"lambda_{band.lower()}"
            if lam_key not in sec:
                continue
            omega = wavelength_to_omega(parse_quantity(sec[lam_key]))
            ng = parse_quantity(sec.get(f"ng_{band.lower()}", "2.1"))
            resonances[band] = RingResonance(
                omega=omega,
                kappa=omega * ng / 299792458.0,
                q_loaded=parse_quantity(sec[f"q_{band.lower()}"]),
                group_velocity=299792458.0 / ng,
                escape_efficiency=parse_quantity(sec.get("eta", "0.5")),
            )
        if not resonances:
            raise ConfigError(f"device {name!r}: no resonances declared")
        return RingSpec(
            circumference=parse_quantity(sec.get("circumference", "750 um")),
            resonances=resonances,
            gammas=gammas,
        )
    raise ConfigError(f"device {name!r}: type must be 'waveguide' or 'ring'")


def _build_scenario(name, sec, devices) -> rates.ProcessScenario:
    dev_name = sec.get("device")
    if dev_name not in devices:
        raise ConfigError(f"scenario {name!r}: unknown device {dev_name!r}")
    tau = sec.get("tau_inv")
    detunings = {}
    for key in sec:
        if key.startswith("detuning_"):
            detunings[key.split("_", 1)[1].upper().replace("OUT", "out")] = (
                parse_quantity(sec[key])
            )
    return rates.ProcessScenario(
        device=devices[dev_name],
        process=sec.get("process"),
        pump_power=parse_quantity(sec.get("pump_power", "0 W")),
        seed_power=parse_quantity(sec.get("seed_power", "0 W")),
        detunings=detunings,
        tau_inv=parse_quantity(tau) if tau else None,
        mismatch=parse_quantity(sec.get("mismatch", "0")),
    )


def _load_scenarios(cp, config_dir):
    devices = {
        name: _build_device(name, sec, config_dir)
        for name, sec in _sections(cp, "device").items()
    }
    scenarios = {}
    for name, sec in _sections(cp, "scenario").items():
        try:
            scenarios[name] = _build_scenario(name, sec, devices)
        except (rates.RateError, ValueError) as exc:
            raise ConfigError(f"scenario {name!r}: {exc}") from exc
    return devices, scenarios


def _emit(payload: dict, args) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    if args.json and not args.out:
        sys.stdout.write(text)


def cmd_rate(args) -> int:
    cp = _load_config(args.config)
    _, scenarios = _load_scenarios(cp, Path(args.config).resolve().parent)
    if not scenarios:
        raise ConfigError("no [scenario:*] sections found")
    report = {"assumptions": ASSUMPTIONS, "scenarios": {}}
    for name, scenario in sorted(scenarios.items()):
        try:
            result = rates.evaluate(scenario)
        except (rates.RateError, bw.BandwidthError, ValueError) as exc:
            print(f"error: scenario {name!r}: {exc}", file=sys.stderr)
            return EXIT_PHYSICS
        report["scenarios"][name] = result.to_report()
        if not args.json:
            print(f"{name:24s} rate = {result.rate:12.4e} 1/s   "
                  f"efficiency = {result.efficiency:.4e}")
    _emit(report, args)
    return 0


def _sweep_values(sec):
    start = parse_quantity(sec.get("start"))
    stop = parse_quantity(sec.get("stop"))
    points = int(sec.get("points", "9"))
    if start <= 0 or stop <= start or points < 3:
        raise ConfigError("sweep needs 0 < start < stop and points >= 3")
    return np.geomspace(start, stop, points)


def _write_sweep_plot(path, param, values, rate_values):
    import matplotlib

    matplotlib.use("Agg")
    matplotlib.rcParams["svg.hashsalt"] = "topdc"
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(5, 4))
    ax.loglog(values, rate_values, "o-")
    ax.set_xlabel(param)
    ax.set_ylabel("rate (1/s)")
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def cmd_sweep(args) -> int:
    cp = _load_config(args.config)
    _, scenarios = _load_scenarios(cp, Path(args.config).resolve().parent)
    sweeps = _sections(cp, "sweep")
    names = [args.name] if args.name else sorted(sweeps)
    if not names or any(n not in sweeps for n in names):
        raise ConfigError(f"sweep section not found: {args.name!r}")
    for name in names:
        sec = sweeps[name]
        scn_name = sec.get("scenario")
        if scn_name not in scenarios:
            raise ConfigError(f"sweep {name!r}: unknown scenario {scn_name!r}")
        scenario = scenarios[scn_name]
        param = sec.get("parameter")
        values = _sweep_values(sec)
        try:
            results = rates.sweep(scenario, param, values)
            exponent = rates.scaling_exponent(scenario, param)
        except (rates.RateError, ValueError) as exc:
            print(f"error: sweep {name!r} (scenario {scn_name!r}): {exc}",
                  file=sys.stderr)
            return EXIT_PHYSICS
        prefix = Path(args.out or name)
        csv_path = prefix.with_suffix(".csv")
        with open(csv_path, "w") as fh:
            fh.write("parameter,rate,tau_inv,vacuum_power\n")
            for v, r in zip(values, results):
                tau = "" if r.tau_inv is None else f"{r.tau_inv:.9e}"
                pv = "" if r.vacuum_power is None else f"{r.vacuum_power:.9e}"
                fh.write(f"{v:.9e},{r.rate:.9e},{tau},{pv}\n")
        _write_sweep_plot(prefix.with_suffix(".svg"), param, values,
                          [r.rate for r in results])
        print(f"{name}: {param} exponent = {exponent:+.4f}  "
              f"({csv_path}, {prefix.with_suffix('.svg')})")
    return 0


def cmd_phasematch(args) -> int:
    cp = _load_config(args.config)
    devices, _ = _load_scenarios(cp, Path(args.config).resolve().parent)
    dev = devices.get(args.device)
    if dev is None:
        raise ConfigError(f"unknown device {args.device!r}")
    if not isinstance(dev, WaveguideSpec) or dev.models is None:
        raise ConfigError("phase-match search needs a waveguide with dispersion data")
    bracket = (parse_quantity(args.bracket_lo), parse_quantity(args.bracket_hi))
    fixed = {}
    if args.seed_wavelength:
        fixed["S"] = parse_quantity(args.seed_wavelength)
    if args.pump_wavelength:
        fixed["P"] = parse_quantity(args.pump_wavelength)
    try:
        result = find_phase_matched(dev.models, args.process, bracket, fixed or None)
    except (PhaseMatchError, DispersionError) as exc:
        print(f"error: device {args.device!r}: {exc}", file=sys.stderr)
        return EXIT_PHYSICS
    payload = {
        "assumptions": ASSUMPTIONS,
        "wavelengths_m": result.wavelengths,
        "residual_rad_per_m": result.residual,
        "degenerate": result.degenerate,
    }
    for band, lam in sorted(result.wavelengths.items()):
        print(f"{band:5s} lambda = {lam * 1e6:.6f} um")
    print(f"residual mismatch = {result.residual:.3e} rad/m")
    _emit(payload, args)
    return 0


def cmd_bandwidth(args) -> int:
    cp = _load_config(args.config)
    devices, _ = _load_scenarios(cp, Path(args.config).resolve().parent)
    dev = devices.get(args.device)
    if dev is None:
        raise ConfigError(f"unknown device {args.device!r}")
    payload = {"assumptions": ASSUMPTIONS}
    if isinstance(dev, RingSpec):
        gf = dev.resonances["F"].linewidth
        tau = bw.tau_ring_sp_degenerate(gf)
        payload["tau_inv_per_s"] = tau
        print(f"ring degenerate tau^-1 = {tau:.4e} 1/s "
              f"({angular_ghz(tau):.4e} GHz angular)")
        if "G" in dev.resonances:
            tau_st = bw.tau_ring_st(dev.resonances["G"].linewidth)
            payload["tau_inv_st_per_s"] = tau_st
            print(f"ring seeded tau^-1     = {tau_st:.4e} 1/s")
        _emit(payload, args)
        return 0
    if dev.models is None:
        raise ConfigError("bandwidths need dispersion data or a ring device")
    band = args.band
    model = dev.models[band].with_reference(dev.band_centers[band])
    beta2 = model.group_quantities(model.omega_ref).beta2
    try:
        if args.process == "sp":
            analytic = bw.tau_sp_wg_analytic(beta2, dev.length)
            numeric = bw.tau_sp_wg_numeric(dev.models["F"], dev.length)
        else:
            analytic = bw.tau_st_wg_analytic(beta2, dev.length)
            numeric = bw.tau_st_wg_numeric(model, dev.length)
    except bw.BandwidthError as exc:
        print(f"error: device {args.device!r}: {exc}", file=sys.stderr)
        return EXIT_PHYSICS
    payload.update(
        tau_inv_analytic_per_s=analytic.tau_inv,
        tau_inv_numeric_per_s=numeric.tau_inv,
        numeric_nodes=numeric.node_count,
        numeric_converged=numeric.converged,
    )
    for label, res in (("analytic", analytic), ("numeric", numeric)):
        print(f"{label:9s} tau^-1 = {res.tau_inv:.4e} 1/s  "
              f"({angular_ghz(res.tau_inv):.4e} GHz angular, "
              f"{cyclic_ghz(res.tau_inv):.4e} GHz cyclic)")
    if not numeric.converged:
        print("warning: quadrature did not reach the requested tolerance",
              file=sys.stderr)
    _emit(payload, args)
    return 0


def cmd_overlap(args) -> int:
    modes = [ModeProfile.from_file(p) for p in args.profiles]
    try:
        area, phase = effective_area_waveguide(modes, conjugation=args.conjugation)
    except OverlapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PHYSICS
    omegas = [m.omega for m in modes]
    n_bars = [float(np.max(m.index_map)) for m in modes]
    gamma = gamma_general(omegas, n_bars, args.chi3, area, phase)
    print(f"effective area = {area * 1e12:.6f} um^2")
    print(f"overlap phase  = {phase:+.6f} rad")
    print(f"gamma          = {abs(gamma):.6e} 1/(W m)")
    _emit(
        {"area_m2": area, "phase_rad": phase, "gamma_abs": abs(gamma)},
        args,
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="topdc",
        description="photon-triplet generation rates in waveguides and microrings",
    )
    parser.add_argument("--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", "-c", required=True, help="INI config file")
        p.add_argument("--out", help="write the JSON (or CSV/SVG prefix) here")
        p.add_argument("--json", action="store_true", help="JSON to stdout")

    p = sub.add_parser("rate", help="evaluate configured scenarios")
    common(p)
    p.set_defaults(func=cmd_rate)

    p = sub.add_parser("sweep", help="run configured parameter sweeps")
    common(p)
    p.add_argument("--name", help="run a single [sweep:NAME] section")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("phasematch", help="search phase-matched wavelengths")
    common(p)
    p.add_argument("--device", required=True)
    p.add_argument("--process", default="fff", choices=["fff", "gg_s", "dst"])
    p.add_argument("--bracket-lo", default="1.2 um")
    p.add_argument("--bracket-hi", default="2.2 um")
    p.add_argument("--seed-wavelength")
    p.add_argument("--pump-wavelength")
    p.set_defaults(func=cmd_phasematch)

    p = sub.add_parser("bandwidth", help="generation bandwidths for a device")
    common(p)
    p.add_argument("--device", required=True)
    p.add_argument("--process", default="sp", choices=["sp", "st"])
    p.add_argument("--band", default="F")
    p.set_defaults(func=cmd_bandwidth)

    p = sub.add_parser("overlap", help="effective area from mode profiles")
    p.add_argument("profiles", nargs=4)
    p.add_argument("--conjugation", default="3-dagger",
                   choices=["2-dagger", "3-dagger"])
    p.add_argument("--chi3", type=float, default=1e-21,
                   help="bulk chi3 in m^2/V^2")
    p.add_argument("--out")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_overlap)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, UnitError, configparser.Error, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
