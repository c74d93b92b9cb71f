#!/usr/bin/env python3
"""Print the sample-device triplet rates and the fitted scaling exponents.

Reproduces the two summary tables for the bundled waveguide/ring sample:
first the six generation rates (three processes, both devices), then the
power-law exponents of each rate in length, circumference, and quality
factors.
"""

import argparse

from topdc import rates, sampledata
from topdc.units import parse_quantity


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--pump-power", default="100 mW")
    ap.add_argument("--seed-power-wg", default="10 mW")
    ap.add_argument("--seed-power-ring", default="20 uW")
    args = ap.parse_args()

    pp = parse_quantity(args.pump_power)
    ps_wg = parse_quantity(args.seed_power_wg)
    ps_ring = parse_quantity(args.seed_power_ring)

    wg = sampledata.sample_waveguide()
    ring = sampledata.sample_ring()
    tau_sp = parse_quantity("2.9e4 GHz")  # full numeric dispersion integral
    tau_st = parse_quantity("4.0e4 GHz")

    scenarios = {
        "waveguide sp": rates.ProcessScenario(wg, "sp_deg", pp, tau_inv=tau_sp),
        "waveguide st": rates.ProcessScenario(wg, "st", pp, ps_wg, tau_inv=tau_st),
        "waveguide dst": rates.ProcessScenario(wg, "dst", pp, ps_wg),
        "ring sp": rates.ProcessScenario(ring, "sp_deg", pp),
        "ring st": rates.ProcessScenario(ring, "st", pp, ps_ring),
        "ring dst": rates.ProcessScenario(ring, "dst", pp, ps_ring),
    }
    print("rates:")
    for name, scenario in scenarios.items():
        r = rates.evaluate(scenario)
        print(f"  {name:14s} {r.rate:11.3e} 1/s")

    print("scaling exponents:")
    sweeps = [
        ("waveguide sp", "length"),
        ("waveguide st", "length"),
        ("waveguide dst", "length"),
        ("ring sp", "circumference"),
        ("ring st", "circumference"),
        ("ring dst", "circumference"),
        ("ring sp", "q:F"),
        ("ring sp", "q:P"),
        ("ring st", "q:G"),
        ("ring st", "q:S"),
        ("ring dst", "q:S"),
        ("ring dst", "q:GBAR"),
    ]
    for name, param in sweeps:
        e = rates.scaling_exponent(scenarios[name], param)
        print(f"  {name:14s} {param:14s} {e:+.3f}")


if __name__ == "__main__":
    main()
