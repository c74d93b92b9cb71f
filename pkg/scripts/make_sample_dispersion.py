#!/usr/bin/env python3
"""Export the bundled synthetic effective-index tables as CSV files.

Useful as a template for the expected dispersion-data format, or as a
starting point for swapping in mode-solver exports.
"""

import argparse

from topdc import sampledata


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("outdir", nargs="?", default="dispersion_data")
    args = ap.parse_args()
    for path in sampledata.write_sample_tables(args.outdir):
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
