#!/usr/bin/env python3
"""Write every bundled example instance as JSON files (default: ./instances)."""

import argparse

from maxtorus.cli import main as cli_main


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--dir", default="instances")
    args = parser.parse_args()
    for name in ("hopf", "fulton7", "cp2", "cp1xcp1", "moment-angle-cube"):
        cli_main(["example", name, "--dir", args.dir])


if __name__ == "__main__":
    main()
