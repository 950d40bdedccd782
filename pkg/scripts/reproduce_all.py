"""Regenerate every table plus the run record into one directory.

    python scripts/reproduce_all.py [OUT_DIR] [--jobs N]
"""
import argparse
import sys

from anharmonic.cli import run


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("out", nargs="?", default="results")
    parser.add_argument("--jobs", type=int, default=1)
    args = parser.parse_args()
    code = run(["table", "all", "--out", args.out, "--jobs", str(args.jobs)])
    if code == 0:
        code = run(["selfcheck"])
    sys.exit(code)


if __name__ == "__main__":
    main()
