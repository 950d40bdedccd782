"""Wavefunction samples behind the two wavefunction figures.

Writes one ``x,psi`` CSV per (family, level, lambda) for the ground and
first excited state at lambda = 0, 1, 10, 100, 1000, plus a summary of
node counts and RMS widths.
"""
import argparse
import csv
from fractions import Fraction
from pathlib import Path

from anharmonic import report
from anharmonic.config import RunConfig, format_lambda

LAMBDAS = [Fraction(0), Fraction(1), Fraction(10), Fraction(100), Fraction(1000)]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("out", nargs="?", default="results/figures")
    parser.add_argument("--samples", type=int, default=2000)
    parser.add_argument("--xmax", type=float, default=5.0)
    args = parser.parse_args()

    out = Path(args.out)
    config = RunConfig()
    summary = []
    for family, solve in (("howf", report.howf_result), ("ppewf", report.ppewf_result)):
        for n in (0, 1):
            for lam in LAMBDAS:
                res = solve(config, n, lam)
                s = report.sample_wavefunction(res, args.xmax, args.samples)
                name = f"{family}_n{n}_lambda{format_lambda(lam).replace('/', '_')}.csv"
                report.emit(s, "csv", out / name)
                summary.append({"family": family, "n": n, "lambda": format_lambda(lam),
                                "energy": f"{res.energy:.6g}", "nodes": s.nodes,
                                "rms_width": f"{s.rms_width:.6g}"})
                print(f"{family} n={n} lambda={format_lambda(lam):>4}  E={res.energy:.6f}  "
                      f"nodes={s.nodes}  rms={s.rms_width:.5f}")
    with (out / "summary.csv").open("w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(summary[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(summary)


if __name__ == "__main__":
    main()
