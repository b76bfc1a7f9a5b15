"""Plot Q(γ) and I(a) curves from `qkd capacity` CSV output.

    qkd capacity --gamma-min 0 --gamma-max 1 --steps 41 -o capacity.csv
    for g in 0 0.1 0.25 0.4 0.5 0.75; do qkd capacity --curve $g -o curve_$g.csv; done
    python capacity.py capacity.csv curve_*.csv
"""
import csv
import sys

import matplotlib.pyplot as plt


def read(path):
    with open(path, newline="") as f:
        return list(csv.DictReader(f))


def main(sweep, *curves):
    fig, (left, right) = plt.subplots(1, 2, figsize=(10, 4))
    rows = read(sweep)
    left.plot([float(r["gamma"]) for r in rows], [float(r["q"]) for r in rows], marker=".")
    left.set_xlabel("γ")
    left.set_ylabel("Q")
    left.set_title("Amplitude-damping quantum capacity")
    for path in curves:
        rows = read(path)
        label = path.rsplit("_", 1)[-1].removesuffix(".csv")
        right.plot([float(r["a"]) for r in rows], [float(r["I"]) for r in rows], label=f"γ = {label}")
    right.axhline(0, color="grey", lw=0.5)
    right.set_xlabel("a")
    right.set_ylabel("I(A⟩B)")
    right.legend()
    fig.tight_layout()
    fig.savefig("capacity.png", dpi=150)


if __name__ == "__main__":
    main(*sys.argv[1:])
