"""Plot the optimised finite-key rate against the number of signals.

    qkd rate --qber 0.01 --sweep M=1e4:1e9:26 -o rate.csv
    python rate.py rate.csv 0.01
"""
import csv
import math
import sys

import matplotlib.pyplot as plt


def h(x):
    return 0.0 if x <= 0 or x >= 1 else -x * math.log2(x) - (1 - x) * math.log2(1 - x)


def main(path, qber="0.01", f_ec="1.1"):
    q, f = float(qber), float(f_ec)
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    m = [float(r["M"]) for r in rows]
    r = [float(r["r_per_signal"]) for r in rows]
    plt.semilogx(m, r, marker=".", label="finite key")
    plt.axhline(1 - h(q) - f * h(q), ls="--", color="grey", label="asymptotic")
    plt.xlabel("M (signals)")
    plt.ylabel("key bits per signal")
    plt.legend()
    plt.tight_layout()
    plt.savefig("rate.png", dpi=150)


if __name__ == "__main__":
    main(*sys.argv[1:])
