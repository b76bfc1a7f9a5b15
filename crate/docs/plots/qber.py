"""QBER and key length of simulated runs against depolarizing strength.

    for p in 0 0.02 0.04 0.06 0.08 0.1 0.12; do
      sed "s/\"p\": [0-9.]*/\"p\": $p/" run.json > cfg_$p.json
      qkd simulate cfg_$p.json -o run_$p.json
    done
    python qber.py run_*.json
"""
import json
import sys

import matplotlib.pyplot as plt


def main(*paths):
    points = []
    for path in paths:
        with open(path) as f:
            run = json.load(f)
        p = float(path.rsplit("_", 1)[-1].removesuffix(".json"))
        points.append((p, run["qber_estimate"], run["key_length"] / run["M"]))
    points.sort()
    fig, ax = plt.subplots()
    ax.plot([p for p, _, _ in points], [q for _, q, _ in points], marker="o", label="estimated QBER")
    ax.set_xlabel("depolarizing p")
    ax.set_ylabel("QBER")
    twin = ax.twinx()
    twin.plot([p for p, _, _ in points], [l for _, _, l in points], marker="s", color="C1", label="l / M")
    twin.set_ylabel("key bits per signal")
    fig.legend(loc="upper center")
    fig.tight_layout()
    fig.savefig("qber.png", dpi=150)


if __name__ == "__main__":
    main(*sys.argv[1:])
