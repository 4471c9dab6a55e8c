"""All indecomposables of W up to a length cap, sorted by measure.

Non-split classes (see README) are starred.  Each row shows the measure, the
dimension vectors realizing it and the take-off/central/landing label.

    python3 demos/measure_poset.py [cap] [p]
"""
import sys

from grkit.grmeasure import classify_partition, measure_rational, measure_universe
from grkit.quiverrep import W
from grkit.structure import exhaustive_universe


def main(cap=5, p=2):
    reg = exhaustive_universe(W, cap, p)
    meas = measure_universe(reg)
    part = classify_partition(reg, cap, classes=reg.split_ids())
    rows = {}
    for e in reg:
        tag = f"{e.dims}{'' if e.split else '*'}"
        rows.setdefault(meas[e.id], []).append((tag, part.labels.get(e.id, "-")))
    print(f"{len(reg)} classes on W, length <= {cap}, p = {p}")
    for mu in sorted(rows, key=measure_rational):
        labels = sorted({lab for _, lab in rows[mu] if lab != "-"}) or ["unlabeled"]
        print(f"{str(mu):<18} {'/'.join(labels):<10} {' '.join(sorted({t for t, _ in rows[mu]}))}")


if __name__ == "__main__":
    args = [int(a) for a in sys.argv[1:]]
    main(*args)
