"""The translates tau^k H(1) of W: dimension vectors, measures and GR submodules.

    python3 demos/h1_orbit.py [p] [kmin] [kmax]
"""
import sys

from grkit import models
from grkit.grmeasure import gr_measure
from grkit.quiverrep import W
from grkit.structure import IsoClassRegistry


def main(p=2, kmin=-1, kmax=2):
    reg = IsoClassRegistry(W, p)
    for x, y in models.projective_line(p):
        print(f"point ({x}:{y})")
        for k in range(kmax, kmin - 1, -1):
            name = f"tau^{k}(H(1)@({x}:{y}))"
            m = models.build(models.parse_model_id(name, p), p)
            res = gr_measure(m, reg)
            subs = [reg[c].dims for c in res.gr_submodule_class_ids]
            print(f"  k={k:>2}  dims {m.dims}  measure {str(res.measure):<16} GR submodule dims {subs}")


if __name__ == "__main__":
    args = [int(a) for a in sys.argv[1:]]
    main(*args)
