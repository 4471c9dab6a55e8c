"""Measures of the Kronecker preprojective, regular and preinjective modules.

    python3 demos/kronecker_tables.py [p] [nmax]
"""
import sys

from grkit import models
from grkit.grmeasure import gr_measure
from grkit.quiverrep import KRONECKER
from grkit.structure import IsoClassRegistry


def main(p=2, nmax=4):
    reg = IsoClassRegistry(KRONECKER, p)
    print(f"Kronecker quiver over F_{p}")
    print(f"{'module':<18} {'dims':<8} {'measure':<16} rational")
    for n in range(1, nmax + 1):
        names = [f"K:preproj({n})", f"K:reg({n})@(1:0)", f"K:preinj({n})"]
        for name in names:
            m = models.build(models.parse_model_id(name, p), p)
            mu = gr_measure(m, reg).measure
            print(f"{name:<18} {str(m.dims):<8} {str(mu):<16} {mu.rational()}")


if __name__ == "__main__":
    args = [int(a) for a in sys.argv[1:]]
    main(*args)
