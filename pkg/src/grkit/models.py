"""Named modules of W = 1 -> 2 => 3 and of the Kronecker quiver, over any prime field.

Model ids follow a small grammar::

    [W:|K:] [tau^k(] base [)]
    base := P_i | I_i | S_i | H_a | H^a | H(a)[@(x:y)] | preproj(n) | reg(n)[@(x:y)] | preinj(n)

``H_a``, ``H^a`` and ``H(a)`` are the Kronecker families carried by vertices
2 and 3 of W; on the Kronecker quiver itself the same modules are called
``preproj``, ``preinj`` and ``reg``.  A parameter ``(x:y)`` is a point of the
projective line, normalized to ``(1:mu)`` or ``(0:1)``.
"""
from __future__ import annotations

import functools
import re
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import artools
from .ffmat import zeros
from .quiverrep import KRONECKER, W, Representation
from .structure import IsoClassRegistry, is_indecomposable


class ModelError(ValueError):
    pass


QUIVERS = {"W": W, "K": KRONECKER}

#: families per quiver and the parameter they take
_FAMILIES = {
    "W": ("P", "I", "S", "H_a", "H^a", "H()", "preproj", "preinj", "reg"),
    "K": ("P", "I", "S", "preproj", "preinj", "reg"),
}


def normalize_point(x: int, y: int, p: int) -> tuple[int, int]:
    x, y = x % p, y % p
    if x == 0 and y == 0:
        raise ModelError("(0:0) is not a point of the projective line")
    if x == 0:
        return (0, 1)
    return (1, (y * pow(x, -1, p)) % p)


def projective_line(p: int) -> list[tuple[int, int]]:
    return [(1, mu) for mu in range(p)] + [(0, 1)]


@dataclass(frozen=True)
class ModelId:
    quiver: str  # "W" or "K"
    family: str  # P, I, S, H_a, H^a, H(), preproj, preinj, reg
    param: int
    point: Optional[tuple] = None  # projective-line parameter for regular families
    shift: int = 0  # tau exponent
    _src: str = field(default="", compare=False, repr=False)

    def base(self) -> str:
        f, n = self.family, self.param
        if f in ("P", "I", "S"):
            s = f"{f}_{n}"
        elif f == "H_a":
            s = f"H_{n}"
        elif f == "H^a":
            s = f"H^{n}"
        elif f == "H()":
            s = f"H({n})"
        else:
            s = f"{f}({n})"
        if self.point is not None:
            s += f"@({self.point[0]}:{self.point[1]})"
        return s

    def __str__(self) -> str:
        b = self.base()
        if self.shift == 1:
            b = f"tau({b})"
        elif self.shift:
            b = f"tau^{self.shift}({b})"
        return f"{self.quiver}:{b}"

    def shifted(self, k: int) -> "ModelId":
        return ModelId(self.quiver, self.family, self.param, self.point, self.shift + k)


_BASE = re.compile(
    r"""^(?:
        (?P<pis>[PIS])_(?P<pis_n>\d+)
      | H_(?P<hsub>\d+)
      | H\^(?P<hsup>\d+)
      | H\((?P<hpar>\d+)\)
      | (?P<kfam>preproj|preinj|reg)\((?P<kn>\d+)\)
    )(?:@\((?P<x>-?\d+):(?P<y>-?\d+)\))?$""",
    re.X,
)
_SHIFT = re.compile(r"^tau(?:\^(?P<k>[+-]?\d+))?\((?P<inner>.*)\)$")


def parse_model_id(text: str, p: Optional[int] = None) -> ModelId:
    """Parse e.g. ``W:tau^-2(P_3)``, ``W:H(2)@(1:1)``, ``K:preproj(3)``."""
    src = text
    s = text.strip().replace(" ", "")
    quiver = "W"
    if ":" in s.split("(")[0] and s[:2] in ("W:", "K:"):
        quiver, s = s[0], s[2:]
    shift = 0
    while True:
        m = _SHIFT.match(s)
        if not m:
            break
        shift += int(m.group("k")) if m.group("k") else 1
        s = m.group("inner")
    m = _BASE.match(s)
    if not m:
        raise ModelError(f"cannot parse model id {src!r}")
    point = None
    if m.group("x") is not None:
        point = (int(m.group("x")), int(m.group("y")))
        if p is not None:
            point = normalize_point(*point, p)
    if m.group("pis"):
        fam, n = m.group("pis"), int(m.group("pis_n"))
    elif m.group("hsub") is not None:
        fam, n = "H_a", int(m.group("hsub"))
    elif m.group("hsup") is not None:
        fam, n = "H^a", int(m.group("hsup"))
    elif m.group("hpar") is not None:
        fam, n = "H()", int(m.group("hpar"))
    else:
        fam, n = m.group("kfam"), int(m.group("kn"))
    if fam not in _FAMILIES[quiver]:
        raise ModelError(f"family {fam} is not defined on quiver {quiver}")
    if point is not None and fam not in ("H()", "reg"):
        raise ModelError(f"family {fam} takes no projective-line parameter")
    if fam in ("H()", "reg") and point is None:
        point = (1, 0)
    mid = ModelId(quiver, fam, n, point, shift, src)
    _check_range(mid)
    return mid


def _check_range(mid: ModelId) -> None:
    q = QUIVERS[mid.quiver]
    n = mid.param
    if mid.family in ("P", "I", "S") and not 1 <= n <= q.vertex_count:
        raise ModelError(f"vertex {n} out of range")
    if mid.family in ("H_a", "H^a") and n < 0:
        raise ModelError("a must be >= 0")
    if mid.family in ("H()", "preproj", "preinj", "reg") and n < 1:
        raise ModelError("parameter must be >= 1")


# ---------------------------------------------------------------------------
# Kronecker normal forms (maps act on columns, shape target x source)


def kronecker_preprojective(n: int) -> tuple:
    """Dims (n, n+1): the two embeddings of k^n as first / last coordinates."""
    eye = np.eye(n, dtype=np.int64)
    return np.vstack([eye, zeros(1, n)]), np.vstack([zeros(1, n), eye])


def kronecker_preinjective(n: int) -> tuple:
    """Dims (n+1, n): drop the last / first coordinate."""
    eye = np.eye(n, dtype=np.int64)
    return np.hstack([eye, zeros(n, 1)]), np.hstack([zeros(n, 1), eye])


def kronecker_regular(n: int, point: tuple, p: int) -> tuple:
    """Dims (n, n) at lambda: (I, mu I + J) for (1:mu), (J, I) for (0:1)."""
    x, y = normalize_point(*point, p)
    eye = np.eye(n, dtype=np.int64)
    shift = np.eye(n, k=1, dtype=np.int64)
    if x == 0:
        return shift, eye
    return eye, (y * eye + shift) % p


def _kronecker_pair(fam: str, n: int, point, p: int) -> tuple:
    if fam in ("H_a", "preproj"):
        return kronecker_preprojective(n) if n else (zeros(1, 0), zeros(1, 0))
    if fam in ("H^a", "preinj"):
        return kronecker_preinjective(n) if n else (zeros(0, 1), zeros(0, 1))
    return kronecker_regular(n, point, p)


def _kron_dims(fam: str, n: int) -> tuple:
    if fam in ("H_a", "preproj"):
        return (n, n + 1)
    if fam in ("H^a", "preinj"):
        return (n + 1, n)
    return (n, n)


def _w_projective(i: int, p: int) -> Representation:
    e = np.eye(2, dtype=np.int64)
    if i == 3:
        return Representation(W, p, (0, 0, 1), [zeros(0, 0), zeros(1, 0), zeros(1, 0)])
    b, c = e[:, :1], e[:, 1:]
    if i == 2:
        return Representation(W, p, (0, 1, 2), [zeros(1, 0), b, c])
    return Representation(W, p, (1, 1, 2), [np.ones((1, 1), dtype=np.int64), b, c])


def _w_injective(i: int, p: int) -> Representation:
    if i == 1:
        return Representation.simple(W, p, 1)
    if i == 2:
        return Representation(W, p, (1, 1, 0), [np.ones((1, 1), dtype=np.int64), zeros(0, 1), zeros(0, 1)])
    e = np.eye(2, dtype=np.int64)
    return Representation(W, p, (2, 2, 1), [e, e[:1, :], e[1:, :]])


def _k_projective(i: int, p: int) -> Representation:
    if i == 2:
        return Representation.simple(KRONECKER, p, 2)
    return Representation(KRONECKER, p, (1, 2), list(kronecker_preprojective(1)))


def _k_injective(i: int, p: int) -> Representation:
    if i == 1:
        return Representation.simple(KRONECKER, p, 1)
    return Representation(KRONECKER, p, (2, 1), list(kronecker_preinjective(1)))


def _build_base(mid: ModelId, p: int) -> Representation:
    q = QUIVERS[mid.quiver]
    fam, n = mid.family, mid.param
    if fam == "S":
        return Representation.simple(q, p, n)
    if fam == "P":
        return _w_projective(n, p) if mid.quiver == "W" else _k_projective(n, p)
    if fam == "I":
        return _w_injective(n, p) if mid.quiver == "W" else _k_injective(n, p)
    b, c = _kronecker_pair(fam, n, mid.point, p)
    d1, d2 = _kron_dims(fam, n)
    if mid.quiver == "K":
        return Representation(KRONECKER, p, (d1, d2), [b, c])
    return Representation(W, p, (0, d1, d2), [zeros(d1, 0), b, c])


@functools.lru_cache(maxsize=512)
def _build_cached(text: str, p: int, seed: int) -> Representation:
    mid = parse_model_id(text, p)
    rep = _build_base(mid.shifted(-mid.shift), p)
    if mid.shift:
        rep = artools.tau_iterate(rep, mid.shift)
    w = is_indecomposable(rep, seed=seed)
    if not w.indecomposable:
        raise ModelError(f"construction of {mid} is decomposable")
    return rep


def build(mid, p: int, seed: int = 0) -> Representation:
    """The representation named by ``mid`` (a ModelId or its string form).

    tau-shifted models are obtained by applying reflection functors to the
    base model.  Every result is checked indecomposable.
    """
    if isinstance(mid, str):
        mid = parse_model_id(mid, p)
    elif mid.point is not None:
        mid = ModelId(mid.quiver, mid.family, mid.param, normalize_point(*mid.point, p), mid.shift)
    _check_range(mid)
    return _build_cached(str(mid), p, seed)


# ---------------------------------------------------------------------------
# catalog


@dataclass
class Catalog:
    entries: list  # (ModelId, Representation, class id)
    registry: IsoClassRegistry
    duplicates: list  # (ModelId, ModelId it coincides with)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


def catalog_ids(p: int, caps: dict) -> list[ModelId]:
    """Deterministic list of W model ids within ``caps``.

    Keys: ``a`` (family parameter bound), ``shift`` (|tau exponent| bound).
    """
    if not caps:
        return []
    amax = caps.get("a", 0)
    smax = caps.get("shift", 0)
    bases = [ModelId("W", f, i) for f in ("S", "P", "I") for i in (1, 2, 3)]
    for a in range(0, amax + 1):
        bases.append(ModelId("W", "H_a", a))
        bases.append(ModelId("W", "H^a", a))
    for a in range(1, amax + 1):
        for pt in projective_line(p):
            bases.append(ModelId("W", "H()", a, pt))
    ids = []
    for b in bases:
        for k in sorted(range(-smax, smax + 1), key=lambda k: (abs(k), -k)):
            ids.append(b.shifted(k))
    return ids


def catalog(p: int, caps: dict, seed: int = 0, max_total: int = 40) -> Catalog:
    """Every constructible catalog model, registered in a fresh registry.

    Entries isomorphic to an earlier entry are listed under ``duplicates``;
    shifts that hit a projective or injective, and modules longer than
    ``max_total``, are left out.
    """
    reg = IsoClassRegistry(W, p, seed)
    entries, dups = [], []
    first: dict[int, ModelId] = {}
    for mid in catalog_ids(p, caps):
        try:
            base = build(mid.shifted(-mid.shift), p, seed)
            x = base
            for _ in range(abs(mid.shift)):
                x = (artools.tau_plus if mid.shift > 0 else artools.tau_minus)(x)
                if x.total > max_total:
                    raise OverflowError
            rep = build(mid, p, seed)
        except (artools.ProjectiveSignal, artools.InjectiveSignal, OverflowError):
            continue
        cid = reg.classify(rep)
        if cid in first:
            dups.append((mid, first[cid]))
            continue
        first[cid] = mid
        entries.append((mid, rep, cid))
    return Catalog(entries, reg, dups)
