"""Indecomposability, isomorphism, submodule enumeration and the iso-class registry."""
from __future__ import annotations

import itertools
import json
import os
import threading
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

import numpy as np

from . import _poly, ffmat
from .ffmat import EnumerationBudgetExceeded, Subspace, matmul, zeros
from .quiverrep import (
    Morphism,
    Quiver,
    Representation,
    Subrep,
    compose,
    hom_space,
    subrep_from_subspaces,
)

#: max |End(M)| for which every element may be inspected
EXHAUSTIVE_END_CAP = 1 << 16
#: random End elements tried before a verdict falls back to exhaustion
N_ITER = 256
#: default cap on submodule candidates of one enumeration
DEFAULT_SUBMODULE_CAP = 1 << 18
#: default cap on normal-form tuples per dimension vector in universe builds
DEFAULT_BUDGET = 1 << 24


def default_budget() -> int:
    env = os.environ.get("GRKIT_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


class ZeroModule(ValueError):
    pass


class NotIndecomposable(ValueError):
    pass


# ---------------------------------------------------------------------------
# endomorphism algebra


def _blockdiag(phi: Morphism) -> np.ndarray:
    return ffmat.block_diag(list(phi))


class EndAlgebra:
    """End(M) with a basis of endomorphisms and lazily computed structure constants."""

    def __init__(self, module: Representation):
        if module.is_zero():
            raise ZeroModule("End of the zero module")
        self.module = module
        self.p = module.p
        self.basis = hom_space(module, module).basis
        self.matrices = [_blockdiag(b) for b in self.basis]
        self._vecs = np.stack([m.ravel() for m in self.matrices], axis=1)  # n^2 x d
        self._table: Optional[np.ndarray] = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords(self, mats: Sequence[np.ndarray]) -> np.ndarray:
        """Coordinates (rows) of algebra elements given as n x n matrices."""
        if not len(mats):
            return zeros(0, self.dim)
        rhs = np.stack([m.ravel() for m in mats], axis=1)
        x = ffmat.solve(self._vecs, rhs, self.p)
        if x is None:
            raise ValueError("matrix is not an endomorphism")
        return x.T

    def element(self, coeffs) -> np.ndarray:
        c = np.asarray(coeffs, dtype=np.int64)
        n = self.module.total
        return ((self._vecs @ c) % self.p).reshape(n, n)

    @property
    def mult_table(self) -> np.ndarray:
        """T[i, j, k]: coefficient of b_k in b_i b_j."""
        if self._table is None:
            d = self.dim
            prods = [matmul(a, b, self.p) for a in self.matrices for b in self.matrices]
            self._table = self.coords(prods).reshape(d, d, d)
        return self._table

    def multiply(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Product of coordinate rows x (k x d) and y (d,) or (l x d) -> all pairwise products."""
        t = self.mult_table
        return np.einsum("ai,bj,ijk->abk", x, y, t).reshape(-1, self.dim) % self.p


def end_algebra(m: Representation) -> EndAlgebra:
    return EndAlgebra(m)


# ---------------------------------------------------------------------------
# indecomposability


@dataclass
class DecompositionWitness:
    indecomposable: bool
    confidence: str = "certified"  # or "probabilistic"
    parts: Optional[tuple] = None  # (Subrep, Subrep) when split
    end_dim: int = 0
    residue_degree: Optional[int] = None  # dim End/rad when certified indecomposable

    @property
    def absolutely_indecomposable(self) -> Optional[bool]:
        if not self.indecomposable or self.residue_degree is None:
            return None
        return self.residue_degree == 1

    def __bool__(self) -> bool:
        return self.indecomposable


def minimal_polynomial(g: np.ndarray, p: int) -> list:
    n = g.shape[0]
    powers = [np.eye(n, dtype=np.int64)]
    while True:
        nxt = matmul(powers[-1], g, p)
        a = np.stack([x.ravel() for x in powers], axis=1)
        x = ffmat.solve(a, nxt.ravel().reshape(-1, 1), p)
        if x is not None:
            return [(-int(c)) % p for c in x[:, 0]] + [1]
        powers.append(nxt)


def _idempotent_split(g: np.ndarray, p: int, rng) -> Optional[np.ndarray]:
    """A nontrivial idempotent in F_p[g] when g's minimal polynomial has two coprime factors.

    Covers the Fitting split (factor x against the rest) as a special case.
    """
    mp = minimal_polynomial(g, p)
    fac = _poly.factor(mp, p, rng)
    if len(fac) < 2:
        return None
    q, e = fac[0]
    a = [1]
    for _ in range(e):
        a = _poly.mul(a, q, p)
    b = _poly.divmod_(mp, a, p)[0]
    d, u, _ = _poly.extgcd(a, b, p)
    assert d == [1]
    return _poly.evaluate_matrix(_poly.mul(u, a, p), g, p)


def _split_from_idempotent(m: Representation, e: np.ndarray) -> tuple:
    p = m.p
    offs = m.offsets()
    one_minus = (np.eye(e.shape[0], dtype=np.int64) - e) % p
    parts_a, parts_b = [], []
    for v, d in enumerate(m.dims):
        blk = slice(offs[v], offs[v] + d)
        parts_a.append(Subspace.from_columns(e[blk, blk], p) if d else Subspace.zero(0, p))
        parts_b.append(Subspace.from_columns(one_minus[blk, blk], p) if d else Subspace.zero(0, p))
    return subrep_from_subspaces(m, parts_a), subrep_from_subspaces(m, parts_b)


def verify_split(m: Representation, a: Subrep, b: Subrep) -> bool:
    if a.total == 0 or b.total == 0:
        return False
    for u, w, d in zip(a.parts, b.parts, m.dims):
        if u.intersection(w).dim != 0 or u.sum(w).dim != d:
            return False
    return True


def _nil_closure(alg: EndAlgebra, gens: np.ndarray) -> np.ndarray:
    """Basis rows (RREF coordinates) of the two-sided ideal generated by ``gens``."""
    p, d = alg.p, alg.dim
    basis = np.eye(d, dtype=np.int64)
    cur, _ = ffmat.rref(gens, p)
    cur = cur[np.any(cur, axis=1)]
    while True:
        if cur.shape[0] == 0:
            return cur
        new = np.vstack([cur, alg.multiply(cur, basis), alg.multiply(basis, cur)])
        r, rk = ffmat.rref(new, p)
        r = r[:rk]
        if rk == cur.shape[0]:
            return r
        cur = r


def _is_nilpotent_ideal(alg: EndAlgebra, ideal: np.ndarray) -> bool:
    p = alg.p
    power = ideal
    for _ in range(alg.module.total + 1):
        if power.shape[0] == 0:
            return True
        prod = alg.multiply(power, ideal)
        r, rk = ffmat.rref(prod, p)
        if rk == power.shape[0]:
            return False
        power = r[:rk]
    return power.shape[0] == 0


def is_indecomposable(
    m: Representation,
    seed: int = 0,
    n_iter: int = N_ITER,
    exhaustive_cap: int = EXHAUSTIVE_END_CAP,
) -> DecompositionWitness:
    """Decide whether ``m`` is indecomposable.

    A split is always returned with explicit complementary subrepresentations.
    An indecomposable verdict is ``certified`` once a nilpotent ideal I of
    End(M) is found with End/I generated by a single element with irreducible
    minimal polynomial (so End/I is a field and End is local), or when every
    element of a small End has been inspected.
    """
    if m.is_zero():
        raise ZeroModule("the zero module is neither decomposable nor indecomposable")
    p = m.p
    alg = EndAlgebra(m)
    d = alg.dim
    rng = np.random.default_rng(seed)
    prng = __import__("random").Random(seed)
    if d == 1:
        return DecompositionWitness(True, "certified", end_dim=1, residue_degree=1)

    nil_gens = zeros(0, d)
    ideal = zeros(0, d)
    local_possible = True

    def trials() -> Iterator[np.ndarray]:
        eye = np.eye(d, dtype=np.int64)
        for i in range(d):
            yield eye[i]
        for i, j in itertools.combinations(range(d), 2):
            yield (eye[i] + eye[j]) % p
        for _ in range(n_iter):
            yield rng.integers(0, p, size=d)

    for coeffs in trials():
        g = alg.element(coeffs)
        e = _idempotent_split(g, p, prng)
        if e is not None:
            a, b = _split_from_idempotent(m, e)
            assert verify_split(m, a, b)
            return DecompositionWitness(False, "certified", (a, b), end_dim=d)
        if not local_possible:
            continue
        (q, _), = _poly.factor(minimal_polynomial(g, p), p, prng)
        qg = _poly.evaluate_matrix(q, g, p)
        if qg.any():
            nil_gens = np.vstack([nil_gens, alg.coords([qg])])
            ideal = _nil_closure(alg, nil_gens)
            if not _is_nilpotent_ideal(alg, ideal):
                local_possible = False
                continue
        if _poly.deg(q) == d - ideal.shape[0]:
            return DecompositionWitness(True, "certified", end_dim=d, residue_degree=_poly.deg(q))

    if p**d <= exhaustive_cap:
        for coeffs in itertools.product(range(p), repeat=d):
            e = _idempotent_split(alg.element(coeffs), p, prng)
            if e is not None:
                a, b = _split_from_idempotent(m, e)
                return DecompositionWitness(False, "certified", (a, b), end_dim=d)
        return DecompositionWitness(True, "certified", end_dim=d)
    return DecompositionWitness(True, "probabilistic", end_dim=d)


# ---------------------------------------------------------------------------
# isomorphism


def iso_test(m: Representation, n: Representation, check: bool = False) -> Optional[Morphism]:
    """An isomorphism m -> n or None; both arguments must be indecomposable.

    For indecomposable M the ring End(M) is local, so M and N are isomorphic
    exactly when some composite psi_j o phi_i of basis morphisms is invertible.
    """
    if check:
        for x in (m, n):
            if not is_indecomposable(x):
                raise NotIndecomposable("iso_test needs indecomposable inputs")
    if m.quiver.arrows != n.quiver.arrows or m.p != n.p or m.dims != n.dims:
        return None
    if m == n:
        return tuple(np.eye(d, dtype=np.int64) for d in m.dims)
    p = m.p
    hmn = hom_space(m, n).basis
    if not hmn:
        return None
    hnm = hom_space(n, m).basis
    for phi in hmn:
        if all(ffmat.is_invertible(a, p) for a in phi if a.size):
            return phi
    for phi in hmn:
        for psi in hnm:
            comp = compose(psi, phi, p)
            if all(ffmat.is_invertible(a, p) for a in comp if a.size):
                return phi
    return None


# ---------------------------------------------------------------------------
# submodules


def submodule_candidate_estimate(m: Representation, indecomposable_only: bool) -> int:
    est = 1
    for v in m.quiver.vertices:
        if indecomposable_only and m.quiver.is_sink(v):
            continue
        est *= ffmat.count_subspaces(m.dim_at(v), m.p)
    return est


def _image(m: Representation, v: int, parts: dict) -> Subspace:
    p = m.p
    cols = [matmul(m.maps[i], parts[m.quiver.arrows[i][0]].basis.T, p) for i in m.quiver.in_arrows(v)]
    span = np.hstack(cols) if cols else zeros(m.dim_at(v), 0)
    return Subspace(span.T, p, m.dim_at(v))


def iter_submodule_parts(m: Representation, indecomposable_only: bool = False) -> Iterator[tuple]:
    """Per-vertex subspace tuples of submodules, chosen in topological order.

    At each vertex only superspaces of the arrow images already chosen are
    considered, so closure holds by construction.  With
    ``indecomposable_only`` two necessary conditions for a non-simple
    indecomposable submodule Y are imposed: Y_v meets the kernel of the
    outgoing maps only inside the incoming image (so Y_v equals the image at
    sinks); simple submodules are produced separately.
    """
    q = m.quiver
    order = q.topological_order
    kernels = {
        v: ffmat.kernel_basis(m.out_map(v), m.p) if q.out_arrows(v) else Subspace.full(m.dim_at(v), m.p)
        for v in q.vertices
    }

    def rec(idx: int, parts: dict):
        if idx == len(order):
            yield tuple(parts[v] for v in q.vertices)
            return
        v = order[idx]
        req = _image(m, v, parts)
        if indecomposable_only and q.is_sink(v):
            options = [req]
        else:
            options = ffmat.enumerate_subspaces(m.dim_at(v), m.p, containing=req, cap=1 << 62)
        for u in options:
            if indecomposable_only and not req.contains(u.intersection(kernels[v])):
                continue
            parts[v] = u
            yield from rec(idx + 1, parts)
        parts.pop(v, None)

    yield from rec(0, {})
    if indecomposable_only:
        for v in q.vertices:
            for line in ffmat.enumerate_subspaces(m.dim_at(v), m.p, dim=1, cap=1 << 62):
                if kernels[v].contains(line):
                    yield tuple(line if w == v else Subspace.zero(m.dim_at(w), m.p) for w in q.vertices)


def enumerate_submodules(
    m: Representation,
    only_indecomposable: bool = False,
    proper_only: bool = False,
    cap: int = DEFAULT_SUBMODULE_CAP,
    seed: int = 0,
) -> list[Subrep]:
    """Every subrepresentation of ``m`` exactly once (zero included unless filtered)."""
    est = submodule_candidate_estimate(m, only_indecomposable)
    if est > cap:
        raise EnumerationBudgetExceeded(est, cap, "submodule candidates")
    out = []
    for parts in iter_submodule_parts(m, only_indecomposable):
        sub = subrep_from_subspaces(m, parts, check=False)
        if proper_only and not sub.is_proper():
            continue
        if only_indecomposable:
            if sub.total == 0 or not is_indecomposable(sub.rep, seed=seed):
                continue
        out.append(sub)
    return out


# ---------------------------------------------------------------------------
# registry


def _probe_modules(quiver: Quiver, p: int) -> list[Representation]:
    """Indecomposables of length <= 2, used as Hom-dimension probes."""
    probes = [Representation.simple(quiver, p, v) for v in quiver.vertices]
    pairs = sorted({(s, t) for s, t in quiver.arrows})
    for s, t in pairs:
        idx = [i for i, a in enumerate(quiver.arrows) if a == (s, t)]
        dims = [0] * quiver.vertex_count
        dims[s - 1] = dims[t - 1] = 1
        for line in ffmat.enumerate_subspaces(len(idx), p, dim=1):
            vals = {i: int(c) for i, c in zip(idx, line.basis[0])}
            maps = [np.array([[vals.get(i, 0)]]) if i in vals else zeros(dims[b - 1], dims[a - 1])
                    for i, (a, b) in enumerate(quiver.arrows)]
            probes.append(Representation(quiver, p, dims, maps))
    return probes


def fingerprint(m: Representation, probes: Sequence[Representation] = ()) -> tuple:
    """Cheap isomorphism invariants: arrow, vertex and path ranks plus Hom dims."""
    p = m.p
    q = m.quiver
    ranks = [ffmat.rank(a, p) for a in m.maps]
    vranks = [(ffmat.rank(m.in_map(v), p), ffmat.rank(m.out_map(v), p)) for v in q.vertices]
    paths = []
    for i, (s, t) in enumerate(q.arrows):
        for j in q.out_arrows(t):
            paths.append(ffmat.rank(matmul(m.maps[j], m.maps[i], p), p))
    homs = tuple((hom_space(x, m).dim, hom_space(m, x).dim) for x in probes)
    return (m.dims, tuple(ranks), tuple(vranks), tuple(paths), homs)


@dataclass
class ClassEntry:
    id: int
    rep: Representation
    absolutely_indecomposable: Optional[bool]
    confidence: str
    fingerprint: tuple = field(repr=False, default=())
    _split: Optional[bool] = field(repr=False, default=None)

    @property
    def dims(self) -> tuple:
        return self.rep.dims

    @property
    def split(self) -> bool:
        """Absolutely indecomposable with rational pencils along its tau-orbit.

        Such classes behave as over an algebraically closed field as far as
        the measure checks here can tell; see has_rational_pencil_orbit.
        """
        if self._split is None:
            self._split = bool(self.absolutely_indecomposable) and has_rational_pencil_orbit(self.rep)
        return self._split


class IsoClassRegistry:
    """Canonical store of indecomposable representatives, keyed by dimension vector.

    No two stored representatives are isomorphic.  All access goes through
    one re-entrant lock; ``memo`` holds per-class results of other modules.
    """

    def __init__(self, quiver: Quiver, p: int, seed: int = 0):
        self.quiver = quiver
        self.p = p
        self.seed = seed
        self.entries: list[ClassEntry] = []
        self._by_print: dict[tuple, list[int]] = {}
        self._by_key: dict = {}
        self._probes = _probe_modules(quiver, p)
        self.memo: dict[int, object] = {}
        self.skipped: list[tuple] = []
        self.lock = threading.RLock()

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(list(self.entries))

    def __getitem__(self, cid: int) -> ClassEntry:
        return self.entries[cid]

    def split_ids(self) -> list[int]:
        return [e.id for e in self.entries if e.split]

    def by_dims(self, dims: Sequence[int]) -> list[ClassEntry]:
        dims = tuple(dims)
        return [e for e in self.entries if e.dims == dims]

    def fingerprint(self, m: Representation) -> tuple:
        return fingerprint(m, self._probes)

    def find(self, m: Representation) -> Optional[int]:
        with self.lock:
            cid = self._by_key.get(m.key())
            if cid is not None:
                return cid
            fp = self.fingerprint(m)
            for cid in self._by_print.get(fp, []):
                if iso_test(self.entries[cid].rep, m) is not None:
                    self._by_key[m.key()] = cid
                    return cid
            return None

    def classify(self, m: Representation, witness: Optional[DecompositionWitness] = None) -> int:
        """Class id of indecomposable ``m``; inserts a new representative if needed."""
        if m.quiver.arrows != self.quiver.arrows or m.p != self.p:
            raise ValueError("representation does not belong to this registry")
        with self.lock:
            cid = self._by_key.get(m.key())
            if cid is not None:
                return cid
            fp = self.fingerprint(m)
            for cid in self._by_print.get(fp, []):
                if iso_test(self.entries[cid].rep, m) is not None:
                    self._by_key[m.key()] = cid
                    return cid
            if witness is None:
                witness = is_indecomposable(m, seed=self.seed)
            if not witness.indecomposable:
                raise NotIndecomposable(f"cannot register a decomposable module {m}")
            cid = len(self.entries)
            self.entries.append(ClassEntry(cid, m, witness.absolutely_indecomposable, witness.confidence, fp))
            self._by_print.setdefault(fp, []).append(cid)
            self._by_key[m.key()] = cid
            return cid

    # -- checkpoints -----------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "classes": [
                {
                    "absolutely_indecomposable": e.absolutely_indecomposable,
                    "confidence": e.confidence,
                    "dims": list(e.dims),
                    "id": e.id,
                    "maps": e.rep.to_dict()["maps"],
                }
                for e in self.entries
            ],
            "p": self.p,
            "quiver": self.quiver.to_dict(),
            "seed": self.seed,
            "skipped": [{"dims": list(d), "estimate": est} for d, est in self.skipped],
        }

    def export_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=1)

    @classmethod
    def import_json(cls, text: str, quiver: Optional[Quiver] = None) -> "IsoClassRegistry":
        data = json.loads(text)
        rep_quiver = Representation.from_dict(
            {"quiver": data["quiver"], "p": data["p"], "dims": [0] * data["quiver"]["vertices"], "maps": {}}
        ).quiver
        quiver = quiver or rep_quiver
        reg = cls(quiver, data["p"], data.get("seed", 0))
        for c in sorted(data["classes"], key=lambda c: c["id"]):
            rep = Representation.from_dict(
                {"quiver": data["quiver"], "p": data["p"], "dims": c["dims"], "maps": c["maps"]}
            )
            rep = Representation(quiver, rep.p, rep.dims, rep.maps)
            fp = reg.fingerprint(rep)
            reg.entries.append(ClassEntry(c["id"], rep, c["absolutely_indecomposable"], c["confidence"], fp))
            reg._by_print.setdefault(fp, []).append(c["id"])
            reg._by_key[rep.key()] = c["id"]
        reg.skipped = [(tuple(s["dims"]), s["estimate"]) for s in data.get("skipped", [])]
        return reg


def registry_classify(reg: IsoClassRegistry, m: Representation) -> int:
    return reg.classify(m)


# ---------------------------------------------------------------------------
# exhaustive universes


def _normalized_vertices(q: Quiver, dims: Sequence[int]) -> tuple[list[int], list[int]]:
    sinks = [v for v in q.vertices if q.is_sink(v) and q.in_arrows(v) and dims[v - 1] > 0]
    sources = [
        v for v in q.vertices
        if q.is_source(v) and q.out_arrows(v) and dims[v - 1] > 0
        and not any(q.arrows[i][1] in sinks for i in q.out_arrows(v))
    ]
    return sinks, sources


def normal_form_estimate(q: Quiver, dims: Sequence[int], p: int) -> int:
    sinks, sources = _normalized_vertices(q, dims)
    fixed = set()
    est = 1
    for v in sinks:
        width = sum(dims[q.arrows[i][0] - 1] for i in q.in_arrows(v))
        est *= ffmat.gaussian_binomial(width, dims[v - 1], p)
        fixed.update(q.in_arrows(v))
    for v in sources:
        height = sum(dims[q.arrows[i][1] - 1] for i in q.out_arrows(v))
        est *= ffmat.gaussian_binomial(height, dims[v - 1], p)
        fixed.update(q.out_arrows(v))
    free = sum(dims[s - 1] * dims[t - 1] for i, (s, t) in enumerate(q.arrows) if i not in fixed)
    return est * p**free


def raw_tuple_count(q: Quiver, dims: Sequence[int], p: int) -> int:
    return p ** sum(dims[s - 1] * dims[t - 1] for s, t in q.arrows)


def normal_form_tuples(q: Quiver, dims: Sequence[int], p: int) -> Iterator[Representation]:
    """Arrow-matrix tuples covering every non-simple indecomposable of ``dims``.

    An indecomposable that is not simple has surjective combined incoming map
    at each sink and injective combined outgoing map at each source.  Up to
    the base change at such a vertex these maps are fixed by a subspace, so the
    tuples range over Grassmannians at normalized vertices and over all
    matrices on the remaining arrows.
    """
    dims = tuple(dims)
    sinks, sources = _normalized_vertices(q, dims)
    choices = []  # (arrow ids, generator of {arrow: matrix})
    fixed = set()

    def sink_options(v):
        arrows = q.in_arrows(v)
        widths = [dims[q.arrows[i][0] - 1] for i in arrows]
        for sub in ffmat.enumerate_subspaces(sum(widths), p, dim=dims[v - 1], cap=1 << 62):
            out, c = {}, 0
            for i, w in zip(arrows, widths):
                out[i] = sub.basis[:, c:c + w]
                c += w
            yield out

    def source_options(v):
        arrows = q.out_arrows(v)
        heights = [dims[q.arrows[i][1] - 1] for i in arrows]
        for sub in ffmat.enumerate_subspaces(sum(heights), p, dim=dims[v - 1], cap=1 << 62):
            out, c = {}, 0
            cols = sub.basis.T
            for i, h in zip(arrows, heights):
                out[i] = cols[c:c + h, :]
                c += h
            yield out

    for v in sinks:
        choices.append(lambda v=v: sink_options(v))
        fixed.update(q.in_arrows(v))
    for v in sources:
        choices.append(lambda v=v: source_options(v))
        fixed.update(q.out_arrows(v))
    free = [i for i in range(len(q.arrows)) if i not in fixed]

    def free_options(i):
        s, t = q.arrows[i]
        shape = (dims[t - 1], dims[s - 1])
        for vals in itertools.product(range(p), repeat=shape[0] * shape[1]):
            yield {i: np.array(vals, dtype=np.int64).reshape(shape)}

    for i in free:
        choices.append(lambda i=i: free_options(i))

    def rec(k, acc):
        if k == len(choices):
            maps = [acc[i] for i in range(len(q.arrows))]
            yield Representation(q, p, dims, maps)
            return
        for opt in choices[k]():
            acc.update(opt)
            yield from rec(k + 1, acc)

    yield from rec(0, {})


def self_duality(q: Quiver) -> Optional[tuple[dict, list]]:
    """A vertex permutation identifying the opposite quiver with ``q``.

    Returns (vertex map, arrow map) so that arrow i = (s, t) of the opposite
    quiver, read as (t, s), lands on arrow ``amap[i]`` = (vmap[t], vmap[s])
    of ``q``; None when no order-reversing relabeling works (e.g. for W).
    """
    for perm in itertools.permutations(q.vertices):
        vmap = dict(zip(q.vertices, perm))
        free = list(range(len(q.arrows)))
        amap = []
        for s, t in q.arrows:
            j = next((j for j in free if q.arrows[j] == (vmap[t], vmap[s])), None)
            if j is None:
                break
            free.remove(j)
            amap.append(j)
        else:
            return vmap, amap
    return None


def dual_rep(m: Representation, duality: tuple) -> Representation:
    """The vector-space dual of ``m``, relabeled as a representation of the same quiver."""
    vmap, amap = duality
    q = m.quiver
    dims = [0] * q.vertex_count
    for v in q.vertices:
        dims[vmap[v] - 1] = m.dims[v - 1]
    maps = [None] * len(q.arrows)
    for i, a in enumerate(m.maps):
        maps[amap[i]] = a.T
    return Representation(q, m.p, dims, maps)


def _dual_dims(dims: Sequence[int], duality: tuple) -> tuple:
    vmap = duality[0]
    out = [0] * len(dims)
    for v, w in vmap.items():
        out[w - 1] = dims[v - 1]
    return tuple(out)


def enumeration_plan(q: Quiver, dims: Sequence[int], p: int) -> tuple[int, Optional[tuple]]:
    """Cheapest normal-form enumeration: (estimate, duality or None).

    For self-dual quivers (the Kronecker quiver) the classes of ``dims`` are
    the duals of the classes of the dual dimension vector, which may have a
    much smaller normal-form family.
    """
    est = normal_form_estimate(q, dims, p)
    duality = self_duality(q)
    if duality is not None:
        dual_est = normal_form_estimate(q, _dual_dims(dims, duality), p)
        if dual_est < est:
            return dual_est, duality
    return est, None


def _support_connected(q: Quiver, dims: Sequence[int]) -> bool:
    support = {v for v in q.vertices if dims[v - 1] > 0}
    if not support:
        return False
    start = min(support)
    seen, stack = {start}, [start]
    while stack:
        v = stack.pop()
        for s, t in q.arrows:
            for a, b in ((s, t), (t, s)):
                if a == v and b in support and b not in seen:
                    seen.add(b)
                    stack.append(b)
    return seen == support


def dimension_vectors(q: Quiver, cap: int) -> list[tuple]:
    """Nonzero dimension vectors of total <= cap, ordered by total then lexicographically."""
    out = [
        d for d in itertools.product(range(cap + 1), repeat=q.vertex_count)
        if 0 < sum(d) <= cap
    ]
    return sorted(out, key=lambda d: (sum(d), d))


def indecomposables_of_dim(
    reg: IsoClassRegistry, dims: Sequence[int], budget: Optional[int] = None
) -> list[int]:
    """Register every indecomposable class of dimension vector ``dims``.

    Returns the class ids; dimension vectors over budget are recorded in
    ``reg.skipped`` and yield an empty list.
    """
    q, p = reg.quiver, reg.p
    dims = tuple(dims)
    budget = default_budget() if budget is None else budget
    if sum(dims) == 1:
        return [reg.classify(Representation.simple(q, p, dims.index(1) + 1))]
    if not _support_connected(q, dims):
        return []
    est, duality = enumeration_plan(q, dims, p)
    if est > budget:
        reg.skipped.append((dims, est))
        return []
    if duality is None:
        tuples = normal_form_tuples(q, dims, p)
    else:
        inverse = ({w: v for v, w in duality[0].items()}, [duality[1].index(i) for i in range(len(q.arrows))])
        tuples = (dual_rep(r, duality) for r in normal_form_tuples(q, _dual_dims(dims, inverse), p))
    ids = []
    for rep in tuples:
        cid = reg.find(rep)
        if cid is None:
            w = is_indecomposable(rep, seed=reg.seed)
            if not w.indecomposable:
                continue
            cid = reg.classify(rep, w)
        if cid not in ids:
            ids.append(cid)
    return sorted(ids)


def exhaustive_universe(
    quiver: Quiver, total_dim_cap: int, p: int, budget: Optional[int] = None, seed: int = 0,
    registry: Optional[IsoClassRegistry] = None,
) -> IsoClassRegistry:
    """All indecomposable classes of total dimension <= cap (minus skipped vectors)."""
    reg = registry or IsoClassRegistry(quiver, p, seed)
    for dims in dimension_vectors(quiver, total_dim_cap):
        indecomposables_of_dim(reg, dims, budget)
    return reg


# ---------------------------------------------------------------------------
# rationality of Kronecker pencils


def _diagonal_product(mat: list, p: int) -> list:
    """Product of the diagonal after reducing a polynomial matrix to diagonal form.

    Row and column operations over F_p[t] are unimodular, so the product
    equals the gcd of the maximal nonvanishing minors (up to a unit).
    """
    a = [list(row) for row in mat]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    out = [1]

    def bring(r, i, j):
        a[r], a[i] = a[i], a[r]
        for row in a:
            row[r], row[j] = row[j], row[r]

    for r in range(min(rows, cols)):
        cands = [(_poly.deg(a[i][j]), i, j) for i in range(r, rows) for j in range(r, cols) if a[i][j]]
        if not cands:
            break
        bring(r, *min(cands)[1:])
        while True:
            piv = a[r][r]
            for i in range(r + 1, rows):
                if a[i][r]:
                    q = _poly.divmod_(a[i][r], piv, p)[0]
                    a[i] = [_poly.sub(x, _poly.mul(q, y, p), p) for x, y in zip(a[i], a[r])]
            for j in range(r + 1, cols):
                if a[r][j]:
                    q = _poly.divmod_(a[r][j], piv, p)[0]
                    for row in a:
                        row[j] = _poly.sub(row[j], _poly.mul(q, row[r], p), p)
            # leftover remainders have lower degree than the pivot: swap one in
            rest = [(_poly.deg(a[i][r]), i, r) for i in range(r + 1, rows) if a[i][r]]
            rest += [(_poly.deg(a[r][j]), r, j) for j in range(r + 1, cols) if a[r][j]]
            if not rest:
                break
            bring(r, *min(rest)[1:])
        out = _poly.mul(out, a[r][r], p)
    return _poly.monic(out, p)


def pencil_degeneracy(b: np.ndarray, c: np.ndarray, p: int) -> list:
    """Monic gcd of the maximal nonvanishing minors of t*b - c.

    Its roots are the finite parameters at which the pencil drops rank; the
    point at infinity is rational and never matters here.
    """
    rows, cols = b.shape
    ent = [[_poly.trim([(-int(c[i, j])) % p, int(b[i, j]) % p]) for j in range(cols)] for i in range(rows)]
    return _diagonal_product(ent, p)


def has_rational_pencils(m: Representation) -> bool:
    """Every doubled arrow pair of ``m`` degenerates only at F_p-rational parameters.

    Over an algebraically closed field each degeneracy point of the pencil
    yields submodules; over F_p a point of higher degree does not, which lets
    measures of such modules differ from their closed-field values.
    """
    q, p = m.quiver, m.p
    groups: dict = {}
    for i, a in enumerate(q.arrows):
        groups.setdefault(a, []).append(i)
    for (s, t), idx in groups.items():
        if len(idx) != 2 or not m.dims[s - 1] or not m.dims[t - 1]:
            continue
        g = pencil_degeneracy(m.maps[idx[0]], m.maps[idx[1]], p)
        if any(_poly.deg(f) > 1 for f, _ in _poly.factor(g, p)):
            return False
    return True


def has_rational_pencil_orbit(m: Representation, depth: int = 1) -> bool:
    """has_rational_pencils for tau^k M, |k| <= depth, as far as the translates exist.

    Hom(tau^-1 X, M) = Hom(X, tau M) for hereditary path algebras, so parameters
    of submodules like tau^-1 H(1) show up as pencil degeneracies of tau M.
    """
    from . import artools

    if not has_rational_pencils(m):
        return False
    for step in (artools.tau_plus, artools.tau_minus):
        cur = m
        for _ in range(depth):
            try:
                cur = step(cur)
            except (artools.ProjectiveSignal, artools.InjectiveSignal):
                break
            if not has_rational_pencils(cur):
                return False
    return True
