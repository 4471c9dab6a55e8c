"""Quivers, their representations over F_p, morphism spaces and sub/quotients."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, Iterable, Mapping, Sequence

import numpy as np

from . import ffmat
from .ffmat import Subspace, matmul, zeros


class QuiverMismatch(ValueError):
    pass


class ClosureError(ValueError):
    """A family of subspaces is not closed under some arrow."""

    def __init__(self, arrow: int):
        self.arrow = arrow
        super().__init__(f"chosen subspaces are not closed under arrow {arrow}")


@dataclass(frozen=True)
class Quiver:
    """An acyclic quiver with vertices 1..vertex_count."""

    vertex_count: int
    arrows: tuple[tuple[int, int], ...]
    name: str = ""
    topological_order: tuple[int, ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        arrows = tuple((int(s), int(t)) for s, t in self.arrows)
        object.__setattr__(self, "arrows", arrows)
        n = self.vertex_count
        for s, t in arrows:
            if not (1 <= s <= n and 1 <= t <= n):
                raise ValueError(f"arrow {(s, t)} leaves the vertex range 1..{n}")
        indeg = {v: 0 for v in self.vertices}
        for _, t in arrows:
            indeg[t] += 1
        order, ready = [], sorted(v for v, d in indeg.items() if d == 0)
        while ready:
            v = ready.pop(0)
            order.append(v)
            for s, t in arrows:
                if s == v:
                    indeg[t] -= 1
                    if indeg[t] == 0:
                        ready.append(t)
                        ready.sort()
        if len(order) != n:
            raise ValueError("quiver has an oriented cycle")
        object.__setattr__(self, "topological_order", tuple(order))

    @property
    def vertices(self) -> range:
        return range(1, self.vertex_count + 1)

    def in_arrows(self, v: int) -> list[int]:
        return [i for i, (_, t) in enumerate(self.arrows) if t == v]

    def out_arrows(self, v: int) -> list[int]:
        return [i for i, (s, _) in enumerate(self.arrows) if s == v]

    def is_sink(self, v: int) -> bool:
        return not self.out_arrows(v)

    def is_source(self, v: int) -> bool:
        return not self.in_arrows(v)

    def path_count(self, start: int, end: int) -> int:
        """Number of paths (including the trivial one) from ``start`` to ``end``."""
        counts = {v: 0 for v in self.vertices}
        counts[start] = 1
        for v in self.topological_order:
            for i in self.out_arrows(v):
                counts[self.arrows[i][1]] += counts[v]
        return counts[end]

    def reversed_at(self, v: int) -> "Quiver":
        arrows = tuple((t, s) if v in (s, t) else (s, t) for s, t in self.arrows)
        return Quiver(self.vertex_count, arrows, self.name + f"~{v}" if self.name else "")

    def to_dict(self) -> dict:
        return {"arrows": [list(a) for a in self.arrows], "vertices": self.vertex_count}


#: the wild quiver 1 -> 2 => 3
W = Quiver(3, ((1, 2), (2, 3), (2, 3)), "W")
#: the Kronecker quiver 1 => 2
KRONECKER = Quiver(2, ((1, 2), (1, 2)), "K")


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.int64)
    a.setflags(write=False)
    return a


class Representation:
    """A representation of ``quiver`` over F_p.

    ``maps[i]`` is the matrix of arrow ``i`` with shape
    ``(dims[target], dims[source])``.
    """

    __slots__ = ("quiver", "p", "dims", "maps", "_key")

    def __init__(self, quiver: Quiver, p: int, dims: Sequence[int], maps: Sequence[np.ndarray]):
        dims = tuple(int(d) for d in dims)
        if len(dims) != quiver.vertex_count or any(d < 0 for d in dims):
            raise ValueError(f"bad dimension vector {dims} for {quiver.vertex_count} vertices")
        if len(maps) != len(quiver.arrows):
            raise ValueError("one matrix per arrow required")
        fixed = []
        for i, ((s, t), m) in enumerate(zip(quiver.arrows, maps)):
            m = np.array(m, dtype=np.int64).reshape((dims[t - 1], dims[s - 1])) % p
            fixed.append(_frozen(m))
        self.quiver = quiver
        self.p = p
        self.dims = dims
        self.maps = tuple(fixed)
        self._key = (quiver.arrows, p, dims, b"".join(m.tobytes() for m in fixed))

    @classmethod
    def zero(cls, quiver: Quiver, p: int) -> "Representation":
        return cls.from_dims(quiver, p, (0,) * quiver.vertex_count)

    @classmethod
    def from_dims(cls, quiver: Quiver, p: int, dims: Sequence[int]) -> "Representation":
        maps = [zeros(dims[t - 1], dims[s - 1]) for s, t in quiver.arrows]
        return cls(quiver, p, dims, maps)

    @classmethod
    def simple(cls, quiver: Quiver, p: int, v: int) -> "Representation":
        dims = [0] * quiver.vertex_count
        dims[v - 1] = 1
        return cls.from_dims(quiver, p, dims)

    @property
    def total(self) -> int:
        return sum(self.dims)

    def dim_at(self, v: int) -> int:
        return self.dims[v - 1]

    def is_zero(self) -> bool:
        return self.total == 0

    def key(self):
        """Hashable structural key (identical matrices <=> identical keys)."""
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, Representation) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"Representation({self.quiver.name or 'Q'}, p={self.p}, dims={self.dims})"

    def offsets(self) -> list[int]:
        out, acc = [], 0
        for d in self.dims:
            out.append(acc)
            acc += d
        return out

    def in_map(self, v: int) -> np.ndarray:
        """Combined map from the direct sum of arrow sources into vertex v."""
        blocks = [self.maps[i] for i in self.quiver.in_arrows(v)]
        return np.hstack(blocks) if blocks else zeros(self.dim_at(v), 0)

    def out_map(self, v: int) -> np.ndarray:
        """Combined (stacked) map from vertex v into the direct sum of arrow targets."""
        blocks = [self.maps[i] for i in self.quiver.out_arrows(v)]
        return np.vstack(blocks) if blocks else zeros(0, self.dim_at(v))

    def conjugate(self, changes: Sequence[np.ndarray]) -> "Representation":
        """The isomorphic representation g_t M_a g_s^{-1} for invertible g_v."""
        invs = []
        for g in changes:
            gi = ffmat.inverse(g, self.p) if g.size else g
            if gi is None:
                raise ValueError("change of basis is not invertible")
            invs.append(gi)
        maps = [
            matmul(matmul(changes[t - 1], m, self.p), invs[s - 1], self.p)
            for (s, t), m in zip(self.quiver.arrows, self.maps)
        ]
        return Representation(self.quiver, self.p, self.dims, maps)

    # -- serialization ---------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "dims": list(self.dims),
            "maps": {str(i): [int(x) for x in m.ravel()] for i, m in enumerate(self.maps)},
            "p": self.p,
            "quiver": self.quiver.to_dict(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=1)

    @classmethod
    def from_dict(cls, data: Mapping) -> "Representation":
        q = data["quiver"]
        quiver = Quiver(int(q["vertices"]), tuple(tuple(a) for a in q["arrows"]))
        for known in (W, KRONECKER):
            if known.arrows == quiver.arrows and known.vertex_count == quiver.vertex_count:
                quiver = known
        p = ffmat.check_prime(data["p"])
        dims = [int(d) for d in data["dims"]]
        maps = []
        for i, (s, t) in enumerate(quiver.arrows):
            entries = data["maps"].get(str(i), [])
            maps.append(np.array(entries, dtype=np.int64).reshape((dims[t - 1], dims[s - 1])))
        return cls(quiver, p, dims, maps)

    @classmethod
    def from_json(cls, text: str) -> "Representation":
        return cls.from_dict(json.loads(text))


Morphism = tuple  # one matrix per vertex, shape (dims_N[v], dims_M[v])


def _check_same_quiver(m: Representation, n: Representation) -> None:
    if m.quiver.arrows != n.quiver.arrows or m.quiver.vertex_count != n.quiver.vertex_count:
        raise QuiverMismatch("representations of different quivers")
    if m.p != n.p:
        raise QuiverMismatch("representations over different fields")


@dataclass
class MorphismSpace:
    source: Representation
    target: Representation
    basis: list

    @property
    def dim(self) -> int:
        return len(self.basis)

    def element(self, coeffs: Sequence[int]) -> Morphism:
        p = self.source.p
        out = [zeros(self.target.dims[v], self.source.dims[v]) for v in range(len(self.source.dims))]
        for c, b in zip(coeffs, self.basis):
            if c % p:
                for v in range(len(out)):
                    out[v] = (out[v] + c * b[v]) % p
        return tuple(out)


def hom_system(m: Representation, n: Representation) -> np.ndarray:
    """Coefficient matrix of the commutation equations for Hom(m, n)."""
    _check_same_quiver(m, n)
    sizes = [n.dims[v] * m.dims[v] for v in range(len(m.dims))]
    offs = np.concatenate([[0], np.cumsum(sizes)]).astype(int)
    rows = []
    for (s, t), ma, na in zip(m.quiver.arrows, m.maps, n.maps):
        s, t = s - 1, t - 1
        neq = n.dims[t] * m.dims[s]
        if neq == 0:
            continue
        block = zeros(neq, int(offs[-1]))
        # phi_t M_a  (row-major vec):  (I (x) M_a^T) vec(phi_t)
        if sizes[t]:
            block[:, offs[t]:offs[t + 1]] += np.kron(np.eye(n.dims[t], dtype=np.int64), ma.T)
        # - N_a phi_s:  (N_a (x) I) vec(phi_s)
        if sizes[s]:
            block[:, offs[s]:offs[s + 1]] -= np.kron(na, np.eye(m.dims[s], dtype=np.int64))
        rows.append(block % m.p)
    if not rows:
        return zeros(0, int(offs[-1]))
    return np.vstack(rows)


def hom_space(m: Representation, n: Representation) -> MorphismSpace:
    """Basis of Hom(m, n), solving phi_t M_a = N_a phi_s for every arrow a."""
    system = hom_system(m, n)
    k = ffmat.kernel_matrix(system, m.p)
    basis = []
    for j in range(k.shape[1]):
        vec, phi, off = k[:, j], [], 0
        for v in range(len(m.dims)):
            size = n.dims[v] * m.dims[v]
            phi.append(vec[off:off + size].reshape((n.dims[v], m.dims[v])).copy())
            off += size
        basis.append(tuple(phi))
    return MorphismSpace(m, n, basis)


def is_morphism(phi: Morphism, m: Representation, n: Representation) -> bool:
    p = m.p
    for (s, t), ma, na in zip(m.quiver.arrows, m.maps, n.maps):
        lhs = matmul(phi[t - 1], ma, p)
        rhs = matmul(na, phi[s - 1], p)
        if not np.array_equal(lhs, rhs):
            return False
    return True


def compose(psi: Morphism, phi: Morphism, p: int) -> Morphism:
    """psi o phi."""
    return tuple(matmul(b, a, p) for a, b in zip(phi, psi))


def apply_morphism_properties(phi: Morphism, m: Representation, n: Representation) -> str:
    """Classify a morphism as ``iso``, ``injective``, ``surjective`` or ``neither``."""
    assert is_morphism(phi, m, n), "not a morphism"
    p = m.p
    ranks = [ffmat.rank(a, p) if a.size else 0 for a in phi]
    inj = all(r == d for r, d in zip(ranks, m.dims))
    surj = all(r == d for r, d in zip(ranks, n.dims))
    if inj and surj:
        return "iso"
    if inj:
        return "injective"
    if surj:
        return "surjective"
    return "neither"


def direct_sum(m: Representation, n: Representation) -> Representation:
    _check_same_quiver(m, n)
    dims = [a + b for a, b in zip(m.dims, n.dims)]
    maps = [ffmat.block_diag([a, b]) for a, b in zip(m.maps, n.maps)]
    return Representation(m.quiver, m.p, dims, maps)


@dataclass(frozen=True, eq=False)
class Subrep:
    """A subrepresentation of ``ambient`` given by per-vertex subspaces.

    ``rep`` is the induced representation in the canonical bases of the parts
    and ``inclusion`` the embedding morphism rep -> ambient.
    """

    ambient: Representation
    parts: tuple
    rep: Representation
    inclusion: Morphism

    @property
    def dims(self) -> tuple:
        return self.rep.dims

    @property
    def total(self) -> int:
        return self.rep.total

    def contains(self, other: "Subrep") -> bool:
        return all(a.contains(b) for a, b in zip(self.parts, other.parts))

    def is_proper(self) -> bool:
        return self.dims != self.ambient.dims

    def key(self):
        return tuple(self.parts)


def subrep_from_subspaces(m: Representation, parts: Sequence[Subspace], check: bool = True) -> Subrep:
    p = m.p
    parts = tuple(parts)
    maps = []
    for i, ((s, t), a) in enumerate(zip(m.quiver.arrows, m.maps)):
        img = matmul(a, parts[s - 1].basis.T, p)
        if check and not parts[t - 1].contains_vectors(img):
            raise ClosureError(i)
        maps.append(parts[t - 1].coords(img))
    rep = Representation(m.quiver, p, [u.dim for u in parts], maps)
    inclusion = tuple(np.array(u.basis.T) for u in parts)
    return Subrep(m, parts, rep, inclusion)


def image_subrep(phi: Morphism, m: Representation, n: Representation) -> Subrep:
    """The image of a morphism m -> n as a subrepresentation of n."""
    parts = [Subspace.from_columns(a, n.p) if a.size else Subspace.zero(n.dims[v], n.p) for v, a in enumerate(phi)]
    return subrep_from_subspaces(n, parts)


def quotient_rep(m: Representation, sub: Subrep) -> tuple[Representation, Morphism]:
    """M / sub with the projection morphism M -> M/sub.

    Quotient coordinates are the non-pivot positions of each part's RREF basis.
    """
    if sub.ambient is not m and sub.ambient != m:
        raise ValueError("sub is not a subrepresentation of m")
    p = m.p
    proj, lifts = [], []
    for v, u in enumerate(sub.parts):
        comp = u.complement_positions()
        red = u.reduce(np.eye(m.dims[v], dtype=np.int64))
        proj.append(red[comp, :] if comp else zeros(0, m.dims[v]))
        lift = zeros(m.dims[v], len(comp))
        for j, c in enumerate(comp):
            lift[c, j] = 1
        lifts.append(lift)
    maps = [
        matmul(matmul(proj[t - 1], a, p), lifts[s - 1], p)
        for (s, t), a in zip(m.quiver.arrows, m.maps)
    ]
    q = Representation(m.quiver, p, [x.shape[0] for x in proj], maps)
    return q, tuple(proj)


def generated_subrep(m: Representation, generators: Mapping[int, Iterable] | None = None) -> Subrep:
    """Smallest subrepresentation containing the given vectors.

    ``generators`` maps a vertex (1-based) to an iterable of vectors in that
    vertex space.  Images only travel forward along arrows, so one pass in
    topological order reaches the fixed point.
    """
    p = m.p
    generators = generators or {}
    parts: Dict[int, Subspace] = {}
    for v in m.quiver.topological_order:
        cols = [np.array(g, dtype=np.int64).reshape(m.dims[v - 1], 1) for g in generators.get(v, [])]
        for i in m.quiver.in_arrows(v):
            s = m.quiver.arrows[i][0]
            cols.append(matmul(m.maps[i], parts[s].basis.T, p))
        span = np.hstack(cols) if cols else zeros(m.dims[v - 1], 0)
        parts[v] = Subspace(span.T, p, m.dims[v - 1])
    return subrep_from_subspaces(m, [parts[v] for v in m.quiver.vertices], check=False)


def full_subrep(m: Representation) -> Subrep:
    return subrep_from_subspaces(m, [Subspace.full(d, m.p) for d in m.dims], check=False)


def zero_subrep(m: Representation) -> Subrep:
    return subrep_from_subspaces(m, [Subspace.zero(d, m.p) for d in m.dims], check=False)
