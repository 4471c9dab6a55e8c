"""Reflection functors and the Auslander-Reiten translates they compose to."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import ffmat
from .ffmat import Subspace, zeros
from .quiverrep import Quiver, Representation


class ProjectiveSignal(ValueError):
    """tau was applied to a projective module."""


class InjectiveSignal(ValueError):
    """tau^-1 was applied to an injective module."""


class NotASink(ValueError):
    pass


class NotASource(ValueError):
    pass


@dataclass(frozen=True)
class ReflectionStep:
    vertex: int
    direction: str  # "at_sink" or "at_source"
    quiver: Quiver  # quiver after the step


def reflect_at_sink(m: Representation, v: int) -> Representation:
    """New space at v: kernel of the combined map from the arrow sources into V_v."""
    q = m.quiver
    if not q.is_sink(v):
        raise NotASink(f"vertex {v} has outgoing arrows")
    arrows = q.in_arrows(v)
    p = m.p
    h = m.in_map(v)
    k = ffmat.kernel_matrix(h, p)  # columns span ker h inside the direct sum of sources
    new_q = q.reversed_at(v)
    maps = list(m.maps)
    row = 0
    for i in arrows:
        d = m.dims[q.arrows[i][0] - 1]
        maps[i] = k[row:row + d, :]
        row += d
    dims = list(m.dims)
    dims[v - 1] = k.shape[1]
    return Representation(new_q, p, dims, maps)


def reflect_at_source(m: Representation, v: int) -> Representation:
    """New space at v: cokernel of the stacked map from V_v into the arrow targets."""
    q = m.quiver
    if not q.is_source(v):
        raise NotASource(f"vertex {v} has incoming arrows")
    arrows = q.out_arrows(v)
    p = m.p
    g = m.out_map(v)
    total = g.shape[0]
    img = Subspace.from_columns(g, p) if g.size else Subspace.zero(total, p)
    comp = img.complement_positions()
    proj = img.reduce(np.eye(total, dtype=np.int64))[comp, :] if comp else zeros(0, total)
    new_q = q.reversed_at(v)
    maps = list(m.maps)
    col = 0
    for i in arrows:
        d = m.dims[q.arrows[i][1] - 1]
        maps[i] = proj[:, col:col + d]
        col += d
    dims = list(m.dims)
    dims[v - 1] = len(comp)
    return Representation(new_q, p, dims, maps)


def sink_sequence(q: Quiver) -> list[int]:
    """Admissible order for the tau direction: reversed topological order (W: 3,2,1)."""
    return list(reversed(q.topological_order))


def source_sequence(q: Quiver) -> list[int]:
    return list(q.topological_order)


def _restore(m: Representation, q: Quiver) -> Representation:
    assert m.quiver.arrows == q.arrows
    return Representation(q, m.p, m.dims, m.maps)


def tau_plus(m: Representation) -> Representation:
    """tau M for indecomposable non-projective M, via sink reflections."""
    q = m.quiver
    cur = m
    for v in sink_sequence(q):
        cur = reflect_at_sink(cur, v)
        if cur.is_zero():
            raise ProjectiveSignal(f"{m.dims} is projective")
    return _restore(cur, q)


def tau_minus(m: Representation) -> Representation:
    """tau^-1 M for indecomposable non-injective M, via source reflections."""
    q = m.quiver
    cur = m
    for v in source_sequence(q):
        cur = reflect_at_source(cur, v)
        if cur.is_zero():
            raise InjectiveSignal(f"{m.dims} is injective")
    return _restore(cur, q)


def tau_iterate(m: Representation, k: int) -> Representation:
    """tau^k M (k may be negative); signals propagate from the failing step."""
    step = tau_plus if k > 0 else tau_minus
    for _ in range(abs(k)):
        m = step(m)
    return m


def reflection_steps(q: Quiver, direction: str = "at_sink") -> list[ReflectionStep]:
    seq = sink_sequence(q) if direction == "at_sink" else source_sequence(q)
    out, cur = [], q
    for v in seq:
        cur = cur.reversed_at(v)
        out.append(ReflectionStep(v, direction, cur))
    return out
