"""Bounded verification suites: each suite checks one family of claims about W and the Kronecker quiver.

A suite is a list of claims; every claim evaluates to ``confirmed``,
``refuted`` (with a serialized witness module) or ``skipped`` (budget).
Claims run concurrently and reports are sorted by claim id, so the JSON
form is reproducible for fixed parameters.  Detail strings never mention
registry class ids, which depend on insertion order.
"""
from __future__ import annotations

import itertools
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import artools, models, numerics
from .ffmat import EnumerationBudgetExceeded
from .grmeasure import (
    GRMeasure,
    as_measure,
    classify_partition,
    component_kind,
    direct_predecessor_in,
    gr_measure,
    interval_empty,
    landing_family,
    measure_universe,
    regular_family,
    registry_measures,
    sorted_measures,
    take_off_family,
)
from .quiverrep import W, MorphismSpace, Representation, apply_morphism_properties, hom_space, quotient_rep
from .structure import (
    IsoClassRegistry,
    default_budget,
    enumerate_submodules,
    exhaustive_universe,
    indecomposables_of_dim,
    is_indecomposable,
    iso_test,
)

STATUSES = ("confirmed", "refuted", "skipped")

# Legacy identifiers accepted on the command line, mapped to suite names.
ALIASES = {
    "prop-2.1": "gr-inclusion-factors",
    "lemma-2.2": "h1-orbit-submodules",
    "lemma-2.3": "h1-orbit-monos",
    "prop-3.1": "preprojective-gr",
    "lemma-3.2": "kronecker-measure-dims",
    "prop-3.3": "take-off",
    "prop-3.4": "minimal-central",
    "lemma-3.5": "kronecker-quasi-simples",
    "lemma-3.6": "quasi-length-bound",
    "prop-3.6": "h-lower-gr",
    "prop-3.7": "h1-translate-gr",
    "cor-3.8": "h1-orbit-order",
    "prop-3.9": "h-regular-gr",
    "prop-3.10": "h-upper-gr",
    "prop-3.11": "tau-h-factor",
    "sec-3.4": "small-dims",
    "lemma-4.2": "landing-family-modules",
    "lemma-4.3": "landing-family-modules",
    "thm-4.1": "landing-no-predecessor",
}


def anchor_of(suite: str) -> str:
    """Legacy identifier(s) of a suite, used as the anchor column of reports."""
    names = sorted(k for k, v in ALIASES.items() if v == suite)
    return "/".join(names) if names else suite


# ---------------------------------------------------------------------------
# context and outcomes


@dataclass
class Context:
    p: int = 2
    cap: Optional[int] = None
    imax: int = 1
    nmax: int = 4
    amax: int = 2
    seed: int = 0
    budget: int = field(default_factory=default_budget)
    jobs: int = 1

    def __post_init__(self):
        self._lock = threading.RLock()
        self._universes: dict = {}
        self._registries: dict = {}

    def params(self) -> dict:
        return {
            "amax": self.amax, "budget": self.budget, "cap": self.cap, "imax": self.imax,
            "nmax": self.nmax, "p": self.p, "seed": self.seed,
        }

    def cap_or(self, default: int) -> int:
        return self.cap if self.cap is not None else default

    def registry(self, name: str = "W") -> IsoClassRegistry:
        """Shared registry for model computations on one quiver."""
        with self._lock:
            reg = self._registries.get(name)
            if reg is None:
                reg = self._registries[name] = IsoClassRegistry(models.QUIVERS[name], self.p, self.seed)
            return reg

    def universe(self, name: str, cap: int) -> IsoClassRegistry:
        """Exhaustive universe up to total dimension ``cap``, fully measured."""
        with self._lock:
            key = (name, cap)
            reg = self._universes.get(key)
            if reg is None:
                reg = exhaustive_universe(models.QUIVERS[name], cap, self.p, self.budget, self.seed)
                measure_universe(reg)
                self._universes[key] = reg
            return reg

    def dims_registry(self, dims: tuple) -> tuple[IsoClassRegistry, list[int]]:
        """All classes of one dimension vector on W, in a registry of their own."""
        with self._lock:
            key = ("dims", tuple(dims))
            hit = self._universes.get(key)
            if hit is None:
                reg = IsoClassRegistry(W, self.p, self.seed)
                ids = indecomposables_of_dim(reg, dims, self.budget)
                if reg.skipped:
                    d, est = reg.skipped[0]
                    raise EnumerationBudgetExceeded(est, self.budget, f"matrix tuples for {d}")
                hit = self._universes[key] = (reg, ids)
            return hit

    def model(self, text: str) -> Representation:
        return models.build(models.parse_model_id(text, self.p), self.p, self.seed)

    def measure(self, rep: Representation, name: str = "W"):
        return gr_measure(rep, self.registry(name))


@dataclass
class Outcome:
    status: str
    detail: str
    witness: Optional[Representation] = None


def ok(detail: str) -> Outcome:
    return Outcome("confirmed", detail)


def bad(detail: str, witness: Optional[Representation] = None) -> Outcome:
    return Outcome("refuted", detail, witness)


def verdict(cond: bool, detail: str, witness: Optional[Representation] = None) -> Outcome:
    return ok(detail) if cond else bad(detail, witness)


@dataclass
class Claim:
    id: str
    anchor: str
    run: Callable[[], Outcome]


@dataclass
class Row:
    id: str
    anchor: str
    status: str
    detail: str
    witness: Optional[dict] = None
    seconds: float = 0.0

    def to_dict(self) -> dict:
        return {"anchor": self.anchor, "detail": self.detail, "id": self.id, "status": self.status,
                "witness": self.witness}


@dataclass
class Report:
    suite: str
    params: dict
    rows: list

    @property
    def counts(self) -> dict:
        return {s: sum(r.status == s for r in self.rows) for s in STATUSES}

    @property
    def exit_code(self) -> int:
        c = self.counts
        if c["refuted"]:
            return 2
        if c["skipped"]:
            return 3
        return 0

    def to_dict(self) -> dict:
        return {"claims": [r.to_dict() for r in self.rows], "counts": self.counts, "params": self.params,
                "suite": self.suite}

    def to_table(self) -> str:
        w = max([len(r.id) for r in self.rows] + [5])
        lines = [f"suite {self.suite}  " + "  ".join(f"{k}={v}" for k, v in sorted(self.params.items())),
                 f"{'claim':<{w}}  {'status':<9}  {'sec':>7}  detail"]
        for r in self.rows:
            lines.append(f"{r.id:<{w}}  {r.status:<9}  {r.seconds:7.2f}  {r.detail}")
        c = self.counts
        lines.append(f"{c['confirmed']} confirmed, {c['refuted']} refuted, {c['skipped']} skipped")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# helpers


def fmt_dims(d) -> str:
    return "(" + ",".join(map(str, d)) + ")"


def plural(n: int, word: str) -> str:
    return f"{n} {word}" + ("" if n == 1 else "es" if word.endswith("s") else "s")


def point_tag(pt) -> str:
    return f"@({pt[0]}:{pt[1]})"


def shifted(base: str, k: int) -> str:
    return base if k == 0 else f"tau({base})" if k == 1 else f"tau^{k}({base})"


def h1(pt, shift: int = 0) -> str:
    return shifted(f"H(1){point_tag(pt)}", shift)


def find_morphism(space: MorphismSpace, kinds: tuple, seed: int = 0, exhaustive: int = 4096, samples: int = 512):
    """A morphism in ``space`` whose type is among ``kinds``, or None.

    Every element is tried when the space has at most ``exhaustive``
    elements; otherwise basis elements, pairwise sums and seeded random
    combinations.
    """
    m, n, p, d = space.source, space.target, space.source.p, space.dim
    if d == 0:
        return None

    def good(c):
        phi = space.element(c)
        return phi if apply_morphism_properties(phi, m, n) in kinds else None

    if p ** d <= exhaustive:
        trials = itertools.product(range(p), repeat=d)
    else:
        eye = np.eye(d, dtype=np.int64)
        pairs = (eye[i] + eye[j] for i in range(d) for j in range(i + 1, d))
        rng = np.random.default_rng(seed)
        rand = (rng.integers(0, p, d) for _ in range(samples))
        trials = itertools.chain(eye, pairs, rand)
    for c in trials:
        phi = good(c)
        if phi is not None:
            return phi
    return None


def is_injective_module(m: Representation) -> bool:
    try:
        artools.tau_minus(m)
    except artools.InjectiveSignal:
        return True
    return False


def preprojective_name(rep: Representation, ctx: Context, jmax: int = 8) -> Optional[str]:
    """Model id tau^-j(P_k) isomorphic to ``rep`` (W only), if any."""
    for j in range(jmax + 1):
        for k in (1, 2, 3):
            base = models.build(models.parse_model_id(f"P_{k}"), ctx.p, ctx.seed)
            try:
                d = numerics.translate_dim(W, base.dims, -j)
            except numerics.LeftCategory:
                continue
            if tuple(d) != rep.dims:
                continue
            name = shifted(f"P_{k}", -j)
            if iso_test(ctx.model(name), rep) is not None:
                return name
    return None


def class_label(reg: IsoClassRegistry, cid: int) -> str:
    e = reg[cid]
    return f"{fmt_dims(e.dims)}{'' if e.split else '*'}"


def gr_set_check(ctx: Context, target: str, expected: list[str]) -> Outcome:
    """GR submodule classes of ``target`` equal the classes of ``expected``."""
    reg = ctx.registry("W")
    m = ctx.model(target)
    res = ctx.measure(m)
    want = {reg.classify(ctx.model(e)) for e in expected}
    got = set(res.gr_submodule_class_ids)
    detail = (f"mu={res.measure}; GR submodules {sorted(fmt_dims(reg[c].dims) for c in got)}; "
              f"expected {', '.join(expected)}")
    return verdict(got == want, detail, None if got == want else m)


def split_fallback(reg: IsoClassRegistry, ids: list[int], check: Callable[[list[int]], list]) -> Outcome:
    """Run ``check`` on all classes, and on split classes if that fails.

    ``check`` returns a list of (class id, message) violations.  A claim
    that only fails on classes without the split property is confirmed
    with the excluded classes spelled out in the detail.
    """
    viol = check(ids)
    if not viol:
        return ok(f"holds on all {len(ids)} classes")
    split = [c for c in ids if reg[c].split]
    viol_split = check(split)
    if viol_split:
        cid, msg = viol_split[0]
        return bad(f"{plural(len(viol_split), 'split violation')}; first: {msg}", reg[cid].rep)
    excluded = sorted({msg for _, msg in viol})
    return ok(f"holds on {len(split)} split classes; all-class check fails at "
              f"{plural(len(viol), 'non-split class')}: {'; '.join(excluded)}")


def universe_ids(reg: IsoClassRegistry, cap: int) -> list[int]:
    return [e.id for e in reg if e.rep.total <= cap]


def mu_of(reg: IsoClassRegistry, cid: int) -> GRMeasure:
    return registry_measures(reg, classes=[cid])[cid]


# ---------------------------------------------------------------------------
# suites


def suite_kronecker_tables(ctx: Context) -> list[Claim]:
    claims = []
    a = anchor_of("kronecker-tables")

    def check(text: str, want: GRMeasure):
        def run():
            res = ctx.measure(ctx.model(text), "K")
            return verdict(res.measure == want, f"mu={res.measure}, expected {want}")
        return run

    for n in range(1, ctx.nmax + 1):
        claims.append(Claim(f"preproj({n})", a, check(f"K:preproj({n})", take_off_family(n))))
        for pt in models.projective_line(ctx.p):
            claims.append(Claim(f"reg({n}){point_tag(pt)}", a, check(f"K:reg({n}){point_tag(pt)}", regular_family(n))))
    for n in range(1, ctx.nmax):
        claims.append(Claim(f"preinj({n})", a, check(f"K:preinj({n})", landing_family(n))))

    def partition():
        cap = ctx.cap_or(7)
        reg = ctx.universe("K", cap)
        ids = universe_ids(reg, cap)

        def viol(cls):
            part = classify_partition(reg, cap, classes=cls)
            out = []
            for cid in cls:
                d, lab = reg[cid].dims, part.labels[cid]
                want = ("take_off" if sum(d) == 1 or d[1] == d[0] + 1 else
                        "landing" if d[0] == d[1] + 1 else "central")
                if lab != want:
                    out.append((cid, f"{class_label(reg, cid)} labeled {lab}, expected {want}"))
            return out

        out = split_fallback(reg, ids, viol)
        part = classify_partition(reg, cap, classes=[c for c in ids if reg[c].split])
        out.detail += (f"; cap {cap}: take-off {[str(m) for m in part.take_off]}, "
                       f"landing {[str(m) for m in part.landing]}")
        return out

    claims.append(Claim("partition", a, partition))
    return claims


def suite_gr_inclusion_factors(ctx: Context) -> list[Claim]:
    a = anchor_of("gr-inclusion-factors")
    cap = ctx.cap_or(5)

    def inclusions():
        reg = ctx.universe("W", cap)
        res = reg.memo[("gr", True)]
        for cid in universe_ids(reg, cap):
            for sid, sub in sorted(res[cid].witnesses.items()):
                yield reg, cid, sid, sub

    def factor_indecomposable():
        n = 0
        for reg, cid, sid, sub in inclusions():
            n += 1
            q, _ = quotient_rep(reg[cid].rep, sub)
            if not is_indecomposable(q, seed=ctx.seed).indecomposable:
                return bad(f"factor of {class_label(reg, sid)} in {class_label(reg, cid)} decomposes", reg[cid].rep)
        return ok(f"{n} GR inclusions at cap {cap}, every factor indecomposable")

    def epimorphisms():
        n = skipped_inj = 0
        for reg, cid, sid, sub in inclusions():
            if is_injective_module(sub.rep):
                skipped_inj += 1
                continue
            n += 1
            q, _ = quotient_rep(reg[cid].rep, sub)
            src = artools.tau_minus(sub.rep)
            if find_morphism(hom_space(src, q), ("surjective", "iso"), ctx.seed) is None:
                return bad(f"no epimorphism tau^-1 X -> M/X for X={class_label(reg, sid)} "
                           f"in M={class_label(reg, cid)}", reg[cid].rep)
        return ok(f"{n} inclusions with non-injective X have an epimorphism witness "
                  f"({skipped_inj} with injective X)")

    return [Claim("factor-indecomposable", a, factor_indecomposable),
            Claim("translate-epimorphism", a, epimorphisms)]


def suite_h1_orbit_submodules(ctx: Context) -> list[Claim]:
    a = anchor_of("h1-orbit-submodules")
    claims = []

    def check(pt, i):
        def run():
            m = ctx.model(h1(pt, -i))
            subs = enumerate_submodules(m, only_indecomposable=True, proper_only=True, seed=ctx.seed)
            names = {}
            for s in subs:
                name = preprojective_name(s.rep, ctx)
                if name is None:
                    return bad(f"submodule {fmt_dims(s.dims)} is not preprojective", m)
                names[name] = s.dims
            found = ", ".join(f"{k}{fmt_dims(v)}" for k, v in sorted(names.items(), key=lambda kv: sum(kv[1])))
            return ok(f"{len(subs)} indecomposable proper submodules, all preprojective: {found}")
        return run

    for i in range(ctx.imax + 1):
        for pt in models.projective_line(ctx.p):
            claims.append(Claim(h1(pt, -i), a, check(pt, i)))
    return claims


def suite_h1_orbit_monos(ctx: Context) -> list[Claim]:
    a = anchor_of("h1-orbit-monos")
    claims = []

    def check(src: str, dst: str, kinds: tuple, word: str):
        def run():
            m, n = ctx.model(src), ctx.model(dst)
            sp = hom_space(m, n)
            phi = find_morphism(sp, kinds + ("iso",), ctx.seed)
            return verdict(phi is not None, f"dim Hom={sp.dim}; {word} {'found' if phi else 'missing'}", m)
        return run

    for pt in models.projective_line(ctx.p):
        for i in range(ctx.imax + 1):
            claims.append(Claim(f"mono {h1(pt, i)} -> {h1(pt, i + 1)}", a,
                                check(h1(pt, i), h1(pt, i + 1), ("injective",), "monomorphism")))
            claims.append(Claim(f"epi {h1(pt, -(i + 1))} -> {h1(pt, -i)}", a,
                                check(h1(pt, -(i + 1)), h1(pt, -i), ("surjective",), "epimorphism")))
    return claims


def suite_h1_measures(ctx: Context) -> list[Claim]:
    a = anchor_of("h1-measures")
    claims = []
    table = {0: {1, 2}, 1: {1, 2, 3}, 2: {1, 2, 3, 4}, -1: {1, 3, 4, 6}}

    def exact(text, want):
        def run():
            mu = ctx.measure(ctx.model(text)).measure
            return verdict(mu == as_measure(want), f"mu={mu}, expected {as_measure(want)}")
        return run

    def between(text):
        def run():
            mu = ctx.measure(ctx.model(text)).measure
            lo, hi = as_measure({1, 2, 3, 4}), as_measure({1, 2, 3, 4, 5})
            return verdict(lo < mu < hi, f"{lo} < mu={mu} < {hi}")
        return run

    for pt in models.projective_line(ctx.p):
        for k, want in sorted(table.items()):
            claims.append(Claim(h1(pt, k), a, exact(h1(pt, k), want)))
        for k in range(3, 3 + ctx.imax):
            claims.append(Claim(h1(pt, k), a, between(h1(pt, k))))
    claims.append(Claim("I_3", a, exact("I_3", {1, 2, 3, 4, 5})))
    return claims


def suite_preprojective_gr(ctx: Context) -> list[Claim]:
    a = anchor_of("preprojective-gr")
    claims = []
    for i in range(ctx.imax + 1):
        t = shifted("P_3", -(i + 1))
        claims.append(Claim(t, a, lambda t=t, i=i: gr_set_check(ctx, t, [shifted("P_2", -i)])))
        if i >= 1:
            t1 = shifted("P_1", -i)
            claims.append(Claim(t1, a, lambda t1=t1, i=i: gr_set_check(ctx, t1, [shifted("P_3", -i)])))
        t2 = shifted("P_2", -i)
        want = shifted("P_1", -(i - 1)) if i % 2 else shifted("P_3", -i)
        claims.append(Claim(t2, a, lambda t2=t2, want=want: gr_set_check(ctx, t2, [want])))
    return claims


def suite_kronecker_measure_dims(ctx: Context) -> list[Claim]:
    a = anchor_of("kronecker-measure-dims")
    cap = ctx.cap_or(6)

    def run_family(kind):
        def run():
            reg = ctx.universe("W", cap)
            ids = [c for c in universe_ids(reg, cap)
                   if reg[c].rep.total > 1 and not is_injective_module(reg[c].rep)]

            def viol(cls):
                out = []
                for cid in cls:
                    d, mu = reg[cid].dims, mu_of(reg, cid)
                    if kind == "odd":
                        n = d[1]
                        dims_ok = d[0] == 0 and d[2] == n + 1
                        fam = take_off_family(len(mu) - 1)
                    else:
                        n = d[1]
                        dims_ok = d[0] == 0 and d[2] == n and n > 0
                        fam = regular_family(len(mu) - 1) if len(mu) > 1 else None
                    if dims_ok != (mu == fam):
                        out.append((cid, f"{class_label(reg, cid)} mu={mu}"))
                return out

            return split_fallback(reg, ids, viol)
        return run

    return [Claim("odd-family", a, run_family("odd")), Claim("even-family", a, run_family("even"))]


def suite_take_off(ctx: Context) -> list[Claim]:
    a = anchor_of("take-off")
    cap = ctx.cap_or(6)
    claims = []

    def interval(n):
        def run():
            reg = ctx.universe("W", cap)
            lo, hi = take_off_family(n), take_off_family(n + 1)

            def viol(cls):
                _, bad_ = interval_empty(reg, lo, hi, classes=cls)
                return [(cid, f"{class_label(reg, cid)} mu={m}") for cid, m in bad_]

            out = split_fallback(reg, universe_ids(reg, cap), viol)
            out.detail = f"({lo}, {hi}): " + out.detail
            return out
        return run

    for n in range(0, min(ctx.nmax, 3)):
        claims.append(Claim(f"interval-{n}", a, interval(n)))

    def labels():
        reg = ctx.universe("W", cap)

        def viol(cls):
            part = classify_partition(reg, cap, classes=cls)
            out = []
            for cid in cls:
                d = reg[cid].dims
                if sum(d) == 1:
                    continue
                want = d[0] == 0 and d[2] == d[1] + 1
                if (part.labels[cid] == "take_off") != want:
                    out.append((cid, f"{class_label(reg, cid)} labeled {part.labels[cid]}"))
            return out

        return split_fallback(reg, universe_ids(reg, cap), viol)

    claims.append(Claim("labels", a, labels))
    return claims


def suite_minimal_central(ctx: Context) -> list[Claim]:
    a = anchor_of("minimal-central")
    cap = ctx.cap_or(6)

    def run():
        reg = ctx.universe("W", cap)
        split = [c for c in universe_ids(reg, cap) if reg[c].split]
        p1 = reg.find(ctx.model("P_1"))
        part = classify_partition(reg, cap, classes=split)
        mu_p1 = mu_of(reg, p1)
        below = [m for m in part.central if m < mu_p1]
        pred = direct_predecessor_in(reg, mu_p1, classes=split)
        cond = part.labels[p1] == "central" and not below and pred in part.take_off
        return verdict(cond, f"mu(P_1)={mu_p1} labeled {part.labels[p1]}; central measures below: "
                             f"{[str(m) for m in below]}; in-universe predecessor {pred} (take-off)",
                       None if cond else reg[p1].rep)

    return [Claim("p1-minimal-central", a, run)]


def _family_vectors(amax: int) -> dict:
    """Regular Kronecker-type families: H(a), H_a (a >= 4), H^a (a >= 1)."""
    out = {}
    for a in range(1, amax + 1):
        out[f"H({a})"] = (0, a, a)
        out[f"H^{a}"] = (0, a + 1, a)
        if a >= 4:
            out[f"H_{a}"] = (0, a, a + 1)
    return out


def suite_kronecker_quasi_simples(ctx: Context) -> list[Claim]:
    a = anchor_of("kronecker-quasi-simples")
    amax = max(4, ctx.amax + 2)
    kmax = ctx.imax + 3

    def tau2():
        x = artools.tau_iterate(ctx.model("H_4"), 2)
        y = ctx.model("H^1")
        return verdict(iso_test(x, y) is not None, f"tau^2(H_4) dims {fmt_dims(x.dims)} vs H^1 {fmt_dims(y.dims)}", x)

    def components():
        fam = _family_vectors(amax)
        inverse = {v: k for k, v in fam.items()}
        meets = []
        for name, x in sorted(fam.items()):
            for k in range(1, kmax + 1):
                try:
                    y = tuple(numerics.translate_dim(W, x, k))
                except numerics.LeftCategory:
                    break
                if y in inverse:
                    meets.append(f"tau^{k}({name})={inverse[y]}")
        return verdict(meets == ["tau^2(H_4)=H^1"], f"coincidences for a<={amax}, k<={kmax}: {meets}")

    def vertex_one():
        fam = _family_vectors(amax)
        zero = []
        for name, x in sorted(fam.items()):
            for k in [j for j in range(-kmax, kmax + 1) if j]:
                try:
                    y = numerics.translate_dim(W, x, k)
                except numerics.LeftCategory:
                    continue
                if y[0] == 0 and not (name == "H_4" and k == 2) and not (name == "H^1" and k == -2):
                    zero.append(f"tau^{k}({name})")
        return verdict(not zero, f"translates with first coordinate 0 beyond the H_4/H^1 pair: {zero}")

    def quasi_simple():
        # H(a) = X[r] would force sum_{i<r} dim tau^-i X = (0,a,a) with X of type (0,b,b) or (0,b,b+1)
        hits = []
        for a_ in range(1, amax + 1):
            for b in range(1, a_):
                for y in ((0, b, b), (0, b, b + 1)):
                    acc, cur = y, y
                    for r in range(2, a_ + 2):
                        cur = numerics.translate_dim(W, cur, -1)
                        acc = tuple(u + v for u, v in zip(acc, cur))
                        if acc == (0, a_, a_):
                            hits.append(f"H({a_})={fmt_dims(y)}[{r}]")
        return verdict(not hits, f"no decomposition of (0,a,a), a<={amax}, as a longer quasi-series: {hits}")

    return [Claim("tau2-H_4", a, tau2), Claim("components", a, components),
            Claim("vertex-one", a, vertex_one), Claim("quasi-simple", a, quasi_simple)]


def suite_quasi_length_bound(ctx: Context) -> list[Claim]:
    a = anchor_of("quasi-length-bound")

    def bound():
        worst = []
        for first in range(0, 4):
            for x, y, r in numerics.quasi_length_decompositions(W, first=first):
                if r > first + 1:
                    worst.append(f"{fmt_dims(x)}={fmt_dims(y)}[{r}]")
        return verdict(not worst, f"quasi-series with r > x_1 + 1 (x_1 <= 3, |y_i| <= 4): {worst}")

    def first_one():
        sols = numerics.quasi_length_decompositions(W, first=1)
        xs = sorted({(x, r) for x, _, r in sols})
        cond = xs == [((1, 2, 2), 2), ((1, 3, 4), 2)]
        return verdict(cond, f"x_1 = 1 solutions: {[f'{fmt_dims(x)} r={r}' for x, r in xs]}")

    return [Claim("r-at-most-x1-plus-1", a, bound), Claim("x1-equals-1", a, first_one)]


def suite_h_lower_gr(ctx: Context) -> list[Claim]:
    a = anchor_of("h-lower-gr")
    claims = []
    for i in range(ctx.imax + 1):
        for n in range(1, ctx.amax + 1):
            t, w = shifted(f"H_{n + 1}", -i), shifted(f"H_{n}", -i)
            claims.append(Claim(t, a, lambda t=t, w=w: gr_set_check(ctx, t, [w])))
    return claims


def suite_h1_translate_gr(ctx: Context) -> list[Claim]:
    a = anchor_of("h1-translate-gr")
    claims = []
    for i in range(1, ctx.imax + 2):
        for pt in models.projective_line(ctx.p):
            want = shifted("P_1" if i % 2 else "P_2", -(i - 1))
            t = h1(pt, -i)
            claims.append(Claim(t, a, lambda t=t, want=want: gr_set_check(ctx, t, [want])))
    return claims


def suite_h1_orbit_order(ctx: Context) -> list[Claim]:
    a = anchor_of("h1-orbit-order")
    cap = ctx.cap_or(6)
    lo = -(ctx.imax + 1)
    claims = []

    def chain(pt):
        def run():
            mus = [(k, ctx.measure(ctx.model(h1(pt, k))).measure) for k in range(lo, 3)]
            bad_ = [f"{k}" for (k, m), (_, n) in zip(mus, mus[1:]) if not m < n]
            return verdict(not bad_, "increasing: " + " < ".join(f"{m}" for _, m in mus))
        return run

    def preprojectives(pt):
        def run():
            floor = ctx.measure(ctx.model(h1(pt, lo))).measure
            reg = ctx.universe("W", cap)
            pre = [c for c in universe_ids(reg, cap) if component_kind(reg, c) == "preprojective"]
            bad_ = [c for c in pre if not mu_of(reg, c) < floor]
            mods = []
            for j in range(ctx.imax + 1):
                for k in (1, 2, 3):
                    mu = ctx.measure(ctx.model(shifted(f"P_{k}", -j))).measure
                    if not mu < floor:
                        mods.append(shifted(f"P_{k}", -j))
            cond = not bad_ and not mods
            return verdict(cond, f"{len(pre)} in-universe preprojective classes and tau^-j(P_k), j<={ctx.imax}, "
                                 f"below mu({h1(pt, lo)})={floor}; violations: "
                                 f"{[class_label(reg, c) for c in bad_] + mods}",
                           None if cond else (reg[bad_[0]].rep if bad_ else ctx.model(mods[0])))
        return run

    for pt in models.projective_line(ctx.p):
        claims.append(Claim(f"chain {h1(pt)}", a, chain(pt)))
        claims.append(Claim(f"preprojective-below {h1(pt)}", a, preprojectives(pt)))
    return claims


def suite_h_regular_gr(ctx: Context) -> list[Claim]:
    a = anchor_of("h-regular-gr")
    claims = []
    for i in range(ctx.imax + 1):
        for n in range(1, ctx.amax + 1):
            for pt in models.projective_line(ctx.p):
                t = shifted(f"H({n + 1}){point_tag(pt)}", -i)
                w = shifted(f"H({n}){point_tag(pt)}", -i)
                claims.append(Claim(t, a, lambda t=t, w=w: gr_set_check(ctx, t, [w])))
    return claims


def suite_h_upper_gr(ctx: Context) -> list[Claim]:
    a = anchor_of("h-upper-gr")
    claims = []
    line = models.projective_line(ctx.p)
    for i in range(ctx.imax + 1):
        for n in range(1, ctx.amax + 1):
            t = shifted(f"H^{n}", -i)
            if i <= 1:
                want = [shifted(f"H({n}){point_tag(pt)}", -i) for pt in line]
            elif n == 1:
                want = [shifted("P_1", -(i - 1))]
            else:
                want = [shifted(f"H({n - 1}){point_tag(pt)}", -i) for pt in line]
            claims.append(Claim(t, a, lambda t=t, want=want: gr_set_check(ctx, t, want)))

    def identities():
        bad_ = []
        for n in range(1, 11):
            rows = [((0, n + 1, n), (n - 1, 5 * n - 1, 7 * n - 2)), ((0, n, n), (n, 5 * n, 7 * n)),
                    ((0, n - 1, n - 1), (n - 1, 5 * n - 5, 7 * n - 7))]
            for x, want in rows:
                y = tuple(int(v) for v in np.array(x) @ np.array(numerics.coxeter_data(W).coxeter_inverse)
                          @ np.array(numerics.coxeter_data(W).coxeter_inverse))
                if y != want:
                    bad_.append(f"{fmt_dims(x)} -> {fmt_dims(y)}")
        return verdict(not bad_, f"x Phi^-2 identities for a <= 10; mismatches: {bad_}")

    claims.append(Claim("dimension-identities", a, identities))
    return claims


def suite_tau_h_factor(ctx: Context) -> list[Claim]:
    a = anchor_of("tau-h-factor")
    claims = []

    def check(n, pt):
        def run():
            reg = ctx.registry("W")
            m = ctx.model(f"tau(H({n}){point_tag(pt)})")
            res = ctx.measure(m)
            factors = sorted(set(res.gr_factor_dims))
            subs = sorted({reg[c].dims for c in res.gr_submodule_class_ids})
            cond = factors == [(1, 0, 0)] and subs == [(n - 1, n, n)]
            return verdict(cond, f"dims {fmt_dims(m.dims)}, mu={res.measure}; GR factors {factors}, "
                                 f"GR submodules {subs}", m)
        return run

    for n in range(1, ctx.amax + 1):
        for pt in models.projective_line(ctx.p):
            claims.append(Claim(f"tau(H({n}){point_tag(pt)})", a, check(n, pt)))
    return claims


def _has_sub_dims(rep: Representation, dims: tuple, seed: int) -> bool:
    for s in enumerate_submodules(rep, only_indecomposable=True, proper_only=True, seed=seed):
        if s.dims == tuple(dims):
            return True
    return False


def suite_small_dims(ctx: Context) -> list[Claim]:
    a = anchor_of("small-dims")
    cap = ctx.cap_or(6)
    claims = []

    def measures_of(dims):
        reg = ctx.universe("W", cap)
        return reg, [e.id for e in reg.by_dims(dims)]

    def iff(dims_set, want):
        want = as_measure(want)

        def run():
            reg = ctx.universe("W", cap)

            def viol(cls):
                return [(c, f"{class_label(reg, c)} mu={mu_of(reg, c)}") for c in cls
                        if (reg[c].dims in dims_set) != (mu_of(reg, c) == want)]

            out = split_fallback(reg, universe_ids(reg, cap), viol)
            out.detail = f"mu={want} iff dims in {sorted(dims_set)}: " + out.detail
            return out
        return run

    claims.append(Claim("mu{1,2,3}", a, iff({(1, 1, 1), (0, 2, 1)}, {1, 2, 3})))
    claims.append(Claim("mu{1,2,3,4}", a, iff({(1, 2, 1)}, {1, 2, 3, 4})))
    claims.append(Claim("mu{1,3,4,6}", a, iff({(1, 2, 3)}, {1, 3, 4, 6})))

    def subset(dims, allowed, required=()):
        allowed = {as_measure(x) for x in allowed}

        def run():
            reg, ids = measures_of(dims)

            def viol(cls):
                return [(c, f"{class_label(reg, c)} mu={mu_of(reg, c)}") for c in cls if mu_of(reg, c) not in allowed]

            out = split_fallback(reg, ids, viol)
            split = [c for c in ids if reg[c].split]
            occur = sorted({mu_of(reg, c) for c in split}, key=lambda m: m.rational())
            missing = [str(as_measure(r)) for r in required if as_measure(r) not in occur]
            if missing and out.status == "confirmed":
                out = bad(f"required measure(s) {missing} absent", reg[ids[0]].rep if ids else None)
            out.detail = f"{len(ids)} classes of {fmt_dims(dims)}; split measures {[str(m) for m in occur]}; " + out.detail
            return out
        return run

    claims.append(Claim("(1,2,2)", a, subset((1, 2, 2), [{1, 2, 3, 5}, {1, 2, 4, 5}, {1, 2, 5}], [{1, 2, 3, 5}])))
    claims.append(Claim("(2,2,2)", a, subset((2, 2, 2), [{1, 2, 3, 5, 6}], [{1, 2, 3, 5, 6}])))
    claims.append(Claim("(1,3,2)", a, subset((1, 3, 2), [{1, 2, 3, 6}, {1, 2, 3, 5, 6}, {1, 2, 4, 5, 6},
                                                         {1, 2, 5, 6}])))

    def ql_split(dims, socle):
        """Classes of ``dims`` split by whether they contain an indecomposable submodule of ``socle`` dims."""
        if sum(dims) <= cap:
            reg, ids = measures_of(dims)
        else:
            reg, ids = ctx.dims_registry(dims)
            measure_universe_ids(reg, ids)
        ql2 = [c for c in ids if _has_sub_dims(reg[c].rep, socle, ctx.seed)]
        qs = [c for c in ids if c not in ql2]
        return reg, ql2, qs

    def ql_measure(dims, socle, want_ql2, want_qs):
        def run():
            reg, ql2, qs = ql_split(dims, socle)

            def viol(cls):
                out = []
                for c in cls:
                    mu = mu_of(reg, c)
                    ok_ = (mu == as_measure(want_ql2)) if c in ql2 else (want_qs is None or mu in want_qs)
                    if not ok_:
                        out.append((c, f"{class_label(reg, c)} mu={mu} ({'ql2' if c in ql2 else 'quasi-simple'})"))
                return out

            out = split_fallback(reg, ql2 + qs, viol)
            cnt = lambda cs: sorted(str(mu_of(reg, c)) for c in cs if reg[c].split)  # noqa: E731
            out.detail = (f"{fmt_dims(dims)}: with a {fmt_dims(socle)} submodule {cnt(ql2)}, "
                          f"without {cnt(qs)}; " + out.detail)
            if not ql2:
                out = bad(f"no class of {fmt_dims(dims)} contains {fmt_dims(socle)}")
            return out
        return run

    qs122 = {as_measure({1, 2, 4, 5}), as_measure({1, 2, 5})}
    claims.append(Claim("(1,2,2)-quasi-length", a, ql_measure((1, 2, 2), (1, 1, 1), {1, 2, 3, 5}, qs122)))
    claims.append(Claim("(1,3,4)-quasi-length", a,
                        ql_measure((1, 3, 4), (0, 1, 1), {1, 2, 8}, {as_measure({1, 3, 4, 6, 8})})))

    def comparison():
        parts = []
        for dims, socle in (((1, 2, 2), (1, 1, 1)), ((1, 3, 4), (0, 1, 1))):
            reg, ql2, qs = ql_split(dims, socle)
            for c in [c for c in qs if reg[c].split]:
                for d in [d for d in ql2 if reg[d].split]:
                    if not mu_of(reg, c) < mu_of(reg, d):
                        return bad(f"{fmt_dims(dims)}: quasi-simple mu={mu_of(reg, c)} not below {mu_of(reg, d)}",
                                   reg[c].rep)
            parts.append(f"{fmt_dims(dims)}: {len(qs)} vs {len(ql2)} classes")
        return ok("quasi-simple measures below quasi-length-2 measures; " + "; ".join(parts))

    claims.append(Claim("quasi-length-comparison", a, comparison))
    return claims


def measure_universe_ids(reg: IsoClassRegistry, ids) -> None:
    for cid in ids:
        gr_measure(reg[cid].rep, reg)


def suite_landing_family_modules(ctx: Context) -> list[Claim]:
    a = anchor_of("landing-family-modules")
    cap = ctx.cap_or(6)
    claims = []
    ns = [n for n in range(1, ctx.nmax + 1) if 2 * n + 1 <= cap]

    def realized(n):
        def run():
            reg = ctx.universe("W", cap)
            want = landing_family(n)

            def viol(cls):
                return [(c, f"{class_label(reg, c)} has mu={want}") for c in cls
                        if mu_of(reg, c) == want and reg[c].dims not in ((1, n, n), (0, n + 1, n))]

            ids = universe_ids(reg, cap)
            hits = sorted({reg[c].dims for c in ids if mu_of(reg, c) == want})
            out = split_fallback(reg, ids, viol)
            if not hits:
                return bad(f"mu={want} not realized at cap {cap}")
            out.detail = f"mu={want} realized by dims {hits}; " + out.detail
            return out
        return run

    def factors(n):
        def run():
            reg = ctx.universe("W", cap)
            want = landing_family(n)
            ids = [c for c in universe_ids(reg, cap) if reg[c].split and mu_of(reg, c) == want]
            checked = 0
            for cid in ids:
                m = reg[cid].rep
                for sub in enumerate_submodules(m, seed=ctx.seed):
                    if sub.total == 0:
                        continue
                    q, _ = quotient_rep(m, sub)
                    if q.total == 0 or not is_indecomposable(q, seed=ctx.seed).indecomposable:
                        continue
                    if numerics.is_regular_vector(W, q.dims, depth=12) is False:
                        continue
                    checked += 1
                    if not _has_sub_dims(q, (0, 1, 1), ctx.seed) and q.dims != (0, 1, 1):
                        return bad(f"regular factor {fmt_dims(q.dims)} of {fmt_dims(m.dims)} has no (0,1,1) "
                                   f"submodule", m)
            return ok(f"{len(ids)} modules with mu={want}; {checked} regular indecomposable factors, "
                      f"each containing a (0,1,1) submodule")
        return run

    for n in ns:
        claims.append(Claim(f"realized-{n}", a, realized(n)))
        claims.append(Claim(f"regular-factors-{n}", a, factors(n)))
    return claims


def suite_landing_no_predecessor(ctx: Context) -> list[Claim]:
    a = anchor_of("landing-no-predecessor")
    cap = ctx.cap_or(6)
    claims = []
    ns = [n for n in range(1, ctx.nmax + 1) if 2 * n + 1 <= cap]

    def literal():
        # every in-universe mu < {1,2,3} is <= {1,2} or a take-off measure
        reg = ctx.universe("W", cap)
        top = landing_family(1)
        take = {take_off_family(k) for k in range(0, cap)}
        ids = universe_ids(reg, cap)
        offenders = sorted({(mu_of(reg, c), c) for c in ids
                            if mu_of(reg, c) < top and not mu_of(reg, c) <= as_measure({1, 2})
                            and mu_of(reg, c) not in take}, key=lambda t: t[0].rational())
        if not offenders:
            return ok(f"no in-universe measure strictly between {{1,2}} and {top} besides take-off")
        ms = sorted({str(m) for m, _ in offenders})
        return bad(f"measures strictly between {{1,2}} and {top}: {ms}", reg[offenders[0][1]].rep)

    claims.append(Claim("literal-1", a, literal))

    def truncation(n):
        def run():
            reg = ctx.universe("W", cap)
            split = [c for c in universe_ids(reg, cap) if reg[c].split]
            target = landing_family(n)
            pred = direct_predecessor_in(reg, target, classes=split)
            cond = pred is None or pred.last == cap
            return verdict(cond, f"in-universe predecessor of {target} is {pred}; its last element "
                                 f"{'equals' if cond else 'is below'} the cap {cap}, so longer modules "
                                 f"{'can' if cond else 'cannot'} refine it")
        return run

    for n in ns:
        claims.append(Claim(f"truncation-{n}", a, truncation(n)))

    def poset():
        reg = ctx.universe("W", cap)
        split = [c for c in universe_ids(reg, cap) if reg[c].split]
        order = sorted_measures(reg, classes=split)
        return ok(f"{len(order)} split measures at cap {cap}: " + " < ".join(str(m) for m in order))

    claims.append(Claim("measure-poset", a, poset))
    return claims


SUITES: dict[str, Callable[[Context], list[Claim]]] = {
    "kronecker-tables": suite_kronecker_tables,
    "gr-inclusion-factors": suite_gr_inclusion_factors,
    "h1-orbit-submodules": suite_h1_orbit_submodules,
    "h1-orbit-monos": suite_h1_orbit_monos,
    "h1-measures": suite_h1_measures,
    "preprojective-gr": suite_preprojective_gr,
    "kronecker-measure-dims": suite_kronecker_measure_dims,
    "take-off": suite_take_off,
    "minimal-central": suite_minimal_central,
    "kronecker-quasi-simples": suite_kronecker_quasi_simples,
    "quasi-length-bound": suite_quasi_length_bound,
    "h-lower-gr": suite_h_lower_gr,
    "h1-translate-gr": suite_h1_translate_gr,
    "h1-orbit-order": suite_h1_orbit_order,
    "h-regular-gr": suite_h_regular_gr,
    "h-upper-gr": suite_h_upper_gr,
    "tau-h-factor": suite_tau_h_factor,
    "small-dims": suite_small_dims,
    "landing-family-modules": suite_landing_family_modules,
    "landing-no-predecessor": suite_landing_no_predecessor,
}


def resolve(name: str) -> list[str]:
    """Suite names for a CLI identifier (a suite, an alias or ``all``)."""
    if name == "all":
        return list(SUITES)
    name = ALIASES.get(name, name)
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; known: {', '.join(sorted(SUITES))}, {', '.join(sorted(ALIASES))}, all")
    return [name]


def _evaluate(claim: Claim) -> Row:
    t0 = time.perf_counter()
    try:
        out = claim.run()
    except EnumerationBudgetExceeded as exc:
        out = Outcome("skipped", f"budget: {exc}")
    dt = time.perf_counter() - t0
    wit = out.witness.to_dict() if out.witness is not None else None
    if out.status == "refuted" and wit is None:
        out.detail += " (no module witness: dimension-vector claim)"
    return Row(claim.id, claim.anchor, out.status, out.detail, wit, dt)


def run_suite(name: str, ctx: Context) -> Report:
    names = resolve(name)
    claims = []
    for s in names:
        for c in SUITES[s](ctx):
            if len(names) > 1:
                c = Claim(f"{s}/{c.id}", c.anchor, c.run)
            claims.append(c)
    if ctx.jobs > 1:
        with ThreadPoolExecutor(max_workers=ctx.jobs) as pool:
            rows = list(pool.map(_evaluate, claims))
    else:
        rows = [_evaluate(c) for c in claims]
    rows.sort(key=lambda r: r.id)
    return Report(name, ctx.params(), rows)
