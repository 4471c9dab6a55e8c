"""Gabriel-Roiter measures: the order on finite sets, the recursive measure and bounded searches."""
from __future__ import annotations

import enum
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from . import numerics
from .ffmat import EnumerationBudgetExceeded
from .quiverrep import Representation, Subrep, subrep_from_subspaces
from .structure import (
    DEFAULT_SUBMODULE_CAP,
    IsoClassRegistry,
    is_indecomposable,
    iter_submodule_parts,
    submodule_candidate_estimate,
)


class Order(enum.Enum):
    LT = -1
    EQ = 0
    GT = 1


class UnmeasuredRegistry(RuntimeError):
    pass


class BudgetAtLevel(EnumerationBudgetExceeded):
    """Submodule enumeration exceeded its cap at some recursion depth."""

    def __init__(self, base: EnumerationBudgetExceeded, level: int, dims: tuple):
        super().__init__(base.estimate, base.cap, f"{base.what} at recursion level {level}, dims {dims}")
        self.level = level
        self.dims = dims


@dataclass(frozen=True, order=False)
class GRMeasure:
    """A finite set of positive integers under the lexicographic indicator order."""

    elements: tuple = ()

    def __post_init__(self):
        els = tuple(int(a) for a in self.elements)
        if any(a < 1 for a in els) or any(x >= y for x, y in zip(els, els[1:])):
            raise ValueError(f"not a strictly increasing set of positive integers: {els}")
        object.__setattr__(self, "elements", els)

    @classmethod
    def of(cls, elements: Iterable[int]) -> "GRMeasure":
        return cls(tuple(sorted(set(elements))))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, a) -> bool:
        return a in self.elements

    @property
    def last(self) -> int:
        return self.elements[-1] if self.elements else 0

    def extend(self, a: int) -> "GRMeasure":
        if self.elements and a <= self.elements[-1]:
            raise ValueError("appended element must exceed the current maximum")
        return GRMeasure(self.elements + (a,))

    def __lt__(self, other: "GRMeasure") -> bool:
        return measure_compare(self, other) is Order.LT

    def __le__(self, other: "GRMeasure") -> bool:
        return measure_compare(self, other) is not Order.GT

    def __gt__(self, other: "GRMeasure") -> bool:
        return measure_compare(self, other) is Order.GT

    def __ge__(self, other: "GRMeasure") -> bool:
        return measure_compare(self, other) is not Order.LT

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.elements)) + "}"

    def rational(self) -> Fraction:
        return measure_rational(self)

    def binary(self) -> str:
        """Binary expansion of the rational encoding, e.g. {1,3} -> 0.101₂."""
        if not self.elements:
            return "0₂"
        digits = ["0"] * self.elements[-1]
        for a in self.elements:
            digits[a - 1] = "1"
        return "0." + "".join(digits) + "₂"

    def describe(self) -> str:
        return f"{self} = {self.rational()} = {self.binary()}"


def as_measure(x) -> GRMeasure:
    return x if isinstance(x, GRMeasure) else GRMeasure.of(x)


def measure_compare(i, j) -> Order:
    """I < J iff the least element of the symmetric difference lies in J."""
    a, b = as_measure(i).elements, as_measure(j).elements
    for x, y in zip(a, b):
        if x != y:
            return Order.LT if y < x else Order.GT
    if len(a) == len(b):
        return Order.EQ
    return Order.LT if len(a) < len(b) else Order.GT


def measure_rational(i) -> Fraction:
    return sum((Fraction(1, 2**a) for a in as_measure(i).elements), Fraction(0))


def starts_with(j, i) -> bool:
    """True iff J starts with I: I = J, or I is a proper subset and max I < min(J - I)."""
    a, b = as_measure(i).elements, as_measure(j).elements
    return len(a) <= len(b) and b[: len(a)] == a


def take_off_family(n: int) -> GRMeasure:
    """{1,3,5,...,2n+1}."""
    return GRMeasure(tuple(range(1, 2 * n + 2, 2)))


def regular_family(n: int) -> GRMeasure:
    """{1,2,4,...,2n}."""
    return GRMeasure((1,) + tuple(range(2, 2 * n + 1, 2)))


def landing_family(n: int) -> GRMeasure:
    """{1,2,4,...,2n,2n+1}."""
    return regular_family(n).extend(2 * n + 1)


# ---------------------------------------------------------------------------
# the recursive measure


@dataclass
class GRResult:
    class_id: Optional[int]
    measure: GRMeasure
    length: int
    gr_submodule_class_ids: tuple = ()
    gr_factor_dims: tuple = ()
    witnesses: dict = field(default_factory=dict, repr=False)  # class id -> Subrep
    candidates: int = 0  # maximal indecomposable submodule classes inspected

    def to_dict(self) -> dict:
        return {
            "class_id": self.class_id,
            "gr_factor_dims": [list(d) for d in self.gr_factor_dims],
            "gr_submodule_class_ids": list(self.gr_submodule_class_ids),
            "length": self.length,
            "measure": list(self.measure.elements),
            "rational": str(self.measure.rational()),
        }


class GREngine:
    """Computes measures of registry classes, memoized per class.

    With ``prune`` the proper indecomposable submodules are screened by
    necessary conditions, visited in decreasing length, and any candidate
    contained in an already accepted indecomposable proper submodule is
    dropped (a strictly larger indecomposable submodule has strictly larger
    measure, so argmax classes always survive).  A length bound then skips
    candidates whose best conceivable measure {1,...,|X|} is below the
    running maximum.  Without ``prune`` every submodule is enumerated and
    tested.
    """

    def __init__(self, registry: IsoClassRegistry, prune: bool = True, cap: int = DEFAULT_SUBMODULE_CAP):
        self.registry = registry
        self.prune = prune
        self.cap = cap
        with registry.lock:
            self.memo: dict = registry.memo.setdefault(("gr", prune), {})
            self._latches: dict = registry.memo.setdefault(("gr-latch", prune), {})

    # -- public ------------------------------------------------------------
    def measure(self, m: Representation) -> GRResult:
        """μ(M) for any representation; decomposable inputs get no class id."""
        if m.is_zero():
            return GRResult(None, GRMeasure(), 0)
        w = is_indecomposable(m, seed=self.registry.seed)
        if w.indecomposable:
            return self.measure_class(self.registry.classify(m, w))
        return self._compute(m, None, level=0, proper=False)

    def measure_class(self, cid: int, level: int = 0) -> GRResult:
        with self.registry.lock:
            res = self.memo.get(cid)
            if res is not None:
                return res
            latch = self._latches.get(cid)
            owner = latch is None
            if owner:
                latch = self._latches[cid] = threading.Event()
        if not owner:
            latch.wait()
            return self.memo[cid]
        try:
            res = self._compute(self.registry[cid].rep, cid, level, proper=True)
            with self.registry.lock:
                self.memo[cid] = res
        finally:
            latch.set()
        return res

    def measure_all(self, ids: Optional[Iterable[int]] = None) -> dict:
        ids = range(len(self.registry)) if ids is None else ids
        return {cid: self.measure_class(cid) for cid in ids}

    # -- internals ---------------------------------------------------------
    def _candidates(self, m: Representation, level: int) -> list[Subrep]:
        try:
            est = submodule_candidate_estimate(m, self.prune)
            if est > self.cap:
                raise EnumerationBudgetExceeded(est, self.cap, "submodule candidates")
        except EnumerationBudgetExceeded as exc:
            raise BudgetAtLevel(exc, level, m.dims) from None
        subs = []
        for parts in iter_submodule_parts(m, indecomposable_only=self.prune):
            sub = subrep_from_subspaces(m, parts, check=False)
            if sub.total:
                subs.append(sub)
        subs.sort(key=lambda s: -s.total)
        return subs

    def _compute(self, m: Representation, cid: Optional[int], level: int, proper: bool) -> GRResult:
        n = m.total
        best: Optional[GRMeasure] = None
        argmax: dict = {}
        accepted: list[Subrep] = []
        seen = 0
        for sub in self._candidates(m, level):
            if proper and not sub.is_proper():
                continue
            if self.prune:
                if any(a.contains(sub) for a in accepted):
                    continue
                if best is not None and GRMeasure(tuple(range(1, sub.total + 1))) < best:
                    # still record containment screening; the bound is sound
                    continue
            w = is_indecomposable(sub.rep, seed=self.registry.seed)
            if not w.indecomposable:
                continue
            accepted.append(sub)
            seen += 1
            sid = self.registry.classify(sub.rep, w)
            mu = self.measure_class(sid, level + 1).measure
            if best is None or mu > best:
                best, argmax = mu, {sid: sub}
            elif mu == best and sid not in argmax:
                argmax[sid] = sub
        base = best or GRMeasure()
        measure = base.extend(n) if proper else base
        ids = tuple(sorted(argmax))
        factors = tuple(
            tuple(a - b for a, b in zip(m.dims, argmax[i].dims)) for i in ids
        ) if proper else ()
        return GRResult(cid, measure, n, ids if proper else (), factors, dict(argmax), seen)


_ENGINES: dict = {}
_ENGINE_LOCK = threading.Lock()


def engine_for(reg: IsoClassRegistry, prune: bool = True) -> GREngine:
    with _ENGINE_LOCK:
        key = (id(reg), prune)
        eng = _ENGINES.get(key)
        if eng is None or eng.registry is not reg:
            eng = _ENGINES[key] = GREngine(reg, prune)
        return eng


def gr_measure(m: Representation, reg: IsoClassRegistry, prune: bool = True) -> GRResult:
    return engine_for(reg, prune).measure(m)


def gr_submodules(m: Representation, reg: IsoClassRegistry, prune: bool = True) -> list[tuple[int, Subrep]]:
    res = gr_measure(m, reg, prune)
    return [(cid, res.witnesses[cid]) for cid in res.gr_submodule_class_ids]


# ---------------------------------------------------------------------------
# bounded-universe searches


def registry_measures(
    reg: IsoClassRegistry, prune: bool = True, classes: Optional[Iterable[int]] = None
) -> dict[int, GRMeasure]:
    """Measures of all (or the given) registry classes; every one must be measured."""
    memo = reg.memo.get(("gr", prune), {})
    ids = sorted(range(len(reg)) if classes is None else classes)
    missing = [cid for cid in ids if cid not in memo]
    if missing:
        raise UnmeasuredRegistry(f"{len(missing)} classes have no measure (first: {missing[0]})")
    return {cid: memo[cid].measure for cid in ids}


def measure_universe(reg: IsoClassRegistry, prune: bool = True) -> dict[int, GRMeasure]:
    engine_for(reg, prune).measure_all()
    return registry_measures(reg, prune)


def sorted_measures(reg: IsoClassRegistry, classes: Optional[Iterable[int]] = None) -> list[GRMeasure]:
    distinct = set(registry_measures(reg, classes=classes).values())
    return sorted(distinct, key=measure_rational)


def direct_successor_in(reg: IsoClassRegistry, mu, classes: Optional[Iterable[int]] = None) -> Optional[GRMeasure]:
    """Least registry measure strictly above ``mu`` (relative to the universe)."""
    mu = as_measure(mu)
    above = [x for x in sorted_measures(reg, classes) if x > mu]
    return above[0] if above else None


def direct_predecessor_in(reg: IsoClassRegistry, mu, classes: Optional[Iterable[int]] = None) -> Optional[GRMeasure]:
    mu = as_measure(mu)
    below = [x for x in sorted_measures(reg, classes) if x < mu]
    return below[-1] if below else None


def interval_empty(
    reg: IsoClassRegistry, lo, hi, classes: Optional[Iterable[int]] = None
) -> tuple[bool, list[tuple[int, GRMeasure]]]:
    """Whether no registry class has measure strictly between lo and hi."""
    lo, hi = as_measure(lo), as_measure(hi)
    bad = [(cid, m) for cid, m in registry_measures(reg, classes=classes).items() if lo < m < hi]
    return not bad, bad


def component_kind(reg: IsoClassRegistry, cid: int, depth: int = 12) -> str:
    """preprojective / preinjective / regular guess from the Coxeter orbit of dims.

    A translate leaving the positive cone within ``depth`` steps in the tau
    (resp. inverse) direction marks a preprojective (resp. preinjective)
    module; otherwise regular up to the depth.
    """
    q = reg.quiver
    x = reg[cid].dims
    for k, kind in ((depth, "preprojective"), (-depth, "preinjective")):
        try:
            numerics.translate_dim(q, x, k)
        except numerics.LeftCategory:
            return kind
    return "regular"


@dataclass
class Partition:
    cap: int
    p: int
    labels: dict  # class id -> label
    take_off: list
    central: list
    landing: list
    note: str = "bounded-universe approximation"

    def to_dict(self) -> dict:
        return {
            "cap": self.cap,
            "central": [str(m) for m in self.central],
            "labels": {str(k): v for k, v in sorted(self.labels.items())},
            "landing": [str(m) for m in self.landing],
            "note": self.note,
            "p": self.p,
            "take_off": [str(m) for m in self.take_off],
        }


def classify_partition(
    reg: IsoClassRegistry, cap: Optional[int] = None, classes: Optional[Iterable[int]] = None
) -> Partition:
    """Label classes take_off / central / landing within the bounded universe.

    Take-off: the longest initial run of the sorted measures in which each
    measure starts with its predecessor (the ascending chain cannot be
    certified beyond that point).  Landing: the longest final run whose
    measures are realized only by classes with a preinjective Coxeter orbit.
    Everything else is central.
    """
    meas = registry_measures(reg, classes=classes)
    order = sorted(set(meas.values()), key=measure_rational)
    take = []
    for m in order:
        if take and not starts_with(m, take[-1]):
            break
        take.append(m)
    by_measure: dict = {}
    for cid, m in meas.items():
        by_measure.setdefault(m, []).append(cid)
    land = []
    for m in reversed(order[len(take):]):
        if all(component_kind(reg, c) == "preinjective" for c in by_measure[m]):
            land.append(m)
        else:
            break
    land.reverse()
    central = [m for m in order if m not in take and m not in land]
    labels = {}
    for cid, m in meas.items():
        labels[cid] = "take_off" if m in take else "landing" if m in land else "central"
    cap = cap if cap is not None else max((e.rep.total for e in reg), default=0)
    return Partition(cap, reg.p, labels, take, central, land)
