"""Field-of-sets representations built from separating filters.

Given filters G_0 .. G_{r-1}, each element x is sent to the index set
h(x) = {i : x in G_i}.  When every incomparable pair is separated by one of
the filters, h is an order embedding preserving the required meets and joins.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bounds import Bound
from .decider import DecisionReport, is_representable
from .poset import Poset, bits, mask_of


@dataclass(frozen=True)
class Representation:
    filters: tuple  # frozensets of element indices
    h: tuple  # frozenset of filter indices per element

    @classmethod
    def from_filters(cls, poset: Poset, filters) -> Representation:
        filters = tuple(frozenset(f) for f in filters)
        h = tuple(frozenset(i for i, f in enumerate(filters) if x in f) for x in range(poset.size))
        return cls(filters, h)

    def to_dict(self, poset: Poset) -> dict:
        return {
            "filters": [poset.labels_of(f) for f in self.filters],
            "h": {poset.labels[x]: sorted(s) for x, s in enumerate(self.h)},
        }

    @classmethod
    def from_dict(cls, poset: Poset, data: dict) -> Representation:
        return cls.from_filters(poset, [[poset.index(lab) for lab in f] for f in data["filters"]])


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of checking a representation.

    ``clause`` names the first failed check (``"injective"``, ``"meet"`` or
    ``"join"``) with ``elements``/``value`` as witness.  ``order_embedding``
    is informational: a representation can satisfy every clause yet fail to
    reflect the order.
    """

    ok: bool
    clause: str | None = None
    elements: tuple = ()
    value: int | None = None
    order_embedding: bool = True

    def to_dict(self, poset: Poset) -> dict:
        out = {"ok": self.ok, "order_embedding": self.order_embedding}
        if self.clause is not None:
            out["clause"] = self.clause
            out["elements"] = [poset.labels[x] for x in self.elements]
            if self.value is not None:
                out["value"] = poset.labels[self.value]
        return out


def build_representation(
    poset: Poset, m: Bound, n: Bound, report: DecisionReport | None = None, jobs: int = 1
) -> Representation | None:
    """One separating filter per incomparable pair (deduplicated, in pair
    order), followed by the whole carrier; None if some pair cannot be separated."""
    if report is None:
        report = is_representable(poset, m, n, jobs=jobs)
    if not report.representable:
        return None
    family = [f.carrier for f in report.filters()]
    whole = frozenset(range(poset.size))
    if poset.size and whole not in family:
        family.append(whole)
    return Representation.from_filters(poset, family)


def verify_representation(poset: Poset, rep: Representation, m: Bound, n: Bound) -> VerificationReport:
    size = poset.size
    masks = [mask_of(f) for f in rep.filters]
    for f in rep.filters:
        poset._check(*f)
    h = [mask_of(i for i, g in enumerate(masks) if g >> x & 1) for x in range(size)]
    up, down = poset.up, poset.down

    seen = {}
    for x in range(size):
        if h[x] in seen:
            return VerificationReport(False, "injective", (seen[h[x]], x))
        seen[h[x]] = x

    # Comparable pairs {x, y} with x < y have meet x and join y, so both
    # clauses first demand that h be monotone.
    for x in range(size):
        for y in bits(up[x] & ~(1 << x)):
            if h[x] & ~h[y]:
                return VerificationReport(False, "meet", (x, y), x)

    if m.is_omega:
        for g in masks:
            for z in bits(poset.full & ~g):
                inside = up[z] & g
                if inside and poset.meet_mask(inside) == z:
                    return VerificationReport(False, "meet", tuple(bits(poset.min_reduce(inside))), z)
    else:
        for s, z in poset.nontrivial_meets(m.value - 1):
            inter = (1 << len(masks)) - 1
            for x in bits(s):
                inter &= h[x]
            if inter != h[z]:
                return VerificationReport(False, "meet", tuple(bits(s)), z)

    if n.is_omega:
        for g in masks:
            for z in bits(g):
                outside = down[z] & ~g
                if outside and poset.join_mask(outside) == z:
                    return VerificationReport(False, "join", tuple(bits(poset.max_reduce(outside))), z)
    else:
        for t, z in poset.nontrivial_joins(n.value - 1):
            union = 0
            for x in bits(t):
                union |= h[x]
            if union != h[z]:
                return VerificationReport(False, "join", tuple(bits(t)), z)

    embedding = all(
        (h[x] & ~h[y] == 0) == bool(up[x] >> y & 1) for x in range(size) for y in range(size)
    )
    return VerificationReport(True, order_embedding=embedding)

