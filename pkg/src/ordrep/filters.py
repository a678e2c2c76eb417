"""(m,n)-filters: checking, meet/up closure, and the search for separating filters.

A subset G of a poset is an (m,n)-filter when it is up-closed, contains the
meet of every nonempty S of fewer than m of its members (when that meet
exists), and meets every nonempty T of fewer than n elements whose join
exists and lies in G.  Only antichains need checking: a subset has the same
meet as its minimal elements and the same join as its maximal ones.

For omega bounds the subset quantifiers collapse to one test per element:
G is omega-complete iff no z outside G is the meet of ``up(z) & G``, and
omega-prime iff no z in G is the join of ``down(z) - G``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bounds import Bound
from .errors import NotSeparablePair, PosetTooLarge
from .poset import Poset, antichain_masks, as_set, bits, mask_of

NOT_UP_CLOSED = "NotUpClosed"
MEET_ESCAPES = "MeetEscapes"
PRIME_FAILS = "PrimeFails"


@dataclass(frozen=True)
class Filter:
    carrier: frozenset
    m: Bound
    n: Bound

    @property
    def mask(self) -> int:
        return mask_of(self.carrier)

    def __contains__(self, x):
        return x in self.carrier

    def __len__(self):
        return len(self.carrier)

    def labels(self, poset: Poset) -> list[str]:
        return poset.labels_of(self.carrier)


@dataclass(frozen=True)
class Violation:
    """Why a set fails to be a filter.

    ``NotUpClosed``: ``elements = (x, y)`` with x inside, y >= x outside.
    ``MeetEscapes``: ``elements`` is S inside the set, ``value`` its meet, outside.
    ``PrimeFails``: ``elements`` is T outside the set, ``value`` its join, inside.
    """

    kind: str
    elements: tuple
    value: int | None = None

    def to_dict(self, poset: Poset) -> dict:
        out = {"kind": self.kind, "elements": [poset.labels[x] for x in self.elements]}
        if self.value is not None:
            out["value"] = poset.labels[self.value]
        return out


def _lower_bounds(poset, mask):
    lb = poset.full
    for s in bits(mask):
        lb &= poset.down[s]
    return lb


def _upper_bounds(poset, mask):
    ub = poset.full
    for s in bits(mask):
        ub &= poset.up[s]
    return ub


def up_violation(poset: Poset, g: int) -> Violation | None:
    for x in bits(g):
        missing = poset.up[x] & ~g
        if missing:
            return Violation(NOT_UP_CLOSED, (x, next(bits(missing))))
    return None


def meet_violation(poset: Poset, g: int, m: Bound) -> Violation | None:
    """A meet of fewer than ``m`` members of ``g`` that lies outside ``g``."""
    if m.is_omega:
        up, down = poset.up, poset.down
        for z in bits(poset.full & ~g):
            inside = up[z] & g
            if inside and _lower_bounds(poset, inside) & ~down[z] == 0:
                return Violation(MEET_ESCAPES, tuple(bits(poset.min_reduce(inside))), z)
        return None
    for s in antichain_masks(poset, g, m.value - 1, min_size=2):
        z = poset.meet_mask(s)
        if z is not None and not g >> z & 1:
            return Violation(MEET_ESCAPES, tuple(bits(s)), z)
    return None


def prime_violation(poset: Poset, g: int, n: Bound) -> Violation | None:
    """A set of fewer than ``n`` elements outside ``g`` whose join lies in ``g``."""
    up, down = poset.up, poset.down
    for z in bits(g):
        outside = down[z] & ~g
        if not outside:
            continue
        if n.is_omega:
            if _upper_bounds(poset, outside) & ~up[z] == 0:
                return Violation(PRIME_FAILS, tuple(bits(poset.max_reduce(outside))), z)
        else:
            for t in antichain_masks(poset, outside, n.value - 1, min_size=2):
                if poset.join_mask(t) == z:
                    return Violation(PRIME_FAILS, tuple(bits(t)), z)
    return None


def check_filter(poset: Poset, g, m: Bound, n: Bound) -> Violation | None:
    """Return the first violated filter condition for ``g``, or None if it is an (m,n)-filter."""
    g = g if isinstance(g, int) else poset._mask(g)
    return up_violation(poset, g) or meet_violation(poset, g, m) or prime_violation(poset, g, n)


def is_filter(poset: Poset, g, m: Bound, n: Bound) -> bool:
    return check_filter(poset, g, m, n) is None


def closure_meet_up(poset: Poset, s, m: Bound) -> frozenset:
    """Least up-closed, m-complete set containing ``s``: alternately close
    upwards and add the missing meets until nothing changes."""
    g = poset.up_mask(s if isinstance(s, int) else poset._mask(s))
    up, down = poset.up, poset.down
    while True:
        new = 0
        if m.is_omega:
            for z in bits(poset.full & ~g):
                inside = up[z] & g
                if inside and _lower_bounds(poset, inside) & ~down[z] == 0:
                    new |= 1 << z
        else:
            for a in antichain_masks(poset, g, m.value - 1, min_size=2):
                z = poset.meet_mask(a)
                if z is not None and not g >> z & 1:
                    new |= 1 << z
        if not new:
            return as_set(g)
        g |= poset.up_mask(new)


def enumerate_filters_bruteforce(
    poset: Poset, m: Bound, n: Bound, max_size: int = 20, include_empty: bool = True
) -> list[Filter]:
    """Every (m,n)-filter, found by testing the up-set of each antichain.

    Sorted by size, then by element indices; the empty filter comes last.
    """
    if poset.size > max_size:
        raise PosetTooLarge(f"poset has {poset.size} elements; brute force is capped at {max_size}")
    found = []
    for a in antichain_masks(poset):
        g = poset.up_mask(a)
        if (g or include_empty) and check_filter(poset, g, m, n) is None:
            found.append(as_set(g))
    found.sort(key=lambda c: (not c, len(c), sorted(c)))
    return [Filter(c, m, n) for c in found]


class SeparationSearch:
    """Propagate-and-branch search for filters containing p but not q.

    Assignments are two bitmasks, ``inn`` (forced members) and ``out``
    (forced non-members).  Propagation closes ``inn`` upwards and ``out``
    downwards, adds forced meets, and applies unit primality.  When the
    propagated ``inn`` still violates primality at some join, the search
    branches over the free maximal elements below it, fewest choices first.

    One instance can serve many pairs of the same poset and bounds.
    """

    def __init__(self, poset: Poset, m: Bound, n: Bound):
        self.poset = poset
        self.m = m
        self.n = n
        size = poset.size
        self.meet_by_member = [[] for _ in range(size)]
        self.meet_by_result = [[] for _ in range(size)]
        self.join_by_member = [[] for _ in range(size)]
        self.join_by_result = [[] for _ in range(size)]
        if not m.is_omega:
            for s, z in poset.nontrivial_meets(m.value - 1):
                self.meet_by_result[z].append(s)
                for x in bits(s):
                    self.meet_by_member[x].append((s, z))
        if not n.is_omega:
            for t, z in poset.nontrivial_joins(n.value - 1):
                self.join_by_result[z].append(t)
                for x in bits(t):
                    self.join_by_member[x].append((t, z))
        self.nodes = 0

    def find(self, p: int, q: int) -> Filter | None:
        poset = self.poset
        poset._check(p, q)
        if poset.leq(p, q):
            raise NotSeparablePair(f"{poset.labels[p]} <= {poset.labels[q]}: no filter can separate them")
        state = self._propagate(0, 0, [(p, True), (q, False)])
        if state is None:
            return None
        found = self._search(*state)
        if found is None:
            return None
        return Filter(as_set(found), self.m, self.n)

    def _search(self, inn, out):
        self.nodes += 1
        choices = self._branch_choices(inn, out)
        if choices is None:
            return inn
        for t in bits(choices):
            state = self._propagate(inn, out, [(t, True)])
            if state is not None:
                found = self._search(*state)
                if found is not None:
                    return found
            state = self._propagate(inn, out, [(t, False)])
            if state is None:
                return None
            inn, out = state
        return None

    def _branch_choices(self, inn, out):
        """Free elements of the unsatisfied primality constraint with fewest of them."""
        poset = self.poset
        best = None
        best_count = None
        for z in bits(inn):
            if self.n.is_omega:
                below = poset.down[z] & ~inn
                if not below or _upper_bounds(poset, below) & ~poset.up[z]:
                    continue
                free = poset.max_reduce(below) & ~out
            else:
                free = None
                for t in self.join_by_result[z]:
                    if t & inn:
                        continue
                    cand = t & ~out
                    if free is None or cand.bit_count() < free.bit_count():
                        free = cand
                if free is None:
                    continue
            count = free.bit_count()
            if best is None or count < best_count:
                best, best_count = free, count
                if count <= 1:
                    break
        return best

    def _propagate(self, inn, out, queue):
        poset = self.poset
        up, down, full = poset.up, poset.down, poset.full
        m_omega, n_omega = self.m.is_omega, self.n.is_omega
        queue = list(queue)

        # Pending assignments are applied lazily: set bits first, then process.
        while queue:
            x, val = queue.pop()
            bit = 1 << x
            if val:
                if out & bit:
                    return None
                if inn & bit:
                    continue
                inn |= bit
                new = up[x] & ~inn
                if new & out:
                    return None
                for y in bits(new):
                    queue.append((y, True))

                for s, z in self.meet_by_member[x]:
                    rest = s & ~inn
                    if not rest:
                        queue.append((z, True))
                    elif out >> z & 1 and not rest & out and rest & (rest - 1) == 0:
                        queue.append((rest.bit_length() - 1, False))

                for t in self.join_by_result[x]:
                    if t & inn:
                        continue
                    free = t & ~out
                    if not free:
                        return None
                    if free & (free - 1) == 0:
                        queue.append((free.bit_length() - 1, True))

                if m_omega:
                    for z in bits(down[x] & ~bit & ~inn):
                        lb = _lower_bounds(poset, up[z] & inn)
                        if lb & ~down[z] == 0:
                            if out >> z & 1:
                                return None
                            queue.append((z, True))
                        elif out >> z & 1:
                            for s in bits(up[z] & ~inn & ~out):
                                if lb & down[s] & ~down[z] == 0:
                                    queue.append((s, False))

                if n_omega:
                    res = self._omega_prime_units(x, inn, out)
                    if res is None:
                        return None
                    queue.extend(res)
            else:
                if inn & bit:
                    return None
                if out & bit:
                    continue
                out |= bit
                new = down[x] & ~out
                if new & inn:
                    return None
                for y in bits(new):
                    queue.append((y, False))

                for s in self.meet_by_result[x]:
                    rest = s & ~inn
                    if not rest:
                        return None
                    if not rest & out and rest & (rest - 1) == 0:
                        queue.append((rest.bit_length() - 1, False))

                for t, z in self.join_by_member[x]:
                    if t & inn:
                        continue
                    free = t & ~out
                    if inn >> z & 1:
                        if not free:
                            return None
                        if free & (free - 1) == 0:
                            queue.append((free.bit_length() - 1, True))
                    elif not free:
                        queue.append((z, False))

                if m_omega:
                    inside = up[x] & inn
                    lb = _lower_bounds(poset, inside) if inside else full
                    if inside and lb & ~down[x] == 0:
                        return None
                    for s in bits(up[x] & ~inn & ~out):
                        if lb & down[s] & ~down[x] == 0:
                            queue.append((s, False))

                if n_omega:
                    for z in bits(up[x] & ~bit):
                        if inn >> z & 1:
                            res = self._omega_prime_units(z, inn, out)
                            if res is None:
                                return None
                            queue.extend(res)
                        elif not out >> z & 1:
                            if _upper_bounds(poset, down[z] & out) & ~up[z] == 0:
                                queue.append((z, False))
        return inn, out

    def _omega_prime_units(self, z, inn, out):
        """Forced members below ``z`` (which is in): None on conflict."""
        poset = self.poset
        up = poset.up
        excluded = poset.down[z] & out
        ub = _upper_bounds(poset, excluded) if excluded else poset.full
        if excluded and ub & ~up[z] == 0:
            return None
        forced = []
        for t in bits(poset.down[z] & ~inn & ~out):
            if ub & up[t] & ~up[z] == 0:
                forced.append((t, True))
        return forced


def find_separating_filter(
    poset: Poset, p: int, q: int, m: Bound, n: Bound, search: SeparationSearch | None = None
) -> Filter | None:
    """An (m,n)-filter containing ``p`` and not ``q``, or None if there is none."""
    if search is None:
        search = SeparationSearch(poset, m, n)
    return search.find(p, q)
