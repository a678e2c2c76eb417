"""Finite posets stored as dense bitset rows of the order matrix.

Elements are the integers ``0 .. size-1``; each carries a distinct display
label.  Row ``up[i]`` is the bitmask of all ``j`` with ``i <= j`` and
``down[i]`` the mask of all ``j`` with ``j <= i``.  Subsets passed across the
public API are ``frozenset`` objects of indices; internally most code works on
int bitmasks.
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Iterator, Sequence

from .errors import (
    CycleDetected,
    DuplicateLabel,
    EmptyPoset,
    EmptySubset,
    IndexOutOfRange,
    NotTransitive,
    UnknownLabel,
)

ElementSet = frozenset


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask``, in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def as_set(mask: int) -> frozenset:
    return frozenset(bits(mask))


class Poset:
    """An immutable finite poset.  Build one with :func:`build_poset`."""

    __slots__ = ("labels", "size", "up", "down", "comparable", "full", "_index")

    def __init__(self, labels: Sequence[str], up: Sequence[int]):
        self.labels = tuple(labels)
        self.size = len(self.labels)
        self.up = tuple(up)
        down = [0] * self.size
        for i, row in enumerate(self.up):
            for j in bits(row):
                down[j] |= 1 << i
        self.down = tuple(down)
        self.comparable = tuple(u | d for u, d in zip(self.up, self.down))
        self.full = (1 << self.size) - 1
        self._index = {lab: i for i, lab in enumerate(self.labels)}

    # -- element access -------------------------------------------------

    def __len__(self):
        return self.size

    def __repr__(self):
        return f"<Poset size={self.size} covers={len(self.covers())}>"

    def __eq__(self, other):
        if not isinstance(other, Poset):
            return NotImplemented
        return self.labels == other.labels and self.up == other.up

    def __hash__(self):
        return hash((self.labels, self.up))

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownLabel(label) from None

    def label(self, x: int) -> str:
        self._check(x)
        return self.labels[x]

    def labels_of(self, xs: Iterable[int]) -> list[str]:
        return [self.labels[x] for x in sorted(xs)]

    def _check(self, *xs):
        for x in xs:
            if not (isinstance(x, int) and 0 <= x < self.size):
                raise IndexOutOfRange(f"element {x!r} not in poset of size {self.size}")

    # -- order queries --------------------------------------------------

    def leq(self, x: int, y: int) -> bool:
        self._check(x, y)
        return bool(self.up[x] >> y & 1)

    def lt(self, x: int, y: int) -> bool:
        return x != y and self.leq(x, y)

    def upset(self, s: Iterable[int]) -> frozenset:
        return as_set(self.up_mask(self._mask(s)))

    def downset(self, s: Iterable[int]) -> frozenset:
        return as_set(self.down_mask(self._mask(s)))

    def up_mask(self, mask: int) -> int:
        out = 0
        for i in bits(mask):
            out |= self.up[i]
        return out

    def down_mask(self, mask: int) -> int:
        out = 0
        for i in bits(mask):
            out |= self.down[i]
        return out

    def _mask(self, s: Iterable[int]) -> int:
        s = list(s)
        self._check(*s)
        return mask_of(s)

    def minimal(self) -> frozenset:
        return frozenset(x for x in range(self.size) if self.down[x] == 1 << x)

    def maximal(self) -> frozenset:
        return frozenset(x for x in range(self.size) if self.up[x] == 1 << x)

    def extremal_elements(self) -> tuple[frozenset, frozenset]:
        """``(minimal, maximal)`` element sets."""
        return self.minimal(), self.maximal()

    def min_reduce(self, mask: int) -> int:
        return mask_of(x for x in bits(mask) if self.down[x] & mask == 1 << x)

    def max_reduce(self, mask: int) -> int:
        return mask_of(x for x in bits(mask) if self.up[x] & mask == 1 << x)

    def height(self) -> int:
        """Number of elements in a longest chain."""
        if self.size == 0:
            raise EmptyPoset("height of the empty poset is undefined")
        order = sorted(range(self.size), key=lambda x: self.down[x].bit_count())
        h = [1] * self.size
        for x in order:
            below = self.down[x] & ~(1 << x)
            if below:
                h[x] = 1 + max(h[y] for y in bits(below))
        return max(h)

    def covers(self) -> list[tuple[int, int]]:
        """Covering pairs ``(x, y)`` with ``x < y`` and nothing strictly between."""
        out = []
        for x in range(self.size):
            above = self.up[x] & ~(1 << x)
            for y in bits(above):
                if above & self.down[y] & ~(1 << y) == 0:
                    out.append((x, y))
        return out

    # -- meets and joins --------------------------------------------------

    def meet_mask(self, mask: int) -> int | None:
        """Index of the greatest lower bound of a nonempty mask, or None."""
        lower = self.full
        for s in bits(mask):
            lower &= self.down[s]
        for g in bits(lower):
            if lower & ~self.down[g] == 0:
                return g
        return None

    def join_mask(self, mask: int) -> int | None:
        upper = self.full
        for s in bits(mask):
            upper &= self.up[s]
        for g in bits(upper):
            if upper & ~self.up[g] == 0:
                return g
        return None

    def meet_of(self, s: Iterable[int]) -> int | None:
        mask = self._mask(s)
        if not mask:
            raise EmptySubset("meets are only taken over nonempty subsets")
        return self.meet_mask(mask)

    def join_of(self, s: Iterable[int]) -> int | None:
        mask = self._mask(s)
        if not mask:
            raise EmptySubset("joins are only taken over nonempty subsets")
        return self.join_mask(mask)

    def is_join_prime(self, x: int) -> bool:
        """True iff ``x <= join(T)`` forces ``x <= t`` for some ``t`` in ``T``.

        ``x`` fails exactly when some ``z >= x`` is the join of everything
        below ``z`` that is not above ``x``.
        """
        self._check(x)
        for z in bits(self.up[x]):
            rest = self.down[z] & ~self.up[x]
            if rest and self.join_mask(rest) == z:
                return False
        return True

    def is_meet_prime(self, x: int) -> bool:
        self._check(x)
        for z in bits(self.down[x]):
            rest = self.up[z] & ~self.down[x]
            if rest and self.meet_mask(rest) == z:
                return False
        return True

    def nontrivial_meets(self, max_size: int | None = None) -> Iterator[tuple[int, int]]:
        """Yield ``(antichain_mask, z)`` for every antichain of 2..max_size
        elements whose meet ``z`` exists, grouped by ``z``."""
        for z in range(self.size):
            above = self.up[z] & ~(1 << z)
            for a in antichain_masks(self, above, max_size, min_size=2):
                if self.meet_mask(a) == z:
                    yield a, z

    def nontrivial_joins(self, max_size: int | None = None) -> Iterator[tuple[int, int]]:
        for z in range(self.size):
            below = self.down[z] & ~(1 << z)
            for a in antichain_masks(self, below, max_size, min_size=2):
                if self.join_mask(a) == z:
                    yield a, z

    # -- derived posets and serialization ---------------------------------

    def dual(self) -> Poset:
        return Poset(self.labels, self.down)

    def to_dict(self, kind: str = "covers") -> dict:
        if kind == "covers":
            pairs = self.covers()
        elif kind == "order":
            pairs = [(x, y) for x in range(self.size) for y in bits(self.up[x]) if x != y]
        else:
            raise ValueError(f"kind must be 'covers' or 'order', not {kind!r}")
        return {
            "labels": list(self.labels),
            "pairs": [[self.labels[x], self.labels[y]] for x, y in pairs],
            "kind": kind,
        }

    def to_json(self, kind: str = "covers") -> str:
        return json.dumps(self.to_dict(kind))

    @classmethod
    def from_dict(cls, data: dict) -> Poset:
        try:
            labels = data["labels"]
            pairs = data.get("pairs", [])
            kind = data.get("kind", "covers")
        except (TypeError, AttributeError):
            raise ValueError("poset JSON must be an object with 'labels' and 'pairs'") from None
        if not isinstance(labels, list) or not all(isinstance(s, str) for s in labels):
            raise ValueError("'labels' must be an array of strings")
        if not isinstance(pairs, list) or not all(
            isinstance(p, (list, tuple)) and len(p) == 2 for p in pairs
        ):
            raise ValueError("'pairs' must be an array of 2-element arrays")
        return build_poset(labels, [tuple(p) for p in pairs], kind)

    @classmethod
    def from_json(cls, text: str) -> Poset:
        return cls.from_dict(json.loads(text))

    @classmethod
    def load(cls, path) -> Poset:
        with open(path) as fh:
            return cls.from_dict(json.load(fh))


def antichain_masks(
    poset: Poset, within: int | None = None, max_size: int | None = None, min_size: int = 0
) -> Iterator[int]:
    """Yield every antichain contained in ``within`` as a bitmask.

    Antichains come out in lexicographic order of their sorted index tuples
    (the empty antichain first).  ``max_size`` caps the cardinality.
    """
    if within is None:
        within = poset.full
    comp = poset.comparable

    def rec(allowed, chosen, size):
        if size >= min_size:
            yield chosen
        if max_size is not None and size >= max_size:
            return
        m = allowed
        while m:
            low = m & -m
            m ^= low
            yield from rec(m & ~comp[low.bit_length() - 1], chosen | low, size + 1)

    yield from rec(within, 0, 0)


def build_poset(labels: Sequence[str], pairs: Iterable[tuple[str, str]], kind: str = "covers") -> Poset:
    """Build a poset from labelled pairs.

    With ``kind="covers"`` the order is the reflexive-transitive closure of
    ``pairs``.  With ``kind="order"`` the pairs must already list the whole
    strict order.  Self-pairs and repeated pairs are ignored.
    """
    if kind not in ("covers", "order"):
        raise ValueError(f"kind must be 'covers' or 'order', not {kind!r}")
    labels = list(labels)
    index: dict[str, int] = {}
    for i, lab in enumerate(labels):
        if lab in index:
            raise DuplicateLabel(f"duplicate label: {lab!r}")
        index[lab] = i
    n = len(labels)
    succ = [0] * n
    for a, b in pairs:
        if a not in index:
            raise UnknownLabel(a)
        if b not in index:
            raise UnknownLabel(b)
        i, j = index[a], index[b]
        if i != j:
            succ[i] |= 1 << j

    topo = _topological_order(succ, labels)

    if kind == "covers":
        up = [0] * n
        for i in reversed(topo):
            row = 1 << i
            for j in bits(succ[i]):
                row |= up[j]
            up[i] = row
    else:
        up = [succ[i] | 1 << i for i in range(n)]
        for i in range(n):
            for j in bits(succ[i]):
                missing = succ[j] & ~up[i]
                if missing:
                    k = next(bits(missing))
                    raise NotTransitive(labels[i], labels[j], labels[k])
    return Poset(labels, up)


def _topological_order(succ: list[int], labels: list[str]) -> list[int]:
    """Return a topological order of the strict graph or raise CycleDetected."""
    n = len(succ)
    state = [0] * n  # 0 new, 1 on stack, 2 done
    order: list[int] = []
    for root in range(n):
        if state[root]:
            continue
        stack = [(root, iter(bits(succ[root])))]
        path = [root]
        state[root] = 1
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                stack.pop()
                path.pop()
                state[node] = 2
                order.append(node)
            elif state[nxt] == 1:
                cycle = path[path.index(nxt):]
                raise CycleDetected([labels[c] for c in cycle])
            elif state[nxt] == 0:
                state[nxt] = 1
                path.append(nxt)
                stack.append((nxt, iter(bits(succ[nxt]))))
    order.reverse()
    return order
