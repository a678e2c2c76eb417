"""Decide (m,n)-representability by separating every pair p </= q with a filter."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .bounds import Bound
from .filters import Filter, SeparationSearch
from .poset import Poset

BATCH_SIZE = 32


@dataclass
class DecisionReport:
    poset: Poset
    m: Bound
    n: Bound
    failing_pairs: list = field(default_factory=list)
    witnesses: dict = field(default_factory=dict)
    complete: bool = True  # False when stopped early by fail_fast

    @property
    def representable(self) -> bool:
        return not self.failing_pairs

    def filters(self) -> list[Filter]:
        """Distinct witness filters in order of first use."""
        seen = {}
        for f in self.witnesses.values():
            seen.setdefault(f.carrier, f)
        return list(seen.values())

    def to_dict(self, include_witnesses: bool = False) -> dict:
        labels = self.poset.labels
        out = {
            "representable": self.representable,
            "bounds": [str(self.m), str(self.n)],
            "failing_pairs": [[labels[x], labels[y]] for x, y in self.failing_pairs],
        }
        if not self.complete:
            out["complete"] = False
        if include_witnesses:
            wit: dict = {}
            for (x, y), f in self.witnesses.items():
                wit.setdefault(labels[x], {})[labels[y]] = f.labels(self.poset)
            out["witnesses"] = wit
        return out


def incomparable_pairs(poset: Poset) -> list[tuple[int, int]]:
    """Ordered pairs (x, y) with x </= y, in index order."""
    return [
        (x, y) for x in range(poset.size) for y in range(poset.size) if not poset.up[x] >> y & 1
    ]


_worker_search: SeparationSearch | None = None


def _init_worker(poset, m, n):
    global _worker_search
    _worker_search = SeparationSearch(poset, m, n)


def _search_pair(pair):
    return pair, _worker_search.find(*pair)


def is_representable(
    poset: Poset, m: Bound, n: Bound, fail_fast: bool = False, jobs: int = 1
) -> DecisionReport:
    """Search a separating filter for every incomparable ordered pair.

    A filter found for one pair is reused for every later pair it separates.
    With ``jobs > 1`` the uncached pairs of each batch are searched
    concurrently; witnesses are then assigned by the same first-cached-filter
    rule, so the report does not depend on ``jobs``.
    """
    report = DecisionReport(poset, m, n)
    pairs = incomparable_pairs(poset)
    cache: list[Filter] = []

    def cached(x, y):
        for f in cache:
            if x in f.carrier and y not in f.carrier:
                return f
        return None

    def record(pair, found):
        if found is None:
            report.failing_pairs.append(pair)
            return fail_fast
        report.witnesses[pair] = found
        if found.carrier not in known:
            known.add(found.carrier)
            cache.append(found)
        return False

    known: set = set()
    if jobs <= 1:
        search = SeparationSearch(poset, m, n)
        for pair in pairs:
            hit = cached(*pair)
            if hit is not None:
                report.witnesses[pair] = hit
                continue
            if record(pair, search.find(*pair)):
                report.complete = False
                break
        return report

    with ProcessPoolExecutor(max_workers=jobs, initializer=_init_worker, initargs=(poset, m, n)) as pool:
        for start in range(0, len(pairs), BATCH_SIZE):
            batch = [p for p in pairs[start:start + BATCH_SIZE] if cached(*p) is None]
            results = dict(pool.map(_search_pair, batch))
            stop = False
            for pair in pairs[start:start + BATCH_SIZE]:
                hit = cached(*pair)
                if hit is not None:
                    report.witnesses[pair] = hit
                elif record(pair, results[pair]):
                    stop = True
                    break
            if stop:
                report.complete = False
                break
    return report


def failing_pairs(poset: Poset, m: Bound, n: Bound, jobs: int = 1) -> list[tuple[int, int]]:
    return is_representable(poset, m, n, jobs=jobs).failing_pairs
