"""CNF encoding of "some (m,n)-filter contains p but not q".

Variable ``i + 1`` stands for "element i is in the filter".  Clause families:

* up-closure   ``-x  y``            for every x < y
* completeness ``-s1 ... -sk  z``   for every antichain S with meet z, |S| < m
* primality    ``-z  t1 ... tk``    for every antichain T with join z, |T| < n
* units        ``p`` and ``-q``

Formulas round-trip through DIMACS text; the comment header records the
poset, the pair and the bounds so a solver's answer can be decoded later.
"""

from __future__ import annotations

import json
import os
from collections import defaultdict
from dataclasses import dataclass, field

from .bounds import Bound
from .errors import AntichainExplosion, MalformedSolverOutput, NotSeparablePair
from .poset import Poset, antichain_masks, bits

DEFAULT_MAX_ROWS = 10**6


@dataclass
class CnfFormula:
    variable_count: int
    clauses: list = field(default_factory=list)
    comments: list = field(default_factory=list)
    labels: tuple = ()
    pair: tuple | None = None
    bounds: tuple | None = None

    def decode(self, model: dict) -> frozenset:
        """Element indices whose variables are true in ``model``."""
        return frozenset(v - 1 for v, val in model.items() if val and 1 <= v <= self.variable_count)


def encode_separation(
    poset: Poset, p: int, q: int, m: Bound, n: Bound, max_rows: int = DEFAULT_MAX_ROWS
) -> CnfFormula:
    poset._check(p, q)
    if poset.leq(p, q):
        raise NotSeparablePair(f"{poset.labels[p]} <= {poset.labels[q]}")
    clauses: list[tuple[int, ...]] = []
    budget = [max_rows]

    def visit(masks):
        for a in masks:
            budget[0] -= 1
            if budget[0] < 0:
                raise AntichainExplosion(
                    f"more than {max_rows} antichains needed to encode this instance; use the search instead"
                )
            yield a

    for x in range(poset.size):
        for y in bits(poset.up[x] & ~(1 << x)):
            clauses.append((-(x + 1), y + 1))

    for z in range(poset.size):
        above = poset.up[z] & ~(1 << z)
        for s in visit(antichain_masks(poset, above, m.max_subset_size, min_size=2)):
            if poset.meet_mask(s) == z:
                clauses.append(tuple(-(x + 1) for x in bits(s)) + (z + 1,))
    for z in range(poset.size):
        below = poset.down[z] & ~(1 << z)
        for t in visit(antichain_masks(poset, below, n.max_subset_size, min_size=2)):
            if poset.join_mask(t) == z:
                clauses.append((-(z + 1),) + tuple(x + 1 for x in bits(t)))

    clauses.append((p + 1,))
    clauses.append((-(q + 1),))

    labels = poset.labels
    comments = [
        "ordrep separating-filter instance",
        "poset " + json.dumps(poset.to_dict("covers"), separators=(",", ":")),
        "pair " + json.dumps([labels[p], labels[q]]),
        f"bounds {m} {n}",
    ]
    comments += [f"var {i + 1} {json.dumps(lab)}" for i, lab in enumerate(labels)]
    return CnfFormula(poset.size, clauses, comments, labels, (labels[p], labels[q]), (str(m), str(n)))


def dimacs_text(f: CnfFormula) -> str:
    lines = [f"c {c}" for c in f.comments]
    lines.append(f"p cnf {f.variable_count} {len(f.clauses)}")
    lines += [" ".join(map(str, c)) + " 0" for c in f.clauses]
    return "\n".join(lines) + "\n"


def write_dimacs(f: CnfFormula, path) -> None:
    with open(path, "w") as fh:
        fh.write(dimacs_text(f))


def read_dimacs(text: str) -> CnfFormula:
    comments, clauses = [], []
    header = None
    pending: list[int] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("c"):
            comments.append(line[2:] if line.startswith("c ") else line[1:])
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"bad DIMACS header: {line!r}")
            header = (int(parts[2]), int(parts[3]))
            continue
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(tuple(pending))
                pending = []
            else:
                pending.append(lit)
    if header is None:
        raise ValueError("missing 'p cnf' header")
    if pending:
        clauses.append(tuple(pending))
    f = CnfFormula(header[0], clauses, comments)
    labels = {}
    for c in comments:
        key, _, rest = c.partition(" ")
        if key == "pair":
            f.pair = tuple(json.loads(rest))
        elif key == "bounds":
            f.bounds = tuple(rest.split())
        elif key == "var":
            num, _, lab = rest.partition(" ")
            labels[int(num)] = json.loads(lab)
    if labels:
        f.labels = tuple(labels[i] for i in sorted(labels))
    return f


def read_result(source) -> dict | None:
    """Parse solver output in the ``s``/``v`` line protocol.

    ``source`` is the output text or a path to it.  Returns the model as
    ``{variable: bool}`` or None for UNSATISFIABLE.
    """
    if isinstance(source, os.PathLike) or (
        isinstance(source, str) and "\n" not in source and os.path.isfile(source)
    ):
        with open(source) as fh:
            text = fh.read()
    else:
        text = source
    status = None
    model: dict[int, bool] = {}
    for raw in text.splitlines():
        line = raw.strip()
        if line.startswith("s "):
            word = line[2:].strip()
            if word == "SATISFIABLE":
                status = True
            elif word == "UNSATISFIABLE":
                status = False
            else:
                raise MalformedSolverOutput(f"solver did not decide the instance: {line!r}")
        elif line.startswith("v ") or line == "v":
            try:
                for tok in line[1:].split():
                    lit = int(tok)
                    if lit:
                        model[abs(lit)] = lit > 0
            except ValueError:
                raise MalformedSolverOutput(f"bad value line: {line!r}") from None
    if status is None:
        raise MalformedSolverOutput("no 's' status line in solver output")
    return model if status else None


def format_result(model: dict | None, variable_count: int) -> str:
    """Render a model in the ``s``/``v`` protocol (inverse of :func:`read_result`)."""
    if model is None:
        return "s UNSATISFIABLE\n"
    lits = [v if model.get(v, False) else -v for v in range(1, variable_count + 1)]
    return "s SATISFIABLE\nv " + " ".join(map(str, lits)) + " 0\n"


def solve_basic(f: CnfFormula) -> dict | None:
    """Small DPLL: unit propagation and splitting on the lowest free variable
    (true first).  Returns a full model or None if unsatisfiable."""
    nvars = f.variable_count
    clauses = [tuple(dict.fromkeys(c)) for c in f.clauses]
    if any(not c for c in clauses):
        return None
    occurs = defaultdict(list)
    for c in clauses:
        for lit in c:
            occurs[lit].append(c)
    val = [0] * (nvars + 1)
    trail: list[int] = []

    def lit_value(lit):
        v = val[abs(lit)]
        return v if lit > 0 else -v

    def assign(lit):
        val[abs(lit)] = 1 if lit > 0 else -1
        trail.append(abs(lit))

    def propagate(queue):
        while queue:
            lit = queue.pop()
            for c in occurs[-lit]:
                free = None
                count = 0
                for x in c:
                    v = lit_value(x)
                    if v == 1:
                        break
                    if v == 0:
                        count += 1
                        free = x
                else:
                    if count == 0:
                        return False
                    if count == 1:
                        assign(free)
                        queue.append(free)
        return True

    queue = []
    for c in clauses:
        if len(c) == 1:
            v = lit_value(c[0])
            if v == -1:
                return None
            if v == 0:
                assign(c[0])
                queue.append(c[0])
    if not propagate(queue):
        return None

    def undo(mark):
        while len(trail) > mark:
            val[trail.pop()] = 0

    def search(start):
        var = start
        while var <= nvars and val[var]:
            var += 1
        if var > nvars:
            return True
        for lit in (var, -var):
            mark = len(trail)
            assign(lit)
            if propagate([lit]) and search(var + 1):
                return True
            undo(mark)
        return False

    if not search(1):
        return None
    return {v: val[v] > 0 for v in range(1, nvars + 1)}
