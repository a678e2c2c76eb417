"""The height-2 posets P_k and the label-preserving maps P_k -> P_l.

P_k is built from the base layer N_0 = {a, b, c, d}.  Layer N_{n+1} has one
element e(x,y) for each unordered pair of distinct elements of N_n, and every
element x of a layer has two incomparable "hats" x' and x''.  The order is

* x < p for x in N_0,
* x < x' and x < x'' for every layer element x,
* e(x,y) < x', x'', y', y'',
* q < x', x'' for x in the top layer N_k,

and nothing else is comparable.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from .errors import DepthTooLarge, InvalidDepths, NotApplicable
from .poset import Poset, build_poset

BASE_NAMES = "abcd"
DEFAULT_MAX_DEPTH = 4
DEPTH_ENV = "ORDREP_MAX_PK_DEPTH"


class PkLabel:
    """Structured name of an element of some P_k."""

    __slots__ = ()

    @property
    def layer(self) -> int | None:
        return None

    def sort_key(self):
        raise NotApplicable(f"{self} is not a layer element")


@dataclass(frozen=True)
class P(PkLabel):
    def __str__(self):
        return "p"


@dataclass(frozen=True)
class Q(PkLabel):
    def __str__(self):
        return "q"


@dataclass(frozen=True)
class Base(PkLabel):
    name: str

    def __post_init__(self):
        if self.name not in BASE_NAMES:
            raise ValueError(f"base label must be one of {BASE_NAMES!r}, not {self.name!r}")

    @property
    def layer(self):
        return 0

    def sort_key(self):
        return (BASE_NAMES.index(self.name),)

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Pair(PkLabel):
    """e(left,right); the components are swapped into canonical order."""

    left: PkLabel
    right: PkLabel
    _layer: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        for part in (self.left, self.right):
            if part.layer is None or isinstance(part, (Prime, DoublePrime)):
                raise ValueError(f"pair components must be layer elements, got {part}")
        if self.left.layer != self.right.layer:
            raise ValueError(f"pair components from different layers: {self.left}, {self.right}")
        if self.left == self.right:
            raise ValueError(f"pair components must be distinct: {self.left}")
        if self.right.sort_key() < self.left.sort_key():
            left, right = self.right, self.left
            object.__setattr__(self, "left", left)
            object.__setattr__(self, "right", right)
        object.__setattr__(self, "_layer", self.left.layer + 1)

    @property
    def layer(self):
        return self._layer

    def sort_key(self):
        return (self.left.sort_key(), self.right.sort_key())

    def __str__(self):
        return f"e({self.left},{self.right})"


@dataclass(frozen=True)
class Prime(PkLabel):
    base: PkLabel

    def __post_init__(self):
        _check_hat_base(self.base)

    @property
    def layer(self):
        return self.base.layer

    def __str__(self):
        return f"{self.base}'"


@dataclass(frozen=True)
class DoublePrime(PkLabel):
    base: PkLabel

    def __post_init__(self):
        _check_hat_base(self.base)

    @property
    def layer(self):
        return self.base.layer

    def __str__(self):
        return f"{self.base}''"


def _check_hat_base(base):
    if not isinstance(base, (Base, Pair)):
        raise ValueError(f"hats sit over layer elements only, not {base}")


def parse_label(text: str) -> PkLabel:
    """Inverse of ``str`` on labels: ``"e(e(a,b),c')"``-style strings."""
    s = text.strip()
    if s.endswith("''"):
        return DoublePrime(parse_label(s[:-2]))
    if s.endswith("'"):
        return Prime(parse_label(s[:-1]))
    if s == "p":
        return P()
    if s == "q":
        return Q()
    if len(s) == 1 and s in BASE_NAMES:
        return Base(s)
    if s.startswith("e(") and s.endswith(")"):
        body = s[2:-1]
        depth = 0
        for i, ch in enumerate(body):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch == "," and depth == 0:
                return Pair(parse_label(body[:i]), parse_label(body[i + 1:]))
    raise ValueError(f"not a P_k label: {text!r}")


def base_support(label: PkLabel) -> frozenset:
    """The base letters a layer or hat label is built from."""
    if isinstance(label, Base):
        return frozenset(label.name)
    if isinstance(label, Pair):
        return base_support(label.left) | base_support(label.right)
    if isinstance(label, (Prime, DoublePrime)):
        return base_support(label.base)
    raise NotApplicable(f"{label} has no base support")


@dataclass(frozen=True)
class Layer:
    """Classification of a P_k element: ``P``, ``Q``, ``N`` (with n) or ``Hat`` (with n)."""

    kind: str
    n: int | None = None

    def __str__(self):
        return self.kind if self.n is None else f"{self.kind}({self.n})"


def classify(label: PkLabel) -> Layer:
    if isinstance(label, P):
        return Layer("P")
    if isinstance(label, Q):
        return Layer("Q")
    if isinstance(label, (Prime, DoublePrime)):
        return Layer("Hat", label.layer)
    return Layer("N", label.layer)


@dataclass(frozen=True, eq=False)
class PkPoset:
    poset: Poset
    k: int
    names: tuple  # PkLabel per element index
    layers: tuple  # Layer per element index

    def __post_init__(self):
        object.__setattr__(self, "_by_name", {lab: i for i, lab in enumerate(self.names)})

    def layer_of(self, x: int) -> Layer:
        return self.layers[x]

    def index_of(self, label) -> int:
        if isinstance(label, str):
            label = parse_label(label)
        return self._by_name[label]

    def __contains__(self, label):
        return label in self._by_name

    @property
    def p(self) -> int:
        return self._by_name[P()]

    @property
    def q(self) -> int:
        return self._by_name[Q()]

    def layer(self, n: int) -> frozenset:
        """Elements of N_n."""
        return self._select(Layer("N", n))

    def hats(self, n: int) -> frozenset:
        """Elements of the hat layer over N_n."""
        return self._select(Layer("Hat", n))

    def _select(self, layer):
        return frozenset(i for i, lay in enumerate(self.layers) if lay == layer)


def max_depth_from_env() -> int:
    raw = os.environ.get(DEPTH_ENV)
    if raw is None:
        return DEFAULT_MAX_DEPTH
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{DEPTH_ENV} must be an integer, got {raw!r}") from None


def layer_sizes(k: int) -> list[int]:
    sizes = [len(BASE_NAMES)]
    for _ in range(k):
        sizes.append(sizes[-1] * (sizes[-1] - 1) // 2)
    return sizes


def generate_pk(k: int, max_depth: int | None = None) -> PkPoset:
    """Generate P_k.  Depths above ``max_depth`` (default 4, or the
    ``ORDREP_MAX_PK_DEPTH`` environment variable) are refused."""
    if isinstance(k, bool) or not isinstance(k, int) or k < 0:
        raise InvalidDepths(f"depth must be a non-negative integer, got {k!r}")
    cap = max_depth_from_env() if max_depth is None else max_depth
    if k > cap:
        raise DepthTooLarge(
            f"P_{k} has {2 + 3 * sum(layer_sizes(k))} elements; raise the cap (currently {cap}) to build it"
        )
    return _generate(k)


@lru_cache(maxsize=None)
def _generate(k: int) -> PkPoset:
    layers = [[Base(c) for c in BASE_NAMES]]
    for _ in range(k):
        layers.append([Pair(x, y) for x, y in combinations(layers[-1], 2)])

    names: list[PkLabel] = [P(), Q()]
    for layer in layers:
        names.extend(layer)
        for x in layer:
            names.extend((Prime(x), DoublePrime(x)))

    strict = []
    for x in layers[0]:
        strict.append((x, P()))
    for layer in layers:
        for x in layer:
            strict.extend(((x, Prime(x)), (x, DoublePrime(x))))
            if isinstance(x, Pair):
                for part in (x.left, x.right):
                    strict.extend(((x, Prime(part)), (x, DoublePrime(part))))
    for x in layers[k]:
        strict.extend(((Q(), Prime(x)), (Q(), DoublePrime(x))))

    poset = build_poset([str(n) for n in names], [(str(a), str(b)) for a, b in strict], kind="order")
    return PkPoset(poset, k, tuple(names), tuple(classify(n) for n in names))


def _iota_label(label: PkLabel) -> PkLabel:
    # One step P_k -> P_{k+1}, defined by recursion on the label structure.
    if isinstance(label, (P, Q, Base)):
        return label
    if isinstance(label, Pair):
        return Pair(_iota_label(label.left), _iota_label(label.right))
    return type(label)(_iota_label(label.base))


def iota_step(k: int, max_depth: int | None = None) -> dict[int, int]:
    """The map P_k -> P_{k+1} as a dict of element indices."""
    src = generate_pk(k, max_depth)
    dst = generate_pk(k + 1, max_depth)
    return {i: dst.index_of(_iota_label(lab)) for i, lab in enumerate(src.names)}


def iota_embed(k: int, l: int, max_depth: int | None = None) -> dict[int, int]:
    """Compose single steps into a map P_k -> P_l (identity when k == l).

    The map preserves and reflects the order except on the pairs (q, y) with
    y a hat over N_k: q < y in P_k, but the images are incomparable once l > k.
    """
    if not (isinstance(k, int) and isinstance(l, int)) or k < 0 or l < k:
        raise InvalidDepths(f"need 0 <= k <= l, got k={k}, l={l}")
    mapping = {i: i for i in range(len(generate_pk(k, max_depth).names))}
    for step in range(k, l):
        nxt = iota_step(step, max_depth)
        mapping = {i: nxt[j] for i, j in mapping.items()}
    return mapping
