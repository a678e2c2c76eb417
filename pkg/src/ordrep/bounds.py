"""Cardinal bounds ``3 <= m, n <= omega`` on the size of preserved meets and joins."""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering


@total_ordering
@dataclass(frozen=True)
class Bound:
    """Either a finite cardinal ``k >= 3`` or omega (``value is None``).

    A subset of size ``s`` is *within* the bound when ``s < k``; every finite
    size is within omega.
    """

    value: int | None = None

    def __post_init__(self):
        if self.value is not None:
            if isinstance(self.value, bool) or not isinstance(self.value, int):
                raise TypeError(f"bound must be an int or None, got {self.value!r}")
            if self.value < 3:
                raise ValueError(f"finite bounds must be >= 3, got {self.value}")

    @classmethod
    def finite(cls, k: int) -> Bound:
        return cls(k)

    @classmethod
    def parse(cls, text) -> Bound:
        if isinstance(text, Bound):
            return text
        if isinstance(text, int):
            return cls(text)
        s = str(text).strip().lower()
        if s in ("omega", "w", "ω", "inf"):
            return OMEGA
        try:
            return cls(int(s))
        except ValueError:
            raise ValueError(f"bad bound {text!r}: expected an integer >= 3 or 'omega'") from None

    @property
    def is_omega(self) -> bool:
        return self.value is None

    def admits(self, size: int) -> bool:
        """True if a subset of ``size`` elements is strictly smaller than the bound."""
        return self.value is None or size < self.value

    @property
    def max_subset_size(self) -> int | None:
        return None if self.value is None else self.value - 1

    def __lt__(self, other):
        if not isinstance(other, Bound):
            return NotImplemented
        if self.value is None:
            return False
        return other.value is None or self.value < other.value

    def __str__(self):
        return "omega" if self.value is None else str(self.value)

    def __repr__(self):
        return f"Bound({self})"


OMEGA = Bound(None)
THREE = Bound(3)
