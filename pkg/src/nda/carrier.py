"""Finite ordered universes of representable values.

A carrier is either an integer range ``0..max`` (step 1) or a real grid
``0, eps, 2*eps, ..., max``.  All navigation is done in index space; grid
values are always derived as ``i * step`` and never accumulated, so two
routes to the same grid point produce bit-identical floats.

The minimum is pinned to 0 so the additive neutral element exists in every
arithmetic built on top.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    CarrierIndexError,
    OffCarrierError,
    SpecError,
    SuccessorOfTopError,
    ValidationError,
)

INTEGER_RANGE = "integer-range"
REAL_GRID = "real-grid"

# How far (relative) a value may sit from the nearest grid point and still
# be accepted by index_of.
GRID_TOLERANCE = 1e-9


@dataclass(frozen=True)
class Carrier:
    """A finite ordered set of values with successor/predecessor structure."""

    kind: str
    min: int | float
    max: int | float
    step: int | float
    size: int

    @classmethod
    def integers(cls, max_value: int) -> "Carrier":
        """Integer range 0..max_value inclusive, step 1."""
        if max_value != int(max_value) or max_value < 1:
            raise ValidationError(f"integer carrier needs an integer max >= 1, got {max_value}")
        return cls(INTEGER_RANGE, 0, int(max_value), 1, int(max_value) + 1)

    @classmethod
    def grid(cls, max_value: float, step: float) -> "Carrier":
        """Real grid 0, step, 2*step, ..., max_value."""
        if step <= 0:
            raise ValidationError(f"grid step must be positive, got {step}")
        steps = round(max_value / step)
        if steps < 1 or abs(steps * step - max_value) > GRID_TOLERANCE * max(1.0, abs(max_value)):
            raise ValidationError(f"grid max {max_value} is not a whole number of steps of {step}")
        return cls(REAL_GRID, 0.0, max_value, step, steps + 1)

    @classmethod
    def from_spec(cls, spec: str) -> "Carrier":
        """Parse ``int:<min>:<max>`` or ``grid:<min>:<max>:<step>``."""
        parts = spec.split(":")
        try:
            if parts[0] == "int" and len(parts) == 3:
                lo, hi = int(parts[1]), int(parts[2])
            elif parts[0] == "grid" and len(parts) == 4:
                lo, hi, step = float(parts[1]), float(parts[2]), float(parts[3])
            else:
                raise SpecError(f"bad carrier spec {spec!r} (want int:<min>:<max> or grid:<min>:<max>:<step>)")
        except ValueError as exc:
            raise SpecError(f"bad number in carrier spec {spec!r}: {exc}") from None
        if lo != 0:
            raise ValidationError(f"carrier min must be 0 (got {lo}); the additive neutral lives there")
        if parts[0] == "int":
            return cls.integers(hi)
        return cls.grid(hi, step)

    @property
    def spec(self) -> str:
        if self.kind == INTEGER_RANGE:
            return f"int:0:{self.max}"
        return f"grid:0:{self.max:g}:{self.step:g}"

    def value_at(self, i: int) -> int | float:
        """The i-th carrier value, derived from the index (never accumulated)."""
        if not 0 <= i < self.size:
            raise CarrierIndexError(f"index {i} outside [0, {self.size})")
        if self.kind == INTEGER_RANGE:
            return i
        return i * self.step

    def index_of(self, v: int | float) -> int:
        """Inverse of value_at; rejects values off the grid beyond tolerance."""
        try:
            i = round(v / self.step) if self.kind == REAL_GRID else round(v)
        except TypeError:
            raise OffCarrierError(f"{v!r} is not a number") from None
        if not 0 <= i < self.size:
            raise OffCarrierError(f"{v} outside carrier [0, {self.max}]")
        grid_value = self.value_at(i)
        if abs(v - grid_value) > GRID_TOLERANCE * max(1.0, abs(v), abs(grid_value)):
            raise OffCarrierError(f"{v} is not on the carrier (nearest point {grid_value})")
        return i

    def succ(self, v: int | float) -> int | float:
        """The next carrier value above v."""
        i = self.index_of(v)
        if i == self.size - 1:
            raise SuccessorOfTopError(f"{v} is the top element; it has no successor")
        return self.value_at(i + 1)

    def clamp(self, v: int | float) -> int | float:
        """Restrict v to [min, max]; identity on carrier values."""
        if v < self.min:
            return self.min
        if v > self.max:
            return self.max
        return v

    def __contains__(self, v) -> bool:
        try:
            self.index_of(v)
        except OffCarrierError:
            return False
        return True

    def values(self):
        """All carrier values in ascending order."""
        return (self.value_at(i) for i in range(self.size))
