"""The functional parameter f that induces an arithmetic.

f must be strictly increasing over the carrier, fix 0, and (when
multiplication is wanted) fix 1.  Families that take integer values on
integer carriers (identity, integral powers, exp2m1, quad) are evaluated
in exact integer arithmetic so order comparisons never suffer float
truncation; artanh goes through mpmath so each memoised value is the
correctly rounded double, which keeps additive identities like
artanh(u) + artanh(v) = artanh((u+v)/(1+uv)) exact whenever the target is
representable.

Validation happens once, at binding time; evaluation afterwards is total.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath

from .carrier import Carrier
from .errors import OffCarrierError, SpecError, TableError, ValidationError

IDENTITY = "identity"
POWER = "power"
EXP2M1 = "exp2m1"
QUAD = "quad"
ATANH = "atanh"
TABLE = "table"

# relative tolerance for the f(1) = 1 multiplicative check
ONE_TOLERANCE = 1e-12


@dataclass(frozen=True)
class FunctionalParameter:
    """A named, evaluable, strictly increasing map from carrier values to [0, +inf]."""

    name: str
    family: str
    param: float | None = None
    points: tuple[tuple[int | float, int | float], ...] = ()

    def evaluate(self, v: int | float) -> int | float:
        """f(v); deterministic, bit-identical for identical v."""
        if self.family == IDENTITY:
            return v
        if self.family == POWER:
            p = self.param
            if isinstance(v, int) and float(p).is_integer():
                return v ** int(p)
            return math.pow(v, p)
        if self.family == EXP2M1:
            if isinstance(v, int):
                return (1 << v) - 1
            return math.pow(2.0, v) - 1.0
        if self.family == QUAD:
            if isinstance(v, int):
                return (v + v * v) // 2
            return (v + v * v) / 2.0
        if self.family == ATANH:
            return _atanh_scaled(v, self.param)
        if self.family == TABLE:
            return self._table_lookup(v)
        raise SpecError(f"unknown f family {self.family!r}")

    def _table_lookup(self, v: int | float):
        for x, y in self.points:
            if x == v or abs(x - v) <= 1e-9 * max(1.0, abs(x), abs(v)):
                return y
        raise ValidationError(f"table f has no entry for carrier point {v}")

    def __str__(self) -> str:
        return self.name


def _atanh_scaled(v: float, c: float) -> float:
    """artanh(v/c), correctly rounded to double; +inf at and beyond v = c."""
    if v >= c:
        return math.inf
    if v == 0:
        return 0.0
    with mpmath.workdps(40):
        return float(mpmath.atanh(mpmath.mpf(v) / mpmath.mpf(c)))


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of checking f against a concrete carrier."""

    ok: bool
    multiplicative: bool
    points_checked: int
    failure_index: int | None = None
    reason: str | None = None

    def message(self) -> str:
        if self.ok:
            mult = "multiplication enabled" if self.multiplicative else "multiplication unavailable"
            return f"pass ({self.points_checked} points, {mult})"
        return f"fail at index {self.failure_index}: {self.reason}"


def bind(f: FunctionalParameter, carrier: Carrier) -> tuple[ValidationReport, list]:
    """Validate f over every carrier point and return (report, memoised values).

    The memo list is the single source of truth for the arithmetic built on
    top of it: all rounding searches run against these values.
    """
    values: list = []
    for i in range(carrier.size):
        v = carrier.value_at(i)
        try:
            fv = f.evaluate(v)
        except (ValidationError, ValueError, OverflowError) as exc:
            return _failure(i, f"f undefined at {v}: {exc}", i), values
        if fv != fv:  # NaN
            return _failure(i, f"f({v}) is NaN", i), values
        if i == 0:
            if fv != 0:
                return _failure(0, f"f(0) must be 0 exactly, got {fv}", 1), values
        else:
            if math.isinf(values[-1]):
                return _failure(i - 1, "f reaches +inf before the top element", i), values
            if not fv > values[-1]:
                # blame the first index of the violating pair (i-1, i)
                return _failure(i - 1, f"not strictly increasing: f({v}) = {fv} <= f(prev) = {values[-1]}", i + 1), values
        if fv < 0:
            return _failure(i, f"f({v}) = {fv} is negative", i + 1), values
        values.append(fv)
    return ValidationReport(True, _is_multiplicative(values, carrier), carrier.size), values


def _failure(index: int, reason: str, checked: int) -> ValidationReport:
    return ValidationReport(False, False, checked, failure_index=index, reason=reason)


def _is_multiplicative(values: list, carrier: Carrier) -> bool:
    # multiplication needs the carrier value 1 with f(1) = 1
    try:
        i1 = carrier.index_of(1)
    except OffCarrierError:
        return False
    return abs(values[i1] - 1) <= ONE_TOLERANCE


def validate(f: FunctionalParameter, carrier: Carrier) -> ValidationReport:
    """Check strict increase, f(0) = 0 and the f(1) = 1 flag over all carrier points."""
    report, _ = bind(f, carrier)
    return report


def load_table(path: str) -> FunctionalParameter:
    """Read a table-backed f: two numbers per line, ``#`` comments, strictly increasing."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            raw = handle.readlines()
    except OSError as exc:
        raise TableError(f"cannot read table file {path!r}: {exc}") from None
    points: list[tuple[int | float, int | float]] = []
    for lineno, line in enumerate(raw, start=1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        fields = text.split()
        if len(fields) != 2:
            raise TableError(f"expected two numbers, got {text!r}", lineno)
        try:
            x, y = (_parse_number(field) for field in fields)
        except ValueError:
            raise TableError(f"bad number in {text!r}", lineno) from None
        if points:
            if x <= points[-1][0]:
                raise TableError(f"carrier values must strictly increase ({x} after {points[-1][0]})", lineno)
            if y <= points[-1][1]:
                raise TableError(f"f values must strictly increase ({y} after {points[-1][1]})", lineno)
        points.append((x, y))
    if not points:
        raise TableError(f"table file {path!r} has no data lines")
    return FunctionalParameter(name=f"table:{path}", family=TABLE, points=tuple(points))


def _parse_number(text: str) -> int | float:
    try:
        return int(text)
    except ValueError:
        return float(text)


def from_spec(spec: str) -> FunctionalParameter:
    """Parse ``id``, ``pow:<p>``, ``exp2m1``, ``quad``, ``atanh:<c>`` or ``table:<path>``."""
    head, _, rest = spec.partition(":")
    if head == "id" and not rest:
        return FunctionalParameter("id", IDENTITY)
    if head == "exp2m1" and not rest:
        return FunctionalParameter("exp2m1", EXP2M1)
    if head == "quad" and not rest:
        return FunctionalParameter("quad", QUAD)
    if head == "pow":
        try:
            p = float(rest)
        except ValueError:
            raise SpecError(f"bad exponent in {spec!r}") from None
        if p <= 0:
            raise ValidationError(f"pow exponent must be positive, got {p}")
        return FunctionalParameter(f"pow:{rest}", POWER, param=p)
    if head == "atanh":
        try:
            c = float(rest)
        except ValueError:
            raise SpecError(f"bad scale in {spec!r}") from None
        if c <= 0:
            raise ValidationError(f"atanh scale must be positive, got {c}")
        return FunctionalParameter(f"atanh:{rest}", ATANH, param=c)
    if head == "table" and rest:
        return load_table(rest)
    raise SpecError(f"unknown f spec {spec!r} (want id, pow:<p>, exp2m1, quad, atanh:<c>, table:<path>)")
