"""Projective and dual arithmetics over a finite carrier.

Both families realise a (+) b = "f applied backwards"(f(a) + f(b)), with the
two kinds differing only in how the backwards step rounds onto the carrier:

* projective: greatest carrier value v with f(v) <= target (round down);
  saturates at the top, admits fixed points, absorption and a largest number.
* dual: least carrier value v with f(v) >= target (round up); adding a
  positive element always strictly grows, so the finite window can be
  exhausted.  Exhaustion raises by default; a saturating variant exists for
  whole-range scans.

No numeric inverse of f is ever computed: the memoised f values form a
strictly increasing array and every operation is a binary search over it.
Extended reals participate: +inf is an absorbing target and the projective
search maps it to the top element.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from math import isinf

from .carrier import Carrier
from .errors import (
    CarrierExhaustedError,
    MultiplicationUnavailableError,
    SpecError,
    ValidationError,
)
from .funcparam import FunctionalParameter, ValidationReport, bind
from .funcparam import from_spec as f_from_spec

PROJECTIVE = "projective"
DUAL = "dual"

SATURATE = "saturate"
ERROR = "error"


class Arithmetic:
    """A carrier + validated f + family kind; immutable after construction.

    All operations are pure functions of (self, inputs) and safe to share
    across threads.
    """

    def __init__(
        self,
        carrier: Carrier,
        f: FunctionalParameter,
        kind: str,
        overflow: str | None = None,
        _prebound: tuple[ValidationReport, list] | None = None,
    ):
        if kind not in (PROJECTIVE, DUAL):
            raise SpecError(f"kind must be {PROJECTIVE!r} or {DUAL!r}, got {kind!r}")
        if overflow is None:
            overflow = SATURATE if kind == PROJECTIVE else ERROR
        if overflow not in (SATURATE, ERROR):
            raise SpecError(f"overflow must be {SATURATE!r} or {ERROR!r}, got {overflow!r}")
        if kind == PROJECTIVE and overflow == ERROR:
            raise ValidationError("projective arithmetics always saturate; overflow='error' is a dual-only policy")
        report, fvals = _prebound if _prebound is not None else bind(f, carrier)
        if not report.ok:
            raise ValidationError(f"f {f.name!r} rejected on {carrier.spec}: {report.message()}")
        self.carrier = carrier
        self.f = f
        self.kind = kind
        self.overflow = overflow
        self.multiplicative = report.multiplicative
        self.validation = report
        self._fvals = fvals

    @classmethod
    def from_spec(cls, spec: str) -> "Arithmetic":
        """Parse ``<kind>:<f-spec>@<carrier-spec>``, e.g. ``projective:pow:1.5@int:0:1000``."""
        head, sep, carrier_spec = spec.partition("@")
        kind, sep2, f_spec = head.partition(":")
        if not sep or not sep2:
            raise SpecError(f"bad arithmetic spec {spec!r} (want <kind>:<f-spec>@<carrier-spec>)")
        if kind not in (PROJECTIVE, DUAL):
            raise SpecError(f"unknown kind {kind!r} in {spec!r}")
        return cls(Carrier.from_spec(carrier_spec), f_from_spec(f_spec), kind)

    @property
    def spec(self) -> str:
        return f"{self.kind}:{self.f.name}@{self.carrier.spec}"

    def __repr__(self) -> str:
        return f"Arithmetic({self.spec!r}, overflow={self.overflow!r})"

    def with_overflow(self, overflow: str) -> "Arithmetic":
        """Same arithmetic under a different overflow policy (shares the memo)."""
        if overflow == self.overflow:
            return self
        return Arithmetic(self.carrier, self.f, self.kind, overflow,
                          _prebound=(self.validation, self._fvals))

    # ------------------------------------------------------------------
    # index-level core (used by the law scanners; values derive from these)
    # ------------------------------------------------------------------

    def _locate(self, target) -> int:
        fv = self._fvals
        if self.kind == PROJECTIVE:
            # greatest v with f(v) <= target; target >= f(0) = 0 always
            return bisect_right(fv, target) - 1
        i = bisect_left(fv, target)
        if i == len(fv):
            if self.overflow == SATURATE:
                return len(fv) - 1
            raise CarrierExhaustedError(
                f"target {target} exceeds f(top) = {fv[-1]} on {self.carrier.spec}")
        return i

    def add_index(self, i: int, j: int) -> int:
        fv = self._fvals
        return self._locate(fv[i] + fv[j])

    def sub_index(self, i: int, j: int) -> int:
        fa, fb = self._fvals[i], self._fvals[j]
        if isinstance(fb, float) and isinf(fb):
            # f(b) = +inf only at the top; inf - inf and finite - inf clamp to 0
            target = 0
        else:
            target = fa - fb
        if target < 0:
            target = 0
        return self._locate(target)

    def mul_index(self, i: int, j: int) -> int:
        if not self.multiplicative:
            raise MultiplicationUnavailableError(
                f"f {self.f.name!r} has f(1) != 1 on {self.carrier.spec}; multiplication is undefined")
        fa, fb = self._fvals[i], self._fvals[j]
        target = 0 if (fa == 0 or fb == 0) else fa * fb  # avoids inf * 0
        return self._locate(target)

    # ------------------------------------------------------------------
    # value-level operations
    # ------------------------------------------------------------------

    def add(self, a, b):
        """a (+) b."""
        c = self.carrier
        return c.value_at(self.add_index(c.index_of(a), c.index_of(b)))

    def sub(self, a, b):
        """a (-) b, clamped at 0; an extension, not part of either family's core."""
        c = self.carrier
        return c.value_at(self.sub_index(c.index_of(a), c.index_of(b)))

    def mul(self, a, b):
        """a (x) b; requires f(1) = 1."""
        c = self.carrier
        return c.value_at(self.mul_index(c.index_of(a), c.index_of(b)))

    def nsum(self, m, k: int):
        """m (+) m (+) ... (+) m, k terms, folded left to right.

        Fold order matters because addition need not be associative.  A
        repeated partial sum is a fixed point and short-circuits the fold.
        """
        if k < 1:
            raise ValueError(f"nsum needs at least one term, got k={k}")
        c = self.carrier
        mi = c.index_of(m)
        acc = mi
        for _ in range(k - 1):
            nxt = self.add_index(acc, mi)
            if nxt == acc:
                break
            acc = nxt
        return c.value_at(acc)

    # ------------------------------------------------------------------
    # order-like relations
    # ------------------------------------------------------------------

    def mll(self, a, b) -> bool:
        """a << b in the projective sense: adding a leaves b unchanged."""
        c = self.carrier
        ib = c.index_of(b)
        return self.add_index(ib, c.index_of(a)) == ib

    def mll_dual(self, a, b) -> bool:
        """a << b in the dual sense: adding a moves b by exactly one step."""
        c = self.carrier
        ib = c.index_of(b)
        c.succ(b)  # raises SuccessorOfTopError when b is the top element
        return self.add_index(ib, c.index_of(a)) == ib + 1

    def mlll(self, a, b) -> bool:
        """a <<< b: multiplying by a leaves b unchanged."""
        c = self.carrier
        ib = c.index_of(b)
        return self.mul_index(ib, c.index_of(a)) == ib
