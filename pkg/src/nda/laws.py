"""Exhaustive verification of classical laws over a finite range.

Every check scans all tuples with carrier indices in [0, R] and reports
holds / fails / not-applicable plus the smallest counterexample.  "Smallest"
means the first counterexample met when the scanned range grows one step at
a time: minimal largest component, ties broken lexicographically.  Scans are
pure and deterministic regardless of how the work is partitioned.

Dual arithmetics are scanned through their saturating view so that every
tuple is defined inside the finite window; reports on a dual arithmetic are
therefore finite-window approximations of an infinite family.  Absorption
checks (find_largest_number) deliberately keep the constructed overflow
policy, since an error-on-exhaustion dual has no absorbing element.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .arith import DUAL, ERROR, SATURATE, Arithmetic
from .errors import CarrierExhaustedError, MultiplicationUnavailableError

HOLDS = "holds"
FAILS = "fails"
NOT_APPLICABLE = "not-applicable"

CONSISTENT = "consistent"
INCONSISTENT = "inconsistent"

ALL_LAWS = (
    "commutativity-add",
    "commutativity-mul",
    "assoc-add",
    "assoc-mul",
    "distributivity",
    "neutral-zero",
    "neutral-one",
)

_MUL_LAWS = {"commutativity-mul", "assoc-mul", "distributivity", "neutral-one"}


@dataclass(frozen=True)
class LawReport:
    """Outcome of one law check over the sub-carrier [0..R]."""

    law: str
    status: str
    witness: tuple | None
    upper: int  # R: highest carrier index scanned
    pairs_checked: int
    violations: int | None = None

    @property
    def range_text(self) -> str:
        return f"0..{self.upper}"


@dataclass(frozen=True)
class ArchimedeanReport:
    """Whether repeated addition of any m <= R eventually exceeds every n <= R."""

    archimedean: bool
    upper: int
    witness: tuple | None = None  # (m, n) with the sums of m stuck below n
    fixed_point: int | float | None = None
    candidates_checked: int = 0


@dataclass(frozen=True)
class TheoremReport:
    """Machine check of: Archimedean  <=>  (a << b always implies a = 0)."""

    status: str  # consistent | inconsistent
    archimedean: bool
    mll_only_zero: bool
    upper: int
    mll_witness: tuple | None = None  # (a, b) with a << b and a > 0, if any


def _scan_view(arith: Arithmetic) -> Arithmetic:
    # scans must be total over the window; clamp duals at the top
    if arith.kind == DUAL and arith.overflow == ERROR:
        return arith.with_overflow(SATURATE)
    return arith


def _check_upper(arith: Arithmetic, upper: int) -> None:
    if not 0 <= upper < arith.carrier.size:
        raise ValueError(f"range bound {upper} outside carrier of size {arith.carrier.size}")


def _op_table(arith: Arithmetic, op: str, rows, cols) -> np.ndarray:
    """Result indices of op over rows x cols (carrier indices)."""
    apply = arith.add_index if op == "add" else arith.mul_index
    out = np.empty((len(rows), len(cols)), dtype=np.int32)
    for ri, i in enumerate(rows):
        row = out[ri]
        for cj, j in enumerate(cols):
            row[cj] = apply(i, j)
    return out


def _smallest_witness(violations: np.ndarray) -> tuple[int, ...] | None:
    """Minimal counterexample: smallest max component, then lexicographic."""
    cells = np.argwhere(violations)
    if cells.size == 0:
        return None
    outer = cells.max(axis=1)
    shell = cells[outer == outer.min()]
    order = np.lexsort(shell.T[::-1])
    return tuple(int(x) for x in shell[order[0]])


def _binary_scan(table: np.ndarray, mirror: np.ndarray) -> np.ndarray:
    return table != mirror


# above this many cells the compressed tables fall back to a scalar scan
_TABLE_CELL_LIMIT = 8_000_000


def _scalar_triple_scan(lhs_fn, rhs_fn, upper: int) -> tuple[tuple[int, ...] | None, int]:
    """Growing-range scan; first violation is the smallest witness. Count stops there."""
    for bound in range(upper + 1):
        for a in range(bound + 1):
            for b in range(bound + 1):
                for c in range(bound + 1):
                    if max(a, b, c) != bound:
                        continue
                    if lhs_fn(a, b, c) != rhs_fn(a, b, c):
                        return (a, b, c), 1
    return None, 0


def _assoc_masks(arith: Arithmetic, op: str, upper: int):
    base = range(upper + 1)
    t1 = _op_table(arith, op, base, base)
    mids = np.union1d(np.unique(t1), np.arange(upper + 1, dtype=np.int32))
    if len(mids) * (upper + 1) > _TABLE_CELL_LIMIT:
        return None
    t2 = _op_table(arith, op, [int(i) for i in mids], base)
    pos = np.searchsorted(mids, t1)
    composed = t2[pos]  # composed[x, y, z] = op(op(x, y), z)
    lhs = composed  # (a op b) op c
    rhs = composed.transpose(2, 0, 1)  # a op (b op c), by commutativity of the construction
    return lhs, rhs


def check_law(arith: Arithmetic, law: str, upper: int) -> LawReport:
    """Scan one law exhaustively over carrier indices [0, upper]."""
    if law not in ALL_LAWS:
        raise ValueError(f"unknown law {law!r}; choose from {', '.join(ALL_LAWS)}")
    _check_upper(arith, upper)
    scan = _scan_view(arith)
    if law in _MUL_LAWS and not scan.multiplicative:
        return LawReport(law, NOT_APPLICABLE, None, upper, 0, None)

    base = range(upper + 1)
    n = upper + 1
    if law == "commutativity-add":
        table = _op_table(scan, "add", base, base)
        viol = _binary_scan(table, table.T)
        checked = n * n
    elif law == "commutativity-mul":
        table = _op_table(scan, "mul", base, base)
        viol = _binary_scan(table, table.T)
        checked = n * n
    elif law == "neutral-zero":
        left = _op_table(scan, "add", base, [0])[:, 0]
        right = _op_table(scan, "add", [0], base)[0]
        viol = (left != np.arange(n)) | (right != np.arange(n))
        checked = n
    elif law == "neutral-one":
        one = scan.carrier.index_of(1)
        left = _op_table(scan, "mul", base, [one])[:, 0]
        right = _op_table(scan, "mul", [one], base)[0]
        viol = (left != np.arange(n)) | (right != np.arange(n))
        checked = n
    elif law in ("assoc-add", "assoc-mul"):
        op = scan.add_index if law == "assoc-add" else scan.mul_index
        masks = _assoc_masks(scan, "add" if law == "assoc-add" else "mul", upper)
        if masks is None:
            witness_idx, count = _scalar_triple_scan(
                lambda a, b, c: op(op(a, b), c),
                lambda a, b, c: op(a, op(b, c)), upper)
            return _triple_report(arith, law, upper, witness_idx, count)
        lhs, rhs = masks
        viol = lhs != rhs
        checked = n ** 3
    else:  # distributivity: a * (b + c) = a*b + a*c
        t_add = _op_table(scan, "add", base, base)
        t_mul = _op_table(scan, "mul", base, base)
        mids_add = np.union1d(np.unique(t_add), np.arange(n, dtype=np.int32))
        mids_mul = np.unique(t_mul)
        if max(len(mids_add) * n, len(mids_mul) ** 2) > _TABLE_CELL_LIMIT:
            witness_idx, count = _scalar_triple_scan(
                lambda a, b, c: scan.mul_index(a, scan.add_index(b, c)),
                lambda a, b, c: scan.add_index(scan.mul_index(a, b), scan.mul_index(a, c)),
                upper)
            return _triple_report(arith, law, upper, witness_idx, count)
        mul_by_sum = _op_table(scan, "mul", [int(i) for i in mids_add], base)
        lhs = mul_by_sum[np.searchsorted(mids_add, t_add)].transpose(2, 0, 1)
        add_of_products = _op_table(scan, "add", [int(i) for i in mids_mul], [int(i) for i in mids_mul])
        pos = np.searchsorted(mids_mul, t_mul)
        rhs = add_of_products[pos[:, :, None], pos[:, None, :]]
        viol = lhs != rhs
        checked = n ** 3

    witness_idx = _smallest_witness(viol)
    count = int(viol.sum())
    if witness_idx is None:
        return LawReport(law, HOLDS, None, upper, checked, 0)
    witness = tuple(arith.carrier.value_at(i) for i in witness_idx)
    return LawReport(law, FAILS, witness, upper, checked, count)


def _triple_report(arith: Arithmetic, law: str, upper: int,
                   witness_idx: tuple | None, count: int) -> LawReport:
    checked = (upper + 1) ** 3
    if witness_idx is None:
        return LawReport(law, HOLDS, None, upper, checked, 0)
    witness = tuple(arith.carrier.value_at(i) for i in witness_idx)
    # the scalar fallback stops at the first violation, so no total count
    return LawReport(law, FAILS, witness, upper, checked, None)


def check_all_laws(arith: Arithmetic, upper: int) -> list[LawReport]:
    return [check_law(arith, law, upper) for law in ALL_LAWS]


def _fixed_point_index(scan: Arithmetic, mi: int) -> int:
    s = mi
    for _ in range(scan.carrier.size):
        nxt = scan.add_index(s, mi)
        if nxt == s:
            return s
        s = nxt
    return s


def check_archimedean(arith: Arithmetic, upper: int) -> ArchimedeanReport:
    """Search for m whose repeated sums get stuck below some n <= R.

    Repeated sums on the finite window either reach a genuine fixed point or
    climb to the saturated top.  The top is excluded as evidence: a sum that
    reaches it may well have kept growing on a larger carrier, so only a
    fixed point strictly below some n in range counts as a witness.
    """
    _check_upper(arith, upper)
    scan = _scan_view(arith)
    top = scan.carrier.size - 1
    for mi in range(1, upper + 1):
        fp = _fixed_point_index(scan, mi)
        if fp == top:
            continue
        ni = fp + 1
        if ni <= upper:
            return ArchimedeanReport(
                False, upper,
                witness=(arith.carrier.value_at(mi), arith.carrier.value_at(ni)),
                fixed_point=arith.carrier.value_at(fp),
                candidates_checked=mi,
            )
    return ArchimedeanReport(True, upper, candidates_checked=upper)


def verify_archimedean_theorem(arith: Arithmetic, upper: int) -> TheoremReport:
    """Check Archimedean <=> (a << b only for a = 0), both sides computed."""
    _check_upper(arith, upper)
    scan = _scan_view(arith)
    archimedean = check_archimedean(arith, upper).archimedean
    base = range(upper + 1)
    table = _op_table(scan, "add", base, base)
    # a << b  <=>  add(b, a) == b; ignore a = 0 which holds by neutrality
    viol = table == np.arange(upper + 1, dtype=np.int32)[:, None]
    viol[:, 0] = False
    cell = _smallest_witness(viol)
    mll_witness = None
    if cell is not None:
        bi, ai = cell
        mll_witness = (arith.carrier.value_at(ai), arith.carrier.value_at(bi))
    only_zero = cell is None
    status = CONSISTENT if archimedean == only_zero else INCONSISTENT
    return TheoremReport(status, archimedean, only_zero, upper, mll_witness)


def find_largest_number(arith: Arithmetic):
    """Least carrier value absorbing under addition, or None.

    Uses the arithmetic exactly as constructed: a dual arithmetic that
    errors on exhaustion has no absorbing element.  Since add is monotone
    in each argument, L absorbs everything iff add(L, top) == L.
    """
    top = arith.carrier.size - 1
    for i in range(arith.carrier.size):
        try:
            if arith.add_index(i, top) == i:
                return arith.carrier.value_at(i)
        except CarrierExhaustedError:
            continue
    return None


def search_identities(arith: Arithmetic, pattern: str, upper: int) -> list:
    """All witnesses of a + b = a (b > 0) or a * a = a (a > 1) within [0..R]."""
    _check_upper(arith, upper)
    results: list = []
    value_at = arith.carrier.value_at
    if pattern == "a_plus_b_eq_a":
        for ai in range(upper + 1):
            for bi in range(1, upper + 1):
                try:
                    if arith.add_index(ai, bi) == ai:
                        results.append((value_at(ai), value_at(bi)))
                except CarrierExhaustedError:
                    continue
        return results
    if pattern == "a_times_a_eq_a":
        if not arith.multiplicative:
            raise MultiplicationUnavailableError(
                f"pattern {pattern!r} needs multiplication, unavailable for {arith.spec}")
        for ai in range(2, upper + 1):
            try:
                if arith.mul_index(ai, ai) == ai:
                    results.append(value_at(ai))
            except CarrierExhaustedError:
                continue
        return results
    raise ValueError(f"unknown pattern {pattern!r}")
