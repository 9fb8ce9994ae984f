import math

import pytest

from nda.arith import Arithmetic
from nda.errors import MultiplicationUnavailableError
from nda.laws import (
    ALL_LAWS,
    FAILS,
    HOLDS,
    NOT_APPLICABLE,
    CONSISTENT,
    check_all_laws,
    check_archimedean,
    check_law,
    find_largest_number,
    search_identities,
    verify_archimedean_theorem,
)

from reference import f_values, ref_add, ref_mul, smallest_witness


def arith(spec):
    return Arithmetic.from_spec(spec)


# ----------------------------------------------------------------------
# full cross-check against the nested-loop reference on small ranges
# ----------------------------------------------------------------------

REFERENCE_LAW_FNS = {
    "commutativity-add": (2, lambda add, mul, t: add(t[0], t[1]) == add(t[1], t[0])),
    "commutativity-mul": (2, lambda add, mul, t: mul(t[0], t[1]) == mul(t[1], t[0])),
    "assoc-add": (3, lambda add, mul, t: add(add(t[0], t[1]), t[2]) == add(t[0], add(t[1], t[2]))),
    "assoc-mul": (3, lambda add, mul, t: mul(mul(t[0], t[1]), t[2]) == mul(t[0], mul(t[1], t[2]))),
    "distributivity": (3, lambda add, mul, t: mul(t[0], add(t[1], t[2])) == add(mul(t[0], t[1]), mul(t[0], t[2]))),
    "neutral-zero": (1, lambda add, mul, t: add(t[0], 0) == t[0] and add(0, t[0]) == t[0]),
    "neutral-one": (1, lambda add, mul, t: mul(t[0], 1) == t[0] and mul(1, t[0]) == t[0]),
}


def reference_report(name, kind, law, upper):
    fvals = f_values(name, 31)
    add = lambda i, j: ref_add(fvals, kind, i, j)
    mul = lambda i, j: ref_mul(fvals, kind, i, j)
    arity, ok = REFERENCE_LAW_FNS[law]
    violations = []
    for flat in range((upper + 1) ** arity):
        t = []
        rest = flat
        for _ in range(arity):
            t.append(rest % (upper + 1))
            rest //= (upper + 1)
        t = tuple(reversed(t))
        if not ok(add, mul, t):
            violations.append(t)
    return smallest_witness(violations), len(violations)


@pytest.mark.parametrize("name", ["id", "pow:1.5", "pow:2", "exp2m1", "quad"])
@pytest.mark.parametrize("kind", ["projective", "dual"])
@pytest.mark.parametrize("law", ALL_LAWS)
def test_matches_reference_scan(name, kind, law, upper=12):
    a = arith(f"{kind}:{name}@int:0:30")
    report = check_law(a, law, upper)
    expected_witness, expected_count = reference_report(name, kind, law, upper)
    if expected_witness is None:
        assert report.status == HOLDS
        assert report.witness is None
        assert report.violations == 0
    else:
        assert report.status == FAILS
        assert report.witness == expected_witness
        assert report.violations == expected_count


# ----------------------------------------------------------------------
# pinned witnesses, with independent minimality proofs
# ----------------------------------------------------------------------

def minimality_predecessors(witness, upper):
    """All triples that would count as smaller under (max-component, lex)."""
    key = (max(witness), witness)
    for a in range(upper + 1):
        for b in range(upper + 1):
            for c in range(upper + 1):
                t = (a, b, c)
                if (max(t), t) < key:
                    yield t


def test_assoc_add_pow15_witness_pinned():
    a = arith("projective:pow:1.5@int:0:100")
    report = check_law(a, "assoc-add", 50)
    assert report.status == FAILS
    assert report.witness == (2, 3, 3)
    # the witness reproduces 5 != 4 through scalar operations
    lhs = a.add(a.add(2, 3), 3)
    rhs = a.add(2, a.add(3, 3))
    assert (lhs, rhs) == (5, 4)
    # bracket check straight from f: target of (2+3) lies in [f(4), f(5))
    t_23 = math.pow(2, 1.5) + math.pow(3, 1.5)
    assert math.pow(4, 1.5) <= t_23 < math.pow(5, 1.5)
    # no smaller triple violates associativity
    for t in minimality_predecessors((2, 3, 3), 50):
        assert a.add(a.add(t[0], t[1]), t[2]) == a.add(t[0], a.add(t[1], t[2]))


def test_distributivity_quad_witness_pinned():
    a = arith("projective:quad@int:0:100")
    report = check_law(a, "distributivity", 50)
    assert report.status == FAILS
    assert report.witness == (2, 1, 1)
    assert a.mul(2, a.add(1, 1)) == 2
    assert a.add(a.mul(2, 1), a.mul(2, 1)) == 3
    for t in minimality_predecessors((2, 1, 1), 50):
        assert a.mul(t[0], a.add(t[1], t[2])) == a.add(a.mul(t[0], t[1]), a.mul(t[0], t[2]))


def test_identity_holds_everything():
    for kind in ("projective", "dual"):
        for report in check_all_laws(arith(f"{kind}:id@int:0:200"), 200):
            assert report.status == HOLDS, report


def test_not_applicable_without_multiplication():
    a = arith("projective:atanh:1@grid:0:1:0.001")
    for law in ("neutral-one", "commutativity-mul", "assoc-mul", "distributivity"):
        report = check_law(a, law, 100)
        assert report.status == NOT_APPLICABLE
        assert report.witness is None


def test_commutativity_holds_for_every_builtin():
    for name in ("id", "pow:1.5", "pow:2", "exp2m1", "quad"):
        for kind in ("projective", "dual"):
            a = arith(f"{kind}:{name}@int:0:100")
            assert check_law(a, "commutativity-add", 60).status == HOLDS
            assert check_law(a, "commutativity-mul", 60).status == HOLDS


def test_failing_witness_reproduces_through_operations():
    a = arith("projective:exp2m1@int:0:100")
    report = check_law(a, "assoc-mul", 40)
    if report.status == FAILS:
        x, y, z = report.witness
        assert a.mul(a.mul(x, y), z) != a.mul(x, a.mul(y, z))


def test_reports_are_deterministic():
    a = arith("projective:pow:1.5@int:0:100")
    assert check_law(a, "assoc-add", 40) == check_law(a, "assoc-add", 40)


def test_range_bound_validated():
    with pytest.raises(ValueError):
        check_law(arith("projective:id@int:0:10"), "assoc-add", 11)
    with pytest.raises(ValueError):
        check_law(arith("projective:id@int:0:10"), "no-such-law", 5)


# ----------------------------------------------------------------------
# Archimedean property and the equivalence with <<
# ----------------------------------------------------------------------

class TestArchimedean:
    def test_pow2_witness(self):
        report = check_archimedean(arith("projective:pow:2@int:0:200"), 150)
        assert not report.archimedean
        assert report.witness == (1, 2)
        assert report.fixed_point == 1

    def test_identity_archimedean(self):
        assert check_archimedean(arith("projective:id@int:0:200"), 150).archimedean

    def test_dual_archimedean(self):
        assert check_archimedean(arith("dual:quad@int:0:200"), 150).archimedean

    def test_witness_invariant(self):
        a = arith("projective:exp2m1@int:0:200")
        report = check_archimedean(a, 150)
        assert not report.archimedean
        m, n = report.witness
        assert report.fixed_point < n
        assert a.nsum(m, a.carrier.size) == report.fixed_point


class TestTheorem:
    @pytest.mark.parametrize("name", ["id", "pow:1.5", "pow:2", "exp2m1", "quad"])
    @pytest.mark.parametrize("kind", ["projective", "dual"])
    def test_consistent_for_builtins(self, name, kind):
        report = verify_archimedean_theorem(arith(f"{kind}:{name}@int:0:200"), 150)
        assert report.status == CONSISTENT

    def test_non_archimedean_side(self):
        report = verify_archimedean_theorem(arith("projective:pow:2@int:0:200"), 150)
        assert not report.archimedean
        assert not report.mll_only_zero
        a, b = report.mll_witness
        assert a > 0
        assert Arithmetic.from_spec("projective:pow:2@int:0:200").mll(a, b)

    def test_archimedean_side(self):
        report = verify_archimedean_theorem(arith("dual:quad@int:0:200"), 150)
        assert report.archimedean and report.mll_only_zero
        assert report.mll_witness is None


class TestLargestNumber:
    def test_saturation_top(self):
        assert find_largest_number(arith("projective:id@int:0:100")) == 100

    def test_exp2m1_least_absorber_is_top(self):
        a = arith("projective:exp2m1@int:0:100")
        assert a.add(50, 99) == 99  # 50 absorbs smaller values but not larger ones
        assert find_largest_number(a) == 100

    def test_dual_with_error_has_none(self):
        assert find_largest_number(arith("dual:id@int:0:100")) is None

    def test_projective_builtins_all_have_top(self):
        for name in ("pow:1.5", "pow:2", "quad"):
            assert find_largest_number(arith(f"projective:{name}@int:0:50")) == 50


class TestIdentities:
    def test_exp2m1_matches_closed_form(self):
        a = arith("projective:exp2m1@int:0:100")
        found = search_identities(a, "a_plus_b_eq_a", 10)
        expected = [(x, y) for x in range(11) for y in range(1, 11) if y <= x]
        assert found == expected

    def test_identity_below_saturation_empty(self):
        assert search_identities(arith("projective:id@int:0:100"), "a_plus_b_eq_a", 50) == []

    def test_pow2_squares_never_fix(self):
        assert search_identities(arith("projective:pow:2@int:0:100"), "a_times_a_eq_a", 50) == []

    def test_multiplication_pattern_needs_mul(self):
        with pytest.raises(MultiplicationUnavailableError):
            search_identities(arith("projective:atanh:1@grid:0:1:0.001"), "a_times_a_eq_a", 10)

    def test_unknown_pattern(self):
        with pytest.raises(ValueError):
            search_identities(arith("projective:id@int:0:10"), "nope", 5)
