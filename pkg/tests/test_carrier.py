import pytest
from hypothesis import given, strategies as st

from nda.carrier import Carrier
from nda.errors import (
    CarrierIndexError,
    OffCarrierError,
    SpecError,
    SuccessorOfTopError,
    ValidationError,
)


class TestConstruction:
    def test_integers(self):
        c = Carrier.integers(100)
        assert c.min == 0 and c.max == 100 and c.step == 1 and c.size == 101

    def test_grid(self):
        c = Carrier.grid(1.0, 0.001)
        assert c.size == 1001
        assert c.value_at(c.size - 1) == 1.0

    def test_min_must_be_zero(self):
        with pytest.raises(ValidationError):
            Carrier.from_spec("int:5:10")

    def test_grid_step_must_divide_max(self):
        with pytest.raises(ValidationError):
            Carrier.grid(1.0, 0.3)

    def test_bad_specs(self):
        for spec in ("int:0", "foo:0:10", "grid:0:1", "int:0:ten", ""):
            with pytest.raises(SpecError):
                Carrier.from_spec(spec)

    def test_spec_round_trip(self):
        for spec in ("int:0:100", "grid:0:1:0.001"):
            assert Carrier.from_spec(spec).spec == spec

    def test_size_at_least_two(self):
        with pytest.raises(ValidationError):
            Carrier.integers(0)


class TestValueAt:
    def test_minimum_element(self):
        assert Carrier.integers(100).value_at(0) == 0

    def test_unit_step(self):
        assert Carrier.integers(100).value_at(7) == 7

    def test_grid_point_derived_not_accumulated(self):
        c = Carrier.grid(1.0, 0.001)
        assert c.value_at(800) == 800 * 0.001
        assert c.value_at(800) == 0.8

    def test_out_of_range(self):
        c = Carrier.integers(100)
        with pytest.raises(CarrierIndexError):
            c.value_at(101)
        with pytest.raises(CarrierIndexError):
            c.value_at(-1)


class TestIndexOf:
    def test_integer(self):
        assert Carrier.integers(100).index_of(42) == 42

    def test_grid(self):
        assert Carrier.grid(1.0, 0.001).index_of(0.8) == 800

    def test_off_carrier(self):
        with pytest.raises(OffCarrierError):
            Carrier.integers(100).index_of(3.5)

    def test_outside_range(self):
        with pytest.raises(OffCarrierError):
            Carrier.integers(100).index_of(101)
        with pytest.raises(OffCarrierError):
            Carrier.grid(1.0, 0.001).index_of(-0.001)

    def test_tolerates_representation_error(self):
        c = Carrier.grid(1.0, 0.001)
        assert c.index_of(0.1 + 0.2) == 300

    def test_rejects_values_between_points(self):
        with pytest.raises(OffCarrierError):
            Carrier.grid(1.0, 0.001).index_of(0.0005)


class TestSucc:
    def test_integer(self):
        assert Carrier.integers(100).succ(5) == 6

    def test_grid(self):
        c = Carrier.grid(1.0, 0.001)
        assert c.succ(0.5) == c.value_at(501)

    def test_top_has_no_successor(self):
        with pytest.raises(SuccessorOfTopError):
            Carrier.integers(100).succ(100)

    def test_chain_reaches_top(self):
        c = Carrier.integers(20)
        v = 0
        for _ in range(c.size - 1):
            v = c.succ(v)
        assert v == c.max


class TestClamp:
    def test_identity_on_carrier_values(self):
        c = Carrier.integers(10)
        assert all(c.clamp(v) == v for v in c.values())

    def test_bounds(self):
        c = Carrier.integers(10)
        assert c.clamp(-5) == 0
        assert c.clamp(15) == 10


@given(st.integers(min_value=0, max_value=200))
def test_round_trip_integers(i):
    c = Carrier.integers(200)
    assert c.index_of(c.value_at(i)) == i


@given(st.integers(min_value=0, max_value=1000))
def test_round_trip_grid(i):
    c = Carrier.grid(1.0, 0.001)
    assert c.index_of(c.value_at(i)) == i


@given(st.integers(min_value=0, max_value=999))
def test_succ_strictly_increasing_on_grid(i):
    c = Carrier.grid(1.0, 0.001)
    assert c.succ(c.value_at(i)) > c.value_at(i)


def test_contains():
    c = Carrier.grid(1.0, 0.001)
    assert 0.8 in c
    assert 0.0005 not in c
    assert 1.5 not in c
