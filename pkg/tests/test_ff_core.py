import pytest
from hypothesis import given, settings, strategies as st

from ffinv.errors import NotIrreducible, NotPrime
from ffinv.ff_core import build_tower, get_tower, parse_field_spec


def test_default_moduli():
    t8 = get_tower(2, 1, 3)
    assert t8.mod_qn == (1, 1, 0, 1)
    t9 = get_tower(3, 1, 2)
    assert t9.mod_qn == (1, 0, 1)
    t16 = get_tower(2, 2, 2)
    assert t16.mod_q == (1, 1, 1)
    assert t16.mod_qn == (2, 1, 1)


def test_frozen_f8_values():
    t = get_tower(2, 1, 3)
    assert t.mul(2, 4) == 3
    assert t.inv(2) == 5
    assert t.trace(2) == 0
    assert t.trace(1) == 1


def test_frozen_f9_values():
    t = get_tower(3, 1, 2)
    for a in range(9):
        assert t.norm(a) == t.pow(a, 4)


def test_generator_order():
    for spec in ((2, 1, 3), (3, 1, 2), (2, 2, 2)):
        t = get_tower(*spec)
        seen = set()
        x = 1
        for _ in range(t.N - 1):
            seen.add(x)
            x = t.mul(x, t.gen)
        assert len(seen) == t.N - 1


def test_bad_inputs():
    with pytest.raises(NotPrime):
        build_tower(4, 1, 2)
    with pytest.raises(NotIrreducible):
        build_tower(2, 1, 2, mod_qn=(1, 0, 1))  # x^2 + 1 = (x+1)^2 over F_2


def test_parse_field_spec():
    t = parse_field_spec("2:1:3")
    assert (t.p, t.m, t.n) == (2, 1, 3)
    t = parse_field_spec("3:1:2:modqn=1,0,1")
    assert t.mod_qn == (1, 0, 1)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 26), st.integers(0, 26), st.integers(0, 26))
def test_field_axioms_f27(a, b, c):
    t = get_tower(3, 1, 3)
    assert t.mul(a, t.add(b, c)) == t.add(t.mul(a, b), t.mul(a, c))
    assert t.mul(a, b) == t.mul(b, a)
    assert t.add(a, t.neg(a)) == 0
    if a != 0:
        assert t.mul(a, t.inv(a)) == 1


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 15), st.integers(0, 15))
def test_frobenius_is_automorphism(a, b):
    t = get_tower(2, 2, 2)
    assert t.frobenius(t.mul(a, b), 1) == t.mul(t.frobenius(a, 1), t.frobenius(b, 1))
    assert t.frobenius(t.add(a, b), 1) == t.add(t.frobenius(a, 1), t.frobenius(b, 1))
    # q-frobenius fixes exactly the embedded F_q
    assert (t.frobenius(a, 1) == a) == (a < t.q)


def test_trace_norm_land_in_subfield():
    for spec in ((2, 2, 2), (3, 1, 3), (2, 1, 4)):
        t = get_tower(*spec)
        for a in t.elements():
            assert t.trace(a) < t.q
            assert t.norm(a) < t.q
            assert t.norm_q_over_p(t.norm(a)) < t.p
