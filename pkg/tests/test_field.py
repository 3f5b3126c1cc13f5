import itertools

import pytest

from mgreduce.field import MAX_DEGREE, arith, choose_degree, format_element, make_field, parse_element

from oracles import poly_mul


@pytest.mark.parametrize("r", range(1, MAX_DEGREE + 1))
def test_tables_realise_a_primitive_element(r):
    F = make_field(r)
    assert len(F.antilog) == 2**r - 1
    assert len(set(F.antilog)) == 2**r - 1
    assert F.pow(F.e, 2**r - 1) == 1
    for x in range(1, 2**r):
        assert F.antilog[F.log[x]] == x


def test_degenerate_and_small_fields():
    F1 = make_field(1)
    assert F1.e == 1 and F1.mult_order == 1
    F4 = make_field(2)
    assert F4.prim_poly == 0b111
    assert F4.mul(F4.e, F4.e) == F4.e ^ 1 == 3
    F8 = make_field(3)
    orders = [m for m in range(1, 8) if F8.pow(F8.e, m) == 1]
    assert orders[0] == 7


@pytest.mark.parametrize("r", [0, 17, -1])
def test_make_field_rejects_degree(r):
    with pytest.raises(ValueError):
        make_field(r)


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_field_axioms_exhaustive(r):
    F = make_field(r)
    els = list(F.elements())
    for a, b in itertools.product(els, els):
        assert F.mul(a, b) == poly_mul(a, b, F.prim_poly, r)
        assert F.mul(a, b) == F.mul(b, a)
        assert F.add(a, b) == F.add(b, a)
    for a, b, c in itertools.product(els, els, els):
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
        assert F.mul(a, b ^ c) == F.mul(a, b) ^ F.mul(a, c)


@pytest.mark.parametrize("r", [1, 2, 3, 5, 8])
def test_inverse_and_characteristic_two(r):
    F = make_field(r)
    for a in range(1, F.order):
        assert F.mul(a, F.inv(a)) == 1
        assert F.add(a, a) == 0
    with pytest.raises(ZeroDivisionError):
        F.inv(0)


def test_arith_dispatch():
    F = make_field(3)
    e = F.e
    assert arith(F, e, F.inv(e), "mul") == 1
    assert arith(F, e, 0, "inv") == F.inv(e)
    assert arith(F, e, 3, "pow") == F.mul(e, F.mul(e, e))
    assert arith(F, 5, 5, "add") == 0
    with pytest.raises(ValueError):
        arith(F, 1, 1, "div")
    with pytest.raises(ValueError):
        arith(F, 8, 1, "add")


def test_trace_examples():
    assert make_field(1).trace(1) == 1
    F4 = make_field(2)
    assert F4.trace(0) == 0
    assert F4.trace(F4.e) == 1


@pytest.mark.parametrize("r", [1, 2, 3, 4, 6])
def test_trace_linear_and_balanced(r):
    F = make_field(r)
    tr = [F.trace(a) for a in F.elements()]
    assert set(tr) <= {0, 1}
    assert tr.count(0) == 2 ** (r - 1)
    for a, b in itertools.product(range(F.order), repeat=2):
        assert tr[a ^ b] == tr[a] ^ tr[b]


@pytest.mark.parametrize("h, r", [(1, 1), (2, 2), (3, 2), (4, 3), (7, 3), (8, 4)])
def test_choose_degree(h, r):
    assert choose_degree(h) == r
    F = make_field(r)
    powers = [F.exp(j) for j in range(h)]
    assert len(set(powers)) == h and 0 not in powers


def test_choose_degree_rejects_zero():
    with pytest.raises(ValueError):
        choose_degree(0)


def test_hex_serialisation():
    F = make_field(2)
    assert format_element(3) == "3"
    assert parse_element(F, "3") == 3
    with pytest.raises(ValueError):
        parse_element(F, "4")
