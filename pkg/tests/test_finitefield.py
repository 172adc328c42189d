from itertools import product

import pytest

from quadpres.errors import InputError, SizeGuardError, ValidationError
from quadpres.finitefield import (
    DEFAULT_MODULI,
    ff_make,
    parse_field_arg,
    poly_is_irreducible,
    square_classes,
)

SMALL_FIELDS = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (3, 2), (2, 3)]


def test_gf3_arithmetic():
    k = ff_make(3)
    assert k.add(1, 2) == 0
    assert k.mul(2, 2) == 1
    assert k.neg(1) == 2


def test_gf4_cubes_are_one():
    k = ff_make(2, 2)
    for a in k.nonzero():
        assert k.power(a, 3) == 1


def test_gf9_multiplicative_group_cyclic_of_order_8():
    k = ff_make(3, 2)
    g = k.generator()
    assert k.multiplicative_order(g) == 8
    assert sorted(k.power(g, i) for i in range(8)) == list(range(1, 9))


def test_field_axioms_exhaustive_small():
    # exhaustive associativity, distributivity and inverses up to size 49
    for p, n in SMALL_FIELDS + [(7, 2)]:
        k = ff_make(p, n)
        if k.q > 49:
            continue
        elems = range(k.q)
        for a, b, c in product(elems, repeat=3):
            assert k.add(a, k.add(b, c)) == k.add(k.add(a, b), c)
            assert k.mul(a, k.mul(b, c)) == k.mul(k.mul(a, b), c)
            assert k.mul(a, k.add(b, c)) == k.add(k.mul(a, b), k.mul(a, c))
        for a in elems:
            assert k.add(a, k.neg(a)) == 0
            assert k.add(a, 0) == a
            assert k.mul(a, 1) == a
            if a:
                assert k.mul(a, k.inv(a)) == 1


def test_default_moduli_are_irreducible():
    for (p, n), m in DEFAULT_MODULI.items():
        assert poly_is_irreducible(m, p)
        assert len(m) == n + 1 and m[-1] == 1


def test_reducible_modulus_rejected():
    with pytest.raises(ValidationError):
        ff_make(2, 2, modulus=(0, 0, 1))  # x^2
    with pytest.raises(ValidationError):
        ff_make(3, 2, modulus=(2, 0, 1))  # x^2 + 2 = (x+1)(x+2) over GF(3)


def test_unsupported_size_without_modulus():
    with pytest.raises(InputError):
        ff_make(2, 5)
    # but works with an explicit irreducible modulus (x^5 + x^2 + 1)
    k = ff_make(2, 5, modulus=(1, 0, 1, 0, 0, 1))
    assert k.q == 32
    assert k.mul(2, k.inv(2)) == 1


def test_guards():
    with pytest.raises(SizeGuardError):
        ff_make(2, 13)
    with pytest.raises(InputError):
        ff_make(4, 1)
    with pytest.raises(InputError):
        ff_make(3, 0)


def test_square_classes_gf3():
    sq = square_classes(ff_make(3))
    assert set(sq.classes) == {frozenset({0}), frozenset({1}), frozenset({2})}
    assert sq.zero_class == 0
    assert sq.nonzero_count == 2


def test_square_classes_gf5():
    sq = square_classes(ff_make(5))
    assert frozenset({1, 4}) in sq.classes
    assert frozenset({2, 3}) in sq.classes
    assert sq.nonzero_count == 2


def test_square_classes_gf4_single_nonzero_class():
    k = ff_make(2, 2)
    sq = square_classes(k)
    assert sq.nonzero_count == 1
    assert sq.classes[1] == frozenset({1, 2, 3})


def test_square_class_counts():
    # odd q: exactly 2 nonzero classes; characteristic 2: exactly 1
    for p, n in SMALL_FIELDS + [(3, 3), (7, 2)]:
        k = ff_make(p, n)
        expect = 1 if p == 2 else 2
        assert square_classes(k).nonzero_count == expect


def test_square_class_of_product_well_defined():
    for p, n in SMALL_FIELDS:
        k = ff_make(p, n)
        sq = square_classes(k)
        for a in k.nonzero():
            for b in k.nonzero():
                # the class of a product depends only on the classes
                ca, cb = sq.class_of[a], sq.class_of[b]
                a2 = min(sq.classes[ca])
                b2 = min(sq.classes[cb])
                assert sq.class_of[k.mul(a, b)] == sq.class_of[k.mul(a2, b2)]


def test_element_names():
    k = ff_make(2, 2)
    assert [k.element_name(a) for a in range(4)] == ["0", "1", "x", "x+1"]
    assert ff_make(5).element_name(3) == "3"


def test_parse_field_arg():
    assert parse_field_arg("3") == (3, 1)
    assert parse_field_arg("3^2") == (3, 2)
    assert parse_field_arg("9") == (3, 2)
    assert parse_field_arg("8") == (2, 3)
    with pytest.raises(InputError):
        parse_field_arg("6")
    with pytest.raises(InputError):
        parse_field_arg("abc")
