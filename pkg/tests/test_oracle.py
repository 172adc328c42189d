from itertools import product

import pytest

from quadpres.errors import InputError, SizeGuardError, ValidationError
from quadpres.finitefield import ff_make
from quadpres.oracle import (
    GramForm,
    _DiagonalWitt,
    binary_isometric_field,
    classical_isometric,
    classical_witt_ring,
    congruence_classes,
    represents,
    same_square_class,
)


def test_gram_form_validation():
    k = ff_make(3)
    g = GramForm(k, ((1, 0), (0, 2)))
    assert g.nondegenerate
    assert GramForm(k, ((1, 0), (0, 0))).nondegenerate is False
    with pytest.raises(ValidationError):
        GramForm(k, ((1, 2), (0, 1)))
    with pytest.raises(InputError):
        GramForm(k, ((1, 0),))


def test_gf3_dim1_two_classes():
    cc = congruence_classes(3, 1)
    assert cc.count == 2


def test_gf2_dim1_single_class():
    cc = congruence_classes(2, 1)
    assert cc.count == 1


def test_gf3_dim2_orbit_count_matches_disc_criterion():
    cc = congruence_classes(3, 2)
    # over an odd field, nondegenerate symmetric binary forms are classified
    # by discriminant square class: two classes
    k = ff_make(3)
    disc_classes = set()
    for a, b in product((1, 2), repeat=2):
        disc_classes.add(same_square_class(k, k.mul(a, b), 1))
    assert cc.count == len(disc_classes)


def test_congruence_guard():
    with pytest.raises(SizeGuardError):
        congruence_classes(5, 3)
    with pytest.raises(SizeGuardError):
        congruence_classes(11, 2)


def test_classical_isometric_examples():
    assert classical_isometric(3, (1, 1), (2, 2))  # discs 1 and 4 = 1
    assert not classical_isometric(3, (1,), (2,))
    assert classical_isometric(3, (1, 2), (1, 2))
    with pytest.raises(InputError):
        classical_isometric(2, (1,), (1,))
    with pytest.raises(InputError):
        classical_isometric(3, (0,), (1,))


def test_classical_isometric_agrees_with_congruence_orbits():
    for q in (3, 5, 7, 9):
        k = ff_make(*{3: (3, 1), 5: (5, 1), 7: (7, 1), 9: (3, 2)}[q])
        for dim in (1, 2):
            cc = congruence_classes(q, dim)
            entries = list(k.nonzero())
            for phi in product(entries, repeat=dim):
                for psi in product(entries, repeat=dim):
                    a = GramForm.diagonal(k, phi).matrix
                    b = GramForm.diagonal(k, psi).matrix
                    assert cc.same_class(a, b) == classical_isometric(q, phi, psi), (
                        q,
                        dim,
                        phi,
                        psi,
                    )


def test_represents_value_sets():
    k = ff_make(7)
    # <1,1> over GF(7): s^2 + t^2 hits every nonzero value but not 0
    hits = {c for c in k.nonzero() if represents(k, 1, 1, c)}
    assert hits == set(k.nonzero())
    assert not represents(k, 1, 1, 0)
    k3 = ff_make(3)
    assert represents(k3, 1, 1, 0) is False  # -1 not a square mod 3


def test_binary_isometric_field_basics():
    k = ff_make(3)
    assert binary_isometric_field(k, 1, 1, 2, 2)
    assert not binary_isometric_field(k, 1, 1, 1, 2)


def test_witt_ring_counts():
    for q, expected in [(3, 4), (5, 4), (2, 2), (4, 2), (7, 4), (9, 4)]:
        W = classical_witt_ring(q, 4)
        assert W.status == "finite"
        assert W.size == expected, q


def test_witt_ring_structures():
    W3 = classical_witt_ring(3, 4)
    one = W3.one_class
    x = one
    for _ in range(3):
        x = W3.add_table[x][one]
    assert x == W3.zero_class  # additive order 4
    W5 = classical_witt_ring(5, 4)
    for i in range(W5.size):
        assert W5.add_table[i][i] == W5.zero_class  # exponent 2


def test_witt_ring_saturation():
    for q in (2, 3, 5, 7, 9):
        assert classical_witt_ring(q, 3).size == classical_witt_ring(q, 4).size


def test_witt_ring_guards():
    with pytest.raises(SizeGuardError):
        classical_witt_ring(11, 4)
    with pytest.raises(SizeGuardError):
        classical_witt_ring(3, 5)


def test_chain_isometry_matches_disc_on_gf3_dim3():
    k = ff_make(3)
    calc = _DiagonalWitt(k)
    for phi in product((1, 2), repeat=3):
        for psi in product((1, 2), repeat=3):
            assert calc.chain_isometric(phi, psi) == classical_isometric(3, phi, psi)
