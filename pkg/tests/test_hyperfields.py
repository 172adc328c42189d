from itertools import combinations

import pytest

from quadpres.errors import SizeGuardError, ValidationError
from quadpres.finitefield import ff_make
from quadpres.hyperfields import (
    Hyperfield,
    check_hyperfield,
    euclidean_hyperfield,
    from_field,
    hyperfield_isomorphic,
    prime_hyperfield,
    quadratic_hyperfield,
    quotient_by_subgroup,
)


def mutate_add(F, a, b, new_cell):
    add = [[set(F.add(x, y)) for y in range(F.size)] for x in range(F.size)]
    add[a][b] = set(new_cell)
    add[b][a] = set(new_cell)
    return Hyperfield(F.zero, F.one, F.neg_table(), F.mul_table(), add, names=F.names)


FLEET_FIELDS = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (3, 2), (13, 1)]


def fleet():
    out = [("euclidean3", euclidean_hyperfield())]
    for p, n in FLEET_FIELDS:
        k = ff_make(p, n)
        out.append((f"GF({p**n})", from_field(k)))
        out.append((f"Q(GF({p**n}))", quadratic_hyperfield(k)))
    return out


def test_euclidean_hyperfield_matches_printed_table():
    E = euclidean_hyperfield()
    one, minus = E.id_of("1"), E.id_of("-1")
    assert E.add(one, one) == {one}
    assert E.add(minus, minus) == {minus}
    assert E.add(one, minus) == {E.zero, one, minus}
    assert check_hyperfield(E).level_passed == "hyperfield"


def test_from_field_gives_hyperfields():
    for q, expect in [((2, 1), None), ((3, 1), None), ((2, 2), None)]:
        k = ff_make(*q)
        F = from_field(k)
        assert check_hyperfield(F).passed
    k2 = ff_make(2)
    assert from_field(k2).add(1, 1) == {0}
    k3 = ff_make(3)
    assert from_field(k3).add(1, 1) == {2}
    k4 = ff_make(2, 2)
    F4 = from_field(k4)
    x = k4.q and 2  # id of x
    assert F4.add(x, x) == {0}


def test_mutated_euclidean_fails_with_witness():
    E = euclidean_hyperfield()
    bad = mutate_add(E, 1, 2, {0})  # force 1 + (-1) = {0}
    report = check_hyperfield(bad)
    assert not report.passed
    assert report.level_passed == "none"
    axioms = {name for name, _ in report.failures}
    assert "hypermonoid.iii" in axioms
    # every failure carries a witness tuple
    assert all(len(w) > 0 for _, w in report.failures)


def test_quotient_gf5_by_squares():
    k = ff_make(5)
    F = from_field(k)
    Q = quotient_by_subgroup(F, {1, 4})
    assert Q.size == 3
    # independent derivation of the classes from modular arithmetic
    T = {1, 4}
    cls = {}
    for x in range(5):
        cls[x] = frozenset(
            y for y in range(5) if any((x * s) % 5 == (y * t) % 5 for s in T for t in T)
        )
    assert {cls[0], cls[1], cls[2]} == {
        frozenset({0}),
        frozenset({1, 4}),
        frozenset({2, 3}),
    }
    # membership rule: xbar in ybar + zbar iff x*s = y*t + z*u for s,t,u in T
    one = Q.id_of("1")
    derived = set()
    for xbar, rep in [(Q.id_of("0"), 0), (Q.id_of("1"), 1), (Q.id_of("2"), 2)]:
        if any((rep * s) % 5 == (t + u) % 5 for s in T for t in T for u in T):
            derived.add(xbar)
    assert Q.add(one, one) == derived
    assert check_hyperfield(Q).passed


def test_quotient_by_trivial_subgroup_is_isomorphic():
    F = from_field(ff_make(5))
    Q = quotient_by_subgroup(F, {1})
    assert Q.size == F.size
    assert hyperfield_isomorphic(F, Q) is not None


def test_quotient_by_all_nonzero_collapses():
    F = from_field(ff_make(3))
    Q = quotient_by_subgroup(F, {1, 2})
    assert Q.size == 2
    one = Q.one
    assert Q.add(one, one) == {Q.zero, one}
    assert check_hyperfield(Q).passed


def test_quotient_rejects_bad_subsets():
    F = from_field(ff_make(5))
    with pytest.raises(ValidationError):
        quotient_by_subgroup(F, {0, 1})  # contains zero
    with pytest.raises(ValidationError):
        quotient_by_subgroup(F, {1, 2})  # 2*2=4 not in T
    with pytest.raises(ValidationError):
        quotient_by_subgroup(F, set())


def test_prime_hyperfield_on_gf3():
    F = from_field(ff_make(3))
    P = prime_hyperfield(F)
    assert P.add(1, 1) == {1, 2}
    assert P.add(1, 2) == {0, 1, 2}
    assert check_hyperfield(P).passed
    for a in range(P.size):
        assert P.add(a, 0) == {a}


def test_prime_hyperfield_fixed_point():
    E = euclidean_hyperfield()
    assert prime_hyperfield(E) == E


def test_prime_hyperfield_requires_hyperfield():
    E = euclidean_hyperfield()
    bad = mutate_add(E, 1, 2, {0})
    with pytest.raises(ValidationError):
        prime_hyperfield(bad)


def test_quadratic_hyperfield_gf2():
    Q = quadratic_hyperfield(ff_make(2))
    assert Q.size == 2
    assert Q.add(Q.one, Q.one) == {Q.zero, Q.one}
    assert check_hyperfield(Q).passed


def test_quadratic_hyperfield_gf7_addition_from_representations():
    k = ff_make(7)
    Q = quadratic_hyperfield(k)
    assert Q.size == 3
    squares = {pow(s, 2, 7) for s in range(1, 7)}
    # independent oracle: s^2*y + t^2*z over GF(7), (s,t) != (0,0)
    def value_classes(y, z):
        vals = set()
        for s in range(7):
            for t in range(7):
                if s == 0 and t == 0:
                    continue
                vals.add((s * s * y + t * t * z) % 7)
        return vals
    one = Q.id_of("1")
    nsq = Q.id_of("3")
    rep = {Q.id_of("0"): 0, one: 1, nsq: 3}
    vals = value_classes(1, 1)
    expected = set()
    for cid, r in rep.items():
        members = {0} if r == 0 else {(r * s) % 7 for s in squares}
        if members & vals:
            expected.add(cid)
    # q = 7 is odd and not 3 or 5, so the prime addition changes nothing
    assert Q.add(one, one) == expected


def test_quadratic_hyperfield_fleet_passes():
    for p, n in FLEET_FIELDS:
        Q = quadratic_hyperfield(ff_make(p, n))
        assert check_hyperfield(Q).passed


def test_prime_addition_membership_property():
    # a is always in a +' b for nonzero a
    for name, F in fleet():
        if not check_hyperfield(F).passed:
            continue
        P = prime_hyperfield(F)
        for a in P.nonzero():
            for b in range(P.size):
                assert a in P.add(a, b), (name, a, b)


def test_pre_prime_vs_prime_coincidence():
    # odd q not in {3,5}: the square-class quotient already equals its prime
    # addition.  GF(4) coincides too: every nonzero element is a square, so
    # the quotient is already the 2-element structure with full 1+1.
    for p, n in [(7, 1), (3, 2), (11, 1), (13, 1), (2, 2)]:
        k = ff_make(p, n)
        pre = quotient_by_subgroup(from_field(k), {k.mul(a, a) for a in k.nonzero()})
        assert prime_hyperfield(pre) == pre
    # q in {2,3,5}: the prime step genuinely changes the table
    witnesses = {}
    for p, n in [(2, 1), (3, 1), (5, 1)]:
        k = ff_make(p, n)
        pre = quotient_by_subgroup(from_field(k), {k.mul(a, a) for a in k.nonzero()})
        post = prime_hyperfield(pre)
        diffs = [
            (a, b)
            for a in range(pre.size)
            for b in range(pre.size)
            if pre.add(a, b) != post.add(a, b)
        ]
        assert diffs, f"expected a coincidence failure for GF({p**n})"
        witnesses[(p, n)] = diffs[0]
    assert witnesses


def test_all_subgroup_quotients_pass(subtests=None):
    # exhaustive over subgroups of every tested hyperfield of size <= 9
    for name, F in fleet():
        if F.size > 9 or not check_hyperfield(F).passed:
            continue
        nz = F.nonzero()
        for r in range(1, len(nz) + 1):
            for cand in combinations(nz, r):
                s = set(cand)
                if F.one not in s:
                    continue
                if any(F.mul(a, b) not in s for a in s for b in s):
                    continue
                if any(all(F.mul(a, b) != F.one for b in s) for a in s):
                    continue
                Q = quotient_by_subgroup(F, s)
                assert check_hyperfield(Q).passed, (name, s)


def test_neg_involution_and_zero_addition():
    for name, F in fleet():
        for a in range(F.size):
            assert F.neg(F.neg(a)) == a
            assert F.add(a, F.zero) == {a}


def test_isomorphic_to_itself():
    E = euclidean_hyperfield()
    iso = hyperfield_isomorphic(E, E)
    assert iso == {0: 0, 1: 1, 2: 2}


def test_q3_isomorphic_to_q7():
    Q3 = quadratic_hyperfield(ff_make(3))
    Q7 = quadratic_hyperfield(ff_make(7))
    assert Q3.size == Q7.size == 3
    iso = hyperfield_isomorphic(Q3, Q7)
    assert iso is not None


def test_isomorphic_cardinality_mismatch():
    Q2 = quadratic_hyperfield(ff_make(2))
    E = euclidean_hyperfield()
    assert hyperfield_isomorphic(Q2, E) is None


def test_euclidean_not_isomorphic_to_q3():
    # both 3 elements, but 1 + 1 differs ({1} vs both nonzero classes)
    Q3 = quadratic_hyperfield(ff_make(3))
    assert hyperfield_isomorphic(euclidean_hyperfield(), Q3) is None


def test_isomorphic_guard():
    F = from_field(ff_make(13))
    with pytest.raises(SizeGuardError):
        hyperfield_isomorphic(F, F)


def test_constructor_rejects_malformed_tables():
    E = euclidean_hyperfield()
    with pytest.raises(ValidationError):
        mutate_add(E, 1, 2, set())  # empty cell
    with pytest.raises(ValidationError):
        Hyperfield(0, 1, (0, 1, 1), E.mul_table(), E.add_full_table())  # bad involution
    with pytest.raises(ValidationError):
        Hyperfield(0, 0, E.neg_table(), E.mul_table(), E.add_full_table())  # zero == one
    add = E.add_full_table()
    add[1][2] = [0]  # asymmetric
    with pytest.raises(ValidationError):
        Hyperfield(0, 1, E.neg_table(), E.mul_table(), add)


def test_quotient_class_names_use_min_member():
    k = ff_make(7)
    Q = quotient_by_subgroup(from_field(k), {1, 2, 4})
    assert set(Q.names) == {"0", "1", "3"}
