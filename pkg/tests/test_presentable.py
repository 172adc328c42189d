from itertools import combinations

import pytest

from quadpres.errors import InputError, SizeGuardError, ValidationError
from quadpres.finitefield import ff_make
from quadpres.hyperfields import (
    Hyperfield,
    check_hyperfield,
    euclidean_hyperfield,
    from_field,
    hyperfield_isomorphic,
    quotient_by_subgroup,
    prime_hyperfield,
    quadratic_hyperfield,
)
from quadpres.presentable import (
    EXAMPLE_SQ_ADD,
    EXAMPLE_SQ_MUL,
    EXAMPLE_SQ_NAMES,
    PresentableRing,
    check_presentable,
    example_sq_structure,
    powerset_of_hyperfield,
    quotient_by_congruence,
    quotient_mod_multiplicative_set,
    squares_pipeline,
    supercompact_hyperfield,
)


def test_powerset_of_gf2():
    F = from_field(ff_make(2))
    R = powerset_of_hyperfield(F)
    assert R.n == 3
    assert set(R.poset.names) == {"{0}", "{1}", "{0,1}"}
    assert R.is_field


def test_powerset_sup_is_union():
    R = powerset_of_hyperfield(euclidean_hyperfield())
    P = R.poset
    for x in range(P.n):
        for y in range(P.n):
            assert P.supremum([x, y]) == ((x + 1) | (y + 1)) - 1


def test_powerset_of_euclidean_matches_example_sq_tables():
    E = euclidean_hyperfield()
    R = powerset_of_hyperfield(E)
    S = example_sq_structure()
    # map the literal table's ids to powerset mask ids via member sets
    mask_of = {
        "theta": 1 << E.id_of("0"),
        "I": 1 << E.id_of("1"),
        "kappa": 1 << E.id_of("-1"),
        "alpha1": (1 << E.id_of("0")) | (1 << E.id_of("1")),
        "alpha2": (1 << E.id_of("0")) | (1 << E.id_of("-1")),
        "alpha3": (1 << E.id_of("1")) | (1 << E.id_of("-1")),
        "beta": 0b111,
    }
    to_r = [mask_of[name] - 1 for name in EXAMPLE_SQ_NAMES]
    for i in range(7):
        for j in range(7):
            assert R.add[to_r[i]][to_r[j]] == to_r[EXAMPLE_SQ_ADD[i][j]]
            assert R.mul[to_r[i]][to_r[j]] == to_r[EXAMPLE_SQ_MUL[i][j]]
    assert check_presentable(S).passed


def test_example_sq_spot_values():
    S = example_sq_structure()
    name = {n: i for i, n in enumerate(EXAMPLE_SQ_NAMES)}
    assert S.add[name["I"]][name["kappa"]] == name["beta"]
    assert S.add[name["alpha1"]][name["alpha2"]] == name["beta"]
    assert S.mul[name["kappa"]][name["alpha1"]] == name["alpha2"]
    assert S.mul[name["alpha3"]][name["alpha3"]] == name["alpha3"]


def test_check_presentable_field_level_on_powersets():
    for F in (euclidean_hyperfield(), from_field(ff_make(5))):
        R = powerset_of_hyperfield(F)
        report = check_presentable(R)
        assert report.level_passed == "field"
        assert report.passed


def test_exchange_law_counterexample_on_modular_powerset():
    # P*(Z/8): {1,3} <= {0,1} + {0,2} but {0,1} is not <= {1,3} - {0,2}
    n = 8
    add = [[(a + b) % n for b in range(n)] for a in range(n)]
    mul = [[(a * b) % n for b in range(n)] for a in range(n)]
    neg = [(-a) % n for a in range(n)]
    Z8 = Hyperfield(
        zero=0,
        one=1,
        neg=neg,
        mul=mul,
        add=[[frozenset([add[a][b]]) for b in range(n)] for a in range(n)],
        names=[str(a) for a in range(n)],
    )
    R = powerset_of_hyperfield(Z8)
    assert not R.is_field  # Z/8 has noninvertible nonzero elements
    def pid(*members):
        m = 0
        for x in members:
            m |= 1 << x
        return m - 1
    lhs = R.add[pid(0, 1)][pid(0, 2)]
    assert R.poset.leq(pid(1, 3), lhs)
    rhs = R.add[pid(1, 3)][R.neg[pid(0, 2)]]
    assert not R.poset.leq(pid(0, 1), rhs)


def test_mutated_example_sq_fails_neutrality():
    add = [list(row) for row in EXAMPLE_SQ_ADD]
    add[5][0] = add[0][5] = 6  # alpha3 + theta = beta
    S = example_sq_structure()
    bad = PresentableRing(S.poset, add, list(S.neg), [list(r) for r in S.mul], S.one, True)
    report = check_presentable(bad)
    assert not report.passed
    failing = [w for name, w in report.failures if name == "monoid.ii"]
    assert failing and failing[0][0] == 5


def test_supercompact_round_trip():
    for F in (
        euclidean_hyperfield(),
        from_field(ff_make(2)),
        from_field(ff_make(3)),
        from_field(ff_make(2, 2)),
        from_field(ff_make(5)),
        quadratic_hyperfield(ff_make(3)),
        quadratic_hyperfield(ff_make(2, 2)),
    ):
        R = powerset_of_hyperfield(F)
        G = supercompact_hyperfield(R)
        assert hyperfield_isomorphic(F, G) is not None


def test_supercompact_of_example_sq_is_euclidean():
    G = supercompact_hyperfield(example_sq_structure())
    assert hyperfield_isomorphic(G, euclidean_hyperfield()) is not None
    assert G.add(G.one, G.zero) == {G.one}


def test_supercompact_requires_field_level():
    F = from_field(ff_make(3))
    R = powerset_of_hyperfield(F)
    bad = PresentableRing(R.poset, R.add, R.neg, R.mul, R.one, is_field=True)
    # sabotage: claim field on a structure whose mul table we break
    mul = [list(row) for row in R.mul]
    mul[R.one][R.one] = R.zero
    worse = PresentableRing(R.poset, R.add, R.neg, mul, R.one, is_field=True)
    with pytest.raises(ValidationError):
        supercompact_hyperfield(worse)
    assert supercompact_hyperfield(bad) is not None


def test_quotient_mod_trivial_set():
    E = euclidean_hyperfield()
    Q = quotient_mod_multiplicative_set(E, {E.one})
    assert Q == E


def test_quotient_mod_full_group_of_euclidean():
    E = euclidean_hyperfield()
    Q = quotient_mod_multiplicative_set(E, {1, 2})
    assert Q.size == 2
    assert Q.zero in Q.add(Q.one, Q.one)
    assert check_hyperfield(Q).passed


def test_quotient_mod_agrees_with_subgroup_quotient():
    for k in (ff_make(5), ff_make(7)):
        F = from_field(k)
        squares = {k.mul(a, a) for a in k.nonzero()}
        assert quotient_mod_multiplicative_set(F, squares) == quotient_by_subgroup(F, squares)


def test_quotient_mod_on_supercompacts_of_powerset_gf7():
    k = ff_make(7)
    R = powerset_of_hyperfield(from_field(k))
    G = supercompact_hyperfield(R, verify=False)  # ladder verified in its own test
    # supercompact names are singleton sets
    squares = set()
    for a in k.nonzero():
        s = k.mul(a, a)
        squares.add(G.id_of("{" + k.element_name(s) + "}"))
    Q = quotient_mod_multiplicative_set(G, squares)
    expected = quotient_by_subgroup(from_field(k), {k.mul(a, a) for a in k.nonzero()})
    assert hyperfield_isomorphic(Q, expected) is not None


def test_quotient_mod_rejects_bad_sets():
    E = euclidean_hyperfield()
    with pytest.raises(ValidationError):
        quotient_mod_multiplicative_set(E, set())
    with pytest.raises(ValidationError):
        quotient_mod_multiplicative_set(E, {E.zero, E.one})
    F = from_field(ff_make(5))
    with pytest.raises(ValidationError):
        quotient_mod_multiplicative_set(F, {2})  # 2*2=4 not in T


def test_congruence_singleton_partition():
    E = euclidean_hyperfield()
    Q = quotient_by_congruence(E, [[0], [1], [2]])
    assert Q == E


def test_congruence_matches_multiplicative_quotient():
    # the localization relation, fed back in as an explicit partition
    F = from_field(ff_make(5))
    squares = {1, 4}
    Q1 = quotient_mod_multiplicative_set(F, squares)
    Q2 = quotient_by_congruence(F, [[0], [1, 4], [2, 3]])
    assert Q1 == Q2


def test_congruence_rejects_zero_one_merge():
    E = euclidean_hyperfield()
    with pytest.raises(ValidationError) as err:
        quotient_by_congruence(E, [[0, 1], [2]])
    assert "0 ~ 1" in str(err.value)


def test_congruence_rejects_incompatible_partition():
    F = from_field(ff_make(5))
    with pytest.raises(ValidationError):
        quotient_by_congruence(F, [[0], [1, 2], [3, 4]])


def test_squares_pipeline_chain_matches_quadratic_hyperfield():
    for p, n in [(3, 1), (5, 1), (7, 1), (3, 2)]:
        k = ff_make(p, n)
        lhs = squares_pipeline(prime_hyperfield(from_field(k)))
        rhs = quadratic_hyperfield(k)
        assert hyperfield_isomorphic(lhs, rhs) is not None


def test_squares_pipeline_identity_on_exponent_two():
    E = euclidean_hyperfield()
    out = squares_pipeline(E)
    assert hyperfield_isomorphic(out, E) is not None


def test_squares_pipeline_precondition():
    F = from_field(ff_make(5))
    with pytest.raises(ValidationError) as err:
        squares_pipeline(F)
    assert err.value.witness is not None


def test_squares_pipeline_literal_reading_collapses():
    P = prime_hyperfield(from_field(ff_make(7)))
    out = squares_pipeline(P, literal_squares=True)
    assert out.size == 2  # T = all nonzero elements collapses the quotient


def test_all_multiplicative_set_quotients_are_hyperfields():
    # every multiplicative subset of nonzero supercompacts, small fleet
    fleet = [
        euclidean_hyperfield(),
        quadratic_hyperfield(ff_make(3)),
        from_field(ff_make(5)),
        from_field(ff_make(7)),
    ]
    for F in fleet:
        nz = F.nonzero()
        for r in range(1, len(nz) + 1):
            for cand in combinations(nz, r):
                s = set(cand)
                if any(F.mul(a, b) not in s for a in s for b in s):
                    continue
                Q = quotient_mod_multiplicative_set(F, s)
                assert check_hyperfield(Q).passed, (F, s)


def test_powerset_guard():
    with pytest.raises(SizeGuardError):
        k = ff_make(11)
        powerset_of_hyperfield(from_field(k))


def test_presentable_ring_structural_validation():
    S = example_sq_structure()
    with pytest.raises(InputError):
        PresentableRing(S.poset, [[0]], S.neg, S.mul, S.one, True)
    with pytest.raises(ValidationError):
        PresentableRing(S.poset, S.add, S.neg, S.mul, one=6, is_field=True)  # beta not minimal


def test_random_family_sampling_is_seeded():
    R = powerset_of_hyperfield(euclidean_hyperfield())
    r1 = check_presentable(R, seed=42, family_samples=50)
    r2 = check_presentable(R, seed=42, family_samples=50)
    assert r1.level_passed == r2.level_passed == "field"


def test_family_suprema_preservation_sampled_thousand():
    # powerset-built structures preserve suprema on arbitrary families; a
    # thousand seeded random families per structure on top of the exhaustive
    # supercompact families inside the ladder check
    for F in (euclidean_hyperfield(), from_field(ff_make(5))):
        R = powerset_of_hyperfield(F)
        report = check_presentable(R, seed=7, family_samples=1000)
        assert report.passed


def test_squares_pipeline_outputs_are_prequadratic():
    from quadpres.quadratic import check_prequadratic

    for p, n in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (3, 2)]:
        P = prime_hyperfield(from_field(ff_make(p, n)))
        out = squares_pipeline(P)
        assert check_prequadratic(out).passed, (p, n)
    E = euclidean_hyperfield()
    assert check_prequadratic(squares_pipeline(E)).passed
