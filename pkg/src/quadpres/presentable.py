"""Explicit presentable rings and fields: powerset constructions, the axiom
ladder, supercompact extraction, and quotient constructions.

A PresentableRing is a pointed poset carrying total addition, negation and
multiplication tables plus an is_field claim.  The carrier order is the
poset's; its minimal elements are the supercompacts.  The heavy verifier is
:func:`check_presentable`, which walks the poset/monoid/group/ring/field
ladder and reports per-axiom witnesses.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import InputError, SizeGuardError, ValidationError
from .hyperfields import Hyperfield, check_hyperfield
from .posets import FinitePointedPoset, _bits, check_presentable as check_poset

MAX_HYPERFIELD_BASE = 10   # powerset carrier is 2^|F| - 1
FULL_CUBIC_LIMIT = 128     # carriers up to this get O(n^3) exhaustive laws

LEVELS = ("none", "poset", "monoid", "group", "ring", "field")


class PresentableRing:
    """Tables of a claimed presentable ring/field over a pointed poset.

    Construction enforces structural invariants (closed tables, 0 != 1,
    0 and 1 supercompact); the algebraic laws are check_presentable's job.
    """

    __slots__ = ("poset", "add", "neg", "mul", "one", "is_field")

    def __init__(self, poset, add, neg, mul, one, is_field):
        n = poset.n
        add = tuple(tuple(row) for row in add)
        mul = tuple(tuple(row) for row in mul)
        neg = tuple(neg)
        for name, table in (("add", add), ("mul", mul)):
            if len(table) != n or any(len(row) != n for row in table):
                raise InputError(f"{name} table shape mismatch")
            if any(not 0 <= x < n for row in table for x in row):
                raise InputError(f"{name} table not closed over the carrier")
        if len(neg) != n or any(not 0 <= x < n for x in neg):
            raise InputError("neg table malformed")
        if not 0 <= one < n:
            raise InputError("one out of range")
        zero = poset.basepoint
        if one == zero:
            raise ValidationError("0 and 1 coincide")
        mins = poset.minimals_mask
        if not mins >> zero & 1:
            raise ValidationError("0 (the basepoint) is not a supercompact")
        if not mins >> one & 1:
            raise ValidationError("1 is not a supercompact")
        self.poset = poset
        self.add = add
        self.neg = neg
        self.mul = mul
        self.one = one
        self.is_field = bool(is_field)

    @property
    def zero(self):
        return self.poset.basepoint

    @property
    def n(self):
        return self.poset.n

    def supercompacts(self):
        return sorted(self.poset.minimals())

    def __repr__(self):
        kind = "field" if self.is_field else "ring"
        return f"PresentableRing(n={self.n}, claimed {kind})"


def powerset_of_hyperfield(F: Hyperfield) -> PresentableRing:
    """The pierced powerset of F with elementwise operations.

    Carrier: nonempty subsets of F's carrier as bitmask-minus-one ids,
    ordered by inclusion; A + B unions the hypersums of members, A * B and
    -A act elementwise; the basepoint is {0} and the identity {1}.
    """
    m = F.size
    if m > MAX_HYPERFIELD_BASE:
        raise SizeGuardError(
            f"powerset of a {m}-element hyperfield has {2**m - 1} elements; cap {MAX_HYPERFIELD_BASE}"
        )
    size = (1 << m) - 1
    full = size
    up = [0] * size
    for mask in range(1, size + 1):
        free = full & ~mask
        row = 0
        s = free
        while True:
            row |= 1 << ((mask | s) - 1)
            if s == 0:
                break
            s = (s - 1) & free
        up[mask - 1] = row
    names = tuple(
        "{" + ",".join(F.names[i] for i in _bits(mask)) + "}" for mask in range(1, size + 1)
    )
    poset = FinitePointedPoset.from_up_masks(up, basepoint=(1 << F.zero) - 1, names=names)

    add_mask = [[0] * m for _ in range(m)]
    mul_bit = [[0] * m for _ in range(m)]
    for a in range(m):
        for b in range(m):
            cell = 0
            for x in F.add(a, b):
                cell |= 1 << x
            add_mask[a][b] = cell
            mul_bit[a][b] = 1 << F.mul(a, b)
    neg_bit = [1 << F.neg(a) for a in range(m)]

    add = [[0] * size for _ in range(size)]
    mul = [[0] * size for _ in range(size)]
    neg = [0] * size
    members = [tuple(_bits(mask)) for mask in range(1, size + 1)]
    for i in range(size):
        mi = members[i]
        nm = 0
        for a in mi:
            nm |= neg_bit[a]
        neg[i] = nm - 1
        for j in range(i, size):
            sm = 0
            pm = 0
            for a in mi:
                ra, rp = add_mask[a], mul_bit[a]
                for b in members[j]:
                    sm |= ra[b]
                    pm |= rp[b]
            add[i][j] = add[j][i] = sm - 1
            mul[i][j] = mul[j][i] = pm - 1
    return PresentableRing(
        poset, add, neg, mul, one=(1 << F.one) - 1, is_field=check_hyperfield(F).passed
    )


EXAMPLE_SQ_NAMES = ("theta", "I", "kappa", "alpha1", "alpha2", "alpha3", "beta")

# the 7-element structure over the Euclidean 3-element hyperfield, shipped
# as literal golden tables (row/column order as in EXAMPLE_SQ_NAMES)
EXAMPLE_SQ_ADD = (
    (0, 1, 2, 3, 4, 5, 6),
    (1, 1, 6, 1, 6, 6, 6),
    (2, 6, 2, 6, 2, 6, 6),
    (3, 1, 6, 3, 6, 6, 6),
    (4, 6, 2, 6, 4, 6, 6),
    (5, 6, 6, 6, 6, 6, 6),
    (6, 6, 6, 6, 6, 6, 6),
)
EXAMPLE_SQ_MUL = (
    (0, 0, 0, 0, 0, 0, 0),
    (0, 1, 2, 3, 4, 5, 6),
    (0, 2, 1, 4, 3, 5, 6),
    (0, 3, 4, 3, 4, 6, 6),
    (0, 4, 3, 4, 3, 6, 6),
    (0, 5, 5, 6, 6, 5, 6),
    (0, 6, 6, 6, 6, 6, 6),
)
EXAMPLE_SQ_NEG = (0, 2, 1, 4, 3, 5, 6)
EXAMPLE_SQ_COVERS = (
    ("theta", "alpha1"),
    ("theta", "alpha2"),
    ("I", "alpha1"),
    ("I", "alpha3"),
    ("kappa", "alpha2"),
    ("kappa", "alpha3"),
    ("alpha1", "beta"),
    ("alpha2", "beta"),
    ("alpha3", "beta"),
)


def example_sq_structure() -> PresentableRing:
    """The 7-element presentable field over {0, 1, -1}, from literal tables."""
    from .posets import explicit_poset

    poset = explicit_poset(EXAMPLE_SQ_NAMES, EXAMPLE_SQ_COVERS, basepoint_name="theta")
    return PresentableRing(
        poset, EXAMPLE_SQ_ADD, EXAMPLE_SQ_NEG, EXAMPLE_SQ_MUL, one=1, is_field=True
    )


@dataclass
class PresentableReport:
    """Ladder outcome; level_passed is the highest fully verified level."""

    level_passed: str
    failures: list = field(default_factory=list)
    claimed_level: str = "field"

    @property
    def passed(self):
        return self.level_passed == self.claimed_level


def _sup(poset, cache, xs):
    key = 0
    for x in xs:
        key |= 1 << x
    v = cache.get(key)
    if v is None and key not in cache:
        v = poset.sup_of_mask(key)
        cache[key] = v
    return v


def check_presentable(R: PresentableRing, seed=0, family_samples=100) -> PresentableReport:
    """Verify the poset/monoid/group/ring/field ladder with witnesses.

    Suprema preservation is checked (a) by the pairwise supercompact
    decomposition x + y = sup{s + t}, (b) exhaustively over families of
    supercompacts against every carrier element, and (c) on ``family_samples``
    seeded random families of arbitrary carrier elements.  Cubic laws
    (associativity, distributivity, order-compatibility) run exhaustively for
    carriers up to FULL_CUBIC_LIMIT; above that they are checked on
    supercompact triples, which the decomposition identities lift to the
    whole carrier.
    """
    claimed = "field" if R.is_field else "ring"
    poset = R.poset
    report = check_poset(poset)
    if not report.passed:
        failures = [(f"poset.{axiom}", wit) for axiom, wit in report.witnesses]
        return PresentableReport("none", failures, claimed)

    n = R.n
    zero = R.zero
    mins = poset.minimals_mask
    sc = R.supercompacts()
    sup_cache = {}
    smask = [poset.minimals_below_mask(x) for x in range(n)]
    exhaustive = n <= FULL_CUBIC_LIMIT
    triple_range = range(n) if exhaustive else sc

    failures = []
    for a in range(n):
        if R.add[a][zero] != a or R.add[zero][a] != a:
            failures.append(("monoid.ii", (a, R.add[a][zero])))
    for a in range(n):
        for b in range(a + 1, n):
            if R.add[a][b] != R.add[b][a]:
                failures.append(("monoid.iii", (a, b)))
    for a in triple_range:
        for b in triple_range:
            for c in triple_range:
                if R.add[a][R.add[b][c]] != R.add[R.add[a][b]][c]:
                    failures.append(("monoid.i", (a, b, c)))
    # suprema preservation of +: pairwise supercompact decomposition
    for x in range(n):
        for y in range(x, n):
            parts = {R.add[s][t] for s in _bits(smask[x]) for t in _bits(smask[y])}
            got = _sup(poset, sup_cache, parts)
            if got != R.add[x][y]:
                failures.append(("monoid.suprema", ("+", (x, y), R.add[x][y], got)))
    # exhaustive families of supercompacts vs every carrier element
    k = len(sc)
    if k > 16:
        raise SizeGuardError(f"{k} supercompacts exceed the family guard 16")
    fam = mins
    while fam:
        members = tuple(_bits(fam))
        lhs_base = poset.sup_of_mask(fam)
        for b in range(n):
            lhs = R.add[lhs_base][b]
            rhs = _sup(poset, sup_cache, {R.add[s][b] for s in members})
            if lhs != rhs:
                failures.append(("monoid.suprema", ("+", members, b, lhs, rhs)))
        fam = (fam - 1) & mins
    rng = random.Random(seed)
    for _ in range(family_samples):
        members = tuple(rng.randrange(n) for _ in range(rng.randint(1, 3)))
        b = rng.randrange(n)
        base = _sup(poset, sup_cache, members)
        if base is None:
            failures.append(("monoid.suprema", ("+", members, b, None, None)))
            continue
        lhs = R.add[base][b]
        rhs = _sup(poset, sup_cache, {R.add[a][b] for a in members})
        if lhs != rhs:
            failures.append(("monoid.suprema", ("+", members, b, lhs, rhs)))
    if failures:
        return PresentableReport("poset", failures, claimed)

    for a in range(n):
        if R.neg[R.neg[a]] != a:
            failures.append(("group.involution", (a,)))
    for x in range(n):
        got = _sup(poset, sup_cache, {R.neg[s] for s in _bits(smask[x])})
        if got != R.neg[x]:
            failures.append(("group.suprema", ("-", (x,), R.neg[x], got)))
    for s in sc:
        for t in sc:
            for u in sc:
                if poset.leq(s, R.add[t][u]) and not poset.leq(t, R.add[s][R.neg[u]]):
                    failures.append(("group.exchange", (s, t, u)))
    if failures:
        return PresentableReport("monoid", failures, claimed)

    one = R.one
    for a in range(n):
        if R.mul[a][one] != a:
            failures.append(("ring.identity", (a,)))
        for b in range(a + 1, n):
            if R.mul[a][b] != R.mul[b][a]:
                failures.append(("ring.commutative", (a, b)))
    for a in triple_range:
        for b in triple_range:
            for c in triple_range:
                if R.mul[a][R.mul[b][c]] != R.mul[R.mul[a][b]][c]:
                    failures.append(("ring.mul_associative", (a, b, c)))
                # powerset cross-terms make the right side bigger in general,
                # so distributivity is the inequality a(b+c) <= ab + ac
                if not poset.leq(R.mul[a][R.add[b][c]], R.add[R.mul[a][b]][R.mul[a][c]]):
                    failures.append(("ring.distributive", (a, b, c)))
    # with a supercompact multiplier the two sides agree exactly
    for a in sc:
        for b in range(n):
            for c in range(n):
                if R.mul[a][R.add[b][c]] != R.add[R.mul[a][b]][R.mul[a][c]]:
                    failures.append(("ring.distributive_supercompact", (a, b, c)))
    for a in range(n):
        for b in range(n):
            if R.mul[R.neg[a]][b] != R.neg[R.mul[a][b]]:
                failures.append(("ring.compat_neg", (a, b)))
            expected = {R.mul[s][t] for s in _bits(smask[a]) for t in _bits(smask[b])}
            if set(_bits(smask[R.mul[a][b]])) != expected:
                failures.append(
                    ("ring.supercompact_products", (a, b, sorted(_bits(smask[R.mul[a][b]])), sorted(expected)))
                )
    if exhaustive:
        for a in range(n):
            for b in _bits(poset.up[a]):
                for c in range(n):
                    if not poset.leq(R.mul[a][c], R.mul[b][c]):
                        failures.append(("ring.compat_leq", (a, b, c)))
    if failures:
        return PresentableReport("group", failures, claimed)

    if not R.is_field:
        return PresentableReport("ring", failures, claimed)
    nz = [s for s in sc if s != zero]
    for s in nz:
        for t in nz:
            p = R.mul[s][t]
            if p == zero or not mins >> p & 1:
                failures.append(("field.group", ("closure", s, t, p)))
        if not any(R.mul[s][t] == one for t in nz):
            failures.append(("field.group", ("inverse", s)))
    if failures:
        return PresentableReport("ring", failures, claimed)
    return PresentableReport("field", [], claimed)


def supercompact_hyperfield(R: PresentableRing, verify=True) -> Hyperfield:
    """Restrict a presentable field to its supercompacts, with a <= b + c as
    the membership rule of the induced multivalued addition."""
    if verify:
        report = check_presentable(R)
        if not report.passed or not R.is_field:
            raise ValidationError(
                f"not a presentable field: level {report.level_passed}, "
                f"first failure {report.failures[0] if report.failures else None}"
            )
    sc = R.supercompacts()
    index = {x: i for i, x in enumerate(sc)}
    poset = R.poset
    add = [
        [frozenset(index[a] for a in _bits(poset.minimals_below_mask(R.add[b][c]))) for c in sc]
        for b in sc
    ]
    mul = [[index[R.mul[b][c]] for c in sc] for b in sc]
    neg = [index[R.neg[b]] for b in sc]
    names = [poset.names[x] for x in sc]
    return Hyperfield(
        zero=index[R.zero], one=index[R.one], neg=neg, mul=mul, add=add, names=names
    )


def _validate_multiplicative_set(F, T):
    T = frozenset(T)
    if not T:
        raise ValidationError("T is empty")
    if F.zero in T:
        raise ValidationError("T contains zero", witness=(F.zero,))
    for s in T:
        if not 0 <= s < F.size:
            raise InputError(f"unknown id {s} in T")
        for t in T:
            if F.mul(s, t) not in T:
                raise ValidationError(
                    f"T not multiplicatively closed at ({s},{t})", witness=(s, t)
                )
    return T


def quotient_mod_multiplicative_set(F: Hyperfield, T) -> Hyperfield:
    """Quotient of a (supercompact-level) hyperfield by a multiplicative set.

    Classes: a ~ b iff as = bt for some s, t in T.  Membership:
    abar in bbar + cbar iff as in bt + cu for some s, t, u in T.
    """
    T = _validate_multiplicative_set(F, T)
    n = F.size
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    # a ~ b iff as = bt for some s,t in T, i.e. the orbits aT and bT meet;
    # union-find closes it transitively for robustness on arbitrary tables
    orbit = [frozenset(F.mul(a, s) for s in T) for a in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            if orbit[a] & orbit[b]:
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
    roots = sorted({find(a) for a in range(n)})
    class_of = [roots.index(find(a)) for a in range(n)]
    classes = [tuple(a for a in range(n) if class_of[a] == i) for i in range(len(roots))]
    if class_of[F.zero] == class_of[F.one]:
        raise ValidationError("quotient relation identifies 0 and 1")

    m = len(classes)
    reps = [c[0] for c in classes]
    zero = class_of[F.zero]
    one = class_of[F.one]
    neg = [class_of[F.neg(r)] for r in reps]
    mul = [[class_of[F.mul(ra, rb)] for rb in reps] for ra in reps]
    add = []
    for b in reps:
        row = []
        for c in reps:
            sums = set()
            for t in T:
                bt = F.mul(b, t)
                for u in T:
                    sums |= F.add(bt, F.mul(c, u))
            # abar is in the cell iff a*s lands in some bt + cu
            cell = frozenset(i for i in range(m) if orbit[reps[i]] & sums)
            row.append(cell)
        add.append(row)
    names = [F.names[min(c)] for c in classes]
    return Hyperfield(zero=zero, one=one, neg=neg, mul=mul, add=add, names=names)


def quotient_by_congruence(F: Hyperfield, partition) -> Hyperfield:
    """Quotient of a hyperfield by an explicit partition of its carrier.

    The partition must respect multiplication and negation and separate 0
    from 1 (violations raise with the offending tuple).  The induced
    addition is existential: abar lies in bbar + cbar iff a' is in b' + c'
    for some representatives of the three classes.  Sum-compatibility is
    enforced by verifying the hyperfield axioms of the result: partitions
    coming from multiplicative sets do not satisfy per-pair equality of
    summed class images, yet their quotients are exactly the localization
    quotients, so per-pair equality would reject the intended inputs.
    """
    classes = [tuple(sorted(c)) for c in partition]
    seen = [x for c in classes for x in c]
    if sorted(seen) != list(range(F.size)):
        raise InputError("partition does not cover the carrier exactly once")
    class_of = [0] * F.size
    for i, c in enumerate(classes):
        for x in c:
            class_of[x] = i
    if class_of[F.zero] == class_of[F.one]:
        raise ValidationError("0 ~ 1: the congruence is trivial")
    for ci in classes:
        a0 = ci[0]
        for a in ci:
            if class_of[F.neg(a)] != class_of[F.neg(a0)]:
                raise ValidationError(
                    f"negation not respected on class of {a0}", witness=(a0, a)
                )
            for cj in classes:
                b0 = cj[0]
                for b in cj:
                    if class_of[F.mul(a, b)] != class_of[F.mul(a0, b0)]:
                        raise ValidationError(
                            "multiplication not respected", witness=(a0, a, b0, b)
                        )
    m = len(classes)
    zero = class_of[F.zero]
    one = class_of[F.one]
    reps = [c[0] for c in classes]
    neg = [class_of[F.neg(r)] for r in reps]
    mul = [[class_of[F.mul(ra, rb)] for rb in reps] for ra in reps]
    add = []
    for ci in classes:
        row = []
        for cj in classes:
            cell = set()
            for a in ci:
                for b in cj:
                    cell |= {class_of[x] for x in F.add(a, b)}
            row.append(frozenset(cell))
        add.append(row)
    names = [F.names[min(c)] for c in classes]
    Q = Hyperfield(zero=zero, one=one, neg=neg, mul=mul, add=add, names=names)
    report = check_hyperfield(Q)
    if not report.passed:
        raise ValidationError(
            f"not a congruence: quotient breaks {report.first_failure()[0]}",
            witness=report.first_failure()[1],
        )
    return Q


def squares_pipeline(F: Hyperfield, literal_squares=False) -> Hyperfield:
    """Quotient by the squares of nonzero elements.

    Requires a in a + b for all nonzero a (apply prime_hyperfield first when
    needed).  With literal_squares=True the set T is read off the powerset
    carrier instead ("below a square of anything nonempty"), which makes T
    all nonzero elements and collapses the quotient; the collapse is the
    caller's to inspect, not hidden.
    """
    for a in F.nonzero():
        for b in range(F.size):
            if a not in F.add(a, b):
                raise ValidationError(
                    f"precondition a in a + b fails at ({a},{b}); apply the prime "
                    "addition first",
                    witness=(a, b),
                )
    if literal_squares:
        T = set(F.nonzero())
    else:
        T = {F.mul(t, t) for t in F.nonzero()}
    return quotient_mod_multiplicative_set(F, T)
