"""Finite hyperfields: multivalued addition tables as first-class data.

A Hyperfield object stores the tables of a *candidate* structure; the
constructor enforces only shape-level invariants (nonempty addition cells,
involutive negation, commutative multiplication with identity, 0 != 1).
Whether the tables satisfy the hypermonoid/hypergroup/hyperring/hyperfield
laws is decided by :func:`check_hyperfield`, which reports witnesses.

Addition cells are stored for a <= b only; commutativity holds by
construction and is verified on ingest of full square tables.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InputError, SizeGuardError, ValidationError
from .finitefield import FiniteField

MAX_ISO_SEARCH = 12


class Hyperfield:
    __slots__ = ("size", "zero", "one", "names", "_neg", "_mul", "_add")

    def __init__(self, zero, one, neg, mul, add, names=None):
        size = len(mul)
        if size < 2:
            raise InputError("carrier must have at least 2 elements")
        if not (0 <= zero < size and 0 <= one < size):
            raise InputError("zero/one out of range")
        if zero == one:
            raise ValidationError("zero and one coincide")
        neg = tuple(neg)
        if len(neg) != size or any(not 0 <= x < size for x in neg):
            raise InputError("negation table malformed")
        for a in range(size):
            if neg[neg[a]] != a:
                raise ValidationError(f"negation is not an involution at {a}", witness=(a,))
        mul = tuple(tuple(row) for row in mul)
        if any(len(row) != size for row in mul) or any(
            not 0 <= x < size for row in mul for x in row
        ):
            raise InputError("multiplication table malformed")
        for a in range(size):
            if mul[a][one] != a:
                raise ValidationError(f"one is not a multiplicative identity at {a}", witness=(a,))
            for b in range(a, size):
                if mul[a][b] != mul[b][a]:
                    raise ValidationError(
                        f"multiplication not commutative at ({a},{b})", witness=(a, b)
                    )
        if len(add) != size or any(len(row) != size for row in add):
            raise InputError("addition table malformed")
        tri = []
        for a in range(size):
            row = []
            for b in range(a, size):
                cell = frozenset(add[a][b])
                if not cell:
                    raise ValidationError(f"addition cell ({a},{b}) is empty", witness=(a, b))
                if any(not 0 <= x < size for x in cell):
                    raise InputError(f"addition cell ({a},{b}) mentions unknown ids")
                if frozenset(add[b][a]) != cell:
                    raise ValidationError(
                        f"addition not symmetric at ({a},{b})", witness=(a, b)
                    )
                row.append(cell)
            tri.append(tuple(row))
        self.size = size
        self.zero = zero
        self.one = one
        self.names = tuple(names) if names is not None else tuple(str(i) for i in range(size))
        if len(self.names) != size:
            raise InputError("names length does not match carrier size")
        self._neg = neg
        self._mul = mul
        self._add = tuple(tri)

    # -- operations ------------------------------------------------------

    def add(self, a, b):
        if a > b:
            a, b = b, a
        return self._add[a][b - a]

    def mul(self, a, b):
        return self._mul[a][b]

    def neg(self, a):
        return self._neg[a]

    def sub(self, a, b):
        return self.add(a, self._neg[b])

    def nonzero(self):
        return tuple(x for x in range(self.size) if x != self.zero)

    def add_full_table(self):
        return [[sorted(self.add(a, b)) for b in range(self.size)] for a in range(self.size)]

    def mul_table(self):
        return [list(row) for row in self._mul]

    def neg_table(self):
        return list(self._neg)

    def id_of(self, name):
        try:
            return self.names.index(name)
        except ValueError:
            raise InputError(f"unknown element name {name!r}") from None

    def __eq__(self, other):
        if not isinstance(other, Hyperfield):
            return NotImplemented
        return (
            self.size == other.size
            and self.zero == other.zero
            and self.one == other.one
            and self._neg == other._neg
            and self._mul == other._mul
            and self._add == other._add
        )

    def __hash__(self):
        return hash((self.size, self.zero, self.one, self._neg, self._mul, self._add))

    def __repr__(self):
        return f"Hyperfield(size={self.size}, names={list(self.names)})"


@dataclass
class AxiomReport:
    """Outcome of a layered axiom check; failures carry witness tuples."""

    level_passed: str
    failures: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def passed(self):
        return not self.failures

    def first_failure(self):
        return self.failures[0] if self.failures else None


def check_hyperfield(F: Hyperfield) -> AxiomReport:
    """Run the full axiom ladder, stopping at the first failed level.

    Levels, in order: hypermonoid (neutral element, commutativity,
    set-valued associativity), hypergroup (0 in a-a, reversibility),
    hyperring (multiplicative monoid, distributivity, absorbing zero,
    0 != 1), hyperfield (nonzero multiplicative inverses).  All failures
    within the failing level are reported.
    """
    carrier = range(F.size)
    z = F.zero

    failures = []
    for a in carrier:
        if F.add(a, z) != frozenset([a]):
            failures.append(("hypermonoid.i", (a, sorted(F.add(a, z)))))
    for a in carrier:
        for b in range(a, F.size):
            if F.add(a, b) != F.add(b, a):
                failures.append(("hypermonoid.ii", (a, b)))
    for a in carrier:
        for b in carrier:
            for c in carrier:
                left = frozenset().union(*(F.add(a, x) for x in F.add(b, c)))
                right = frozenset().union(*(F.add(y, c) for y in F.add(a, b)))
                if left != right:
                    failures.append(("hypermonoid.iii", (a, b, c, sorted(left), sorted(right))))
    if failures:
        return AxiomReport("none", failures)

    for a in carrier:
        if z not in F.add(a, F.neg(a)):
            failures.append(("hypergroup.i", (a,)))
    for a in carrier:
        for b in carrier:
            for c in carrier:
                if a in F.add(b, c) and c not in F.add(a, F.neg(b)):
                    failures.append(("hypergroup.ii", (a, b, c)))
    if failures:
        return AxiomReport("hypermonoid", failures)

    for a in carrier:
        for b in carrier:
            if F.mul(a, b) != F.mul(b, a):
                failures.append(("mul.commutative", (a, b)))
        if F.mul(a, F.one) != a:
            failures.append(("mul.identity", (a,)))
        for b in carrier:
            for c in carrier:
                if F.mul(a, F.mul(b, c)) != F.mul(F.mul(a, b), c):
                    failures.append(("mul.associative", (a, b, c)))
    for a in carrier:
        if F.mul(z, a) != z:
            failures.append(("hyperring.i", (a,)))
    for a in carrier:
        for b in carrier:
            for c in carrier:
                left = frozenset(F.mul(a, x) for x in F.add(b, c))
                right = F.add(F.mul(a, b), F.mul(a, c))
                if left != right:
                    failures.append(("hyperring.ii", (a, b, c, sorted(left), sorted(right))))
    if F.zero == F.one:
        failures.append(("hyperring.iii", ()))
    if failures:
        return AxiomReport("hypergroup", failures)

    for a in carrier:
        if a == z:
            continue
        if not any(F.mul(a, b) == F.one for b in carrier):
            failures.append(("hyperfield.inverses", (a,)))
    if failures:
        return AxiomReport("hyperring", failures)
    return AxiomReport("hyperfield", [])


def from_field(k: FiniteField) -> Hyperfield:
    """The hyperfield with singleton addition a + b = {a+b}."""
    size = k.q
    add = [[frozenset([k.add(a, b)]) for b in range(size)] for a in range(size)]
    mul = [[k.mul(a, b) for b in range(size)] for a in range(size)]
    neg = [k.neg(a) for a in range(size)]
    names = [k.element_name(a) for a in range(size)]
    return Hyperfield(zero=0, one=1, neg=neg, mul=mul, add=add, names=names)


def _validate_subgroup(F, T):
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
        if not any(F.mul(s, t) == F.one for t in T):
            raise ValidationError(f"{s} has no inverse inside T", witness=(s,))
    return T


def _quotient_classes(F, relation_holds):
    """Partition the carrier by an equivalence relation on ids."""
    class_of = [None] * F.size
    classes = []
    for x in range(F.size):
        if class_of[x] is not None:
            continue
        members = [x] + [y for y in range(x + 1, F.size) if relation_holds(x, y)]
        idx = len(classes)
        for y in members:
            class_of[y] = idx
        classes.append(tuple(members))
    return classes, class_of


def _quotient_hyperfield(F, classes, class_of):
    m = len(classes)
    reps = [c[0] for c in classes]
    zero = class_of[F.zero]
    one = class_of[F.one]
    neg = [class_of[F.neg(r)] for r in reps]
    mul = [[class_of[F.mul(ra, rb)] for rb in reps] for ra in reps]
    add = []
    for ca in classes:
        row = []
        for cb in classes:
            image = set()
            for a in ca:
                for b in cb:
                    image |= F.add(a, b)
            row.append(frozenset(class_of[y] for y in image))
        add.append(row)
    names = [F.names[min(c)] for c in classes]
    return Hyperfield(zero=zero, one=one, neg=neg, mul=mul, add=add, names=names)


def quotient_by_subgroup(F: Hyperfield, T) -> Hyperfield:
    """Quotient hyperfield of F modulo a subgroup T of its nonzero elements.

    Classes are x ~ y iff xs = yt for some s, t in T; membership in the
    induced addition is inherited elementwise from the class members.
    """
    T = _validate_subgroup(F, T)

    def related(x, y):
        return any(F.mul(x, s) == F.mul(y, t) for s in T for t in T)

    classes, class_of = _quotient_classes(F, related)
    return _quotient_hyperfield(F, classes, class_of)


def prime_hyperfield(F: Hyperfield) -> Hyperfield:
    """Replace addition by the three-case prime addition.

    Sums with 0 are unchanged; for nonzero a != -b the cell gains {a, b};
    for a = -b != 0 the cell becomes the whole carrier.
    """
    report = check_hyperfield(F)
    if not report.passed:
        raise ValidationError(
            f"prime addition needs a hyperfield; first failure {report.first_failure()}"
        )
    full = frozenset(range(F.size))
    add = []
    for a in range(F.size):
        row = []
        for b in range(F.size):
            if a == F.zero or b == F.zero:
                row.append(F.add(a, b))
            elif a == F.neg(b):
                row.append(full)
            else:
                row.append(F.add(a, b) | {a, b})
        add.append(row)
    return Hyperfield(
        zero=F.zero, one=F.one, neg=F.neg_table(), mul=F.mul_table(), add=add, names=F.names
    )


def quadratic_hyperfield(k: FiniteField) -> Hyperfield:
    """Square-class quotient of k with the prime addition (uniform in char)."""
    F = from_field(k)
    squares = {k.mul(a, a) for a in k.nonzero()}
    return prime_hyperfield(quotient_by_subgroup(F, squares))


def euclidean_hyperfield() -> Hyperfield:
    """The 3-element hyperfield {0, 1, -1} of a field with two square classes.

    1 + 1 = {1}, -1 + -1 = {-1}, and 1 + (-1) is the whole carrier.
    """
    full = frozenset({0, 1, 2})
    add = [
        [frozenset({0}), frozenset({1}), frozenset({2})],
        [frozenset({1}), frozenset({1}), full],
        [frozenset({2}), full, frozenset({2})],
    ]
    mul = [[0, 0, 0], [0, 1, 2], [0, 2, 1]]
    return Hyperfield(zero=0, one=1, neg=(0, 2, 1), mul=mul, add=add, names=("0", "1", "-1"))


def _mul_order(F, a):
    x, k = a, 1
    while x != F.one:
        x = F.mul(x, a)
        k += 1
        if k > F.size:
            return None  # not a unit; profiles still comparable
    return k


def _profile(F, a):
    row_sizes = tuple(sorted(len(F.add(a, b)) for b in range(F.size)))
    return (
        a == F.zero,
        a == F.one,
        F.neg(a) == a,
        _mul_order(F, a) if a != F.zero else 0,
        len(F.add(a, a)),
        a in F.add(a, a),
        row_sizes,
    )


def hyperfield_isomorphic(F1: Hyperfield, F2: Hyperfield):
    """A bijection preserving 0, 1, neg, mul and hyperaddition, or None.

    Backtracking with 0 -> 0, 1 -> 1 fixed and candidate images restricted
    to elements with the same invariant profile.
    """
    if F1.size > MAX_ISO_SEARCH or F2.size > MAX_ISO_SEARCH:
        raise SizeGuardError(f"isomorphism search capped at carrier {MAX_ISO_SEARCH}")
    for F in (F1, F2):
        rep = check_hyperfield(F)
        if not rep.passed:
            raise ValidationError(f"input is not a hyperfield: {rep.first_failure()}")
    if F1.size != F2.size:
        return None
    prof1 = {a: _profile(F1, a) for a in range(F1.size)}
    prof2 = {a: _profile(F2, a) for a in range(F2.size)}
    if sorted(prof1.values()) != sorted(prof2.values()):
        return None

    domain = [a for a in range(F1.size) if a not in (F1.zero, F1.one)]
    mapping = {F1.zero: F2.zero, F1.one: F2.one}
    if prof1[F1.zero] != prof2[F2.zero] or prof1[F1.one] != prof2[F2.one]:
        return None

    def consistent(a, fa):
        for b, fb in mapping.items():
            if F1.mul(a, b) in mapping and mapping[F1.mul(a, b)] != F2.mul(fa, fb):
                return False
        if F1.neg(a) in mapping and mapping[F1.neg(a)] != F2.neg(fa):
            return False
        return True

    def full_check():
        for a in range(F1.size):
            fa = mapping[a]
            if mapping[F1.neg(a)] != F2.neg(fa):
                return False
            for b in range(F1.size):
                fb = mapping[b]
                if mapping[F1.mul(a, b)] != F2.mul(fa, fb):
                    return False
                if frozenset(mapping[x] for x in F1.add(a, b)) != F2.add(fa, fb):
                    return False
        return True

    def backtrack(i):
        if i == len(domain):
            return full_check()
        a = domain[i]
        for fa in range(F2.size):
            if fa in mapping.values():
                continue
            if prof2[fa] != prof1[a]:
                continue
            if not consistent(a, fa):
                continue
            mapping[a] = fa
            if backtrack(i + 1):
                return True
            del mapping[a]
        return False

    if backtrack(0):
        return dict(mapping)
    return None
