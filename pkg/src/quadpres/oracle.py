"""Classical symmetric-bilinear-form computations over small finite fields.

This is the validation oracle for the hyperfield pipeline: everything here
is computed at field level (Gram matrices, value sets, chain steps on
diagonal forms) and shares no code with the hyperfield machinery beyond the
finite-field tables and the inert WittRing/WittClass dataclasses.

Characteristic-2 convention: the oracle works with diagonal non-alternating
forms and stabilizes by <1,1> = <1,-1>, the comparable classical object for
a theory whose forms are tuples of square classes; alternating forms are out
of scope.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement, permutations, product

from .errors import InputError, SizeGuardError, ValidationError
from .finitefield import FiniteField, ff_make, parse_field_arg, square_classes
from .quadratic import Form, WittClass, WittRing

ORACLE_SIZES = (2, 3, 4, 5, 7, 9)


def _field_for(q: int) -> FiniteField:
    p, n = parse_field_arg(str(q))
    return ff_make(p, n)


def _det(k: FiniteField, A) -> int:
    n = len(A)
    total = 0
    for sigma in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if sigma[i] > sigma[j]:
                    sign = -sign
        term = 1
        for i in range(n):
            term = k.mul(term, A[i][sigma[i]])
        total = k.add(total, term if sign > 0 else k.neg(term))
    return total


def _mat_mul(k: FiniteField, A, B):
    n = len(A)
    return tuple(
        tuple(
            _dot(k, A[i], tuple(B[x][j] for x in range(n)))
            for j in range(n)
        )
        for i in range(n)
    )


def _dot(k, row, col):
    out = 0
    for a, b in zip(row, col):
        out = k.add(out, k.mul(a, b))
    return out


def _transpose(A):
    n = len(A)
    return tuple(tuple(A[j][i] for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class GramForm:
    """A symmetric Gram matrix over a small finite field."""

    field: FiniteField
    matrix: tuple

    def __post_init__(self):
        A = tuple(tuple(row) for row in self.matrix)
        object.__setattr__(self, "matrix", A)
        n = len(A)
        if any(len(row) != n for row in A):
            raise InputError("Gram matrix must be square")
        for i in range(n):
            for j in range(n):
                if A[i][j] != A[j][i]:
                    raise ValidationError(f"matrix not symmetric at ({i},{j})", witness=(i, j))

    @property
    def dim(self):
        return len(self.matrix)

    @property
    def nondegenerate(self):
        return _det(self.field, self.matrix) != 0

    @classmethod
    def diagonal(cls, k, entries):
        n = len(entries)
        return cls(k, tuple(tuple(entries[i] if i == j else 0 for j in range(n)) for i in range(n)))


def _symmetric_nondegenerate(k, n):
    idx = [(i, j) for i in range(n) for j in range(i, n)]
    out = []
    for vals in product(range(k.q), repeat=len(idx)):
        A = [[0] * n for _ in range(n)]
        for (i, j), v in zip(idx, vals):
            A[i][j] = A[j][i] = v
        A = tuple(tuple(row) for row in A)
        if _det(k, A) != 0:
            out.append(A)
    return out


def _general_linear(k, n):
    out = []
    for vals in product(range(k.q), repeat=n * n):
        P = tuple(tuple(vals[i * n + j] for j in range(n)) for i in range(n))
        if _det(k, P) != 0:
            out.append(P)
    return out


@dataclass
class CongruenceClasses:
    """Orbit partition of nondegenerate symmetric matrices under P^T A P."""

    q: int
    dim: int
    representatives: list
    orbit_index: dict

    @property
    def count(self):
        return len(self.representatives)

    def same_class(self, A, B):
        A = tuple(tuple(row) for row in A)
        B = tuple(tuple(row) for row in B)
        return self.orbit_index[A] == self.orbit_index[B]


def congruence_classes(q: int, dim: int) -> CongruenceClasses:
    """Brute-force orbit enumeration of nondegenerate symmetric matrices."""
    ok = (q <= 3 and dim <= 3) or (q <= 5 and dim <= 2) or (q <= 9 and dim <= 2)
    if not ok or dim < 1:
        raise SizeGuardError(f"congruence_classes guard exceeded for q={q}, dim={dim}")
    k = _field_for(q)
    matrices = _symmetric_nondegenerate(k, dim)
    gl = _general_linear(k, dim)
    orbit_index = {}
    reps = []
    for A in matrices:
        if A in orbit_index:
            continue
        idx = len(reps)
        orbit = set()
        for P in gl:
            B = _mat_mul(k, _mat_mul(k, _transpose(P), A), P)
            orbit.add(B)
        for B in orbit:
            orbit_index[B] = idx
        reps.append(min(orbit))
    return CongruenceClasses(q=q, dim=dim, representatives=reps, orbit_index=orbit_index)


def _squares(k):
    return {k.mul(a, a) for a in k.nonzero()}


def same_square_class(k: FiniteField, a: int, b: int) -> bool:
    if a == 0 or b == 0:
        return a == b
    return k.mul(a, k.inv(b)) in _squares(k)


def classical_isometric(q: int, phi, psi) -> bool:
    """Diagonal forms over odd q: same dimension and same discriminant class."""
    p, _ = parse_field_arg(str(q))
    if p == 2:
        raise InputError("classical_isometric needs odd q; use congruence_classes")
    k = _field_for(q)
    phi = tuple(phi)
    psi = tuple(psi)
    if any(e == 0 for e in phi + psi):
        raise InputError("diagonal entries must be nonzero")
    if len(phi) != len(psi):
        return False
    disc = lambda es: _product(k, es)
    return same_square_class(k, disc(phi), disc(psi))


def _product(k, entries):
    out = 1
    for e in entries:
        out = k.mul(out, e)
    return out


def binary_isometric_field(k: FiniteField, a, b, c, d) -> bool:
    """Value-set criterion: <a,b> ~ <c,d> iff ab = cd mod squares and
    c = a s^2 + b t^2 has a nontrivial solution."""
    if not same_square_class(k, k.mul(a, b), k.mul(c, d)):
        return False
    return represents(k, a, b, c)


def represents(k: FiniteField, a, b, c) -> bool:
    """Does the binary form <a, b> represent c (nontrivially)?"""
    for s in range(k.q):
        ssa = k.mul(k.mul(s, s), a)
        for t in range(k.q):
            if s == 0 and t == 0:
                continue
            if k.add(ssa, k.mul(k.mul(t, t), b)) == c:
                return True
    return False


class _DiagonalWitt:
    """Chain-step isometry and hyperbolic stabilization on diagonal forms,
    entirely at field level."""

    def __init__(self, k):
        self.k = k
        sq = square_classes(k)
        self.reps = tuple(sorted(min(c) for i, c in enumerate(sq.classes) if i != sq.zero_class))
        self.rep_of = {}
        for x in k.nonzero():
            for r in self.reps:
                if same_square_class(k, x, r):
                    self.rep_of[x] = r
                    break
        self.hyperbolic = tuple(sorted((1, self.rep_of[k.neg(1)])))
        self._partitions = {}

    def canon(self, entries):
        return tuple(sorted(self.rep_of[e] for e in entries))

    def _dim_partition(self, d):
        """Chain-equivalence classes of canonical diagonal forms of dim d."""
        if d in self._partitions:
            return self._partitions[d]
        states = list(combinations_with_replacement(self.reps, d))
        label = {}
        binary = {}
        for a, b, c, e in product(self.reps, repeat=4):
            binary[(a, b, c, e)] = binary_isometric_field(self.k, a, b, c, e)
        for s in states:
            if s in label:
                continue
            idx = max(label.values(), default=-1) + 1
            frontier = [s]
            label[s] = idx
            while frontier:
                cur = frontier.pop()
                for i in range(d):
                    for j in range(i + 1, d):
                        for c, e in product(self.reps, repeat=2):
                            if not binary[(cur[i], cur[j], c, e)]:
                                continue
                            nxt = list(cur)
                            nxt[i], nxt[j] = c, e
                            nxt = tuple(sorted(nxt))
                            if nxt not in label:
                                label[nxt] = idx
                                frontier.append(nxt)
        self._partitions[d] = label
        return label

    def chain_isometric(self, s, t):
        s, t = self.canon(s), self.canon(t)
        if len(s) != len(t):
            return False
        if len(s) == 1:
            return s == t
        label = self._dim_partition(len(s))
        return label[s] == label[t]

    def witt_equivalent(self, s, t, pad_extra=6):
        s, t = self.canon(s), self.canon(t)
        cap = max(len(s), len(t)) + pad_extra
        for ds in range(len(s), cap + 1, 2):
            dt = ds  # compare at equal padded dimension
            if dt < len(t) or (dt - len(t)) % 2 != 0:
                continue
            ms = (ds - len(s)) // 2
            mt = (dt - len(t)) // 2
            padded_s = tuple(sorted(s + self.hyperbolic * ms))
            padded_t = tuple(sorted(t + self.hyperbolic * mt))
            if self.chain_isometric(padded_s, padded_t):
                return True
        return False


def classical_witt_ring(q: int, dmax: int) -> WittRing:
    """Witt classes of diagonal nondegenerate forms modulo stabilization by
    <1, -1>, built from field arithmetic only."""
    if q not in ORACLE_SIZES:
        raise SizeGuardError(f"oracle fields are {ORACLE_SIZES}; got {q}")
    if not 2 <= dmax <= 4:
        raise SizeGuardError(f"oracle dmax must be 2..4, got {dmax}")
    k = _field_for(q)
    calc = _DiagonalWitt(k)
    zero_rep = calc.hyperbolic

    class_entries = [None]  # index 0: the zero class, represented by nothing
    growth = []
    for d in range(1, dmax + 1):
        new = 0
        for cand in combinations_with_replacement(calc.reps, d):
            if calc.witt_equivalent(cand, zero_rep):
                continue
            if any(
                e is not None and calc.witt_equivalent(cand, e) for e in class_entries
            ):
                continue
            class_entries.append(cand)
            new += 1
        growth.append(new)

    def index_of(entries):
        if not entries or calc.witt_equivalent(entries, zero_rep):
            return 0
        for i, e in enumerate(class_entries):
            if e is not None and calc.witt_equivalent(entries, e):
                return i
        return None

    n = len(class_entries)
    add_table = [[None] * n for _ in range(n)]
    mul_table = [[None] * n for _ in range(n)]
    escaped = False
    for i in range(n):
        for j in range(i, n):
            ei = class_entries[i] or ()
            ej = class_entries[j] or ()
            s = index_of(ei + ej)
            if s is None:
                escaped = True
            add_table[i][j] = add_table[j][i] = s
            if not ei or not ej:
                p = 0
            else:
                p = index_of(tuple(k.mul(a, b) for a in ei for b in ej))
                if p is None:
                    escaped = True
            mul_table[i][j] = mul_table[j][i] = p
    one_class = index_of((1,))
    classes = [WittClass(Form(e) if e else None) for e in class_entries]
    return WittRing(
        status="truncated" if escaped else "finite",
        classes=classes,
        add_table=add_table,
        mul_table=mul_table,
        zero_class=0,
        one_class=one_class,
        growth=growth,
    )
