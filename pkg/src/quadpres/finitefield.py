"""Arithmetic in small finite fields GF(p^n) and their square classes.

Elements are ids 0..p^n-1 encoding coefficient vectors in base p (the id's
i-th base-p digit is the coefficient of x^i).  Construction materializes
total add/mul tables; everything downstream is table lookups.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError, SizeGuardError, ValidationError

MAX_FIELD = 4096

# Fixed moduli for the supported tiny extensions keep element encodings
# reproducible across runs (coefficients constant-term first, monic).
DEFAULT_MODULI = {
    (2, 2): (1, 1, 1),          # x^2 + x + 1
    (2, 3): (1, 1, 0, 1),       # x^3 + x + 1
    (3, 2): (1, 0, 1),          # x^2 + 1
    (2, 4): (1, 1, 0, 0, 1),    # x^4 + x + 1
    (5, 2): (2, 0, 1),          # x^2 + 2
    (3, 3): (1, 2, 0, 1),       # x^3 + 2x + 1
    (7, 2): (1, 0, 1),          # x^2 + 1
    (3, 4): (2, 1, 0, 0, 1),    # x^4 + x + 2
    (11, 2): (1, 0, 1),         # x^2 + 1
    (13, 2): (2, 0, 1),         # x^2 + 2
}


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mod(a, m, p):
    a = _trim([x % p for x in a])
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        k = len(a) - 1 - dm
        f = a[-1]  # m is monic
        for i, c in enumerate(m):
            a[i + k] = (a[i + k] - f * c) % p
        a = _trim(a)
    return a


def _poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _monic_polys(p, d):
    coeffs = [0] * d + [1]
    while True:
        yield list(coeffs)
        i = 0
        while i < d:
            coeffs[i] += 1
            if coeffs[i] < p:
                break
            coeffs[i] = 0
            i += 1
        else:
            return


def poly_is_irreducible(modulus, p):
    """Exhaustive trial division by all monic polys of degree <= deg/2."""
    m = _trim([c % p for c in modulus])
    n = len(m) - 1
    if n < 1:
        return False
    for d in range(1, n // 2 + 1):
        for f in _monic_polys(p, d):
            if not _poly_mod(list(m), f, p):
                return False
    return True


class FiniteField:
    """GF(p^n) as total operation tables on ids 0..p^n-1."""

    def __init__(self, p, n, modulus=None):
        if not _is_prime(p):
            raise InputError(f"characteristic {p} is not prime")
        if n < 1:
            raise InputError(f"extension degree must be >= 1, got {n}")
        q = p**n
        if q > MAX_FIELD:
            raise SizeGuardError(f"field size {q} exceeds cap {MAX_FIELD}")
        if n == 1:
            modulus = (0, 1) if modulus is None else tuple(c % p for c in modulus)
        elif modulus is None:
            try:
                modulus = DEFAULT_MODULI[(p, n)]
            except KeyError:
                raise InputError(
                    f"no built-in modulus for GF({p}^{n}); supply one explicitly"
                ) from None
        else:
            modulus = tuple(c % p for c in modulus)
        if len(_trim(modulus)) != n + 1 or _trim(modulus)[-1] != 1:
            raise InputError(f"modulus must be monic of degree {n}")
        if n > 1 and not poly_is_irreducible(modulus, p):
            raise ValidationError(f"modulus {list(modulus)} is reducible over GF({p})")
        self.p = p
        self.n = n
        self.q = q
        self.modulus = tuple(_trim(modulus)) if n > 1 else tuple(modulus[: n + 1])

        digits = [self._decode(a) for a in range(q)]
        self._add = [
            [self._encode([(x + y) % p for x, y in zip(digits[a], digits[b])]) for b in range(q)]
            for a in range(q)
        ]
        mred = list(self.modulus)
        self._mul = []
        for a in range(q):
            pa = _trim(digits[a])
            row = []
            for b in range(q):
                prod = _poly_mod(_poly_mul(pa, _trim(digits[b]), p), mred, p) if n > 1 else [
                    digits[a][0] * digits[b][0] % p
                ]
                row.append(self._encode(prod))
            self._mul.append(row)
        self._neg = [self._encode([(-x) % p for x in digits[a]]) for a in range(q)]
        self._inv = [None] * q
        for a in range(1, q):
            if self._inv[a] is None:
                for b in range(1, q):
                    if self._mul[a][b] == 1:
                        self._inv[a] = b
                        self._inv[b] = a
                        break
        if any(self._inv[a] is None for a in range(1, q)):
            raise ValidationError("some nonzero element has no inverse; modulus not irreducible?")

    def _decode(self, a):
        out = []
        for _ in range(self.n):
            out.append(a % self.p)
            a //= self.p
        return out

    def _encode(self, digits):
        a = 0
        for c in reversed(list(digits)):
            a = a * self.p + c
        return a

    # -- arithmetic ------------------------------------------------------

    def add(self, a, b):
        return self._add[a][b]

    def sub(self, a, b):
        return self._add[a][self._neg[b]]

    def mul(self, a, b):
        return self._mul[a][b]

    def neg(self, a):
        return self._neg[a]

    def inv(self, a):
        if a == 0:
            raise InputError("0 has no multiplicative inverse")
        return self._inv[a]

    def power(self, a, k):
        out = 1
        base = a
        while k:
            if k & 1:
                out = self._mul[out][base]
            base = self._mul[base][base]
            k >>= 1
        return out

    def multiplicative_order(self, a):
        if a == 0:
            raise InputError("0 has no multiplicative order")
        x, k = a, 1
        while x != 1:
            x = self._mul[x][a]
            k += 1
        return k

    def generator(self):
        """Smallest id generating the multiplicative group."""
        for a in range(1, self.q):
            if self.multiplicative_order(a) == self.q - 1:
                return a
        raise ValidationError("no generator found; field tables are inconsistent")

    def nonzero(self):
        return range(1, self.q)

    def element_name(self, a):
        if self.n == 1:
            return str(a)
        digits = self._decode(a)
        terms = []
        for i in range(self.n - 1, -1, -1):
            c = digits[i]
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                var = "x" if i == 1 else f"x^{i}"
                terms.append(var if c == 1 else f"{c}{var}")
        return "+".join(terms) if terms else "0"

    def __repr__(self):
        return f"FiniteField(GF({self.p}^{self.n}))" if self.n > 1 else f"FiniteField(GF({self.p}))"


def ff_make(p, n=1, modulus=None) -> FiniteField:
    return FiniteField(p, n, modulus)


def parse_field_arg(text):
    """Parse a CLI field descriptor: 'p', 'p^n', or a prime-power size q."""
    text = text.strip()
    if "^" in text:
        ps, ns = text.split("^", 1)
        try:
            return int(ps), int(ns)
        except ValueError:
            raise InputError(f"cannot parse field descriptor {text!r}") from None
    try:
        q = int(text)
    except ValueError:
        raise InputError(f"cannot parse field descriptor {text!r}") from None
    if q < 2:
        raise InputError(f"field size must be >= 2, got {q}")
    for p in range(2, q + 1):
        if _is_prime(p) and q % p == 0:
            n = 0
            m = q
            while m % p == 0:
                m //= p
                n += 1
            if m != 1:
                raise InputError(f"{q} is not a prime power")
            return p, n
    raise InputError(f"{q} is not a prime power")


@dataclass(frozen=True)
class SquareClasses:
    """Partition of a field into {0} and the cosets of the nonzero squares."""

    classes: tuple
    class_of: tuple
    zero_class: int

    @property
    def nonzero_count(self):
        return len(self.classes) - 1

    def representative(self, i):
        return min(self.classes[i])


def square_classes(k: FiniteField) -> SquareClasses:
    squares = {k.mul(a, a) for a in k.nonzero()}
    classes = [frozenset([0])]
    class_of = [0] * k.q
    assigned = {0}
    for a in range(1, k.q):
        if a in assigned:
            continue
        coset = frozenset(k.mul(a, s) for s in squares)
        idx = len(classes)
        classes.append(coset)
        for x in coset:
            class_of[x] = idx
            assigned.add(x)
    return SquareClasses(classes=tuple(classes), class_of=tuple(class_of), zero_class=0)
