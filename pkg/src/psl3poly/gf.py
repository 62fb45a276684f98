"""Exact arithmetic in GF(p^n).

Elements are encoded as integers in [0, q) via their coefficient vector in
base p (constant term = least significant digit).  Full multiplication and
addition tables are precomputed for the desk-scale fields this library works
with, so the hot matrix loops elsewhere reduce to flat list lookups.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

_TABLE_LIMIT = 4096  # largest q for which q*q lookup tables are built
_SIZE_LIMIT = 10 ** 6  # resource cap on q = p^n


class FieldError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


# -- dense polynomial helpers over Z_p (coefficient lists, constant first) --

def _poly_trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mulmod(a, b, mod, p):
    prod = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    return _poly_rem(prod, mod, p)


def _poly_rem(a, mod, p):
    a = list(a)
    dm = len(mod) - 1
    while len(a) > dm:
        lead = a[-1]
        if lead:
            shift = len(a) - 1 - dm
            for i, mi in enumerate(mod):
                a[shift + i] = (a[shift + i] - lead * mi) % p
        a.pop()
    return _poly_trim(a)


def _poly_divisible(a, b, p):
    return not _poly_rem(a, b, p)


def _irreducible(mod, p):
    """Trial division by every monic polynomial of degree 1..deg/2."""
    deg = len(mod) - 1
    for d in range(1, deg // 2 + 1):
        for idx in range(p ** d):
            cand = [(idx // p ** i) % p for i in range(d)] + [1]
            if _poly_divisible(mod, cand, p):
                return False
    return True


class FieldSpec:
    """A concrete GF(p^n) with a fixed irreducible modulus.

    Use :func:`make_field`; the constructor does not validate irreducibility
    beyond what make_field guarantees.
    """

    def __init__(self, p: int, n: int, modulus: tuple[int, ...]):
        self.p = p
        self.n = n
        self.q = p ** n
        self.modulus = modulus
        self._build_tables()

    def _build_tables(self):
        p, n, q = self.p, self.n, self.q
        if q > _TABLE_LIMIT:
            raise FieldError(f"field of order {q} exceeds table limit {_TABLE_LIMIT}")
        if n == 1:
            self.add_t = [(a + b) % p for a in range(q) for b in range(q)]
            self.mul_t = [(a * b) % p for a in range(q) for b in range(q)]
        else:
            coeffs = [self._decode(v) for v in range(q)]
            mod = list(self.modulus)
            add_t = []
            mul_t = []
            for a in range(q):
                ca = coeffs[a]
                for b in range(q):
                    cb = coeffs[b]
                    add_t.append(self._encode([(x + y) % p for x, y in zip(ca, cb)]))
                    prod = _poly_mulmod(_poly_trim(list(ca)), _poly_trim(list(cb)), mod, p)
                    mul_t.append(self._encode(prod + [0] * (n - len(prod))))
            self.add_t = add_t
            self.mul_t = mul_t
        self.neg_t = [self._encode([(-c) % p for c in self._decode(a)]) for a in range(q)]
        inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if self.mul_t[a * q + b] == 1:
                    inv[a] = b
                    break
        self.inv_t = inv

    # raw integer-encoded arithmetic -------------------------------------

    def add(self, a, b):
        return self.add_t[a * self.q + b]

    def sub(self, a, b):
        return self.add_t[a * self.q + self.neg_t[b]]

    def neg(self, a):
        return self.neg_t[a]

    def mul(self, a, b):
        return self.mul_t[a * self.q + b]

    def inv(self, a):
        if a == 0:
            raise FieldError("inversion of zero")
        return self.inv_t[a]

    def pow(self, a, e):
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise FieldError("inversion of zero")
            return 0
        e %= self.q - 1
        r = 1
        b = a
        while e:
            if e & 1:
                r = self.mul(r, b)
            b = self.mul(b, b)
            e >>= 1
        return r

    def add_index(self, a, b):
        return self.add_t[a * self.q + b]

    def _decode(self, v):
        p = self.p
        return tuple((v // p ** i) % p for i in range(self.n))

    def _encode(self, coeffs):
        return sum(c * self.p ** i for i, c in enumerate(coeffs))

    # element construction ------------------------------------------------

    def element(self, value) -> FieldElement:
        """Make an element from an int (reduced mod p when n=1) or coeff list."""
        if isinstance(value, FieldElement):
            if value.spec is not self:
                raise FieldError("field spec mismatch")
            return value
        if isinstance(value, int):
            # ints always mean prime-subfield constants
            return FieldElement(self, value % self.p)
        coeffs = [c % self.p for c in value]
        if len(coeffs) > self.n:
            raise FieldError("coefficient list longer than field degree")
        coeffs += [0] * (self.n - len(coeffs))
        return FieldElement(self, self._encode(coeffs))

    def zero(self):
        return FieldElement(self, 0)

    def one(self):
        return FieldElement(self, 1)

    def elements(self):
        return [FieldElement(self, v) for v in range(self.q)]

    def __eq__(self, other):
        return (isinstance(other, FieldSpec)
                and (self.p, self.n, self.modulus) == (other.p, other.n, other.modulus))

    def __hash__(self):
        return hash((self.p, self.n, self.modulus))

    def __repr__(self):
        return f"FieldSpec(p={self.p}, n={self.n}, modulus={list(self.modulus)})"

    def to_dict(self):
        return {"p": self.p, "n": self.n, "modulus": list(self.modulus)}


@dataclass(frozen=True)
class FieldElement:
    spec: FieldSpec
    val: int

    def _check(self, other):
        if self.spec != other.spec:
            raise FieldError("field spec mismatch")

    def __add__(self, other):
        self._check(other)
        return FieldElement(self.spec, self.spec.add(self.val, other.val))

    def __sub__(self, other):
        self._check(other)
        return FieldElement(self.spec, self.spec.sub(self.val, other.val))

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg(self.val))

    def __mul__(self, other):
        self._check(other)
        return FieldElement(self.spec, self.spec.mul(self.val, other.val))

    def inv(self):
        return FieldElement(self.spec, self.spec.inv(self.val))

    def __pow__(self, e: int):
        return FieldElement(self.spec, self.spec.pow(self.val, e))

    def __bool__(self):
        return self.val != 0

    def coeffs(self):
        return self.spec._decode(self.val)

    def order(self) -> int:
        """Multiplicative order; divides q-1."""
        if self.val == 0:
            raise FieldError("zero has no multiplicative order")
        m = 1
        acc = self.val
        while acc != 1:
            acc = self.spec.mul(acc, self.val)
            m += 1
        return m

    def is_cube(self) -> bool:
        if self.val == 0:
            raise FieldError("cube predicate undefined at zero")
        g = 3 if (self.spec.q - 1) % 3 == 0 else 1
        return self.spec.pow(self.val, (self.spec.q - 1) // g) == 1

    def frobenius(self, k: int = 1) -> FieldElement:
        return FieldElement(self.spec, self.spec.pow(self.val, self.spec.p ** (k % self.spec.n)))

    def serialize(self):
        if self.spec.n == 1:
            return self.val
        return list(self.coeffs())

    def __repr__(self):
        if self.spec.n == 1:
            return str(self.val)
        return f"GF{self.spec.q}{list(self.coeffs())}"


@functools.lru_cache(maxsize=None)
def make_field(p: int, n: int = 1) -> FieldSpec:
    """GF(p^n) with the deterministic smallest irreducible modulus.

    Monic irreducibles of degree n are ranked by their integer encoding
    sum(c_i * p^i); the least one wins.  For n=1 the modulus is the
    placeholder X - 0 and arithmetic is plain mod p.
    """
    if not _is_prime(p):
        raise FieldError(f"{p} is not prime")
    if n < 1:
        raise FieldError("degree must be >= 1")
    if p ** n > _SIZE_LIMIT:
        raise FieldError(f"field order {p ** n} exceeds resource cap {_SIZE_LIMIT}")
    if n == 1:
        return FieldSpec(p, 1, (0, 1))
    for idx in range(p ** n):
        coeffs = tuple((idx // p ** i) % p for i in range(n)) + (1,)
        if _irreducible(list(coeffs), p):
            return FieldSpec(p, n, coeffs)
    raise FieldError("no irreducible polynomial found")  # unreachable


def primitive_element(spec: FieldSpec) -> FieldElement:
    """The encoding-smallest element of multiplicative order q-1."""
    if spec.q < 3:
        raise FieldError("q must be at least 3")
    for v in range(1, spec.q):
        e = FieldElement(spec, v)
        if e.order() == spec.q - 1:
            return e
    raise FieldError("no primitive element found")  # unreachable


def primitive_cube_root(spec: FieldSpec) -> FieldElement | None:
    """The encoding-smallest element of order exactly 3, or None if 3 | q-1 fails."""
    if (spec.q - 1) % 3 != 0:
        return None
    for v in range(2, spec.q):
        e = FieldElement(spec, v)
        if e.order() == 3:
            return e
    return None
