"""Elements of PGL(3,q) as canonical 3x3 matrices modulo scalars.

A ProjMatrix stores its nine entries as raw integer-encoded field values in a
row-major tuple, scaled so the first nonzero entry equals 1.  Equality and
hashing are on that canonical tuple, so hash-set group enumeration works
directly on matrices.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gf import FieldElement, FieldSpec, FieldError


class MatrixError(ValueError):
    pass


def _raw(spec, entries):
    out = []
    for e in entries:
        if isinstance(e, FieldElement):
            if e.spec != spec:
                raise FieldError("field spec mismatch")
            out.append(e.val)
        else:
            out.append(spec.element(e).val)
    return tuple(out)


def _det(spec, m):
    mul, q = spec.mul_t, spec.q
    a, b, c, d, e, f, g, h, i = m
    t1 = mul[a * q + spec.sub(mul[e * q + i], mul[f * q + h])]
    t2 = mul[b * q + spec.sub(mul[d * q + i], mul[f * q + g])]
    t3 = mul[c * q + spec.sub(mul[d * q + h], mul[e * q + g])]
    return spec.add(spec.sub(t1, t2), t3)


def _canon(spec, m):
    for v in m:
        if v:
            if v == 1:
                return m
            s = spec.inv_t[v]
            mul, q = spec.mul_t, spec.q
            return tuple(mul[s * q + x] for x in m)
    raise MatrixError("zero matrix")


def _mmul(spec, a, b):
    mul, q = spec.mul_t, spec.q
    add = spec.add
    a0, a1, a2, a3, a4, a5, a6, a7, a8 = a
    b0, b1, b2, b3, b4, b5, b6, b7, b8 = b
    return _canon(spec, (
        add(add(mul[a0 * q + b0], mul[a1 * q + b3]), mul[a2 * q + b6]),
        add(add(mul[a0 * q + b1], mul[a1 * q + b4]), mul[a2 * q + b7]),
        add(add(mul[a0 * q + b2], mul[a1 * q + b5]), mul[a2 * q + b8]),
        add(add(mul[a3 * q + b0], mul[a4 * q + b3]), mul[a5 * q + b6]),
        add(add(mul[a3 * q + b1], mul[a4 * q + b4]), mul[a5 * q + b7]),
        add(add(mul[a3 * q + b2], mul[a4 * q + b5]), mul[a5 * q + b8]),
        add(add(mul[a6 * q + b0], mul[a7 * q + b3]), mul[a8 * q + b6]),
        add(add(mul[a6 * q + b1], mul[a7 * q + b4]), mul[a8 * q + b7]),
        add(add(mul[a6 * q + b2], mul[a7 * q + b5]), mul[a8 * q + b8]),
    ))


def _adjugate(spec, m):
    mul, q = spec.mul_t, spec.q
    sub = spec.sub
    a, b, c, d, e, f, g, h, i = m
    return (
        sub(mul[e * q + i], mul[f * q + h]),
        sub(mul[c * q + h], mul[b * q + i]),
        sub(mul[b * q + f], mul[c * q + e]),
        sub(mul[f * q + g], mul[d * q + i]),
        sub(mul[a * q + i], mul[c * q + g]),
        sub(mul[c * q + d], mul[a * q + f]),
        sub(mul[d * q + h], mul[e * q + g]),
        sub(mul[b * q + g], mul[a * q + h]),
        sub(mul[a * q + e], mul[b * q + d]),
    )


def _normalize_triple(spec, v):
    for x in v:
        if x:
            if x == 1:
                return tuple(v)
            s = spec.inv_t[x]
            mul, q = spec.mul_t, spec.q
            return tuple(mul[s * q + y] for y in v)
    raise MatrixError("zero homogeneous triple")


@dataclass(frozen=True)
class ProjPoint:
    spec: FieldSpec
    coords: tuple[int, int, int]  # normalized, first nonzero = 1

    def serialize(self):
        return [FieldElement(self.spec, c).serialize() for c in self.coords]


@dataclass(frozen=True)
class ProjLine:
    spec: FieldSpec
    coords: tuple[int, int, int]

    def serialize(self):
        return [FieldElement(self.spec, c).serialize() for c in self.coords]


def point(spec, coords) -> ProjPoint:
    return ProjPoint(spec, _normalize_triple(spec, _raw(spec, coords)))


def line(spec, coords) -> ProjLine:
    return ProjLine(spec, _normalize_triple(spec, _raw(spec, coords)))


def incident(p: ProjPoint, l: ProjLine) -> bool:
    spec = p.spec
    mul, q = spec.mul_t, spec.q
    s = 0
    for a, b in zip(p.coords, l.coords):
        s = spec.add(s, mul[a * q + b])
    return s == 0


def all_points(spec) -> list[ProjPoint]:
    """The q^2+q+1 points of PG(2,q) in a fixed deterministic order."""
    pts = []
    q = spec.q
    for z in range(q):
        pts.append(ProjPoint(spec, (0, 1, z)))
    pts.append(ProjPoint(spec, (0, 0, 1)))
    for y in range(q):
        for z in range(q):
            pts.append(ProjPoint(spec, (1, y, z)))
    return pts


class ProjMatrix:
    """Canonical representative of an invertible 3x3 matrix modulo scalars."""

    __slots__ = ("spec", "vals")

    def __init__(self, spec: FieldSpec, vals: tuple[int, ...], _canonical=False):
        if not _canonical:
            vals = _canon(spec, vals)
            if _det(spec, vals) == 0:
                raise MatrixError("singular matrix")
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "vals", vals)

    def __setattr__(self, *a):
        raise AttributeError("ProjMatrix is immutable")

    @classmethod
    def from_entries(cls, spec, entries) -> ProjMatrix:
        flat = []
        for row in entries:
            flat.extend(row)
        return cls(spec, _raw(spec, flat))

    @classmethod
    def identity(cls, spec) -> ProjMatrix:
        return cls(spec, (1, 0, 0, 0, 1, 0, 0, 0, 1), _canonical=True)

    # -- group operations -------------------------------------------------

    def __mul__(self, other: ProjMatrix) -> ProjMatrix:
        if self.spec != other.spec:
            raise FieldError("field spec mismatch")
        return ProjMatrix(self.spec, _mmul(self.spec, self.vals, other.vals), _canonical=True)

    def inverse(self) -> ProjMatrix:
        return ProjMatrix(self.spec, _canon(self.spec, _adjugate(self.spec, self.vals)),
                          _canonical=True)

    def det(self) -> FieldElement:
        """Determinant of the canonical representative."""
        return FieldElement(self.spec, _det(self.spec, self.vals))

    def transpose(self) -> ProjMatrix:
        v = self.vals
        return ProjMatrix(self.spec,
                          _canon(self.spec, (v[0], v[3], v[6], v[1], v[4], v[7], v[2], v[5], v[8])),
                          _canonical=True)

    def dual(self) -> ProjMatrix:
        """Inverse-transpose: the outer automorphism core exchanging points/lines."""
        return self.inverse().transpose()

    def frobenius_map(self, k: int = 1) -> ProjMatrix:
        spec = self.spec
        e = spec.p ** (k % spec.n)
        return ProjMatrix(spec, _canon(spec, tuple(spec.pow(v, e) for v in self.vals)),
                          _canonical=True)

    def conjugate_by(self, g: ProjMatrix) -> ProjMatrix:
        return g * self * g.inverse()

    def in_psl(self) -> bool:
        """True iff some scalar multiple has determinant 1, i.e. det is a cube."""
        return self.det().is_cube()

    def is_identity(self) -> bool:
        return self.vals == (1, 0, 0, 0, 1, 0, 0, 0, 1)

    def order(self) -> int:
        spec = self.spec
        cap = spec.q * spec.q + spec.q + 1
        acc = self.vals
        ident = (1, 0, 0, 0, 1, 0, 0, 0, 1)
        for m in range(1, cap + 1):
            if acc == ident:
                return m
            acc = _mmul(spec, acc, self.vals)
        raise MatrixError("element order exceeds q^2+q+1; arithmetic bug")

    # -- plane action -----------------------------------------------------

    def apply_point(self, pt: ProjPoint) -> ProjPoint:
        spec = self.spec
        mul, q = spec.mul_t, spec.q
        add = spec.add
        v = self.vals
        x, y, z = pt.coords
        img = (
            add(add(mul[v[0] * q + x], mul[v[1] * q + y]), mul[v[2] * q + z]),
            add(add(mul[v[3] * q + x], mul[v[4] * q + y]), mul[v[5] * q + z]),
            add(add(mul[v[6] * q + x], mul[v[7] * q + y]), mul[v[8] * q + z]),
        )
        return ProjPoint(spec, _normalize_triple(spec, img))

    def apply_line(self, ln: ProjLine) -> ProjLine:
        spec = self.spec
        w = self.dual().vals  # lines transform by the inverse-transpose
        mul, q = spec.mul_t, spec.q
        add = spec.add
        x, y, z = ln.coords
        img = (
            add(add(mul[w[0] * q + x], mul[w[1] * q + y]), mul[w[2] * q + z]),
            add(add(mul[w[3] * q + x], mul[w[4] * q + y]), mul[w[5] * q + z]),
            add(add(mul[w[6] * q + x], mul[w[7] * q + y]), mul[w[8] * q + z]),
        )
        return ProjLine(spec, _normalize_triple(spec, img))

    def fixed_points(self) -> set[ProjPoint]:
        """Union of eigenspaces over GF(q)*, found by exhaustive eigenvalue scan."""
        spec = self.spec
        out = set()
        for lam in range(1, spec.q):
            for v in _eigenspace_points(spec, self.vals, lam):
                out.add(ProjPoint(spec, v))
        return out

    def fixed_lines(self) -> set[ProjLine]:
        spec = self.spec
        w = self.dual().vals
        out = set()
        for lam in range(1, spec.q):
            for v in _eigenspace_points(spec, w, lam):
                out.add(ProjLine(spec, v))
        return out

    def center_axis(self) -> tuple[ProjPoint, ProjLine]:
        """Center and axis of an involution (homology for q odd, elation for q even)."""
        if self.order() != 2:
            raise MatrixError("center_axis requires an involution")
        spec = self.spec
        sq = _mmul_raw(spec, self.vals, self.vals)
        c = next(v for v in sq if v)  # self^2 = c * I
        s = _sqrt(spec, spec.inv(c))
        if s is None:
            raise MatrixError("involution with non-square scalar square; arithmetic bug")
        mul, q = spec.mul_t, spec.q
        m = tuple(mul[s * q + v] for v in self.vals)  # m^2 = I exactly
        if spec.p == 2:
            axis_basis = _eigenspace(spec, m, 1)
            diff = [spec.sub(m[i], (1, 0, 0, 0, 1, 0, 0, 0, 1)[i]) for i in range(9)]
            col = next(c for c in ((diff[0], diff[3], diff[6]), (diff[1], diff[4], diff[7]),
                                   (diff[2], diff[5], diff[8])) if any(c))
            center = ProjPoint(spec, _normalize_triple(spec, col))
            axis = ProjLine(spec, _normalize_triple(spec, _cross(spec, *axis_basis)))
            return center, axis
        for lam in (1, spec.neg(1)):
            basis = _eigenspace(spec, m, lam)
            if len(basis) == 1:
                center = ProjPoint(spec, _normalize_triple(spec, basis[0]))
            elif len(basis) == 2:
                axis = ProjLine(spec, _normalize_triple(spec, _cross(spec, *basis)))
        return center, axis

    # -- plumbing ---------------------------------------------------------

    def entries(self):
        v = self.vals
        return [[FieldElement(self.spec, v[3 * r + c]) for c in range(3)] for r in range(3)]

    def serialize(self):
        return [FieldElement(self.spec, v).serialize() for v in self.vals]

    def __eq__(self, other):
        return (isinstance(other, ProjMatrix) and self.spec == other.spec
                and self.vals == other.vals)

    def __hash__(self):
        return hash(self.vals)

    def __repr__(self):
        v = self.vals
        rows = ", ".join(str([v[3 * r], v[3 * r + 1], v[3 * r + 2]]) for r in range(3))
        return f"ProjMatrix({rows})"


def _mmul_raw(spec, a, b):
    """Matrix product without canonicalization."""
    mul, q = spec.mul_t, spec.q
    add = spec.add
    out = []
    for r in range(3):
        for c in range(3):
            s = 0
            for k in range(3):
                s = add(s, mul[a[3 * r + k] * q + b[3 * k + c]])
            out.append(s)
    return tuple(out)


def _sqrt(spec, a):
    for s in range(spec.q):
        if spec.mul(s, s) == a:
            return s
    return None


def _cross(spec, u, v):
    mul, q = spec.mul_t, spec.q
    sub = spec.sub
    return (
        sub(mul[u[1] * q + v[2]], mul[u[2] * q + v[1]]),
        sub(mul[u[2] * q + v[0]], mul[u[0] * q + v[2]]),
        sub(mul[u[0] * q + v[1]], mul[u[1] * q + v[0]]),
    )


def _eigenspace(spec, m, lam):
    """Basis (list of raw triples) of the nullspace of m - lam*I."""
    rows = [
        [spec.sub(m[0], lam), m[1], m[2]],
        [m[3], spec.sub(m[4], lam), m[5]],
        [m[6], m[7], spec.sub(m[8], lam)],
    ]
    return nullspace3(spec, rows)


def _eigenspace_points(spec, m, lam):
    basis = _eigenspace(spec, m, lam)
    if not basis:
        return []
    if len(basis) == 1:
        return [_normalize_triple(spec, basis[0])]
    if len(basis) == 2:
        pts = [_normalize_triple(spec, basis[0])]
        u, v = basis
        mul, q = spec.mul_t, spec.q
        for t in range(spec.q):
            w = tuple(spec.add(mul[t * q + a], b) for a, b in zip(u, v))
            pts.append(_normalize_triple(spec, w))
        return pts
    # identity: every point
    from itertools import chain
    return [p.coords for p in all_points(spec)]


def nullspace3(spec, rows):
    """Nullspace basis of a 3x3 system over GF(q) by Gaussian elimination."""
    rows = [list(r) for r in rows]
    mul, q = spec.mul_t, spec.q
    pivots = []
    r = 0
    for col in range(3):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][col]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        s = spec.inv(rows[r][col])
        rows[r] = [mul[s * q + x] for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [spec.sub(x, mul[f * q + y]) for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(3) if c not in pivots]
    basis = []
    for fc in free:
        v = [0, 0, 0]
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = spec.neg(rows[i][fc])
        basis.append(tuple(v))
    return basis


class QuadraticForm:
    """Ternary quadratic form stored as six upper-triangular coefficients.

    Q(x,y,z) = axx*x^2 + ayy*y^2 + azz*z^2 + axy*xy + axz*xz + ayz*yz.
    Works uniformly in odd and even characteristic (no Gram symmetrization).
    """

    def __init__(self, spec, axx, ayy, azz, axy=0, axz=0, ayz=0):
        self.spec = spec
        self.c = tuple(spec.element(v).val for v in (axx, ayy, azz, axy, axz, ayz))

    @classmethod
    def from_gram(cls, spec, gram):
        """Symmetric Gram matrix input (odd characteristic convention)."""
        g = [[spec.element(x).val for x in row] for row in gram]
        two = spec.add(1, 1)
        return cls(spec, g[0][0], g[1][1], g[2][2],
                   spec.mul(two, g[0][1]) if spec.p != 2 else spec.add(g[0][1], g[1][0]),
                   spec.mul(two, g[0][2]) if spec.p != 2 else spec.add(g[0][2], g[2][0]),
                   spec.mul(two, g[1][2]) if spec.p != 2 else spec.add(g[1][2], g[2][1]))

    def evaluate(self, coords) -> int:
        spec = self.spec
        x, y, z = coords
        mul, q = spec.mul_t, spec.q
        axx, ayy, azz, axy, axz, ayz = self.c
        s = mul[axx * q + mul[x * q + x]]
        s = spec.add(s, mul[ayy * q + mul[y * q + y]])
        s = spec.add(s, mul[azz * q + mul[z * q + z]])
        s = spec.add(s, mul[axy * q + mul[x * q + y]])
        s = spec.add(s, mul[axz * q + mul[x * q + z]])
        s = spec.add(s, mul[ayz * q + mul[y * q + z]])
        return s

    def transform_by(self, m: ProjMatrix) -> "QuadraticForm":
        """The form v -> Q(M v)."""
        spec = self.spec
        v = m.vals
        cols = [(v[0], v[3], v[6]), (v[1], v[4], v[7]), (v[2], v[5], v[8])]

        def q_of(col):
            return self.evaluate(col)

        def polar(u, w):
            both = tuple(spec.add(a, b) for a, b in zip(u, w))
            return spec.sub(spec.sub(self.evaluate(both), self.evaluate(u)),
                            self.evaluate(w))

        return QuadraticForm(spec, q_of(cols[0]), q_of(cols[1]), q_of(cols[2]),
                             polar(cols[0], cols[1]), polar(cols[0], cols[2]),
                             polar(cols[1], cols[2]))

    def proportional_to(self, other: "QuadraticForm") -> bool:
        spec = self.spec
        for a, b in zip(self.c, other.c):
            if (a == 0) != (b == 0):
                return False
        pairs = [(a, b) for a, b in zip(self.c, other.c) if a]
        if not pairs:
            return False
        a0, b0 = pairs[0]
        lam = spec.mul(b0, spec.inv(a0))
        return all(spec.mul(lam, a) == b for a, b in pairs)

    def is_degenerate(self) -> bool:
        """True iff some projective point is singular for the form."""
        spec = self.spec
        for pt in all_points(spec):
            v = pt.coords
            if self.evaluate(v) != 0:
                continue
            singular = True
            for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
                both = tuple(spec.add(a, b) for a, b in zip(v, e))
                pol = spec.sub(spec.sub(self.evaluate(both), self.evaluate(v)),
                               self.evaluate(e))
                if pol != 0:
                    singular = False
                    break
            if singular:
                return True
        return False


def preserves_form(m: ProjMatrix, form: QuadraticForm) -> bool:
    """True iff Q(Mv) = lambda * Q(v) projectively."""
    if form.is_degenerate():
        raise MatrixError("degenerate quadratic form")
    return form.transform_by(m).proportional_to(form)
