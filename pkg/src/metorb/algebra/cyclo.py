"""Exact arithmetic in the cyclotomic field Q(zeta_{4p}).

All character sums, Gauss sums, square roots of q and transfer constants
live here, so every identity check in the package is an equality of
vectors of rationals; no floating point is involved except in the
advisory complex rendering.

Conventions: writing Z for the class of the variable, zeta_p := Z^4 has
order p and i := Z^p satisfies i^2 = -1.  The distinguished square root
of p follows the classical Gauss sum sign, which makes sqrt_q positive
under the embedding Z -> exp(2*pi*I/(4p)).
"""

from __future__ import annotations

import cmath
from fractions import Fraction

from .fields import FieldElem


def _int_poly_divmod(a, b):
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for k in range(len(a) - len(b), -1, -1):
        assert a[k + len(b) - 1] % b[-1] == 0
        c = a[k + len(b) - 1] // b[-1]
        q[k] = c
        for j in range(len(b)):
            a[k + j] -= c * b[j]
    while a and a[-1] == 0:
        a.pop()
    return q, a


def _cyclotomic(n):
    """Coefficients of the n-th cyclotomic polynomial, low to high."""
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            phi_d = _cyclotomic(d)
            poly, rem = _int_poly_divmod(poly, phi_d)
            assert not rem
    return poly


class CycloRing:
    """Q[Z]/(Phi_{4p}(Z)) with precomputed power reductions."""

    _cache = {}

    def __new__(cls, p):
        if p in cls._cache:
            return cls._cache[p]
        self = super().__new__(cls)
        self.p = p
        self.n = 4 * p
        phi = _cyclotomic(self.n)
        self.dim = len(phi) - 1
        self.phi = phi
        # power_vec[j] = coordinates of Z^j for j in 0..4p-1
        vecs = []
        cur = [Fraction(0)] * self.dim
        cur[0] = Fraction(1)
        for _ in range(self.n):
            vecs.append(tuple(cur))
            nxt = [Fraction(0)] + cur[:-1]
            lead = cur[-1]
            if lead:
                for i in range(self.dim):
                    nxt[i] -= lead * phi[i]
            # note: shift then reduce; phi monic so Z*Z^(dim-1) reduces by -phi
            cur = nxt
        self.power_vec = vecs
        cls._cache[p] = self
        return self

    def zero(self):
        return CycloValue(self, (Fraction(0),) * self.dim)

    def one(self):
        return self.zpow(0)

    def from_rational(self, a):
        v = [Fraction(0)] * self.dim
        v[0] = Fraction(a)
        return CycloValue(self, tuple(v))

    def zpow(self, j):
        return CycloValue(self, self.power_vec[j % self.n])

    def zeta_p_pow(self, j):
        return self.zpow(4 * (j % self.p))

    def i_unit(self):
        return self.zpow(self.p)

    def sqrt_p(self):
        """The square root of p pinned by the Gauss sum sign."""
        g = self.zero()
        for x in range(self.p):
            g = g + self.zeta_p_pow((x * x) % self.p)
        if self.p % 4 == 1:
            return g
        return -(self.i_unit() * g)

    def __repr__(self):
        return "Q(zeta_%d)" % self.n


class CycloValue:
    """An element of Q(zeta_{4p}) as a rational coordinate vector."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        self.ring = ring
        self.coeffs = tuple(coeffs)

    def _coerce(self, other):
        if isinstance(other, CycloValue):
            if other.ring is not self.ring:
                raise ValueError("cyclotomic ring mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.from_rational(other)
        raise TypeError("cannot coerce %r" % (other,))

    def __add__(self, other):
        other = self._coerce(other)
        return CycloValue(self.ring, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycloValue(self.ring, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return CycloValue(self.ring, tuple(a * f for a in self.coeffs))
        other = self._coerce(other)
        dim = self.ring.dim
        conv = [Fraction(0)] * (2 * dim - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        conv[i + j] += a * b
        out = list(conv[:dim])
        pv = self.ring.power_vec
        for k in range(dim, 2 * dim - 1):
            c = conv[k]
            if c:
                vec = pv[k]
                for i in range(dim):
                    out[i] += c * vec[i]
        return CycloValue(self.ring, tuple(out))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return CycloValue(self.ring, tuple(a / f for a in self.coeffs))
        return self * self._coerce(other).inv()

    def __pow__(self, e):
        if e < 0:
            return self.inv() ** (-e)
        acc = self.ring.one()
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return any(self.coeffs)

    def is_rational(self):
        return not any(self.coeffs[1:])

    def rational(self):
        if not self.is_rational():
            raise ValueError("not a rational value: %r" % (self,))
        return self.coeffs[0]

    def conjugate(self):
        """The image under Z -> Z^-1 (complex conjugation)."""
        ring = self.ring
        acc = [Fraction(0)] * ring.dim
        for j, c in enumerate(self.coeffs):
            if c:
                vec = ring.power_vec[(-j) % ring.n]
                for i in range(ring.dim):
                    acc[i] += c * vec[i]
        return CycloValue(ring, tuple(acc))

    def inv(self):
        """Exact inverse via a linear solve against the multiplication matrix."""
        if not self:
            raise ZeroDivisionError("inverse of zero cyclotomic value")
        ring = self.ring
        dim = ring.dim
        # columns: self * Z^j
        cols = []
        zj = ring.one()
        for j in range(dim):
            cols.append((self * zj).coeffs)
            zj = zj * ring.zpow(1)
        # solve M x = e0 by Gaussian elimination over Q
        M = [[cols[j][i] for j in range(dim)] + [Fraction(1 if i == 0 else 0)]
             for i in range(dim)]
        for col in range(dim):
            piv = next(r for r in range(col, dim) if M[r][col])
            M[col], M[piv] = M[piv], M[col]
            inv = 1 / M[col][col]
            M[col] = [x * inv for x in M[col]]
            for r in range(dim):
                if r != col and M[r][col]:
                    f = M[r][col]
                    M[r] = [x - f * y for x, y in zip(M[r], M[col])]
        return CycloValue(ring, tuple(M[i][dim] for i in range(dim)))

    def to_complex(self):
        """Advisory floating point rendering (zeta_{4p} -> exp(2 pi i/4p))."""
        w = cmath.exp(2j * cmath.pi / self.ring.n)
        acc = 0j
        zj = 1 + 0j
        for c in self.coeffs:
            if c:
                acc += float(c) * zj
            zj *= w
        return acc

    def __repr__(self):
        if self.is_rational():
            return "Cyclo(%s)" % (self.coeffs[0],)
        return "Cyclo%r" % (list(map(str, self.coeffs)),)


class CharacterTable:
    """The additive character psi and related constants for one base field.

    psi(x) = zeta_p^(trace of x down to the prime field); values are cached
    per element index.  sqrt_q is p^(m//2) * sqrt_p^(m mod 2) with the
    Gauss-sign square root of p, so sqrt_q^2 = q exactly and sqrt_q is
    positive under the canonical complex embedding.
    """

    _cache = {}

    def __new__(cls, field):
        key = (field.p, field.m)
        if key in cls._cache:
            return cls._cache[key]
        self = super().__new__(cls)
        self.field = field
        self.ring = CycloRing(field.p)
        self.psi_table = []
        for i in range(field.q):
            tr = FieldElem(field, i).trace_to_base()
            self.psi_table.append(self.ring.zeta_p_pow(tr))
        sp = self.ring.sqrt_p()
        self.sqrt_q = self.ring.from_rational(field.p ** (field.m // 2))
        if field.m % 2:
            self.sqrt_q = self.sqrt_q * sp
        self.sqrt_q_inv = self.sqrt_q / field.q
        cls._cache[key] = self
        return self

    def psi(self, x):
        if isinstance(x, FieldElem):
            if x.field != self.field:
                raise ValueError("character/field mismatch")
            return self.psi_table[x.idx]
        # integer constants embed into the prime subfield
        return self.psi_table[int(x) % self.field.p]

    def psi_idx(self, idx):
        return self.psi_table[idx]

    def sqrt_q_pow(self, e):
        """sqrt(q)^e for any integer e, exact."""
        if e >= 0:
            return self.sqrt_q ** e
        return self.sqrt_q_inv ** (-e)

    def sign(self, v):
        """Embed +1/-1/0 into the value field."""
        return self.ring.from_rational(v)
