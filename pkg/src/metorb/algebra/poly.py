"""Dense univariate polynomials over a small finite field.

Coefficients are stored low-to-high as a trimmed tuple of element indices
into the owning FiniteField; the zero polynomial is the empty tuple.  Raw
tuple helpers are exposed for hot loops, with a thin Poly class on top.
"""

from __future__ import annotations

from .fields import FieldElem, FiniteField


def ptrim(c):
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return tuple(c[:n])


def padd(F, a, b):
    if len(a) < len(b):
        a, b = b, a
    add = F.add_table
    out = list(a)
    for i, x in enumerate(b):
        out[i] = add[out[i]][x]
    return ptrim(out)


def pneg(F, a):
    neg = F.neg_table
    return tuple(neg[x] for x in a)


def psub(F, a, b):
    return padd(F, a, pneg(F, b))


def pmul(F, a, b):
    if not a or not b:
        return ()
    add, mul = F.add_table, F.mul_table
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            row = mul[x]
            for j, y in enumerate(b):
                if y:
                    out[i + j] = add[out[i + j]][row[y]]
    return ptrim(out)


def pscale(F, a, c):
    if c == 0:
        return ()
    row = F.mul_table[c]
    return tuple(row[x] for x in a)


def pdivmod(F, a, b):
    """Quotient and remainder of a by b (b nonzero)."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return (), a
    add, mul, neg = F.add_table, F.mul_table, F.neg_table
    inv_lead = F.inv_table[b[-1]]
    rem = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for k in range(len(a) - len(b), -1, -1):
        c = mul[rem[k + len(b) - 1]][inv_lead]
        q[k] = c
        if c:
            row = mul[c]
            for j, bj in enumerate(b):
                if bj:
                    rem[k + j] = add[rem[k + j]][neg[row[bj]]]
    return ptrim(q), ptrim(rem)


def pgcd(F, a, b):
    while b:
        a, b = b, pdivmod(F, a, b)[1]
    if a:
        a = pscale(F, a, F.inv_table[a[-1]])
    return a


def peval(F, a, x_idx):
    """Evaluate at the element with index x_idx (Horner)."""
    add, mul = F.add_table, F.mul_table
    acc = 0
    for c in reversed(a):
        acc = add[mul[acc][x_idx]][c]
    return acc


def pmonic(F, a):
    if not a:
        return ()
    return pscale(F, a, F.inv_table[a[-1]])


def ppow_x_shift(F, a, lam_idx):
    """Compose with a translation of the variable: return a(t + lam)."""
    acc = ()
    t_plus_lam = (lam_idx, 1)
    for c in reversed(a):
        acc = padd(F, pmul(F, acc, t_plus_lam), (c,))
    return acc


class Poly:
    """A polynomial in one variable over a FiniteField."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = ptrim(tuple(
            c.idx if isinstance(c, FieldElem) else int(c) % field.p
            for c in coeffs))

    @classmethod
    def from_idx(cls, field, coeffs):
        p = cls.__new__(cls)
        p.field = field
        p.coeffs = ptrim(tuple(coeffs))
        return p

    @classmethod
    def x(cls, field):
        return cls.from_idx(field, (0, 1))

    @classmethod
    def const(cls, field, c):
        if isinstance(c, FieldElem):
            return cls.from_idx(field, (c.idx,))
        return cls(field, [c])

    @classmethod
    def zero(cls, field):
        return cls.from_idx(field, ())

    @classmethod
    def one(cls, field):
        return cls.from_idx(field, (1,))

    def degree(self):
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def leading(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return FieldElem(self.field, self.coeffs[-1])

    def __add__(self, other):
        other = self._coerce(other)
        return Poly.from_idx(self.field, padd(self.field, self.coeffs, other.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return Poly.from_idx(self.field, pneg(self.field, self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        return Poly.from_idx(self.field, psub(self.field, self.coeffs, other.coeffs))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        return Poly.from_idx(self.field, pmul(self.field, self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __divmod__(self, other):
        other = self._coerce(other)
        q, r = pdivmod(self.field, self.coeffs, other.coeffs)
        return Poly.from_idx(self.field, q), Poly.from_idx(self.field, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, e):
        acc = Poly.one(self.field)
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.field != self.field:
                raise ValueError("field mismatch")
            return other
        if isinstance(other, (int, FieldElem)):
            return Poly.const(self.field, other)
        raise TypeError("cannot coerce %r" % (other,))

    def __eq__(self, other):
        if isinstance(other, (int, FieldElem)):
            other = Poly.const(self.field, other)
        return isinstance(other, Poly) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field.p, self.field.m, self.coeffs))

    def __call__(self, x):
        if isinstance(x, FieldElem) and x.field == self.field:
            return FieldElem(self.field, peval(self.field, self.coeffs, x.idx))
        if isinstance(x, int):
            return FieldElem(self.field, peval(self.field, self.coeffs, x % self.field.p))
        raise TypeError("evaluation point must live in the coefficient field")

    def eval_in(self, ext, x):
        """Evaluate at x in an extension field of the coefficient field."""
        table = ext.embedding_from(self.field)
        acc = 0
        for c in reversed(self.coeffs):
            acc = ext.add_table[ext.mul_table[acc][x.idx]][table[c]]
        return FieldElem(ext, acc)

    def map_to(self, ext):
        """The same polynomial with coefficients pushed into an extension."""
        table = ext.embedding_from(self.field)
        return Poly.from_idx(ext, tuple(table[c] for c in self.coeffs))

    def monic(self):
        return Poly.from_idx(self.field, pmonic(self.field, self.coeffs))

    def derivative(self):
        F = self.field
        out = []
        for i in range(1, len(self.coeffs)):
            c = self.coeffs[i]
            acc = 0
            for _ in range(i % F.p):
                acc = F.add_table[acc][c]
            out.append(acc)
        return Poly.from_idx(F, ptrim(out))

    def shift(self, lam):
        """Return self(t + lam); lam may live in an extension field."""
        if isinstance(lam, FieldElem) and lam.field != self.field:
            return self.map_to(lam.field).shift(lam)
        lam_idx = lam.idx if isinstance(lam, FieldElem) else lam % self.field.p
        return Poly.from_idx(self.field, ppow_x_shift(self.field, self.coeffs, lam_idx))

    def reversed_coeffs(self, degree=None):
        """Coefficients high-to-low, padded to the given degree."""
        d = self.degree() if degree is None else degree
        c = list(self.coeffs) + [0] * (d + 1 - len(self.coeffs))
        return tuple(reversed(c))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            cs = repr(FieldElem(self.field, c))
            if i == 0:
                parts.append(cs)
            elif i == 1:
                parts.append(("w" if c == 1 else cs + "*w"))
            else:
                parts.append(("w^%d" % i if c == 1 else "%s*w^%d" % (cs, i)))
        return " + ".join(parts)


def resultant(P, Q):
    """result(P, Q) = lc(P)^deg(Q) * prod Q over the roots of P, exactly.

    Computed by the Euclidean algorithm; raises on zero input.  Satisfies
    result(P, Q) = (-1)^(deg P * deg Q) * result(Q, P).
    """
    if not isinstance(P, Poly) or not isinstance(Q, Poly):
        raise TypeError("resultant needs Poly arguments")
    if P.is_zero() or Q.is_zero():
        raise ValueError("resultant of the zero polynomial")
    F = P.field
    a, b = P.coeffs, Q.coeffs
    acc = F.one()
    sign_one = F(-1)
    while True:
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            acc = acc * FieldElem(F, b[0]) ** da
            return acc
        # swap so we reduce the larger against the smaller
        if (da * db) % 2 == 1:
            acc = acc * sign_one
        a, b = b, a
        da, db = db, da
        # now reduce b mod a
        r = pdivmod(F, b, a)[1]
        if not r:
            return F.zero()
        acc = acc * FieldElem(F, a[-1]) ** (db - (len(r) - 1))
        b = r


_irr_cache = {}


def irreducibles(field, degree):
    """All monic irreducibles of the given degree over field, in lex order."""
    key = (field.p, field.m, degree)
    if key in _irr_cache:
        return _irr_cache[key]
    q = field.q
    polys = []
    smaller = []
    for d in range(1, degree):
        smaller.extend(irreducibles(field, d))
    for code in range(q ** degree):
        digits = []
        t = code
        for _ in range(degree):
            digits.append(t % q)
            t //= q
        digits.reverse()  # (c_{d-1}, ..., c_0)
        cand = Poly.from_idx(field, tuple(reversed(digits)) + (1,))
        if degree == 1:
            polys.append(cand)
            continue
        if cand.coeffs[0] == 0:
            continue
        ok = True
        for f in smaller:
            if 2 * f.degree() > degree:
                break
            if (cand % f).is_zero():
                ok = False
                break
        if ok:
            polys.append(cand)
    _irr_cache[key] = polys
    return polys


def is_irreducible(P):
    P = P.monic()
    d = P.degree()
    if d <= 0:
        return False
    if d == 1:
        return True
    for e in range(1, d // 2 + 1):
        for f in irreducibles(P.field, e):
            if (P % f).is_zero():
                return False
    return True


def factor(P):
    """Factor into monic irreducibles: returns (unit, [(irreducible, multiplicity)]).

    Trial division against the cached irreducible tables; fine at the tiny
    degrees this package works with.
    """
    if P.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    unit = P.leading()
    rem = P.monic()
    out = []
    d = 1
    while rem.degree() > 0:
        if 2 * d > rem.degree():
            out.append((rem, 1))
            break
        for f in irreducibles(P.field, d):
            mult = 0
            while True:
                q, r = divmod(rem, f)
                if r.is_zero():
                    rem = q
                    mult += 1
                else:
                    break
            if mult:
                out.append((f, mult))
            if rem.degree() < 2 * d:
                break
        d += 1
        if rem.degree() > 0 and 2 * d > rem.degree():
            out.append((rem, 1))
            break
    out.sort(key=lambda fm: (fm[0].degree(), fm[0].coeffs))
    return unit, out
