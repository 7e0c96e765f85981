"""Rational functions with exact place-local valuations and residues.

A RatFunc is a fraction of polynomials over a finite field in one
variable.  The same class serves two roles:

* elements of the global field k(w), w the global coordinate;
* elements of a completion, written in the local uniformizer (w - lam
  over the residue field at a finite place, u = 1/w at infinity).

Laurent data (valuation, angular component, series coefficients,
residues) is read off the fraction exactly; no truncation is ever
inexact.
"""

from __future__ import annotations

import math

from .fields import GF, FieldElem
from .poly import Poly, padd, pdivmod, pgcd, pmul, pneg, pscale, ptrim

_REDUCE_DEGREE = 24


def _trail(c):
    for i, x in enumerate(c):
        if x:
            return i
    return None


class RatFunc:
    """A reduced fraction num/den of polynomials over a FiniteField."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field, num, den=(1,)):
        if isinstance(num, Poly):
            num = num.coeffs
        if isinstance(den, Poly):
            den = den.coeffs
        num, den = ptrim(num), ptrim(den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            self.field, self.num, self.den = field, (), (1,)
            return
        tn, td = _trail(num), _trail(den)
        s = min(tn, td)
        if s:
            num, den = num[s:], den[s:]
        if len(num) > _REDUCE_DEGREE or len(den) > _REDUCE_DEGREE:
            g = pgcd(field, num, den)
            if len(g) > 1:
                num = pdivmod(field, num, g)[0]
                den = pdivmod(field, den, g)[0]
        if den[-1] != 1:
            inv = field.inv_table[den[-1]]
            num = pscale(field, num, inv)
            den = pscale(field, den, inv)
        self.field, self.num, self.den = field, num, den

    # -- constructors ----------------------------------------------------------

    @classmethod
    def zero(cls, field):
        return cls(field, ())

    @classmethod
    def one(cls, field):
        return cls(field, (1,))

    @classmethod
    def const(cls, field, c):
        if isinstance(c, FieldElem):
            return cls(field, (c.idx,))
        return cls(field, ((int(c) % field.p),))

    @classmethod
    def var(cls, field):
        return cls(field, (0, 1))

    @classmethod
    def monomial(cls, field, coef_idx, exponent):
        """coef * t^exponent, any integer exponent."""
        if exponent >= 0:
            return cls(field, (0,) * exponent + (coef_idx,))
        return cls(field, (coef_idx,), (0,) * (-exponent) + (1,))

    def poly_pair(self):
        return Poly.from_idx(self.field, self.num), Poly.from_idx(self.field, self.den)

    # -- arithmetic --------------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        F = self.field
        if self.den == other.den:
            return RatFunc(F, padd(F, self.num, other.num), self.den)
        num = padd(F, pmul(F, self.num, other.den), pmul(F, other.num, self.den))
        return RatFunc(F, num, pmul(F, self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        r = RatFunc.__new__(RatFunc)
        r.field, r.num, r.den = self.field, pneg(self.field, self.num), self.den
        return r

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        F = self.field
        return RatFunc(F, pmul(F, self.num, other.num), pmul(F, self.den, other.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if not other.num:
            raise ZeroDivisionError("division by zero rational function")
        F = self.field
        return RatFunc(F, pmul(F, self.num, other.den), pmul(F, self.den, other.num))

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def inv(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.field, self.den, self.num)

    def __pow__(self, e):
        if e < 0:
            return self.inv() ** (-e)
        acc, base = RatFunc.one(self.field), self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            if other.field != self.field:
                raise ValueError("field mismatch")
            return other
        if isinstance(other, (int, FieldElem)):
            return RatFunc.const(self.field, other)
        if isinstance(other, Poly):
            return RatFunc(self.field, other.coeffs)
        raise TypeError("cannot coerce %r" % (other,))

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        F = self.field
        return pmul(F, self.num, other.den) == pmul(F, other.num, self.den)

    def __hash__(self):
        g = pgcd(self.field, self.num, self.den)
        if len(g) > 1:
            n = pdivmod(self.field, self.num, g)[0]
            d = pdivmod(self.field, self.den, g)[0]
        else:
            n, d = self.num, self.den
        return hash((self.field.p, self.field.m, n, d))

    def __bool__(self):
        return bool(self.num)

    # -- Laurent structure at t = 0 ----------------------------------------------

    def valuation(self):
        """Order of vanishing at t = 0; +inf for the zero element."""
        if not self.num:
            return math.inf
        return _trail(self.num) - _trail(self.den)

    def angular(self):
        """The leading Laurent coefficient (t^-v(f) * f at 0); nonzero unless f = 0."""
        if not self.num:
            return self.field.zero()
        a = self.num[_trail(self.num)]
        b = self.den[_trail(self.den)]
        return FieldElem(self.field, self.field.mul_table[a][self.field.inv_table[b]])

    def is_integral(self):
        return not self.num or self.valuation() >= 0

    def is_unit(self):
        return bool(self.num) and self.valuation() == 0

    def series_coeffs(self, upto):
        """Laurent coefficients c_v .. c_upto as a dict {exponent: index}."""
        if not self.num:
            return {}
        F = self.field
        v = self.valuation()
        if upto < v:
            return {}
        tn, td = _trail(self.num), _trail(self.den)
        nhat = list(self.num[tn:])
        dhat = list(self.den[td:])
        inv0 = F.inv_table[dhat[0]]
        add, mul, neg = F.add_table, F.mul_table, F.neg_table
        k = upto - v + 1
        out = {}
        rem = nhat + [0] * max(0, k - len(nhat))
        for j in range(k):
            c = mul[rem[j]][inv0]
            out[v + j] = c
            if c:
                row = mul[c]
                for i, d in enumerate(dhat):
                    if d and j + i < len(rem):
                        rem[j + i] = add[rem[j + i]][neg[row[d]]]
        return {e: c for e, c in out.items() if c}

    def laurent_coeff(self, j):
        return FieldElem(self.field, self.series_coeffs(j).get(j, 0))

    def residue(self):
        """Coefficient of t^-1 (the residue of f dt at t = 0)."""
        return self.laurent_coeff(-1)

    def principal_part(self):
        """The sum of the negative-exponent Laurent terms, as a RatFunc."""
        F = self.field
        coeffs = self.series_coeffs(-1)
        acc = RatFunc.zero(F)
        for e, c in coeffs.items():
            acc = acc + RatFunc.monomial(F, c, e)
        return acc

    def truncate(self, upto):
        """The Laurent polynomial sum of terms of exponent <= upto."""
        F = self.field
        acc = RatFunc.zero(F)
        for e, c in self.series_coeffs(upto).items():
            acc = acc + RatFunc.monomial(F, c, e)
        return acc

    def eval0(self):
        """Value at t = 0 (requires integrality)."""
        if self.num and self.valuation() < 0:
            raise ValueError("pole at the evaluation point")
        return self.laurent_coeff(0)

    def __repr__(self):
        n, d = self.poly_pair()
        if d == Poly.one(self.field):
            return "(%r)" % (n,)
        return "(%r)/(%r)" % (n, d)


# -- places of the projective line ------------------------------------------------


class Place:
    """A place of k(w): a monic irreducible of k[w], or the place at infinity.

    The residue field is realized as GF(p^(m*deg)); for a finite place a
    root lam of the irreducible is fixed inside it and the completion is
    coordinatized by the uniformizer t = w - lam.  At infinity the
    uniformizer is u = 1/w and the residue field is k itself.
    """

    __slots__ = ("base", "kind", "poly", "degree", "residue_field", "lam")

    def __init__(self, base, kind, poly=None):
        self.base = base
        self.kind = kind
        if kind == "finite":
            if poly is None or not poly.is_monic():
                raise ValueError("finite place needs a monic irreducible")
            self.poly = poly
            self.degree = poly.degree()
            self.residue_field = GF(base.p, base.m * self.degree)
            self.lam = self._find_root()
        elif kind == "inf":
            self.poly = None
            self.degree = 1
            self.residue_field = base
            self.lam = None
        else:
            raise ValueError("unknown place kind %r" % (kind,))

    @classmethod
    def finite(cls, poly):
        return cls(poly.field, "finite", poly)

    @classmethod
    def infinity(cls, base):
        return cls(base, "inf")

    def _find_root(self):
        kv = self.residue_field
        for i in range(kv.q):
            if self.poly.eval_in(kv, FieldElem(kv, i)).idx == 0:
                return FieldElem(kv, i)
        raise RuntimeError("irreducible has no root in its residue field")  # pragma: no cover

    def __eq__(self, other):
        if not isinstance(other, Place):
            return NotImplemented
        if self.kind != other.kind or self.base != other.base:
            return False
        return self.kind == "inf" or self.poly == other.poly

    def __hash__(self):
        return hash((self.base.p, self.base.m, self.kind,
                     None if self.poly is None else self.poly.coeffs))

    def __repr__(self):
        if self.kind == "inf":
            return "Place(inf)"
        return "Place(%r)" % (self.poly,)

    def sort_key(self):
        if self.kind == "inf":
            return (1, 0, ())
        return (0, self.degree, self.poly.coeffs)

    # -- localization ---------------------------------------------------------

    def localize_poly(self, P):
        """Push a global polynomial into the completion's coordinate."""
        if self.kind == "finite":
            return RatFunc(self.residue_field, P.shift(self.lam).coeffs)
        # at infinity: P(1/u) = u^(-deg P) * reversed(P)
        d = P.degree()
        if d < 0:
            return RatFunc.zero(self.base)
        rev = tuple(reversed(P.coeffs))
        return RatFunc(self.base, rev, (0,) * d + (1,))

    def localize(self, f):
        """Push a global RatFunc into the completion's coordinate."""
        n, d = f.poly_pair()
        if d.degree() == 0:
            return self.localize_poly(n) * self.localize_poly(d).inv() \
                if d.coeffs != (1,) else self.localize_poly(n)
        return self.localize_poly(n) / self.localize_poly(d)

    def valuation(self, f):
        if isinstance(f, Poly):
            f = RatFunc(f.field, f.coeffs)
        return self.localize(f).valuation()

    def residue(self, f, traced=False):
        """res_v(f dw) as a residue-field element; traced pulls it down to k.

        At infinity dw = -u^-2 du, so the residue is minus the u^1 Laurent
        coefficient of the localized element.
        """
        if isinstance(f, Poly):
            f = RatFunc(f.field, f.coeffs)
        loc = self.localize(f)
        if self.kind == "finite":
            r = loc.residue()
        else:
            r = -loc.laurent_coeff(1)
        if traced and self.kind == "finite":
            kv = self.residue_field
            r = FieldElem(self.base, kv.trace_to(self.base, r.idx))
        return r


def sres(f):
    """Sum of traced residues of f dw over all finite places, exactly.

    Computed by coefficient extraction: write f = poly + R/Q with Q monic
    and deg R < deg Q; the answer is the w^(deg Q - 1) coefficient of R.
    """
    if isinstance(f, Poly):
        return f.field.zero()
    F = f.field
    if not f.num:
        return F.zero()
    q, r = pdivmod(F, f.num, f.den)
    if not r:
        return F.zero()
    dQ = len(f.den) - 1
    if len(r) >= dQ:
        return FieldElem(F, r[dQ - 1])
    return F.zero()


def res_at_place(f, place, traced=False):
    """Residue of f dw at one place (see Place.residue)."""
    return place.residue(f, traced=traced)
