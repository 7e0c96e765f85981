"""Quadratic character, tame and Hilbert symbols, and Weil constants.

All symbols are evaluated on elements of a completion written in its
local uniformizer (see Completion).  Weil constants are computed as
stabilized normalized quadratic Gauss sums, evaluated exactly by
diagonalizing the finite-dimensional quadratic form that the character
sees; the normalization divides by the exact positive square-root power
of the residue cardinality, so the result is a root of unity in
Q(zeta_{4p}).
"""

from __future__ import annotations

from .algebra.cyclo import CharacterTable
from .algebra.fields import FieldElem
from .algebra.localfield import RatFunc


class Completion:
    """A coordinatized completion kv((t)) together with its characters.

    kind "finite": the residue functional of x dt is the t^-1 Laurent
    coefficient.  kind "inf": the local coordinate is u = 1/w and the
    functional of x dw is minus the u^1 coefficient (dw = -u^-2 du), which
    shifts the character's conductor; nothing downstream assumes order 0.

    The local additive character is Psi(x) = psi(Tr_{kv/base} res(x dw))
    with psi the canonical character of the base field.
    """

    def __init__(self, kv, base=None, kind="finite"):
        self.kv = kv
        self.base = base if base is not None else kv
        self.kind = kind
        self.ct = CharacterTable(kv)
        self.base_ct = CharacterTable(self.base)
        self.ring = self.ct.ring
        self._gauss_cache = {}

    @classmethod
    def at_place(cls, place):
        return cls(place.residue_field, base=place.base,
                   kind="finite" if place.kind == "finite" else "inf")

    def zero(self):
        return RatFunc.zero(self.kv)

    def one(self):
        return RatFunc.one(self.kv)

    def unif(self):
        return RatFunc.var(self.kv)

    def scalar(self, c):
        return RatFunc.const(self.kv, c)

    def res_functional(self, x):
        """The kv-valued residue of x dw in local coordinates."""
        if self.kind == "finite":
            return x.residue()
        return -x.laurent_coeff(1)

    def trace_down(self, c):
        if self.kv == self.base:
            return c
        return FieldElem(self.base, self.kv.trace_to(self.base, c.idx))

    def norm_down(self, c):
        if self.kv == self.base:
            return c
        return FieldElem(self.base, self.kv.norm_to(self.base, c.idx))

    def Psi(self, x):
        """The local additive character, valued in Q(zeta_{4p})."""
        return self.base_ct.psi(self.trace_down(self.res_functional(x)))

    def zeta(self, c):
        """Quadratic character of kv^*, extended by zeta(0) = 0."""
        return zeta_char(c, self.ring)

    def __repr__(self):
        return "Completion(%r, %s)" % (self.kv, self.kind)


def zeta_char(x, ring=None):
    """The quadratic character of a finite field, extended by zero.

    Returns +1, -1 or 0 in Q(zeta_{4p}) according to x being a nonzero
    square, a nonsquare, or zero.
    """
    if ring is None:
        ring = CharacterTable(x.field).ring
    if x.idx == 0:
        return ring.zero()
    return ring.from_rational(1 if x.is_square() else -1)


def zeta_sign(x):
    """Like zeta_char but as a plain integer in {-1, 0, 1}."""
    if x.idx == 0:
        return 0
    return 1 if x.is_square() else -1


def tame_symbol(f, g):
    """{f, g} = (-1)^(v(f)v(g)) (f^v(g) / g^v(f))(0), a residue-field unit.

    Only the valuations and angular components enter, so no polynomial
    powers are formed.
    """
    if not f or not g:
        raise ZeroDivisionError("tame symbol of zero")
    F = f.field
    vf, vg = f.valuation(), g.valuation()
    af, ag = f.angular(), g.angular()
    out = af ** vg / ag ** vf
    if (vf * vg) % 2:
        out = -out
    return out


def hilbert_symbol(f, g, ring=None):
    """[f, g] = zeta(tame symbol), valued in {+1, -1} inside Q(zeta_{4p})."""
    return zeta_char(tame_symbol(f, g), ring)


class WeilConstant:
    """A computed Weil constant gamma(a, Psi_v) with its context."""

    __slots__ = ("value", "completion", "a", "twist")

    def __init__(self, value, completion, a, twist):
        self.value = value
        self.completion = completion
        self.a = a
        self.twist = twist

    def __repr__(self):
        return "WeilConstant(%r)" % (self.value,)


def _gauss_one_var(comp, d_idx):
    """sum over c in kv of psi(d c^2), cached per coefficient."""
    cache = comp._gauss_cache
    if d_idx in cache:
        return cache[d_idx]
    kv = comp.kv
    psi = comp.base_ct.psi
    tr = comp.trace_down
    acc = comp.ring.zero()
    mul = kv.mul_table
    for c in range(kv.q):
        acc = acc + psi(tr(FieldElem(kv, mul[mul[d_idx][c]][c])))
    cache[d_idx] = acc
    return acc


def _quadratic_char_sum(comp, B):
    """sum over c in kv^n of psi(sum_{j,k} B[j][k] c_j c_k), exactly.

    B is a symmetric matrix of kv element indices.  Evaluated by
    completing squares (odd characteristic), yielding a product of
    one-variable Gauss sums times a power of q_v.
    """
    kv = comp.kv
    n = len(B)
    B = [row[:] for row in B]
    add, mul, neg, inv = kv.add_table, kv.mul_table, kv.neg_table, kv.inv_table
    two_inv = inv[2 % kv.p]
    alive = list(range(n))
    acc = comp.ring.one()
    qpow = 0
    while alive:
        piv = None
        for i in alive:
            if B[i][i]:
                piv = i
                break
        if piv is None:
            off = None
            for i in alive:
                for j in alive:
                    if i != j and B[i][j]:
                        off = (i, j)
                        break
                if off:
                    break
            if off is None:
                qpow += len(alive)
                break
            i, j = off
            # substitute c_i <- c_i + c_j; in odd characteristic this puts
            # 2*B[i][j] on the diagonal
            for k in alive:
                B[j][k] = add[B[j][k]][B[i][k]]
            for k in alive:
                B[k][j] = add[B[k][j]][B[k][i]]
            continue
        d = B[piv][piv]
        acc = acc * _gauss_one_var(comp, d)
        dinv = inv[d]
        alive.remove(piv)
        # complete the square: B'_{jk} = B_{jk} - B_{pj} B_{pk} / d
        row = [B[piv][k] for k in range(n)]
        for j in alive:
            if row[j]:
                f = mul[row[j]][dinv]
                for k in alive:
                    if row[k]:
                        B[j][k] = add[B[j][k]][neg[mul[f][row[k]]]]
    return acc, qpow


def weil_gamma(a, comp, twist=None, max_level=8):
    """The Weil constant gamma(a, Psi_v) as an exact root of unity.

    Computed as the stabilized value of integral over t^-N O of
    Psi_v(twist * a x^2 / 2) dx (unit Haar mass on O), normalized by the
    exact positive square-root power of q_v that makes the result have
    modulus one.  Stabilization is certified by two consecutive levels
    agreeing; failure to stabilize raises, which would indicate a
    character bookkeeping bug.
    """
    if not a:
        raise ZeroDivisionError("Weil constant of zero")
    kv = comp.kv
    arg = a if twist is None else a * twist
    half = RatFunc.const(kv, (kv.p + 1) // 2)
    arg = arg * half

    def level_value(N):
        # coordinates c_j of x = sum c_j t^j, j in [lo, hi); the integrand is
        # constant on x mod t^hi because couplings m(j+k) vanish for
        # j + k > s_max and the lowest coordinate is lo = -N
        v = arg.valuation()
        s_max = (-1 - v) if comp.kind == "finite" else (1 - v)
        lo = -N
        hi = max(lo + 1, s_max - lo + 1)
        coeffs = arg.series_coeffs((-1 - 2 * lo) if comp.kind == "finite" else (1 - 2 * lo))
        if comp.kind == "finite":
            def m(s):
                return coeffs.get(-1 - s, 0)
        else:
            def m(s):
                c = coeffs.get(1 - s, 0)
                return kv.neg_table[c]
        idxs = list(range(lo, hi))
        B = [[m(j + k) for k in idxs] for j in idxs]
        S, qpow = _quadratic_char_sum(comp, B)
        # Haar mass: vol(t^lo O) = q^-lo spread over q^(hi-lo) classes
        return S * _qpow_frac(kv.q, qpow - hi)

    prev = None
    for N in range(1, max_level + 1):
        val = level_value(N)
        if prev is not None and val == prev:
            return _normalize_gamma(val, comp, a, twist)
        prev = val
    raise RuntimeError("Weil constant failed to stabilize for %r" % (a,))


def _qpow_frac(q, e):
    from fractions import Fraction
    return Fraction(q) ** e


def _normalize_gamma(S, comp, a, twist):
    if not S:
        raise RuntimeError("vanishing Gauss sum; character bookkeeping bug")
    norm = (S * S.conjugate())
    if not norm.is_rational():
        raise RuntimeError("Gauss sum modulus is not rational")
    r = norm.rational()
    # r must be an exact (possibly negative) power of q_v
    q = comp.kv.q
    e = 0
    val = r
    while val.numerator % q == 0 and val.numerator != 0 and val.denominator == 1 and val != 1:
        val = val / q
        e += 1
    while val.denominator % q == 0:
        val = val * q
        e -= 1
    if val != 1:
        raise RuntimeError("Gauss sum modulus %r is not a power of q" % (r,))
    gamma = S * comp.ct.sqrt_q_pow(-e)
    return WeilConstant(gamma, comp, a, twist)


def weil_product_check(a, base_field):
    """Check prod over all places of gamma_v(a, Psi_v) = 1 for global a.

    The product has finite support: places dividing the numerator or
    denominator of a, every finite place of even valuation contributing 1,
    plus the place at infinity.  Returns (product, per-place values).
    """
    from .algebra.localfield import Place
    from .algebra.poly import factor

    if not a:
        raise ZeroDivisionError("product formula needs a nonzero function")
    num, den = a.poly_pair()
    support = {}
    for P in (num, den):
        if P.degree() > 0:
            for f, _ in factor(P)[1]:
                support[(f.degree(), f.coeffs)] = f
    places = [Place.finite(f) for _, f in sorted(support.items())]
    places.append(Place.infinity(base_field))
    ring = CharacterTable(base_field).ring
    total = ring.one()
    detail = []
    for v in places:
        comp = Completion.at_place(v)
        gam = weil_gamma(v.localize(a), comp).value
        detail.append((v, gam))
        total = total * gam
    return total, detail
