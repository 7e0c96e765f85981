"""Global orbital sums over k[w]: places and factorization, the sums I
and J by product / direct / matrix-family routes, the tau transfer
character at infinity, and the global identity sweeps.

The three routes are genuinely independent: the product mode multiplies
local sums at the completions of the support, the direct mode enumerates
global unipotent cosets with polynomial integrality, and for invariant
degrees (1, 2, ..., r) the matrix-family mode scans constant matrices
with prescribed principal invariants.
"""

from __future__ import annotations

import itertools

from .algebra.cyclo import CharacterTable
from .algebra.fields import FieldElem
from .algebra.localfield import Place, RatFunc, sres
from .algebra.poly import Poly, factor, pdivmod, pgcd
from .metaplectic import (companion_invariants, kappa_general, kappa_kubota,
                          kappa_poly, mat_id, mat_mul, perm_matrix, w0_perm)
from .orbital import TorusParam, I_local, J_local, enumerate_Y
from .symbols import Completion, weil_gamma, zeta_sign


def factor_places(P):
    """The multiset of finite places dividing a nonzero polynomial:
    a sorted list of (Place, multiplicity)."""
    if P.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    out = [(Place.finite(f), m) for f, m in factor(P)[1]]
    out.sort(key=lambda pm: pm[0].sort_key())
    return out


class GlobalTorus:
    """Torus invariants (a_1, ..., a_r) as monic polynomials over k.

    Admissible when gcd(prod_{i<r} a_i, a_r) = 1; the support is the set
    of places dividing prod_{i<r} a_i.
    """

    def __init__(self, field, a):
        self.field = field
        self.a = list(a)
        self.r = len(self.a)
        for ai in self.a:
            if ai.is_zero() or not ai.is_monic():
                raise ValueError("torus invariants must be monic and nonzero")

    def degrees(self):
        return [ai.degree() for ai in self.a]

    def lower_product(self):
        P = Poly.one(self.field)
        for ai in self.a[:-1]:
            P = P * ai
        return P

    def is_admissible(self):
        g = pgcd(self.field, self.lower_product().coeffs, self.a[-1].coeffs)
        return len(g) == 1

    def support(self):
        P = self.lower_product()
        if P.degree() <= 0:
            return []
        return [v for v, _ in factor_places(P)]

    def localize(self, place):
        comp = Completion.at_place(place)
        return comp, TorusParam(comp, [place.localize(RatFunc(self.field, ai.coeffs))
                                       for ai in self.a])

    def __repr__(self):
        return "GlobalTorus(%r)" % (self.a,)


# -- global coset enumeration ----------------------------------------------------


def _global_classes(field, modulus):
    """Representatives of modulus^-1 O / O: proper fractions num/modulus."""
    d = modulus.degree()
    if d <= 0:
        return [RatFunc.zero(field)]
    out = []
    for digits in itertools.product(range(field.q), repeat=d):
        out.append(RatFunc(field, tuple(digits), modulus.coeffs))
    return out


def _is_polynomial_matrix(M):
    for row in M:
        for x in row:
            if x.num:
                if pdivmod(x.field, x.num, x.den)[1]:
                    return False
    return True


class GlobalCosetRep:
    __slots__ = ("cols", "r")

    def __init__(self, r, cols):
        self.r = r
        self.cols = tuple(tuple(c) for c in cols)

    def matrix(self, F):
        n = mat_id(F, self.r)
        for k in range(2, self.r + 1):
            u = mat_id(F, self.r)
            for i, entry in enumerate(self.cols[k - 2]):
                u[i][k - 1] = entry
            n = mat_mul(n, u)
        return n

    def superdiagonal(self):
        return [self.cols[k - 2][k - 2] for k in range(2, self.r + 1)]


def _global_coset_domain(torus):
    field = torus.field
    per_col = []
    for k in range(2, torus.r + 1):
        base = _global_classes(field, torus.a[k - 2])
        per_col.append(list(itertools.product(base, repeat=k - 1)))
    return [GlobalCosetRep(torus.r, combo) for combo in itertools.product(*per_col)]


def _torus_matrix(torus):
    F = torus.field
    m = mat_id(F, torus.r)
    prev = Poly.one(F)
    for i, ai in enumerate(torus.a):
        m[i][i] = RatFunc(F, ai.coeffs, prev.coeffs)
        prev = ai
    return m


def _theta_global(superdiag, alpha, ct, half):
    field = ct.field
    acc = field.zero()
    for al, entry in zip(alpha, superdiag):
        acc = acc + al * sres(entry)
    if half:
        acc = acc * FieldElem(field, (field.p + 1) // 2)
    return ct.psi(acc)


def enumerate_X_global(torus):
    F = torus.field
    t_mat = _torus_matrix(torus)
    out = []
    for rep in _global_coset_domain(torus):
        n = rep.matrix(F)
        tn = [list(col) for col in zip(*n)]
        M = mat_mul(mat_mul(tn, t_mat), n)
        if _is_polynomial_matrix(M):
            out.append(rep)
    return out


def enumerate_Y_global(torus):
    F = torus.field
    t_mat = _torus_matrix(torus)
    reps = _global_coset_domain(torus)
    lefts = []
    for rep in reps:
        n = rep.matrix(F)
        tn = [list(col) for col in zip(*n)]
        lefts.append(mat_mul(tn, t_mat))
    rights = [rep.matrix(F) for rep in reps]
    pairs = []
    for i, L in enumerate(lefts):
        for j, N in enumerate(rights):
            M = mat_mul(L, N)
            if _is_polynomial_matrix(M):
                pairs.append((reps[i], reps[j], M))
    return pairs


def global_kappa(torus, M):
    """kappa of w0 M as a product of normed local values over the support."""
    F = torus.field
    r = torus.r
    w0M = [M[r - 1 - i] for i in range(r)]
    total = F.one()
    for v in torus.support():
        loc = [[v.localize(x) for x in row] for row in w0M]
        kv_val = kappa_kubota(loc) if r == 2 else kappa_general(loc)
        if v.residue_field != F:
            kv_val = FieldElem(F, v.residue_field.norm_to(F, kv_val.idx))
        total = total * kv_val
    return total


def I_global(torus, alpha, mode="product"):
    """The global sum I(t, alpha) by the product or the direct route."""
    ct = CharacterTable(torus.field)
    if mode == "product":
        acc = ct.ring.one()
        for v in torus.support():
            comp, loc = torus.localize(v)
            acc = acc * I_local(loc, alpha)
        return acc
    if mode != "direct":
        raise ValueError("mode must be 'product' or 'direct'")
    acc = ct.ring.zero()
    for rep in enumerate_X_global(torus):
        acc = acc + _theta_global(rep.superdiagonal(), alpha, ct, half=False)
    return acc


def J_global(torus, alpha, mode="product"):
    """The global sum J(t, alpha) by the product or the direct route.

    Product route: product of local J sums over all finite places (only
    the support contributes).  Direct route: kappa-weighted double coset
    sum with the kappa of glob support places, per the global splitting.
    """
    ct = CharacterTable(torus.field)
    if mode == "product":
        acc = ct.ring.one()
        for v in torus.support():
            comp, loc = torus.localize(v)
            acc = acc * J_local(loc, alpha)
        return acc
    if mode != "direct":
        raise ValueError("mode must be 'product' or 'direct'")
    if not torus.is_admissible():
        raise ValueError("direct J needs gcd(prod a_i, a_r) = 1")
    acc = ct.ring.zero()
    rev_alpha = list(reversed(alpha))
    for nrep, nprep, M in enumerate_Y_global(torus):
        kap = global_kappa(torus, M)
        sign = zeta_sign(kap)
        left = _theta_global(list(reversed(nrep.superdiagonal())), rev_alpha, ct, half=True)
        right = _theta_global(nprep.superdiagonal(), alpha, ct, half=True)
        acc = acc + ct.ring.from_rational(sign) * left * right
    return acc


# -- matrix-family sums for invariant degrees (1, ..., r) -------------------------


_fiber_cache_I = {}
_fiber_cache_J = {}


def _symmetric_matrices(field, r):
    n_free = r * (r + 1) // 2
    idx_pairs = [(i, j) for i in range(r) for j in range(i, r)]
    for digits in itertools.product(range(field.q), repeat=n_free):
        y = [[None] * r for _ in range(r)]
        for (i, j), c in zip(idx_pairs, digits):
            y[i][j] = FieldElem(field, c)
            y[j][i] = FieldElem(field, c)
        yield y


def _all_matrices(field, r):
    for digits in itertools.product(range(field.q), repeat=r * r):
        yield [[FieldElem(field, digits[i * r + j]) for j in range(r)]
               for i in range(r)]


def fiber_index_I(field, r):
    """Group symmetric x by their invariant tuple; values keep the
    superdiagonal entries needed by the character sum."""
    key = (field.p, field.m, r)
    if key in _fiber_cache_I:
        return _fiber_cache_I[key]
    index = {}
    for x in _symmetric_matrices(field, r):
        a = companion_invariants(x)
        keya = tuple(ai.coeffs for ai in a)
        sup = tuple(x[i - 1][i].idx for i in range(1, r))
        index.setdefault(keya, []).append(sup)
    _fiber_cache_I[key] = index
    return index


def fiber_index_J(field, r):
    """Group y in gl_r(k) by invariants; values keep (kappa sign, h' data)."""
    key = (field.p, field.m, r)
    if key in _fiber_cache_J:
        return _fiber_cache_J[key]
    index = {}
    for y in _all_matrices(field, r):
        a = companion_invariants(y)
        keya = tuple(ai.coeffs for ai in a)
        sign = zeta_sign(kappa_poly(y))
        pairs = tuple((y[i - 1][i].idx, y[i][i - 1].idx) for i in range(1, r))
        index.setdefault(keya, []).append((sign, pairs))
    _fiber_cache_J[key] = index
    return index


def matrix_fiber_sum_I(field, a, alpha):
    """sum over symmetric x with invariants a of psi(sum alpha_i x_{i-1,i})."""
    r = len(a)
    ct = CharacterTable(field)
    index = fiber_index_I(field, r)
    keya = tuple(ai.coeffs for ai in a)
    acc = ct.ring.zero()
    for sup in index.get(keya, ()):
        val = field.zero()
        for al, c in zip(alpha, sup):
            val = val + al * FieldElem(field, c)
        acc = acc + ct.psi(val)
    return acc


def matrix_fiber_sum_J(field, a, alpha):
    """sum over y in gl_r(k) with invariants a of
    zeta(kappa_poly(y)) psi(1/2 sum alpha_i (y_{i-1,i} + y_{i,i-1}))."""
    r = len(a)
    ct = CharacterTable(field)
    index = fiber_index_J(field, r)
    keya = tuple(ai.coeffs for ai in a)
    half = FieldElem(field, (field.p + 1) // 2)
    acc = ct.ring.zero()
    for sign, pairs in index.get(keya, ()):
        if sign == 0:
            continue
        val = field.zero()
        for al, (cu, cl) in zip(alpha, pairs):
            val = val + al * (FieldElem(field, cu) + FieldElem(field, cl))
        acc = acc + ct.ring.from_rational(sign) * ct.psi(val * half)
    return acc


# -- the tau transfer character ----------------------------------------------------


def tau_factor(field, d, alpha=None):
    """The global transfer constant for invariant degrees d = (d_1..d_r).

    tau = q^(D/2) zeta(-1)^E gamma_inf(-w, Psi_inf)^-P, where
    D = sum_{i<r} d_i, E = sum over the class j !~ r (mod 2) of d_j, and
    P counts the odd degree-differences p(d_j - d_{j-1}) over the same
    class (d_0 = 0); it arises as the product over all places of the
    local transfer constants, collapsed by the Weil product formula.
    With a nontrivial alpha the same block-ownership signs as in the
    local transfer factor appear, with d_i in place of the valuations.
    """
    r = len(d)
    ct = CharacterTable(field)
    D = sum(d[:-1])
    val = ct.sqrt_q_pow(D)
    zeta_m1 = zeta_sign(FieldElem(field, field.neg_table[1]))
    sign = 1
    P = 0
    for j in range(1, r + 1):
        if (r - j) % 2 == 0:
            continue  # tau follows the plain transfer constant: j !~ r
        if d[j - 1] % 2:
            sign *= zeta_m1
        prev = d[j - 2] if j >= 2 else 0
        if (d[j - 1] - prev) % 2:
            P += 1
        if alpha is not None:
            for i in (j - 1, j):
                if 1 <= i <= r - 1 and d[i - 1] % 2:
                    sign *= zeta_sign(alpha[i - 1])
    if sign == -1:
        val = val * ct.ring.from_rational(-1)
    if P:
        comp_inf = Completion(field, kind="inf")
        minus_w = RatFunc(field, (field.neg_table[1],), (0, 1))
        g_inf = weil_gamma(minus_w, comp_inf).value
        val = val * g_inf.inv() ** P
    return val


def theorem_B_check(field, r, alphas=None, limit=None, rng=None):
    """Sweep the family identity J_fiber = tau * I_fiber over admissible
    invariants of degrees (1, ..., r).

    First verifies that J/I is constant across fibers with I != 0 and that
    I = 0 forces J = 0; then matches the constant against tau_factor.
    Returns a report dict per alpha; raises nothing, failures are listed.
    """
    ct = CharacterTable(field)
    d = tuple(range(1, r + 1))
    if alphas is None:
        alphas = [tuple(FieldElem(field, i) for i in combo)
                  for combo in itertools.product(range(1, field.q), repeat=r - 1)]
    iindex = fiber_index_I(field, r)
    jindex = fiber_index_J(field, r)
    a_tuples = []
    for keya in sorted(set(iindex) | set(jindex)):
        a = [Poly.from_idx(field, c) for c in keya]
        if [ai.degree() for ai in a] != list(d):
            continue
        tor = GlobalTorus(field, a)
        if not tor.is_admissible():
            continue
        a_tuples.append(tuple(a))
    if limit is not None and rng is not None and len(a_tuples) > limit:
        a_tuples = rng.sample(a_tuples, limit)
    report = {"checks": 0, "failures": [], "ratio_mismatches": []}
    for alpha in alphas:
        tau = tau_factor(field, d, alpha)
        ratio = None
        for a in a_tuples:
            I = matrix_fiber_sum_I(field, a, alpha)
            J = matrix_fiber_sum_J(field, a, alpha)
            report["checks"] += 1
            if not I:
                if J:
                    report["failures"].append((a, alpha, "I=0 but J!=0"))
                continue
            this_ratio = J * I.inv()
            if ratio is None:
                ratio = this_ratio
            elif this_ratio != ratio:
                report["ratio_mismatches"].append((a, alpha))
            if J != tau * I:
                report["failures"].append((a, alpha, "J != tau I"))
        if ratio is not None and ratio != tau:
            report.setdefault("tau_mismatch", []).append((alpha, ratio, tau))
    report["ok"] = (not report["failures"] and not report["ratio_mismatches"]
                    and "tau_mismatch" not in report)
    return report


def zeta_sum_identity_check(field):
    """Exhaustive check of both character-sum identities over GF(q):
    sum_{v + c/v = u} zeta(v) = sum_{e^2 = c} zeta(u - 2e), and for c = 1
    the right side reads zeta(u - 2) + zeta(u + 2); zeta(0) = 0."""
    failures = []
    elements = field.elements()
    units = field.units()
    for c in units:
        for u in elements:
            lhs = 0
            for v in units:
                if v + c / v == u:
                    lhs += zeta_sign(v)
            rhs = 0
            for e in elements:
                if e * e == c:
                    rhs += zeta_sign(u - FieldElem(field, field.add_table[e.idx][e.idx]))
            if lhs != rhs:
                failures.append((u.idx, c.idx, lhs, rhs))
            if c == field.one():
                two = field.one() + field.one()
                special = zeta_sign(u - two) + zeta_sign(u + two)
                if lhs != special:
                    failures.append((u.idx, c.idx, lhs, special, "c=1 form"))
    return {"checks": field.q * (field.q - 1), "failures": failures,
            "ok": not failures}
