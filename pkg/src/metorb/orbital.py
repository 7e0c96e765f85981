"""Local orbital sums at a completion: the finite orbit sets X(t), Y(t),
the characters theta, the sums I_v and J_v, transfer factors, and the
fundamental-lemma identity check.

Torus elements are encoded by their invariants a = (a_1, ..., a_r) with
t = diag(a_1, a_2/a_1, ..., a_r/a_{r-1}); the a_i are elements of the
completion written in its local uniformizer.  Coset representatives for
N_r(F_v)/N_r(O_v) are column-group factorizations n = u_2 ... u_r whose
column-k entries run over classes of a_{k-1}^-1 O_v / O_v, realized as
principal-part Laurent polynomials; the enumeration iterates this finite
superset and filters by the exact integrality predicate.
"""

from __future__ import annotations

import itertools

from .algebra.fields import FieldElem
from .algebra.localfield import RatFunc
from .metaplectic import kappa_general, kappa_kubota, mat_det, mat_id, mat_mul
from .symbols import weil_gamma, zeta_sign


class TorusParam:
    """Diagonal torus element by invariants (a_1, ..., a_r), a_0 = 1."""

    def __init__(self, comp, a):
        self.comp = comp
        self.a = list(a)
        self.r = len(self.a)
        for ai in self.a:
            if not ai:
                raise ValueError("torus invariants must be nonzero")

    @classmethod
    def from_exponents(cls, comp, pairs):
        """Build from (unit index, valuation) pairs: a_i = u_i t^e_i."""
        a = [RatFunc.monomial(comp.kv, u, e) for u, e in pairs]
        return cls(comp, a)

    def t_entries(self):
        out = [self.a[0]]
        for i in range(1, self.r):
            out.append(self.a[i] / self.a[i - 1])
        return out

    def valuations(self):
        return [ai.valuation() for ai in self.a]

    def is_admissible(self):
        v = self.valuations()
        return all(e >= 0 for e in v[:-1]) and v[-1] == 0

    def matrix(self):
        F = self.comp.kv
        r = self.r
        m = mat_id(F, r)
        for i, ti in enumerate(self.t_entries()):
            m[i][i] = ti
        return m

    def __repr__(self):
        return "TorusParam(%r)" % (self.a,)


class CosetRep:
    """A representative of N_r(F_v)/N_r(O_v): per column k = 2..r a tuple
    of k-1 principal-part entries, rows 1..k-1 of that column."""

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

    def superdiagonal(self, F):
        """Entries n_{i-1,i} for i = 2..r of the assembled matrix (these
        coincide with the bottom entry of each column factor)."""
        return [self.cols[k - 2][k - 2] for k in range(2, self.r + 1)]

    def __eq__(self, other):
        return isinstance(other, CosetRep) and self.cols == other.cols

    def __hash__(self):
        return hash(self.cols)

    def __repr__(self):
        return "CosetRep(%r)" % (self.cols,)


def _principal_parts(comp, depth):
    """All classes of t^-depth O/O as principal-part representatives."""
    kv = comp.kv
    if depth <= 0:
        return [RatFunc.zero(kv)]
    out = []
    for digits in itertools.product(range(kv.q), repeat=depth):
        num = tuple(reversed(digits))  # coefficient of t^-depth first
        out.append(RatFunc(kv, num, (0,) * depth + (1,)))
    return out


def coset_domain(comp, torus):
    """The finite superset of cosets allowed by the invariant bounds:
    column k entries run over a_{k-1}^-1 O/O."""
    r = torus.r
    depths = []
    for k in range(2, r + 1):
        v = torus.a[k - 2].valuation()
        depths.append(max(0, int(v)))
    per_col = []
    for k in range(2, r + 1):
        base = _principal_parts(comp, depths[k - 2])
        per_col.append(list(itertools.product(base, repeat=k - 1)))
    reps = []
    for combo in itertools.product(*per_col):
        reps.append(CosetRep(r, combo))
    return reps


def _is_integral_matrix(M):
    for row in M:
        for x in row:
            if x and x.valuation() < 0:
                return False
    return True


def enumerate_X(torus):
    """X(t) = cosets n with tn t n integral symmetric; exact filter.

    Degenerate invariants (negative valuation below the top, or empty
    bound data) give the empty set.
    """
    comp = torus.comp
    v = torus.valuations()
    if any(e < 0 for e in v[:-1]):
        return []
    F = comp.kv
    t_mat = torus.matrix()
    out = []
    for rep in coset_domain(comp, torus):
        n = rep.matrix(F)
        tn = [list(col) for col in zip(*n)]  # transpose
        M = mat_mul(mat_mul(tn, t_mat), n)
        if _is_integral_matrix(M):
            out.append(rep)
    return out


def enumerate_Y(torus, require_unit_det=None):
    """Y(t) = coset pairs (n, n') with tn t n' integral; exact filter.

    When require_unit_det is None it defaults to v(a_r) == 0, in which
    case integrality already implies invertibility over O.
    """
    comp = torus.comp
    v = torus.valuations()
    if any(e < 0 for e in v[:-1]):
        return []
    F = comp.kv
    if torus.r == 2:
        pairs = _enumerate_Y_r2(torus)
    else:
        t_mat = torus.matrix()
        reps = coset_domain(comp, torus)
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
                if _is_integral_matrix(M):
                    pairs.append((reps[i], reps[j], M))
    if require_unit_det is None:
        require_unit_det = (v[-1] == 0)
    if require_unit_det:
        pairs = [(a, b, M) for (a, b, M) in pairs if mat_det(M).is_unit()]
    return pairs


def _enumerate_Y_r2(torus):
    """Solved enumeration for r = 2: for a fixed left class x, integrality
    of t1 x x' + t2 forces the deep Laurent coefficients of x', leaving
    v(t1 x) of them free.  Agrees with the brute-force pair filter
    (tested); avoids the quadratic pair scan."""
    comp = torus.comp
    F = comp.kv
    t1, t2 = torus.t_entries()
    e = max(0, int(torus.a[0].valuation()))
    dom = _principal_parts(comp, e)
    pairs = []
    for x in dom:
        c = t1 * x
        if x and c.valuation() < 0:
            continue
        if not c:
            cands = dom if t2.valuation() >= 0 else []
        else:
            m = int(c.valuation())
            w = -t2 / c
            forced_coeffs = w.series_coeffs(-m - 1)
            if any(exp < -e for exp in forced_coeffs):
                cands = []
            else:
                forced = RatFunc.zero(F)
                for exp, ci in forced_coeffs.items():
                    forced = forced + RatFunc.monomial(F, ci, exp)
                cands = [forced + fr for fr in _principal_parts(comp, m)]
        for xp in cands:
            M = [[t1, t1 * xp], [c, c * xp + t2]]
            if _is_integral_matrix(M):
                pairs.append((CosetRep(2, ((x,),)), CosetRep(2, ((xp,),)), M))
    return pairs


def theta(rep_or_superdiag, alpha, comp, half):
    """theta_alpha(n) = psi(sum_i alpha_i Tr res(n_{i-1,i})), with the 1/2
    factor iff half is set.  alpha is indexed (alpha_2, ..., alpha_r)."""
    if isinstance(rep_or_superdiag, CosetRep):
        sup = rep_or_superdiag.superdiagonal(comp.kv)
    else:
        sup = list(rep_or_superdiag)
    acc = comp.base.zero()
    for al, entry in zip(alpha, sup):
        res = comp.trace_down(entry.residue())
        acc = acc + al * res
    if half:
        acc = acc * FieldElem(comp.base, (comp.base.p + 1) // 2)
    return comp.base_ct.psi(acc)


def _w0_conjugate_superdiag(rep, comp):
    """Superdiagonal of w0 (transpose n) w0: the reversed superdiagonal."""
    return list(reversed(rep.superdiagonal(comp.kv)))


def I_local(torus, alpha):
    """I_v(t, alpha) = sum over X(t) of psi(sum alpha_i tr res n_{i-1,i})."""
    comp = torus.comp
    ring = comp.base_ct.ring
    acc = ring.zero()
    for rep in enumerate_X(torus):
        acc = acc + theta(rep, alpha, comp, half=False)
    return acc


def J_local(torus, alpha, pairs=None):
    """J_v(t, alpha): kappa-weighted double sum over Y(t).

    The kappa factor zeta(N(kappa_v(w0 tn t n'))) is present iff v(a_r) = 0
    (at places dividing a_r the sum is kappa-free and the membership is in
    gl_r(O_v) only).  The left theta factor is evaluated on w0 (t n) w0
    through the reversed column structure, with the reversed alpha.
    """
    comp = torus.comp
    F = comp.kv
    ring = comp.base_ct.ring
    r = torus.r
    use_kappa = (torus.a[-1].valuation() == 0)
    if pairs is None:
        pairs = enumerate_Y(torus)
    rev_alpha = list(reversed(alpha))
    acc = ring.zero()
    for (nrep, nprep, M) in pairs:
        left = theta(_w0_conjugate_superdiag(nrep, comp), rev_alpha, comp, half=True)
        right = theta(nprep, alpha, comp, half=True)
        term = left * right
        if use_kappa:
            w0M = [M[r - 1 - i] for i in range(r)]
            kb = kappa_kubota(w0M) if r == 2 else kappa_general(w0M)
            sign = zeta_sign(comp.norm_down(kb.eval0() if isinstance(kb, RatFunc) else kb))
            if sign == 0:
                raise RuntimeError("kappa produced a non-unit")
            term = term * ring.from_rational(sign)
        acc = acc + term
    return acc


def transfer_factor(torus, alpha=None, prime=False):
    """The transfer constants relating J to I.

    t(t)  = |prod_{i<r} a_i|^(-1/2) zeta(-1)^(sum_{j !~ r} v(a_j))
            prod_{j !~ r (mod 2)} gamma(-a_j/a_{j-1}, Psi twisted by alpha)
    t'(t) = same with j ~ r (mod 2), j running over 1..r with a_0 = 1.

    gamma here is this package's Weil constant (the stabilized-sum value);
    relative to the transfer-factor display that treats gamma through the
    inverse character, every gamma argument is negated, which is the
    combination under which the identity J = t I holds exactly (see the
    test suite for the exhaustive confirmation).

    In the alpha-generalized sums the valuation of a_i is owned by the
    two-row block (i, i+1), whose superdiagonal character is alpha_{i+1};
    the factor for t_j = a_j/a_{j-1} therefore carries the sign
    zeta(alpha_j)^v(a_{j-1}) zeta(alpha_{j+1})^v(a_j) (indices out of
    range contribute nothing).  With alpha = (1, ..., 1) all these signs
    are +1.
    """
    comp = torus.comp
    ring = comp.base_ct.ring
    r = torus.r
    v = torus.valuations()
    ct = comp.ct
    total_v = sum(int(x) for x in v[:-1])
    val = ct.sqrt_q_pow(total_v)
    zeta_m1 = zeta_sign(FieldElem(comp.kv, comp.kv.neg_table[1]))
    # keep j !~ r (mod 2) for t, j ~ r (mod 2) for t'
    skip_parity = 1 if prime else 0
    sign = 1
    for j in range(1, r + 1):
        if (r - j) % 2 == skip_parity:
            continue
        if int(v[j - 1]) % 2:
            sign *= zeta_m1
        if alpha is not None:
            for i in (j - 1, j):
                if 1 <= i <= r - 1 and int(v[i - 1]) % 2:
                    embed = comp.kv.embedding_from(comp.base)
                    al_kv = FieldElem(comp.kv, embed[alpha[i - 1].idx])
                    sign *= zeta_sign(al_kv)
    if sign == -1:
        val = val * ring.from_rational(-1)
    for j in range(1, r + 1):
        if (r - j) % 2 == skip_parity:
            continue
        prev = torus.a[j - 2] if j >= 2 else RatFunc.one(comp.kv)
        arg = -(torus.a[j - 1] / prev)
        val = val * weil_gamma(arg, comp).value
    return val


class CheckRecord:
    """Inputs and all computed values of one fundamental-lemma check."""

    def __init__(self, torus, alpha, I, J, tf, tfp, ok, note=""):
        self.torus = torus
        self.alpha = alpha
        self.I = I
        self.J = J
        self.tf = tf
        self.tfp = tfp
        self.ok = ok
        self.note = note

    def __repr__(self):
        return ("CheckRecord(ok=%r, I=%r, J=%r)" % (self.ok, self.I, self.J))


def jacquet_mao_check(torus, alpha, pairs=None):
    """Verify J = t(t) I and J = t'(t) I exactly; when t(t) != t'(t) both
    sums must vanish.  Returns a CheckRecord carrying the full witness."""
    I = I_local(torus, alpha)
    J = J_local(torus, alpha, pairs=pairs)
    tf = transfer_factor(torus, alpha, prime=False)
    tfp = transfer_factor(torus, alpha, prime=True)
    ok = (J == tf * I) and (J == tfp * I)
    if tf != tfp:
        ok = ok and (not I) and (not J)
    return CheckRecord(torus, alpha, I, J, tf, tfp, ok)
