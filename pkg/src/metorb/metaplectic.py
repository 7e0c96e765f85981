"""Bruhat decomposition, the Kazhdan-Patterson 2-cocycle (tame-symbol
version), and the splitting function kappa on GL_r of the integers by
three independent algorithms.

Matrices are plain lists of lists of RatFunc over the residue field of a
completion; the local uniformizer is the RatFunc variable.  The cocycle
chi takes values in the residue field's units; its sign is zeta(chi).

The cocycle is evaluated by a finite recursion grounded in the closed
base rules:

  T1  chi(t, t') = prod_{i<j} {t_i, t'_j}
  T2  chi(w, w') = 1 for permutation matrices
  T3  chi(t, w) = 1
  T4  chi(s_l, t) = {t_l, t_{l+1}}^-1 {-1, t_l/t_{l+1}} {-1, det t}
  T5  chi(n g, g' n') = chi(g, g') for upper unipotent n, n'
  T6  chi(t, g) = chi(t, B(g))
  T7  chi(s_l, g) = chi(B(s_l g) B(g)^-1, B(g))

together with the 2-cocycle identity; B(g) is the monomial Bruhat factor.
"""

from __future__ import annotations

from .algebra.fields import FieldElem
from .algebra.localfield import RatFunc
from .algebra.poly import Poly
from .symbols import tame_symbol


# -- small matrix helpers -----------------------------------------------------


def mat_id(F, r):
    one, zero = RatFunc.one(F), RatFunc.zero(F)
    return [[one if i == j else zero for j in range(r)] for i in range(r)]


def mat_mul(A, B):
    r, m, c = len(A), len(B), len(B[0])
    out = []
    for i in range(r):
        Ai = A[i]
        row = []
        for j in range(c):
            acc = None
            for k in range(m):
                if Ai[k]:
                    term = Ai[k] * B[k][j]
                    acc = term if acc is None else acc + term
            row.append(acc if acc is not None else RatFunc.zero(Ai[0].field))
        out.append(row)
    return out


def mat_transpose(A):
    r = len(A)
    return [[A[j][i] for j in range(r)] for i in range(r)]


def mat_det(A):
    r = len(A)
    if r == 1:
        return A[0][0]
    if r == 2:
        return A[0][0] * A[1][1] - A[0][1] * A[1][0]
    if r == 3:
        return (A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1])
                - A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0])
                + A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0]))
    acc = None
    for j in range(r):
        if A[0][j]:
            minor = [row[:j] + row[j + 1:] for row in A[1:]]
            term = A[0][j] * mat_det(minor)
            if j % 2:
                term = -term
            acc = term if acc is None else acc + term
    return acc if acc is not None else RatFunc.zero(A[0][0].field)


def perm_matrix(F, sigma):
    """The matrix W with W[sigma[j]][j] = 1 (columns e_j -> e_{sigma[j]})."""
    r = len(sigma)
    zero, one = RatFunc.zero(F), RatFunc.one(F)
    W = [[zero] * r for _ in range(r)]
    for j, i in enumerate(sigma):
        W[i][j] = one
    return W


def w0_perm(r):
    return tuple(r - 1 - j for j in range(r))


def perm_compose(a, b):
    """(a o b)[j] = a[b[j]], matching W(a) W(b) = W(a o b)."""
    return tuple(a[b[j]] for j in range(len(a)))


def perm_inverse(a):
    out = [0] * len(a)
    for j, i in enumerate(a):
        out[i] = j
    return tuple(out)


def perm_length(a):
    n = len(a)
    return sum(1 for i in range(n) for j in range(i + 1, n) if a[i] > a[j])


def reduced_word(sigma):
    """Lexicographically first reduced word [l1, l2, ...] with
    sigma = s_{l1} s_{l2} ... (s_l the transposition (l, l+1), 0-based)."""
    sigma = tuple(sigma)
    word = []
    n = len(sigma)
    while perm_length(sigma) > 0:
        inv = perm_inverse(sigma)
        for l in range(n - 1):
            if inv[l] > inv[l + 1]:
                word.append(l)
                s = list(range(n))
                s[l], s[l + 1] = l + 1, l
                sigma = perm_compose(tuple(s), sigma)
                break
    return word


def simple_perm(r, l):
    s = list(range(r))
    s[l], s[l + 1] = l + 1, l
    return tuple(s)


class Monomial:
    """A monomial matrix t * W(sigma): diagonal entries t (as RatFunc) times
    a permutation matrix."""

    __slots__ = ("t", "sigma")

    def __init__(self, t, sigma):
        self.t = list(t)
        self.sigma = tuple(sigma)

    def matrix(self, F):
        W = perm_matrix(F, self.sigma)
        return [[self.t[i] * W[i][j] for j in range(len(self.sigma))]
                for i in range(len(self.sigma))]

    def mul(self, other):
        # (t W(a)) (t' W(b)) = (t * a(t')) W(a o b) with a(t')_i = t'_{a^-1(i)}
        ainv = perm_inverse(self.sigma)
        t = [self.t[i] * other.t[ainv[i]] for i in range(len(self.t))]
        return Monomial(t, perm_compose(self.sigma, other.sigma))

    def inv(self):
        # (t W(a))^-1 = t~ W(a^-1) with t~_i = 1/t_{a(i)}
        ainv = perm_inverse(self.sigma)
        t = [self.t[self.sigma[i]].inv() for i in range(len(self.t))]
        return Monomial(t, ainv)

    def torus_part(self):
        return self.t

    def is_torus(self):
        return all(self.sigma[j] == j for j in range(len(self.sigma)))


class BruhatData:
    """g = n . (t W(sigma)) . nprime with n, nprime upper unipotent."""

    __slots__ = ("n", "t", "sigma", "nprime", "ntilde")

    def __init__(self, n, t, sigma, nprime, ntilde=None):
        self.n = n
        self.t = list(t)
        self.sigma = tuple(sigma)
        self.nprime = nprime
        self.ntilde = ntilde

    def monomial(self):
        return Monomial(self.t, self.sigma)

    def middle_matrix(self, F):
        return self.monomial().matrix(F)

    def reconstruct(self, F):
        return mat_mul(mat_mul(self.n, self.middle_matrix(F)), self.nprime)


def bruhat(g):
    """Bruhat decomposition g = n (t W) n' by exact Gaussian elimination.

    The permutation is forced column by column: in column j the pivot is
    the lowest not-yet-used row with a nonzero entry among surviving rows;
    left row operations from above and right column operations to the
    later columns clear the rest.  Raises ZeroDivisionError on singular g.
    """
    r = len(g)
    F = g[0][0].field
    h = [row[:] for row in g]
    n_acc = mat_id(F, r)       # accumulates n (left unipotent)
    np_acc = mat_id(F, r)      # accumulates n' (right unipotent)
    used_rows = [False] * r
    sigma = [0] * r
    for j in range(r):
        piv = None
        for i in range(r - 1, -1, -1):
            if not used_rows[i] and h[i][j]:
                piv = i
                break
        if piv is None:
            raise ZeroDivisionError("singular matrix in Bruhat decomposition")
        sigma[j] = piv
        used_rows[piv] = True
        # clear above the pivot in this column (row_i -= c row_piv, i < piv)
        for i in range(piv):
            if not used_rows[i] and h[i][j]:
                c = h[i][j] / h[piv][j]
                for k in range(r):
                    h[i][k] = h[i][k] - c * h[piv][k]
                # n = n * E(i, piv; c): record the inverse operation
                for k in range(r):
                    n_acc[k][piv] = n_acc[k][piv] + n_acc[k][i] * c
        # clear to the right of the pivot in this row (col_k -= c col_j, k > j)
        for k in range(j + 1, r):
            if h[piv][k]:
                c = h[piv][k] / h[piv][j]
                for i in range(r):
                    h[i][k] = h[i][k] - h[i][j] * c
                for i in range(r):
                    np_acc[j][i] = np_acc[j][i] + c * np_acc[k][i]
    t = [None] * r
    for j in range(r):
        t[sigma[j]] = h[sigma[j]][j]
    return BruhatData(n_acc, t, tuple(sigma), np_acc)


# -- the cocycle --------------------------------------------------------------


def _sym(f, g):
    return tame_symbol(f, g)


def _chi_tt(t, tp):
    """T1: chi(t, t') = prod_{i<j} {t_i, t'_j}."""
    F = t[0].field
    acc = F.one()
    r = len(t)
    for i in range(r):
        for j in range(i + 1, r):
            acc = acc * _sym(t[i], tp[j])
    return acc


def _chi_alpha_torus(l, t):
    """T4 for the simple transposition s_l (0-based l)."""
    F = t[0].field
    det = t[0]
    for x in t[1:]:
        det = det * x
    minus1 = RatFunc.const(t[0].field, -1)
    val = _sym(t[l], t[l + 1]).inv()
    val = val * _sym(minus1, t[l] / t[l + 1])
    val = val * _sym(minus1, det)
    return val


def _chi_alpha_monomial(l, m):
    """chi(s_l, monomial) reduces to T4 on the torus part."""
    return _chi_alpha_torus(l, m.t)


def _chi_w_monomial(w_sigma, m):
    """chi(W(sigma), m) for a permutation times a monomial m."""
    if perm_length(w_sigma) == 0:
        return m.t[0].field.one()
    word = reduced_word(w_sigma)
    F = m.t[0].field
    acc = F.one()
    rest = w_sigma
    for l in word:
        rest = perm_compose(simple_perm(len(w_sigma), l), rest)
        tail = Monomial([RatFunc.one(F)] * len(w_sigma), rest).mul(m)
        acc = acc * _chi_alpha_monomial(l, tail)
    return acc


def _chi_mono_mono(m, mp):
    """chi(m, m') for monomial matrices, via peeling m = t W."""
    F = m.t[0].field
    val = _chi_w_monomial(m.sigma, mp)
    wm = Monomial([RatFunc.one(F)] * len(m.t), m.sigma).mul(mp)
    val = val * _chi_tt(m.t, wm.t)
    return val


def _monomial_of(g):
    b = bruhat(g)
    return b.monomial(), b


def _chi_alpha_general(l, g):
    """T7: chi(s_l, g) = chi(B(s_l g) B(g)^-1, B(g))."""
    F = g[0][0].field
    r = len(g)
    mg, _ = _monomial_of(g)
    sg = [g[l + 1][:], g[l][:]]
    ag = [row[:] for row in g]
    ag[l], ag[l + 1] = sg[0], sg[1]
    mag, _ = _monomial_of(ag)
    return _chi_mono_mono(mag.mul(mg.inv()), mg)


def _is_monomial(g):
    r = len(g)
    for i in range(r):
        nz = [j for j in range(r) if g[i][j]]
        if len(nz) != 1:
            return False
    return True


def _as_monomial(g):
    r = len(g)
    sigma = [0] * r
    t = [None] * r
    for j in range(r):
        i = next(i for i in range(r) if g[i][j])
        sigma[j] = i
        t[i] = g[i][j]
    return Monomial(t, tuple(sigma))


def _chi_w_general(w_sigma, h):
    """chi(W(sigma), h) by peeling the reduced word of sigma."""
    F = h[0][0].field
    if perm_length(w_sigma) == 0:
        return F.one()
    word = reduced_word(w_sigma)
    acc = F.one()
    rest = w_sigma
    r = len(w_sigma)
    for l in word:
        rest = perm_compose(simple_perm(r, l), rest)
        g2 = mat_mul(perm_matrix(F, rest), h)
        if _is_monomial(g2):
            acc = acc * _chi_alpha_monomial(l, _as_monomial(g2))
        else:
            acc = acc * _chi_alpha_general(l, g2)
    return acc


def chi(g1, g2):
    """The Kazhdan-Patterson cocycle chi(g1, g2), valued in the residue
    field's units.  Both matrices must be invertible over the local field."""
    F = g1[0][0].field
    b1 = bruhat(g1)
    h = mat_mul(b1.nprime, g2)
    # chi(g1, g2) = chi(t1 W(sigma1), n2 g2)
    val = _chi_w_general(b1.sigma, h)
    wh = mat_mul(perm_matrix(F, b1.sigma), h)
    bh = bruhat(wh)
    val = val * _chi_tt(b1.t, bh.t)
    return val


def cocycle_defect(g1, g2, g3):
    """chi(g2,g3) chi(g1 g2, g3)^-1 chi(g1, g2 g3) chi(g1, g2)^-1; equals 1."""
    a = chi(g2, g3)
    b = chi(mat_mul(g1, g2), g3)
    c = chi(g1, mat_mul(g2, g3))
    d = chi(g1, g2)
    return a * b.inv() * c * d.inv()


# -- kappa --------------------------------------------------------------------


def kappa_kubota(g):
    """Kubota's closed form for 2x2 integral matrices with unit determinant:
    kappa = {c, d/det g} when the lower-left entry c is a nonzero nonunit,
    and 1 otherwise."""
    if len(g) != 2:
        raise ValueError("kappa_kubota is the 2x2 closed form")
    _check_integral_invertible(g)
    c = g[1][0]
    if not c or c.is_unit():
        return g[0][0].field.one()
    d = g[1][1]
    return _sym(c, d / mat_det(g))


def _check_integral_invertible(g):
    for row in g:
        for x in row:
            if x and x.valuation() < 0:
                raise ValueError("matrix is not integral")
    if not mat_det(g).is_unit():
        raise ValueError("matrix is not invertible over the integers")


def _factor_generators(g):
    """Factor integral g with unit determinant into generators in
    T(O), W, and integral elementary matrices.

    Gaussian elimination over O with unit pivots: eliminate below-diagonal
    entries column by column, permuting first when the diagonal entry is
    not a unit (tie-break: smallest row index).  Returns a list of
    (kind, data) whose matrices multiply, in order, to g; kind is "perm"
    (a transposition), "elem" ((i, j, c): Id + c e_ij, c integral) or
    "torus" (unit diagonal).
    """
    r = len(g)
    h = [row[:] for row in g]
    left = []   # ops applied on the left, in application order
    right = []  # ops applied on the right, in application order
    for j in range(r):
        piv = None
        for i in range(j, r):
            if h[i][j].is_unit():
                piv = i
                break
        if piv is None:
            raise ValueError("no unit pivot; matrix not invertible over O")
        if piv != j:
            tau = list(range(r))
            tau[j], tau[piv] = piv, j
            h[j], h[piv] = h[piv], h[j]
            left.append(("perm", tuple(tau)))
        pivval = h[j][j]
        for i in range(j + 1, r):
            if h[i][j]:
                c = h[i][j] / pivval
                for k in range(r):
                    h[i][k] = h[i][k] - c * h[j][k]
                left.append(("elem", (i, j, c)))  # applied Id - c e_ij
        for k in range(j + 1, r):
            if h[j][k]:
                c = h[j][k] / pivval
                for i in range(r):
                    h[i][k] = h[i][k] - h[i][j] * c
                right.append(("elem", (j, k, c)))  # applied Id - c e_jk on the right
    diag = tuple(h[i][i] for i in range(r))
    # (L_m ... L_1) g (R_1 ... R_k) = D, so
    # g = L_1^-1 ... L_m^-1 . D . R_k^-1 ... R_1^-1
    gens = []
    for kind, data in left:
        gens.append((kind, data))  # elem inverse flips -c back to +c; perm self-inverse
    gens.append(("torus", diag))
    for kind, data in reversed(right):
        gens.append((kind, data))
    return gens


def _expand_generator(F, r, kind, data):
    """Expand one generator into kappa-trivial factors (a below-diagonal
    elementary is rewritten as w e w with w a transposition)."""
    if kind == "perm":
        return [perm_matrix(F, data)]
    if kind == "torus":
        m = mat_id(F, r)
        for i, d in enumerate(data):
            m[i][i] = d
        return [m]
    i, j, c = data
    if i < j:
        m = mat_id(F, r)
        m[i][j] = c
        return [m]
    tau = list(range(r))
    tau[i], tau[j] = j, i
    W = perm_matrix(F, tuple(tau))
    e = mat_id(F, r)
    e[j][i] = c
    return [W, e, W]


def kappa_general(g):
    """kappa on GL_r(O) from its defining relations: factor g into
    generators that kappa kills (torus units, permutations, integral
    elementary unipotents) and fold the cocycle along the product.

    kappa(prefix * s) = kappa(prefix) * chi(prefix, s) since kappa(s) = 1.
    """
    _check_integral_invertible(g)
    r = len(g)
    F = g[0][0].field
    mats = []
    for kind, data in _factor_generators(g):
        mats.extend(_expand_generator(F, r, kind, data))
    acc = F.one()
    prefix = None
    for s in mats:
        if prefix is None:
            prefix = s
            continue
        acc = acc * chi(prefix, s)
        prefix = mat_mul(prefix, s)
    return acc


# -- the companion-locus polynomial formula ------------------------------------


def _poly_minor_det(rows):
    """Determinant of a small matrix of Poly entries."""
    r = len(rows)
    if r == 0:
        return None
    F = rows[0][0].field
    if r == 1:
        return rows[0][0]
    if r == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    acc = Poly.zero(F)
    for j in range(r):
        minor = [row[:j] + row[j + 1:] for row in rows[1:]]
        term = rows[0][j] * _poly_minor_det(minor)
        if j % 2:
            term = -term
        acc = acc + term
    return acc


def companion_invariants(y):
    """a_i(y) = det(s_i(y) + w Id_i) for the leading principal blocks."""
    F = y[0][0].field
    r = len(y)
    x = Poly.x(F)
    out = []
    for i in range(1, r + 1):
        rows = [[Poly.const(F, y[a][b]) + (x if a == b else Poly.zero(F))
                 for b in range(i)] for a in range(i)]
        out.append(_poly_minor_det(rows))
    return out


def kappa_poly(y):
    """kappa of the companion-locus family at a constant matrix y.

    Equals (-1)^(r(r-1)/2) times the determinant of the r x r array whose
    row i lists the coefficients of det(g with row r+1-i and column r
    deleted), g = y + w Id_r.  The sign normalization is pinned by
    agreement with the product of local Kubota values (checked in the
    test suite); the determinant alone reproduces it only up to that
    global sign.
    """
    F = y[0][0].field
    r = len(y)
    x = Poly.x(F)
    g = [[Poly.const(F, y[a][b]) + (x if a == b else Poly.zero(F))
          for b in range(r)] for a in range(r)]
    rows = []
    for i in range(r, 0, -1):
        sub = [row[:r - 1] for idx, row in enumerate(g) if idx != i - 1]
        det = _poly_minor_det(sub) if sub else Poly.one(F)
        coeffs = list(det.coeffs) + [0] * (r - len(det.coeffs))
        rows.append(coeffs[:r])
    # determinant of the coefficient array over the base field
    mat = [[FieldElem(F, c) for c in row] for row in rows]
    val = _field_det(mat)
    if (r * (r - 1) // 2) % 2:
        val = -val
    return val


def _field_det(A):
    r = len(A)
    F = A[0][0].field
    if r == 1:
        return A[0][0]
    if r == 2:
        return A[0][0] * A[1][1] - A[0][1] * A[1][0]
    acc = F.zero()
    for j in range(r):
        if A[0][j].idx:
            minor = [row[:j] + row[j + 1:] for row in A[1:]]
            term = A[0][j] * _field_det(minor)
            if j % 2:
                term = -term
            acc = acc + term
    return acc


def bruhat_minors(y):
    """Closed-form Bruhat data of w0 (y + w Id_r) on the companion locus.

    Returns a BruhatData whose middle factor is w0 t with
    t = diag(a_1, a_2/a_1, ..., a_r/a_{r-1}); entries of n and n' are the
    stated minor ratios of g = y + w Id_r.  Requires all leading principal
    invariants a_i to be nonzero polynomials.
    """
    F = y[0][0].field
    r = len(y)
    x = Poly.x(F)
    g = [[Poly.const(F, y[a][b]) + (x if a == b else Poly.zero(F))
          for b in range(r)] for a in range(r)]

    def minor(rows_idx, cols_idx):
        sub = [[g[a][b] for b in cols_idx] for a in rows_idx]
        if not sub:
            return Poly.one(F)
        return _poly_minor_det(sub)

    a = companion_invariants(y)
    for ai in a[:-1]:
        if ai.is_zero():
            raise ZeroDivisionError("vanishing principal invariant")

    def rf(P, Q):
        return RatFunc(F, P.coeffs, Q.coeffs)

    n = mat_id(F, r)
    for i in range(1, r + 1):
        for j in range(i + 1, r + 1):
            # rows [1, r-j] u {r+1-i}, cols [1, r+1-j], over the principal
            # minor of size r+1-j (all 1-based)
            rows = [x - 1 for x in range(1, r - j + 1)] + [r - i]
            cols = [x - 1 for x in range(1, r + 2 - j)]
            den = minor(range(r + 1 - j), range(r + 1 - j))
            n[i - 1][j - 1] = rf(minor(rows, cols), den)
    nprime = mat_id(F, r)
    for i in range(1, r + 1):
        for j in range(i + 1, r + 1):
            # inverse-of-B entries: det(g_{[1,i],[1,i-1] u {j}}) / det(g_{[1,i],[1,i]})
            rows = list(range(i))
            cols = list(range(i - 1)) + [j - 1]
            nprime[i - 1][j - 1] = rf(minor(rows, cols), minor(range(i), range(i)))
    ntilde = mat_id(F, r)
    for i in range(1, r + 1):
        for j in range(i + 1, r + 1):
            rows = [x - 1 for x in range(1, r + 2 - i) if x != r + 1 - j]
            cols = list(range(r - i))
            val = rf(minor(rows, cols), minor(range(r - i), range(r - i)))
            if (j - i) % 2:
                val = -val
            ntilde[i - 1][j - 1] = val
    # middle factor w0 t = (w0 t w0) W(w0): torus entries reversed
    t = [rf(a[0], Poly.one(F))]
    for i in range(1, r):
        t.append(rf(a[i], a[i - 1]))
    trev = list(reversed(t))
    return BruhatData(n, trev, w0_perm(r), nprime, ntilde=ntilde)
