"""Exact arithmetic in small finite fields GF(p^m), p an odd prime.

Elements are encoded as integers in range(q): the base-p digits of the
integer are the coefficients of the element in the polynomial basis
1, s, s^2, ... modulo a fixed irreducible polynomial.  The modulus is the
lexicographically first monic irreducible of degree m over GF(p), so a
field is reproducible from (p, m) alone.

Fields here are tiny (q <= a few thousand), so full addition and
multiplication tables are precomputed; element operations are table
lookups.  Tables are built lazily and cached per (p, m).
"""

from __future__ import annotations

import threading


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _poly_mod_mul(a, b, modulus, p):
    """Multiply coefficient lists a, b over GF(p) modulo a monic modulus."""
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    m = len(modulus) - 1
    for k in range(len(prod) - 1, m - 1, -1):
        c = prod[k]
        if c:
            prod[k] = 0
            for j in range(m):
                prod[k - m + j] = (prod[k - m + j] - c * modulus[j]) % p
    return prod[:m] + [0] * (m - len(prod))


def _lex_first_irreducible(p, m):
    """Monic irreducible of degree m over GF(p), first in lex order.

    Lex order compares the coefficient tuple (c_{m-1}, ..., c_1, c_0) with
    integer coefficients in 0..p-1.  Irreducibility is tested by checking
    that x^(p^k) == x mod f has no fixed subfield of proper degree, i.e.
    gcd(f, x^(p^k) - x) trivial for k < m and x^(p^m) == x.
    """
    if m == 1:
        return [0, 1]

    def powmod_x(e, modulus):
        # x^e mod modulus by square and multiply over GF(p)
        result = [1] + [0] * (m - 1)
        base = ([0, 1] + [0] * (m - 2))[:m]
        while e:
            if e & 1:
                result = _poly_mod_mul(result, base, modulus, p)
            base = _poly_mod_mul(base, base, modulus, p)
            e >>= 1
        return result

    def gcd_poly(a, b):
        a, b = list(a), list(b)
        while any(b):
            while a and a[-1] == 0:
                a.pop()
            while b and b[-1] == 0:
                b.pop()
            if not b:
                break
            if len(a) < len(b):
                a, b = b, a
                continue
            inv = pow(b[-1], p - 2, p)
            shift = len(a) - len(b)
            c = (a[-1] * inv) % p
            for j in range(len(b)):
                a[shift + j] = (a[shift + j] - c * b[j]) % p
            a.pop()
        while a and a[-1] == 0:
            a.pop()
        return a

    def is_irreducible(modulus):
        xq = powmod_x(p ** m, modulus)
        xx = [0, 1] + [0] * (m - 2)
        if xq[: len(xx)] != xx or any(xq[len(xx):]):
            return False
        for k in range(1, m):
            if m % k:
                continue
            xk = powmod_x(p ** k, modulus)
            diff = [(xk[j] - (1 if j == 1 else 0)) % p for j in range(m)]
            g = gcd_poly(modulus, diff)
            if len(g) != 1:
                return False
        return True

    for hi in range(p ** m):
        # hi encodes (c_{m-1}, ..., c_0) in lex order, most significant first
        digits = []
        t = hi
        for _ in range(m):
            digits.append(t % p)
            t //= p
        digits.reverse()  # digits = [c_{m-1}, ..., c_0]
        modulus = list(reversed(digits)) + [1]  # low-to-high, monic
        if is_irreducible(modulus):
            return modulus
    raise RuntimeError("no irreducible polynomial found")  # pragma: no cover


class FiniteField:
    """GF(p^m) with table-driven arithmetic; do not construct directly, use GF()."""

    def __init__(self, p, m):
        if not _is_prime(p) or p == 2:
            raise ValueError("characteristic must be an odd prime, got %r" % (p,))
        if m < 1:
            raise ValueError("extension degree must be >= 1")
        self.p = p
        self.m = m
        self.q = p ** m
        self.modulus = _lex_first_irreducible(p, m)
        self._build_tables()
        self._embeddings = {}

    def _build_tables(self):
        p, m, q = self.p, self.m, self.q

        def decode(i):
            digits = []
            for _ in range(m):
                digits.append(i % p)
                i //= p
            return digits

        def encode(coeffs):
            v = 0
            for c in reversed(coeffs[:m]):
                v = v * p + (c % p)
            return v

        self._decode, self._encode = decode, encode
        self.add_table = [[encode([(x + y) % p for x, y in zip(decode(i), decode(j))])
                           for j in range(q)] for i in range(q)]
        self.neg_table = [encode([(-x) % p for x in decode(i)]) for i in range(q)]
        self.mul_table = [[encode(_poly_mod_mul(decode(i), decode(j), self.modulus, p))
                           for j in range(q)] for i in range(q)]
        self.inv_table = [0] * q
        for i in range(1, q):
            row = self.mul_table[i]
            self.inv_table[i] = row.index(1)
        # Frobenius x -> x^p as a permutation
        self.frob_table = [self._pow_int(i, p) for i in range(q)]

    def _pow_int(self, i, e):
        r = 1
        while e:
            if e & 1:
                r = self.mul_table[r][i]
            i = self.mul_table[i][i]
            e >>= 1
        return r

    # -- element constructors -------------------------------------------------

    def __call__(self, value):
        if isinstance(value, FieldElem):
            if value.field is self:
                return value
            raise ValueError("field mismatch")
        return FieldElem(self, value % self.p)

    def elem(self, idx):
        return FieldElem(self, idx % self.q if idx >= self.q or idx < 0 else idx)

    def from_coeffs(self, coeffs):
        return FieldElem(self, self._encode(list(coeffs)))

    def zero(self):
        return FieldElem(self, 0)

    def one(self):
        return FieldElem(self, 1)

    def gen(self):
        """The class of s (a root of the modulus); equals 1 when m == 1."""
        return FieldElem(self, 1 if self.m == 1 else self.p)

    def elements(self):
        return [FieldElem(self, i) for i in range(self.q)]

    def units(self):
        return [FieldElem(self, i) for i in range(1, self.q)]

    def __repr__(self):
        return "GF(%d^%d)" % (self.p, self.m) if self.m > 1 else "GF(%d)" % self.p

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.m) == (other.p, other.m)

    def __hash__(self):
        return hash((self.p, self.m))

    # -- subfield embedding ---------------------------------------------------

    def embedding_from(self, sub):
        """Return the field embedding GF(p^k) -> self as an index table.

        Requires p equal and k | m.  The embedding sends the subfield
        generator to a root of the subfield modulus found in self; the
        chosen root is the one with the smallest index, so the embedding
        is deterministic.
        """
        key = (sub.p, sub.m)
        if key in self._embeddings:
            return self._embeddings[key]
        if sub.p != self.p or self.m % sub.m:
            raise ValueError("no embedding %r -> %r" % (sub, self))
        if sub.m == self.m:
            table = list(range(self.q))
            self._embeddings[key] = table
            return table
        # image of the subfield generator: smallest root of sub.modulus here
        root = None
        for cand in range(self.q):
            acc = 0
            for c in reversed(sub.modulus):
                acc = self.add_table[self.mul_table[acc][cand]][c % self.p]
            if acc == 0:
                root = cand
                break
        if root is None:  # pragma: no cover
            raise RuntimeError("modulus has no root in the extension")
        table = [0] * sub.q
        for i in range(sub.q):
            digits = sub._decode(i)
            acc = 0
            for c in reversed(digits):
                acc = self.add_table[self.mul_table[acc][root]][c % self.p]
            table[i] = acc
        self._embeddings[key] = table
        return table

    def trace_to(self, sub, idx):
        """Trace from self down to the subfield sub, returned as a sub-index."""
        d = self.m // sub.m
        qs = sub.q
        acc = 0
        x = idx
        for _ in range(d):
            acc = self.add_table[acc][x]
            x = self._pow_int(x, qs)
        table = self.embedding_from(sub)
        return table.index(acc)

    def norm_to(self, sub, idx):
        d = self.m // sub.m
        qs = sub.q
        acc = 1
        x = idx
        for _ in range(d):
            acc = self.mul_table[acc][x]
            x = self._pow_int(x, qs)
        table = self.embedding_from(sub)
        return table.index(acc)


class FieldElem:
    """An element of a FiniteField, identified by its integer index."""

    __slots__ = ("field", "idx")

    def __init__(self, field, idx):
        self.field = field
        self.idx = idx

    def _coerce(self, other):
        if isinstance(other, FieldElem):
            if other.field is not self.field and other.field != self.field:
                raise ValueError("field mismatch: %r vs %r" % (self.field, other.field))
            return other.idx
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def __add__(self, other):
        j = self._coerce(other)
        if j is NotImplemented:
            return NotImplemented
        return FieldElem(self.field, self.field.add_table[self.idx][j])

    __radd__ = __add__

    def __neg__(self):
        return FieldElem(self.field, self.field.neg_table[self.idx])

    def __sub__(self, other):
        j = self._coerce(other)
        if j is NotImplemented:
            return NotImplemented
        return FieldElem(self.field, self.field.add_table[self.idx][self.field.neg_table[j]])

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        j = self._coerce(other)
        if j is NotImplemented:
            return NotImplemented
        return FieldElem(self.field, self.field.mul_table[self.idx][j])

    __rmul__ = __mul__

    def inv(self):
        if self.idx == 0:
            raise ZeroDivisionError("inverse of zero in %r" % (self.field,))
        return FieldElem(self.field, self.field.inv_table[self.idx])

    def __truediv__(self, other):
        j = self._coerce(other)
        if j is NotImplemented:
            return NotImplemented
        if j == 0:
            raise ZeroDivisionError("division by zero in %r" % (self.field,))
        return FieldElem(self.field, self.field.mul_table[self.idx][self.field.inv_table[j]])

    def __pow__(self, e):
        if e < 0:
            return self.inv() ** (-e)
        return FieldElem(self.field, self.field._pow_int(self.idx, e))

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.field == other.field and self.idx == other.idx
        if isinstance(other, int):
            return self.idx == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.m, self.idx))

    def __bool__(self):
        return self.idx != 0

    def frobenius(self):
        return FieldElem(self.field, self.field.frob_table[self.idx])

    def trace_to_base(self):
        """Trace down to the prime field, as an integer in 0..p-1."""
        F = self.field
        acc, x = 0, self.idx
        for _ in range(F.m):
            acc = F.add_table[acc][x]
            x = F.frob_table[x]
        return acc

    def norm_to_base(self):
        """Norm down to the prime field, as an integer in 0..p-1."""
        F = self.field
        acc, x = 1, self.idx
        for _ in range(F.m):
            acc = F.mul_table[acc][x]
            x = F.frob_table[x]
        return acc

    def is_square(self):
        if self.idx == 0:
            return True
        return self.field._pow_int(self.idx, (self.field.q - 1) // 2) == 1

    def coeffs(self):
        return tuple(self.field._decode(self.idx))

    def __repr__(self):
        if self.field.m == 1:
            return "%d" % self.idx
        return "GF(%d^%d):%s" % (self.field.p, self.field.m, self.coeffs())


_field_cache = {}
_field_lock = threading.Lock()


def GF(p, m=1):
    """The finite field GF(p^m) (cached; p odd prime)."""
    key = (p, m)
    with _field_lock:
        if key not in _field_cache:
            _field_cache[key] = FiniteField(p, m)
        return _field_cache[key]


def GFq(q):
    """GF(q) for a prime power q with odd characteristic."""
    for p in range(3, q + 1, 2):
        if _is_prime(p):
            m = 0
            t = q
            while t % p == 0:
                t //= p
                m += 1
            if t == 1 and m >= 1:
                return GF(p, m)
    raise ValueError("%r is not an odd prime power" % (q,))
