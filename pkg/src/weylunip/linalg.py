"""Exact linear algebra over the rationals and prime fields.

Everything here is exact: rationals are `fractions.Fraction`, elements of
F_p are ints in [0, p).  Matrices are lists (or tuples) of rows.  No
floating point is used anywhere in the package.
"""

import itertools
from fractions import Fraction


class RationalField:
    """The field of rationals, elements represented as Fraction."""

    characteristic = 0

    def __call__(self, a):
        return Fraction(a)

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def inv(self, a):
        return 1 / Fraction(a)

    def elements(self):
        raise ValueError("rationals are not enumerable")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """F_p, elements represented as ints in [0, p)."""

    def __init__(self, p):
        assert p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1)), p
        self.p = p
        self.characteristic = p

    def __call__(self, a):
        if isinstance(a, Fraction):
            return a.numerator * pow(a.denominator, self.p - 2, self.p) % self.p
        return int(a) % self.p

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1 % self.p

    def inv(self, a):
        a %= self.p
        assert a, "division by zero"
        return pow(a, self.p - 2, self.p)

    def elements(self):
        return range(self.p)

    def __repr__(self):
        return "GF(%d)" % self.p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


QQ = RationalField()
_GF_CACHE = {}


def GF(p):
    if p not in _GF_CACHE:
        _GF_CACHE[p] = PrimeField(p)
    return _GF_CACHE[p]


# ----------------------------------------------------------------------
# matrix utilities (field-parametrized, rows of rows)

def mat(F, rows):
    return [[F(x) for x in row] for row in rows]


def mat_identity(F, n):
    return [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]


def mat_copy(A):
    return [list(row) for row in A]


def mat_freeze(A):
    return tuple(tuple(row) for row in A)


def mat_mul(F, A, B):
    n, m, k = len(A), len(B[0]), len(B)
    assert len(A[0]) == k
    Bt = list(zip(*B))
    if F.characteristic:
        p = F.p
        return [[sum(a * b for a, b in zip(row, col)) % p for col in Bt] for row in A]
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def mat_vec(F, A, v):
    if F.characteristic:
        p = F.p
        return [sum(a * b for a, b in zip(row, v)) % p for row in A]
    return [sum(a * b for a, b in zip(row, v)) for row in A]


def mat_add(F, A, B):
    Z = [[F(a + b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]
    return Z


def mat_sub(F, A, B):
    return [[F(a - b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(F, c, A):
    return [[F(c * a) for a in row] for row in A]


def mat_transpose(A):
    return [list(col) for col in zip(*A)]


def mat_pow(F, A, k):
    n = len(A)
    R = mat_identity(F, n)
    B = mat_copy(A)
    while k:
        if k & 1:
            R = mat_mul(F, R, B)
        B = mat_mul(F, B, B)
        k >>= 1
    return R


def is_zero_matrix(A):
    return all(not x for row in A for x in row)


def _rref(F, A):
    """Row reduce in place; returns (reduced rows, pivot column list)."""
    A = mat_copy(A)
    rows = len(A)
    cols = len(A[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if A[i][c]), None)
        if pr is None:
            continue
        A[r], A[pr] = A[pr], A[r]
        inv = F.inv(A[r][c])
        A[r] = [F(x * inv) for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [F(x - f * y) for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return A, pivots


def mat_rank(F, A):
    if not A:
        return 0
    return len(_rref(F, A)[1])


def mat_rref(F, A):
    return _rref(F, A)


def mat_nullspace(F, A):
    """Basis (list of vectors) of the right nullspace of A."""
    if not A:
        return []
    cols = len(A[0])
    R, pivots = _rref(F, A)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [F.zero] * cols
        v[fc] = F.one
        for r, pc in enumerate(pivots):
            v[pc] = F(-R[r][fc])
        basis.append(v)
    return basis


def mat_inv(F, A):
    n = len(A)
    aug = [list(A[i]) + list(mat_identity(F, n)[i]) for i in range(n)]
    R, pivots = _rref(F, aug)
    assert pivots == list(range(n)), "matrix not invertible"
    return [row[n:] for row in R]


def mat_det(F, A):
    A = mat_copy(A)
    n = len(A)
    det = F.one
    for c in range(n):
        pr = next((i for i in range(c, n) if A[i][c]), None)
        if pr is None:
            return F.zero
        if pr != c:
            A[c], A[pr] = A[pr], A[c]
            det = F(-det)
        det = F(det * A[c][c])
        inv = F.inv(A[c][c])
        for i in range(c + 1, n):
            if A[i][c]:
                f = F(A[i][c] * inv)
                A[i] = [F(x - f * y) for x, y in zip(A[i], A[c])]
    return det


def row_space_contains(F, rows, v):
    if not rows:
        return all(not x for x in v)
    return mat_rank(F, rows) == mat_rank(F, list(rows) + [list(v)])


def same_row_space(F, rows1, rows2):
    r1 = mat_rank(F, rows1) if rows1 else 0
    r2 = mat_rank(F, rows2) if rows2 else 0
    return r1 == r2 == mat_rank(F, list(rows1) + list(rows2))


def intersect_row_spaces(F, rows1, rows2):
    """Basis of the intersection of the two row spaces (Zassenhaus)."""
    if not rows1 or not rows2:
        return []
    n = len(rows1[0])
    block = [list(r) + list(r) for r in rows1] + [list(r) + [F.zero] * n for r in rows2]
    R, pivots = _rref(F, block)
    out = []
    for i, row in enumerate(R):
        if i < len(pivots) and pivots[i] >= n:
            out.append(row[n:])
    return out


# ----------------------------------------------------------------------
# characteristic polynomials and cyclotomic factorization

def char_poly(A):
    """Characteristic polynomial det(xI - A) of an integer/rational matrix.

    Returns coefficients [c_0, c_1, ..., c_n] with c_n = 1, via
    Faddeev-LeVerrier (exact, using Fractions internally).
    """
    n = len(A)
    A = [[Fraction(x) for x in row] for row in A]
    M = mat_identity(QQ, n)
    coeffs = [Fraction(1)]  # leading first, reversed at the end
    for k in range(1, n + 1):
        M = mat_mul(QQ, A, M)
        c = -sum(M[i][i] for i in range(n)) / k
        coeffs.append(c)
        for i in range(n):
            M[i][i] += c
    coeffs.reverse()  # now ascending: c_0 ... c_n
    assert all(c.denominator == 1 for c in coeffs)
    return [int(c) for c in coeffs]


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def poly_divmod(a, b):
    """Exact division of integer polynomials with monic-ish divisor."""
    a = [Fraction(x) for x in a]
    b = [Fraction(x) for x in b]
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    while len(a) >= len(b) and any(a):
        while a and not a[-1]:
            a.pop()
        if len(a) < len(b):
            break
        f = a[-1] / b[-1]
        d = len(a) - len(b)
        q[d] = f
        for i, x in enumerate(b):
            a[i + d] -= f * x
        a.pop()
    while a and not a[-1]:
        a.pop()
    return q, a


def poly_eval(a, x):
    v = 0
    for c in reversed(a):
        v = v * x + c
    return v


_CYCLO_CACHE = {1: [-1, 1]}


def cyclotomic(d):
    """Coefficients (ascending) of the d-th cyclotomic polynomial."""
    if d not in _CYCLO_CACHE:
        num = [0] * d + [1]
        num[0] = -1  # x^d - 1
        den = [1]
        for e in range(1, d):
            if d % e == 0:
                den = poly_mul(den, cyclotomic(e))
        q, r = poly_divmod(num, den)
        assert not r
        _CYCLO_CACHE[d] = [int(c) for c in q]
    return _CYCLO_CACHE[d]


def factor_cyclotomic(coeffs, max_d=1000):
    """Factor a monic integer polynomial as a product of cyclotomics.

    Returns a signature tuple ((d, multiplicity), ...) sorted by d.
    Raises ValueError if a non-cyclotomic factor remains (which cannot
    happen for the characteristic polynomial of a finite-order matrix and
    would indicate a bug upstream).
    """
    rem = list(coeffs)
    deg = len(rem) - 1
    sig = {}
    d = 1
    while len(rem) > 1 and d <= max_d:
        phi = cyclotomic(d)
        if len(phi) <= len(rem):
            q, r = poly_divmod(rem, phi)
            while not r and len(rem) > 1:
                sig[d] = sig.get(d, 0) + 1
                rem = [int(x) for x in q]
                if len(phi) > len(rem):
                    break
                q, r = poly_divmod(rem, phi)
        d += 1
    if len(rem) != 1 or rem[0] != 1:
        raise ValueError("non-cyclotomic factor in %s (degree %d)" % (coeffs, deg))
    return tuple(sorted(sig.items()))


def signature_degree(sig):
    return sum(m * euler_phi(d) for d, m in sig)


def euler_phi(d):
    out = d
    x, q = d, 2
    while q * q <= x:
        if x % q == 0:
            out -= out // q
            while x % q == 0:
                x //= q
        q += 1
    if x > 1:
        out -= out // x
    return out


def format_signature(sig):
    """Render ((2,2),(6,1)) as 'F2^2.F6' style text: '2.2.6'."""
    items = []
    for d, m in sig:
        items.extend([str(d)] * m)
    return ".".join(items)


def parse_signature(text):
    counts = {}
    for part in text.split("."):
        d = int(part)
        counts[d] = counts.get(d, 0) + 1
    return tuple(sorted(counts.items()))


# ----------------------------------------------------------------------
# square classes (for normalizations that hold up to squares over
# non-closed fields)

def _squarefree_part(m):
    assert m != 0
    sign = -1 if m < 0 else 1
    m = abs(m)
    out = 1
    q = 2
    while q * q <= m:
        e = 0
        while m % q == 0:
            m //= q
            e += 1
        if e % 2:
            out *= q
        q += 1
    return sign * out * m


def square_class_rep(F, val):
    """Canonical representative of the square class of val (nonzero).

    Returns (rep, c) with val == rep * c**2.  Over the rationals rep is the
    signed squarefree integer part; over F_p rep is 1 for squares and the
    smallest non-residue otherwise (always 1 for p = 2).
    """
    assert val, "zero has no square class"
    if F.characteristic == 0:
        v = Fraction(val)
        s = _squarefree_part(v.numerator * v.denominator)
        c2 = v / s
        num, den = c2.numerator, c2.denominator
        rn, rd = _isqrt_exact(num), _isqrt_exact(den)
        assert rn is not None and rd is not None
        return Fraction(s), Fraction(rn, rd)
    p = F.p
    val %= p
    if p == 2:
        return 1, val
    r = _modp_sqrt(val, p)
    if r is not None:
        return 1, r
    ns = next(a for a in range(2, p) if _modp_sqrt(a, p) is None)
    r = _modp_sqrt(val * F.inv(ns) % p, p)
    assert r is not None
    return ns, r


def _isqrt_exact(m):
    r = int(m**0.5)
    for x in (r - 1, r, r + 1, r + 2):
        if x >= 0 and x * x == m:
            return x
    lo, hi = 0, m + 1
    while lo < hi:
        mid = (lo + hi) // 2
        if mid * mid < m:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo * lo == m else None


def _modp_sqrt(a, p):
    a %= p
    if a == 0:
        return 0
    if p == 2:
        return a
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    for x in range(1, p):
        if x * x % p == a:
            return x
    return None
