"""Exact-arithmetic isometry groups: formed spaces, isotropic flags,
relative position of flags, the standard unipotent witnesses attached to
excellent decompositions, Jordan types, and the canonical basis attached
to a pair (flag, isometry) in standard elliptic relative position.

Basis convention for the standard space: columns are ordered
e_1, ..., e_n, (e_0 when kappa = 1), e'_n, ..., e'_1, so that the standard
flag (the identity matrix) is the chain spanned by initial column
segments, with V_i isotropic for i <= n and V_{nu-i} = V_i-perp.
"""

from dataclasses import dataclass
from fractions import Fraction

from .elliptic import is_partition, psi_extended, w_from_partition
from .linalg import (
    intersect_row_spaces,
    mat_copy,
    mat_identity,
    mat_inv,
    mat_mul,
    mat_nullspace,
    mat_rank,
    mat_vec,
    same_row_space,
    square_class_rep,
)
from .weylgroups import signed_cycle_type, to_signed


class FormedSpace:
    """A vector space with a symplectic or quadratic form over an exact
    field (rationals or F_p)."""

    def __init__(self, field, gram, qvals=None, n=None, kappa=None):
        self.field = field
        self.gram = [list(r) for r in gram]
        self.nu = len(gram)
        self.kind = "symplectic" if qvals is None else "quadratic"
        self.qvals = list(qvals) if qvals is not None else None
        self.kappa = kappa if kappa is not None else self.nu % 2
        self.n = n if n is not None else (self.nu - self.kappa) // 2

    @classmethod
    def standard(cls, n, kappa, field, kind):
        nu = 2 * n + kappa
        Z = field.zero
        gram = [[Z] * nu for _ in range(nu)]
        if kind == "symplectic":
            assert kappa == 0
            for i in range(n):
                gram[i][nu - 1 - i] = field.one
                gram[nu - 1 - i][i] = field(-1)
            return cls(field, gram, None, n, kappa)
        assert kind == "quadratic"
        for i in range(n):
            gram[i][nu - 1 - i] = field.one
            gram[nu - 1 - i][i] = field.one
        qvals = [Z] * nu
        if kappa == 1:
            gram[n][n] = field(2)
            qvals[n] = field.one
        return cls(field, gram, qvals, n, kappa)

    # basis index helpers (0-based column indices)
    def e(self, i):
        assert 1 <= i <= self.n
        return i - 1

    def eprime(self, i):
        assert 1 <= i <= self.n
        return self.nu - i

    @property
    def e0(self):
        assert self.kappa == 1
        return self.n

    def bilinear(self, x, y):
        F = self.field
        gy = mat_vec(F, self.gram, y)
        return F(sum(a * b for a, b in zip(x, gy)))

    def quad(self, x):
        assert self.kind == "quadratic"
        F = self.field
        total = F.zero
        for i, xi in enumerate(x):
            if xi:
                total = F(total + xi * xi * self.qvals[i])
                for j in range(i + 1, self.nu):
                    if x[j]:
                        total = F(total + xi * x[j] * self.gram[i][j])
        return total

    def is_isometry(self, M):
        F = self.field
        Mt = [list(col) for col in zip(*M)]
        if mat_mul(F, mat_mul(F, Mt, self.gram), M) != [
            [F(v) for v in row] for row in self.gram
        ]:
            return False
        if self.kind == "quadratic":
            cols = list(zip(*M))
            return all(self.quad(list(c)) == F(q) for c, q in zip(cols, self.qvals))
        return True

    def standard_flag(self):
        return mat_identity(self.field, self.nu)


# ----------------------------------------------------------------------
# flags and relative position

def rel_position(space, A, B):
    """The permutation of [1..nu] measuring the relative position of the
    flags given by the column matrices A (first) and B (second)."""
    F = space.field
    C = mat_mul(F, mat_inv(F, A), B)
    return bruhat_perm(F, C)


def bruhat_perm(F, C):
    """Pivot permutation of an invertible matrix: a_j = row of the lowest
    nonzero entry of column j after leftward elimination."""
    C = mat_copy(C)
    nu = len(C)
    a = [0] * nu
    for j in range(nu):
        i = max(r for r in range(nu) if C[r][j])
        a[j] = i + 1
        inv = F.inv(C[i][j])
        for m in range(j + 1, nu):
            f = F(C[i][m] * inv)
            if f:
                for r in range(nu):
                    C[r][m] = F(C[r][m] - f * C[r][j])
        for r in range(nu):
            if r != i:
                C[r][j] = F.zero
    assert sorted(a) == list(range(1, nu + 1))
    return tuple(a)


def validate_flag(space, A):
    """Full isotropic flag: columns independent, V_i isotropic for i <= n,
    and V_i-perp = V_{nu-i}."""
    F = space.field
    nu, n = space.nu, space.n
    if mat_rank(F, A) != nu:
        return False
    cols = [list(c) for c in zip(*A)]
    for a in range(n):
        if space.kind == "quadratic" and space.quad(cols[a]):
            return False
        for b in range(nu - a - 1):
            if space.bilinear(cols[a], cols[b]):
                return False
    return True


def complete_flag(space, iso_rows):
    """Extend an isotropic chain (rows v_1..v_n, V_i = first i spans) to a
    full flag matrix with V_{nu-i} = V_i-perp."""
    F = space.field
    nu, n = space.nu, space.n
    assert len(iso_rows) == n
    rows = [list(r) for r in iso_rows]
    for i in range(n - 1, -1, -1):
        # V_{nu-i} = perp of V_i; extend the current basis inside it
        if i:
            pair = mat_mul(F, rows[:i], space.gram)
            perp = mat_nullspace(F, pair)
        else:
            perp = [list(r) for r in mat_identity(F, nu)]
        for v in perp:
            if mat_rank(F, rows + [v]) > len(rows):
                rows.append(list(v))
            if len(rows) == nu - i:
                break
        assert len(rows) == nu - i, "flag completion failed"
    A = [[rows[j][i] for j in range(nu)] for i in range(nu)]  # rows -> columns
    assert validate_flag(space, A), "completed chain is not a valid flag"
    return A


# ----------------------------------------------------------------------
# generator matrices

def generator_y(space, h, a):
    """Lower root-group element y_{s_h}(a)."""
    F = space.field
    a = F(a)
    M = mat_identity(F, space.nu)
    n = space.n
    if h < n:
        M[space.e(h + 1)][space.e(h)] = a
        M[space.eprime(h)][space.eprime(h + 1)] = F(-a)
    elif space.kind == "symplectic":
        M[space.eprime(n)][space.e(n)] = F(-a)
    else:
        assert space.kappa == 1
        M[space.e0][space.e(n)] = a
        M[space.eprime(n)][space.e(n)] = F(-a * a)
        M[space.eprime(n)][space.e0] = F(-2 * a)
    return M


def generator_sdot(space, h):
    """Monomial isometry representing the simple reflection s_h."""
    F = space.field
    M = mat_identity(F, space.nu)
    n = space.n
    if h < n:
        i, j = space.e(h), space.e(h + 1)
        M[i][i] = M[j][j] = F.zero
        M[i][j] = M[j][i] = F.one
        i, j = space.eprime(h), space.eprime(h + 1)
        M[i][i] = M[j][j] = F.zero
        M[i][j] = M[j][i] = F.one
    elif space.kind == "symplectic":
        i, j = space.e(n), space.eprime(n)
        M[i][i] = M[j][j] = F.zero
        M[j][i] = F(-1)   # e_n -> -e'_n
        M[i][j] = F.one   # e'_n -> e_n
    else:
        i, j = space.e(n), space.eprime(n)
        M[i][i] = M[j][j] = F.zero
        M[i][j] = M[j][i] = F.one
        M[space.e0][space.e0] = F(-1)
    assert space.is_isometry(M)
    return M


def build_u_w(space, dec, c):
    """The unipotent witness attached to an excellent decomposition: the
    product over blocks of (sdot-prefix) y_center(c_k) (sdot-prefix)^-1."""
    F = space.field
    assert len(c) == len(dec.blocks), "one scalar per block"
    assert all(F(x) for x in c), "block scalars must be nonzero"
    if space.kind == "symplectic":
        assert dec.family == "C"
    else:
        assert dec.family == "B" and space.kappa == 1
    out = mat_identity(F, space.nu)
    for ck, block in zip(c, dec.blocks):
        q = len(block) // 2
        prefix = block[:q]
        center = block[q]
        M = generator_y(space, center, ck)
        for h in reversed(prefix):
            S = generator_sdot(space, h)
            M = mat_mul(F, mat_mul(F, S, M), mat_inv(F, S))
        out = mat_mul(F, out, M)
    return out


# ----------------------------------------------------------------------
# displayed block maps (independent of the product construction)

def oracle_u_w_inverse(space, p):
    """The inverse witness written out block by block: each block acts on
    its own e/e' range (and on e_0 when kappa = 1)."""
    F = space.field
    p = tuple(p)
    assert is_partition(p) and sum(p) == space.n
    mats = []
    lo = 0
    for part in p:
        hi = lo + part  # block occupies e_{lo+1} .. e_{hi}
        M = mat_identity(F, space.nu)
        col = space.e(hi)
        if space.kappa == 1:
            M[space.e0][col] = F.one
        for v in range(1, part + 1):
            M[space.eprime(hi - v + 1)][col] = F((-1) ** v)
        for j in range(lo + 1, hi):
            M[space.e(j + 1)][space.e(j)] = F.one
        for j in range(lo + 1, hi + 1):
            col = space.eprime(j)
            for r in range(lo + 1, j + 1):
                M[space.eprime(r)][col] = F((-1) ** (j - r))
        if space.kappa == 1:
            col = space.e0
            for v in range(1, part + 1):
                M[space.eprime(hi - v + 1)][col] = F(2 * (-1) ** v)
        mats.append(M)
        lo = hi
    out = mat_identity(F, space.nu)
    for M in mats:
        out = mat_mul(F, out, M)
    return out


def xi_vector(space, p):
    """The distinguished anisotropic vector of the odd orthogonal witness
    (kappa = 1, sum with alternating signs over block tops)."""
    F = space.field
    assert space.kappa == 1
    v = [F.zero] * space.nu
    v[space.e0] = F.one
    tops = []
    acc = 0
    for part in p:
        acc += part
        tops.append(acc)
    for x, top in enumerate(tops, start=1):
        v[space.e(top)] = F(-2 * (-1) ** x)
    return v


# ----------------------------------------------------------------------
# Jordan types

def jordan_type(F, M):
    """Jordan partition of a unipotent matrix, from kernel dimensions of
    powers of M - 1."""
    nu = len(M)
    N = [[F(M[i][j] - (1 if i == j else 0)) for j in range(nu)] for i in range(nu)]
    P = mat_identity(F, nu)
    kdims = [0]
    for _ in range(nu):
        P = mat_mul(F, P, N)
        kdims.append(nu - mat_rank(F, P))
    if kdims[-1] != nu:
        raise ValueError("matrix is not unipotent")
    counts = [kdims[j] - kdims[j - 1] for j in range(1, nu + 1)]  # parts >= j
    parts = []
    for j in range(nu, 0, -1):
        mult = counts[j - 1] - (counts[j] if j < nu else 0)
        parts.extend([j] * mult)
    parts = tuple(sorted(parts, reverse=True))
    assert sum(parts) == nu
    return parts


def power_kernel_dims(F, M, kmax):
    """dim of image of (M-1)^k for k = 0..kmax, as a list."""
    nu = len(M)
    N = [[F(M[i][j] - (1 if i == j else 0)) for j in range(nu)] for i in range(nu)]
    out = [nu]
    P = mat_identity(F, nu)
    for _ in range(kmax):
        P = mat_mul(F, P, N)
        out.append(mat_rank(F, P))
    return out


# ----------------------------------------------------------------------
# restriction to the even orthogonal group (kappa = 1 ambient)

def so_even_restriction(space, p, u=None):
    """Restrict the odd orthogonal inverse witness to a 2n-dimensional
    u-stable nondegenerate subspace U.

    In characteristic != 2, U is the perp of the distinguished anisotropic
    vector (which the witness kills).  In characteristic 2 the literal
    e/e' coordinate span is not stable; U is taken as the cyclic span of
    the e-vectors under u - 1, which contains them, misses the radical
    vector, and carries a nondegenerate restriction of the quadratic form.

    Returns (subspace FormedSpace, restricted matrix, flag-adapted basis
    rows in ambient coordinates).  The default witness is the displayed
    inverse map, so the restricted matrix is in standard elliptic position
    with respect to the restricted standard flag."""
    F = space.field
    assert space.kappa == 1 and space.kind == "quadratic"
    p = tuple(p)
    assert len(p) % 2 == 0, "needs an even number of parts"
    nu, n = space.nu, space.n
    if u is None:
        u = oracle_u_w_inverse(space, p)
    eunits = []
    for i in range(n):
        v = [F.zero] * nu
        v[space.e(i + 1)] = F.one
        eunits.append(v)
    if F.characteristic == 2:
        N = [[F(u[i][j] - (1 if i == j else 0)) for j in range(nu)] for i in range(nu)]
        pool = [list(v) for v in eunits]
        frontier = list(pool)
        while frontier:
            nxt = []
            for v in frontier:
                w = mat_vec(F, N, v)
                if any(w) and mat_rank(F, pool + [w]) > mat_rank(F, pool):
                    pool.append(w)
                    nxt.append(w)
            frontier = nxt
        assert mat_rank(F, pool) == 2 * n, "cyclic span has wrong dimension"
    else:
        xi = xi_vector(space, p)
        assert not any(mat_vec(F, [[F(u[i][j] - (1 if i == j else 0)) for j in range(nu)] for i in range(nu)], xi)), (
            "witness does not kill the anisotropic vector"
        )
        functional = [mat_vec(F, space.gram, xi)]
        pool = mat_nullspace(F, functional)
    # extend the isotropic half-flag e_1..e_n to an adapted basis of U
    basis = [list(r) for r in eunits]
    m = 2 * n
    for j in range(n - 1, -1, -1):
        target = m - j
        if j:
            pair = mat_mul(F, basis[:j], space.gram)
            cand = intersect_row_spaces(F, mat_nullspace(F, pair), pool)
        else:
            cand = pool
        for v in cand:
            if len(basis) == target:
                break
            if mat_rank(F, basis + [list(v)]) > len(basis):
                basis.append(list(v))
        assert len(basis) == target
    # verify stability and restrict
    coords = _solve_in_span(F, basis, [mat_vec(F, u, b) for b in basis])
    gram_u = [
        [space.bilinear(basis[i], basis[j]) for j in range(m)] for i in range(m)
    ]
    qvals_u = [space.quad(b) for b in basis]
    sub = FormedSpace(F, gram_u, qvals_u, n=n, kappa=0)
    M = [[coords[j][i] for j in range(m)] for i in range(m)]
    assert sub.is_isometry(M)
    return sub, M, basis


def _solve_in_span(F, basis, vectors):
    """Coordinates of each vector in the span of the basis rows."""
    rows = [list(b) for b in basis]
    out = []
    for v in vectors:
        aug = rows + [list(v)]
        ns = mat_nullspace(F, [list(col) for col in zip(*aug)])
        sol = next((s for s in ns if s[-1]), None)
        assert sol is not None, "vector not in span"
        inv = F.inv(sol[-1])
        out.append([F(-x * inv) for x in sol[:-1]])
    return out


# ----------------------------------------------------------------------
# canonical basis

@dataclass
class CanonicalBasis:
    partition: tuple
    vectors: list          # v_1..v_sigma
    norms: list            # (v_r, g^{p_r} v_r) after normalization
    extra: object          # v_{sigma+1} or None
    extra_norm: object     # Q(v_{sigma+1}) or None


def canonical_basis(space, g, flag=None):
    """Inductive construction of the basis attached to (flag, g) when the
    relative position of flag and g(flag) is the standard elliptic element
    of a partition.

    Each v_r spans the line V_{p_{<r}+1} cap E_{r-1}-perp and is scaled so
    that (v_r, g^{p_r} v_r) is the canonical representative of its square
    class (exactly 1 whenever that value is a square in the field)."""
    F = space.field
    nu, n = space.nu, space.n
    if flag is None:
        flag = space.standard_flag()
    w = rel_position(space, flag, mat_mul(F, g, flag))
    alpha, p = signed_cycle_type(to_signed(w, n, space.kappa))
    if alpha or w != w_from_partition(p, space.kappa):
        raise ValueError("relative position is not a standard elliptic element")
    cols = [list(c) for c in zip(*flag)]
    pmax = max(p)
    powers = {0: mat_identity(F, nu)}
    ginv = mat_inv(F, g)
    for j in range(1, pmax + 1):
        powers[j] = mat_mul(F, powers[j - 1], g)
        powers[-j] = mat_mul(F, powers[-(j - 1)], ginv)

    def apply(j, v):
        return mat_vec(F, powers[j], v)

    vs, norms = [], []
    ebasis = []   # rows g^{-p_t+i} v_t, i in [0, p_t-1]
    prefix = 0
    for r, pr in enumerate(p, start=1):
        vspace = cols[: prefix + 1]
        if ebasis:
            pair = mat_mul(F, ebasis, space.gram)
            perp = mat_nullspace(F, pair)
            line = intersect_row_spaces(F, vspace, perp)
        else:
            line = [cols[0]]  # E_0 = 0, so the line is V_1 itself
        assert len(line) == 1, "expected a line (%d-dim)" % len(line)
        v = [F(x) for x in line[0]]
        val = space.bilinear(v, apply(pr, v))
        if not val:
            raise ValueError("normalization impossible: degenerate pairing")
        rep, scale = square_class_rep(F, val)
        v = [F(x * F.inv(scale)) for x in v]
        assert space.bilinear(v, apply(pr, v)) == F(rep)
        vs.append(v)
        norms.append(rep)
        for i in range(pr):
            ebasis.append(apply(-pr + i, v))
        prefix += pr
    extra = extra_norm = None
    if space.kappa == 1:
        pair = mat_mul(F, ebasis, space.gram)
        perp = mat_nullspace(F, pair)
        line = intersect_row_spaces(F, cols[: prefix + 1], perp)
        assert len(line) == 1
        v = [F(x) for x in line[0]]
        qv = space.quad(v)
        if not qv:
            raise ValueError("normalization impossible: isotropic extra vector")
        rep, scale = square_class_rep(F, qv)
        v = [F(x * F.inv(scale)) for x in v]
        extra, extra_norm = v, space.quad(v)
    return CanonicalBasis(p, vs, norms, extra, extra_norm)


def validate_canonical_basis(space, g, cb, flag=None):
    """Check every clause of the construction; returns a report dict."""
    F = space.field
    nu = space.nu
    if flag is None:
        flag = space.standard_flag()
    cols = [list(c) for c in zip(*flag)]
    p = cb.partition
    s = len(p)
    pmax = max(p)
    powers = {0: mat_identity(F, nu)}
    ginv = mat_inv(F, g)
    for j in range(1, 2 * pmax + 1):
        powers[j] = mat_mul(F, powers[j - 1], g)
        powers[-j] = mat_mul(F, powers[-(j - 1)], ginv)

    def gv(j, v):
        return mat_vec(F, powers[j], v)

    rep = {}
    # (i) span conditions
    ok = True
    zbasis = []
    prefix = 0
    for r in range(1, s + 1):
        for i in range(0, p[r - 1] + 1):
            lhs = cols[: prefix + i]
            rhs = zbasis + [gv(j, cb.vectors[r - 1]) for j in range(i)]
            if not same_row_space(F, lhs, rhs):
                ok = False
        zbasis.extend(gv(j, cb.vectors[r - 1]) for j in range(p[r - 1]))
        prefix += p[r - 1]
    rep["spans"] = ok
    # (ii) cross orthogonality
    ok = True
    for r in range(1, s + 1):
        for t in range(1, r):
            for i in range(-p[t - 1], p[t - 1]):
                if space.bilinear(gv(i, cb.vectors[t - 1]), cb.vectors[r - 1]):
                    ok = False
    rep["cross_orthogonality"] = ok
    # (iii) self pairings and normalization
    ok = True
    for r in range(1, s + 1):
        v = cb.vectors[r - 1]
        for i in range(-p[r - 1] + 1, p[r - 1]):
            if space.bilinear(v, gv(i, v)):
                ok = False
        if space.kind == "quadratic" and space.quad(v):
            ok = False
        val = space.bilinear(v, gv(p[r - 1], v))
        if val != F(cb.norms[r - 1]) or val != square_class_rep(F, val)[0]:
            ok = False
    rep["normalization"] = ok
    # (iv) independence of the long families
    fam = []
    for t in range(1, s + 1):
        for i in range(0, 2 * p[t - 1]):
            fam.append(gv(-p[t - 1] + i, cb.vectors[t - 1]))
    rep["independence"] = mat_rank(F, fam) == len(fam)
    # (v) complements
    ok = True
    prefix = 0
    erows = []
    for r in range(1, s + 1):
        erows.extend(
            gv(-p[r - 1] + i, cb.vectors[r - 1]) for i in range(p[r - 1])
        )
        prefix += p[r - 1]
        pair = mat_mul(F, erows, space.gram)
        perp = mat_nullspace(F, pair)
        if len(perp) != nu - prefix or intersect_row_spaces(F, cols[:prefix], perp):
            ok = False
    rep["complements"] = ok
    # (ii')/(iii') and (vi)
    if space.kappa == 1:
        v = cb.extra
        ok = v is not None
        if ok:
            for t in range(1, s + 1):
                for i in range(-p[t - 1], p[t - 1]):
                    if space.bilinear(gv(i, cb.vectors[t - 1]), v):
                        ok = False
            if space.quad(v) != F(cb.extra_norm):
                ok = False
            if square_class_rep(F, space.quad(v))[0] != space.quad(v):
                ok = False
        rep["extra_vector"] = ok
        fam = fam + [v] if v is not None else fam
    rep["basis"] = len(fam) == nu and mat_rank(F, fam) == nu
    rep["ok"] = all(rep.values())
    return rep


# ----------------------------------------------------------------------
# power-image bounds

def lambda_profile(p, kap, k):
    """Sum of max(2p_r - k, 0) over the parts, with a final virtual part of
    size kappa."""
    total = sum(max(2 * x - k, 0) for x in p)
    return total + max(kap - k, 0)


def lambda_prime(p, kap, k):
    if k <= 0:
        return lambda_profile(p, kap, k)
    s = len(p)
    doubles = list(2 * x for x in p) + [kap]
    for d in range(1, s + 1, 2):  # odd d
        if doubles[d] <= k <= doubles[d - 1]:
            return lambda_profile(p, kap, k) + 1
    return lambda_profile(p, kap, k)


def lambda_double_prime(p, kap, k):
    ps = psi_extended(p, kap)
    parts = [2 * x + e for x, e in zip(p, ps)] + [kap + ps[-1]]
    return sum(max(x - k, 0) for x in parts)


def lambda_bounds_check(space, g, flag=None):
    """Bounds on dim (g-1)^k V for an isometry in standard elliptic
    position, plus the arithmetic identity between the two refined
    profiles.  Returns a report dict."""
    F = space.field
    if flag is None:
        flag = space.standard_flag()
    w = rel_position(space, flag, mat_mul(F, g, flag))
    alpha, p = signed_cycle_type(to_signed(w, space.n, space.kappa))
    assert not alpha and w == w_from_partition(p, space.kappa)
    kmax = 2 * p[0] + 2
    dims = power_kernel_dims(F, g, kmax)
    rep = {"partition": p, "dims": dims}
    rep["basic_bound"] = all(
        dims[k] >= lambda_profile(p, space.kappa, k) for k in range(kmax + 1)
    )
    checks = [rep["basic_bound"]]
    if space.kind == "quadratic" and F.characteristic != 2:
        rep["refined_bound"] = all(
            dims[k] >= lambda_prime(p, space.kappa, k) for k in range(kmax + 1)
        )
        checks.append(rep["refined_bound"])
    if space.kappa == 1 or len(p) % 2 == 0:
        rep["profiles_agree"] = all(
            lambda_prime(p, space.kappa, k) == lambda_double_prime(p, space.kappa, k)
            for k in range(kmax + 1)
        )
        checks.append(rep["profiles_agree"])
    rep["ok"] = all(checks)
    return rep
