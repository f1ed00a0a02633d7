"""Brute-force verification over small finite fields.

Enumerates small classical groups (SL_3, Sp_4, SO_5; SO_7 is defined but
exceeds the default budget), their isotropic flags and unipotent classes,
and checks the cell-minimality property, bad-characteristic membership,
the isotropy bound, and the centralizer-dimension characterization of the
image class.

Matrices over F_q are flat tuples of ints for speed; everything is
deterministic for fixed (kind, q).
"""

import os
from dataclasses import dataclass
from fractions import Fraction

from .elliptic import w_from_partition
from .isometry import FormedSpace, build_u_w, complete_flag
from .linalg import GF
from .phimap import phi_full
from .unipotents import FORM_HIT, FORM_UNKNOWN, UnipotentLabel, dominance_minimal
from .weylgroups import GroupDescriptor, weyl_group

DEFAULT_BUDGET = 10**6


def _budget():
    return int(os.environ.get("WEYLUNIP_BUDGET", DEFAULT_BUDGET))


# ----------------------------------------------------------------------
# flat matrix kernels mod q

def fmat_identity(nu):
    return tuple(1 if i == j else 0 for i in range(nu) for j in range(nu))


def fmat_mul(a, b, nu, q):
    out = [0] * (nu * nu)
    for i in range(nu):
        ri = i * nu
        for k in range(nu):
            x = a[ri + k]
            if x:
                rk = k * nu
                for j in range(nu):
                    out[ri + j] += x * b[rk + j]
    return tuple(v % q for v in out)


def fmat_from_rows(rows, q):
    return tuple(int(x) % q for row in rows for x in row)


def fmat_rows(a, nu):
    return [list(a[i * nu : (i + 1) * nu]) for i in range(nu)]


def fbruhat(g, nu, q, inv):
    """Pivot permutation of an invertible flat matrix (columns = images of
    the standard flag basis)."""
    C = [list(g[i * nu : (i + 1) * nu]) for i in range(nu)]
    a = [0] * nu
    for j in range(nu):
        i = max(r for r in range(nu) if C[r][j])
        a[j] = i + 1
        f0 = inv[C[i][j]]
        row = C[i]
        for m in range(j + 1, nu):
            f = row[m] * f0 % q
            if f:
                for r in range(nu):
                    C[r][m] = (C[r][m] - f * C[r][j]) % q
        for r in range(nu):
            if r != i:
                C[r][j] = 0
    return tuple(a)


def fmat_sub_identity_pow(g, nu, q, k):
    """(g - 1)^k as a flat matrix."""
    N = tuple((g[i * nu + j] - (1 if i == j else 0)) % q for i in range(nu) for j in range(nu))
    out = fmat_identity(nu)
    for _ in range(k):
        out = fmat_mul(out, N, nu, q)
    return out


def frank(a, nu, q, inv):
    C = [list(a[i * nu : (i + 1) * nu]) for i in range(nu)]
    rank = 0
    row = 0
    for col in range(nu):
        pr = next((r for r in range(row, nu) if C[r][col]), None)
        if pr is None:
            continue
        C[row], C[pr] = C[pr], C[row]
        f0 = inv[C[row][col]]
        for r in range(row + 1, nu):
            f = C[r][col] * f0 % q
            if f:
                for m in range(col, nu):
                    C[r][m] = (C[r][m] - f * C[row][m]) % q
        rank += 1
        row += 1
        if row == nu:
            break
    return rank


def fjordan(g, nu, q, inv):
    """Jordan partition of a unipotent flat matrix."""
    kdims = [0]
    P = fmat_identity(nu)
    N = tuple((g[i * nu + j] - (1 if i == j else 0)) % q for i in range(nu) for j in range(nu))
    for _ in range(nu):
        P = fmat_mul(P, N, nu, q)
        kdims.append(nu - frank(P, nu, q, inv))
    assert kdims[-1] == nu, "not unipotent"
    counts = [kdims[j] - kdims[j - 1] for j in range(1, nu + 1)]
    parts = []
    for j in range(nu, 0, -1):
        mult = counts[j - 1] - (counts[j] if j < nu else 0)
        parts.extend([j] * mult)
    return tuple(sorted(parts, reverse=True))


# ----------------------------------------------------------------------
# group instances

_KIND_DATA = {
    # kind: (weyl descriptor, n, kappa, form kind)
    "SL3": (("A", 2), None, None, None),
    "Sp4": (("C", 2), 2, 0, "symplectic"),
    "SO5": (("B", 2), 2, 1, "quadratic"),
    "SO7": (("B", 3), 3, 1, "quadratic"),
}


def group_order(kind, q):
    if kind == "SL3":
        return q**3 * (q**2 - 1) * (q**3 - 1)
    if kind == "Sp4":
        return q**4 * (q**2 - 1) * (q**4 - 1)
    if kind == "SO5":
        return q**4 * (q**2 - 1) * (q**4 - 1) // 2
    if kind == "SO7":
        return q**9 * (q**2 - 1) * (q**4 - 1) * (q**6 - 1) // 2
    raise ValueError(kind)


def center_order(kind, q):
    if kind == "SL3":
        return 3 if (q - 1) % 3 == 0 else 1
    if kind == "Sp4":
        return 2 if q % 2 else 1
    return 1  # odd orthogonal groups have trivial centre


def flag_count(kind, q):
    if kind == "SL3":
        return (q**2 + q + 1) * (q + 1)
    if kind in ("Sp4", "SO5"):
        return (q + 1) ** 2 * (q**2 + 1)
    if kind == "SO7":
        return (q**2 - 1) * (q**4 - 1) * (q**6 - 1) // (q - 1) ** 3
    raise ValueError(kind)


def _primitive_root(q):
    for g in range(2, q):
        seen, x = set(), 1
        for _ in range(q - 1):
            x = x * g % q
            seen.add(x)
        if len(seen) == q - 1:
            return g
    return 1


def group_generators(kind, q):
    """Flat generator matrices: enough to generate the full group."""
    nu = 3 if kind == "SL3" else _KIND_DATA[kind][1] * 2 + _KIND_DATA[kind][2]
    if kind == "SL3":
        gens = []
        for (i, j) in [(0, 1), (1, 0), (1, 2), (2, 1)]:
            M = [[1 if a == b else 0 for b in range(3)] for a in range(3)]
            M[i][j] = 1
            gens.append(fmat_from_rows(M, q))
        return gens, nu
    _, n, kappa, formkind = _KIND_DATA[kind]
    space = FormedSpace.standard(n, kappa, GF(q), formkind)
    from .isometry import generator_sdot, generator_y

    gens = []
    for h in range(1, n + 1):
        gens.append(fmat_from_rows(generator_y(space, h, 1), q))
        gens.append(fmat_from_rows(generator_sdot(space, h), q))
    if q > 2:
        g0 = _primitive_root(q)
        for i in range(1, n + 1):
            M = [[1 if a == b else 0 for b in range(nu)] for a in range(nu)]
            M[space.e(i)][space.e(i)] = g0
            M[space.eprime(i)][space.eprime(i)] = pow(g0, q - 2, q)
            gens.append(fmat_from_rows(M, q))
    return gens, nu


@dataclass
class GeometricClassOverFq:
    label: UnipotentLabel
    members: tuple


class FqGroupInstance:
    """A fully enumerated small group over F_q with its flag variety."""

    def __init__(self, kind, q, budget=None):
        assert kind in _KIND_DATA, kind
        if kind in ("SO5", "SO7"):
            assert q % 2, "odd orthogonal instances need odd q"
        order = group_order(kind, q)
        limit = budget if budget is not None else _budget()
        if order > limit:
            raise ValueError(
                "|%s(F_%d)| = %d exceeds the enumeration budget %d"
                % (kind, q, order, limit)
            )
        self.kind = kind
        self.q = q
        self.field = GF(q)
        self.inv = [0] + [pow(x, q - 2, q) for x in range(1, q)]
        wfam, n, kappa, formkind = _KIND_DATA[kind]
        self.descriptor = GroupDescriptor(*wfam)
        self.weyl = weyl_group(self.descriptor)
        if kind == "SL3":
            self.space = None
            self.nu = 3
        else:
            self.space = FormedSpace.standard(n, kappa, self.field, formkind)
            self.nu = self.space.nu
        gens, nu = group_generators(kind, q)
        assert nu == self.nu
        self.generators = gens
        self.elements = self._enumerate(gens, order)
        self._flags = None
        self._pos = None
        self._unipotents = None
        self._classes = None
        self._borel = None

    def _enumerate(self, gens, order):
        nu, q = self.nu, self.q
        ident = fmat_identity(nu)
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for a in frontier:
                for s in gens:
                    b = fmat_mul(a, s, nu, q)
                    if b not in seen:
                        seen.add(b)
                        nxt.append(b)
            frontier = nxt
        assert len(seen) == order, (self.kind, q, len(seen), order)
        return tuple(sorted(seen))

    # -- flags ---------------------------------------------------------
    def flags(self):
        """All full (isotropic) flags, as flat column-matrices."""
        if self._flags is None:
            self._flags = tuple(self._build_flags())
            assert len(self._flags) == flag_count(self.kind, self.q), (
                self.kind,
                self.q,
                len(self._flags),
            )
        return self._flags

    def _vectors(self):
        q, nu = self.q, self.nu
        out = []
        for code in range(1, q**nu):
            v, c = [], code
            for _ in range(nu):
                v.append(c % q)
                c //= q
            out.append(tuple(v))
        return out

    def _projective(self, vecs):
        seen, out = set(), []
        for v in vecs:
            lead = next(x for x in v if x)
            v0 = tuple(x * self.inv[lead] % self.q for x in v)
            if v0 not in seen:
                seen.add(v0)
                out.append(v0)
        return out

    def _build_flags(self):
        q, nu = self.q, self.nu
        F = self.field
        if self.kind == "SL3":
            for l1 in self._projective(self._vectors()):
                planes = {}
                for v in self._vectors():
                    if _indep2(l1, v, q):
                        planes.setdefault(_plane_key(l1, v, q, self.inv), v)
                for key in sorted(planes):
                    A = _complete_gl_flag([l1, planes[key]], q, self.inv)
                    yield fmat_from_rows(A, q)
            return
        space = self.space
        iso = [
            v
            for v in self._projective(self._vectors())
            if space.kind == "symplectic" or not space.quad(list(v))
        ]
        n = space.n
        assert n in (2, 3)
        for l1 in iso:
            planes = {}
            for v in iso:
                if _indep2(l1, v, q) and not space.bilinear(list(l1), list(v)):
                    planes.setdefault(_plane_key(l1, v, q, self.inv), v)
            for key in sorted(planes):
                v = planes[key]
                if n == 2:
                    A = complete_flag(space, [list(l1), list(v)])
                    yield fmat_from_rows(A, q)
                    continue
                cubes = {}
                for w in iso:
                    if space.bilinear(list(l1), list(w)) or space.bilinear(
                        list(v), list(w)
                    ):
                        continue
                    if _rank3(l1, v, w, q, self.inv) < 3:
                        continue
                    cubes.setdefault(_span_key([l1, v, w], q, self.inv), w)
                for ckey in sorted(cubes):
                    A = complete_flag(space, [list(l1), list(v), list(cubes[ckey])])
                    yield fmat_from_rows(A, q)

    # -- cached relative positions ----------------------------------------
    def pos_std(self, g):
        return fbruhat(g, self.nu, self.q, self.inv)

    def position_index(self):
        """For every unipotent g: pos_std(g); returns dict label -> set of
        Weyl elements hit, plus per-element map."""
        if self._pos is None:
            hits = {}
            permof = {}
            for g in self.unipotent_classes():
                for m in g.members:
                    w = self.pos_std(m)
                    permof[m] = w
                    hits.setdefault(g.label, set()).add(w)
            self._pos = (hits, permof)
        return self._pos

    # -- unipotent classes ---------------------------------------------------
    def unipotents(self):
        if self._unipotents is None:
            nu, q = self.nu, self.q
            out = []
            for g in self.elements:
                P = fmat_sub_identity_pow(g, nu, q, nu)
                if not any(P):
                    out.append(g)
            assert len(out) == q ** _unipotent_dim(self.kind), len(out)
            self._unipotents = tuple(out)
        return self._unipotents

    def unipotent_classes(self):
        """Geometric classes: grouped by Jordan type plus (p = 2) the
        form-condition evaluations on even block sizes."""
        if self._classes is None:
            buckets = {}
            for g in self.unipotents():
                jt = fjordan(g, self.nu, self.q, self.inv)
                key = (jt, self._form_flags(g, jt))
                buckets.setdefault(key, []).append(g)
            out = []
            for (jt, fl), members in sorted(buckets.items()):
                out.append(
                    GeometricClassOverFq(
                        UnipotentLabel(parts=jt, flags=fl), tuple(members)
                    )
                )
            self._classes = tuple(out)
        return self._classes

    def _form_flags(self, g, jt):
        if self.q % 2 or self.space is None:
            return ()
        flags = []
        for s in sorted({x for x in jt if x % 2 == 0}, reverse=True):
            flags.append((s, FORM_HIT if self._form_condition(g, s) else "miss"))
        return tuple(flags)

    def _form_condition(self, g, s):
        """Existence of x in ker (g-1)^s with ((g-1)^{s-1} x, x) != 0."""
        q, nu = self.q, self.nu
        space = self.space
        K = fmat_sub_identity_pow(g, nu, q, s)
        from .linalg import mat_nullspace

        kern = mat_nullspace(self.field, fmat_rows(K, nu))
        Ns1 = fmat_rows(fmat_sub_identity_pow(g, nu, q, s - 1), nu)
        from .linalg import mat_vec

        dim = len(kern)
        for code in range(1, q**dim):
            c, coefs = code, []
            for _ in range(dim):
                coefs.append(c % q)
                c //= q
            x = [sum(a * kern[i][j] for i, a in enumerate(coefs)) % q for j in range(nu)]
            y = mat_vec(self.field, Ns1, x)
            if space.bilinear(y, x):
                return True
        return False

    def class_by_label(self, label):
        for g in self.unipotent_classes():
            if _label_matches(label, g.label):
                return g
        raise KeyError(str(label))

    # -- Borel subgroup ----------------------------------------------------
    def borel(self):
        """Elements stabilizing the standard flag (lower triangular in the
        pivot sense: pos_std = identity)."""
        if self._borel is None:
            ident = tuple(range(1, self.nu + 1))
            self._borel = tuple(
                g for g in self.elements if self.pos_std(g) == ident
            )
        return self._borel


def _unipotent_dim(kind):
    return {"SL3": 6, "Sp4": 8, "SO5": 8, "SO7": 18}[kind]


def _indep2(u, v, q):
    for i in range(len(u)):
        for j in range(i + 1, len(u)):
            if (u[i] * v[j] - u[j] * v[i]) % q:
                return True
    return False


def _plane_key(u, v, q, inv):
    """Canonical key for the plane spanned by two independent vectors:
    the reduced echelon basis."""
    rows = [list(u), list(v)]
    # gauss
    piv = []
    r = 0
    for c in range(len(u)):
        pr = next((i for i in range(r, 2) if rows[i][c] % q), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        f0 = inv[rows[r][c] % q]
        rows[r] = [x * f0 % q for x in rows[r]]
        for i in range(2):
            if i != r and rows[i][c] % q:
                f = rows[i][c] % q
                rows[i] = [(x - f * y) % q for x, y in zip(rows[i], rows[r])]
        piv.append(c)
        r += 1
        if r == 2:
            break
    return (tuple(rows[0]), tuple(rows[1]))


def _span_key(vectors, q, inv):
    """Canonical (reduced echelon) key for the span of the given vectors."""
    rows = [list(v) for v in vectors]
    m, nu = len(rows), len(rows[0])
    piv, r = [], 0
    for c in range(nu):
        pr = next((i for i in range(r, m) if rows[i][c] % q), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        f0 = inv[rows[r][c] % q]
        rows[r] = [x * f0 % q for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] % q:
                f = rows[i][c] % q
                rows[i] = [(x - f * y) % q for x, y in zip(rows[i], rows[r])]
        piv.append(c)
        r += 1
        if r == m:
            break
    return tuple(tuple(row) for row in rows)


def _rank3(u, v, w, q, inv):
    rows = [list(u), list(v), list(w)]
    r = 0
    for c in range(len(u)):
        pr = next((i for i in range(r, 3) if rows[i][c] % q), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        f0 = inv[rows[r][c] % q]
        for i in range(r + 1, 3):
            f = rows[i][c] * f0 % q
            if f:
                rows[i] = [(x - f * y) % q for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == 3:
            break
    return r


def _complete_gl_flag(rows, q, inv):
    nu = len(rows[0])
    basis = [list(r) for r in rows]
    for v in _unit_vectors(nu):
        if len(basis) == nu:
            break
        test = basis + [list(v)]
        if _rank_generic(test, q, inv) > len(basis):
            basis.append(list(v))
    return [[basis[j][i] for j in range(nu)] for i in range(nu)]  # columns


def _unit_vectors(nu):
    for i in range(nu):
        v = [0] * nu
        v[i] = 1
        yield v


def _rank_generic(rows, q, inv):
    rows = [list(r) for r in rows]
    m, nu = len(rows), len(rows[0])
    r = 0
    for c in range(nu):
        pr = next((i for i in range(r, m) if rows[i][c] % q), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        f0 = inv[rows[r][c] % q]
        for i in range(r + 1, m):
            f = rows[i][c] * f0 % q
            if f:
                rows[i] = [(x - f * y) % q for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == m:
            break
    return r


def _label_matches(theoretical, empirical):
    """A theoretical label (possibly with unasserted flags) against an
    empirically assembled one."""
    if theoretical.parts != empirical.parts:
        return False
    emp = dict(empirical.flags)
    for s, v in theoretical.flags:
        if v == FORM_HIT and emp.get(s) != FORM_HIT:
            return False
        # FORM_UNKNOWN matches anything
    return True


_INSTANCES = {}


def enumerate_group(kind, q, budget=None):
    key = (kind, q)
    if key not in _INSTANCES:
        _INSTANCES[key] = FqGroupInstance(kind, q, budget)
    return _INSTANCES[key]


# ----------------------------------------------------------------------
# the checks

def min_rep_of(inst, label):
    return inst.weyl.min_rep(label)


def dsv_test(label_C, gclass, inst, w=None):
    """Whether some pair (g, flag) with g in the geometric class realizes
    the relative position w (default: the canonical minimal-length
    representative of the Weyl class)."""
    if w is None:
        w = min_rep_of(inst, label_C)
    hits, _ = inst.position_index()
    return w in hits.get(gclass.label, set())


def cell_hit_labels(inst, label_C, w=None):
    if w is None:
        w = min_rep_of(inst, label_C)
    hits, _ = inst.position_index()
    return [g.label for g in inst.unipotent_classes() if w in hits[g.label]]


def minimal_class(label_C, inst):
    """Dominance-minimal unipotent class meeting the cell, with a
    uniqueness certificate; mismatches with the combinatorial map are
    reported, never silently accepted."""
    assert inst.q % 2, "closure order by dominance needs odd q"
    met = cell_hit_labels(inst, label_C)
    minimal = dominance_minimal(met)
    predicted = phi_full(label_C, inst.descriptor, char=inst.q)
    report = {
        "class": str(label_C),
        "met": sorted(str(l) for l in met),
        "minimal": sorted(str(l) for l in minimal),
        "predicted": str(predicted),
        "unique": len(minimal) == 1,
    }
    report["ok"] = report["unique"] and minimal[0].parts == predicted.parts
    if not report["ok"]:
        report["counterexample"] = report
    return report


def bad_char_membership(label_C, inst):
    """At q = 2: the image class (identified by Jordan type and the form
    conditions) meets the cell of the minimal-length representative."""
    assert inst.q == 2
    predicted = phi_full(label_C, inst.descriptor, char=2)
    gclass = inst.class_by_label(predicted)
    return {
        "class": str(label_C),
        "predicted": str(predicted),
        "geometric": str(gclass.label),
        "ok": dsv_test(label_C, gclass, inst),
    }


def isotropy_check(label_C, inst, sample_cap=1500):
    """Stabilizers of pairs (g, standard flag) in elliptic position:
    abelian, order dividing the prime-to-p part of det(1-w) times the
    order of the centre."""
    W = inst.weyl
    w = min_rep_of(inst, label_C)
    det = W.det_one_minus(w)
    p = inst.q  # q is prime here
    star = det
    while star % p == 0:
        star //= p
    bound = star * center_order(inst.kind, inst.q)
    nu, q = inst.nu, inst.q
    pool = [g for g in inst.elements if inst.pos_std(g) == w]
    if len(pool) > sample_cap:
        step = len(pool) // sample_cap
        pool = pool[::step][:sample_cap]
    borel = inst.borel()
    checked = 0
    max_order = 1
    for g in pool:
        stab = [x for x in borel if fmat_mul(x, g, nu, q) == fmat_mul(g, x, nu, q)]
        checked += 1
        max_order = max(max_order, len(stab))
        if bound % len(stab):
            return {
                "class": str(label_C),
                "ok": False,
                "counterexample": {"g": g, "stabilizer_order": len(stab), "bound": bound},
            }
        for i, x in enumerate(stab):
            for y in stab[i + 1 :]:
                if fmat_mul(x, y, nu, q) != fmat_mul(y, x, nu, q):
                    return {
                        "class": str(label_C),
                        "ok": False,
                        "counterexample": {"g": g, "nonabelian": (x, y)},
                    }
    return {
        "class": str(label_C),
        "samples": checked,
        "bound": bound,
        "max_stabilizer": max_order,
        "ok": True,
    }


# ----------------------------------------------------------------------
# centralizer point counts and the dimension proxy

def _commutant_basis(g, nu, q):
    """Basis of the matrix algebra commuting with g, via the nullspace of
    the linear map X -> Xg - gX."""
    from .linalg import mat_nullspace

    F = GF(q)
    rows = []
    for a in range(nu):
        for b in range(nu):
            row = [0] * (nu * nu)
            for j in range(nu):
                row[a * nu + j] = (row[a * nu + j] + g[j * nu + b]) % q
            for i in range(nu):
                row[i * nu + b] = (row[i * nu + b] - g[a * nu + i]) % q
            rows.append(row)
    return mat_nullspace(F, rows)


def sp4_witnesses(parts, q):
    """Candidate symplectic unipotents over F_q covering every rational
    twist of the geometric class with the given Jordan type."""
    space = FormedSpace.standard(2, 0, GF(q), "symplectic")
    from .elliptic import excellent_decomposition

    eta = _nonsquare(q)
    scalars = (1, eta) if eta else (1,)
    pairs = [(a, b) for a in scalars for b in scalars]
    if parts == (4,):
        dec = excellent_decomposition((2,), "C", "a")
        return [fmat_from_rows(build_u_w(space, dec, c), q) for c in pairs]
    if parts == (2, 2):
        dec = excellent_decomposition((1, 1), "C", "a")
        return [fmat_from_rows(build_u_w(space, dec, c), q) for c in pairs]
    if parts == (2, 1, 1):
        out = []
        for c in scalars:
            M = [[1 if i == j else 0 for j in range(4)] for i in range(4)]
            M[0][3] = c  # symplectic transvection along e_1
            out.append(fmat_from_rows(M, q))
        return out
    if parts == (1, 1, 1, 1):
        return [fmat_identity(4)]
    raise ValueError(parts)


def _nonsquare(q):
    if q == 2:
        return None
    squares = {x * x % q for x in range(1, q)}
    return next(a for a in range(2, q) if a not in squares)


def _finv(a, nu, q):
    from .linalg import mat_inv

    return fmat_from_rows(mat_inv(GF(q), fmat_rows(a, nu)), q)


_COMMUTANT_LIMIT = 2 * 10**5


def _span_element(coefs, basis, q, size):
    M = [0] * size
    for coef, b in zip(coefs, basis):
        if coef:
            for i in range(size):
                M[i] = (M[i] + coef * b[i]) % q
    return M


def _codes(dim, q, skip_zero=False):
    for code in range(1 if skip_zero else 0, q**dim):
        c, coefs = code, []
        for _ in range(dim):
            coefs.append(c % q)
            c //= q
        yield coefs


def centralizer_order_sp4(g, q):
    """|Z(g)(F_q)| for a specific matrix: commutant enumeration when the
    commutant is small, orbit-stabilizer otherwise.  Returns
    (order, orbit_set_or_None)."""
    nu = 4
    space = FormedSpace.standard(2, 0, GF(q), "symplectic")
    basis = _commutant_basis(g, nu, q)
    dim = len(basis)
    if q**dim <= _COMMUTANT_LIMIT:
        inv = [0] + [pow(x, q - 2, q) for x in range(1, q)]
        count = 0
        for coefs in _codes(dim, q):
            rows = fmat_rows(tuple(_span_element(coefs, basis, q, nu * nu)), nu)
            if _rank_generic(rows, q, inv) == nu and space.is_isometry(rows):
                count += 1
        return count, None
    orbit = _conjugation_orbit(g, q)
    order = group_order("Sp4", q)
    assert order % len(orbit) == 0
    return order // len(orbit), orbit


def _conjugation_orbit(g, q):
    nu = 4
    gens, _ = group_generators("Sp4", q)
    ginv = {s: _finv(s, nu, q) for s in gens}
    seen = {g}
    frontier = [g]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = fmat_mul(fmat_mul(s, x, nu, q), ginv[s], nu, q)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def _are_conjugate_sp4(g1, g2, q, orbit_of):
    """Rational conjugacy of two unipotents: orbit membership when an
    orbit set is known, transporter enumeration otherwise."""
    if orbit_of.get(g1) is not None:
        return g2 in orbit_of[g1]
    if orbit_of.get(g2) is not None:
        return g1 in orbit_of[g2]
    nu = 4
    from .linalg import mat_nullspace

    F = GF(q)
    rows = []
    for a in range(nu):
        for b in range(nu):
            row = [0] * (nu * nu)
            for j in range(nu):
                row[a * nu + j] = (row[a * nu + j] + g1[j * nu + b]) % q
            for i in range(nu):
                row[i * nu + b] = (row[i * nu + b] - g2[a * nu + i]) % q
            rows.append(row)
    sols = mat_nullspace(F, rows)  # {x : x g1 = g2 x}
    dim = len(sols)
    if dim == 0:
        return False
    assert q**dim <= _COMMUTANT_LIMIT, "transporter too large to enumerate"
    space = FormedSpace.standard(2, 0, F, "symplectic")
    inv = [0] + [pow(x, q - 2, q) for x in range(1, q)]
    for coefs in _codes(dim, q, skip_zero=True):
        rows2 = fmat_rows(tuple(_span_element(coefs, sols, q, nu * nu)), nu)
        if _rank_generic(rows2, q, inv) == nu and space.is_isometry(rows2):
            return True
    return False


def sp4_class_point_count(parts, q):
    """|{g unipotent with this Jordan type}| over F_q: the sum of
    |G|/|Z(g)(F_q)| over the distinct rational orbits inside the geometric
    class.  Twist completeness is checked by the caller against the
    Steinberg count q^8."""
    order = group_order("Sp4", q)
    data = []
    orbit_of = {}
    for g in sp4_witnesses(parts, q):
        z, orbit = centralizer_order_sp4(g, q)
        orbit_of[g] = orbit
        data.append((g, z))
    reps = []
    for g, z in data:
        if not any(_are_conjugate_sp4(g, g2, q, orbit_of) for g2, _ in reps):
            reps.append((g, z))
    total = sum(order // z for _, z in reps)
    return total, sorted(z for _, z in reps)


def fit_degree(values):
    """Consensus degree of a point-count series: round of log-ratios over
    all pairs of q values; None when the pairs disagree."""
    import math

    qs = sorted(values)
    est = set()
    for i in range(len(qs)):
        for j in range(i + 1, len(qs)):
            qi, qj = qs[i], qs[j]
            est.add(round(math.log(values[qj] / values[qi]) / math.log(qj / qi)))
    return est.pop() if len(est) == 1 else None


SP4_DIM = 10
SP4_UNIPOTENT_PARTS = [(4,), (2, 2), (2, 1, 1), (1, 1, 1, 1)]


_CENSUS_CACHE = {}


def sp4_unipotent_census(q):
    """Class sizes and per-twist centralizer orders for all unipotent
    Jordan types of Sp_4(F_q), validated against the Steinberg count."""
    if q in _CENSUS_CACHE:
        return _CENSUS_CACHE[q]
    counts, zorders = {}, {}
    for parts in SP4_UNIPOTENT_PARTS:
        total, zs = sp4_class_point_count(parts, q)
        counts[parts] = total
        zorders[parts] = zs
    assert sum(counts.values()) == q**8, "witness twists incomplete at q=%d" % q
    _CENSUS_CACHE[q] = (counts, zorders)
    return counts, zorders


def c_small_check(label_C, qs=(3, 5, 7)):
    """Centralizer-dimension characterization of the image class in Sp_4:
    among unipotent classes meeting the cell of an elliptic class, the
    centralizer dimension is at most d_C, with equality exactly at the
    image class.

    dim Z(g) is read off from the class-size series |gamma(F_q)| (which
    sums over rational twists, so its degree is dim G - dim Z(g));
    per-twist centralizer orders are reported alongside."""
    inst = enumerate_group("Sp4", 3)
    W = inst.weyl
    assert W.is_elliptic(label_C)
    d_C = W.d_C(label_C)
    predicted = phi_full(label_C, inst.descriptor, char=3)
    met = cell_hit_labels(inst, label_C)
    counts, zorders = {}, {}
    for q in qs:
        counts[q], zorders[q] = sp4_unipotent_census(q)
        if q == 3:
            for g in inst.unipotent_classes():
                assert counts[q][g.label.parts] == len(g.members)
    rows = []
    ok = True
    for lab in met:
        series = {q: counts[q][lab.parts] for q in qs}
        dg = fit_degree(series)
        row = {
            "gamma": str(lab),
            "class_sizes": series,
            "centralizer_orders": {q: zorders[q][lab.parts] for q in qs},
            "dim_Z": None if dg is None else SP4_DIM - dg,
            "is_image": lab.parts == predicted.parts,
        }
        if row["dim_Z"] is None:
            row["verdict"] = "inconclusive"
        else:
            bound_ok = row["dim_Z"] <= d_C
            eq = row["dim_Z"] == d_C
            row["verdict"] = "ok" if bound_ok and (eq == row["is_image"]) else "FAIL"
            ok = ok and row["verdict"] == "ok"
        rows.append(row)
    return {"class": str(label_C), "d_C": d_C, "rows": rows, "ok": ok}


# ----------------------------------------------------------------------
# point count series

def point_count_series(label_C, gamma_label, insts):
    """|pairs (g, flag) in position w with g in the class| / |G| at each
    instance; reports integrality and the residue of the constant term.
    This is an expectation-style report, not a hard check."""
    out = {"class": str(label_C), "gamma": str(gamma_label), "points": {}}
    for inst in insts:
        w = min_rep_of(inst, label_C)
        try:
            gclass = inst.class_by_label(gamma_label)
        except KeyError:
            out["points"][inst.q] = {"count": 0, "ratio": 0, "integral": True}
            continue
        nflags = len(inst.flags())
        hit = sum(1 for g in gclass.members if inst.pos_std(g) == w)
        count = hit * nflags
        order = group_order(inst.kind, inst.q)
        ratio = Fraction(count, order)
        out["points"][inst.q] = {
            "count": count,
            "ratio": ratio,
            "integral": ratio.denominator == 1,
            "residue_mod_q": int(ratio) % inst.q if ratio.denominator == 1 else None,
        }
    return out
