"""Weyl group engine.

Classical types A, B, C, D at any rank, realized as permutations of [1..nu]
(nu = 2n + kappa for B/C/D) commuting with the involution i -> nu+1-i; the
exceptional groups G2, F4, E6 by full enumeration in the reflection
representation; E7/E8 at table level only (matrices for given words, no
enumeration).

Elements are plain tuples: one-line permutations for classical groups,
root-index permutations for enumerable exceptional groups.  All operations
are pure; enumeration caches are built once per group and never mutated.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .elliptic import d_C_classical, is_partition, partitions_of
from .linalg import QQ, char_poly, cyclotomic, factor_cyclotomic, mat_mul, mat_rank, poly_eval

ENUM_LIMIT_CLASSICAL = 7   # brute-force enumeration bound for B/C/D rank
ENUM_LIMIT_A = 8


# ----------------------------------------------------------------------
# permutations as one-line tuples on [1..m]

def perm_identity(m):
    return tuple(range(1, m + 1))


def perm_mul(a, b):
    """(a*b)(i) = a(b(i)); b acts first."""
    return tuple(a[x - 1] for x in b)


def perm_inv(a):
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x - 1] = i + 1
    return tuple(out)


# ----------------------------------------------------------------------
# descriptors and class labels

_EXCEPTIONAL_RANK = {"G2": 2, "F4": 4, "E6": 6, "E7": 7, "E8": 8}


@dataclass(frozen=True)
class GroupDescriptor:
    family: str
    rank: int

    def __post_init__(self):
        if self.family == "A":
            assert self.rank >= 1
        elif self.family in ("B", "C", "D"):
            assert self.rank >= 2, "B/C/D need rank >= 2"
        elif self.family in _EXCEPTIONAL_RANK:
            assert self.rank == _EXCEPTIONAL_RANK[self.family]
        else:
            raise ValueError("unknown family %r" % self.family)

    @property
    def is_exceptional(self):
        return self.family in _EXCEPTIONAL_RANK

    @property
    def realization(self):
        if not self.is_exceptional:
            return "signed-perm"
        return "table-only" if self.family in ("E7", "E8") else "root-matrix"

    @property
    def kappa(self):
        assert self.family in ("B", "C", "D")
        return 1 if self.family == "B" else 0

    @property
    def nu(self):
        if self.family == "A":
            return self.rank + 1
        return 2 * self.rank + self.kappa

    def __str__(self):
        return self.family if self.is_exceptional else "%s%d" % (self.family, self.rank)


@dataclass(frozen=True)
class ClassLabel:
    """Conjugacy class identifier.

    Classical B/C/D: pair of partitions (alpha; beta) from positive and
    negative signed cycles, plus a reserved split marker for the very even
    type D classes.  Type A: alpha holds the cycle type.  Exceptional:
    cyclotomic signature ((d, mult), ...) plus a discriminator when the
    signature alone is ambiguous.
    """

    family: str
    alpha: tuple = ()
    beta: tuple = ()
    signature: tuple = ()
    disc: str = ""

    def __str__(self):
        if self.family == "A":
            return "[%s]" % ",".join(map(str, self.alpha))
        if self.family in ("B", "C", "D"):
            s = "[%s];[%s]" % (
                ",".join(map(str, self.alpha)),
                ",".join(map(str, self.beta)),
            )
            return s + self.disc
        body = ".".join(str(d) for d, m in self.signature for _ in range(m))
        return "%s:%s%s" % (self.family, body, self.disc)


def classical_label(family, alpha, beta, disc=""):
    alpha = tuple(sorted(alpha, reverse=True))
    beta = tuple(sorted(beta, reverse=True))
    assert is_partition(alpha) and is_partition(beta)
    if family == "D" and len(beta) % 2:
        raise ValueError("type D classes need an even number of negative cycles")
    return ClassLabel(family, alpha=alpha, beta=beta, disc=disc)


def type_a_label(cycle_type):
    return ClassLabel("A", alpha=tuple(sorted(cycle_type, reverse=True)))


# ----------------------------------------------------------------------
# signed permutations and root-counting lengths

def to_signed(a, n, kap):
    """One-line permutation of [1..nu] -> signed word on [1..n]."""
    nu = 2 * n + kap
    out = []
    for i in range(1, n + 1):
        v = a[i - 1]
        if v <= n:
            out.append(v)
        else:
            assert v >= nu + 1 - n, (a, i)
            out.append(-(nu + 1 - v))
    return tuple(out)


def from_signed(w, kap):
    n = len(w)
    nu = 2 * n + kap
    a = [0] * nu
    for i, v in enumerate(w, start=1):
        a[i - 1] = v if v > 0 else nu + 1 + v
        a[nu - i] = nu + 1 - a[i - 1]
    if kap:
        a[n] = n + 1
    return tuple(a)


def signed_length(w, family):
    """Coxeter length of a signed permutation in type B/C or D.

    Counts the positive roots e_i - e_j, e_i + e_j (i < j) sent to negative
    roots, plus the short roots e_i in type B/C.  The image of e_i is
    sign(w_i) e_{|w_i|}.
    """
    n = len(w)
    lg = 0
    for i in range(n):
        wi = w[i]
        for j in range(i + 1, n):
            wj = w[j]
            # e_i - e_j
            if wi < 0 and wj > 0:
                lg += 1
            elif (wi > 0) == (wj > 0) and wi > wj:
                lg += 1
            # e_i + e_j
            if wi < 0 and wj < 0:
                lg += 1
            elif (wi > 0) != (wj > 0) and abs(wi) > abs(wj) and wi > 0:
                lg += 1
            elif (wi > 0) != (wj > 0) and abs(wj) > abs(wi) and wj > 0:
                lg += 1
    if family in ("B", "C"):
        lg += sum(1 for v in w if v < 0)
    else:
        assert sum(1 for v in w if v < 0) % 2 == 0
    return lg


def signed_cycle_type(w):
    """(alpha, beta): lengths of positive and negative cycles."""
    n = len(w)
    seen = [False] * n
    alpha, beta = [], []
    for i in range(1, n + 1):
        if seen[i - 1]:
            continue
        sign = 1
        length = 0
        j = i
        while not seen[j - 1]:
            seen[j - 1] = True
            v = w[j - 1]
            if v < 0:
                sign = -sign
            j = abs(v)
            length += 1
        (alpha if sign > 0 else beta).append(length)
    return tuple(sorted(alpha, reverse=True)), tuple(sorted(beta, reverse=True))


# ----------------------------------------------------------------------
# classical Weyl groups

class ClassicalWeylGroup:
    """W(A_n) = S_{n+1}, or W(B_n) = W(C_n), or W(D_n) inside W(B_n),
    acting on [1..nu]."""

    def __init__(self, descriptor):
        assert not descriptor.is_exceptional
        self.descriptor = descriptor
        self.family = descriptor.family
        self.rank = descriptor.rank
        self.nu = descriptor.nu
        self.kappa = descriptor.kappa if self.family != "A" else None
        self.identity = perm_identity(self.nu)
        self._elements = None
        self._classes = None
        self._split_cache = {}

    # -- generators ------------------------------------------------------
    def simple_reflection(self, i):
        n, nu = self.rank, self.nu
        if self.family == "A":
            assert 1 <= i <= n
            a = list(range(1, nu + 1))
            a[i - 1], a[i] = a[i], a[i - 1]
            return tuple(a)
        assert 1 <= i <= n
        if i == n and self.family == "D":
            # fork generator s~_{n-1} = s_n s_{n-1} s_n inside W(B_n)
            return self._b_word((n, n - 1, n))
        return self._b_gen(i)

    def _b_gen(self, i):
        n, nu = self.rank, self.nu
        a = list(range(1, nu + 1))
        if i < n:
            a[i - 1], a[i] = a[i], a[i - 1]
            a[nu - i - 1], a[nu - i] = a[nu - i], a[nu - i - 1]
        else:
            a[n - 1], a[nu - n] = a[nu - n], a[n - 1]
        return tuple(a)

    def _b_word(self, letters):
        a = perm_identity(self.nu)
        for i in letters:
            a = perm_mul(a, self._b_gen(i))
        return a

    def generators(self):
        return [self.simple_reflection(i) for i in range(1, self.rank + 1)]

    def word_to_element(self, letters):
        a = self.identity
        for i in letters:
            a = perm_mul(a, self.simple_reflection(i))
        return a

    # -- basic operations --------------------------------------------------
    def multiply(self, a, b):
        self._check(a)
        self._check(b)
        return perm_mul(a, b)

    def invert(self, a):
        return perm_inv(a)

    def contains(self, a):
        if len(a) != self.nu or sorted(a) != list(range(1, self.nu + 1)):
            return False
        if self.family == "A":
            return True
        nu = self.nu
        if any(a[nu - i] != nu + 1 - a[i - 1] for i in range(1, nu + 1)):
            return False
        if self.kappa and a[self.rank] != self.rank + 1:
            return False
        if self.family == "D":
            w = to_signed(a, self.rank, 0)
            if sum(1 for v in w if v < 0) % 2:
                return False
        return True

    def _check(self, a):
        if not self.contains(a):
            raise ValueError("element %r does not belong to %s" % (a, self.descriptor))

    def length(self, a):
        self._check(a)
        if self.family == "A":
            return sum(
                1 for i in range(self.nu) for j in range(i + 1, self.nu) if a[i] > a[j]
            )
        return signed_length(to_signed(a, self.rank, self.kappa), self.family)

    def longest_element(self):
        if self.family == "A":
            return tuple(range(self.nu, 0, -1))
        w = [-i for i in range(1, self.rank + 1)]
        if self.family == "D" and self.rank % 2:
            w[-1] = self.rank
        return from_signed(tuple(w), self.kappa)

    # -- conjugacy classes ---------------------------------------------------
    def class_of(self, a):
        self._check(a)
        if self.family == "A":
            return type_a_label(self._cycle_type(a))
        alpha, beta = signed_cycle_type(to_signed(a, self.rank, self.kappa))
        disc = ""
        if self.family == "D" and not beta and all(x % 2 == 0 for x in alpha):
            disc = self._very_even_disc(alpha, a)
        return ClassLabel(self.family, alpha=alpha, beta=beta, disc=disc)

    def _cycle_type(self, a):
        seen = [False] * self.nu
        ct = []
        for i in range(self.nu):
            if seen[i]:
                continue
            ln, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = a[j] - 1
                ln += 1
            ct.append(ln)
        return tuple(sorted(ct, reverse=True))

    def _very_even_disc(self, alpha, a):
        if self.rank > ENUM_LIMIT_CLASSICAL:
            return ""  # reserved marker, unresolved at large rank
        if alpha not in self._split_cache:
            rep = self.min_rep(ClassLabel("D", alpha=alpha, beta=()))
            self._split_cache[alpha] = self._orbit(rep)
        return "+" if a in self._split_cache[alpha] else "-"

    def _orbit(self, a):
        gens = self.generators()
        seen = {a}
        frontier = [a]
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = perm_mul(s, perm_mul(x, s))
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return seen

    def elements(self):
        if self._elements is None:
            n = self.rank
            if self.family == "A":
                assert n <= ENUM_LIMIT_A, "enumeration budget exceeded"
                self._elements = tuple(itertools.permutations(range(1, self.nu + 1)))
            else:
                assert n <= ENUM_LIMIT_CLASSICAL, "enumeration budget exceeded"
                out = []
                for base in itertools.permutations(range(1, n + 1)):
                    for signs in itertools.product((1, -1), repeat=n):
                        if self.family == "D" and signs.count(-1) % 2:
                            continue
                        w = tuple(s * v for s, v in zip(signs, base))
                        out.append(from_signed(w, self.kappa))
                self._elements = tuple(out)
        return self._elements

    def conjugacy_classes(self):
        """Mapping ClassLabel -> tuple of elements (enumerable ranks only)."""
        if self._classes is None:
            buckets = {}
            for a in self.elements():
                buckets.setdefault(self.class_of(a), []).append(a)
            self._classes = {lab: tuple(v) for lab, v in buckets.items()}
        return self._classes

    def class_labels(self):
        """All class labels, without enumerating elements."""
        n = self.rank
        if self.family == "A":
            return [type_a_label(ct) for ct in partitions_of(self.nu)]
        out = []
        for k in range(n + 1):
            for alpha in partitions_of(k):
                for beta in partitions_of(n - k):
                    if self.family == "D":
                        if len(beta) % 2:
                            continue
                        if not beta and alpha and all(x % 2 == 0 for x in alpha):
                            out.append(ClassLabel("D", alpha=alpha, disc="+"))
                            out.append(ClassLabel("D", alpha=alpha, disc="-"))
                            continue
                    out.append(ClassLabel(self.family, alpha=alpha, beta=beta))
        return out

    def is_elliptic(self, label):
        if self.family == "A":
            return label.alpha == (self.nu,)
        if label.alpha:
            return False
        if self.family == "D":
            return len(label.beta) % 2 == 0
        return True

    def d_C(self, label):
        if self.family == "A":
            return sum(c - 1 for c in label.alpha)
        extra = sum(a - 1 for a in label.alpha)
        if not label.beta:
            return extra
        return extra + d_C_classical(label.beta, self.family)

    def min_rep(self, label):
        """A canonical minimal-length representative, built blockwise:
        positive cycles on the leading coordinates, negative cycles after."""
        if self.family == "A":
            a = []
            for c in label.alpha:
                start = len(a) + 1
                a.extend(list(range(start + 1, start + c)) + [start])
            return tuple(a)
        n, nu = self.rank, self.nu
        a = list(range(1, nu + 1))
        pos = 0
        for part in label.alpha:
            for i in range(pos + 1, pos + part):
                a[i - 1] = i + 1
            a[pos + part - 1] = pos + 1
            pos += part
        for part in label.beta:
            for i in range(pos + 1, pos + part):
                a[i - 1] = i + 1
            a[pos + part - 1] = nu - pos
            pos += part
        for i in range(1, n + 1):
            a[nu - i] = nu + 1 - a[i - 1]
        if self.kappa:
            a[n] = n + 1
        a = tuple(a)
        if label.disc == "-":
            s = self._b_gen(n)  # sign flip conjugation crosses the split
            a = perm_mul(s, perm_mul(a, s))
        return a

    def min_length_elements(self, label):
        """(d_C, representatives, complete): complete marks whether the
        representative set is the full minimal-length set (needs
        enumeration)."""
        d = self.d_C(label)
        limit = ENUM_LIMIT_A if self.family == "A" else ENUM_LIMIT_CLASSICAL
        if self.rank <= limit:
            members = self.conjugacy_classes()[label]
            reps = tuple(a for a in members if self.length(a) == d)
            assert reps, (label, d)
            return d, reps, True
        return d, (self.min_rep(label),), False

    # -- parabolic structure ----------------------------------------------
    def parabolic_intersection(self, label):
        """Canonical (J, factors) with C cap W_J elliptic in W_J.

        J is a tuple of generator indices; factors lists ('A', size) per
        cycle string plus at most one (family, beta) tail.
        """
        J, pos, factors = [], 0, []
        for c in label.alpha:
            J.extend(range(pos + 1, pos + c))
            factors.append(("A", c))
            pos += c
        if self.family == "A":
            return tuple(J), factors
        wt = sum(label.beta)
        if wt:
            J.extend(range(self.rank - wt + 1, self.rank + 1))
            factors.append((self.family, label.beta))
        return tuple(J), factors

    # -- reflection representation -------------------------------------------
    def char_poly_signature(self, a):
        """Characteristic polynomial on the reflection representation,
        factored into cyclotomics ((d, mult), ...)."""
        self._check(a)
        sig = {}

        def add(d):
            sig[d] = sig.get(d, 0) + 1

        if self.family == "A":
            for c in self._cycle_type(a):
                for d in _divisors(c):
                    add(d)
            sig[1] -= 1  # the reflection representation drops one trivial summand
            if not sig[1]:
                del sig[1]
            return tuple(sorted(sig.items()))
        alpha, beta = signed_cycle_type(to_signed(a, self.rank, self.kappa))
        for c in alpha:
            for d in _divisors(c):
                add(d)
        for c in beta:
            for d in _divisors(2 * c):
                if c % d:
                    add(d)
        return tuple(sorted(sig.items()))

    def class_signature(self, label):
        return self.char_poly_signature(self.min_rep(label))

    def det_one_minus(self, a):
        """det(1 - a) on the reflection representation, exact integer."""
        out = 1
        for d, m in self.char_poly_signature(a):
            out *= poly_eval(cyclotomic(d), 1) ** m
        return out


def _divisors(c):
    return [d for d in range(1, c + 1) if c % d == 0]


# ----------------------------------------------------------------------
# exceptional Weyl groups

_E_EDGES = {
    "E6": [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)],
    "E7": [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 4)],
    "E8": [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)],
}

CARTAN = {
    "G2": [[2, -3], [-1, 2]],
    "F4": [[2, -1, 0, 0], [-1, 2, -1, 0], [0, -2, 2, -1], [0, 0, -1, 2]],
}

for _name, _edges in _E_EDGES.items():
    _r = _EXCEPTIONAL_RANK[_name]
    _A = [[2 if i == j else 0 for j in range(_r)] for i in range(_r)]
    for _i, _j in _edges:
        _A[_i - 1][_j - 1] = _A[_j - 1][_i - 1] = -1
    CARTAN[_name] = _A

_ROOT_COUNT = {"G2": 12, "F4": 48, "E6": 72, "E7": 126, "E8": 240}
_GROUP_ORDER = {"G2": 12, "F4": 1152, "E6": 51840}

# symmetrizers d_i with d_i * A[i][j] symmetric; larger d_i = longer root
_SYMMETRIZER = {
    "G2": (1, 3),
    "F4": (2, 2, 1, 1),
    "E6": (1,) * 6,
    "E7": (1,) * 7,
    "E8": (1,) * 8,
}


class ExceptionalWeylGroup:
    """G2/F4/E6 with full enumeration on root permutations; E7/E8 support
    only word-to-matrix computations."""

    def __init__(self, descriptor):
        assert descriptor.is_exceptional
        self.descriptor = descriptor
        self.family = descriptor.family
        self.rank = descriptor.rank
        self.cartan = CARTAN[self.family]
        self.enumerable = self.family in _GROUP_ORDER
        self._build_roots()
        self._elements = None
        self._class_records = None
        self._class_index = None
        self._long_subgroup = None

    # -- root system ---------------------------------------------------------
    def _build_roots(self):
        r = self.rank
        simple = [tuple(1 if j == i else 0 for j in range(r)) for i in range(r)]
        roots = set(simple)
        frontier = list(simple)
        while frontier:
            nxt = []
            for v in frontier:
                for i in range(r):
                    w = self._reflect_vec(i, v)
                    if w not in roots:
                        roots.add(w)
                        nxt.append(w)
            frontier = nxt
        assert len(roots) == _ROOT_COUNT[self.family], (self.family, len(roots))
        pos = sorted(v for v in roots if all(c >= 0 for c in v))
        assert len(pos) * 2 == len(roots)
        self.positive_roots = pos
        self.roots = pos + [tuple(-c for c in v) for v in pos]
        self.root_index = {v: i for i, v in enumerate(self.roots)}
        self.npos = len(pos)
        d = _SYMMETRIZER[self.family]
        A = self.cartan
        self._form = [[d[i] * A[i][j] for j in range(r)] for i in range(r)]
        assert all(
            self._form[i][j] == self._form[j][i] for i in range(r) for j in range(r)
        )
        self._gen_perms = [
            tuple(self.root_index[self._reflect_vec(i, v)] for v in self.roots)
            for i in range(r)
        ]
        self.identity = tuple(range(2 * self.npos))

    def _reflect_vec(self, i, v):
        c = sum(self.cartan[i][j] * v[j] for j in range(self.rank))
        out = list(v)
        out[i] -= c
        return tuple(out)

    def root_norm(self, v):
        r = self.rank
        return sum(v[i] * self._form[i][j] * v[j] for i in range(r) for j in range(r))

    def simple_matrices(self):
        r = self.rank
        out = []
        for i in range(r):
            M = [[1 if a == b else 0 for b in range(r)] for a in range(r)]
            for j in range(r):
                M[i][j] -= self.cartan[i][j]  # column j of s_i is e_j - A[i][j] e_i
            out.append(M)
        return out

    def word_to_matrix(self, letters):
        r = self.rank
        mats = self.simple_matrices()
        M = [[1 if a == b else 0 for b in range(r)] for a in range(r)]
        for i in letters:
            M = mat_mul(QQ, M, mats[i - 1])
        return [[int(x) for x in row] for row in M]

    # -- element arithmetic ---------------------------------------------------
    def word_to_element(self, letters):
        a = self.identity
        for i in letters:
            a = self.multiply(a, self._gen_perms[i - 1])
        return a

    def generators(self):
        return list(self._gen_perms)

    def multiply(self, a, b):
        return tuple(a[x] for x in b)

    def invert(self, a):
        out = [0] * len(a)
        for i, x in enumerate(a):
            out[x] = i
        return tuple(out)

    def length(self, a):
        np = self.npos
        return sum(1 for i in range(np) if a[i] >= np)

    def matrix_of(self, a):
        """Integer matrix on the reflection representation (simple basis)."""
        r = self.rank
        cols = []
        for i in range(r):
            idx = self.root_index[tuple(1 if j == i else 0 for j in range(r))]
            cols.append(self.roots[a[idx]])
        return [[cols[j][i] for j in range(r)] for i in range(r)]

    def char_poly_signature(self, a):
        return factor_cyclotomic(char_poly(self.matrix_of(a)))

    def signature_of_matrix(self, M):
        return factor_cyclotomic(char_poly(M))

    def det_one_minus(self, a):
        out = 1
        for d, m in self.char_poly_signature(a):
            out *= poly_eval(cyclotomic(d), 1) ** m
        return out

    def is_elliptic_element(self, a):
        return all(d != 1 for d, _ in self.char_poly_signature(a))

    def fixed_space_dim(self, a):
        M = self.matrix_of(a)
        r = self.rank
        N = [[M[i][j] - (1 if i == j else 0) for j in range(r)] for i in range(r)]
        return r - mat_rank(QQ, N)

    def elements(self):
        if not self.enumerable:
            raise ValueError("%s is table-only (no enumeration)" % self.family)
        if self._elements is None:
            self._elements = tuple(sorted(self._closure(self._gen_perms)))
            assert len(self._elements) == _GROUP_ORDER[self.family]
        return self._elements

    def _closure(self, gens):
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for a in frontier:
                for s in gens:
                    b = tuple(a[x] for x in s)
                    if b not in seen:
                        seen.add(b)
                        nxt.append(b)
            frontier = nxt
        return seen

    # -- conjugacy classes ------------------------------------------------------
    def conjugacy_classes(self):
        """List of records: label, size, d_min, signature, elliptic, rep,
        members (frozenset)."""
        if self._class_records is None:
            self._build_classes()
        return self._class_records

    def class_of(self, a):
        if self._class_index is None:
            self._build_classes()
        return self._class_records[self._class_index[a]]["label"]

    def class_record(self, label):
        for rec in self.conjugacy_classes():
            if rec["label"] == label:
                return rec
        raise KeyError(str(label))

    def d_C(self, label):
        return self.class_record(label)["d_min"]

    def min_length_elements(self, label):
        rec = self.class_record(label)
        reps = tuple(
            sorted(x for x in rec["members"] if self.length(x) == rec["d_min"])
        )
        return rec["d_min"], reps, True

    def is_elliptic(self, label):
        return self.class_record(label)["elliptic"]

    def _build_classes(self):
        elements = self.elements()
        index = {}
        records = []
        for a in elements:
            if a in index:
                continue
            orbit = {a}
            frontier = [a]
            while frontier:
                nxt = []
                for x in frontier:
                    for s in self._gen_perms:
                        y = tuple(s[x[s[i]]] for i in range(len(x)))
                        if y not in orbit:
                            orbit.add(y)
                            nxt.append(y)
                frontier = nxt
            idx = len(records)
            for x in orbit:
                index[x] = idx
            rep = min(orbit, key=lambda x: (self.length(x), x))
            sig = self.char_poly_signature(rep)
            records.append(
                {
                    "size": len(orbit),
                    "d_min": min(self.length(x) for x in orbit),
                    "signature": sig,
                    "elliptic": all(d != 1 for d, _ in sig),
                    "rep": rep,
                    "members": frozenset(orbit),
                }
            )
        assert sum(r["size"] for r in records) == _GROUP_ORDER[self.family]
        self._assign_labels(records)
        self._class_records = records
        self._class_index = index

    def _assign_labels(self, records):
        by_sig = {}
        for rec in records:
            by_sig.setdefault(rec["signature"], []).append(rec)
        for sig, group in by_sig.items():
            if len(group) == 1:
                group[0]["label"] = ClassLabel(self.family, signature=sig)
            elif self.family == "F4" and sig == ((2, 2), (6, 1)):
                wl = self.long_root_subgroup()
                hits = [rec for rec in group if rec["members"] & wl]
                assert len(group) == 2 and len(hits) == 1
                for rec in group:
                    rec["label"] = ClassLabel(
                        self.family, signature=sig, disc="'" if rec in hits else "''"
                    )
            else:
                group.sort(key=lambda r: (r["size"], r["d_min"], r["rep"]))
                for k, rec in enumerate(group, start=1):
                    rec["label"] = ClassLabel(
                        self.family, signature=sig, disc="#%d" % k
                    )

    def long_root_subgroup(self):
        """Subgroup generated by reflections in the long roots."""
        if self._long_subgroup is None:
            top = max(self.root_norm(v) for v in self.positive_roots)
            gens = [
                self._root_reflection_perm(v)
                for v in self.positive_roots
                if self.root_norm(v) == top
            ]
            self._long_subgroup = frozenset(self._closure(gens))
        return self._long_subgroup

    def _root_reflection_perm(self, alpha):
        r = self.rank
        na = self.root_norm(alpha)
        out = []
        for v in self.roots:
            pairing = Fraction(
                2 * sum(v[i] * self._form[i][j] * alpha[j] for i in range(r) for j in range(r)),
                na,
            )
            assert pairing.denominator == 1
            w = tuple(v[i] - int(pairing) * alpha[i] for i in range(r))
            out.append(self.root_index[w])
        return tuple(out)

    # -- parabolic subgroups -----------------------------------------------------
    def subgroup(self, J):
        """Frozenset of the standard parabolic W_J (J: 1-based indices)."""
        if not J:
            return frozenset({self.identity})
        return frozenset(self._closure([self._gen_perms[i - 1] for i in J]))

    def component_types(self, J):
        """Connected components of J in the diagram: list of
        (type_string, sorted_nodes, all_long) records."""
        J = sorted(J)
        A = self.cartan
        d = _SYMMETRIZER[self.family]
        seen, comps = set(), []
        for i in J:
            if i in seen:
                continue
            comp, stack = {i}, [i]
            while stack:
                x = stack.pop()
                for j in J:
                    if j not in comp and A[x - 1][j - 1]:
                        comp.add(j)
                        stack.append(j)
            seen |= comp
            comps.append(sorted(comp))
        out = []
        dmax = max(d)
        for comp in comps:
            double = any(
                A[i - 1][j - 1] * A[j - 1][i - 1] > 1
                for i, j in itertools.combinations(comp, 2)
            )
            nlong = sum(1 for i in comp if d[i - 1] == dmax)
            if double:
                if self.family == "G2":
                    typ = "G2"
                else:
                    typ = {(2, 1): "B2", (3, 2): "B3", (3, 1): "C3", (4, 2): "F4"}[
                        (len(comp), nlong)
                    ]
                out.append((typ, comp, None))
                continue
            branch = [
                i for i in comp if sum(1 for j in comp if j != i and A[i - 1][j - 1]) > 2
            ]
            if not branch:
                out.append(("A%d" % len(comp), comp, nlong == len(comp)))
            else:
                assert len(branch) == 1
                arms = sorted(self._arm_lengths(comp, branch[0]))
                if arms[0] == arms[1] == 1:
                    typ = "D%d" % len(comp)
                else:
                    typ = "E%d" % len(comp)
                out.append((typ, comp, True))
        return out

    def _arm_lengths(self, comp, b):
        A = self.cartan
        arms = []
        for start in comp:
            if start == b or not A[b - 1][start - 1]:
                continue
            ln, prev, cur = 1, b, start
            while True:
                nxt = [
                    j for j in comp if j not in (prev, cur) and A[cur - 1][j - 1]
                ]
                if not nxt:
                    break
                prev, cur = cur, nxt[0]
                ln += 1
            arms.append(ln)
        return arms


# ----------------------------------------------------------------------
# registry

_GROUPS = {}


def weyl_group(descriptor):
    if isinstance(descriptor, str):
        descriptor = parse_descriptor(descriptor)
    if descriptor not in _GROUPS:
        if descriptor.is_exceptional:
            _GROUPS[descriptor] = ExceptionalWeylGroup(descriptor)
        else:
            _GROUPS[descriptor] = ClassicalWeylGroup(descriptor)
    return _GROUPS[descriptor]


def parse_descriptor(text):
    text = text.strip().upper()
    if text in _EXCEPTIONAL_RANK:
        return GroupDescriptor(text, _EXCEPTIONAL_RANK[text])
    return GroupDescriptor(text[0], int(text[1:]))
