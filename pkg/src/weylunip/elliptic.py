"""Elliptic conjugacy classes of the classical Weyl groups W(B_n) = W(C_n)
and W(D_n), parametrized by partitions.

A partition p = (p_1 >= ... >= p_sigma) of n labels the elliptic class whose
elements have signed cycle type (no positive cycles, negative cycles of
lengths p_i).  This module builds the standard representative w_p as a
permutation of [1..nu] (nu = 2n + kappa) commuting with i -> nu+1-i, the
sign vector psi, the minimal-length formulas, and the palindromic-block
reduced words ("excellent decompositions") for w_p^{-1}.
"""

from dataclasses import dataclass


def kappa(m):
    return m % 2


def is_partition(p):
    return (
        all(isinstance(x, int) and x >= 1 for x in p)
        and all(p[i] >= p[i + 1] for i in range(len(p) - 1))
    )


def partitions_of(n, max_part=None):
    """All partitions of n as weakly decreasing tuples."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, first):
            yield (first,) + rest


def plus_partitions_of(n):
    """Partitions of n with an even number of parts (the D_n elliptic set)."""
    return (p for p in partitions_of(n) if len(p) % 2 == 0)


def psi(p):
    """The sign vector attached to a partition.

    psi(t) = +1 if t is odd and p_t < p_x for all x < t (vacuous for t = 1),
    -1 if t is even and p_x < p_t for all x > t (vacuous for t = sigma),
    else 0.
    """
    assert is_partition(p)
    s = len(p)
    out = []
    for t in range(1, s + 1):
        pt = p[t - 1]
        if t % 2 == 1 and all(pt < p[x - 1] for x in range(1, t)):
            out.append(1)
        elif t % 2 == 0 and all(p[x - 1] < pt for x in range(t + 1, s + 1)):
            out.append(-1)
        else:
            out.append(0)
    return tuple(out)


def psi_extended(p, kap):
    """psi on [1, sigma+1] with the convention 2*p_{sigma+1} = kappa."""
    s = len(p)
    last = -1 if (s % 2 == 1 and kap == 1) else 0
    return psi(p) + (last,)


def w_from_partition(p, kap):
    """The standard elliptic element as a one-line permutation of [1..nu].

    Block h occupies positions p_{<h}+1 .. p_{<h}+p_h and forms a single
    negative p_h-cycle; the permutation commutes with i -> nu+1-i, and for
    kappa = 1 it fixes n+1.
    """
    assert is_partition(p)
    n = sum(p)
    nu = 2 * n + kap
    a = list(range(1, nu + 1))
    pos = 0
    for part in p:
        for i in range(pos + 1, pos + part):
            a[i - 1] = i + 1
        a[pos + part - 1] = nu - pos  # top of block -> mirror of block start
        pos += part
    for i in range(1, n + 1):
        a[nu - i] = nu + 1 - a[i - 1]
    if kap == 1:
        a[n] = n + 1
    return tuple(a)


def d_C_classical(p, family):
    """Minimal length of the elliptic class of p in type B/C (or D)."""
    assert is_partition(p)
    assert family in ("B", "C", "D")
    n = sum(p)
    s = len(p)
    base = 2 * sum(v * p[v] for v in range(1, s)) + n
    if family == "D":
        if s % 2:
            raise ValueError("type D needs an even number of parts")
        return base - s
    return base


@dataclass(frozen=True)
class ExcellentDecomposition:
    """A reduced word for w_p^{-1} cut into odd palindromic blocks.

    Letters are generator indices 1..n.  In type D the letter n denotes the
    fork generator (the conjugate of s_{n-1} by s_n inside W(B_n)); letters
    1..n-1 are the usual string generators.
    """

    family: str
    n: int
    partition: tuple
    variant: str
    blocks: tuple

    @property
    def letters(self):
        return tuple(x for b in self.blocks for x in b)

    def __str__(self):
        return "".join("(%s)" % " ".join(map(str, b)) for b in self.blocks)


def _pal(m, n):
    # m, m+1, ..., n-1, n, n-1, ..., m
    return tuple(range(m, n)) + (n,) + tuple(range(n - 1, m - 1, -1))


def _valley(m, n):
    # n, n-1, ..., m, ..., n-1, n
    return tuple(range(n, m, -1)) + (m,) + tuple(range(m + 1, n + 1))


def _mountain(a, b, n):
    # a, ..., n, ..., b, ..., n, ..., a   (center at b; b < a <= n-1)
    up1 = tuple(range(a, n + 1))
    down1 = tuple(range(n - 1, b, -1))
    up2 = tuple(range(b + 1, n + 1))
    down2 = tuple(range(n - 1, a - 1, -1))
    return up1 + down1 + (b,) + up2 + down2


def _tilde_valley(m, n):
    # the valley with both visits to n removed and the n-1 endpoints
    # replaced by the fork generator (encoded as letter n)
    if m == n - 1:
        return (n,)
    inner = tuple(range(n - 2, m, -1)) + (m,) + tuple(range(m + 1, n - 1))
    return (n,) + inner + (n,)


def _tilde_mountain(a, b, n):
    up1 = tuple(range(a, n))            # a .. n-1
    arc = _tilde_valley(b, n)           # fork arc dipping to b
    down2 = tuple(range(n - 1, a - 1, -1))
    return up1 + arc + down2


def _prefix_sums(p):
    L = [0]
    for x in p:
        L.append(L[-1] + x)
    return L


def _blocks_variant_a(p, n):
    s = len(p)
    L = _prefix_sums(p)
    blocks = [(i,) for i in range(n, n - p[s - 1], -1)]
    for k in range(s - 1, 0, -1):
        blocks.append(_pal(L[k], n))
        blocks.extend((i,) for i in range(L[k] - 1, L[k - 1], -1))
    return tuple(blocks)


def _blocks_variant_b(p, n, tilde=False):
    s = len(p)
    L = _prefix_sums(p)
    valley = _tilde_valley if tilde else _valley
    mountain = _tilde_mountain if tilde else _mountain
    blocks = [valley(L[s - 1], n)]
    blocks.extend((i,) for i in range(n - 1, L[s - 2], -1))
    for j in range(1, s // 2):
        a, b = L[s - 2 * j], L[s - 2 * j - 1]
        blocks.append(mountain(a, b, n))
        blocks.extend((i,) for i in range(a - 1, L[s - 2 * j - 2], -1))
    return tuple(blocks)


def excellent_decomposition(p, family, variant="a"):
    """Generate the palindromic-block reduced word for w_p^{-1}.

    family 'B'/'C': variant 'a' for any partition, variant 'b' for
    partitions with an even number of parts.  family 'D' (even number of
    parts required) has a single variant derived from 'b'.
    """
    p = tuple(p)
    assert is_partition(p) and p
    n = sum(p)
    s = len(p)
    if family in ("B", "C"):
        if variant == "a":
            blocks = _blocks_variant_a(p, n)
        elif variant == "b":
            if s % 2:
                raise ValueError("variant b needs an even number of parts")
            blocks = _blocks_variant_b(p, n)
        else:
            raise ValueError("unknown variant %r" % variant)
    elif family == "D":
        if s % 2:
            raise ValueError("type D needs an even number of parts")
        blocks = _blocks_variant_b(p, n, tilde=True)
        variant = "d"
    else:
        raise ValueError("unknown family %r" % family)
    dec = ExcellentDecomposition(family, n, p, variant, blocks)
    expected = d_C_classical(p, "D" if family == "D" else family)
    assert len(dec.letters) == expected, (p, family, variant, dec.letters)
    assert len(blocks) == n
    assert all(len(b) % 2 == 1 and b == b[::-1] for b in blocks)
    return dec


# Palindromic-block reduced words accounting for every elliptic class of
# the enumerable exceptional groups (embedded data, validated at test time;
# no generator for these is attempted).
EXCEPTIONAL_EXCELLENT = {
    "G2": [
        ((1,), (2,)),
        ((1, 2, 1), (2,)),
        ((1, 2, 1, 2, 1), (2,)),
    ],
    "F4": [
        ((1,), (2,), (3,), (4,)),
        ((1,), (2, 3, 2), (3,), (4,)),
        ((1, 2, 1), (3, 2, 3), (4,), (3,)),
        ((1,), (2,), (3, 2, 3, 4, 3, 2, 3), (4,)),
        ((4,), (3,), (2, 3, 2, 1, 2, 3, 2), (1,)),
        ((1, 2, 3, 2, 1), (2, 3, 4, 3, 2), (3,), (4,)),
        ((2,), (1, 2, 3, 2, 1), (3, 2, 3, 4, 3, 2, 3), (4,)),
        ((2, 3, 2, 4, 3, 1, 2, 1, 3, 4, 2, 3, 2), (3,), (1,), (4,)),
        ((4, 3, 2, 1, 3, 4, 2, 3, 2, 4, 3, 1, 2, 3, 4), (1, 2, 3, 2, 1), (2, 3, 2), (3,)),
    ],
    "E6": [
        ((1,), (2,), (3,), (4,), (5,), (6,)),
        ((1,), (3,), (4,), (2,), (4, 5, 4), (6,)),
        ((1,), (3,), (4,), (2, 3, 4, 5, 4, 3, 2), (6,), (5,)),
        ((1,), (2,), (3,), (4, 3, 2, 4, 5, 4, 2, 3, 4), (5,), (6,)),
        (
            (4, 3, 5, 4, 1, 3, 2, 4, 5, 6, 5, 4, 2, 3, 1, 4, 5, 3, 4),
            (2,),
            (1,),
            (3,),
            (5,),
            (6,),
        ),
    ],
}


def validate_excellent(dec, w, group):
    """Check an excellent decomposition against a target group element.

    Asserts: the block product equals w; the total letter count equals the
    length of w (so the expression is reduced); every block is an odd
    palindrome; the block count is the rank; w has minimal length in its
    conjugacy class.  Returns a report dict with one verdict per check.
    """
    report = {}
    product = group.word_to_element(dec.letters)
    report["product_matches"] = product == w
    lw = group.length(w)
    report["reduced"] = len(dec.letters) == lw
    report["palindromic_blocks"] = all(
        len(b) % 2 == 1 and tuple(b) == tuple(reversed(b)) for b in dec.blocks
    )
    report["block_count_is_rank"] = len(dec.blocks) == group.rank
    report["minimal_length"] = lw == group.d_C(group.class_of(w))
    report["ok"] = all(report.values())
    return report
