"""Unipotent class labels and their combinatorics.

Classical labels are Jordan partitions (with form-condition flags in
characteristic 2); exceptional labels are class names from the embedded
elliptic tables.  Includes the partition-to-Jordan-type map gamma for the
isometry groups, dominance order, centralizer dimension formulas in type C
characteristic 2, distinguished/basic predicates, and the small injection
from partitions to odd-dimensional Jordan types.
"""

import hashlib
from dataclasses import dataclass

from .elliptic import is_partition, partitions_of, psi
from .linalg import euler_phi
from .weylgroups import ClassLabel, GroupDescriptor

FORM_HIT = "hit"          # the bilinear evaluation is nonzero on the block
FORM_UNKNOWN = "unknown"  # not asserted (e.g. doubled blocks from descent)


@dataclass(frozen=True)
class UnipotentLabel:
    """Classical: Jordan partition, plus per-part form-condition flags when
    p = 2.  Exceptional: a class name string."""

    parts: tuple = ()
    flags: tuple = ()   # ((part_size, FORM_HIT | FORM_UNKNOWN), ...), p = 2 only
    name: str = ""

    def __str__(self):
        if self.name:
            return self.name
        body = "(%s)" % ",".join(map(str, self.parts))
        if self.flags:
            marks = {s: v for s, v in self.flags}
            body += "{%s}" % ",".join(
                "%d:%s" % (s, "*" if v == FORM_HIT else "?") for s, v in sorted(marks.items(), reverse=True)
            )
        return body

    @property
    def weight(self):
        return sum(self.parts)


def jordan_label(parts, flags=()):
    parts = tuple(sorted(parts, reverse=True))
    assert is_partition(parts)
    return UnipotentLabel(parts=parts, flags=tuple(sorted(flags, reverse=True)))


# ----------------------------------------------------------------------
# the partition-to-Jordan-type map

def gamma_from_partition(p, G, char):
    """Jordan type of the standard unipotent class attached to a partition.

    G is the GroupDescriptor of the isometry group's Weyl group: family C
    for the symplectic group Sp_{2n}, B for SO_{2n+1}, D for SO_{2n}.
    char is 0, 2, or an odd prime ("odd" behaves like 0).
    """
    p = tuple(p)
    assert is_partition(p) and p
    fam = G.family if isinstance(G, GroupDescriptor) else G
    assert fam in ("B", "C", "D")
    if fam == "D" and len(p) % 2:
        raise ValueError("type D needs an even number of parts")
    even_parts = tuple(2 * x for x in p)
    if fam == "C" or (fam == "D" and char == 2):
        parts = even_parts
    elif fam == "B" and char == 2:
        parts = even_parts + (1,)
    else:
        ps = psi(p)
        parts = tuple(2 * x + e for x, e in zip(p, ps))
        if fam == "B" and len(p) % 2 == 0:
            parts = parts + (1,)
    parts = tuple(sorted(parts, reverse=True))
    flags = ()
    if char == 2:
        flags = tuple((s, FORM_HIT) for s in even_parts)
    return UnipotentLabel(parts=parts, flags=tuple(sorted(flags, reverse=True)))


def phi_small_injection(p):
    """The map from partitions of n to Jordan types of 2n+1: parts
    2p_i + psi(i), padded with a final 1 when the part count is even."""
    p = tuple(p)
    assert is_partition(p) and p
    ps = psi(p)
    parts = tuple(2 * x + e for x, e in zip(p, ps))
    assert all(parts[i] >= parts[i + 1] for i in range(len(parts) - 1))
    if len(p) % 2 == 0:
        parts = parts + (1,)
    assert sum(parts) == 2 * sum(p) + 1
    return parts


# ----------------------------------------------------------------------
# dominance order

def dominance_leq(lam, mu):
    """lam <= mu in dominance: all prefix sums of lam bounded by mu's.
    Requires equal totals."""
    lam, mu = tuple(lam), tuple(mu)
    if sum(lam) != sum(mu):
        raise ValueError("dominance needs equal totals")
    k = max(len(lam), len(mu))
    a = b = 0
    for i in range(k):
        a += lam[i] if i < len(lam) else 0
        b += mu[i] if i < len(mu) else 0
        if a > b:
            return False
    return True


def dominance_minimal(labels):
    """The dominance-minimal elements among a set of Jordan labels."""
    out = []
    for lab in labels:
        if all(
            lab is other or not dominance_leq(other.parts, lab.parts) or other.parts == lab.parts
            for other in labels
        ):
            out.append(lab)
    return out


# ----------------------------------------------------------------------
# centralizer dimensions (type C, characteristic 2 formula)

def centralizer_dim_typeC_p2(lam):
    """dim of the centralizer of a type C unipotent with all-even Jordan
    type (2p_1 >= ... >= 2p_sigma), via the block-count formula
    sum_h (f_{2h}^2 - f_{2h}) + n with f_j = #{i : 2p_i >= j}."""
    lam = tuple(lam)
    if any(x % 2 for x in lam):
        raise ValueError("needs all even parts")
    n = sum(lam) // 2
    top = max(lam)
    total = 0
    for h in range(1, top // 2 + 1):
        f = sum(1 for x in lam if x >= 2 * h)
        total += f * f - f
    return total + n


def check_X_equals_2Y(p):
    """The identity X = 2Y relating block counts to the length formula."""
    p = tuple(p)
    assert is_partition(p) and p
    lam = [2 * x for x in p]
    top = max(lam)
    X = 0
    for h in range(1, top // 2 + 1):
        f = sum(1 for x in lam if x >= 2 * h)
        X += f * f - f
    Y = sum(v * p[v] for v in range(1, len(p)))
    return X == 2 * Y


# ----------------------------------------------------------------------
# distinguished classes

def is_distinguished(label, G, char=0):
    """Whether the class is distinguished (meets no proper Levi)."""
    if label.name:
        fam = G.family if isinstance(G, GroupDescriptor) else G
        row = _ROW_BY_NAME.get((fam, label.name))
        if row is None:
            return False  # only basic classes can be distinguished
        if row.dist == "always":
            return True
        if row.dist.startswith("p="):
            return char == int(row.dist[2:])
        return False
    fam = G.family if isinstance(G, GroupDescriptor) else G
    parts = label.parts
    if fam == "A":
        return len(parts) == 1
    if char == 2:
        body = [x for x in parts if x % 2 == 0]
        odd = [x for x in parts if x % 2]
        ok_shape = (fam == "B" and odd == [1]) or (fam in ("C", "D") and not odd)
        if not ok_shape:
            raise ValueError("p=2 distinguished test needs an even-block label")
        return all(body.count(x) <= 2 for x in set(body))
    if fam == "C":
        return all(x % 2 == 0 for x in parts) and len(set(parts)) == len(parts)
    # orthogonal, odd characteristic
    return all(x % 2 for x in parts) and len(set(parts)) == len(parts)


# ----------------------------------------------------------------------
# classical unipotent class inventories (good characteristic)

def unipotent_class_list(G, char=0):
    """All unipotent class labels of the group attached to G.

    Supported in characteristic != 2 (the p = 2 inventories carry form
    data and are only assembled empirically over finite fields)."""
    if char == 2:
        raise ValueError("p=2 inventories are built from explicit matrices")
    fam = G.family
    nu = G.nu
    if fam == "A":
        return [jordan_label(lam) for lam in partitions_of(nu)]
    out = []
    for lam in partitions_of(nu):
        if fam == "C":
            if all(lam.count(x) % 2 == 0 for x in set(lam) if x % 2):
                out.append(jordan_label(lam))
        else:
            if all(lam.count(x) % 2 == 0 for x in set(lam) if x % 2 == 0):
                if fam == "D" and all(x % 2 == 0 for x in lam):
                    out.append(UnipotentLabel(parts=lam, name="(%s)+" % ",".join(map(str, lam))))
                    out.append(UnipotentLabel(parts=lam, name="(%s)-" % ",".join(map(str, lam))))
                else:
                    out.append(jordan_label(lam))
    return out


# ----------------------------------------------------------------------
# exceptional tables

@dataclass(frozen=True)
class ExceptionalTableRow:
    family: str
    d: int
    signature: tuple   # ((d_i, mult_i), ...)
    disc: str          # "'" / "''" for the F4 collision, else ""
    name: str
    dist: str          # "always" | "p=2" | "p=3" | "none"


def _sig(*pairs):
    return tuple(sorted(pairs))


_RAW_TABLE = [
    # G2
    ("G2", 2, _sig((6, 1)), "", "G2", "always"),
    ("G2", 4, _sig((3, 1)), "", "G2(a_1)", "always"),
    ("G2", 6, _sig((2, 2)), "", "~A_1", "p=3"),
    # F4
    ("F4", 4, _sig((12, 1)), "", "F4", "always"),
    ("F4", 6, _sig((8, 1)), "", "F4(a_1)", "always"),
    ("F4", 8, _sig((6, 2)), "", "F4(a_2)", "always"),
    ("F4", 10, _sig((2, 2), (6, 1)), "'", "B_3", "none"),
    ("F4", 10, _sig((2, 2), (6, 1)), "''", "C_3", "none"),
    ("F4", 12, _sig((4, 2)), "", "F4(a_3)", "always"),
    ("F4", 14, _sig((2, 2), (4, 1)), "", "C_3(a_1)", "p=2"),
    ("F4", 16, _sig((3, 2)), "", "~A_2+A_1", "p=2"),
    ("F4", 24, _sig((2, 4)), "", "A_1+~A_1", "none"),
    # E6
    ("E6", 6, _sig((3, 1), (12, 1)), "", "E6", "always"),
    ("E6", 8, _sig((9, 1)), "", "E6(a_1)", "always"),
    ("E6", 12, _sig((3, 1), (6, 2)), "", "A_5+A_1", "always"),
    ("E6", 14, _sig((2, 2), (3, 1), (6, 1)), "", "A_5", "none"),
    ("E6", 24, _sig((3, 3)), "", "2A_2+A_1", "none"),
    # E7
    ("E7", 7, _sig((2, 1), (18, 1)), "", "E7", "always"),
    ("E7", 9, _sig((2, 1), (14, 1)), "", "E7(a_1)", "always"),
    ("E7", 11, _sig((2, 1), (6, 1), (12, 1)), "", "E7(a_2)", "always"),
    ("E7", 13, _sig((2, 1), (6, 1), (10, 1)), "", "D_6+A_1", "always"),
    ("E7", 15, _sig((2, 3), (10, 1)), "", "D_6", "none"),
    ("E7", 17, _sig((2, 1), (4, 1), (8, 1)), "", "D_6(a_1)+A_1", "always"),
    ("E7", 21, _sig((2, 1), (6, 3)), "", "D_6(a_2)+A_1", "always"),
    ("E7", 23, _sig((2, 3), (6, 2)), "", "D_6(a_2)", "none"),
    ("E7", 25, _sig((2, 1), (3, 2), (6, 1)), "", "(A_5+A_1)''", "none"),
    ("E7", 31, _sig((2, 5), (6, 1)), "", "D_4+A_1", "none"),
    ("E7", 33, _sig((2, 3), (4, 2)), "", "A_3+A_2+A_1", "none"),
    ("E7", 63, _sig((2, 7)), "", "4A_1", "none"),
    # E8
    ("E8", 8, _sig((30, 1)), "", "E8", "always"),
    ("E8", 10, _sig((24, 1)), "", "E8(a_1)", "always"),
    ("E8", 12, _sig((20, 1)), "", "E8(a_2)", "always"),
    ("E8", 14, _sig((6, 1), (18, 1)), "", "E7+A_1", "always"),
    ("E8", 16, _sig((15, 1)), "", "D_8", "always"),
    ("E8", 16, _sig((2, 2), (18, 1)), "", "E7", "none"),
    ("E8", 18, _sig((2, 2), (14, 1)), "", "E7(a_1)+A_1", "always"),
    ("E8", 20, _sig((12, 2)), "", "D_8(a_1)", "always"),
    ("E8", 22, _sig((4, 2), (12, 1)), "", "D_7", "none"),
    ("E8", 22, _sig((6, 2), (12, 1)), "", "E7(a_2)+A_1", "always"),
    ("E8", 24, _sig((10, 2)), "", "A_8", "always"),
    ("E8", 24, _sig((2, 2), (6, 1), (12, 1)), "", "E7(a_2)", "none"),
    ("E8", 26, _sig((3, 2), (12, 1)), "", "E6+A_1", "none"),
    ("E8", 26, _sig((2, 2), (6, 1), (10, 1)), "", "D_7(a_1)", "p=2"),
    ("E8", 28, _sig((3, 1), (9, 1)), "", "D_8(a_3)", "always"),
    ("E8", 30, _sig((8, 2)), "", "A_7", "p=3"),
    ("E8", 32, _sig((2, 4), (10, 1)), "", "D_6", "none"),
    ("E8", 34, _sig((2, 2), (4, 1), (8, 1)), "", "D_5+A_2", "p=2"),
    ("E8", 40, _sig((6, 4)), "", "2A_4", "always"),
    ("E8", 42, _sig((2, 2), (6, 3)), "", "A_5+A_2", "none"),
    ("E8", 44, _sig((2, 4), (6, 2)), "", "D_6(a_2)", "none"),
    ("E8", 44, _sig((3, 2), (6, 2)), "", "A_5+2A_1", "none"),
    ("E8", 46, _sig((2, 2), (3, 2), (6, 1)), "", "(A_5+A_1)'", "none"),
    ("E8", 46, _sig((2, 2), (4, 2), (6, 1)), "", "D_5(a_1)+A_2", "none"),
    ("E8", 48, _sig((5, 2)), "", "A_4+A_3", "none"),
    ("E8", 60, _sig((4, 4)), "", "2A_3", "none"),
    ("E8", 64, _sig((2, 6), (6, 1)), "", "D_4+A_1", "none"),
    ("E8", 66, _sig((2, 4), (4, 2)), "", "A_3+A_2+A_1", "none"),
    ("E8", 80, _sig((3, 4)), "", "2A_2+2A_1", "none"),
    ("E8", 120, _sig((2, 8)), "", "4A_1", "none"),
]

EXPECTED_ROW_COUNTS = {"G2": 3, "F4": 9, "E6": 5, "E7": 12, "E8": 30}
_RANKS = {"G2": 2, "F4": 4, "E6": 6, "E7": 7, "E8": 8}

# sha256 of the canonical serialization below; the transcription is data
# and any edit must update this deliberately
TABLE_SHA256 = "eb7a29a24d11b7fc5c980dba96581aef026ccacbb227beaa30172115e32cd49b"


def _load_table():
    rows = [ExceptionalTableRow(*r) for r in _RAW_TABLE]
    counts = {}
    for row in rows:
        counts[row.family] = counts.get(row.family, 0) + 1
        deg = sum(m * euler_phi(d) for d, m in row.signature)
        assert deg == _RANKS[row.family], (row, deg)
    assert counts == EXPECTED_ROW_COUNTS, counts
    for fam in counts:
        keys = [(r.signature, r.disc) for r in rows if r.family == fam]
        assert len(keys) == len(set(keys)), "duplicate signature key in %s" % fam
    blob = "\n".join(
        "%s;%d;%s;%s;%s;%s"
        % (r.family, r.d, r.signature, r.disc or "-", r.name, r.dist)
        for r in rows
    ).encode()
    digest = hashlib.sha256(blob).hexdigest()
    assert digest == TABLE_SHA256, digest
    return tuple(rows)


EXCEPTIONAL_TABLE = _load_table()
_ROW_BY_NAME = {(r.family, r.name): r for r in EXCEPTIONAL_TABLE}


def basic_row_by_name(family, name):
    return _ROW_BY_NAME.get((family, name))


def table_rows(family):
    return [r for r in EXCEPTIONAL_TABLE if r.family == family]


def exceptional_lookup(family, signature, disc=None):
    """The unique table row with the given cyclotomic signature."""
    hits = [r for r in EXCEPTIONAL_TABLE if r.family == family and r.signature == tuple(signature)]
    if not hits:
        raise KeyError("no elliptic class of %s has signature %s" % (family, signature))
    if len(hits) == 1:
        return hits[0]
    if disc is None:
        raise ValueError(
            "signature %s is ambiguous in %s; a discriminator is required"
            % (signature, family)
        )
    for r in hits:
        if r.disc == disc:
            return r
    raise KeyError("no row with discriminator %r" % disc)


def exceptional_lookup_label(label):
    assert isinstance(label, ClassLabel) and label.signature
    return exceptional_lookup(label.family, label.signature, label.disc or None)
