"""Linear matroids over GF(2^b): incidence construction, normalization,
dualization, randomized k-truncation, and base counting.

All subset-independence questions are answered through a row-reduced standard
form: once the representation is brought to reduced row echelon form, the
determinant of any r columns (and the rank of any smaller column set) is, up
to sign, a complementary minor of the non-pivot block.  Those minors are
memoized, so repeated subset scans cost dictionary lookups instead of fresh
eliminations.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .errors import CapExceededError, DEFAULT_SUBSET_CAP
from .gf2 import FFMatrix, FieldSpec, MatrixFormatError, format_matrix, parse_matrix, random_matrix
from .graphs import Multigraph


class TruncationRankError(ValueError):
    """Raised when a k-truncation is requested of a matroid with rank < k."""


@dataclass(frozen=True)
class LinearMatroid:
    """A representation matrix plus ground-set labels (one per column).

    `perm` records a column permutation if some operation reorders columns;
    the operations here keep columns in their original positions, so it stays
    None and element identity is preserved directly.
    """

    rep: FFMatrix
    ground: tuple[int, ...]
    perm: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if len(self.ground) != self.rep.cols:
            raise ValueError("one ground label per column required")

    @classmethod
    def from_matrix(cls, rep: FFMatrix) -> "LinearMatroid":
        return cls(rep, tuple(range(rep.cols)))

    @property
    def m(self) -> int:
        return self.rep.cols

    @property
    def field(self) -> FieldSpec:
        return self.rep.spec


GF2 = FieldSpec.default(1)


def from_incidence(g: Multigraph) -> LinearMatroid:
    """Vertex-edge incidence matrix over F_2: column j has ones at the
    endpoints of edge j."""
    data = [[0] * g.m for _ in range(g.n)]
    for j, (u, v) in enumerate(g.edges):
        data[u][j] = 1
        data[v][j] = 1
    return LinearMatroid.from_matrix(FFMatrix.from_rows(GF2, data, g.m))


def normalize(m: LinearMatroid) -> LinearMatroid:
    """Replace the representation by its rref with zero rows dropped, so the
    row count equals the rank.  Column dependencies are unchanged."""
    pivots, red = m.rep.rref()
    rows = red.data[: len(pivots)]
    return LinearMatroid(FFMatrix(m.rep.spec, rows, m.rep.cols), m.ground, m.perm)


def rank(m: LinearMatroid) -> int:
    return len(_standard_form(m.rep).pivots)


def nullity(m: LinearMatroid) -> int:
    return m.m - rank(m)


def is_normalized(m: LinearMatroid) -> bool:
    return m.rep.rows == rank(m)


# --- standard form and complementary minors -------------------------------------


class _StandardForm:
    """Reduced row echelon form of a representation, with memoized minors of
    the non-pivot block D (rows indexed by pivot position, columns by
    non-pivot position).

    For a column set S split into pivots A and non-pivots B:
      rank(S) = |A| + rank(D[rows not used by A, B]),
    so S is independent iff some |B|x|B| minor on the free rows is nonzero.
    """

    def __init__(self, rep: FFMatrix) -> None:
        self.spec = rep.spec
        pivots, red = rep.rref()
        self.pivots = pivots
        self.rank = len(pivots)
        pivot_set = set(pivots)
        self.qcols = tuple(c for c in range(rep.cols) if c not in pivot_set)
        # kind[c] = (True, pivot row index) or (False, non-pivot column index)
        self.kind: dict[int, tuple[bool, int]] = {}
        for i, c in enumerate(pivots):
            self.kind[c] = (True, i)
        for j, c in enumerate(self.qcols):
            self.kind[c] = (False, j)
        self.D = [[red.data[i][c] for c in self.qcols] for i in range(self.rank)]
        self._minors: dict[tuple[tuple[int, ...], tuple[int, ...]], int] = {((), ()): 1}

    def minor(self, rows: tuple[int, ...], cols: tuple[int, ...]) -> int:
        """Determinant of D[rows, cols] (|rows| = |cols|), memoized; Laplace
        expansion along the last column (characteristic 2, so no signs)."""
        key = (rows, cols)
        val = self._minors.get(key)
        if val is not None:
            return val
        c = cols[-1]
        rest = cols[:-1]
        mul = self.spec.mul
        acc = 0
        for i, r in enumerate(rows):
            e = self.D[r][c]
            if e:
                sub = self.minor(rows[:i] + rows[i + 1 :], rest)
                if sub:
                    acc ^= e if sub == 1 else mul(e, sub)
        self._minors[key] = acc
        return acc

    def split(self, cols) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
        """Split a column set into (used pivot rows, non-pivot block columns);
        None when it provably cannot be independent."""
        a_rows = []
        b = []
        for c in cols:
            is_piv, idx = self.kind[c]
            if is_piv:
                a_rows.append(idx)
            else:
                b.append(idx)
        if len(cols) > self.rank:
            return None
        return tuple(a_rows), tuple(b)

    def independent(self, cols) -> bool:
        sp = self.split(cols)
        if sp is None:
            return False
        a_rows, b = sp
        used = set(a_rows)
        free = tuple(i for i in range(self.rank) if i not in used)
        if len(b) > len(free):
            return False
        if len(b) == len(free):
            return self.minor(free, b) != 0
        return any(self.minor(cw, b) for cw in combinations(free, len(b)))


@lru_cache(maxsize=512)
def _standard_form(rep: FFMatrix) -> _StandardForm:
    return _StandardForm(rep)


def columns_independent(m: LinearMatroid, cols) -> bool:
    """True iff the given columns are linearly independent."""
    return _standard_form(m.rep).independent(tuple(cols))


# --- dual ------------------------------------------------------------------------


def dualize(m: LinearMatroid) -> LinearMatroid:
    """Dual matroid: bases are exactly the complements of the bases of m.

    With the representation reduced so that pivot columns carry an identity,
    the dual places an identity on the non-pivot columns and the transposed
    non-pivot block on the pivot columns; columns keep their positions, so
    ground labels carry over unchanged."""
    if not is_normalized(m):
        raise ValueError("dualize requires a normalized matroid")
    sf = _standard_form(m.rep)
    r, mm = sf.rank, m.m
    data = [[0] * mm for _ in range(mm - r)]
    for j, c in enumerate(sf.qcols):
        data[j][c] = 1
    for i, c in enumerate(sf.pivots):
        for j in range(mm - r):
            data[j][c] = sf.D[i][j]
    return LinearMatroid(FFMatrix.from_rows(m.rep.spec, data, mm), m.ground, m.perm)


# --- randomized truncation ---------------------------------------------------------


def truncation_degree(m_cols: int, k: int, sigma: int) -> int:
    """Smallest b with 2^b >= 2^sigma * k * C(m, k) (union-bound failure
    probability at most 2^-sigma)."""
    target = (1 << sigma) * k * math.comb(m_cols, k)
    return max(target - 1, 1).bit_length()


def truncate(m: LinearMatroid, k: int, sigma: int = 40, seed: int = 0) -> LinearMatroid:
    """Random k-truncation: with probability >= 1 - 2^-sigma, every column
    subset of size <= k keeps its independence verdict and the result has
    full rank k.

    The representation is embedded into GF(2^b) and multiplied on the left by
    a seeded uniform k x r matrix.  Requires a normalized input of rank >= k.
    """
    if not is_normalized(m):
        raise ValueError("truncate requires a normalized matroid")
    r = m.rep.rows
    if k > r:
        raise TruncationRankError(f"cannot {k}-truncate a matroid of rank {r}")
    if k == 0:
        return LinearMatroid(FFMatrix.from_rows(GF2, [], m.m), m.ground, m.perm)
    b = truncation_degree(m.m, k, sigma)
    spec = FieldSpec.default(b)
    t = random_matrix(spec, k, r, seed)
    if m.field.b == 1:
        # 0/1 entries: the product is a plain XOR of selected rows of T
        data = [
            [0] * m.m for _ in range(k)
        ]
        for j in range(m.m):
            col = m.rep.column(j)
            for i in range(k):
                acc = 0
                trow = t.data[i]
                for l, bit in enumerate(col):
                    if bit:
                        acc ^= trow[l]
                data[i][j] = acc
        rep = FFMatrix.from_rows(spec, data, m.m)
    else:
        if m.field.b != b:
            raise ValueError("truncation of a non-binary representation needs a field embedding")
        rep = t.matmul(m.rep)
    return LinearMatroid(rep, m.ground, m.perm)


def verify_truncation(
    original: LinearMatroid,
    truncated: LinearMatroid,
    k: int,
    cap: int = DEFAULT_SUBSET_CAP,
) -> bool:
    """True iff every column subset of size <= k has the same independence
    verdict in both matroids.

    Subsets that both sides call dependent are not extended: dependence is
    monotone under supersets in any matrix, so no disagreement can appear
    above them."""
    mm = original.m
    if truncated.m != mm:
        raise ValueError("ground sets differ")
    if k == 0:
        return True
    if sum(math.comb(mm, j) for j in range(1, k + 1)) > cap:
        raise CapExceededError("subset enumeration cap exceeded")
    sfo = _standard_form(original.rep)
    sft = _standard_form(truncated.rep)

    def rec(start: int, chosen: tuple[int, ...]) -> bool:
        for c in range(start, mm):
            s = chosen + (c,)
            io = sfo.independent(s)
            if io != sft.independent(s):
                return False
            if io and len(s) < k and not rec(c + 1, s):
                return False
        return True

    return rec(0, ())


# --- base counting -----------------------------------------------------------------


def count_bases_brute(m: LinearMatroid, cap: int = DEFAULT_SUBSET_CAP) -> int:
    """Number of rank-sized column subsets of full rank, by subset scan."""
    sf = _standard_form(m.rep)
    r = sf.rank
    if math.comb(m.m, r) > cap:
        raise CapExceededError("base enumeration cap exceeded")
    count = 0
    for s in combinations(range(m.m), r):
        a_rows, b = sf.split(s)
        free = tuple(i for i in range(r) if i not in set(a_rows)) if a_rows else tuple(range(r))
        if len(b) == len(free) and sf.minor(free, b):
            count += 1
    return count


@dataclass(frozen=True)
class FptCount:
    """Result of the duplicate-column-collapsing base counter."""

    bases: int
    distinct_values: int
    subsets_scanned: int


def count_bases_fpt_detailed(m: LinearMatroid, cap: int = DEFAULT_SUBSET_CAP) -> FptCount:
    """Collapse duplicate columns and scan k-subsets of distinct values.

    Two equal nonzero columns are never jointly independent, so every basis
    picks distinct values; each independent value set contributes the product
    of its multiplicities.  The scan size is at most C(s^k, k) for field
    order s."""
    if not is_normalized(m):
        raise ValueError("count_bases_fpt requires a normalized matroid")
    k = m.rep.rows
    if m.field.order ** k > cap:
        raise CapExceededError("field too large for the duplicate-collapsing route")
    if k == 0:
        return FptCount(1, len(set(m.rep.column(j) for j in range(m.m))), 1)
    groups: dict[tuple[int, ...], tuple[int, int]] = {}
    for j in range(m.m):
        col = m.rep.column(j)
        first, mult = groups.get(col, (j, 0))
        groups[col] = (first, mult + 1)
    reps = sorted(groups.values())
    sf = _standard_form(m.rep)
    total = 0
    scanned = 0
    for chosen in combinations(reps, k):
        scanned += 1
        if sf.independent(tuple(j for j, _ in chosen)):
            prod = 1
            for _, mult in chosen:
                prod *= mult
            total += prod
    return FptCount(total, len(reps), scanned)


def count_bases_fpt(m: LinearMatroid, cap: int = DEFAULT_SUBSET_CAP) -> int:
    return count_bases_fpt_detailed(m, cap).bases


def count_bases(m: LinearMatroid, method: str = "auto", cap: int = DEFAULT_SUBSET_CAP) -> int:
    """Base count; `auto` tries the duplicate-collapsing route and falls back
    to the brute subset scan when the field is too large."""
    if method == "brute":
        return count_bases_brute(m, cap)
    if method == "fpt":
        return count_bases_fpt(m, cap)
    if method == "auto":
        if is_normalized(m):
            try:
                return count_bases_fpt(m, cap)
            except CapExceededError:
                pass
        return count_bases_brute(m, cap)
    raise ValueError(f"unknown method {method!r}")


def enumerate_bases(m: LinearMatroid, cap: int = DEFAULT_SUBSET_CAP) -> list[tuple[int, ...]]:
    """All bases as sorted column-index tuples (for exhaustive cross-checks)."""
    sf = _standard_form(m.rep)
    r = sf.rank
    if math.comb(m.m, r) > cap:
        raise CapExceededError("base enumeration cap exceeded")
    return [s for s in combinations(range(m.m), r) if sf.independent(s)]


# --- file format and JSON -----------------------------------------------------------


def format_matroid(m: LinearMatroid) -> str:
    ground = " ".join(str(l) for l in m.ground)
    return format_matrix(m.rep) + f"ground {ground}\n"


def parse_matroid(text: str) -> LinearMatroid:
    lines = text.splitlines()
    ground_lines = [ln for ln in lines if ln.strip().startswith("ground")]
    if len(ground_lines) != 1:
        raise MatrixFormatError("matroid file needs exactly one ground line")
    rep = parse_matrix("\n".join(ln for ln in lines if not ln.strip().startswith("ground")))
    toks = ground_lines[0].split()[1:]
    try:
        ground = tuple(int(t) for t in toks)
    except ValueError as e:
        raise MatrixFormatError(str(e)) from e
    return LinearMatroid(rep, ground)


def count_json(m: LinearMatroid, bases: int) -> str:
    r = rank(m)
    return json.dumps({"rank": r, "nullity": m.m - r, "bases": str(bases)})
