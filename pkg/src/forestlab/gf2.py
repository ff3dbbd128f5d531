"""Binary-field arithmetic and matrices.

Field elements of GF(2^b) are b-bit integers encoding polynomials over F_2;
the modulus is the lexicographically smallest monic irreducible of degree b.
Matrices over F_2 additionally get a bitset row representation for fast
row reduction of incidence matrices.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import SingularMatrixError


def _clmul(x: int, y: int) -> int:
    """Carry-less product of two polynomial bit patterns."""
    r = 0
    while y:
        low = y & -y
        r ^= x << (low.bit_length() - 1)
        y ^= low
    return r


def _poly_mod(v: int, f: int) -> int:
    fb = f.bit_length()
    while v.bit_length() >= fb:
        v ^= f << (v.bit_length() - fb)
    return v


def _poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _poly_mod(a, b)
    return a


def _prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _sq_mod(a: int, f: int) -> int:
    """Square a polynomial mod f (squaring spreads the bits apart)."""
    s = 0
    t = a
    while t:
        low = t & -t
        s |= 1 << (2 * (low.bit_length() - 1))
        t ^= low
    return _poly_mod(s, f)


def _is_irreducible(f: int) -> bool:
    b = f.bit_length() - 1
    x = _poly_mod(2, f)
    h = x
    for _ in range(b):
        h = _sq_mod(h, f)
    if h != x:
        return False
    for p in _prime_divisors(b):
        g = x
        for _ in range(b // p):
            g = _sq_mod(g, f)
        if _poly_gcd(f, g ^ x) != 1:
            return False
    return True


@lru_cache(maxsize=None)
def find_irreducible(b: int) -> int:
    """Lexicographically smallest monic irreducible of degree b over F_2."""
    if b < 1:
        raise ValueError("degree must be >= 1")
    for low in range(1 << b):
        f = (1 << b) | low
        if _is_irreducible(f):
            return f
    raise AssertionError("unreachable: irreducibles of every degree exist")


@dataclass(frozen=True)
class FieldSpec:
    """GF(2^b) with an explicit modulus bit pattern of degree b."""

    b: int
    modulus: int

    def __post_init__(self) -> None:
        if self.modulus.bit_length() != self.b + 1:
            raise ValueError("modulus degree must equal b")

    @classmethod
    def default(cls, b: int) -> "FieldSpec":
        return cls(b, find_irreducible(b))

    @property
    def order(self) -> int:
        return 1 << self.b

    def mul(self, x: int, y: int) -> int:
        return _poly_mod(_clmul(x, y), self.modulus)

    def inv(self, x: int) -> int:
        """Multiplicative inverse via the extended Euclidean algorithm."""
        if x == 0:
            raise ZeroDivisionError("0 has no inverse")
        # invariants: r0 = s0 * x (mod modulus), r1 = s1 * x (mod modulus)
        r0, r1 = self.modulus, x
        s0, s1 = 0, 1
        while r1 != 1:
            shift = r0.bit_length() - r1.bit_length()
            if shift < 0:
                r0, r1, s0, s1 = r1, r0, s1, s0
                continue
            r0 ^= r1 << shift
            s0 ^= s1 << shift
        return _poly_mod(s1, self.modulus)


# --- F_2 bitset row reduction --------------------------------------------------


def rref_f2(rows: list[int], ncols: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon form over F_2 on bitset rows (bit i = column i).

    Returns (pivot column list, reduced rows); zero rows are kept in place.
    """
    rows = list(rows)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        bit = 1 << c
        piv = next((i for i in range(r, len(rows)) if rows[i] & bit), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i] & bit:
                rows[i] ^= rows[r]
        pivots.append(c)
        r += 1
    return pivots, rows


# --- matrices over GF(2^b) -----------------------------------------------------


@dataclass(frozen=True)
class FFMatrix:
    """Dense matrix over GF(2^b); data is a tuple of row tuples."""

    spec: FieldSpec
    data: tuple[tuple[int, ...], ...]
    cols: int

    def __post_init__(self) -> None:
        top = self.spec.order
        for row in self.data:
            if len(row) != self.cols:
                raise ValueError("ragged rows")
            if any(not (0 <= e < top) for e in row):
                raise ValueError("entry outside the field")

    @classmethod
    def from_rows(cls, spec: FieldSpec, rows, cols: int) -> "FFMatrix":
        return cls(spec, tuple(tuple(r) for r in rows), cols)

    @property
    def rows(self) -> int:
        return len(self.data)

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.data)

    def matmul(self, other: "FFMatrix") -> "FFMatrix":
        if other.rows != self.cols or other.spec != self.spec:
            raise ValueError("shape or field mismatch")
        mul = self.spec.mul
        out = []
        for row in self.data:
            acc = [0] * other.cols
            for a, orow in zip(row, other.data):
                if a == 0:
                    continue
                if a == 1:
                    for j, x in enumerate(orow):
                        acc[j] ^= x
                else:
                    for j, x in enumerate(orow):
                        if x:
                            acc[j] ^= mul(a, x)
            out.append(acc)
        return FFMatrix.from_rows(self.spec, out, other.cols)

    def rref(self) -> tuple[tuple[int, ...], "FFMatrix"]:
        """Gauss-Jordan elimination; returns (pivot columns, reduced matrix)."""
        spec = self.spec
        mul, inv = spec.mul, spec.inv
        m = [list(r) for r in self.data]
        pivots: list[int] = []
        r = 0
        for c in range(self.cols):
            piv = next((i for i in range(r, len(m)) if m[i][c]), None)
            if piv is None:
                continue
            m[r], m[piv] = m[piv], m[r]
            lead = m[r][c]
            if lead != 1:
                ilead = inv(lead)
                m[r] = [mul(ilead, e) if e else 0 for e in m[r]]
            for i in range(len(m)):
                f = m[i][c]
                if i != r and f:
                    m[i] = [
                        e ^ (mul(f, p) if f != 1 else p) if p else e
                        for e, p in zip(m[i], m[r])
                    ]
            pivots.append(c)
            r += 1
        return tuple(pivots), FFMatrix.from_rows(spec, m, self.cols)

    def rank(self) -> int:
        return len(self.rref()[0])

    def det(self) -> int:
        if self.rows != self.cols:
            raise SingularMatrixError("determinant requires a square matrix")
        spec = self.spec
        mul, inv = spec.mul, spec.inv
        m = [list(r) for r in self.data]
        n = self.rows
        d = 1
        for c in range(n):
            piv = next((i for i in range(c, n) if m[i][c]), None)
            if piv is None:
                return 0
            m[c], m[piv] = m[piv], m[c]
            lead = m[c][c]
            d = mul(d, lead)
            ilead = inv(lead)
            for i in range(c + 1, n):
                f = m[i][c]
                if f:
                    f = mul(f, ilead)
                    m[i] = [e ^ (mul(f, p) if p else 0) for e, p in zip(m[i], m[c])]
        return d

    def columns_independent(self, cols) -> bool:
        sub = FFMatrix.from_rows(self.spec, (tuple(row[c] for c in cols) for row in self.data), len(tuple(cols)))
        return sub.rank() == sub.cols


def embed_f2_matrix(spec: FieldSpec, rows: list[int], nrows: int, ncols: int) -> FFMatrix:
    """Interpret F_2 bitset rows as a 0/1 matrix over the given field."""
    data = [[(row >> c) & 1 for c in range(ncols)] for row in rows[:nrows]]
    return FFMatrix.from_rows(spec, data, ncols)


def random_matrix(spec: FieldSpec, nrows: int, ncols: int, seed: int) -> FFMatrix:
    """Matrix with independent uniform entries, reproducible from the seed."""
    rng = random.Random(seed)
    data = [[rng.getrandbits(spec.b) for _ in range(ncols)] for _ in range(nrows)]
    return FFMatrix.from_rows(spec, data, ncols)


# --- text format ----------------------------------------------------------------


class MatrixFormatError(ValueError):
    pass


def format_matrix(m: FFMatrix) -> str:
    lines = [f"matrix {m.rows} {m.cols} gf2^{m.spec.b} mod {m.spec.modulus:#x}"]
    for row in m.data:
        lines.append(" ".join(f"{e:x}" for e in row))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> FFMatrix:
    lines = [
        ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")
    ]
    if not lines:
        raise MatrixFormatError("empty matrix text")
    head = lines[0].split()
    if len(head) != 6 or head[0] != "matrix" or head[4] != "mod" or not head[3].startswith("gf2^"):
        raise MatrixFormatError(f"bad matrix header: {lines[0]!r}")
    try:
        nrows, ncols = int(head[1]), int(head[2])
        b = int(head[3][4:])
        modulus = int(head[5], 16)
    except ValueError as e:
        raise MatrixFormatError(str(e)) from e
    spec = FieldSpec(b, modulus)
    body = lines[1:]
    if len(body) != nrows:
        raise MatrixFormatError(f"expected {nrows} rows, got {len(body)}")
    data = []
    for ln in body:
        try:
            row = [int(tok, 16) for tok in ln.split()]
        except ValueError as e:
            raise MatrixFormatError(str(e)) from e
        if len(row) != ncols:
            raise MatrixFormatError(f"expected {ncols} entries per row")
        data.append(row)
    try:
        return FFMatrix.from_rows(spec, data, ncols)
    except ValueError as e:
        raise MatrixFormatError(str(e)) from e
