"""Exact univariate polynomial arithmetic over arbitrary-precision integers.

All linear algebra runs over rationals (``fractions.Fraction``) with final
integrality assertions: the quantities produced by the counting constructions
are integers, and an integrality failure is the cheapest detector of a bug in
an oracle feeding the algebra.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import NonIntegralResultError, SingularMatrixError


@dataclass(frozen=True)
class IntPoly:
    """Dense integer polynomial; index = degree, trailing zeros stripped.

    The zero polynomial is the empty coefficient tuple (degree() == -1).
    """

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int] = ()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(x) for x in c))

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __add__(self, other: "IntPoly") -> "IntPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] += x
        return IntPoly(out)

    def __neg__(self) -> "IntPoly":
        return IntPoly(-c for c in self.coeffs)

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        return self.mul(other)

    def mul(self, other: "IntPoly", max_degree: int | None = None) -> "IntPoly":
        """Schoolbook product, optionally truncated above max_degree."""
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly()
        top = len(a) + len(b) - 2
        if max_degree is not None:
            top = min(top, max_degree)
        out = [0] * (top + 1)
        for i, x in enumerate(a):
            if x == 0 or i > top:
                continue
            for j, y in enumerate(b):
                if i + j > top:
                    break
                out[i + j] += x * y
        return IntPoly(out)

    def scale(self, c: int) -> "IntPoly":
        return IntPoly(c * x for x in self.coeffs)

    def shift_up(self, e: int) -> "IntPoly":
        """Multiply by z^e."""
        if self.is_zero():
            return self
        return IntPoly((0,) * e + self.coeffs)

    def truncated(self, max_degree: int) -> "IntPoly":
        return IntPoly(self.coeffs[: max_degree + 1])

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            parts.append(f"{c}" if i == 0 else f"{c}*z^{i}")
        return " + ".join(parts)


ZERO = IntPoly()
ONE = IntPoly((1,))


def evaluate(p: IntPoly, v: int) -> int:
    """Exact Horner evaluation."""
    acc = 0
    for c in reversed(p.coeffs):
        acc = acc * v + c
    return acc


def binomial(n: int, k: int) -> int:
    """Generalized binomial via the falling-factorial product.

    Exact for arbitrary integer n (n may exceed word size or be negative);
    equals 0 for 0 <= n < k.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    num = 1
    for i in range(k):
        num *= n - i
    return num // math.factorial(k)


def one_plus_z_power(i: int) -> IntPoly:
    """(1+z)^i expanded."""
    return IntPoly(math.comb(i, t) for t in range(i + 1))


def solve_exact(
    matrix: Sequence[Sequence[int | Fraction]], rhs: Sequence[int | Fraction]
) -> list[Fraction]:
    """Exact Gaussian elimination over the rationals.

    The solution is verified by back-substitution before being returned;
    raises SingularMatrixError on a singular system.
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix) or len(rhs) != n:
        raise ValueError("square system required")
    a = [[Fraction(x) for x in row] for row in matrix]
    b = [Fraction(x) for x in rhs]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise SingularMatrixError(f"singular at column {col}")
        a[col], a[piv] = a[piv], a[col]
        b[col], b[piv] = b[piv], b[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        b[col] *= inv
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                b[r] -= f * b[col]
    x = b
    for row, want in zip(matrix, rhs):
        got = sum(Fraction(c) * xi for c, xi in zip(row, x))
        if got != Fraction(want):
            raise SingularMatrixError("back-substitution check failed")
    return x


def _require_integral(values: Iterable[Fraction], what: str) -> list[int]:
    out = []
    for v in values:
        if v.denominator != 1:
            raise NonIntegralResultError(f"{what}: non-integral value {v}")
        out.append(v.numerator)
    return out


def interpolate(points: Sequence[tuple[int, int]]) -> IntPoly:
    """The unique integer polynomial of degree < len(points) through all points.

    Solved exactly over the rationals; a non-integral coefficient signals an
    inconsistent oracle upstream.
    """
    nodes = [p[0] for p in points]
    if len(set(nodes)) != len(nodes):
        raise ValueError("interpolation nodes must be pairwise distinct")
    if not points:
        return ZERO
    n = len(points)
    matrix = [[node**i for i in range(n)] for node in nodes]
    sol = solve_exact(matrix, [p[1] for p in points])
    return IntPoly(_require_integral(sol, "interpolation"))


def shift_sub(p: IntPoly) -> IntPoly:
    """Substitute z -> y - 1 (exact Taylor shift)."""
    acc = ZERO
    y_minus_1 = IntPoly((-1, 1))
    for c in reversed(p.coeffs):
        acc = acc * y_minus_1 + IntPoly((c,))
    return acc


def unshift_sub(p: IntPoly) -> IntPoly:
    """Substitute y -> z + 1 (inverse of shift_sub)."""
    acc = ZERO
    z_plus_1 = IntPoly((1, 1))
    for c in reversed(p.coeffs):
        acc = acc * z_plus_1 + IntPoly((c,))
    return acc


def divide_by_power(p: IntPoly, e: int) -> IntPoly:
    """Shift coefficients down by e; the low-order e coefficients must be zero."""
    if e < 0:
        raise ValueError("exponent must be non-negative")
    for i in range(min(e, len(p.coeffs))):
        if p.coeffs[i] != 0:
            raise NonIntegralResultError(
                f"divide_by_power: nonzero coefficient {p.coeffs[i]} at degree {i}"
            )
    return IntPoly(p.coeffs[e:])


@dataclass(frozen=True)
class PrefixReconstruction:
    """Record of a prefix reconstruction in the (1+z)-power basis.

    D is the full degree bound, Dp the divisibility exponent (the result is
    divisible by (1+z)^Dp), prefix the known low-order coefficients, and
    fprime the solved coefficients of (1+z)^Dp .. (1+z)^D.
    """

    D: int
    Dp: int
    prefix: tuple[int, ...]
    fprime: tuple[int, ...]
    polynomial: IntPoly


def reconstruct_details(
    prefix: Sequence[int], D: int, Dp: int
) -> PrefixReconstruction:
    """Reconstruct the unique polynomial of degree <= D divisible by (1+z)^Dp
    whose first k+1 coefficients (k = D - Dp) equal the given prefix.

    Solves sum_{i=Dp}^{D} f'_i * C(i, t) = prefix[t] for t = 0..k, then
    expands sum f'_i (1+z)^i.
    """
    k = D - Dp
    if D < 0 or Dp < 0 or k < 0:
        raise ValueError("need D >= Dp >= 0")
    if len(prefix) != k + 1:
        raise ValueError(f"prefix must have D - Dp + 1 = {k + 1} coefficients")
    matrix = [[math.comb(i, t) for i in range(Dp, D + 1)] for t in range(k + 1)]
    sol = solve_exact(matrix, list(prefix))
    fprime = _require_integral(sol, "prefix reconstruction")
    poly = ZERO
    for i, f in zip(range(Dp, D + 1), fprime):
        if f:
            poly = poly + one_plus_z_power(i).scale(f)
    for t, want in enumerate(prefix):
        if poly.coeff(t) != want:
            raise NonIntegralResultError("reconstructed polynomial violates its prefix")
    return PrefixReconstruction(D, Dp, tuple(prefix), tuple(fprime), poly)


def reconstruct_from_prefix(prefix: Sequence[int], D: int, Dp: int) -> IntPoly:
    return reconstruct_details(prefix, D, Dp).polynomial
