"""Scalar arithmetic and the combinatorial substrate.

Scalars are exact big rationals (``fractions.Fraction``) in the default
mode and floating-point (real or complex) in approximate mode.  All
library code is generic over the scalar type; the mode only decides how
inputs are parsed, how equality is tested (literal vs. within ``eps``)
and how values are serialized.

The combinatorial layer provides rising factorials, multinomial
coefficients, the simplex lattice of multi-indices of fixed total
degree, and the enumeration of square nonnegative-integer matrices with
bounded row/column/total sums (the summation index of the
hypergeometric evaluation).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence, Union

Scalar = Union[int, Fraction, float, complex]

EXACT = "exact"
APPROX = "approx"
DEFAULT_EPS = 1e-10

MultiIndex = tuple  # nonnegative integer parts; degree = sum of parts


class DegreeMismatchError(ValueError):
    """A multi-index does not have the required total degree."""


def parse_scalar(text: str, mode: str = EXACT) -> Scalar:
    """Parse "a/b", "a" or a decimal literal into a scalar of the given mode."""
    value = Fraction(text.strip())
    if mode == APPROX:
        return float(value)
    return value


def format_scalar(x: Scalar) -> str:
    """Canonical string form: lowest-terms "a/b" (or "a") exactly, 17
    significant digits in floating mode."""
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, float):
        return f"{x:.17g}"
    if isinstance(x, complex):
        return f"{x.real:.17g}{x.imag:+.17g}j"
    raise TypeError(f"not a scalar: {x!r}")


def is_exact(x: Scalar) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def exactify(x: Scalar) -> Scalar:
    """Promote int to Fraction so that division stays exact; floats pass
    through untouched."""
    return Fraction(x) if is_exact(x) else x


def scalars_equal(a: Scalar, b: Scalar, tol: Scalar = 0) -> bool:
    """Equality up to ``tol``; with ``tol == 0`` this is literal equality."""
    if tol == 0:
        return a == b
    return abs(a - b) <= tol


def pochhammer(a: Scalar, k: int) -> Scalar:
    """Rising factorial a(a+1)...(a+k-1); the empty product for k = 0."""
    if k < 0:
        raise ValueError(f"pochhammer needs k >= 0, got {k}")
    out = a**0  # unit of the scalar's type
    for i in range(k):
        out *= a + i
    return out


def multinomial(n: int, lam: Sequence[int]) -> int:
    """n! / (lam_0! lam_1! ... lam_k!) for a multi-index with |lam| = n."""
    if sum(lam) != n:
        raise DegreeMismatchError(f"|{tuple(lam)}| = {sum(lam)} != {n}")
    out = 1
    acc = 0
    for part in lam:
        acc += part
        out *= math.comb(acc, part)
    return out


def multi_factorial(lam: Sequence[int]) -> int:
    """lam! = product of the part factorials."""
    out = 1
    for part in lam:
        out *= math.factorial(part)
    return out


def power_product(base: Sequence[Scalar], lam: Sequence[int]) -> Scalar:
    """base^lam = product base_i**lam_i."""
    out = 1
    for b, e in zip(base, lam):
        if e:
            out *= b**e
    return out


def enumerate_lattice(d: int, degree: int) -> Iterator[MultiIndex]:
    """All lam in N_0^{d+1} with |lam| = degree, in graded-lex order.

    The order is fixed once and used everywhere tables are laid out:
    (degree,0,...,0) first, (0,...,0,degree) last.
    """
    if d < 1:
        raise ValueError(f"d must be positive, got {d}")

    def rec(prefix: tuple, remaining: int, slots: int) -> Iterator[MultiIndex]:
        if slots == 1:
            yield prefix + (remaining,)
            return
        for v in range(remaining, -1, -1):
            yield from rec(prefix + (v,), remaining - v, slots - 1)

    yield from rec((), degree, d + 1)


def lattice_size(d: int, degree: int) -> int:
    return math.comb(degree + d, d)


def enumerate_degree_points(d: int, degree: int) -> Iterator[tuple]:
    """All m in N_0^d with |m| <= degree, ordered consistently with
    enumerate_lattice via m = lam[1:]."""
    for lam in enumerate_lattice(d, degree):
        yield lam[1:]


@dataclass(frozen=True)
class KernelMatrix:
    """A d x d nonnegative-integer matrix with cached marginal sums."""

    entries: tuple  # tuple of d row-tuples
    row_sums: tuple
    col_sums: tuple
    total: int


def enumerate_kernels(
    d: int,
    degree: int,
    row_caps: Sequence[int],
    col_caps: Sequence[int],
) -> Iterator[KernelMatrix]:
    """All d x d matrices with row i sum <= row_caps[i], column j sum
    <= col_caps[j] and total sum <= degree.

    Caps are enforced during generation, not by post-filtering, so the
    work is proportional to the matrices actually yielded.
    """
    if len(row_caps) != d or len(col_caps) != d:
        raise ValueError("need one cap per row and per column")
    if any(c < 0 for c in row_caps) or any(c < 0 for c in col_caps):
        raise ValueError("caps must be nonnegative")

    flat = [0] * (d * d)
    row_rem = [min(c, degree) for c in row_caps]
    col_rem = [min(c, degree) for c in col_caps]

    def rec(idx: int, total_rem: int) -> Iterator[KernelMatrix]:
        if idx == d * d:
            rows = tuple(tuple(flat[i * d : (i + 1) * d]) for i in range(d))
            rsums = tuple(sum(r) for r in rows)
            csums = tuple(sum(rows[i][j] for i in range(d)) for j in range(d))
            yield KernelMatrix(rows, rsums, csums, sum(rsums))
            return
        i, j = divmod(idx, d)
        cap = min(row_rem[i], col_rem[j], total_rem)
        for v in range(cap + 1):
            flat[idx] = v
            row_rem[i] -= v
            col_rem[j] -= v
            yield from rec(idx + 1, total_rem - v)
            row_rem[i] += v
            col_rem[j] += v
        flat[idx] = 0

    yield from rec(0, degree)
