"""Two of the three evaluation routes, full tables, and the
orthogonality and duality checks.

The primary route sums a matrix-indexed hypergeometric series over
square nonnegative-integer kernels with bounded margins.  The oracle
route expands the defining generating function

    prod_i (1 + sum_j u[i][j] z_j)^mt_i  =  sum_m binom * P(m, mt) z^m

by sparse polynomial multiplication and reads one coefficient.  Both
take the reduced degree vectors m, mt (length d, with the 0-th
coordinates N - |m|, N - |mt| implied) and agree exactly.

Tables hold P over the full degree-N lattice in graded-lex order, rows
indexed by the first argument.  On top of tables sit the two-sided
orthogonality check (weighted columns and weighted rows both come out
diagonal with explicit normalizations) and the duality check (the table
of the involuted parameter set is the transpose).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from . import kappa as kappa_mod
from .kappa import ParameterSet
from .numeric import (
    EXACT,
    MultiIndex,
    Scalar,
    enumerate_kernels,
    enumerate_lattice,
    exactify,
    format_scalar,
    multi_factorial,
    multinomial,
    parse_scalar,
    pochhammer,
    power_product,
    scalars_equal,
)
from .report import CheckReport


def _check_degree_vector(d: int, N: int, v: Sequence[int], name: str) -> tuple:
    v = tuple(v)
    if len(v) != d:
        raise ValueError(f"{name} must have {d} parts, got {len(v)}")
    if any(part < 0 or part != int(part) for part in v):
        raise ValueError(f"{name} parts must be nonnegative integers: {v}")
    if sum(v) > N:
        raise ValueError(f"|{name}| = {sum(v)} exceeds N = {N}")
    return v


def eval_hypergeometric(
    kappa: ParameterSet, N: int, m: Sequence[int], mt: Sequence[int]
) -> Scalar:
    """Kernel-sum evaluation of P(m, mt).

    Summation runs over d x d nonnegative-integer matrices A; rising
    factorials of -m and -mt kill every A whose column sums exceed m or
    whose row sums exceed mt, so enumeration is capped accordingly (and
    the total never exceeds N, keeping the denominator nonzero).
    """
    d = kappa.d
    m = _check_degree_vector(d, N, m, "m")
    mt = _check_degree_vector(d, N, mt, "mt")
    om = tuple(tuple(exactify(w) for w in row) for row in kappa_mod.omega(kappa))

    acc = 0
    for ker in enumerate_kernels(d, N, row_caps=mt, col_caps=m):
        coeff = 1
        for j in range(d):
            coeff *= pochhammer(-m[j], ker.col_sums[j])
        for i in range(d):
            coeff *= pochhammer(-mt[i], ker.row_sums[i])
        weight = 1
        cells_fact = 1
        for i in range(d):
            weight *= power_product(om[i], ker.entries[i])
            cells_fact *= multi_factorial(ker.entries[i])
        den = pochhammer(-N, ker.total) * cells_fact
        acc += exactify(coeff * weight) / den
    return acc


def _linear_form_power(
    coeffs: Sequence[Scalar], e: int, caps: Sequence[int]
) -> dict:
    """(1 + sum_j coeffs[j] z_j)^e as {exponent tuple: coefficient},
    keeping only exponents below the componentwise caps."""
    d = len(coeffs)
    out: dict = {}

    def rec(j: int, left: int, expo: tuple) -> None:
        if j == d:
            c = multinomial(e, (e - sum(expo),) + expo)
            out[expo] = c * power_product(coeffs, expo)
            return
        for a in range(min(left, caps[j]) + 1):
            rec(j + 1, left - a, expo + (a,))

    rec(0, e, ())
    return out


def eval_generating(
    kappa: ParameterSet, N: int, m: Sequence[int], mt: Sequence[int]
) -> Scalar:
    """Generating-function evaluation of P(m, mt): expand the product of
    the d+1 row factors, read the z^m coefficient, strip the multinomial
    normalization.  Independent of the kernel sum; used as its oracle.
    """
    d = kappa.d
    m = _check_degree_vector(d, N, m, "m")
    mt = _check_degree_vector(d, N, mt, "mt")
    m0 = N - sum(m)
    exponents = (N - sum(mt),) + mt  # row i of u enters to the power mt_i

    poly: dict = {tuple(0 for _ in range(d)): exactify(1)}
    for i in range(d + 1):
        e = exponents[i]
        if e == 0:
            continue
        row = tuple(exactify(kappa.u[i][j]) for j in range(1, d + 1))
        factor = _linear_form_power(row, e, m)
        merged: dict = {}
        for e1, c1 in poly.items():
            for e2, c2 in factor.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                if any(a > cap for a, cap in zip(key, m)):
                    continue
                merged[key] = merged.get(key, 0) + c1 * c2
        poly = merged

    coeff = poly.get(m, 0)
    return exactify(coeff) / multinomial(N, (m0,) + m)


@dataclass(frozen=True)
class PolynomialTable:
    """Values of P over the full degree-N lattice, graded-lex both ways.

    values[r][c] = P(points[r][1:], points[c][1:]) where points is the
    lattice in layout order; the first argument indexes rows.
    """

    kappa: ParameterSet
    N: int
    points: tuple
    values: tuple

    def value(self, n: MultiIndex, nt: MultiIndex) -> Scalar:
        r = self.points.index(tuple(n))
        c = self.points.index(tuple(nt))
        return self.values[r][c]


def table(kappa: ParameterSet, N: int, threads: int = 1) -> PolynomialTable:
    """Evaluate the full lattice-by-lattice grid of P."""
    points = tuple(enumerate_lattice(kappa.d, N))

    def row(n: MultiIndex) -> tuple:
        return tuple(
            eval_hypergeometric(kappa, N, n[1:], nt[1:]) for nt in points
        )

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            values = tuple(pool.map(row, points))
    else:
        values = tuple(row(n) for n in points)
    return PolynomialTable(kappa, N, points, values)


def table_to_json_dict(tab: PolynomialTable) -> dict:
    return {
        "kappa": kappa_mod.to_json_dict(tab.kappa),
        "N": tab.N,
        "order": "grlex",
        "values": [[format_scalar(x) for x in row] for row in tab.values],
    }


def table_from_json_dict(obj: dict, mode: str = EXACT, tol: Scalar = 0) -> PolynomialTable:
    try:
        kap = kappa_mod.from_json_dict(obj["kappa"], mode, tol)
        N = int(obj["N"])
        order = obj["order"]
        raw = obj["values"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed table object: {exc}") from exc
    if order != "grlex":
        raise ValueError(f"unknown table order {order!r}")
    points = tuple(enumerate_lattice(kap.d, N))
    if len(raw) != len(points) or any(len(r) != len(points) for r in raw):
        raise ValueError("table dimensions do not match the lattice")
    values = tuple(
        tuple(parse_scalar(str(x), mode) for x in row) for row in raw
    )
    return PolynomialTable(kap, N, points, values)


def _weight_over_factorial(weights: Sequence[Scalar], lam: MultiIndex) -> Scalar:
    return exactify(power_product(weights, lam)) / multi_factorial(lam)


def check_orthogonality(
    kappa: ParameterSet,
    N: int,
    tol: Scalar = 0,
    values: PolynomialTable | None = None,
) -> CheckReport:
    """Both diagonalization identities over the table.

    Columns: N! sum_n P(n,nt) P(n,kt) pt^n / n!  =  delta
    with diagonal value nt! / (N! nu^N p^nt); rows are the mirror with
    the two weight vectors exchanged.  Failures carry the residual.
    """
    tab = values if values is not None else table(kappa, N)
    points = tab.points
    nu_pow = exactify(kappa.nu) ** N
    nfact = math.factorial(N)
    failures = []
    max_resid = 0

    col_weights = [_weight_over_factorial(kappa.pt, n) for n in points]
    row_weights = [_weight_over_factorial(kappa.p, nt) for nt in points]

    for a in range(len(points)):
        for b in range(len(points)):
            lhs = nfact * sum(
                tab.values[r][a] * tab.values[r][b] * col_weights[r]
                for r in range(len(points))
            )
            rhs = 0
            if a == b:
                rhs = multi_factorial(points[a]) / (
                    nfact * nu_pow * exactify(power_product(kappa.p, points[a]))
                )
            resid = lhs - rhs
            max_resid = max(max_resid, abs(resid))
            if not scalars_equal(lhs, rhs, tol):
                failures.append(
                    {
                        "side": "columns",
                        "pair": [list(points[a]), list(points[b])],
                        "residual": format_scalar(resid),
                    }
                )

            lhs = nfact * sum(
                tab.values[a][c] * tab.values[b][c] * row_weights[c]
                for c in range(len(points))
            )
            rhs = 0
            if a == b:
                rhs = multi_factorial(points[a]) / (
                    nfact * nu_pow * exactify(power_product(kappa.pt, points[a]))
                )
            resid = lhs - rhs
            max_resid = max(max_resid, abs(resid))
            if not scalars_equal(lhs, rhs, tol):
                failures.append(
                    {
                        "side": "rows",
                        "pair": [list(points[a]), list(points[b])],
                        "residual": format_scalar(resid),
                    }
                )

    details = {"pairs": 2 * len(points) ** 2, "max_residual": format_scalar(max_resid)}
    return CheckReport("orthogonality", not failures, failures, details)


def check_duality(
    kappa: ParameterSet,
    N: int,
    tol: Scalar = 0,
    values: PolynomialTable | None = None,
    dual_values: PolynomialTable | None = None,
) -> CheckReport:
    """The table of the involuted parameter set is the transpose."""
    tab = values if values is not None else table(kappa, N)
    dual = dual_values if dual_values is not None else table(
        kappa_mod.involute(kappa), N
    )
    failures = []
    for r, n in enumerate(tab.points):
        for c, nt in enumerate(tab.points):
            if not scalars_equal(tab.values[r][c], dual.values[c][r], tol):
                failures.append(
                    {
                        "pair": [list(n), list(nt)],
                        "value": format_scalar(tab.values[r][c]),
                        "dual_value": format_scalar(dual.values[c][r]),
                    }
                )
    return CheckReport(
        "duality", not failures, failures, {"pairs": len(tab.points) ** 2}
    )
