"""Difference operators on the degree lattice and the eigen checks.

Each operator is a stencil: a map from shift vectors s in Z^d to a
coefficient that is an affine function of the lattice point, evaluated
lazily.  The two canonical families (one shifting the second index of
the table, one the first) have d generators each with at most
d^2 + d + 1 stencil terms; their coefficients are built directly from
the parameter set, and multiplying a table row or column by a generator
reproduces the row or column scaled by an eigenvalue that depends only
on the opposite index.  A parameter-free combination (the universal
operator) has eigenvalue minus the reduced degree and is, at the level
of coefficients, a signed sum of one family plus a constant shift of
the identity.

Stencils vanish on their own at the lattice boundary: every outward
shift carries a factor (point coordinate or remaining degree) that is
zero exactly where the shift would leave the simplex.  `apply` asserts
this rather than clamping.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import hyperg
from .kappa import ParameterSet
from .numeric import (
    MultiIndex,
    Scalar,
    enumerate_degree_points,
    exactify,
    format_scalar,
    scalars_equal,
)
from .report import CheckReport


@dataclass(frozen=True)
class AffineCoeff:
    """c(y) = constant + sum_l linear[l] * y[l] over reduced points y."""

    constant: Scalar
    linear: tuple

    def __call__(self, y: MultiIndex) -> Scalar:
        return self.constant + sum(
            c * y[l] for l, c in enumerate(self.linear) if c != 0
        )

    def plus(self, other: AffineCoeff) -> AffineCoeff:
        return AffineCoeff(
            self.constant + other.constant,
            tuple(a + b for a, b in zip(self.linear, other.linear)),
        )

    def scale(self, c: Scalar) -> AffineCoeff:
        return AffineCoeff(c * self.constant, tuple(c * x for x in self.linear))

    def is_zero(self) -> bool:
        return self.constant == 0 and all(x == 0 for x in self.linear)

    def to_json_dict(self) -> dict:
        return {
            "constant": format_scalar(self.constant),
            "linear": [format_scalar(x) for x in self.linear],
        }


def _affine(d: int, constant: Scalar = 0, **at) -> AffineCoeff:
    linear = [0] * d
    for key, value in at.items():
        linear[int(key[1:]) - 1] = value  # y1, y2, ...
    return AffineCoeff(constant, tuple(linear))


@dataclass(frozen=True, eq=False)
class DifferenceOperator:
    """Stencil plus the eigenvalue law it satisfies on tables (the law
    takes the reduced opposite-side index)."""

    d: int
    N: int
    stencil: dict
    eigenvalue: Callable | None
    name: str

    def term_count(self) -> int:
        return len(self.stencil)


def _canonical(stencil: dict) -> dict:
    return {s: c for s, c in stencil.items() if not c.is_zero()}


def _in_lattice(d: int, N: int, y: MultiIndex) -> bool:
    return all(part >= 0 for part in y) and sum(y) <= N


def _assert_boundary(op: DifferenceOperator, tol: Scalar = 0) -> None:
    for y in enumerate_degree_points(op.d, op.N):
        for s, coeff in op.stencil.items():
            target = tuple(a + b for a, b in zip(y, s))
            if _in_lattice(op.d, op.N, target):
                continue
            c = coeff(y)
            if not scalars_equal(c, 0, tol):
                raise AssertionError(
                    f"{op.name}: shift {s} at {y} leaves the lattice "
                    f"with coefficient {format_scalar(c)}"
                )


def _unit(d: int, k: int) -> tuple:
    return tuple(1 if l == k else 0 for l in range(d))


def operator_mtilde(kappa: ParameterSet, N: int, i: int) -> DifferenceOperator:
    """Generator i of the family shifting the second (tilde) index;
    eigenvalue m_i - N/(d+1) read off the first index."""
    d = kappa.d
    if not 1 <= i <= d:
        raise IndexError(f"index {i} out of range for d = {d}")
    nu = exactify(kappa.nu)
    p, pt, u = kappa.p, kappa.pt, kappa.u
    pti = exactify(kappa.pt[i])
    stencil = {}
    for l in range(1, d + 1):
        stencil[tuple(-x for x in _unit(d, l - 1))] = _affine(
            d, **{f"y{l}": pti * u[l][i]}
        )
    for k in range(1, d + 1):
        base = nu * pti * p[k] * u[k][i]
        stencil[_unit(d, k - 1)] = AffineCoeff(
            base * N, tuple(-base for _ in range(d))
        )
    diag_linear = [pti * (nu * p[j] * u[j][i] ** 2 - 1) for j in range(1, d + 1)]
    diag_const = -Fraction(N, d + 1) * sum(diag_linear)
    stencil[tuple(0 for _ in range(d))] = AffineCoeff(
        diag_const, tuple(diag_linear)
    )
    for k in range(1, d + 1):
        for l in range(1, d + 1):
            if k == l:
                continue
            s = tuple(a - b for a, b in zip(_unit(d, k - 1), _unit(d, l - 1)))
            stencil[s] = _affine(d, **{f"y{l}": nu * pti * p[k] * u[k][i] * u[l][i]})

    shift = Fraction(N, d + 1)
    op = DifferenceOperator(
        d,
        N,
        _canonical(stencil),
        lambda m, i=i, shift=shift: m[i - 1] - shift,
        f"mtilde_{i}",
    )
    if op.term_count() > d * d + d + 1:
        raise AssertionError(f"{op.name} stencil has {op.term_count()} terms")
    _assert_boundary(op)
    return op


def operator_m(kappa: ParameterSet, N: int, i: int) -> DifferenceOperator:
    """Generator i of the mirror family shifting the first index;
    coefficients read row i of u instead of column i, weights swapped.
    Eigenvalue mt_i - N/(d+1)."""
    d = kappa.d
    if not 1 <= i <= d:
        raise IndexError(f"index {i} out of range for d = {d}")
    nu = exactify(kappa.nu)
    p, pt, u = kappa.p, kappa.pt, kappa.u
    pi = exactify(kappa.p[i])
    stencil = {}
    for l in range(1, d + 1):
        stencil[tuple(-x for x in _unit(d, l - 1))] = _affine(
            d, **{f"y{l}": pi * u[i][l]}
        )
    for k in range(1, d + 1):
        base = nu * pi * pt[k] * u[i][k]
        stencil[_unit(d, k - 1)] = AffineCoeff(
            base * N, tuple(-base for _ in range(d))
        )
    diag_linear = [pi * (nu * pt[j] * u[i][j] ** 2 - 1) for j in range(1, d + 1)]
    diag_const = -Fraction(N, d + 1) * sum(diag_linear)
    stencil[tuple(0 for _ in range(d))] = AffineCoeff(
        diag_const, tuple(diag_linear)
    )
    for k in range(1, d + 1):
        for l in range(1, d + 1):
            if k == l:
                continue
            s = tuple(a - b for a, b in zip(_unit(d, k - 1), _unit(d, l - 1)))
            stencil[s] = _affine(d, **{f"y{l}": nu * pi * pt[k] * u[i][k] * u[i][l]})

    shift = Fraction(N, d + 1)
    op = DifferenceOperator(
        d,
        N,
        _canonical(stencil),
        lambda mt, i=i, shift=shift: mt[i - 1] - shift,
        f"m_{i}",
    )
    if op.term_count() > d * d + d + 1:
        raise AssertionError(f"{op.name} stencil has {op.term_count()} terms")
    _assert_boundary(op)
    return op


def operator_universal(kappa: ParameterSet, N: int) -> DifferenceOperator:
    """Parameter-light operator with eigenvalue -|m|: only the weights
    enter, never u."""
    d = kappa.d
    p = [exactify(x) for x in kappa.p]
    stencil = {}
    for l in range(1, d + 1):
        stencil[tuple(-x for x in _unit(d, l - 1))] = _affine(
            d, **{f"y{l}": p[0]}
        )
    for k in range(1, d + 1):
        stencil[_unit(d, k - 1)] = AffineCoeff(
            p[k] * N, tuple(-p[k] for _ in range(d))
        )
    stencil[tuple(0 for _ in range(d))] = AffineCoeff(
        p[0] * N - N, tuple(p[j] - p[0] for j in range(1, d + 1))
    )
    for k in range(1, d + 1):
        for l in range(1, d + 1):
            if k == l:
                continue
            s = tuple(a - b for a, b in zip(_unit(d, k - 1), _unit(d, l - 1)))
            stencil[s] = _affine(d, **{f"y{l}": p[k]})

    op = DifferenceOperator(
        d, N, _canonical(stencil), lambda m: -sum(m), "universal"
    )
    _assert_boundary(op)
    return op


def identity_operator(d: int, N: int) -> DifferenceOperator:
    return DifferenceOperator(
        d,
        N,
        {tuple(0 for _ in range(d)): AffineCoeff(1, tuple(0 for _ in range(d)))},
        None,
        "identity",
    )


def op_combine(
    terms: list[tuple[Scalar, DifferenceOperator]], name: str
) -> DifferenceOperator:
    """Linear combination sum_k c_k L_k at the stencil level."""
    d, N = terms[0][1].d, terms[0][1].N
    stencil: dict = {}
    for c, op in terms:
        for s, coeff in op.stencil.items():
            scaled = coeff.scale(c)
            stencil[s] = stencil[s].plus(scaled) if s in stencil else scaled
    return DifferenceOperator(d, N, _canonical(stencil), None, name)


def stencils_equal(
    a: DifferenceOperator, b: DifferenceOperator, tol: Scalar = 0
) -> bool:
    keys = set(a.stencil) | set(b.stencil)
    zero = AffineCoeff(0, tuple(0 for _ in range(a.d)))
    for s in keys:
        ca = a.stencil.get(s, zero)
        cb = b.stencil.get(s, zero)
        if not scalars_equal(ca.constant, cb.constant, tol):
            return False
        if any(
            not scalars_equal(x, y, tol) for x, y in zip(ca.linear, cb.linear)
        ):
            return False
    return True


def apply(
    op: DifferenceOperator, F: Callable, tol: Scalar = 0
) -> dict:
    """(op F)(y) = sum_s c_s(y) F(y+s) over the whole lattice; reading
    outside the lattice is an implementation bug, which the boundary
    factors prevent and this function asserts."""
    out = {}
    for y in enumerate_degree_points(op.d, op.N):
        acc = 0
        for s, coeff in op.stencil.items():
            c = coeff(y)
            if scalars_equal(c, 0, tol):
                continue
            target = tuple(a + b for a, b in zip(y, s))
            if not _in_lattice(op.d, op.N, target):
                raise AssertionError(
                    f"{op.name}: nonzero coefficient at {y} shift {s} "
                    "points outside the lattice"
                )
            acc = acc + c * F(target)
        out[y] = acc
    return out


def check_eigen(
    kappa: ParameterSet,
    N: int,
    tol: Scalar = 0,
    values: hyperg.PolynomialTable | None = None,
) -> CheckReport:
    """Both generator families against a full table: rows are
    eigenfunctions of the tilde-shifting family, columns of the mirror
    family, and everything of the universal operator."""
    d = kappa.d
    tab = values if values is not None else hyperg.table(kappa, N)
    reduced = {pt[1:]: idx for idx, pt in enumerate(tab.points)}
    failures = []
    max_resid = 0

    ops_second = [operator_mtilde(kappa, N, i) for i in range(1, d + 1)]
    ops_first = [operator_m(kappa, N, i) for i in range(1, d + 1)]
    universal = operator_universal(kappa, N)

    def record(op_name, fixed, y, got, want):
        nonlocal max_resid
        resid = abs(got - want)
        max_resid = max(max_resid, resid)
        if not scalars_equal(got, want, tol):
            failures.append(
                {
                    "operator": op_name,
                    "fixed_index": list(fixed),
                    "at": list(y),
                    "got": format_scalar(got),
                    "want": format_scalar(want),
                }
            )

    for r, n in enumerate(tab.points):
        row = lambda y: tab.values[r][reduced[y]]
        for op in ops_second + [universal]:
            ev = op.eigenvalue(n[1:])
            got = apply(op, row, tol)
            for y, value in got.items():
                record(op.name, n, y, value, ev * row(y))

    for c, nt in enumerate(tab.points):
        col = lambda y: tab.values[reduced[y]][c]
        for op in ops_first:
            ev = op.eigenvalue(nt[1:])
            got = apply(op, col, tol)
            for y, value in got.items():
                record(op.name, nt, y, value, ev * col(y))

    details = {
        "term_counts": {
            "second_index_family": [op.term_count() for op in ops_second],
            "first_index_family": [op.term_count() for op in ops_first],
            "universal": universal.term_count(),
        },
        "term_bound": d * d + d + 1,
        "max_residual": format_scalar(max_resid),
    }
    return CheckReport("recurrence", not failures, failures, details)


def check_universal(
    kappa: ParameterSet,
    N: int,
    tol: Scalar = 0,
    values: hyperg.PolynomialTable | None = None,
) -> CheckReport:
    """Eigenvalue -|m| on every table row, plus the coefficient-level
    identity: universal = -(sum of the tilde-shifting generators)
    - dN/(d+1) * identity.  The identity collapses the u-dependence via
    the defining matrix equation, so it is checked symbolically on the
    affine records, not pointwise."""
    d = kappa.d
    tab = values if values is not None else hyperg.table(kappa, N)
    reduced = {pt[1:]: idx for idx, pt in enumerate(tab.points)}
    universal = operator_universal(kappa, N)
    failures = []
    max_resid = 0

    for r, n in enumerate(tab.points):
        row = lambda y: tab.values[r][reduced[y]]
        ev = universal.eigenvalue(n[1:])
        got = apply(universal, row, tol)
        for y, value in got.items():
            resid = abs(value - ev * row(y))
            max_resid = max(max_resid, resid)
            if not scalars_equal(value, ev * row(y), tol):
                failures.append(
                    {
                        "operator": "universal",
                        "fixed_index": list(n),
                        "at": list(y),
                        "residual": format_scalar(resid),
                    }
                )

    combo = op_combine(
        [(-1, operator_mtilde(kappa, N, i)) for i in range(1, d + 1)]
        + [(-Fraction(d * N, d + 1), identity_operator(d, N))],
        "negated generator sum",
    )
    symbolic = stencils_equal(combo, universal, tol)
    if not symbolic:
        failures.append({"identity": "universal as signed generator sum"})

    return CheckReport(
        "universal",
        not failures,
        failures,
        {"symbolic_identity": symbolic, "max_residual": format_scalar(max_resid)},
    )


def check_commute(kappa: ParameterSet, N: int, tol: Scalar = 0) -> CheckReport:
    """Pairwise commutation of each generator family as operators on the
    full function space, tested on every delta basis function (not on
    table eigenfunctions, which would be circular)."""
    d = kappa.d
    points = list(enumerate_degree_points(d, N))
    failures = []
    pair_count = 0
    families = {
        "second_index_family": [operator_mtilde(kappa, N, i) for i in range(1, d + 1)],
        "first_index_family": [operator_m(kappa, N, i) for i in range(1, d + 1)],
    }
    for family_name, ops in families.items():
        for a in range(len(ops)):
            for b in range(a + 1, len(ops)):
                pair_count += 1
                for y0 in points:
                    delta = lambda y, y0=y0: 1 if y == y0 else 0
                    ab_inner = apply(ops[b], delta, tol)
                    ab = apply(ops[a], lambda y: ab_inner[y], tol)
                    ba_inner = apply(ops[a], delta, tol)
                    ba = apply(ops[b], lambda y: ba_inner[y], tol)
                    for y in points:
                        if not scalars_equal(ab[y], ba[y], tol):
                            failures.append(
                                {
                                    "family": family_name,
                                    "pair": [ops[a].name, ops[b].name],
                                    "basis_point": list(y0),
                                    "at": list(y),
                                }
                            )
    details = {"pairs": pair_count, "basis_size": len(points)}
    if d == 1:
        details["note"] = "single generator per family; commutation is vacuous"
    return CheckReport("commute", not failures, failures, details)


def stencil_json(op: DifferenceOperator) -> list:
    """Inspectable wire form: one record per stencil term."""
    return [
        {"shift": list(s), "coeff": coeff.to_json_dict()}
        for s, coeff in sorted(op.stencil.items())
    ]
