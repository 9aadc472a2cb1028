"""Traceless-matrix machinery and the degree-N polynomial module.

Two commuting pictures of sl_{d+1} drive everything here.  The plain
picture uses the diagonal Cartan elements phi_i = e_ii - I/(d+1) and
matrix units e_ij; the dual picture conjugates them by the matrix
R = Pt U^t (whose inverse is nu P U, a restatement of the defining
identity of the parameter set).  The antiautomorphism
a(b) = Pt b^t Pt^{-1} fixes both Cartan bases and transports matrix
units with explicit weight ratios.

Matrices act on homogeneous polynomials in x_0..x_d as derivations:
e_ij sends x^lam to lam_j x^(lam+v_i-v_j).  The substituted variables
xt = x R carry the dual weight basis; a symmetric bilinear form is
diagonal on plain monomials and, by a small miracle of the setup, also
diagonal on the substituted ones.  The pairing <x^n, xt^nt> recovers
the polynomial values P(n', nt') up to an explicit constant and serves
as the third, independent evaluation route.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import hyperg, linalg
from . import kappa as kappa_mod
from .kappa import ParameterSet, default_tol
from .numeric import (
    DegreeMismatchError,
    MultiIndex,
    Scalar,
    enumerate_lattice,
    exactify,
    format_scalar,
    multi_factorial,
    power_product,
    scalars_equal,
)
from .report import CheckReport

Matrix = tuple


def basis_e(d: int, i: int, j: int) -> Matrix:
    """The matrix unit e_ij, i != j (off-diagonal sl element)."""
    if not (0 <= i <= d and 0 <= j <= d):
        raise IndexError(f"indices ({i},{j}) out of range for d = {d}")
    if i == j:
        raise IndexError("matrix units here are off-diagonal only; use basis_phi")
    return tuple(
        tuple(1 if (r, c) == (i, j) else 0 for c in range(d + 1))
        for r in range(d + 1)
    )


def basis_phi(d: int, i: int) -> Matrix:
    """The traceless diagonal element e_ii - I/(d+1); index 0 allowed
    (it equals minus the sum of the others)."""
    if not 0 <= i <= d:
        raise IndexError(f"index {i} out of range for d = {d}")
    shift = Fraction(1, d + 1)
    return tuple(
        tuple((1 if r == i else 0) - shift if r == c else 0 for c in range(d + 1))
        for r in range(d + 1)
    )


@dataclass(frozen=True)
class Conjugator:
    """The change-of-basis matrix and its inverse, fixed to the scaling
    in which rhat = Pt U^t and rhat_inv = nu P U (both rational)."""

    rhat: Matrix
    rhat_inv: Matrix


def conjugator(kappa: ParameterSet) -> Conjugator:
    rhat = linalg.mat_mul(linalg.diagonal(kappa.pt), linalg.transpose(kappa.u))
    rhat_inv = linalg.mat_scale(
        exactify(kappa.nu), linalg.mat_mul(linalg.diagonal(kappa.p), kappa.u)
    )
    tol = default_tol(kappa.nu, *kappa.p, *kappa.pt)
    if not linalg.mats_equal(
        linalg.mat_mul(rhat, rhat_inv), linalg.identity(kappa.d + 1), tol
    ):
        raise AssertionError("conjugator inverse failed; parameter set corrupt")
    return Conjugator(rhat, rhat_inv)


def _conjugate(conj: Conjugator, beta: Matrix) -> Matrix:
    return linalg.mat_mul(linalg.mat_mul(conj.rhat, beta), conj.rhat_inv)


def _dual_phi_closed_form(kappa: ParameterSet, i: int) -> Matrix:
    """Explicit expansion of the conjugated phi_i over {e_kl, phi_j}."""
    d = kappa.d
    nu, p, pt, u = exactify(kappa.nu), kappa.p, kappa.pt, kappa.u
    if i == 0:
        # every column is the pt vector, then the trace correction
        shift = Fraction(1, d + 1)
        return tuple(
            tuple(pt[r] - (shift if r == c else 0) for c in range(d + 1))
            for r in range(d + 1)
        )
    out = [[0] * (d + 1) for _ in range(d + 1)]
    for k in range(d + 1):
        for l in range(d + 1):
            if k != l:
                out[k][l] = nu * p[i] * pt[k] * u[i][k] * u[i][l]
    shift = Fraction(1, d + 1)
    for j in range(1, d + 1):
        c = p[i] * (nu * pt[j] * u[i][j] ** 2 - 1)
        for r in range(d + 1):
            out[r][r] -= c * shift
        out[j][j] += c
    return linalg.freeze(out)


def dual_phi(
    kappa: ParameterSet, i: int, conj: Conjugator | None = None
) -> Matrix:
    """Conjugated Cartan element, computed by conjugation and checked
    against its closed-form expansion on every call."""
    if not 0 <= i <= kappa.d:
        raise IndexError(f"index {i} out of range for d = {kappa.d}")
    conj = conj if conj is not None else conjugator(kappa)
    out = _conjugate(conj, basis_phi(kappa.d, i))
    tol = default_tol(kappa.nu, *kappa.p, *kappa.pt)
    if not linalg.mats_equal(out, _dual_phi_closed_form(kappa, i), tol):
        raise AssertionError(
            f"conjugation of phi_{i} disagrees with its closed form"
        )
    return out


def dual_e(
    kappa: ParameterSet, i: int, j: int, conj: Conjugator | None = None
) -> Matrix:
    conj = conj if conj is not None else conjugator(kappa)
    return _conjugate(conj, basis_e(kappa.d, i, j))


def antiauto(kappa: ParameterSet, beta: Matrix) -> Matrix:
    """a(b) = Pt b^t Pt^{-1}; with Pt diagonal this is an entrywise
    weight-ratio transpose."""
    pt = kappa.pt
    n = kappa.d + 1
    return tuple(
        tuple(exactify(pt[r]) * beta[c][r] / pt[c] for c in range(n))
        for r in range(n)
    )


def phi_in_dual_basis(kappa: ParameterSet, i: int, conj: Conjugator | None = None) -> Matrix:
    """Re-expansion of plain phi_i over the conjugated basis, with the
    mirrored coefficients (column i of u instead of row i)."""
    if not 1 <= i <= kappa.d:
        raise IndexError(f"index {i} out of range for d = {kappa.d}")
    d = kappa.d
    nu, p, pt, u = exactify(kappa.nu), kappa.p, kappa.pt, kappa.u
    conj = conj if conj is not None else conjugator(kappa)
    acc = None
    for k in range(d + 1):
        for l in range(d + 1):
            if k == l:
                continue
            c = nu * pt[i] * p[k] * u[k][i] * u[l][i]
            term = linalg.mat_scale(c, dual_e(kappa, k, l, conj))
            acc = term if acc is None else linalg.mat_add(acc, term)
    for j in range(1, d + 1):
        c = pt[i] * (nu * p[j] * u[j][i] ** 2 - 1)
        term = linalg.mat_scale(c, _conjugate(conj, basis_phi(d, j)))
        acc = linalg.mat_add(acc, term)
    return acc


def check_conjugation(kappa: ParameterSet) -> CheckReport:
    """Both closed-form expansions against honest conjugation: the dual
    Cartan elements over the plain basis, and the plain ones over the
    dual basis."""
    conj = conjugator(kappa)
    tol = default_tol(kappa.nu, *kappa.p, *kappa.pt)
    failures = []
    for i in range(kappa.d + 1):
        got = _conjugate(conj, basis_phi(kappa.d, i))
        want = _dual_phi_closed_form(kappa, i)
        if not linalg.mats_equal(got, want, tol):
            failures.append(
                {
                    "element": f"dual_phi_{i}",
                    "defect": format_scalar(linalg.max_defect(got, want)),
                }
            )
    for i in range(1, kappa.d + 1):
        got = phi_in_dual_basis(kappa, i, conj)
        want = basis_phi(kappa.d, i)
        if not linalg.mats_equal(got, want, tol):
            failures.append(
                {
                    "element": f"phi_{i}_in_dual_basis",
                    "defect": format_scalar(linalg.max_defect(got, want)),
                }
            )
    return CheckReport("conjugation", not failures, failures, {})


def check_lemma21(kappa: ParameterSet, seed: int = 0) -> CheckReport:
    """The antiautomorphism suite: fixed points, transport of matrix
    units with weight ratios, involutivity, and product reversal on a
    seeded random sample."""
    d = kappa.d
    conj = conjugator(kappa)
    tol = default_tol(kappa.nu, *kappa.p, *kappa.pt)
    failures = []

    def expect(tag: str, got: Matrix, want: Matrix) -> None:
        if not linalg.mats_equal(got, want, tol):
            failures.append(
                {"identity": tag, "defect": format_scalar(linalg.max_defect(got, want))}
            )

    for i in range(d + 1):
        phi = basis_phi(d, i)
        expect(f"a(phi_{i}) = phi_{i}", antiauto(kappa, phi), phi)
        dphi = _conjugate(conj, phi)
        expect(f"a(dual_phi_{i}) = dual_phi_{i}", antiauto(kappa, dphi), dphi)
    for i in range(d + 1):
        for j in range(d + 1):
            if i == j:
                continue
            e = basis_e(d, i, j)
            expect(
                f"a(e_{i}{j}) = (pt_{j}/pt_{i}) e_{j}{i}",
                antiauto(kappa, e),
                linalg.mat_scale(
                    exactify(kappa.pt[j]) / kappa.pt[i], basis_e(d, j, i)
                ),
            )
            de = dual_e(kappa, i, j, conj)
            expect(
                f"a(dual_e_{i}{j}) = (p_{j}/p_{i}) dual_e_{j}{i}",
                antiauto(kappa, de),
                linalg.mat_scale(
                    exactify(kappa.p[j]) / kappa.p[i], dual_e(kappa, j, i, conj)
                ),
            )
            expect(
                f"a(a(e_{i}{j})) = e_{i}{j}",
                antiauto(kappa, antiauto(kappa, e)),
                e,
            )

    rng = random.Random(seed)

    def rand_matrix() -> Matrix:
        return tuple(
            tuple(Fraction(rng.randint(-3, 3)) for _ in range(d + 1))
            for _ in range(d + 1)
        )

    for t in range(20):
        a, b = rand_matrix(), rand_matrix()
        expect(
            f"a(AB) = a(B)a(A) [sample {t}]",
            antiauto(kappa, linalg.mat_mul(a, b)),
            linalg.mat_mul(antiauto(kappa, b), antiauto(kappa, a)),
        )
        expect(
            f"a(a(A)) = A [sample {t}]",
            antiauto(kappa, antiauto(kappa, a)),
            a,
        )

    return CheckReport("lemma21", not failures, failures, {"samples": 20})


def check_generation(kappa: ParameterSet) -> CheckReport:
    """Bracket-generation suite: the two closed forms of the conjugated
    phi_0 and the triple-commutator identity producing every matrix unit
    from the plain Cartan elements and that single dual one."""
    d = kappa.d
    conj = conjugator(kappa)
    tol = default_tol(kappa.nu, *kappa.p, *kappa.pt)
    failures = []

    dphi0 = _conjugate(conj, basis_phi(d, 0))
    minus_sum = None
    for j in range(1, d + 1):
        t = _conjugate(conj, basis_phi(d, j))
        minus_sum = t if minus_sum is None else linalg.mat_add(minus_sum, t)
    minus_sum = linalg.mat_scale(-1, minus_sum)
    if not linalg.mats_equal(dphi0, minus_sum, tol):
        failures.append(
            {
                "identity": "dual_phi_0 = -sum dual_phi_j",
                "defect": format_scalar(linalg.max_defect(dphi0, minus_sum)),
            }
        )
    closed = _dual_phi_closed_form(kappa, 0)
    if not linalg.mats_equal(dphi0, closed, tol):
        failures.append(
            {
                "identity": "dual_phi_0 columns-constant form",
                "defect": format_scalar(linalg.max_defect(dphi0, closed)),
            }
        )

    for i in range(d + 1):
        for j in range(d + 1):
            if i == j:
                continue
            inner = linalg.commutator(basis_phi(d, j), dphi0)
            middle = linalg.commutator(basis_phi(d, i), inner)
            outer = linalg.commutator(basis_phi(d, j), middle)
            got = linalg.mat_scale(
                1 / (2 * exactify(kappa.pt[i])), linalg.mat_sub(outer, middle)
            )
            want = basis_e(d, i, j)
            if not linalg.mats_equal(got, want, tol):
                failures.append(
                    {
                        "identity": f"bracket recovery of e_{i}{j}",
                        "defect": format_scalar(linalg.max_defect(got, want)),
                    }
                )

    return CheckReport("lemma22", not failures, failures, {})


# ---------------------------------------------------------------------------
# the polynomial module


@dataclass(frozen=True)
class HomogPoly:
    """Homogeneous polynomial of fixed total degree, sparse over the
    monomial basis; zero coefficients are never stored."""

    degree: int
    coeffs: dict

    def __add__(self, other: HomogPoly) -> HomogPoly:
        if self.degree != other.degree:
            raise DegreeMismatchError("cannot add different degrees")
        out = dict(self.coeffs)
        for lam, c in other.coeffs.items():
            out[lam] = out.get(lam, 0) + c
        return _poly(self.degree, out)

    def __sub__(self, other: HomogPoly) -> HomogPoly:
        return self + other.scale(-1)

    def scale(self, c: Scalar) -> HomogPoly:
        if c == 0:
            return HomogPoly(self.degree, {})
        return HomogPoly(
            self.degree, {lam: c * v for lam, v in self.coeffs.items()}
        )


def _poly(degree: int, coeffs: dict) -> HomogPoly:
    return HomogPoly(degree, {lam: c for lam, c in coeffs.items() if c != 0})


def monomial(lam: MultiIndex, coeff: Scalar = 1) -> HomogPoly:
    lam = tuple(lam)
    return _poly(sum(lam), {lam: coeff})


def polys_equal(f: HomogPoly, g: HomogPoly, tol: Scalar = 0) -> bool:
    if tol == 0:
        return f.degree == g.degree and f.coeffs == g.coeffs
    keys = set(f.coeffs) | set(g.coeffs)
    return f.degree == g.degree and all(
        scalars_equal(f.coeffs.get(k, 0), g.coeffs.get(k, 0), tol) for k in keys
    )


def poly_mul(f: HomogPoly, g: HomogPoly) -> HomogPoly:
    out: dict = {}
    for lam, a in f.coeffs.items():
        for mu, b in g.coeffs.items():
            key = tuple(x + y for x, y in zip(lam, mu))
            out[key] = out.get(key, 0) + a * b
    return _poly(f.degree + g.degree, out)


def act(beta: Matrix, f: HomogPoly) -> HomogPoly:
    """Derivation action: e_ij contributes lam_j x^(lam+v_i-v_j), the
    diagonal contributes sum_k beta_kk lam_k on the spot."""
    out: dict = {}
    n = len(beta)
    for lam, c in f.coeffs.items():
        diag = sum(beta[k][k] * lam[k] for k in range(n) if lam[k])
        if diag != 0:
            out[lam] = out.get(lam, 0) + c * diag
        for l in range(n):
            if lam[l] == 0:
                continue
            for k in range(n):
                if k == l or beta[k][l] == 0:
                    continue
                mu = list(lam)
                mu[l] -= 1
                mu[k] += 1
                mu = tuple(mu)
                out[mu] = out.get(mu, 0) + c * beta[k][l] * lam[l]
    return _poly(f.degree, out)


def _expand_in(matrix: Matrix, lam: MultiIndex) -> HomogPoly:
    """prod_k (sum_j matrix[j][k] y_j)^(lam_k) over y-monomials."""
    n = len(matrix)
    acc = monomial(tuple(0 for _ in range(n)))
    for k in range(n):
        if lam[k] == 0:
            continue
        form = _poly(
            1,
            {
                tuple(1 if r == j else 0 for r in range(n)): matrix[j][k]
                for j in range(n)
            },
        )
        for _ in range(lam[k]):
            acc = poly_mul(acc, form)
    return acc


def xtilde_monomial(
    kappa: ParameterSet, N: int, lam: MultiIndex, conj: Conjugator | None = None
) -> HomogPoly:
    """The substituted monomial xt^lam = prod_k (sum_j x_j rhat[j][k])^lam_k
    expanded over plain monomials."""
    lam = tuple(lam)
    if sum(lam) != N:
        raise DegreeMismatchError(f"|{lam}| != {N}")
    conj = conj if conj is not None else conjugator(kappa)
    return _expand_in(conj.rhat, lam)


def to_dual_coords(
    kappa: ParameterSet, f: HomogPoly, conj: Conjugator | None = None
) -> HomogPoly:
    """Coefficients of f over the substituted basis: apply the inverse
    substitution x = xt rhat_inv and collect."""
    conj = conj if conj is not None else conjugator(kappa)
    out = HomogPoly(f.degree, {})
    for lam, c in f.coeffs.items():
        out = out + _expand_in(conj.rhat_inv, lam).scale(c)
    return out


def bilinear(kappa: ParameterSet, N: int, f: HomogPoly, g: HomogPoly) -> Scalar:
    """Symmetric form, diagonal on monomials:
    <x^n, x^n> = n!/pt^n * nu^N."""
    if f.degree != N or g.degree != N:
        raise DegreeMismatchError(
            f"form needs degree {N}, got {f.degree} and {g.degree}"
        )
    nu_pow = exactify(kappa.nu) ** N
    acc = 0
    for lam, a in f.coeffs.items():
        b = g.coeffs.get(lam)
        if b is None:
            continue
        acc += (
            exactify(a * b * multi_factorial(lam))
            / exactify(power_product(kappa.pt, lam))
            * nu_pow
        )
    return acc


def pairing_eval(
    kappa: ParameterSet,
    N: int,
    n: MultiIndex,
    nt: MultiIndex,
    conj: Conjugator | None = None,
    cache: dict | None = None,
) -> Scalar:
    """P(n', nt') = <x^n, xt^nt> / (nu^N N!); the nu^N cancels against
    the form's weight, leaving coeff_n(xt^nt) n!/(pt^n N!).

    A dict passed as ``cache`` memoizes the xt expansions across calls
    (keyed by nt), which turns a full-grid sweep from quadratic into
    linear in the lattice size.
    """
    n, nt = tuple(n), tuple(nt)
    if sum(n) != N or sum(nt) != N:
        raise DegreeMismatchError(f"|{n}| or |{nt}| differs from N = {N}")
    if cache is not None and nt in cache:
        f = cache[nt]
    else:
        f = xtilde_monomial(kappa, N, nt, conj)
        if cache is not None:
            cache[nt] = f
    c = f.coeffs.get(n, 0)
    return exactify(c * multi_factorial(n)) / (
        exactify(power_product(kappa.pt, n)) * math.factorial(N)
    )


def check_dual_norms(kappa: ParameterSet, N: int, tol: Scalar = 0) -> CheckReport:
    """The substituted monomials are themselves orthogonal for the form,
    with norms n!/p^n (no nu power)."""
    conj = conjugator(kappa)
    points = tuple(enumerate_lattice(kappa.d, N))
    xt = {lam: xtilde_monomial(kappa, N, lam, conj) for lam in points}
    failures = []
    for n in points:
        for m in points:
            got = bilinear(kappa, N, xt[n], xt[m])
            want = 0
            if n == m:
                want = exactify(multi_factorial(n)) / exactify(
                    power_product(kappa.p, n)
                )
            if not scalars_equal(got, want, tol):
                failures.append(
                    {
                        "pair": [list(n), list(m)],
                        "got": format_scalar(got),
                        "want": format_scalar(want),
                    }
                )
    return CheckReport(
        "norms", not failures, failures, {"pairs": len(points) ** 2}
    )


def check_adjoint(
    kappa: ParameterSet, N: int, tol: Scalar = 0
) -> CheckReport:
    """<b.f, g> = <f, a(b).g> for b over the full spanning set
    {phi_i} + {e_ij} and f, g over all plain monomials."""
    d = kappa.d
    points = tuple(enumerate_lattice(d, N))
    betas = [(f"phi_{i}", basis_phi(d, i)) for i in range(d + 1)]
    betas += [
        (f"e_{i}{j}", basis_e(d, i, j))
        for i in range(d + 1)
        for j in range(d + 1)
        if i != j
    ]
    failures = []
    for tag, beta in betas:
        adj = antiauto(kappa, beta)
        for n in points:
            fn = monomial(n)
            bf = act(beta, fn)
            for m in points:
                gm = monomial(m)
                lhs = bilinear(kappa, N, bf, gm)
                rhs = bilinear(kappa, N, fn, act(adj, gm))
                if not scalars_equal(lhs, rhs, tol):
                    failures.append(
                        {
                            "element": tag,
                            "pair": [list(n), list(m)],
                            "lhs": format_scalar(lhs),
                            "rhs": format_scalar(rhs),
                        }
                    )
    return CheckReport(
        "adjoint",
        not failures,
        failures,
        {"elements": len(betas), "pairs": len(points) ** 2},
    )


def _adjacent(lam: MultiIndex, mu: MultiIndex) -> bool:
    """Differ by moving a single unit between two coordinates."""
    diff = sorted(a - b for a, b in zip(lam, mu))
    return diff[0] == -1 and diff[-1] == 1 and all(
        x == 0 for x in diff[1:-1]
    )


def check_adjacency(kappa: ParameterSet, N: int, tol: Scalar = 0) -> CheckReport:
    """Support condition: a plain Cartan element moves a substituted
    monomial only to itself and its adjacent lattice points (and the
    dual statement); the self-coefficient matches the re-expansion's
    diagonal part."""
    d = kappa.d
    conj = conjugator(kappa)
    points = tuple(enumerate_lattice(d, N))
    shift = Fraction(N, d + 1)
    failures = []
    for i in range(1, d + 1):
        phi = basis_phi(d, i)
        dphi = dual_phi(kappa, i, conj)
        for lam in points:
            moved = act(phi, xtilde_monomial(kappa, N, lam, conj))
            support = to_dual_coords(kappa, moved, conj)
            for mu, c in support.coeffs.items():
                if tol != 0 and abs(c) <= tol:
                    continue
                if mu != lam and not _adjacent(lam, mu):
                    failures.append(
                        {
                            "side": "plain-on-substituted",
                            "i": i,
                            "from": list(lam),
                            "to": list(mu),
                            "coeff": format_scalar(c),
                        }
                    )
            want_diag = sum(
                exactify(kappa.pt[i])
                * (exactify(kappa.nu) * kappa.p[j] * kappa.u[j][i] ** 2 - 1)
                * (lam[j] - shift)
                for j in range(1, d + 1)
            )
            got_diag = support.coeffs.get(lam, 0)
            if not scalars_equal(got_diag, want_diag, tol):
                failures.append(
                    {
                        "side": "self-coefficient",
                        "i": i,
                        "at": list(lam),
                        "got": format_scalar(got_diag),
                        "want": format_scalar(want_diag),
                    }
                )

            moved = act(dphi, monomial(lam))
            for mu, c in moved.coeffs.items():
                if tol != 0 and abs(c) <= tol:
                    continue
                if mu != lam and not _adjacent(lam, mu):
                    failures.append(
                        {
                            "side": "dual-on-plain",
                            "i": i,
                            "from": list(lam),
                            "to": list(mu),
                            "coeff": format_scalar(c),
                        }
                    )
    return CheckReport(
        "adjacency", not failures, failures, {"points": len(points)}
    )


def check_transition(kappa: ParameterSet, N: int, tol: Scalar = 0) -> CheckReport:
    """Both basis-transition expansions as exact polynomial identities:

        xt^nt        = N! sum_n P(n',nt') (pt^n/n!) x^n
        x^n / nu^N   = N! sum_nt P(n',nt') (p^nt/nt!) xt^nt

    with P supplied by the kernel-sum route, so this cross-ties the
    module picture to the series definition.
    """
    d = kappa.d
    conj = conjugator(kappa)
    points = tuple(enumerate_lattice(d, N))
    xt = {lam: xtilde_monomial(kappa, N, lam, conj) for lam in points}
    nfact = math.factorial(N)
    pvals = {
        (n, nt): hyperg.eval_hypergeometric(kappa, N, n[1:], nt[1:])
        for n in points
        for nt in points
    }
    failures = []

    for nt in points:
        want = HomogPoly(N, {})
        for n in points:
            c = (
                nfact
                * pvals[(n, nt)]
                * exactify(power_product(kappa.pt, n))
                / multi_factorial(n)
            )
            want = want + monomial(n, c)
        if not polys_equal(xt[nt], want, tol):
            failures.append({"expansion": "substituted-over-plain", "at": list(nt)})

    inv_nu_pow = 1 / exactify(kappa.nu) ** N
    for n in points:
        rhs = HomogPoly(N, {})
        for nt in points:
            c = (
                nfact
                * pvals[(n, nt)]
                * exactify(power_product(kappa.p, nt))
                / multi_factorial(nt)
            )
            rhs = rhs + xt[nt].scale(c)
        if not polys_equal(monomial(n, inv_nu_pow), rhs, tol):
            failures.append({"expansion": "plain-over-substituted", "at": list(n)})

    return CheckReport(
        "transition", not failures, failures, {"points": len(points)}
    )
