"""Lorentzian certification: support exchange checks and Hessian inertia.

A homogeneous polynomial with nonnegative coefficients passes when its
support satisfies the symmetric exchange axiom and every iterated partial
derivative down to degree 2 has a Hessian with at most one positive
eigenvalue.  Inertia is computed by congruence diagonalization: exact over
the rationals, or with a pivot tolerance for floating inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from ._util import bounded_compositions
from .polynomials import FloatPoly, Poly


@dataclass(frozen=True)
class Inertia:
    """Counts of positive, negative, and zero eigenvalues."""

    n_pos: int
    n_neg: int
    n_zero: int

    def __post_init__(self) -> None:
        if min(self.n_pos, self.n_neg, self.n_zero) < 0:
            raise ValueError("inertia counts must be nonnegative")

    @property
    def dim(self) -> int:
        return self.n_pos + self.n_neg + self.n_zero

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.n_pos, self.n_neg, self.n_zero)


@dataclass(frozen=True)
class CertFailure:
    """Why certification failed, with a witness that can be rechecked."""

    kind: str
    exponents: tuple[tuple[int, ...], ...] | None = None
    derivative: tuple[int, ...] | None = None
    inertia: tuple[int, int, int] | None = None

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.exponents is not None:
            out["exponents"] = [list(e) for e in self.exponents]
        if self.derivative is not None:
            out["derivative"] = list(self.derivative)
        if self.inertia is not None:
            out["inertia"] = list(self.inertia)
        return out


@dataclass(frozen=True)
class LorentzReport:
    verdict: bool
    failure: CertFailure | None
    checked_derivatives: int

    def __post_init__(self) -> None:
        if not self.verdict and self.failure is None:
            raise ValueError("a negative verdict needs a failure witness")

    def to_json(self) -> dict:
        return {
            "lorentzian": self.verdict,
            "failure": None if self.failure is None else self.failure.to_json(),
            "checked_derivatives": self.checked_derivatives,
        }


def is_m_convex(
    supp: Iterable[Sequence[int]],
) -> tuple[bool, tuple[tuple[int, ...], tuple[int, ...]] | None]:
    """Symmetric exchange check; returns a violating pair on failure."""
    pts = sorted({tuple(int(c) for c in v) for v in supp})
    if not pts:
        return True, None
    nvars = len(pts[0])
    if any(len(p) != nvars for p in pts):
        raise ValueError("support vectors must have equal length")
    total = sum(pts[0])
    if any(sum(p) != total for p in pts):
        raise ValueError("mixed degrees in support")
    index = set(pts)
    for a in pts:
        for b in pts:
            for i in range(nvars):
                if a[i] <= b[i]:
                    continue
                found = False
                for j in range(nvars):
                    if a[j] < b[j]:
                        moved = list(a)
                        moved[i] -= 1
                        moved[j] += 1
                        if tuple(moved) in index:
                            found = True
                            break
                if not found:
                    return False, (a, b)
    return True, None


def _swap_symmetric(work: list[list], i: int, j: int) -> None:
    if i == j:
        return
    work[i], work[j] = work[j], work[i]
    for row in work:
        row[i], row[j] = row[j], row[i]


def symmetric_inertia(matrix: Sequence[Sequence], tol: float | None = None) -> Inertia:
    """Inertia by congruence diagonalization.

    Exact over the rationals when tol is None (floating entries rejected);
    otherwise works in floating point with |pivot| <= tol treated as zero.
    When every remaining diagonal entry vanishes but an off-diagonal entry
    does not, the corresponding 2x2 block is eliminated as a unit; it is
    indefinite, contributing one positive and one negative eigenvalue.
    """
    rows = [list(r) for r in matrix]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("square matrix required")
    if tol is None:
        work = []
        for r in rows:
            out = []
            for v in r:
                if isinstance(v, float):
                    raise TypeError("floating entries require a tolerance")
                out.append(Fraction(v))
            work.append(out)

        def negligible(v: Fraction) -> bool:
            return v == 0

    else:
        if not tol > 0:
            raise ValueError("tolerance must be positive")
        work = [[float(v) for v in r] for r in rows]

        def negligible(v: float) -> bool:
            return abs(v) <= tol

    for i in range(n):
        for j in range(i):
            gap = work[i][j] - work[j][i]
            if not negligible(gap) or (tol is None and gap != 0):
                raise ValueError("symmetric matrix required")

    pos = neg = zero = 0
    k = 0
    while k < n:
        p = max(range(k, n), key=lambda r: abs(work[r][r]))
        if not negligible(work[p][p]):
            _swap_symmetric(work, k, p)
            pivot = work[k][k]
            if pivot > 0:
                pos += 1
            else:
                neg += 1
            row_k = work[k]
            for r in range(k + 1, n):
                factor = work[r][k] / pivot
                if factor:
                    row_r = work[r]
                    for c in range(k + 1, n):
                        row_r[c] -= factor * row_k[c]
            k += 1
            continue
        best = None
        best_abs = None
        for i in range(k, n):
            for j in range(i + 1, n):
                v = abs(work[i][j])
                if best_abs is None or v > best_abs:
                    best_abs = v
                    best = (i, j)
        if best is None or negligible(work[best[0]][best[1]]):
            zero += n - k
            break
        i, j = best
        _swap_symmetric(work, k, i)
        if j == k:
            j = i
        _swap_symmetric(work, k + 1, j)
        a = work[k][k]
        b = work[k + 1][k + 1]
        c = work[k][k + 1]
        det = a * b - c * c  # strictly negative: c dominates the tiny diagonal
        pos += 1
        neg += 1
        for r in range(k + 2, n):
            u = work[r][k]
            v = work[r][k + 1]
            if u or v:
                row_r = work[r]
                for s in range(k + 2, n):
                    us = work[k][s]
                    vs = work[k + 1][s]
                    row_r[s] -= (b * u * us - c * (u * vs + v * us) + a * v * vs) / det
        k += 2
    return Inertia(pos, neg, zero)


def quad_inertia(q: Poly | FloatPoly, tol: float | None = None) -> Inertia:
    """Inertia of the Hessian of a homogeneous quadratic."""
    if isinstance(q, FloatPoly) and tol is None:
        raise TypeError("floating polynomial requires a tolerance")
    hd = q.homogeneous_degree()
    if q.support() and hd != 2:
        raise ValueError("homogeneous quadratic required")
    n = q.nvars
    hess = [[0] * n for _ in range(n)]
    for exp, c in q.items():
        used = [i for i, e in enumerate(exp) if e]
        if len(used) == 1:
            hess[used[0]][used[0]] = 2 * c
        else:
            i, j = used
            hess[i][j] = c
            hess[j][i] = c
    return symmetric_inertia(hess, tol)


def certify_lorentzian(f: Poly | FloatPoly, tol: float | None = None) -> LorentzReport:
    """Full certification; all failures come back as verdicts with witnesses.

    The zero polynomial passes by convention.  Degree 0 and 1 pass once the
    coefficient-sign and support checks do.  Higher degrees additionally
    sweep every derivative multi-index of total order degree-2 and demand at
    most one positive Hessian eigenvalue from each nonzero derivative.
    """
    is_float = isinstance(f, FloatPoly)
    if is_float and tol is None:
        raise TypeError("floating polynomial requires a tolerance")
    if tol is not None and not tol > 0:
        raise ValueError("tolerance must be positive")
    if is_float:
        # magnitudes at or below the tolerance count as absent terms
        f = FloatPoly(f.nvars, {e: c for e, c in f.items() if abs(c) > tol})
    if not f.support():
        return LorentzReport(True, None, 0)
    hd = f.homogeneous_degree()
    if hd is None:
        terms = f.sorted_terms()
        low = terms[0][0]
        high = terms[-1][0]
        return LorentzReport(
            False, CertFailure("non-homogeneous", exponents=(low, high)), 0
        )
    negative_cut = -tol if is_float else 0
    for exp, c in f.sorted_terms():
        if c < negative_cut:
            return LorentzReport(
                False, CertFailure("negative-coefficient", exponents=(exp,)), 0
            )
    ok, pair = is_m_convex(f.support())
    if not ok:
        return LorentzReport(
            False, CertFailure("support-not-M-convex", exponents=pair), 0
        )
    if hd < 2:
        return LorentzReport(True, None, 0)
    checked = 0
    profile = f.degree_profile()
    for gamma in bounded_compositions(hd - 2, profile):
        g = f.derivative_multi(gamma)
        if not g.support():
            continue
        checked += 1
        inertia = quad_inertia(g, tol)
        if inertia.n_pos > 1:
            return LorentzReport(
                False,
                CertFailure(
                    "bad-inertia", derivative=gamma, inertia=inertia.as_tuple()
                ),
                checked,
            )
    return LorentzReport(True, None, checked)
