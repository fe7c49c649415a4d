"""Linear operators on a bounded monomial box, their symbols, and deformations.

An operator is stored as the table of images of the normalized monomials
x^alpha/alpha! for all alpha below a fixed box bound.  The symbol packs the
whole table into one polynomial in the output variables y plus one tracking
variable u per input variable; it is invertible, which makes coefficient
surgery (fractional powers, reweighted singleton families) mechanical.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from ._util import iter_box, vec_factorial
from .matchings import SubsetSeq, matched_degrees
from .polynomials import FloatPoly, Poly


def _checked_kappa(kappa: Sequence[int]) -> tuple[int, ...]:
    out = tuple(int(v) for v in kappa)
    if not out:
        raise ValueError("at least one input variable required")
    if any(v < 0 for v in out):
        raise ValueError("box bounds must be nonnegative")
    return out


def _checked_table(kappa, n_out, table, poly_type):
    if n_out < 1:
        raise ValueError("output variable count must be >= 1")
    expected = set(iter_box(kappa))
    checked = {}
    for key, value in table.items():
        alpha = tuple(int(v) for v in key)
        if alpha not in expected:
            raise ValueError(f"table key {alpha} outside the box {kappa}")
        if not isinstance(value, poly_type):
            raise TypeError(f"table values must be {poly_type.__name__}")
        if value.nvars != n_out:
            raise ValueError(
                f"image at {alpha} has {value.nvars} variables, expected {n_out}"
            )
        checked[alpha] = value
    if len(checked) != len(expected):
        missing = sorted(expected - set(checked))[:3]
        raise ValueError(f"table is missing box entries, e.g. {missing}")
    return checked


@dataclass(frozen=True)
class OperatorBox:
    """Exact operator: alpha -> image of x^alpha/alpha!, for all alpha <= kappa."""

    kappa: tuple[int, ...]
    n_out: int
    table: Mapping[tuple[int, ...], Poly]

    def __post_init__(self) -> None:
        kappa = _checked_kappa(self.kappa)
        object.__setattr__(self, "kappa", kappa)
        object.__setattr__(
            self, "table", _checked_table(kappa, self.n_out, self.table, Poly)
        )

    @property
    def m(self) -> int:
        return len(self.kappa)

    def image(self, alpha: Sequence[int]) -> Poly:
        return self.table[tuple(int(v) for v in alpha)]

    def to_json(self) -> dict:
        return {
            "kappa": list(self.kappa),
            "n_out": self.n_out,
            "table": [
                {"alpha": list(alpha), "poly": poly.to_json()}
                for alpha, poly in sorted(self.table.items())
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "OperatorBox":
        if not isinstance(obj, dict) or not {"kappa", "n_out", "table"} <= set(obj):
            raise ValueError("operator JSON needs 'kappa', 'n_out', and 'table'")
        table = {
            tuple(row["alpha"]): Poly.from_json(row["poly"]) for row in obj["table"]
        }
        return cls(tuple(obj["kappa"]), int(obj["n_out"]), table)


@dataclass(frozen=True)
class FloatOperatorBox:
    """Floating-point operator table; produced by fractional coefficient powers."""

    kappa: tuple[int, ...]
    n_out: int
    table: Mapping[tuple[int, ...], FloatPoly]

    def __post_init__(self) -> None:
        kappa = _checked_kappa(self.kappa)
        object.__setattr__(self, "kappa", kappa)
        object.__setattr__(
            self, "table", _checked_table(kappa, self.n_out, self.table, FloatPoly)
        )

    @property
    def m(self) -> int:
        return len(self.kappa)

    def image(self, alpha: Sequence[int]) -> FloatPoly:
        return self.table[tuple(int(v) for v in alpha)]


def apply_inducing(seq: SubsetSeq, f: Poly) -> Poly:
    """Send each normalized monomial to the sum of its matched counterparts.

    The normalized coefficient of x^alpha lands, unchanged, on y^beta for
    every beta with (alpha, beta) matchable; extended linearly and exactly.
    """
    if f.nvars != seq.m:
        raise ValueError(f"polynomial in {f.nvars} variables, sequence over 1..{seq.m}")
    data: dict[tuple[int, ...], Fraction] = {}
    for exp, c in f.items():
        norm = c * vec_factorial(exp)
        for beta in matched_degrees(seq, exp):
            key = beta
            data[key] = data.get(key, Fraction(0)) + norm / vec_factorial(beta)
    return Poly(seq.n, data)


def _checked_matrix(
    seq: SubsetSeq, matrix: Sequence[Sequence] | None
) -> list[list[Fraction]]:
    if matrix is None:
        return [
            [Fraction(1 if seq.has_edge(i, j) else 0) for j in range(1, seq.n + 1)]
            for i in range(1, seq.m + 1)
        ]
    rows = [list(r) for r in matrix]
    if len(rows) != seq.m or any(len(r) != seq.n for r in rows):
        raise ValueError(f"matrix must be {seq.m} x {seq.n}")
    out = []
    for i, row in enumerate(rows, start=1):
        checked = []
        for j, v in enumerate(row, start=1):
            if isinstance(v, float):
                raise TypeError("exact rational entries required, got float")
            value = Fraction(v)
            if value < 0:
                raise ValueError(f"negative weight at ({i},{j})")
            if (value != 0) != seq.has_edge(i, j):
                raise ValueError(
                    f"weight pattern differs from the sequence at ({i},{j})"
                )
            checked.append(value)
        out.append(checked)
    return out


def apply_substitution(
    seq: SubsetSeq, matrix: Sequence[Sequence] | None, f: Poly
) -> Poly:
    """Substitute x_i -> sum of weighted y_j over the parts containing i.

    The default weights are all 1; an explicit matrix must be nonnegative
    and supported exactly on the incidences of the sequence.
    """
    if f.nvars != seq.m:
        raise ValueError(f"polynomial in {f.nvars} variables, sequence over 1..{seq.m}")
    weights = _checked_matrix(seq, matrix)
    images = []
    for i in range(1, seq.m + 1):
        terms = {}
        for j in seq.parts_containing(i):
            exp = tuple(int(t == j - 1) for t in range(seq.n))
            terms[exp] = weights[i - 1][j - 1]
        images.append(Poly(seq.n, terms))
    return f.substitute(images, seq.n)


def inducing_box(seq: SubsetSeq, kappa: Sequence[int]) -> OperatorBox:
    """Box table of the inducing operator: all matched images over alpha <= kappa."""
    k = _checked_kappa(kappa)
    if len(k) != seq.m:
        raise ValueError(f"box over {len(k)} variables, sequence over 1..{seq.m}")
    table = {}
    for alpha in iter_box(k):
        table[alpha] = Poly(
            seq.n,
            {
                beta: Fraction(1, vec_factorial(beta))
                for beta in matched_degrees(seq, alpha)
            },
        )
    return OperatorBox(k, seq.n, table)


def substitution_box(
    seq: SubsetSeq, matrix: Sequence[Sequence] | None, kappa: Sequence[int]
) -> OperatorBox:
    """Box table of the substitution operator with the given edge weights."""
    k = _checked_kappa(kappa)
    if len(k) != seq.m:
        raise ValueError(f"box over {len(k)} variables, sequence over 1..{seq.m}")
    weights = _checked_matrix(seq, matrix)
    table = {}
    for alpha in iter_box(k):
        mono = Poly.monomial(seq.m, alpha, Fraction(1, vec_factorial(alpha)))
        table[alpha] = apply_substitution(seq, weights, mono)
    return OperatorBox(k, seq.n, table)


def symbol_of(box: OperatorBox | FloatOperatorBox) -> Poly | FloatPoly:
    """One polynomial carrying the whole table: y-variables first, then one
    u-variable per input variable; the u-exponent kappa-alpha marks which
    table entry a term came from, weighted so inversion is exact."""
    kappa = box.kappa
    kfact = vec_factorial(kappa)
    exact = isinstance(box, OperatorBox)
    data: dict = {}
    for alpha, poly in box.table.items():
        uexp = tuple(k - a for k, a in zip(kappa, alpha))
        factor = kfact // vec_factorial(uexp)
        if not exact:
            factor = float(factor)
        for yexp, c in poly.items():
            key = yexp + uexp
            data[key] = data.get(key, 0) + c * factor
    if exact:
        return Poly(box.n_out + box.m, data)
    return FloatPoly(box.n_out + box.m, data)


def box_from_symbol(
    sym: Poly | FloatPoly, kappa: Sequence[int], n_out: int
) -> OperatorBox | FloatOperatorBox:
    """Invert symbol_of: split off the u-exponents and rescale each slice."""
    k = _checked_kappa(kappa)
    if n_out < 1:
        raise ValueError("output variable count must be >= 1")
    if sym.nvars != n_out + len(k):
        raise ValueError(
            f"symbol has {sym.nvars} variables, expected {n_out} + {len(k)}"
        )
    kfact = vec_factorial(k)
    exact = isinstance(sym, Poly)
    slices: dict[tuple[int, ...], dict] = {alpha: {} for alpha in iter_box(k)}
    for exp, c in sym.items():
        yexp = exp[:n_out]
        uexp = exp[n_out:]
        if any(u > kk for u, kk in zip(uexp, k)):
            raise ValueError(f"u-exponent {uexp} exceeds the box {k}")
        alpha = tuple(kk - u for kk, u in zip(k, uexp))
        if exact:
            slices[alpha][yexp] = c * Fraction(vec_factorial(uexp), kfact)
        else:
            slices[alpha][yexp] = c * (vec_factorial(uexp) / kfact)
    if exact:
        table = {a: Poly(n_out, t) for a, t in slices.items()}
        return OperatorBox(k, n_out, table)
    table = {a: FloatPoly(n_out, t) for a, t in slices.items()}
    return FloatOperatorBox(k, n_out, table)


def power_box(box: OperatorBox, q) -> FloatOperatorBox:
    """Raise every normalized symbol coefficient to the power q in [0, 1].

    Zero coefficients stay zero; positive ones become c**q in floating
    point, so q=1 reproduces the operator up to float representation and
    q=0 flattens every present coefficient to 1.
    """
    if isinstance(q, float):
        qf = q
    else:
        qf = float(Fraction(q))
    if not 0 <= qf <= 1:
        raise ValueError(f"power {q} outside [0, 1]")
    sym = symbol_of(box)
    data = {}
    for exp, c in sym.items():
        norm = c * vec_factorial(exp)
        if norm < 0:
            raise ValueError(f"negative normalized coefficient at {exp}")
        data[exp] = float(norm) ** qf / vec_factorial(exp)
    powered = FloatPoly(sym.nvars, data)
    result = box_from_symbol(powered, box.kappa, box.n_out)
    assert isinstance(result, FloatOperatorBox)
    return result


def augment_with_singletons(seq: SubsetSeq) -> SubsetSeq:
    """Append one singleton part per part membership, in part-then-element order."""
    singles = tuple(
        frozenset({e}) for part in seq.sets for e in sorted(part)
    )
    return SubsetSeq(seq.m, seq.sets + singles)


def _singleton_owners(seq: SubsetSeq) -> tuple[int, ...]:
    """Which original part each appended singleton came from (1-indexed)."""
    return tuple(
        i for i, part in enumerate(seq.sets, start=1) for _ in sorted(part)
    )


def _checked_weights(values: Sequence, length: int, name: str) -> list[Fraction]:
    out = []
    for v in values:
        if isinstance(v, float):
            raise TypeError("exact rational weights required, got float")
        value = Fraction(v)
        if value < 0:
            raise ValueError(f"{name} weights must be nonnegative")
        out.append(value)
    if len(out) != length:
        raise ValueError(f"{name} has length {len(out)}, expected {length}")
    return out


def tab_family_box(
    seq: SubsetSeq, a: Sequence, b: Sequence, kappa: Sequence[int]
) -> OperatorBox:
    """Two-parameter family interpolating the inducing and substitution operators.

    Build the singleton-augmented sequence, take the symbol of its inducing
    box, rescale the variable of original part i by a_i and collapse the
    k-th singleton's variable onto its owner part with weight b_k, then
    invert the symbol.  a = 1, b = 0 recovers the inducing operator exactly;
    a = 0, b = 1 recovers the substitution operator.
    """
    k = _checked_kappa(kappa)
    if len(k) != seq.m:
        raise ValueError(f"box over {len(k)} variables, sequence over 1..{seq.m}")
    owners = _singleton_owners(seq)
    a_w = _checked_weights(a, seq.n, "a")
    b_w = _checked_weights(b, len(owners), "b")
    augmented = augment_with_singletons(seq)
    sym = symbol_of(inducing_box(augmented, k))
    n, m = seq.n, seq.m
    nvars_out = n + m
    images = []
    for i in range(n):
        exp = tuple(int(t == i) for t in range(nvars_out))
        images.append(Poly.monomial(nvars_out, exp, a_w[i]))
    for idx, owner in enumerate(owners):
        exp = tuple(int(t == owner - 1) for t in range(nvars_out))
        images.append(Poly.monomial(nvars_out, exp, b_w[idx]))
    for t in range(m):
        images.append(Poly.variable(nvars_out, n + t))
    collapsed = sym.substitute(images, nvars_out)
    result = box_from_symbol(collapsed, k, n)
    assert isinstance(result, OperatorBox)
    return result
