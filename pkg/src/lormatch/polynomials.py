"""Sparse multivariate polynomials with exact rational coefficients.

A `Poly` maps exponent tuples to nonzero `fractions.Fraction` coefficients in
the plain monomial basis.  The normalized (divided-power) view, in which the
weight attached to an exponent vector ``a`` is ``a!`` times the plain
coefficient of ``x^a``, is exposed through `normalized_coeff` and understood
by the JSON codec.  All arithmetic is exact; `eval_complex` is the only
floating-point entry point.  `FloatPoly` is a deliberately separate type for
float-coefficient data, so the exact and floating paths never mix silently.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from ._util import grlex_key, vec_factorial

ExpVec = tuple[int, ...]
CPoint = tuple[complex, ...]


class _AnyDegree:
    """Degree marker for the zero polynomial, homogeneous of every degree."""

    _instance = None

    def __new__(cls) -> "_AnyDegree":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "ANY_DEGREE"


ANY_DEGREE = _AnyDegree()


def _to_fraction(value: object) -> Fraction:
    if isinstance(value, float):
        raise TypeError("exact coefficient required, got float (use FloatPoly)")
    return Fraction(value)  # type: ignore[arg-type]


def _checked_exponent(exp: Sequence[int], nvars: int) -> ExpVec:
    out = tuple(int(e) for e in exp)
    if len(out) != nvars:
        raise ValueError(f"exponent {out} has length {len(out)}, expected {nvars}")
    if any(e < 0 for e in out):
        raise ValueError(f"negative entry in exponent {out}")
    return out


class Poly:
    """Immutable sparse polynomial in ``nvars`` variables over the rationals."""

    def __init__(self, nvars: int, terms: Mapping | Iterable = ()) -> None:
        if nvars < 1:
            raise ValueError("nvars must be >= 1")
        self.nvars = nvars
        pairs = terms.items() if isinstance(terms, Mapping) else terms
        data: dict[ExpVec, Fraction] = {}
        for exp, coeff in pairs:
            key = _checked_exponent(exp, nvars)
            c = _to_fraction(coeff)
            if key in data:
                c = data[key] + c
            if c:
                data[key] = c
            else:
                data.pop(key, None)
        self._terms = data

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, value) -> "Poly":
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "Poly":
        """The monomial x_index with 0-based index."""
        if not 0 <= index < nvars:
            raise ValueError(f"variable index {index} outside 0..{nvars - 1}")
        exp = tuple(1 if k == index else 0 for k in range(nvars))
        return cls(nvars, {exp: 1})

    @classmethod
    def monomial(cls, nvars: int, exp: Sequence[int], coeff=1) -> "Poly":
        return cls(nvars, {tuple(exp): coeff})

    # -- access ------------------------------------------------------------

    def items(self) -> Iterator[tuple[ExpVec, Fraction]]:
        return iter(self._terms.items())

    def sorted_terms(self) -> list[tuple[ExpVec, Fraction]]:
        """Terms in graded-lexicographic order (the serialization order)."""
        return sorted(self._terms.items(), key=lambda kv: grlex_key(kv[0]))

    def support(self) -> frozenset[ExpVec]:
        return frozenset(self._terms)

    def coefficient(self, exp: Sequence[int]) -> Fraction:
        return self._terms.get(_checked_exponent(exp, self.nvars), Fraction(0))

    def normalized_coeff(self, exp: Sequence[int]) -> Fraction:
        """Coefficient in the divided-power basis: exp! times the plain one."""
        key = _checked_exponent(exp, self.nvars)
        return self._terms.get(key, Fraction(0)) * vec_factorial(key)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __repr__(self) -> str:
        if not self._terms:
            return "Poly(0)"
        bits = []
        for exp, c in self.sorted_terms():
            mono = "*".join(
                f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}"
                for i, e in enumerate(exp)
                if e
            )
            bits.append(f"{c}" if not mono else f"{c}*{mono}")
        return "Poly(" + " + ".join(bits) + ")"

    # -- arithmetic ----------------------------------------------------------

    def _require_same_arity(self, other: "Poly") -> None:
        if self.nvars != other.nvars:
            raise ValueError(
                f"variable-arity mismatch: {self.nvars} vs {other.nvars}"
            )

    def __add__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        self._require_same_arity(other)
        data = dict(self._terms)
        for exp, c in other._terms.items():
            s = data.get(exp, Fraction(0)) + c
            if s:
                data[exp] = s
            else:
                data.pop(exp, None)
        out = Poly.__new__(Poly)
        out.nvars = self.nvars
        out._terms = data
        return out

    def __neg__(self) -> "Poly":
        out = Poly.__new__(Poly)
        out.nvars = self.nvars
        out._terms = {e: -c for e, c in self._terms.items()}
        return out

    def __sub__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Poly):
            self._require_same_arity(other)
            data: dict[ExpVec, Fraction] = {}
            for e1, c1 in self._terms.items():
                for e2, c2 in other._terms.items():
                    key = tuple(a + b for a, b in zip(e1, e2))
                    s = data.get(key, Fraction(0)) + c1 * c2
                    if s:
                        data[key] = s
                    else:
                        data.pop(key, None)
            out = Poly.__new__(Poly)
            out.nvars = self.nvars
            out._terms = data
            return out
        c = _to_fraction(other)
        return self.scale(c)

    def __rmul__(self, other) -> "Poly":
        return self.scale(_to_fraction(other))

    def scale(self, value) -> "Poly":
        c = _to_fraction(value)
        out = Poly.__new__(Poly)
        out.nvars = self.nvars
        out._terms = {} if not c else {e: c * v for e, v in self._terms.items()}
        return out

    def __pow__(self, power: int) -> "Poly":
        if not isinstance(power, int) or power < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        out = Poly.constant(self.nvars, 1)
        base = self
        k = power
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- structure -----------------------------------------------------------

    def total_degree(self) -> int:
        """Largest term degree; 0 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=0)

    def degree_profile(self) -> ExpVec:
        """Per-variable maximum exponent over the support."""
        prof = [0] * self.nvars
        for exp in self._terms:
            for i, e in enumerate(exp):
                if e > prof[i]:
                    prof[i] = e
        return tuple(prof)

    def homogeneous_degree(self):
        """Common term degree, ANY_DEGREE for the zero polynomial, None if mixed."""
        if not self._terms:
            return ANY_DEGREE
        degrees = {sum(e) for e in self._terms}
        if len(degrees) == 1:
            return degrees.pop()
        return None

    def multiaffine_part(self) -> "Poly":
        """Terms whose exponents are all 0 or 1."""
        out = Poly.__new__(Poly)
        out.nvars = self.nvars
        out._terms = {
            e: c for e, c in self._terms.items() if all(x <= 1 for x in e)
        }
        return out

    def derivative_multi(self, gamma: Sequence[int]) -> "Poly":
        """Iterated partial derivative with multiplicities ``gamma``."""
        g = _checked_exponent(gamma, self.nvars)
        data: dict[ExpVec, Fraction] = {}
        for exp, c in self._terms.items():
            if any(e < gi for e, gi in zip(exp, g)):
                continue
            factor = 1
            for e, gi in zip(exp, g):
                # falling factorial e * (e-1) * ... * (e-gi+1)
                for t in range(gi):
                    factor *= e - t
            key = tuple(e - gi for e, gi in zip(exp, g))
            data[key] = data.get(key, Fraction(0)) + c * factor
        return Poly(self.nvars, data)

    def substitute(self, images: Sequence["Poly"], nvars_out: int) -> "Poly":
        """Replace variable i by images[i]; all images live in nvars_out variables."""
        if len(images) != self.nvars:
            raise ValueError(
                f"need {self.nvars} images, got {len(images)}"
            )
        for img in images:
            if img.nvars != nvars_out:
                raise ValueError("image arity differs from nvars_out")
        if all(len(img) <= 1 for img in images):
            # monomial images: map terms directly
            data: dict[ExpVec, Fraction] = {}
            for exp, c in self._terms.items():
                coeff = c
                acc = [0] * nvars_out
                dead = False
                for v, e in enumerate(exp):
                    if e == 0:
                        continue
                    img = images[v]
                    if not img:
                        dead = True
                        break
                    (iexp, ic), = img._terms.items()
                    coeff *= ic ** e
                    for t, ee in enumerate(iexp):
                        if ee:
                            acc[t] += ee * e
                if dead:
                    continue
                key = tuple(acc)
                s = data.get(key, Fraction(0)) + coeff
                if s:
                    data[key] = s
                else:
                    data.pop(key, None)
            return Poly(nvars_out, data)
        cache: dict[tuple[int, int], Poly] = {}

        def img_pow(v: int, e: int) -> Poly:
            got = cache.get((v, e))
            if got is None:
                got = images[v] ** e
                cache[(v, e)] = got
            return got

        total = Poly.zero(nvars_out)
        for exp, c in self._terms.items():
            term = Poly.constant(nvars_out, c)
            for v, e in enumerate(exp):
                if e:
                    term = term * img_pow(v, e)
            total = total + term
        return total

    # -- evaluation ----------------------------------------------------------

    def eval_exact(self, point: Sequence) -> Fraction:
        """Exact evaluation at a rational point."""
        if len(point) != self.nvars:
            raise ValueError("point arity differs from nvars")
        vals = [_to_fraction(p) for p in point]
        total = Fraction(0)
        for exp, c in self._terms.items():
            term = c
            for v, e in zip(vals, exp):
                if e:
                    term *= v ** e
            total += term
        return total

    def eval_complex(self, point: Sequence[complex]) -> complex:
        """Double-precision evaluation at a complex point."""
        if len(point) != self.nvars:
            raise ValueError("point arity differs from nvars")
        pts = [complex(p) for p in point]
        for p in pts:
            if not (math.isfinite(p.real) and math.isfinite(p.imag)):
                raise ValueError("non-finite input coordinate")
        total = 0j
        for exp, c in self._terms.items():
            term = complex(float(c))
            for p, e in zip(pts, exp):
                if e:
                    term *= p ** e
            total += term
        return total

    # -- serialization ---------------------------------------------------------

    def to_json(self, basis: str = "plain") -> dict:
        if basis not in ("plain", "normalized"):
            raise ValueError(f"unknown basis {basis!r}")
        rows = []
        for exp, c in self.sorted_terms():
            if basis == "normalized":
                c = c * vec_factorial(exp)
            rows.append(
                {
                    "exp": list(exp),
                    "num": str(c.numerator),
                    "den": str(c.denominator),
                }
            )
        return {"nvars": self.nvars, "basis": basis, "terms": rows}

    @classmethod
    def from_json(cls, obj: dict) -> "Poly":
        if not isinstance(obj, dict):
            raise ValueError("polynomial JSON must be an object")
        try:
            nvars = int(obj["nvars"])
        except (KeyError, TypeError, ValueError):
            raise ValueError("polynomial JSON needs an integer 'nvars'") from None
        basis = obj.get("basis", "plain")
        if basis not in ("plain", "normalized"):
            raise ValueError(f"unknown basis {basis!r}")
        terms: dict[ExpVec, Fraction] = {}
        for row in obj.get("terms", []):
            exp = _checked_exponent(row["exp"], nvars)
            if "num" in row:
                num = row["num"]
                den = row.get("den", "1")
                if isinstance(num, float) or isinstance(den, float):
                    raise ValueError("coefficients must be integers or strings")
                c = Fraction(int(num), int(den))
            elif "coeff" in row:
                raw = row["coeff"]
                if isinstance(raw, float):
                    raise ValueError("coefficients must be integers or strings")
                c = Fraction(raw) if isinstance(raw, str) else Fraction(int(raw))
            else:
                raise ValueError("term needs 'num'/'den' or 'coeff'")
            if basis == "normalized":
                c = c / vec_factorial(exp)
            terms[exp] = terms.get(exp, Fraction(0)) + c
        return cls(nvars, terms)


def elementary_symmetric(nvars: int, degree: int) -> Poly:
    """Sum of all squarefree monomials of the given degree in nvars variables."""
    if not 0 <= degree <= nvars:
        raise ValueError(f"degree {degree} outside 0..{nvars}")
    import itertools

    terms = {}
    for combo in itertools.combinations(range(nvars), degree):
        exp = tuple(1 if i in combo else 0 for i in range(nvars))
        terms[exp] = 1
    return Poly(nvars, terms)


class FloatPoly:
    """Float-coefficient companion of `Poly`; read-mostly, no ring operations."""

    def __init__(self, nvars: int, terms: Mapping | Iterable = ()) -> None:
        if nvars < 1:
            raise ValueError("nvars must be >= 1")
        self.nvars = nvars
        pairs = terms.items() if isinstance(terms, Mapping) else terms
        data: dict[ExpVec, float] = {}
        for exp, coeff in pairs:
            key = _checked_exponent(exp, nvars)
            c = data.get(key, 0.0) + float(coeff)
            if c != 0.0:
                data[key] = c
            else:
                data.pop(key, None)
        self._terms = data

    @classmethod
    def from_poly(cls, poly: Poly) -> "FloatPoly":
        return cls(poly.nvars, {e: float(c) for e, c in poly.items()})

    def items(self) -> Iterator[tuple[ExpVec, float]]:
        return iter(self._terms.items())

    def sorted_terms(self) -> list[tuple[ExpVec, float]]:
        return sorted(self._terms.items(), key=lambda kv: grlex_key(kv[0]))

    def support(self) -> frozenset[ExpVec]:
        return frozenset(self._terms)

    def coefficient(self, exp: Sequence[int]) -> float:
        return self._terms.get(_checked_exponent(exp, self.nvars), 0.0)

    def normalized_coeff(self, exp: Sequence[int]) -> float:
        key = _checked_exponent(exp, self.nvars)
        return self._terms.get(key, 0.0) * vec_factorial(key)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FloatPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __repr__(self) -> str:
        return f"FloatPoly({len(self._terms)} terms, nvars={self.nvars})"

    def homogeneous_degree(self):
        if not self._terms:
            return ANY_DEGREE
        degrees = {sum(e) for e in self._terms}
        if len(degrees) == 1:
            return degrees.pop()
        return None

    def degree_profile(self) -> ExpVec:
        prof = [0] * self.nvars
        for exp in self._terms:
            for i, e in enumerate(exp):
                if e > prof[i]:
                    prof[i] = e
        return tuple(prof)

    def derivative_multi(self, gamma: Sequence[int]) -> "FloatPoly":
        g = _checked_exponent(gamma, self.nvars)
        data: dict[ExpVec, float] = {}
        for exp, c in self._terms.items():
            if any(e < gi for e, gi in zip(exp, g)):
                continue
            factor = 1
            for e, gi in zip(exp, g):
                for t in range(gi):
                    factor *= e - t
            key = tuple(e - gi for e, gi in zip(exp, g))
            data[key] = data.get(key, 0.0) + c * factor
        return FloatPoly(self.nvars, data)
