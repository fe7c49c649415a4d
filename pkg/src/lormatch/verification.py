"""Randomized desk-scale verification harness crossing every module.

Each check draws instances from a seeded generator, evaluates a bundle of
expected identities, and reports failing instances in serialized, replayable
form.  Trials are deterministic per (seed, check name, trial index): the
per-trial generator is re-derived from that triple, so results never depend
on execution order, and `replay` reruns a recorded instance standalone.

The checks treat proved statements as oracles: a failure is evidence of an
implementation bug, and the serialized instance is the bug report.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Callable, Mapping, Sequence

from ._util import bounded_compositions, compositions, iter_box, vec_factorial
from .lorentzian import certify_lorentzian, is_m_convex, quad_inertia
from .matchings import (
    SubsetSeq,
    admits_matching,
    admits_restricted,
    compose_seq,
    find_witness,
    matched_degrees,
)
from .matchstats import basis_match_poly, match_count, match_poly, stat_table
from .operators import (
    OperatorBox,
    apply_inducing,
    apply_substitution,
    box_from_symbol,
    inducing_box,
    power_box,
    substitution_box,
    symbol_of,
    tab_family_box,
)
from .polymatroids import (
    AxiomViolation,
    InternalCheckError,
    LinReal,
    Matroid,
    Polymatroid,
    base_egf,
    base_points,
    direct_sum,
    free_polymatroid,
    hall_rado_member,
    induce_matroid,
    induce_polymatroid,
    linreal_induce,
    linreal_rank,
    matroid_bases,
    support_polymatroid,
    uniform_matroid,
    validate_polymatroid,
)
from .polynomials import Poly, elementary_symmetric


@dataclass(frozen=True)
class TrialConfig:
    """Bounds and budget for randomized checks."""

    seed: int = 1
    max_m: int = 5
    max_n: int = 5
    max_rank: int = 3
    max_kappa: int = 2
    trials: int = 100
    tolerance: float = 1e-9

    def __post_init__(self) -> None:
        bounds = (self.max_m, self.max_n, self.max_rank, self.max_kappa, self.trials)
        if min(bounds) < 1:
            raise ValueError("bounds and trial count must be >= 1")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "max_m": self.max_m,
            "max_n": self.max_n,
            "max_rank": self.max_rank,
            "max_kappa": self.max_kappa,
            "trials": self.trials,
            "tolerance": self.tolerance,
        }


@dataclass(frozen=True)
class CheckResult:
    name: str
    trials: int
    failures: tuple[dict, ...]

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "check": self.name,
            "trials": self.trials,
            "passed": self.passed,
            "failures": list(self.failures),
        }


def _trial_rng(seed: int, name: str, trial: int) -> random.Random:
    # string seeding hashes with sha512, stable across platforms and runs
    return random.Random(f"{seed}:{name}:{trial}")


# -- instance generators -------------------------------------------------------


def _random_parts(
    rng: random.Random, m: int, n: int, cover: bool = False
) -> SubsetSeq:
    sets = [
        frozenset(e for e in range(1, m + 1) if rng.random() < 0.5)
        for _ in range(n)
    ]
    if cover:
        for e in range(1, m + 1):
            if not any(e in s for s in sets):
                j = rng.randrange(n)
                sets[j] = sets[j] | {e}
    return SubsetSeq(m, tuple(sets))


def _random_seq(
    rng: random.Random, max_m: int, max_n: int, cover: bool = False
) -> SubsetSeq:
    return _random_parts(rng, rng.randint(1, max_m), rng.randint(1, max_n), cover)


def _random_linreal(
    rng: random.Random, blocks: int, max_dim: int, max_rows: int
) -> LinReal:
    dims = tuple(rng.randint(1, max_dim) for _ in range(blocks))
    rows = rng.randint(0, max_rows)
    ncols = sum(dims)
    gens = tuple(
        tuple(Fraction(rng.randint(-2, 2)) for _ in range(ncols))
        for _ in range(rows)
    )
    return LinReal(dims, gens)


def _random_polymatroid(rng: random.Random, m: int, max_rank: int) -> Polymatroid:
    flavor = rng.choice(["free", "uniform", "linear", "sum", "induced"])
    if flavor == "free":
        return free_polymatroid(m, rng.randint(0, max_rank))
    if flavor == "uniform":
        return uniform_matroid(m, rng.randint(0, min(m, max_rank))).underlying
    if flavor == "linear":
        rows = rng.randint(0, max_rank)
        gens = tuple(
            tuple(Fraction(rng.randint(-2, 2)) for _ in range(m))
            for _ in range(rows)
        )
        return linreal_rank(LinReal((1,) * m, gens))
    if flavor == "sum" and m >= 2:
        split = rng.randint(1, m - 1)
        r1 = rng.randint(0, max_rank)
        r2 = rng.randint(0, max_rank - r1)
        return direct_sum(
            [free_polymatroid(split, r1), free_polymatroid(m - split, r2)]
        )
    source = free_polymatroid(rng.randint(1, m + 1), rng.randint(0, max_rank))
    return induce_polymatroid(source, _random_parts(rng, source.m, m, cover=True))


# -- check: matching statistics are Lorentzian ---------------------------------


def _gen_matching_stat(cfg: TrialConfig, rng: random.Random, trial: int) -> dict:
    return {"seq": _random_seq(rng, cfg.max_m, cfg.max_n).to_json()}


def _eval_matching_stat(cfg: TrialConfig, instance: Mapping) -> list[str]:
    seq = SubsetSeq.from_json(instance["seq"])
    reasons = []
    for r in range(seq.m + 1):
        fp = match_poly(seq, r)
        report = certify_lorentzian(fp)
        if not report.verdict:
            reasons.append(f"r={r}: certification failed ({report.failure.kind})")
        bridge = apply_inducing(seq, elementary_symmetric(seq.m, r)).multiaffine_part()
        if fp != bridge:
            reasons.append(f"r={r}: statistic differs from the multi-affine bridge")
    return reasons


# -- check: symbol support matches the induced base polytope -------------------


def _edge_groups(seq: SubsetSeq) -> list[list[int]]:
    """1-indexed edge positions grouped by left endpoint (sorted edge order)."""
    groups: list[list[int]] = [[] for _ in range(seq.m)]
    for pos, (i, _) in enumerate(seq.edges(), start=1):
        groups[i - 1].append(pos)
    return groups


def _symbol_instance_reasons(seq: SubsetSeq, kappa: tuple[int, ...]) -> list[str]:
    groups = _edge_groups(seq)
    for e, group in enumerate(groups):
        if not group and kappa[e] > 0:
            return [f"element {e + 1} lies in no part but has budget {kappa[e]}"]
    edges = seq.edges()
    sym = symbol_of(inducing_box(seq, kappa))
    kfact = vec_factorial(kappa)
    reasons = []
    if not edges:
        if sym != Poly.constant(sym.nvars, kfact):
            reasons.append("edgeless sequence: symbol is not the constant kappa!")
        return reasons
    summands = [
        free_polymatroid(len(group), kappa[e])
        for e, group in enumerate(groups)
        if group
    ]
    pm = direct_sum(summands)
    left = [frozenset(group) for group in groups]
    right = [
        frozenset(pos for pos, (_, j) in enumerate(edges, start=1) if j == part)
        for part in range(1, seq.n + 1)
    ]
    eseq = SubsetSeq(len(edges), tuple(left + right))
    induced = induce_polymatroid(pm, eseq)
    points = base_points(induced)
    n = seq.n
    from_symbol = {exp[n:] + exp[:n] for exp in sym.support()}
    if from_symbol != points:
        reasons.append("symbol support differs from the induced base points")
    for exp, c in sym.items():
        uexp, yexp = exp[n:], exp[:n]
        want = Fraction(kfact, vec_factorial(uexp) * vec_factorial(yexp))
        if c != want:
            reasons.append(f"coefficient at y^{yexp} u^{uexp} is {c}, want {want}")
            break
    col_caps = [
        sum(kappa[i - 1] for i in seq.sets[j]) for j in range(seq.n)
    ]
    for alpha in iter_box(kappa):
        mu = tuple(k - a for k, a in zip(kappa, alpha))
        for beta in bounded_compositions(sum(alpha), col_caps):
            feasible = admits_matching(seq, alpha, beta)
            member = (mu + beta) in points
            if feasible != member:
                reasons.append(
                    f"matchability and membership disagree at "
                    f"alpha={alpha}, beta={beta}"
                )
    return reasons


def _gen_symbol_support(cfg: TrialConfig, rng: random.Random, trial: int) -> dict:
    # brute-force sides grow fast, so this check stays at its own small scale
    seq = _random_seq(rng, min(cfg.max_m, 3), min(cfg.max_n, 3), cover=True)
    kappa = [rng.randint(0, min(cfg.max_kappa, 2)) for _ in range(seq.m)]
    return {"seq": seq.to_json(), "kappa": kappa}


def _eval_symbol_support(cfg: TrialConfig, instance: Mapping) -> list[str]:
    seq = SubsetSeq.from_json(instance["seq"])
    kappa = tuple(int(v) for v in instance["kappa"])
    return _symbol_instance_reasons(seq, kappa)


# -- check: dual descriptions of induced base-point membership -----------------


def _gen_base_membership(cfg: TrialConfig, rng: random.Random, trial: int) -> dict:
    m = rng.randint(1, cfg.max_m)
    pm = _random_polymatroid(rng, m, cfg.max_rank)
    seq = _random_parts(rng, m, rng.randint(1, cfg.max_n), cover=True)
    induced = induce_polymatroid(pm, seq)
    points = sorted(base_points(induced))
    pick = rng.random()
    expected: bool | None
    if pick < 0.4 or seq.n == 1:
        delta = list(rng.choice(points))
        expected = True
    elif pick < 0.8:
        delta = list(rng.choice(points))
        j = rng.randrange(seq.n)
        k = rng.randrange(seq.n)
        delta[j] += 1
        delta[k] -= 1
        expected = None
    else:
        delta = list(points[0])
        delta[rng.randrange(seq.n)] += 1
        expected = False
    return {
        "pm": pm.to_json(),
        "seq": seq.to_json(),
        "delta": delta,
        "expected": expected,
    }


def _eval_base_membership(cfg: TrialConfig, instance: Mapping) -> list[str]:
    pm = Polymatroid.from_json(instance["pm"])
    seq = SubsetSeq.from_json(instance["seq"])
    delta = [int(v) for v in instance["delta"]]
    if any(v < 0 for v in delta):
        return []
    try:
        member = hall_rado_member(pm, seq, delta)
    except InternalCheckError as exc:
        return [f"membership paths disagree: {exc}"]
    expected = instance.get("expected")
    if expected is not None and member is not bool(expected):
        return [f"membership is {member}, expected {expected}"]
    return []


# -- check: fractional coefficient powers stay Lorentzian ----------------------


def _gen_power_family(cfg: TrialConfig, rng: random.Random, trial: int) -> dict:
    seq = _random_seq(rng, min(cfg.max_m, 3), min(cfg.max_n, 3))
    kappa = [rng.randint(0, min(cfg.max_kappa, 2)) for _ in range(seq.m)]
    return {"seq": seq.to_json(), "kappa": kappa}


def _eval_power_family(cfg: TrialConfig, instance: Mapping) -> list[str]:
    seq = SubsetSeq.from_json(instance["seq"])
    kappa = tuple(int(v) for v in instance["kappa"])
    reasons = []
    sub = substitution_box(seq, None, kappa)
    ind = inducing_box(seq, kappa)
    ind_support = symbol_of(ind).support()
    for q in (0, Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), 1):
        powered = power_box(sub, q)
        sym = symbol_of(powered)
        report = certify_lorentzian(sym, cfg.tolerance)
        if not report.verdict:
            reasons.append(f"q={q}: certification failed ({report.failure.kind})")
        if q == 0:
            if sym.support() != ind_support:
                reasons.append("q=0 support differs from the inducing symbol")
            off = [
                exp
                for exp in sym.support()
                if abs(sym.normalized_coeff(exp) - 1.0) > cfg.tolerance
            ]
            if off:
                reasons.append("q=0 normalized coefficients are not all 1")
    n_single = sum(len(s) for s in seq.sets)
    if tab_family_box(seq, [1] * seq.n, [0] * n_single, kappa) != ind:
        reasons.append("family endpoint a=1, b=0 differs from the inducing box")
    if tab_family_box(seq, [0] * seq.n, [1] * n_single, kappa) != sub:
        reasons.append("family endpoint a=0, b=1 differs from the substitution box")
    return reasons


# -- check: capped matchings against exhaustive enumeration --------------------


def _enumerate_restricted(
    seq: SubsetSeq,
    caps: Mapping[tuple[int, int], int],
    alpha: Sequence[int],
    beta: Sequence[int],
) -> bool:
    """Spread each row budget over its incident parts, within caps, and look
    for an assignment hitting the column sums exactly."""
    total = sum(alpha)
    if total != sum(beta):
        return False

    def rec(element: int, colsums: tuple[int, ...]) -> bool:
        if element > seq.m:
            return colsums == tuple(beta)
        need = alpha[element - 1]
        parts = seq.parts_containing(element)
        if need == 0:
            return rec(element + 1, colsums)
        if not parts:
            return False
        limits = [
            min(caps.get((element, j), total), beta[j - 1] - colsums[j - 1])
            for j in parts
        ]
        if any(v < 0 for v in limits):
            limits = [max(v, 0) for v in limits]
        for spread in bounded_compositions(need, limits):
            updated = list(colsums)
            for j, w in zip(parts, spread):
                updated[j - 1] += w
            if rec(element + 1, tuple(updated)):
                return True
        return False

    return rec(1, (0,) * seq.n)


def _gen_capped(cfg: TrialConfig, rng: random.Random, trial: int) -> dict:
    if trial == 0:
        return {"mode": "exhaustive-core"}
    seq = _random_seq(rng, min(cfg.max_m, 3), min(cfg.max_n, 3))
    caps = {}
    for i, j in seq.edges():
        if rng.random() < 0.7:
            caps[f"{i}-{j}"] = rng.randint(0, 2)
    total = rng.randint(0, 4)
    alpha = list(rng.choice(sorted(compositions(total, seq.m))))
    return {"mode": "random", "seq": seq.to_json(), "caps": caps, "alpha": alpha}


def _capped_mismatches(
    seq: SubsetSeq, caps: Mapping[tuple[int, int], int], alpha: Sequence[int]
) -> list[str]:
    out = []
    for beta in compositions(sum(alpha), seq.n):
        flow = admits_restricted(seq, caps, alpha, beta)
        scan = _enumerate_restricted(seq, caps, alpha, beta)
        if flow != scan:
            out.append(
                f"alpha={tuple(alpha)}, beta={beta}: flow says {flow}, "
                f"enumeration says {scan}"
            )
    return out


def _eval_capped(cfg: TrialConfig, instance: Mapping) -> list[str]:
    if instance.get("mode") == "exhaustive-core":
        reasons = []
        for m, n in ((1, 1), (1, 2), (2, 1), (2, 2)):
            subsets = [frozenset(c) for r in range(m + 1) for c in combinations(range(1, m + 1), r)]
            for sets in product(subsets, repeat=n):
                seq = SubsetSeq(m, tuple(sets))
                for cap in (0, 1, 2):
                    caps = {edge: cap for edge in seq.edges()}
                    for total in range(5):
                        for alpha in compositions(total, m):
                            reasons.extend(_capped_mismatches(seq, caps, alpha))
                            if len(reasons) > 5:
                                return reasons
        return reasons
    seq = SubsetSeq.from_json(instance["seq"])
    caps = {}
    for key, cap in instance["caps"].items():
        i, j = key.split("-")
        caps[(int(i), int(j))] = int(cap)
    return _capped_mismatches(seq, caps, instance["alpha"])


# -- check: basis-restricted statistics ----------------------------------------


def _gen_basis_stats(cfg: TrialConfig, rng: random.Random, trial: int) -> dict:
    m = rng.randint(1, cfg.max_m)
    if rng.random() < 0.5:
        r = rng.randint(0, min(m, cfg.max_rank))
        mat = uniform_matroid(m, r)
        uniform_rank = r
    else:
        rows = rng.randint(0, cfg.max_rank)
        gens = tuple(
            tuple(Fraction(rng.randint(-2, 2)) for _ in range(m))
            for _ in range(rows)
        )
        mat = Matroid(linreal_rank(LinReal((1,) * m, gens)))
        uniform_rank = None
    seq = _random_parts(rng, m, rng.randint(1, cfg.max_n))
    return {
        "matroid": mat.to_json(),
        "seq": seq.to_json(),
        "uniform_rank": uniform_rank,
    }


def _eval_basis_stats(cfg: TrialConfig, instance: Mapping) -> list[str]:
    mat = Matroid.from_json(instance["matroid"])
    seq = SubsetSeq.from_json(instance["seq"])
    reasons = []
    g = basis_match_poly(mat, seq)
    report = certify_lorentzian(g)
    if not report.verdict:
        reasons.append(f"certification failed ({report.failure.kind})")
    r = instance.get("uniform_rank")
    if r is not None and int(r) <= seq.m and g != match_poly(seq, int(r)):
        reasons.append("uniform-matroid restriction differs from the plain statistic")
    return reasons


# -- check: support of induced polynomials -------------------------------------


def _gen_support_induction(cfg: TrialConfig, rng: random.Random, trial: int) -> dict:
    blocks = rng.randint(1, min(cfg.max_m, 4))
    real = _random_linreal(rng, blocks, 2, cfg.max_rank)
    seq = _random_parts(rng, blocks, rng.randint(1, cfg.max_n), cover=True)
    return {"real": real.to_json(), "seq": seq.to_json()}


def _eval_support_induction(cfg: TrialConfig, instance: Mapping) -> list[str]:
    real = LinReal.from_json(instance["real"])
    seq = SubsetSeq.from_json(instance["seq"])
    reasons = []
    pm = linreal_rank(real)
    induced = induce_polymatroid(pm, seq)
    induced_points = base_points(induced)
    image_support = apply_inducing(seq, base_egf(pm)).support()
    if image_support != induced_points:
        reasons.append("support of the induced polynomial misses the base points")
    if linreal_rank(linreal_induce(real, seq)) != induced:
        reasons.append("rank of the induced realization differs")
    if support_polymatroid(base_egf(pm)) != pm:
        reasons.append("support round-trip does not recover the polymatroid")
    return reasons


# -- check: pinned worked examples ----------------------------------------------


def _normalized_poly(nvars: int, table: Mapping[tuple[int, ...], int]) -> Poly:
    return Poly(
        nvars, {exp: Fraction(c, vec_factorial(exp)) for exp, c in table.items()}
    )


def _gen_golden(cfg: TrialConfig, rng: random.Random, trial: int) -> dict:
    return {"abcd": [[rng.randint(1, 9) for _ in range(4)] for _ in range(20)]}


def _eval_golden(cfg: TrialConfig, instance: Mapping) -> list[str]:
    reasons: list[str] = []

    def need(cond: bool, label: str) -> None:
        if not cond:
            reasons.append(label)

    # four-element worked example
    wide = SubsetSeq(4, (frozenset({1, 2, 3, 4}), frozenset({2, 3}), frozenset({3, 4})))
    image = apply_inducing(wide, elementary_symmetric(4, 2))
    need(
        image
        == _normalized_poly(
            3,
            {
                (2, 0, 0): 6,
                (0, 2, 0): 1,
                (0, 0, 2): 1,
                (1, 1, 0): 5,
                (1, 0, 1): 5,
                (0, 1, 1): 3,
            },
        ),
        "degree-2 image of the wide example is off",
    )
    need(
        stat_table(wide, 2).rows == {(1, 2): 5, (1, 3): 5, (2, 3): 3},
        "pair counts of the wide example are off",
    )
    need(
        match_poly(wide, 1) == Poly(3, {(1, 0, 0): 4, (0, 1, 0): 2, (0, 0, 1): 2}),
        "singleton counts of the wide example are off",
    )
    need(match_count(wide, ()) == 1, "empty topic should count exactly the empty set")
    witness = find_witness(wide, (0, 2, 2, 1), (2, 2, 1))
    need(witness is not None, "no witness for the feasible degree pair")
    need(
        matched_degrees(wide, (1, 1, 0, 0)) == {(2, 0, 0), (1, 1, 0)},
        "matched degree set of (1,1,0,0) is off",
    )

    # three-part example on two elements
    narrow = SubsetSeq(2, (frozenset({1}), frozenset({2}), frozenset({1, 2})))
    x1x2 = Poly(2, {(1, 1): 1})
    narrow_image = apply_inducing(narrow, x1x2)
    need(
        narrow_image
        == Poly(
            3,
            {
                (1, 1, 0): 1,
                (1, 0, 1): 1,
                (0, 1, 1): 1,
                (0, 0, 2): Fraction(1, 2),
            },
        ),
        "inducing image of x1 x2 is off",
    )
    plain_sub = apply_substitution(narrow, None, x1x2)
    need(
        plain_sub
        == Poly(3, {(1, 1, 0): 1, (1, 0, 1): 1, (0, 1, 1): 1, (0, 0, 2): 1}),
        "substitution image of x1 x2 is off",
    )
    for a, b, c, d in instance.get("abcd", []):
        weighted = apply_substitution(
            narrow, [[a, 0, b], [0, c, d]], x1x2
        )
        lhs = weighted.coefficient((1, 1, 0)) * weighted.coefficient((0, 0, 2))
        rhs = weighted.coefficient((1, 0, 1)) * weighted.coefficient((0, 1, 1))
        need(lhs == rhs, f"substitution coefficient identity fails at {(a, b, c, d)}")
    need(
        narrow_image.coefficient((1, 1, 0)) * narrow_image.coefficient((0, 0, 2))
        != narrow_image.coefficient((1, 0, 1)) * narrow_image.coefficient((0, 1, 1)),
        "inducing image unexpectedly satisfies the coefficient identity",
    )

    # symmetric three-element example with a non-stable Lorentzian image
    tri = SubsetSeq(3, (frozenset({1, 2, 3}), frozenset({1, 2, 3}), frozenset({1, 2})))
    tri_image = apply_inducing(tri, Poly(3, {(1, 1, 1): 1}))
    ysum = Poly(3, {(1, 0, 0): 1, (0, 1, 0): 1, (0, 0, 1): 1})
    y3 = Poly.variable(3, 2)
    need(
        tri_image == (ysum**3 - y3**3).scale(Fraction(1, 6)),
        "inducing image of x1 x2 x3 is off",
    )
    need(
        certify_lorentzian(tri_image).verdict,
        "the symmetric example should certify",
    )
    z3 = cmath.exp(1j * math.pi / 12)
    z1 = (cmath.exp(3j * math.pi / 4) - z3) / 2
    point = [z1, z1, z3]
    need(
        all(p.imag > 0 for p in point),
        "upper-half-plane witness has a bad coordinate",
    )
    need(
        abs(tri_image.eval_complex(point)) <= 1e-9,
        "upper-half-plane root witness does not vanish",
    )

    # composing sequences is not functorial
    stage1 = SubsetSeq(2, (frozenset({1}), frozenset({1}), frozenset({2}), frozenset({2})))
    stage2 = SubsetSeq(4, (frozenset({1, 3}), frozenset({2, 4})))
    combined = compose_seq(stage1, stage2)
    need(
        combined == SubsetSeq(2, (frozenset({1, 2}), frozenset({1, 2}))),
        "composed sequence is off",
    )
    direct = apply_inducing(combined, x1x2)
    need(
        direct
        == Poly(2, {(1, 1): 1, (2, 0): Fraction(1, 2), (0, 2): Fraction(1, 2)}),
        "one-step image of the composite is off",
    )
    halfway = apply_inducing(stage1, x1x2)
    need(
        halfway
        == Poly(4, {(1, 0, 1, 0): 1, (1, 0, 0, 1): 1, (0, 1, 1, 0): 1, (0, 1, 0, 1): 1}),
        "first-stage image is off",
    )
    staged = apply_inducing(stage2, halfway)
    need(
        staged == Poly(2, {(1, 1): 2, (2, 0): Fraction(1, 2), (0, 2): Fraction(1, 2)}),
        "two-step image is off",
    )

    # operator boxes on the three-part example
    box = inducing_box(narrow, (1, 1))
    need(
        box.image((1, 0)) == Poly(3, {(1, 0, 0): 1, (0, 0, 1): 1}),
        "box image of x1 is off",
    )
    need(box.image((0, 0)) == Poly.constant(3, 1), "box image of 1 is off")
    need(box.image((1, 1)) == narrow_image, "box image of x1 x2 is off")
    need(
        box_from_symbol(symbol_of(box), (1, 1), 3) == box,
        "symbol round-trip lost the box",
    )
    reasons.extend(_symbol_instance_reasons(narrow, (1, 1)))
    n_single = sum(len(s) for s in narrow.sets)
    need(
        tab_family_box(narrow, [1] * 3, [0] * n_single, (1, 1)) == box,
        "family endpoint a=1, b=0 is off",
    )
    need(
        tab_family_box(narrow, [0] * 3, [1] * n_single, (1, 1))
        == substitution_box(narrow, None, (1, 1)),
        "family endpoint a=0, b=1 is off",
    )
    toy = power_box(
        OperatorBox((1,), 1, {(0,): Poly.constant(1, 1), (1,): Poly(1, {(1,): 4})}),
        Fraction(1, 2),
    )
    need(
        toy.image((1,)).coefficient((1,)) == 2.0,
        "square root of a coefficient 4 should be exactly 2.0",
    )

    # polymatroid constructions
    need(
        free_polymatroid(2, 2).rank == (0, 2, 2, 2),
        "rank table of the scaled simplex is off",
    )
    need(
        base_points(direct_sum([free_polymatroid(2, 2), free_polymatroid(1, 1)]))
        == {(2, 0, 1), (1, 1, 1), (0, 2, 1)},
        "base points of a direct sum are off",
    )
    u24 = uniform_matroid(4, 2).underlying
    induced_wide = induce_polymatroid(u24, wide)
    need(
        induced_wide == free_polymatroid(3, 2),
        "induced polymatroid of the wide example is off",
    )
    need(
        induce_matroid(u24, wide) == uniform_matroid(3, 2),
        "induced matroid of the wide example is off",
    )
    need(
        base_points(induced_wide) == image.support(),
        "induced base points differ from the image support",
    )
    need(
        matroid_bases(uniform_matroid(3, 2)) == [(1, 2), (1, 3), (2, 3)],
        "bases of the rank-2 uniform matroid are off",
    )
    need(
        matroid_bases(uniform_matroid(1, 0)) == [()],
        "the rank-0 matroid should have exactly the empty basis",
    )
    need(
        support_polymatroid(match_poly(wide, 2)) is not None,
        "the pair statistic should have polymatroid support",
    )
    need(
        support_polymatroid(Poly(2, {(2, 0): 1, (0, 2): 1})) is None,
        "a gapped support should not look like base points",
    )
    diag = LinReal((2, 2), ((1, 0, 1, 0), (0, 1, 0, 1)))
    need(
        linreal_rank(diag) == free_polymatroid(2, 2),
        "diagonal realization rank is off",
    )
    need(
        linreal_rank(LinReal((1, 1), ((1, 1),)))
        == uniform_matroid(2, 1).underlying,
        "one-row realization rank is off",
    )
    need(
        linreal_rank(LinReal((1, 1), ())) == Polymatroid(2, (0, 0, 0, 0)),
        "empty realization should have rank zero",
    )
    merged = linreal_induce(LinReal((1, 1), ((1, 1),)), SubsetSeq(2, (frozenset({1, 2}),)))
    need(
        linreal_rank(merged) == Polymatroid(1, (0, 1)),
        "merging blocks of the one-row realization is off",
    )
    need(
        linreal_rank(linreal_induce(diag, narrow))
        == induce_polymatroid(free_polymatroid(2, 2), narrow),
        "induction through the realization disagrees with direct induction",
    )
    try:
        member = hall_rado_member(
            free_polymatroid(2, 2), SubsetSeq(2, (frozenset({1}), frozenset({2}))), (1, 1)
        )
        need(member, "the split simplex point (1,1) should be a member")
        need(
            not hall_rado_member(
                free_polymatroid(2, 2),
                SubsetSeq(2, (frozenset({1}), frozenset({2}))),
                (1, 0),
            ),
            "a short vector should not be a member",
        )
        need(
            hall_rado_member(
                free_polymatroid(1, 0), SubsetSeq(1, (frozenset({1}),)), (0,)
            ),
            "the zero vector should be a member at rank zero",
        )
    except InternalCheckError as exc:
        reasons.append(f"membership paths disagree: {exc}")

    # certification goldens
    need(
        quad_inertia(narrow_image).as_tuple() == (1, 2, 0),
        "inertia of the three-variable quadratic is off",
    )
    need(
        quad_inertia(Poly(2, {(1, 1): 1})).as_tuple() == (1, 1, 0),
        "inertia of the hyperbolic plane is off",
    )
    need(
        quad_inertia(Poly(2, {(2, 0): 1, (0, 2): 1})).as_tuple() == (2, 0, 0),
        "inertia of the definite quadratic is off",
    )
    need(
        certify_lorentzian(match_poly(wide, 2)).verdict,
        "the pair statistic of the wide example should certify",
    )
    gapped = certify_lorentzian(Poly(2, {(2, 0): 1, (0, 2): 1}))
    need(
        not gapped.verdict and gapped.failure.kind == "support-not-M-convex",
        "the gapped quadratic should fail on its support",
    )
    ok, _ = is_m_convex({(1, 1, 0), (1, 0, 1), (0, 1, 1)})
    need(ok, "squarefree pairs should be exchangeable")
    ok, pair = is_m_convex({(2, 0), (0, 2)})
    need(not ok and pair is not None, "the gapped support should fail with a witness")

    # axiom violation reporting
    try:
        validate_polymatroid((1, 1))
        reasons.append("a nonzero empty-set rank slipped through")
    except AxiomViolation as exc:
        need(exc.axiom == "normalization", "wrong axiom for the empty-set rank")
    try:
        validate_polymatroid((0, 1, 1, 3))
        reasons.append("a supermodular table slipped through")
    except AxiomViolation as exc:
        need(
            exc.axiom in ("monotonicity", "submodularity"),
            "wrong axiom for the jumping table",
        )
    return reasons


# -- registry -------------------------------------------------------------------


@dataclass(frozen=True)
class Check:
    name: str
    gen: Callable[[TrialConfig, random.Random, int], dict]
    evaluate: Callable[[TrialConfig, Mapping], list[str]]
    ratio: float = 1.0
    fixed_trials: int | None = None

    def trial_count(self, cfg: TrialConfig) -> int:
        if self.fixed_trials is not None:
            return self.fixed_trials
        return max(1, round(cfg.trials * self.ratio))


CHECKS: dict[str, Check] = {
    check.name: check
    for check in (
        Check("golden-examples", _gen_golden, _eval_golden, fixed_trials=1),
        Check("matching-stat-lorentzian", _gen_matching_stat, _eval_matching_stat, 1.0),
        Check("symbol-support-egf", _gen_symbol_support, _eval_symbol_support, 0.5),
        Check("base-membership-duality", _gen_base_membership, _eval_base_membership, 2.0),
        Check("coefficient-power-family", _gen_power_family, _eval_power_family, 0.2),
        Check("capped-matchings", _gen_capped, _eval_capped, 1.0),
        Check("support-induction", _gen_support_induction, _eval_support_induction, 0.5),
        Check("basis-restricted-stats", _gen_basis_stats, _eval_basis_stats, 0.5),
    )
}


def _evaluate_safe(check: Check, cfg: TrialConfig, instance: Mapping) -> list[str]:
    try:
        return check.evaluate(cfg, instance)
    except Exception as exc:  # noqa: BLE001 - a crash is a reportable failure
        return [f"exception: {exc!r}"]


def run_check(name: str, cfg: TrialConfig | None = None) -> CheckResult:
    """Run one named check; failures carry the serialized instances."""
    if name not in CHECKS:
        raise KeyError(f"unknown check {name!r}")
    cfg = cfg or TrialConfig()
    check = CHECKS[name]
    count = check.trial_count(cfg)
    failures = []
    for trial in range(count):
        rng = _trial_rng(cfg.seed, name, trial)
        instance = check.gen(cfg, rng, trial)
        reasons = _evaluate_safe(check, cfg, instance)
        if reasons:
            failures.append(
                {"trial": trial, "instance": instance, "reasons": reasons}
            )
    return CheckResult(name, count, tuple(failures))


def run_all(cfg: TrialConfig | None = None) -> list[CheckResult]:
    """Run every registered check in a fixed order."""
    cfg = cfg or TrialConfig()
    return [run_check(name, cfg) for name in CHECKS]


def replay(name: str, instance: Mapping, cfg: TrialConfig | None = None) -> list[str]:
    """Re-evaluate a recorded instance; empty result means it passes now."""
    if name not in CHECKS:
        raise KeyError(f"unknown check {name!r}")
    return _evaluate_safe(CHECKS[name], cfg or TrialConfig(), instance)
