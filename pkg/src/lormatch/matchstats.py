"""Counting subsets reachable by perfect matchings inside a subset sequence.

For a set T of part indices, the statistic counts the ground-set subsets B
with |B| = |T| admitting a perfect matching t -> i in S_t between T and B.
A subset B is counted once even when several matchings exist, so this is a
set count, not a permanent.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping

from .matchings import SubsetSeq
from .polymatroids import Matroid, matroid_bases
from .polynomials import Poly


def _has_perfect_matching(neighbors: list[list[int]], right_size: int) -> bool:
    """Augmenting-path matching saturating every left vertex."""
    match_right = [-1] * right_size

    def try_assign(u: int, seen: list[bool]) -> bool:
        for v in neighbors[u]:
            if not seen[v]:
                seen[v] = True
                if match_right[v] < 0 or try_assign(match_right[v], seen):
                    match_right[v] = u
                    return True
        return False

    return all(
        try_assign(u, [False] * right_size) for u in range(len(neighbors))
    )


def _check_topic(seq: SubsetSeq, topic: Iterable[int]) -> tuple[int, ...]:
    raw = [int(v) for v in topic]
    t = tuple(sorted(set(raw)))
    if len(t) != len(raw):
        raise ValueError("topic entries must be distinct")
    for j in t:
        if not 1 <= j <= seq.n:
            raise ValueError(f"part index {j} outside 1..{seq.n}")
    return t


def _matchable(seq: SubsetSeq, topic: tuple[int, ...], chosen: tuple[int, ...]) -> bool:
    pos = {i: k for k, i in enumerate(chosen)}
    neighbors = []
    for j in topic:
        row = [pos[i] for i in chosen if i in seq.sets[j - 1]]
        if not row:
            return False
        neighbors.append(row)
    return _has_perfect_matching(neighbors, len(chosen))


def match_count(seq: SubsetSeq, topic: Iterable[int]) -> int:
    """Number of |T|-subsets of the ground set perfectly matchable to T."""
    t = _check_topic(seq, topic)
    if len(t) > seq.m:
        return 0
    return sum(
        1
        for chosen in combinations(range(1, seq.m + 1), len(t))
        if _matchable(seq, t, chosen)
    )


def basis_match_count(mat: Matroid, seq: SubsetSeq, topic: Iterable[int]) -> int:
    """Same count with the candidate subsets restricted to matroid bases."""
    if mat.m != seq.m:
        raise ValueError(f"matroid over 1..{mat.m}, sequence over 1..{seq.m}")
    t = _check_topic(seq, topic)
    return sum(
        1
        for basis in matroid_bases(mat)
        if len(basis) == len(t) and _matchable(seq, t, basis)
    )


def match_poly(seq: SubsetSeq, r: int) -> Poly:
    """Multi-affine polynomial whose y^T coefficient is match_count(seq, T)."""
    if not 0 <= r <= seq.m:
        raise ValueError(f"r = {r} outside 0..{seq.m}")
    terms = {}
    for t in combinations(range(1, seq.n + 1), r):
        count = match_count(seq, t)
        if count:
            exp = tuple(int(j + 1 in t) for j in range(seq.n))
            terms[exp] = Fraction(count)
    return Poly(seq.n, terms)


def basis_match_poly(mat: Matroid, seq: SubsetSeq) -> Poly:
    """Multi-affine polynomial of basis-restricted counts, degree = matroid rank."""
    if mat.m != seq.m:
        raise ValueError(f"matroid over 1..{mat.m}, sequence over 1..{seq.m}")
    r = mat.full_rank
    terms = {}
    if r <= seq.n:
        for t in combinations(range(1, seq.n + 1), r):
            count = basis_match_count(mat, seq, t)
            if count:
                exp = tuple(int(j + 1 in t) for j in range(seq.n))
                terms[exp] = Fraction(count)
    return Poly(seq.n, terms)


@dataclass(frozen=True)
class StatTable:
    """Counts for every r-subset of part indices; zero rows are dropped."""

    r: int
    rows: Mapping[tuple[int, ...], int]

    def __post_init__(self) -> None:
        checked = {}
        for key, count in self.rows.items():
            t = tuple(int(v) for v in key)
            if len(t) != self.r:
                raise ValueError(f"row {t} does not have size {self.r}")
            if count <= 0:
                raise ValueError(f"row {t} has nonpositive count {count}")
            checked[t] = int(count)
        object.__setattr__(self, "rows", checked)

    def count(self, topic: Iterable[int]) -> int:
        return self.rows.get(tuple(sorted(topic)), 0)

    def to_json(self) -> list[dict]:
        return [
            {"T": list(t), "count": c} for t, c in sorted(self.rows.items())
        ]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["T", "count"])
        for t, c in sorted(self.rows.items()):
            writer.writerow([" ".join(str(v) for v in t), c])
        return buf.getvalue()


def stat_table(seq: SubsetSeq, r: int) -> StatTable:
    """Tabulate match_count over all r-subsets of part indices."""
    if not 0 <= r <= seq.n:
        raise ValueError(f"r = {r} outside 0..{seq.n}")
    rows = {}
    for t in combinations(range(1, seq.n + 1), r):
        count = match_count(seq, t)
        if count:
            rows[t] = count
    return StatTable(r, rows)
