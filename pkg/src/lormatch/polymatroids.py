"""Polymatroid rank functions, base polytopes, induction, and realizations.

Rank functions are explicit tables with one entry per subset of the ground
set {1..m}, indexed by bitmask (bit i-1 is element i).  Everything here is
desk scale: validation, lattice-point scans, and rank queries run brute
force over the table, which keeps every claim checkable by inspection.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from ._util import bounded_compositions, mask_to_elements, vec_factorial
from .matchings import SubsetSeq, admits_matching
from .polynomials import Poly


class AxiomViolation(ValueError):
    """A rank table failed a polymatroid axiom.

    `axiom` names the failed requirement; `witness` holds the subsets (as
    sorted element tuples) instantiating the failure, so the report can be
    replayed against the raw table.
    """

    def __init__(
        self, axiom: str, witness: tuple[tuple[int, ...], ...], detail: str
    ) -> None:
        super().__init__(f"{axiom}: {detail}")
        self.axiom = axiom
        self.witness = witness


class InternalCheckError(RuntimeError):
    """Two supposedly equivalent computations disagreed: an implementation bug."""


def _bit_indices(m: int) -> list[tuple[int, ...]]:
    """0-based member indices for every bitmask on m elements."""
    out: list[tuple[int, ...]] = [()]
    for mask in range(1, 1 << m):
        low = mask & -mask
        out.append(out[mask ^ low] + (low.bit_length() - 1,))
    return out


@dataclass(frozen=True)
class Polymatroid:
    """Integer rank table on subsets of {1..m}; axioms checked on construction."""

    m: int
    rank: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError("ground-set size must be >= 1")
        size = 1 << self.m
        table = []
        for v in self.rank:
            iv = int(v)
            if iv != v:
                raise TypeError(f"rank values must be integers, got {v!r}")
            table.append(iv)
        if len(table) != size:
            raise ValueError(f"rank table has {len(table)} entries, expected {size}")
        object.__setattr__(self, "rank", tuple(table))
        if table[0] != 0:
            raise AxiomViolation(
                "normalization", ((),), f"rank of the empty set is {table[0]}, not 0"
            )
        for mask, value in enumerate(table):
            if value < 0:
                raise AxiomViolation(
                    "nonnegativity",
                    (mask_to_elements(mask),),
                    f"rank{mask_to_elements(mask)} = {value} < 0",
                )
        # local checks; they imply the subset-pair forms of the axioms
        for mask in range(1, size):
            rest = mask
            while rest:
                low = rest & -rest
                rest ^= low
                if table[mask ^ low] > table[mask]:
                    small, large = mask_to_elements(mask ^ low), mask_to_elements(mask)
                    raise AxiomViolation(
                        "monotonicity",
                        (small, large),
                        f"rank{small} = {table[mask ^ low]} > "
                        f"rank{large} = {table[mask]}",
                    )
        for mask in range(size):
            outside = [b for b in range(self.m) if not mask >> b & 1]
            for pos, e in enumerate(outside):
                for f in outside[pos + 1 :]:
                    left = mask | 1 << e
                    right = mask | 1 << f
                    if table[left] + table[right] < table[left | right] + table[mask]:
                        lw, rw = mask_to_elements(left), mask_to_elements(right)
                        raise AxiomViolation(
                            "submodularity",
                            (lw, rw),
                            f"rank{lw} + rank{rw} = {table[left] + table[right]} < "
                            f"rank(union) + rank(intersection) = "
                            f"{table[left | right] + table[mask]}",
                        )

    @property
    def full_mask(self) -> int:
        return (1 << self.m) - 1

    @property
    def full_rank(self) -> int:
        return self.rank[self.full_mask]

    def rank_mask(self, mask: int) -> int:
        if not 0 <= mask <= self.full_mask:
            raise ValueError(f"mask {mask} out of range")
        return self.rank[mask]

    def rank_of(self, elements: Iterable[int]) -> int:
        mask = 0
        for e in elements:
            if not 1 <= e <= self.m:
                raise ValueError(f"element {e} outside 1..{self.m}")
            mask |= 1 << (e - 1)
        return self.rank[mask]

    def to_json(self) -> dict:
        return {"m": self.m, "rank": list(self.rank)}

    @classmethod
    def from_json(cls, obj: dict) -> "Polymatroid":
        if not isinstance(obj, dict) or "m" not in obj or "rank" not in obj:
            raise ValueError("polymatroid JSON needs 'm' and 'rank'")
        return cls(int(obj["m"]), tuple(obj["rank"]))


@dataclass(frozen=True)
class Matroid:
    """Polymatroid whose rank never exceeds cardinality."""

    underlying: Polymatroid

    def __post_init__(self) -> None:
        for mask, value in enumerate(self.underlying.rank):
            if value > mask.bit_count():
                witness = mask_to_elements(mask)
                raise AxiomViolation(
                    "cardinality-bound",
                    (witness,),
                    f"rank{witness} = {value} > |set| = {mask.bit_count()}",
                )

    @property
    def m(self) -> int:
        return self.underlying.m

    @property
    def full_rank(self) -> int:
        return self.underlying.full_rank

    def rank_of(self, elements: Iterable[int]) -> int:
        return self.underlying.rank_of(elements)

    def to_json(self) -> dict:
        return self.underlying.to_json()

    @classmethod
    def from_json(cls, obj: dict) -> "Matroid":
        return cls(Polymatroid.from_json(obj))


def validate_polymatroid(rank: Sequence[int], m: int | None = None) -> Polymatroid:
    """Build a Polymatroid from a raw table, raising AxiomViolation on failure."""
    if m is None:
        size = len(rank)
        m = max(size.bit_length() - 1, 0)
        if size != 1 << m or size < 2:
            raise ValueError(f"table length {size} is not a power of two >= 2")
    return Polymatroid(m, tuple(rank))


def free_polymatroid(n_elements: int, r: int) -> Polymatroid:
    """Rank r on every nonempty subset; base points are the x >= 0 with sum r."""
    if n_elements < 1:
        raise ValueError("ground-set size must be >= 1")
    if r < 0:
        raise ValueError("rank must be >= 0")
    return Polymatroid(n_elements, (0,) + (r,) * ((1 << n_elements) - 1))


def uniform_matroid(m: int, r: int) -> Matroid:
    """Rank min(|I|, r)."""
    if not 0 <= r <= m:
        raise ValueError(f"rank {r} outside 0..{m}")
    return Matroid(Polymatroid(m, tuple(min(mask.bit_count(), r) for mask in range(1 << m))))


def direct_sum(parts: Sequence[Polymatroid]) -> Polymatroid:
    """Concatenated ground sets; rank of a subset sums blockwise restrictions."""
    if not parts:
        raise ValueError("direct sum of an empty list")
    total_m = sum(p.m for p in parts)
    table = []
    for mask in range(1 << total_m):
        shift = 0
        value = 0
        for p in parts:
            value += p.rank[mask >> shift & (1 << p.m) - 1]
            shift += p.m
        table.append(value)
    return Polymatroid(total_m, tuple(table))


def _part_masks(seq: SubsetSeq) -> list[int]:
    masks = []
    for s in seq.sets:
        mask = 0
        for e in s:
            mask |= 1 << (e - 1)
        masks.append(mask)
    return masks


def _union_masks(seq: SubsetSeq) -> list[int]:
    """Bitmask of the part union for every subset of part indices."""
    parts = _part_masks(seq)
    out = [0] * (1 << seq.n)
    for mask in range(1, 1 << seq.n):
        low = mask & -mask
        out[mask] = out[mask ^ low] | parts[low.bit_length() - 1]
    return out


def induce_polymatroid(pm: Polymatroid, seq: SubsetSeq) -> Polymatroid:
    """Rank of a set of parts = source rank of the union of those parts."""
    if seq.m != pm.m:
        raise ValueError(f"sequence over 1..{seq.m}, polymatroid over 1..{pm.m}")
    return Polymatroid(seq.n, tuple(pm.rank[u] for u in _union_masks(seq)))


def induce_matroid(pm: Polymatroid, seq: SubsetSeq) -> Matroid:
    """Induced rank truncated by cardinality: min(|I|, rank of the part union)."""
    if seq.m != pm.m:
        raise ValueError(f"sequence over 1..{seq.m}, polymatroid over 1..{pm.m}")
    table = tuple(
        min(mask.bit_count(), pm.rank[u]) for mask, u in enumerate(_union_masks(seq))
    )
    return Matroid(Polymatroid(seq.n, table))


def base_points(pm: Polymatroid) -> frozenset[tuple[int, ...]]:
    """Integer points of the base polytope, by box-bounded exhaustive scan."""
    caps = [pm.rank[1 << i] for i in range(pm.m)]
    members = _bit_indices(pm.m)
    out = []
    for cand in bounded_compositions(pm.full_rank, caps):
        if all(
            sum(cand[i] for i in members[mask]) <= pm.rank[mask]
            for mask in range(1, pm.full_mask)
        ):
            out.append(cand)
    return frozenset(out)


def in_base_polytope(pm: Polymatroid, vec: Sequence[int]) -> bool:
    """Membership of an integer vector in the base polytope."""
    x = []
    for v in vec:
        iv = int(v)
        if iv != v:
            raise ValueError(f"integer vector required, got {v!r}")
        x.append(iv)
    if len(x) != pm.m:
        raise ValueError(f"vector has length {len(x)}, expected {pm.m}")
    if any(v < 0 for v in x) or sum(x) != pm.full_rank:
        return False
    members = _bit_indices(pm.m)
    return all(
        sum(x[i] for i in members[mask]) <= pm.rank[mask]
        for mask in range(1, pm.full_mask)
    )


def base_egf(pm: Polymatroid) -> Poly:
    """Sum of x^alpha/alpha! over the base points (normalized coefficients 1)."""
    return Poly(
        pm.m, {pt: Fraction(1, vec_factorial(pt)) for pt in base_points(pm)}
    )


def support_polymatroid(f: Poly) -> Polymatroid | None:
    """The polymatroid whose base points are supp(f), or None if there is none.

    Requires f homogeneous with nonnegative coefficients.  The candidate rank
    of I is the largest partial degree sum over supp(f); the candidate is kept
    only when it is a valid polymatroid whose base points round-trip to the
    support exactly.
    """
    if f.homogeneous_degree() is None:
        raise ValueError("homogeneous polynomial required")
    if any(c < 0 for _, c in f.items()):
        raise ValueError("nonnegative coefficients required")
    supp = f.support()
    if not supp:
        return None
    members = _bit_indices(f.nvars)
    table = tuple(
        max(sum(pt[i] for i in members[mask]) for pt in supp)
        for mask in range(1 << f.nvars)
    )
    try:
        candidate = Polymatroid(f.nvars, table)
    except AxiomViolation:
        return None
    if base_points(candidate) != supp:
        return None
    return candidate


@dataclass(frozen=True)
class LinReal:
    """Rational linear realization: row span of gens, columns split into blocks.

    Block i has blockdims[i] columns; a block may be empty (dimension 0),
    which arises when inducing along a sequence with empty parts.
    """

    blockdims: tuple[int, ...]
    gens: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        dims = tuple(int(d) for d in self.blockdims)
        if not dims:
            raise ValueError("at least one block is required")
        if any(d < 0 for d in dims):
            raise ValueError("block dimensions must be >= 0")
        object.__setattr__(self, "blockdims", dims)
        ncols = sum(dims)
        rows = []
        for row in self.gens:
            checked = []
            for v in row:
                if isinstance(v, float):
                    raise TypeError("exact rational entries required, got float")
                checked.append(Fraction(v))
            if len(checked) != ncols:
                raise ValueError(
                    f"row has {len(checked)} entries, expected {ncols}"
                )
            rows.append(tuple(checked))
        object.__setattr__(self, "gens", tuple(rows))
        offsets = []
        at = 0
        for d in dims:
            offsets.append(at)
            at += d
        object.__setattr__(self, "_offsets", tuple(offsets))

    @property
    def m(self) -> int:
        return len(self.blockdims)

    @property
    def ncols(self) -> int:
        return sum(self.blockdims)

    def block_columns(self, i: int) -> range:
        """0-based column range of block i (1-indexed block)."""
        if not 1 <= i <= self.m:
            raise ValueError(f"block {i} outside 1..{self.m}")
        start = self._offsets[i - 1]
        return range(start, start + self.blockdims[i - 1])

    def to_json(self) -> dict:
        return {
            "blockdims": list(self.blockdims),
            "gens": [[str(v) for v in row] for row in self.gens],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "LinReal":
        if not isinstance(obj, dict) or "blockdims" not in obj or "gens" not in obj:
            raise ValueError("realization JSON needs 'blockdims' and 'gens'")
        rows = tuple(
            tuple(Fraction(str(v)) for v in row) for row in obj["gens"]
        )
        return cls(tuple(int(d) for d in obj["blockdims"]), rows)


def _rat_rank(rows: list[list[Fraction]]) -> int:
    """Row rank by exact Gaussian elimination."""
    if not rows or not rows[0]:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        prow = rows[rank]
        for r in range(rank + 1, len(rows)):
            factor = rows[r][col] / prow[col]
            if factor:
                target = rows[r]
                for c in range(col, ncols):
                    target[c] -= factor * prow[c]
        rank += 1
        if rank == len(rows):
            break
    return rank


def linreal_rank(real: LinReal) -> Polymatroid:
    """Rank of a block set = dimension of the projection of the row span."""
    table = []
    for mask in range(1 << real.m):
        cols = [
            c
            for i in range(real.m)
            if mask >> i & 1
            for c in real.block_columns(i + 1)
        ]
        table.append(_rat_rank([[row[c] for c in cols] for row in real.gens]))
    return Polymatroid(real.m, tuple(table))


def linreal_induce(real: LinReal, seq: SubsetSeq) -> LinReal:
    """Duplicate block columns into each part that contains the block.

    The new block j stacks copies of the blocks named by part j (in
    increasing element order), so the projection to block j is the diagonal
    image; ranks of the result match inducing the rank function directly.
    """
    if seq.m != real.m:
        raise ValueError(f"sequence over 1..{seq.m}, realization has {real.m} blocks")
    col_order: list[int] = []
    dims = []
    for part in seq.sets:
        cols = [c for i in sorted(part) for c in real.block_columns(i)]
        col_order.extend(cols)
        dims.append(len(cols))
    rows = tuple(tuple(row[c] for c in col_order) for row in real.gens)
    return LinReal(tuple(dims), rows)


def hall_rado_member(
    pm: Polymatroid, seq: SubsetSeq, delta: Sequence[int]
) -> bool:
    """Is delta a base point of the induced polymatroid?

    Computed two independent ways and cross-checked: (a) the inequality
    description of the induced base polytope, (b) existence of a base point
    gamma of the source with (gamma, delta) matchable along the sequence.
    The equivalence needs the parts to span (union rank = full rank);
    without that no gamma can have the right total, so the call is refused.
    """
    if seq.m != pm.m:
        raise ValueError(f"sequence over 1..{seq.m}, polymatroid over 1..{pm.m}")
    union = 0
    for mask in _part_masks(seq):
        union |= mask
    if pm.rank[union] != pm.full_rank:
        raise ValueError(
            f"parts must span: rank of the part union is {pm.rank[union]}, "
            f"full rank is {pm.full_rank}"
        )
    d = [int(v) for v in delta]
    if len(d) != seq.n:
        raise ValueError(f"vector has length {len(d)}, expected {seq.n}")
    if any(v < 0 for v in d):
        return False
    via_rank = in_base_polytope(induce_polymatroid(pm, seq), d)
    via_flow = any(
        admits_matching(seq, gamma, d) for gamma in sorted(base_points(pm))
    )
    if via_rank != via_flow:
        raise InternalCheckError(
            f"membership paths disagree: inequalities say {via_rank}, "
            f"witness search says {via_flow} (delta={tuple(d)})"
        )
    return via_rank


def matroid_bases(mat: Matroid) -> list[tuple[int, ...]]:
    """All subsets of full rank and matching cardinality, lexicographic."""
    pm = mat.underlying
    r = pm.full_rank
    found = [
        mask_to_elements(mask)
        for mask in range(1 << pm.m)
        if mask.bit_count() == r and pm.rank[mask] == r
    ]
    return sorted(found)
