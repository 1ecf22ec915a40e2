"""Weighted k-dimensional box covers of the k-fold cross-monomial array.

The array cell (j_1, ..., j_k) stands for the k-linear monomial
x^1_{j_1} * ... * x^k_{j_k}.  A box is a product A_1 x ... x A_k of
index sets and corresponds to one k-linear multiplication.  The target
is the same unit-pattern multiplicity state as in two dimensions, with
"diagonal" generalized to "some two indices equal": those tuples must
never be covered at all.

The initial cover comes from a perfect hash family: a u x n matrix over
an alphabet of size b in which every k columns are separated (pairwise
distinct) by some row.  Per row i and injective pattern sigma the box
collects, in part l, the columns hashed to sigma(l) by row i; a tuple
of pairwise distinct indices is then covered once per separating row,
between 1 and u times, and tuples with a repeated index never.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .zmod import Modulus, astrong_coeff_status
from .sympoly import SymmetricPolynomial, bbr_construct
from .cover2d import (
    CellViolation,
    PropertyReport,
    WeightedRectCover,
    _bitmask,
    _unmask,
)


class ConstructionError(RuntimeError):
    """Raised when a randomized search exceeds its resource cap."""


@dataclass(frozen=True)
class HashMatrix:
    """u x n matrix over {0..b-1} separating every k-subset of columns."""

    n: int
    k: int
    b: int
    rows: tuple[tuple[int, ...], ...]

    @property
    def u(self) -> int:
        return len(self.rows)

    def separates(self, row: int, subset: tuple[int, ...]) -> bool:
        """True if the row's entries on these columns (1-based) are distinct."""
        values = [self.rows[row][j - 1] for j in subset]
        return len(set(values)) == len(values)


@dataclass(frozen=True)
class Box:
    parts: tuple[frozenset[int], ...]

    @property
    def is_empty(self) -> bool:
        return any(not part for part in self.parts)

    def contains(self, tup: tuple[int, ...]) -> bool:
        return all(j in part for j, part in zip(tup, self.parts))

    def intersect(self, other: "Box") -> "Box":
        return Box(tuple(a & b for a, b in zip(self.parts, other.parts)))


@dataclass
class WeightedBoxCover:
    """Multiset of weighted k-dimensional boxes over indices 1..n."""

    n: int
    k: int
    mod: Modulus | None
    items: list[tuple[Box, int]]
    meta: dict = field(default_factory=dict)

    @property
    def repetition_count(self) -> int:
        return sum(w for _, w in self.items)


@dataclass
class HashReport:
    ok: bool
    failing_subsets: list[tuple[int, ...]]
    checked: int


def verify_hash_family(h: HashMatrix) -> HashReport:
    """Exhaustively check the separation property on all C(n, k) subsets."""
    failing = []
    checked = 0
    for subset in itertools.combinations(range(1, h.n + 1), h.k):
        checked += 1
        if not any(h.separates(i, subset) for i in range(h.u)):
            failing.append(subset)
    return HashReport(not failing, failing, checked)


def build_hash_family(
    n: int,
    k: int,
    b: int,
    strategy: str = "greedy",
    seed: int = 0,
    max_rows: int = 4096,
) -> HashMatrix:
    """Construct a hash matrix separating every k-subset of 1..n.

    greedy: each round draws a pool of random candidate rows and keeps
    the one separating the most still-unseparated subsets (first wins
    ties).  randomized: appends every drawn row, useful only as a
    baseline.  Both track the unseparated subsets incrementally, stop
    as soon as none remain, and re-verify the result exhaustively, so
    correctness never rests on a probabilistic argument.
    """
    if b < k:
        raise ValueError(f"alphabet size {b} cannot separate {k} columns")
    if not 2 <= k <= n:
        raise ValueError(f"need 2 <= k <= n, got k={k}, n={n}")
    if strategy not in ("greedy", "randomized"):
        raise ValueError(f"unknown strategy {strategy!r}")

    rng = random.Random(seed)
    uncovered = set(itertools.combinations(range(1, n + 1), k))
    total = len(uncovered)
    rows: list[tuple[int, ...]] = []

    def separated(row: tuple[int, ...], subset: tuple[int, ...]) -> bool:
        values = [row[j - 1] for j in subset]
        return len(set(values)) == len(values)

    pool_size = 32 if strategy == "greedy" else 1
    rounds = 0
    while uncovered:
        if rounds >= max_rows:
            raise ConstructionError(
                f"no perfect hash family after {rounds} rounds ({len(rows)} rows): "
                f"{len(uncovered)} of {total} subsets still unseparated"
            )
        rounds += 1
        candidates = [
            tuple(rng.randrange(b) for _ in range(n)) for _ in range(pool_size)
        ]
        best = max(
            candidates,
            key=lambda row: sum(separated(row, s) for s in uncovered),
        )
        gain = sum(separated(best, s) for s in uncovered)
        if gain == 0 and strategy == "greedy":
            continue  # a useless row would only inflate u, and d = u downstream
        rows.append(best)
        uncovered = {s for s in uncovered if not separated(best, s)}

    result = HashMatrix(n, k, b, tuple(rows))
    report = verify_hash_family(result)
    assert report.ok, "incremental tracking disagrees with exhaustive check"
    return result


def initial_box_cover(h: HashMatrix, mod: Modulus | None = None) -> WeightedBoxCover:
    """One unit-weight box per (row, injective pattern) with no empty part.

    Part l of the box for (i, sigma) holds the columns hashed to
    sigma(l) by row i.  Parts of one box are pairwise disjoint, so a
    covered tuple has pairwise distinct indices; it is covered once per
    row separating it, hence between 1 and u times by the hash property.
    """
    items: list[tuple[Box, int]] = []
    for row in h.rows:
        by_value: dict[int, frozenset[int]] = {}
        for v in range(h.b):
            by_value[v] = frozenset(j for j in range(1, h.n + 1) if row[j - 1] == v)
        for sigma in itertools.permutations(range(h.b), h.k):
            box = Box(tuple(by_value[v] for v in sigma))
            if not box.is_empty:
                items.append((box, 1))
    return WeightedBoxCover(h.n, h.k, mod, items, {"u": h.u, "b": h.b})


def box_multiplicity(cover: WeightedBoxCover, tup: tuple[int, ...]) -> int:
    """Weighted number of boxes containing the tuple, mod m when set."""
    if len(tup) != cover.k or not all(1 <= j <= cover.n for j in tup):
        raise ValueError(f"tuple {tup} outside (1..{cover.n})^{cover.k}")
    count = sum(w for box, w in cover.items if box.contains(tup))
    return count % cover.mod.m if cover.mod else count


def box_multiplicity_table(cover: WeightedBoxCover) -> dict[tuple[int, ...], int]:
    """Sparse table of all covered tuples; absent tuples have count 0."""
    table: dict[tuple[int, ...], int] = {}
    for box, w in cover.items:
        for tup in itertools.product(*(sorted(part) for part in box.parts)):
            table[tup] = table.get(tup, 0) + w
    if cover.mod:
        m = cover.mod.m
        return {tup: v % m for tup, v in table.items()}
    return table


def transform_boxes(cover: WeightedBoxCover, f: SymmetricPolynomial) -> WeightedBoxCover:
    """Box-cover version of the monomial-intersection transformation.

    Identical to the two-dimensional case with componentwise part
    intersections; a subset's box dies as soon as any part empties,
    which in particular kills all pairs drawn from one hash row (two
    distinct injective patterns disagree somewhere, and a column hashes
    to a single value per row).
    """
    if f.ell != len(cover.items):
        raise ValueError(
            f"polynomial has {f.ell} variables, cover has {len(cover.items)} items"
        )
    if f.coeffs[0] != 0:
        raise ValueError("constant term must be 0: it would cover everything")
    if any(w != 1 for _, w in cover.items):
        raise ValueError("transformation expects a unit-weight cover")

    masks = [
        tuple(_bitmask(part) for part in box.parts) for box, _ in cover.items
    ]
    out: list[tuple[Box, int]] = []

    def extend(start: int, depth: int, current: tuple[int, ...]) -> None:
        for idx in range(start, len(masks)):
            merged = []
            for a, b in zip(current, masks[idx]):
                c = a & b
                if not c:
                    break
                merged.append(c)
            else:
                size = depth + 1
                if size <= f.degree and f.coeffs[size] != 0:
                    out.append(
                        (Box(tuple(_unmask(x) for x in merged)), f.coeffs[size])
                    )
                if size < f.degree:
                    extend(idx + 1, size, tuple(merged))

    full = (1 << (cover.n + 1)) - 1
    extend(0, 0, (full,) * cover.k)
    meta = dict(cover.meta)
    meta.update(h=len(cover.items), bbr_coeffs=list(f.coeffs), bbr_degree=f.degree)
    return WeightedBoxCover(cover.n, cover.k, f.mod, out, meta)


def verify_sk_properties(
    cover: WeightedBoxCover,
    exhaustive_cap: int = 10**7,
    seed: int = 0,
    sample_size: int = 200_000,
) -> PropertyReport:
    """Check tuples of (1..n)^k: repeated-index tuples must count 0 mod m,
    distinct-index tuples must carry the unit-pattern property.

    Exhaustive when n**k <= exhaustive_cap, otherwise a seeded uniform
    sample (the report records the mode and seed).
    """
    if cover.mod is None:
        raise ValueError("cover has no modulus to verify against")
    mod = cover.mod
    table = box_multiplicity_table(cover)
    space = cover.n**cover.k
    sampled = space > exhaustive_cap

    if sampled:
        rng = random.Random(seed)
        tuples = (
            tuple(rng.randint(1, cover.n) for _ in range(cover.k))
            for _ in range(sample_size)
        )
    else:
        tuples = itertools.product(range(1, cover.n + 1), repeat=cover.k)

    violations: list[CellViolation] = []
    checked = 0
    for tup in tuples:
        checked += 1
        d = table.get(tup, 0) % mod.m
        target = 0 if len(set(tup)) < cover.k else 1
        ok, _ = astrong_coeff_status(target, d, mod)
        if not ok:
            violations.append(
                CellViolation(
                    tup,
                    d,
                    f"count {d} has residues {mod.residues(d)} per {mod}, target {target}",
                )
            )
    return PropertyReport(
        not violations, violations, checked, sampled, seed if sampled else None
    )


def build_sk_cover(
    n: int,
    k: int,
    mod: Modulus,
    b: int | None = None,
    strategy: str = "greedy",
    seed: int = 0,
) -> WeightedBoxCover:
    """Hash family -> initial boxes -> indicator polynomial -> transform.

    The indicator threshold is d = u (the row count), since u bounds
    every covered tuple's initial multiplicity.
    """
    mod.require_composite_nonprimepower()
    if b is None:
        b = 2 * k
    h = build_hash_family(n, k, b, strategy=strategy, seed=seed)
    base = initial_box_cover(h, mod)
    if h.u > len(base.items):
        raise ConstructionError(
            f"degenerate cover: {len(base.items)} boxes from {h.u} rows"
        )
    f = bbr_construct(mod, d=h.u, ell=len(base.items))
    result = transform_boxes(base, f)
    result.meta.update(d=h.u, strategy=strategy, seed=seed)
    return result


def rect_as_box_cover(cover: WeightedRectCover) -> WeightedBoxCover:
    """View a rectangle cover as the equivalent k = 2 box cover."""
    items = [(Box((rect.rows, rect.cols)), w) for rect, w in cover.items]
    return WeightedBoxCover(cover.n, 2, cover.mod, items, dict(cover.meta))
