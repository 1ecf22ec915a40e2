"""Weighted rectangle covers of the n x n cross-monomial matrix.

The matrix cell (i, j) stands for the bilinear monomial x_i * y_j.  A
rectangle R(I, J) covers the cells I x J and corresponds to the single
bilinear multiplication (sum_{i in I} x_i)(sum_{j in J} y_j).  The goal
state is a weighted cover whose per-cell covering multiplicity, mod m,
is 0 on the diagonal and a unit-pattern value off it: congruent to 1
modulo at least one prime-power factor of m and 0 modulo each factor
where it is not 1.

The route: a digit-based initial cover whose multiplicity at (i, j) is
the Hamming distance of the base-N expansions of i and j, then a
transformation that replaces the cover by the subset-intersections
prescribed by an indicator polynomial's monomials.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .zmod import Modulus, astrong_coeff_status
from .sympoly import SymmetricPolynomial, bbr_construct


@dataclass(frozen=True)
class DigitScheme:
    """Base-N positional encoding of the index values 1..n.

    Digit position 1 is the least significant.  base**digits >= n + 1,
    so every index fits in `digits` digits.
    """

    n: int
    base: int
    digits: int

    def digits_of(self, i: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.digits):
            out.append(i % self.base)
            i //= self.base
        return tuple(out)

    def hamming(self, i: int, j: int) -> int:
        return sum(a != b for a, b in zip(self.digits_of(i), self.digits_of(j)))


@dataclass(frozen=True)
class Rectangle:
    rows: frozenset[int]
    cols: frozenset[int]

    @property
    def is_empty(self) -> bool:
        return not self.rows or not self.cols

    def contains(self, i: int, j: int) -> bool:
        return i in self.rows and j in self.cols

    def intersect(self, other: "Rectangle") -> "Rectangle":
        return Rectangle(self.rows & other.rows, self.cols & other.cols)


@dataclass
class WeightedRectCover:
    """Multiset of weighted rectangles over indices 1..n.

    mod is None for covers that exist before a modulus is chosen (the
    initial digit cover); such covers report raw counts.  Weighted
    covers keep weights canonical in 1..m-1.
    """

    n: int
    mod: Modulus | None
    items: list[tuple[Rectangle, int]]
    meta: dict = field(default_factory=dict)

    @property
    def repetition_count(self) -> int:
        """Total count with each item repeated `weight` times."""
        return sum(w for _, w in self.items)


@dataclass
class CellViolation:
    cell: tuple[int, ...]
    count: int
    reason: str


@dataclass
class PropertyReport:
    """Outcome of a cover property check; ok iff no violations."""

    ok: bool
    violations: list[CellViolation]
    checked: int
    sampled: bool = False
    seed: int | None = None

    def summary(self) -> str:
        head = "pass" if self.ok else f"fail ({len(self.violations)} violations)"
        tail = f", sampled with seed {self.seed}" if self.sampled else ""
        return f"{head}: {self.checked} cells checked{tail}"


def digit_scheme(n: int) -> DigitScheme:
    """N = max(2, ceil(log2 n)); smallest g with N**g >= n + 1."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    base = max(2, (n - 1).bit_length())
    g = 1
    while base**g < n + 1:
        g += 1
    return DigitScheme(n, base, g)


def initial_cover(n: int, mod: Modulus | None = None) -> WeightedRectCover:
    """One unit-weight rectangle per (digit position t, digit value l).

    Rows are the indices whose t-th digit equals l, columns those whose
    t-th digit differs, so cell (i, j) is covered once per position
    where the expansions of i and j disagree: its multiplicity is the
    Hamming distance, between 1 and g off the diagonal and 0 on it.
    """
    scheme = digit_scheme(n)
    items: list[tuple[Rectangle, int]] = []
    digits = {i: scheme.digits_of(i) for i in range(1, n + 1)}
    for t in range(scheme.digits):
        for l in range(scheme.base):
            rows = frozenset(i for i in digits if digits[i][t] == l)
            cols = frozenset(j for j in digits if digits[j][t] != l)
            rect = Rectangle(rows, cols)
            if not rect.is_empty:
                items.append((rect, 1))
    return WeightedRectCover(n, mod, items, {"N": scheme.base, "g": scheme.digits})


def multiplicity(cover: WeightedRectCover, i: int, j: int) -> int:
    """Weighted number of items covering cell (i, j), mod m when set."""
    if not (1 <= i <= cover.n and 1 <= j <= cover.n):
        raise ValueError(f"cell ({i}, {j}) outside 1..{cover.n}")
    count = sum(w for rect, w in cover.items if rect.contains(i, j))
    return count % cover.mod.m if cover.mod else count


def multiplicity_table(cover: WeightedRectCover) -> list[list[int]]:
    """All n*n multiplicities at once (row-major, 0-indexed)."""
    table = [[0] * cover.n for _ in range(cover.n)]
    for rect, w in cover.items:
        for i in rect.rows:
            row = table[i - 1]
            for j in rect.cols:
                row[j - 1] += w
    if cover.mod:
        m = cover.mod.m
        for row in table:
            for j, v in enumerate(row):
                row[j] = v % m
    return table


def _bitmask(indices: frozenset[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def _unmask(mask: int) -> frozenset[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return frozenset(out)


def transform(cover: WeightedRectCover, f: SymmetricPolynomial) -> WeightedRectCover:
    """Replace the cover by f's monomial intersections.

    One item per subset K of cover items with 1 <= |K| <= deg f and
    c_{|K|} != 0 whose intersection rectangle is nonempty, carrying
    weight c_{|K|}.  Afterwards the multiplicity of any cell equals f
    evaluated at the cell's original covering count: of the subsets of
    size t, exactly C(w, t) intersect over the cell, where w is the
    original count.

    Enumeration is depth-first in item-index order (index sets held as
    bitmasks) and prunes any branch whose running intersection is
    already empty, so the output order is deterministic.
    """
    if f.ell != len(cover.items):
        raise ValueError(
            f"polynomial has {f.ell} variables, cover has {len(cover.items)} items"
        )
    if f.coeffs[0] != 0:
        raise ValueError(
            "constant term must be 0: it would add an all-ones rectangle covering the diagonal"
        )
    if any(w != 1 for _, w in cover.items):
        raise ValueError("transformation expects a unit-weight cover")
    rows = [_bitmask(rect.rows) for rect, _ in cover.items]
    cols = [_bitmask(rect.cols) for rect, _ in cover.items]
    out: list[tuple[Rectangle, int]] = []

    def extend(start: int, depth: int, row_mask: int, col_mask: int) -> None:
        for k in range(start, len(cover.items)):
            r = row_mask & rows[k]
            if not r:
                continue
            c = col_mask & cols[k]
            if not c:
                continue
            size = depth + 1
            if size <= f.degree and f.coeffs[size] != 0:
                out.append((Rectangle(_unmask(r), _unmask(c)), f.coeffs[size]))
            if size < f.degree:
                extend(k + 1, size, r, c)

    full = (1 << (cover.n + 1)) - 1
    extend(0, 0, full, full)
    meta = dict(cover.meta)
    meta.update(h=len(cover.items), bbr_coeffs=list(f.coeffs), bbr_degree=f.degree)
    return WeightedRectCover(cover.n, f.mod, out, meta)


def verify_s2_properties(cover: WeightedRectCover) -> PropertyReport:
    """Check every cell: diagonal counts are 0 mod m, off-diagonal counts
    are 1 modulo some prime-power factor and 0 modulo each factor where
    they are not 1."""
    if cover.mod is None:
        raise ValueError("cover has no modulus to verify against")
    table = multiplicity_table(cover)
    violations: list[CellViolation] = []
    mod = cover.mod
    for i in range(1, cover.n + 1):
        for j in range(1, cover.n + 1):
            d = table[i - 1][j - 1]
            target = 0 if i == j else 1
            ok, _ = astrong_coeff_status(target, d, mod)
            if not ok:
                violations.append(
                    CellViolation(
                        (i, j),
                        d,
                        f"count {d} has residues {mod.residues(d)} per {mod}, target {target}",
                    )
                )
    return PropertyReport(not violations, violations, cover.n * cover.n)


def build_s2_cover(n: int, mod: Modulus) -> WeightedRectCover:
    """Initial digit cover -> indicator polynomial -> transformation.

    After the transformation the multiplicity of off-diagonal (i, j) is
    the indicator value at the Hamming distance of i and j, which is the
    unit-pattern property; diagonal cells are never covered because each
    stored rectangle has disjoint row and column sets.
    """
    mod.require_composite_nonprimepower()
    base = initial_cover(n, mod)
    f = bbr_construct(mod, d=base.meta["g"], ell=len(base.items))
    result = transform(base, f)
    result.meta["d"] = base.meta["g"]
    return result


def transformed_weights(cover: WeightedRectCover) -> SymmetricPolynomial:
    """Reconstruct the indicator polynomial recorded by a transformation."""
    if cover.mod is None or "bbr_coeffs" not in cover.meta:
        raise ValueError("cover carries no transformation metadata")
    return SymmetricPolynomial(
        cover.meta["h"], tuple(cover.meta["bbr_coeffs"]), cover.mod
    )
