"""Coefficient-level acceptance check between two multilinear polynomials.

A polynomial g stands in for a target f modulo a composite m when,
monomial by monomial, g's coefficient agrees with f's modulo at least
one prime-power factor of m and is 0 modulo every factor where they
disagree.  The relation constrains the written form, not the values,
and it is not symmetric in f and g.

The check iterates the union of both supports, so coefficients present
on either side only are compared against 0.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .zmod import Modulus, astrong_coeff_status
from .circuit import CoefficientMap, Monomial, VariableSpace, group_names


@dataclass
class MonomialWitness:
    monomial: Monomial
    target: int
    actual: int
    residue_pairs: list[tuple[int, int]]  # (target, actual) per factor
    agreeing_factor: int | None

    def line(self) -> str:
        mono = "*".join(f"{g}{i}" for g, i in self.monomial) or "1"
        pairs = " ".join(f"{a}|{b}" for a, b in self.residue_pairs)
        return f"{mono}: target {self.target} actual {self.actual} residues {pairs}"


@dataclass
class AStrongReport:
    ok: bool
    violations: list[MonomialWitness]
    checked: int

    def text(self) -> str:
        """Line-oriented form, one violating monomial per line."""
        if self.ok:
            return f"pass: {self.checked} monomials\n"
        lines = [f"fail: {len(self.violations)} of {self.checked} monomials"]
        lines += [w.line() for w in self.violations]
        return "\n".join(lines) + "\n"


def target_coefficients(n: int, k: int, ordered: bool = False) -> CoefficientMap:
    """The coefficient map of the degree-k elementary symmetric target.

    unordered: coefficient 1 on each of the C(n, k) square-free
    monomials in the single group; ordered: coefficient 1 on each
    distinct-index tuple across the k groups, one monomial per ordering.
    """
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    coeffs: dict[Monomial, int] = {}
    if ordered:
        space = VariableSpace(group_names(k), n)
        for tup in itertools.permutations(range(1, n + 1), k):
            mono = tuple(sorted(zip(space.groups, tup)))
            coeffs[mono] = 1
    else:
        space = VariableSpace(("x",), n)
        for subset in itertools.combinations(range(1, n + 1), k):
            coeffs[tuple(("x", i) for i in subset)] = 1
    return CoefficientMap(space, coeffs)


def check_astrong(
    b: CoefficientMap, a: CoefficientMap, mod: Modulus
) -> AStrongReport:
    """Does b's written form stand in for a's modulo mod?

    Per monomial in the union of supports: some factor must satisfy
    a = b, and every disagreeing factor must have b = 0.  A monomial
    missing from a map counts as coefficient 0 there; in particular a
    stray monomial in b must vanish mod every factor, hence mod m.
    """
    if b.vars != a.vars:
        raise ValueError(
            f"coefficient maps live on different variable spaces: "
            f"{b.vars} vs {a.vars}"
        )
    violations: list[MonomialWitness] = []
    support = set(a.coeffs) | set(b.coeffs)
    for mono in sorted(support):
        av = a.coeffs.get(mono, 0)
        bv = b.coeffs.get(mono, 0)
        ok, agree = astrong_coeff_status(av, bv, mod)
        if not ok:
            pairs = [(av % q, bv % q) for q in mod.prime_powers]
            violations.append(MonomialWitness(mono, av, bv, pairs, agree))
    return AStrongReport(not violations, violations, len(support))
