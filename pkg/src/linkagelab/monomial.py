"""Exact associated primes, minimal primes and unmixedness for monomial ideals.

For a monomial ideal every associated prime is generated by variables and is
witnessed as (I : m) for a monomial m dividing the lcm of the generators,
so everything here is finite combinatorics on exponent vectors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import DomainError, StructuralError
from .poly import Ring, mono_deg


@dataclass(frozen=True)
class VariablePrime:
    """The prime generated by a subset of the variables."""

    variables: tuple  # sorted variable indices

    def __len__(self):
        return len(self.variables)

    def label(self, ring: Ring) -> str:
        if not self.variables:
            return "(0)"
        return "(" + ", ".join(ring.vars[i] for i in self.variables) + ")"


class MonomialIdeal:
    """Minimal monomial generators (pairwise non-divisible exponent vectors)."""

    def __init__(self, ring: Ring, exponents):
        self.ring = ring
        gens = [tuple(e) for e in exponents if any(e)]
        zero_included = any(not any(e) for e in exponents)
        if zero_included:
            gens = [self.ring.zero_mono]
        self.gens = _minimalize_monos(gens)

    @classmethod
    def from_polys(cls, ring: Ring, polys) -> "MonomialIdeal":
        exps = []
        for f in polys:
            if f.is_zero():
                continue
            if len(f.terms) != 1:
                raise StructuralError("not a monomial ideal")
            exps.append(next(iter(f.terms)))
        return cls(ring, exps)

    def is_proper(self) -> bool:
        return self.ring.zero_mono not in self.gens

    def is_zero(self) -> bool:
        return not self.gens

    def is_squarefree(self) -> bool:
        return all(all(e <= 1 for e in m) for m in self.gens)

    def contains_mono(self, m: tuple) -> bool:
        return any(all(x >= y for x, y in zip(m, g)) for g in self.gens)

    def colon_mono(self, m: tuple) -> "MonomialIdeal":
        out = [tuple(max(g_i - m_i, 0) for g_i, m_i in zip(g, m)) for g in self.gens]
        return MonomialIdeal(self.ring, out)

    def polys(self):
        return [self.ring.monomial(m) for m in self.gens]

    def __repr__(self):
        return "(" + ", ".join(str(self.ring.monomial(m)) for m in self.gens) + ")"


def _minimalize_monos(gens):
    kept = []
    for m in sorted(set(gens), key=lambda m: (mono_deg(m), m)):
        if not any(all(x >= y for x, y in zip(m, k)) for k in kept):
            kept.append(m)
    return kept


def _support(m: tuple):
    return frozenset(i for i, e in enumerate(m) if e)


def mono_min_primes(I: MonomialIdeal) -> set:
    """Minimal primes: minimal variable sets meeting the support of every generator."""
    if not I.is_proper():
        raise DomainError("minimal primes of the unit ideal")
    if I.is_zero():
        return {VariablePrime(())}
    n = I.ring.n
    supports = [_support(m) for m in I.gens]
    covers = []
    for r in range(n + 1):
        for subset in itertools.combinations(range(n), r):
            sset = set(subset)
            if all(s & sset for s in supports):
                if not any(set(c.variables) <= sset for c in covers):
                    covers.append(VariablePrime(tuple(sorted(subset))))
    return set(covers)


def mono_ass_primes(I: MonomialIdeal) -> set:
    """Associated primes of S/I: variable-prime colons (I : m), m below the lcm."""
    if not I.is_proper():
        raise DomainError("associated primes of the unit ideal")
    if I.is_zero():
        return {VariablePrime(())}
    n = I.ring.n
    lcm = tuple(max(g[i] for g in I.gens) for i in range(n))
    out = set()
    for m in itertools.product(*(range(e + 1) for e in lcm)):
        if I.contains_mono(m):
            continue
        col = I.colon_mono(m)
        if not col.is_proper():
            continue
        if all(mono_deg(g) == 1 for g in col.gens):
            out.add(VariablePrime(tuple(sorted(min(_support(g)) for g in col.gens))))
    return out


def mono_unmixed(I: MonomialIdeal) -> bool:
    """All associated primes have the same number of variables."""
    if not I.is_proper():
        raise DomainError("unmixedness of the unit ideal")
    sizes = {len(p) for p in mono_ass_primes(I)}
    return len(sizes) <= 1


def mono_dim(I: MonomialIdeal) -> int:
    """Dimension of S/I from the minimal primes."""
    if not I.is_proper():
        return -1
    return I.ring.n - min(len(p) for p in mono_min_primes(I))


def prime_contains_ideal(p: VariablePrime, I: MonomialIdeal) -> bool:
    """Whether the variable prime contains the monomial ideal."""
    vs = set(p.variables)
    return all(_support(g) & vs for g in I.gens)
