"""Quotient rings R = S/J, presented R-modules, and module-level colon algebra.

Everything is computed on lifts: an R-module M = R^s / im(P) is carried as
the submodule <P> + J*S^s of S^s, and two handles are equal exactly when the
reduced bases of their lifts coincide.
"""

from __future__ import annotations

from .errors import DomainError, StructuralError
from .groebner import (
    GroebnerBasis,
    SubmoduleGens,
    buchberger,
    colon_by_ideal,
    ideal_gb,
    intersect,
    radical_contains,
    syzygies_mod,
)
from .poly import Poly, Ring, Vec


class QuotientRing:
    """R = S/J for a graded-friendly ideal J (possibly zero)."""

    def __init__(self, base: Ring, j_gens):
        self.base = base
        self.j_gens = [g for g in j_gens if not g.is_zero()]
        for g in self.j_gens:
            if g.ring != base:
                raise StructuralError("quotient generator from a different ring")
        self._cache = {}
        if self.jgb().is_unit_ideal():
            raise StructuralError("quotient is the zero ring")

    def jgb(self) -> GroebnerBasis:
        if "jgb" not in self._cache:
            self._cache["jgb"] = ideal_gb(self.base, self.j_gens)
        return self._cache["jgb"]

    def j_polys(self):
        return [g.component(0) for g in self.jgb().elements]

    def is_polynomial_ring(self) -> bool:
        return not self.j_polys()

    def maximal_ideal(self) -> "IdealHandle":
        return IdealHandle(self, self.base.gens())

    def free_module(self, rank: int) -> "PresentedModule":
        return PresentedModule(self, rank, [])

    def regular_module(self) -> "PresentedModule":
        return self.free_module(1)

    def residue_field(self) -> "PresentedModule":
        gens = [Vec.from_poly(self.base, f) for f in self.base.gens()]
        return PresentedModule(self, 1, gens)

    def nf(self, f: Poly) -> Poly:
        return self.jgb().normal_form(Vec.from_poly(self.base, f)).component(0)

    def dim(self) -> int:
        from . import homology

        return homology.krull_dim(self.regular_module())

    def depth(self) -> int:
        from . import homology

        return homology.depth(self.regular_module())

    def is_cm(self) -> bool:
        return self.dim() == self.depth()

    def __eq__(self, other):
        return (
            isinstance(other, QuotientRing)
            and self.base == other.base
            and self.jgb().elements == other.jgb().elements
        )

    def __hash__(self):
        return hash((self.base, self.jgb().elements))

    def __repr__(self):
        if self.is_polynomial_ring():
            return repr(self.base)
        return f"{self.base}/({', '.join(str(g) for g in self.j_polys())})"


_sring_cache = {}


def as_quotient(ring: Ring) -> QuotientRing:
    """The polynomial ring itself, wrapped as a quotient by (0)."""
    if ring not in _sring_cache:
        _sring_cache[ring] = QuotientRing(ring, [])
    return _sring_cache[ring]


class IdealHandle:
    """An ideal of R given by generators in S; comparisons use the lift J + gens."""

    def __init__(self, ring: QuotientRing, gens):
        self.ring = ring
        self.gens = []
        for g in gens:
            if isinstance(g, str):
                g = ring.base.parse_poly(g)
            if g.ring != ring.base:
                raise StructuralError("ideal generator from a different ring")
            if not g.is_zero():
                self.gens.append(g)
        self._cache = {}

    def lift_gens(self):
        return self.gens + self.ring.j_polys()

    def lift_gb(self) -> GroebnerBasis:
        if "gb" not in self._cache:
            self._cache["gb"] = ideal_gb(self.ring.base, self.lift_gens())
        return self._cache["gb"]

    def lift_polys(self):
        return [g.component(0) for g in self.lift_gb().elements]

    def contains(self, f: Poly) -> bool:
        return self.lift_gb().contains_poly(f)

    def contains_ideal(self, other: "IdealHandle") -> bool:
        return all(self.contains(g) for g in other.gens)

    def is_zero(self) -> bool:
        return self.lift_gb().elements == self.ring.jgb().elements

    def is_proper(self) -> bool:
        return not self.lift_gb().is_unit_ideal()

    def is_monomial(self) -> bool:
        return all(len(g.terms) == 1 for g in self.lift_polys())

    def sum(self, other: "IdealHandle") -> "IdealHandle":
        self._match(other)
        return IdealHandle(self.ring, self.gens + other.gens)

    def product(self, other: "IdealHandle") -> "IdealHandle":
        self._match(other)
        return IdealHandle(self.ring, [f * g for f in self.gens for g in other.gens])

    def intersect(self, other: "IdealHandle") -> "IdealHandle":
        self._match(other)
        from .groebner import ideal_intersect

        return IdealHandle(
            self.ring, ideal_intersect(self.ring.base, self.lift_polys(), other.lift_polys())
        )

    def colon(self, other: "IdealHandle") -> "IdealHandle":
        """(self : other) as ideals of R."""
        self._match(other)
        if other.is_zero():
            raise DomainError("colon by zero ideal")
        from .groebner import ideal_colon

        return IdealHandle(
            self.ring, ideal_colon(self.ring.base, self.lift_polys(), other.gens)
        )

    def radical_contains(self, f: Poly) -> bool:
        return radical_contains(self.ring.base, self.lift_polys(), f)

    def radical_equals(self, other: "IdealHandle") -> bool:
        self._match(other)
        return all(self.radical_contains(g) for g in other.lift_polys()) and all(
            other.radical_contains(g) for g in self.lift_polys()
        )

    def _match(self, other):
        if self.ring != other.ring:
            raise StructuralError("ideals from different rings")

    def __eq__(self, other):
        return (
            isinstance(other, IdealHandle)
            and self.ring == other.ring
            and self.lift_gb().elements == other.lift_gb().elements
        )

    def __hash__(self):
        return hash((self.ring, self.lift_gb().elements))

    def __repr__(self):
        return "(" + ", ".join(str(g) for g in self.gens) + ")" if self.gens else "(0)"


class PresentedModule:
    """M = R^rank / im(relations); relations are vectors over the base ring S."""

    def __init__(self, ring: QuotientRing, rank: int, relations):
        if rank < 0:
            raise StructuralError("negative rank")
        self.ring = ring
        self.rank = rank
        self.relations = []
        for v in relations:
            if v.ring != ring.base or v.rank != rank:
                raise StructuralError("relation does not match the module")
            if not v.is_zero():
                self.relations.append(v)
        self._cache = {}

    def lift_gens(self):
        S = self.ring.base
        out = list(self.relations)
        for g in self.ring.j_polys():
            for i in range(self.rank):
                out.append(Vec.from_poly(S, g, rank=self.rank, comp=i))
        return out

    def lift_gb(self) -> GroebnerBasis:
        if "gb" not in self._cache:
            self._cache["gb"] = buchberger(
                self.lift_gens(), ring=self.ring.base, rank=self.rank
            )
        return self._cache["gb"]

    def nf(self, v: Vec) -> Vec:
        return self.lift_gb().normal_form(v)

    def is_zero(self) -> bool:
        S = self.ring.base
        return all(
            self.nf(Vec.unit(S, self.rank, i)).is_zero() for i in range(self.rank)
        )

    def zero_submodule(self) -> "SubmoduleHandle":
        return SubmoduleHandle(self, [])

    def submodule(self, gens) -> "SubmoduleHandle":
        return SubmoduleHandle(self, gens)

    def generator(self, i: int) -> Vec:
        return Vec.unit(self.ring.base, self.rank, i)

    def annihilator(self) -> IdealHandle:
        """Ann_R M, the intersection over i of (lift : e_i)."""
        if "ann" not in self._cache:
            S = self.ring.base
            lift = self.lift_gb()
            lift_gens = list(lift.elements)
            if self.rank == 0:
                self._cache["ann"] = IdealHandle(self.ring, [S.one()])
            else:
                acc = None
                for i in range(self.rank):
                    tracked = [Vec.unit(S, self.rank, i)]
                    syz = syzygies_mod(tracked, lift_gens, S, self.rank)
                    ideal = IdealHandle(self.ring, [v.component(0) for v in syz])
                    acc = ideal if acc is None else acc.intersect(ideal)
                self._cache["ann"] = acc
        return self._cache["ann"]

    def direct_sum(self, other: "PresentedModule") -> "PresentedModule":
        if self.ring != other.ring:
            raise StructuralError("modules over different rings")
        S = self.ring.base
        rank = self.rank + other.rank
        rels = []
        for v in self.relations:
            rels.append(Vec(S, rank, dict(v.terms)))
        for w in other.relations:
            rels.append(
                Vec(S, rank, {(i + self.rank, m): c for (i, m), c in w.terms.items()})
            )
        return PresentedModule(self.ring, rank, rels)

    def minimal_presentation(self) -> "PresentedModule":
        if "minimal" not in self._cache:
            self._cache["minimal"] = _minimalize(self)
        return self._cache["minimal"]

    def min_gens_count(self) -> int:
        return self.minimal_presentation().rank

    def __eq__(self, other):
        return (
            isinstance(other, PresentedModule)
            and self.ring == other.ring
            and self.rank == other.rank
            and self.lift_gb().elements == other.lift_gb().elements
        )

    def __hash__(self):
        return hash((self.ring, self.rank, self.lift_gb().elements))

    def __repr__(self):
        return f"Module(rank={self.rank}, rels={len(self.relations)})"


class SubmoduleHandle:
    """A submodule of a presented module, equal iff the lift bases agree."""

    def __init__(self, module: PresentedModule, gens):
        self.module = module
        self.gens = []
        for v in gens:
            if v.ring != module.ring.base or v.rank != module.rank:
                raise StructuralError("generator does not match the module")
            if not v.is_zero():
                self.gens.append(v)
        self._cache = {}

    def lift_gens(self):
        return self.gens + self.module.lift_gens()

    def lift_gb(self) -> GroebnerBasis:
        if "gb" not in self._cache:
            self._cache["gb"] = buchberger(
                self.lift_gens(), ring=self.module.ring.base, rank=self.module.rank
            )
        return self._cache["gb"]

    def contains(self, v: Vec) -> bool:
        return self.lift_gb().contains(v)

    def contains_submodule(self, other: "SubmoduleHandle") -> bool:
        return all(self.contains(g) for g in other.gens)

    def is_zero_in_module(self) -> bool:
        return self.lift_gb().elements == self.module.lift_gb().elements

    def __eq__(self, other):
        if not isinstance(other, SubmoduleHandle):
            return NotImplemented
        if self.module != other.module:
            raise StructuralError("submodules of different modules")
        return self.lift_gb().elements == other.lift_gb().elements

    def __hash__(self):
        return hash(self.lift_gb().elements)

    def __repr__(self):
        return f"Submodule({len(self.gens)} gens of rank {self.module.rank})"


# ---------------------------------------------------------------------------
# operations


def scalar_module(a: IdealHandle, M: PresentedModule) -> SubmoduleHandle:
    """The submodule a*M, generated by f*e_i for f in gens(a)."""
    if a.ring != M.ring:
        raise StructuralError("ideal and module over different rings")
    S = M.ring.base
    gens = [
        Vec.from_poly(S, f, rank=M.rank, comp=i) for f in a.gens for i in range(M.rank)
    ]
    return SubmoduleHandle(M, gens)


def colon_module(N: SubmoduleHandle, a: IdealHandle) -> SubmoduleHandle:
    """{m in M : a*m inside N}."""
    M = N.module
    if a.ring != M.ring:
        raise StructuralError("ideal and module over different rings")
    if a.is_zero():
        raise DomainError("colon by zero ideal")
    S = M.ring.base
    lift = SubmoduleGens(S, M.rank, list(N.lift_gb().elements))
    gens = [g for g in a.gens if not M.ring.nf(g).is_zero()]
    if not gens:
        raise DomainError("colon by zero ideal")
    result = colon_by_ideal(lift, gens)
    return SubmoduleHandle(M, result.gens)


def colon_into_ideal(N: SubmoduleHandle, vectors) -> IdealHandle:
    """{r in R : r*v inside N for every v in vectors} as an ideal."""
    M = N.module
    S = M.ring.base
    lift_gens = list(N.lift_gb().elements)
    acc = None
    for v in vectors:
        syz = syzygies_mod([v], lift_gens, S, M.rank)
        ideal = IdealHandle(M.ring, [w.component(0) for w in syz])
        acc = ideal if acc is None else acc.intersect(ideal)
    if acc is None:
        raise DomainError("colon into the zero family")
    return acc


def is_proper(a: IdealHandle, M: PresentedModule) -> bool:
    """True iff a*M != M."""
    N = scalar_module(a, M)
    S = M.ring.base
    return any(
        not N.lift_gb().contains(Vec.unit(S, M.rank, i)) for i in range(M.rank)
    )


def submodule_equal(n1: SubmoduleHandle, n2: SubmoduleHandle) -> bool:
    if n1.module != n2.module:
        raise StructuralError("submodules of different modules")
    return n1.lift_gb().elements == n2.lift_gb().elements


def quotient_module(M: PresentedModule, N: SubmoduleHandle) -> PresentedModule:
    """M/N as a presented module."""
    if N.module != M:
        raise StructuralError("submodule of a different module")
    return PresentedModule(M.ring, M.rank, M.relations + N.gens)


def quotient_by_ideal(M: PresentedModule, a: IdealHandle) -> PresentedModule:
    return quotient_module(M, scalar_module(a, M))


def cyclic_module(ring: QuotientRing, a: IdealHandle) -> PresentedModule:
    """R/a as a presented module over R."""
    S = ring.base
    return PresentedModule(ring, 1, [Vec.from_poly(S, g) for g in a.gens])


def annihilator(M: PresentedModule) -> IdealHandle:
    return M.annihilator()


def regular_sequence_check(xs, M: PresentedModule):
    """Check x_1..x_t is an M-regular sequence.

    Returns (ok, failure_index); a properness failure reports index len(xs).
    """
    ring = M.ring
    if M.is_zero():
        return (False, 0 if xs else len(xs))
    prefix = M.zero_submodule()
    acc = []
    for i, x in enumerate(xs):
        if isinstance(x, str):
            x = ring.base.parse_poly(x)
        if ring.nf(x).is_zero():
            return (False, i)
        col = colon_module(prefix, IdealHandle(ring, [x]))
        if not submodule_equal(col, prefix):
            return (False, i)
        acc.append(x)
        prefix = scalar_module(IdealHandle(ring, acc), M)
    if xs and not is_proper(IdealHandle(ring, list(acc)), M):
        return (False, len(xs))
    return (True, None)


def support_equal(m1: PresentedModule, m2: PresentedModule) -> bool:
    """True iff the radicals of the lifted annihilators agree."""
    if m1.ring != m2.ring:
        raise StructuralError("modules over different rings")
    a1 = m1.annihilator()
    a2 = m2.annihilator()
    return a1.radical_equals(a2)


def subquotient_presentation(ring: QuotientRing, gens, denominator) -> PresentedModule:
    """Present (<gens> + <denominator>)/<denominator> as a module over `ring`.

    The relations are all coefficient vectors q with sum q_i*gens_i inside
    the denominator.
    """
    S = ring.base
    if not gens:
        return PresentedModule(ring, 0, [])
    rank_ambient = gens[0].rank
    rels = syzygies_mod(list(gens), list(denominator), S, rank_ambient)
    return PresentedModule(ring, len(gens), rels)


def hom_into_quotient(
    a: IdealHandle, M: PresentedModule, N: SubmoduleHandle
) -> PresentedModule:
    """Hom(R/a, M/N) realised as the subquotient (N : a)/N."""
    C = colon_module(N, a)
    gens = list(C.lift_gb().elements)
    den = list(N.lift_gb().elements)
    return subquotient_presentation(M.ring, gens, den).minimal_presentation()


def module_intersect(n1: SubmoduleHandle, n2: SubmoduleHandle) -> SubmoduleHandle:
    if n1.module != n2.module:
        raise StructuralError("submodules of different modules")
    S = n1.module.ring.base
    rank = n1.module.rank
    a = SubmoduleGens(S, rank, list(n1.lift_gb().elements))
    b = SubmoduleGens(S, rank, list(n2.lift_gb().elements))
    return SubmoduleHandle(n1.module, intersect(a, b).gens)


# ---------------------------------------------------------------------------
# minimal presentations


def _minimalize(M: PresentedModule) -> PresentedModule:
    """Remove unit pivots from the presentation, then prune redundant relations."""
    ring = M.ring
    S = ring.base
    rank = M.rank
    rels = [dict(v.terms) for v in M.relations]
    p = S.p

    def entry(rel, i) -> Poly:
        return Poly(S, {m: c for (j, m), c in rel.items() if j == i})

    changed = True
    while changed:
        changed = False
        for ri, rel in enumerate(rels):
            pivot = None
            for (j, m), c in rel.items():
                if m == S.zero_mono:
                    e = entry(rel, j)
                    if e.is_constant() and not e.is_zero():
                        pivot = (j, e.constant_coeff())
                        break
            if pivot is None:
                continue
            j, c = pivot
            cinv = S.field.inv(c)
            vold = Vec(S, rank, rel)
            new_rels = []
            for rk, other in enumerate(rels):
                if rk == ri:
                    continue
                w = Vec(S, rank, other)
                wj = entry(other, j)
                if not wj.is_zero():
                    w = w - vold.poly_mul(wj * cinv)
                new_rels.append(w)
            # drop component j everywhere
            rels = []
            for w in new_rels:
                rels.append(
                    {
                        ((i2 if i2 < j else i2 - 1), m2): c2
                        for (i2, m2), c2 in w.terms.items()
                        if i2 != j
                    }
                )
            rank -= 1
            changed = True
            break

    vecs = [Vec(S, rank, r) for r in rels if r]
    vecs = minimal_gens(vecs, ring, rank)
    return PresentedModule(ring, rank, vecs)


def minimal_gens(gens, ring: QuotientRing, rank: int):
    """Irredundant generators over R, pruned in ascending degree order.

    For homogeneous input over a graded-friendly ring this is a minimal
    generating set.
    """
    from .groebner import BasisBuilder

    S = ring.base
    builder = BasisBuilder(S, rank)
    for g in ring.j_polys():
        for i in range(rank):
            builder.add(Vec.from_poly(S, g, rank=rank, comp=i))
    cands = [g for g in gens if not g.is_zero()]
    cands.sort(key=lambda v: (v.max_degree(), sorted(v.terms)))
    kept = []
    for g in cands:
        if not builder.contains(g):
            kept.append(g)
            builder.add(g)
    return kept
