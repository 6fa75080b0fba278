"""Buchberger engine for submodules of free modules over F_p[x1..xn].

Everything downstream (colon modules, Ext, dimension) reduces to the three
primitives here: reduced Groebner bases, normal forms, and syzygies.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DomainError, ResourceError, StructuralError
from .poly import (
    ElimBlock,
    POT,
    POTBlock,
    Poly,
    TOP,
    Vec,
    embed_vec,
    mono_deg,
    mono_div,
    mono_disjoint,
    mono_lcm,
    mono_mul,
    project_vec,
)

# deterministic work counters (diagnostics only)
stats = {"spair_reductions": 0, "basis_elements": 0}


def reset_stats():
    stats["spair_reductions"] = 0
    stats["basis_elements"] = 0


@dataclass
class SubmoduleGens:
    """Generators of a submodule of S^rank (zero generators dropped)."""

    ring: object
    rank: int
    gens: list

    def __post_init__(self):
        self.gens = [g for g in self.gens if not g.is_zero()]
        for g in self.gens:
            if g.ring != self.ring or g.rank != self.rank:
                raise StructuralError("generator does not live in the stated module")


@dataclass
class GroebnerBasis:
    """Reduced Groebner basis: monic, auto-reduced, sorted, unique per order."""

    ring: object
    rank: int
    order: object
    elements: tuple
    lts: tuple = field(default=())
    reduced: bool = True

    def __post_init__(self):
        if not self.lts:
            self.lts = tuple(g.lt(self.order) for g in self.elements)

    def normal_form(self, v: Vec) -> Vec:
        return reduce_vec(v, self.elements, self.lts, self.order)[0]

    def contains(self, v: Vec) -> bool:
        return self.normal_form(v).is_zero()

    def contains_poly(self, f: Poly) -> bool:
        if self.rank != 1:
            raise StructuralError("polynomial membership needs a rank-1 module")
        return self.contains(Vec.from_poly(self.ring, f))

    def is_unit_ideal(self) -> bool:
        return self.rank == 1 and len(self.elements) == 1 and (
            self.elements[0].terms == {(0, self.ring.zero_mono): 1}
        )

    def __eq__(self, other):
        return (
            isinstance(other, GroebnerBasis)
            and self.ring == other.ring
            and self.rank == other.rank
            and self.elements == other.elements
        )


def reduce_vec(v: Vec, elements, lts, order, want_quotients=False, cap=None):
    """Full normal form of v against (elements, lts); optionally the quotients.

    Returns (nf, quotients) with v = sum(q_i * g_i) + nf and no term of nf
    divisible by any leading term.  Deterministic: the divisor is the first
    element in the list whose leading term divides the current term.
    """
    ring = v.ring
    p = ring.p
    cap = cap if cap is not None else ring.degree_cap
    work = dict(v.terms)
    rem: dict = {}
    qs = [dict() for _ in elements] if want_quotients else None
    by_comp: dict = {}
    for idx, (_, c0, m0) in enumerate(lts):
        by_comp.setdefault(c0, []).append((idx, m0))
    keyf = lambda t: order.key(t[0], t[1])
    while work:
        t = max(work, key=keyf)
        comp, mono = t
        coeff = work[t]
        hit = -1
        for idx, m0 in by_comp.get(comp, ()):
            q = mono_div(mono, m0)
            if q is not None:
                hit = idx
                shift = q
                break
        if hit < 0:
            rem[t] = coeff
            del work[t]
            continue
        g = elements[hit]
        lc = lts[hit][0]
        mult = (coeff * ring.field.inv(lc)) % p
        if want_quotients:
            qs[hit][shift] = (qs[hit].get(shift, 0) + mult) % p
        for (c2, m2), co2 in g.terms.items():
            m3 = mono_mul(m2, shift)
            if mono_deg(m3) > cap:
                raise ResourceError(f"degree cap {cap} exceeded during reduction")
            key = (c2, m3)
            val = (work.get(key, 0) - mult * co2) % p
            if val:
                work[key] = val
            else:
                work.pop(key, None)
    nf = Vec(ring, v.rank, rem)
    if want_quotients:
        return nf, [Poly(ring, {m: c for m, c in q.items() if c}) for q in qs]
    return nf, None


def _spoly_parts(gi, gj, lti, ltj):
    """Multipliers (mono_i, mono_j) with lcm/lt cancellation; None if criteria skip."""
    _, ci, mi = lti
    _, cj, mj = ltj
    if ci != cj:
        return None
    lcm = mono_lcm(mi, mj)
    return (mono_div(lcm, mi), mono_div(lcm, mj), lcm)


def _single_component(v: Vec):
    comps = {c for (c, _) in v.terms}
    return comps.pop() if len(comps) == 1 else None


class BasisBuilder:
    """Incrementally maintained Groebner basis of a growing generator list.

    After every `add` the internal basis is a Groebner basis of everything
    added so far, so `contains` answers membership exactly; `finish` returns
    the canonical reduced basis.  Normal selection strategy (minimal lcm
    degree, ties by the lcm monomial, then indices) keeps runs reproducible.
    Applies the chain criterion; the coprimality criterion only fires when
    both vectors are supported in one common component, where the ideal-case
    proof applies.
    """

    def __init__(self, ring, rank, order=None, cap=None):
        self.ring = ring
        self.rank = rank
        self.order = order or POT(ring.order)
        self.cap = cap if cap is not None else ring.degree_cap
        self.basis = []
        self.lts = []
        self.pairs = {}
        self.heap = []
        self.done = set()

    def _pair_key(self, i, j):
        parts = _spoly_parts(self.basis[i], self.basis[j], self.lts[i], self.lts[j])
        if parts is None:
            return None
        _, _, lcm = parts
        return (mono_deg(lcm), lcm, self.lts[i][1], i, j)

    def _add_pairs(self, j):
        import heapq

        for i in range(j):
            k = self._pair_key(i, j)
            if k is None:
                self.done.add((i, j))
                continue
            # coprime leading monomials: valid skip only in the single-component case
            ci, mi = self.lts[i][1], self.lts[i][2]
            cj, mj = self.lts[j][1], self.lts[j][2]
            if ci == cj and mono_disjoint(mi, mj):
                si = _single_component(self.basis[i])
                sj = _single_component(self.basis[j])
                if si is not None and si == sj:
                    self.done.add((i, j))
                    continue
            self.pairs[(i, j)] = k
            heapq.heappush(self.heap, (k, i, j))

    def _append(self, v):
        self.basis.append(v)
        self.lts.append(v.lt(self.order))
        self._add_pairs(len(self.basis) - 1)

    def _process(self):
        import heapq

        basis, lts, order = self.basis, self.lts, self.order
        while self.pairs:
            k, i, j = heapq.heappop(self.heap)
            if self.pairs.get((i, j)) != k:
                continue
            del self.pairs[(i, j)]
            self.done.add((i, j))
            # chain criterion: lt_k divides lcm(i,j), both mixed pairs treated
            _, ci, mi = lts[i]
            _, _, mj = lts[j]
            lcm = mono_lcm(mi, mj)
            skip = False
            for t in range(len(basis)):
                if t in (i, j):
                    continue
                _, ct, mt = lts[t]
                if ct == ci and mono_div(lcm, mt) is not None:
                    a = (min(i, t), max(i, t))
                    b = (min(j, t), max(j, t))
                    if (
                        a in self.done
                        and b in self.done
                        and a not in self.pairs
                        and b not in self.pairs
                    ):
                        skip = True
                        break
            if skip:
                continue
            qi = mono_div(lcm, mi)
            qj = mono_div(lcm, mj)
            if mono_deg(lcm) > self.cap:
                raise ResourceError(f"degree cap {self.cap} exceeded in S-pair")
            s = basis[i].term_mul(1, qi) - basis[j].term_mul(1, qj)
            stats["spair_reductions"] += 1
            nf, _ = reduce_vec(s, basis, lts, order, cap=self.cap)
            if not nf.is_zero():
                self._append(nf.monic(order))

    def add(self, v):
        if v.is_zero():
            return
        if v.ring != self.ring or v.rank != self.rank:
            raise StructuralError("generator does not match ring or rank")
        self._append(v.monic(self.order))
        self._process()

    def contains(self, v) -> bool:
        nf, _ = reduce_vec(v, self.basis, self.lts, self.order, cap=self.cap)
        return nf.is_zero()

    def finish(self) -> GroebnerBasis:
        basis, lts, order = self.basis, self.lts, self.order
        # minimalize: drop elements whose lt is divisible by another kept lt
        idx = sorted(range(len(basis)), key=lambda i: order.key(lts[i][1], lts[i][2]))
        kept = []
        for i in idx:
            _, ci, mi = lts[i]
            redundant = False
            for k in kept:
                _, ck, mk = lts[k]
                if ck == ci and mono_div(mi, mk) is not None:
                    redundant = True
                    break
            if not redundant:
                kept.append(i)
        minimal = [basis[i] for i in kept]
        min_lts = [lts[i] for i in kept]
        # interreduce tails: leading terms are pairwise non-divisible already
        reduced = []
        for pos, g in enumerate(minimal):
            others = minimal[:pos] + minimal[pos + 1 :]
            olts = min_lts[:pos] + min_lts[pos + 1 :]
            nf, _ = reduce_vec(g, others, olts, order, cap=self.cap)
            reduced.append(nf.monic(order))
        reduced.sort(key=lambda g: order.key(g.lt(order)[1], g.lt(order)[2]), reverse=True)
        stats["basis_elements"] += len(reduced)
        return GroebnerBasis(self.ring, self.rank, order, tuple(reduced))


def buchberger(gens, ring=None, rank=None, order=None, cap=None) -> GroebnerBasis:
    """Reduced Groebner basis of the submodule generated by `gens`."""
    if isinstance(gens, SubmoduleGens):
        ring = gens.ring
        rank = gens.rank
        gens = gens.gens
    if ring is None:
        raise StructuralError("ring required")
    rank = rank if rank is not None else 1
    builder = BasisBuilder(ring, rank, order=order, cap=cap)
    for g in gens:
        if g.is_zero():
            continue
        if g.ring != ring or g.rank != rank:
            raise StructuralError("generator does not match ring or rank")
        builder._append(g.monic(builder.order))
    builder._process()
    return builder.finish()


def normal_form(v: Vec, G: GroebnerBasis) -> Vec:
    if v.ring != G.ring or v.rank != G.rank:
        raise StructuralError("vector does not match the basis module")
    return G.normal_form(v)


def ideal_gb(ring, polys, order=None) -> GroebnerBasis:
    vecs = [Vec.from_poly(ring, f) for f in polys if not f.is_zero()]
    return buchberger(vecs, ring=ring, rank=1, order=order or POT(ring.order))


def gb_poly_elements(G: GroebnerBasis):
    return [g.component(0) for g in G.elements]


# ---------------------------------------------------------------------------
# syzygies


def schreyer_syzygies(G: GroebnerBasis) -> SubmoduleGens:
    """Generators of the kernel of S^|G| -> S^rank, e_i -> G_i.

    Each same-component S-pair reduces to zero against G; recording the
    multipliers and quotients of that reduction yields one syzygy, and
    together they generate the kernel (they even form a basis for the order
    induced by the leading terms of G, which is used to sort the output).
    """
    from .poly import Schreyer

    if not G.reduced:
        raise StructuralError("syzygies need a reduced basis")
    ring = G.ring
    k = len(G.elements)
    out = []
    for j in range(k):
        for i in range(j):
            parts = _spoly_parts(G.elements[i], G.elements[j], G.lts[i], G.lts[j])
            if parts is None:
                continue
            qi, qj, lcm = parts
            s = G.elements[i].term_mul(1, qi) - G.elements[j].term_mul(1, qj)
            nf, quots = reduce_vec(s, G.elements, G.lts, G.order, want_quotients=True)
            if not nf.is_zero():
                raise StructuralError("input is not a Groebner basis")
            terms = {(i, qi): 1, (j, qj): (-1) % ring.p}
            syz = Vec(ring, k, terms)
            for idx, q in enumerate(quots):
                if not q.is_zero():
                    syz = syz - Vec.from_poly(ring, q, rank=k, comp=idx)
            if not syz.is_zero():
                out.append(syz)
    induced = Schreyer([(c, m) for (_, c, m) in G.lts], G.order)
    out.sort(key=lambda v: induced.key(*v.lt(induced)[1:]), reverse=True)
    return SubmoduleGens(ring, k, out)


def syzygies_mod(tracked, untracked, ring, rank) -> list:
    """Generators of {q : sum q_i * tracked_i lies in <untracked>}.

    Works by augmenting each tracked vector with its own marker component and
    computing a basis in an order that makes the original components dominate;
    basis elements supported entirely in the marker block are the syzygies.
    """
    m = len(tracked)
    if m == 0:
        return []
    big_rank = rank + m
    aug = []
    for i, t in enumerate(tracked):
        terms = {(c, mo): co for (c, mo), co in t.terms.items()}
        terms[(rank + i, ring.zero_mono)] = 1
        aug.append(Vec(ring, big_rank, terms))
    for u in untracked:
        if u.is_zero():
            continue
        aug.append(Vec(ring, big_rank, dict(u.terms)))
    order = POTBlock(rank, ring.order)
    G = buchberger(aug, ring=ring, rank=big_rank, order=order)
    out = []
    for g in G.elements:
        if all(c >= rank for (c, _) in g.terms):
            shifted = {(c - rank, mo): co for (c, mo), co in g.terms.items()}
            out.append(Vec(ring, m, shifted))
    return out


def kernel_gens(columns, ring, target_rank, modulo=()) -> list:
    """Coefficient vectors q with sum q_i * columns_i in <modulo> (kernel of a map)."""
    return syzygies_mod(list(columns), list(modulo), ring, target_rank)


# ---------------------------------------------------------------------------
# intersection, colon, elimination


def _tag_ring(ring):
    name = ring.fresh_names("t", 1)
    big = ring.with_extra_vars(name)
    big.order = ElimBlock(1, ring.order)
    tag = big.var(big.n - 1)
    return big, tag


def intersect(n1: SubmoduleGens, n2: SubmoduleGens) -> SubmoduleGens:
    """Generators of <n1> meet <n2> via a tag variable: t*n1 + (1-t)*n2, eliminate t."""
    if n1.ring != n2.ring or n1.rank != n2.rank:
        raise StructuralError("submodules of different ambient modules")
    ring, rank = n1.ring, n1.rank
    big, tag = _tag_ring(ring)
    one = big.one()
    gens = []
    for v in n1.gens:
        gens.append(embed_vec(v, big).poly_mul(tag))
    for w in n2.gens:
        gens.append(embed_vec(w, big).poly_mul(one - tag))
    G = buchberger(gens, ring=big, rank=rank, order=TOP(big.order))
    kept = []
    for g in G.elements:
        if all(m[-1] == 0 for (_, m) in g.terms):
            kept.append(project_vec(g, ring))
    # canonicalize in the original ring and order
    G2 = buchberger(kept, ring=ring, rank=rank, order=POT(ring.order))
    return SubmoduleGens(ring, rank, list(G2.elements))


def divide_exact(f: Poly, g: Poly) -> Poly:
    """Quotient f/g when the division is exact."""
    if g.is_zero():
        raise DomainError("division by zero polynomial")
    ring = f.ring
    v = Vec.from_poly(ring, f)
    d = Vec.from_poly(ring, g)
    order = POT(ring.order)
    lt = d.lt(order)
    nf, qs = reduce_vec(v, [d], [lt], order, want_quotients=True)
    if not nf.is_zero():
        raise DomainError("inexact polynomial division")
    return qs[0]


def colon_by_element(n: SubmoduleGens, f: Poly) -> SubmoduleGens:
    """{v : f*v in <n>} via intersection with f*S^rank and exact division by f."""
    if f.is_zero():
        raise DomainError("colon by zero element")
    ring, rank = n.ring, n.rank
    fmod = SubmoduleGens(
        ring, rank, [Vec.from_poly(ring, f, rank=rank, comp=i) for i in range(rank)]
    )
    meet = intersect(n, fmod)
    out = []
    for v in meet.gens:
        comps = [divide_exact(v.component(i), f) for i in range(rank)]
        out.append(Vec.from_polys(ring, comps))
    return SubmoduleGens(ring, rank, out)


def colon_by_ideal(n: SubmoduleGens, ideal_gens) -> SubmoduleGens:
    """{v : a*v contained in <n>} as the intersection of per-generator colons."""
    nz = [f for f in ideal_gens if not f.is_zero()]
    if not nz:
        raise DomainError("colon by zero ideal")
    result = None
    for f in nz:
        part = colon_by_element(n, f)
        result = part if result is None else intersect(result, part)
    G = buchberger(result.gens, ring=n.ring, rank=n.rank, order=POT(n.ring.order))
    return SubmoduleGens(n.ring, n.rank, list(G.elements))


def eliminate(n: SubmoduleGens, tail: int, order=None) -> SubmoduleGens:
    """Generators of <n> meet (subring without the last `tail` variables)^rank."""
    ring, rank = n.ring, n.rank
    if order is None:
        order = TOP(ElimBlock(tail, ring.order))
    else:
        ro = getattr(order, "ring_order", None)
        if not isinstance(ro, ElimBlock) or ro.tail < tail:
            raise StructuralError("elimination needs a block order covering the tail")
    G = buchberger(n.gens, ring=ring, rank=rank, order=order)
    n_keep = ring.n - tail
    kept = [
        g
        for g in G.elements
        if all(all(e == 0 for e in m[n_keep:]) for (_, m) in g.terms)
    ]
    return SubmoduleGens(ring, rank, kept)


# ---------------------------------------------------------------------------
# ideal-level helpers (rank-1 wrappers)


def ideal_intersect(ring, gens1, gens2):
    n1 = SubmoduleGens(ring, 1, [Vec.from_poly(ring, f) for f in gens1])
    n2 = SubmoduleGens(ring, 1, [Vec.from_poly(ring, f) for f in gens2])
    return [v.component(0) for v in intersect(n1, n2).gens]


def ideal_colon(ring, gens, by_gens):
    n = SubmoduleGens(ring, 1, [Vec.from_poly(ring, f) for f in gens])
    return [v.component(0) for v in colon_by_ideal(n, by_gens).gens]


def radical_contains(ring, ideal_gens, f: Poly) -> bool:
    """f in sqrt(I) iff 1 in I + (1 - t*f) in one extra variable."""
    if f.is_zero():
        return True
    big, tag = _tag_ring(ring)
    from .poly import embed_poly

    gens = [embed_poly(g, big) for g in ideal_gens]
    gens.append(big.one() - tag * embed_poly(f, big))
    G = ideal_gb(big, gens)
    return G.is_unit_ideal()
