"""Free resolutions, Ext, grade, depth, dimension, canonical modules.

Resolutions over R = S/J are built by iterated kernels at the lift level:
the kernel of a map given by columns v_j is the set of coefficient vectors q
with sum q_j*v_j inside J times the ambient free module.  Over S itself
(J = 0) the same loop terminates and gives the minimal graded resolution.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .errors import DomainError, EngineError, ResourceError, StructuralError
from .groebner import buchberger, syzygies_mod
from .poly import Vec
from .quotient import (
    IdealHandle,
    PresentedModule,
    QuotientRing,
    as_quotient,
    is_proper,
    minimal_gens,
    scalar_module,
    subquotient_presentation,
)


@dataclass
class FreeResolution:
    """Matrices d_1, d_2, ... with d_k given by its columns in S^{b_{k-1}}."""

    ring: QuotientRing
    module: PresentedModule
    matrices: list
    complete: bool

    @property
    def betti(self):
        out = [self.module.rank]
        out.extend(len(m) for m in self.matrices)
        return out

    def length(self) -> int:
        return len(self.matrices)

    def verify(self) -> bool:
        """Consecutive composites vanish and kernels equal images (over R)."""
        S = self.ring.base
        jblock_cache = {}

        def jblock(rank):
            if rank not in jblock_cache:
                jblock_cache[rank] = [
                    Vec.from_poly(S, g, rank=rank, comp=i)
                    for g in self.ring.j_polys()
                    for i in range(rank)
                ]
            return jblock_cache[rank]

        betti = self.betti
        for k in range(1, len(self.matrices)):
            prev = self.matrices[k - 1]
            cur = self.matrices[k]
            rank = betti[k - 1]
            G = buchberger(jblock(rank), ring=S, rank=rank) if jblock(rank) else None
            for q in cur:
                acc = Vec(S, rank, {})
                for j, col in enumerate(prev):
                    acc = acc + col.poly_mul(q.component(j))
                if G is None:
                    if not acc.is_zero():
                        return False
                elif not G.contains(acc):
                    return False
        # exactness: every kernel element is generated by the next matrix
        for k in range(len(self.matrices)):
            rank = betti[k]
            cols = self.matrices[k]
            ker = syzygies_mod(cols, jblock(rank), S, rank)
            nxt = self.matrices[k + 1] if k + 1 < len(self.matrices) else []
            den = list(nxt) + jblock(len(cols))
            if not ker:
                continue
            if not den:
                if any(not v.is_zero() for v in ker):
                    return False
                continue
            G = buchberger(den, ring=S, rank=len(cols))
            if not all(G.contains(v) for v in ker):
                if k + 1 >= len(self.matrices) and not self.complete:
                    continue  # truncated resolution: last kernel unchecked
                return False
        return True


@dataclass
class ExtResult:
    index: int
    module: PresentedModule
    over: str
    window: int | None = None

    def is_zero(self) -> bool:
        return self.module.rank == 0 or self.module.is_zero()


@dataclass
class HomologicalProfile:
    dim: int
    depth: int
    codim: int
    flags: dict
    grade_table: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# resolutions


def _jblock(ring: QuotientRing, rank: int):
    S = ring.base
    return [
        Vec.from_poly(S, g, rank=rank, comp=i)
        for g in ring.j_polys()
        for i in range(rank)
    ]


def resolve(M: PresentedModule, need: int) -> FreeResolution:
    """Minimal resolution of M over its ring, with at least `need` matrices
    unless it terminates earlier."""
    ring = M.ring
    S = ring.base
    Mmin = M.minimal_presentation()
    st = Mmin._cache.setdefault("res", {"matrices": [], "complete": False})
    while not st["complete"] and len(st["matrices"]) < need:
        k = len(st["matrices"])
        if k == 0:
            gens = list(Mmin.relations)
            if not gens:
                st["complete"] = True
                break
            st["matrices"].append(gens)
            continue
        prev_rank = Mmin.rank if k == 1 else len(st["matrices"][k - 2])
        cols = st["matrices"][k - 1]
        ker = syzygies_mod(cols, _jblock(ring, prev_rank), S, prev_rank)
        gens = minimal_gens(ker, ring, len(cols))
        if not gens:
            st["complete"] = True
            break
        for g in gens:
            if _has_unit_entry(g):
                raise EngineError("non-minimal syzygy survived minimalization")
        st["matrices"].append(gens)
        if ring.is_polynomial_ring() and len(st["matrices"]) > S.n:
            raise EngineError("resolution over the polynomial ring exceeded n steps")
    return FreeResolution(ring, Mmin, list(st["matrices"]), st["complete"])


def _has_unit_entry(v: Vec) -> bool:
    zero = v.ring.zero_mono
    return any(m == zero for (_, m) in v.terms)


def free_resolution(M: PresentedModule, length: int) -> FreeResolution:
    """Minimal resolution over the polynomial ring of the lifted module."""
    return resolve(lift_to_base(M), length)


def lift_to_base(M: PresentedModule) -> PresentedModule:
    """The same module viewed over the polynomial ring (J folded into relations)."""
    if M.ring.is_polynomial_ring():
        return M
    if "smod" not in M._cache:
        QS = as_quotient(M.ring.base)
        M._cache["smod"] = PresentedModule(QS, M.rank, M.lift_gens())
    return M._cache["smod"]


def pd_over_base(M: PresentedModule) -> int:
    res = resolve(lift_to_base(M), M.ring.base.n + 1)
    if not res.complete:
        raise EngineError("resolution over the polynomial ring did not terminate")
    return res.length()


# ---------------------------------------------------------------------------
# Ext


def _hom_block_relations(B: PresentedModule, blocks: int):
    """Relations of B^blocks inside S^{B.rank * blocks} (J included)."""
    S = B.ring.base
    sB = B.rank
    out = []
    for w in B.lift_gens():
        for c in range(blocks):
            out.append(
                Vec(S, sB * blocks, {(c * sB + i, m): co for (i, m), co in w.terms.items()})
            )
    return out


def _phi_columns(B: PresentedModule, d_cols, src_blocks: int):
    """Columns of Hom(d, B): B^{src_blocks} -> B^{len(d_cols)}, flat index r*sB+t."""
    S = B.ring.base
    sB = B.rank
    tgt_rank = sB * len(d_cols)
    cols = []
    for r in range(src_blocks):
        for t in range(sB):
            terms = {}
            for c, col in enumerate(d_cols):
                entry = col.component(r)
                for m, co in entry.terms.items():
                    key = (c * sB + t, m)
                    v = (terms.get(key, 0) + co) % S.p
                    if v:
                        terms[key] = v
                    else:
                        terms.pop(key, None)
            cols.append(Vec(S, tgt_rank, terms))
    return cols


def _ext_data(i: int, A: PresentedModule, B: PresentedModule, window: int):
    """Kernel generators and denominator generators for Ext^i(A, B)."""
    if A.ring != B.ring:
        raise StructuralError("Ext needs modules over one ring")
    ring = A.ring
    S = ring.base
    res = resolve(A, i + 1)
    betti = res.betti
    if i >= len(betti):
        if res.complete:
            return None  # Ext vanishes
        raise ResourceError("resolution window too short for the requested Ext")
    sB = B.rank
    bi = betti[i]
    xi_rank = sB * bi
    # kernel of Hom(d_{i+1}, B)
    if i < len(res.matrices):
        cols = _phi_columns(B, res.matrices[i], bi)
        den_up = _hom_block_relations(B, len(res.matrices[i]))
        ker = syzygies_mod(cols, den_up, S, sB * len(res.matrices[i]))
    else:
        ker = [Vec.unit(S, xi_rank, f) for f in range(xi_rank)]
    den = list(_hom_block_relations(B, bi))
    if i >= 1:
        den.extend(_phi_columns(B, res.matrices[i - 1], betti[i - 1]))
    return ker, den, xi_rank


def ext_is_zero(i: int, A: PresentedModule, B: PresentedModule, window: int | None = None) -> bool:
    window = window if window is not None else i + 1
    key = ("extz", i, id(B))
    if key in A._cache:
        return A._cache[key]
    data = _ext_data(i, A, B, window)
    if data is None:
        out = True
    else:
        ker, den, xi_rank = data
        if not ker:
            out = True
        elif not den:
            out = all(v.is_zero() for v in ker)
        else:
            G = buchberger(den, ring=A.ring.base, rank=xi_rank)
            out = all(G.contains(v) for v in ker)
    A._cache[key] = out
    return out


def ext_module(
    i: int,
    A: PresentedModule,
    B: PresentedModule,
    result_ring: QuotientRing | None = None,
    window: int | None = None,
) -> PresentedModule:
    """Ext^i(A, B) as a minimally presented module."""
    ring = result_ring or A.ring
    data = _ext_data(i, A, B, window if window is not None else i + 1)
    if data is None:
        return PresentedModule(ring, 0, [])
    ker, den, _ = data
    return subquotient_presentation(ring, ker, den).minimal_presentation()


def ext_over_S(i: int, M: PresentedModule, result_ring: QuotientRing | None = None) -> PresentedModule:
    """Ext^i over the polynomial ring against S itself."""
    S = M.ring.base
    if not (0 <= i <= S.n):
        raise StructuralError("Ext over the polynomial ring vanishes outside 0..n")
    A = lift_to_base(M)
    B = as_quotient(S).free_module(1)
    return ext_module(i, A, B, result_ring=result_ring or as_quotient(S))


def ext_over_R(i: int, A: PresentedModule, B: PresentedModule, window: int | None = None) -> ExtResult:
    """Ext^i over R via a window-truncated resolution of A."""
    ring = A.ring
    window = window if window is not None else default_window(ring)
    if i > window:
        raise StructuralError("Ext index beyond the window")
    mod = ext_module(i, A, B, window=max(window, i + 1))
    return ExtResult(i, mod, over="R" if not ring.is_polynomial_ring() else "S", window=window)


def default_window(ring: QuotientRing) -> int:
    return 2 * ring.base.n + 2


# ---------------------------------------------------------------------------
# numerical invariants


def krull_dim(M: PresentedModule) -> int:
    """Dimension via maximal independent variable sets of lt(Ann)."""
    if "dim" in M._cache:
        return M._cache["dim"]
    ann = M.annihilator()
    G = ann.lift_gb()
    if G.is_unit_ideal():
        M._cache["dim"] = -1
        return -1
    n = M.ring.base.n
    lts = [g.lt(G.order)[2] for g in G.elements]
    best = 0
    for r in range(n, -1, -1):
        found = False
        for subset in itertools.combinations(range(n), r):
            sset = set(subset)
            if all(any(m[i] > 0 and i not in sset for i in range(n)) for m in lts):
                found = True
                break
        if found:
            best = r
            break
    M._cache["dim"] = best
    return best


def codim(M: PresentedModule) -> int:
    return M.ring.base.n - krull_dim(M)


def grade(a: IdealHandle, M: PresentedModule) -> int:
    """Length of a maximal M-regular sequence inside a, by Ext vanishing."""
    if not is_proper(a, M):
        raise DomainError("grade undefined (unit action)")
    S = M.ring.base
    QS = as_quotient(S)
    key = ("grade", a.lift_gb().elements)
    if key in M._cache:
        return M._cache[key]
    A = PresentedModule(QS, 1, [Vec.from_poly(S, g) for g in a.lift_polys()])
    B = lift_to_base(M)
    for i in range(S.n + 1):
        if not ext_is_zero(i, A, B):
            M._cache[key] = i
            return i
    raise EngineError("grade exceeded the number of variables")


def depth(M: PresentedModule) -> int:
    """grade of the maximal ideal on M."""
    if M.is_zero():
        raise DomainError("depth of the zero module")
    if "depth" in M._cache:
        return M._cache["depth"]
    d = grade(M.ring.maximal_ideal(), M)
    M._cache["depth"] = d
    return d


def height_on_module(a: IdealHandle, M: PresentedModule) -> int:
    """dim M - dim M/aM (height of a as seen by M)."""
    if not is_proper(a, M):
        raise DomainError("height undefined (unit action)")
    return krull_dim(M) - krull_dim(quotient_by(M, a))


def quotient_by(M: PresentedModule, a: IdealHandle) -> PresentedModule:
    from .quotient import quotient_by_ideal

    return quotient_by_ideal(M, a)


def is_unmixed(M: PresentedModule) -> bool:
    """No associated prime of the lift has codimension above codim M.

    Uses that the codim-i associated primes are witnessed by Ext^i against
    the polynomial ring having codimension exactly i.
    """
    if M.is_zero():
        raise DomainError("unmixedness of the zero module")
    S = M.ring.base
    c = codim(M)
    for i in range(c + 1, S.n + 1):
        E = ext_over_S(i, M)
        if E.rank == 0 or E.is_zero():
            continue
        if codim(E) <= i:
            return False
    return True


def is_cm(M: PresentedModule) -> bool:
    return not M.is_zero() and krull_dim(M) == depth(M)


def profile(M: PresentedModule) -> HomologicalProfile:
    d = krull_dim(M)
    dep = depth(M)
    ring_dim = krull_dim(M.ring.regular_module())
    flags = {
        "cm": d == dep,
        "mcm": dep == ring_dim,
        "artinian": d == 0,
        "unmixed": is_unmixed(M),
    }
    return HomologicalProfile(dim=d, depth=dep, codim=M.ring.base.n - d, flags=flags)


# ---------------------------------------------------------------------------
# canonical module, Gorenstein, G-dimension, injective dimension


def canonical_module(R: QuotientRing) -> PresentedModule:
    """Ext^codim over S of R, presented minimally as an R-module."""
    if "canonical" in R._cache:
        return R._cache["canonical"]
    reg = R.regular_module()
    d = krull_dim(reg)
    if d != depth(reg):
        raise DomainError("canonical module requires a Cohen-Macaulay ring")
    c = R.base.n - d
    omega = ext_over_S(c, reg, result_ring=R).minimal_presentation()
    # sanity: maximal Cohen-Macaulay with support equal to Spec R
    if krull_dim(omega) != d or depth(omega) != d:
        raise EngineError("canonical module is not maximal Cohen-Macaulay")
    if not omega.annihilator().radical_equals(IdealHandle(R, [])):
        raise EngineError("canonical module support differs from Spec R")
    R._cache["canonical"] = omega
    return omega


def is_gorenstein(R: QuotientRing) -> bool:
    if "gorenstein" in R._cache:
        return R._cache["gorenstein"]
    reg = R.regular_module()
    out = False
    if krull_dim(reg) == depth(reg):
        omega = canonical_module(R)
        out = omega.rank == 1 and omega.annihilator() == IdealHandle(R, [])
    R._cache["gorenstein"] = out
    return out


def gdim_report(A: PresentedModule, window: int | None = None) -> dict:
    """Gorenstein dimension: exact over a Gorenstein ring, else a window scan."""
    R = A.ring
    window = window if window is not None else default_window(R)
    if A.is_zero():
        raise DomainError("G-dimension of the zero module")
    if is_gorenstein(R):
        value = depth(R.regular_module()) - depth(A)
        return {"status": "exact", "value": value, "window": None}
    reg = R.regular_module()
    bound = None
    for i in range(window + 1):
        if not ext_is_zero(i, A, reg, window=window + 1):
            bound = i
    return {"status": "inconclusive", "value": None, "bound": bound, "window": window}


def injdim_report(M: PresentedModule, window: int | None = None) -> dict:
    """Injective dimension by scanning Ext^i(k, M); exact only when a long
    vanishing tail (dim R + 1 zeros) is observed inside the window."""
    R = M.ring
    window = window if window is not None else default_window(R)
    if M.is_zero():
        raise DomainError("injective dimension of the zero module")
    k = R.residue_field()
    last = None
    for i in range(window + 1):
        if not ext_is_zero(i, k, M, window=window + 1):
            last = i
    ring_dim = krull_dim(R.regular_module())
    if last is not None and window - last >= ring_dim + 1:
        return {"status": "exact", "value": last, "window": window}
    return {"status": "inconclusive", "value": None, "bound": last, "window": window}


# ---------------------------------------------------------------------------
# independent search path for grade (used as a cross-check)


def grade_by_regular_search(a: IdealHandle, M: PresentedModule, seed: int = 0, tries: int = 60) -> int:
    """Greedy maximal regular sequence inside a, built from random combinations."""
    from .quotient import colon_module, submodule_equal

    ring = M.ring
    S = ring.base
    rng = random.Random(seed)
    pool = list(a.gens)
    if not pool:
        return 0
    seq = []
    prefix = M.zero_submodule()
    while True:
        found = None
        for _ in range(tries):
            cand = S.zero()
            for g in pool:
                c = rng.randrange(S.p)
                if c == 0:
                    continue
                deg = rng.choice([0, 0, 1])
                mult = S.one() if deg == 0 else S.var(rng.randrange(S.n))
                cand = cand + g * mult * c
            if cand.is_zero() or ring.nf(cand).is_zero():
                continue
            ide = IdealHandle(ring, [cand])
            col = colon_module(prefix, ide)
            if not submodule_equal(col, prefix):
                continue
            nxt = IdealHandle(ring, [q for q in (seq + [cand])])
            if not is_proper(nxt, M):
                continue
            found = cand
            break
        if found is None:
            return len(seq)
        seq.append(found)
        prefix = scalar_module(IdealHandle(ring, seq), M)
