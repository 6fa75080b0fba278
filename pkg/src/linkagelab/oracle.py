"""Brute-force ground truth on Artinian quotients that are finite sets.

A Groebner basis is consumed only to build the standard-monomial basis and
the action tables; every semantic answer (membership, colon, linkage,
associated primes) is computed by enumeration and F_p linear algebra, so the
oracle stays independent of the engine's colon/equality paths.
"""

from __future__ import annotations

import itertools

from .errors import DomainError, ResourceError
from .groebner import GroebnerBasis, ideal_gb
from .poly import Poly, Ring, Vec, mono_div, mono_mul

SIZE_CAP = 1 << 20


class Span:
    """Row-reduced F_p span of coordinate vectors, with canonical basis."""

    def __init__(self, p: int, dim: int, vectors=()):
        self.p = p
        self.dim = dim
        self.rows = {}  # pivot index -> reduced row (tuple)
        for v in vectors:
            self.add(v)

    def _reduce(self, v):
        p = self.p
        v = list(v)
        for piv in sorted(self.rows):
            if v[piv]:
                c = v[piv]
                row = self.rows[piv]
                for i in range(piv, self.dim):
                    v[i] = (v[i] - c * row[i]) % p
        return v

    def add(self, v) -> bool:
        """Insert a vector; returns True if it enlarged the span."""
        v = self._reduce(v)
        piv = next((i for i, c in enumerate(v) if c), None)
        if piv is None:
            return False
        inv = pow(v[piv], self.p - 2, self.p)
        row = tuple((c * inv) % self.p for c in v)
        self.rows[piv] = row
        # back-substitute to keep rows fully reduced
        for q, other in list(self.rows.items()):
            if q == piv:
                continue
            c = other[piv]
            if c:
                self.rows[q] = tuple(
                    (o - c * r) % self.p for o, r in zip(other, row)
                )
        return True

    def contains(self, v) -> bool:
        return all(c == 0 for c in self._reduce(v))

    def rank(self) -> int:
        return len(self.rows)

    def basis(self):
        return tuple(self.rows[piv] for piv in sorted(self.rows))

    def elements(self):
        """Every element of the span (respecting the global size cap)."""
        rows = self.basis()
        if self.p ** len(rows) > SIZE_CAP:
            raise ResourceError("span too large to enumerate")
        for coeffs in itertools.product(range(self.p), repeat=len(rows)):
            v = [0] * self.dim
            for c, row in zip(coeffs, rows):
                if c:
                    for i, r in enumerate(row):
                        v[i] = (v[i] + c * r) % self.p
            yield tuple(v)

    def __eq__(self, other):
        return (
            isinstance(other, Span)
            and self.p == other.p
            and self.dim == other.dim
            and self.basis() == other.basis()
        )

    def __hash__(self):
        return hash((self.p, self.dim, self.basis()))


class FiniteModule:
    """F_p-basis of an Artinian quotient of S^rank plus variable action tables."""

    def __init__(self, ring: Ring, rank: int, gb: GroebnerBasis):
        self.ring = ring
        self.rank = rank
        self.gb = gb
        lts = [(c, m) for (_, c, m) in gb.lts]
        basis = []
        for comp in range(rank):
            baskets = [m for (c, m) in lts if c == comp]
            # finiteness needs a pure power of every variable in the leading terms
            for v in range(ring.n):
                if not any(
                    m[v] > 0 and all(e == 0 for i, e in enumerate(m) if i != v)
                    for m in baskets
                ):
                    raise DomainError("quotient is not Artinian in every component")
        bound = [0] * ring.n
        for _, m in lts:
            for v in range(ring.n):
                bound[v] = max(bound[v], m[v])
        for comp in range(rank):
            for m in itertools.product(*(range(b + 1) for b in bound)):
                if not any(
                    c == comp and mono_div(m, mm) is not None for (c, mm) in lts
                ):
                    basis.append((comp, m))
        basis.sort()
        self.basis = basis
        self.index = {bm: i for i, bm in enumerate(basis)}
        self.dimension = len(basis)
        # the p^d <= 2^20 cap gates enumeration (all_elements), not spans
        if self.dimension > 64:
            raise ResourceError("finite module basis too large")
        self.actions = [self._action_matrix(v) for v in range(ring.n)]

    def _action_matrix(self, var: int):
        cols = []
        S = self.ring
        shift = tuple(1 if i == var else 0 for i in range(S.n))
        for comp, m in self.basis:
            moved = Vec(S, self.rank, {(comp, mono_mul(m, shift)): 1})
            cols.append(self.coords(moved))
        return cols

    def coords(self, v: Vec):
        """Coordinates of the class of v in the standard basis (uses the GB)."""
        nf = self.gb.normal_form(v)
        out = [0] * self.dimension
        for (comp, m), c in nf.terms.items():
            out[self.index[(comp, m)]] = c
        return tuple(out)

    def poly_action(self, f: Poly):
        """Matrix of multiplication by f as columns over the basis."""
        p = self.ring.p
        cols = [[0] * self.dimension for _ in range(self.dimension)]
        for mono, coeff in f.terms.items():
            vecs = [self._apply_mono(j, mono) for j in range(self.dimension)]
            for j, w in enumerate(vecs):
                col = cols[j]
                for i, c in enumerate(w):
                    col[i] = (col[i] + coeff * c) % p
        return [tuple(c) for c in cols]

    def _apply_mono(self, j: int, mono: tuple):
        vec = [0] * self.dimension
        vec[j] = 1
        for v, e in enumerate(mono):
            for _ in range(e):
                vec = self._apply_matrix(self.actions[v], vec)
        return vec

    def _apply_matrix(self, cols, vec):
        p = self.ring.p
        out = [0] * self.dimension
        for j, c in enumerate(vec):
            if c:
                col = cols[j]
                for i, a in enumerate(col):
                    if a:
                        out[i] = (out[i] + c * a) % p
        return out

    def apply_poly(self, f: Poly, coords):
        return tuple(self._apply_matrix(self.poly_action(f), list(coords)))

    def all_elements(self):
        if self.ring.p ** self.dimension > SIZE_CAP:
            raise ResourceError("finite module exceeds the size cap")
        return itertools.product(range(self.ring.p), repeat=self.dimension)

    def submodule_span(self, gens_coords) -> Span:
        """F_p-span of the S-submodule generated by the given elements."""
        span = Span(self.ring.p, self.dimension)
        work = [tuple(g) for g in gens_coords]
        while work:
            v = work.pop()
            if span.add(v):
                for act in self.actions:
                    work.append(tuple(self._apply_matrix(act, list(v))))
        return span

    def validate(self, spot_checks: bool = True) -> bool:
        """Defining relations annihilate; variable actions commute."""
        for g in self.gb.elements:
            if any(c for c in self.coords(g)):
                return False
        if spot_checks:
            for a in range(self.ring.n):
                for b in range(a):
                    for j in range(self.dimension):
                        e = [0] * self.dimension
                        e[j] = 1
                        ab = self._apply_matrix(self.actions[a], self._apply_matrix(self.actions[b], e))
                        ba = self._apply_matrix(self.actions[b], self._apply_matrix(self.actions[a], e))
                        if ab != ba:
                            return False
        return True


class FiniteAlgebra(FiniteModule):
    """Artinian quotient algebra with an explicit multiplication table."""

    def __init__(self, ring: Ring, gb: GroebnerBasis):
        super().__init__(ring, 1, gb)
        self.table = {}
        for i, (_, mi) in enumerate(self.basis):
            for j, (_, mj) in enumerate(self.basis):
                prod = Vec(ring, 1, {(0, mono_mul(mi, mj)): 1})
                self.table[(i, j)] = self.coords(prod)

    @classmethod
    def from_ideal(cls, ring: Ring, gens) -> "FiniteAlgebra":
        return cls(ring, ideal_gb(ring, gens))

    def multiply(self, u, v):
        p = self.ring.p
        out = [0] * self.dimension
        for i, ci in enumerate(u):
            if not ci:
                continue
            for j, cj in enumerate(v):
                if not cj:
                    continue
                for k, ck in enumerate(self.table[(i, j)]):
                    if ck:
                        out[k] = (out[k] + ci * cj * ck) % p
        return tuple(out)

    def one(self):
        return self.coords(Vec(self.ring, 1, {(0, self.ring.zero_mono): 1}))

    def validate_algebra(self) -> bool:
        """Closure is tautological; spot-check associativity for small tables."""
        if not self.validate():
            return False
        if self.dimension <= 8:
            elems = [tuple(e) for e in self._unit_vectors()]
            for a in elems:
                for b in elems:
                    ab = self.multiply(a, b)
                    for c in elems:
                        if self.multiply(ab, c) != self.multiply(a, self.multiply(b, c)):
                            return False
        return True

    def _unit_vectors(self):
        for j in range(self.dimension):
            e = [0] * self.dimension
            e[j] = 1
            yield tuple(e)


# ---------------------------------------------------------------------------
# oracle operations (enumeration only from here on)


def oracle_colon(M: FiniteModule, n_span: Span, ideal_polys) -> Span:
    """{m in M : g*m in N for every generator g}, found by full enumeration."""
    mats = [M.poly_action(f) for f in ideal_polys]
    hits = []
    for m in M.all_elements():
        vec = list(m)
        if all(n_span.contains(M._apply_matrix(a, vec)) for a in mats):
            hits.append(m)
    return Span(M.ring.p, M.dimension, hits)


def oracle_scalar_span(M: FiniteModule, ideal_polys) -> Span:
    """Span of a*M from the action matrices' columns."""
    cols = []
    for f in ideal_polys:
        cols.extend(M.poly_action(f))
    return M.submodule_span(cols)


def oracle_regular_sequence(M: FiniteModule, seq_polys):
    """Injectivity of each multiplication on the successive quotients."""
    p = M.ring.p
    prefix = Span(p, M.dimension)
    for idx, f in enumerate(seq_polys):
        mat = M.poly_action(f)
        for m in M.all_elements():
            vec = list(m)
            if prefix.contains(vec):
                continue
            if prefix.contains(M._apply_matrix(mat, vec)):
                return (False, idx)
        prefix = oracle_scalar_span(M, seq_polys[: idx + 1])
        if prefix.rank() == M.dimension:
            return (False, len(seq_polys))
    return (True, None)


def oracle_is_linked(M: FiniteModule, a_polys, b_polys, i_polys) -> dict:
    """Literal check of the linkage definition by set comparisons."""
    full = M.dimension
    am = oracle_scalar_span(M, a_polys)
    bm = oracle_scalar_span(M, b_polys)
    im = oracle_scalar_span(M, i_polys) if i_polys else Span(M.ring.p, full)
    report = {
        "proper_a": am.rank() < full,
        "proper_b": bm.rank() < full,
        "regular_sequence": True,
        "failure_index": None,
    }
    if i_polys:
        ok, idx = oracle_regular_sequence(M, i_polys)
        report["regular_sequence"] = ok
        report["failure_index"] = idx
    if not (report["proper_a"] and report["proper_b"] and report["regular_sequence"]):
        report["verdict"] = "hypotheses-failed"
        return report
    colon_a = oracle_colon(M, im, a_polys)
    colon_b = oracle_colon(M, im, b_polys)
    report["colon_a"] = colon_a == bm
    report["colon_b"] = colon_b == am
    report["verdict"] = "linked" if (report["colon_a"] and report["colon_b"]) else "not-linked"
    return report


def oracle_ass(M: FiniteModule, algebra: FiniteAlgebra) -> set:
    """{Ann(m) : m in M, Ann(m) prime}, annihilators as algebra subspans."""
    p = M.ring.p
    if p ** (2 * algebra.dimension) > SIZE_CAP:
        raise ResourceError("algebra too large for primality enumeration")
    algebra_elems = [tuple(e) for e in algebra.all_elements()]
    seen = {}
    for m in M.all_elements():
        if all(c == 0 for c in m):
            continue
        ann = _annihilator_span(M, algebra, m)
        key = ann.basis()
        if key not in seen:
            seen[key] = ann
    out = set()
    for ann in seen.values():
        if ann.rank() == algebra.dimension:
            continue  # annihilator of 0 only
        if _span_is_prime(algebra, ann, algebra_elems):
            out.add(ann)
    return out


def _annihilator_span(M: FiniteModule, algebra: FiniteAlgebra, m) -> Span:
    """Kernel of r -> r*m as a subspan of the algebra."""
    p = M.ring.p
    kernel = Span(p, algebra.dimension)
    combos = {}
    for j, (_, mono) in enumerate(algebra.basis):
        vec = list(m)
        for v, e in enumerate(mono):
            for _ in range(e):
                vec = M._apply_matrix(M.actions[v], vec)
        combos[j] = tuple(vec)
    # incremental kernel: reduce each image against the span with tracking
    track = []
    rows = []
    for j in range(algebra.dimension):
        vec = list(combos[j])
        coeffs = [0] * algebra.dimension
        coeffs[j] = 1
        for piv, row, comb in rows:
            c = vec[piv]
            if c:
                for i in range(M.dimension):
                    vec[i] = (vec[i] - c * row[i]) % p
                for i in range(algebra.dimension):
                    coeffs[i] = (coeffs[i] - c * comb[i]) % p
        piv = next((i for i, c in enumerate(vec) if c), None)
        if piv is None:
            kernel.add(coeffs)
        else:
            inv = pow(vec[piv], p - 2, p)
            rows.append(
                (
                    piv,
                    tuple((c * inv) % p for c in vec),
                    tuple((c * inv) % p for c in coeffs),
                )
            )
    return kernel


def _span_is_prime(algebra: FiniteAlgebra, ann: Span, algebra_elems) -> bool:
    for u in algebra_elems:
        if ann.contains(u):
            continue
        for v in algebra_elems:
            if ann.contains(v):
                continue
            if ann.contains(algebra.multiply(u, v)):
                return False
    return True


def variable_prime_span(algebra: FiniteAlgebra, variables) -> Span:
    """The image in the algebra of the prime generated by the given variables."""
    cols = []
    for v in variables:
        cols.extend(algebra.actions[v])
    return algebra.submodule_span(cols)


def double_annihilator_check(algebra: FiniteAlgebra, ideal_polys) -> bool:
    """0 : (0 : c) equals c, checked literally by enumeration."""
    c_span = oracle_scalar_span(algebra, ideal_polys)
    zero = Span(algebra.ring.p, algebra.dimension)
    # 0 : c by enumeration over the algebra
    first = []
    for m in algebra.all_elements():
        vec = list(m)
        if all(
            zero.contains(algebra.multiply(tuple(vec), b))
            for b in c_span.basis()
        ):
            first.append(tuple(vec))
    first_span = Span(algebra.ring.p, algebra.dimension, first)
    second = []
    for m in algebra.all_elements():
        if all(
            zero.contains(algebra.multiply(tuple(m), b))
            for b in first_span.basis()
        ):
            second.append(tuple(m))
    return Span(algebra.ring.p, algebra.dimension, second) == c_span
