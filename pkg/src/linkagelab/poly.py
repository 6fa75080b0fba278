"""Exact arithmetic: prime fields, monomials, orders, polynomials, free vectors.

Monomials are exponent tuples, polynomials map monomials to nonzero residues
in [1, p), and free-module vectors map (component, monomial) pairs to
residues.  All values are treated as immutable once built.
"""

from __future__ import annotations

import re

from .errors import DomainError, StructuralError

EXP_LIMIT = 1 << 16
CHAR_LIMIT = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class PrimeField:
    """Arithmetic on residues mod a prime p, 2 <= p < 2**16."""

    def __init__(self, p: int):
        if not (2 <= p < CHAR_LIMIT) or not is_prime(p):
            raise StructuralError(f"characteristic must be prime and < 2^16, got {p}")
        self.p = p

    def element(self, v: int) -> int:
        return v % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise DomainError("zero has no inverse")
        # Fermat: a^(p-2) inverts a
        return pow(a, self.p - 2, self.p)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def __eq__(self, other):
        return isinstance(other, PrimeField) and self.p == other.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


# ---------------------------------------------------------------------------
# monomials


def mono_mul(a: tuple, b: tuple) -> tuple:
    out = tuple(x + y for x, y in zip(a, b))
    for e in out:
        if e >= EXP_LIMIT:
            raise StructuralError("exponent overflow (>= 2^16)")
    return out


def mono_div(a: tuple, b: tuple):
    """Quotient a/b, or None if b does not divide a."""
    out = []
    for x, y in zip(a, b):
        if x < y:
            return None
        out.append(x - y)
    return tuple(out)


def mono_lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_deg(a: tuple) -> int:
    return sum(a)


def mono_disjoint(a: tuple, b: tuple) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# monomial orders (larger key = larger monomial)


class Grevlex:
    kind = "grevlex"

    @staticmethod
    def key(m: tuple):
        return (sum(m), tuple(-e for e in reversed(m)))

    def __eq__(self, other):
        return getattr(other, "kind", None) == "grevlex"

    def __hash__(self):
        return hash("grevlex")

    def __repr__(self):
        return "grevlex"


class Lex:
    kind = "lex"

    @staticmethod
    def key(m: tuple):
        return (0, m)

    def __eq__(self, other):
        return getattr(other, "kind", None) == "lex"

    def __hash__(self):
        return hash("lex")

    def __repr__(self):
        return "lex"


class ElimBlock:
    """Eliminates the last `tail` variables: that block always dominates."""

    kind = "elim"

    def __init__(self, tail: int, inner=None):
        self.tail = tail
        self.inner = inner or Grevlex()

    def key(self, m: tuple):
        cut = len(m) - self.tail
        return (self.inner.key(m[cut:]), self.inner.key(m[:cut]))

    def __eq__(self, other):
        return (
            getattr(other, "kind", None) == "elim"
            and other.tail == self.tail
            and other.inner == self.inner
        )

    def __hash__(self):
        return hash(("elim", self.tail))

    def __repr__(self):
        return f"elim({self.tail})"


def make_order(kind: str, tail: int = 0):
    if kind == "grevlex":
        return Grevlex()
    if kind == "lex":
        return Lex()
    if kind == "elim":
        return ElimBlock(tail)
    raise StructuralError(f"unknown monomial order {kind!r}")


def compare(m1: tuple, m2: tuple, order) -> str:
    """Compare two monomials; returns 'LT', 'EQ' or 'GT'."""
    if len(m1) != len(m2):
        raise StructuralError("monomials have different variable counts")
    k1, k2 = order.key(m1), order.key(m2)
    if k1 < k2:
        return "LT"
    if k1 > k2:
        return "GT"
    return "EQ"


# module orders: keys on (component, monomial) pairs


class POT:
    """Position over term, lower component index greater."""

    kind = "pot"

    def __init__(self, ring_order):
        self.ring_order = ring_order

    def key(self, comp: int, m: tuple):
        return (0, -comp, self.ring_order.key(m))

    def __eq__(self, other):
        return getattr(other, "kind", None) == "pot" and other.ring_order == self.ring_order

    def __hash__(self):
        return hash(("pot", self.ring_order))


class TOP:
    """Term over position; ties broken toward lower component."""

    kind = "top"

    def __init__(self, ring_order):
        self.ring_order = ring_order

    def key(self, comp: int, m: tuple):
        return (0, self.ring_order.key(m), -comp)

    def __eq__(self, other):
        return getattr(other, "kind", None) == "top" and other.ring_order == self.ring_order

    def __hash__(self):
        return hash(("top", self.ring_order))


class POTBlock:
    """Components below `split` dominate all components above it.

    Used to read syzygies off a basis of an augmented module: leading term in
    the upper block forces the whole vector into the upper block.
    """

    kind = "potblock"

    def __init__(self, split: int, ring_order):
        self.split = split
        self.ring_order = ring_order

    def key(self, comp: int, m: tuple):
        return (1 if comp < self.split else 0, self.ring_order.key(m), -comp)

    def __eq__(self, other):
        return (
            getattr(other, "kind", None) == "potblock"
            and other.split == self.split
            and other.ring_order == self.ring_order
        )

    def __hash__(self):
        return hash(("potblock", self.split, self.ring_order))


class Schreyer:
    """Order induced by leading terms of a basis at the previous level."""

    kind = "schreyer"

    def __init__(self, base_lts, base_order):
        # base_lts: list of (component, monomial) leading terms
        self.base_lts = tuple(base_lts)
        self.base_order = base_order

    def key(self, comp: int, m: tuple):
        c0, m0 = self.base_lts[comp]
        return (self.base_order.key(c0, mono_mul(m, m0)), -comp)


# ---------------------------------------------------------------------------
# ring, polynomials, vectors


class Ring:
    """A polynomial ring F_p[x1..xn] with a fixed monomial order."""

    def __init__(self, char: int, variables, order=None, degree_cap: int = 64):
        self.field = PrimeField(char)
        self.p = char
        self.vars = tuple(variables)
        if len(set(self.vars)) != len(self.vars):
            raise StructuralError("duplicate variable names")
        self.n = len(self.vars)
        self.order = order or Grevlex()
        self.degree_cap = degree_cap
        self.zero_mono = (0,) * self.n

    def __eq__(self, other):
        return (
            isinstance(other, Ring)
            and self.p == other.p
            and self.vars == other.vars
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.p, self.vars, self.order))

    def __repr__(self):
        return f"F{self.p}[{','.join(self.vars)}]"

    # construction helpers

    def poly(self, terms) -> "Poly":
        """Build a polynomial from an iterable of (monomial, coeff)."""
        acc = {}
        for mono, c in terms:
            c = c % self.p
            if c == 0:
                continue
            if len(mono) != self.n:
                raise StructuralError("monomial length does not match ring")
            acc[mono] = (acc.get(mono, 0) + c) % self.p
        return Poly(self, {m: c for m, c in acc.items() if c})

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return Poly(self, {self.zero_mono: 1})

    def constant(self, c: int) -> "Poly":
        c = c % self.p
        return Poly(self, {self.zero_mono: c} if c else {})

    def var(self, i: int) -> "Poly":
        mono = tuple(1 if j == i else 0 for j in range(self.n))
        return Poly(self, {mono: 1})

    def monomial(self, mono: tuple, coeff: int = 1) -> "Poly":
        return self.poly([(mono, coeff)])

    def gens(self):
        return [self.var(i) for i in range(self.n)]

    def with_extra_vars(self, names) -> "Ring":
        return Ring(self.p, self.vars + tuple(names), self.order, self.degree_cap)

    def fresh_names(self, base: str, k: int):
        out, i = [], 0
        while len(out) < k:
            cand = f"{base}{i}"
            if cand not in self.vars:
                out.append(cand)
            i += 1
        return out

    # text form (terms joined by +/-, '*'-separated powers)

    def parse_poly(self, text: str) -> "Poly":
        return _parse_poly(self, text)

    def format_poly(self, f: "Poly") -> str:
        return _format_poly(f)


class Poly:
    """Multivariate polynomial in canonical dict form."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree, -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(mono_deg(m) for m in self.terms)

    def constant_coeff(self) -> int:
        return self.terms.get(self.ring.zero_mono, 0)

    def is_constant(self) -> bool:
        return all(mono_deg(m) == 0 for m in self.terms)

    def lt(self, order=None):
        """Leading (coeff, monomial) under the given or ring order."""
        if not self.terms:
            raise DomainError("zero polynomial has no leading term")
        order = order or self.ring.order
        m = max(self.terms, key=order.key)
        return (self.terms[m], m)

    def _check(self, other):
        if self.ring != other.ring:
            raise StructuralError("polynomials from different rings")

    def __add__(self, other):
        self._check(other)
        p = self.ring.p
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = (out.get(m, 0) + c) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Poly(self.ring, out)

    def __sub__(self, other):
        self._check(other)
        p = self.ring.p
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = (out.get(m, 0) - c) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Poly(self.ring, out)

    def __neg__(self):
        p = self.ring.p
        return Poly(self.ring, {m: (-c) % p for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            c = other % self.ring.p
            if c == 0:
                return self.ring.zero()
            return Poly(self.ring, {m: (v * c) % self.ring.p for m, v in self.terms.items()})
        self._check(other)
        p = self.ring.p
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                v = (out.get(m, 0) + c1 * c2) % p
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def term_mul(self, coeff: int, mono: tuple) -> "Poly":
        p = self.ring.p
        coeff = coeff % p
        if coeff == 0:
            return self.ring.zero()
        return Poly(self.ring, {mono_mul(m, mono): (c * coeff) % p for m, c in self.terms.items()})

    def monic(self, order=None) -> "Poly":
        if self.is_zero():
            return self
        c, _ = self.lt(order)
        return self * self.ring.field.inv(c)

    def __eq__(self, other):
        return (
            isinstance(other, Poly) and self.ring == other.ring and self.terms == other.terms
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return _format_poly(self)


def poly_arith(f: Poly, g: Poly, op: str) -> Poly:
    if f.ring != g.ring:
        raise StructuralError("polynomials from different rings")
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise StructuralError(f"unknown operation {op!r}")


def leading_term(f: Poly, order=None):
    return f.lt(order)


class Vec:
    """Element of a free module S^rank, stored as {(component, monomial): coeff}."""

    __slots__ = ("ring", "rank", "terms", "_hash")

    def __init__(self, ring: Ring, rank: int, terms: dict):
        self.ring = ring
        self.rank = rank
        self.terms = terms
        self._hash = None

    @classmethod
    def from_polys(cls, ring: Ring, polys) -> "Vec":
        terms = {}
        for i, f in enumerate(polys):
            for m, c in f.terms.items():
                terms[(i, m)] = c
        return cls(ring, len(polys), terms)

    @classmethod
    def unit(cls, ring: Ring, rank: int, comp: int) -> "Vec":
        return cls(ring, rank, {(comp, ring.zero_mono): 1})

    @classmethod
    def from_poly(cls, ring: Ring, f: Poly, rank: int = 1, comp: int = 0) -> "Vec":
        return cls(ring, rank, {(comp, m): c for m, c in f.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def component(self, i: int) -> Poly:
        return Poly(self.ring, {m: c for (j, m), c in self.terms.items() if j == i})

    def components(self):
        return [self.component(i) for i in range(self.rank)]

    def lt(self, order):
        if not self.terms:
            raise DomainError("zero vector has no leading term")
        cm = max(self.terms, key=lambda t: order.key(t[0], t[1]))
        return (self.terms[cm], cm[0], cm[1])

    def _check(self, other):
        if self.ring != other.ring or self.rank != other.rank:
            raise StructuralError("vectors from different modules")

    def __add__(self, other):
        self._check(other)
        p = self.ring.p
        out = dict(self.terms)
        for t, c in other.terms.items():
            v = (out.get(t, 0) + c) % p
            if v:
                out[t] = v
            else:
                out.pop(t, None)
        return Vec(self.ring, self.rank, out)

    def __sub__(self, other):
        self._check(other)
        p = self.ring.p
        out = dict(self.terms)
        for t, c in other.terms.items():
            v = (out.get(t, 0) - c) % p
            if v:
                out[t] = v
            else:
                out.pop(t, None)
        return Vec(self.ring, self.rank, out)

    def __neg__(self):
        p = self.ring.p
        return Vec(self.ring, self.rank, {t: (-c) % p for t, c in self.terms.items()})

    def term_mul(self, coeff: int, mono: tuple) -> "Vec":
        p = self.ring.p
        coeff = coeff % p
        if coeff == 0:
            return Vec(self.ring, self.rank, {})
        return Vec(
            self.ring,
            self.rank,
            {(i, mono_mul(m, mono)): (c * coeff) % p for (i, m), c in self.terms.items()},
        )

    def poly_mul(self, f: Poly) -> "Vec":
        out = Vec(self.ring, self.rank, {})
        for m, c in f.terms.items():
            out = out + self.term_mul(c, m)
        return out

    def monic(self, order) -> "Vec":
        if self.is_zero():
            return self
        c, _, _ = self.lt(order)
        inv = self.ring.field.inv(c)
        p = self.ring.p
        return Vec(self.ring, self.rank, {t: (v * inv) % p for t, v in self.terms.items()})

    def max_degree(self) -> int:
        if not self.terms:
            return -1
        return max(mono_deg(m) for _, m in self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, Vec)
            and self.ring == other.ring
            and self.rank == other.rank
            and self.terms == other.terms
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.rank, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return "[" + ", ".join(_format_poly(f) for f in self.components()) + "]"


# ---------------------------------------------------------------------------
# ring extension / restriction maps (tag variables)


def embed_poly(f: Poly, big: Ring) -> Poly:
    pad = big.n - f.ring.n
    return Poly(big, {m + (0,) * pad: c for m, c in f.terms.items()})


def project_poly(f: Poly, small: Ring) -> Poly:
    n = small.n
    out = {}
    for m, c in f.terms.items():
        if any(e for e in m[n:]):
            raise StructuralError("polynomial involves eliminated variables")
        out[m[:n]] = c
    return Poly(small, out)


def embed_vec(v: Vec, big: Ring) -> Vec:
    pad = big.n - v.ring.n
    return Vec(big, v.rank, {(i, m + (0,) * pad): c for (i, m), c in v.terms.items()})


def project_vec(v: Vec, small: Ring) -> Vec:
    n = small.n
    out = {}
    for (i, m), c in v.terms.items():
        if any(e for e in m[n:]):
            raise StructuralError("vector involves eliminated variables")
        out[(i, m[:n])] = c
    return Vec(small, v.rank, out)


# ---------------------------------------------------------------------------
# polynomial text grammar: terms joined by +/-, '*'-separated powers x^k

_TOKEN = re.compile(r"\s*([A-Za-z_][A-Za-z_0-9]*|\d+|[\^\*\+\-])")


def _tokenize_poly(text: str):
    pos, out = 0, []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise StructuralError(f"bad character in polynomial: {text[pos:].strip()[0]!r}")
            break
        out.append(m.group(1))
        pos = m.end()
    return out


def _parse_poly(ring: Ring, text: str) -> Poly:
    toks = _tokenize_poly(text)
    if not toks:
        raise StructuralError("empty polynomial")
    terms = []
    i = 0
    sign = 1
    if toks[i] in "+-":
        sign = -1 if toks[i] == "-" else 1
        i += 1
    while True:
        coeff = 1
        exps = [0] * ring.n
        saw_factor = False
        expect_factor = True
        while i < len(toks) and toks[i] not in "+-":
            tok = toks[i]
            if tok == "*":
                if not saw_factor:
                    raise StructuralError("misplaced '*' in polynomial")
                expect_factor = True
                i += 1
                continue
            if not expect_factor:
                raise StructuralError(f"missing '*' before {tok!r} in polynomial")
            if tok.isdigit():
                coeff = coeff * int(tok)
                i += 1
            else:
                if tok not in ring.vars:
                    raise StructuralError(f"unknown variable {tok!r}")
                vi = ring.vars.index(tok)
                e = 1
                i += 1
                if i < len(toks) and toks[i] == "^":
                    i += 1
                    if i >= len(toks) or not toks[i].isdigit():
                        raise StructuralError("expected integer exponent after '^'")
                    e = int(toks[i])
                    i += 1
                if exps[vi] + e >= EXP_LIMIT:
                    raise StructuralError("exponent overflow (>= 2^16)")
                exps[vi] += e
            saw_factor = True
            expect_factor = False
        if not saw_factor:
            raise StructuralError("empty term in polynomial")
        terms.append((tuple(exps), sign * coeff))
        if i >= len(toks):
            break
        sign = -1 if toks[i] == "-" else 1
        i += 1
    return ring.poly(terms)


def _format_poly(f: Poly) -> str:
    if f.is_zero():
        return "0"
    ring = f.ring
    monos = sorted(f.terms, key=ring.order.key, reverse=True)
    parts = []
    for m in monos:
        c = f.terms[m]
        factors = []
        if c != 1 or mono_deg(m) == 0:
            factors.append(str(c))
        for i, e in enumerate(m):
            if e == 1:
                factors.append(ring.vars[i])
            elif e > 1:
                factors.append(f"{ring.vars[i]}^{e}")
        parts.append("*".join(factors))
    return " + ".join(parts)
