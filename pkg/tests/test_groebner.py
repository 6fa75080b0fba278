import itertools
import random

import pytest

from linkagelab.errors import DomainError, ResourceError
from linkagelab.groebner import (
    SubmoduleGens,
    buchberger,
    colon_by_ideal,
    divide_exact,
    eliminate,
    ideal_gb,
    intersect,
    radical_contains,
    schreyer_syzygies,
    syzygies_mod,
)
from linkagelab.poly import POT, Ring, Vec


def pv(S, text):
    return Vec.from_poly(S, S.parse_poly(text))


def gens_of(S, *texts):
    return SubmoduleGens(S, 1, [pv(S, t) for t in texts])


def test_normal_form_examples():
    S = Ring(2, ("x", "y"))
    G = ideal_gb(S, [S.parse_poly("x^2")])
    assert G.normal_form(pv(S, "x^2*y")).is_zero()
    Gx = ideal_gb(S, [S.parse_poly("x")])
    assert Gx.normal_form(pv(S, "x*y + y")) == pv(S, "y")
    Gxy = ideal_gb(S, [S.parse_poly("x + y")])
    assert Gxy.normal_form(pv(S, "x^3 + y^3")).is_zero()


def test_buchberger_examples():
    S = Ring(2, ("x", "y"))
    G = buchberger(gens_of(S, "x^2", "x*y"))
    assert [g.component(0) for g in G.elements] == [
        S.parse_poly("x^2"),
        S.parse_poly("x*y"),
    ]
    G1 = buchberger(gens_of(S, "1", "x^2 + y"))
    assert G1.is_unit_ideal()


def test_twisted_cubic_membership():
    # lex with z > y > x comes from listing the variables in that order
    S = Ring(5, ("z", "y", "x"))
    from linkagelab.poly import Lex

    S.order = Lex()
    gens = [S.parse_poly("y - x^2"), S.parse_poly("z - x^3")]
    G = ideal_gb(S, gens)
    assert G.contains_poly(S.parse_poly("y^3 - z^2"))
    # cross-check in an Artinian image by enumeration
    from linkagelab.oracle import FiniteAlgebra, oracle_scalar_span

    St = Ring(5, ("z", "y", "x"))
    trunc = [St.parse_poly(t) for t in ("y - x^2", "z - x^3", "x^4")]
    A = FiniteAlgebra.from_ideal(St, trunc)
    span = oracle_scalar_span(A, [A.ring.one()])
    target = A.coords(Vec.from_poly(St, St.parse_poly("y^3 - z^2")))
    assert all(c == 0 for c in target)  # the relation already vanishes there


def test_input_generators_reduce_to_zero():
    rng = random.Random(3)
    for p in (2, 3):
        S = Ring(p, ("x", "y"))
        for _ in range(20):
            polys = [
                S.poly(
                    [
                        (tuple(rng.randrange(0, 3) for _ in range(2)), rng.randrange(1, p))
                        for _ in range(rng.randrange(1, 4))
                    ]
                )
                for _ in range(rng.randrange(1, 4))
            ]
            G = ideal_gb(S, polys)
            for f in polys:
                assert G.normal_form(Vec.from_poly(S, f)).is_zero()


def test_reduced_basis_unique_under_permutation():
    rng = random.Random(5)
    S = Ring(3, ("x", "y"))
    for _ in range(30):
        polys = [
            S.poly(
                [
                    (tuple(rng.randrange(0, 4) for _ in range(2)), rng.randrange(1, 3))
                    for _ in range(rng.randrange(1, 4))
                ]
            )
            for _ in range(3)
        ]
        base = ideal_gb(S, polys).elements
        for perm in itertools.permutations(polys):
            assert ideal_gb(S, list(perm)).elements == base


def test_module_basis_needs_cross_component_pair():
    # leading monomials are coprime but the vectors span more than the pair
    # of leading terms suggests; the coprimality shortcut must not fire here
    S = Ring(2, ("x", "y"))
    f = Vec(S, 2, {(0, (1, 0)): 1, (1, (0, 1)): 1})  # x*e0 + y*e1
    g = Vec(S, 2, {(0, (0, 1)): 1})  # y*e0
    G = buchberger([f, g], ring=S, rank=2)
    assert G.contains(Vec(S, 2, {(1, (0, 2)): 1}))  # y^2*e1


def test_syzygies_examples():
    S = Ring(2, ("x", "y"))
    G = ideal_gb(S, [S.parse_poly("x"), S.parse_poly("y")])
    syz = schreyer_syzygies(G)
    assert len(syz.gens) == 1
    # the Koszul relation: (y, -x) against the sorted basis
    combo = S.zero()
    for i in range(2):
        combo = combo + syz.gens[0].component(i) * G.elements[i].component(0)
    assert combo.is_zero()
    G1 = ideal_gb(S, [S.one()])
    assert schreyer_syzygies(G1).gens == []


def test_syzygies_generate_koszul_kernel():
    S = Ring(2, ("x", "y"))
    G = ideal_gb(S, [S.parse_poly("x^2"), S.parse_poly("x*y"), S.parse_poly("y^2")])
    syz = schreyer_syzygies(G)
    for s in syz.gens:
        total = S.zero()
        for i in range(3):
            total = total + s.component(i) * G.elements[i].component(0)
        assert total.is_zero()
    # the two Koszul-type syzygies lie in the span of the returned ones
    basis = buchberger(syz.gens, ring=S, rank=3)
    polys = [g.component(0) for g in G.elements]
    for i, j in ((0, 1), (1, 2), (0, 2)):
        v = Vec.from_polys(
            S,
            [
                polys[j] if k == i else (polys[i] if k == j else S.zero())
                for k in range(3)
            ],
        )
        assert basis.contains(v)


def test_kernel_elements_exhaust_in_truncation():
    # every pair (q1, q2) with q1*x + q2*y = 0 in F2[x,y]/(x^2,y^2) lies in the
    # span of the computed syzygies plus the truncation relations
    import itertools as it

    from linkagelab.oracle import FiniteAlgebra, FiniteModule
    from linkagelab.groebner import buchberger as bb

    S = Ring(2, ("x", "y"))
    syz = syzygies_mod(
        [pv(S, "x"), pv(S, "y")],
        [pv(S, "x^2"), pv(S, "y^2")],
        S,
        1,
    )
    A = FiniteAlgebra.from_ideal(S, [S.parse_poly("x^2"), S.parse_poly("y^2")])
    trunc_rows = [
        Vec.from_poly(S, S.parse_poly(t), rank=2, comp=c)
        for t in ("x^2", "y^2")
        for c in (0, 1)
    ]
    M2 = FiniteModule(S, 2, bb(trunc_rows, ring=S, rank=2))
    span = M2.submodule_span(
        [M2.coords(v) for v in syz] + [M2.coords(v) for v in trunc_rows]
    )

    def pair_coords(q1, q2):
        out = [0] * M2.dimension
        for j, c in enumerate(q1):
            out[M2.index[(0, A.basis[j][1])]] = c
        for j, c in enumerate(q2):
            out[M2.index[(1, A.basis[j][1])]] = c
        return out

    x_mat = A.poly_action(S.parse_poly("x"))
    y_mat = A.poly_action(S.parse_poly("y"))
    hits = 0
    for q1 in it.product(range(2), repeat=A.dimension):
        for q2 in it.product(range(2), repeat=A.dimension):
            img = [
                (a + b) % 2
                for a, b in zip(A._apply_matrix(x_mat, list(q1)), A._apply_matrix(y_mat, list(q2)))
            ]
            if any(img):
                continue
            hits += 1
            assert span.contains(pair_coords(q1, q2))
    assert hits > 4  # genuine kernel pairs were enumerated


def test_intersect_examples():
    S = Ring(2, ("x", "y"))
    out = intersect(gens_of(S, "x"), gens_of(S, "y"))
    assert [v.component(0) for v in out.gens] == [S.parse_poly("x*y")]
    n = gens_of(S, "x^2", "x*y + y^2")
    same = intersect(n, n)
    assert buchberger(same).elements == buchberger(n).elements
    S5 = Ring(5, ("x", "y"))
    meet = intersect(
        SubmoduleGens(S5, 1, [pv(S5, "x^2"), pv(S5, "x*y")]),
        SubmoduleGens(S5, 1, [pv(S5, "y^2")]),
    )
    got = buchberger(meet)
    assert [v.component(0) for v in got.elements] == [S5.parse_poly("x*y^2")]
    # both containments via normal forms
    left = ideal_gb(S5, [S5.parse_poly("x^2"), S5.parse_poly("x*y")])
    right = ideal_gb(S5, [S5.parse_poly("y^2")])
    for v in got.elements:
        assert left.contains(v) and right.contains(v)
    # and via enumeration in the Artinian image F5[x,y]/(x^4,y^4)
    from linkagelab.oracle import FiniteAlgebra, oracle_scalar_span

    A = FiniteAlgebra.from_ideal(S5, [S5.parse_poly("x^4"), S5.parse_poly("y^4")])
    sl = oracle_scalar_span(A, [S5.parse_poly("x^2"), S5.parse_poly("x*y")])
    sr = oracle_scalar_span(A, [S5.parse_poly("y^2")])
    sm = oracle_scalar_span(A, [S5.parse_poly("x*y^2")])
    for e in sm.basis():
        assert sl.contains(list(e)) and sr.contains(list(e))


def test_colon_examples():
    S = Ring(2, ("x", "y"))
    out = colon_by_ideal(gens_of(S, "x*y"), [S.parse_poly("x")])
    assert [v.component(0) for v in out.gens] == [S.parse_poly("y")]
    n = gens_of(S, "x^2", "y")
    same = colon_by_ideal(n, [S.one()])
    assert buchberger(same).elements == buchberger(n).elements
    with pytest.raises(DomainError):
        colon_by_ideal(n, [S.zero()])
    # S^1 truncated: (x^2) : (x) = (x), checked by enumeration in F2[x]/(x^5)
    S1 = Ring(2, ("x",))
    col = colon_by_ideal(gens_of(S1, "x^2"), [S1.parse_poly("x")])
    assert [v.component(0) for v in col.gens] == [S1.parse_poly("x")]
    from linkagelab.oracle import FiniteAlgebra, oracle_colon, oracle_scalar_span

    A = FiniteAlgebra.from_ideal(S1, [S1.parse_poly("x^5")])
    target = oracle_colon(A, oracle_scalar_span(A, [S1.parse_poly("x^2")]), [S1.parse_poly("x")])
    assert target == oracle_scalar_span(A, [S1.parse_poly("x")])


def test_colon_axioms_random():
    rng = random.Random(17)
    S = Ring(3, ("x", "y"))
    for _ in range(15):
        n = SubmoduleGens(
            S,
            1,
            [
                pv(S, t)
                for t in rng.sample(["x^2", "x*y", "y^3", "x^3 + y^3", "x*y^2"], 2)
            ],
        )
        a = [S.parse_poly(rng.choice(["x", "y", "x + y"]))]
        b = a + [S.parse_poly(rng.choice(["x^2", "y^2"]))]
        na = colon_by_ideal(n, a)
        nb = colon_by_ideal(n, b)
        gn = buchberger(n)
        gna = buchberger(na)
        for v in n.gens:
            assert gna.contains(v)  # N inside N : a
        for f in a:
            for v in na.gens:
                assert gn.contains(v.poly_mul(f))  # a * (N : a) inside N
        for v in nb.gens:  # larger ideal, smaller colon
            assert gna.contains(v)


def test_eliminate_examples():
    S = Ring(2, ("x", "y", "t"))
    n = SubmoduleGens(
        S,
        1,
        [
            Vec.from_poly(S, S.parse_poly("t*x")),
            Vec.from_poly(S, S.parse_poly("y - t*y")),
        ],
    )
    out = eliminate(n, 1)
    G = buchberger(out.gens, ring=S, rank=1) if out.gens else None
    assert G is not None and G.contains_poly(S.parse_poly("x*y"))
    # eliminating nothing returns a basis of the input module
    whole = eliminate(n, 0)
    assert buchberger(whole.gens, ring=S, rank=1).elements == buchberger(n).elements
    # wrong order is rejected
    with pytest.raises(Exception):
        eliminate(n, 1, order=POT(S.order))
    # twisted cubic: y^3 - z^2 appears after eliminating x (last variable)
    St = Ring(5, ("y", "z", "x"))
    nt = SubmoduleGens(St, 1, [pv(St, "y - x^2"), pv(St, "z - x^3")])
    elim = eliminate(nt, 1)
    Ge = buchberger(elim.gens, ring=St, rank=1)
    assert Ge.contains_poly(St.parse_poly("y^3 - z^2"))


def test_divide_exact():
    S = Ring(5, ("x", "y"))
    f = S.parse_poly("x^2 - y^2")
    g = S.parse_poly("x + y")
    assert divide_exact(f, g) == S.parse_poly("x - y")
    with pytest.raises(DomainError):
        divide_exact(S.parse_poly("x"), S.parse_poly("y"))


def test_degree_cap_resource_error():
    S = Ring(2, ("x", "y"), degree_cap=3)
    with pytest.raises(ResourceError):
        ideal_gb(S, [S.parse_poly("x^2*y - y"), S.parse_poly("x*y^2 - x")])


def test_radical_membership():
    S = Ring(2, ("x", "y"))
    assert radical_contains(S, [S.parse_poly("x^3")], S.parse_poly("x"))
    assert not radical_contains(S, [S.parse_poly("x^3")], S.parse_poly("y"))
    assert radical_contains(S, [S.parse_poly("x^2 + y^2")], S.parse_poly("x + y"))


def test_membership_agreement_with_oracle():
    from linkagelab.oracle import FiniteAlgebra, oracle_scalar_span
    from linkagelab.quotient import IdealHandle, QuotientRing

    rng = random.Random(29)
    for trial in range(20):
        p = rng.choice([2, 3])
        S = Ring(p, ("x", "y"))
        q = [S.parse_poly("x^3"), S.parse_poly("y^3")]
        if rng.random() < 0.5:
            q.append(S.parse_poly("x*y^2"))
        R = QuotientRing(S, q)
        A = FiniteAlgebra(S, R.jgb())

        def rand_poly():
            return S.poly(
                [
                    (tuple(rng.randrange(0, 3) for _ in range(2)), rng.randrange(1, p))
                    for _ in range(rng.randrange(1, 3))
                ]
            )

        gens = [rand_poly() for _ in range(2)]
        handle = IdealHandle(R, gens)
        span = oracle_scalar_span(A, [g for g in gens if not g.is_zero()] or [S.zero()])
        for _ in range(5):
            f = rand_poly()
            eng = handle.contains(f)
            orc = span.contains(list(A.coords(Vec.from_poly(S, f))))
            assert eng == orc


def test_reduced_basis_matches_sympy():
    sympy = pytest.importorskip("sympy")
    rng = random.Random(202)
    for trial in range(60):
        p = rng.choice([2, 3, 5])
        n = rng.choice([2, 3])
        names = "xyz"[:n]
        order_name = rng.choice(["grevlex", "lex"])
        from linkagelab.poly import Lex

        S = Ring(p, tuple(names))
        if order_name == "lex":
            S.order = Lex()
        polys = [
            S.poly(
                [
                    (tuple(rng.randrange(0, 3) for _ in range(n)), rng.randrange(1, p))
                    for _ in range(rng.randrange(1, 4))
                ]
            )
            for _ in range(rng.randrange(1, 4))
        ]
        polys = [f for f in polys if not f.is_zero()]
        if not polys:
            continue
        mine = {
            tuple(sorted(g.component(0).terms.items()))
            for g in ideal_gb(S, polys).elements
        }
        syms = sympy.symbols(" ".join(names))
        if n == 1:
            syms = (syms,)
        dom = sympy.GF(p)
        exprs = []
        for f in polys:
            e = 0
            for mono, c in f.terms.items():
                t = sympy.Integer(c)
                for s, exp in zip(syms, mono):
                    t *= s ** exp
                e += t
            exprs.append(e)
        gb = sympy.groebner(exprs, *syms, order=order_name, domain=dom)
        theirs = set()
        for g in gb.polys:
            terms = []
            for mono, coeff in zip(g.monoms(), g.coeffs()):
                c = int(coeff % p) if not hasattr(coeff, "val") else int(coeff.val) % p
                terms.append((tuple(int(e) for e in mono), c % p))
            theirs.add(tuple(sorted((m, c) for m, c in terms if c)))
        assert mine == theirs, (p, order_name, [str(f) for f in polys])
