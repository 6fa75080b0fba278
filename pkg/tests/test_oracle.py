import pytest

from conftest import ring
from linkagelab.errors import DomainError, ResourceError
from linkagelab.groebner import buchberger
from linkagelab.oracle import (
    FiniteAlgebra,
    FiniteModule,
    Span,
    double_annihilator_check,
    oracle_ass,
    oracle_colon,
    oracle_is_linked,
    oracle_scalar_span,
    variable_prime_span,
)
from linkagelab.poly import Vec


def algebra(p, names, gens):
    S = ring(p, names)
    return FiniteAlgebra.from_ideal(S, [S.parse_poly(t) for t in gens]), S


def test_algebra_construction_and_validation():
    A, S = algebra(2, "xy", ["x^2", "y^2"])
    assert A.dimension == 4
    assert A.validate_algebra()
    # non-Artinian quotients are refused
    with pytest.raises(DomainError):
        algebra(2, "xy", ["x^2"])


def test_oracle_colon_examples():
    A, S = algebra(2, "xy", ["x^2", "y^2"])
    ann_x = oracle_colon(A, Span(2, A.dimension), [S.parse_poly("x")])
    assert ann_x == oracle_scalar_span(A, [S.parse_poly("x")])
    n = oracle_scalar_span(A, [S.parse_poly("y")])
    same = oracle_colon(A, n, [S.one()])
    assert same == n
    # truncated hypersurface: engine colon agrees with enumeration
    B, SB = algebra(2, "xy", ["x*y", "x^3", "y^3"])
    zero = Span(2, B.dimension)
    col = oracle_colon(B, zero, [SB.parse_poly("x")])
    from linkagelab.quotient import IdealHandle, QuotientRing

    R = QuotientRing(SB, [SB.parse_poly(t) for t in ("x*y", "x^3", "y^3")])
    eng = IdealHandle(R, []).colon(IdealHandle(R, ["x"]))
    eng_span = B.submodule_span([B.coords(Vec.from_poly(SB, g)) for g in eng.lift_polys()])
    assert eng_span == col


def test_oracle_is_linked_examples():
    # the self-linked pair over F2[x]/(x^2)
    A, S = algebra(2, "x", ["x^2"])
    rep = oracle_is_linked(A, [S.parse_poly("x")], [S.parse_poly("x")], [])
    assert rep["verdict"] == "linked"
    # truncating the hypersurface breaks zero-linkage at the socle
    B, SB = algebra(2, "xy", ["x*y", "x^4", "y^4"])
    rep2 = oracle_is_linked(B, [SB.parse_poly("x")], [SB.parse_poly("y")], [])
    assert rep2["verdict"] == "not-linked"
    # and the engine agrees on the same truncated instance
    from linkagelab.linkage import LinkageInstance, check_linked
    from linkagelab.quotient import IdealHandle, QuotientRing

    R = QuotientRing(SB, [SB.parse_poly(t) for t in ("x*y", "x^4", "y^4")])
    inst = LinkageInstance(
        R,
        R.regular_module(),
        IdealHandle(R, ["x"]),
        IdealHandle(R, ["y"]),
        IdealHandle(R, []),
        "truncated",
    )
    assert check_linked(inst, derived=False).verdict == "not-linked"
    # improper scalar action is reported as a failed hypothesis
    rep3 = oracle_is_linked(A, [S.one()], [S.parse_poly("x")], [])
    assert rep3["verdict"] == "hypotheses-failed"


def test_oracle_regular_sequence_gate():
    A, S = algebra(2, "xy", ["x^2", "y^2"])
    rep = oracle_is_linked(A, [S.parse_poly("x")], [S.parse_poly("x")], [S.parse_poly("x")])
    assert rep["verdict"] == "hypotheses-failed" and not rep["regular_sequence"]


def test_oracle_ass_examples():
    A, S = algebra(2, "x", ["x^2"])
    out = oracle_ass(A, A)
    assert out == {variable_prime_span(A, [0])}
    K, SK = algebra(2, "x", ["x"])
    outk = oracle_ass(K, K)
    assert len(outk) == 1 and next(iter(outk)).rank() == 0
    C, SC = algebra(2, "xy", ["x^2", "x*y", "y^2"])
    outc = oracle_ass(C, C)
    assert outc == {variable_prime_span(C, [0, 1])}


def test_double_annihilator_check():
    A, S = algebra(2, "x", ["x^4"])
    assert double_annihilator_check(A, [S.parse_poly("x^2")])
    assert double_annihilator_check(A, [S.parse_poly("x")])


def test_module_validation_and_size_cap():
    S = ring(2, "xy")
    rows = [
        Vec.from_poly(S, S.parse_poly(t), rank=2, comp=c)
        for t in ("x^2", "y^2")
        for c in (0, 1)
    ]
    M = FiniteModule(S, 2, buchberger(rows, ring=S, rank=2))
    assert M.dimension == 8
    assert M.validate()
    big = ring(2, "xy")
    with pytest.raises(ResourceError):
        FiniteAlgebra.from_ideal(big, [big.parse_poly("x^40"), big.parse_poly("y^40")])


def test_span_enumeration_cap():
    sp = Span(2, 30, [tuple(1 if i == j else 0 for i in range(30)) for j in range(30)])
    with pytest.raises(ResourceError):
        list(sp.elements())


def test_oracle_linkage_symmetric():
    A, S = algebra(2, "xy", ["x*y", "x^3", "y^3"])
    a = [S.parse_poly("x")]
    b = [S.parse_poly("y")]
    r1 = oracle_is_linked(A, a, b, [])
    r2 = oracle_is_linked(A, b, a, [])
    assert r1["verdict"] == r2["verdict"]
