import pytest

from conftest import ring
from linkagelab.errors import DomainError, StructuralError
from linkagelab.monomial import (
    MonomialIdeal,
    VariablePrime,
    mono_ass_primes,
    mono_dim,
    mono_min_primes,
    mono_unmixed,
    prime_contains_ideal,
)


def mi(S, *texts):
    return MonomialIdeal.from_polys(S, [S.parse_poly(t) for t in texts])


def names(S, primes):
    return sorted(p.variables for p in primes)


def test_min_primes_examples():
    S = ring(2, "xy")
    assert names(S, mono_min_primes(mi(S, "x*y"))) == [(0,), (1,)]
    assert names(S, mono_min_primes(mi(S, "x^2", "y^2"))) == [(0, 1)]
    S3 = ring(2, "xyz")
    assert names(S3, mono_min_primes(mi(S3, "x*y", "x*z", "y*z"))) == [
        (0, 1),
        (0, 2),
        (1, 2),
    ]
    with pytest.raises(DomainError):
        mono_min_primes(MonomialIdeal(S, [(0, 0)]))


def test_ass_primes_examples():
    S = ring(2, "xy")
    assert names(S, mono_ass_primes(mi(S, "x^2", "x*y"))) == [(0,), (0, 1)]
    assert names(S, mono_ass_primes(mi(S, "x"))) == [(0,)]
    assert names(S, mono_ass_primes(mi(S, "x^2*y", "x*y^2"))) == [(0,), (0, 1), (1,)]


def test_unmixed_examples():
    S = ring(2, "xy")
    assert mono_unmixed(mi(S, "x*y"))
    assert not mono_unmixed(mi(S, "x^2", "x*y"))
    assert mono_unmixed(mi(S, "x"))


def test_min_inside_ass():
    S = ring(3, "xyz")
    cases = [
        ["x*y"],
        ["x^2", "x*y"],
        ["x*y", "y*z"],
        ["x^2*y", "y^2*z", "z^2"],
        ["x^3", "y^2", "x*z"],
    ]
    for texts in cases:
        I = mi(S, *texts)
        assert mono_min_primes(I) <= mono_ass_primes(I)


def test_dimension_matches_homological_path():
    from linkagelab import homology as H
    from linkagelab.quotient import IdealHandle, QuotientRing, cyclic_module

    S = ring(2, "xyz")
    QS = QuotientRing(S, [])
    cases = [["x*y"], ["x^2", "y^2"], ["x*y", "x*z"], ["x"], ["x", "y", "z"]]
    for texts in cases:
        I = mi(S, *texts)
        M = cyclic_module(QS, IdealHandle(QS, [S.parse_poly(t) for t in texts]))
        assert mono_dim(I) == H.krull_dim(M), texts


def test_unmixed_matches_homological_path():
    from linkagelab import homology as H
    from linkagelab.quotient import IdealHandle, QuotientRing, cyclic_module

    S = ring(2, "xy")
    QS = QuotientRing(S, [])
    for texts in (["x*y"], ["x^2", "x*y"], ["x"], ["x^2", "y^2"], ["x^2*y", "x*y^2"]):
        I = mi(S, *texts)
        M = cyclic_module(QS, IdealHandle(QS, [S.parse_poly(t) for t in texts]))
        assert mono_unmixed(I) == H.is_unmixed(M), texts


def test_squarefree_and_containment():
    S = ring(2, "xy")
    assert mi(S, "x*y").is_squarefree()
    assert not mi(S, "x^2").is_squarefree()
    assert prime_contains_ideal(VariablePrime((0,)), mi(S, "x*y", "x^2"))
    assert not prime_contains_ideal(VariablePrime((1,)), mi(S, "x^2"))


def test_non_monomial_rejected():
    S = ring(2, "xy")
    with pytest.raises(StructuralError):
        MonomialIdeal.from_polys(S, [S.parse_poly("x + y")])
