import random

import pytest

from conftest import ideal, module, qring, ring, vec
from linkagelab.errors import DomainError, StructuralError
from linkagelab.poly import Vec
from linkagelab.quotient import (
    IdealHandle,
    PresentedModule,
    QuotientRing,
    colon_module,
    cyclic_module,
    hom_into_quotient,
    is_proper,
    module_intersect,
    regular_sequence_check,
    scalar_module,
    submodule_equal,
    support_equal,
)


def test_zero_ring_rejected():
    S = ring(2, "xy")
    with pytest.raises(StructuralError):
        QuotientRing(S, [S.one()])
    with pytest.raises(StructuralError):
        QuotientRing(S, [S.parse_poly("x + 1"), S.parse_poly("x")])


def test_scalar_module_examples(hypersurface):
    R = hypersurface
    M = R.regular_module()
    N = scalar_module(ideal(R, "x"), M)
    # the lift of (x)*R reduces to the single generator x
    assert [g.component(0) for g in N.lift_gb().elements] == [R.base.parse_poly("x")]
    zero = scalar_module(IdealHandle(R, []), M)
    assert zero.is_zero_in_module()


def test_colon_module_examples(hypersurface):
    R = hypersurface
    M = R.regular_module()
    col = colon_module(M.zero_submodule(), ideal(R, "x"))
    assert submodule_equal(col, scalar_module(ideal(R, "y"), M))
    n = scalar_module(ideal(R, "y"), M)
    assert submodule_equal(colon_module(n, IdealHandle(R, [R.base.one()])), n)
    # over the module k[x,y]/(x) the colon of zero by (x) is everything
    Mx = module(R, 1, [["x"]])
    colx = colon_module(Mx.zero_submodule(), ideal(R, "x"))
    full = Mx.submodule([Mx.generator(0)])
    assert submodule_equal(colx, full)
    with pytest.raises(DomainError):
        colon_module(M.zero_submodule(), IdealHandle(R, []))


def test_is_proper_examples(f2xy):
    QS = qring(2, "xy")
    M = QS.regular_module()
    assert is_proper(ideal(QS, "x", "y"), M)
    assert not is_proper(IdealHandle(QS, [QS.base.one()]), M)


def test_submodule_equal(hypersurface):
    R = hypersurface
    QS = qring(2, "xy")
    M = QS.regular_module()
    n1 = scalar_module(ideal(QS, "x", "y"), M)
    n2 = scalar_module(ideal(QS, "y", "x", "x + y"), M)
    assert submodule_equal(n1, n2)
    assert not submodule_equal(
        scalar_module(ideal(QS, "x"), M), scalar_module(ideal(QS, "y"), M)
    )
    # (xy) : (x) agrees with (y) as submodules of the free module
    nxy = M.submodule([vec(QS.base, "x*y")])
    assert submodule_equal(
        colon_module(nxy, ideal(QS, "x")), scalar_module(ideal(QS, "y"), M)
    )
    with pytest.raises(StructuralError):
        submodule_equal(n1, scalar_module(ideal(R, "x"), R.regular_module()))


def test_annihilator_examples():
    QS = qring(2, "xy")
    assert QS.regular_module().annihilator() == IdealHandle(QS, [])
    cyc = cyclic_module(QS, ideal(QS, "x^2", "x*y"))
    assert cyc.annihilator() == ideal(QS, "x^2", "x*y")
    # coker of diag(x, y) has annihilator (xy)
    M = module(QS, 2, [["x", "0"], ["0", "y"]])
    assert M.annihilator() == ideal(QS, "x*y")


def test_regular_sequence_examples(hypersurface):
    QS = qring(2, "xy")
    M = QS.regular_module()
    ok, idx = regular_sequence_check([QS.base.parse_poly("x"), QS.base.parse_poly("y")], M)
    assert ok and idx is None
    R = hypersurface
    bad, idx = regular_sequence_check([R.base.parse_poly("x")], R.regular_module())
    assert not bad and idx == 0  # x*y = 0 already
    Mx = module(R, 1, [["x"]])
    good, _ = regular_sequence_check([R.base.parse_poly("y")], Mx)
    assert good
    # properness failure is reported one past the end
    full, idx = regular_sequence_check([QS.base.parse_poly("x")], cyclic_module(QS, ideal(QS, "x^2")))
    assert not full or idx is None


def test_direct_sum(hypersurface):
    R = hypersurface
    M = R.regular_module()
    D = M.direct_sum(M)
    assert D.rank == 2 and not D.relations
    zero_mod = PresentedModule(R, 0, [])
    same = M.direct_sum(zero_mod)
    assert same.rank == 1


def test_support_equal():
    QS = qring(2, "xy")
    mx = cyclic_module(QS, ideal(QS, "x"))
    mx2 = cyclic_module(QS, ideal(QS, "x^2"))
    my = cyclic_module(QS, ideal(QS, "y"))
    assert support_equal(mx, mx2)
    assert not support_equal(mx, my)


def test_hom_into_quotient_examples():
    QS = qring(2, "xy")
    M = QS.regular_module()
    zero = M.zero_submodule()
    h0 = hom_into_quotient(ideal(QS, "x"), M, zero)
    assert h0.is_zero()  # x is regular on the free module
    Mx = cyclic_module(QS, ideal(QS, "x"))
    h1 = hom_into_quotient(ideal(QS, "x"), Mx, Mx.zero_submodule())
    assert not h1.is_zero()
    assert h1.min_gens_count() == 1
    assert h1.annihilator() == ideal(QS, "x")


def test_hom_matches_quotient_on_linked_data(hypersurface):
    # over the linked pair (x), (y) with I = 0: Hom(R/a, M) is b*M as expected
    R = hypersurface
    M = R.regular_module()
    h = hom_into_quotient(ideal(R, "x"), M, M.zero_submodule())
    assert h.annihilator().radical_equals(cyclic_module(R, ideal(R, "x")).annihilator())


def test_colon_composition_property():
    rng = random.Random(31)
    QS = qring(2, "xy")
    M = QS.regular_module()
    pool = ["x", "y", "x + y", "x^2", "y^2", "x*y"]
    for _ in range(10):
        n = M.submodule([vec(QS.base, rng.choice(pool)) for _ in range(2)])
        a = ideal(QS, rng.choice(["x", "y"]))
        b = ideal(QS, rng.choice(["x", "x + y"]))
        lhs = colon_module(colon_module(n, a), b)
        rhs = colon_module(n, a.product(b))
        assert submodule_equal(lhs, rhs)
        # antitone in the ideal: the bigger ideal gives the smaller colon
        wide = colon_module(n, a)
        narrow = colon_module(n, a.sum(b))
        assert all(wide.lift_gb().contains(g) for g in narrow.gens)


def test_module_intersect(hypersurface):
    R = hypersurface
    M = R.regular_module()
    am = scalar_module(ideal(R, "x"), M)
    bm = scalar_module(ideal(R, "y"), M)
    meet = module_intersect(am, bm)
    assert submodule_equal(meet, M.zero_submodule())  # (x) meet (y) = (xy) = 0 in R


def test_minimal_presentation_prunes_units():
    QS = qring(2, "xy")
    S = QS.base
    # second generator equals x times the first: a unit entry removes it
    M = PresentedModule(
        QS,
        2,
        [Vec.from_polys(S, [S.one(), S.parse_poly("x")])],
    )
    small = M.minimal_presentation()
    assert small.rank == 1 and not small.relations


def test_regular_sequence_permutation_invariant_on_graded_ci():
    rng = random.Random(53)
    import itertools

    for _ in range(8):
        p = rng.choice([2, 3])
        n = rng.choice([2, 3])
        QS = qring(p, "xyz"[:n])
        S = QS.base
        M = QS.regular_module()
        seq = [
            S.monomial(tuple(rng.choice([1, 2]) if j == i else 0 for j in range(n)))
            for i in range(n)
        ]
        verdicts = {
            regular_sequence_check(list(perm), M)[0]
            for perm in itertools.permutations(seq)
        }
        assert verdicts == {True}
