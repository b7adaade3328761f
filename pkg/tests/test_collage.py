import pytest

import frozen
from orientals.axioms import check_axioms
from orientals.collage import (
    LEFT,
    MODULE,
    RIGHT,
    Bimodule,
    BisliceModule,
    Collage,
    collage_bimodule,
    collage_left,
    collage_right,
    cone_over,
    cone_under,
    cylinder,
    dual_cone_map,
    iterate,
    star,
    total_cells,
)
from orientals.core import BudgetExceeded, empty, terminal
from orientals.iso import verify_functor_iso
from orientals.parity import cube, oriental
from orientals.slices import ActionMismatch, Coslice, check_bimodule_square


def _generating_edge(C):
    ones = [i for i in range(C.count(1)) if not C.is_identity(1, i)]
    assert len(ones) == 1
    return C.src(1, ones[0]), C.tgt(1, ones[0])


def test_cone_on_terminal_is_an_arrow_into_the_apex():
    S = cone_under(terminal())
    assert S.nonidentity_counts() == [2, 1]
    s, t = _generating_edge(S)
    assert t == star(S) and S.region(0, s) == LEFT


def test_cocone_on_terminal_is_an_arrow_out_of_the_apex():
    S = cone_over(terminal())
    assert S.nonidentity_counts() == [2, 1]
    s, t = _generating_edge(S)
    assert s == star(S) and S.region(0, t) == RIGHT


def test_cylinder_on_terminal_is_an_arrow():
    C = cylinder(terminal())
    assert C.nonidentity_counts() == [2, 1]
    s, t = _generating_edge(C)
    assert (C.region(0, s), C.region(0, t)) == (LEFT, RIGHT)


def test_star_needs_a_one_sided_collage():
    with pytest.raises(ValueError):
        star(cylinder(terminal()))


def test_empty_module_adjoins_an_isolated_apex():
    X = oriental(2)
    C = collage_right(X, {a: empty() for a in range(3)}, lambda *args: None)
    assert C.nonidentity_counts() == [4, 4, 1]
    apex = star(C)
    for i in range(C.count(1)):
        assert (C.src(1, i) == apex) == (C.tgt(1, i) == apex)
    assert check_axioms(C).ok


def test_empty_left_module_adjoins_an_isolated_apex():
    X = cube(1)
    C = collage_left(X, {b: empty() for b in range(2)}, lambda *args: None)
    assert C.nonidentity_counts() == [3, 1]


class _EmptyBimodule(Bimodule):
    def value(self, a, b):
        return empty()


def test_empty_bimodule_is_a_disjoint_union():
    X, Y = oriental(2), cube(2)
    C = collage_bimodule(_EmptyBimodule(X, Y))
    assert C.nonidentity_counts() == [3 + 4, 4 + 6, 1 + 1]
    for i in range(C.count(1)):
        assert C.region(0, C.src(1, i)) == C.region(0, C.tgt(1, i))
    assert check_axioms(C).ok


def test_cells_never_leave_the_apex():
    S = cone_under(oriental(2))
    apex = star(S)
    for d in range(1, S.truncation + 1):
        for i in range(S.count(d)):
            if S.bsrc(0, d, i) == apex:
                assert S.btgt(0, d, i) == apex


def test_cylinder_has_no_cells_from_right_to_left():
    C = cylinder(oriental(1))
    for i in range(C.count(1)):
        assert not (C.region(0, C.src(1, i)) == RIGHT and C.region(0, C.tgt(1, i)) == LEFT)


@pytest.mark.parametrize("X", [terminal(), oriental(1), oriental(2), cube(2)], ids=["1", "O1", "O2", "Q2"])
def test_dimension_count_identity(X):
    S = cone_under(X)
    got = S.nonidentity_counts()
    base = X.nonidentity_counts(S.truncation)
    cos = [Coslice(X, a).nonidentity_counts(S.truncation) for a in range(X.count(0))]
    for d in range(1, S.truncation + 1):
        assert got[d] == base[d] + sum(c[d - 1] for c in cos)
    assert got[0] == base[0] + 1


def test_cone_counts_from_coslices():
    S = cone_under(oriental(2))
    want = [4] + [frozen.SIMPLEX_COUNTS[2][d] + sum(frozen.COSLICE_O2_COUNTS[a][d - 1] for a in range(3))
                  for d in range(1, 3)] + [sum(frozen.COSLICE_O2_COUNTS[a][2] for a in range(3))]
    assert S.nonidentity_counts() == want == frozen.SIMPLEX_COUNTS[3]


@pytest.mark.parametrize("X", [terminal(), oriental(1), oriental(2)], ids=["1", "O1", "O2"])
def test_cocone_is_dual_of_cone_of_dual(X):
    f = dual_cone_map(X)
    assert not f.failures
    rep = verify_functor_iso(f)
    assert rep.ok, rep.to_json()


def test_iterate_zero_is_terminal():
    for c in ("s", "c"):
        X = iterate(c, 0)
        assert X.nonidentity_counts(2) == [1, 0, 0]


@pytest.mark.parametrize("n", sorted(frozen.SIMPLEX_COUNTS))
def test_iterated_cones_have_oriental_counts(n):
    assert iterate("s", n).nonidentity_counts() == frozen.SIMPLEX_COUNTS[n]


@pytest.mark.parametrize("n", sorted(frozen.CUBE_COUNTS))
def test_iterated_cylinders_have_cube_counts(n):
    assert iterate("c", n).nonidentity_counts() == frozen.CUBE_COUNTS[n]


def test_iterate_grows_truncation_by_one():
    assert [iterate("s", n).truncation for n in range(4)] == [0, 1, 2, 3]
    assert [iterate("c", n).truncation for n in range(4)] == [0, 1, 2, 3]


def test_iterate_respects_budget():
    assert total_cells(iterate("s", 2)) < 100
    with pytest.raises(BudgetExceeded):
        iterate("s", 4, budget=100)
    with pytest.raises(KeyError):
        iterate("q", 1)


@pytest.mark.parametrize("c,n", [("s", 3), ("c", 2), ("c", 3)])
def test_iterates_satisfy_the_laws(c, n):
    assert check_axioms(iterate(c, n)).ok


def test_cone_and_cylinder_of_o2_satisfy_the_laws():
    X = oriental(2)
    for C in (cone_under(X), cone_over(X), cylinder(X)):
        assert check_axioms(C).ok


def test_composite_of_incompatible_regions_is_rejected():
    from orientals.core import NotComposable

    C = cylinder(terminal())
    e = [i for i in range(C.count(1)) if not C.is_identity(1, i)][0]
    with pytest.raises(NotComposable):
        C.comp(0, 1, e, e)


def test_action_outside_module_value_is_reported():
    O1 = oriental(1)
    C = collage_right(O1, {a: Coslice(O1, a) for a in range(2)}, lambda a, a2, d, m, h: 99)
    rep = check_axioms(C)
    assert not rep.ok
    assert any("action produced 99" in w["problem"] for w in rep.witnesses)
    m = C.find(1, (MODULE, 1, 0, 0))
    e = [i for i in range(C.count(1)) if C.region(1, i) == LEFT and not C.is_identity(1, i)][0]
    with pytest.raises(ActionMismatch):
        C.comp(0, 1, m, e)


def test_bislice_module_square_commutes():
    X = cube(2)
    M = BisliceModule(X)
    assert check_bimodule_square(X, M.bis).ok


def test_collage_tags_name_the_region():
    S = cone_under(oriental(1))
    regions = {S.tag(0, i)[1][0] for i in range(S.count(0))}
    assert regions == {"left", "star"}
    assert {S.tag(1, i)[1][0] for i in range(S.count(1))} == {"left", "module", "star"}
    assert isinstance(S, Collage) and S.kind == "cone"
