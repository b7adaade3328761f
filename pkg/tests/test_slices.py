import pytest

import frozen
from orientals.axioms import check_axioms
from orientals.core import Cell, DualCat, NotComposable, UnknownCell, dual, terminal
from orientals.parity import cube, oriental
from orientals.slices import (
    Bislice,
    Coslice,
    Slice,
    slice_suite,
    check_action_identity,
    check_bimodule_square,
    check_boundary_formulas,
    check_composite_identities,
    check_left_module,
    check_right_module,
    projection_map,
    whisker_M,
    whisker_P,
)


def top(X, d, i):
    return X.top_set(d, i).text()


def edge(X, text):
    hits = X.with_top(1, X.parse_top(1, [text]))
    assert len(hits) == 1
    return hits[0]


def objects(C):
    """0-cells of a coslice or slice as (vertex, certificate top)."""
    X = C.base_cat
    return sorted((X.amb.elements(0, X.top(0, C.base(0, i)))[0], tuple(top(X, 1, C.cert(0, i))))
                  for i in range(C.count(0)))


def test_coslice_under_0_of_o1():
    O1 = oriental(1)
    C = Coslice(O1, O1.vertex(0))
    assert objects(C) == [((0,), ()), ((1,), ("(01)",))]
    ones = [i for i in range(C.count(1)) if not C.is_identity(1, i)]
    assert len(ones) == 1
    assert top(O1, 1, C.base(1, ones[0])) == ["(01)"]
    assert O1.is_identity(2, C.cert(1, ones[0]))


def test_coslice_of_terminal_is_terminal():
    C = Coslice(terminal(), 0)
    assert [C.count(d) for d in range(4)] == [1, 1, 1, 1]
    assert C.nonidentity_counts(3) == [1, 0, 0, 0]


def test_coslice_under_1_of_o2():
    O2 = oriental(2)
    assert objects(Coslice(O2, O2.vertex(1))) == [((1,), ()), ((2,), ("(12)",))]


def test_slice_over_1_of_o1():
    O1 = oriental(1)
    assert objects(Slice(O1, O1.vertex(1))) == [((0,), ("(01)",)), ((1,), ())]


def test_slice_over_2_of_o2():
    O2 = oriental(2)
    assert objects(Slice(O2, O2.vertex(2))) == [
        ((0,), ("(01)", "(12)")), ((0,), ("(02)",)), ((1,), ("(12)",)), ((2,), ())]


def test_slice_of_terminal_is_terminal():
    S = Slice(terminal(), 0)
    assert S.nonidentity_counts(2) == [1, 0, 0]


def test_slice_is_dual_of_coslice_of_dual():
    O2 = oriental(2)
    S = Slice(O2, O2.vertex(2))
    assert isinstance(S, DualCat)
    C = Coslice(dual(O2), O2.vertex(2))
    for d in range(3):
        assert S.count(d) == C.count(d)
        for i in range(S.count(d)):
            if d:
                assert (S.src(d, i), S.tgt(d, i)) == (C.tgt(d, i), C.src(d, i))
            assert S.tag(d, i)[0] == "sl"


def test_bad_basepoint():
    with pytest.raises(UnknownCell):
        Coslice(oriental(1), 5)
    with pytest.raises(UnknownCell):
        Slice(oriental(1), -1)


@pytest.mark.parametrize("a", sorted(frozen.COSLICE_O2_COUNTS))
def test_coslice_counts(a):
    O2 = oriental(2)
    assert Coslice(O2, O2.vertex(a)).nonidentity_counts() == frozen.COSLICE_O2_COUNTS[a]


def test_bislice_of_q1():
    Q1 = cube(1)
    B = Bislice(Q1, Q1.vertex("-"), Q1.vertex("+"))
    assert B.nonidentity_counts() == [2, 1]
    triples = sorted((top(Q1, 0, x), top(Q1, 1, a), top(Q1, 1, b)) for x, a, b in
                     (B.triple(0, i) for i in range(B.count(0))))
    assert triples == [(["+"], ["0"], []), (["-"], [], ["0"])]
    one = [i for i in range(B.count(1)) if not B.is_identity(1, i)][0]
    x, a, b = B.triple(1, one)
    assert top(Q1, 1, x) == ["0"] and Q1.is_identity(2, a) and Q1.is_identity(2, b)


def test_bislice_of_terminal_is_terminal():
    B = Bislice(terminal(), 0, 0)
    assert B.nonidentity_counts(2) == [1, 0, 0]


def test_bislice_0_o2_2_contains_the_path_through_1():
    O2 = oriental(2)
    B = Bislice(O2, O2.vertex(0), O2.vertex(2))
    triples = {B.triple(0, i) for i in range(B.count(0))}
    assert (O2.vertex(1), edge(O2, "(01)"), edge(O2, "(12)")) in triples


@pytest.mark.parametrize("pair", sorted(frozen.BISLICE_Q2_COUNTS))
def test_bislice_counts(pair):
    Q2 = cube(2)
    a, b = pair
    assert Bislice(Q2, Q2.vertex(a), Q2.vertex(b)).nonidentity_counts() == frozen.BISLICE_Q2_COUNTS[pair]


def test_action_on_an_object():
    O2 = oriental(2)
    C1, C0 = Coslice(O2, O2.vertex(1)), Coslice(O2, O2.vertex(0))
    e01, e12 = edge(O2, "(01)"), edge(O2, "(12)")
    c = C1.lookup(0, (O2.vertex(2), e12))
    r = C1.act(C0, 0, c, e01)
    assert C0.base(0, r) == O2.vertex(2)
    assert top(O2, 1, C0.cert(0, r)) == ["(01)", "(12)"]


def test_action_by_identity_is_trivial():
    O2 = oriental(2)
    C = Coslice(O2, O2.vertex(0))
    for d in range(2):
        for c in range(C.count(d)):
            e = O2.lift(0, O2.vertex(0), d + 1)
            r = C.act(C, d, c, e)
            assert r == c


def test_action_is_associative_on_objects():
    O2 = oriental(2)
    C2, C1, C0 = (Coslice(O2, O2.vertex(v)) for v in (2, 1, 0))
    e01, e12 = edge(O2, "(01)"), edge(O2, "(12)")
    h = O2.comp(0, 1, e12, e01)
    c = 0
    assert C1.act(C0, 0, C2.act(C1, 0, c, e12), e01) == C2.act(C0, 0, c, h)


def test_action_rejects_wrong_endpoints():
    O2 = oriental(2)
    C1, C0 = Coslice(O2, O2.vertex(1)), Coslice(O2, O2.vertex(0))
    with pytest.raises(NotComposable):
        C1.act(C0, 0, 0, edge(O2, "(12)"))


def test_whisker_m0_by_an_identity_leaves_the_top_alone():
    O1 = oriental(1)
    C = Coslice(O1, O1.vertex(0))
    m0 = C.lookup(0, (O1.vertex(0), O1.ident(0, O1.vertex(0))))
    p0 = C.lookup(0, (O1.vertex(1), edge(O1, "(01)")))
    u = (1, edge(O1, "(01)"))
    d, r = whisker_M(C, [(m0, p0)], u)
    assert (d, r) == u


def test_whisker_m0_prepends_the_certificate():
    O2 = oriental(2)
    C = Coslice(O2, O2.vertex(0))
    m0 = C.lookup(0, (O2.vertex(1), edge(O2, "(01)")))
    p0 = C.lookup(0, (O2.vertex(2), edge(O2, "(02)")))
    d, r = whisker_M(C, [(m0, p0)], (1, edge(O2, "(12)")))
    assert top(O2, d, r) == ["(01)", "(12)"]


def test_whisker_p1_types_the_target_of_a_two_cell():
    O2 = oriental(2)
    C = Coslice(O2, O2.vertex(0))
    seen = 0
    for i in range(C.count(2)):
        tower = C.tower(2, i)
        d, r = whisker_P(C, tower, (2, C.base(2, i)))
        assert O2.tgt(3, C.cert(2, i)) == O2.lift(d, r, 2)
        seen += not C.is_identity(2, i)
    assert seen == frozen.COSLICE_O2_COUNTS[0][2]


def test_whiskering_checks_the_parity():
    C = Coslice(oriental(1), 0)
    with pytest.raises(ValueError):
        whisker_P(C, [(0, 0)], (1, 0))
    with pytest.raises(ValueError):
        whisker_M(C, [(0, 0), (0, 0)], (1, 0))


@pytest.mark.parametrize("X", [oriental(2), cube(2), oriental(3)], ids=["O2", "Q2", "O3"])
def test_coslices_and_slices_satisfy_the_laws(X):
    for v in range(X.count(0)):
        assert check_axioms(Coslice(X, v)).ok
        assert check_axioms(Slice(X, v)).ok


def test_q2_bislices_satisfy_the_laws():
    Q2 = cube(2)
    for a in range(4):
        for b in range(4):
            assert check_axioms(Bislice(Q2, a, b)).ok


@pytest.mark.parametrize("X", [oriental(2), cube(2), oriental(3), cube(3)], ids=["O2", "Q2", "O3", "Q3"])
def test_slice_suite(X):
    reports = slice_suite(X)
    bad = [r.to_json() for r in reports if not r.ok]
    assert not bad
    names = {r.check.split(":")[0] for r in reports}
    assert {"axioms", "boundary-formulas", "composite-identities", "action-identity",
            "right-module", "left-module"} <= names


def test_suites_actually_check_something():
    O2 = oriental(2)
    C = Coslice(O2, 0)
    assert check_boundary_formulas(C).counts
    assert sum(check_composite_identities(C).counts.values()) > 0
    assert sum(check_action_identity(Coslice(O2, 1), C).counts.values()) > 0
    cosl = {a: Coslice(O2, a) for a in range(3)}
    assert check_right_module(O2, cosl).counts
    assert check_left_module(O2, {b: Slice(O2, b) for b in range(3)}).ok


def test_bimodule_square_on_q2():
    Q2 = cube(2)
    bis = {(a, b): Bislice(Q2, a, b) for a in range(4) for b in range(4)}
    rep = check_bimodule_square(Q2, bis)
    assert rep.ok and rep.counts["checked"] > 0


def test_projection_forgets_certificates():
    O2 = oriental(2)
    C = Coslice(O2, 0)
    p = projection_map(C)
    for d in range(3):
        for i in range(C.count(d)):
            assert p(Cell(d, i)) == Cell(d, C.base(d, i))
