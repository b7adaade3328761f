import random

import pytest

import oracle
from orientals.collage import LEFT, MODULE, RIGHT, iterate, star
from orientals.core import CellMap, identity_map
from orientals.iso import (
    check_action_compatibility,
    check_face_identities,
    cube_chain,
    cube_paths,
    disjointness_check,
    embed,
    eta,
    eta_face_problems,
    oriental_chain,
    phi_cube,
    phi_oriental,
    simplex_chains,
    vee,
    vee_face_problems,
    verify_functor_iso,
)
from orientals.parity import CUBE, SIMPLEX, ParitySet, cube, oriental


def S(n, *texts, dim=None):
    return ParitySet.parse(SIMPLEX, n, texts, dim)


def C(n, *texts, dim=None):
    return ParitySet.parse(CUBE, n, texts, dim)


# -- appending a coordinate -------------------------------------------------

def test_vee_of_empty_is_empty():
    assert vee(ParitySet(SIMPLEX, 1, 1, 0)).text() == []


def test_vee_appends_the_new_vertex():
    v = vee(S(1, "(01)"))
    assert (v.n, v.dim, v.text()) == (2, 2, ["(012)"])


def test_vee_face_identity_for_an_edge():
    xi = S(1, "(01)")
    assert vee(xi).plus.text() == ["(01)", "(12)"]
    assert (vee(xi.plus) | embed(xi)).text() == ["(01)", "(12)"]
    assert vee_face_problems(xi) == []


def test_eta_of_empty_is_empty():
    for sym in "-0+":
        assert eta(ParitySet(CUBE, 1, 1, 0), sym).text() == []


def test_eta_appends_a_sign():
    xi = C(1, "0")
    c = eta(xi, "⊙")
    assert c.text() == ["00"] and c.dim == 2
    assert sorted(c.minus.text()) == sorted(["-0", "0+"])
    assert (eta(xi.minus, "0") | eta(xi, "+")) == c.minus
    assert eta_face_problems(xi) == []


def test_eta_commutes_with_faces_for_signs():
    xi = C(2, "-0")
    assert eta(xi, "+").minus.text() == ["--+"]
    assert eta(xi, "+").minus == eta(xi.minus, "+")


def test_lifts_check_their_flavor():
    with pytest.raises(ValueError):
        vee(C(1, "0"))
    with pytest.raises(ValueError):
        eta(S(1, "(01)"), "0")
    with pytest.raises(ValueError):
        eta(C(1, "0"), "x")


def test_face_identities_exhaustive_and_sampled():
    rep = check_face_identities()
    assert rep.ok, rep.to_json()
    assert rep.counts["simplex[3].exhaustive"] > 0
    assert rep.counts["cube[3].exhaustive"] > 0
    assert rep.counts["simplex[5].random"] >= 1000
    assert rep.counts["cube[4].random"] >= 1000


def test_face_identities_against_brute_force_model():
    rng = random.Random(3)
    for _ in range(200):
        n = 3
        j = rng.randint(1, n)
        gens = oracle.gens("simplex", n, j)
        pick = [g for g in gens if rng.random() < 0.5]
        lifted = {g + (n + 1,) for g in pick}
        got = vee(S(n, *["(" + "".join(map(str, g)) + ")" for g in pick], dim=j))
        assert set(got.elements) == lifted
        want_plus = {g + (n + 1,) for g in oracle.plus("simplex", pick)}
        if j % 2:
            want_plus |= set(pick)
        assert set(got.plus.elements) == oracle.plus("simplex", lifted) == want_plus


# -- comparison maps -----------------------------------------------------------

def _module_cell(Sx, d, a, m):
    return Sx.find(d, (MODULE, a, 0, m))


def test_phi_oriental_1_examples():
    f = phi_oriental(1)
    Sx, O2 = f.source, f.target
    cosl = Sx.values
    c0 = cosl[(0, 0)]
    v0 = Sx.L.vertex(0)
    apex_edge_0 = _module_cell(Sx, 1, 0, c0.lookup(0, (v0, Sx.L.ident(0, v0))))
    assert O2.top_set(1, f.apply(1, apex_edge_0)).text() == ["(02)"]
    e01 = Sx.L.with_top(1, Sx.L.parse_top(1, ["(01)"]))[0]
    m = c0.lookup(0, (Sx.L.vertex(1), e01))
    assert O2.top_set(1, f.apply(1, _module_cell(Sx, 1, 0, m))).text() == ["(01)", "(12)"]
    two = [i for i in range(c0.count(1)) if not c0.is_identity(1, i)]
    assert len(two) == 1
    assert O2.top_set(2, f.apply(2, _module_cell(Sx, 2, 0, two[0]))).text() == ["(012)"]
    assert f.apply(0, star(Sx)) == O2.vertex(2)


def test_phi_cube_1_examples():
    f = phi_cube(1)
    Cx, Q2 = f.source, f.target
    B = Cx.values[(Cx.L.vertex("-"), Cx.R.vertex("+"))]
    tops = {}
    for i in range(B.count(0)):
        x, _, _ = B.triple(0, i)
        tops[Cx.L.top_set(0, x).text()[0]] = Q2.top_set(1, f.apply(1, Cx.find(1, (MODULE, 0, 1, i)))).text()
    assert sorted(tops["-"]) == sorted(["-0", "0+"])
    assert sorted(tops["+"]) == sorted(["0-", "+0"])
    one = [i for i in range(B.count(1)) if not B.is_identity(1, i)][0]
    assert Q2.top_set(2, f.apply(2, Cx.find(2, (MODULE, 0, 1, one)))).text() == ["00"]


def test_phi_cube_embeds_the_sides():
    f = phi_cube(1)
    Cx, Q2 = f.source, f.target
    for region, sym in ((LEFT, "-"), (RIGHT, "+")):
        for v in "-+":
            i = Cx.find(0, (region, Cx.L.vertex(v)))
            assert Q2.top_set(0, f.apply(0, i)).text() == [v + sym]


def test_identity_map_is_an_isomorphism():
    assert verify_functor_iso(identity_map(oriental(2))).ok


@pytest.mark.parametrize("n", range(4))
def test_phi_oriental_is_an_isomorphism(n):
    f = phi_oriental(n)
    rep = verify_functor_iso(f)
    assert rep.ok, rep.to_json()
    assert rep.counts["composites"] > 0 or n == 0
    assert check_action_compatibility(f).ok


@pytest.mark.parametrize("n", range(3))
def test_phi_cube_is_an_isomorphism(n):
    f = phi_cube(n)
    rep = verify_functor_iso(f)
    assert rep.ok, rep.to_json()
    act = check_action_compatibility(f)
    assert act.ok and (act.counts["checked"] > 0)


def test_oriental_chain_certifies_s4():
    chain = oriental_chain(4)
    assert [f.target.n for f in chain] == [0, 1, 2, 3, 4]
    for f in chain:
        assert verify_functor_iso(f).ok
    assert chain[-1].source.nonidentity_counts() == oriental(4).nonidentity_counts()


def test_cube_chain_certifies_c3():
    for f in cube_chain(3):
        assert verify_functor_iso(f).ok


def test_dropping_a_one_cell_is_caught():
    O2 = oriental(2)
    table = [list(range(O2.count(d))) for d in range(3)]
    e01 = O2.with_top(1, O2.parse_top(1, ["(01)"]))[0]
    e02 = O2.with_top(1, O2.parse_top(1, ["(02)"]))[0]
    table[1][e02] = e01
    rep = verify_functor_iso(CellMap(O2, O2, table))
    problems = {w["problem"] for w in rep.witnesses}
    assert "not-surjective" in problems
    miss = [w for w in rep.witnesses if w["problem"] == "not-surjective"]
    assert [w["target"][1] for w in miss] == [("(02)",)]


def test_undefined_images_are_reported():
    O1 = oriental(1)
    table = [[0, 1], [0, 1, None]]
    rep = verify_functor_iso(CellMap(O1, O1, table))
    assert any(w["problem"] == "not-surjective" for w in rep.witnesses)


def test_iterated_cone_transports_to_oriental():
    # composites of s^3(1) and of O(3) agree under the comparison chain
    f = oriental_chain(3)[-1]
    assert f.source.nonidentity_counts() == iterate("s", 3).nonidentity_counts()
    rep = verify_functor_iso(f)
    assert rep.ok and rep.counts["composites"] > 0


# -- disjointness ---------------------------------------------------------------

def test_consecutive_edges_are_disjoint():
    O2 = oriental(2)
    a = O2.top_set(1, O2.with_top(1, O2.parse_top(1, ["(01)"]))[0])
    b = O2.top_set(1, O2.with_top(1, O2.parse_top(1, ["(12)"]))[0])
    assert (a & b).text() == []


@pytest.mark.parametrize("X", [oriental(n) for n in range(5)] + [cube(n) for n in range(4)],
                         ids=[f"O{n}" for n in range(5)] + [f"Q{n}" for n in range(4)])
def test_disjointness(X):
    rep = disjointness_check(X)
    assert rep.ok
    if X.n >= 2:
        assert rep.counts["pairs"] > 0


# -- 1-cell families --------------------------------------------------------------

def _tops(flavor, n, masks):
    from orientals.parity import ambient

    amb = ambient(flavor, n)
    out = []
    for m in masks:
        els = amb.elements(1, m)
        out.append(tuple(sorted(els)))
    return sorted(out)


@pytest.mark.parametrize("n", range(1, 4))
def test_simplex_chains_match_brute_force(n):
    for i in range(n + 1):
        for j in range(n + 1):
            assert _tops(SIMPLEX, n, simplex_chains(n, i, j)) == oracle.one_cells("simplex", n, (i,), (j,))


@pytest.mark.parametrize("n", range(1, 3))
def test_cube_paths_match_brute_force(n):
    for a in oracle.cube_gens(n, 0):
        for b in oracle.cube_gens(n, 0):
            assert _tops(CUBE, n, cube_paths(n, a, b)) == oracle.one_cells("cube", n, a, b)
