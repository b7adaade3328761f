"""Comparison maps ``s(O(n)) -> O(n+1)`` and ``c(Q(n)) -> Q(n+1)``.

Also the subset operations they are built from (appending a vertex or a
sign), their face identities, the disjointness of consecutive cells in
tower categories, and a generic check that a cell map is an isomorphism
of omega-categories.
"""

from __future__ import annotations

import random
from collections import defaultdict
from functools import lru_cache
from itertools import combinations, permutations

from orientals.collage import LEFT, MODULE, RIGHT, cone_under, cylinder
from orientals.core import CellMap, OmegaError, identity_map, terminal
from orientals.parity import (
    _CUBE_INPUT,
    CUBE,
    SIMPLEX,
    ParitySet,
    _bits,
    ambient,
    cube,
    oriental,
)
from orientals.report import Report

# -- appending a coordinate -------------------------------------------------

_DIM_SHIFT = {"embed": 0, "vee": 1, "-": 0, "0": 1, "+": 0}


@lru_cache(maxsize=None)
def _push_table(flavor, n, j, op):
    src, dst = ambient(flavor, n), ambient(flavor, n + 1)
    if op == "embed":
        image = list(src.gens[j])
    elif op == "vee":
        image = [a + (n + 1,) for a in src.gens[j]]
    else:
        image = [a + op for a in src.gens[j]]
    idx = dst.index[j + _DIM_SHIFT[op]]
    return tuple(idx[a] for a in image)


def push(flavor, n, j, mask, op):
    """Image of a ``j``-dimensional generator mask over ``n`` under ``op``.

    ``op`` is ``"embed"`` or ``"vee"`` for simplices and one of ``"-"``,
    ``"0"``, ``"+"`` for cubes.
    """
    if not mask:
        return 0
    table = _push_table(flavor, n, j, op)
    out = 0
    for b in _bits(mask):
        out |= 1 << table[b]
    return out


def vee(xi: ParitySet) -> ParitySet:
    """Append the new last vertex ``n+1`` to every element."""
    if xi.flavor != SIMPLEX:
        raise ValueError("vee applies to simplex subsets")
    return ParitySet(SIMPLEX, xi.n + 1, xi.dim + 1, push(SIMPLEX, xi.n, xi.dim, xi.mask, "vee"))


def embed(xi: ParitySet) -> ParitySet:
    """The same simplex subset, read over one more vertex."""
    if xi.flavor != SIMPLEX:
        raise ValueError("embed applies to simplex subsets")
    return ParitySet(SIMPLEX, xi.n + 1, xi.dim, push(SIMPLEX, xi.n, xi.dim, xi.mask, "embed"))


def eta(xi: ParitySet, symbol: str) -> ParitySet:
    """Append the sign ``symbol`` to every element of a cube subset."""
    if xi.flavor != CUBE:
        raise ValueError("eta applies to cube subsets")
    sym = symbol.translate(_CUBE_INPUT)
    if sym not in ("-", "0", "+"):
        raise ValueError(f"bad sign {symbol!r}")
    return ParitySet(CUBE, xi.n + 1, xi.dim + _DIM_SHIFT[sym], push(CUBE, xi.n, xi.dim, xi.mask, sym))


# -- face identities ----------------------------------------------------------

def vee_face_problems(xi: ParitySet):
    """Which of the two face identities for ``vee`` fail (``dim >= 1``)."""
    v = vee(xi)
    want_plus, want_minus = vee(xi.plus), vee(xi.minus)
    if xi.dim % 2:
        want_plus = want_plus | embed(xi)
    else:
        want_minus = want_minus | embed(xi)
    out = []
    if v.plus != want_plus:
        out.append("plus")
    if v.minus != want_minus:
        out.append("minus")
    return out


def eta_face_problems(xi: ParitySet):
    """Which face identities for appended signs fail (``dim >= 1``)."""
    out = []
    c = eta(xi, "0")
    lo, hi = eta(xi, "-"), eta(xi, "+")
    if xi.dim % 2:
        want_plus, want_minus = eta(xi.plus, "0") | lo, eta(xi.minus, "0") | hi
    else:
        want_plus, want_minus = eta(xi.plus, "0") | hi, eta(xi.minus, "0") | lo
    if c.plus != want_plus:
        out.append("0 plus")
    if c.minus != want_minus:
        out.append("0 minus")
    for sym in "-+":
        e = eta(xi, sym)
        if e.plus != eta(xi.plus, sym):
            out.append(f"{sym} plus")
        if e.minus != eta(xi.minus, sym):
            out.append(f"{sym} minus")
    return out


def _subsets(flavor, n, exhaustive_n, rng, samples):
    if n == exhaustive_n:
        amb = ambient(flavor, n)
        for j in range(1, n + 1):
            for mask in range(1 << amb.size(j)):
                yield ParitySet(flavor, n, j, mask)
        return
    amb = ambient(flavor, n)
    for _ in range(samples):
        j = rng.randint(1, n)
        yield ParitySet(flavor, n, j, rng.getrandbits(amb.size(j)))


def check_face_identities(exhaustive_n=3, simplex_n=5, cube_n=4, samples=1000, seed=0):
    """Face identities of ``vee`` and ``eta``.

    Every subset over ``[exhaustive_n]`` and ``<exhaustive_n>`` in each
    dimension ``j >= 1``, plus ``samples`` seeded random subsets over
    ``[simplex_n]`` and ``<cube_n>``.
    """
    rep = Report("face-identities")
    rng = random.Random(seed)
    plan = [
        (SIMPLEX, exhaustive_n, "exhaustive", vee_face_problems),
        (SIMPLEX, simplex_n, "random", vee_face_problems),
        (CUBE, exhaustive_n, "exhaustive", eta_face_problems),
        (CUBE, cube_n, "random", eta_face_problems),
    ]
    for flavor, n, mode, fn in plan:
        key = f"{flavor}[{n}].{mode}"
        rep.counts[key] = 0
        src = _subsets(flavor, n, n if mode == "exhaustive" else -1, rng, samples)
        for xi in src:
            rep.counts[key] += 1
            bad = fn(xi)
            if bad:
                rep.witnesses.append({"flavor": flavor, "n": n, "dim": xi.dim,
                                      "set": list(xi.text()), "identities": bad})
    return rep.sort()


# -- disjointness -------------------------------------------------------------

def disjointness_check(X, max_dim=None):
    """Tops of ``xi : x -> y`` and ``zeta : y -> z`` are disjoint.

    ``X`` must expose ``top(d, i)``, as tower categories do.
    """
    top = X.truncation if max_dim is None else min(max_dim, X.truncation)
    rep = Report("disjointness")
    pairs = 0
    for d in range(1, top + 1):
        by_src = defaultdict(list)
        for z in range(X.count(d)):
            by_src[X.src(d, z)].append(z)
        for x in range(X.count(d)):
            tx = X.top(d, x)
            for z in by_src.get(X.tgt(d, x), ()):
                pairs += 1
                if tx & X.top(d, z):
                    rep.witnesses.append({"dim": d, "cells": [list(X.tag(d, x)), list(X.tag(d, z))]})
    rep.counts["pairs"] = pairs
    return rep.sort()


# -- comparison maps ------------------------------------------------------------

def _tower_target(f, flavor, n):
    T = f.target
    if getattr(T, "flavor", None) != flavor or T.n != n:
        raise ValueError(f"base map must land in the {flavor} tower category of size {n}")
    return T


def _locate(T, d, top, images, S, i):
    if d == 0:
        r = T.find(0, top)
    else:
        s, t = images[d - 1][S.src(d, i)], images[d - 1][S.tgt(d, i)]
        if s is None or t is None:
            raise LookupError("boundary has no image")
        r = T.find(d, top, s, t)
    if r is None:
        raise LookupError(f"no {d}-cell with top {T.amb.format_set(d, top)} and the mapped boundary")
    return r


def phi_oriental(n, base=None):
    """``s(X) -> O(n+1)`` for ``base : X -> O(n)`` (default: ``X = O(n)``).

    Left cells map through ``base``, the apex to vertex ``n+1`` and a
    module cell ``(x, x_bar)`` to ``x_bar`` together with ``x`` with
    ``n+1`` appended.
    """
    if base is None:
        base = identity_map(oriental(n))
    On = _tower_target(base, SIMPLEX, n)
    S = cone_under(base.source)
    T = oriental(n + 1)

    def top_of(d, c):
        j = base.apply(d, c)
        if j is None:
            raise LookupError("base map undefined")
        return On.top(d, j)

    def fn(d, i, images):
        k = S.content(d, i)
        if k[0] == LEFT:
            top = push(SIMPLEX, n, d, top_of(d, k[1]), "embed")
        elif k[0] == RIGHT:
            top = T.amb.mask_of(0, [(n + 1,)]) if d == 0 else 0
        else:
            _, a, _b, m = k
            C = S.values[(a, 0)]
            x, xbar = C.base(d - 1, m), C.cert(d - 1, m)
            top = push(SIMPLEX, n, d, top_of(d, xbar), "embed") | push(SIMPLEX, n, d - 1, top_of(d - 1, x), "vee")
        return _locate(T, d, top, images, S, i)

    return CellMap.build(S, T, fn)


def phi_cube(n, base=None):
    """``c(X) -> Q(n+1)`` for ``base : X -> Q(n)`` (default: ``X = Q(n)``).

    Left cells get ``-`` appended, right cells ``+``; a module cell
    ``(x, x_bar, x_hat)`` maps to ``x_bar-`` with ``x0`` and ``x_hat+``.
    """
    if base is None:
        base = identity_map(cube(n))
    Qn = _tower_target(base, CUBE, n)
    S = cylinder(base.source)
    T = cube(n + 1)

    def top_of(d, c):
        j = base.apply(d, c)
        if j is None:
            raise LookupError("base map undefined")
        return Qn.top(d, j)

    def fn(d, i, images):
        k = S.content(d, i)
        if k[0] == LEFT:
            top = push(CUBE, n, d, top_of(d, k[1]), "-")
        elif k[0] == RIGHT:
            top = push(CUBE, n, d, top_of(d, k[1]), "+")
        else:
            _, a, b, m = k
            x, xbar, xhat = S.values[(a, b)].triple(d - 1, m)
            top = (push(CUBE, n, d, top_of(d, xbar), "-")
                   | push(CUBE, n, d - 1, top_of(d - 1, x), "0")
                   | push(CUBE, n, d, top_of(d, xhat), "+"))
        return _locate(T, d, top, images, S, i)

    return CellMap.build(S, T, fn)


def _point_map(T):
    return CellMap(terminal(), T, [[0]])


def oriental_chain(n):
    """Maps ``s^k(1) -> O(k)`` for ``k = 0..n``, each built on the previous."""
    maps = [_point_map(oriental(0))]
    for k in range(n):
        maps.append(phi_oriental(k, maps[-1]))
    return maps


def cube_chain(n):
    """Maps ``c^k(1) -> Q(k)`` for ``k = 0..n``, each built on the previous."""
    maps = [_point_map(cube(0))]
    for k in range(n):
        maps.append(phi_cube(k, maps[-1]))
    return maps


# -- isomorphism check ----------------------------------------------------------

def verify_functor_iso(f: CellMap, max_dim=None):
    """Report on whether ``f`` is an isomorphism of omega-categories.

    Checks that every cell has an image, bijectivity per dimension,
    boundaries, identities and every defined composite up to ``max_dim``.
    """
    S, T = f.source, f.target
    top = max(S.truncation, T.truncation) if max_dim is None else max_dim
    rep = Report("functor-iso")
    counts = defaultdict(int)
    for w in f.failures:
        rep.witnesses.append(dict(w, problem="undefined"))

    def img(d, i):
        return f.apply(d, i)

    def witness(problem, d, cells, **extra):
        w = {"problem": problem, "dim": d, "cells": [list(S.tag(d, c)) for c in cells]}
        w.update(extra)
        rep.witnesses.append(w)

    for d in range(top + 1):
        seen = {}
        for i in range(S.count(d)):
            j = img(d, i)
            counts["cells"] += 1
            if j is None:
                continue
            if j in seen:
                witness("not-injective", d, [seen[j], i])
            else:
                seen[j] = i
        for j in range(T.count(d)):
            if j not in seen:
                rep.witnesses.append({"problem": "not-surjective", "dim": d, "target": list(T.tag(d, j))})

        for i in range(S.count(d)):
            j = img(d, i)
            if j is None:
                continue
            if d >= 1:
                counts["boundaries"] += 1
                if img(d - 1, S.src(d, i)) != T.src(d, j) or img(d - 1, S.tgt(d, i)) != T.tgt(d, j):
                    witness("boundary", d, [i])
            if d < top:
                counts["identities"] += 1
                if img(d + 1, S.ident(d, i)) != T.ident(d, j):
                    witness("identity", d, [i])

        for n in range(d):
            by_tgt = defaultdict(list)
            for y in range(S.count(d)):
                by_tgt[S.btgt(n, d, y)].append(y)
            for x in range(S.count(d)):
                for y in by_tgt.get(S.bsrc(n, d, x), ()):
                    counts["composites"] += 1
                    fx, fy = img(d, x), img(d, y)
                    if fx is None or fy is None:
                        continue
                    try:
                        lhs = img(d, S.comp(n, d, x, y))
                        rhs = T.comp(n, d, fx, fy)
                    except OmegaError as exc:
                        witness("composite-undefined", d, [x, y], n=n, error=str(exc))
                        continue
                    if lhs != rhs:
                        witness("composite", d, [x, y], n=n)
    rep.counts = dict(counts)
    rep.counts["max_dim"] = top
    return rep.sort()


def check_action_compatibility(f: CellMap, max_dim=None):
    """Module cells acted on by side cells map to the ``o_0`` composite.

    ``f`` is a comparison map out of a collage. Each module cell ``m`` is
    composed along 0 with every left cell ``h`` ending at its source
    object (right action) and every right cell ``k`` starting at its
    target object (left action), identities included;
    for cylinders also ``k o m o h``.
    """
    S, T = f.source, f.target
    top = S.truncation if max_dim is None else max_dim
    rep = Report("action-compatibility")
    checked = 0
    two_sided = S.names[0] != "star" and S.names[2] != "star"

    def side_cells(region, obj, d, end):
        # identities are registered cells, so lower cells appear here lifted
        return [c for c in range(S.count(d)) if S.content(d, c)[0] == region
                and (S.bsrc(0, d, c) if end == "src" else S.btgt(0, d, c)) == obj]

    for d in range(1, top + 1):
        for m in range(S.count(d)):
            k = S.content(d, m)
            if k[0] != MODULE:
                continue
            a, b = S.bsrc(0, d, m), S.btgt(0, d, m)
            hs = side_cells(LEFT, a, d, "tgt") if S.names[0] != "star" else []
            ks = side_cells(RIGHT, b, d, "src") if S.names[2] != "star" else []
            cases = [(h, None) for h in hs] + [(None, kk) for kk in ks]
            if two_sided:
                cases += [(h, kk) for h in hs for kk in ks]
            for h, kk in cases:
                checked += 1
                try:
                    lhs, rhs = m, f.apply(d, m)
                    if h is not None:
                        lhs = S.comp(0, d, lhs, h)
                        rhs = T.comp(0, d, rhs, f.apply(d, h))
                    if kk is not None:
                        lhs = S.comp(0, d, kk, lhs)
                        rhs = T.comp(0, d, f.apply(d, kk), rhs)
                    ok = f.apply(d, lhs) == rhs
                except OmegaError as exc:
                    ok = False
                    rep.witnesses.append({"dim": d, "cell": list(S.tag(d, m)), "error": str(exc)})
                    continue
                if not ok:
                    w = {"dim": d, "cell": list(S.tag(d, m))}
                    if h is not None:
                        w["right"] = list(S.tag(d, h))
                    if kk is not None:
                        w["left"] = list(S.tag(d, kk))
                    rep.witnesses.append(w)
    rep.counts["checked"] = checked
    return rep.sort()


# -- 1-cell oracles ---------------------------------------------------------------

def simplex_chains(n, i, j):
    """Tops of the 1-cells ``i -> j`` of ``O(n)``: chains through subsets of ``(i, j)``."""
    amb = ambient(SIMPLEX, n)
    if i == j:
        return [0]
    if i > j:
        return []
    inner = range(i + 1, j)
    out = []
    for r in range(len(inner) + 1):
        for mid in combinations(inner, r):
            ks = (i,) + mid + (j,)
            out.append(amb.mask_of(1, list(zip(ks, ks[1:]))))
    return sorted(out)


def cube_paths(n, a, b):
    """Tops of the 1-cells ``a -> b`` of ``Q(n)``: edge paths flipping ``-`` to ``+``."""
    amb = ambient(CUBE, n)
    a, b = amb.normalize(a), amb.normalize(b)
    if any(x == "+" and y == "-" for x, y in zip(a, b)):
        return []
    flips = [p for p in range(n) if a[p] != b[p]]
    out = set()
    for order in permutations(flips):
        cur = list(a)
        edges = []
        for p in order:
            edges.append("".join(cur[:p] + ["0"] + cur[p + 1:]))
            cur[p] = "+"
        out.add(amb.mask_of(1, edges))
    return sorted(out)


def one_cells(X, s, t):
    """Sorted tops of the 1-cells ``s -> t`` of a tower category."""
    return sorted(X.top(1, c) for c in range(X.count(1)) if X.src(1, c) == s and X.tgt(1, c) == t)
