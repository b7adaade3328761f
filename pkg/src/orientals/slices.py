"""Lax coslices ``a/X``, lax slices ``X/b``, bislices and the module actions.

A coslice ``d``-cell is a pair ``(x, c)``: a ``d``-cell ``x`` of ``X``
and a ``(d+1)``-cell ``c`` of ``X`` (the certificate) whose boundary is
fixed by the boundary of ``(x, c)``.  That boundary is expressed with
the whiskering functors ``F_j`` built from a boundary tower
``(m_0, p_0), ..., (m_j, p_j)`` of coslice cells:

    F_0(u) = u o_0 cm_0
    F_j(u) = cp_j o_j F_{j-1}(u)      j odd
    F_j(u) = F_{j-1}(u) o_j cm_j      j even

where ``cm_k`` / ``cp_k`` are the certificates of ``m_k`` / ``p_k``.  For
even ``j`` this is ``M_j``, for odd ``j`` it is ``P_j``.
"""

from __future__ import annotations

from collections import defaultdict
from itertools import product

from orientals.core import (
    BuiltCat,
    CellMap,
    DualCat,
    NotComposable,
    OmegaError,
    Pullback,
    UnknownCell,
    dual,
)
from orientals.report import Report


class ActionMismatch(OmegaError):
    """An action produced a pair that is not a cell of the target."""


def _check_object(X, a):
    if not isinstance(a, int) or not 0 <= a < X.count(0):
        raise UnknownCell(f"no 0-cell {a!r}")


class Coslice(BuiltCat):
    """The lax coslice ``a/X``; keys are ``(base, certificate[, s, t])``."""

    kind = "co"

    def __init__(self, X, a):
        _check_object(X, a)
        super().__init__(X.truncation)
        self.base_cat = X
        self.point = a
        self._act_memo = {}
        self._build()

    # -- components ------------------------------------------------------
    def base(self, d, i):
        return self.key(d, i)[0]

    def cert(self, d, i):
        return self.key(d, i)[1]

    def tower(self, d, i, upto=None):
        """Boundary tower ``[(m_k, p_k)]`` of a ``d``-cell for ``k < upto``."""
        top = d if upto is None else upto
        return [(self.bsrc(k, d, i), self.btgt(k, d, i)) for k in range(top)]

    # -- whiskering functors ---------------------------------------------
    def functor(self, tower, j, u):
        """``F_j(u)`` for an ``X``-cell ``u = (dim, idx)``; ``F_{-1}`` is the identity."""
        X = self.base_cat
        if j < 0:
            return u
        m0 = tower[0][0]
        r = X.wcomp(0, u, (1, self.cert(0, m0)))
        for k in range(1, j + 1):
            m, p = tower[k]
            if k % 2:
                r = X.wcomp(k, (k + 1, self.cert(k, p)), r)
            else:
                r = X.wcomp(k, r, (k + 1, self.cert(k, m)))
        return r

    def _certificate_bounds(self, tower, x):
        """Required ``(source, target)`` of the certificate over ``x``."""
        n = len(tower) - 1
        m, p = tower[n]
        d = n + 1
        if n % 2 == 0:
            S = self.functor(tower, n, (d, x))
            T = (d, self.cert(n, p))
        else:
            S = (d, self.cert(n, m))
            T = self.functor(tower, n, (d, x))
        X = self.base_cat
        return X.lift(S[0], S[1], d), X.lift(T[0], T[1], d)

    # -- construction ----------------------------------------------------
    def _generate(self, d):
        X = self.base_cat
        a = self.point
        if d == 0:
            return [(x, c) for x in range(X.count(0)) for c in X.between(1, a, x)]
        n = d - 1
        if n == 0:
            cells = range(self.count(0))
            pairs = [(m, p) for m in cells for p in cells]
        else:
            groups = defaultdict(list)
            for i in range(self.count(n)):
                groups[(self.src(n, i), self.tgt(n, i))].append(i)
            pairs = [(m, p) for g in groups.values() for m in g for p in g]
        keys = []
        for m, p in pairs:
            tower = self.tower(n, m) + [(m, p)]
            for x in X.between(d, self.base(n, m), self.base(n, p)):
                S, T = self._certificate_bounds(tower, x)
                for c in X.between(d + 1, S, T):
                    keys.append((x, c, m, p))
        return keys

    def _comp_content(self, n, d, q, r):
        # q o_n r, "q after r"; the common boundary below n is r's
        X = self.base_cat
        base = X.comp(n, d, self.base(d, q), self.base(d, r))
        tower = self.tower(d, r, n)
        qc = (d + 1, self.cert(d, q))
        rc = (d + 1, self.cert(d, r))
        if n % 2 == 0:
            u = (n + 1, X.bsrc(n + 1, d, self.base(d, q)))
            cert = X.wcomp(n + 1, qc, X.wcomp(n, self.functor(tower, n - 1, u), rc))
        else:
            u = (n + 1, X.btgt(n + 1, d, self.base(d, r)))
            cert = X.wcomp(n + 1, X.wcomp(n, qc, self.functor(tower, n - 1, u)), rc)
        return (base, cert[1])

    def _ident_content(self, d, i):
        X = self.base_cat
        return (X.ident(d, self.base(d, i)), X.ident(d + 1, self.cert(d, i)))

    def _render(self, d, content):
        return (self.point,) + tuple(content)

    # -- right action of X(b, a) -------------------------------------------
    def act(self, target, d, c, h):
        """``c . h`` in ``b/X`` for a ``d``-cell ``c`` and an ``X``-cell ``h : b ~> a``.

        ``h`` is a ``(d+1)``-cell of ``X`` with 0-boundary ``(b, a)``.
        """
        if target.base_cat is not self.base_cat:
            raise ActionMismatch("coslices over different categories")
        d = min(d, self.truncation)
        key = (target.point, d, c, h)
        r = self._act_memo.get(key)
        if r is not None:
            return r
        X = self.base_cat
        if X.btgt(0, d + 1, h) != self.point or X.bsrc(0, d + 1, h) != target.point:
            raise NotComposable("acting cell does not run from the new basepoint to the old one")
        cert = X.comp(0, d + 1, self.cert(d, c), h)
        if d == 0:
            k = (self.base(0, c), cert)
        else:
            s = self.act(target, d - 1, self.src(d, c), X.src(d + 1, h))
            t = self.act(target, d - 1, self.tgt(d, c), X.tgt(d + 1, h))
            k = (self.base(d, c), cert, s, t)
        r = target.lookup(d, k)
        if r is None:
            raise ActionMismatch(f"{k!r} is not a {d}-cell of the coslice under {target.point}")
        self._act_memo[key] = r
        return r


class Slice(DualCat):
    """The lax slice ``X/b``, computed as the dual of ``b/X^op``."""

    def __init__(self, X, b):
        _check_object(X, b)
        super().__init__(Coslice(dual(X), b), retag="sl")
        self.base_cat = X
        self.point = b

    def base(self, d, i):
        return self.inner.base(d, i)

    def cert(self, d, i):
        return self.inner.cert(d, i)

    def lookup(self, d, key):
        return self.inner.lookup(d, key)

    def key(self, d, i):
        return self.inner.key(d, i)

    def act(self, target, d, k, c):
        """``k . c`` in ``X/b'`` for ``k : b ~> b'`` a ``(d+1)``-cell of ``X``."""
        if target.base_cat is not self.base_cat:
            raise ActionMismatch("slices over different categories")
        return self.inner.act(target.inner, d, c, k)


class Bislice(Pullback):
    """``a/X/b``: pairs of a coslice and a slice cell over the same base."""

    def __init__(self, X, a, b, co=None, sl=None):
        self.base_cat = X
        self.points = (a, b)
        self.co = co if co is not None else Coslice(X, a)
        self.sl = sl if sl is not None else Slice(X, b)
        super().__init__(projection_map(self.co), projection_map(self.sl), kind="bi")

    def _render(self, d, content):
        return self.points + tuple(content)

    def triple(self, d, i):
        c, s = self.pair(d, i)
        return self.co.base(d, c), self.co.cert(d, c), self.sl.cert(d, s)

    def act_right(self, target, d, m, h):
        c, s = self.pair(d, m)
        c2 = self.co.act(target.co, d, c, h)
        r = target.find(d, c2, s)
        if r is None:
            raise ActionMismatch("right action left the bislice")
        return r

    def act_left(self, target, d, k, m):
        c, s = self.pair(d, m)
        s2 = self.sl.act(target.sl, d, k, s)
        r = target.find(d, c, s2)
        if r is None:
            raise ActionMismatch("left action left the bislice")
        return r


def projection_map(C):
    """``pi : C -> X`` forgetting certificates."""
    X = C.base_cat
    table = [[C.base(d, i) for i in range(C.count(d))] for d in range(C.truncation + 1)]
    return CellMap(C, X, table)


def coslice(X, a):
    return Coslice(X, a)


def slice_(X, b):
    return Slice(X, b)


def bislice(X, a, b):
    return Bislice(X, a, b)


def _parity_tower(C, tower, parity):
    n = len(tower) - 1
    if n % 2 != parity:
        raise ValueError(f"boundary tower of length {n + 1} has the wrong parity")
    return n


def whisker_M(C, tower, u):
    """``M_n(u)`` for a boundary tower of even length index ``n``."""
    n = _parity_tower(C, tower, 0)
    return C.functor(tower, n, u)


def whisker_P(C, tower, u):
    """``P_n(u)`` for a boundary tower of odd length index ``n``."""
    n = _parity_tower(C, tower, 1)
    return C.functor(tower, n, u)


# -- invariant suites --------------------------------------------------------

def _tag(C, d, i):
    return [d, list(C.tag(d, i))]


def check_boundary_formulas(C):
    """Certificate boundaries agree with the closed formulas at every level."""
    X = C.base_cat
    rep = Report("boundary-formulas")
    checked = 0
    for k in range(C.truncation + 1):
        for i in range(C.count(k)):
            cert = C.cert(k, i)
            tower = C.tower(k, i)
            for n in range(k + 1):
                got_s = (n, X.bsrc(n, k + 1, cert))
                got_t = (n, X.btgt(n, k + 1, cert))
                if n == k:
                    # the defining typing of the certificate
                    if k == 0:
                        want_s, want_t = (0, C.point), (0, C.base(0, i))
                    else:
                        S, T = C._certificate_bounds(tower, C.base(k, i))
                        want_s, want_t = (k, S), (k, T)
                else:
                    m = C.bsrc(n, k, i)
                    p = C.btgt(n, k, i)
                    if n % 2 == 0:
                        want_s = (0, C.point) if n == 0 else (n, C.cert(n - 1, tower[n - 1][0]))
                        want_t = C.functor(tower, n - 1, (n, C.base(n, p)))
                    else:
                        want_s = C.functor(tower, n - 1, (n, C.base(n, m)))
                        want_t = (n, C.cert(n - 1, tower[n - 1][1]))
                    want_s = (n, X.lift(want_s[0], want_s[1], n))
                    want_t = (n, X.lift(want_t[0], want_t[1], n))
                checked += 1
                if got_s != want_s or got_t != want_t:
                    rep.witnesses.append({"cell": _tag(C, k, i), "level": n,
                                          "problem": "certificate boundary differs from formula"})
    rep.counts["checked"] = checked
    return rep.sort()


def check_composite_identities(C, max_pairs=None):
    """``F`` of a composite against the composite of ``F`` values.

    For ``q o_n r`` of dimension ``k > n + 1`` and cells ``g``, ``f`` of
    ``X`` parallel to the bases of ``q`` and ``r``:

    * n odd:  F^{q o r}(g o_n f) = (F^q(g) o_n M(t_{n+1} r)) o_{n+1} F^r(f)
    * n even: F^{q o r}(g o_n f) = F^q(g) o_{n+1} (P(s_{n+1} q) o_n F^r(f))
    """
    X = C.base_cat
    rep = Report("composite-identities")
    checked = 0
    top = C.truncation
    for k in range(2, top + 1):
        for n in range(k - 1):
            by_tgt = defaultdict(list)
            for r in range(C.count(k)):
                by_tgt[C.btgt(n, k, r)].append(r)
            for q in range(C.count(k)):
                for r in by_tgt.get(C.bsrc(n, k, q), ()):
                    qr = C.comp(n, k, q, r)
                    common = C.tower(k, r, n)
                    tq, tr, tqr = C.tower(k, q), C.tower(k, r), C.tower(k, qr)
                    if n % 2:
                        u = (n + 1, X.btgt(n + 1, k, C.base(k, r)))
                    else:
                        u = (n + 1, X.bsrc(n + 1, k, C.base(k, q)))
                    Fu = C.functor(common, n - 1, u)
                    gs = X.between(k, X.src(k, C.base(k, q)), X.tgt(k, C.base(k, q)))
                    fs = X.between(k, X.src(k, C.base(k, r)), X.tgt(k, C.base(k, r)))
                    for g, f in product(gs, fs):
                        lhs = C.functor(tqr, k - 1, (k, X.comp(n, k, g, f)))
                        Fg = C.functor(tq, k - 1, (k, g))
                        Ff = C.functor(tr, k - 1, (k, f))
                        if n % 2:
                            rhs = X.wcomp(n + 1, X.wcomp(n, Fg, Fu), Ff)
                        else:
                            rhs = X.wcomp(n + 1, Fg, X.wcomp(n, Fu, Ff))
                        checked += 1
                        if lhs != rhs:
                            rep.witnesses.append({
                                "cells": [_tag(C, k, q), _tag(C, k, r)], "n": n,
                                "factors": [[k, list(X.tag(k, g))], [k, list(X.tag(k, f))]],
                                "problem": "functor of composite differs",
                            })
                        if max_pairs and checked >= max_pairs:
                            rep.counts["checked"] = checked
                            return rep.sort()
    rep.counts["checked"] = checked
    return rep.sort()


def check_action_identity(Ca, Cb):
    """``F^{x.h}_n(u) = F^x_n(u) o_0 s(h)`` (n even) or ``o_0 t(h)`` (n odd)."""
    X = Ca.base_cat
    a, b = Ca.point, Cb.point
    rep = Report("action-identity")
    checked = 0
    for d in range(1, Ca.truncation + 1):
        n = d - 1
        hs = [h for h in range(X.count(d + 1))
              if X.bsrc(0, d + 1, h) == b and X.btgt(0, d + 1, h) == a]
        for x in range(Ca.count(d)):
            tx = Ca.tower(d, x)
            us = X.between(d, X.src(d, Ca.base(d, x)), X.tgt(d, Ca.base(d, x)))
            for h in hs:
                try:
                    y = Ca.act(Cb, d, x, h)
                except OmegaError as exc:
                    rep.witnesses.append({"cell": _tag(Ca, d, x), "acting": [d + 1, list(X.tag(d + 1, h))],
                                          "problem": f"action undefined: {exc}"})
                    continue
                ty = Cb.tower(d, y)
                side = (d, X.src(d + 1, h)) if n % 2 == 0 else (d, X.tgt(d + 1, h))
                for u in us:
                    lhs = Cb.functor(ty, n, (d, u))
                    rhs = X.wcomp(0, Ca.functor(tx, n, (d, u)), side)
                    checked += 1
                    if lhs != rhs:
                        rep.witnesses.append({"cell": _tag(Ca, d, x), "acting": [d + 1, list(X.tag(d + 1, h))],
                                              "argument": [d, list(X.tag(d, u))],
                                              "problem": "action does not commute with the boundary functor"})
    rep.counts["checked"] = checked
    return rep.sort()


def _hom_cells(X, d, b, a):
    """``X``-cells of dimension ``d + 1`` from ``b`` to ``a`` (the hom's ``d``-cells)."""
    return [h for h in range(X.count(d + 1))
            if X.bsrc(0, d + 1, h) == b and X.btgt(0, d + 1, h) == a]


def check_right_module(X, cosl, max_dim=None):
    """Unit, associativity and functoriality of ``c . h`` on every tuple.

    ``cosl`` maps each 0-cell ``a`` to ``a/X``.
    """
    rep = Report("right-module")
    counts = defaultdict(int)
    N = X.truncation if max_dim is None else max_dim
    objs = sorted(cosl)

    def bad(law, detail):
        rep.witnesses.append({"law": law, **detail})

    for a in objs:
        Ca = cosl[a]
        for d in range(N + 1):
            for c in range(Ca.count(d)):
                counts["unit"] += 1
                try:
                    if Ca.act(Ca, d, c, X.lift(0, a, d + 1)) != c:
                        bad("unit", {"cell": _tag(Ca, d, c)})
                except OmegaError as exc:
                    bad("unit", {"cell": _tag(Ca, d, c), "error": str(exc)})
        for b in objs:
            Cb = cosl[b]
            for d in range(N + 1):
                hs = _hom_cells(X, d, b, a)
                if not hs:
                    continue
                for bb in objs:
                    Cbb = cosl[bb]
                    h2s = _hom_cells(X, d, bb, b)
                    for c in range(Ca.count(d)):
                        for h in hs:
                            for h2 in h2s:
                                counts["associativity"] += 1
                                try:
                                    lhs = Cb.act(Cbb, d, Ca.act(Cb, d, c, h), h2)
                                    rhs = Ca.act(Cbb, d, c, X.comp(0, d + 1, h, h2))
                                except OmegaError as exc:
                                    lhs, rhs = None, str(exc)
                                if lhs != rhs:
                                    bad("associativity", {"cell": _tag(Ca, d, c), "objects": [a, b, bb]})
                # identities
                if d < N:
                    for c in range(Ca.count(d)):
                        for h in hs:
                            counts["identity"] += 1
                            try:
                                ok = Ca.act(Cb, d + 1, Ca.ident(d, c), X.ident(d + 1, h)) == \
                                    Cb.ident(d, Ca.act(Cb, d, c, h))
                            except OmegaError:
                                ok = False
                            if not ok:
                                bad("identity", {"cell": _tag(Ca, d, c), "objects": [a, b]})
                # composition: (c o_n c') . (h o_{n+1} h') = (c . h) o_n (c' . h')
                for n in range(d):
                    h_by_tgt = defaultdict(list)
                    for h in hs:
                        h_by_tgt[X.btgt(n + 1, d + 1, h)].append(h)
                    c_by_tgt = defaultdict(list)
                    for c in range(Ca.count(d)):
                        c_by_tgt[Ca.btgt(n, d, c)].append(c)
                    for c in range(Ca.count(d)):
                        for c2 in c_by_tgt.get(Ca.bsrc(n, d, c), ()):
                            cc = Ca.comp(n, d, c, c2)
                            for h in hs:
                                for h2 in h_by_tgt.get(X.bsrc(n + 1, d + 1, h), ()):
                                    counts["composition"] += 1
                                    try:
                                        lhs = Ca.act(Cb, d, cc, X.comp(n + 1, d + 1, h, h2))
                                        rhs = Cb.comp(n, d, Ca.act(Cb, d, c, h), Ca.act(Cb, d, c2, h2))
                                    except OmegaError as exc:
                                        lhs, rhs = None, str(exc)
                                    if lhs != rhs:
                                        bad("composition", {"cells": [_tag(Ca, d, c), _tag(Ca, d, c2)],
                                                            "n": n, "objects": [a, b]})
    rep.counts = dict(counts)
    return rep.sort()


def check_left_module(X, sl, max_dim=None):
    """The slice family ``X/(-)`` as a left module, via the dual coslices."""
    D = dual(X)
    rep = check_right_module(D, {b: S.inner for b, S in sl.items()}, max_dim)
    rep.check = "left-module"
    return rep


def check_bimodule_square(X, bis, max_dim=None):
    """``(k . m) . h = k . (m . h)`` for every bislice ``bis[(a, b)]``."""
    rep = Report("bimodule-square")
    checked = 0
    N = X.truncation if max_dim is None else max_dim
    objs = sorted({a for a, _ in bis} | {b for _, b in bis})
    for (a, b), M in sorted(bis.items()):
        for d in range(N + 1):
            for a2 in objs:
                hs = _hom_cells(X, d, a2, a)
                for b2 in objs:
                    ks = _hom_cells(X, d, b, b2)
                    if not hs or not ks:
                        continue
                    Mr, Ml, Mrl = bis[(a2, b)], bis[(a, b2)], bis[(a2, b2)]
                    for m in range(M.count(d)):
                        for h in hs:
                            for k in ks:
                                checked += 1
                                try:
                                    lhs = Ml.act_right(Mrl, d, M.act_left(Ml, d, k, m), h)
                                    rhs = Mr.act_left(Mrl, d, k, M.act_right(Mr, d, m, h))
                                except OmegaError as exc:
                                    lhs, rhs = None, str(exc)
                                if lhs != rhs:
                                    rep.witnesses.append({"cell": _tag(M, d, m), "objects": [a, b, a2, b2],
                                                          "problem": "left and right actions do not commute"})
    rep.counts["checked"] = checked
    return rep.sort()


def slice_suite(X, max_dim=None):
    """Every coslice invariant on all basepoints of ``X``; returns reports."""
    from orientals.axioms import check_axioms

    objs = range(X.count(0))
    cosl = {a: Coslice(X, a) for a in objs}
    sl = {b: Slice(X, b) for b in objs}
    reports = []
    for a in objs:
        C = cosl[a]
        r = check_axioms(C, max_dim)
        r.check = f"axioms:{a}/X"
        reports.append(r)
        for rr in (check_boundary_formulas(C), check_composite_identities(C)):
            rr.check = f"{rr.check}:{a}/X"
            reports.append(rr)
        for b in objs:
            rr = check_action_identity(C, cosl[b])
            rr.check = f"action-identity:{a}->{b}"
            reports.append(rr)
    reports.append(check_right_module(X, cosl, max_dim))
    reports.append(check_left_module(X, sl, max_dim))
    return reports
