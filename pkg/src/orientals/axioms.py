"""Exhaustive (or seeded-sampled) check of the strict omega-category laws.

Laws checked up to ``max_dim``: globularity, boundaries of identities,
the source-target axioms for every composite, unit laws, associativity,
interchange and compatibility of identities with composition.

A composite that already violates the source-target axioms is recorded
once; later laws whose evaluation passes through it are counted as
``derived`` instead of producing further witnesses.
"""

from __future__ import annotations

import random
from collections import defaultdict

from orientals.core import OmegaError
from orientals.report import Report

EXHAUSTIVE_LIMIT = 10**6


class _Tainted(Exception):
    pass


class _Checker:
    def __init__(self, X):
        self.X = X
        self.bad = set()
        self.report = Report("axioms")
        self.derived = 0

    def comp(self, n, d, x, y):
        if (n, d, x, y) in self.bad:
            raise _Tainted
        return self.X.comp(n, d, x, y)

    def tags(self, d, ids):
        return [list(self.X.tag(d, i)) for i in ids]

    def run(self, law, d, ids, fn, **extra):
        try:
            problem = fn()
        except _Tainted:
            self.derived += 1
            return
        except OmegaError as exc:
            problem = f"undefined: {exc}"
        if problem:
            w = {"law": law, "dim": d, "cells": self.tags(d, ids), "problem": problem}
            w.update(extra)
            self.report.witnesses.append(w)


def _by_key(X, d, fn):
    table = defaultdict(list)
    for i in range(X.count(d)):
        table[fn(i)].append(i)
    return table


def _slots_total(slots):
    return sum(s[-1] for s in slots)


def _iterate(slots, expand, rng, budget):
    """Yield tuples exhaustively or as a weighted uniform sample."""
    total = _slots_total(slots)
    if total <= EXHAUSTIVE_LIMIT:
        for slot in slots:
            yield from expand(slot)
        return
    weights = [s[-1] for s in slots]
    for slot in rng.choices(slots, weights=weights, k=budget):
        yield from expand(slot, rng)


def check_axioms(X, max_dim=None, budget=100_000, seed=0):
    """Report of every violated law; an empty report means all laws hold."""
    top = X.truncation if max_dim is None else max_dim
    rng = random.Random(seed)
    ck = _Checker(X)
    counts = defaultdict(int)
    sampled = {}

    # globularity and identity boundaries
    for d in range(top + 1):
        for i in range(X.count(d)):
            if d >= 2:
                def glob(d=d, i=i):
                    s, t = X.src(d, i), X.tgt(d, i)
                    if X.src(d - 1, s) != X.src(d - 1, t) or X.tgt(d - 1, s) != X.tgt(d - 1, t):
                        return "source and target are not parallel"
                ck.run("globularity", d, [i], glob)
                counts["globularity"] += 1
            if d < top:
                def ident(d=d, i=i):
                    e = X.ident(d, i)
                    if X.src(d + 1, e) != i or X.tgt(d + 1, e) != i:
                        return "identity does not have the cell as source and target"
                ck.run("identity-boundary", d, [i], ident)
                counts["identity-boundary"] += 1

    # composable pairs, per (d, n)
    pairs = {}
    for d in range(1, top + 1):
        for n in range(d):
            by_tgt = _by_key(X, d, lambda y, n=n, d=d: X.btgt(n, d, y))
            pairs[(d, n)] = by_tgt

    # source-target axioms, then units and identities of composites, one
    # dimension at a time so that a bad composite is blamed before any
    # higher law that goes through it; offending composites are blamed once
    for d in range(1, top + 1):
        for n in range(d):
            by_tgt = pairs[(d, n)]
            for x in range(X.count(d)):
                for y in by_tgt.get(X.bsrc(n, d, x), ()):
                    counts["source-target"] += 1

                    def st(d=d, n=n, x=x, y=y):
                        if (n, d, x, y) in ck.bad:
                            raise _Tainted
                        try:
                            c = X.comp(n, d, x, y)
                        except OmegaError:
                            ck.bad.add((n, d, x, y))
                            raise
                        for k in range(d):
                            if k > n:
                                es = ck.comp(n, k, X.bsrc(k, d, x), X.bsrc(k, d, y))
                                et = ck.comp(n, k, X.btgt(k, d, x), X.btgt(k, d, y))
                            else:
                                es, et = X.bsrc(k, d, y), X.btgt(k, d, x)
                            if X.bsrc(k, d, c) != es or X.btgt(k, d, c) != et:
                                ck.bad.add((n, d, x, y))
                                return f"{k}-boundary of the composite is wrong"
                    ck.run("source-target", d, [x, y], st, n=n)

        for n in range(d):
            by_tgt = pairs[(d, n)]
            for x in range(X.count(d)):
                def unit(d=d, n=n, x=x):
                    s = X.lift(n, X.bsrc(n, d, x), d)
                    t = X.lift(n, X.btgt(n, d, x), d)
                    if ck.comp(n, d, x, s) != x:
                        ck.bad.add((n, d, x, s))
                        return "right unit law fails"
                    if ck.comp(n, d, t, x) != x:
                        ck.bad.add((n, d, t, x))
                        return "left unit law fails"
                ck.run("unit", d, [x], unit, n=n)
                counts["unit"] += 1
                if d < top:
                    for y in by_tgt.get(X.bsrc(n, d, x), ()):
                        def idc(d=d, n=n, x=x, y=y):
                            ix, iy = X.ident(d, x), X.ident(d, y)
                            lhs = X.ident(d, ck.comp(n, d, x, y))
                            rhs = X.comp(n, d + 1, ix, iy)
                            if lhs == rhs:
                                return None
                            # a composite of identities with wrong lower
                            # boundaries is reported by the source-target law
                            for k in range(d):
                                if k > n:
                                    es = ck.comp(n, k, X.bsrc(k, d, x), X.bsrc(k, d, y))
                                    et = ck.comp(n, k, X.btgt(k, d, x), X.btgt(k, d, y))
                                else:
                                    es, et = X.bsrc(k, d, y), X.btgt(k, d, x)
                                if X.bsrc(k, d + 1, rhs) != es or X.btgt(k, d + 1, rhs) != et:
                                    raise _Tainted
                            # the lower composite is already vouched for by the
                            # unit law, or the upper one is not even an identity
                            unit_pair = (y == X.lift(n, X.bsrc(n, d, x), d)
                                         or x == X.lift(n, X.btgt(n, d, y), d))
                            if unit_pair or not X.is_identity(d + 1, rhs):
                                raise _Tainted
                            ck.bad.add((n, d, x, y))
                            return "identity of a composite differs from composite of identities"
                        ck.run("identity-composite", d, [x, y], idc, n=n)
                        counts["identity-composite"] += 1

    # associativity
    slots = []
    for (d, n), by_tgt in pairs.items():
        by_src = _by_key(X, d, lambda x, n=n, d=d: X.bsrc(n, d, x))
        for y in range(X.count(d)):
            xs = by_src.get(X.btgt(n, d, y), [])
            zs = by_tgt.get(X.bsrc(n, d, y), [])
            if xs and zs:
                slots.append((d, n, y, xs, zs, len(xs) * len(zs)))

    def expand_assoc(slot, rng=None):
        d, n, y, xs, zs, _ = slot
        if rng is None:
            return ((d, n, x, y, z) for x in xs for z in zs)
        return [(d, n, rng.choice(xs), y, rng.choice(zs))]

    sampled["associativity"] = _slots_total(slots) > EXHAUSTIVE_LIMIT
    for d, n, x, y, z in _iterate(slots, expand_assoc, rng, budget):
        def assoc(d=d, n=n, x=x, y=y, z=z):
            lhs = ck.comp(n, d, ck.comp(n, d, x, y), z)
            rhs = ck.comp(n, d, x, ck.comp(n, d, y, z))
            if lhs != rhs:
                return "associativity fails"
        ck.run("associativity", d, [x, y, z], assoc, n=n)
        counts["associativity"] += 1

    # interchange: (x o_k y) o_n (z o_k w) = (x o_n z) o_k (y o_n w), n < k < d
    slots = []
    for d in range(2, top + 1):
        for k in range(1, d):
            by_tgt_k = pairs[(d, k)]
            for n in range(k):
                by_tgt_n = pairs[(d, n)]
                for x in range(X.count(d)):
                    ys = by_tgt_k.get(X.bsrc(k, d, x), [])
                    if not ys:
                        continue
                    for z in by_tgt_n.get(X.bsrc(n, d, x), ()):
                        ws = by_tgt_k.get(X.bsrc(k, d, z), [])
                        if ws:
                            slots.append((d, n, k, x, z, ys, ws, len(ys) * len(ws)))

    def expand_inter(slot, rng=None):
        d, n, k, x, z, ys, ws, _ = slot
        if rng is None:
            return ((d, n, k, x, y, z, w) for y in ys for w in ws)
        return [(d, n, k, x, rng.choice(ys), z, rng.choice(ws))]

    sampled["interchange"] = _slots_total(slots) > EXHAUSTIVE_LIMIT
    for d, n, k, x, y, z, w in _iterate(slots, expand_inter, rng, budget):
        def inter(d=d, n=n, k=k, x=x, y=y, z=z, w=w):
            lhs = ck.comp(n, d, ck.comp(k, d, x, y), ck.comp(k, d, z, w))
            rhs = ck.comp(k, d, ck.comp(n, d, x, z), ck.comp(n, d, y, w))
            if lhs != rhs:
                return "interchange fails"
        ck.run("interchange", d, [x, y, z, w], inter, n=n, k=k)
        counts["interchange"] += 1

    rep = ck.report
    rep.counts = dict(counts)
    rep.counts["derived"] = ck.derived
    rep.counts["sampled"] = sampled
    rep.counts["max_dim"] = top
    return rep.sort()
