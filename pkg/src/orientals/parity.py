"""Orientals and cubes built directly from parity data.

A ``j``-dimensional generator of the simplex flavour is a strictly
increasing tuple of ``j + 1`` vertices in ``{0..n}``; of the cube flavour
it is a string of length ``n`` over ``-``, ``0``, ``+`` with ``j`` zeros.
Sets of generators are bitmasks over the sorted generator list of their
dimension, so faces, unions and differences are integer operations.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product

from orientals import kernel
from orientals.core import BuiltCat, DimensionError, NotComposable, UnknownCell
from orientals.report import Report

SIMPLEX = "simplex"
CUBE = "cube"
FLAVORS = (SIMPLEX, CUBE)

_SIGN_ORDER = {"-": 0, "0": 1, "+": 2}
_CUBE_INPUT = str.maketrans({"⊖": "-", "⊙": "0", "⊕": "+"})


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def simplex_face(a, k):
    """Delete entry ``k`` of the vertex tuple ``a``."""
    return a[:k] + a[k + 1:]


def cube_face(a, i, sign):
    """Replace the ``i``-th ``0`` (1-indexed) of ``a`` by ``sign``."""
    seen = 0
    for pos, c in enumerate(a):
        if c == "0":
            seen += 1
            if seen == i:
                return a[:pos] + sign + a[pos + 1:]
    raise ValueError(f"{a!r} has fewer than {i} free coordinates")


def generator_faces(flavor, a):
    """``(odd, even)`` faces of one generator, as sorted tuples."""
    if flavor == SIMPLEX:
        if len(a) < 2:
            raise DimensionError("a vertex has no faces")
        odd = {simplex_face(a, k) for k in range(1, len(a), 2)}
        even = {simplex_face(a, k) for k in range(0, len(a), 2)}
        return tuple(sorted(odd)), tuple(sorted(even))
    j = a.count("0")
    if j == 0:
        raise DimensionError("a vertex has no faces")
    odd, even = set(), set()
    for i in range(1, j + 1):
        odd.add(cube_face(a, i, "-" if i % 2 else "+"))
        even.add(cube_face(a, i, "+" if i % 2 else "-"))
    key = _cube_key
    return tuple(sorted(odd, key=key)), tuple(sorted(even, key=key))


def _cube_key(a):
    return tuple(_SIGN_ORDER[c] for c in a)


class Ambient:
    """Generators of ``[n]`` or ``<n>`` per dimension with bitmask face tables."""

    def __init__(self, flavor, n):
        if flavor not in FLAVORS:
            raise ValueError(f"unknown flavor {flavor!r}")
        if n < 0:
            raise ValueError("n must be non-negative")
        self.flavor = flavor
        self.n = n
        self.gens = []
        if flavor == SIMPLEX:
            for j in range(n + 1):
                self.gens.append(list(combinations(range(n + 1), j + 1)))
        else:
            by_dim = [[] for _ in range(n + 1)]
            for s in product("-0+", repeat=n):
                a = "".join(s)
                by_dim[a.count("0")].append(a)
            self.gens = [sorted(g, key=_cube_key) for g in by_dim]
        self.index = [{a: i for i, a in enumerate(g)} for g in self.gens]
        # face masks of dimension-j generators, living in dimension j - 1
        self.odd = [[]]
        self.even = [[]]
        for j in range(1, n + 1):
            idx = self.index[j - 1]
            odd_row, even_row = [], []
            for a in self.gens[j]:
                o, e = generator_faces(flavor, a)
                odd_row.append(sum(1 << idx[f] for f in o))
                even_row.append(sum(1 << idx[f] for f in e))
            self.odd.append(odd_row)
            self.even.append(even_row)

    @property
    def top_dim(self):
        return self.n

    def size(self, j):
        return len(self.gens[j]) if 0 <= j <= self.n else 0

    def mask_of(self, j, elements):
        idx = self.index[j] if 0 <= j <= self.n else {}
        mask = 0
        for a in elements:
            a = self.normalize(a)
            if a not in idx:
                raise UnknownCell(f"{self.format_gen(a)} is not a {j}-dimensional generator")
            mask |= 1 << idx[a]
        return mask

    def elements(self, j, mask):
        g = self.gens[j]
        return [g[b] for b in _bits(mask)]

    def plus(self, j, mask):
        row = self.even[j]
        out = 0
        for b in _bits(mask):
            out |= row[b]
        return out

    def minus(self, j, mask):
        row = self.odd[j]
        out = 0
        for b in _bits(mask):
            out |= row[b]
        return out

    def normalize(self, a):
        if self.flavor == SIMPLEX:
            return tuple(a)
        return str(a).translate(_CUBE_INPUT)

    def format_gen(self, a):
        if self.flavor == CUBE:
            return a
        if all(v < 10 for v in a):
            return "(" + "".join(str(v) for v in a) + ")"
        return "(" + " ".join(str(v) for v in a) + ")"

    def parse_gen(self, text):
        a = parse_generator(self.flavor, text)
        if self.flavor == CUBE and len(a) != self.n:
            raise ValueError(f"{text!r} is not a generator of the {self.n}-cube")
        if self.flavor == SIMPLEX and a[-1] > self.n:
            raise ValueError(f"{text!r} is not a generator of the {self.n}-simplex")
        return a

    def format_set(self, j, mask):
        return tuple(self.format_gen(a) for a in self.elements(j, mask))

    def gen_dim(self, a):
        if self.flavor == SIMPLEX:
            return len(a) - 1
        return a.count("0")


@lru_cache(maxsize=None)
def ambient(flavor, n):
    return Ambient(flavor, n)


def parse_generator(flavor, text):
    """Parse ``"(0 1 3)"``, ``"(013)"``, ``"013"`` or a sign string."""
    text = text.strip()
    if flavor == CUBE:
        s = text.translate(_CUBE_INPUT)
        if set(s) - set("-0+"):
            raise ValueError(f"bad cube generator {text!r}")
        return s  # the empty string is the vertex of the 0-cube
    body = text.strip("()").strip()
    if not body:
        raise ValueError(f"bad simplex generator {text!r}")
    parts = body.replace(",", " ").split()
    if len(parts) == 1:
        parts = list(parts[0])
    entries = tuple(int(p) for p in parts)
    if any(b <= a for a, b in zip(entries, entries[1:])):
        raise ValueError(f"simplex entries must increase: {text!r}")
    return entries


@dataclass(frozen=True)
class SimplexGen:
    entries: tuple
    n: int

    def __post_init__(self):
        e = tuple(self.entries)
        object.__setattr__(self, "entries", e)
        if not e or any(b <= a for a, b in zip(e, e[1:])) or e[0] < 0 or e[-1] > self.n:
            raise ValueError(f"invalid generator {e} of [{self.n}]")

    @property
    def dim(self):
        return len(self.entries) - 1

    def faces(self):
        return simplex_faces(ParitySet.of(SIMPLEX, self.n, [self.entries]))


@dataclass(frozen=True)
class CubeGen:
    symbols: str
    n: int = -1

    def __post_init__(self):
        s = str(self.symbols).translate(_CUBE_INPUT)
        object.__setattr__(self, "symbols", s)
        if self.n < 0:
            object.__setattr__(self, "n", len(s))
        if len(s) != self.n or set(s) - set("-0+"):
            raise ValueError(f"invalid generator {s!r} of <{self.n}>")

    @property
    def dim(self):
        return self.symbols.count("0")

    def faces(self):
        return cube_faces(ParitySet.of(CUBE, self.n, [self.symbols]))


@dataclass(frozen=True)
class ParitySet:
    """Finite set of same-dimension generators, stored as a bitmask."""

    flavor: str
    n: int
    dim: int
    mask: int

    @classmethod
    def of(cls, flavor, n, elements, dim=None):
        amb = ambient(flavor, n)
        elems = [amb.normalize(e) if not isinstance(e, str) or flavor == CUBE
                 else amb.parse_gen(e) for e in elements]
        if dim is None:
            if not elems:
                raise ValueError("dimension of an empty set must be given")
            dim = amb.gen_dim(elems[0])
        if any(amb.gen_dim(e) != dim for e in elems):
            raise ValueError("generators of mixed dimension")
        return cls(flavor, n, dim, amb.mask_of(dim, elems))

    @classmethod
    def parse(cls, flavor, n, texts, dim=None):
        return cls.of(flavor, n, [parse_generator(flavor, t) for t in texts], dim)

    @property
    def ambient(self):
        return ambient(self.flavor, self.n)

    @property
    def elements(self):
        return self.ambient.elements(self.dim, self.mask)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return bin(self.mask).count("1")

    def __contains__(self, a):
        amb = self.ambient
        a = amb.normalize(a)
        i = amb.index[self.dim].get(a) if self.dim <= self.n else None
        return i is not None and bool(self.mask >> i & 1)

    def _same(self, other):
        if (self.flavor, self.n, self.dim) != (other.flavor, other.n, other.dim):
            raise ValueError("parity sets from different ambients")

    def __or__(self, other):
        self._same(other)
        return ParitySet(self.flavor, self.n, self.dim, self.mask | other.mask)

    def __and__(self, other):
        self._same(other)
        return ParitySet(self.flavor, self.n, self.dim, self.mask & other.mask)

    def __sub__(self, other):
        self._same(other)
        return ParitySet(self.flavor, self.n, self.dim, self.mask & ~other.mask)

    @property
    def plus(self):
        """Even faces of all elements."""
        if self.dim == 0:
            raise DimensionError("0-dimensional generators have no faces")
        return ParitySet(self.flavor, self.n, self.dim - 1, self.ambient.plus(self.dim, self.mask))

    @property
    def minus(self):
        """Odd faces of all elements."""
        if self.dim == 0:
            raise DimensionError("0-dimensional generators have no faces")
        return ParitySet(self.flavor, self.n, self.dim - 1, self.ambient.minus(self.dim, self.mask))

    def text(self):
        return list(self.ambient.format_set(self.dim, self.mask))

    def __repr__(self):
        return "{" + ", ".join(self.text()) + "}"


def _faces(xi, flavor):
    if isinstance(xi, (SimplexGen, CubeGen)):
        return xi.faces()
    if xi.flavor != flavor:
        raise ValueError(f"expected a {flavor} parity set")
    return xi.minus, xi.plus


def simplex_faces(xi):
    """``(odd, even)`` faces of a simplex generator or parity set."""
    return _faces(xi, SIMPLEX)


def cube_faces(xi):
    """``(odd, even)`` faces of a cube generator or parity set."""
    return _faces(xi, CUBE)


def well_formed_mask(amb, j, mask):
    """No two elements share an even face or share an odd face."""
    seen_o = seen_e = 0
    odd, even = amb.odd[j], amb.even[j]
    for b in _bits(mask):
        o, e = odd[b], even[b]
        if o & seen_o or e & seen_e:
            return False
        seen_o |= o
        seen_e |= e
    return True


def moves_mask(amb, j, xi, mu, pi):
    xp = amb.plus(j, xi)
    xm = amb.minus(j, xi)
    return pi == (mu | xp) & ~xm and mu == (pi | xm) & ~xp


def well_formed(xi):
    if xi.dim == 0:
        return True
    return well_formed_mask(xi.ambient, xi.dim, xi.mask)


def moves(xi, mu, pi):
    """Whether ``xi`` moves ``mu`` to ``pi`` (both movement equations)."""
    if not (mu.dim == pi.dim == xi.dim - 1):
        raise DimensionError("mu and pi must sit one dimension below xi")
    xi._same(ParitySet(mu.flavor, mu.n, xi.dim, 0))
    return moves_mask(xi.ambient, xi.dim, xi.mask, mu.mask, pi.mask)


@dataclass(frozen=True)
class CellTower:
    """Top set plus the boundary pair ``(mu_k, pi_k)`` for each lower ``k``."""

    flavor: str
    n: int
    top: int
    bounds: tuple

    @property
    def dim(self):
        return len(self.bounds)

    @property
    def ambient(self):
        return ambient(self.flavor, self.n)

    def lift(self):
        """The identity on this tower."""
        return CellTower(self.flavor, self.n, 0, self.bounds + ((self.top, self.top),))

    def source(self):
        mu, _ = self.bounds[-1]
        return CellTower(self.flavor, self.n, mu, self.bounds[:-1])

    def target(self):
        _, pi = self.bounds[-1]
        return CellTower(self.flavor, self.n, pi, self.bounds[:-1])

    def problems(self):
        """Reasons this tower fails to be a cell (empty when valid)."""
        amb = self.ambient
        d = self.dim
        out = []
        if d > self.n:
            if self.top:
                out.append("non-empty top above the ambient dimension")
            levels = [(k, self.bounds[k]) for k in range(self.n + 1, d)]
            if any(m or p for _, (m, p) in levels):
                out.append("non-empty boundary above the ambient dimension")
        # 0-cells are single vertices
        if d == 0:
            if bin(self.top).count("1") != 1:
                out.append("a 0-cell must be a single vertex")
            return out
        for k in range(min(d, self.n + 1)):
            mu, pi = self.bounds[k]
            for name, v in (("source", mu), ("target", pi)):
                if v >> amb.size(k):
                    out.append(f"{name} at level {k} has foreign elements")
                elif k == 0:
                    if bin(v).count("1") != 1:
                        out.append(f"{name} at level 0 is not a vertex")
                elif not well_formed_mask(amb, k, v):
                    out.append(f"{name} at level {k} is not well-formed")
                elif not moves_mask(amb, k, v, *self.bounds[k - 1]):
                    out.append(f"{name} at level {k} does not move the level {k - 1} boundary")
        if d <= self.n:
            mu, pi = self.bounds[d - 1]
            if self.top >> amb.size(d):
                out.append("top has foreign elements")
            elif not well_formed_mask(amb, d, self.top):
                out.append("top is not well-formed")
            elif not moves_mask(amb, d, self.top, mu, pi):
                out.append("top does not move its source to its target")
        return out

    def valid(self):
        return not self.problems()

    def text(self):
        amb = self.ambient

        def fmt(k, m):
            return list(amb.format_set(k, m)) if k <= self.n else []

        return {
            "top": fmt(self.dim, self.top),
            "boundaries": [[fmt(k, m), fmt(k, p)] for k, (m, p) in enumerate(self.bounds)],
        }


def compose_towers(n_level, x, y):
    """``x o_n y`` ("x after y"), lifting the lower tower by identities."""
    while x.dim < y.dim:
        x = x.lift()
    while y.dim < x.dim:
        y = y.lift()
    d = x.dim
    if not 0 <= n_level < d:
        raise DimensionError(f"cannot compose {d}-towers along {n_level}")
    # s_n(x) must equal t_n(y)
    if x.bounds[:n_level] != y.bounds[:n_level] or x.bounds[n_level][0] != y.bounds[n_level][1]:
        raise NotComposable(f"towers do not match at level {n_level}")
    bounds = list(x.bounds[:n_level])
    bounds.append((y.bounds[n_level][0], x.bounds[n_level][1]))
    for k in range(n_level + 1, d):
        (xm, xp), (ym, yp) = x.bounds[k], y.bounds[k]
        bounds.append((xm | ym, xp | yp))
    return CellTower(x.flavor, x.n, x.top | y.top, tuple(bounds))


class TowerCat(BuiltCat):
    """``O(n)`` or ``Q(n)``: every well-formed moving tower, union composition."""

    def __init__(self, flavor, n, max_dim=None, node_limit=0, extra=()):
        top = n if max_dim is None else min(max_dim, n)
        super().__init__(top)
        self.flavor = flavor
        self.n = n
        self.kind = "oriental" if flavor == SIMPLEX else "cube"
        self.amb = ambient(flavor, n)
        self.node_limit = node_limit
        self.nodes = 0
        self._extra = {}
        for d, key in extra:
            self._extra.setdefault(d, []).append(tuple(key))
        self._tower_memo = {}
        self._build()

    def _generate(self, d):
        amb = self.amb
        if d == 0:
            keys = [(1 << g,) for g in range(amb.size(0))]
        else:
            keys = []
            prev = self._keys[d - 1]
            index = self._index[d - 1]
            odd, even = amb.odd[d], amb.even[d]
            for s, k in enumerate(prev):
                keys.append((0, s, s))
                mu = k[0]
                remaining = 0
                if self.node_limit:
                    remaining = max(self.node_limit - self.nodes, 1)
                found, nodes = kernel.search_moves(mu, odd, even, remaining)
                self.nodes += nodes
                bkey = k[1:]
                for xi, pi in found:
                    t = index.get((pi,) + bkey)
                    if t is not None:
                        keys.append((xi, s, t))
        keys.extend(self._extra.get(d, ()))
        return keys

    def _comp_content(self, n, d, x, y):
        return (self._keys[d][x][0] | self._keys[d][y][0],)

    def _ident_content(self, d, i):
        return (0,)

    def _render(self, d, content):
        return self.amb.format_set(d, content[0])

    def top(self, d, i):
        """Top mask of a cell (empty for wrappers above the truncation)."""
        if d > self.truncation:
            return 0
        return self._keys[d][i][0]

    def top_set(self, d, i):
        return ParitySet(self.flavor, self.n, d, self.top(d, i))

    def tower(self, d, i):
        key = (d, i)
        t = self._tower_memo.get(key)
        if t is None:
            if d == 0:
                t = CellTower(self.flavor, self.n, self.top(0, i), ())
            else:
                s = self.tower(d - 1, self.src(d, i))
                tg = self.tower(d - 1, self.tgt(d, i))
                t = CellTower(self.flavor, self.n, self.top(d, i), s.bounds + ((s.top, tg.top),))
            self._tower_memo[key] = t
        return t

    def find(self, d, top, s=None, t=None):
        """Index of the ``d``-cell with this top mask and boundary, or ``None``."""
        if d > self.truncation:
            return None
        if d == 0:
            return self._index[0].get((top,))
        return self._index[d].get((top, s, t))

    def find_tower(self, tower):
        d = tower.dim
        if d == 0:
            return self.find(0, tower.top)
        s = self.find_tower(tower.source())
        t = self.find_tower(tower.target())
        if s is None or t is None:
            return None
        return self.find(d, tower.top, s, t)

    def with_top(self, d, top):
        return [i for i, k in enumerate(self._keys[d]) if k[0] == top]

    def vertex(self, v):
        """The 0-cell for a vertex (simplex index or sign string)."""
        return self.find(0, self.amb.mask_of(0, [(v,) if isinstance(v, int) else v]))

    def parse_top(self, d, texts):
        return self.amb.mask_of(d, [parse_generator(self.flavor, t) for t in texts])


def enumerate_cells(flavor, n, max_dim=None, node_limit=0):
    """``O(n)`` (``flavor="simplex"``) or ``Q(n)`` (``"cube"``)."""
    return TowerCat(flavor, n, max_dim, node_limit)


def oriental(n, max_dim=None):
    return TowerCat(SIMPLEX, n, max_dim)


def cube(n, max_dim=None):
    return TowerCat(CUBE, n, max_dim)


def closure_check(X, max_dim=None):
    """Every registered tower is a cell and every composite is registered."""
    top = X.truncation if max_dim is None else min(max_dim, X.truncation)
    witnesses = []
    for d in range(top + 1):
        for i in range(X.count(d)):
            probs = X.tower(d, i).problems()
            if probs:
                witnesses.append({"check": "invalid-tower", "cell": [d, list(X.tag(d, i))],
                                  "problems": probs})
    for d in range(1, top + 1):
        for n in range(d):
            by_src = {}
            for y in range(X.count(d)):
                by_src.setdefault(X.btgt(n, d, y), []).append(y)
            for x in range(X.count(d)):
                tx = X.tower(d, x)
                for y in by_src.get(X.bsrc(n, d, x), ()):
                    c = compose_towers(n, tx, X.tower(d, y))
                    if X.find_tower(c) is None:
                        witnesses.append({
                            "check": "composite-not-registered",
                            "n": n,
                            "cells": [[d, list(X.tag(d, x))], [d, list(X.tag(d, y))]],
                            "problems": c.problems() or ["boundary not registered"],
                        })
    return Report("closure", witnesses, {"max_dim": top}).sort()
