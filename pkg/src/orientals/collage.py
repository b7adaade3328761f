"""Collages of modules, and the cone and cylinder constructions.

A collage glues a left category ``L`` and a right category ``R`` along a
family of module values ``M(a, b)`` (``a`` an object of ``L``, ``b`` of
``R``):

    hom(l a, l a') = L(a, a')     hom(r b, r b') = R(b, b')
    hom(l a, r b)  = M(a, b)      hom(r b, l a)  = empty

``o_0`` between a module cell and an ``L``-cell is the right action,
between an ``R``-cell and a module cell the left action.  One-sided
collages take the terminal category on the missing side; its single
object is the adjoined apex.
"""

from __future__ import annotations

from orientals.core import (
    BudgetExceeded,
    BuiltCat,
    CellMap,
    NotComposable,
    OmegaError,
    Terminal,
    dual,
    terminal,
)
from orientals.slices import ActionMismatch, Bislice, Coslice, Slice

LEFT, MODULE, RIGHT = 0, 1, 2


class Bimodule:
    """Module values ``M(a, b)`` with a right ``L``-action and a left ``R``-action.

    ``act_right(a, b, a2, d, m, h)``: ``m`` a ``d``-cell of ``M(a, b)``, ``h``
    a ``(d+1)``-cell ``a2 ~> a`` of ``L``; result in ``M(a2, b)``.
    ``act_left(a, b, b2, d, k, m)``: ``k`` a ``(d+1)``-cell ``b ~> b2`` of
    ``R``; result in ``M(a, b2)``.
    """

    def __init__(self, left, right):
        self.left = left
        self.right = right

    def value(self, a, b):
        raise NotImplementedError

    def act_right(self, a, b, a2, d, m, h):
        raise NotImplementedError

    def act_left(self, a, b, b2, d, k, m):
        raise NotImplementedError


class _Apex(Bimodule):
    """Shared plumbing for one-sided modules over a terminal side."""

    def __init__(self, left, right, values, right_action=None, left_action=None):
        super().__init__(left, right)
        self._values = values
        self._right_action = right_action
        self._left_action = left_action

    def value(self, a, b):
        return self._values(a, b)

    def act_right(self, a, b, a2, d, m, h):
        if self._right_action is None:
            return m
        return self._right_action(a, b, a2, d, m, h)

    def act_left(self, a, b, b2, d, k, m):
        if self._left_action is None:
            return m
        return self._left_action(a, b, b2, d, k, m)


def right_module(X, values, action):
    """Right ``X``-module: ``values[a]`` and ``action(a, a2, d, m, h)``."""
    return _Apex(X, terminal(), lambda a, b: values[a],
                 right_action=lambda a, b, a2, d, m, h: action(a, a2, d, m, h))


def left_module(X, values, action):
    """Left ``X``-module: ``values[b]`` and ``action(b, b2, d, k, m)``."""
    return _Apex(terminal(), X, lambda a, b: values[b],
                 left_action=lambda a, b, b2, d, k, m: action(b, b2, d, k, m))


class CosliceModule(_Apex):
    """``(-)/X`` as a right ``X``-module."""

    def __init__(self, X):
        self.cosl = [Coslice(X, a) for a in range(X.count(0))]
        super().__init__(X, terminal(), lambda a, b: self.cosl[a],
                         right_action=lambda a, b, a2, d, m, h: self.cosl[a].act(self.cosl[a2], d, m, h))


class SliceModule(_Apex):
    """``X/(-)`` as a left ``X``-module."""

    def __init__(self, X):
        self.sl = [Slice(X, b) for b in range(X.count(0))]
        super().__init__(terminal(), X, lambda a, b: self.sl[b],
                         left_action=lambda a, b, b2, d, k, m: self.sl[b].act(self.sl[b2], d, k, m))


class BisliceModule(Bimodule):
    """``(-)/X/(-)``: right action on the coslice side, left on the slice side."""

    def __init__(self, X):
        super().__init__(X, X)
        objs = range(X.count(0))
        cosl = [Coslice(X, a) for a in objs]
        sl = [Slice(X, b) for b in objs]
        self.bis = {(a, b): Bislice(X, a, b, cosl[a], sl[b]) for a in objs for b in objs}

    def value(self, a, b):
        return self.bis[(a, b)]

    def act_right(self, a, b, a2, d, m, h):
        return self.bis[(a, b)].act_right(self.bis[(a2, b)], d, m, h)

    def act_left(self, a, b, b2, d, k, m):
        return self.bis[(a, b)].act_left(self.bis[(a, b2)], d, k, m)


class Collage(BuiltCat):
    """Collage of a bimodule; keys start with the region code."""

    kind = "collage"

    def __init__(self, module, names=("left", "module", "right"), kind=None):
        L, R = module.left, module.right
        self.L, self.R, self.module = L, R, module
        self.names = names
        if kind:
            self.kind = kind
        self.values = {(a, b): module.value(a, b)
                       for a in range(L.count(0)) for b in range(R.count(0))}
        top = max([L.truncation, R.truncation] + [M.truncation + 1 for M in self.values.values()])
        super().__init__(top)
        self._content_index = []
        self._build()

    def _generate(self, d):
        L, R = self.L, self.R
        if d == 0:
            return [(LEFT, a) for a in range(L.count(0))] + [(RIGHT, b) for b in range(R.count(0))]
        prev = self._content_index[d - 1]
        keys = []
        for region, C in ((LEFT, L), (RIGHT, R)):
            for i in range(C.count(d)):
                keys.append((region, i, prev[(region, C.src(d, i))], prev[(region, C.tgt(d, i))]))
        for (a, b), M in self.values.items():
            for m in range(M.count(d - 1)):
                if d == 1:
                    s, t = prev[(LEFT, a)], prev[(RIGHT, b)]
                else:
                    s = prev[(MODULE, a, b, M.src(d - 1, m))]
                    t = prev[(MODULE, a, b, M.tgt(d - 1, m))]
                keys.append((MODULE, a, b, m, s, t))
        return keys

    def _after_dim(self, d):
        if d == 0:
            self._content_index.append({k: i for i, k in enumerate(self._keys[0])})
        else:
            self._content_index.append({k[:-2]: i for i, k in enumerate(self._keys[d])})

    def find(self, d, content):
        """Index of the ``d``-cell with the given region content, or ``None``."""
        return self._content_index[min(d, self.truncation)].get(tuple(content))

    def region(self, d, i):
        return self.content(d, i)[0]

    def _comp_content(self, n, d, x, y):
        kx, ky = self.content(d, x), self.content(d, y)
        rx, ry = kx[0], ky[0]
        if rx == ry == LEFT:
            return (LEFT, self.L.comp(n, d, kx[1], ky[1]))
        if rx == ry == RIGHT:
            return (RIGHT, self.R.comp(n, d, kx[1], ky[1]))
        try:
            if n >= 1 and rx == ry == MODULE:
                _, a, b, mx = kx
                return (MODULE, a, b, self.values[(a, b)].comp(n - 1, d - 1, mx, ky[3]))
            if n == 0 and rx == MODULE and ry == LEFT:
                _, a, b, m = kx
                a2 = self.L.bsrc(0, d, ky[1])
                return self._landed(d, a2, b, self.module.act_right(a, b, a2, d - 1, m, ky[1]))
            if n == 0 and rx == RIGHT and ry == MODULE:
                _, a, b, m = ky
                b2 = self.R.btgt(0, d, kx[1])
                return self._landed(d, a, b2, self.module.act_left(a, b, b2, d - 1, kx[1], m))
        except ActionMismatch:
            raise
        except OmegaError as exc:
            raise ActionMismatch(str(exc)) from exc
        raise NotComposable(f"no composite of a {self.names[rx]} cell after a {self.names[ry]} cell")

    def _landed(self, d, a, b, m):
        M = self.values[(a, b)]
        if not isinstance(m, int) or not 0 <= m < M.count(d - 1):
            raise ActionMismatch(f"action produced {m!r}, not a {d - 1}-cell of M({a}, {b})")
        return (MODULE, a, b, m)

    def _ident_content(self, d, i):
        k = self.content(d, i)
        if k[0] == LEFT:
            return (LEFT, self.L.ident(d, k[1]))
        if k[0] == RIGHT:
            return (RIGHT, self.R.ident(d, k[1]))
        _, a, b, m = k
        return (MODULE, a, b, self.values[(a, b)].ident(d - 1, m))

    def _render(self, d, content):
        region = content[0]
        if region == LEFT:
            return (self.names[0], tuple(self.L.tag(d, content[1])))
        if region == RIGHT:
            return (self.names[2], tuple(self.R.tag(d, content[1])))
        _, a, b, m = content
        return (self.names[1], a, b, tuple(self.values[(a, b)].tag(d - 1, m)))


def collage_bimodule(module, kind=None):
    return Collage(module, kind=kind)


def collage_right(X, values, action, kind=None):
    """Collage of a right ``X``-module: ``X`` plus an apex on the right."""
    return Collage(right_module(X, values, action), names=("left", "module", "star"), kind=kind)


def collage_left(X, values, action, kind=None):
    """Collage of a left ``X``-module: an apex on the left plus ``X``."""
    return Collage(left_module(X, values, action), names=("star", "module", "right"), kind=kind)


def cone_under(X):
    """``s(X)``: collage of the right module ``(-)/X``."""
    return Collage(CosliceModule(X), names=("left", "module", "star"), kind="cone")


def cone_over(X):
    """``s̄(X)``: collage of the left module ``X/(-)``."""
    return Collage(SliceModule(X), names=("star", "module", "right"), kind="cocone")


def cylinder(X):
    """``c(X)``: collage of the bimodule ``(-)/X/(-)``."""
    return Collage(BisliceModule(X), kind="cyl")


CONSTRUCTIONS = {"s": cone_under, "cone": cone_under, "c": cylinder, "cylinder": cylinder,
                 "sbar": cone_over, "cocone": cone_over}


def total_cells(X):
    return sum(X.count(d) for d in range(X.truncation + 1))


def iterate(construction, n, budget=None):
    """``n``-fold cone (``"s"``) or cylinder (``"c"``) on the terminal category.

    ``budget`` bounds the total number of registered cells of every stage.
    """
    step = CONSTRUCTIONS[construction]
    X = terminal()
    for _ in range(n):
        X = step(X)
        if budget is not None and total_cells(X) > budget:
            raise BudgetExceeded(f"stage with {total_cells(X)} cells exceeds budget {budget}")
    return X


def star(C):
    """The apex 0-cell of a one-sided collage."""
    if isinstance(C.R, Terminal) and C.names[2] == "star":
        return C.find(0, (RIGHT, 0))
    if isinstance(C.L, Terminal) and C.names[0] == "star":
        return C.find(0, (LEFT, 0))
    raise ValueError("not a one-sided collage")


def dual_cone_map(X):
    """Region-preserving map ``s̄(X) -> s(X^op)^op``, swapping the two sides."""
    A = cone_over(X)
    B = dual(cone_under(dual(X)))
    inner = B.inner
    table = []
    for d in range(A.truncation + 1):
        row = []
        for i in range(A.count(d)):
            k = A.content(d, i)
            if k[0] == LEFT:
                # the apex sits on the left of s̄(X) and on the right of s(X^op)
                row.append(inner.find(d, (RIGHT, k[1])))
            elif k[0] == RIGHT:
                row.append(inner.find(d, (LEFT, k[1])))
            else:
                _, a, b, m = k
                row.append(inner.find(d, (MODULE, b, a, m)))
        table.append(row)
    return CellMap(A, B, table)
