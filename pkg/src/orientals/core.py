"""Finite, dimension-truncated strict globular omega-categories.

Every category carries a truncation ``N``.  Cells of dimension ``d <= N``
live in a registry; cells above ``N`` are formal identities
``i^(d-N)(x)`` and are addressed by the id of the underlying ``N``-cell
``x``, so ``src``/``tgt``/``comp`` unfold them on the fly.

Cells are addressed by ``(dim, idx)``.  Within one dimension the indices
follow the canonical (sorted) order of the cell keys, so two builds of
the same category agree index-for-index and tag-for-tag.

Composition follows the convention ``x o_n y`` = "x after y": it is
defined when ``s_n(x) == t_n(y)``, and then ``s_k(x o_n y) = s_k(y)`` for
``k <= n``.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Callable, NamedTuple


class OmegaError(Exception):
    """Base class for structural errors."""


class DimensionError(OmegaError, ValueError):
    pass


class UnknownCell(OmegaError, LookupError):
    pass


class NotComposable(OmegaError, ValueError):
    pass


class ClosureError(OmegaError):
    """A composite (or identity) was computed but is not a registered cell."""


class TargetMismatch(OmegaError, ValueError):
    pass


class BudgetExceeded(OmegaError, RuntimeError):
    pass


class Cell(NamedTuple):
    dim: int
    idx: int


class OmegaCat:
    """Read-only interface shared by every finite omega-category here.

    Subclasses provide ``count``, ``src``, ``tgt``, ``ident``, ``tag`` and
    ``_comp`` (composition of registered, composable cells).
    """

    truncation = 0
    kind = "omega"

    def __init__(self):
        self._comp_memo = {}
        self._between = {}

    # -- primitive structure ---------------------------------------------
    def count(self, d):
        raise NotImplementedError

    def src(self, d, i):
        raise NotImplementedError

    def tgt(self, d, i):
        raise NotImplementedError

    def ident(self, d, i):
        raise NotImplementedError

    def tag(self, d, i):
        raise NotImplementedError

    def _comp(self, n, d, x, y):
        raise NotImplementedError

    # -- derived structure -----------------------------------------------
    def cells(self, d):
        return range(self.count(d))

    def bsrc(self, n, d, i):
        while d > n:
            i = self.src(d, i)
            d -= 1
        return i

    def btgt(self, n, d, i):
        while d > n:
            i = self.tgt(d, i)
            d -= 1
        return i

    def lift(self, e, i, d):
        """The iterated identity ``i^(d-e)`` on the ``e``-cell ``i``."""
        while e < d:
            i = self.ident(e, i)
            e += 1
        return i

    def is_identity(self, d, i):
        if d == 0:
            return False
        if d > self.truncation:
            return True
        s = self.src(d, i)
        return s == self.tgt(d, i) and self.ident(d - 1, s) == i

    def composable(self, n, d, x, y):
        return self.bsrc(n, d, x) == self.btgt(n, d, y)

    def comp(self, n, d, x, y):
        """``x o_n y`` for two ``d``-cells; raises ``NotComposable``."""
        key = (n, d, x, y)
        memo = self._comp_memo
        r = memo.get(key)
        if r is not None:
            return r
        if not 0 <= n < d:
            raise DimensionError(f"cannot compose {d}-cells along dimension {n}")
        if self.bsrc(n, d, x) != self.btgt(n, d, y):
            raise NotComposable(f"t_{n} of second factor differs from s_{n} of first")
        N = self.truncation
        if d > N:
            # i^k(x) o_n i^k(y) = i^k(x o_n y); for n >= N both are the same wrapper
            r = x if n >= N else self.comp(n, N, x, y)
        else:
            r = self._comp(n, d, x, y)
        memo[key] = r
        return r

    def wcomp(self, n, a, b):
        """Whiskered composite of ``(dim, idx)`` pairs, lifting the lower one."""
        da, x = a
        db, y = b
        d = max(da, db)
        if da < d:
            x = self.lift(da, x, d)
        if db < d:
            y = self.lift(db, y, d)
        return (d, self.comp(n, d, x, y))

    def between(self, d, s, t):
        """All ``d``-cells with source ``s`` and target ``t`` (``d >= 1``)."""
        if d > self.truncation:
            return [s] if s == t else []
        table = self._between.get(d)
        if table is None:
            table = defaultdict(list)
            for i in range(self.count(d)):
                table[(self.src(d, i), self.tgt(d, i))].append(i)
            self._between[d] = table
        return table.get((s, t), [])

    def check_cell(self, cell):
        d, i = cell
        if d < 0 or not 0 <= i < self.count(d):
            raise UnknownCell(f"no {d}-cell with index {i}")

    def nonidentity_counts(self, max_dim=None):
        top = self.truncation if max_dim is None else max_dim
        return [
            sum(1 for i in range(self.count(d)) if not self.is_identity(d, i))
            for d in range(top + 1)
        ]

    def __repr__(self):
        counts = [self.count(d) for d in range(self.truncation + 1)]
        return f"<{type(self).__name__} N={self.truncation} cells={counts}>"


class BuiltCat(OmegaCat):
    """Registry-backed category built one dimension at a time.

    A subclass yields keys for each dimension from ``_generate(d)``: a
    tuple of ints ``content`` for 0-cells and ``content + (src, tgt)``
    above.  It also supplies ``_comp_content`` and ``_ident_content``;
    boundaries of composites come from the source-target axioms and the
    result is looked up in the registry.
    """

    def __init__(self, truncation):
        super().__init__()
        self.truncation = truncation
        self._keys = []
        self._index = []
        self._ident = []

    def _build(self):
        for d in range(self.truncation + 1):
            keys = self._generate(d)
            keys.sort()
            index = {}
            for i, k in enumerate(keys):
                if k in index:
                    raise ValueError(f"duplicate {d}-cell key {k!r} in {self.kind}")
                index[k] = i
            self._keys.append(keys)
            self._index.append(index)
            if d:
                ids = []
                for i in range(len(self._keys[d - 1])):
                    j = index.get(self._ident_content(d - 1, i) + (i, i))
                    if j is None:
                        raise ClosureError(f"identity on {d - 1}-cell {i} is not registered")
                    ids.append(j)
                self._ident.append(ids)
            self._after_dim(d)

    def _generate(self, d):
        raise NotImplementedError

    def _after_dim(self, d):
        pass

    def _comp_content(self, n, d, x, y):
        raise NotImplementedError

    def _ident_content(self, d, i):
        raise NotImplementedError

    def key(self, d, i):
        return self._keys[min(d, self.truncation)][i]

    def content(self, d, i):
        k = self._keys[min(d, self.truncation)][i]
        return k if d == 0 else k[:-2]

    def lookup(self, d, key):
        if d > self.truncation:
            raise DimensionError("wrappers above the truncation have no keys")
        return self._index[d].get(key)

    def count(self, d):
        if not self._keys:
            return 0
        return len(self._keys[min(d, self.truncation)])

    def src(self, d, i):
        if d > self.truncation:
            return i
        return self._keys[d][i][-2]

    def tgt(self, d, i):
        if d > self.truncation:
            return i
        return self._keys[d][i][-1]

    def ident(self, d, i):
        if d >= self.truncation:
            return i
        return self._ident[d][i]

    def _comp(self, n, d, x, y):
        content = self._comp_content(n, d, x, y)
        if n == d - 1:
            s, t = self.src(d, y), self.tgt(d, x)
        else:
            s = self.comp(n, d - 1, self.src(d, x), self.src(d, y))
            t = self.comp(n, d - 1, self.tgt(d, x), self.tgt(d, y))
        key = content + (s, t)
        r = self._index[d].get(key)
        if r is None:
            raise ClosureError(f"composite {key!r} is not a registered {d}-cell of {self.kind}")
        return r

    def _render(self, d, content):
        return tuple(content)

    def tag(self, d, i):
        N = self.truncation
        if d > N:
            return ("id",) * (d - N) + tuple(self.tag(N, i))
        k = self._keys[d][i]
        content = k if d == 0 else k[:-2]
        head = (self.kind, self._render(d, content))
        return head if d == 0 else head + (k[-2], k[-1])


class Terminal(BuiltCat):
    kind = "pt"

    def __init__(self):
        super().__init__(0)
        self._build()

    def _generate(self, d):
        return [()]


class Empty(BuiltCat):
    kind = "empty"

    def __init__(self):
        super().__init__(0)
        self._build()

    def _generate(self, d):
        return []


def terminal():
    return Terminal()


def empty():
    return Empty()


class DualCat(OmegaCat):
    """``X^op``: sources and targets swapped, every composition reversed."""

    def __init__(self, inner, retag=None):
        super().__init__()
        self.inner = inner
        self.truncation = inner.truncation
        self.kind = retag or inner.kind
        self._retag = retag

    def count(self, d):
        return self.inner.count(d)

    def src(self, d, i):
        return self.inner.tgt(d, i)

    def tgt(self, d, i):
        return self.inner.src(d, i)

    def ident(self, d, i):
        return self.inner.ident(d, i)

    def comp(self, n, d, x, y):
        try:
            return self.inner.comp(n, d, y, x)
        except NotComposable:
            raise NotComposable(f"t_{n} of second factor differs from s_{n} of first") from None

    def tag(self, d, i):
        t = tuple(self.inner.tag(d, i))
        if self._retag is None:
            return t
        # replace the constructor token, keeping any identity-wrapper prefix
        k = 0
        while t[k] == "id":
            k += 1
        return t[:k] + (self._retag,) + t[k + 1:]

    def is_identity(self, d, i):
        return self.inner.is_identity(d, i)


def dual(X):
    """The dual omega-category; ``dual(dual(X))`` is ``X`` itself.

    The dual is cached on ``X`` so repeated calls share one instance.
    """
    if isinstance(X, DualCat) and X._retag is None:
        return X.inner
    d = X.__dict__.get("_dual")
    if d is None:
        d = DualCat(X)
        X._dual = d
    return d


class TableCat(OmegaCat):
    """Category given by explicit tables (used for imported documents)."""

    def __init__(self, tags, srcs, tgts, idents, comps, truncation, kind="table", extra=None):
        super().__init__()
        self.truncation = truncation
        self.kind = kind
        self._tags = tags
        self._src = srcs
        self._tgt = tgts
        self._ident = idents
        self._table = comps
        self.extra = extra or {}

    def count(self, d):
        if not self._tags:
            return 0
        return len(self._tags[min(d, self.truncation)])

    def src(self, d, i):
        if d > self.truncation:
            return i
        return self._src[d][i]

    def tgt(self, d, i):
        if d > self.truncation:
            return i
        return self._tgt[d][i]

    def ident(self, d, i):
        if d >= self.truncation:
            return i
        return self._ident[d][i]

    def tag(self, d, i):
        N = self.truncation
        if d > N:
            return ("id",) * (d - N) + tuple(self._tags[N][i])
        return self._tags[d][i]

    def _comp(self, n, d, x, y):
        r = self._table.get((n, d, x, y))
        if r is None:
            raise ClosureError(f"composite ({n}, {d}, {x}, {y}) missing from table")
        return r


class CellMap:
    """Dimension-preserving assignment of cells ``source -> target``.

    ``table[d][i]`` is the image of the ``d``-cell ``i`` for ``d`` up to
    the source truncation (``None`` marks a cell the map failed to
    define); above it images are lifted through identities.
    """

    def __init__(self, source, target, table, failures=None):
        self.source = source
        self.target = target
        self.table = table
        self.failures = failures or []

    @classmethod
    def build(cls, source, target, fn, max_dim=None):
        """Tabulate ``fn(d, i, images)`` dimension by dimension.

        ``fn`` may consult ``images`` (the partial table) for lower
        dimensions; it raises ``LookupError`` when no target cell exists.
        """
        top = source.truncation if max_dim is None else max_dim
        table = []
        failures = []
        for d in range(top + 1):
            row = []
            table.append(row)
            for i in range(source.count(d)):
                try:
                    row.append(fn(d, i, table))
                except (LookupError, OmegaError) as exc:
                    row.append(None)
                    failures.append({"dim": d, "cell": list(source.tag(d, i)), "error": str(exc)})
        return cls(source, target, table, failures)

    def apply(self, d, i):
        top = len(self.table) - 1
        if d <= top:
            return self.table[d][i]
        j = self.table[top][i]
        return None if j is None else self.target.lift(top, j, d)

    def __call__(self, cell):
        d, i = cell
        return Cell(d, self.apply(d, i))


def identity_map(X, max_dim=None):
    top = X.truncation if max_dim is None else max_dim
    return CellMap(X, X, [list(range(X.count(d))) for d in range(top + 1)])


def compose_maps(g, f):
    """``g . f`` for ``f: A -> B`` and ``g: B -> C``."""
    table = []
    for d, row in enumerate(f.table):
        table.append([None if j is None else g.apply(d, j) for j in row])
    return CellMap(f.source, g.target, table, f.failures + g.failures)


# -- operations on cells ---------------------------------------------------

def boundary(X, x, n):
    """``(s_n x, t_n x)`` for a cell ``x`` with ``n < dim(x)``."""
    x = Cell(*x)
    X.check_cell(x)
    if not 0 <= n < x.dim:
        raise DimensionError(f"{n}-boundary of a {x.dim}-cell is undefined")
    return Cell(n, X.bsrc(n, x.dim, x.idx)), Cell(n, X.btgt(n, x.dim, x.idx))


def compose(X, n, x, y):
    """``x o_n y``, whiskering the lower-dimensional argument by identities."""
    x = Cell(*x)
    y = Cell(*y)
    X.check_cell(x)
    X.check_cell(y)
    if n >= max(x.dim, y.dim):
        raise DimensionError(f"cannot compose along {n} cells of dimension {x.dim}, {y.dim}")
    return Cell(*X.wcomp(n, x, y))


def identity(X, x, levels=1):
    x = Cell(*x)
    X.check_cell(x)
    return Cell(x.dim + levels, X.lift(x.dim, x.idx, x.dim + levels))


class Hom(BuiltCat):
    """``X(x, y)``: its ``n``-cells are the ``(n+1)``-cells ``x ~> y`` of ``X``."""

    kind = "hom"

    def __init__(self, X, x, y):
        super().__init__(max(X.truncation - 1, 0))
        self.base_cat = X
        self.ends = (x, y)
        self._from_x = []
        self._build()

    def _generate(self, d):
        X = self.base_cat
        x, y = self.ends
        if d == 0:
            return [(c,) for c in X.between(1, x, y)]
        prev = self._from_x[d - 1]
        keys = []
        for c in range(X.count(d + 1)):
            s = prev.get(X.src(d + 1, c))
            t = prev.get(X.tgt(d + 1, c))
            if s is not None and t is not None:
                keys.append((c, s, t))
        return keys

    def _after_dim(self, d):
        self._from_x.append({k[0]: i for i, k in enumerate(self._keys[d])})

    def _comp_content(self, n, d, x, y):
        X = self.base_cat
        return (X.comp(n + 1, d + 1, self._keys[d][x][0], self._keys[d][y][0]),)

    def _ident_content(self, d, i):
        return (self.base_cat.ident(d + 1, self.key(d, i)[0]),)

    def to_base(self, d, i):
        """The ``(d+1)``-cell of the ambient category underlying ``i``."""
        return self.key(d, i)[0]


def hom(X, x, y):
    for v in (x, y):
        if not 0 <= v < X.count(0):
            raise UnknownCell(f"no 0-cell {v}")
    return Hom(X, x, y)


class Pullback(BuiltCat):
    """Cells are pairs ``(a, b)`` with ``f(a) == g(b)``; structure componentwise."""

    kind = "pb"

    def __init__(self, f, g, kind=None):
        if f.target is not g.target:
            raise TargetMismatch("pullback needs maps into the same category")
        A, B = f.source, g.source
        super().__init__(max(A.truncation, B.truncation))
        if kind:
            self.kind = kind
        self.f, self.g = f, g
        self.left, self.right = A, B
        self._build()

    def _generate(self, d):
        A, B = self.left, self.right
        by_image = defaultdict(list)
        for b in range(B.count(d)):
            by_image[self.g.apply(d, b)].append(b)
        keys = []
        for a in range(A.count(d)):
            for b in by_image.get(self.f.apply(d, a), ()):
                if d == 0:
                    keys.append((a, b))
                    continue
                s = self.find(d - 1, A.src(d, a), B.src(d, b))
                t = self.find(d - 1, A.tgt(d, a), B.tgt(d, b))
                keys.append((a, b, s, t))
        return keys

    def _after_dim(self, d):
        if d == 0:
            self._pairs = [None]
        else:
            self._pairs.append({k[:2]: k for k in self._keys[d]})

    def pair(self, d, i):
        k = self.key(d, i)
        return k[0], k[1]

    def find(self, d, a, b):
        """Index of the pair ``(a, b)`` or ``None``."""
        N = self.truncation
        if d > N:
            d = N
        if d == 0:
            return self._index[0].get((a, b))
        k = self._pairs[d].get((a, b))
        return None if k is None else self._index[d][k]

    def _comp_content(self, n, d, x, y):
        ax, bx = self.pair(d, x)
        ay, by = self.pair(d, y)
        return (self.left.comp(n, d, ax, ay), self.right.comp(n, d, bx, by))

    def _ident_content(self, d, i):
        a, b = self.pair(d, i)
        return (self.left.ident(d, a), self.right.ident(d, b))


def pullback(f, g):
    return Pullback(f, g)


def projection(P, side):
    """The projection of a pullback onto one of its factors."""
    src = P.left if side == 0 else P.right
    table = [[P.pair(d, i)[side] for i in range(P.count(d))] for d in range(P.truncation + 1)]
    return CellMap(P, src, table)


def map_from_function(source, target, fn: Callable[[int, int], int], max_dim=None):
    return CellMap.build(source, target, lambda d, i, _images: fn(d, i), max_dim)
