"""Canonical JSON documents for finite omega-categories, and DOT export."""

from __future__ import annotations

import hashlib
import json
from functools import lru_cache
from importlib import resources

import jsonschema

from orientals.core import OmegaError, TableCat
from orientals.parity import ambient

FORMAT = "orientals/omega-category"
VERSION = 1

_KINDS = {
    "oriental": "oriental",
    "cube": "cube",
    "cone": "cone",
    "cyl": "cylinder",
    "cylinder": "cylinder",
    "co": "coslice",
    "coslice": "coslice",
    "collage": "collage",
    "cocone": "collage",
}


class DocumentError(OmegaError):
    """An input document cannot be turned into an omega-category."""

    def __init__(self, pointer, message):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer
        self.message = message


class SchemaViolation(DocumentError):
    pass


class ChecksumMismatch(DocumentError):
    pass


@lru_cache(maxsize=None)
def schema():
    text = resources.files("orientals").joinpath("schema/omega.schema.json").read_text()
    return json.loads(text)


def _pointer(parts):
    return "".join("/" + str(p).replace("~", "~0").replace("/", "~1") for p in parts)


def _listify(tag):
    if isinstance(tag, (list, tuple)):
        return [_listify(t) for t in tag]
    return tag


def _tuplify(tag):
    if isinstance(tag, list):
        return tuple(_tuplify(t) for t in tag)
    return tag


def canonical(doc) -> str:
    """The byte-stable text of a document."""
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=True) + "\n"


def checksum(doc) -> str:
    body = dict(doc)
    body["manifest"] = {k: v for k, v in doc["manifest"].items() if k != "checksum"}
    return "sha256:" + hashlib.sha256(canonical(body).encode()).hexdigest()


def _default_parameters(X):
    manifest = getattr(X, "manifest", None)
    if manifest:
        return [list(p) for p in manifest.get("parameters", [])]
    if hasattr(X, "amb") and hasattr(X, "flavor"):
        return [["flavor", X.flavor], ["n", X.n]]
    return []


def export_json(X, parameters=None, kind=None) -> dict:
    """Document listing every cell, its boundary, identity and composites."""
    N = X.truncation
    tops = hasattr(X, "top") and hasattr(X, "amb")
    dims = []
    for d in range(N + 1):
        cells = []
        for i in range(X.count(d)):
            c = {"tag": _listify(X.tag(d, i))}
            if d:
                c["src"], c["tgt"] = X.src(d, i), X.tgt(d, i)
            if d < N:
                c["ident"] = X.ident(d, i)
            if tops:
                c["top"] = list(X.amb.format_set(d, X.top(d, i)))
            cells.append(c)
        dims.append({"dim": d, "cells": cells})
    comps = []
    for d in range(1, N + 1):
        for n in range(d):
            by_tgt = {}
            for y in range(X.count(d)):
                by_tgt.setdefault(X.btgt(n, d, y), []).append(y)
            for x in range(X.count(d)):
                for y in by_tgt.get(X.bsrc(n, d, x), ()):
                    try:
                        r = X.comp(n, d, x, y)
                    except OmegaError:
                        continue
                    comps.append([n, d, x, y, r])
    comps.sort()
    params = _default_parameters(X) if parameters is None else [list(p) for p in parameters]
    doc = {
        "format": FORMAT,
        "version": VERSION,
        "manifest": {
            "kind": kind or _KINDS.get(X.kind, "custom"),
            "parameters": params,
            "truncation": N,
            "checksum": "",
        },
        "dims": dims,
        "compositions": comps,
    }
    doc["manifest"]["checksum"] = checksum(doc)
    return doc


def dumps(X, **kw) -> str:
    return canonical(export_json(X, **kw))


class ImportedCat(TableCat):
    """A category read from a document; keeps tower tops when present."""

    def __init__(self, *args, manifest=None, tops=None, **kw):
        super().__init__(*args, **kw)
        self.manifest = manifest or {}
        self._tops = tops
        params = dict(self.manifest.get("parameters", []))
        self.flavor = params.get("flavor")
        self.n = params.get("n")
        if tops is not None and self.flavor is not None and self.n is not None:
            self.amb = ambient(self.flavor, self.n)

    def top(self, d, i):
        if self._tops is None:
            raise AttributeError("document carries no tower data")
        if d > self.truncation:
            return 0
        return self._tops[d][i]


def validate(doc):
    """Raise ``SchemaViolation`` at the first structural or reference error."""
    v = jsonschema.Draft202012Validator(schema())
    errors = sorted(v.iter_errors(doc), key=lambda e: (list(map(str, e.absolute_path)), e.message))
    if errors:
        e = errors[0]
        raise SchemaViolation(_pointer(e.absolute_path), e.message)
    N = doc["manifest"]["truncation"]
    dims = doc["dims"]
    if len(dims) != N + 1:
        raise SchemaViolation("/dims", f"expected {N + 1} dimensions, found {len(dims)}")
    sizes = [len(dd["cells"]) for dd in dims]
    for d, dd in enumerate(dims):
        if dd["dim"] != d:
            raise SchemaViolation(_pointer(["dims", d, "dim"]), f"expected {d}")
        for i, c in enumerate(dd["cells"]):
            here = ["dims", d, "cells", i]
            for field, need, lo in (("src", d >= 1, d - 1), ("tgt", d >= 1, d - 1), ("ident", d < N, d + 1)):
                if need and field not in c:
                    raise SchemaViolation(_pointer(here), f"missing {field!r}")
                if not need and field in c:
                    raise SchemaViolation(_pointer(here + [field]), f"unexpected {field!r}")
                if need and c[field] >= sizes[lo]:
                    raise SchemaViolation(_pointer(here + [field]), f"dangling reference to {lo}-cell {c[field]}")
    for k, (n, d, x, y, r) in enumerate(doc["compositions"]):
        where = ["compositions", k]
        if not (1 <= d <= N and n < d):
            raise SchemaViolation(_pointer(where), f"bad dimensions n={n}, d={d}")
        for pos, v in ((2, x), (3, y), (4, r)):
            if v >= sizes[d]:
                raise SchemaViolation(_pointer(where + [pos]), f"dangling reference to {d}-cell {v}")


def import_json(doc, verify_checksum=True) -> ImportedCat:
    """Rebuild a category from a document (a dict or JSON text)."""
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise SchemaViolation("", f"not JSON: {exc}") from exc
    validate(doc)
    if verify_checksum and checksum(doc) != doc["manifest"]["checksum"]:
        raise ChecksumMismatch("/manifest/checksum", "does not match the cell data")
    N = doc["manifest"]["truncation"]
    dims = [dd["cells"] for dd in doc["dims"]]
    tags = [[_tuplify(c["tag"]) for c in cells] for cells in dims]
    srcs = [[c.get("src") for c in cells] for cells in dims]
    tgts = [[c.get("tgt") for c in cells] for cells in dims]
    idents = [[c["ident"] for c in cells] for cells in dims[:N]]
    comps = {}
    for n, d, x, y, r in doc["compositions"]:
        comps[(n, d, x, y)] = r
    tops = None
    params = dict(doc["manifest"]["parameters"])
    if all("top" in c for cells in dims for c in cells) and "flavor" in params and "n" in params:
        amb = ambient(params["flavor"], params["n"])
        tops = [[amb.mask_of(d, [amb.parse_gen(t) for t in c["top"]]) for c in cells]
                for d, cells in enumerate(dims)]
    kind = doc["manifest"]["kind"]
    return ImportedCat(tags, srcs, tgts, idents, comps, N, kind=kind,
                       manifest=doc["manifest"], tops=tops)


def loads(text, verify_checksum=True):
    return import_json(text, verify_checksum=verify_checksum)


def same_structure(X, Y):
    """Whether ``X`` and ``Y`` agree on tags, boundaries, identities and composites."""
    a = export_json(X, parameters=[], kind="custom")
    b = export_json(Y, parameters=[], kind="custom")
    return a == b


# -- DOT --------------------------------------------------------------------------

def _label(X, d, i):
    if hasattr(X, "top") and getattr(X, "amb", None) is not None:
        if d == 0:
            gens = X.amb.elements(0, X.top(0, i))
            return "".join(str(v) for v in gens[0]) if X.flavor == "simplex" else gens[0]
        return " ".join(X.amb.format_set(d, X.top(d, i)))
    return json.dumps(_listify(X.tag(d, i)), separators=(",", ":"))


def _esc(s):
    return s.replace("\\", "\\\\").replace('"', '\\"')


def _quote(s):
    return '"' + _esc(s) + '"'


def export_dot(X, dim=1) -> str:
    """DOT text: 0-cells and non-identity 1-cells, plus 2-cell notes when ``dim == 2``."""
    if dim not in (1, 2):
        raise ValueError("dim must be 1 or 2")
    lines = ["digraph omega {", "  rankdir=LR;"]
    for v in range(X.count(0)):
        lines.append(f"  v{v} [label={_quote(_label(X, 0, v))}];")
    if X.truncation >= 1:
        for e in range(X.count(1)):
            if X.is_identity(1, e):
                continue
            lines.append(f"  v{X.src(1, e)} -> v{X.tgt(1, e)} [label={_quote(_label(X, 1, e))}];")
    if dim == 2 and X.truncation >= 2:
        for c in range(X.count(2)):
            if X.is_identity(2, c):
                continue
            s, t = X.src(2, c), X.tgt(2, c)
            parts = [_label(X, 2, c), "source: " + _label(X, 1, s), "target: " + _label(X, 1, t)]
            text = "\\n".join(_esc(p) for p in parts)
            lines.append(f'  c{c} [shape=note, label="{text}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
