"""Embedding files and report serialization."""
from __future__ import annotations

import csv
import json
from fractions import Fraction
from typing import IO, Iterable, Sequence

from .aggregate import ClassSum, VerificationReport
from .geometry import PLEmbedding, Point3

FORMAT_VERSION = 1
_TOP_LEVEL = {"format_version", "n", "vertices", "bends"}
SUM_FIELDS = ("n", "p", "q", "statistic", "value")


class EmbeddingFormatError(ValueError):
    """Malformed embedding file; the message names the offending location."""


def _point_to_ints(p: Point3) -> list[int]:
    out = []
    for c in p:
        c = Fraction(c)
        out += [c.numerator, c.denominator]
    return out


def _ints_to_point(raw, where: str) -> Point3:
    if not isinstance(raw, list) or len(raw) != 6:
        raise EmbeddingFormatError(f"{where}: expected six integers [xn,xd,yn,yd,zn,zd]")
    if not all(isinstance(v, int) and not isinstance(v, bool) for v in raw):
        raise EmbeddingFormatError(f"{where}: coordinates must be integers")
    if raw[1] == 0 or raw[3] == 0 or raw[5] == 0:
        raise EmbeddingFormatError(f"{where}: zero denominator")
    return (Fraction(raw[0], raw[1]), Fraction(raw[2], raw[3]), Fraction(raw[4], raw[5]))


def embedding_to_dict(e: PLEmbedding) -> dict:
    out = {
        "format_version": FORMAT_VERSION,
        "n": e.n,
        "vertices": [_point_to_ints(v) for v in e.vertices],
    }
    if e.bends:
        out["bends"] = {f"{i}-{j}": [_point_to_ints(p) for p in pts] for (i, j), pts in e.bends.items()}
    return out


def embedding_from_dict(obj) -> PLEmbedding:
    if not isinstance(obj, dict):
        raise EmbeddingFormatError("top level: expected a JSON object")
    extra = sorted(set(obj) - _TOP_LEVEL)
    if extra:
        raise EmbeddingFormatError(f"top level: unknown field(s) {', '.join(extra)}")
    for key in ("format_version", "n", "vertices"):
        if key not in obj:
            raise EmbeddingFormatError(f"top level: missing field {key!r}")
    if obj["format_version"] != FORMAT_VERSION:
        raise EmbeddingFormatError(f"format_version: unsupported value {obj['format_version']!r}")
    n = obj["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise EmbeddingFormatError("n: expected a positive integer")
    verts = obj["vertices"]
    if not isinstance(verts, list) or len(verts) != n:
        raise EmbeddingFormatError(f"vertices: expected a list of {n} entries")
    points = [_ints_to_point(v, f"vertices[{k}]") for k, v in enumerate(verts)]
    bends = {}
    raw_bends = obj.get("bends", {})
    if not isinstance(raw_bends, dict):
        raise EmbeddingFormatError("bends: expected an object keyed by 'i-j'")
    for key, pts in raw_bends.items():
        try:
            i, j = (int(x) for x in key.split("-"))
        except ValueError:
            raise EmbeddingFormatError(f"bends[{key!r}]: key must look like 'i-j'") from None
        if not (1 <= i < j <= n):
            raise EmbeddingFormatError(f"bends[{key!r}]: need 1 <= i < j <= {n}")
        if not isinstance(pts, list):
            raise EmbeddingFormatError(f"bends[{key!r}]: expected a list of points")
        bends[(i, j)] = tuple(_ints_to_point(p, f"bends[{key!r}][{k}]") for k, p in enumerate(pts))
    return PLEmbedding(n, tuple(points), bends)


def dumps_embedding(e: PLEmbedding) -> str:
    return json.dumps(embedding_to_dict(e), indent=1) + "\n"


def loads_embedding(text: str) -> PLEmbedding:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise EmbeddingFormatError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return embedding_from_dict(obj)


def load_embedding(path: str) -> PLEmbedding:
    with open(path, encoding="utf-8") as fh:
        try:
            return loads_embedding(fh.read())
        except EmbeddingFormatError as exc:
            raise EmbeddingFormatError(f"{path}: {exc}") from None


def save_embedding(e: PLEmbedding, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps_embedding(e))


def _header(stamp: str | None, fh: IO[str]) -> None:
    if stamp:
        fh.write(f"# generated {stamp}\n")


def write_reports(reports: Sequence[VerificationReport], fh: IO[str], fmt: str = "csv",
                  stamp: str | None = None) -> None:
    if fmt == "csv":
        _header(stamp, fh)
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(VerificationReport.FIELDS)
        for r in reports:
            w.writerow(r.as_row())
    elif fmt == "json":
        doc = {"reports": [r.as_dict() for r in reports]}
        if stamp:
            doc["generated"] = stamp
        fh.write(json.dumps(doc, indent=1) + "\n")
    else:
        raise ValueError(f"unknown format {fmt!r}")


def write_sums(sums: Iterable[ClassSum], fh: IO[str], fmt: str = "csv", stamp: str | None = None) -> None:
    rows = [s._asdict() for s in sums]
    if fmt == "csv":
        _header(stamp, fh)
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(SUM_FIELDS)
        for r in rows:
            w.writerow(["" if r[f] is None else r[f] for f in SUM_FIELDS])
    elif fmt == "json":
        doc = {"sums": rows}
        if stamp:
            doc["generated"] = stamp
        fh.write(json.dumps(doc, indent=1) + "\n")
    else:
        raise ValueError(f"unknown format {fmt!r}")
