"""On-disk cache for expensive intermediate artifacts.

Artifacts (annihilator bases, level polynomials, kernel bases) are
stored as JSON files named by the SHA-256 of a fully qualifying key
string, so results are reused only for identical inputs, settings, and
package version.  Writes go through a temp file and os.replace, which
makes concurrent use safe: last writer wins with a complete file.

Cached payloads are exact (rationals as [num, den] pairs), so a warm
run reproduces a cold run byte for byte.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from fractions import Fraction
from pathlib import Path

from .polys import Poly, UniPoly
from .weyl import AlgebraSignature, WeylElement


class ArtifactCache:
    def __init__(self, root: str | os.PathLike):
        self.root = Path(root)

    def _path(self, bucket: str, key: str) -> Path:
        h = hashlib.sha256(key.encode()).hexdigest()[:40]
        return self.root / bucket / (h + ".json")

    def get(self, bucket: str, key: str):
        p = self._path(bucket, key)
        try:
            with open(p, "r", encoding="utf-8") as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError):
            return None
        if doc.get("key") != key:
            return None
        return doc.get("payload")

    def put(self, bucket: str, key: str, payload) -> None:
        p = self._path(bucket, key)
        p.parent.mkdir(parents=True, exist_ok=True)
        doc = {"key": key, "payload": payload}
        fd, tmp = tempfile.mkstemp(dir=p.parent, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(doc, fh, sort_keys=True)
            os.replace(tmp, p)
        except BaseException:
            try:
                os.unlink(tmp)
            except OSError:
                pass
            raise


def frac_to_json(c: Fraction) -> list[int]:
    return [c.numerator, c.denominator]


def frac_from_json(d) -> Fraction:
    return Fraction(d[0], d[1])


def element_to_json(e: WeylElement) -> list:
    return sorted([list(k), frac_to_json(c)] for k, c in e.terms.items())


def element_from_json(sig: AlgebraSignature, data) -> WeylElement:
    return WeylElement(sig, {tuple(k): frac_from_json(c) for k, c in data})


def poly_to_json(p: Poly) -> list:
    return sorted([list(k), frac_to_json(c)] for k, c in p.terms.items())


def poly_from_json(vars, data) -> Poly:
    return Poly(tuple(vars), {tuple(k): frac_from_json(c) for k, c in data})


def uni_to_json(u: UniPoly) -> list:
    return [frac_to_json(c) for c in u.coeffs]


def uni_from_json(data) -> UniPoly:
    return UniPoly([frac_from_json(c) for c in data])
