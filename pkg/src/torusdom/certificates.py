"""Certificate files and the persistent result cache.

A certificate is a small JSON document naming the grid, the claimed
domination kind and cardinality, the vertex list in slot order, and a
free-form provenance label.  Serialization is canonical: fixed key
order, two-space indent, sorted vertices, trailing newline.  Parsing
re-serializes and compares bytes, so any normalization drift or hand
edit is rejected rather than silently accepted.

The cache is one JSON file mapping "NxM:kind:method" to the computed
value plus the certificate digest and the tool version; entries from
other versions are ignored on load and rewritten on store.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .errors import CertificateError
from .torus import TorusDims, VertexId, VertexSet, make_torus
from .validate import DominationKind, satisfies

SCHEMA_VERSION = 1
TOOL_VERSION = "0.1.0"


@dataclass(frozen=True)
class Certificate:
    n: int
    m: int
    kind: DominationKind
    cardinality: int
    vertices: tuple[tuple[int, int], ...]
    provenance: str

    @classmethod
    def from_vertex_set(
        cls, vs: VertexSet, kind: DominationKind, provenance: str
    ) -> "Certificate":
        verts = tuple((v.i, v.j) for v in vs)
        return cls(vs.dims.n, vs.dims.m, kind, len(vs), verts, provenance)

    def vertex_set(self) -> VertexSet:
        return VertexSet.from_vertices(TorusDims(self.n, self.m), self.vertices)

    def to_json(self) -> str:
        verts = json.dumps([[i, j] for i, j in self.vertices])
        lines = [
            "{",
            f'  "schema_version": {SCHEMA_VERSION},',
            f'  "n": {self.n},',
            f'  "m": {self.m},',
            f'  "kind": {json.dumps(self.kind.value)},',
            f'  "cardinality": {self.cardinality},',
            f'  "vertices": {verts},',
            f'  "provenance": {json.dumps(self.provenance)}',
            "}",
        ]
        return "\n".join(lines) + "\n"

    def digest(self) -> str:
        return hashlib.sha256(self.to_json().encode()).hexdigest()

    @classmethod
    def from_json(cls, text: str) -> "Certificate":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CertificateError(f"not valid JSON: {exc}") from exc
        if not isinstance(doc, dict):
            raise CertificateError("certificate document must be an object")
        expected = {
            "schema_version", "n", "m", "kind", "cardinality", "vertices", "provenance",
        }
        if set(doc) != expected:
            raise CertificateError(f"certificate keys {sorted(doc)} != {sorted(expected)}")
        if doc["schema_version"] != SCHEMA_VERSION:
            raise CertificateError(f"unsupported schema_version {doc['schema_version']!r}")
        try:
            kind = DominationKind(doc["kind"])
        except ValueError as exc:
            raise CertificateError(f"unknown kind {doc['kind']!r}") from exc
        raw = doc["vertices"]
        if not isinstance(raw, list) or any(
            not isinstance(p, list) or len(p) != 2
            or not all(isinstance(c, int) and not isinstance(c, bool) for c in p)
            for p in raw
        ):
            raise CertificateError("vertices must be a list of [i, j] integer pairs")
        for field in ("n", "m", "cardinality"):
            if not isinstance(doc[field], int) or isinstance(doc[field], bool):
                raise CertificateError(f"{field} must be an integer")
        if not isinstance(doc["provenance"], str):
            raise CertificateError("provenance must be a string")
        cert = cls(
            doc["n"], doc["m"], kind, doc["cardinality"],
            tuple((i, j) for i, j in raw), doc["provenance"],
        )
        if cert.to_json() != text:
            raise CertificateError("certificate is not in canonical form")
        return cert

    def check(self) -> None:
        """Raise CertificateError unless the claim is internally consistent
        and the vertex set validates under the claimed kind."""
        try:
            vs = self.vertex_set()
        except Exception as exc:
            raise CertificateError(f"bad dimensions or vertices: {exc}") from exc
        slots = [vs.dims.slot(VertexId(i, j)) for i, j in self.vertices]
        if slots != sorted(set(slots)):
            raise CertificateError("vertices must be distinct and in slot order")
        if self.cardinality != len(vs):
            raise CertificateError(
                f"cardinality {self.cardinality} != vertex count {len(vs)}"
            )
        g = make_torus(self.n, self.m)
        if not satisfies(g, vs, self.kind):
            raise CertificateError(
                f"vertex set fails {self.kind.value} validation on {self.n}x{self.m}"
            )

    def save(self, path: Path | str) -> None:
        Path(path).write_text(self.to_json())


def load_certificate(path: Path | str) -> Certificate:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CertificateError(f"cannot read {path}: {exc}") from exc
    return Certificate.from_json(text)


def default_cache_dir() -> Path:
    base = os.environ.get("XDG_CACHE_HOME")
    root = Path(base) if base else Path.home() / ".cache"
    return root / "torusdom"


class ResultCache:
    """Single-file store of solved values keyed by instance and method."""

    def __init__(self, directory: Optional[Path | str] = None):
        self.directory = Path(directory) if directory is not None else default_cache_dir()
        self.path = self.directory / "results.json"

    @staticmethod
    def key(n: int, m: int, kind: DominationKind, method: str) -> str:
        return f"{n}x{m}:{kind.value}:{method}"

    def _load(self) -> dict[str, dict]:
        try:
            doc = json.loads(self.path.read_text())
        except (OSError, json.JSONDecodeError):
            return {}
        if not isinstance(doc, dict):
            return {}
        out = {}
        for key, entry in doc.items():
            if (
                isinstance(entry, dict)
                and entry.get("version") == TOOL_VERSION
                and isinstance(entry.get("value"), int)
                and isinstance(entry.get("digest"), str)
            ):
                out[key] = entry
        return out

    def get(self, n: int, m: int, kind: DominationKind, method: str) -> Optional[tuple[int, str]]:
        entry = self._load().get(self.key(n, m, kind, method))
        if entry is None:
            return None
        return entry["value"], entry["digest"]

    def put(self, n: int, m: int, kind: DominationKind, method: str, value: int, digest: str) -> None:
        entries = self._load()
        entries[self.key(n, m, kind, method)] = {
            "value": value,
            "digest": digest,
            "version": TOOL_VERSION,
        }
        self.directory.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as handle:
                json.dump(entries, handle, indent=2, sort_keys=True)
                handle.write("\n")
            os.replace(tmp, self.path)
        except BaseException:
            try:
                os.unlink(tmp)
            except OSError:
                pass
            raise
