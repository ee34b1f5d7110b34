"""Binary embedding/map file formats and parallel-sentence TSV ingestion.

XEMB (embedding sets), little-endian throughout:
    magic  4s   "XEMB"
    version u32 1
    dim     u32
    count   u64
    lang_len u16, then lang_len bytes of UTF-8
    payload count*dim float32, row-major

XMAP (linear maps):
    magic  4s   "XMAP"
    version u32 1
    dim     u32
    A payload dim*dim float64, row-major
    b payload dim float64
    meta_len u32, then meta_len bytes of UTF-8 JSON (provenance)

Embeddings are stored at the 32-bit precision upstream models emit;
maps keep the full 64-bit fitting precision. Reads never allocate more
than the header-declared sizes.
"""

from __future__ import annotations

import json
import struct
from pathlib import Path
from typing import BinaryIO

import numpy as np

from .core import EmbeddingSet, LinearMap
from .errors import (
    BadMagicError,
    MalformedLineError,
    SizeMismatchError,
    TruncatedPayloadError,
    VersionMismatchError,
)

EMB_MAGIC = b"XEMB"
MAP_MAGIC = b"XMAP"
FORMAT_VERSION = 1

_EMB_HEADER = struct.Struct("<4sIIQH")
_MAP_HEADER = struct.Struct("<4sII")

# Refuse to allocate more than this from a header alone (corrupted files
# must not OOM the process before the truncation check catches them).
MAX_DECLARED_BYTES = 1 << 34

TSV_HEADER = "source\ttarget"


def _read_exact(fh: BinaryIO, size: int, what: str) -> bytes:
    if size > MAX_DECLARED_BYTES:
        raise SizeMismatchError(f"declared {what} of {size} bytes is implausibly large")
    data = fh.read(size)
    if len(data) != size:
        raise TruncatedPayloadError(f"{what}: expected {size} bytes, got {len(data)}")
    return data


def _check_magic_version(fh: BinaryIO, header: struct.Struct, magic: bytes, path) -> tuple:
    raw = _read_exact(fh, header.size, "header")
    fields = header.unpack(raw)
    if fields[0] != magic:
        raise BadMagicError(f"{path}: bad magic {fields[0]!r}, expected {magic!r}")
    if fields[1] != FORMAT_VERSION:
        raise VersionMismatchError(
            f"{path}: format version {fields[1]}, expected {FORMAT_VERSION}"
        )
    return fields[2:]


def _check_eof(fh: BinaryIO, path):
    if fh.read(1):
        raise SizeMismatchError(f"{path}: trailing bytes after declared payload")


def write_embeddings(set: EmbeddingSet, path) -> None:
    lang_bytes = set.lang.encode("utf-8")
    if len(lang_bytes) > 0xFFFF:
        raise ValueError("lang tag longer than 65535 bytes")
    payload = np.ascontiguousarray(set.data, dtype="<f4").tobytes()
    with open(path, "wb") as fh:
        fh.write(_EMB_HEADER.pack(EMB_MAGIC, FORMAT_VERSION, set.dim, set.count, len(lang_bytes)))
        fh.write(lang_bytes)
        fh.write(payload)


def read_embeddings(path) -> EmbeddingSet:
    with open(path, "rb") as fh:
        dim, count, lang_len = _check_magic_version(fh, _EMB_HEADER, EMB_MAGIC, path)
        if dim < 1:
            raise SizeMismatchError(f"{path}: declared dim {dim} must be positive")
        lang = _read_exact(fh, lang_len, "lang tag").decode("utf-8")
        payload = _read_exact(fh, count * dim * 4, "embedding payload")
        _check_eof(fh, path)
    data = np.frombuffer(payload, dtype="<f4").reshape(count, dim)
    return EmbeddingSet(lang=lang, data=data)


def write_map(map: LinearMap, path) -> None:
    meta = json.dumps(map.provenance, ensure_ascii=False).encode("utf-8")
    with open(path, "wb") as fh:
        fh.write(_MAP_HEADER.pack(MAP_MAGIC, FORMAT_VERSION, map.dim))
        fh.write(np.ascontiguousarray(map.A, dtype="<f8").tobytes())
        fh.write(np.ascontiguousarray(map.b, dtype="<f8").tobytes())
        fh.write(struct.pack("<I", len(meta)))
        fh.write(meta)


def read_map(path) -> LinearMap:
    with open(path, "rb") as fh:
        (dim,) = _check_magic_version(fh, _MAP_HEADER, MAP_MAGIC, path)
        if dim < 1:
            raise SizeMismatchError(f"{path}: declared dim {dim} must be positive")
        a_bytes = _read_exact(fh, dim * dim * 8, "A payload")
        b_bytes = _read_exact(fh, dim * 8, "b payload")
        (meta_len,) = struct.unpack("<I", _read_exact(fh, 4, "metadata length"))
        meta = _read_exact(fh, meta_len, "metadata")
        _check_eof(fh, path)
    try:
        provenance = json.loads(meta.decode("utf-8")) if meta_len else {}
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise SizeMismatchError(f"{path}: metadata is not valid UTF-8 JSON: {exc}") from exc
    A = np.frombuffer(a_bytes, dtype="<f8").reshape(dim, dim)
    b = np.frombuffer(b_bytes, dtype="<f8")
    return LinearMap(A=A, b=b, provenance=provenance)


def read_pair_tsv(path) -> list[tuple[str, str]]:
    """Read (source_sentence, target_sentence) pairs, one per line.

    Exactly one tab per line; a first line equal to "source\\ttarget" is
    treated as a header and skipped. Errors carry 1-based line numbers.
    An empty file yields an empty list.
    """
    text = Path(path).read_text(encoding="utf-8")
    pairs: list[tuple[str, str]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if lineno == 1 and line == TSV_HEADER:
            continue
        fields = line.split("\t")
        if len(fields) != 2:
            raise MalformedLineError(lineno, len(fields))
        pairs.append((fields[0], fields[1]))
    return pairs
