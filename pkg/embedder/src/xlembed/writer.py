"""Writer for the alignment toolkit's binary embedding format.

Layout, all little-endian: magic "XEMB", u32 version = 1, u32 dim,
u64 count, u16 lang byte length, lang UTF-8 bytes, then count x dim
32-bit floats row-major. Implemented from the published byte layout;
the consuming toolkit's reader is the compatibility oracle in tests.
"""

import struct

import numpy as np

MAGIC = b"XEMB"
VERSION = 1
HEADER = struct.Struct("<4sIIQH")


def write_embeddings(path, lang: str, rows: np.ndarray) -> None:
    rows = np.ascontiguousarray(rows, dtype="<f4")
    if rows.ndim != 2:
        raise ValueError(f"expected a 2-d array, got shape {rows.shape}")
    count, dim = rows.shape
    lang_bytes = lang.encode("utf-8")
    with open(path, "wb") as fh:
        fh.write(HEADER.pack(MAGIC, VERSION, dim, count, len(lang_bytes)))
        fh.write(lang_bytes)
        fh.write(rows.tobytes())
