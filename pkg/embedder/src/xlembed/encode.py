"""Parallel-TSV to embedding-file pipeline."""

import time
from dataclasses import dataclass

import numpy as np

from .errors import MalformedLineError, ModelLoadError, XlembedError
from .writer import write_embeddings

DEFAULT_BATCH_SIZE = 64
TSV_HEADER = "source\ttarget"


@dataclass(frozen=True)
class EmbedSummary:
    count: int
    dim: int
    seconds: float

    def as_dict(self):
        return {"count": self.count, "dim": self.dim, "seconds": self.seconds}


def read_pair_tsv(path):
    """One pair per line, single tab; optional header row; 1-based line errors."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    start = 1 if lines and lines[0] == TSV_HEADER else 0
    pairs = []
    for offset, line in enumerate(lines[start:], start=start + 1):
        fields = line.split("\t")
        if len(fields) != 2:
            raise MalformedLineError(offset, len(fields))
        pairs.append((fields[0], fields[1]))
    return pairs


class SentenceTransformerEncoder:
    """Thin adapter so the model runtime stays swappable in tests."""

    def __init__(self, model_id: str):
        try:
            from sentence_transformers import SentenceTransformer

            self._model = SentenceTransformer(model_id)
        except Exception as exc:
            raise ModelLoadError(model_id, exc) from exc

    def encode(self, texts, batch_size):
        return np.asarray(
            self._model.encode(
                list(texts),
                batch_size=batch_size,
                convert_to_numpy=True,
                show_progress_bar=False,
            ),
            dtype=np.float32,
        )


def embed_pairs(
    tsv_path,
    model_id,
    src_out,
    tgt_out,
    batch_size=DEFAULT_BATCH_SIZE,
    encoder=None,
    src_lang="src",
    tgt_lang="tgt",
):
    """Embed both TSV columns and write one file per column.

    Rows keep the TSV's order. Embeddings are written exactly as the
    encoder produced them: normalization is the alignment toolkit's
    decision, not this one's.
    """
    if batch_size < 1:
        raise ValueError(f"batch_size must be >= 1, got {batch_size}")
    pairs = read_pair_tsv(tsv_path)
    if not pairs:
        # a row-less file cannot declare a dimension, so refuse early
        raise XlembedError(f"empty corpus: {tsv_path} has no pairs to embed")
    if encoder is None:
        encoder = SentenceTransformerEncoder(model_id)

    start = time.perf_counter()
    src_rows = encoder.encode([s for s, _ in pairs], batch_size)
    tgt_rows = encoder.encode([t for _, t in pairs], batch_size)
    elapsed = time.perf_counter() - start

    src_rows = np.atleast_2d(np.asarray(src_rows, dtype=np.float32))
    tgt_rows = np.atleast_2d(np.asarray(tgt_rows, dtype=np.float32))
    assert src_rows.shape == tgt_rows.shape == (len(pairs), src_rows.shape[1]), (
        f"encoder shape drift: {src_rows.shape} vs {tgt_rows.shape} "
        f"for {len(pairs)} pairs"
    )

    write_embeddings(src_out, src_lang, src_rows)
    write_embeddings(tgt_out, tgt_lang, tgt_rows)
    return EmbedSummary(count=len(pairs), dim=src_rows.shape[1], seconds=elapsed)
