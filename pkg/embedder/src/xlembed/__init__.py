"""Batch sentence embedding of parallel TSV corpora.

Reads tab-separated sentence pairs, runs both columns through a
multilingual sentence-embedding model, and writes one binary embedding
file per column in the alignment toolkit's format.
"""

from .encode import (
    DEFAULT_BATCH_SIZE,
    EmbedSummary,
    SentenceTransformerEncoder,
    embed_pairs,
    read_pair_tsv,
)
from .errors import MalformedLineError, ModelLoadError, XlembedError
from .writer import write_embeddings

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_BATCH_SIZE",
    "EmbedSummary",
    "SentenceTransformerEncoder",
    "embed_pairs",
    "read_pair_tsv",
    "MalformedLineError",
    "ModelLoadError",
    "XlembedError",
    "write_embeddings",
]
