import hashlib

import numpy as np
import pytest


class FakeEncoder:
    """Deterministic text-keyed vectors; value depends on the text alone.

    Batch size must never change output, so the fake derives each row
    from a hash of its text and ignores batching entirely. It also logs
    the batch sizes it was asked for, so tests can confirm the plumbing.
    """

    def __init__(self, dim=16):
        self.dim = dim
        self.batch_sizes_seen = []

    def encode(self, texts, batch_size):
        self.batch_sizes_seen.append(batch_size)
        rows = np.empty((len(texts), self.dim), dtype=np.float32)
        for i, text in enumerate(texts):
            digest = hashlib.sha256(text.encode("utf-8")).digest()
            seed = int.from_bytes(digest[:8], "little")
            rows[i] = np.random.default_rng(seed).standard_normal(self.dim)
        return rows


@pytest.fixture
def encoder():
    return FakeEncoder()


def write_tsv(path, pairs, header=False):
    lines = (["source\ttarget"] if header else []) + [f"{s}\t{t}" for s, t in pairs]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path
