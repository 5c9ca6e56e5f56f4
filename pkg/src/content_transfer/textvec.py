"""Text-to-vector pipeline: tweet-style preprocessing, TF-IDF weighting
with a log2 inverse-document-frequency, a deterministic seeded random
projection as the dimension-reduction stage, and per-user active-topic
profiles.

The projection is a pluggable stand-in: any external topic model can be
swapped in by emitting the same vector-event JSONL format.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

URL_TOKEN = "[url]"
MENTION_TOKEN = "[mention]"

_URL_PREFIXES = ("http://", "https://", "www.")
_NON_LATIN = re.compile(r"[^a-zA-Z]")

# Fixed, versioned stop-word list: common English function words.
STOPWORDS = frozenset("""
a about above after again against all am an and any are aren't as at be
because been before being below between both but by can't cannot could
couldn't did didn't do does doesn't doing don't down during each few for
from further had hadn't has hasn't have haven't having he her here hers
herself him himself his how i if in into is isn't it its itself just me
more most mustn't my myself no nor not of off on once only or other ought
our ours ourselves out over own same shan't she should shouldn't so some
such than that the their theirs them themselves then there these they
this those through to too under until up very was wasn't we were weren't
what when where which while who whom why will with won't would wouldn't
you your yours yourself yourselves
""".split())


@dataclass(frozen=True)
class Document:
    user: str
    time: float
    text: str


@dataclass(frozen=True)
class Vocabulary:
    """Term index and document frequencies over a corpus of D documents.

    Only terms appearing in more than one document, and not in every
    document, are retained (a term in every document carries zero TF-IDF
    weight).
    """

    index: dict
    doc_freq: dict
    n_documents: int

    def __len__(self) -> int:
        return len(self.index)


@dataclass(frozen=True)
class ActiveTopicProfile:
    user: str
    dimension_std: np.ndarray
    active_count: int
    threshold: float


def preprocess(doc: Document) -> list[str] | None:
    """Tokenize one document; returns None when the document is dropped.

    Rules, in order: drop re-tweets (text beginning "RT @"); URLs become
    [url]; @-prefixed tokens become [mention]; remaining tokens lose all
    non-Latin-alphabet characters (digits included) and are lowercased;
    stop-words and emptied tokens are removed. Idempotent on its own
    output tokens.
    """
    if doc.text.startswith("RT @"):
        return None
    tokens = []
    for raw in doc.text.split():
        if raw in (URL_TOKEN, MENTION_TOKEN):
            tokens.append(raw)
            continue
        if raw.lower().startswith(_URL_PREFIXES):
            tokens.append(URL_TOKEN)
            continue
        if raw.startswith("@"):
            tokens.append(MENTION_TOKEN)
            continue
        cleaned = _NON_LATIN.sub("", raw).lower()
        if cleaned and cleaned not in STOPWORDS:
            tokens.append(cleaned)
    return tokens


def tfidf(corpus: list[list[str]]) -> tuple[list[dict[int, float]], Vocabulary]:
    """Weight term frequency f as f * log2(D / d) over the corpus.

    Terms with document frequency 1 are discarded, as are terms occurring
    in every document (their weight would be identically zero). Each output
    document is a sparse {term index: weight} mapping.
    """
    if not corpus:
        raise ValueError("corpus must be nonempty")
    n_docs = len(corpus)
    doc_freq: dict[str, int] = {}
    for tokens in corpus:
        for term in set(tokens):
            doc_freq[term] = doc_freq.get(term, 0) + 1
    kept = sorted(t for t, d in doc_freq.items() if 1 < d < n_docs)
    index = {t: i for i, t in enumerate(kept)}
    vocab = Vocabulary(
        index=index,
        doc_freq={t: doc_freq[t] for t in kept},
        n_documents=n_docs,
    )
    vectors = []
    for tokens in corpus:
        counts: dict[int, int] = {}
        for term in tokens:
            i = index.get(term)
            if i is not None:
                counts[i] = counts.get(i, 0) + 1
        vectors.append(
            {
                i: f * math.log2(n_docs / vocab.doc_freq[kept[i]])
                for i, f in counts.items()
            }
        )
    return vectors, vocab


def projection_matrix(in_dim: int, out_dim: int, seed: int) -> np.ndarray:
    """Seeded Gaussian random-projection matrix of shape (in_dim, out_dim)."""
    if out_dim < 1:
        raise ValueError("out_dim must be >= 1")
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    return rng.standard_normal((in_dim, out_dim)) / math.sqrt(out_dim)


def project(sparse_vectors: list[dict[int, float]], in_dim: int, out_dim: int, seed: int) -> np.ndarray:
    """Apply a fixed seeded random projection, then L1-normalize absolute
    values so outputs live on a scale comparable to topic distributions.
    A zero input vector maps to a zero output vector."""
    matrix = projection_matrix(in_dim, out_dim, seed)
    out = np.zeros((len(sparse_vectors), out_dim))
    for row, sparse in enumerate(sparse_vectors):
        for i, w in sparse.items():
            out[row] += w * matrix[i]
        norm = np.abs(out[row]).sum()
        if norm > 0:
            out[row] /= norm
    return out


def active_topics(user: str, vectors, threshold: float = 0.05) -> ActiveTopicProfile:
    """Count dimensions whose population standard deviation over the user's
    vectors exceeds the threshold."""
    arr = np.asarray(vectors, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] < 2:
        raise ValueError("need at least 2 vectors to compute a deviation profile")
    std = arr.std(axis=0)
    return ActiveTopicProfile(
        user=user,
        dimension_std=std,
        active_count=int((std > threshold).sum()),
        threshold=threshold,
    )
