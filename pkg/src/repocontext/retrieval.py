"""Cursor-window retrieval queries and candidate ranking."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import NamedTuple

from .corpus import SourceFile
from .pool import Candidate, CandidatePool
from .tokenization import Tokenizer, get_tokenizer

JACCARD = "jaccard"
BM25 = "bm25"
METRICS = (JACCARD, BM25)


@dataclass(frozen=True)
class RetrievalConfig:
    p: int = 5
    s: int = 5
    metric: str = JACCARD
    k: int = 3
    n: int = 4096
    bm25_k1: float = 1.2
    bm25_b: float = 0.75
    best_first: bool = True

    def __post_init__(self):
        if self.p < 0 or self.s < 0 or self.p + self.s < 1:
            raise ValueError(f"need p >= 0, s >= 0, p+s >= 1; got p={self.p}, s={self.s}")
        if self.k < 0:
            raise ValueError(f"k must be >= 0, got {self.k}")
        if self.n < 1:
            raise ValueError(f"token budget must be >= 1, got {self.n}")
        if self.metric not in METRICS:
            raise ValueError(f"metric must be one of {METRICS}, got {self.metric!r}")


@dataclass(frozen=True)
class RetrievalQuery:
    origin_file: str
    cursor: tuple[int, int]
    lines: tuple[str, ...]
    token_set: frozenset[str]
    token_multiset: dict[str, int]


class RankedCandidate(NamedTuple):
    candidate_id: int
    score: float
    kind: str


def build_query(
    file: SourceFile,
    cursor: tuple[int, int],
    p: int = 5,
    s: int = 5,
    tokenizer: Tokenizer | None = None,
) -> RetrievalQuery:
    """The p prefix / s suffix line window around the cursor.

    With the cursor at column 0 the window holds the p lines before plus the
    s lines from the cursor line on (p+s lines); mid-line cursors share the
    cursor line between both halves (p+s-1 lines). Windows clamp at file
    boundaries.
    """
    if p < 0 or s < 0 or p + s < 1:
        raise ValueError(f"need p >= 0, s >= 0, p+s >= 1; got p={p}, s={s}")
    line, column = cursor
    file.locate_cursor(line, column)  # validates
    tokenizer = tokenizer or get_tokenizer("lexical")
    n = len(file.lines)

    windows = []
    if p > 0:
        windows.append((line - p + 1, line) if column > 0 else (line - p, line - 1))
    if s > 0:
        windows.append((line, line + s - 1))
    lo = min(w[0] for w in windows if w[0] <= w[1])
    hi = max(w[1] for w in windows if w[0] <= w[1])
    lo = max(1, lo)
    hi = min(n, hi)
    lines = file.lines[lo - 1:hi]

    tokens = tokenizer.tokenize("\n".join(lines))
    multiset = dict(Counter(tokens))
    return RetrievalQuery(
        origin_file=file.path,
        cursor=(line, column),
        lines=tuple(lines),
        token_set=frozenset(multiset),
        token_multiset=multiset,
    )


def jaccard(a: frozenset[str] | set[str], b: frozenset[str] | set[str]) -> float:
    """|a & b| / |a | b|; 0.0 when both sets are empty."""
    if not a and not b:
        return 0.0
    inter = len(a & b)
    union = len(a) + len(b) - inter
    return inter / union


def bm25_idf(df: int, n_candidates: int) -> float:
    return math.log(1.0 + (n_candidates - df + 0.5) / (df + 0.5))


def bm25_score(
    query: RetrievalQuery,
    cand: Candidate,
    pool: CandidatePool,
    k1: float = 1.2,
    b: float = 0.75,
) -> float:
    """Okapi BM25 with the non-negative ln(1 + .) idf form."""
    n_candidates = len(pool.candidates)
    avg_len = pool.avg_token_count or 1.0
    norm = k1 * (1.0 - b + b * cand.token_count / avg_len)
    score = 0.0
    freq = cand.token_freq
    doc_freq = pool.doc_freq
    for token in query.token_set:
        tf = freq.get(token)
        if not tf:
            continue
        idf = bm25_idf(doc_freq.get(token, 0), n_candidates)
        score += idf * (tf * (k1 + 1.0)) / (tf + norm)
    return score


def rank_candidates(
    query: RetrievalQuery,
    pool: CandidatePool,
    config: RetrievalConfig | None = None,
) -> list[RankedCandidate]:
    """Score and sort every candidate outside the cursor's own file.

    Descending score, ties broken by ascending candidate id; zero-score
    candidates stay at the tail (prompt assembly applies its own cutoffs).
    """
    config = config or RetrievalConfig()
    origin = query.origin_file
    candidates = pool.candidates

    if config.metric == JACCARD:
        qset = query.token_set
        qlen = len(qset)
        intersect = qset.intersection
        if qlen == 0:
            scored = [
                (0.0, c.id, c.kind) for c in candidates if c.file_path != origin
            ]
        else:
            scored = []
            append = scored.append
            for c in candidates:
                if c.file_path == origin:
                    continue
                cset = c.token_set
                inter = len(intersect(cset))
                union = qlen + len(cset) - inter
                append((inter / union if union else 0.0, c.id, c.kind))
    else:
        n_candidates = len(candidates)
        avg_len = pool.avg_token_count or 1.0
        k1 = config.bm25_k1
        b = config.bm25_b
        doc_freq = pool.doc_freq
        idf = {
            t: bm25_idf(doc_freq.get(t, 0), n_candidates) for t in query.token_set
        }
        scored = []
        append = scored.append
        for c in candidates:
            if c.file_path == origin:
                continue
            norm = k1 * (1.0 - b + b * c.token_count / avg_len)
            freq = c.token_freq
            score = 0.0
            for token, token_idf in idf.items():
                tf = freq.get(token)
                if tf:
                    score += token_idf * (tf * (k1 + 1.0)) / (tf + norm)
            append((score, c.id, c.kind))

    scored.sort(key=lambda item: (-item[0], item[1]))
    return [RankedCandidate(cid, score, kind) for score, cid, kind in scored]
