"""Candidate retrieval pool: overlapping line snippets plus file abstracts."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from .abstraction import AbstractContext
from .corpus import Repository, SourceFile
from .tokenization import Tokenizer, get_tokenizer

INDEX_FORMAT_VERSION = 1

ABSTRACT = "abstract"
SNIPPET = "snippet"


@dataclass(frozen=True)
class SnippetContext:
    file_path: str
    start_line: int
    end_line: int
    text: str
    source_kind: str = SNIPPET


@dataclass(frozen=True)
class Candidate:
    id: int
    kind: str
    file_path: str
    text: str
    start_line: int | None
    end_line: int | None
    token_freq: dict[str, int]
    token_set: frozenset[str]
    token_count: int


@dataclass
class CandidatePool:
    candidates: list[Candidate]
    doc_freq: dict[str, int]
    avg_token_count: float
    by_file: dict[str, list[int]]
    m: int
    stride: int
    tokenizer_id: str

    def __len__(self) -> int:
        return len(self.candidates)


def extract_snippets(file: SourceFile, m: int = 10, stride: int = 5) -> list[SnippetContext]:
    """Overlapping m-line windows at the given stride.

    Windows start every `stride` lines; the last window always reaches the
    final line and iteration stops there. All-blank windows are dropped.
    """
    if m < 1:
        raise ValueError(f"window size must be >= 1, got {m}")
    if stride < 1:
        raise ValueError(f"stride must be >= 1, got {stride}")
    if stride > m:
        raise ValueError(
            f"stride {stride} > window {m} would leave uncovered lines"
        )
    lines = file.lines
    n = len(lines)
    snippets: list[SnippetContext] = []
    start = 1
    while start <= n:
        end = min(start + m - 1, n)
        window = lines[start - 1:end]
        if any(line.strip() for line in window):
            snippets.append(
                SnippetContext(
                    file_path=file.path,
                    start_line=start,
                    end_line=end,
                    text="\n".join(window),
                )
            )
        if end == n:
            break
        start += stride
    return snippets


def _make_candidate(cid, kind, path, text, start_line, end_line, tokenizer) -> Candidate:
    freq = Counter(tokenizer.tokenize(text))
    return Candidate(
        id=cid,
        kind=kind,
        file_path=path,
        text=text,
        start_line=start_line,
        end_line=end_line,
        token_freq=dict(freq),
        token_set=frozenset(freq),
        token_count=sum(freq.values()),
    )


def _finalize(raw: list[tuple], m, stride, tokenizer) -> CandidatePool:
    # Stable ids: (path, kind, start_line) order; 'abstract' sorts first.
    raw.sort(key=lambda r: (r[0], r[1], r[3] or 0))
    candidates = [
        _make_candidate(cid, kind, path, text, start, end, tokenizer)
        for cid, (path, kind, text, start, end) in enumerate(raw)
    ]
    doc_freq: Counter[str] = Counter()
    by_file: dict[str, list[int]] = {}
    total = 0
    for cand in candidates:
        doc_freq.update(cand.token_set)
        by_file.setdefault(cand.file_path, []).append(cand.id)
        total += cand.token_count
    avg = total / len(candidates) if candidates else 0.0
    return CandidatePool(
        candidates=candidates,
        doc_freq=dict(doc_freq),
        avg_token_count=avg,
        by_file=by_file,
        m=m,
        stride=stride,
        tokenizer_id=tokenizer.id,
    )


def build_pool(
    repo: Repository,
    abstracts: list[AbstractContext],
    *,
    m: int = 10,
    stride: int = 5,
    tokenizer: Tokenizer | None = None,
) -> CandidatePool:
    """Pool every non-empty abstract and every snippet of every file."""
    tokenizer = tokenizer or get_tokenizer("lexical")
    raw: list[tuple] = []
    for abstract in abstracts:
        if abstract.text:
            raw.append((abstract.file_path, ABSTRACT, abstract.text, None, None))
    for file in repo.files:
        for snip in extract_snippets(file, m, stride):
            raw.append((snip.file_path, SNIPPET, snip.text, snip.start_line, snip.end_line))
    return _finalize(raw, m, stride, tokenizer)


def save_pool(pool: CandidatePool, path: str | Path) -> None:
    """Persist as JSONL: header record, then one record per candidate."""
    with open(path, "w", encoding="utf-8") as fh:
        header = {
            "version": INDEX_FORMAT_VERSION,
            "m": pool.m,
            "stride": pool.stride,
            "tokenizer": pool.tokenizer_id,
        }
        fh.write(json.dumps(header, sort_keys=True) + "\n")
        for cand in pool.candidates:
            record = {
                "id": cand.id,
                "kind": cand.kind,
                "path": cand.file_path,
                "start_line": cand.start_line,
                "end_line": cand.end_line,
                "text": cand.text,
            }
            fh.write(json.dumps(record, sort_keys=True) + "\n")


def load_pool(path: str | Path, tokenizer: Tokenizer | None = None) -> CandidatePool:
    """Load an index; token statistics are recomputed, not stored."""
    with open(path, encoding="utf-8") as fh:
        header_line = fh.readline()
        if not header_line.strip():
            raise ValueError(f"{path}: empty index file")
        header = json.loads(header_line)
        if header.get("version") != INDEX_FORMAT_VERSION:
            raise ValueError(
                f"{path}: unsupported index version {header.get('version')!r}"
            )
        tokenizer = tokenizer or get_tokenizer(header.get("tokenizer", "lexical"))
        raw = []
        for line_no, line in enumerate(fh, start=2):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValueError(f"{path}: bad record on line {line_no}: {exc}") from None
            raw.append(
                (rec["path"], rec["kind"], rec["text"], rec["start_line"], rec["end_line"])
            )
    return _finalize(raw, header["m"], header["stride"], tokenizer)
