"""Token-budgeted prompt assembly: cross-file block + in-file context."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .languages import Language
from .pool import ABSTRACT, SNIPPET, Candidate, CandidatePool
from .retrieval import RankedCandidate, RetrievalConfig
from .tokenization import Tokenizer, get_tokenizer


class IncludedCandidate(NamedTuple):
    candidate_id: int
    kind: str
    score: float


@dataclass(frozen=True)
class PromptBundle:
    cross_file_text: str
    prefix: str
    suffix: str
    included: tuple[IncludedCandidate, ...]
    total_tokens: int

    def to_record(self, *, repo: str, file: str, cursor: tuple[int, int]) -> dict:
        return {
            "repo": repo,
            "file": file,
            "cursor": {"line": cursor[0], "column": cursor[1]},
            "crossfile_context": self.cross_file_text,
            "prefix": self.prefix,
            "suffix": self.suffix,
            "included": [
                {"id": inc.candidate_id, "kind": inc.kind, "score": inc.score}
                for inc in self.included
            ],
            "total_tokens": self.total_tokens,
        }


def format_cross_file_block(cand: Candidate, language: Language) -> str:
    """Candidate rendered as a comment block: path header plus payload lines."""
    prefix = language.comment_prefix
    out = [f"{prefix} Path: {cand.file_path}"]
    if cand.text:
        out.extend(f"{prefix} {line}" for line in cand.text.split("\n"))
    return "\n".join(out) + "\n"


def _truncate_to_budget(prefix: str, suffix: str, budget: int, tokenizer: Tokenizer):
    """Drop oldest prefix lines, then trailing suffix lines, until they fit."""
    prefix_lines = prefix.splitlines(keepends=True)
    suffix_lines = suffix.splitlines(keepends=True)
    while prefix_lines:
        if tokenizer.count("".join(prefix_lines)) + tokenizer.count("".join(suffix_lines)) <= budget:
            break
        prefix_lines.pop(0)
    while tokenizer.count("".join(suffix_lines)) > budget and suffix_lines:
        suffix_lines.pop()
    return "".join(prefix_lines), "".join(suffix_lines)


def assemble_prompt(
    in_file: tuple[str, str],
    ranked: Sequence[RankedCandidate],
    pool: CandidatePool,
    language: Language,
    config: RetrievalConfig | None = None,
    tokenizer: Tokenizer | None = None,
) -> PromptBundle:
    """Greedy assembly under the token budget.

    The in-file context is reserved first (truncating the oldest prefix
    lines only when it alone exceeds the budget). The top-k abstracts are
    added in score order when their block fits, then snippets in score
    order, skipping blocks that do not fit. Candidates are never split.
    """
    config = config or RetrievalConfig()
    tokenizer = tokenizer or get_tokenizer("lexical")
    prefix, suffix = in_file
    budget = config.n

    in_file_tokens = tokenizer.count(prefix) + tokenizer.count(suffix)
    if in_file_tokens > budget:
        prefix, suffix = _truncate_to_budget(prefix, suffix, budget, tokenizer)
        in_file_tokens = tokenizer.count(prefix) + tokenizer.count(suffix)
        return PromptBundle(
            cross_file_text="",
            prefix=prefix,
            suffix=suffix,
            included=(),
            total_tokens=in_file_tokens,
        )

    remaining = budget - in_file_tokens
    included: list[IncludedCandidate] = []
    blocks: list[str] = []

    abstracts = [r for r in ranked if r.kind == ABSTRACT][: config.k]
    snippets = (r for r in ranked if r.kind == SNIPPET)
    for group in (abstracts, snippets):
        for ranked_cand in group:
            cand = pool.candidates[ranked_cand.candidate_id]
            block = format_cross_file_block(cand, language)
            cost = tokenizer.count(block)
            if cost <= remaining:
                remaining -= cost
                blocks.append(block)
                included.append(
                    IncludedCandidate(ranked_cand.candidate_id, ranked_cand.kind,
                                      ranked_cand.score)
                )

    if not config.best_first:
        blocks.reverse()  # best block rendered nearest the cursor
    cross = "".join(blocks)
    total = tokenizer.count(cross) + in_file_tokens
    return PromptBundle(
        cross_file_text=cross,
        prefix=prefix,
        suffix=suffix,
        included=tuple(included),
        total_tokens=total,
    )
