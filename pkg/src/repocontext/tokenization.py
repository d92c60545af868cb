"""Pluggable tokenizers for similarity scoring and budget accounting.

The default lexical tokenizer is model-free: identifier/number runs are one
token each, every other non-whitespace character is a single-char token.
"""

from __future__ import annotations

import re
from typing import Callable, Protocol

_LEXICAL_RE = re.compile(r"[A-Za-z0-9_]+|[^\sA-Za-z0-9_]")


class Tokenizer(Protocol):
    id: str

    def tokenize(self, text: str) -> list[str]: ...

    def count(self, text: str) -> int: ...


class LexicalTokenizer:
    id = "lexical"

    def tokenize(self, text: str) -> list[str]:
        return _LEXICAL_RE.findall(text)

    def count(self, text: str) -> int:
        return len(_LEXICAL_RE.findall(text))


class CallableTokenizer:
    """Adapter wrapping any text -> token-list callable."""

    def __init__(self, id: str, fn: Callable[[str], list[str]]):
        self.id = id
        self._fn = fn

    def tokenize(self, text: str) -> list[str]:
        return self._fn(text)

    def count(self, text: str) -> int:
        return len(self._fn(text))


_REGISTRY: dict[str, Tokenizer] = {"lexical": LexicalTokenizer()}


def register_tokenizer(tokenizer: Tokenizer) -> None:
    _REGISTRY[tokenizer.id] = tokenizer


def get_tokenizer(tokenizer_id: str) -> Tokenizer:
    try:
        return _REGISTRY[tokenizer_id]
    except KeyError:
        raise ValueError(f"unknown tokenizer id: {tokenizer_id!r}") from None


def tokenize(text: str) -> list[str]:
    """Module-level shorthand for the default lexical tokenizer."""
    return _LEXICAL_RE.findall(text)
