"""Syntax tree types shared by the per-language structure parsers."""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field


class LineIndex:
    """Offset <-> (1-based line, 0-based column) conversion for one text."""

    def __init__(self, text: str):
        self.text = text
        offsets = [0]
        pos = text.find("\n")
        while pos >= 0:
            offsets.append(pos + 1)
            pos = text.find("\n", pos + 1)
        self.line_starts = offsets

    def position(self, offset: int) -> tuple[int, int]:
        idx = bisect.bisect_right(self.line_starts, offset) - 1
        return idx + 1, offset - self.line_starts[idx]

    def line_of(self, offset: int) -> int:
        return bisect.bisect_right(self.line_starts, offset)

    def line_start(self, line: int) -> int:
        return self.line_starts[line - 1]


@dataclass
class SyntaxNode:
    """One node of the lightweight syntax tree.

    span is a half-open [start, end) offset range into the source text.
    header_span, when set, is the slice to render as this declaration's
    signature (annotations/decorators through the body-opening delimiter
    for container types, or excluding the body for functions).
    """

    kind: str
    span: tuple[int, int]
    start: tuple[int, int]
    end: tuple[int, int]
    is_named: bool = True
    children: list["SyntaxNode"] = field(default_factory=list)
    header_span: tuple[int, int] | None = None

    def text(self, source: str) -> str:
        return source[self.span[0]:self.span[1]]

    def walk(self):
        """Yield this node and all descendants in document order."""
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))


@dataclass
class SyntaxTree:
    root: SyntaxNode
    file_path: str
    had_parse_errors: bool
    comment_spans: tuple[tuple[int, int], ...] = ()
    string_spans: tuple[tuple[int, int], ...] = ()

    def nodes(self):
        return self.root.walk()
