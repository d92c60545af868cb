"""Per-file abstract contexts: declaration signatures without bodies.

The abstract keeps container headers (class/interface/enum/namespace through
the body-opening delimiter), function and method signatures, and top-level
variable/field declarations, with comments and blank lines removed. Every
emitted line is a verbatim slice of the source file.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass

from .corpus import SourceFile
from .languages import Language
from .parsing.tree import SyntaxNode, SyntaxTree

# Container declarations: render header, then recurse into members.
CONTAINER_KINDS = frozenset(
    {"class_definition", "class_declaration", "interface_declaration",
     "enum_declaration", "struct_declaration", "record_declaration",
     "namespace_declaration", "annotation_declaration"}
)

# Callable declarations: render signature only, never enter the body.
FUNCTION_KINDS = frozenset(
    {"function_definition", "function_declaration", "method_declaration",
     "method_definition", "constructor_declaration"}
)

# Value declarations: render the whole declaration text.
VALUE_KINDS = frozenset(
    {"variable_declaration", "field_declaration", "lexical_declaration",
     "type_alias_declaration", "property_declaration"}
)

DECLARATION_KINDS: dict[str, frozenset[str]] = {
    "python": frozenset(
        {"function_definition", "class_definition", "variable_declaration"}
    ),
    "java": frozenset(
        {"class_declaration", "interface_declaration", "enum_declaration",
         "record_declaration", "annotation_declaration", "method_declaration",
         "constructor_declaration", "field_declaration"}
    ),
    "typescript": frozenset(
        {"class_declaration", "interface_declaration", "enum_declaration",
         "namespace_declaration", "function_declaration", "method_definition",
         "method_declaration", "lexical_declaration", "type_alias_declaration",
         "field_declaration"}
    ),
    "csharp": frozenset(
        {"class_declaration", "interface_declaration", "enum_declaration",
         "struct_declaration", "record_declaration", "namespace_declaration",
         "method_declaration", "constructor_declaration", "field_declaration",
         "property_declaration"}
    ),
}


@dataclass(frozen=True)
class AbstractContext:
    file_path: str
    text: str
    declaration_count: int
    source_kind: str = "abstract"


def list_declaration_nodes(tree: SyntaxTree, language: Language) -> list[SyntaxNode]:
    """All declaration-kind nodes of the tree in document order."""
    kinds = DECLARATION_KINDS[language.name]
    return [node for node in tree.nodes() if node.kind in kinds]


def extract_abstract(tree: SyntaxTree, file: SourceFile) -> AbstractContext:
    kinds = DECLARATION_KINDS[file.language.name]
    pieces: list[tuple[int, int]] = []
    count = 0

    def visit(node: SyntaxNode):
        nonlocal count
        for child in node.children:
            kind = child.kind
            if kind in kinds:
                count += 1
                if kind in CONTAINER_KINDS:
                    pieces.append(child.header_span or child.span)
                    visit(child)
                elif kind in FUNCTION_KINDS:
                    pieces.append(child.header_span or child.span)
                else:
                    pieces.append(_value_slice(child, file))
            elif kind not in FUNCTION_KINDS:
                visit(child)

    visit(tree.root)
    text = _render(pieces, file, tree.comment_spans)
    return AbstractContext(file_path=file.path, text=text, declaration_count=count)


def _value_slice(node: SyntaxNode, file: SourceFile) -> tuple[int, int]:
    # Multi-line C# properties keep only the header through the brace.
    if node.kind == "property_declaration" and "\n" in node.text(file.text):
        return node.header_span or node.span
    return node.span


def _render(pieces, file: SourceFile, comment_spans) -> str:
    text = file.text
    comment_starts = [span[0] for span in comment_spans]
    out: list[str] = []

    for a, b in pieces:
        line_no, _ = file.position_of(a)
        line_start = file.line_offsets[line_no - 1]
        if not text[line_start:a].strip():
            a = line_start
        pos = a
        while pos < b:
            nl = text.find("\n", pos)
            line_end = b if nl < 0 or nl >= b else nl
            line = _clean_line(text, pos, line_end, comment_spans, comment_starts)
            if line:
                out.append(line)
            pos = line_end + 1
    result = "\n".join(out) + ("\n" if out else "")
    if len(result) > len(text):
        result = result.rstrip("\n")
    return result


def _clean_line(text, start, end, comment_spans, comment_starts) -> str:
    """Line slice with trailing/covering comments removed, rstripped."""
    # A comment that begins before this line and covers it entirely.
    idx = bisect.bisect_right(comment_starts, start) - 1
    if idx >= 0 and comment_spans[idx][1] >= end and comment_spans[idx][0] < start:
        return ""
    # A comment starting inside the line and running to its end.
    idx = bisect.bisect_left(comment_starts, start)
    while idx < len(comment_starts) and comment_starts[idx] < end:
        c_start, c_end = comment_spans[idx]
        if c_end >= end:
            end = c_start
            break
        idx += 1
    return text[start:end].rstrip()
