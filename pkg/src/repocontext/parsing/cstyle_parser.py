"""Brace-structure parser for Java, TypeScript, and C# sources.

Segments the token stream at top-level `;`, `{`, and `}` boundaries and
classifies each segment's header into declaration, control, or statement
nodes. Parenthesized regions (parameter lists, annotation arguments) are
opaque: braces and semicolons inside them never open blocks.
"""

from __future__ import annotations

from .lexer import COMMENT, PUNCT, STRING, WORD, Token, lex_cstyle
from .tree import LineIndex, SyntaxNode, SyntaxTree

_TYPE_KINDS = {
    "class": "class_declaration",
    "interface": "interface_declaration",
    "enum": "enum_declaration",
    "struct": "struct_declaration",
    "record": "record_declaration",
    "namespace": "namespace_declaration",
    "module": "namespace_declaration",
}

_TYPE_KEYWORDS = {
    "java": frozenset({"class", "interface", "enum", "record"}),
    "typescript": frozenset({"class", "interface", "enum", "namespace", "module"}),
    "csharp": frozenset({"class", "interface", "enum", "struct", "record", "namespace"}),
}

_CONTROL_KEYWORDS = {
    "java": frozenset(
        {"if", "else", "for", "while", "do", "switch", "try", "catch", "finally",
         "synchronized"}
    ),
    "typescript": frozenset(
        {"if", "else", "for", "while", "do", "switch", "try", "catch", "finally"}
    ),
    "csharp": frozenset(
        {"if", "else", "for", "foreach", "while", "do", "switch", "try", "catch",
         "finally", "using", "lock", "fixed", "unsafe", "checked", "unchecked"}
    ),
}

_CONTROL_NODE_KINDS = {
    "else": "else_clause",
    "catch": "catch_clause",
    "finally": "finally_clause",
}

_MODIFIERS = frozenset(
    {"public", "private", "protected", "internal", "static", "abstract", "final",
     "sealed", "partial", "export", "default", "declare", "async", "readonly",
     "const", "record", "file", "new", "strictfp", "native", "synchronized",
     "transient", "volatile", "unsafe", "open"}
)

_LEADING_MODIFIERS = frozenset(
    {"export", "declare", "default", "abstract", "async", "public", "private",
     "protected", "internal", "static", "readonly", "final", "sealed", "partial",
     "unsafe", "extern", "override", "virtual", "global"}
)

_STMT_KEYWORD_KINDS = {
    "return": "return_statement",
    "break": "break_statement",
    "continue": "continue_statement",
    "throw": "throw_statement",
    "goto": "goto_statement",
    "yield": "yield_statement",
    "while": "while_statement",
    "do": "do_statement",
}

_ASI_STARTERS = frozenset(
    {"const", "let", "var", "function", "class", "interface", "enum", "type",
     "import", "export", "return", "if", "for", "while", "switch", "try",
     "throw", "break", "continue", "do", "namespace", "declare", "abstract",
     "async", "public", "private", "protected"}
)

_ASI_CONTINUATION_WORDS = frozenset(
    {"in", "of", "new", "typeof", "instanceof", "await", "case", "else", "do",
     "return", "yield", "throw", "delete", "void", "extends", "implements",
     "from", "as", "satisfies", "keyof"}
)


class _BraceInfo:
    __slots__ = ("kind", "child_ctx", "name", "expr_block", "declaration", "keep_open_brace")

    def __init__(self, kind, child_ctx, name=None, expr_block=False,
                 declaration=False, keep_open_brace=False):
        self.kind = kind
        self.child_ctx = child_ctx
        self.name = name
        self.expr_block = expr_block
        self.declaration = declaration
        self.keep_open_brace = keep_open_brace


def parse_cstyle(text: str, language: str, file_path: str = "") -> SyntaxTree:
    lex = lex_cstyle(text, language)
    index = LineIndex(text)
    tokens = [t for t in lex.tokens if t.kind != COMMENT]
    errors = [lex.had_errors]
    nodes, _, _ = _parse_body(tokens, 0, "top", language, None, index, errors, text)
    root = SyntaxNode(
        kind="module",
        span=(0, len(text)),
        start=(1, 0),
        end=index.position(len(text)),
        children=nodes,
    )
    return SyntaxTree(
        root=root,
        file_path=file_path,
        had_parse_errors=errors[0],
        comment_spans=tuple(lex.comment_spans),
        string_spans=tuple(lex.string_spans),
    )


def _mk(kind, span, index, children=None, header_span=None):
    return SyntaxNode(
        kind=kind,
        span=span,
        start=index.position(span[0]),
        end=index.position(span[1]),
        children=children or [],
        header_span=header_span,
    )


def _parse_body(tokens, i, ctx, language, enclosing, index, errors, text):
    nodes: list[SyntaxNode] = []
    seg: list[Token] = []
    pending: list[SyntaxNode] = []
    paren = 0
    n = len(tokens)

    def flush_statement(end_off):
        node = _classify_statement(seg, pending, ctx, language, index, end_off)
        if node is not None:
            nodes.append(node)
        seg.clear()
        pending.clear()

    while i < n:
        t = tokens[i]
        if t.kind == PUNCT:
            ch = t.text
            if ch in "([":
                paren += 1
            elif ch in ")]":
                paren = max(0, paren - 1)
            elif paren == 0:
                if ch == "{":
                    info = _classify_brace(seg, ctx, language, enclosing, text)
                    child_name = info.name if info.declaration else enclosing
                    children, i, end_off = _parse_body(
                        tokens, i + 1, info.child_ctx, language, child_name,
                        index, errors, text,
                    )
                    if info.expr_block:
                        pending.append(
                            _mk("block", (t.start, end_off), index, children)
                        )
                        continue
                    start_off = seg[0].start if seg else t.start
                    header_span = None
                    if info.kind.endswith("_declaration") or info.kind == "method_definition":
                        if info.keep_open_brace:
                            header_span = (start_off, t.end)
                        else:
                            header_span = (start_off, t.start)
                    nodes.append(
                        _mk(info.kind, (start_off, end_off), index, children, header_span)
                    )
                    seg.clear()
                    pending.clear()
                    continue
                if ch == ";":
                    flush_statement(t.end)
                    i += 1
                    continue
                if ch == "}":
                    if ctx == "top":
                        errors[0] = True
                        flush_statement(t.start)
                        i += 1
                        continue
                    if seg:
                        flush_statement(seg[-1].end)
                    return nodes, i + 1, t.end
                if ch == "," and ctx == "enum":
                    if seg:
                        nodes.append(
                            _mk("enum_constant", (seg[0].start, seg[-1].end), index)
                        )
                    seg.clear()
                    pending.clear()
                    i += 1
                    continue
        elif (
            language == "typescript"
            and seg
            and paren == 0
            and t.kind == WORD
            and t.text in _ASI_STARTERS
            and index.line_of(t.start) > index.line_of(seg[-1].end - 1)
            and _asi_break_ok(seg[-1])
        ):
            flush_statement(seg[-1].end)
        seg.append(t)
        i += 1

    if seg:
        flush_statement(seg[-1].end)
    if ctx != "top":
        errors[0] = True
    return nodes, i, tokens[-1].end if tokens else 0


def _asi_break_ok(prev: Token) -> bool:
    if prev.kind == PUNCT:
        return prev.text in ")]"
    if prev.kind == WORD:
        return prev.text not in _ASI_CONTINUATION_WORDS
    return prev.kind == STRING


def _strip_decorations(seg: list[Token], language: str) -> list[Token]:
    """Drop leading annotations/decorators (@Name(...)) and C# [attributes]."""
    k = 0
    n = len(seg)
    while k < n:
        t = seg[k]
        if (
            t.kind == PUNCT
            and t.text == "@"
            and language in ("java", "typescript")
            and k + 1 < n
            and seg[k + 1].kind == WORD
            and seg[k + 1].text != "interface"
        ):
            j = k + 2
            if j < n and seg[j].kind == PUNCT and seg[j].text == "(":
                depth = 0
                while j < n:
                    if seg[j].kind == PUNCT:
                        if seg[j].text in "([":
                            depth += 1
                        elif seg[j].text in ")]":
                            depth -= 1
                            if depth == 0:
                                j += 1
                                break
                    j += 1
            k = j
            continue
        if t.kind == PUNCT and t.text == "[" and language == "csharp":
            depth = 0
            j = k
            while j < n:
                if seg[j].kind == PUNCT:
                    if seg[j].text in "([":
                        depth += 1
                    elif seg[j].text in ")]":
                        depth -= 1
                        if depth == 0:
                            j += 1
                            break
                j += 1
            k = j
            continue
        break
    return seg[k:]


def _scan_assign_and_paren(stripped: list[Token]):
    """Locate depth-0 plain '=', '=>', and the first word-preceded '('."""
    depth = 0
    assign_idx = None
    arrow = False
    call_paren_idx = None
    for idx, tok in enumerate(stripped):
        if tok.kind != PUNCT:
            continue
        ch = tok.text
        if ch in "([":
            if (
                ch == "("
                and depth == 0
                and call_paren_idx is None
                and idx > 0
                and stripped[idx - 1].kind == WORD
            ):
                call_paren_idx = idx
            depth += 1
        elif ch in ")]":
            depth = max(0, depth - 1)
        elif depth == 0 and ch == "=":
            nxt = stripped[idx + 1] if idx + 1 < len(stripped) else None
            prev = stripped[idx - 1] if idx > 0 else None
            if nxt is not None and nxt.kind == PUNCT and nxt.text == ">" and nxt.start == tok.end:
                arrow = True
            elif (nxt is None or nxt.kind != PUNCT or nxt.text != "=") and not (
                prev is not None and prev.kind == PUNCT and prev.text in "=<>!+-*/%&|^"
            ):
                if assign_idx is None:
                    assign_idx = idx
    return assign_idx, arrow, call_paren_idx


def _find_type_keyword(stripped: list[Token], language: str):
    """First depth-0 type keyword in modifier position, with its name."""
    depth = 0
    for idx, tok in enumerate(stripped):
        if tok.kind == PUNCT:
            if tok.text in "([":
                depth += 1
            elif tok.text in ")]":
                depth = max(0, depth - 1)
            continue
        if depth > 0 or tok.kind != WORD:
            continue
        if tok.text not in _TYPE_KEYWORDS[language]:
            continue
        prev = stripped[idx - 1] if idx > 0 else None
        is_annotation = (
            language == "java"
            and tok.text == "interface"
            and prev is not None
            and prev.kind == PUNCT
            and prev.text == "@"
        )
        if is_annotation:
            prev = stripped[idx - 2] if idx > 1 else None
        if prev is not None and not (prev.kind == WORD and prev.text in _MODIFIERS):
            continue
        nxt = stripped[idx + 1] if idx + 1 < len(stripped) else None
        if nxt is not None and nxt.kind == PUNCT and nxt.text == "(":
            continue
        name = nxt.text if nxt is not None and nxt.kind == WORD else None
        kind = "annotation_declaration" if is_annotation else _TYPE_KINDS[tok.text]
        return kind, name
    return None


def _classify_brace(seg, ctx, language, enclosing, text) -> _BraceInfo:
    stripped = _strip_decorations(seg, language)
    if not stripped:
        if ctx == "type" and language == "java":
            return _BraceInfo("initializer_block", "function")
        return _BraceInfo("block", "function")

    words = [t.text for t in stripped if t.kind == WORD]
    assign_idx, arrow, call_paren_idx = _scan_assign_and_paren(stripped)
    if arrow or (assign_idx is not None):
        return _BraceInfo("block", "function", expr_block=True)
    if language == "csharp" and words and words[-1] == "switch":
        return _BraceInfo("block", "function", expr_block=True)

    first = stripped[0]
    if first.kind == WORD and first.text in _CONTROL_KEYWORDS[language]:
        kind = _CONTROL_NODE_KINDS.get(first.text, f"{first.text}_statement")
        return _BraceInfo(kind, "function")

    found = _find_type_keyword(stripped, language)
    if found is not None:
        kind, name = found
        child_ctx = "enum" if kind == "enum_declaration" else "type"
        return _BraceInfo(kind, child_ctx, name=name, declaration=True,
                          keep_open_brace=True)

    if call_paren_idx is not None:
        before = {t.text for t in stripped[:call_paren_idx] if t.kind == WORD}
        if "new" in before:
            return _BraceInfo("anonymous_body", "type")
        name = stripped[call_paren_idx - 1].text
        if language == "typescript":
            if ctx in ("type", "enum"):
                return _BraceInfo("method_definition", "function", name=name,
                                  declaration=True)
            if "function" in before:
                return _BraceInfo("function_declaration", "function", name=name,
                                  declaration=True)
            return _BraceInfo("block", "function")
        if ctx in ("type", "enum"):
            kind = (
                "constructor_declaration"
                if enclosing is not None and name == enclosing
                else "method_declaration"
            )
            return _BraceInfo(kind, "function", name=name, declaration=True)
        if ctx == "top" and language == "csharp":
            return _BraceInfo("method_declaration", "function", name=name,
                              declaration=True)
        return _BraceInfo("block", "function")

    if ctx == "type":
        if language == "csharp":
            return _BraceInfo("property_declaration", "property", declaration=True,
                              keep_open_brace=True)
        if language == "java" and set(words) <= {"static"}:
            return _BraceInfo("initializer_block", "function")
        return _BraceInfo("block", "function")
    if ctx == "property":
        return _BraceInfo("accessor_declaration", "function")
    return _BraceInfo("block", "function")


def _leading_keyword(stripped: list[Token]) -> str | None:
    """First word that is not a leading modifier."""
    for tok in stripped:
        if tok.kind != WORD:
            return None
        if tok.text not in _LEADING_MODIFIERS:
            return tok.text
    return None


def _classify_statement(seg, pending, ctx, language, index, end_off):
    if not seg:
        return None
    stripped = _strip_decorations(seg, language) or seg
    span = (seg[0].start, end_off)
    children = list(pending)

    kind = _statement_kind(stripped, ctx, language)
    declaration = kind in (
        "field_declaration", "lexical_declaration", "type_alias_declaration",
        "method_declaration", "namespace_declaration", "enum_constant",
    )
    return _mk(
        kind, span, index, children,
        header_span=span if declaration else None,
    )


def _statement_kind(stripped, ctx, language) -> str:
    first = stripped[0]
    fw = first.text if first.kind == WORD else None
    head = _leading_keyword(stripped)
    assign_idx, _arrow, call_paren_idx = _scan_assign_and_paren(stripped)
    method_sig = call_paren_idx is not None and (
        assign_idx is None or assign_idx > call_paren_idx
    )

    if language == "java":
        if fw == "package":
            return "package_declaration"
        if fw == "import":
            return "import_statement"
    if language == "typescript":
        if fw == "import":
            return "import_statement"
        if head in ("const", "let", "var"):
            return (
                "lexical_declaration"
                if ctx in ("top", "namespace")
                else "local_variable_declaration"
                if ctx == "function"
                else "field_declaration"
            )
        if head == "type" and assign_idx is not None:
            return "type_alias_declaration"
        if head == "function":
            return "function_declaration" if ctx in ("top", "namespace") else "expression_statement"
        if fw == "export":
            return "export_statement"
    if language == "csharp":
        if fw == "using" and ctx in ("top", "namespace"):
            return "using_directive"
        if fw == "namespace":
            return "namespace_declaration"

    if ctx in ("type", "enum"):
        if ctx == "enum" and _looks_like_enum_constant(stripped):
            return "enum_constant"
        if method_sig:
            return "method_declaration"
        return "field_declaration"
    if fw in _STMT_KEYWORD_KINDS:
        return _STMT_KEYWORD_KINDS[fw]
    return "expression_statement"


def _looks_like_enum_constant(stripped) -> bool:
    if len(stripped) == 1 and stripped[0].kind == WORD:
        return True
    # NAME(args...) with nothing after the closing paren
    if stripped[0].kind != WORD:
        return False
    if len(stripped) < 3 or stripped[1].kind != PUNCT or stripped[1].text != "(":
        return False
    return stripped[-1].kind == PUNCT and stripped[-1].text == ")"
