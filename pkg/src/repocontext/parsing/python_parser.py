"""Indentation-based structure parser for Python sources.

Builds statement-level nodes: enough structure to locate declarations,
their signatures, and completion-sized statements, without a full grammar.
"""

from __future__ import annotations

from .lexer import COMMENT, PUNCT, STRING, WORD, Token, lex_python
from .tree import LineIndex, SyntaxNode, SyntaxTree

_OPEN = {"(": 1, "[": 1, "{": 1}
_CLOSE = {")": 1, "]": 1, "}": 1}

_COMPOUND_KINDS = {
    "if": "if_statement",
    "elif": "elif_clause",
    "else": "else_clause",
    "for": "for_statement",
    "while": "while_statement",
    "try": "try_statement",
    "except": "except_clause",
    "finally": "finally_clause",
    "with": "with_statement",
    "match": "match_statement",
    "case": "case_clause",
}

_SIMPLE_KINDS = {
    "import": "import_statement",
    "from": "import_statement",
    "return": "return_statement",
    "pass": "pass_statement",
    "break": "break_statement",
    "continue": "continue_statement",
    "raise": "raise_statement",
    "assert": "assert_statement",
    "del": "delete_statement",
    "global": "global_statement",
    "nonlocal": "nonlocal_statement",
    "yield": "yield_statement",
}

_ASSIGN_TARGET_OK = {",", "(", ")", "*"}


class _Stmt:
    __slots__ = ("tokens", "indent", "colon_idx", "has_plain_assign")

    def __init__(self, tokens: list[Token], indent: int):
        self.tokens = tokens
        self.indent = indent
        self.colon_idx, self.has_plain_assign = _scan_structure(tokens)

    @property
    def start(self) -> int:
        return self.tokens[0].start

    @property
    def end(self) -> int:
        return self.tokens[-1].end


def _scan_structure(tokens: list[Token]) -> tuple[int, bool]:
    """Find the first depth-0 ':' index and whether a plain '=' occurs."""
    depth = 0
    colon_idx = -1
    plain_assign = False
    for i, tok in enumerate(tokens):
        if tok.kind != PUNCT:
            continue
        ch = tok.text
        if ch in _OPEN:
            depth += 1
        elif ch in _CLOSE:
            depth = max(0, depth - 1)
        elif depth == 0:
            if ch == ":" and colon_idx < 0:
                colon_idx = i
            elif ch == "=" and not plain_assign:
                nxt = tokens[i + 1] if i + 1 < len(tokens) else None
                prev = tokens[i - 1] if i > 0 else None
                if (nxt is None or nxt.text != "=" or nxt.kind != PUNCT) and not (
                    prev is not None
                    and prev.kind == PUNCT
                    and prev.text in "=<>!+-*/%&|^@:~"
                ):
                    plain_assign = True
    return colon_idx, plain_assign


def _group_statements(tokens: list[Token], index: LineIndex) -> tuple[list[_Stmt], bool]:
    stmts: list[_Stmt] = []
    current: list[Token] = []
    depth = 0
    prev_end_line = -1
    unbalanced = False
    for tok in tokens:
        if tok.kind == COMMENT:
            continue
        line = index.line_of(tok.start)
        if current and depth == 0 and line > prev_end_line:
            stmts.append(_Stmt(current, index.position(current[0].start)[1]))
            current = []
        current.append(tok)
        if tok.kind == PUNCT:
            if tok.text in _OPEN:
                depth += 1
            elif tok.text in _CLOSE:
                if depth == 0:
                    unbalanced = True
                depth = max(0, depth - 1)
        prev_end_line = index.line_of(tok.end - 1) if tok.end > tok.start else line
    if current:
        stmts.append(_Stmt(current, index.position(current[0].start)[1]))
    return stmts, unbalanced or depth != 0


def parse_python(text: str, file_path: str = "") -> SyntaxTree:
    lex = lex_python(text)
    index = LineIndex(text)
    stmts, unbalanced = _group_statements(lex.tokens, index)
    errors = [lex.had_errors or unbalanced]

    children, _ = _parse_block(stmts, 0, 0, "module", index, errors)
    root = SyntaxNode(
        kind="module",
        span=(0, len(text)),
        start=(1, 0),
        end=index.position(len(text)),
        children=children,
    )
    return SyntaxTree(
        root=root,
        file_path=file_path,
        had_parse_errors=errors[0],
        comment_spans=tuple(lex.comment_spans),
        string_spans=tuple(lex.string_spans),
    )


def _parse_block(stmts, i, min_indent, ctx, index, errors):
    nodes: list[SyntaxNode] = []
    while i < len(stmts) and stmts[i].indent >= min_indent:
        node, i = _parse_statement(stmts, i, ctx, index, errors)
        nodes.append(node)
    return nodes, i


def _parse_statement(stmts, i, ctx, index, errors):
    stmt = stmts[i]
    first = stmt.tokens[0]

    decor_start = None
    if first.kind == PUNCT and first.text == "@":
        decor_start = stmt.start
        decorators = []
        while (
            i < len(stmts)
            and stmts[i].tokens[0].kind == PUNCT
            and stmts[i].tokens[0].text == "@"
        ):
            d = stmts[i]
            decorators.append(
                SyntaxNode(
                    kind="decorator",
                    span=(d.start, d.end),
                    start=index.position(d.start),
                    end=index.position(d.end),
                )
            )
            i += 1
        if i < len(stmts) and _is_definition(stmts[i]):
            node, i = _build_node(stmts, i, ctx, index, errors, decor_start)
            node.children = decorators + node.children
            return node, i
        # Stray decorators with no following definition: keep them as nodes.
        if len(decorators) == 1:
            return decorators[0], i
        wrapper = SyntaxNode(
            kind="decorator",
            span=(decorators[0].span[0], decorators[-1].span[1]),
            start=decorators[0].start,
            end=decorators[-1].end,
            children=decorators,
        )
        return wrapper, i

    return _build_node(stmts, i, ctx, index, errors, None)


def _is_definition(stmt: _Stmt) -> bool:
    words = [t.text for t in stmt.tokens[:2] if t.kind == WORD]
    return bool(words) and (
        words[0] in ("def", "class") or (words[0] == "async" and "def" in words[1:2])
    )


def _effective_keyword(stmt: _Stmt) -> str | None:
    tok = stmt.tokens[0]
    if tok.kind != WORD:
        return None
    if tok.text == "async" and len(stmt.tokens) > 1 and stmt.tokens[1].kind == WORD:
        return stmt.tokens[1].text
    return tok.text


def _classify(stmt: _Stmt, ctx: str) -> tuple[str, str]:
    """Return (node kind, child context)."""
    kw = _effective_keyword(stmt)
    if kw == "def":
        return "function_definition", "function"
    if kw == "class":
        return "class_definition", "class"
    if kw in _SIMPLE_KINDS:
        return _SIMPLE_KINDS[kw], ctx
    if kw in _COMPOUND_KINDS and stmt.colon_idx >= 0:
        return _COMPOUND_KINDS[kw], ctx
    if ctx in ("module", "class") and _is_variable_declaration(stmt):
        return "variable_declaration", ctx
    return "expression_statement", ctx


def _is_variable_declaration(stmt: _Stmt) -> bool:
    """Plain or annotated binding of simple names (no attribute/index targets)."""
    if stmt.tokens[0].kind != WORD:
        return False
    if not stmt.has_plain_assign and stmt.colon_idx < 0:
        return False
    stop = stmt.colon_idx if 0 <= stmt.colon_idx else len(stmt.tokens)
    for tok in stmt.tokens[:stop]:
        if tok.kind == WORD:
            continue
        if tok.kind == PUNCT and tok.text == "=":
            return True
        if tok.kind != PUNCT or tok.text not in _ASSIGN_TARGET_OK:
            return False
    return True


def _build_node(stmts, i, ctx, index, errors, decor_start):
    stmt = stmts[i]
    kind, child_ctx = _classify(stmt, ctx)
    span_start = stmt.start if decor_start is None else decor_start
    header_end = stmt.end
    header_span = None

    is_definition = kind in ("function_definition", "class_definition")
    is_compound = is_definition or (
        stmt.colon_idx >= 0 and kind in set(_COMPOUND_KINDS.values())
    )
    if is_definition:
        if stmt.colon_idx >= 0:
            header_end = stmt.tokens[stmt.colon_idx].end
        else:
            errors[0] = True
        header_span = (span_start, header_end)
    elif kind == "variable_declaration":
        header_span = (span_start, stmt.end)

    children: list[SyntaxNode] = []
    i += 1
    has_inline_body = stmt.colon_idx >= 0 and stmt.colon_idx < len(stmt.tokens) - 1
    if is_compound and not has_inline_body:
        if i < len(stmts) and stmts[i].indent > stmt.indent:
            children, i = _parse_block(
                stmts, i, stmts[i].indent, child_ctx, index, errors
            )

    span_end = children[-1].span[1] if children else stmt.end
    node = SyntaxNode(
        kind=kind,
        span=(span_start, span_end),
        start=index.position(span_start),
        end=index.position(span_end),
        children=children,
        header_span=header_span,
    )
    return node, i
