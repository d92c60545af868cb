"""Error-tolerant lexers producing word/string/comment/punct tokens.

The structure parsers only need token classes, source spans, and reliable
comment/string boundaries; they never need full grammar-level token kinds.
Both lexers recover from unterminated constructs instead of raising.
"""

from __future__ import annotations

import re

WORD = "word"
STRING = "string"
COMMENT = "comment"
PUNCT = "punct"

_WORD_RE = re.compile(r"[A-Za-z0-9_$-\U0010ffff][\w$-\U0010ffff]*")

# Python string prefixes that can precede a quote (case-insensitive).
_PY_STR_PREFIXES = frozenset(
    {"r", "b", "f", "u", "rb", "br", "fr", "rf", "bf", "fb"}
)

# Tokens after which a `/` in TypeScript starts a regex literal, not division.
_TS_REGEX_PREV_WORDS = frozenset(
    {"return", "typeof", "instanceof", "in", "of", "new", "delete", "void",
     "throw", "case", "do", "else", "yield", "await"}
)


class Token:
    __slots__ = ("kind", "text", "start", "end")

    def __init__(self, kind: str, text: str, start: int, end: int):
        self.kind = kind
        self.text = text
        self.start = start
        self.end = end

    def __repr__(self):  # pragma: no cover - debug aid
        return f"Token({self.kind}, {self.text!r}, {self.start}:{self.end})"


class LexResult:
    __slots__ = ("tokens", "comment_spans", "string_spans", "had_errors")

    def __init__(self, tokens, comment_spans, string_spans, had_errors):
        self.tokens = tokens
        self.comment_spans = comment_spans
        self.string_spans = string_spans
        self.had_errors = had_errors


def _scan_simple_string(text: str, i: int, quote: str, *, allow_newline: bool) -> tuple[int, bool]:
    """Scan past a quoted literal starting at the opening quote; return (end, ok)."""
    n = len(text)
    j = i + 1
    while j < n:
        c = text[j]
        if c == "\\":
            j += 2
            continue
        if c == quote:
            return j + 1, True
        if c == "\n" and not allow_newline:
            return j, False
        j += 1
    return n, False


def _scan_triple_string(text: str, i: int, quote: str) -> tuple[int, bool]:
    n = len(text)
    close = quote * 3
    j = i + 3
    while j < n:
        if text[j] == "\\":
            j += 2
            continue
        if text.startswith(close, j):
            return j + 3, True
        j += 1
    return n, False


def lex_python(text: str) -> LexResult:
    tokens: list[Token] = []
    comments: list[tuple[int, int]] = []
    strings: list[tuple[int, int]] = []
    had_errors = False
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c in " \t\r\n\f":
            i += 1
            continue
        if c == "\\" and i + 1 < n and text[i + 1] in "\r\n":
            i += 2 if text[i + 1] == "\n" else 3
            continue
        if c == "#":
            end = text.find("\n", i)
            end = n if end < 0 else end
            tokens.append(Token(COMMENT, text[i:end], i, end))
            comments.append((i, end))
            i = end
            continue
        if c in "'\"":
            i, had_errors = _lex_python_string(text, i, i, tokens, strings, had_errors)
            continue
        m = _WORD_RE.match(text, i)
        if m:
            word = m.group()
            end = m.end()
            if word.lower() in _PY_STR_PREFIXES and end < n and text[end] in "'\"":
                i, had_errors = _lex_python_string(text, i, end, tokens, strings, had_errors)
                continue
            tokens.append(Token(WORD, word, i, end))
            i = end
            continue
        tokens.append(Token(PUNCT, c, i, i + 1))
        i += 1
    return LexResult(tokens, comments, strings, had_errors)


def _lex_python_string(text, start, quote_pos, tokens, strings, had_errors):
    quote = text[quote_pos]
    if text.startswith(quote * 3, quote_pos):
        end, ok = _scan_triple_string(text, quote_pos, quote)
    else:
        end, ok = _scan_simple_string(text, quote_pos, quote, allow_newline=False)
    tokens.append(Token(STRING, text[start:end], start, end))
    strings.append((start, end))
    return end, had_errors or not ok


def lex_cstyle(text: str, language: str) -> LexResult:
    """Lex Java, TypeScript, or C# source."""
    is_ts = language == "typescript"
    is_cs = language == "csharp"
    tokens: list[Token] = []
    comments: list[tuple[int, int]] = []
    strings: list[tuple[int, int]] = []
    had_errors = False
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c in " \t\r\n\f":
            i += 1
            continue
        if c == "/" and i + 1 < n and text[i + 1] == "/":
            end = text.find("\n", i)
            end = n if end < 0 else end
            tokens.append(Token(COMMENT, text[i:end], i, end))
            comments.append((i, end))
            i = end
            continue
        if c == "/" and i + 1 < n and text[i + 1] == "*":
            end = text.find("*/", i + 2)
            if end < 0:
                end = n
                had_errors = True
            else:
                end += 2
            tokens.append(Token(COMMENT, text[i:end], i, end))
            comments.append((i, end))
            i = end
            continue
        if c == "/" and is_ts and _regex_allowed(tokens):
            end = _scan_ts_regex(text, i)
            if end is not None:
                tokens.append(Token(STRING, text[i:end], i, end))
                strings.append((i, end))
                i = end
                continue
        if c == "`" and is_ts:
            end, ok = _scan_template(text, i)
            tokens.append(Token(STRING, text[i:end], i, end))
            strings.append((i, end))
            had_errors = had_errors or not ok
            i = end
            continue
        if is_cs and c in "@$" and _cs_string_modifier(text, i):
            end, ok = _scan_cs_string(text, i)
            tokens.append(Token(STRING, text[i:end], i, end))
            strings.append((i, end))
            had_errors = had_errors or not ok
            i = end
            continue
        if c == '"':
            if text.startswith('"""', i):
                end, ok = _scan_triple_string(text, i, '"')
            else:
                end, ok = _scan_simple_string(text, i, '"', allow_newline=False)
            tokens.append(Token(STRING, text[i:end], i, end))
            strings.append((i, end))
            had_errors = had_errors or not ok
            i = end
            continue
        if c == "'":
            end, ok = _scan_simple_string(text, i, "'", allow_newline=False)
            tokens.append(Token(STRING, text[i:end], i, end))
            strings.append((i, end))
            had_errors = had_errors or not ok
            i = end
            continue
        m = _WORD_RE.match(text, i)
        if m:
            tokens.append(Token(WORD, m.group(), i, m.end()))
            i = m.end()
            continue
        tokens.append(Token(PUNCT, c, i, i + 1))
        i += 1
    return LexResult(tokens, comments, strings, had_errors)


def _regex_allowed(tokens: list[Token]) -> bool:
    if not tokens:
        return True
    for prev in reversed(tokens):
        if prev.kind == COMMENT:
            continue
        if prev.kind == PUNCT:
            return prev.text not in ")]}"
        if prev.kind == WORD:
            return prev.text in _TS_REGEX_PREV_WORDS
        return False
    return True


def _scan_ts_regex(text: str, i: int) -> int | None:
    """Return the end of a regex literal starting at `/`, or None if invalid."""
    n = len(text)
    j = i + 1
    in_class = False
    if j < n and text[j] in "*/":
        return None
    while j < n:
        c = text[j]
        if c == "\\":
            j += 2
            continue
        if c == "\n":
            return None
        if c == "[":
            in_class = True
        elif c == "]":
            in_class = False
        elif c == "/" and not in_class:
            j += 1
            while j < n and text[j].isalpha():
                j += 1
            return j
        j += 1
    return None


def _scan_template(text: str, i: int) -> tuple[int, bool]:
    """Scan a TS template literal including ${...} holes; one string token."""
    n = len(text)
    j = i + 1
    while j < n:
        c = text[j]
        if c == "\\":
            j += 2
            continue
        if c == "`":
            return j + 1, True
        if c == "$" and j + 1 < n and text[j + 1] == "{":
            j = _skip_balanced_hole(text, j + 2, opener="{", closer="}")
            continue
        j += 1
    return n, False


def _skip_balanced_hole(text: str, j: int, *, opener: str, closer: str) -> int:
    """Skip an interpolation hole body, honoring nested strings and braces."""
    n = len(text)
    depth = 1
    while j < n and depth > 0:
        c = text[j]
        if c == "\\":
            j += 2
            continue
        if c == opener:
            depth += 1
        elif c == closer:
            depth -= 1
        elif c in "'\"":
            j, _ = _scan_simple_string(text, j, c, allow_newline=True)
            continue
        elif c == "`":
            j, _ = _scan_template(text, j)
            continue
        j += 1
    return j


def _cs_string_modifier(text: str, i: int) -> bool:
    """True when @/$ at i begins a verbatim/interpolated string literal."""
    j = i
    seen = set()
    while j < len(text) and text[j] in "@$" and text[j] not in seen:
        seen.add(text[j])
        j += 1
    return j < len(text) and text[j] == '"'


def _scan_cs_string(text: str, i: int) -> tuple[int, bool]:
    n = len(text)
    j = i
    verbatim = False
    interpolated = False
    while j < n and text[j] in "@$":
        verbatim = verbatim or text[j] == "@"
        interpolated = interpolated or text[j] == "$"
        j += 1
    # j is at the opening quote
    j += 1
    while j < n:
        c = text[j]
        if c == '"':
            if verbatim and j + 1 < n and text[j + 1] == '"':
                j += 2
                continue
            return j + 1, True
        if c == "\\" and not verbatim:
            j += 2
            continue
        if c == "\n" and not verbatim:
            return j, False
        if interpolated and c == "{":
            if j + 1 < n and text[j + 1] == "{":
                j += 2
                continue
            j = _skip_balanced_hole(text, j + 1, opener="{", closer="}")
            continue
        j += 1
    return n, False
