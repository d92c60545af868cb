"""Supported languages and extension-based detection."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Language:
    """A supported source language.

    comment_prefix is the line-comment marker used when rendering retrieved
    context blocks; extensions are lowercase file suffixes including the dot.
    """

    name: str
    comment_prefix: str
    extensions: tuple[str, ...]


PYTHON = Language("python", "#", (".py",))
JAVA = Language("java", "//", (".java",))
TYPESCRIPT = Language("typescript", "//", (".ts", ".tsx"))
CSHARP = Language("csharp", "//", (".cs",))

LANGUAGES: tuple[Language, ...] = (PYTHON, JAVA, TYPESCRIPT, CSHARP)

_EXTENSION_MAP: dict[str, Language] = {
    ext: lang for lang in LANGUAGES for ext in lang.extensions
}


def detect_language(path: str) -> Language | None:
    """Map a file path to its Language by suffix, case-insensitively.

    Returns None for unrecognized extensions.
    """
    dot = path.rfind(".")
    if dot < 0:
        return None
    return _EXTENSION_MAP.get(path[dot:].lower())


def language_by_name(name: str) -> Language:
    for lang in LANGUAGES:
        if lang.name == name:
            return lang
    raise ValueError(f"unknown language: {name!r}")
