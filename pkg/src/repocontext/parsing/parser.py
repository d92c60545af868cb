"""Language dispatch for file parsing."""

from __future__ import annotations

from ..corpus import SourceFile
from .cstyle_parser import parse_cstyle
from .python_parser import parse_python
from .tree import SyntaxTree


def parse_file(file: SourceFile) -> SyntaxTree:
    """Parse a source file into an error-tolerant syntax tree."""
    name = file.language.name
    if name == "python":
        return parse_python(file.text, file.path)
    if name in ("java", "typescript", "csharp"):
        return parse_cstyle(file.text, name, file.path)
    raise ValueError(f"unsupported language: {name!r}")
