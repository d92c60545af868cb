from .parser import parse_file
from .tree import LineIndex, SyntaxNode, SyntaxTree

__all__ = ["LineIndex", "SyntaxNode", "SyntaxTree", "parse_file"]
