"""Load a repository directory into an immutable in-memory model."""

from __future__ import annotations

import bisect
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .languages import Language, detect_language

logger = logging.getLogger(__name__)

# Directories that never contain first-party sources.
DEFAULT_EXCLUDED_DIRS = frozenset(
    {".git", ".hg", ".svn", "node_modules", "bin", "obj", "__pycache__",
     "venv", ".venv", "dist", "build", "target"}
)


class RepositoryBoundsError(ValueError):
    """Repository violates the configured file-count bounds."""


@dataclass(frozen=True)
class SourceFile:
    """One source file, decoded and split into lines.

    text is the UTF-8 (lossy) decoded contents and is the canonical string
    all offsets index into. lines are newline-stripped (both \\n and \\r\\n
    terminators); line_offsets[i] is the offset in text where line i starts,
    so cursor arithmetic stays exact even for \\r\\n files.
    """

    path: str
    language: Language
    text: str
    lines: tuple[str, ...]
    line_offsets: tuple[int, ...]

    @classmethod
    def from_text(cls, path: str, language: Language, text: str) -> "SourceFile":
        lines: list[str] = []
        offsets: list[int] = []
        pos = 0
        n = len(text)
        while pos < n:
            offsets.append(pos)
            nl = text.find("\n", pos)
            if nl < 0:
                line = text[pos:]
                pos = n
            else:
                line = text[pos:nl]
                pos = nl + 1
            if line.endswith("\r"):
                line = line[:-1]
            lines.append(line)
        return cls(path, language, text, tuple(lines), tuple(offsets))

    def locate_cursor(self, line: int, column: int) -> int:
        """Offset of (1-based line, 0-based column); splits text exactly."""
        if not 1 <= line <= len(self.lines):
            raise ValueError(
                f"{self.path}: line {line} out of range 1..{len(self.lines)}"
            )
        if not 0 <= column <= len(self.lines[line - 1]):
            raise ValueError(
                f"{self.path}: column {column} out of range on line {line}"
            )
        return self.line_offsets[line - 1] + column

    def position_of(self, offset: int) -> tuple[int, int]:
        """Inverse of locate_cursor for offsets on a stored line."""
        if offset < 0 or offset > len(self.text):
            raise ValueError(f"offset {offset} out of range")
        idx = bisect.bisect_right(self.line_offsets, offset) - 1
        if idx < 0:
            idx = 0
        return idx + 1, offset - self.line_offsets[idx]


@dataclass(frozen=True)
class Repository:
    root: str
    id: str
    files: tuple[SourceFile, ...]
    language_counts: dict[str, int] = field(default_factory=dict)
    warnings: tuple[str, ...] = ()

    def get_file(self, path: str) -> SourceFile:
        for f in self.files:
            if f.path == path:
                return f
        raise KeyError(f"no such file in repository: {path!r}")


def _iter_source_paths(root: Path, excluded_dirs: frozenset[str]):
    for dirpath, dirnames, filenames in os.walk(root):
        dirnames[:] = sorted(
            d for d in dirnames if d not in excluded_dirs and not d.startswith(".")
        )
        for name in filenames:
            if detect_language(name) is not None:
                yield Path(dirpath) / name


def load_repository(
    root: str | os.PathLike,
    *,
    min_files: int | None = None,
    max_files: int | None = None,
    excluded_dirs: frozenset[str] = DEFAULT_EXCLUDED_DIRS,
    jobs: int = 1,
) -> Repository:
    """Load every recognized source file under root, sorted by path.

    min_files/max_files are opt-in repository-size bounds; loading fails with
    RepositoryBoundsError when the repository falls outside them. Unreadable
    files are skipped with a warning, never fatal.
    """
    root_path = Path(root)
    if not root_path.is_dir():
        raise ValueError(f"repository root is not a directory: {root_path}")
    root_path = root_path.resolve()

    paths = sorted(_iter_source_paths(root_path, excluded_dirs))
    count = len(paths)
    if min_files is not None and count < min_files:
        raise RepositoryBoundsError(
            f"repository {root_path.name} has {count} source files, "
            f"fewer than the minimum of {min_files}"
        )
    if max_files is not None and count > max_files:
        raise RepositoryBoundsError(
            f"repository {root_path.name} has {count} source files, "
            f"more than the maximum of {max_files}"
        )

    warnings: list[str] = []

    def read_one(path: Path) -> SourceFile | None:
        rel = path.relative_to(root_path).as_posix()
        language = detect_language(rel)
        assert language is not None
        try:
            raw = path.read_bytes()
        except OSError as exc:
            msg = f"skipping unreadable file {rel}: {exc}"
            logger.warning(msg)
            warnings.append(msg)
            return None
        return SourceFile.from_text(rel, language, raw.decode("utf-8", errors="replace"))

    if jobs > 1 and count > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            loaded = list(pool.map(read_one, paths))
    else:
        loaded = [read_one(p) for p in paths]

    files = tuple(f for f in loaded if f is not None)
    counts: dict[str, int] = {}
    for f in files:
        counts[f.language.name] = counts.get(f.language.name, 0) + 1
    return Repository(
        root=str(root_path),
        id=root_path.name,
        files=files,
        language_counts=counts,
        warnings=tuple(sorted(warnings)),
    )
