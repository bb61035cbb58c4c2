"""The bundled formula corpus and a reader for files in the same format.

One formula per line; ``#`` starts a comment. A trailing comment that begins
with ``theorem`` or ``non-theorem`` records the formula's intuitionistic status.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from ..errors import ParseError
from .syntax import Formula, parse

__all__ = ["CorpusEntry", "read_corpus", "load_corpus"]


@dataclass(frozen=True)
class CorpusEntry:
    formula: Formula
    theorem: bool | None
    note: str
    line: int


def read_corpus(text: str) -> list[CorpusEntry]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        body, _, comment = raw.partition("#")
        if not body.strip():
            continue
        try:
            phi = parse(body)
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc.detail}", exc.position) from exc
        comment = comment.strip()
        status = None
        if comment.startswith("non-theorem"):
            status = False
        elif comment.startswith("theorem"):
            status = True
        note = comment.partition(":")[2].strip()
        out.append(CorpusEntry(phi, status, note, lineno))
    return out


def load_corpus(path: str | Path | None = None) -> list[CorpusEntry]:
    """Read ``path``, or the bundled corpus when no path is given."""
    if path is None:
        text = resources.files(__package__).joinpath("corpus.txt").read_text(encoding="utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    return read_corpus(text)
