"""Access to the shipped equation transcriptions."""

from __future__ import annotations

from importlib import resources

from .ast_nodes import SwdDocument
from .parser import load_swd

__all__ = ["corpus_names", "corpus_text", "load_corpus"]


def corpus_names() -> list:
    root = resources.files(__package__) / "corpus"
    return sorted(p.name[:-4] for p in root.iterdir() if p.name.endswith(".swd"))


def corpus_text(name: str) -> str:
    return (resources.files(__package__) / "corpus" / f"{name}.swd").read_text()


def load_corpus(name: str) -> SwdDocument:
    return load_swd(corpus_text(name))
