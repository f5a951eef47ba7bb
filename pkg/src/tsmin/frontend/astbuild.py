"""Lowering parsed methods to the persisted AstTree form.

The tree drops everything that is pure surface: the method name and
signature text (every preprocessed method is named identically anyway),
receiver flags, and the for-header grouping. A no-argument method lowers
to a MethodDeclaration whose only child is its Block.
"""

from __future__ import annotations

from tsmin.tree import TEXTUAL_KINDS, AstTree, NodeLabel
from tsmin.frontend.parser import Node, parse_method


def lower(method: Node) -> AstTree:
    labels: list[NodeLabel] = []
    parents: list[int] = []

    def emit(node: Node, parent: int):
        idx = len(labels)
        text = node.text if node.kind in TEXTUAL_KINDS else None
        labels.append(NodeLabel(node.kind, text))
        parents.append(parent)
        for child in node.children:
            emit(child, idx)

    emit(method, -1)
    return AstTree(labels, parents)


def to_ast(preprocessed_source: str, *, file=None) -> AstTree:
    """AstTree of a preprocessed method (see preprocess())."""
    return lower(parse_method(preprocessed_source, file=file))
