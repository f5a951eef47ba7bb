"""Labeled ordered trees for preprocessed test methods.

A tree is a flat preorder sequence of nodes. Node identity is the dense
preorder index, which makes subtree spans contiguous ranges and gives the
similarity measures O(1) navigation. Trees are immutable once built.

The canonical on-disk form is a JSON document (see docs/ast-format.md)
storing the nodes in preorder with explicit child counts; the content hash
is the SHA-256 of those canonical bytes.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

from .errors import AstFormatError, AstStructureError

AST_FORMAT = "tsmin-ast"
AST_VERSION = 1

# Kinds whose label carries no text payload.
STRUCTURAL_KINDS = frozenset({
    "MethodDeclaration",
    "SingleVariableDeclaration",
    "Block",
    "VariableDeclarationStatement",
    "VariableDeclarationFragment",
    "ExpressionStatement",
    "IfStatement",
    "ForStatement",
    "EnhancedForStatement",
    "WhileStatement",
    "DoStatement",
    "TryStatement",
    "CatchClause",
    "Finally",
    "ReturnStatement",
    "ThrowStatement",
    "SwitchStatement",
    "SwitchCase",
    "BreakStatement",
    "ContinueStatement",
    "EmptyStatement",
    "RawStatement",
    "ConditionalExpression",
    "CastExpression",
    "InstanceofExpression",
    "LambdaExpression",
    "ArrayAccess",
    "ArrayInitializer",
    "ThisExpression",
    "NullLiteral",
})

# Kinds whose label carries a mandatory text payload (name, operator,
# literal lexeme, or raw token).
TEXTUAL_KINDS = frozenset({
    "MethodInvocation",
    "ClassInstanceCreation",
    "ArrayCreation",
    "SimpleName",
    "FieldAccess",
    "TypeName",
    "NumberLiteral",
    "StringLiteral",
    "CharacterLiteral",
    "BooleanLiteral",
    "ClassLiteral",
    "PrefixExpression",
    "PostfixExpression",
    "InfixExpression",
    "Assignment",
    "MethodReference",
    "RawToken",
})

KINDS = STRUCTURAL_KINDS | TEXTUAL_KINDS


@dataclass(frozen=True)
class NodeLabel:
    """Node label; equality is exact equality of (kind, text)."""

    kind: str
    text: str | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown node kind {self.kind!r}")
        if self.kind in STRUCTURAL_KINDS:
            if self.text is not None:
                raise ValueError(f"kind {self.kind} takes no text payload")
        elif not isinstance(self.text, str):
            raise ValueError(f"kind {self.kind} requires a text payload")

    def __str__(self):
        return self.kind if self.text is None else f"{self.kind}:{self.text}"


class AstTree:
    """Immutable labeled ordered tree, nodes indexed in preorder.

    Invariants enforced at construction:
      * node 0 is the single root (parent -1); every other parent index is
        a smaller node index;
      * the index order is a preorder of the tree, so every subtree is the
        contiguous index range [v, v + subtree_size(v));
      * children keep their source order.
    """

    __slots__ = ("labels", "parents", "children", "_sizes", "_postorder", "_digest",
                 "__weakref__")

    def __init__(self, labels, parents):
        labels = tuple(labels)
        parents = tuple(parents)
        if not labels:
            raise AstStructureError("a tree needs at least one node")
        if len(labels) != len(parents):
            raise AstStructureError(
                f"{len(labels)} labels but {len(parents)} parent links")
        if parents[0] != -1:
            raise AstStructureError("node 0 must be the root (parent -1)")
        n = len(labels)
        children = [[] for _ in range(n)]
        for i in range(1, n):
            p = parents[i]
            if not 0 <= p < i:
                raise AstStructureError(
                    f"node {i} has parent {p}; preorder requires 0 <= parent < {i}")
            children[p].append(i)
        # Index order must be an actual preorder, not just topological.
        stack = [0]
        for expect in range(n):
            if not stack or stack.pop() != expect:
                raise AstStructureError("node order is not a preorder traversal")
            stack.extend(reversed(children[expect]))
        for lab in labels:
            if not isinstance(lab, NodeLabel):
                raise AstStructureError(f"label {lab!r} is not a NodeLabel")
        self.labels = labels
        self.parents = parents
        self.children = tuple(tuple(c) for c in children)
        self._sizes = None
        self._postorder = None
        self._digest = None

    # -- construction helpers ------------------------------------------------

    @classmethod
    def from_nested(cls, nested):
        """Build from nested (kind, text, children) tuples.

        The text slot may be omitted for structural kinds:
        ("Block", [child, ...]) == ("Block", None, [child, ...]).
        """
        labels, parents = [], []

        def emit(node, parent):
            if len(node) == 2 and isinstance(node[1], (list, tuple)):
                kind, text, kids = node[0], None, node[1]
            elif len(node) == 3:
                kind, text, kids = node
            elif len(node) == 2:
                kind, text, kids = node[0], node[1], ()
            elif len(node) == 1:
                kind, text, kids = node[0], None, ()
            else:
                raise ValueError(f"cannot read nested node {node!r}")
            idx = len(labels)
            labels.append(NodeLabel(kind, text))
            parents.append(parent)
            for kid in kids:
                emit(kid, idx)

        emit(nested, -1)
        return cls(labels, parents)

    # -- basic views ---------------------------------------------------------

    @property
    def root(self):
        return 0

    @property
    def size(self):
        return len(self.labels)

    def preorder(self):
        """Node indices in preorder (the storage order)."""
        return range(self.size)

    def postorder(self):
        """Node indices in postorder; deterministic and cached."""
        if self._postorder is None:
            order = []
            stack = [(0, False)]
            while stack:
                node, expanded = stack.pop()
                if expanded:
                    order.append(node)
                else:
                    stack.append((node, True))
                    stack.extend((c, False) for c in reversed(self.children[node]))
            self._postorder = tuple(order)
        return self._postorder

    def subtree_sizes(self):
        """size of the subtree rooted at each node; subtree of v spans
        indices [v, v + sizes[v])."""
        if self._sizes is None:
            sizes = [1] * self.size
            for i in range(self.size - 1, 0, -1):
                sizes[self.parents[i]] += sizes[i]
            self._sizes = tuple(sizes)
        return self._sizes

    @property
    def digest(self):
        if self._digest is None:
            self._digest = content_hash(self)
        return self._digest

    def __eq__(self, other):
        if not isinstance(other, AstTree):
            return NotImplemented
        return self.labels == other.labels and self.parents == other.parents

    def __hash__(self):
        return hash((self.labels, self.parents))

    def __repr__(self):
        return f"<AstTree size={self.size} root={self.labels[0]}>"


def serialize(tree: AstTree) -> bytes:
    """Canonical byte serialization; deterministic across runs and platforms."""
    nodes = []
    for i in range(tree.size):
        lab = tree.labels[i]
        node = {"kind": lab.kind, "children": len(tree.children[i])}
        if lab.text is not None:
            node["text"] = lab.text
        nodes.append(node)
    doc = {"format": AST_FORMAT, "version": AST_VERSION, "nodes": nodes}
    return json.dumps(doc, sort_keys=True, separators=(",", ":"),
                      ensure_ascii=True).encode("utf-8")


def deserialize(data) -> AstTree:
    """Inverse of serialize; also accepts any document matching the schema.

    Raises AstFormatError for malformed documents (message names the
    offending path) and AstStructureError for documents that describe an
    impossible tree (dangling or leftover child slots).
    """
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise AstFormatError(f"document is not UTF-8: {exc}") from exc
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise AstFormatError(f"invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise AstFormatError("$: document must be a JSON object")
    if doc.get("format") != AST_FORMAT:
        raise AstFormatError(f"$.format: expected {AST_FORMAT!r}, got "
                             f"{doc.get('format')!r}")
    if doc.get("version") != AST_VERSION:
        raise AstFormatError(f"$.version: unsupported version {doc.get('version')!r}")
    nodes = doc.get("nodes")
    if not isinstance(nodes, list) or not nodes:
        raise AstFormatError("$.nodes: must be a non-empty array")

    labels, counts = [], []
    for i, node in enumerate(nodes):
        path = f"$.nodes[{i}]"
        if not isinstance(node, dict):
            raise AstFormatError(f"{path}: must be an object")
        kind = node.get("kind")
        if not isinstance(kind, str):
            raise AstFormatError(f"{path}.kind: missing or not a string")
        text = node.get("text")
        if text is not None and not isinstance(text, str):
            raise AstFormatError(f"{path}.text: must be a string when present")
        count = node.get("children")
        if not isinstance(count, int) or isinstance(count, bool) or count < 0:
            raise AstFormatError(f"{path}.children: must be a non-negative integer")
        try:
            labels.append(NodeLabel(kind, text))
        except ValueError as exc:
            raise AstFormatError(f"{path}: {exc}") from exc
        counts.append(count)

    # Rebuild parent links from the preorder child counts.
    parents = [-1] * len(nodes)
    stack = [[0, counts[0]]]
    for i in range(1, len(nodes)):
        while stack and stack[-1][1] == 0:
            stack.pop()
        if not stack:
            raise AstStructureError(
                f"$.nodes[{i}]: no parent has a child slot left for this node")
        parents[i] = stack[-1][0]
        stack[-1][1] -= 1
        stack.append([i, counts[i]])
    unfilled = sum(slot for _, slot in stack)
    if unfilled:
        raise AstStructureError(
            f"$.nodes: {unfilled} declared child slot(s) have no matching node")
    return AstTree(labels, parents)


def content_hash(tree: AstTree) -> str:
    """SHA-256 hex digest of the canonical serialization."""
    return hashlib.sha256(serialize(tree)).hexdigest()
