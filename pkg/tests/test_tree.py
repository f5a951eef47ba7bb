"""Tree model: construction invariants, canonical serialization, hashing."""

import json
import random

import pytest
from hypothesis import given, strategies as st

from tsmin.errors import AstFormatError, AstStructureError
from tsmin.tree import (
    AstTree,
    NodeLabel,
    content_hash,
    deserialize,
    serialize,
)

from treegen import LABEL_POOL, random_tree

FIXED = AstTree.from_nested(
    ("MethodDeclaration", [
        ("SimpleName", "test_case"),
        ("Block", [
            ("ExpressionStatement", [
                ("MethodInvocation", "f", [("SimpleName", "id_1")]),
            ]),
            ("ReturnStatement", []),
        ]),
    ]))


def _labels():
    return st.sampled_from(LABEL_POOL)


def _nested():
    leaf = _labels().map(lambda kt: (kt[0], kt[1], []))
    return st.recursive(
        leaf,
        lambda kids: st.tuples(_labels(), st.lists(kids, min_size=1, max_size=4))
        .map(lambda t: (t[0][0], t[0][1], list(t[1]))),
        max_leaves=12,
    )


class TestNodeLabel:
    def test_structural_rejects_text(self):
        with pytest.raises(ValueError):
            NodeLabel("Block", "x")

    def test_textual_requires_text(self):
        with pytest.raises(ValueError):
            NodeLabel("SimpleName")

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            NodeLabel("Banana", "x")

    def test_equality_is_exact(self):
        assert NodeLabel("SimpleName", "a") == NodeLabel("SimpleName", "a")
        assert NodeLabel("SimpleName", "a") != NodeLabel("SimpleName", "b")
        assert NodeLabel("SimpleName", "a") != NodeLabel("MethodInvocation", "a")


class TestConstruction:
    def test_parent_must_precede_child(self):
        with pytest.raises(AstStructureError):
            AstTree([NodeLabel("Block"), NodeLabel("Block")], [-1, 1])

    def test_root_parent_must_be_minus_one(self):
        with pytest.raises(AstStructureError):
            AstTree([NodeLabel("Block")], [0])

    def test_topological_but_not_preorder_is_rejected(self):
        # Node 3 attaches to node 1 after node 1's subtree was interrupted
        # by node 2 (a child of the root): indices are not a preorder.
        labels = [NodeLabel("Block"), NodeLabel("Block"),
                  NodeLabel("Block"), NodeLabel("Block")]
        with pytest.raises(AstStructureError):
            AstTree(labels, [-1, 0, 0, 1])

    def test_empty_rejected(self):
        with pytest.raises(AstStructureError):
            AstTree([], [])

    def test_single_node(self):
        t = AstTree([NodeLabel("Block")], [-1])
        assert t.size == 1
        assert list(t.postorder()) == [0]
        assert t.subtree_sizes() == (1,)

    def test_fixed_shape(self):
        assert FIXED.size == 7
        assert FIXED.postorder() == (1, 5, 4, 3, 6, 2, 0)
        assert FIXED.subtree_sizes() == (7, 1, 5, 3, 2, 1, 1)
        assert FIXED.children[0] == (1, 2)
        assert FIXED.parents == (-1, 0, 0, 2, 3, 4, 2)


class TestSerialization:
    # Frozen canonical bytes; any drift here silently invalidates every
    # stored digest, so the exact encoding is pinned.
    def test_canonical_bytes(self):
        expected = (
            '{"format":"tsmin-ast","nodes":['
            '{"children":2,"kind":"MethodDeclaration"},'
            '{"children":0,"kind":"SimpleName","text":"test_case"},'
            '{"children":2,"kind":"Block"},'
            '{"children":1,"kind":"ExpressionStatement"},'
            '{"children":1,"kind":"MethodInvocation","text":"f"},'
            '{"children":0,"kind":"SimpleName","text":"id_1"},'
            '{"children":0,"kind":"ReturnStatement"}],'
            '"version":1}').encode()
        assert serialize(FIXED) == expected

    def test_content_hash_pinned(self):
        assert content_hash(FIXED) == (
            "e23e4889fa02d764b7a2a1073af29912b26035a5fecfb2bedcc682a908257e22")

    def test_digest_property_matches_function(self):
        assert FIXED.digest == content_hash(FIXED)

    @given(_nested())
    def test_round_trip(self, shape):
        t = AstTree.from_nested(shape)
        assert deserialize(serialize(t)) == t

    def test_round_trip_random_corpus(self):
        rnd = random.Random(20260814)
        for _ in range(200):
            t = random_tree(rnd, 30)
            back = deserialize(serialize(t))
            assert back == t
            assert content_hash(back) == content_hash(t)

    def test_hash_changes_with_text(self):
        a = AstTree.from_nested(("SimpleName", "a", []))
        b = AstTree.from_nested(("SimpleName", "b", []))
        assert content_hash(a) != content_hash(b)

    def test_hash_changes_with_shape(self):
        a = AstTree.from_nested(("Block", [("Block", [("Block", [])])]))
        b = AstTree.from_nested(("Block", [("Block", []), ("Block", [])]))
        assert content_hash(a) != content_hash(b)


class TestDeserializeErrors:
    def _doc(self, **overrides):
        doc = {"format": "tsmin-ast", "version": 1,
               "nodes": [{"kind": "Block", "children": 0}]}
        doc.update(overrides)
        return json.dumps(doc)

    def test_not_json(self):
        with pytest.raises(AstFormatError, match="invalid JSON"):
            deserialize(b"{nope")

    def test_not_utf8(self):
        with pytest.raises(AstFormatError, match="UTF-8"):
            deserialize(b"\xff\xfe{}")

    def test_not_object(self):
        with pytest.raises(AstFormatError, match=r"\$: document"):
            deserialize("[]")

    def test_wrong_format(self):
        with pytest.raises(AstFormatError, match=r"\$\.format"):
            deserialize(self._doc(format="other"))

    def test_wrong_version(self):
        with pytest.raises(AstFormatError, match=r"\$\.version"):
            deserialize(self._doc(version=99))

    def test_nodes_missing(self):
        doc = {"format": "tsmin-ast", "version": 1}
        with pytest.raises(AstFormatError, match=r"\$\.nodes"):
            deserialize(json.dumps(doc))

    def test_node_kind_missing(self):
        with pytest.raises(AstFormatError, match=r"\$\.nodes\[0\]\.kind"):
            deserialize(self._doc(nodes=[{"children": 0}]))

    def test_node_kind_unknown(self):
        with pytest.raises(AstFormatError, match=r"\$\.nodes\[0\]"):
            deserialize(self._doc(nodes=[{"kind": "Nope", "children": 0}]))

    def test_node_text_wrong_type(self):
        with pytest.raises(AstFormatError, match=r"\$\.nodes\[0\]\.text"):
            deserialize(self._doc(
                nodes=[{"kind": "SimpleName", "text": 3, "children": 0}]))

    def test_children_negative(self):
        with pytest.raises(AstFormatError, match=r"\$\.nodes\[0\]\.children"):
            deserialize(self._doc(nodes=[{"kind": "Block", "children": -1}]))

    def test_children_bool_rejected(self):
        with pytest.raises(AstFormatError, match=r"\$\.nodes\[0\]\.children"):
            deserialize(self._doc(nodes=[{"kind": "Block", "children": True}]))

    def test_dangling_node(self):
        nodes = [{"kind": "Block", "children": 0},
                 {"kind": "Block", "children": 0}]
        with pytest.raises(AstStructureError, match=r"\$\.nodes\[1\]"):
            deserialize(self._doc(nodes=nodes))

    def test_leftover_child_slots(self):
        nodes = [{"kind": "Block", "children": 2},
                 {"kind": "Block", "children": 0}]
        with pytest.raises(AstStructureError, match="child slot"):
            deserialize(self._doc(nodes=nodes))


class TestFromNested:
    def test_shorthand_forms(self):
        t = AstTree.from_nested(
            ("Block", [("SimpleName", "x"), ("ReturnStatement",)]))
        assert t.labels[0] == NodeLabel("Block")
        assert t.labels[1] == NodeLabel("SimpleName", "x")
        assert t.labels[2] == NodeLabel("ReturnStatement")

    def test_children_keep_source_order(self):
        t = AstTree.from_nested(
            ("Block", [("SimpleName", "a"), ("SimpleName", "b"),
                       ("SimpleName", "c")]))
        assert [t.labels[c].text for c in t.children[0]] == ["a", "b", "c"]


class TestPostorderAndSizes:
    @given(_nested())
    def test_against_recursive_reference(self, shape):
        t = AstTree.from_nested(shape)

        order = []

        def walk(v):
            for c in t.children[v]:
                walk(c)
            order.append(v)

        walk(0)
        assert list(t.postorder()) == order

        sizes = t.subtree_sizes()
        for v in range(t.size):
            span = sizes[v]
            # Subtrees are contiguous index ranges.
            descendants = set()

            def collect(u):
                descendants.add(u)
                for c in t.children[u]:
                    collect(c)

            collect(v)
            assert descendants == set(range(v, v + span))
