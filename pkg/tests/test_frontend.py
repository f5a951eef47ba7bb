"""Frontend: extraction, preprocessing transforms, and AST lowering."""

import re

import pytest

from tsmin.errors import FrontendError
from tsmin.frontend import (
    PreprocessConfig,
    extract_test_methods,
    preprocess,
    to_ast,
)
from tsmin.frontend.extract import extract_from_source
from tsmin.frontend.lexer import lex
from tsmin.frontend.parser import parse_method
from tsmin.frontend.preprocess import DEFAULT_ASSERTION_METHODS

from golden import GOLDEN_EXPECTED, GOLDEN_INPUT


def tokens(source):
    return [(t.kind, t.value) for t in lex(source)]


def assert_same_tokens(actual_source, expected_source):
    assert tokens(actual_source) == tokens(expected_source)


class TestGoldenTransformation:
    def test_token_stream(self):
        assert_same_tokens(preprocess(GOLDEN_INPUT), GOLDEN_EXPECTED)

    def test_idempotent(self):
        once = preprocess(GOLDEN_INPUT)
        assert preprocess(once) == once

    def test_renaming_invariance(self):
        # Same method with different local names: byte-equal output,
        # equal trees, equal digests.
        clone = GOLDEN_INPUT.replace("d1", "left").replace("d2", "right")
        out_a, out_b = preprocess(GOLDEN_INPUT), preprocess(clone)
        assert out_a == out_b
        assert to_ast(out_a).digest == to_ast(out_b).digest

    def test_tree_shape_of_invocation(self):
        tree = to_ast(preprocess(GOLDEN_INPUT))
        labels = [tree.labels[v] for v in range(tree.size)]
        spot = next(
            v for v, lab in enumerate(labels)
            if lab.kind == "MethodInvocation" and lab.text == "addSeries"
        )
        kids = tree.children[spot]
        assert [labels[k].kind for k in kids] == ["SimpleName", "MethodInvocation"]
        assert labels[kids[0]].text == "id_1"
        assert labels[kids[1]].text == "createSeries1"

    def test_comment_text_gone(self):
        assert "datasets" not in preprocess(GOLDEN_INPUT)


class TestRenaming:
    def test_numbering_by_first_appearance(self):
        out = preprocess(
            "public void testOrder() {"
            " int zz = 1; int aa = zz + 2; zz = aa; }"
        )
        assert_same_tokens(
            out,
            "public void test_case() { int id_1 = 1;"
            " int id_2 = id_1 + 2; id_1 = id_2; }",
        )

    def test_parameters_are_renamed(self):
        out = preprocess("public void testWith(int start, String label) {"
                         " use(start, label); }")
        assert_same_tokens(
            out,
            "public void test_case(int id_1, String id_2) { use(id_1, id_2); }",
        )

    def test_catch_and_loop_variables(self):
        out = preprocess(
            "public void testScan() {"
            " for (int i = 0; i < 3; i++) { sink(i); }"
            " try { poke(); } catch (RuntimeException boom) { note(boom); } }"
        )
        assert_same_tokens(
            out,
            "public void test_case() {"
            " for (int id_1 = 0; id_1 < 3; id_1++) { sink(id_1); }"
            " try { poke(); } catch (RuntimeException id_2) { note(id_2); } }",
        )

    def test_enhanced_for_variable(self):
        out = preprocess(
            "public void testEach() {"
            " for (String word : words()) { sink(word); } }"
        )
        assert_same_tokens(
            out,
            "public void test_case() {"
            " for (String id_1 : words()) { sink(id_1); } }",
        )

    def test_field_access_spelling_kept(self):
        # Only the receiver is a local; the member name keeps its spelling.
        out = preprocess(
            "public void testField() { Point p = make(); sink(p.x); }"
        )
        assert_same_tokens(
            out,
            "public void test_case() { Point id_1 = make(); sink(id_1.x); }",
        )

    def test_methods_types_literals_preserved(self):
        out = preprocess(
            'public void testKeep() { Widget w = new Widget("name", 7); w.spin(); }'
        )
        assert_same_tokens(
            out,
            'public void test_case() { Widget id_1 = new Widget("name", 7);'
            " id_1.spin(); }",
        )


class TestAssertionRemoval:
    def test_unqualified(self):
        out = preprocess(
            "public void testA() { int v = 1; assertEquals(1, v); ping(); }"
        )
        assert_same_tokens(
            out, "public void test_case() { int id_1 = 1; ping(); }"
        )

    def test_qualified_single_and_full(self):
        out = preprocess(
            "public void testB() {"
            " Assert.assertTrue(ok());"
            " org.junit.Assert.assertFalse(bad());"
            " ping(); }"
        )
        assert_same_tokens(out, "public void test_case() { ping(); }")

    def test_fail_and_assert_that(self):
        out = preprocess(
            'public void testC() { fail("nope"); assertThat(x(), y()); }'
        )
        assert_same_tokens(out, "public void test_case() { }")

    def test_unknown_name_survives(self):
        out = preprocess("public void testD() { verifyState(1); }")
        assert_same_tokens(out, "public void test_case() { verifyState(1); }")

    def test_assertion_as_sole_branch_body(self):
        # A removed statement in a non-block slot leaves an empty statement,
        # keeping the surrounding control structure intact.
        out = preprocess(
            "public void testE() { if (ready()) assertTrue(ok()); ping(); }"
        )
        assert_same_tokens(
            out, "public void test_case() { if (ready()) ; ping(); }"
        )

    def test_keep_assertion_args_switch(self):
        config = PreprocessConfig(keep_assertion_args=True)
        out = preprocess(
            "public void testF() { int v = 1; assertEquals(5, v); }", config
        )
        assert_same_tokens(
            out, "public void test_case() { int id_1 = 1; 5; id_1; }"
        )

    def test_empty_assertion_set_rejected(self):
        with pytest.raises(ValueError):
            PreprocessConfig(assertion_method_names=())


class TestLoggingRemoval:
    def test_print_stream_receivers(self):
        out = preprocess(
            'public void testG() { System.out.println("x");'
            ' System.err.printf("%d", 1); ping(); }'
        )
        assert_same_tokens(out, "public void test_case() { ping(); }")

    def test_chained_print_stream(self):
        out = preprocess(
            'public void testH() { System.out.append("x").println(); ping(); }'
        )
        assert_same_tokens(out, "public void test_case() { ping(); }")

    def test_logger_receivers_any_method(self):
        out = preprocess(
            'public void testI() { LOG.warning("w"); logger.debug("d");'
            " Log.fine(1); ping(); }"
        )
        assert_same_tokens(out, "public void test_case() { ping(); }")

    def test_terminal_logging_method_any_receiver(self):
        out = preprocess(
            'public void testJ() { reporter.println("x"); sink.error("y");'
            " reporter.record(1); }"
        )
        assert_same_tokens(out, "public void test_case() { reporter.record(1); }")


class TestEmptyBody:
    def test_rendered_form(self):
        assert_same_tokens(
            preprocess("public void testNothing() { }"),
            "public void test_case() { }",
        )

    def test_tree_is_method_with_empty_block(self):
        tree = to_ast(preprocess("public void testNothing() { }"))
        assert tree.size == 2
        assert tree.labels[0].kind == "MethodDeclaration"
        assert tree.labels[1].kind == "Block"
        assert tree.children[1] == ()


class TestRawFallback:
    def test_anonymous_class(self):
        out = preprocess(
            "public void testK() {"
            " int count = 2;"
            " Runnable task = new Runnable() { public void run() { use(count); } };"
            " count = count + 1; }"
        )
        # The declaration with the anonymous body survives verbatim except
        # that known locals are renamed inside it.
        assert_same_tokens(
            out,
            "public void test_case() {"
            " int id_1 = 2;"
            " Runnable task = new Runnable() { public void run() { use(id_1); } };"
            " id_1 = id_1 + 1; }",
        )

    def test_try_with_resources(self):
        out = preprocess(
            "public void testL() {"
            " try (Scanner sc = new Scanner(text())) { sc.next(); } }"
        )
        assert_same_tokens(
            out,
            "public void test_case() {"
            " try (Scanner sc = new Scanner(text())) { sc.next(); } }",
        )

    def test_arrow_switch(self):
        source = (
            "public void testM() {"
            " int mode = pick();"
            " switch (mode) { case 1 -> onOne(); default -> onOther(); } }"
        )
        out = preprocess(source)
        assert_same_tokens(
            out,
            "public void test_case() {"
            " int id_1 = pick();"
            " switch (id_1) { case 1 -> onOne(); default -> onOther(); } }",
        )

    def test_unlexable_right_shift(self):
        out = preprocess(
            "public void testN() { int total = 8; total = total >> 1; }"
        )
        assert_same_tokens(
            out,
            "public void test_case() { int id_1 = 8; id_1 = id_1 >> 1; }",
        )

    def test_member_names_not_renamed_in_raw(self):
        # 'next' after a dot is a member, even if a local shares the name.
        out = preprocess(
            "public void testO() {"
            " int next = 1;"
            " try (Scanner sc = open()) { sc.next(); use(next); } }"
        )
        assert_same_tokens(
            out,
            "public void test_case() {"
            " int id_1 = 1;"
            " try (Scanner sc = open()) { sc.next(); use(id_1); } }",
        )

    def test_raw_statement_comments_stripped(self):
        out = preprocess(
            "public void testP() {"
            " switch (pick()) { case 1 -> one(); /* note */ default -> two(); } }"
        )
        assert "note" not in out

    def test_raw_statement_keeps_tokens_as_children(self):
        # The fallback is lossless: the statement's tokens become RawToken
        # leaves, so distinct unparsed statements stay distinguishable.
        tree = to_ast(
            preprocess(
                "public void testQ() {"
                " switch (pick()) { case 1 -> one(); default -> two(); } }"
            )
        )
        kinds = [tree.labels[v].kind for v in range(tree.size)]
        spot = kinds.index("RawStatement")
        kids = tree.children[spot]
        assert kids and all(tree.labels[k].kind == "RawToken" for k in kids)
        texts = [tree.labels[k].text for k in kids]
        assert texts[0] == "switch" and "->" in texts


class TestParseErrors:
    def test_missing_body(self):
        with pytest.raises(FrontendError):
            preprocess("public void testNoBody()")

    def test_malformed_header(self):
        with pytest.raises(FrontendError):
            preprocess("public void () { }")

    def test_trailing_tokens(self):
        with pytest.raises(FrontendError):
            parse_method("public void t() { } leftover")

    def test_unterminated_string_position(self):
        with pytest.raises(FrontendError) as caught:
            preprocess('public void t() {\n  String s = "open;\n}')
        assert caught.value.line == 2
        assert caught.value.col is not None

    def test_unterminated_block_comment(self):
        with pytest.raises(FrontendError) as caught:
            preprocess("public void t() { /* forever }")
        assert caught.value.line == 1

    def test_unexpected_character(self):
        with pytest.raises(FrontendError) as caught:
            preprocess("public void t() { int x = 1 ` 2; }")
        assert caught.value.line == 1


LISTING_FILE = f"""\
import some.pkg.DefaultTableXYDataset;

public class DataSetTest {{
    private XYSeries createSeries1() {{
        return new XYSeries(1);
    }}

    {GOLDEN_INPUT}
}}
"""


class TestExtraction:
    def test_single_test_with_leading_comment(self):
        found = extract_from_source(LISTING_FILE, file="DataSetTest.java")
        assert [m.name for m in found] == ["testEquals"]
        method = found[0]
        # The span carries the documentation comment and the full body.
        assert method.source.startswith("/**")
        assert method.source.rstrip().endswith("}")
        assert "addSeries(createSeries1())" in method.source
        assert method.line == 12

    def test_helpers_only(self):
        source = (
            "public class HelperOnly {\n"
            "    private int twice(int v) { return v + v; }\n"
            "    public void build() { twice(2); }\n"
            "}\n"
        )
        assert extract_from_source(source) == []

    def test_annotated_tests_in_order(self):
        source = (
            "public class Three {\n"
            "    @Test public void alpha() { a(); }\n"
            "    @Test(expected = Boom.class) public void beta() { b(); }\n"
            "    @ParameterizedTest public void gamma() { c(); }\n"
            "    public void delta() { d(); }\n"
            "}\n"
        )
        found = extract_from_source(source)
        assert [m.name for m in found] == ["alpha", "beta", "gamma"]

    def test_name_prefix_rule(self):
        source = (
            "public class Named {\n"
            "    public void testPlain() { a(); }\n"
            "    public void tester() { b(); }\n"
            "    public void check() { c(); }\n"
            "}\n"
        )
        # Only a leading "test" counts, and it needs no annotation.
        found = extract_from_source(source)
        assert [m.name for m in found] == ["testPlain", "tester"]

    def test_abstract_methods_skipped(self):
        source = (
            "public abstract class Base {\n"
            "    public abstract void testLater();\n"
            "    @Test public void testNow() { a(); }\n"
            "}\n"
        )
        assert [m.name for m in extract_from_source(source)] == ["testNow"]

    def test_nested_class_members_found(self):
        source = (
            "public class Outer {\n"
            "    public static class Inner {\n"
            "        @Test public void testInner() { a(); }\n"
            "    }\n"
            "    @Test public void testOuter() { b(); }\n"
            "}\n"
        )
        found = extract_from_source(source)
        assert [m.name for m in found] == ["testInner", "testOuter"]

    def test_enum_constants_skipped(self):
        source = (
            "public enum Mode {\n"
            "    FAST, SLOW;\n"
            "    @Test public void testMode() { a(); }\n"
            "}\n"
        )
        assert [m.name for m in extract_from_source(source)] == ["testMode"]

    def test_fields_and_initializers_skipped(self):
        source = (
            "public class Fielded {\n"
            "    private static final int[] SIZES = {1, 2, 3};\n"
            "    static { setup(); }\n"
            "    @Test public void testSized() { use(SIZES); }\n"
            "}\n"
        )
        assert [m.name for m in extract_from_source(source)] == ["testSized"]

    def test_unreadable_path_is_frontend_error(self, tmp_path):
        trap = tmp_path / "Trap.java"
        trap.mkdir()
        with pytest.raises(FrontendError) as caught:
            extract_test_methods(trap)
        assert "Trap.java" in str(caught.value)

    def test_non_utf8_is_frontend_error(self, tmp_path):
        bad = tmp_path / "Bad.java"
        bad.write_bytes(b"public class Bad { \xff }")
        with pytest.raises(FrontendError) as caught:
            extract_test_methods(bad)
        assert "Bad.java" in str(caught.value)


FIXTURE_METHODS = [
    GOLDEN_INPUT,
    "public void testLoop() { int total = 0;"
    " for (int i = 0; i < 9; i++) { total = total + i; } use(total); }",
    "public void testTernary(int flag) {"
    " String tag = flag > 0 ? name() : \"none\"; use(tag); }",
    'public void testLambda() { Runnable r = () -> use("x"); r.run(); }',
    "public void testWhile() { int n = 3;"
    " while (n > 0) { n--; } do { tick(); } while (alive()); }",
    "public void testCast() { Object box = fetch();"
    " String s = (String) box; use(s.length()); }",
]


class TestStreamInvariants:
    @pytest.mark.parametrize("method_source", FIXTURE_METHODS)
    def test_idempotence(self, method_source):
        once = preprocess(method_source)
        assert preprocess(once) == once

    @pytest.mark.parametrize("method_source", FIXTURE_METHODS)
    def test_no_assertion_names_survive(self, method_source):
        for kind, value in tokens(preprocess(method_source)):
            assert value not in DEFAULT_ASSERTION_METHODS

    @pytest.mark.parametrize("method_source", FIXTURE_METHODS)
    def test_normalized_ids_are_dense_and_ordered(self, method_source):
        seen = []
        for kind, value in tokens(preprocess(method_source)):
            if kind == "ident" and re.fullmatch(r"id_\d+", value) and value not in seen:
                seen.append(value)
        assert seen == [f"id_{k}" for k in range(1, len(seen) + 1)]

    @pytest.mark.parametrize("method_source", FIXTURE_METHODS)
    def test_reparse_equals_original_tree(self, method_source):
        out = preprocess(method_source)
        assert to_ast(out).digest == to_ast(preprocess(out)).digest
