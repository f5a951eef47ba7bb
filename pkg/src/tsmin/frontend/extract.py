"""Test-method extraction from source files.

A member counts as a test when it carries a @Test annotation (any
qualification) or its name starts with "test". The returned source span
is the raw file slice from the end of the previous member, so doc
comments directly above the method ride along (preprocessing strips
them anyway).
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from tsmin.errors import FrontendError
from tsmin.frontend.lexer import KEYWORDS, MODIFIERS, Token, lex
from tsmin.frontend.parser import Parser, _Backtrack

_TYPE_KEYWORDS = frozenset({"class", "interface", "enum"})


@dataclass(frozen=True)
class ExtractedMethod:
    name: str
    source: str
    file: str | None
    line: int  # 1-based header line of the method name


class _Scanner:
    def __init__(self, text: str, tokens: list[Token], file):
        self.text = text
        self.toks = tokens
        self.i = 0
        self.file = file
        self.found: list[ExtractedMethod] = []

    def peek(self, ahead=0):
        j = self.i + ahead
        return self.toks[j] if j < len(self.toks) else None

    def at(self, value, ahead=0):
        t = self.peek(ahead)
        return t is not None and t.value == value

    def run(self):
        while self.i < len(self.toks):
            t = self.toks[self.i]
            if t.value in _TYPE_KEYWORDS:
                self.i += 1
                self._enter_type_body()
            else:
                self.i += 1
        return self.found

    def _enter_type_body(self):
        while self.i < len(self.toks) and self.toks[self.i].value != "{":
            self.i += 1
        if self.i >= len(self.toks):
            return
        self.i += 1  # past '{'
        self._members(span_start=self.toks[self.i - 1].end)

    def _members(self, span_start: int):
        while self.i < len(self.toks):
            if self.at("}"):
                self.i += 1
                return
            start_i = self.i
            annotations = self._annotations()
            while self.at_modifier():
                self.i += 1
            t = self.peek()
            if t is None:
                return
            if t.value in _TYPE_KEYWORDS:
                self.i += 1
                self._enter_type_body()
                span_start = self.toks[self.i - 1].end
                continue
            if t.value == "{":  # initializer block
                self._skip_braces()
                span_start = self.toks[self.i - 1].end
                continue
            if t.value == ";":
                self.i += 1
                span_start = self.toks[self.i - 1].end
                continue
            method = self._try_method(annotations, span_start)
            if method is None:
                self.i = start_i
                self._skip_field_like()
            span_start = self.toks[self.i - 1].end if self.i else span_start

    def at_modifier(self):
        t = self.peek()
        return t is not None and t.kind == "ident" and t.value in MODIFIERS

    def _annotations(self):
        names = []
        while self.at("@"):
            self.i += 1
            t = self.peek()
            if t is None or t.kind != "ident":
                return tuple(names)
            name = t.value
            self.i += 1
            while self.at(".") and self._ident_at(1):
                name = self.peek(1).value
                self.i += 2
            if self.at("("):
                self._skip_parens()
            names.append(name)
        return tuple(names)

    def _ident_at(self, ahead):
        t = self.peek(ahead)
        return t is not None and t.kind == "ident"

    def _try_method(self, annotations, span_start):
        """Parse `[<...>] Type name ( ... ) [throws ...] { ... }` here."""
        parser = Parser(self.toks, file=self.file)
        parser.i = self.i
        try:
            if parser.at("<"):
                parser._skip_angle_group()
            parser._type_text()
            name_tok = parser.peek()
            if (name_tok is None or name_tok.kind != "ident"
                    or name_tok.value in KEYWORDS):
                return None
            parser.advance()
            if not parser.at("("):
                return None
            parser._skip_balanced("(", ")")
            if parser.at_kind("ident") and parser.peek().value == "throws":
                parser.advance()
                parser._type_text()
                while parser.match(","):
                    parser._type_text()
        except _Backtrack:
            return None
        if parser.at(";"):  # abstract/interface method
            parser.advance()
            self.i = parser.i
            return True
        if not parser.at("{"):
            return None
        self.i = parser.i
        self._skip_braces()
        end = self.toks[self.i - 1].end
        name = name_tok.value
        is_test = any("Test" in a for a in annotations) or name.startswith("test")
        if is_test:
            source = self.text[span_start:end].lstrip()
            self.found.append(ExtractedMethod(
                name=name, source=source, file=self.file,
                line=name_tok.line))
        return True

    def _skip_parens(self):
        depth = 0
        while self.i < len(self.toks):
            v = self.toks[self.i].value
            self.i += 1
            if v == "(":
                depth += 1
            elif v == ")":
                depth -= 1
                if depth == 0:
                    return

    def _skip_braces(self):
        depth = 0
        while self.i < len(self.toks):
            v = self.toks[self.i].value
            self.i += 1
            if v == "{":
                depth += 1
            elif v == "}":
                depth -= 1
                if depth == 0:
                    return

    def _skip_field_like(self):
        """Skip to the end of a non-method member: past a ';' outside any
        bracket, or past a balanced '{...}' (enum constant bodies,
        constructors reached by fallback) plus an optional ';'."""
        paren = brack = brace = 0
        while self.i < len(self.toks):
            v = self.toks[self.i].value
            if v == "}" and brace == 0:
                return
            self.i += 1
            if v == "(":
                paren += 1
            elif v == ")":
                paren -= 1
            elif v == "[":
                brack += 1
            elif v == "]":
                brack -= 1
            elif v == "{":
                brace += 1
            elif v == "}":
                brace -= 1
                if brace == 0 and paren == 0 and brack == 0:
                    if self.at(";"):
                        self.i += 1
                    return
            elif v == ";" and paren == 0 and brack == 0 and brace == 0:
                return


def extract_from_source(text: str, *, file=None) -> list[ExtractedMethod]:
    tokens = lex(text, file=file)
    return _Scanner(text, tokens, file).run()


def extract_test_methods(path) -> list[ExtractedMethod]:
    """All test methods of one source file, in file order."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise FrontendError(f"cannot read source file: {exc.strerror or exc}",
                            file=str(path)) from exc
    except UnicodeDecodeError as exc:
        raise FrontendError(f"source file is not UTF-8: {exc}",
                            file=str(path)) from exc
    return extract_from_source(text, file=str(path))
