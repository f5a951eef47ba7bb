"""Tokenizer for the supported source subset.

Comments never reach the token stream. `>` is always lexed as a single
token (never `>>` or `>>=`) so that nested generic type arguments close
without lookahead; the few real shift operators this splits survive fine
as raw token sequences.
"""

from __future__ import annotations

from dataclasses import dataclass

from tsmin.errors import FrontendError

KEYWORDS = frozenset("""
    abstract assert boolean break byte case catch char class const continue
    default do double else enum extends final finally float for goto if
    implements import instanceof int interface long native new package
    private protected public return short static strictfp super switch
    synchronized this throw throws transient try void volatile while
""".split())

MODIFIERS = frozenset({
    "abstract", "default", "final", "native", "private", "protected",
    "public", "static", "strictfp", "synchronized", "transient", "volatile",
})

PRIMITIVE_TYPES = frozenset({
    "boolean", "byte", "char", "double", "float", "int", "long", "short",
    "void",
})

_PUNCT3 = ("<<=", "...")
_PUNCT2 = ("==", "!=", "<=", ">=", "&&", "||", "++", "--", "+=", "-=",
           "*=", "/=", "%=", "&=", "|=", "^=", "<<", "->", "::")
_PUNCT1 = set("(){}[];,.<>=+-*/%!&|^~?:@")


@dataclass(frozen=True)
class Token:
    kind: str    # ident | number | string | char | punct
    value: str
    pos: int     # offset of the first character
    end: int     # offset one past the last character
    line: int    # 1-based
    col: int     # 1-based

    def __repr__(self):
        return f"Token({self.kind}, {self.value!r}, L{self.line}:{self.col})"


def _ident_start(ch):
    return ch.isalpha() or ch in "_$"


def _ident_part(ch):
    return ch.isalnum() or ch in "_$"


def lex(text: str, file=None) -> list[Token]:
    tokens: list[Token] = []
    i, n = 0, len(text)
    line, col = 1, 1

    def err(message, l=None, c=None):
        return FrontendError(message, file=file,
                             line=l if l is not None else line,
                             col=c if c is not None else col)

    def advance(count):
        nonlocal i, line, col
        for _ in range(count):
            if text[i] == "\n":
                line += 1
                col = 1
            else:
                col += 1
            i += 1

    while i < n:
        ch = text[i]
        if ch in " \t\r\n\f":
            advance(1)
            continue
        if ch == "/" and i + 1 < n and text[i + 1] == "/":
            while i < n and text[i] != "\n":
                advance(1)
            continue
        if ch == "/" and i + 1 < n and text[i + 1] == "*":
            start_line, start_col = line, col
            advance(2)
            while i + 1 < n and not (text[i] == "*" and text[i + 1] == "/"):
                advance(1)
            if i + 1 >= n:
                raise err("unterminated block comment", start_line, start_col)
            advance(2)
            continue

        start, start_line, start_col = i, line, col

        if ch in "\"'":
            quote = ch
            advance(1)
            while i < n:
                c = text[i]
                if c == "\n":
                    break
                if c == "\\" and i + 1 < n:
                    advance(2)
                    continue
                advance(1)
                if c == quote:
                    break
            else:
                c = ""
            if i > n or text[i - 1] != quote or i - 1 == start:
                what = "string" if quote == '"' else "character"
                raise err(f"unterminated {what} literal", start_line, start_col)
            kind = "string" if quote == '"' else "char"
            tokens.append(Token(kind, text[start:i], start, i,
                                start_line, start_col))
            continue

        if ch.isdigit() or (ch == "." and i + 1 < n and text[i + 1].isdigit()):
            advance(1)
            while i < n:
                c = text[i]
                if c.isalnum() or c in "._":
                    advance(1)
                elif c in "+-" and text[i - 1] in "eEpP":
                    advance(1)
                else:
                    break
            tokens.append(Token("number", text[start:i], start, i,
                                start_line, start_col))
            continue

        if _ident_start(ch):
            advance(1)
            while i < n and _ident_part(text[i]):
                advance(1)
            tokens.append(Token("ident", text[start:i], start, i,
                                start_line, start_col))
            continue

        if ch == ">":
            advance(1)
            if i < n and text[i] == "=":
                advance(1)
            tokens.append(Token("punct", text[start:i], start, i,
                                start_line, start_col))
            continue

        three = text[i:i + 3]
        if three in _PUNCT3:
            advance(3)
            tokens.append(Token("punct", three, start, i,
                                start_line, start_col))
            continue
        two = text[i:i + 2]
        if two in _PUNCT2:
            advance(2)
            tokens.append(Token("punct", two, start, i,
                                start_line, start_col))
            continue
        if ch in _PUNCT1:
            advance(1)
            tokens.append(Token("punct", ch, start, i,
                                start_line, start_col))
            continue

        raise err(f"unexpected character {ch!r}")

    return tokens
