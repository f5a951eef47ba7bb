"""Recursive-descent parser for test-method source.

Covers the statement/expression subset that matters for test code:
declarations, assignments, call chains, object/array creation, field
access, unary/binary/ternary expressions, casts, instanceof, lambdas,
method references, if/else, for, enhanced for, while, do, try/catch/
finally, switch, return, throw, break, continue, blocks.

A statement the grammar cannot handle is captured losslessly as a
RawStatement holding its token sequence; only a malformed method header
or a lexical error aborts the method.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from tsmin.errors import FrontendError
from tsmin.frontend.lexer import KEYWORDS, MODIFIERS, PRIMITIVE_TYPES, Token, lex

# Expression keywords that may start a primary expression.
_PRIMARY_KEYWORDS = frozenset({"new", "this", "true", "false", "null"})

_ASSIGN_OPS = frozenset({"=", "+=", "-=", "*=", "/=", "%=", "&=", "|=",
                         "^=", "<<="})

# Binary precedence, low to high. Shift-right never appears because the
# lexer splits '>' tokens; such expressions degrade to raw statements.
_BINARY_LEVELS = (
    ("||",),
    ("&&",),
    ("|",),
    ("^",),
    ("&",),
    ("==", "!="),
    ("<", ">", "<=", ">="),
    ("<<",),
    ("+", "-"),
    ("*", "/", "%"),
)

@dataclass
class Node:
    """Mutable parse node; `kind` matches the persisted AST vocabulary.

    has_receiver distinguishes `a.f(x)` from `f(a, x)` for the transform
    passes; the lowered AST drops the flag. modifiers/return_type/throws
    only apply to MethodDeclaration nodes and exist for reprinting.
    """

    kind: str
    text: str | None = None
    children: list = field(default_factory=list)
    has_receiver: bool = False
    modifiers: tuple = ()
    return_type: str | None = None
    throws: tuple = ()
    annotations: tuple = ()
    # ForStatement only: (init_count, has_condition, update_count) so the
    # flat child list can be reprinted; the lowered AST keeps it flat.
    for_shape: tuple | None = None

    def walk(self):
        yield self
        for child in self.children:
            yield from child.walk()


class _Backtrack(Exception):
    """Internal: current construct is outside the subset; go raw."""


class Parser:
    def __init__(self, tokens: list[Token], file=None):
        self.toks = tokens
        self.i = 0
        self.file = file

    # -- token plumbing ------------------------------------------------------

    def peek(self, ahead=0):
        j = self.i + ahead
        return self.toks[j] if j < len(self.toks) else None

    def at(self, value, ahead=0):
        t = self.peek(ahead)
        return t is not None and t.value == value

    def at_kind(self, kind, ahead=0):
        t = self.peek(ahead)
        return t is not None and t.kind == kind

    def advance(self):
        t = self.peek()
        if t is None:
            raise _Backtrack("unexpected end of input")
        self.i += 1
        return t

    def match(self, value):
        if self.at(value):
            self.i += 1
            return True
        return False

    def expect(self, value):
        t = self.peek()
        if t is None or t.value != value:
            raise _Backtrack(f"expected {value!r}")
        self.i += 1
        return t

    def error(self, message):
        t = self.peek()
        if t is None:
            t = self.toks[-1] if self.toks else None
        line = t.line if t else None
        col = t.col if t else None
        return FrontendError(message, file=self.file, line=line, col=col)

    # -- method header -------------------------------------------------------

    def parse_method(self) -> Node:
        """One method declaration; header errors are fatal, body statements
        degrade individually."""
        try:
            annotations = self._annotations()
            mods = []
            while self.at_kind("ident") and self.peek().value in MODIFIERS:
                mods.append(self.advance().value)
            if self.at("<"):
                self._skip_angle_group()
            ret = self._type_text()
            name_tok = self.peek()
            if name_tok is None or name_tok.kind != "ident" \
                    or name_tok.value in KEYWORDS:
                raise _Backtrack("expected method name")
            self.advance()
            self.expect("(")
            params = self._params()
            throws = []
            if self.at_kind("ident") and self.peek().value == "throws":
                self.advance()
                throws.append(self._type_text())
                while self.match(","):
                    throws.append(self._type_text())
        except _Backtrack as exc:
            raise self.error(f"malformed method header: {exc}") from None
        if not self.at("{"):
            raise self.error("method has no body")
        body = self._block()
        if self.peek() is not None:
            raise self.error("trailing tokens after method body")
        method = Node("MethodDeclaration", text=name_tok.value,
                      children=params + [body])
        method.modifiers = tuple(mods)
        method.return_type = ret
        method.throws = tuple(throws)
        method.annotations = annotations
        return method

    def _annotations(self):
        names = []
        while self.at("@"):
            self.advance()
            t = self.peek()
            if t is None or t.kind != "ident":
                raise _Backtrack("expected annotation name")
            name = self.advance().value
            while self.at(".") and self.at_kind("ident", 1):
                self.advance()
                name = self.advance().value  # simple name is what matters
            if self.at("("):
                self._skip_balanced("(", ")")
            names.append(name)
        return tuple(names)

    def _params(self):
        params = []
        if self.match(")"):
            return params
        while True:
            self._annotations()
            while self.at("final"):
                self.advance()
            ty = self._type_text()
            if self.match("..."):
                ty += "..."
            t = self.peek()
            if t is None or t.kind != "ident" or t.value in KEYWORDS:
                raise _Backtrack("expected parameter name")
            self.advance()
            params.append(Node("SingleVariableDeclaration", children=[
                Node("TypeName", text=ty),
                Node("SimpleName", text=t.value),
            ]))
            if self.match(")"):
                return params
            self.expect(",")

    # -- types ---------------------------------------------------------------

    def _type_text(self) -> str:
        """Canonical type text: tokens joined without spaces except between
        two word-like tokens."""
        start = self.i
        self._consume_type()
        parts = []
        prev = None
        for t in self.toks[start:self.i]:
            if prev is not None and _wordlike(prev) and _wordlike(t):
                parts.append(" ")
            parts.append(t.value)
            prev = t
        return "".join(parts)

    def _consume_type(self):
        t = self.peek()
        if t is None:
            raise _Backtrack("expected type")
        if t.kind == "ident" and t.value in PRIMITIVE_TYPES:
            self.advance()
        elif t.kind == "ident" and t.value not in KEYWORDS:
            self.advance()
            if self.at("<"):
                self._consume_type_args()
            while self.at(".") and self.at_kind("ident", 1) \
                    and self.peek(1).value not in KEYWORDS:
                self.advance()
                self.advance()
                if self.at("<"):
                    self._consume_type_args()
        else:
            raise _Backtrack(f"not a type: {t.value!r}")
        while self.at("[") and self.at("]", 1):
            self.advance()
            self.advance()

    def _consume_type_args(self):
        self.expect("<")
        if self.match(">"):  # diamond
            return
        while True:
            if self.match("?"):
                t = self.peek()
                if t is not None and t.value in ("extends", "super"):
                    self.advance()
                    self._consume_type()
            else:
                self._consume_type()
            if self.match(">"):
                return
            self.expect(",")

    # -- statements ----------------------------------------------------------

    def _block(self) -> Node:
        self.expect("{")
        stmts = []
        while not self.at("}"):
            if self.peek() is None:
                raise self.error("unclosed block")
            stmts.append(self._statement())
        self.advance()
        return Node("Block", children=stmts)

    def _statement(self) -> Node:
        start = self.i
        try:
            return self._statement_inner()
        except _Backtrack:
            self.i = start
            return self._raw_statement()

    def _statement_inner(self) -> Node:
        t = self.peek()
        if t is None:
            raise _Backtrack("expected statement")
        v = t.value
        if v == "{":
            return self._block()
        if v == ";":
            self.advance()
            return Node("EmptyStatement")
        if v == "if":
            return self._if()
        if v == "while":
            self.advance()
            self.expect("(")
            cond = self._expression()
            self.expect(")")
            return Node("WhileStatement", children=[cond, self._statement()])
        if v == "do":
            self.advance()
            body = self._statement_inner()
            self.expect("while")
            self.expect("(")
            cond = self._expression()
            self.expect(")")
            self.expect(";")
            return Node("DoStatement", children=[body, cond])
        if v == "for":
            return self._for()
        if v == "try":
            return self._try()
        if v == "return":
            self.advance()
            kids = [] if self.at(";") else [self._expression()]
            self.expect(";")
            return Node("ReturnStatement", children=kids)
        if v == "throw":
            self.advance()
            expr = self._expression()
            self.expect(";")
            return Node("ThrowStatement", children=[expr])
        if v == "switch":
            return self._switch()
        if v in ("break", "continue"):
            self.advance()
            kids = []
            if self.at_kind("ident") and self.peek().value not in KEYWORDS:
                kids.append(Node("SimpleName", text=self.advance().value))
            self.expect(";")
            kind = "BreakStatement" if v == "break" else "ContinueStatement"
            return Node(kind, children=kids)

        decl = self._try_local_declaration()
        if decl is not None:
            return decl
        expr = self._expression()
        self.expect(";")
        return Node("ExpressionStatement", children=[expr])

    def _if(self):
        self.expect("if")
        self.expect("(")
        cond = self._expression()
        self.expect(")")
        then = self._statement()
        kids = [cond, then]
        if self.at("else"):
            self.advance()
            kids.append(self._statement())
        return Node("IfStatement", children=kids)

    def _for(self):
        self.expect("for")
        self.expect("(")
        mark = self.i
        # enhanced for: [final] Type name : expr
        try:
            while self.at("final"):
                self.advance()
            ty = self._type_text()
            name = self.peek()
            if name is None or name.kind != "ident" or name.value in KEYWORDS:
                raise _Backtrack("expected loop variable")
            self.advance()
            self.expect(":")
            var = Node("SingleVariableDeclaration", children=[
                Node("TypeName", text=ty),
                Node("SimpleName", text=name.value),
            ])
            iterable = self._expression()
            self.expect(")")
            return Node("EnhancedForStatement",
                        children=[var, iterable, self._statement()])
        except _Backtrack:
            self.i = mark
        kids = []
        if not self.at(";"):
            decl = self._try_local_declaration(terminator=";")
            if decl is not None:
                kids.append(decl)
            else:
                kids.append(self._expression())
                while self.match(","):
                    kids.append(self._expression())
                self.expect(";")
        else:
            self.advance()
        init_count = len(kids)
        has_cond = not self.at(";")
        if has_cond:
            kids.append(self._expression())
        self.expect(";")
        update_count = 0
        if not self.at(")"):
            kids.append(self._expression())
            update_count = 1
            while self.match(","):
                kids.append(self._expression())
                update_count += 1
        self.expect(")")
        kids.append(self._statement())
        node = Node("ForStatement", children=kids)
        node.for_shape = (init_count, has_cond, update_count)
        return node

    def _try(self):
        self.expect("try")
        if self.at("("):
            raise _Backtrack("try-with-resources not in subset")
        kids = [self._block()]
        saw_tail = False
        while self.at("catch"):
            saw_tail = True
            self.advance()
            self.expect("(")
            while self.at("final"):
                self.advance()
            types = [self._type_text()]
            while self.match("|"):
                types.append(self._type_text())
            name = self.peek()
            if name is None or name.kind != "ident" or name.value in KEYWORDS:
                raise _Backtrack("expected exception variable")
            self.advance()
            self.expect(")")
            param = Node("SingleVariableDeclaration", children=[
                Node("TypeName", text="|".join(types)),
                Node("SimpleName", text=name.value),
            ])
            kids.append(Node("CatchClause", children=[param, self._block()]))
        if self.at("finally"):
            saw_tail = True
            self.advance()
            kids.append(Node("Finally", children=[self._block()]))
        if not saw_tail:
            raise _Backtrack("try without catch or finally")
        return Node("TryStatement", children=kids)

    def _switch(self):
        self.expect("switch")
        self.expect("(")
        kids = [self._expression()]
        self.expect(")")
        self.expect("{")
        while not self.at("}"):
            if self.peek() is None:
                raise _Backtrack("unclosed switch")
            if self.at("case"):
                self.advance()
                label = self._expression()
                if self.at("->"):
                    raise _Backtrack("arrow switch not in subset")
                self.expect(":")
                kids.append(Node("SwitchCase", children=[label]))
            elif self.at("default"):
                self.advance()
                if self.at("->"):
                    raise _Backtrack("arrow switch not in subset")
                self.expect(":")
                kids.append(Node("SwitchCase"))
            else:
                kids.append(self._statement_inner())
        self.advance()
        return Node("SwitchStatement", children=kids)

    def _try_local_declaration(self, terminator=";"):
        """Parse a local variable declaration or return None (rolled back)."""
        mark = self.i
        try:
            while self.at("final"):
                self.advance()
            ty = self._type_text()
            t = self.peek()
            if t is None or t.kind != "ident" or t.value in KEYWORDS:
                raise _Backtrack("no declarator name")
            follow = self.peek(1)
            if follow is None or follow.value not in ("=", ",", terminator,
                                                      "[", ";"):
                raise _Backtrack("not a declaration")
        except _Backtrack:
            self.i = mark
            return None
        # Committed: parse fragments; failures now become a raw statement
        # at the caller via the usual backtrack path.
        frags = [self._fragment()]
        while self.match(","):
            frags.append(self._fragment())
        self.expect(terminator)
        return Node("VariableDeclarationStatement",
                    children=[Node("TypeName", text=ty)] + frags)

    def _fragment(self):
        t = self.peek()
        if t is None or t.kind != "ident" or t.value in KEYWORDS:
            raise _Backtrack("expected variable name")
        self.advance()
        while self.at("[") and self.at("]", 1):  # C-style array suffix
            self.advance()
            self.advance()
        kids = [Node("SimpleName", text=t.value)]
        if self.match("="):
            kids.append(self._var_init())
        return Node("VariableDeclarationFragment", children=kids)

    def _var_init(self):
        if self.at("{"):
            return self._array_initializer()
        return self._expression()

    def _array_initializer(self):
        self.expect("{")
        kids = []
        if not self.at("}"):
            while True:
                kids.append(self._var_init())
                if not self.match(","):
                    break
                if self.at("}"):  # trailing comma
                    break
        self.expect("}")
        return Node("ArrayInitializer", children=kids)

    # -- raw fallback ----------------------------------------------------------

    def _raw_statement(self) -> Node:
        """Consume one statement-ish token run, losslessly, as RawTokens.

        Stops after a ';' with all brackets balanced, or after a '}' that
        rebalances to depth zero (plus one optional trailing ';'), or
        before a '}' that would close the enclosing block.
        """
        depth_paren = depth_brack = depth_brace = 0
        kids = []
        while True:
            t = self.peek()
            if t is None:
                break
            v = t.value
            if v == "}" and depth_brace == 0:
                break
            self.advance()
            kids.append(Node("RawToken", text=v))
            if v == "(":
                depth_paren += 1
            elif v == ")":
                depth_paren -= 1
            elif v == "[":
                depth_brack += 1
            elif v == "]":
                depth_brack -= 1
            elif v == "{":
                depth_brace += 1
            elif v == "}":
                depth_brace -= 1
                if depth_brace == 0 and depth_paren == 0 and depth_brack == 0:
                    if self.at(";"):
                        self.advance()
                        kids.append(Node("RawToken", text=";"))
                    break
            elif v == ";" and depth_paren == 0 and depth_brack == 0 \
                    and depth_brace == 0:
                break
        if not kids:
            raise self.error("cannot recover a statement here")
        return Node("RawStatement", children=kids)

    # -- expressions -----------------------------------------------------------

    def _expression(self):
        return self._assignment()

    def _assignment(self):
        left = self._ternary()
        t = self.peek()
        if t is not None and t.value in _ASSIGN_OPS:
            self.advance()
            right = self._assignment()
            return Node("Assignment", text=t.value, children=[left, right])
        return left

    def _ternary(self):
        cond = self._binary(0)
        if self.at("?"):
            self.advance()
            then = self._expression()
            self.expect(":")
            other = self._ternary()
            return Node("ConditionalExpression", children=[cond, then, other])
        return cond

    def _binary(self, level):
        if level >= len(_BINARY_LEVELS):
            return self._unary()
        ops = _BINARY_LEVELS[level]
        left = self._binary(level + 1)
        while True:
            t = self.peek()
            if t is None:
                return left
            if t.value == "instanceof" and ops == ("<", ">", "<=", ">="):
                self.advance()
                ty = self._type_text()
                left = Node("InstanceofExpression",
                            children=[left, Node("TypeName", text=ty)])
                continue
            if t.kind == "punct" and t.value in ops:
                self.advance()
                right = self._binary(level + 1)
                left = Node("InfixExpression", text=t.value,
                            children=[left, right])
                continue
            return left

    def _unary(self):
        t = self.peek()
        if t is None:
            raise _Backtrack("expected expression")
        if t.value in ("!", "~", "+", "-", "++", "--"):
            self.advance()
            operand = self._unary()
            return Node("PrefixExpression", text=t.value, children=[operand])
        return self._postfix()

    def _postfix(self):
        expr = self._primary()
        while True:
            if self.at(".") and self.at_kind("ident", 1):
                name = self.peek(1).value
                if name in KEYWORDS and name != "class":
                    raise _Backtrack(f".{name} not in subset")
                self.advance()
                self.advance()
                if name == "class":
                    expr = Node("ClassLiteral", text=_receiver_text(expr))
                elif self.at("("):
                    self.advance()
                    args = self._arguments()
                    expr = Node("MethodInvocation", text=name,
                                children=[expr] + args, has_receiver=True)
                else:
                    expr = Node("FieldAccess", text=name, children=[expr])
            elif self.at("(") and expr.kind == "SimpleName":
                self.advance()
                args = self._arguments()
                expr = Node("MethodInvocation", text=expr.text, children=args)
            elif self.at("["):
                self.advance()
                index = self._expression()
                self.expect("]")
                expr = Node("ArrayAccess", children=[expr, index])
            elif self.at("::") and self.at_kind("ident", 1):
                self.advance()
                name = self.advance().value
                expr = Node("MethodReference", text=name, children=[expr])
            elif self.at("::") and self.at("new", 1):
                self.advance()
                self.advance()
                expr = Node("MethodReference", text="new", children=[expr])
            elif self.at("++") or self.at("--"):
                op = self.advance().value
                expr = Node("PostfixExpression", text=op, children=[expr])
            else:
                return expr

    def _arguments(self):
        args = []
        if self.match(")"):
            return args
        while True:
            args.append(self._expression())
            if self.match(")"):
                return args
            self.expect(",")

    def _primary(self):
        t = self.peek()
        if t is None:
            raise _Backtrack("expected expression")
        if t.kind == "number":
            self.advance()
            return Node("NumberLiteral", text=t.value)
        if t.kind == "string":
            self.advance()
            return Node("StringLiteral", text=t.value)
        if t.kind == "char":
            self.advance()
            return Node("CharacterLiteral", text=t.value)
        v = t.value
        if v in ("true", "false"):
            self.advance()
            return Node("BooleanLiteral", text=v)
        if v == "null":
            self.advance()
            return Node("NullLiteral")
        if v == "this":
            self.advance()
            return Node("ThisExpression")
        if v == "new":
            return self._creation()
        if v == "(":
            return self._paren_cast_or_lambda()
        if t.kind == "ident" and v not in KEYWORDS:
            if self.at("->", 1):
                self.advance()
                param = Node("SingleVariableDeclaration",
                             children=[Node("SimpleName", text=v)])
                return self._lambda_body([param])
            self.advance()
            return Node("SimpleName", text=v)
        raise _Backtrack(f"unsupported primary {v!r}")

    def _creation(self):
        self.expect("new")
        ty_start = self.i
        self._consume_type_base()
        base = _join_tokens(self.toks[ty_start:self.i])
        if self.at("["):
            dims = []
            saw_empty = False
            while self.at("["):
                self.advance()
                if self.at("]"):
                    self.advance()
                    saw_empty = True
                    continue
                dims.append(self._expression())
                self.expect("]")
            kids = list(dims)
            if self.at("{"):
                kids.append(self._array_initializer())
            elif saw_empty and not dims:
                raise _Backtrack("array creation without size or initializer")
            return Node("ArrayCreation", text=base, children=kids)
        self.expect("(")
        args = self._arguments()
        if self.at("{"):
            raise _Backtrack("anonymous class body not in subset")
        return Node("ClassInstanceCreation", text=base, children=args)

    def _consume_type_base(self):
        """Type without trailing array dims (creation handles those)."""
        t = self.peek()
        if t is None or t.kind != "ident":
            raise _Backtrack("expected type after new")
        if t.value in PRIMITIVE_TYPES:
            self.advance()
            return
        if t.value in KEYWORDS:
            raise _Backtrack("expected type after new")
        self.advance()
        if self.at("<"):
            self._consume_type_args()
        while self.at(".") and self.at_kind("ident", 1) \
                and self.peek(1).value not in KEYWORDS:
            self.advance()
            self.advance()
            if self.at("<"):
                self._consume_type_args()

    def _paren_cast_or_lambda(self):
        close = self._matching_paren(self.i)
        after = self.toks[close + 1] if close + 1 < len(self.toks) else None
        if after is not None and after.value == "->":
            return self._lambda_params_then_body()
        # cast attempt: ( Type ) followed by something a unary can start
        mark = self.i
        try:
            self.expect("(")
            ty = self._type_text()
            self.expect(")")
            nxt = self.peek()
            # A bare primitive type can only be a cast; for reference types
            # require an operand start that cannot continue a parenthesized
            # expression (rules out `(a) - b`).
            if nxt is not None and (ty in PRIMITIVE_TYPES
                                    or _starts_unary(nxt)):
                operand = self._unary()
                return Node("CastExpression",
                            children=[Node("TypeName", text=ty), operand])
            raise _Backtrack("not a cast")
        except _Backtrack:
            self.i = mark
        self.expect("(")
        inner = self._expression()
        self.expect(")")
        return inner

    def _matching_paren(self, start):
        depth = 0
        j = start
        while j < len(self.toks):
            v = self.toks[j].value
            if v == "(":
                depth += 1
            elif v == ")":
                depth -= 1
                if depth == 0:
                    return j
            j += 1
        raise _Backtrack("unbalanced parentheses")

    def _lambda_params_then_body(self):
        self.expect("(")
        params = []
        if not self.match(")"):
            while True:
                mark = self.i
                ty = None
                try:
                    ty = self._type_text()
                    t = self.peek()
                    if t is None or t.kind != "ident" or t.value in KEYWORDS:
                        raise _Backtrack("no param name after type")
                except _Backtrack:
                    self.i = mark
                    ty = None
                t = self.peek()
                if t is None or t.kind != "ident" or t.value in KEYWORDS:
                    raise _Backtrack("expected lambda parameter")
                self.advance()
                kids = [Node("SimpleName", text=t.value)]
                if ty is not None:
                    kids.insert(0, Node("TypeName", text=ty))
                params.append(Node("SingleVariableDeclaration", children=kids))
                if self.match(")"):
                    break
                self.expect(",")
        return self._lambda_body(params)

    def _lambda_body(self, params):
        self.expect("->")
        if self.at("{"):
            body = self._block()
        else:
            body = self._expression()
        return Node("LambdaExpression", children=params + [body])

    def _skip_balanced(self, open_tok, close_tok):
        self.expect(open_tok)
        depth = 1
        while depth:
            t = self.peek()
            if t is None:
                raise _Backtrack(f"unbalanced {open_tok}")
            self.advance()
            if t.value == open_tok:
                depth += 1
            elif t.value == close_tok:
                depth -= 1

    def _skip_angle_group(self):
        self.expect("<")
        depth = 1
        while depth:
            t = self.peek()
            if t is None:
                raise _Backtrack("unbalanced <")
            self.advance()
            if t.value == "<":
                depth += 1
            elif t.value == ">":
                depth -= 1


def _wordlike(tok: Token) -> bool:
    return tok.kind in ("ident", "number")


def _join_tokens(tokens) -> str:
    parts = []
    prev = None
    for t in tokens:
        if prev is not None and _wordlike(prev) and _wordlike(t):
            parts.append(" ")
        parts.append(t.value)
        prev = t
    return "".join(parts)


def _starts_unary(tok: Token) -> bool:
    if tok.kind in ("ident", "number", "string", "char"):
        return tok.value not in KEYWORDS or tok.value in _PRIMARY_KEYWORDS
    return tok.value in ("(", "!", "~")


def _receiver_text(expr: Node) -> str:
    """Dotted text of a name chain (for class literals)."""
    if expr.kind == "SimpleName":
        return expr.text
    if expr.kind == "FieldAccess":
        return _receiver_text(expr.children[0]) + "." + expr.text
    raise _Backtrack("unsupported class literal receiver")


def parse_method(source: str, file=None) -> Node:
    """Parse one method declaration from source text."""
    tokens = lex(source, file=file)
    if not tokens:
        raise FrontendError("no tokens: empty method source", file=file)
    return Parser(tokens, file=file).parse_method()
