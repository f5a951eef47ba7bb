"""Preprocessing: strip test scaffolding and normalize identifiers.

The output is normalized source text, not a tree, so it can be inspected,
diffed, and fed to to_ast independently. Transforms, in order:

  1. annotations on the method are dropped;
  2. assertion statements are removed (whole statement, arguments
     included, unless keep_assertion_args is set);
  3. logging/printing statements are removed;
  4. the method is renamed;
  5. declared local identifiers become id_1, id_2, ... by declaration
     order (parameters first, then body order).

Comments never survive because the lexer drops them.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from tsmin.frontend.parser import Node, parse_method

DEFAULT_ASSERTION_METHODS = frozenset({
    "assertTrue", "assertFalse", "assertEquals", "assertNotEquals",
    "assertArrayEquals", "assertNull", "assertNotNull", "assertSame",
    "assertNotSame", "assertThat", "fail",
})

DEFAULT_LOGGING_METHODS = frozenset({
    "print", "println", "printf", "trace", "debug", "info", "warn",
    "error", "fatal",
})

DEFAULT_LOGGING_RECEIVERS = (r"(?i)^(log|logger)$",)

# Receiver chains rooted here are printing no matter the method name.
_PRINT_STREAM_CHAINS = ("System.out", "System.err")


@dataclass(frozen=True)
class PreprocessConfig:
    assertion_method_names: frozenset = DEFAULT_ASSERTION_METHODS
    logging_receiver_patterns: tuple = DEFAULT_LOGGING_RECEIVERS
    logging_method_names: frozenset = DEFAULT_LOGGING_METHODS
    rename_target: str = "test_case"
    # Keep assertion arguments as bare expression statements instead of
    # dropping them with the assertion (they may exercise the system).
    keep_assertion_args: bool = False
    _receiver_res: tuple = field(init=False, default=())

    def __post_init__(self):
        if not self.assertion_method_names:
            raise ValueError("assertion_method_names must be non-empty")
        compiled = tuple(re.compile(p) for p in self.logging_receiver_patterns)
        object.__setattr__(self, "_receiver_res", compiled)


DEFAULT_CONFIG = PreprocessConfig()


def _dotted_name(node: Node):
    """`a.b.c` as text when the node is a pure name chain, else None."""
    if node.kind == "SimpleName":
        return node.text
    if node.kind == "FieldAccess":
        base = _dotted_name(node.children[0])
        return None if base is None else f"{base}.{node.text}"
    return None


def _chain_base(expr: Node) -> Node:
    """Innermost receiver of a call chain: `a.f().g()` -> `a`."""
    while expr.kind == "MethodInvocation" and expr.has_receiver:
        expr = expr.children[0]
    return expr


def _is_assertion(expr: Node, config: PreprocessConfig) -> bool:
    return (expr.kind == "MethodInvocation"
            and expr.text in config.assertion_method_names)


def _is_logging(expr: Node, config: PreprocessConfig) -> bool:
    if expr.kind != "MethodInvocation":
        return False
    if expr.text in config.logging_method_names:
        return True
    base = _chain_base(expr)
    dotted = _dotted_name(base)
    if dotted is not None:
        if any(dotted.startswith(c) for c in _PRINT_STREAM_CHAINS):
            return True
        if base.kind == "SimpleName":
            if any(rx.match(dotted) for rx in config._receiver_res):
                return True
    return False


def _rewrite_statement(stmt: Node, config: PreprocessConfig) -> list:
    """Replacement statement list: [] removes, [stmt] keeps/replaces."""
    _strip_children(stmt, config)
    if stmt.kind != "ExpressionStatement":
        return [stmt]
    expr = stmt.children[0]
    if _is_assertion(expr, config):
        if config.keep_assertion_args:
            first_arg = 1 if expr.has_receiver else 0
            return [Node("ExpressionStatement", children=[arg])
                    for arg in expr.children[first_arg:]]
        return []
    if _is_logging(expr, config):
        return []
    return [stmt]


def _as_single(replacement: list) -> Node:
    if not replacement:
        return Node("EmptyStatement")
    if len(replacement) == 1:
        return replacement[0]
    return Node("Block", children=replacement)


# Child indices holding a bare (non-list) statement, per kind. For
# ForStatement the body is always the last child.
_BARE_STMT_SLOTS = {
    "IfStatement": (1, 2),
    "WhileStatement": (1,),
    "DoStatement": (0,),
    "EnhancedForStatement": (2,),
}


def _strip_children(node: Node, config: PreprocessConfig):
    if node.kind in ("Block", "SwitchStatement"):
        kids = []
        for child in node.children:
            if child.kind == "SwitchCase" or not _is_statement(child):
                _strip_children(child, config)
                kids.append(child)
            else:
                kids.extend(_rewrite_statement(child, config))
        node.children[:] = kids
        return
    slots = _BARE_STMT_SLOTS.get(node.kind, ())
    for idx, child in enumerate(node.children):
        if idx in slots or (node.kind == "ForStatement"
                            and idx == len(node.children) - 1):
            node.children[idx] = _as_single(_rewrite_statement(child, config))
        else:
            _strip_children(child, config)


def _is_statement(node: Node) -> bool:
    return node.kind.endswith("Statement") or node.kind in (
        "Block", "TryStatement", "IfStatement")


def _declared_names(method: Node) -> dict:
    """name -> id_k, numbered by first declaration in preorder."""
    mapping: dict = {}
    for node in method.walk():
        if node.kind == "VariableDeclarationFragment":
            name = node.children[0].text
        elif node.kind == "SingleVariableDeclaration":
            name = next(c.text for c in node.children
                        if c.kind == "SimpleName")
        else:
            continue
        if name not in mapping:
            mapping[name] = f"id_{len(mapping) + 1}"
    return mapping


def _rename_identifiers(method: Node, mapping: dict):
    for node in method.walk():
        if node.kind == "SimpleName" and node.text in mapping:
            node.text = mapping[node.text]
        elif node.kind == "RawStatement":
            kids = node.children
            for idx, tok in enumerate(kids):
                if tok.text in mapping and (
                        idx == 0 or kids[idx - 1].text != "."):
                    tok.text = mapping[tok.text]


def preprocess_tree(method_source: str, config: PreprocessConfig = DEFAULT_CONFIG,
                    *, file=None) -> Node:
    """Parse and transform; the tree form of preprocess()."""
    method = parse_method(method_source, file=file)
    method.annotations = ()
    _strip_children(method, config)
    method.text = config.rename_target
    _rename_identifiers(method, _declared_names(method))
    return method


def preprocess(method_source: str, config: PreprocessConfig = DEFAULT_CONFIG,
               *, file=None) -> str:
    """Normalized source text of one test method."""
    return render_method(preprocess_tree(method_source, config, file=file))


# -- printing ---------------------------------------------------------------

_NO_SPACE_BEFORE = frozenset({",", ";", ")", "]", ".", "::", "++", "--"})
_NO_SPACE_AFTER = frozenset({"(", "[", ".", "::", "!", "~", "@"})
_CALLISH_KEYWORDS = frozenset({
    "if", "for", "while", "switch", "catch", "return", "throw", "do",
    "else", "new", "case", "assert", "synchronized",
})


def _join(tokens) -> str:
    out = []
    prev = None
    for tok in tokens:
        if prev is not None:
            space = True
            if tok in _NO_SPACE_BEFORE or prev in _NO_SPACE_AFTER:
                space = False
            elif tok == "(" and prev not in _CALLISH_KEYWORDS \
                    and (prev[-1:].isalnum() or prev[-1:] in "_$"):
                space = False
            if space:
                out.append(" ")
        out.append(tok)
        prev = tok
    return "".join(out)


_PREC_PRIMARY = 15
_PREC_POSTFIX = 14
_PREC_UNARY = 13
_PREC_TERNARY = 2
_PREC_ASSIGN = 1

_INFIX_PREC = {
    "||": 3, "&&": 4, "|": 5, "^": 6, "&": 7, "==": 8, "!=": 8,
    "<": 9, ">": 9, "<=": 9, ">=": 9, "<<": 10,
    "+": 11, "-": 11, "*": 12, "/": 12, "%": 12,
}


def _prec(node: Node) -> int:
    k = node.kind
    if k == "Assignment":
        return _PREC_ASSIGN
    if k == "ConditionalExpression":
        return _PREC_TERNARY
    if k == "InfixExpression":
        return _INFIX_PREC[node.text]
    if k == "InstanceofExpression":
        return 9
    if k in ("PrefixExpression", "CastExpression"):
        return _PREC_UNARY
    if k == "PostfixExpression":
        return _PREC_POSTFIX
    return _PREC_PRIMARY


def _expr(node: Node, parent_prec=0) -> list:
    toks = _expr_inner(node)
    if _prec(node) < parent_prec:
        return ["("] + toks + [")"]
    return toks


def _expr_inner(node: Node) -> list:
    k = node.kind
    if k in ("SimpleName", "NumberLiteral", "StringLiteral",
             "CharacterLiteral", "BooleanLiteral"):
        return [node.text]
    if k == "NullLiteral":
        return ["null"]
    if k == "ThisExpression":
        return ["this"]
    if k == "FieldAccess":
        return _expr(node.children[0], _PREC_POSTFIX) + [".", node.text]
    if k == "ClassLiteral":
        return [node.text, ".", "class"]
    if k == "MethodInvocation":
        toks = []
        args = node.children
        if node.has_receiver:
            toks += _expr(args[0], _PREC_POSTFIX) + ["."]
            args = args[1:]
        toks += [node.text, "("]
        toks += _comma_list(args)
        return toks + [")"]
    if k == "ClassInstanceCreation":
        return ["new", node.text, "("] + _comma_list(node.children) + [")"]
    if k == "ArrayCreation":
        toks = ["new", node.text]
        kids = list(node.children)
        init = None
        if kids and kids[-1].kind == "ArrayInitializer":
            init = kids.pop()
        for dim in kids:
            toks += ["["] + _expr(dim) + ["]"]
        if init is not None:
            if not kids:
                toks += ["[", "]"]
            toks += _expr_inner(init)
        return toks
    if k == "ArrayInitializer":
        return ["{"] + _comma_list(node.children) + ["}"]
    if k == "ArrayAccess":
        return (_expr(node.children[0], _PREC_POSTFIX)
                + ["["] + _expr(node.children[1]) + ["]"])
    if k == "MethodReference":
        return _expr(node.children[0], _PREC_POSTFIX) + ["::", node.text]
    if k == "PrefixExpression":
        return [node.text] + _expr(node.children[0], _PREC_UNARY)
    if k == "PostfixExpression":
        return _expr(node.children[0], _PREC_POSTFIX) + [node.text]
    if k == "CastExpression":
        ty, operand = node.children
        return ["(", ty.text, ")"] + _expr(operand, _PREC_UNARY)
    if k == "InstanceofExpression":
        left, ty = node.children
        return _expr(left, 9) + ["instanceof", ty.text]
    if k == "InfixExpression":
        p = _INFIX_PREC[node.text]
        left, right = node.children
        return (_expr(left, p) + [node.text] + _expr(right, p + 1))
    if k == "Assignment":
        left, right = node.children
        return (_expr(left, _PREC_UNARY) + [node.text]
                + _expr(right, _PREC_ASSIGN))
    if k == "ConditionalExpression":
        cond, then, other = node.children
        return (_expr(cond, _PREC_TERNARY + 1) + ["?"] + _expr(then)
                + [":"] + _expr(other, _PREC_TERNARY))
    if k == "LambdaExpression":
        params = node.children[:-1]
        body = node.children[-1]
        toks = ["("]
        toks += _comma_list(params, _param_tokens)
        toks += [")", "->"]
        if body.kind == "Block":
            toks += _stmt_tokens(body)
        else:
            toks += _expr(body)
        return toks
    if k == "TypeName":
        return [node.text]
    raise ValueError(f"cannot print expression node {k}")


def _param_tokens(param: Node) -> list:
    return [child.text for child in param.children]


def _comma_list(nodes, render=None) -> list:
    render = render or (lambda n: _expr(n))
    toks = []
    for i, n in enumerate(nodes):
        if i:
            toks.append(",")
        toks += render(n)
    return toks


def _decl_tokens(stmt: Node) -> list:
    toks = [stmt.children[0].text]
    for i, frag in enumerate(stmt.children[1:]):
        if i:
            toks.append(",")
        toks.append(frag.children[0].text)
        if len(frag.children) > 1:
            toks.append("=")
            toks += _expr(frag.children[1])
    toks.append(";")
    return toks


def _stmt_tokens(stmt: Node) -> list:
    """Flat token form of a statement (single-line contexts)."""
    k = stmt.kind
    if k == "Block":
        toks = ["{"]
        for s in stmt.children:
            toks += _stmt_tokens(s)
        return toks + ["}"]
    if k == "EmptyStatement":
        return [";"]
    if k == "ExpressionStatement":
        return _expr(stmt.children[0]) + [";"]
    if k == "VariableDeclarationStatement":
        return _decl_tokens(stmt)
    if k == "IfStatement":
        toks = ["if", "("] + _expr(stmt.children[0]) + [")"]
        toks += _stmt_tokens(stmt.children[1])
        if len(stmt.children) > 2:
            toks += ["else"] + _stmt_tokens(stmt.children[2])
        return toks
    if k == "WhileStatement":
        return (["while", "("] + _expr(stmt.children[0]) + [")"]
                + _stmt_tokens(stmt.children[1]))
    if k == "DoStatement":
        return (["do"] + _stmt_tokens(stmt.children[0])
                + ["while", "("] + _expr(stmt.children[1]) + [")", ";"])
    if k == "ForStatement":
        init_n, has_cond, update_n = stmt.for_shape
        kids = stmt.children
        toks = ["for", "("]
        pos = 0
        if init_n and kids[0].kind == "VariableDeclarationStatement":
            toks += _decl_tokens(kids[0])  # ends with ';'
            pos = 1
        else:
            for i in range(init_n):
                if i:
                    toks.append(",")
                toks += _expr(kids[pos])
                pos += 1
            toks.append(";")
        if has_cond:
            toks += _expr(kids[pos])
            pos += 1
        toks.append(";")
        for i in range(update_n):
            if i:
                toks.append(",")
            toks += _expr(kids[pos])
            pos += 1
        toks.append(")")
        return toks + _stmt_tokens(kids[pos])
    if k == "EnhancedForStatement":
        var, iterable, body = stmt.children
        return (["for", "("] + _param_tokens(var) + [":"]
                + _expr(iterable) + [")"] + _stmt_tokens(body))
    if k == "TryStatement":
        toks = ["try"] + _stmt_tokens(stmt.children[0])
        for part in stmt.children[1:]:
            if part.kind == "CatchClause":
                toks += (["catch", "("] + _param_tokens(part.children[0])
                         + [")"] + _stmt_tokens(part.children[1]))
            else:
                toks += ["finally"] + _stmt_tokens(part.children[0])
        return toks
    if k == "SwitchStatement":
        toks = ["switch", "("] + _expr(stmt.children[0]) + [")", "{"]
        for part in stmt.children[1:]:
            if part.kind == "SwitchCase":
                if part.children:
                    toks += ["case"] + _expr(part.children[0]) + [":"]
                else:
                    toks += ["default", ":"]
            else:
                toks += _stmt_tokens(part)
        return toks + ["}"]
    if k == "ReturnStatement":
        toks = ["return"]
        if stmt.children:
            toks += _expr(stmt.children[0])
        return toks + [";"]
    if k == "ThrowStatement":
        return ["throw"] + _expr(stmt.children[0]) + [";"]
    if k in ("BreakStatement", "ContinueStatement"):
        word = "break" if k == "BreakStatement" else "continue"
        toks = [word]
        if stmt.children:
            toks.append(stmt.children[0].text)
        return toks + [";"]
    if k == "RawStatement":
        return [tok.text for tok in stmt.children]
    raise ValueError(f"cannot print statement node {k}")


def _render_block(block: Node, indent: int, lines: list):
    pad = "    " * indent
    for stmt in block.children:
        if stmt.kind == "Block":
            lines.append(pad + "{")
            _render_block(stmt, indent + 1, lines)
            lines.append(pad + "}")
        else:
            # Compound statements print flat; tokens are what matters.
            lines.append(pad + _join(_stmt_tokens(stmt)))


def render_method(method: Node) -> str:
    header = list(method.modifiers)
    if method.return_type is not None:
        header.append(method.return_type)
    header.append(method.text)
    header.append("(")
    header += _comma_list(method.children[:-1], _param_tokens)
    header.append(")")
    if method.throws:
        header.append("throws")
        for i, t in enumerate(method.throws):
            if i:
                header.append(",")
            header.append(t)
    body = method.children[-1]
    lines = [_join(header) + " {"]
    _render_block(body, 1, lines)
    lines.append("}")
    return "\n".join(lines)
