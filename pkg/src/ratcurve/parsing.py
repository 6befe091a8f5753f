"""Tiny arithmetic-expression evaluator used for field, function and point strings.

Expressions use ``+ - * / ^`` (``**`` also accepted), parentheses, integer or
decimal-free rational literals and single-letter variables.  Evaluation is
delegated to the objects returned by the variable and constant factories, so
the same walker builds field elements, polynomials or rational functions.
"""

import ast
from fractions import Fraction

from .errors import ParseError


def parse_expression(text, variables, const):
    """Evaluate ``text`` with ``variables[name]()`` for names and ``const(q)`` for literals."""
    source = text.strip().replace("^", "**")
    if not source:
        raise ParseError("empty expression")
    try:
        tree = ast.parse(source, mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"cannot parse {text!r}: {exc.msg}") from None
    return _walk(tree.body, variables, const, text)


def _literal_int(node):
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return node.value
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        inner = _literal_int(node.operand)
        if inner is not None:
            return -inner if isinstance(node.op, ast.USub) else inner
    return None


def _walk(node, variables, const, text):
    if isinstance(node, ast.Constant):
        if isinstance(node.value, bool) or not isinstance(node.value, int):
            raise ParseError(f"only integer literals are allowed in {text!r}")
        return const(Fraction(node.value))
    if isinstance(node, ast.Name):
        if node.id not in variables:
            raise ParseError(f"unknown symbol {node.id!r} in {text!r}")
        return variables[node.id]()
    if isinstance(node, ast.UnaryOp):
        operand = _walk(node.operand, variables, const, text)
        if isinstance(node.op, ast.USub):
            return -operand
        if isinstance(node.op, ast.UAdd):
            return operand
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            exponent = _literal_int(node.right)
            if exponent is None:
                raise ParseError(f"exponents must be integer literals in {text!r}")
            base = _walk(node.left, variables, const, text)
            if exponent < 0:
                return const(Fraction(1)) / (base ** (-exponent))
            return base ** exponent
        left = _walk(node.left, variables, const, text)
        right = _walk(node.right, variables, const, text)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            return left / right
    raise ParseError(f"unsupported syntax in {text!r}")


def parse_rational(text):
    """Parse ``"3"``, ``"-7/2"`` into a Fraction."""
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational number: {text!r}") from None
