import logging
from fractions import Fraction
from typing import Dict, Iterator, Mapping, Optional, Tuple

from sympy import QQ, Add, I, Mul, Poly, Pow, Rational, Symbol, sympify
from sympy.core.numbers import ImaginaryUnit
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from src.exact_arithmetic.errors import GaloisToolkitError
from src.function_field.ff_elem import FFElem, FunctionField

TRANSFORMATIONS = standard_transformations + (convert_xor,)
CURVE_SYMBOLS = ("x", "y", "w")
RELATION_SYMBOLS = ("s", "t")

ParamValues = Mapping[str, Fraction]

logger = logging.getLogger(__name__)


class ExpressionParseError(GaloisToolkitError):
    """Exception raised for malformed or unsupported rational expressions."""
    pass


def _sympy_tree(text: str, names: Tuple[str, ...]):
    if not isinstance(text, str) or not text.strip():
        raise ExpressionParseError(f"Empty expression: {text!r}")
    local_dict = {name: Symbol(name) for name in names}
    try:
        return parse_expr(text, local_dict=local_dict, transformations=TRANSFORMATIONS)
    except Exception as e:
        # tokenizer errors surface as TokenError, not SyntaxError
        raise ExpressionParseError(f"Cannot parse {text!r}: {e}") from e


def _to_fraction(value) -> Fraction:
    value = Fraction(value) if isinstance(value, (int, str)) else value
    if isinstance(value, Fraction):
        return value
    rational = Rational(value)
    return Fraction(int(rational.p), int(rational.q))


class _FunctionFieldBuilder:
    """Walks a sympy expression tree into function field arithmetic."""

    def __init__(self, ff: FunctionField, params: ParamValues):
        self.ff = ff
        self.params = {name: _to_fraction(v) for name, v in params.items()}

    def build(self, node) -> FFElem:
        ff = self.ff
        if node.is_Rational:
            return ff.constant(Fraction(int(node.p), int(node.q)))
        if isinstance(node, ImaginaryUnit):
            if ff.curve.field.l != 4:
                raise ExpressionParseError(f"I is not in {ff.curve.field.tag}")
            return ff.zeta
        if node.is_Symbol:
            name = node.name
            if name == "x":
                return ff.x
            if name == "y":
                return ff.y
            if name == "w":
                if not ff.curve.field.has_zeta:
                    raise ExpressionParseError("w is undefined over Q")
                return ff.zeta
            if name in self.params:
                return ff.constant(self.params[name])
            raise ExpressionParseError(f"Unknown symbol {name!r}")
        if isinstance(node, Add):
            result = ff.zero
            for arg in node.args:
                result = result + self.build(arg)
            return result
        if isinstance(node, Mul):
            result = ff.one
            for arg in node.args:
                result = result * self.build(arg)
            return result
        if isinstance(node, Pow):
            base, exponent = node.args
            if not exponent.is_Integer:
                raise ExpressionParseError(f"Non-integer exponent in {node}")
            return self.build(base) ** int(exponent)
        raise ExpressionParseError(f"Unsupported expression {node} ({type(node).__name__})")


def parse_ff(text: str, ff: FunctionField, params: Optional[ParamValues] = None) -> FFElem:
    """
    Parse a rational expression in x, y (and w for zeta) into the function field.

    Coefficients are integers or p/q; ``^`` and ``**`` both denote powers;
    names in ``params`` are replaced by their rational values.

    Raises:
        ExpressionParseError: On malformed input, unknown names or non-integer exponents.
    """
    params = params or {}
    tree = _sympy_tree(text, CURVE_SYMBOLS + tuple(params))
    try:
        return _FunctionFieldBuilder(ff, params).build(tree)
    except ZeroDivisionError as e:
        raise ExpressionParseError(f"Division by zero in {text!r}") from e


def parse_constant(value, params: Optional[ParamValues] = None) -> Fraction:
    """A rational constant given as a number, 'p/q' or a parameter name."""
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    params = params or {}
    tree = _sympy_tree(str(value), tuple(params))
    tree = tree.subs({Symbol(name): Rational(v.numerator, v.denominator)
                      for name, v in ((n, _to_fraction(p)) for n, p in params.items())})
    if not tree.is_Rational:
        raise ExpressionParseError(f"{value!r} is not a rational constant")
    return Fraction(int(tree.p), int(tree.q))


def parse_relation(text: str, ff: FunctionField, params: Optional[ParamValues] = None) -> Poly:
    """
    Parse F(s, t) as a sympy Poly over the curve's coefficient field.

    Text of the form ``lhs = rhs`` is read as lhs - rhs.
    """
    params = params or {}
    if text.count("=") > 1:
        raise ExpressionParseError(f"More than one '=' in {text!r}")
    sides = text.split("=")
    names = RELATION_SYMBOLS + ("w",) + tuple(params)
    expr = _sympy_tree(sides[0], names)
    if len(sides) == 2:
        expr = expr - _sympy_tree(sides[1], names)
    substitutions: Dict[Symbol, object] = {
        Symbol(name): Rational(v.numerator, v.denominator)
        for name, v in ((n, _to_fraction(p)) for n, p in params.items())
    }
    if ff.curve.field.has_zeta:
        substitutions[Symbol("w")] = ff.curve.field.zeta_expr
    expr = sympify(expr).subs(substitutions)
    s, t = Symbol("s"), Symbol("t")
    free = expr.free_symbols - {s, t}
    if free:
        raise ExpressionParseError(f"Unresolved symbols {sorted(map(str, free))} in {text!r}")
    domain = ff.domain if ff.curve.field.has_zeta and expr.has(I) else QQ
    try:
        return Poly(expr.expand(), s, t, domain=domain)
    except Exception as e:
        raise ExpressionParseError(f"{text!r} is not a polynomial in s, t: {e}") from e


def evaluate_relation(relation: Poly, s: FFElem, t: FFElem) -> FFElem:
    """F(s, t) in the function field."""
    ff = s.ff
    field = ff.curve.field
    value = ff.zero
    for (i, j), coefficient in relation.terms():
        value = value + s ** i * t ** j * ff.constant(field.convert(coefficient))
    return value


def mutate_relation(relation: Poly) -> Iterator[Poly]:
    """Every relation obtained by adding 1 to a single coefficient."""
    for monom in relation.monoms():
        bump = Poly.from_dict({monom: 1}, *relation.gens, domain=relation.domain)
        yield relation + bump


def parse_field_constant(text: str, ff: FunctionField, params: Optional[ParamValues] = None):
    """
    A constant of the coefficient field written in w, e.g. '1 + 2*w'.

    Returns:
        The constant as an element of the curve's domain.
    """
    value = parse_ff(str(text), ff, params)
    if not value.is_constant():
        raise ExpressionParseError(f"{text!r} is not a constant of {ff.curve.field.tag}")
    return value.r.numer.LC
