import re
from typing import List, Tuple

from src.exact_arithmetic.errors import GaloisToolkitError
from src.group_managing.group_label import (
    Abelian,
    Bidihedral,
    Dihedral,
    Exc1,
    Exc2,
    GroupLabel,
    bidihedral,
    exceptional,
)

_INT = re.compile(r"\d+")


class LabelParseError(GaloisToolkitError):
    """Exception raised for label text outside the grammar; ``position`` is the offending offset."""

    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.text = text
        self.position = position


class _Cursor:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def fail(self, message: str):
        raise LabelParseError(message, self.text, self.pos)

    def at_end(self) -> bool:
        return self.pos >= len(self.text)

    def peek(self, literal: str) -> bool:
        return self.text.startswith(literal, self.pos)

    def expect(self, literal: str) -> None:
        if not self.peek(literal):
            self.fail(f"Expected {literal!r}")
        self.pos += len(literal)

    def integer(self) -> int:
        match = _INT.match(self.text, self.pos)
        if not match:
            self.fail("Expected a positive integer")
        self.pos = match.end()
        value = int(match.group())
        if value < 1:
            self.pos = match.start()
            self.fail("Expected a positive integer")
        return value

    def integer_tuple(self) -> List[int]:
        self.expect("(")
        values = [self.integer()]
        while self.peek(","):
            self.pos += 1
            values.append(self.integer())
        self.expect(")")
        return values


def parse_group_label(text: str) -> GroupLabel:
    """
    Parse a label in the grammar Z<m>, Z<m>xZ<n>, Z<m>^<r>, D<n>, BD(<m>,<n>),
    E(<k>,<l>) or E(<m>,<k>,<l>). Whitespace is ignored.

    Raises:
        LabelParseError: With the offset of the first unexpected character.
    """
    if not isinstance(text, str):
        raise LabelParseError("Label must be a string", str(text), 0)
    compact = re.sub(r"\s+", "", text)
    cursor = _Cursor(compact)
    try:
        label = _parse(cursor)
    except ValueError as e:
        raise LabelParseError(str(e), compact, cursor.pos) from e
    if not cursor.at_end():
        cursor.fail("Unexpected trailing text")
    return label


def _parse(cursor: _Cursor) -> GroupLabel:
    if cursor.peek("BD"):
        cursor.pos += 2
        start = cursor.pos
        values = cursor.integer_tuple()
        if len(values) != 2:
            cursor.pos = start
            cursor.fail("BD takes two arguments")
        return bidihedral(*values)
    if cursor.peek("D"):
        cursor.pos += 1
        return Dihedral(cursor.integer())
    if cursor.peek("E"):
        cursor.pos += 1
        start = cursor.pos
        values = cursor.integer_tuple()
        if len(values) == 2:
            return exceptional(1, values[0], values[1])
        if len(values) == 3:
            return exceptional(*values)
        cursor.pos = start
        cursor.fail("E takes two or three arguments")
    if cursor.peek("Z"):
        cursor.pos += 1
        m = cursor.integer()
        if cursor.peek("^"):
            cursor.pos += 1
            return Abelian.of(*([m] * cursor.integer()))
        orders = [m]
        while cursor.peek("x"):
            cursor.pos += 1
            cursor.expect("Z")
            orders.append(cursor.integer())
        return Abelian.of(*orders)
    cursor.fail("Expected one of Z, D, BD, E")


def _abelian_text(factors: Tuple[int, ...]) -> str:
    if not factors:
        return "Z1"
    if len(factors) > 1 and len(set(factors)) == 1:
        return f"Z{factors[0]}^{len(factors)}"
    return "x".join(f"Z{d}" for d in factors)


def print_label(label: GroupLabel) -> str:
    """Inverse of parse_group_label."""
    if isinstance(label, Abelian):
        return _abelian_text(label.factors)
    if isinstance(label, Dihedral):
        return f"D{label.n}"
    if isinstance(label, Bidihedral):
        return f"BD({label.m},{label.n})"
    if isinstance(label, Exc1):
        return f"E({label.k},{label.l})"
    if isinstance(label, Exc2):
        return f"E({label.m},{label.k},{label.l})"
    raise TypeError(f"Unsupported label type: {type(label).__name__}")
