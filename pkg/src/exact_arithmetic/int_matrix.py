from dataclasses import dataclass
from typing import Sequence, Tuple

from src.exact_arithmetic.errors import NonUnimodularMatrixError


@dataclass(frozen=True)
class IntMatrix2:
    """
    Integer 2x2 matrix [[p, r], [q, s]].

    Columns are (p, q) and (r, s); a matrix acts on integer column vectors,
    so the first column is the image of the first basis vector.
    """
    p: int
    r: int
    q: int
    s: int

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix2":
        (p, r), (q, s) = rows
        return cls(int(p), int(r), int(q), int(s))

    @classmethod
    def identity(cls) -> "IntMatrix2":
        return cls(1, 0, 0, 1)

    @classmethod
    def scalar(cls, c: int) -> "IntMatrix2":
        return cls(c, 0, 0, c)

    def rows(self) -> Tuple[Tuple[int, int], Tuple[int, int]]:
        return (self.p, self.r), (self.q, self.s)

    def det(self) -> int:
        return self.p * self.s - self.r * self.q

    def is_sl2(self) -> bool:
        return self.det() == 1

    def is_gl2(self) -> bool:
        return self.det() in (1, -1)

    def __matmul__(self, other: "IntMatrix2") -> "IntMatrix2":
        return IntMatrix2(
            self.p * other.p + self.r * other.q,
            self.p * other.r + self.r * other.s,
            self.q * other.p + self.s * other.q,
            self.q * other.r + self.s * other.s,
        )

    def __mul__(self, c: int) -> "IntMatrix2":
        if not isinstance(c, int):
            return NotImplemented
        return IntMatrix2(self.p * c, self.r * c, self.q * c, self.s * c)

    __rmul__ = __mul__

    def __neg__(self) -> "IntMatrix2":
        return self * -1

    def mat_vec(self, vector: Sequence) -> tuple:
        """Apply the matrix to a column vector (entries may be ints or Fractions)."""
        x, y = vector
        return self.p * x + self.r * y, self.q * x + self.s * y

    def inverse_unimodular(self) -> "IntMatrix2":
        d = self.det()
        if d not in (1, -1):
            raise NonUnimodularMatrixError(f"Matrix {self.rows()} has determinant {d}")
        return IntMatrix2(d * self.s, -d * self.r, -d * self.q, d * self.p)

    def pow(self, n: int) -> "IntMatrix2":
        base = self if n >= 0 else self.inverse_unimodular()
        result = IntMatrix2.identity()
        n = abs(n)
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def reduce_rows_mod(self, orders: Tuple[int, int]) -> "IntMatrix2":
        """Reduce the first row mod orders[0] and the second row mod orders[1]."""
        m1, m2 = orders
        return IntMatrix2(self.p % m1, self.r % m1, self.q % m2, self.s % m2)

    def __str__(self) -> str:
        return f"({self.p}, {self.r}; {self.q}, {self.s})"


def mat_mul(a: IntMatrix2, b: IntMatrix2) -> IntMatrix2:
    return a @ b


def mat_det(m: IntMatrix2) -> int:
    return m.det()


def mat_inv_unimodular(m: IntMatrix2) -> IntMatrix2:
    """
    Invert a matrix with determinant ±1 over the integers.

    Raises:
        NonUnimodularMatrixError: If det(m) is not ±1.
    """
    return m.inverse_unimodular()
