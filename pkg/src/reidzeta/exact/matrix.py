"""Dense matrices over Q and the exact kernels built on them."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .poly import RatPoly, rat_from_str, rat_to_str


class DimensionError(ValueError):
    pass


@dataclass(frozen=True)
class RatMatrix:
    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __init__(self, data: Sequence[Sequence] = (), rows: int | None = None,
                 cols: int | None = None):
        data = [list(r) for r in data]
        nrows = len(data) if rows is None else rows
        ncols = (len(data[0]) if data else 0) if cols is None else cols
        if len(data) != nrows or any(len(r) != ncols for r in data):
            raise DimensionError("ragged matrix data")
        flat = tuple(Fraction(c) if not isinstance(c, Fraction) else c
                     for r in data for c in r)
        object.__setattr__(self, "rows", nrows)
        object.__setattr__(self, "cols", ncols)
        object.__setattr__(self, "entries", flat)

    @classmethod
    def identity(cls, n: int) -> RatMatrix:
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, r: int, c: int) -> RatMatrix:
        return cls([[0] * c for _ in range(r)], rows=r, cols=c)

    @classmethod
    def diag(cls, values: Iterable) -> RatMatrix:
        values = list(values)
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def block_diag(cls, *blocks: RatMatrix) -> RatMatrix:
        n = sum(b.rows for b in blocks)
        m = sum(b.cols for b in blocks)
        out = [[Fraction(0)] * m for _ in range(n)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    out[r0 + i][c0 + j] = b[i, j]
            r0 += b.rows
            c0 += b.cols
        return cls(out, rows=n, cols=m)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> RatMatrix:
        if not columns:
            return cls()
        return cls([list(r) for r in zip(*columns)])

    # access

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def tolist(self) -> list[list[Fraction]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def row(self, i: int) -> list[Fraction]:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def column(self, j: int) -> list[Fraction]:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def is_integral(self) -> bool:
        return all(e.denominator == 1 for e in self.entries)

    def to_int_rows(self) -> list[list[int]]:
        if not self.is_integral():
            raise ValueError("matrix has non-integer entries")
        return [[int(e) for e in r] for r in self.tolist()]

    # arithmetic

    def __add__(self, other: RatMatrix) -> RatMatrix:
        _same_shape(self, other)
        return _from_flat(self.rows, self.cols,
                          [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: RatMatrix) -> RatMatrix:
        _same_shape(self, other)
        return _from_flat(self.rows, self.cols,
                          [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self) -> RatMatrix:
        return _from_flat(self.rows, self.cols, [-a for a in self.entries])

    def scale(self, c) -> RatMatrix:
        c = Fraction(c)
        return _from_flat(self.rows, self.cols, [a * c for a in self.entries])

    def __matmul__(self, other: RatMatrix) -> RatMatrix:
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        a = self.tolist()
        bt = list(zip(*other.tolist())) if other.rows else [()] * other.cols
        out = [[sum((x * y for x, y in zip(r, c) if x), Fraction(0)) for c in bt] for r in a]
        return RatMatrix(out, rows=self.rows, cols=other.cols)

    def apply(self, v: Sequence) -> list[Fraction]:
        """Matrix times column vector."""
        if len(v) != self.cols:
            raise DimensionError("vector length mismatch")
        return [sum((a * b for a, b in zip(self.row(i), v) if b), Fraction(0))
                for i in range(self.rows)]

    def __pow__(self, n: int) -> RatMatrix:
        _require_square(self)
        if n < 0:
            return self.inverse() ** (-n)
        result, base = RatMatrix.identity(self.rows), self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def transpose(self) -> RatMatrix:
        return RatMatrix([list(c) for c in zip(*self.tolist())], rows=self.cols, cols=self.rows)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> RatMatrix:
        return RatMatrix([[self[i, j] for j in cols] for i in rows],
                         rows=len(rows), cols=len(cols))

    def trace(self) -> Fraction:
        _require_square(self)
        return sum((self[i, i] for i in range(self.rows)), Fraction(0))

    def det(self) -> Fraction:
        _require_square(self)
        return determinant(self.tolist())

    def inverse(self) -> RatMatrix:
        _require_square(self)
        n = self.rows
        aug = [r + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self.tolist())]
        red, pivots = _rref(aug, n)
        if len(pivots) < n:
            raise ZeroDivisionError("singular matrix")
        return RatMatrix([r[n:] for r in red], rows=n, cols=n)

    def rank(self) -> int:
        return len(_rref(self.tolist(), self.cols)[1])

    def __str__(self) -> str:
        cells = [[rat_to_str(e) for e in r] for r in self.tolist()]
        w = max((len(c) for r in cells for c in r), default=1)
        return "\n".join("[" + " ".join(c.rjust(w) for c in r) + "]" for r in cells)

    def to_json(self) -> list[list[str]]:
        return [[rat_to_str(e) for e in r] for r in self.tolist()]

    @classmethod
    def from_json(cls, rows) -> RatMatrix:
        return cls([[rat_from_str(e) for e in r] for r in rows])


def _from_flat(r: int, c: int, flat: list) -> RatMatrix:
    m = RatMatrix.__new__(RatMatrix)
    object.__setattr__(m, "rows", r)
    object.__setattr__(m, "cols", c)
    object.__setattr__(m, "entries", tuple(flat))
    return m


def _same_shape(a: RatMatrix, b: RatMatrix) -> None:
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch {a.shape} vs {b.shape}")


def _require_square(m: RatMatrix) -> None:
    if not m.is_square():
        raise DimensionError(f"expected a square matrix, got {m.rows}x{m.cols}")


def _rref(rows: list[list], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over the first ``ncols`` columns."""
    a = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def row_echelon_basis(vectors: Iterable[Sequence], dim: int) -> list[list[Fraction]]:
    """RREF basis of the row space spanned by ``vectors``."""
    vecs = [list(v) for v in vectors]
    if not vecs:
        return []
    return _rref(vecs, dim)[0]


def determinant(rows: list[list]) -> Fraction:
    """Bareiss elimination; exact for integer or rational entries (ints stay ints)."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    integral = all(isinstance(x, int) or getattr(x, "denominator", 0) == 1
                   for r in rows for x in r)
    a = [[int(x) for x in r] for r in rows] if integral else [list(r) for r in rows]
    sign = 1
    prev = 1 if integral else Fraction(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                t = a[i][j] * akk - a[i][k] * a[k][j]
                a[i][j] = t // prev if integral else t / prev
        prev = akk
    return Fraction(sign * a[n - 1][n - 1])


def char_poly(m: RatMatrix) -> RatPoly:
    """det(xI - M) by the Berkowitz algorithm (division free).

    Runs on Python ints when the matrix is integral, so integer inputs never
    touch Fraction arithmetic.
    """
    _require_square(m)
    n = m.rows
    if n == 0:
        return RatPoly((1,))
    if m.is_integral():
        a = [[int(e) for e in r] for r in m.tolist()]
        zero = 0
    else:
        a = m.tolist()
        zero = Fraction(0)
    # vector of det(tI - A_r) coefficients, highest degree first
    vect = [1, -a[0][0]]
    for r in range(1, n):
        # A_{r+1} = [[A_r, C], [R, a_rr]]
        col = [a[i][r] for i in range(r)]
        row = a[r][:r]
        arr = a[r][r]
        # Toeplitz column: 1, -arr, -R C, -R A C, -R A^2 C, ...
        t = [1, -arr]
        v = col
        for _ in range(r):
            t.append(-sum((x * y for x, y in zip(row, v)), zero))
            v = [sum((a[i][j] * v[j] for j in range(r)), zero) for i in range(r)]
        # new vect = T (lower-triangular Toeplitz, (r+2) x (r+1)) @ vect
        new = []
        for i in range(r + 2):
            s = zero
            for j in range(min(i, r) + 1):
                s += t[i - j] * vect[j]
            new.append(s)
        vect = new
    return RatPoly(reversed(vect))


def exterior_power(m: RatMatrix, k: int) -> RatMatrix:
    """Matrix of k x k minors, rows and columns indexed by k-subsets in lexicographic order."""
    _require_square(m)
    n = m.rows
    if not 0 <= k <= n:
        raise ValueError(f"exterior power {k} out of range for dimension {n}")
    subsets = list(combinations(range(n), k))
    rows = m.tolist()
    out = []
    for rs in subsets:
        out.append([determinant([[rows[i][j] for j in cs] for i in rs]) for cs in subsets])
    return RatMatrix(out, rows=len(subsets), cols=len(subsets))
