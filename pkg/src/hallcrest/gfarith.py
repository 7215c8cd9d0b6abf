"""Exact arithmetic over prime fields and exact polynomial interpolation.

Everything here is integer arithmetic: matrix entries live in {0, ..., p-1},
polynomial coefficients are Fractions.  No floating point is used anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product


class PrimeField:
    """The field F_p for a prime p. Elements are plain ints in range(p)."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise ValueError(f"not a prime: {p}")
        self.p = p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in F_p")
        return pow(a, self.p - 2, self.p)

    def from_fraction(self, c: Fraction) -> int:
        """Reduce a rational coefficient mod p. The denominator must be a unit."""
        if c.denominator % self.p == 0:
            raise ZeroDivisionError(f"denominator {c.denominator} not invertible mod {self.p}")
        return (c.numerator % self.p) * self.inv(c.denominator % self.p) % self.p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


class FMatrix:
    """Immutable matrix over F_p. Entries are a tuple of row tuples of ints."""

    __slots__ = ("p", "rows", "cols", "data", "_rref")

    def __init__(self, p: int, data, cols: int | None = None):
        self.p = p
        rows = tuple(tuple(int(x) % p for x in row) for row in data)
        self.data = rows
        self.rows = len(rows)
        # cols must be passed explicitly for 0-row matrices to survive stacking
        self.cols = len(rows[0]) if rows else (cols or 0)
        if any(len(r) != self.cols for r in rows):
            raise ValueError("ragged matrix data")
        self._rref = None

    @classmethod
    def zeros(cls, p: int, rows: int, cols: int) -> "FMatrix":
        m = cls.__new__(cls)
        m.p, m.rows, m.cols = p, rows, cols
        m.data = tuple((0,) * cols for _ in range(rows))
        m._rref = None
        return m

    @classmethod
    def identity(cls, p: int, n: int) -> "FMatrix":
        return cls(p, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    def __eq__(self, other):
        return (
            isinstance(other, FMatrix)
            and other.p == self.p
            and other.data == self.data
            and other.cols == self.cols
        )

    def __hash__(self):
        return hash((self.p, self.rows, self.cols, self.data))

    def __repr__(self):
        return f"FMatrix(p={self.p}, {self.rows}x{self.cols})"

    def __add__(self, other: "FMatrix") -> "FMatrix":
        p = self.p
        return FMatrix(p, tuple(tuple((a + b) % p for a, b in zip(r1, r2))
                                for r1, r2 in zip(self.data, other.data)), cols=self.cols)

    def __sub__(self, other: "FMatrix") -> "FMatrix":
        p = self.p
        return FMatrix(p, tuple(tuple((a - b) % p for a, b in zip(r1, r2))
                                for r1, r2 in zip(self.data, other.data)), cols=self.cols)

    def __neg__(self) -> "FMatrix":
        p = self.p
        return FMatrix(p, tuple(tuple((-a) % p for a in r) for r in self.data), cols=self.cols)

    def scale(self, c: int) -> "FMatrix":
        p = self.p
        c %= p
        return FMatrix(p, tuple(tuple(a * c % p for a in r) for r in self.data), cols=self.cols)

    def __matmul__(self, other: "FMatrix") -> "FMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        p = self.p
        bt = tuple(zip(*other.data)) if other.data else ()
        if self.cols == 0 or other.cols == 0:
            return FMatrix.zeros(p, self.rows, other.cols)
        out = tuple(
            tuple(sum(a * b for a, b in zip(row, col)) % p for col in bt)
            for row in self.data
        )
        return FMatrix(p, out, cols=other.cols)

    def transpose(self) -> "FMatrix":
        if not self.data:
            return FMatrix.zeros(self.p, self.cols, self.rows)
        return FMatrix(self.p, tuple(zip(*self.data)))

    def hstack(self, other: "FMatrix") -> "FMatrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch in hstack")
        return FMatrix(self.p, tuple(r1 + r2 for r1, r2 in zip(self.data, other.data)),
                       cols=self.cols + other.cols)

    def vstack(self, other: "FMatrix") -> "FMatrix":
        if self.cols != other.cols:
            raise ValueError("column count mismatch in vstack")
        return FMatrix(self.p, self.data + other.data, cols=self.cols)

    def take(self, row_range, col_range) -> "FMatrix":
        rr, cr = list(row_range), list(col_range)
        m = FMatrix.__new__(FMatrix)
        m.p = self.p
        m.data = tuple(tuple(self.data[i][j] for j in cr) for i in rr)
        m.rows, m.cols = len(rr), len(cr)
        m._rref = None
        return m

    def is_zero(self) -> bool:
        return all(a == 0 for row in self.data for a in row)

    def rref(self):
        """Row-reduce. Returns (rank, reduced FMatrix, pivot column tuple)."""
        if self._rref is not None:
            return self._rref
        p = self.p
        mat = [list(r) for r in self.data]
        nrows, ncols = self.rows, self.cols
        pivots = []
        r = 0
        for c in range(ncols):
            pr = None
            for i in range(r, nrows):
                if mat[i][c] != 0:
                    pr = i
                    break
            if pr is None:
                continue
            mat[r], mat[pr] = mat[pr], mat[r]
            inv = pow(mat[r][c], p - 2, p)
            mat[r] = [x * inv % p for x in mat[r]]
            rowr = mat[r]
            for i in range(nrows):
                if i != r and mat[i][c] != 0:
                    f = mat[i][c]
                    mat[i] = [(x - f * y) % p for x, y in zip(mat[i], rowr)]
            pivots.append(c)
            r += 1
            if r == nrows:
                break
        out = (r, FMatrix(p, tuple(tuple(row) for row in mat), cols=ncols), tuple(pivots))
        self._rref = out
        return out

    @property
    def rank(self) -> int:
        return self.rref()[0]

    def right_kernel(self) -> "FMatrix":
        """Basis of {v : self @ v^T = 0}, one vector per row, deterministic order."""
        p = self.p
        rank, red, pivots = self.rref()
        pivset = set(pivots)
        free = [j for j in range(self.cols) if j not in pivset]
        basis = []
        for j in free:
            v = [0] * self.cols
            v[j] = 1
            for i, pc in enumerate(pivots):
                v[pc] = (-red.data[i][j]) % p
            basis.append(tuple(v))
        if not basis:
            return FMatrix.zeros(p, 0, self.cols)
        return FMatrix(p, tuple(basis))

    def column_space_basis(self) -> "FMatrix":
        """Pivot columns of the matrix, as rows of the result."""
        _, _, pivots = self.rref()
        cols = tuple(zip(*self.data)) if self.data else ()
        return FMatrix(self.p, tuple(cols[j] for j in pivots)) if pivots else FMatrix.zeros(self.p, 0, self.rows)

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank == self.rows

    def inverse(self) -> "FMatrix":
        if self.rows != self.cols:
            raise ValueError("inverse of non-square matrix")
        n = self.rows
        aug = self.hstack(FMatrix.identity(self.p, n))
        rank, red, pivots = aug.rref()
        if rank < n or pivots != tuple(range(n)):
            raise ValueError("matrix not invertible")
        return red.take(range(n), range(n, 2 * n))

    def matpow(self, k: int) -> "FMatrix":
        if self.rows != self.cols:
            raise ValueError("power of non-square matrix")
        out = FMatrix.identity(self.p, self.rows)
        base = self
        while k > 0:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out


def solve_matrix(a: FMatrix, b: FMatrix):
    """One solution X of a @ X = b, or None if inconsistent.

    When a has full column rank the solution is unique; otherwise the returned
    X is the one with zeros in all free coordinates (deterministic).
    """
    if a.rows != b.rows:
        raise ValueError("shape mismatch in solve")
    p = a.p
    aug = a.hstack(b)
    rank, red, pivots = aug.rref()
    n = a.cols
    if any(pc >= n for pc in pivots):
        return None
    xs = [[0] * b.cols for _ in range(n)]
    for i, pc in enumerate(pivots):
        for j in range(b.cols):
            xs[pc][j] = red.data[i][n + j]
    return FMatrix(p, tuple(tuple(r) for r in xs), cols=b.cols)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n (exact integer)."""
    if k < 0 or k > n:
        return 0
    num = 1
    den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    assert num % den == 0
    return num // den


def gl_order(n: int, q: int) -> int:
    """|GL_n(F_q)|."""
    out = 1
    for i in range(n):
        out *= q**n - q**i
    return out


def enumerate_subspaces(n: int, k: int, p: int):
    """All k-dimensional subspaces of F_p^n as canonical reduced-row-echelon bases.

    Yields one FMatrix (k rows, n cols, rows = basis) per subspace, in a fixed
    lexicographic order: pivot column sets in lexicographic order, then free
    entries in row-major lexicographic order.  The total count equals the
    Gaussian binomial coefficient.
    """
    if k < 0 or k > n:
        return
    if k == 0:
        yield FMatrix.zeros(p, 0, n)
        return
    for pivots in combinations(range(n), k):
        pivset = set(pivots)
        free_cells = [
            (i, j)
            for i in range(k)
            for j in range(pivots[i] + 1, n)
            if j not in pivset
        ]
        for vals in product(range(p), repeat=len(free_cells)):
            rows = [[0] * n for _ in range(k)]
            for i, pc in enumerate(pivots):
                rows[i][pc] = 1
            for (i, j), v in zip(free_cells, vals):
                rows[i][j] = v
            yield FMatrix(p, tuple(tuple(r) for r in rows))


class QPolynomial:
    """Polynomial in one variable q with exact Fraction coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else -1

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def at_one(self) -> Fraction:
        return sum(self.coeffs, Fraction(0))

    def __eq__(self, other):
        return isinstance(other, QPolynomial) and other.coeffs == self.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for e in range(self.degree, -1, -1):
            c = self.coeffs[e]
            if c == 0:
                continue
            if e == 0:
                body = str(c)
            else:
                qpow = "q" if e == 1 else f"q^{e}"
                body = qpow if c == 1 else f"{c}*{qpow}"
            terms.append(body)
        out = terms[0]
        for t in terms[1:]:
            out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return out

    def __repr__(self):
        return f"QPolynomial({self})"


def interpolate(samples):
    """Exact Lagrange interpolation through (x, y) integer samples.

    Returns (polynomial, stable) where `stable` reports whether the last
    sample was already predicted by the polynomial through the earlier ones
    (the held-out check).  Requires at least 2 samples with distinct x.
    """
    pts = [(int(x), Fraction(y)) for x, y in samples]
    if len(pts) < 2:
        raise ValueError("need at least 2 samples to interpolate")
    xs = [x for x, _ in pts]
    if len(set(xs)) != len(xs):
        raise ValueError("duplicate sample points")
    head = _lagrange(pts[:-1])
    stable = head(pts[-1][0]) == pts[-1][1]
    poly = head if stable else _lagrange(pts)
    return poly, stable


def _lagrange(pts) -> QPolynomial:
    n = len(pts)
    coeffs = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(pts):
        # numerator polynomial prod_{j != i} (q - x_j), built incrementally
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(pts):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denom *= xi - xj
        w = yi / denom
        for k, b in enumerate(basis):
            coeffs[k] += w * b
    return QPolynomial(coeffs)
