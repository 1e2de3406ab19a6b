"""Exact linear algebra over the integers and over Z[t].

Matrices carry arbitrary-precision integer entries.  Determinants use
fraction-free (Bareiss) elimination, which stays exact over any integral
domain, so the same pivoting scheme computes both integer determinants and
determinants of matrices of integer polynomials.  Linear solving and integer
kernels go through a column-style Hermite normal form with a unimodular
transformation matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd


class LinAlgError(ValueError):
    pass


# ---------------------------------------------------------------------------
# integer matrices


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix, row-major.  The 0x0 matrix is allowed."""

    rows: int
    cols: int
    data: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise LinAlgError("negative matrix dimensions")
        if len(self.data) != self.rows * self.cols:
            raise LinAlgError(
                f"entry count {len(self.data)} != {self.rows}x{self.cols}")

    @classmethod
    def from_rows(cls, rows) -> "IntMatrix":
        rows = [list(r) for r in rows]
        n = len(rows)
        m = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != m:
                raise LinAlgError("ragged rows")
        return cls(n, m, tuple(int(x) for r in rows for x in r))

    @classmethod
    def from_cols(cls, cols, rows: int | None = None) -> "IntMatrix":
        cols = [list(c) for c in cols]
        if cols:
            n = len(cols[0])
        else:
            if rows is None:
                raise LinAlgError("from_cols with no columns needs a row count")
            n = rows
        return cls.from_rows([[cols[j][i] for j in range(len(cols))]
                              for i in range(n)])

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(1 if i == j else 0
                               for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    def __getitem__(self, ij) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.data[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.data[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple[int, ...]:
        return self.data[j::self.cols] if self.cols else ()

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         tuple(self.data[i * self.cols + j]
                               for j in range(self.cols)
                               for i in range(self.rows)))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix(self.rows, self.cols,
                         tuple(a + b for a, b in zip(self.data, other.data)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix(self.rows, self.cols,
                         tuple(a - b for a, b in zip(self.data, other.data)))

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(-a for a in self.data))

    def _same_shape(self, other: "IntMatrix"):
        if self.rows != other.rows or self.cols != other.cols:
            raise LinAlgError("shape mismatch")

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise LinAlgError("inner dimension mismatch")
        n, k, m = self.rows, self.cols, other.cols
        out = [0] * (n * m)
        for i in range(n):
            ro = self.data[i * k:(i + 1) * k]
            for t in range(k):
                a = ro[t]
                if a:
                    base = t * m
                    obase = i * m
                    for j in range(m):
                        out[obase + j] += a * other.data[base + j]
        return IntMatrix(n, m, tuple(out))

    def mul_vec(self, v) -> tuple[int, ...]:
        if len(v) != self.cols:
            raise LinAlgError("vector length mismatch")
        return tuple(sum(self.data[i * self.cols + j] * v[j]
                         for j in range(self.cols) if v[j])
                     for i in range(self.rows))


def dot(u, v) -> int:
    if len(u) != len(v):
        raise LinAlgError("vector length mismatch")
    return sum(a * b for a, b in zip(u, v))


def bilinear(u, m: IntMatrix, v) -> int:
    """u^T m v with exact integers."""
    return dot(u, m.mul_vec(v))


# ---------------------------------------------------------------------------
# polynomials in one variable t (coefficient tuples, constant term first)

_PZERO: tuple[int, ...] = ()


def _ptrim(c) -> tuple[int, ...]:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return _ptrim(out)


def _psub(a, b):
    out = list(a) + [0] * (len(b) - len(a))
    for i, x in enumerate(b):
        out[i] -= x
    return _ptrim(out)


def _pmul(a, b):
    if not a or not b:
        return _PZERO
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return _ptrim(out)


def _pdivexact(a, b):
    """Quotient a/b in Z[t]; raises if b does not divide a exactly."""
    if not b:
        raise LinAlgError("polynomial division by zero")
    if not a:
        return _PZERO
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    lb = b[-1]
    for k in range(len(q) - 1, -1, -1):
        head = a[k + len(b) - 1]
        if head % lb:
            raise LinAlgError("inexact polynomial division")
        c = head // lb
        q[k] = c
        if c:
            for j, y in enumerate(b):
                a[k + j] -= c * y
    if any(a[:len(b) - 1]):
        raise LinAlgError("inexact polynomial division")
    return _ptrim(q)


@dataclass(frozen=True)
class IntPoly:
    """Integer polynomial in t, normalised up to units.

    ``coeffs`` is the coefficient tuple, constant term first, with the
    leading coefficient nonzero (empty tuple for the zero polynomial).
    ``unit_shift`` and ``unit_sign`` record the unit +-t^k removed during
    normalisation, so the raw polynomial equals
    ``unit_sign * t**unit_shift * coeffs``.
    """

    coeffs: tuple[int, ...]
    unit_shift: int = 0
    unit_sign: int = 1

    @classmethod
    def from_raw(cls, coeffs) -> "IntPoly":
        """Normalise raw coefficients: strip +-t^k so the constant term
        is positive (zero polynomial stays zero)."""
        c = _ptrim(coeffs)
        if not c:
            return cls(_PZERO, 0, 1)
        shift = 0
        while c[shift] == 0:
            shift += 1
        c = c[shift:]
        sign = 1
        if c[0] < 0:
            sign = -1
            c = tuple(-x for x in c)
        return cls(c, shift, sign)

    @classmethod
    def from_coeffs(cls, coeffs) -> "IntPoly":
        """Wrap already-normalised coefficients (no unit recorded)."""
        c = _ptrim(coeffs)
        if c and c[0] == 0:
            raise LinAlgError("constant term must be nonzero when normalised")
        return cls(c, 0, 1)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_unit(self) -> bool:
        """True iff the raw polynomial is +-t^k."""
        return self.coeffs == (1,)

    def raw_coeffs(self) -> tuple[int, ...]:
        """The un-normalised coefficient tuple, sign and t-shift restored."""
        return _ptrim([0] * self.unit_shift
                      + [self.unit_sign * x for x in self.coeffs])

    def same_up_to_unit(self, other: "IntPoly") -> bool:
        return self.coeffs == other.coeffs

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.raw_coeffs()):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            if k == 0:
                term = str(abs(c))
            else:
                mag = "" if abs(c) == 1 else f"{abs(c)}*"
                term = f"{mag}t" + (f"^{k}" if k > 1 else "")
            parts.append(("- " if c < 0 else "+ ") + term)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def to_json(self) -> dict:
        return {"coeffs": list(self.coeffs), "shift": self.unit_shift,
                "sign": self.unit_sign}

    @classmethod
    def from_json(cls, d: dict) -> "IntPoly":
        return cls(tuple(int(x) for x in d["coeffs"]),
                   int(d["shift"]), int(d["sign"]))


# ---------------------------------------------------------------------------
# determinants (fraction-free elimination)


def det(m: IntMatrix) -> int:
    """Exact determinant via Bareiss elimination."""
    if not m.is_square:
        raise LinAlgError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = m.to_rows()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            ri, rk = a[i], a[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * pk - aik * rk[j]) // prev
            ri[k] = 0
        prev = pk
    return sign * a[n - 1][n - 1]


def _poly_det(a: list[list[tuple[int, ...]]]) -> tuple[int, ...]:
    """Bareiss determinant of a matrix of coefficient tuples over Z[t]."""
    n = len(a)
    if n == 0:
        return (1,)
    sign = 1
    prev: tuple[int, ...] = (1,)
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return _PZERO
        pk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            ri, rk = a[i], a[k]
            if aik:
                for j in range(k + 1, n):
                    ri[j] = _pdivexact(
                        _psub(_pmul(ri[j], pk), _pmul(aik, rk[j])), prev)
            else:
                for j in range(k + 1, n):
                    if ri[j]:
                        ri[j] = _pdivexact(_pmul(ri[j], pk), prev)
            ri[k] = _PZERO
        prev = pk
    d = a[n - 1][n - 1]
    return d if sign == 1 else tuple(-x for x in d)


def alexander_of_form(m: IntMatrix) -> IntPoly:
    """det(t*M - M^T), normalised so the constant term is positive.

    The removed unit +-t^k is recorded on the result.  The 0x0 form gives 1.
    """
    if not m.is_square:
        raise LinAlgError("form matrix must be square")
    n = m.rows
    a = [[_ptrim((-m[j, i], m[i, j])) for j in range(n)] for i in range(n)]
    return IntPoly.from_raw(_poly_det(a))


def is_alexander_trivial(m: IntMatrix) -> bool:
    """True iff det(t*M - M^T) is a unit +-t^k in Z[t^{+-1}]."""
    return alexander_of_form(m).is_unit


# ---------------------------------------------------------------------------
# Hermite normal form (column operations), solving, kernels


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with g = gcd(a,b) >= 0 and x*a + y*b = g."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _column_echelon(m: IntMatrix):
    """Column echelon form H = A*U with U unimodular.

    Returns (hcols, ucols, pivots) where pivots is a list of (row, col)
    positions with strictly increasing rows, pivot entries positive, and
    columns past the last pivot identically zero.
    """
    rows, n = m.rows, m.cols
    hcols = [list(m.col(j)) for j in range(n)]
    ucols = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    pivots: list[tuple[int, int]] = []
    p = 0
    for r in range(rows):
        if p == n:
            break
        nz = [j for j in range(p, n) if hcols[j][r]]
        if not nz:
            continue
        j0 = nz[0]
        for j in nz[1:]:
            a0, b0 = hcols[j0][r], hcols[j][r]
            g, x, y = _ext_gcd(a0, b0)
            ag, bg = a0 // g, b0 // g
            cj0, cj = hcols[j0], hcols[j]
            uj0, uj = ucols[j0], ucols[j]
            for i in range(rows):
                ai, bi = cj0[i], cj[i]
                cj0[i] = x * ai + y * bi
                cj[i] = -bg * ai + ag * bi
            for i in range(n):
                ai, bi = uj0[i], uj[i]
                uj0[i] = x * ai + y * bi
                uj[i] = -bg * ai + ag * bi
        if hcols[j0][r] < 0:
            hcols[j0] = [-x for x in hcols[j0]]
            ucols[j0] = [-x for x in ucols[j0]]
        hcols[p], hcols[j0] = hcols[j0], hcols[p]
        ucols[p], ucols[j0] = ucols[j0], ucols[p]
        pivots.append((r, p))
        p += 1
    return hcols, ucols, pivots


def rank(m: IntMatrix) -> int:
    return len(_column_echelon(m)[2])


def kernel(m: IntMatrix) -> list[tuple[int, ...]]:
    """Basis of the integer null space {v : A v = 0}.

    The lattice is saturated (it is the full integer kernel), so every basis
    vector returned is primitive.
    """
    _, ucols, pivots = _column_echelon(m)
    return [tuple(ucols[j]) for j in range(len(pivots), m.cols)]


def solve_linear(m: IntMatrix, b) -> tuple[int, ...] | None:
    """One integer solution of A x = b, or None when unsolvable over Z.

    The solution is the canonical one obtained by back-substitution through
    the column Hermite form (no kernel component added).
    """
    if len(b) != m.rows:
        raise LinAlgError("right-hand side length mismatch")
    hcols, ucols, pivots = _column_echelon(m)
    n = m.cols
    y = [0] * n
    pivot_rows = {r for r, _ in pivots}
    for r, c in pivots:
        acc = b[r] - sum(hcols[j][r] * y[j] for j in range(c) if y[j])
        piv = hcols[c][r]
        if acc % piv:
            return None
        y[c] = acc // piv
    for r in range(m.rows):
        if r in pivot_rows:
            continue
        if sum(hcols[j][r] * y[j] for j in range(n) if y[j]) != b[r]:
            return None
    return tuple(sum(ucols[j][i] * y[j] for j in range(n) if y[j])
                 for i in range(n))


def is_primitive(v) -> bool:
    """True iff the entries have gcd 1 (the zero vector is not primitive)."""
    g = 0
    for x in v:
        g = gcd(g, x)
        if g == 1:
            return True
    return False
