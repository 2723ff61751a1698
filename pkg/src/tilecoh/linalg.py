"""Exact integer linear algebra.

Everything here works over Python's arbitrary-precision ``int`` (and
``fractions.Fraction`` where division is unavoidable), so nothing can
overflow.  Matrices are small dense objects; the sizes we care about are
at most a few hundred rows.

The central routine is :func:`smith`, which returns a Smith normal form
together with the unimodular transforms *and* their inverses.  The
cohomology engine needs the inverses to move between cochain coordinates
and coordinates on kernels and quotients.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


class IntMatrix:
    """Immutable dense matrix of Python ints.

    Zero-row and zero-column matrices are allowed and denote zero maps.
    """

    __slots__ = ("rows", "cols", "_data", "_hash")

    def __init__(self, rows: int, cols: int, data: Sequence[Sequence[int]] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if data is None:
            data = [[0] * cols for _ in range(rows)]
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError(f"data does not have shape {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        self._data = tuple(tuple(int(x) for x in r) for r in data)
        self._hash = None

    # construction --------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, rows)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntMatrix":
        cols = len(columns)
        data = [[columns[j][i] for j in range(cols)] for i in range(rows)]
        return cls(rows, cols, data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, [[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, diag: Sequence[int], rows: int | None = None, cols: int | None = None) -> "IntMatrix":
        rows = len(diag) if rows is None else rows
        cols = len(diag) if cols is None else cols
        data = [[0] * cols for _ in range(rows)]
        for i, d in enumerate(diag):
            data[i][i] = d
        return cls(rows, cols, data)

    # access --------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def entries(self) -> tuple[int, ...]:
        """Entries in row-major order."""
        return tuple(x for r in self._data for x in r)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self._data[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self._data)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.col(j) for j in range(self.cols)]

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self._data]

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._data for x in r)

    # arithmetic ----------------------------------------------------------

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, [list(c) for c in zip(*self._data)] if self.rows else [[] for _ in range(self.cols)])

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        ocols = [other.col(j) for j in range(other.cols)]
        data = []
        for r in self._data:
            nz = [(k, x) for k, x in enumerate(r) if x]
            data.append([sum(x * c[k] for k, x in nz) for c in ocols])
        return IntMatrix(self.rows, other.cols, data)

    def apply(self, v: Sequence[int]) -> list[int]:
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return [sum(a * b for a, b in zip(r, v) if a) for r in self._data]

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(self.rows, self.cols, [[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)])

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(self.rows, self.cols, [[a - b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)])

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, [[-a for a in r] for r in self._data])

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, [[k * a for a in r] for r in self._data])

    def __pow__(self, n: int) -> "IntMatrix":
        if self.rows != self.cols:
            raise ValueError("matrix power needs a square matrix")
        result = IntMatrix.identity(self.rows)
        base = self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def mod(self, p: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, [[a % p for a in r] for r in self._data])

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "IntMatrix":
        rows, cols = list(rows), list(cols)
        return IntMatrix(len(rows), len(cols), [[self._data[i][j] for j in cols] for i in rows])

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return IntMatrix(self.rows, self.cols + other.cols, [list(a) + list(b) for a, b in zip(self._data, other._data)])

    def vstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.cols:
            raise ValueError("column count mismatch")
        return IntMatrix(self.rows + other.rows, self.cols, self.to_lists() + other.to_lists())

    # dunder plumbing -----------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, IntMatrix) and self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self._data))
        return self._hash

    def __repr__(self) -> str:
        return f"IntMatrix({self.rows}, {self.cols}, {[list(r) for r in self._data]})"


def as_matrix(m: IntMatrix | Sequence[Sequence[int]]) -> IntMatrix:
    return m if isinstance(m, IntMatrix) else IntMatrix.from_rows(m)


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ source @ V == S`` with ``U``, ``V`` unimodular.

    ``U_inv`` and ``V_inv`` are the exact inverses; ``rank`` is the number of
    nonzero diagonal entries of ``S``.
    """

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix
    source: IntMatrix
    U_inv: IntMatrix = field(repr=False)
    V_inv: IntMatrix = field(repr=False)

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.S[i, i] for i in range(min(self.S.rows, self.S.cols)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def _identity_lists(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _smith_core(a: list[list[int]], rows: int, cols: int, track_u: bool, track_v: bool):
    """In-place Smith reduction of ``a``.

    Returns (U, U_inv, V, V_inv) as lists (``None`` when not tracked).
    """
    U = _identity_lists(rows) if track_u else None
    Ui = _identity_lists(rows) if track_u else None
    V = _identity_lists(cols) if track_v else None
    Vi = _identity_lists(cols) if track_v else None

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        if track_u:
            U[i], U[j] = U[j], U[i]
            for r in Ui:
                r[i], r[j] = r[j], r[i]

    def col_swap(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        if track_v:
            for r in V:
                r[i], r[j] = r[j], r[i]
            Vi[i], Vi[j] = Vi[j], Vi[i]

    def row_addmul(i, t, q):
        # row_i -= q * row_t
        rt = a[t]
        a[i] = [x - q * y for x, y in zip(a[i], rt)]
        if track_u:
            U[i] = [x - q * y for x, y in zip(U[i], U[t])]
            for r in Ui:
                if r[i]:
                    r[t] += q * r[i]

    def col_addmul(j, t, q):
        # col_j -= q * col_t
        for r in a:
            if r[t]:
                r[j] -= q * r[t]
        if track_v:
            for r in V:
                if r[t]:
                    r[j] -= q * r[t]
            Vi[t] = [x + q * y for x, y in zip(Vi[t], Vi[j])]

    t = 0
    n = min(rows, cols)
    while t < n:
        # pivot: smallest nonzero |entry| in the trailing block; a unit stops the search
        best = None
        for i in range(t, rows):
            ri = a[i]
            for j in range(t, cols):
                x = ri[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        if pi != t:
            row_swap(pi, t)
        if pj != t:
            col_swap(pj, t)
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                x = a[i][t]
                if x:
                    q = _round_div(x, p)
                    row_addmul(i, t, q)
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, cols):
                x = a[t][j]
                if x:
                    q = _round_div(x, p)
                    col_addmul(j, t, q)
                    if a[t][j]:
                        dirty = True
            if not dirty:
                break
            # a smaller remainder appeared in row or column t: make it the pivot
            best = (abs(a[t][t]), t, t)
            for i in range(t + 1, rows):
                x = a[i][t]
                if x and abs(x) < best[0]:
                    best = (abs(x), i, t)
            for j in range(t + 1, cols):
                x = a[t][j]
                if x and abs(x) < best[0]:
                    best = (abs(x), t, j)
            _, pi, pj = best
            if pi != t:
                row_swap(pi, t)
            if pj != t:
                col_swap(pj, t)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            if track_u:
                U[t] = [-x for x in U[t]]
                for r in Ui:
                    r[t] = -r[t]
        t += 1

    r = t
    # divisibility chain on the diagonal
    for i in range(r):
        for j in range(i + 1, r):
            di, dj = a[i][i], a[j][j]
            if dj % di == 0:
                continue
            g, x, y = _xgcd(di, dj)
            ag, bg = di // g, dj // g
            # left transform rows i, j by [[x, y], [-bg, ag]]
            if track_u:
                ri, rj = U[i], U[j]
                U[i] = [x * p + y * q for p, q in zip(ri, rj)]
                U[j] = [-bg * p + ag * q for p, q in zip(ri, rj)]
                for row in Ui:
                    ci, cj = row[i], row[j]
                    row[i] = ag * ci + bg * cj
                    row[j] = -y * ci + x * cj
            # right transform columns i, j by [[1, -y*bg], [1, x*ag]]
            if track_v:
                for row in V:
                    ci, cj = row[i], row[j]
                    row[i] = ci + cj
                    row[j] = -y * bg * ci + x * ag * cj
                vi, vj = Vi[i], Vi[j]
                Vi[i] = [x * ag * p + y * bg * q for p, q in zip(vi, vj)]
                Vi[j] = [-p + q for p, q in zip(vi, vj)]
            a[i][i] = g
            a[j][j] = di * dj // g
    return U, Ui, V, Vi


def _round_div(x: int, p: int) -> int:
    q, r = divmod(x, p)
    # r carries the sign of p; stepping q makes |r - p| < |p| / 2
    if 2 * abs(r) > abs(p):
        q += 1
    return q


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def smith(m: IntMatrix | Sequence[Sequence[int]]) -> SmithDecomposition:
    """Smith normal form ``U @ m @ V = S`` with diagonal d1 | d2 | ... >= 0."""
    m = as_matrix(m)
    a = m.to_lists()
    U, Ui, V, Vi = _smith_core(a, m.rows, m.cols, True, True)
    return SmithDecomposition(
        U=IntMatrix(m.rows, m.rows, U),
        S=IntMatrix(m.rows, m.cols, a),
        V=IntMatrix(m.cols, m.cols, V),
        source=m,
        U_inv=IntMatrix(m.rows, m.rows, Ui),
        V_inv=IntMatrix(m.cols, m.cols, Vi),
    )


def invariant_diagonal(m: IntMatrix) -> tuple[int, ...]:
    """Smith diagonal without tracking transforms."""
    a = m.to_lists()
    _smith_core(a, m.rows, m.cols, False, False)
    return tuple(a[i][i] for i in range(min(m.rows, m.cols)))


# ---------------------------------------------------------------------------
# finitely generated abelian groups


@dataclass(frozen=True)
class FgAbGroup:
    """``Z^free_rank (+) Z/d1 (+) ... (+) Z/dk`` with d1 | d2 | ... | dk, all > 1."""

    free_rank: int
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        inv = tuple(self.invariant_factors)
        object.__setattr__(self, "invariant_factors", inv)
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        if any(d <= 1 for d in inv):
            raise ValueError("invariant factors must exceed 1")
        if any(b % a for a, b in zip(inv, inv[1:])):
            raise ValueError("invariant factors must form a divisibility chain")

    @property
    def torsion_order(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.invariant_factors)
        return " (+) ".join(parts) if parts else "0"


def cokernel(m: IntMatrix | Sequence[Sequence[int]]) -> FgAbGroup:
    """``Z^rows / column span(m)``."""
    m = as_matrix(m)
    diag = invariant_diagonal(m)
    nonzero = [d for d in diag if d]
    return FgAbGroup(m.rows - len(nonzero), tuple(d for d in nonzero if d != 1))


# ---------------------------------------------------------------------------
# lattices


def column_hnf(m: IntMatrix) -> IntMatrix:
    """Hermite basis of the lattice spanned by the columns of ``m``.

    The result has full column rank, its columns are in echelon form
    (pivot rows strictly increasing), pivots are positive, and entries to
    the left of a pivot lie in ``[0, pivot)``.  Two matrices span the same
    lattice iff their ``column_hnf`` agree.
    """
    vecs = [list(c) for c in m.columns() if any(c)]
    basis: list[list[int]] = []
    pivots: list[int] = []
    for r in range(m.rows):
        if not vecs:
            break
        active = [v for v in vecs if v[r]]
        rest = [v for v in vecs if not v[r]]
        if not active:
            continue
        while len(active) > 1:
            active.sort(key=lambda v: abs(v[r]))
            p = active[0]
            nxt = [p]
            for v in active[1:]:
                q = v[r] // p[r]
                w = [a - q * b for a, b in zip(v, p)]
                if w[r]:
                    nxt.append(w)
                elif any(w):
                    rest.append(w)
            active = nxt
        p = active[0]
        if p[r] < 0:
            p = [-x for x in p]
        for b in basis:
            q = b[r] // p[r]
            if q:
                for k in range(len(b)):
                    b[k] -= q * p[k]
        basis.append(p)
        pivots.append(r)
        vecs = rest
    return IntMatrix.from_columns(basis, m.rows)


def kernel_basis(m: IntMatrix | Sequence[Sequence[int]]) -> IntMatrix:
    """Basis (as columns) of the integer kernel ``{x : m x = 0}``; always saturated."""
    m = as_matrix(m)
    a = m.to_lists()
    _, _, V, _ = _smith_core(a, m.rows, m.cols, False, True)
    r = sum(1 for i in range(min(m.rows, m.cols)) if a[i][i])
    cols = [[V[i][j] for i in range(m.cols)] for j in range(r, m.cols)]
    raw = IntMatrix.from_columns(cols, m.cols)
    return column_hnf(raw)


def integer_coordinates(basis: IntMatrix, targets: IntMatrix) -> IntMatrix:
    """Solve ``basis @ X = targets`` over the integers.

    ``basis`` must have full column rank.  Raises ``ValueError`` when some
    target column is not in the lattice spanned by ``basis``.
    """
    if basis.rows != targets.rows:
        raise ValueError("row count mismatch")
    sd = smith(basis)
    d = sd.diagonal
    r = sd.rank
    if r != basis.cols:
        raise ValueError("basis must have full column rank")
    ut = sd.U @ targets
    z = []
    for i in range(basis.rows):
        row = ut.row(i)
        if i < r:
            if any(x % d[i] for x in row):
                raise ValueError("target not in lattice")
            z.append([x // d[i] for x in row])
        elif any(row):
            raise ValueError("target not in lattice")
    Z = IntMatrix(r, targets.cols, z)
    return sd.V @ Z


# ---------------------------------------------------------------------------
# rational and modular helpers


def solve_rational(m: IntMatrix | Sequence[Sequence[int]], target: Sequence) -> list[Fraction] | None:
    """Some exact rational solution of ``m x = target``, or ``None`` if inconsistent."""
    m = as_matrix(m)
    if len(target) != m.rows:
        raise ValueError("target length must equal the number of rows")
    aug = [[Fraction(x) for x in m.row(i)] + [Fraction(target[i])] for i in range(m.rows)]
    pivots = []
    r = 0
    for c in range(m.cols):
        piv = next((i for i in range(r, m.rows) if aug[i][c]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(m.rows):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == m.rows:
            break
    if any(aug[i][m.cols] for i in range(r, m.rows)):
        return None
    x = [Fraction(0)] * m.cols
    for i, c in enumerate(pivots):
        x[c] = aug[i][m.cols]
    return x


def rank(m: IntMatrix) -> int:
    return sum(1 for d in invariant_diagonal(m) if d)


def rank_mod_p(m: IntMatrix, p: int) -> int:
    """Rank over the field with ``p`` elements."""
    a = [[x % p for x in m.row(i)] for i in range(m.rows)]
    r = 0
    for c in range(m.cols):
        piv = next((i for i in range(r, m.rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [(x * inv) % p for x in a[r]]
        for i in range(r + 1, m.rows):
            if a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        r += 1
    return r


def det(m: IntMatrix) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    if m.rows != m.cols:
        raise ValueError("determinant needs a square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = m.to_lists()
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if a[i][k]), None)
            if piv is None:
                return 0
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def charpoly(m: IntMatrix) -> list[int]:
    """Characteristic polynomial ``det(xI - m)``, coefficients highest degree first.

    Berkowitz's algorithm: division-free, so it stays in the integers.
    """
    if m.rows != m.cols:
        raise ValueError("characteristic polynomial needs a square matrix")
    n = m.rows
    if n == 0:
        return [1]
    a = m.to_lists()
    # vect holds the coefficients for the leading principal block processed so far
    vect = [1, -a[0][0]]
    for r in range(1, n):
        R = a[r][:r]          # row segment
        C = [a[i][r] for i in range(r)]  # column segment
        Asub = [row[:r] for row in a[:r]]
        # Toeplitz column: 1, -a_rr, -R C, -R A C, -R A^2 C, ...
        col = [1, -a[r][r]]
        v = C
        for _ in range(r):
            col.append(-sum(x * y for x, y in zip(R, v)))
            v = [sum(Asub[i][k] * v[k] for k in range(r)) for i in range(r)]
        # new = Toeplitz(col) @ vect, with len(vect) = r + 1
        new = []
        for i in range(r + 2):
            s = 0
            for j in range(r + 1):
                if 0 <= i - j < len(col):
                    s += col[i - j] * vect[j]
            new.append(s)
        vect = new
    return vect


def charpoly_rational(m: IntMatrix) -> list[int]:
    """Characteristic polynomial via Hessenberg reduction over the rationals.

    Independent of :func:`charpoly`; used as a cross-check.  Returned with
    integer coefficients (denominators cleared, monic polynomials stay monic).
    """
    n = m.rows
    if n == 0:
        return [1]
    h = [[Fraction(x) for x in m.row(i)] for i in range(n)]
    for j in range(n - 2):
        piv = next((i for i in range(j + 1, n) if h[i][j]), None)
        if piv is None:
            continue
        if piv != j + 1:
            h[piv], h[j + 1] = h[j + 1], h[piv]
            for row in h:
                row[piv], row[j + 1] = row[j + 1], row[piv]
        for i in range(j + 2, n):
            if h[i][j]:
                f = h[i][j] / h[j + 1][j]
                h[i] = [x - f * y for x, y in zip(h[i], h[j + 1])]
                for row in h:
                    row[j + 1] += f * row[i]
    # recurrence for characteristic polynomials of leading Hessenberg blocks
    polys: list[list[Fraction]] = [[Fraction(1)]]  # low-degree-first
    for k in range(n):
        p = [Fraction(0)] + polys[k]
        p = [c - h[k][k] * (polys[k][i] if i < len(polys[k]) else 0) for i, c in enumerate(p)]
        prod = Fraction(1)
        for i in range(k - 1, -1, -1):
            prod *= h[i + 1][i]
            coef = prod * h[i][k]
            if coef:
                for t, c in enumerate(polys[i]):
                    p[t] -= coef * c
        polys.append(p)
    out = polys[n][::-1]
    if any(c.denominator != 1 for c in out):
        raise ArithmeticError("non-integral characteristic polynomial for an integer matrix")
    return [int(c) for c in out]


def poly_eval(coeffs: Sequence[int], x):
    acc = 0
    for c in coeffs:
        acc = acc * x + c
    return acc


def poly_to_str(coeffs: Sequence[int], var: str = "x") -> str:
    n = len(coeffs) - 1
    terms = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        e = n - i
        mono = "" if e == 0 else (var if e == 1 else f"{var}^{e}")
        mag = abs(c)
        body = (str(mag) if (mag != 1 or not mono) else "") + ("*" if mag != 1 and mono else "") + mono
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        s += f" {sign} {body}"
    return s


def is_unimodular(m: IntMatrix) -> bool:
    return m.rows == m.cols and abs(det(m)) == 1


def gcd_list(xs: Iterable[int]) -> int:
    g = 0
    for x in xs:
        g = gcd(g, x)
    return g
