"""Exact integer linear algebra.

``IntMatrix`` is an immutable sparse matrix over Python integers (stored by
column).  Two reduction engines live here:

* :func:`smith_normal_form` -- dense, returns the unimodular transforms.
* :func:`invariant_factors` / :func:`rank_mod_p` -- sparse elimination on
  unit pivots with a dense Smith normal form on whatever is left.  This is
  what the homology code uses; simplicial boundary matrices almost always
  reduce completely on +-1 pivots.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    data: tuple  # data[j] = ((i, value), ...) sorted by i, values nonzero

    # -- construction ------------------------------------------------------
    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, ((),) * cols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(((j, 1),) for j in range(n)))

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence) -> "IntMatrix":
        """Build from a list of ``{row: value}`` dicts, one per column."""
        data = []
        for col in columns:
            items = col.items() if hasattr(col, "items") else col
            entry = tuple(sorted((int(i), int(v)) for i, v in items if v))
            if entry and not (0 <= entry[0][0] and entry[-1][0] < rows):
                raise IndexError("row index out of range")
            data.append(entry)
        return cls(rows, len(data), tuple(data))

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]], ncols: int | None = None) -> "IntMatrix":
        m = len(rows)
        n = len(rows[0]) if m else (ncols or 0)
        cols = [{} for _ in range(n)]
        for i, row in enumerate(rows):
            if len(row) != n:
                raise ValueError("ragged matrix")
            for j, v in enumerate(row):
                if v:
                    cols[j][i] = int(v)
        return cls.from_columns(m, cols)

    # -- access --------------------------------------------------------------
    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def column(self, j: int) -> dict:
        return dict(self.data[j])

    def to_dense(self) -> list:
        out = [[0] * self.cols for _ in range(self.rows)]
        for j, col in enumerate(self.data):
            for i, v in col:
                out[i][j] = v
        return out

    def entry(self, i: int, j: int) -> int:
        return self.column(j).get(i, 0)

    def nnz(self) -> int:
        return sum(len(c) for c in self.data)

    def is_zero(self) -> bool:
        return not any(self.data)

    def row_dicts(self) -> list:
        rows = [dict() for _ in range(self.rows)]
        for j, col in enumerate(self.data):
            for i, v in col:
                rows[i][j] = v
        return rows

    # -- arithmetic ------------------------------------------------------------
    @property
    def T(self) -> "IntMatrix":
        return IntMatrix.from_columns(self.cols, self.row_dicts())

    def transpose(self) -> "IntMatrix":
        return self.T

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        mine = [dict(c) for c in self.data]
        out = []
        for col in other.data:
            acc: dict = {}
            for k, b in col:
                for i, a in mine[k].items():
                    acc[i] = acc.get(i, 0) + a * b
            out.append(acc)
        return IntMatrix.from_columns(self.rows, out)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        out = []
        for a, b in zip(self.data, other.data):
            acc = dict(a)
            for i, v in b:
                acc[i] = acc.get(i, 0) + v
            out.append(acc)
        return IntMatrix.from_columns(self.rows, out)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(tuple((i, -v) for i, v in c) for c in self.data))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def select(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "IntMatrix":
        """Submatrix on the given rows and columns (in the given order)."""
        pos = {i: k for k, i in enumerate(row_idx)}
        cols = []
        for j in col_idx:
            cols.append({pos[i]: v for i, v in self.data[j] if i in pos})
        return IntMatrix.from_columns(len(row_idx), cols)


def as_matrix(M) -> IntMatrix:
    return M if isinstance(M, IntMatrix) else IntMatrix.from_dense(M)


# -- determinants -----------------------------------------------------------------

def determinant(M) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    A = as_matrix(M).to_dense()
    n = len(A)
    if any(len(r) != n for r in A):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


# -- dense Smith normal form ---------------------------------------------------------

def _snf_dense(A: list, m: int, n: int, U: list | None, V: list | None) -> None:
    """In-place Smith reduction of ``A``; mirrors row ops on U and column ops on V."""

    def swap_rows(i, k):
        A[i], A[k] = A[k], A[i]
        if U is not None:
            U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for row in A:
            row[j], row[k] = row[k], row[j]
        if V is not None:
            for row in V:
                row[j], row[k] = row[k], row[j]

    def add_row(dst, src, q):  # row_dst -= q * row_src
        rs, rd = A[src], A[dst]
        for j in range(n):
            if rs[j]:
                rd[j] -= q * rs[j]
        if U is not None:
            us, ud = U[src], U[dst]
            for j in range(len(us)):
                if us[j]:
                    ud[j] -= q * us[j]

    def add_col(dst, src, q):  # col_dst -= q * col_src
        for row in A:
            if row[src]:
                row[dst] -= q * row[src]
        if V is not None:
            for row in V:
                if row[src]:
                    row[dst] -= q * row[src]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            return
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, A[i][t] // p)
                    dirty = dirty or A[i][t] != 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, A[t][j] // p)
                    dirty = dirty or A[t][j] != 0
            if dirty:
                # bring the smallest remainder in row/column t to the pivot
                cands = [(abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]]
                cands += [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
                _, i, j = min(cands)
                if j == t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(
                (i for i in range(t + 1, m) if any(A[i][j] % p for j in range(t + 1, n))),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, -1)
        if A[t][t] < 0:
            A[t] = [-v for v in A[t]]
            if U is not None:
                U[t] = [-v for v in U[t]]


def smith_normal_form(M) -> tuple:
    """Return ``(U, D, V)`` with ``U @ M @ V == D``.

    ``D`` is diagonal with nonnegative entries ``d1 | d2 | ...`` and ``U``,
    ``V`` are unimodular.  Pivots are chosen by minimal absolute value,
    which keeps entry growth in check on boundary matrices.
    """
    M = as_matrix(M)
    m, n = M.shape
    A = M.to_dense()
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    _snf_dense(A, m, n, U, V)
    return (
        IntMatrix.from_dense(U, m),
        IntMatrix.from_dense(A, n),
        IntMatrix.from_dense(V, n),
    )


def diagonal(D: IntMatrix) -> list:
    return [D.entry(k, k) for k in range(min(D.shape))]


# -- sparse elimination ----------------------------------------------------------------

def _eliminate(M: IntMatrix, p: int | None):
    """Pivot on units (any nonzero entry when ``p`` is a prime).

    Returns ``(pivots, rest_rows)`` where ``rest_rows`` is the row-dict form
    of the part that could not be reduced.
    """
    rows = {}
    colidx: dict = {}
    for j, col in enumerate(M.data):
        for i, v in col:
            if p is not None:
                v %= p
                if not v:
                    continue
            rows.setdefault(i, {})[j] = v
            colidx.setdefault(j, set()).add(i)

    def is_unit(v):
        return v != 0 if p is not None else abs(v) == 1

    pivots = 0
    progress = True
    while progress:
        progress = False
        for c in sorted(colidx, key=lambda c: len(colidx[c])):
            owners = colidx.get(c)
            if not owners:
                colidx.pop(c, None)
                continue
            r = min(
                (i for i in owners if is_unit(rows[i][c])),
                key=lambda i: (len(rows[i]), i),
                default=None,
            )
            if r is None:
                continue
            R = rows.pop(r)
            u = R[c]
            inv = pow(u, -1, p) if p is not None else u
            for i in owners - {r}:
                row = rows[i]
                f = row[c] * inv
                for k, v in R.items():
                    nv = row.get(k, 0) - f * v
                    if p is not None:
                        nv %= p
                    if nv:
                        if k not in row:
                            colidx.setdefault(k, set()).add(i)
                        row[k] = nv
                    else:
                        row.pop(k, None)
                        colidx[k].discard(i)
                if not row:
                    del rows[i]
            for k in R:
                colidx[k].discard(r)
            colidx.pop(c, None)
            pivots += 1
            progress = True
    return pivots, rows


def invariant_factors(M) -> list:
    """Nonzero invariant factors of an integer matrix, in divisibility order."""
    M = as_matrix(M)
    units, rest = _eliminate(M, None)
    factors = [1] * units
    if rest:
        cols = sorted({j for row in rest.values() for j in row})
        cpos = {j: k for k, j in enumerate(cols)}
        A = []
        for row in rest.values():
            line = [0] * len(cols)
            for j, v in row.items():
                line[cpos[j]] = v
            A.append(line)
        _snf_dense(A, len(A), len(cols), None, None)
        factors += [A[k][k] for k in range(min(len(A), len(cols))) if A[k][k]]
    return factors


def rank(M) -> int:
    return len(invariant_factors(M))


def rank_mod_p(M, p: int) -> int:
    M = as_matrix(M)
    pivots, _ = _eliminate(M, p)
    return pivots


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


def divisibility_chain(values: Iterable[int]) -> bool:
    vals = list(values)
    return all(b % a == 0 for a, b in zip(vals, vals[1:]) if a) and all(
        v == 0 for a, v in zip(vals, vals[1:]) if a == 0
    )


def gcd_all(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g
