"""Smith normal form over exact arbitrary-precision integers.

Partial pivoting by minimal absolute value keeps coefficients tame; all
arithmetic is Python int, so no overflow is possible.  The transforms are
tracked so callers can decide membership of a vector in the integer row
lattice of a matrix (the abelianized-image test).
"""

from __future__ import annotations


def smith_normal_form(rows: list[list[int]]) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Return (S, U, V) with U @ A @ V == S, U, V unimodular, S diagonal
    with nonnegative entries in divisibility order."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    s = [list(r) for r in rows]
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in s:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, k):
        # row dst += k * row src
        s[dst] = [a + k * b for a, b in zip(s[dst], s[src])]
        u[dst] = [a + k * b for a, b in zip(u[dst], u[src])]

    def add_col(dst, src, k):
        for r in s:
            r[dst] += k * r[src]
        for r in v:
            r[dst] += k * r[src]

    def negate_row(i):
        s[i] = [-a for a in s[i]]
        u[i] = [-a for a in u[i]]

    t = 0
    while t < min(m, n):
        # pivot: minimal nonzero absolute value in the trailing submatrix
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                if s[i][j] != 0 and (pivot is None or abs(s[i][j]) < abs(s[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        done = False
        while not done:
            done = True
            for i in range(t + 1, m):
                if s[i][t] != 0:
                    q = s[i][t] // s[t][t]
                    add_row(i, t, -q)
                    if s[i][t] != 0:
                        swap_rows(i, t)
                        done = False
            for j in range(t + 1, n):
                if s[t][j] != 0:
                    q = s[t][j] // s[t][t]
                    add_col(j, t, -q)
                    if s[t][j] != 0:
                        swap_cols(j, t)
                        done = False
        if s[t][t] < 0:
            negate_row(t)
        t += 1

    # enforce the divisibility chain s[i][i] | s[i+1][i+1]
    changed = True
    while changed:
        changed = False
        for i in range(min(m, n) - 1):
            a, b = s[i][i], s[i + 1][i + 1]
            if a != 0 and b % a != 0:
                # fold column i+1 into i, then re-reduce the 2x2 block:
                # diag(a, b) becomes diag(gcd(a, b), ab/gcd(a, b))
                add_col(i, i + 1, 1)
                _rediagonalize_pair(s, u, v, i)
                changed = True
            elif a == 0 and b != 0:
                swap_rows(i, i + 1)
                swap_cols(i, i + 1)
                changed = True
    return s, u, v


def _rediagonalize_pair(s, u, v, t):
    """Clear the 2x2 block at t after a column fold, tracking transforms."""
    m, n = len(s), len(s[0])

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in s:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, k):
        s[dst] = [a + k * b for a, b in zip(s[dst], s[src])]
        u[dst] = [a + k * b for a, b in zip(u[dst], u[src])]

    def add_col(dst, src, k):
        for r in s:
            r[dst] += k * r[src]
        for r in v:
            r[dst] += k * r[src]

    while True:
        if s[t + 1][t] == 0 and s[t][t + 1] == 0:
            break
        if s[t][t] == 0 or (s[t + 1][t] != 0 and abs(s[t + 1][t]) < abs(s[t][t])):
            swap_rows(t, t + 1)
        if s[t][t] == 0 or (s[t][t + 1] != 0 and abs(s[t][t + 1]) < abs(s[t][t])):
            swap_cols(t, t + 1)
        if s[t + 1][t] != 0:
            add_row(t + 1, t, -(s[t + 1][t] // s[t][t]))
        if s[t][t + 1] != 0:
            add_col(t + 1, t, -(s[t][t + 1] // s[t][t]))
    for i in (t, t + 1):
        if i < min(m, n) and s[i][i] < 0:
            s[i] = [-a for a in s[i]]
            u[i] = [-a for a in u[i]]


def diagonal(s: list[list[int]]) -> list[int]:
    return [s[i][i] for i in range(min(len(s), len(s[0]) if s else 0))]


class RowLattice:
    """Integer row span of a matrix, with membership and canonical residues."""

    def __init__(self, rows: list[list[int]], width: int):
        self.width = width
        rows = [list(r) for r in rows if len(r) == width]
        if not rows:
            rows = []
        self._s, self._u, self._v = smith_normal_form(rows) if rows else ([], [], [[int(i == j) for j in range(width)] for i in range(width)])
        self._diag = diagonal(self._s) if rows else []

    def _transformed(self, vec: list[int]) -> list[int]:
        # y = vec . V
        v = self._v
        return [sum(vec[i] * v[i][j] for i in range(self.width)) for j in range(self.width)]

    def contains(self, vec: list[int]) -> bool:
        if len(vec) != self.width:
            raise ValueError("vector width mismatch")
        y = self._transformed(vec)
        for j in range(self.width):
            d = self._diag[j] if j < len(self._diag) else 0
            if d == 0:
                if y[j] != 0:
                    return False
            elif y[j] % d != 0:
                return False
        return True

    def residue(self, vec: list[int]) -> tuple[int, ...]:
        """Canonical coset coordinates; equal residues iff equal cosets."""
        y = self._transformed(vec)
        out = []
        for j in range(self.width):
            d = self._diag[j] if j < len(self._diag) else 0
            out.append(y[j] % d if d else y[j])
        return tuple(out)


def abelian_invariants_of(rows: list[list[int]], width: int) -> tuple[int, list[int]]:
    """(rank, torsion) of Z^width modulo the integer row span of `rows`."""
    rows = [list(r) for r in rows]
    if not rows:
        return width, []
    s, _, _ = smith_normal_form(rows)
    diag = diagonal(s)
    nonzero = [d for d in diag if d != 0]
    rank = width - len(nonzero)
    torsion = [d for d in nonzero if d > 1]
    return rank, torsion
