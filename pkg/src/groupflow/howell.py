"""Row-space canonical forms over Z/m.

The engine behind the group-leak decision: an incremental Howell-style
echelon form of an integer row lattice modulo m.  Pivot values divide m,
pivot rows have zeros left of their pivot, and for every pivot the
annihilator multiple of its row is re-inserted, which saturates the span
so that reduction against the pivots yields a canonical coset
representative.  Membership, solving for coefficients over the original
rows, and invariant factors of the quotient are all supported.
"""

from __future__ import annotations

import math
from typing import Optional, Sequence

import numpy as np


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    """g, s, t with s*a + t*b = g."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def _unit_scale(a: int, m: int) -> tuple[int, int]:
    """A unit u mod m with (u * a) % m == gcd(a, m)."""
    a %= m
    g = math.gcd(a, m)
    b = a // g
    mg = m // g
    u = pow(b, -1, mg)
    while math.gcd(u, m) != 1:
        u += mg
    return u % m, g


class HowellForm:
    """Canonical form of the row space of integer vectors modulo m.

    Rows are added incrementally.  With ``track=True`` every pivot carries
    its expression as a combination of the original input rows, enabling
    ``solve``.
    """

    def __init__(self, ncols: int, modulus: int, track: bool = False):
        if modulus < 1:
            raise ValueError("modulus must be >= 1")
        self.ncols = ncols
        self.m = modulus
        self.track = track
        self.n_input = 0
        self._pivot_at: dict[int, int] = {}       # column -> index into _rows
        self._rows: list[np.ndarray] = []
        self._coeffs: list[np.ndarray] = []

    # -- construction ---------------------------------------------------------

    def add_row(self, row: Sequence[int]) -> None:
        vec = np.asarray(row, dtype=np.int64) % self.m
        if vec.shape != (self.ncols,):
            raise ValueError("row width mismatch")
        coeff = None
        if self.track:
            coeff = np.zeros(self.n_input + 1, dtype=np.int64)
            coeff[self.n_input] = 1
            self._coeffs = [np.resize(c, self.n_input + 1) for c in self._coeffs]
            for c in self._coeffs:
                c[self.n_input] = 0
        self.n_input += 1
        if self.m == 1:
            return
        self._absorb(vec, coeff)

    def _absorb(self, vec: np.ndarray, coeff: Optional[np.ndarray]) -> None:
        queue = [(vec, coeff)]
        while queue:
            v, c = queue.pop()
            nz = np.nonzero(v)[0]
            while nz.size:
                j = int(nz[0])
                pivot_idx = self._pivot_at.get(j)
                if pivot_idx is None:
                    u, g = _unit_scale(int(v[j]), self.m)
                    v = (v * u) % self.m
                    if c is not None:
                        c = (c * u) % self.m
                    self._pivot_at[j] = len(self._rows)
                    self._rows.append(v)
                    self._coeffs.append(c)
                    ann = (v * (self.m // g)) % self.m
                    if ann.any():
                        queue.append((ann, None if c is None else (c * (self.m // g)) % self.m))
                    break
                r = self._rows[pivot_idx]
                cr = self._coeffs[pivot_idx]
                p = int(r[j])
                a = int(v[j])
                if a % p == 0:
                    q = a // p
                    v = (v - q * r) % self.m
                    if c is not None:
                        c = (c - q * _pad(cr, c.size)) % self.m
                else:
                    g, s, t = _egcd(p, a)
                    new = (s * r + t * v) % self.m
                    new_c = None
                    if c is not None:
                        new_c = (s * _pad(cr, c.size) + t * c) % self.m
                    old = (r - (p // g) * new) % self.m
                    old_c = None
                    if c is not None:
                        old_c = (_pad(cr, c.size) - (p // g) * new_c) % self.m
                    v = (v - (a // g) * new) % self.m
                    if c is not None:
                        c = (c - (a // g) * new_c) % self.m
                    self._rows[pivot_idx] = new
                    self._coeffs[pivot_idx] = new_c
                    if old.any():
                        queue.append((old, old_c))
                    ann = (new * (self.m // g)) % self.m
                    if ann.any():
                        queue.append((ann, None if new_c is None else (new_c * (self.m // g)) % self.m))
                nz = np.nonzero(v)[0]

    # -- queries ---------------------------------------------------------------

    def reduce(self, v: Sequence[int]) -> np.ndarray:
        """Canonical representative of v modulo the row space."""
        vec = np.asarray(v, dtype=np.int64) % self.m
        if self.m == 1:
            return np.zeros(self.ncols, dtype=np.int64)
        for j in sorted(self._pivot_at):
            if vec[j]:
                r = self._rows[self._pivot_at[j]]
                q = int(vec[j]) // int(r[j])
                if q:
                    vec = (vec - q * r) % self.m
        return vec

    def contains(self, v: Sequence[int]) -> bool:
        return not self.reduce(v).any()

    def solve(self, v: Sequence[int]) -> Optional[np.ndarray]:
        """Coefficients c over the input rows with sum(c_i * row_i) = v mod m,
        or None when v is outside the span.  Needs track=True."""
        if not self.track:
            raise ValueError("solve needs a coefficient-tracking form")
        vec = np.asarray(v, dtype=np.int64) % self.m
        combo = np.zeros(self.n_input, dtype=np.int64)
        if self.m == 1:
            return combo
        for j in sorted(self._pivot_at):
            if vec[j]:
                idx = self._pivot_at[j]
                r = self._rows[idx]
                q = int(vec[j]) // int(r[j])
                if q:
                    vec = (vec - q * r) % self.m
                    combo = (combo + q * _pad(self._coeffs[idx], self.n_input)) % self.m
        if vec.any():
            return None
        return combo

    def pivot_matrix(self) -> np.ndarray:
        cols = sorted(self._pivot_at)
        if not cols:
            return np.zeros((0, self.ncols), dtype=np.int64)
        return np.stack([self._rows[self._pivot_at[j]] for j in cols])

    def span_size(self) -> int:
        size = 1
        for j, idx in self._pivot_at.items():
            size *= self.m // math.gcd(int(self._rows[idx][j]), self.m)
        return size

    def invariant_factors(self) -> list[int]:
        """Invariant factors d_1 | d_2 | ... of (Z/m)^ncols / rowspace, with
        trivial factors dropped."""
        if self.m == 1:
            return []
        A = self.pivot_matrix() % self.m
        diags = _diagonalize_mod(A.copy(), self.m)
        factors = [self.m] * (self.ncols - len(diags))
        factors += [math.gcd(d, self.m) for d in diags]
        factors = [f for f in factors if f > 1]
        return _divisor_chain(factors)


def _pad(c: Optional[np.ndarray], size: int) -> np.ndarray:
    if c is None:
        return np.zeros(size, dtype=np.int64)
    if c.size == size:
        return c
    out = np.zeros(size, dtype=np.int64)
    out[: c.size] = c
    return out


def _diagonalize_mod(A: np.ndarray, m: int) -> list[int]:
    """Diagonal entries of a row+column reduction of A over Z/m."""
    diags: list[int] = []
    A = A % m
    while A.size and A.any():
        nonzero = np.argwhere(A != 0)
        i0, j0 = min(
            (tuple(int(x) for x in idx) for idx in nonzero),
            key=lambda idx: (math.gcd(int(A[idx[0], idx[1]]), m), idx),
        )
        A[[0, i0], :] = A[[i0, 0], :]
        A[:, [0, j0]] = A[:, [j0, 0]]
        while True:
            for i in range(1, A.shape[0]):
                b = int(A[i, 0])
                if b == 0:
                    continue
                a = int(A[0, 0])
                if b % a == 0:
                    A[i] = (A[i] - (b // a) * A[0]) % m
                else:
                    # determinant-one transform: [[s, t], [-b0, a0]] with
                    # s*a + t*b = g, a0 = a//g, b0 = b//g
                    g, s, t = _egcd(a, b)
                    old = A[0].copy()
                    A[0] = (s * old + t * A[i]) % m
                    A[i] = ((a // g) * A[i] - (b // g) * old) % m
            for j in range(1, A.shape[1]):
                b = int(A[0, j])
                if b == 0:
                    continue
                a = int(A[0, 0])
                if b % a == 0:
                    A[:, j] = (A[:, j] - (b // a) * A[:, 0]) % m
                else:
                    g, s, t = _egcd(a, b)
                    old = A[:, 0].copy()
                    A[:, 0] = (s * old + t * A[:, j]) % m
                    A[:, j] = ((a // g) * A[:, j] - (b // g) * old) % m
            if not A[1:, 0].any() and not A[0, 1:].any():
                break
        diags.append(int(A[0, 0]))
        A = A[1:, 1:]
    return [d for d in diags if d % m != 0]


def _divisor_chain(factors: list[int]) -> list[int]:
    """Normalize a multiset of cyclic orders into the invariant-factor chain."""
    factors = [f for f in factors if f > 1]
    changed = True
    while changed:
        changed = False
        factors.sort()
        for i in range(len(factors)):
            for j in range(i + 1, len(factors)):
                a, b = factors[i], factors[j]
                if b % a != 0:
                    g = math.gcd(a, b)
                    factors[i], factors[j] = g, a * b // g
                    changed = True
        factors = [f for f in factors if f > 1]
    factors.sort()
    return factors


def lattice_normal_form(rows: Sequence[Sequence[int]], modulus: int,
                        ncols: Optional[int] = None) -> HowellForm:
    """Canonical row-space form over Z/modulus with membership and solve."""
    rows = [list(r) for r in rows]
    if ncols is None:
        if not rows:
            raise ValueError("need ncols when no rows are given")
        ncols = len(rows[0])
    form = HowellForm(ncols, modulus, track=True)
    for r in rows:
        form.add_row(r)
    return form
