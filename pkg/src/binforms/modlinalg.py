"""Dense linear algebra over a prime field.

Ranks here certify dimension counts, so everything is exact and
deterministic: pivots are always the first nonzero entry in the current
column, and the row-update loop may be split across threads because each
row's update is independent of the others (the result is bit-identical for
any thread count).

`StreamingEchelon` consumes rows one at a time while maintaining a reduced
echelon basis, so a rank lower bound can be certified without materializing
the full matrix; the reduction step runs on float64 matrices whose entries
are exact integers (products stay below 2**53), which turns the inner loop
into BLAS calls while keeping the arithmetic exact.
"""

from __future__ import annotations

import struct
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Optional, Tuple

import numpy as np


@dataclass
class ModMatrix:
    """Row-major matrix over F_p; entries always reduced into [0, p)."""

    p: int
    data: np.ndarray

    def __init__(self, p: int, data):
        arr = np.asarray(data, dtype=np.int64)
        if arr.ndim != 2:
            raise ValueError("matrix data must be two-dimensional")
        self.p = p
        self.data = arr % p

    @property
    def n_rows(self) -> int:
        return self.data.shape[0]

    @property
    def n_cols(self) -> int:
        return self.data.shape[1]

    @classmethod
    def zeros(cls, p: int, n_rows: int, n_cols: int) -> "ModMatrix":
        return cls(p, np.zeros((n_rows, n_cols), dtype=np.int64))

    @classmethod
    def from_rows(cls, p: int, rows: Iterable) -> "ModMatrix":
        return cls(p, np.array([list(r) for r in rows], dtype=np.int64))

    def transpose(self) -> "ModMatrix":
        return ModMatrix(self.p, self.data.T.copy())


def _eliminate(M: np.ndarray, p: int, threads: int = 1) -> Tuple[np.ndarray, List[int]]:
    """In-place forward elimination; returns (matrix, pivot column list)."""
    n_rows, n_cols = M.shape
    pivots: List[int] = []
    r = 0
    pool = ThreadPoolExecutor(threads) if threads > 1 else None
    try:
        for c in range(n_cols):
            if r == n_rows:
                break
            col = M[r:, c]
            nz = np.nonzero(col)[0]
            if nz.size == 0:
                continue
            piv = r + int(nz[0])
            if piv != r:
                M[[r, piv]] = M[[piv, r]]
            inv = pow(int(M[r, c]), -1, p)
            M[r] = M[r] * inv % p
            below = M[r + 1 :]
            factors = below[:, c]
            nzr = np.nonzero(factors)[0]
            if nzr.size:
                if pool is None or nzr.size < 4 * threads:
                    below[nzr] = (below[nzr] - np.outer(factors[nzr], M[r])) % p
                else:
                    chunks = np.array_split(nzr, threads)
                    row = M[r]

                    def update(idx):
                        below[idx] = (below[idx] - np.outer(factors[idx], row)) % p

                    list(pool.map(update, [ch for ch in chunks if ch.size]))
            pivots.append(c)
            r += 1
    finally:
        if pool is not None:
            pool.shutdown()
    return M, pivots


def rank(m: ModMatrix, threads: int = 1) -> int:
    """Exact rank over F_p (fraction-free elimination, first-nonzero pivots)."""
    if m.n_rows == 0 or m.n_cols == 0:
        return 0
    _, pivots = _eliminate(m.data.copy(), m.p, threads)
    return len(pivots)


def nullspace(m: ModMatrix) -> List[Tuple[int, ...]]:
    """Basis of the left nullspace {v : v M = 0}, reduced echelon-normalized."""
    p = m.p
    if m.n_rows == 0:
        return []
    aug = np.concatenate(
        [m.data.copy(), np.eye(m.n_rows, dtype=np.int64)], axis=1
    )
    reduced, _ = _eliminate(aug, p, 1)
    relations = [
        row[m.n_cols :] for row in reduced if not row[: m.n_cols].any()
    ]
    if not relations:
        return []
    rel = np.array(relations, dtype=np.int64)
    rel, _ = _eliminate(rel, p, 1)
    # Back-substitute to reduced row echelon form.
    rows = [r for r in rel if r.any()]
    for i in range(len(rows) - 1, -1, -1):
        lead = int(np.nonzero(rows[i])[0][0])
        for j in range(i):
            f = int(rows[j][lead])
            if f:
                rows[j] = (rows[j] - f * rows[i]) % p
    return [tuple(int(x) for x in r) for r in rows]


class StreamingEchelon:
    """Incrementally reduced echelon basis over F_p with float64 kernels.

    Exactness bound: every inner product has at most rank <= n_cols terms,
    each below p**2, and must stay below 2**53; the constructor enforces it.

    The basis lives in two tiers so the hot path is matrix products rather
    than per-row updates: a `settled` tier in reduced echelon form, and a
    small `fresh` tier of recently inserted rows (reduced against settled
    and among themselves).  When fresh fills up it is folded into settled
    with a single multiply.  Reducing an incoming row therefore takes two
    products, and everything stays exact integers in float64.
    """

    _FOLD = 128

    def __init__(self, p: int, n_cols: int):
        if n_cols * (p - 1) ** 2 >= 2 ** 53:
            raise ValueError("p**2 * n_cols exceeds the exact float64 range")
        self.p = p
        self.n_cols = n_cols
        self._settled = np.zeros((0, n_cols), dtype=np.float64)
        self._spiv: List[int] = []
        self._fresh = np.zeros((self._FOLD, n_cols), dtype=np.float64)
        self._nfresh = 0
        self._fpiv: List[int] = []

    @property
    def rank(self) -> int:
        return len(self._spiv) + self._nfresh

    def _fold(self) -> None:
        """Merge the fresh tier into the settled reduced echelon basis."""
        if not self._nfresh:
            return
        fresh = self._fresh[: self._nfresh]
        if self._settled.shape[0]:
            coeff = self._settled[:, self._fpiv]
            if coeff.any():
                self._settled = (self._settled - coeff @ fresh) % self.p
            self._settled = np.concatenate([self._settled, fresh])
        else:
            self._settled = fresh.copy()
        self._spiv.extend(self._fpiv)
        self._fpiv.clear()
        self._nfresh = 0

    def _reduce_block(self, B: np.ndarray) -> np.ndarray:
        if self._spiv:
            B = (B - B[:, self._spiv] @ self._settled) % self.p
        if self._nfresh:
            B = (B - B[:, self._fpiv] @ self._fresh[: self._nfresh]) % self.p
        return B

    def reduce(self, vec) -> np.ndarray:
        """Residue of `vec` modulo the current row space."""
        v = np.asarray(vec, dtype=np.float64) % self.p
        if v.shape != (self.n_cols,):
            raise ValueError(f"row length {v.shape} != ({self.n_cols},)")
        return self._reduce_block(v.reshape(1, -1))[0]

    def _insert_reduced(self, v: np.ndarray) -> bool:
        nz = np.nonzero(v)[0]
        if nz.size == 0:
            return False
        j = int(nz[0])
        v = v * pow(int(v[j]), -1, self.p) % self.p
        # Keep the fresh tier reduced against the new pivot.
        fresh = self._fresh[: self._nfresh]
        if self._nfresh:
            col = fresh[:, j]
            nzr = np.nonzero(col)[0]
            if nzr.size:
                fresh[nzr] = (fresh[nzr] - np.outer(col[nzr], v)) % self.p
        self._fresh[self._nfresh] = v
        self._nfresh += 1
        self._fpiv.append(j)
        return True

    def add_row(self, vec) -> bool:
        """Insert a row; True if it increased the rank."""
        added = self._insert_reduced(self.reduce(vec))
        if self._nfresh == self._FOLD:
            self._fold()
        return added

    def add_rows(self, block, stop_at: Optional[int] = None) -> int:
        """Insert a block of rows (chunked BLAS reductions); rows consumed."""
        B = np.asarray(block, dtype=np.float64) % self.p
        if B.ndim != 2 or B.shape[1] != self.n_cols:
            raise ValueError("block shape mismatch")
        consumed = 0
        i = 0
        while i < B.shape[0]:
            if stop_at is not None and self.rank >= stop_at:
                break
            # Chunk so a fold can only happen between chunks; then the new
            # pivots of the current chunk are a suffix of the fresh tier.
            cap = self._FOLD - self._nfresh
            chunk = self._reduce_block(B[i : i + cap])
            fresh_start = self._nfresh
            for v in chunk:
                if stop_at is not None and self.rank >= stop_at:
                    break
                new_piv = self._fpiv[fresh_start:]
                if new_piv:
                    coeffs = v[new_piv]
                    if np.any(coeffs):
                        v = (v - coeffs @ self._fresh[fresh_start : self._nfresh]) % self.p
                self._insert_reduced(v)
                consumed += 1
                i += 1
            if self._nfresh == self._FOLD:
                self._fold()
        return consumed

    def basis(self) -> np.ndarray:
        self._fold()
        return self._settled.astype(np.int64)


@dataclass(frozen=True)
class StreamRankResult:
    achieved_rank: int
    rows_consumed: int


def rank_streaming(
    rows: Iterator,
    n_cols: int,
    p: int,
    target_rank: int,
    max_rows: Optional[int] = None,
) -> StreamRankResult:
    """Consume rows until the target rank is certified or rows run out."""
    ech = StreamingEchelon(p, n_cols)
    consumed = 0
    for row in rows:
        if max_rows is not None and consumed >= max_rows:
            break
        ech.add_row(row)
        consumed += 1
        if ech.rank >= target_rank:
            break
    return StreamRankResult(ech.rank, consumed)


# ---------------------------------------------------------------------------
# Binary dump (little-endian: u64 p, n_rows, n_cols; then u32 entries).

def dump_matrix(m: ModMatrix, path: str) -> None:
    with open(path, "wb") as fh:
        fh.write(struct.pack("<QQQ", m.p, m.n_rows, m.n_cols))
        fh.write(m.data.astype("<u4").tobytes())


def load_matrix(path: str) -> ModMatrix:
    with open(path, "rb") as fh:
        p, n_rows, n_cols = struct.unpack("<QQQ", fh.read(24))
        data = np.frombuffer(fh.read(4 * n_rows * n_cols), dtype="<u4")
    return ModMatrix(p, data.reshape(n_rows, n_cols).astype(np.int64))
