"""Generic linear codes: matrices, syndromes, decoding, exact distance.

Everything here works at desk scale (lengths in the tens, exhaustive
enumeration bounded by an explicit budget) and is meant to serve both as
the production decode path and as the brute-force oracle that validates
the masking constructions.

Decoding failure is an explicit result (``None``), not an exception, so
simulation campaigns can count failures cheaply.  When the caller asks
for a radius t beyond the code's true capability, syndromes reachable
from two error patterns of equal weight are marked ambiguous and decode
as failures rather than an arbitrary pick.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from pathlib import Path

import numpy as np

from .alphabet import Alphabet, make_field

ENUM_BUDGET = 10_000_000  # max codewords a brute-force enumeration may touch
TABLE_BUDGET = 1 << 21    # max syndrome-table entries (~256 MiB at desk-scale n)


def as_word(values, alphabet: Alphabet, n: int | None = None) -> np.ndarray:
    """Validate and convert to an int64 symbol vector."""
    w = np.asarray(values, dtype=np.int64)
    if w.ndim != 1:
        raise ValueError("expected a 1-D symbol vector")
    if n is not None and w.size != n:
        raise ValueError(f"expected length {n}, got {w.size}")
    if w.size and (w.min() < 0 or w.max() >= alphabet.q):
        raise ValueError(f"symbols out of range for {alphabet!r}")
    return w


def mat_mul(a: np.ndarray, b: np.ndarray, alphabet: Alphabet) -> np.ndarray:
    """Matrix product over the alphabet (fast path for m == 1)."""
    a = np.atleast_2d(np.asarray(a, dtype=np.int64))
    b = np.atleast_2d(np.asarray(b, dtype=np.int64))
    if alphabet.m == 1:
        return (a @ b) % alphabet.q
    add_t, mul_t = alphabet.add_table(), alphabet.mul_table()
    acc = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for i in range(a.shape[1]):
        acc = add_t[acc, mul_t[a[:, i][:, None], b[i, :][None, :]]]
    return acc


def rref(matrix: np.ndarray, alphabet: Alphabet) -> tuple[np.ndarray, tuple[int, ...]]:
    """Reduced row echelon form over a field; returns (R, pivot columns)."""
    if not alphabet.is_field:
        raise ValueError("row reduction requires a field alphabet")
    R = np.array(matrix, dtype=np.int64) % alphabet.q if alphabet.m == 1 else np.array(matrix, dtype=np.int64)
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if R[i, c] != 0), None)
        if pivot is None:
            continue
        R[[r, pivot]] = R[[pivot, r]]
        inv = alphabet.inv(int(R[r, c]))
        if alphabet.m == 1:
            R[r] = R[r] * inv % alphabet.q
            for i in range(rows):
                if i != r and R[i, c]:
                    R[i] = (R[i] - R[i, c] * R[r]) % alphabet.q
        else:
            R[r] = [alphabet.mul(int(x), inv) for x in R[r]]
            for i in range(rows):
                if i != r and R[i, c]:
                    f = int(R[i, c])
                    R[i] = [
                        alphabet.sub(int(x), alphabet.mul(f, int(y)))
                        for x, y in zip(R[i], R[r])
                    ]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return R, tuple(pivots)


def parity_check_matrix(generator: np.ndarray, alphabet: Alphabet) -> np.ndarray:
    """An (n-k) x n matrix H with G H^T = 0, in systematic-complement form."""
    G = np.asarray(generator, dtype=np.int64)
    k, n = G.shape
    R, pivots = rref(G, alphabet)
    if len(pivots) != k:
        raise ValueError("generator matrix is not full rank")
    nonpivots = [c for c in range(n) if c not in pivots]
    H = np.zeros((n - k, n), dtype=np.int64)
    for t, c in enumerate(nonpivots):
        H[t, c] = 1
        for i, pc in enumerate(pivots):
            H[t, pc] = alphabet.neg(int(R[i, c]))
    return H


class LinearCode:
    """An [n, k] linear code over a field, held as generator G and check H."""

    def __init__(self, generator, alphabet: Alphabet, parity_check=None):
        if not alphabet.is_field:
            raise ValueError("linear codes require a field alphabet")
        G = np.asarray(generator, dtype=np.int64)
        if G.ndim != 2:
            raise ValueError("generator must be a 2-D matrix")
        if G.size and (G.min() < 0 or G.max() >= alphabet.q):
            raise ValueError(f"generator entries out of range for {alphabet!r}")
        self.alphabet = alphabet
        self.G = G
        self.k, self.n = G.shape
        if parity_check is None:
            self.H = parity_check_matrix(G, alphabet)
        else:
            self.H = np.asarray(parity_check, dtype=np.int64)
            if self.H.shape != (self.n - self.k, self.n):
                raise ValueError("parity check has wrong shape")
            if mat_mul(self.G, self.H.T, alphabet).any():
                raise ValueError("G H^T != 0")
            _, hp = rref(self.H, alphabet)
            if len(hp) != self.n - self.k:
                raise ValueError("parity check is not full rank")
        self._tables: dict[int, dict[bytes, tuple[int, np.ndarray | None]]] = {}

    def __repr__(self) -> str:
        return f"LinearCode([{self.n}, {self.k}] over {self.alphabet!r})"

    def encode(self, message) -> np.ndarray:
        m = as_word(message, self.alphabet, self.k)
        return mat_mul(m[None, :], self.G, self.alphabet)[0]

    def syndrome(self, word) -> np.ndarray:
        y = as_word(word, self.alphabet, self.n)
        if self.H.shape[0] == 0:
            return np.zeros(0, dtype=np.int64)
        return mat_mul(y[None, :], self.H.T, self.alphabet)[0]

    def is_codeword(self, word) -> bool:
        return not self.syndrome(word).any()

    # -- bounded-distance decoding -----------------------------------------

    def _pattern_count(self, t: int) -> int:
        from math import comb

        return sum(comb(self.n, w) * (self.alphabet.q - 1) ** w for w in range(t + 1))

    def _syndrome_table(self, t: int) -> dict[bytes, tuple[int, np.ndarray | None]]:
        if t not in self._tables:
            q, n = self.alphabet.q, self.n
            table: dict[bytes, tuple[int, np.ndarray | None]] = {}
            for w in range(t + 1):
                for pos in combinations(range(n), w):
                    for vals in product(range(1, q), repeat=w):
                        e = np.zeros(n, dtype=np.int64)
                        e[list(pos)] = vals
                        key = self.syndrome(e).tobytes()
                        prev = table.get(key)
                        if prev is None:
                            table[key] = (w, e)
                        elif prev[0] == w:
                            table[key] = (w, None)  # tie at equal weight
            self._tables[t] = table
        return self._tables[t]

    def decode_bounded(
        self,
        word,
        t: int,
        *,
        table_budget: int = TABLE_BUDGET,
        enum_budget: int = ENUM_BUDGET,
    ) -> np.ndarray | None:
        """Unique codeword within Hamming distance t of word, or None.

        Uses a precomputed syndrome table when q^(n-k) fits the budget,
        otherwise falls back to nearest-codeword enumeration.
        """
        if t < 0:
            raise ValueError("t must be >= 0")
        y = as_word(word, self.alphabet, self.n)
        q = self.alphabet.q
        if q ** (self.n - self.k) <= table_budget and self._pattern_count(t) <= table_budget:
            entry = self._syndrome_table(t).get(self.syndrome(y).tobytes())
            if entry is None or entry[1] is None:
                return None
            if self.alphabet.m == 1:
                return (y - entry[1]) % q
            return np.array(
                [self.alphabet.sub(int(a), int(b)) for a, b in zip(y, entry[1])],
                dtype=np.int64,
            )
        if q ** self.k > enum_budget:
            raise ValueError("code too large for both syndrome table and enumeration")
        best_d = self.n + 1
        best_cw = None
        best_count = 0
        for chunk in _codeword_chunks(self, enum_budget):
            dist = (chunk != y[None, :]).sum(axis=1)
            dmin = int(dist.min())
            if dmin < best_d:
                best_d = dmin
                best_count = int((dist == dmin).sum())
                best_cw = chunk[int(dist.argmin())].copy()
            elif dmin == best_d:
                best_count += int((dist == dmin).sum())
        if best_d > t or best_count != 1:
            return None
        return best_cw


def _message_block(start: int, stop: int, k: int, q: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((idx.size, k), dtype=np.int64)
    for i in range(k):
        out[:, i] = idx % q
        idx = idx // q
    return out


def _codeword_chunks(code: LinearCode, budget: int, chunk: int = 8192):
    q, k = code.alphabet.q, code.k
    total = q ** k
    if total > budget:
        raise ValueError(f"enumeration of {total} codewords exceeds budget {budget}")
    for start in range(0, total, chunk):
        stop = min(start + chunk, total)
        yield mat_mul(_message_block(start, stop, k, q), code.G, code.alphabet)


@dataclass(frozen=True)
class DistanceReport:
    """Exact minimum distance, optional BCH lower bound, and t capability."""

    d: int
    bch_lower_bound: int | None
    t: int


def min_distance(code: LinearCode, *, budget: int = ENUM_BUDGET, bch_lower_bound: int | None = None) -> DistanceReport:
    """Exact minimum Hamming weight over all q^k - 1 nonzero codewords."""
    best = code.n
    first = True
    for chunk in _codeword_chunks(code, budget):
        w = np.count_nonzero(chunk, axis=1)
        if first:
            w = w[1:]  # skip the zero codeword
            first = False
        if w.size:
            best = min(best, int(w.min()))
    return DistanceReport(d=best, bch_lower_bound=bch_lower_bound, t=(best - 1) // 2)


def systematize(generator, alphabet: Alphabet) -> tuple[np.ndarray, tuple[int, ...]]:
    """Equivalent generator of the form [0 | I | P] stacked over all-ones.

    Returns the new k x n matrix together with the column permutation that
    was applied (entry j gives the original index of new column j).  The
    input's row space must contain the all-ones vector.
    """
    G = np.asarray(generator, dtype=np.int64)
    k, n = G.shape
    R, pivots = rref(G, alphabet)
    if len(pivots) != k:
        raise ValueError("generator matrix is not full rank")
    perm = tuple(pivots) + tuple(c for c in range(n) if c not in pivots)
    Rp = R[:, perm]
    ones = np.ones(n, dtype=np.int64)
    if (mat_mul(ones[None, :k], Rp, alphabet)[0] != ones).any():
        raise ValueError("the all-ones vector is not in the code")
    out = np.vstack([Rp[1:], ones[None, :]])
    return out, perm


# ---------------------------------------------------------------------------
# plain-text matrix files: header "n k q", then one generator row per line
# ---------------------------------------------------------------------------

def write_generator(path, code: LinearCode) -> None:
    lines = [f"{code.n} {code.k} {code.alphabet.q}"]
    lines += [" ".join(str(int(x)) for x in row) for row in code.G]
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii")


def read_generator(path) -> LinearCode:
    text = Path(path).read_text(encoding="ascii").split("\n")
    rows = [ln for ln in text if ln.strip()]
    try:
        n, k, q = (int(x) for x in rows[0].split())
    except (ValueError, IndexError):
        raise ValueError("matrix file must start with a header line 'n k q'") from None
    # q must be a prime power; recover (p, m).
    p = next((f for f in range(2, q + 1) if q % f == 0), q)
    m = 0
    qq = q
    while qq % p == 0 and qq > 1:
        qq //= p
        m += 1
    if qq != 1:
        raise ValueError(f"q = {q} in matrix file is not a prime power")
    G = np.array([[int(x) for x in ln.split()] for ln in rows[1:]], dtype=np.int64)
    if G.shape != (k, n):
        raise ValueError(f"matrix body {G.shape} does not match header ({k}, {n})")
    return LinearCode(G, make_field(p, m))
