"""Masking codes for partially-stuck-at-1 cells with error correction.

A cell that is partially stuck at level 1 can store any value >= 1 but
not 0.  All constructions here pick the codeword inside a coset of a
small masking code so that every stuck position ends up nonzero, while an
outer error-correcting structure absorbs up to t substitution errors on
read-back.

Three constructions are provided:

* :class:`PsmcMatrixCode` stacks an ECC generator G1 = [0 | I | P] on top
  of the all-ones row.  A single redundancy symbol masks any u < q stuck
  cells: the values of the intermediate word at u < q positions cannot
  cover the whole alphabet, so adding a suitable constant to every cell
  avoids 0 everywhere needed.
* :class:`PsmcCyclicCode` is the partitioned cyclic variant: codewords
  are m(x) g1(x) + z0 g0(x) with g0 = 1 + x + ... + x^(n-1) (whose
  coefficient vector is the all-ones word) and g1 a degree-r divisor of
  g0.  The BCH bound of g1's defining set bounds the error correction.
* :class:`PsmcExtendedCode` replaces the all-ones row with a systematic
  l x n parity-check matrix H0 of an [n, n-l, d0] code, which pushes the
  guaranteed number of maskable cells up to q + d0 - 3 at the cost of l
  masking symbols.

Guaranteed mode rejects u above the construction's guarantee up front;
callers may opt into probabilistic mode, where :class:`MaskingImpossible`
is a legal outcome whose likelihood for uniform messages is
:func:`masking_probability`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb, floor, log

import numpy as np

from .alphabet import Alphabet, Polynomial
from .cyclic import CyclicCodeSpec, build_cyclic_code
from .linear import ENUM_BUDGET, LinearCode, as_word, mat_mul, min_distance, parity_check_matrix


class MaskingImpossible(Exception):
    """Raised when no masking value keeps every stuck cell nonzero."""


class DecodingFailure(Exception):
    """Raised when bounded-distance decoding cannot identify a codeword."""


@dataclass(frozen=True)
class StuckCellProfile:
    """Positions of partially stuck cells; all levels are fixed at 1.

    The level field exists for forward compatibility, but only level-1
    profiles are accepted.
    """

    positions: tuple[int, ...]
    levels: tuple[int, ...] = ()

    def __post_init__(self):
        pos = tuple(sorted(int(p) for p in self.positions))
        if len(set(pos)) != len(pos) or (pos and pos[0] < 0):
            raise ValueError("stuck positions must be distinct and non-negative")
        object.__setattr__(self, "positions", pos)
        levels = self.levels or (1,) * len(pos)
        if len(levels) != len(pos) or any(lv != 1 for lv in levels):
            raise ValueError("only partially-stuck-at-1 profiles are supported")
        object.__setattr__(self, "levels", tuple(levels))

    @property
    def u(self) -> int:
        return len(self.positions)

    def check_length(self, n: int) -> None:
        if self.positions and self.positions[-1] >= n:
            raise ValueError(f"stuck position {self.positions[-1]} outside word length {n}")


def _coerce_profile(profile) -> StuckCellProfile:
    if isinstance(profile, StuckCellProfile):
        return profile
    return StuckCellProfile(tuple(profile))


@dataclass(frozen=True)
class MaskingOutcome:
    """Encoder output: the stored word, the masking value(s), and v."""

    codeword: np.ndarray
    z: tuple[int, ...]
    v: int | None

    def __post_init__(self):
        object.__setattr__(self, "codeword", np.asarray(self.codeword, dtype=np.int64))


def smallest_avoiding(values, q: int) -> int | None:
    """Smallest symbol of [0, q) not present in values, or None."""
    taken = set(int(v) for v in values)
    for v in range(q):
        if v not in taken:
            return v
    return None


def _derive_t(code: LinearCode, t: int | None, budget: int = ENUM_BUDGET) -> int:
    if t is not None:
        return int(t)
    return min_distance(code, budget=budget).t


# ---------------------------------------------------------------------------
# generator-matrix construction (single masking symbol, u < q)
# ---------------------------------------------------------------------------

class PsmcMatrixCode:
    """Masking code with generator [G1 ; all-ones], G1 = [0 | I_k1 | P].

    Stores k1 = n - 1 - r information symbols; masks any u <= min(n, q-1)
    partially stuck cells with one redundancy symbol; corrects t errors
    through the stacked [n, k1+1] code.  If ``t`` is omitted it is derived
    from the exact minimum distance of the stacked code.
    """

    def __init__(self, n: int, alphabet: Alphabet, ecc_columns=None, *, t: int | None = None):
        if not alphabet.is_field:
            raise ValueError("construction requires a field alphabet")
        P = None if ecc_columns is None else np.asarray(ecc_columns, dtype=np.int64)
        r = 0 if P is None else P.shape[1]
        k1 = n - 1 - r
        if k1 < 1:
            raise ValueError("no room for information symbols")
        if P is not None and P.shape[0] != k1:
            raise ValueError(f"ecc_columns must have {k1} rows, got {P.shape[0]}")
        self.n = n
        self.alphabet = alphabet
        self.r = r
        self.k1 = k1
        blocks = [np.zeros((k1, 1), dtype=np.int64), np.eye(k1, dtype=np.int64)]
        if P is not None:
            blocks.append(P % alphabet.q if alphabet.m == 1 else P)
        self.G1 = np.hstack(blocks)
        self.G0 = np.ones(n, dtype=np.int64)
        self.base = LinearCode(np.vstack([self.G1, self.G0[None, :]]), alphabet)
        self.t = _derive_t(self.base, t)

    @classmethod
    def from_linear(cls, code: LinearCode, *, t: int | None = None) -> tuple["PsmcMatrixCode", tuple[int, ...]]:
        """Build from any linear code containing the all-ones vector.

        Returns the masking code together with the column permutation that
        was applied to reach the required generator form.
        """
        from .linear import systematize

        M, perm = systematize(code.G, code.alphabet)
        k1 = code.k - 1
        P = M[:k1, k1 + 1 :]
        return cls(code.n, code.alphabet, P if P.size else None, t=t), perm

    @property
    def u_max(self) -> int:
        return min(self.n, self.alphabet.q - 1)

    def __repr__(self) -> str:
        return f"PsmcMatrixCode(n={self.n}, k1={self.k1}, r={self.r}, t={self.t}, {self.alphabet!r})"

    def encode(self, message, profile=(), *, probabilistic: bool = False) -> MaskingOutcome:
        """Mask the stuck positions and attach the ECC structure.

        The intermediate word is w = m G1; v is the smallest symbol absent
        from w at the stuck positions, and the stored word is w + z0 * 1
        with z0 = -v.  Every stuck cell of the result is >= 1.
        """
        prof = _coerce_profile(profile)
        prof.check_length(self.n)
        q = self.alphabet.q
        if not probabilistic and prof.u > self.u_max:
            raise ValueError(
                f"u={prof.u} exceeds the guaranteed bound {self.u_max}; "
                "pass probabilistic=True to attempt masking anyway"
            )
        m = as_word(message, self.alphabet, self.k1)
        w = mat_mul(m[None, :], self.G1, self.alphabet)[0]
        v = smallest_avoiding(w[list(prof.positions)], q)
        if v is None:
            raise MaskingImpossible(
                f"stuck values cover the whole alphabet at positions {prof.positions}"
            )
        z0 = self.alphabet.neg(v)
        c = (w + z0) % q if self.alphabet.m == 1 else np.array(
            [self.alphabet.add(int(x), z0) for x in w], dtype=np.int64
        )
        return MaskingOutcome(codeword=c, z=(z0,), v=v)

    def decode(self, word) -> np.ndarray:
        """Correct up to t errors, strip the masking shift, return m."""
        y = as_word(word, self.alphabet, self.n)
        c = self.base.decode_bounded(y, self.t)
        if c is None:
            raise DecodingFailure(f"no codeword within distance {self.t}")
        z0 = int(c[0])
        q = self.alphabet.q
        if self.alphabet.m == 1:
            w = (c - z0) % q
        else:
            w = np.array([self.alphabet.sub(int(x), z0) for x in c], dtype=np.int64)
        return w[1 : self.k1 + 1]


# ---------------------------------------------------------------------------
# partitioned cyclic construction
# ---------------------------------------------------------------------------

class PsmcCyclicCode:
    """Partitioned cyclic masking code: c(x) = m(x) g1(x) + z0 g0(x).

    g0 = 1 + x + ... + x^(n-1), so the z0 term shifts every cell by z0,
    exactly like the all-ones row of the matrix construction.  g1 is the
    product of the minimal polynomials of the given coset representatives
    and must divide g0 (equivalently, 0 must not be in its defining set).
    Messages are coefficient vectors of length k1 = n - r - 1.
    """

    def __init__(self, n: int, alphabet: Alphabet, g1_coset_reps=(), *, t: int | None = None):
        spec = build_cyclic_code(n, alphabet, g1_coset_reps)
        if 0 in spec.defining_set:
            raise ValueError("g1 must divide g0: coset of 0 (root 1) is not allowed")
        self.n = n
        self.alphabet = alphabet
        self.spec: CyclicCodeSpec = spec
        self.g1 = spec.g
        self.r = len(spec.defining_set)
        self.k1 = n - self.r - 1
        if self.k1 < 1:
            raise ValueError("no room for information symbols (deg g1 too large)")
        self.g0 = Polynomial(alphabet, (1,) * n)
        self.h0 = Polynomial(alphabet, (alphabet.neg(1), 1))  # x - 1
        self.h1 = spec.h
        self.delta0 = 2
        self.delta1 = spec.bch_bound
        # Sanity: g1 | g0 exactly.
        if not (self.g0 % self.g1).is_zero:
            raise ArithmeticError("g1 does not divide g0")
        self.ecc = spec.to_linear_code()  # the [n, n-r] code generated by g1
        self.t = _derive_t(self.ecc, t)

    @property
    def u_max(self) -> int:
        return min(self.n, self.alphabet.q - 1)

    def __repr__(self) -> str:
        return (
            f"PsmcCyclicCode(n={self.n}, k1={self.k1}, r={self.r}, "
            f"delta1>={self.delta1}, t={self.t}, {self.alphabet!r})"
        )

    def encode(self, message, profile=(), *, probabilistic: bool = False) -> MaskingOutcome:
        prof = _coerce_profile(profile)
        prof.check_length(self.n)
        q = self.alphabet.q
        if not probabilistic and prof.u > self.u_max:
            raise ValueError(
                f"u={prof.u} exceeds the guaranteed bound {self.u_max}; "
                "pass probabilistic=True to attempt masking anyway"
            )
        m = as_word(message, self.alphabet, self.k1)
        mpoly = Polynomial(self.alphabet, m.tolist())
        c1 = (mpoly * self.g1).vector(self.n)  # degree < n-1, so no reduction
        v = smallest_avoiding(c1[list(prof.positions)], q)
        if v is None:
            raise MaskingImpossible(
                f"stuck values cover the whole alphabet at positions {prof.positions}"
            )
        z0 = self.alphabet.neg(v)
        if self.alphabet.m == 1:
            c = (c1 + z0) % q
        else:
            c = np.array([self.alphabet.add(int(x), z0) for x in c1], dtype=np.int64)
        return MaskingOutcome(codeword=c, z=(z0,), v=v)

    def decode(self, word) -> np.ndarray:
        """Decode in <g1>, reduce mod g0, divide by g1, return m."""
        y = as_word(word, self.alphabet, self.n)
        c = self.ecc.decode_bounded(y, self.t)
        if c is None:
            raise DecodingFailure(f"no codeword within distance {self.t}")
        cpoly = Polynomial(self.alphabet, c.tolist())
        mhat, rem = divmod(cpoly % self.g0, self.g1)
        if not rem.is_zero:
            raise ArithmeticError("residue not divisible by g1; inconsistent input")
        return mhat.vector(self.k1)


# ---------------------------------------------------------------------------
# extended construction (u may reach q + d0 - 3)
# ---------------------------------------------------------------------------

class PsmcExtendedCode:
    """Masking code [G1 ; H0] with H0 a systematic l x n parity check.

    H0 checks an [n, n-l, d0] code; the encoder scans all q^l masking
    vectors in a fixed order (z = -v, v lexicographic) and keeps the
    first whose shift d = z H0 leaves every stuck cell nonzero.  With
    u <= q + d0 - 3 a valid z always exists.  l = 1 with H0 = all-ones
    reduces to the matrix construction, codeword for codeword.
    """

    def __init__(self, alphabet: Alphabet, masking_check, ecc_columns=None, *, t: int | None = None):
        if not alphabet.is_field:
            raise ValueError("construction requires a field alphabet")
        H0 = np.asarray(masking_check, dtype=np.int64)
        if H0.ndim != 2:
            raise ValueError("masking check must be an l x n matrix")
        l, n = H0.shape
        if (H0[:, :l] != np.eye(l, dtype=np.int64)).any():
            raise ValueError("masking check must be systematic in its first l columns")
        P = None if ecc_columns is None else np.asarray(ecc_columns, dtype=np.int64)
        r = 0 if P is None else P.shape[1]
        k1 = n - l - r
        if k1 < 1:
            raise ValueError("no room for information symbols")
        if P is not None and P.shape[0] != k1:
            raise ValueError(f"ecc_columns must have {k1} rows, got {P.shape[0]}")
        self.alphabet = alphabet
        self.n, self.l, self.r, self.k1 = n, l, r, k1
        blocks = [np.zeros((k1, l), dtype=np.int64), np.eye(k1, dtype=np.int64)]
        if P is not None:
            blocks.append(P % alphabet.q if alphabet.m == 1 else P)
        self.G1 = np.hstack(blocks)
        self.H0 = H0
        stacked = np.vstack([self.G1, self.H0])
        self.base = LinearCode(stacked, alphabet)
        if self.base.k != k1 + l:
            raise ValueError("stacked [G1 ; H0] is rank deficient")
        # d0 is the exact minimum distance of the code H0 checks.
        self.masked_code = LinearCode(parity_check_matrix(H0, alphabet), alphabet)
        self.d0 = min_distance(self.masked_code).d
        self.t = _derive_t(self.base, t)

    @property
    def u_max(self) -> int:
        return min(self.n, self.alphabet.q + self.d0 - 3)

    def __repr__(self) -> str:
        return (
            f"PsmcExtendedCode(n={self.n}, k1={self.k1}, l={self.l}, r={self.r}, "
            f"d0={self.d0}, t={self.t}, {self.alphabet!r})"
        )

    def encode(self, message, profile=(), *, probabilistic: bool = False) -> MaskingOutcome:
        prof = _coerce_profile(profile)
        prof.check_length(self.n)
        q = self.alphabet.q
        if not probabilistic and prof.u > self.u_max:
            raise ValueError(
                f"u={prof.u} exceeds the guaranteed bound {self.u_max}; "
                "pass probabilistic=True to attempt masking anyway"
            )
        m = as_word(message, self.alphabet, self.k1)
        w = mat_mul(m[None, :], self.G1, self.alphabet)[0]
        pos = list(prof.positions)
        # Candidates are scanned as z = -v with v lexicographic, so the
        # l = 1 all-ones case picks the same codeword as PsmcMatrixCode.
        for v in product(range(q), repeat=self.l):
            zv = np.array([self.alphabet.neg(x) for x in v], dtype=np.int64)
            d = mat_mul(zv[None, :], self.H0, self.alphabet)[0]
            if self.alphabet.m == 1:
                c = (w + d) % q
            else:
                c = np.array(
                    [self.alphabet.add(int(a), int(b)) for a, b in zip(w, d)], dtype=np.int64
                )
            if not pos or (c[pos] >= 1).all():
                return MaskingOutcome(codeword=c, z=tuple(int(x) for x in zv), v=None)
        if prof.u <= self.u_max:
            raise AssertionError("guaranteed regime violated: no masking vector found")
        raise MaskingImpossible(f"no masking vector z for positions {prof.positions}")

    def decode(self, word) -> np.ndarray:
        y = as_word(word, self.alphabet, self.n)
        c = self.base.decode_bounded(y, self.t)
        if c is None:
            raise DecodingFailure(f"no codeword within distance {self.t}")
        z = c[: self.l]
        d = mat_mul(z[None, :], self.H0, self.alphabet)[0]
        q = self.alphabet.q
        if self.alphabet.m == 1:
            w = (c - d) % q
        else:
            w = np.array(
                [self.alphabet.sub(int(a), int(b)) for a, b in zip(c, d)], dtype=np.int64
            )
        return w[self.l : self.l + self.k1]


# ---------------------------------------------------------------------------
# masking probability and fractional-redundancy accounting
# ---------------------------------------------------------------------------

def masking_probability(q: int, u: int) -> Fraction:
    """Probability that u uniform symbols do not cover the whole alphabet.

    Exact by inclusion-exclusion:
    sum_{i=1}^{q} (-1)^(i+1) C(q, i) (q-i)^u / q^u.  Equals 1 for u < q,
    and is the masking success probability of the single-symbol
    constructions for uniform messages when the stuck positions index
    linearly independent generator columns.
    """
    if q < 2 or u < 0:
        raise ValueError("need q >= 2 and u >= 0")
    num = sum((-1) ** (i + 1) * comb(q, i) * (q - i) ** u for i in range(1, q + 1))
    return Fraction(num, q**u)


def redundancy_gain(q: int, u: int, k1: int) -> tuple[float, float]:
    """Fractional-redundancy improvement (k1*, l*) from narrowing v to [u+1].

    Restricting the masking value v to u+1 residues frees
    log_q(floor(q / (u+1))) information symbols, so
    k1* = k1 + log_q(floor(q/(u+1))) and l* = 1 - log_q(floor(q/(u+1))).
    """
    if u + 1 > q:
        raise ValueError("requires u + 1 <= q")
    gain = log(floor(q / (u + 1))) / log(q)
    return k1 + gain, 1.0 - gain


def improved_masking_value(word, positions, q: int, u: int | None = None) -> tuple[int, int]:
    """Masking pair (v, z0) with v drawn from [0, u+1) instead of [0, q).

    v is the smallest element of [0, u+1) that differs from every stuck
    value mod (u+1); since u values cannot occupy u+1 residues, v always
    exists, and adding z0 = -v mod q keeps each stuck cell nonzero:
    a stuck cell could only land on 0 if its value equaled v exactly,
    which the residue condition rules out.
    """
    pos = list(positions)
    if u is None:
        u = len(pos)
    if u + 1 > q:
        raise ValueError("requires u + 1 <= q")
    if len(pos) > u:
        raise ValueError(f"{len(pos)} stuck positions but u = {u}")
    w = np.asarray(word, dtype=np.int64)
    residues = {int(w[p]) % (u + 1) for p in pos}
    v = next(v for v in range(u + 1) if v not in residues)
    return v, (-v) % q


def stuck_redundancy_lower_bound(u: int) -> int:
    """Singleton-bound floor on redundancy for masking u fully stuck cells.

    Masking u stuck-at cells needs a code with d > u, and the Singleton
    bound gives n - k >= d - 1 >= u; partially stuck cells need only a
    single symbol whenever u < q.
    """
    if u < 0:
        raise ValueError("u must be >= 0")
    return u
