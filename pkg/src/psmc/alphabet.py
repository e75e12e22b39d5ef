"""Symbol arithmetic over prime fields, extension fields, and residue rings.

Symbols are plain ints in ``[0, q)``.  Prime fields and residue rings use
ordinary modular arithmetic.  Extension fields GF(p^m) use a polynomial
basis: the integer whose base-p digits are ``(c0, c1, ..., c_{m-1})``
stands for ``c0 + c1*X + ... + c_{m-1}*X^{m-1}``.  The reducing modulus is
deterministic: among all monic irreducible polynomials of degree m over
GF(p), the one whose coefficient vector, read as a base-p integer with the
constant term least significant, is smallest.  For p = 2 this reproduces
the familiar textbook moduli (x^2+x+1, x^3+x+1, x^4+x+1, ...), so element
labels are reproducible across runs and across ports of this library.

Alphabets of order up to ``MAX_ORDER`` (2^20) are supported.  Fields with
q <= 2^16 build exp/log tables on first multiplication; larger fields
multiply digit vectors directly.

All objects in this module are immutable after construction and all
operations are pure, so instances can be shared freely across threads.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

MAX_ORDER = 1 << 20

PRIME_FIELD = "prime-field"
EXTENSION_FIELD = "extension-field"
RESIDUE_RING = "residue-ring"

_TABLE_ORDER_LIMIT = 1 << 10  # dense q x q add/mul tables only below this
_EXPLOG_ORDER_LIMIT = 1 << 16


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# Raw dense polynomials over GF(p), used to bootstrap extension fields.
# Tuples of ints, lowest degree first, no trailing zeros.
# ---------------------------------------------------------------------------

def _tstrip(c: list[int]) -> tuple[int, ...]:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _tmul(a: Sequence[int], b: Sequence[int], p: int) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _tstrip(out)


def _tmod(a: Sequence[int], f: Sequence[int], p: int) -> tuple[int, ...]:
    # f must be monic
    r = list(a)
    df = len(f) - 1
    for i in range(len(r) - 1, df - 1, -1):
        c = r[i]
        if c:
            for j in range(df + 1):
                r[i - df + j] = (r[i - df + j] - c * f[j]) % p
    return _tstrip(r)


def _tsub(a: Sequence[int], b: Sequence[int], p: int) -> tuple[int, ...]:
    out = [0] * max(len(a), len(b))
    for i, ai in enumerate(a):
        out[i] = ai
    for i, bi in enumerate(b):
        out[i] = (out[i] - bi) % p
    return _tstrip(out)


def _tgcd(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    while b:
        inv = pow(b[-1], -1, p)
        nb = tuple(c * inv % p for c in b)
        a, b = b, _tmod(a, nb, p)
    return a


def _tpowmod(base: tuple[int, ...], e: int, f: Sequence[int], p: int) -> tuple[int, ...]:
    result: tuple[int, ...] = (1,)
    acc = _tmod(base, f, p)
    while e:
        if e & 1:
            result = _tmod(_tmul(result, acc, p), f, p)
        acc = _tmod(_tmul(acc, acc, p), f, p)
        e >>= 1
    return result


def _is_irreducible(f: tuple[int, ...], p: int) -> bool:
    """Rabin test for a monic polynomial over GF(p)."""
    m = len(f) - 1
    if m < 1 or f[-1] != 1:
        return False
    if m == 1:
        return True
    x = (0, 1)
    if _tpowmod(x, p ** m, f, p) != x:
        return False
    for d in _prime_factors(m):
        g = _tgcd(_tsub(_tpowmod(x, p ** (m // d), f, p), x, p), f, p)
        if len(g) - 1 > 0:
            return False
    return True


def _find_modulus(p: int, m: int) -> tuple[int, ...]:
    # Candidates ordered by the base-p integer formed by the non-leading
    # coefficients; the first irreducible one is the fixed modulus.
    for v in range(p ** m):
        digits = []
        x = v
        for _ in range(m):
            digits.append(x % p)
            x //= p
        f = tuple(digits) + (1,)
        if _is_irreducible(f, p):
            return f
    raise RuntimeError(f"no irreducible polynomial of degree {m} over GF({p})")


# ---------------------------------------------------------------------------
# Alphabet
# ---------------------------------------------------------------------------

class Alphabet:
    """A finite field GF(p^m) or residue ring Z_q with symbols 0..q-1.

    Use :func:`make_field` / :func:`make_ring`, which cache and reuse
    instances, instead of calling this constructor directly.
    """

    def __init__(self, kind: str, p: int, m: int):
        self.kind = kind
        self.p = p
        self.m = m
        self.q = p ** m if kind != RESIDUE_RING else p
        self._mod_digits: tuple[int, ...] | None = None
        if kind == EXTENSION_FIELD:
            self._mod_digits = _find_modulus(p, m)
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        self._primitive: int | None = None
        self._add_table: np.ndarray | None = None
        self._mul_table: np.ndarray | None = None

    # -- basic structure ----------------------------------------------------

    @property
    def is_field(self) -> bool:
        return self.kind != RESIDUE_RING

    def elements(self) -> range:
        return range(self.q)

    @property
    def modulus(self) -> "Polynomial | None":
        """Reducing polynomial of an extension field, over the prime field."""
        if self._mod_digits is None:
            return None
        return Polynomial(make_field(self.p), self._mod_digits)

    def check(self, a: int) -> int:
        if not 0 <= a < self.q:
            raise ValueError(f"symbol {a!r} out of range for {self!r}")
        return a

    def digits(self, a: int) -> tuple[int, ...]:
        """Base-p digit vector of length m (extension-field coordinates)."""
        out = []
        for _ in range(self.m):
            out.append(a % self.p)
            a //= self.p
        return tuple(out)

    def from_digits(self, digits: Iterable[int]) -> int:
        a = 0
        for i, d in enumerate(digits):
            a += (d % self.p) * self.p ** i
        return a

    # -- scalar arithmetic --------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.q
        return self.from_digits((x + y) % self.p for x, y in zip(self.digits(a), self.digits(b)))

    def sub(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a - b) % self.q
        return self.from_digits((x - y) % self.p for x, y in zip(self.digits(a), self.digits(b)))

    def neg(self, a: int) -> int:
        if self.m == 1:
            return (-a) % self.q
        return self.from_digits((-x) % self.p for x in self.digits(a))

    def _ext_mul_raw(self, a: int, b: int) -> int:
        prod = _tmul(self.digits(a), self.digits(b), self.p)
        red = _tmod(prod, self._mod_digits, self.p)
        return self.from_digits(red + (0,) * (self.m - len(red)))

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a * b) % self.q
        if a == 0 or b == 0:
            return 0
        if self.q <= _EXPLOG_ORDER_LIMIT:
            exp, log = self._tables()
            return exp[(log[a] + log[b]) % (self.q - 1)]
        return self._ext_mul_raw(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        if self.kind == RESIDUE_RING:
            try:
                return pow(a, -1, self.q)
            except ValueError:
                raise ValueError(f"{a} is not a unit in Z_{self.q}") from None
        if self.m == 1:
            return pow(a, -1, self.q)
        if self.q <= _EXPLOG_ORDER_LIMIT:
            exp, log = self._tables()
            return exp[(self.q - 1 - log[a]) % (self.q - 1)]
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        result = 1
        acc = a
        while e:
            if e & 1:
                result = self.mul(result, acc)
            acc = self.mul(acc, acc)
            e >>= 1
        return result

    def _pow_raw(self, a: int, e: int) -> int:
        # Table-free powering, usable while exp/log tables are being built.
        if self.m == 1:
            return pow(a, e, self.q)
        result = 1
        acc = a
        while e:
            if e & 1:
                result = self._ext_mul_raw(result, acc)
            acc = self._ext_mul_raw(acc, acc)
            e >>= 1
        return result

    def element_order(self, a: int) -> int:
        """Multiplicative order of a nonzero field element."""
        if not self.is_field:
            raise ValueError("element_order is defined for fields only")
        if a == 0:
            raise ValueError("0 has no multiplicative order")
        n = self.q - 1
        order = n
        for f in _prime_factors(n):
            while order % f == 0 and self._pow_raw(a, order // f) == 1:
                order //= f
        return order

    @property
    def primitive(self) -> int:
        """Smallest element generating the multiplicative group (fields)."""
        if not self.is_field:
            raise ValueError(f"{self!r} has no primitive element")
        if self._primitive is None:
            for g in range(1, self.q):
                if self.element_order(g) == self.q - 1:
                    self._primitive = g
                    break
        return self._primitive

    def _tables(self) -> tuple[list[int], list[int]]:
        if self._exp is None:
            g = self.primitive
            exp = [1] * (self.q - 1)
            log = [0] * self.q
            acc = 1
            for i in range(self.q - 1):
                exp[i] = acc
                log[acc] = i
                acc = self._ext_mul_raw(acc, g) if self.m > 1 else (acc * g) % self.q
            self._exp, self._log = exp, log
        return self._exp, self._log

    # -- vectorized tables (small alphabets) ---------------------------------

    def add_table(self) -> np.ndarray:
        """q x q numpy addition table; only for q <= 1024."""
        if self.q > _TABLE_ORDER_LIMIT:
            raise ValueError(f"dense tables limited to q <= {_TABLE_ORDER_LIMIT}")
        if self._add_table is None:
            idx = np.arange(self.q)
            if self.m == 1:
                t = (idx[:, None] + idx[None, :]) % self.q
            else:
                digs = np.empty((self.q, self.m), dtype=np.int64)
                x = idx.copy()
                for i in range(self.m):
                    digs[:, i] = x % self.p
                    x //= self.p
                s = (digs[:, None, :] + digs[None, :, :]) % self.p
                t = (s * self.p ** np.arange(self.m)).sum(axis=2)
            self._add_table = t.astype(np.int64)
        return self._add_table

    def mul_table(self) -> np.ndarray:
        """q x q numpy multiplication table; only for q <= 1024."""
        if self.q > _TABLE_ORDER_LIMIT:
            raise ValueError(f"dense tables limited to q <= {_TABLE_ORDER_LIMIT}")
        if self._mul_table is None:
            idx = np.arange(self.q)
            if self.m == 1:
                t = (idx[:, None] * idx[None, :]) % self.q
            else:
                exp, log = self._tables()
                e = np.array(exp + [0], dtype=np.int64)
                l = np.array(log, dtype=np.int64)
                t = e[(l[:, None] + l[None, :]) % (self.q - 1)]
                t[0, :] = 0
                t[:, 0] = 0
            self._mul_table = t.astype(np.int64)
        return self._mul_table

    # -- identity -------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Alphabet)
            and self.kind == other.kind
            and self.p == other.p
            and self.m == other.m
        )

    def __hash__(self) -> int:
        return hash((self.kind, self.p, self.m))

    def __repr__(self) -> str:
        if self.kind == RESIDUE_RING:
            return f"Z_{self.q}"
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m})"


_FIELDS: dict[tuple[int, int], Alphabet] = {}
_RINGS: dict[int, Alphabet] = {}


def make_field(p: int, m: int = 1) -> Alphabet:
    """Return GF(p^m) with the fixed deterministic modulus.

    Raises ValueError for non-prime p, m < 1, or p^m > 2^20.
    """
    key = (p, m)
    if key not in _FIELDS:
        if not _is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if m < 1:
            raise ValueError("extension degree must be >= 1")
        if p ** m > MAX_ORDER:
            raise ValueError(f"field order {p}^{m} exceeds supported bound 2^20")
        kind = PRIME_FIELD if m == 1 else EXTENSION_FIELD
        _FIELDS[key] = Alphabet(kind, p, m)
    return _FIELDS[key]


def make_ring(q: int) -> Alphabet:
    """Return the residue ring Z_q (q >= 2, composite q allowed).

    Z_q supports multiplication but no division by non-units; for prime q
    it has the same arithmetic as GF(q) but is a distinct object so that
    field-only code paths can tell the two apart.
    """
    if q not in _RINGS:
        if q < 2:
            raise ValueError("ring modulus must be >= 2")
        if q > MAX_ORDER:
            raise ValueError(f"ring order {q} exceeds supported bound 2^20")
        _RINGS[q] = Alphabet(RESIDUE_RING, q, 1)
    return _RINGS[q]


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------

NEG_INF = -math.inf


class Polynomial:
    """Dense univariate polynomial over an :class:`Alphabet`.

    Coefficients are stored lowest degree first with no trailing zeros;
    the zero polynomial has an empty coefficient tuple and degree -inf.
    """

    __slots__ = ("alphabet", "coeffs")

    def __init__(self, alphabet: Alphabet, coeffs: Iterable[int] = ()):
        cs = [alphabet.check(int(c)) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, alphabet: Alphabet) -> "Polynomial":
        return cls(alphabet)

    @classmethod
    def one(cls, alphabet: Alphabet) -> "Polynomial":
        return cls(alphabet, (1,))

    @classmethod
    def x(cls, alphabet: Alphabet) -> "Polynomial":
        return cls(alphabet, (0, 1))

    @classmethod
    def monomial(cls, alphabet: Alphabet, c: int, k: int) -> "Polynomial":
        return cls(alphabet, (0,) * k + (c,))

    # -- structure ------------------------------------------------------------

    @property
    def degree(self) -> float:
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> int:
        """Leading coefficient (0 for the zero polynomial)."""
        return self.coeffs[-1] if self.coeffs else 0

    def coeff(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def vector(self, n: int) -> np.ndarray:
        """Coefficients padded with zeros to length n."""
        if len(self.coeffs) > n:
            raise ValueError(f"degree {self.degree} does not fit in length {n}")
        out = np.zeros(n, dtype=np.int64)
        out[: len(self.coeffs)] = self.coeffs
        return out

    def _same(self, other: "Polynomial") -> None:
        if not isinstance(other, Polynomial):
            raise TypeError(f"expected Polynomial, got {type(other).__name__}")
        if other.alphabet != self.alphabet:
            raise ValueError(f"alphabet mismatch: {self.alphabet!r} vs {other.alphabet!r}")

    # -- arithmetic -------------------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._same(other)
        A = self.alphabet
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(A, (A.add(self.coeff(i), other.coeff(i)) for i in range(n)))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        self._same(other)
        A = self.alphabet
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(A, (A.sub(self.coeff(i), other.coeff(i)) for i in range(n)))

    def __neg__(self) -> "Polynomial":
        A = self.alphabet
        return Polynomial(A, (A.neg(c) for c in self.coeffs))

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._same(other)
        A = self.alphabet
        if self.is_zero or other.is_zero:
            return Polynomial(A)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = A.add(out[i + j], A.mul(a, b))
        return Polynomial(A, out)

    def scale(self, s: int) -> "Polynomial":
        A = self.alphabet
        A.check(s)
        return Polynomial(A, (A.mul(s, c) for c in self.coeffs))

    def __divmod__(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        self._same(other)
        A = self.alphabet
        if other.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        if not A.is_field and other.lc != 1:
            raise ValueError("over a ring the divisor must be monic")
        inv_lc = A.inv(other.lc) if A.is_field else 1
        dd = len(other.coeffs) - 1
        rem = list(self.coeffs)
        if len(rem) <= dd:
            return Polynomial(A), Polynomial(A, rem)
        quot = [0] * (len(rem) - dd)
        for shift in range(len(rem) - dd - 1, -1, -1):
            c = rem[shift + dd]
            if c == 0:
                continue
            f = A.mul(c, inv_lc)
            quot[shift] = f
            for i, dc in enumerate(other.coeffs):
                rem[shift + i] = A.sub(rem[shift + i], A.mul(f, dc))
        return Polynomial(A, quot), Polynomial(A, rem)

    def __floordiv__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[0]

    def __mod__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[1]

    def monic(self) -> "Polynomial":
        if self.is_zero or self.lc == 1:
            return self
        return self.scale(self.alphabet.inv(self.lc))

    def __call__(self, point: int) -> int:
        A = self.alphabet
        A.check(point)
        acc = 0
        for c in reversed(self.coeffs):
            acc = A.add(A.mul(acc, point), c)
        return acc

    # -- identity ----------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.alphabet == other.alphabet
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.alphabet, self.coeffs))

    def __repr__(self) -> str:
        return f"Polynomial({self.alphabet!r}, {list(self.coeffs)})"


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic greatest common divisor over a field alphabet."""
    if not a.alphabet.is_field:
        raise ValueError("gcd requires a field alphabet")
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def parse_poly(alphabet: Alphabet, text: str) -> Polynomial:
    """Parse the CLI coefficient syntax: comma-separated ints, lowest first.

    ``"2,1"`` over GF(3) is x + 2; ``"0"`` (or an empty string) is the zero
    polynomial.
    """
    text = text.strip()
    if not text:
        return Polynomial(alphabet)
    return Polynomial(alphabet, (int(tok) for tok in text.split(",")))


def format_poly(poly: Polynomial) -> str:
    """Inverse of :func:`parse_poly` (zero polynomial prints as "0")."""
    if poly.is_zero:
        return "0"
    return ",".join(str(c) for c in poly.coeffs)


def poly_pretty(poly: Polynomial, var: str = "x") -> str:
    """Human-readable form, highest degree first, e.g. ``x^2 + 2x + 2``."""
    if poly.is_zero:
        return "0"
    parts = []
    for k in range(len(poly.coeffs) - 1, -1, -1):
        c = poly.coeff(k)
        if c == 0:
            continue
        if k == 0:
            parts.append(str(c))
        else:
            xs = var if k == 1 else f"{var}^{k}"
            parts.append(xs if c == 1 else f"{c}{xs}")
    return " + ".join(parts)
