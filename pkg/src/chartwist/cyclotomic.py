"""Exact arithmetic in cyclotomic fields Q(zeta_n).

Values are stored in a canonical form that makes equality structural:

* the conductor n is minimal for the value and never 2 mod 4
  (Q(zeta_2m) = Q(zeta_m) for odd m, so those conductors are redundant);
* coefficients live on the power basis 1, z, ..., z^(phi(n)-1), obtained by
  reducing exponents with the relation Phi_n(zeta_n) = 0;
* zero is the empty term map with conductor 1.

Coefficients are `fractions.Fraction`, so everything is arbitrary precision.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import DivisionByZero, NotAnInteger, NotCoprime

__all__ = ["Cyclotomic", "zeta", "cyc", "sqrt_rational"]


@lru_cache(maxsize=None)
def _phi(n: int) -> int:
    result = n
    m, p = n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def _prime_factors(n: int) -> tuple[int, ...]:
    out, m, p = [], n, 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out.append(m)
    return tuple(out)


def _poly_divide(num: list[int], den: list[int]) -> list[int]:
    # exact division of integer polynomials, coefficients lowest-first
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        q, r = divmod(c, den[-1])
        assert r == 0
        out[i] = q
        for j, d in enumerate(den):
            num[i + j] -= q * d
    assert all(c == 0 for c in num)
    return out


@lru_cache(maxsize=None)
def _cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first, monic."""
    if n == 1:
        return (-1, 1)
    num = [0] * (n + 1)
    num[0], num[n] = -1, 1
    for d in range(1, n):
        if n % d == 0:
            num = _poly_divide(num, list(_cyclotomic_poly(d)))
    return tuple(num)


@lru_cache(maxsize=None)
def _reduction_vectors(n: int) -> tuple[tuple[int, ...], ...]:
    """Power-basis coordinates of zeta_n^j for j in 0..n-1."""
    phi = _phi(n)
    poly = _cyclotomic_poly(n)
    # x^phi == -(c_0 + c_1 x + ... + c_{phi-1} x^{phi-1})
    top = tuple(-c for c in poly[:phi])
    vecs = []
    cur = [0] * phi
    cur[0] = 1
    for j in range(n):
        vecs.append(tuple(cur))
        lead = cur[phi - 1]
        nxt = [0] + cur[: phi - 1]
        if lead:
            nxt = [a + lead * b for a, b in zip(nxt, top)]
        cur = nxt
    return tuple(vecs)


@lru_cache(maxsize=None)
def _subfield_converter(n: int, m: int):
    """Solver expressing canonical vectors at conductor n in the zeta_m basis.

    Returns a function mapping a length-phi(n) Fraction vector, known to lie
    in Q(zeta_m), to its length-phi(m) coordinate vector.  m | n, both
    normalized conductors.
    """
    pn, pm = _phi(n), _phi(m)
    red = _reduction_vectors(n)
    cols = [red[(i * (n // m)) % n] for i in range(pm)]
    # row reduce [B | I] where B has the columns above
    rows = [
        [Fraction(cols[j][i]) for j in range(pm)]
        + [Fraction(1 if k == i else 0) for k in range(pn)]
        for i in range(pn)
    ]
    pivots = []
    r = 0
    for c in range(pm):
        pivot = next((i for i in range(r, pn) if rows[i][c] != 0), None)
        assert pivot is not None  # columns are linearly independent
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(pn):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(r)
        r += 1
    elim = [row[pm:] for row in rows]

    def convert(vec):
        assert len(vec) == pn
        image = [sum(e * v for e, v in zip(row, vec) if v) for row in elim]
        if any(image[i] for i in range(pm, pn)):
            raise ValueError("vector not in subfield")
        return image[:pm]

    return convert


def _fixing_exponents(n: int, m: int) -> list[int]:
    # Gal(Q(zeta_n)/Q(zeta_m)) = { k in (Z/n)* : k = 1 mod m }
    return [k for k in range(2, n) if gcd(k, n) == 1 and k % m == 1 % m]


_FRACTION_ZERO = Fraction(0)


class Cyclotomic:
    """An element of some Q(zeta_n), always held in canonical form."""

    __slots__ = ("_n", "_c", "_hash")

    def __init__(self, n: int, coeffs: dict[int, Fraction], _raw: bool = False):
        if not _raw:
            raise TypeError("use cyc(), zeta() or Cyclotomic arithmetic")
        self._n = n
        self._c = coeffs
        self._hash = None

    # -- construction ------------------------------------------------------

    @staticmethod
    def _make(n: int, terms: dict[int, Fraction]) -> "Cyclotomic":
        """Canonicalize a sparse exponent->coefficient map at conductor n."""
        while n % 4 == 2:
            # zeta_{2m} = -zeta_m^{(m+1)//2} for odd m
            m = n // 2
            shift = (m + 1) // 2
            new: dict[int, Fraction] = {}
            for j, a in terms.items():
                j %= n
                if j % 2:
                    a = -a
                k = (j * shift) % m
                new[k] = new.get(k, _FRACTION_ZERO) + a
            n, terms = m, new
        phi = _phi(n)
        vec = [_FRACTION_ZERO] * phi
        red = _reduction_vectors(n)
        for j, a in terms.items():
            if not a:
                continue
            for k, b in enumerate(red[j % n]):
                if b:
                    vec[k] += a * b
        return Cyclotomic._from_vector(n, vec)

    @staticmethod
    def _from_vector(n: int, vec: list[Fraction]) -> "Cyclotomic":
        if not any(vec):
            return ZERO
        if n > 1:
            n, vec = Cyclotomic._descend(n, vec)
        coeffs = {k: a for k, a in enumerate(vec) if a}
        return Cyclotomic(n, coeffs, _raw=True)

    @staticmethod
    def _descend(n: int, vec: list[Fraction]) -> tuple[int, list[Fraction]]:
        while n > 1:
            if all(a == 0 for a in vec[1:]):
                return 1, [vec[0]]
            dropped = False
            for p in _prime_factors(n):
                m = n // p
                if m % 4 == 2:
                    m //= 2
                if m == n or _phi(m) >= _phi(n):
                    continue
                if Cyclotomic._fixed_by(n, m, vec):
                    vec = _subfield_converter(n, m)(vec)
                    n = m
                    dropped = True
                    break
            if not dropped:
                return n, vec
        return n, vec

    @staticmethod
    def _fixed_by(n: int, m: int, vec) -> bool:
        red = _reduction_vectors(n)
        phi = _phi(n)
        for k in _fixing_exponents(n, m):
            out = [_FRACTION_ZERO] * phi
            for j, a in enumerate(vec):
                if not a:
                    continue
                for t, b in enumerate(red[(j * k) % n]):
                    if b:
                        out[t] += a * b
            if out != list(vec):
                return False
        return True

    @staticmethod
    def from_rational(q) -> "Cyclotomic":
        q = Fraction(q)
        if not q:
            return ZERO
        return Cyclotomic(1, {0: q}, _raw=True)

    # -- inspection --------------------------------------------------------

    @property
    def conductor(self) -> int:
        return self._n

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def is_rational(self) -> bool:
        return self._n == 1

    def as_rational(self) -> Fraction:
        if self._n != 1:
            raise NotAnInteger(f"{self} is not rational")
        return self._c.get(0, _FRACTION_ZERO)

    def is_integer(self) -> bool:
        return self._n == 1 and self._c.get(0, _FRACTION_ZERO).denominator == 1

    def is_nonneg_integer(self) -> bool:
        return self.is_integer() and self._c.get(0, _FRACTION_ZERO) >= 0

    def to_integer(self) -> int:
        if not self.is_integer():
            raise NotAnInteger(f"{self} is not an integer")
        return int(self._c.get(0, _FRACTION_ZERO))

    # -- ring operations ---------------------------------------------------

    def _lifted_terms(self, L: int) -> dict[int, Fraction]:
        s = L // self._n
        return {j * s: a for j, a in self._c.items()}

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self._n == 1 and other._n == 1:
            return Cyclotomic.from_rational(
                self._c.get(0, _FRACTION_ZERO) + other._c.get(0, _FRACTION_ZERO)
            )
        L = self._n * other._n // gcd(self._n, other._n)
        terms = self._lifted_terms(L)
        for j, a in other._lifted_terms(L).items():
            terms[j] = terms.get(j, _FRACTION_ZERO) + a
        return Cyclotomic._make(L, terms)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self._n, {j: -a for j, a in self._c.items()}, _raw=True) \
            if self._c else ZERO

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self._c or not other._c:
            return ZERO
        if self._n == 1 and other._n == 1:
            return Cyclotomic.from_rational(self._c[0] * other._c[0])
        if self._n == 1:
            q = self._c[0]
            return Cyclotomic(other._n, {j: q * a for j, a in other._c.items()}, _raw=True)
        if other._n == 1:
            q = other._c[0]
            return Cyclotomic(self._n, {j: q * a for j, a in self._c.items()}, _raw=True)
        L = self._n * other._n // gcd(self._n, other._n)
        a_terms = self._lifted_terms(L)
        b_terms = other._lifted_terms(L)
        terms: dict[int, Fraction] = {}
        for j, a in a_terms.items():
            for k, b in b_terms.items():
                e = (j + k) % L
                terms[e] = terms.get(e, _FRACTION_ZERO) + a * b
        return Cyclotomic._make(L, terms)

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if not self._c:
            raise DivisionByZero("inverse of zero")
        if self._n == 1:
            return Cyclotomic.from_rational(1 / self._c[0])
        prod = ONE
        for k in range(2, self._n):
            if gcd(k, self._n) == 1:
                prod = prod * self.galois_apply(k)
        norm = self * prod
        assert norm.is_rational() and not norm.is_zero()
        return prod * Cyclotomic.from_rational(1 / norm.as_rational())

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k == 0:
            return ONE
        if k < 0:
            return self.inverse() ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- Galois actions ----------------------------------------------------

    def galois_apply(self, k: int) -> "Cyclotomic":
        """Apply the field automorphism zeta_n -> zeta_n^k, gcd(k, n) = 1."""
        n = self._n
        if n == 1:
            return self
        k %= n
        if gcd(k, n) != 1:
            raise NotCoprime(f"{k} not coprime to conductor {n}")
        phi = _phi(n)
        red = _reduction_vectors(n)
        vec = [_FRACTION_ZERO] * phi
        for j, a in self._c.items():
            for t, b in enumerate(red[(j * k) % n]):
                if b:
                    vec[t] += a * b
        # automorphisms preserve the (minimal) conductor
        coeffs = {t: a for t, a in enumerate(vec) if a}
        return Cyclotomic(n, coeffs, _raw=True) if coeffs else ZERO

    def conjugate(self) -> "Cyclotomic":
        """Complex conjugation, zeta -> zeta^(-1)."""
        if self._n == 1:
            return self
        return self.galois_apply(self._n - 1)

    # -- comparisons, hashing, ordering ------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._n == other._n and self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._n, tuple(sorted(self._c.items()))))
        return self._hash

    def sort_key(self):
        """Deterministic total order key (not compatible with complex order)."""
        phi = _phi(self._n)
        return (self._n, tuple(self._c.get(k, _FRACTION_ZERO) for k in range(phi)))

    # -- formatting / serialization ----------------------------------------

    def __repr__(self):
        return f"cyc({self!s})"

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for j in sorted(self._c):
            a = self._c[j]
            if j == 0:
                parts.append(str(a))
                continue
            unit = f"z{self._n}" if j == 1 else f"z{self._n}^{j}"
            if a == 1:
                parts.append(unit)
            elif a == -1:
                parts.append(f"-{unit}")
            else:
                parts.append(f"{a}*{unit}")
        out = parts[0]
        for p in parts[1:]:
            out += f" + {p}" if not p.startswith("-") else f" - {p[1:]}"
        return out

    def to_json(self) -> dict:
        return {
            "conductor": self._n,
            "terms": [[k, str(self._c[k])] for k in sorted(self._c)],
        }

    @staticmethod
    def from_json(data: dict) -> "Cyclotomic":
        terms = {int(k): Fraction(v) for k, v in data["terms"]}
        return Cyclotomic._make(int(data["conductor"]), terms)


ZERO = Cyclotomic(1, {}, _raw=True)
ONE = Cyclotomic(1, {0: Fraction(1)}, _raw=True)


def _coerce(x):
    if isinstance(x, Cyclotomic):
        return x
    if isinstance(x, (int, Fraction)):
        return Cyclotomic.from_rational(x)
    return NotImplemented


def cyc(x) -> Cyclotomic:
    """Coerce an int, Fraction or Cyclotomic to a Cyclotomic."""
    v = _coerce(x)
    if v is NotImplemented:
        raise TypeError(f"cannot coerce {x!r} to Cyclotomic")
    return v


def zeta(n: int, k: int = 1) -> Cyclotomic:
    """The root of unity zeta_n^k."""
    if n < 1:
        raise ValueError("conductor must be positive")
    return Cyclotomic._make(n, {k % n: Fraction(1)})


@lru_cache(maxsize=None)
def _sqrt_squarefree(s: int) -> Cyclotomic:
    if s == 1:
        return ONE
    if s == -1:
        return zeta(4)
    if s < 0:
        return zeta(4) * _sqrt_squarefree(-s)
    if s == 2:
        return zeta(8) + zeta(8, 7)
    if s % 2 == 0:
        return _sqrt_squarefree(2) * _sqrt_squarefree(s // 2)
    for p in _prime_factors(s):
        if p < s:
            return _sqrt_squarefree(p) * _sqrt_squarefree(s // p)
    p = s
    # Gauss sum: sum of legendre(a, p) zeta_p^a is sqrt(p) or i sqrt(p)
    g = ZERO
    for a in range(1, p):
        ls = pow(a, (p - 1) // 2, p)
        g = g + (zeta(p, a) if ls == 1 else -zeta(p, a))
    if p % 4 == 3:
        g = g * zeta(4).inverse()
    return g


def sqrt_rational(q) -> Cyclotomic:
    """An exact cyclotomic square root of the rational q (Gauss sums)."""
    q = Fraction(q)
    if q == 0:
        return ZERO
    num, den = q.numerator, q.denominator
    # q = (a/den)^2 * s with s squarefree
    s, a = 1, 1
    m = abs(num * den)
    p = 2
    while p * p <= m:
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        a *= p ** (e // 2)
        if e % 2:
            s *= p
        p += 1
    s *= m
    if num < 0:
        s = -s
    root = Cyclotomic.from_rational(Fraction(a, den)) * _sqrt_squarefree(s)
    assert root * root == cyc(q)
    return root
