"""Exact character tables by the Dixon-Burnside method.

The table of G is computed by simultaneously diagonalizing the class-sum
multiplication matrices over a prime field F_p with p = 1 mod exponent(G)
and p > 2 sqrt(|G|), then lifting eigenvalue data back to Q(zeta) through
power maps and discrete Fourier inversion mod p.  Everything returned is
exact; the finite field only ever guides the search.

Row order is canonical: ascending degree, then descending value tuples under
the canonical class order, so equal groups produce identical matrices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from random import Random

from .config import DEFAULT, Config
from .cyclotomic import Cyclotomic, cyc, zeta
from .errors import ChartwistError, NonIntegralFusion
from .perm_group import ConjugacyClasses, PermGroup

__all__ = [
    "ClassConstants", "CharacterTable", "class_constants", "character_table",
    "inner_product", "fusion_constants",
]


@dataclass
class ClassConstants:
    """a[i][j][k] = #{(x, y) in C_i x C_j : x y = z} for a fixed z in C_k."""

    classes: ConjugacyClasses
    tensor: list[list[list[int]]]

    def __getitem__(self, ijk):
        i, j, k = ijk
        return self.tensor[i][j][k]


def class_constants(G: PermGroup) -> ClassConstants:
    cls = G.conjugacy_classes()
    r = len(cls)
    tensor = [[[0] * r for _ in range(r)] for _ in range(r)]
    class_of = cls.class_of
    for k, z in enumerate(cls.representatives):
        for x in G.elements:
            i = class_of[x]
            j = class_of[x.inverse() * z]
            tensor[i][j][k] += 1
    return ClassConstants(cls, tensor)


# -- arithmetic mod p ---------------------------------------------------------


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def dixon_prime(G: PermGroup) -> int:
    """Smallest prime p = 1 mod exponent(G) with p > 2 sqrt(|G|)."""
    e = G.exponent()
    bound = 2 * math.isqrt(G.order) + 1
    p = e + 1
    tries = 0
    while True:
        if p > bound and _is_prime(p):
            return p
        p += e if e > 1 else 1
        tries += 1
        if tries > 10**6:
            raise ChartwistError("no split prime found within search bound")


def _primitive_root(p: int) -> int:
    if p == 2:
        return 1
    factors = []
    m = p - 1
    q = 2
    while q * q <= m:
        if m % q == 0:
            factors.append(q)
            while m % q == 0:
                m //= q
        q += 1
    if m > 1:
        factors.append(m)
    g = 2
    while True:
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
        g += 1


def _poly_mul_mod(a, b, f, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _poly_rem(out, f, p)


def _poly_rem(a, f, p):
    df = len(f) - 1
    if df == 0:
        return [0]
    a = a[:]
    inv_lead = pow(f[-1], p - 2, p)
    for i in range(len(a) - 1, df - 1, -1):
        c = a[i] % p
        if c:
            c = c * inv_lead % p
            for j in range(df + 1):
                a[i - df + j] = (a[i - df + j] - c * f[j]) % p
    a = a[:df]
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a or [0]


def _poly_gcd(a, b, p):
    def trim(x):
        while len(x) > 1 and x[-1] == 0:
            x.pop()
        return x

    a, b = trim(a[:]), trim(b[:])
    while not (len(b) == 1 and b[0] == 0):
        if len(a) >= len(b):
            a = trim(_poly_rem(a, b, p))
        a, b = b, a
    inv = pow(a[-1], p - 2, p)
    return [c * inv % p for c in a]


def _poly_pow_mod(base, e, f, p):
    result = [1]
    base = _poly_rem(base, f, p)
    while e:
        if e & 1:
            result = _poly_mul_mod(result, base, f, p)
        base = _poly_mul_mod(base, base, f, p)
        e >>= 1
    return result


def _roots_mod_p(f, p, rng: Random) -> list[int]:
    """All roots of a squarefree polynomial that splits over F_p."""
    def trim(x):
        while len(x) > 1 and x[-1] == 0:
            x.pop()
        return x

    f = trim([c % p for c in f])
    roots = []
    stack = [f]
    while stack:
        g = stack.pop()
        deg = len(g) - 1
        if deg == 0:
            continue
        if deg == 1:
            inv = pow(g[1], p - 2, p)
            roots.append((-g[0] * inv) % p)
            continue
        if g[0] == 0:
            roots.append(0)
            stack.append(trim(g[1:]))
            continue
        while True:
            a = rng.randrange(p)
            h = _poly_pow_mod([a, 1], (p - 1) // 2, g, p)
            h = trim([(h[0] - 1) % p] + h[1:] if h else [p - 1])
            d = _poly_gcd(g, h, p)
            if 0 < len(d) - 1 < deg:
                stack.append(d)
                stack.append(trim(_poly_div_exact(g, d, p)))
                break
    return sorted(roots)


def _poly_div_exact(a, b, p):
    a = [c % p for c in a]
    out = [0] * (len(a) - len(b) + 1)
    inv = pow(b[-1], p - 2, p)
    for i in range(len(out) - 1, -1, -1):
        c = a[i + len(b) - 1] * inv % p
        out[i] = c
        for j in range(len(b)):
            a[i + j] = (a[i + j] - c * b[j]) % p
    return out


def _sqrt_mod(a: int, p: int, rng: Random) -> int:
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        raise ChartwistError("not a quadratic residue")
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # Tonelli-Shanks
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z = rng.randrange(2, p)
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


# -- the Dixon engine ---------------------------------------------------------


def _mat_vec_mod(mat, vec, p):
    return [sum(m * v for m, v in zip(row, vec)) % p for row in mat]


def _nullspace_mod(rows, p):
    rows = [r[:] for r in rows]
    n = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    basis = []
    pivset = set(pivots)
    for free in range(n):
        if free in pivset:
            continue
        vec = [0] * n
        vec[free] = 1
        for rr, cc in enumerate(pivots):
            vec[cc] = (-rows[rr][free]) % p
        basis.append(vec)
    return basis


def _min_poly_mod(mat, p):
    """Minimal polynomial of a small matrix over F_p, lowest-first, monic."""
    n = len(mat)
    vecs = []
    cur = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    flat = lambda m: [x for row in m for x in row]
    # echelon over the flattened powers with combination tracking
    basis = []  # (pivot, vector, combo)
    k = 0
    while True:
        vec = flat(cur)
        combo = [0] * (n + 2)
        combo[k] = 1
        for piv, bvec, bcombo in basis:
            if vec[piv] % p:
                f = vec[piv]
                vec = [(a - f * b) % p for a, b in zip(vec, bvec)]
                combo = [(a - f * b) % p for a, b in zip(combo, bcombo)]
        piv = next((i for i, x in enumerate(vec) if x % p), None)
        if piv is None:
            return combo[: k + 1]
        inv = pow(vec[piv], p - 2, p)
        basis.append((piv, [x * inv % p for x in vec], [x * inv % p for x in combo]))
        cur = [[sum(mat[i][t] * cur[t][j] for t in range(n)) % p for j in range(n)]
               for i in range(n)]
        k += 1
        if k > n:
            raise AssertionError("minimal polynomial exceeded dimension")


def _split_eigenvectors(class_mats, p, rng: Random):
    """Common eigenvector lines of commuting split-semisimple matrices."""
    r = len(class_mats[0])
    spaces = [[_unit(r, i) for i in range(r)]]
    done: list[list[int]] = []
    queue = list(range(len(class_mats)))

    def restrict(mat, basis):
        # coordinates of mat * b in span(basis) for each basis vector b
        cols = [_mat_vec_mod(mat, b, p) for b in basis]
        m = len(basis)
        aug = [[basis[j][i] for j in range(m)] + [col[i] for col in cols]
               for i in range(r)]
        sol = _solve_mod(aug, m, p)
        return [[sol[i][j] for j in range(m)] for i in range(m)]

    while spaces:
        basis = spaces.pop()
        if len(basis) == 1:
            done.append(basis[0])
            continue
        progressed = False
        for attempt in range(len(class_mats) + 20):
            if attempt < len(class_mats):
                mat = class_mats[attempt]
            else:
                w = [rng.randrange(p) for _ in class_mats]
                mat = [[sum(wc * cm[i][j] for wc, cm in zip(w, class_mats)) % p
                        for j in range(r)] for i in range(r)]
            sub = restrict(mat, basis)
            mp = _min_poly_mod(sub, p)
            if len(mp) <= 2:
                continue
            roots = _roots_mod_p(mp, p, rng)
            if len(roots) <= 1:
                continue
            for lam in roots:
                shifted = [[(sub[i][j] - (lam if i == j else 0)) % p
                            for j in range(len(sub))] for i in range(len(sub))]
                kern = _nullspace_mod(shifted, p)
                newbasis = []
                for coeffs in kern:
                    vec = [0] * r
                    for c, b in zip(coeffs, basis):
                        if c:
                            for t in range(r):
                                vec[t] = (vec[t] + c * b[t]) % p
                    newbasis.append(vec)
                spaces.append(newbasis)
            progressed = True
            break
        if not progressed:
            raise ChartwistError("eigenspace splitting failed; non-semisimple input")
    assert len(done) == r
    return done


def _unit(n, i):
    v = [0] * n
    v[i] = 1
    return v


def _solve_mod(aug, m, p):
    """Row reduce [B | C] where B has m independent columns; return solution."""
    rows = [row[:] for row in aug]
    n = len(rows)
    width = len(rows[0]) - m
    r = 0
    pivots = []
    for c in range(m):
        piv = next((i for i in range(r, n) if rows[i][c] % p), None)
        assert piv is not None
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    sol = [[0] * width for _ in range(m)]
    for rr, cc in enumerate(pivots):
        for j in range(width):
            sol[cc][j] = rows[rr][m + j]
    return sol


@dataclass
class CharacterTable:
    """Exact character table with canonical row and class order."""

    group: PermGroup
    classes: ConjugacyClasses
    rows: tuple[tuple[Cyclotomic, ...], ...]
    degrees: tuple[int, ...]

    def __len__(self):
        return len(self.rows)

    @property
    def n_classes(self) -> int:
        return len(self.classes)

    def value(self, chi: int, cls: int) -> Cyclotomic:
        return self.rows[chi][cls]

    def class_names(self) -> list[str]:
        return self.classes.names()

    def trivial_index(self) -> int:
        one = cyc(1)
        for i, row in enumerate(self.rows):
            if all(v == one for v in row):
                return i
        raise AssertionError("no trivial character")

    def conjugate_row_index(self, chi: int) -> int:
        target = tuple(v.conjugate() for v in self.rows[chi])
        return self.rows.index(target)

    def row_of_class_function(self, values) -> int | None:
        tup = tuple(values)
        try:
            return self.rows.index(tup)
        except ValueError:
            return None

    def to_json(self) -> dict:
        return {
            "group_order": self.group.order,
            "classes": [
                {"order": self.classes.orders[i], "size": self.classes.sizes[i],
                 "rep": self.classes.representatives[i].cycle_string()}
                for i in range(len(self.classes))
            ],
            "irreducibles": [[v.to_json() for v in row] for row in self.rows],
        }

    def to_csv(self) -> str:
        names = self.class_names()
        lines = ["class," + ",".join(names),
                 "size," + ",".join(str(s) for s in self.classes.sizes)]
        for i, row in enumerate(self.rows):
            lines.append(f"X{i+1}," + ",".join(str(v) for v in row))
        return "\n".join(lines) + "\n"

    def to_pretty(self) -> str:
        names = self.class_names()
        cells = [[str(v) for v in row] for row in self.rows]
        head = [""] + names
        widths = [max(len(head[j]), *(len(cells[i][j - 1]) for i in range(len(cells))))
                  if j else max(len(f"X{i+1}") for i in range(len(cells)))
                  for j in range(len(names) + 1)]
        lines = ["  ".join(h.rjust(w) for h, w in zip(head, widths))]
        lines.append("-" * len(lines[0]))
        for i, row in enumerate(cells):
            lines.append("  ".join(x.rjust(w) for x, w in
                                   zip([f"X{i+1}"] + row, widths)))
        return "\n".join(lines) + "\n"


def character_table(G: PermGroup, config: Config = DEFAULT) -> CharacterTable:
    """The exact character table of G (Dixon-Burnside)."""
    if G.order > config.order_cap:
        raise ChartwistError(f"group order {G.order} exceeds cap")
    cls = G.conjugacy_classes()
    r = len(cls)
    e = G.exponent()
    p = config.prime if config.prime else dixon_prime(G)
    if config.prime:
        if not _is_prime(p) or (p - 1) % e or p <= 2 * math.isqrt(G.order):
            raise ChartwistError(f"prime override {p} is not admissible")
    rng = Random(config.seed)

    consts = class_constants(G)
    mats = [[[consts.tensor[i][j][k] % p for j in range(r)] for k in range(r)]
            for i in range(r)]
    # mats[i][k][j] = a[i][j][k]: multiplication by class sum i on coordinates
    eigvecs = _split_eigenvectors(mats, p, rng)

    g = _primitive_root(p)
    z = pow(g, (p - 1) // e, p) if e > 1 else 1
    inv_sizes = [pow(s, p - 2, p) for s in cls.sizes]
    inv_map = cls.inverse_map()

    rows = []
    for v in eigvecs:
        t = next(i for i, x in enumerate(v) if x % p)
        inv_vt = pow(v[t], p - 2, p)
        omega = []
        for i in range(r):
            mv = sum(mats[i][t][j] * v[j] for j in range(r)) % p
            omega.append(mv * inv_vt % p)
        s = sum(omega[i] * omega[inv_map[i]] * inv_sizes[i] for i in range(r)) % p
        d2 = G.order * pow(s, p - 2, p) % p
        d = _sqrt_mod(d2, p, rng)
        d = min(d, p - d)
        chibar = [d * omega[i] * inv_sizes[i] % p for i in range(r)]
        row = _lift_row(cls, chibar, d, z, e, p)
        rows.append(row)

    degrees = [row[0].to_integer() for row in rows]
    assert sum(x * x for x in degrees) == G.order, "degree sum check failed"

    order = sorted(range(r), key=cmp_to_key(_row_compare(rows, degrees)))
    rows = tuple(tuple(rows[i]) for i in order)
    degrees = tuple(degrees[i] for i in order)
    return CharacterTable(group=G, classes=cls, rows=rows, degrees=degrees)


def _lift_row(cls: ConjugacyClasses, chibar, d, z, e, p):
    row = []
    for i, rep in enumerate(cls.representatives):
        n_i = cls.orders[i]
        if n_i == 1:
            row.append(cyc(d))
            continue
        z_i = pow(z, e // n_i, p)
        inv_n = pow(n_i, p - 2, p)
        value = cyc(0)
        z_pow = [pow(z_i, l, p) for l in range(n_i)]
        chis = [chibar[cls.power_map(l)[i]] for l in range(n_i)]
        for j in range(n_i):
            m_j = sum(chis[l] * z_pow[(-j * l) % n_i] for l in range(n_i)) * inv_n % p
            if m_j:
                assert m_j <= d, "multiplicity lift out of range"
                value = value + m_j * zeta(n_i, j)
        row.append(value)
    return row


def _value_order_key(v: Cyclotomic):
    # rationals first, then by conductor; within a conductor larger values first
    n, coeffs = v.sort_key()
    return (n, tuple(-c for c in coeffs))


def _row_compare(rows, degrees):
    def cmp(a, b):
        if degrees[a] != degrees[b]:
            return -1 if degrees[a] < degrees[b] else 1
        ka = [_value_order_key(v) for v in rows[a]]
        kb = [_value_order_key(v) for v in rows[b]]
        if ka == kb:
            return 0
        return -1 if ka < kb else 1

    return cmp


# -- pairings and fusion ------------------------------------------------------


def inner_product(table: CharacterTable, f, g) -> Cyclotomic:
    """(1/|G|) sum over classes |C| f(C) conj(g(C)), exact."""
    total = cyc(0)
    for size, fv, gv in zip(table.classes.sizes, f, g):
        if not fv.is_zero() and not gv.is_zero():
            total = total + size * fv * gv.conjugate()
    return total * cyc(Fraction(1, table.group.order))


def fusion_constants(table: CharacterTable):
    """The fusion semiring on Irr(G): chi psi = sum m eta, m exact >= 0."""
    from .semiring import FusionSemiring

    r = len(table.rows)
    constants = {}
    for a in range(r):
        for b in range(a, r):
            product = [table.rows[a][c] * table.rows[b][c]
                       for c in range(table.n_classes)]
            for t in range(r):
                m = inner_product(table, product, table.rows[t])
                if not m.is_nonneg_integer():
                    raise NonIntegralFusion(
                        f"<X{a+1} X{b+1}, X{t+1}> = {m} is not a nonnegative integer")
                mi = m.to_integer()
                if mi:
                    constants[(a, b, t)] = mi
                    if a != b:
                        constants[(b, a, t)] = mi
    conj = tuple(table.conjugate_row_index(i) for i in range(r))
    labels = [f"X{i+1}" for i in range(r)]
    return FusionSemiring(
        labels=labels, constants=constants,
        identity=table.trivial_index(), conjugation=conj,
        table=table)
