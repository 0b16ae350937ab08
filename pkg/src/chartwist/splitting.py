"""Exact simultaneous eigendecomposition of commuting multiplication matrices.

Used for spectra of commutative semirings, twisted group-like computation and
central idempotents of Galois algebras.  Blocks are refined by kernels of
irreducible factors of minimal polynomials; factoring over a cyclotomic field
is delegated to sympy (Trager's method) with the field escalated through a
small conductor list until everything splits linearly.  All results are exact
Cyclotomic data; sympy only ever factors polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from random import Random

from .cyclotomic import Cyclotomic, cyc, zeta
from .errors import NotSemisimple
from .linalg import krylov_min_poly, mat_vec, nullspace, solve

_ESCALATION = (1, 4, 3, 8, 12, 5, 24, 16, 9, 7, 36, 60, 11, 40, 120)


@dataclass
class SplitResult:
    characters: list[tuple[Cyclotomic, ...]]  # character values on the basis
    vectors: list[list[Cyclotomic]]           # a common eigenvector per character


def split_commutative_algebra(mult_mats, seed: int = 1) -> SplitResult:
    """Split K^n under commuting, simultaneously diagonalizable matrices.

    mult_mats[j] is multiplication by basis element j in some commutative
    associative algebra.  Raises NotSemisimple when no supported cyclotomic
    field splits the family into n distinct common eigenlines.
    """
    n = len(mult_mats)
    if n == 0:
        return SplitResult([], [])
    zero, one = cyc(0), cyc(1)

    if all(_is_diagonal(m) for m in mult_mats):
        chars = [tuple(mult_mats[j][i][i] for j in range(n)) for i in range(n)]
        vecs = [[one if t == i else zero for t in range(n)] for i in range(n)]
        if len(set(chars)) != n:
            raise NotSemisimple("repeated characters in diagonal algebra")
        return SplitResult(chars, vecs)

    base = 1
    for m in mult_mats:
        for row in m:
            for v in row:
                base = lcm(base, v.conductor)

    rng = Random(seed)
    combos = []
    for _ in range(6):
        weights = [cyc(rng.randrange(1, 997)) for _ in range(n)]
        combos.append([[sum((weights[t] * mult_mats[t][i][j] for t in range(n)),
                            start=zero) for j in range(n)] for i in range(n)])
    operators = list(mult_mats) + combos

    last_error = None
    for mult in _ESCALATION:
        N = _normalize_conductor(lcm(base, mult))
        try:
            vectors = _split_over(operators, N, n)
        except _NeedsLargerField as exc:
            last_error = exc
            continue
        chars = []
        for v in vectors:
            t = next(i for i, x in enumerate(v) if not x.is_zero())
            inv = v[t].inverse()
            chars.append(tuple((mat_vec(m, v)[t]) * inv for m in mult_mats))
        if len(set(chars)) != n:
            raise NotSemisimple("common eigenlines do not separate")
        return SplitResult(chars, vectors)
    raise NotSemisimple(
        f"spectrum not split by supported cyclotomic fields ({last_error})")


def _normalize_conductor(n: int) -> int:
    return n // 2 if n % 4 == 2 else n


def _is_diagonal(m) -> bool:
    return all(m[i][j].is_zero() for i in range(len(m)) for j in range(len(m))
               if i != j)


class _NeedsLargerField(Exception):
    pass


def _split_over(operators, N, n):
    zero, one = cyc(0), cyc(1)
    blocks = [[_unit(n, i, one, zero) for i in range(n)]]
    done = []
    while blocks:
        basis = blocks.pop()
        if len(basis) == 1:
            done.append(basis[0])
            continue
        m = len(basis)
        progressed = False
        saw_nonlinear = False
        for op in operators:
            sub = _restrict(op, basis)
            minpoly = _matrix_min_poly(sub)
            if len(minpoly) <= 2:
                continue  # scalar on this block
            factors = _factor_cyclotomic(tuple(minpoly), N)
            if any(len(f) > 2 for f, _ in factors):
                saw_nonlinear = True
                continue
            for fac, _mult in factors:
                lam = -fac[0]
                shifted = [[sub[i][j] - (lam if i == j else zero)
                            for j in range(m)] for i in range(m)]
                kern = nullspace(shifted)
                newbasis = [_combine(coeffs, basis, n, zero) for coeffs in kern]
                blocks.append(newbasis)
            progressed = True
            break
        if not progressed:
            if saw_nonlinear:
                raise _NeedsLargerField(f"nonlinear factor over Q(zeta_{N})")
            raise NotSemisimple("block not separated by multiplication operators")
    if len(done) != n:
        raise NotSemisimple("wrong number of eigenlines")
    return done


def _unit(n, i, one, zero):
    v = [zero] * n
    v[i] = one
    return v


def _combine(coeffs, basis, n, zero):
    out = [zero] * n
    for c, b in zip(coeffs, basis):
        if not c.is_zero():
            for t in range(n):
                if not b[t].is_zero():
                    out[t] = out[t] + c * b[t]
    return out


def _restrict(op, basis):
    n = len(basis[0])
    m = len(basis)
    mat = [[basis[j][i] for j in range(m)] for i in range(n)]
    rhs = [[mat_vec(op, basis[j])[i] for j in range(m)] for i in range(n)]
    sol = solve(mat, rhs)
    assert sol is not None, "operator does not preserve block"
    return sol


def _matrix_min_poly(mat):
    """Monic minimal polynomial via the flattened-powers echelon."""
    m = len(mat)
    flat_dim = m * m

    def matvec(vec):
        # vec is the flattened current power; multiply by mat on the left
        cur = [vec[i * m:(i + 1) * m] for i in range(m)]
        out = []
        for i in range(m):
            row = mat[i]
            out.extend([sum((row[t] * cur[t][j] for t in range(m)), start=cyc(0))
                        for j in range(m)])
        return out

    identity = []
    for i in range(m):
        identity.extend([cyc(1) if i == j else cyc(0) for j in range(m)])
    return krylov_min_poly(matvec, identity, flat_dim)


# -- polynomial factorization over Q(zeta_N) ----------------------------------


@lru_cache(maxsize=None)
def _sympy_field(N: int):
    import sympy

    x = sympy.symbols("x")
    if N == 1:
        return sympy.QQ, None, x
    gen = sympy.exp(2 * sympy.I * sympy.pi * sympy.Rational(1, N))
    return sympy.QQ.algebraic_field(gen), gen, x


def _to_field(value: Cyclotomic, N: int, dom, gen):
    import sympy

    if value.is_rational():
        q = value.as_rational()
        return dom.convert(sympy.Rational(q.numerator, q.denominator))
    expr = sympy.Integer(0)
    step = N // value.conductor
    for k, a in value.terms.items():
        expr += sympy.Rational(a.numerator, a.denominator) * gen ** (k * step)
    return dom.convert(expr)


def _from_field(elem, N: int) -> Cyclotomic:
    if isinstance(elem, (int,)):
        return cyc(elem)
    rep = elem.rep if hasattr(elem, "rep") else elem
    coeffs = rep.to_list() if hasattr(rep, "to_list") else list(rep)
    deg = len(coeffs) - 1
    out = cyc(0)
    for i, c in enumerate(coeffs):
        frac = Fraction(int(c.numerator), int(c.denominator))
        if frac:
            out = out + cyc(frac) * zeta(N, deg - i)
    return out


@lru_cache(maxsize=4096)
def _factor_cyclotomic(coeffs: tuple, N: int):
    """Factor a monic poly with Cyclotomic coefficients over Q(zeta_N).

    Returns [(factor_coeffs lowest-first, multiplicity), ...] with monic
    factors; linear factors are (( -root, 1 ), mult).
    """
    import sympy

    dom, gen, x = _sympy_field(N)
    if N == 1:
        sy_coeffs = [sympy.Rational(c.as_rational().numerator,
                                    c.as_rational().denominator)
                     for c in reversed(coeffs)]
        poly = sympy.Poly(sy_coeffs, x, domain=sympy.QQ)
        _, factors = poly.factor_list()
        out = []
        for fac, mult in factors:
            fc = [cyc(Fraction(int(c.numerator), int(c.denominator)))
                  for c in fac.rep.to_list()]
            lead = fc[0]
            fc = [c / lead for c in fc]
            out.append((tuple(reversed(fc)), mult))
        return out

    dom_coeffs = [_to_field(c, N, dom, gen) for c in reversed(coeffs)]
    poly = sympy.Poly(dom_coeffs, x, domain=dom)
    _, factors = poly.factor_list()
    out = []
    for fac, mult in factors:
        fc = [_from_field(c, N) for c in fac.rep.to_list()]
        lead = fc[0]
        fc = [c / lead for c in fc]
        out.append((tuple(reversed(fc)), mult))
    return out
