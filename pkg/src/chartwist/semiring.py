"""Rigid semirings with nonnegative-integer structural constants.

A semiring here is a finite label set S with constants m^x_{x1,x2} subject to
the associativity and identity axioms, optionally with an involutive
conjugation * satisfying the pairing identity m^z_{x,y} = m^y_{x*,z}.
The enveloping ring is the free Z-module on S; spectra are computed either
from an attached character table (group-derived semirings) or by exact
eigensplitting of the multiplication matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt

from .cyclotomic import Cyclotomic, cyc
from .errors import ChartwistError, NoDegreeMap, NotCommutative, NotRigid
from .splitting import split_commutative_algebra

__all__ = [
    "FusionSemiring", "SemiringMorphism", "Spectrum", "EnvelopingElement",
    "ValidationReport", "validate", "degree_map", "rho_element",
    "verify_degree_uniqueness", "check_morphism", "spectrum",
    "induced_point_map", "restriction_morphism",
]


@dataclass
class FusionSemiring:
    labels: list[str]
    constants: dict[tuple[int, int, int], int]  # (x1, x2, x) -> m^x_{x1,x2}
    identity: int
    conjugation: tuple[int, ...] | None = None
    table: object = None  # CharacterTable backref for group-derived semirings

    @property
    def n(self) -> int:
        return len(self.labels)

    def m(self, x1: int, x2: int, x: int) -> int:
        return self.constants.get((x1, x2, x), 0)

    def product_vector(self, x1: int, x2: int) -> dict[int, int]:
        out = {}
        for (a, b, t), v in self.constants.items():
            if a == x1 and b == x2:
                out[t] = v
        return out

    def product_table(self) -> list[list[dict[int, int]]]:
        n = self.n
        table = [[{} for _ in range(n)] for _ in range(n)]
        for (a, b, t), v in self.constants.items():
            table[a][b][t] = v
        return table

    def mult_matrix(self, s: int) -> list[list[Cyclotomic]]:
        """Multiplication by [s] on the enveloping algebra, basis S."""
        n = self.n
        mat = [[cyc(0)] * n for _ in range(n)]
        for (a, b, t), v in self.constants.items():
            if a == s:
                mat[t][b] = cyc(v)
        return mat

    def is_commutative(self) -> bool:
        prods = self.product_table()
        n = self.n
        return all(prods[a][b] == prods[b][a] for a in range(n) for b in range(a))

    def to_json(self) -> dict:
        return {
            "labels": list(self.labels),
            "identity": self.identity,
            "conjugation": list(self.conjugation) if self.conjugation else None,
            "constants": sorted([x1, x2, x, m] for (x1, x2, x), m
                                in self.constants.items() if m),
        }

    @staticmethod
    def from_json(data: dict) -> "FusionSemiring":
        constants = {}
        for x1, x2, x, m in data["constants"]:
            if m < 0:
                raise ChartwistError("structural constants must be nonnegative")
            if m:
                constants[(int(x1), int(x2), int(x))] = int(m)
        conj = data.get("conjugation")
        return FusionSemiring(
            labels=[str(x) for x in data["labels"]],
            constants=constants,
            identity=int(data["identity"]),
            conjugation=tuple(conj) if conj is not None else None)


@dataclass
class ValidationReport:
    ok: bool
    failures: list[str] = field(default_factory=list)
    counterexample: tuple | None = None

    def __bool__(self):
        return self.ok


def validate(S: FusionSemiring) -> ValidationReport:
    """Check associativity, identity, nonnegativity and (if present) rigidity."""
    failures = []
    counterexample = None
    n = S.n
    for key, v in S.constants.items():
        if v < 0:
            failures.append(f"negative constant at {key}")
    e = S.identity
    prods = S.product_table()
    for s in range(n):
        if prods[s][e] != {s: 1} or prods[e][s] != {s: 1}:
            failures.append(f"identity axiom fails at label {S.labels[s]}")
    for x1 in range(n):
        for x2 in range(n):
            p12 = prods[x1][x2]
            for x3 in range(n):
                left: dict[int, int] = {}
                for s, m1 in p12.items():
                    for x, m2 in prods[s][x3].items():
                        left[x] = left.get(x, 0) + m1 * m2
                right: dict[int, int] = {}
                for t, m1 in prods[x2][x3].items():
                    for x, m2 in prods[x1][t].items():
                        right[x] = right.get(x, 0) + m1 * m2
                if left != right:
                    bad = next(x for x in set(left) | set(right)
                               if left.get(x, 0) != right.get(x, 0))
                    failures.append(
                        f"associativity fails at ({S.labels[x1]}, {S.labels[x2]}, "
                        f"{S.labels[x3]}; coefficient of {S.labels[bad]})")
                    counterexample = counterexample or (x1, x2, x3, bad)
    if S.conjugation is not None:
        star = S.conjugation
        if any(star[star[s]] != s for s in range(n)):
            failures.append("conjugation is not involutive")
        for (x, y, z), v in list(S.constants.items()):
            if S.m(star[x], z, y) != v:
                failures.append(
                    f"rigidity fails: m^{S.labels[z]}_({S.labels[x]},{S.labels[y]})"
                    f" != m^{S.labels[y]}_({S.labels[star[x]]},{S.labels[z]})")
                counterexample = counterexample or (x, y, z)
                break
        # also scan zero entries of the left side
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    if S.m(x, y, z) != S.m(star[x], z, y):
                        failures.append("rigidity fails on a zero entry")
                        counterexample = counterexample or (x, y, z)
                        break
                else:
                    continue
                break
            else:
                continue
            break
    return ValidationReport(ok=not failures, failures=failures,
                            counterexample=counterexample)


# -- degree maps ---------------------------------------------------------------


def _degree_bound(S: FusionSemiring) -> int:
    if S.conjugation is not None:
        star = S.conjugation
        b = max(sum(S.m(s, star[s], t) for t in range(S.n)) for s in range(S.n))
        return max(1, b)
    return max(1, sum(S.constants.values()))


def _degree_solutions(S: FusionSemiring, bound: int, limit: int | None = None):
    """All maps d: S -> {1..bound} with d(e) = 1 and d(a)d(b) = sum m d(t)."""
    n = S.n
    prods = S.product_table()
    order = [S.identity] + [s for s in range(n) if s != S.identity]
    solutions = []
    assign = [0] * n

    def consistent(upto):
        assigned = order[: upto + 1]
        mask = [False] * n
        for s in assigned:
            mask[s] = True
        for a in assigned:
            for b in assigned:
                target = assign[a] * assign[b]
                total = 0
                pending_min = 0
                pending_max = 0
                for t, m in prods[a][b].items():
                    if mask[t]:
                        total += m * assign[t]
                    else:
                        pending_min += m
                        pending_max += m * bound
                if total + pending_min > target or total + pending_max < target:
                    return False
        return True

    def dfs(level):
        if limit is not None and len(solutions) >= limit:
            return
        if level == n:
            solutions.append(tuple(assign))
            return
        s = order[level]
        candidates = [1] if s == S.identity else range(1, bound + 1)
        for v in candidates:
            assign[s] = v
            if consistent(level):
                dfs(level + 1)
            assign[s] = 0
            if limit is not None and len(solutions) >= limit:
                return

    dfs(0)
    return solutions


def degree_map(S: FusionSemiring) -> list[int]:
    """A degree map found by bounded exhaustive search (d(identity) = 1)."""
    sols = _degree_solutions(S, _degree_bound(S), limit=1)
    if not sols:
        raise NoDegreeMap("no degree map within search bound")
    return list(sols[0])


@dataclass
class UniquenessReport:
    unique: bool
    bound: int
    solutions: list[tuple[int, ...]]

    def __bool__(self):
        return self.unique


def verify_degree_uniqueness(S: FusionSemiring) -> UniquenessReport:
    """Exhaustive bounded search confirming exactly one degree map exists."""
    if not S.is_commutative():
        raise NotCommutative("uniqueness guaranteed for commutative rigid semirings")
    if S.conjugation is None:
        raise NotRigid("uniqueness guaranteed for commutative rigid semirings")
    bound = _degree_bound(S)
    sols = _degree_solutions(S, bound)
    return UniquenessReport(unique=len(sols) == 1, bound=bound, solutions=sols)


# -- the enveloping ring -------------------------------------------------------


@dataclass
class EnvelopingElement:
    """An element of A(S), sparse over the label basis."""

    semiring: FusionSemiring
    coefficients: dict[int, int]

    def __mul__(self, other):
        if isinstance(other, EnvelopingElement):
            prods = self.semiring.product_table()
            out: dict[int, int] = {}
            for a, ca in self.coefficients.items():
                for b, cb in other.coefficients.items():
                    for t, m in prods[a][b].items():
                        out[t] = out.get(t, 0) + ca * cb * m
            return EnvelopingElement(self.semiring,
                                     {k: v for k, v in out.items() if v})
        return EnvelopingElement(
            self.semiring,
            {k: v * other for k, v in self.coefficients.items() if v * other})

    __rmul__ = __mul__

    def __eq__(self, other):
        return (isinstance(other, EnvelopingElement)
                and self.coefficients == other.coefficients)

    def basis(self, s: int) -> "EnvelopingElement":
        return EnvelopingElement(self.semiring, {s: 1})


def rho_element(S: FusionSemiring, degrees) -> EnvelopingElement:
    """rho = sum d(s*) [s]; satisfies x rho = d(x) rho for rigid S."""
    if S.conjugation is None:
        raise NotRigid("rho requires a conjugation")
    star = S.conjugation
    return EnvelopingElement(S, {s: degrees[star[s]] for s in range(S.n)})


# -- morphisms and spectra -----------------------------------------------------


@dataclass
class SemiringMorphism:
    """A collection n^t_s of nonnegative integers, s in S, t in S'."""

    source: FusionSemiring
    target: FusionSemiring
    matrix: list[list[int]]  # matrix[s][t] = n^t_s

    def image_vector(self, s: int) -> dict[int, int]:
        return {t: v for t, v in enumerate(self.matrix[s]) if v}


@dataclass
class MorphismReport:
    ok: bool
    failure: tuple | None = None

    def __bool__(self):
        return self.ok


def check_morphism(mor: SemiringMorphism) -> MorphismReport:
    """Verify the morphism condition linking m, m' and n (ring homomorphism)."""
    S, T = mor.source, mor.target
    sprods = S.product_table()
    tprods = T.product_table()
    for s1 in range(S.n):
        im1 = mor.image_vector(s1)
        for s2 in range(S.n):
            im2 = mor.image_vector(s2)
            left: dict[int, int] = {}
            for s, m in sprods[s1][s2].items():
                for t, v in mor.image_vector(s).items():
                    left[t] = left.get(t, 0) + m * v
            right: dict[int, int] = {}
            for t1, v1 in im1.items():
                for t2, v2 in im2.items():
                    for t, m in tprods[t1][t2].items():
                        right[t] = right.get(t, 0) + v1 * v2 * m
            if left != right:
                t = next(t for t in set(left) | set(right)
                         if left.get(t, 0) != right.get(t, 0))
                return MorphismReport(ok=False, failure=(s1, s2, t))
    return MorphismReport(ok=True)


@dataclass
class Spectrum:
    """Points of Cl(S) with the evaluation table x(c)."""

    semiring: FusionSemiring
    point_names: list[str]
    values: list[list[Cyclotomic]]  # values[label][point]

    @property
    def n_points(self) -> int:
        return len(self.point_names)

    def column(self, c: int) -> tuple[Cyclotomic, ...]:
        return tuple(self.values[s][c] for s in range(self.semiring.n))


def spectrum(S: FusionSemiring, seed: int = 1) -> Spectrum:
    """Cl(S) and the evaluation table, by exact eigensplitting.

    For semirings attached to a character table the spectrum is the table
    itself (points = conjugacy classes, evaluation chi(C)).
    """
    if not S.is_commutative():
        raise NotCommutative("spectrum requires a commutative semiring")
    if S.table is not None:
        tbl = S.table
        names = tbl.class_names()
        values = [[tbl.rows[s][c] for c in range(len(names))] for s in range(S.n)]
        return Spectrum(S, names, values)
    mats = [S.mult_matrix(s) for s in range(S.n)]
    result = split_commutative_algebra(mats, seed=seed)
    chars = sorted(result.characters, key=lambda ch: [v.sort_key() for v in ch])
    values = [[chars[c][s] for c in range(len(chars))] for s in range(S.n)]
    names = [f"c{c+1}" for c in range(len(chars))]
    return Spectrum(S, names, values)


def induced_point_map(mor: SemiringMorphism, spec_source: Spectrum,
                      spec_target: Spectrum) -> list[int]:
    """The map f*: Cl(S') -> Cl(S) with f(s)(c) = s(f*(c)) for all s, c.

    Returns, for each point of Cl(S'), the index of the matching point of
    Cl(S).  Raises if no consistent choice exists (contradicting the
    semiring-morphism check, hence a bug).
    """
    S = mor.source
    out = []
    for c in range(spec_target.n_points):
        evaluated = []
        for s in range(S.n):
            total = cyc(0)
            for t, v in mor.image_vector(s).items():
                total = total + v * spec_target.values[t][c]
            evaluated.append(total)
        matches = [cc for cc in range(spec_source.n_points)
                   if all(spec_source.values[s][cc] == evaluated[s]
                          for s in range(S.n))]
        if len(matches) != 1:
            raise ChartwistError(
                f"induced point map not unique/consistent at point {c}")
        out.append(matches[0])
    return out


def restriction_morphism(big_table, small_table, embedding=None) -> SemiringMorphism:
    """The restriction Irr(G) -> semiring of characters of H for H <= G.

    embedding: optional map from H's elements into G (defaults to identity
    inclusion of permutations, which requires equal degrees).
    """
    from .char_table import fusion_constants, inner_product

    G = big_table.group
    H = small_table.group
    emb = embedding or (lambda h: h)
    Scls = big_table.classes
    Hcls = small_table.classes
    matrix = []
    for s in range(len(big_table.rows)):
        restricted = []
        for i, rep in enumerate(Hcls.representatives):
            g = emb(rep)
            restricted.append(big_table.rows[s][Scls.class_of[g]])
        row = []
        for t in range(len(small_table.rows)):
            mult = inner_product(small_table, restricted, small_table.rows[t])
            if not mult.is_nonneg_integer():
                raise ChartwistError("restriction multiplicities not integral")
            row.append(mult.to_integer())
        matrix.append(row)
    return SemiringMorphism(source=fusion_constants(big_table),
                            target=fusion_constants(small_table),
                            matrix=matrix)
