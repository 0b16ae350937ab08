"""Character table isomorphisms and their group-theoretic provenance.

A table bijection is a pair (sigma, tau) of bijections between irreducibles
and between classes of two groups making the tables agree exactly.  The
search uses only table-derivable invariants for pruning (degrees, class
sizes, value multisets): element orders and power maps must NOT prune, since
honest table bijections may violate them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .char_table import CharacterTable, character_table, inner_product
from .config import DEFAULT, Config
from .cyclotomic import Cyclotomic, cyc
from .errors import (NotAHomomorphism, OrderCapExceeded, SearchBudgetExceeded)
from .perm_group import (GroupMap, PermGroup, _iso_search, automorphisms,
                         inner_automorphisms, named_group)

__all__ = [
    "TableBijection", "find_table_isomorphisms", "is_group_induced",
    "ClassPreservingPartition", "class_preserving_automorphisms",
    "PermutationRepresentation", "permutation_character",
    "decompose_class_function", "same_permutation_character",
    "natural_representation", "regular_representation", "coset_representation",
]


@dataclass(frozen=True)
class TableBijection:
    """sigma: Irr(G2) -> Irr(G1) and tau: cl(G1) -> cl(G2), as index tuples."""

    sigma: tuple[int, ...]
    tau: tuple[int, ...]

    def verify(self, T1: CharacterTable, T2: CharacterTable) -> bool:
        r = len(T1.rows)
        return all(
            T1.rows[self.sigma[chi]][c] == T2.rows[chi][self.tau[c]]
            for chi in range(r) for c in range(r))

    def compose(self, other: "TableBijection") -> "TableBijection":
        """self after other, for endo-bijections of a single table."""
        sigma = tuple(other.sigma[s] for s in self.sigma)
        tau = tuple(other.tau[t] for t in self.tau)
        return TableBijection(sigma, tau)

    def inverse(self) -> "TableBijection":
        sigma = [0] * len(self.sigma)
        tau = [0] * len(self.tau)
        for i, j in enumerate(self.sigma):
            sigma[j] = i
        for i, j in enumerate(self.tau):
            tau[j] = i
        return TableBijection(tuple(sigma), tuple(tau))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.sigma)) and \
            all(i == j for i, j in enumerate(self.tau))


def _column(T: CharacterTable, c: int):
    return [T.rows[i][c] for i in range(len(T.rows))]


def _multiset(values) -> tuple:
    return tuple(sorted(v.sort_key() for v in values))


def find_table_isomorphisms(T1: CharacterTable, T2: CharacterTable,
                            config: Config = DEFAULT,
                            limit: int | None = None) -> list["TableBijection"]:
    """All (sigma, tau) with chi^sigma(C) = chi(C^tau); empty list if none.

    Exhaustive backtracking over the class bijection tau with forward checking
    on row candidates; each complete tau admits at most one sigma because
    irreducible rows are pairwise distinct.
    """
    r = len(T1.rows)
    if len(T2.rows) != r:
        return []
    if sorted(T1.degrees) != sorted(T2.degrees):
        return []
    sizes1, sizes2 = T1.classes.sizes, T2.classes.sizes
    if sorted(sizes1) != sorted(sizes2):
        return []

    col_sig1 = [(_multiset(_column(T1, c)), sizes1[c]) for c in range(r)]
    col_sig2 = [(_multiset(_column(T2, c)), sizes2[c]) for c in range(r)]
    if sorted(col_sig1) != sorted(col_sig2):
        return []
    candidates = [[c2 for c2 in range(r) if col_sig2[c2] == col_sig1[c1]]
                  for c1 in range(r)]

    row_sig1 = [(T1.degrees[i], _multiset(T1.rows[i])) for i in range(r)]
    row_sig2 = [(T2.degrees[i], _multiset(T2.rows[i])) for i in range(r)]
    if sorted(row_sig1) != sorted(row_sig2):
        return []
    row_cand0 = [frozenset(i1 for i1 in range(r) if row_sig1[i1] == row_sig2[i2])
                 for i2 in range(r)]
    if any(not s for s in row_cand0):
        return []

    order = sorted(range(r), key=lambda c: len(candidates[c]))
    row_index1 = {T1.rows[i]: i for i in range(r)}
    results = []
    budget = [config.search_budget]

    def dfs(level, tau, used, row_cand):
        if limit is not None and len(results) >= limit:
            return
        budget[0] -= 1
        if budget[0] < 0:
            raise SearchBudgetExceeded("table isomorphism search budget exhausted")
        if level == r:
            sigma = [None] * r
            for i2 in range(r):
                permuted = tuple(T2.rows[i2][tau[c]] for c in range(r))
                i1 = row_index1.get(permuted)
                if i1 is None:
                    return
                sigma[i2] = i1
            if len(set(sigma)) != r:
                return
            bij = TableBijection(tuple(sigma), tuple(tau))
            assert bij.verify(T1, T2)
            results.append(bij)
            return
        c1 = order[level]
        for c2 in candidates[c1]:
            if c2 in used:
                continue
            new_cand = []
            ok = True
            for i2 in range(r):
                narrowed = frozenset(
                    i1 for i1 in row_cand[i2]
                    if T1.rows[i1][c1] == T2.rows[i2][c2])
                if not narrowed:
                    ok = False
                    break
                new_cand.append(narrowed)
            if not ok:
                continue
            tau[c1] = c2
            dfs(level + 1, tau, used | {c2}, new_cand)
            tau[c1] = None
        return

    dfs(0, [None] * r, frozenset(), row_cand0)
    results.sort(key=lambda b: (b.sigma, b.tau))
    return results


def is_group_induced(b: TableBijection, G1: PermGroup, G2: PermGroup,
                     T1: CharacterTable | None = None,
                     T2: CharacterTable | None = None,
                     config: Config = DEFAULT) -> GroupMap | None:
    """A group isomorphism f: G1 -> G2 inducing (sigma, tau), or None.

    The search over all isomorphisms is exhaustive, so None is a certificate.
    """
    if max(G1.order, G2.order) > config.aut_cap:
        raise OrderCapExceeded("group-induced check capped")
    T1 = T1 or character_table(G1, config)
    T2 = T2 or character_table(G2, config)
    cls1, cls2 = T1.classes, T2.classes
    for f in _iso_search(G1, G2, config):
        tau = tuple(cls2.class_of[f(rep)] for rep in cls1.representatives)
        if tau != b.tau:
            continue
        sigma = []
        for i2 in range(len(T2.rows)):
            permuted = tuple(T2.rows[i2][tau[c]] for c in range(len(tau)))
            try:
                sigma.append(T1.rows.index(permuted))
            except ValueError:
                sigma = None
                break
        if sigma is not None and tuple(sigma) == b.sigma:
            return f
    return None


@dataclass
class ClassPreservingPartition:
    inner: list[GroupMap]
    outer_class_preserving: list[GroupMap]
    rest: list[GroupMap]

    @property
    def all_automorphisms(self):
        return self.inner + self.outer_class_preserving + self.rest


def class_preserving_automorphisms(G: PermGroup,
                                   config: Config = DEFAULT) -> ClassPreservingPartition:
    """Partition Aut(G) into inner / outer class-preserving / the rest."""
    cls = G.conjugacy_classes()
    auts = automorphisms(G, config)
    inner = set(inner_automorphisms(G))

    def preserves(f: GroupMap) -> bool:
        return all(cls.class_of[f(g)] == cls.class_of[g] for g in G.elements)

    part = ClassPreservingPartition([], [], [])
    for f in auts:
        if f in inner:
            assert preserves(f), "inner automorphism must preserve classes"
            part.inner.append(f)
        elif preserves(f):
            part.outer_class_preserving.append(f)
        else:
            part.rest.append(f)
    return part


# -- permutation representations ----------------------------------------------


@dataclass
class PermutationRepresentation:
    """A verified homomorphism from a source group into Sym(n)."""

    source: PermGroup
    degree: int
    images: dict  # every source element -> Permutation of degree n

    def __call__(self, g):
        return self.images[g]


def _build_representation(G: PermGroup, gens, gen_images,
                          degree: int) -> PermutationRepresentation:
    from .perm_group import Permutation

    table = {G.identity: Permutation.identity(degree)}
    frontier = [G.identity]
    pairs = list(zip(gens, gen_images))
    while frontier:
        new = []
        for a in frontier:
            fa = table[a]
            for g, h in pairs:
                b = a * g
                fb = fa * h
                known = table.get(b)
                if known is None:
                    table[b] = fb
                    new.append(b)
                elif known != fb:
                    raise NotAHomomorphism(
                        f"images are inconsistent at {b.cycle_string()}")
        frontier = new
    if len(table) != G.order:
        raise NotAHomomorphism("generators do not generate the source group")
    return PermutationRepresentation(source=G, degree=degree, images=table)


def natural_representation(G: PermGroup) -> PermutationRepresentation:
    return _build_representation(G, list(G.generators), list(G.generators),
                                 G.degree)


def regular_representation(G: PermGroup) -> PermutationRepresentation:
    from .perm_group import Permutation

    gens, images = [], []
    for g in G.generators:
        gens.append(g)
        images.append(Permutation([G.index[x * g] for x in G.elements]))
    return _build_representation(G, gens, images, G.order)


def coset_representation(G: PermGroup, subgroup_elements) -> PermutationRepresentation:
    """Action on right cosets Hx by right multiplication."""
    from .perm_group import Permutation

    H = sorted(subgroup_elements)
    seen = set()
    reps = []
    for x in G.elements:
        if x in seen:
            continue
        coset = frozenset(h * x for h in H)
        seen |= coset
        reps.append(min(coset))
    coset_index = {}
    for i, rep in enumerate(reps):
        for h in H:
            coset_index[h * rep] = i
    gens, images = [], []
    for g in G.generators:
        gens.append(g)
        images.append(Permutation([coset_index[rep * g] for rep in reps]))
    return _build_representation(G, gens, images, len(reps))


def permutation_character(phi: PermutationRepresentation) -> list[Cyclotomic]:
    """chi_phi(C) = number of fixed points of phi(rep_C), per class."""
    cls = phi.source.conjugacy_classes()
    out = []
    for rep in cls.representatives:
        img = phi(rep)
        out.append(cyc(sum(1 for i, j in enumerate(img.images) if i == j)))
    return out


def decompose_class_function(T: CharacterTable, values) -> list[int]:
    """Multiplicities of a class function against the irreducibles (exact)."""
    mults = []
    for row in T.rows:
        m = inner_product(T, list(values), list(row))
        if not m.is_nonneg_integer():
            raise ValueError(f"multiplicity {m} is not a nonnegative integer")
        mults.append(m.to_integer())
    return mults


@dataclass
class SamePermCharReport:
    equal_characters: bool
    induced_maps_agree: bool | None = None  # None when not checked (n > 5)
    detail: str = ""


def same_permutation_character(phi: PermutationRepresentation,
                               psi: PermutationRepresentation,
                               config: Config = DEFAULT) -> SamePermCharReport:
    """Compare chi_phi with chi_psi; for n <= 5 also compare the induced
    maps eta -> eta(phi(.)) on the full character ring of Sym(n)."""
    if phi.source is not psi.source and phi.source.elements != psi.source.elements:
        raise ValueError("representations must share a source group")
    if phi.degree != psi.degree:
        raise ValueError("representations must share a degree")
    chi_phi = permutation_character(phi)
    chi_psi = permutation_character(psi)
    equal = chi_phi == chi_psi
    agree = None
    if equal and phi.degree <= 5:
        Sn = named_group(f"S{phi.degree}", config)
        Tn = character_table(Sn, config)
        cls_n = Tn.classes
        cls_g = phi.source.conjugacy_classes()
        agree = True
        for eta in Tn.rows:
            for rep in cls_g.representatives:
                v1 = eta[cls_n.class_of[phi(rep)]]
                v2 = eta[cls_n.class_of[psi(rep)]]
                if v1 != v2:
                    agree = False
                    break
            if not agree:
                break
    return SamePermCharReport(equal_characters=equal, induced_maps_agree=agree)
