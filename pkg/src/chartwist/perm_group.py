"""Finite permutation groups at desk scale.

Groups are closures of permutation generators acting on {0..degree-1}
(rendered 1-based in cycle notation).  Element enumeration is capped; all
derived data (conjugacy classes, power maps, automorphisms, subgroups) is
deterministic: elements sort by image tuples and classes by
(element order, class size, least representative).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache, reduce
from math import lcm

from .config import DEFAULT, Config
from .errors import NotAHomomorphism, OrderCapExceeded, ParseError, UnknownName

__all__ = [
    "Permutation", "PermGroup", "ConjugacyClasses", "GroupMap",
    "closure", "named_group", "parse_cycles", "automorphisms",
    "inner_automorphisms", "is_isomorphic", "normal_abelian_subgroups",
    "subgroups", "CATALOG",
]


class Permutation:
    """A bijection of {0..degree-1}; products apply the left factor first."""

    __slots__ = ("images", "_hash")

    def __init__(self, images):
        self.images = tuple(images)
        self._hash = hash(self.images)
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a bijection: {images}")

    @staticmethod
    def identity(degree: int) -> "Permutation":
        return Permutation(range(degree))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        oi = other.images
        return Permutation(tuple(oi[i] for i in self.images))

    def __call__(self, point: int) -> int:
        return self.images[point]

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv)

    def __pow__(self, k: int) -> "Permutation":
        n = len(self.images)
        if k < 0:
            return self.inverse() ** (-k)
        result = Permutation.identity(n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate_by(self, h: "Permutation") -> "Permutation":
        """h^-1 * self * h (apply-left-first convention)."""
        return h.inverse() * self * h

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def order(self) -> int:
        return reduce(lcm, (len(c) for c in self.cycles()), 1)

    def cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start] or self.images[start] == start:
                seen[start] = True
                continue
            cyc = [start]
            seen[start] = True
            j = self.images[start]
            while j != start:
                cyc.append(j)
                seen[j] = True
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other):
        return self.images < other.images

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Permutation({self.cycle_string()!r}, degree={self.degree})"

    def cycle_string(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(str(p + 1) for p in c) + ")" for c in cycs)


def _parse_cycles_body(text: str, offset: int) -> list[list[int]]:
    cycles = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch != "(":
            raise ParseError(f"expected '(' but found {ch!r}", offset + i)
        i += 1
        points = []
        num = ""
        while i < n and text[i] != ")":
            if text[i].isdigit():
                num += text[i]
            elif text[i].isspace() or text[i] == ",":
                if num:
                    points.append(int(num))
                    num = ""
            else:
                raise ParseError(f"unexpected {text[i]!r} in cycle", offset + i)
            i += 1
        if i == n:
            raise ParseError("unterminated cycle", offset + i)
        if num:
            points.append(int(num))
        i += 1
        if any(p < 1 for p in points):
            raise ParseError("points are 1-based", offset + i)
        if len(set(points)) != len(points):
            raise ParseError("repeated point inside a cycle", offset + i)
        cycles.append(points)
    flat = [p for c in cycles for p in c]
    if len(set(flat)) != len(flat):
        raise ParseError("cycles of one element must be disjoint", offset)
    return cycles


def parse_cycles(text: str, degree: int | None = None, offset: int = 0) -> Permutation:
    """Parse one product of disjoint cycles like ``(1 2)(3 4)``."""
    cycles = _parse_cycles_body(text, offset)
    maxpt = max((p for c in cycles for p in c), default=1)
    deg = degree if degree is not None else maxpt
    if maxpt > deg:
        raise ParseError(f"point {maxpt} exceeds degree {deg}", offset)
    images = list(range(deg))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            images[a - 1] = b - 1
    return Permutation(images)


class PermGroup:
    """A finite permutation group with a full, deterministic element list."""

    def __init__(self, generators, _elements=None, config: Config = DEFAULT):
        generators = [g for g in generators]
        if not generators:
            raise ValueError("need at least one generator (use the identity)")
        degree = generators[0].degree
        if any(g.degree != degree for g in generators):
            raise ValueError("generators must share a degree")
        self.degree = degree
        self.generators = tuple(generators)
        self.config = config
        if _elements is None:
            _elements = _close(generators, config.order_cap)
        self.elements = tuple(sorted(_elements))
        self.index = {g: i for i, g in enumerate(self.elements)}
        self.identity = Permutation.identity(degree)
        self._classes = None
        self._subgroup_cache = {}

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, g):
        return g in self.index

    def __iter__(self):
        return iter(self.elements)

    def element_orders(self) -> list[int]:
        return [g.order() for g in self.elements]

    def exponent(self) -> int:
        return reduce(lcm, (g.order() for g in self.elements), 1)

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(a * b == b * a for a in gens for b in gens)

    def center(self) -> list[Permutation]:
        return [g for g in self.elements
                if all(g * h == h * g for h in self.generators)]

    def subgroup(self, elems) -> "PermGroup":
        key = frozenset(elems)
        cached = self._subgroup_cache.get(key)
        if cached is None:
            cached = PermGroup(sorted(key), _elements=key, config=self.config)
            self._subgroup_cache[key] = cached
        return cached

    def conjugacy_classes(self) -> "ConjugacyClasses":
        if self._classes is None:
            self._classes = _conjugacy_classes(self)
        return self._classes

    def __repr__(self):
        return f"PermGroup(order={self.order}, degree={self.degree})"


def _close(generators, cap):
    degree = generators[0].degree
    identity = Permutation.identity(degree)
    els = {identity}
    frontier = [identity]
    while frontier:
        new = []
        for a in frontier:
            for g in generators:
                b = a * g
                if b not in els:
                    els.add(b)
                    new.append(b)
                    if len(els) > cap:
                        raise OrderCapExceeded(
                            f"closure exceeds order cap {cap}")
        frontier = new
    return els


def closure(generators, config: Config = DEFAULT) -> PermGroup:
    """The group generated by the given permutations."""
    return PermGroup(generators, config=config)


@dataclass
class ConjugacyClasses:
    """Conjugacy classes in canonical order with power maps.

    Canonical order: (element order, class size, least representative).
    power_maps[k][i] is the class index of rep_i ** k.
    """

    group: PermGroup
    representatives: list[Permutation]
    sizes: list[int]
    orders: list[int]
    class_of: dict[Permutation, int]
    members: list[tuple[Permutation, ...]]
    power_maps: dict[int, tuple[int, ...]] = field(default_factory=dict)

    def __len__(self):
        return len(self.representatives)

    def power_map(self, k: int) -> tuple[int, ...]:
        pm = self.power_maps.get(k)
        if pm is None:
            pm = tuple(self.class_of[rep ** k] for rep in self.representatives)
            self.power_maps[k] = pm
        return pm

    def inverse_map(self) -> tuple[int, ...]:
        return tuple(self.class_of[rep.inverse()] for rep in self.representatives)

    def names(self) -> list[str]:
        """ATLAS-style names: element order plus a letter in canonical order."""
        counts: dict[int, int] = {}
        out = []
        for o in self.orders:
            idx = counts.get(o, 0)
            counts[o] = idx + 1
            out.append(f"{o}{chr(ord('A') + idx)}" if o > 1 else "1")
        return out


def _conjugacy_classes(G: PermGroup) -> ConjugacyClasses:
    unassigned = set(G.elements)
    raw = []
    while unassigned:
        start = min(unassigned)
        orbit = {start}
        frontier = [start]
        while frontier:
            new = []
            for x in frontier:
                for g in G.generators:
                    y = x.conjugate_by(g)
                    if y not in orbit:
                        orbit.add(y)
                        new.append(y)
            frontier = new
        unassigned -= orbit
        members = tuple(sorted(orbit))
        raw.append((members[0].order(), len(members), members))
    raw.sort(key=lambda t: (t[0], t[1], t[2][0].images))
    reps = [members[0] for _, _, members in raw]
    sizes = [size for _, size, _ in raw]
    orders = [order for order, _, _ in raw]
    class_of = {}
    for i, (_, _, members) in enumerate(raw):
        for g in members:
            class_of[g] = i
    classes = ConjugacyClasses(
        group=G, representatives=reps, sizes=sizes, orders=orders,
        class_of=class_of, members=[m for _, _, m in raw])
    exp = G.exponent()
    for k in range(exp + 1):
        classes.power_map(k)
    return classes


# -- homomorphisms, automorphisms, isomorphisms ----------------------------


class GroupMap:
    """A homomorphism between enumerated groups, stored as an index table."""

    __slots__ = ("source", "target", "table")

    def __init__(self, source: PermGroup, target: PermGroup, table):
        self.source = source
        self.target = target
        self.table = tuple(table)

    def __call__(self, g: Permutation) -> Permutation:
        return self.target.elements[self.table[self.source.index[g]]]

    def is_bijective(self) -> bool:
        return (len(set(self.table)) == len(self.table)
                and self.source.order == self.target.order)

    def compose(self, other: "GroupMap") -> "GroupMap":
        """self after other (other first)."""
        assert other.target is self.source or other.target.elements == self.source.elements
        table = [self.table[i] for i in other.table]
        return GroupMap(other.source, self.target, table)

    def inverse(self) -> "GroupMap":
        assert self.is_bijective()
        inv = [0] * len(self.table)
        for i, j in enumerate(self.table):
            inv[j] = i
        return GroupMap(self.target, self.source, inv)

    def is_identity(self) -> bool:
        return self.source is self.target and all(
            i == j for i, j in enumerate(self.table))

    def __eq__(self, other):
        return (isinstance(other, GroupMap) and self.table == other.table
                and self.source.elements == other.source.elements
                and self.target.elements == other.target.elements)

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        kind = "Automorphism" if self.source is self.target else "GroupMap"
        gens = ", ".join(
            f"{g.cycle_string()}->{self(g).cycle_string()}" for g in self.source.generators)
        return f"{kind}({gens})"

    def as_dict(self) -> dict[Permutation, Permutation]:
        return {g: self(g) for g in self.source.elements}


def extend_hom(G: PermGroup, H: PermGroup, gens, images) -> GroupMap | None:
    """Extend generator images to a homomorphism G -> H, or None.

    gens must generate G.  Verifies f(a g) = f(a) f(g) for every element a and
    generator g, which forces multiplicativity everywhere.
    """
    table = {G.identity: H.identity}
    frontier = [G.identity]
    pairs = list(zip(gens, images))
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
                    return None
        frontier = new
    if len(table) != G.order:
        return None  # gens do not generate G
    return GroupMap(G, H, [H.index[table[g]] for g in G.elements])


def generating_sequence(G: PermGroup) -> list[Permutation]:
    seq, current = [], {G.identity}
    for g in G.generators:
        if g not in current:
            seq.append(g)
            current = _close(seq, G.config.order_cap)
            if len(current) == G.order:
                break
    return seq


def _iso_search(G: PermGroup, H: PermGroup, config: Config):
    """Yield all isomorphisms G -> H via backtracking over generator images."""
    if G.order != H.order:
        return
    if sorted(g.order() for g in G.elements) != sorted(h.order() for h in H.elements):
        return
    gcls, hcls = G.conjugacy_classes(), H.conjugacy_classes()
    if sorted(zip(gcls.orders, gcls.sizes)) != sorted(zip(hcls.orders, hcls.sizes)):
        return
    gens = generating_sequence(G)
    pools = []
    for g in gens:
        ci = gcls.class_of[g]
        key = (gcls.orders[ci], gcls.sizes[ci])
        pool = [h for h in H.elements
                if (hcls.orders[hcls.class_of[h]], hcls.sizes[hcls.class_of[h]]) == key]
        pools.append(pool)

    def dfs(level, chosen):
        if level == len(gens):
            hom = extend_hom(G, H, gens, chosen)
            if hom is not None and hom.is_bijective():
                yield hom
            return
        for h in pools[level]:
            # cheap local pruning: orders of pairwise products must match
            ok = True
            for i in range(level):
                if (gens[i] * gens[level]).order() != (chosen[i] * h).order():
                    ok = False
                    break
            if ok:
                yield from dfs(level + 1, chosen + [h])

    yield from dfs(0, [])


def is_isomorphic(G: PermGroup, H: PermGroup, config: Config = DEFAULT) -> GroupMap | None:
    """A group isomorphism G -> H, or None certified by exhausted search."""
    if max(G.order, H.order) > config.aut_cap:
        raise OrderCapExceeded(
            f"isomorphism search capped at order {config.aut_cap}")
    return next(_iso_search(G, H, config), None)


def automorphisms(G: PermGroup, config: Config = DEFAULT) -> list[GroupMap]:
    """The full automorphism group, enumerated by backtracking."""
    if G.order > config.aut_cap:
        raise OrderCapExceeded(
            f"automorphism search capped at order {config.aut_cap}")
    return list(_iso_search(G, G, config))


def inner_automorphisms(G: PermGroup) -> list[GroupMap]:
    seen = {}
    for h in G.elements:
        table = tuple(G.index[g.conjugate_by(h)] for g in G.elements)
        if table not in seen:
            seen[table] = GroupMap(G, G, table)
    return list(seen.values())


# -- subgroup enumeration ----------------------------------------------------

_LATTICE_CAP = 200


def subgroups(G: PermGroup) -> list[frozenset]:
    """All subgroups (as element sets) by cyclic extension, small groups only."""
    if G.order > _LATTICE_CAP:
        raise OrderCapExceeded(
            f"subgroup lattice enumeration capped at order {_LATTICE_CAP}")
    found = {frozenset([G.identity])}
    frontier = list(found)
    while frontier:
        new = []
        for H in frontier:
            for g in G.elements:
                if g in H:
                    continue
                ext = frozenset(_close(sorted(H | {g}), G.config.order_cap))
                if ext not in found:
                    found.add(ext)
                    new.append(ext)
        frontier = new
    return sorted(found, key=lambda s: (len(s), sorted(p.images for p in s)))


def _is_normal(G: PermGroup, H: frozenset) -> bool:
    return all(h.conjugate_by(g) in H for h in H for g in G.generators)


def normal_abelian_subgroups(G: PermGroup, config: Config = DEFAULT) -> list[frozenset]:
    """All normal abelian subgroups, via bottom-up commuting extensions."""
    if G.order > config.aut_cap:
        raise OrderCapExceeded(
            f"subgroup enumeration capped at order {config.aut_cap}")
    abelian = {frozenset([G.identity])}
    frontier = list(abelian)
    while frontier:
        new = []
        for H in frontier:
            members = sorted(H)
            for g in G.elements:
                if g in H or any(g * h != h * g for h in members):
                    continue
                ext = frozenset(_close(members + [g], config.order_cap))
                if ext not in abelian:
                    abelian.add(ext)
                    new.append(ext)
        frontier = new
    normal = [H for H in abelian if _is_normal(G, H)]
    return sorted(normal, key=lambda s: (len(s), sorted(p.images for p in s)))


# -- the named-group catalog -------------------------------------------------

CATALOG = (
    "S3", "S4", "S5", "S6", "A4", "A5",
    "D4", "D6", "D8", "D10", "D12", "D14", "D16", "Q8",
    "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10", "C11", "C12",
    "E2^2", "E2^4",
)


def _quaternion_generators() -> list[Permutation]:
    # regular action of Q8 = {1,-1,i,-i,j,-j,k,-k} on itself
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    base = {"1": (1, ""), "-1": (-1, ""), "i": (1, "i"), "-i": (-1, "i"),
            "j": (1, "j"), "-j": (-1, "j"), "k": (1, "k"), "-k": (-1, "k")}
    mul_symbols = {
        ("", ""): (1, ""), ("", "i"): (1, "i"), ("", "j"): (1, "j"), ("", "k"): (1, "k"),
        ("i", ""): (1, "i"), ("j", ""): (1, "j"), ("k", ""): (1, "k"),
        ("i", "i"): (-1, ""), ("j", "j"): (-1, ""), ("k", "k"): (-1, ""),
        ("i", "j"): (1, "k"), ("j", "i"): (-1, "k"),
        ("j", "k"): (1, "i"), ("k", "j"): (-1, "i"),
        ("k", "i"): (1, "j"), ("i", "k"): (-1, "j"),
    }

    def mul(a, b):
        sa, xa = base[a]
        sb, xb = base[b]
        s, x = mul_symbols[(xa, xb)]
        sign = sa * sb * s
        return ("" if sign == 1 else "-") + (x if x else "1")

    perms = []
    for gen in ("i", "j"):
        perms.append(Permutation([names.index(mul(n, gen)) for n in names]))
    return perms


def named_group(spec: str, config: Config = DEFAULT) -> PermGroup:
    """Build a catalog group from a group-spec string.

    Grammar: "S"n | "A"n | "C"n | "D"n (n = order, even >= 4) | "Q8" |
    "E2^"k | "perm:" CYCLES with comma-separated cycle products, 1-based.
    """
    spec = spec.strip()
    if not spec:
        raise ParseError("empty group spec", 0)
    if spec.startswith("perm:"):
        body = spec[5:]
        parts, depth, start, chunks = [], 0, 0, []
        for i, ch in enumerate(body):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
                if depth < 0:
                    raise ParseError("unbalanced ')'", 5 + i)
            elif ch == "," and depth == 0:
                chunks.append((body[start:i], 5 + start))
                start = i + 1
        chunks.append((body[start:], 5 + start))
        cycle_lists = [(_parse_cycles_body(text, off), off) for text, off in chunks]
        maxpt = max((p for cl, _ in cycle_lists for c in cl for p in c), default=1)
        gens = []
        for (text, off) in chunks:
            gens.append(parse_cycles(text, degree=maxpt, offset=off))
        return PermGroup(gens, config=config)

    m = re.fullmatch(r"E2\^(\d+)", spec)
    if m:
        k = int(m.group(1))
        if k < 1:
            raise ParseError("E2^k needs k >= 1", 3)
        gens = []
        for i in range(k):
            images = list(range(2 * k))
            images[2 * i], images[2 * i + 1] = images[2 * i + 1], images[2 * i]
            gens.append(Permutation(images))
        return PermGroup(gens, config=config)

    if spec == "Q8":
        return PermGroup(_quaternion_generators(), config=config)

    m = re.fullmatch(r"([SACD])(\d+)", spec)
    if not m:
        raise UnknownName(f"unknown group spec {spec!r}")
    family, n = m.group(1), int(m.group(2))
    if family == "S":
        if n < 1:
            raise ParseError("Sn needs n >= 1", 1)
        if n == 1:
            return PermGroup([Permutation([0])], config=config)
        cycle = Permutation(list(range(1, n)) + [0])
        swap = parse_cycles("(1 2)", degree=n)
        return PermGroup([swap, cycle], config=config)
    if family == "A":
        if n < 1:
            raise ParseError("An needs n >= 1", 1)
        if n <= 2:
            return PermGroup([Permutation([0] if n == 1 else [0, 1])], config=config)
        three = parse_cycles("(1 2 3)", degree=n)
        if n == 3:
            return PermGroup([three], config=config)
        if n % 2:
            big = Permutation(list(range(1, n)) + [0])
        else:
            big = Permutation([0] + list(range(2, n)) + [1])
        return PermGroup([three, big], config=config)
    if family == "C":
        if n < 1:
            raise ParseError("Cn needs n >= 1", 1)
        if n == 1:
            return PermGroup([Permutation([0])], config=config)
        return PermGroup([Permutation(list(range(1, n)) + [0])], config=config)
    if family == "D":
        if n < 4 or n % 2:
            raise ParseError("Dn is the dihedral group of order n, even n >= 4", 1)
        if n == 4:
            return PermGroup([parse_cycles("(1 2)", 4), parse_cycles("(3 4)", 4)],
                             config=config)
        mpts = n // 2
        rot = Permutation(list(range(1, mpts)) + [0])
        ref = Permutation([(mpts - i) % mpts for i in range(mpts)])
        return PermGroup([rot, ref], config=config)
    raise UnknownName(f"unknown group spec {spec!r}")
