"""Quadratic presentations over the arity-3 monomials: equivariant
congruences, the standard 57-entry catalog, brute-force enumeration of all
equivariant equivalence relations, and isomorphism collapse."""

from __future__ import annotations

from dataclasses import dataclass, field

from .permutations import S3
from .trees import (
    LEFT_ASSOC,
    MAG3,
    MAG3_INDEX,
    RIGHT_ASSOC,
    TreeMonomial,
    act,
    mirror,
)

M = TreeMonomial.from_string


class Congruence:
    """An equivalence relation on the 12 arity-3 monomials, closed under the
    symmetric-group action.  Immutable; equality and hashing go through the
    canonical key (classes keyed by their minimal monomial encoding)."""

    __slots__ = ("classes", "generator_pairs", "key", "_class_index")

    def __init__(self, classes, generator_pairs=()):
        canon = tuple(
            tuple(sorted(cls, key=lambda m: m.key))
            for cls in sorted(
                (frozenset(cls) for cls in classes),
                key=lambda s: min(m.key for m in s),
            )
        )
        object.__setattr__(self, "classes", canon)
        object.__setattr__(self, "generator_pairs", tuple(generator_pairs))
        object.__setattr__(
            self,
            "key",
            "|".join("=".join(str(m) for m in cls) for cls in canon),
        )
        index = {}
        for cls in canon:
            for m in cls:
                index[m] = cls
        object.__setattr__(self, "_class_index", index)

    def __setattr__(self, name, value):
        raise AttributeError("Congruence is immutable")

    @property
    def num_classes(self) -> int:
        return len(self.classes)

    def class_of(self, m: TreeMonomial) -> tuple:
        return self._class_index[m]

    def related(self, m: TreeMonomial) -> tuple:
        return tuple(x for x in self._class_index[m] if x != m)

    def pairs(self):
        """One spanning set of pairs per class (minimal element vs rest)."""
        out = []
        for cls in self.classes:
            for other in cls[1:]:
                out.append((cls[0], other))
        return out

    def is_equivariant(self) -> bool:
        parts = {frozenset(cls) for cls in self.classes}
        for sigma in S3:
            for cls in self.classes:
                if frozenset(act(m, sigma) for m in cls) not in parts:
                    return False
        return True

    def __eq__(self, other):
        return isinstance(other, Congruence) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"<Congruence {self.num_classes} classes: {self.key}>"


def close(pairs) -> Congruence:
    """Smallest equivalence on the 12 monomials containing the pairs and
    closed under the symmetric-group action."""
    for a, b in pairs:
        if a.arity != 3 or b.arity != 3:
            raise ValueError("congruence generators must have arity 3")
    parent = {m: m for m in MAG3}

    def find(m):
        while parent[m] != m:
            parent[m] = parent[parent[m]]
            m = parent[m]
        return m

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for a, b in pairs:
        for sigma in S3:
            union(act(a, sigma), act(b, sigma))
    groups = {}
    for m in MAG3:
        groups.setdefault(find(m), []).append(m)
    return Congruence(groups.values(), generator_pairs=pairs)


TRIVIAL = close([])


def mirror_congruence(c: Congruence) -> Congruence:
    return Congruence(
        [tuple(mirror(m) for m in cls) for cls in c.classes],
        generator_pairs=tuple((mirror(a), mirror(b)) for a, b in c.generator_pairs),
    )


# Generator families for the catalog.  Each entry is a chain of monomials to
# be identified; RR relates left-associated products, LL their mirror
# images, RL one product of each shape.
RR = {
    1: ["(ab)c", "(ac)b"],
    2: ["(ab)c", "(ba)c"],
    3: ["(ab)c", "(cb)a"],
    4: ["(ab)c", "(bc)a", "(ca)b"],
    5: ["(ab)c", "(cb)a", "(ca)b", "(ba)c", "(ac)b", "(bc)a"],
}
LL = {
    1: ["a(bc)", "b(ac)"],
    2: ["a(bc)", "a(cb)"],
    3: ["a(bc)", "c(ba)"],
    4: ["a(bc)", "b(ca)", "c(ab)"],
    5: ["a(bc)", "b(ca)", "c(ab)", "a(cb)", "b(ac)", "c(ba)"],
}
RL = {
    6: ["(ab)c", "a(bc)"],
    7: ["(ab)c", "a(cb)"],
    8: ["(ab)c", "b(ac)"],
    9: ["(ab)c", "b(ca)"],
    10: ["(ab)c", "c(ab)"],
    11: ["(ab)c", "c(ba)"],
}


def _chain_pairs(chain):
    ms = [M(s) for s in chain]
    return [(ms[i], ms[i + 1]) for i in range(len(ms) - 1)]


@dataclass(frozen=True)
class CatalogEntry:
    """One presentation of the catalog: a name, its generator family, the
    closed congruence, and static annotations (known identifications)."""

    name: str
    family: str
    generators: tuple
    congruence: Congruence
    symmetrize: bool = False
    annotations: dict = field(default_factory=dict, compare=False)

    def __repr__(self):
        return f"<{self.name}: {self.congruence.num_classes} classes>"


KNOWN_ISO = {
    "Mag": "Mag",
    "P1": "NAP",
    "P6": "Ass",
    "P1;6": "Perm",
    "P2;6": "Perm",
    "P5;6": "LieAdm^!",
    "P5;7": "LieAdm^!",
    "P5;8": "LieAdm^!",
    "P5;9": "LieAdm^!",
    "P5;10": "LieAdm^!",
    "P5;11": "LieAdm^!",
}


def _entry(name, family, chains, symmetrize=False):
    pairs = []
    for chain in chains:
        pairs.extend(_chain_pairs(chain))
    annotations = {}
    if name in KNOWN_ISO:
        annotations["known_iso"] = KNOWN_ISO[name]
    return CatalogEntry(
        name=name,
        family=family,
        generators=tuple(tuple(chain) for chain in chains),
        congruence=close(pairs),
        symmetrize=symmetrize,
        annotations=annotations,
    )


def standard_catalog() -> list:
    """The 57 presentations with a regular (non-symmetric) generator, in
    deterministic order: the trivial one, 5 one-sided, 6 mixed-pair, 15
    two-sided, 30 one-sided plus mixed-pair."""
    entries = [_entry("Mag", "trivial", [])]
    for i in range(1, 6):
        entries.append(_entry(f"P{i}", "RR", [RR[i]]))
    for j in range(6, 12):
        entries.append(_entry(f"P{j}", "RL", [RL[j]]))
    for i in range(1, 6):
        for j in range(i, 6):
            entries.append(_entry(f"P{i};{j}", "RR;LL", [RR[i], LL[j]]))
    for i in range(1, 6):
        for j in range(6, 12):
            entries.append(_entry(f"P{i};{j}", "RR;RL", [RR[i], RL[j]]))
    return entries


def symmetric_catalog() -> list:
    """The two presentations with a symmetric generator, realized as
    congruences computed with the child-swap identification switched on."""
    commag = _entry("ComMag", "sym", [], symmetrize=True)
    commag.annotations["known_iso"] = "ComMag"
    com = _entry("Com", "sym", [["(ab)c", "(bc)a"]], symmetrize=True)
    com.annotations["known_iso"] = "Com"
    return [commag, com]


def catalog_by_name(name: str) -> CatalogEntry:
    for entry in standard_catalog() + symmetric_catalog():
        if entry.name == name:
            return entry
    raise KeyError(name)


def enumerate_all_equivariant() -> list:
    """Every equivariant equivalence relation on the 12 monomials, found as
    the fixpoint of joining pairwise closures; deduplicated by canonical key."""
    found = {TRIVIAL.key: TRIVIAL}
    for i, a in enumerate(MAG3):
        for b in MAG3[i + 1 :]:
            c = close([(a, b)])
            if c.key not in found:
                found[c.key] = c
    changed = True
    while changed:
        changed = False
        current = list(found.values())
        for c1 in current:
            for c2 in current:
                joined = close(c1.pairs() + c2.pairs())
                if joined.key not in found:
                    found[joined.key] = joined
                    changed = True
    return sorted(found.values(), key=lambda c: (-c.num_classes, c.key))


# --- the case analysis of equivariant relations ---


def case_of(c: Congruence) -> int:
    """1 if every class stays within a single shape orbit, 2 if every class
    meets both orbits; anything else would contradict equivariance."""
    left = set(LEFT_ASSOC)
    right = set(RIGHT_ASSOC)
    one_sided = 0
    both = 0
    for cls in c.classes:
        s = set(cls)
        if s <= left or s <= right:
            one_sided += 1
        elif s & left and s & right:
            both += 1
    if one_sided == c.num_classes:
        return 1
    if both == c.num_classes:
        return 2
    raise AssertionError(f"mixed case for {c!r}")


def subcase_of(c: Congruence) -> str:
    """Refined case label: '1.1' trivial, '1.2' only left-associated classes
    merge, '1.3' only right-associated classes merge, '1.4' no singleton
    classes; '2.1' all classes of size two, '2.2' all larger."""
    if case_of(c) == 1:
        left = set(LEFT_ASSOC)
        nontrivial_left = any(
            len(cls) > 1 and set(cls) <= left for cls in c.classes
        )
        nontrivial_right = any(
            len(cls) > 1 and not (set(cls) <= left) for cls in c.classes
        )
        if not nontrivial_left and not nontrivial_right:
            return "1.1"
        if nontrivial_left and not nontrivial_right:
            return "1.3"
        if nontrivial_right and not nontrivial_left:
            return "1.2"
        if all(len(cls) > 1 for cls in c.classes):
            return "1.4"
        raise AssertionError(f"unclassifiable case-1 relation {c!r}")
    sizes = {len(cls) for cls in c.classes}
    if sizes == {2}:
        return "2.1"
    if sizes <= {4, 6, 12}:
        return "2.2"
    raise AssertionError(f"unclassifiable case-2 relation {c!r}")


@dataclass(frozen=True)
class IsoGroup:
    """Entries sharing one congruence, plus the mirror partner group when the
    mirrored congruence also occurs in the catalog."""

    names: tuple
    key: str
    mirror_partner: tuple = ()

    @property
    def witness(self) -> str:
        return "equal congruence" if len(self.names) > 1 else "singleton"


def iso_collapse(entries) -> list:
    """Group catalog entries with identical congruences, and report mirror
    pairings between groups.  These are the only two isomorphism mechanisms
    detected; deeper identifications stay annotations."""
    by_key: dict = {}
    order = {e.name: i for i, e in enumerate(entries)}
    for e in entries:
        by_key.setdefault(e.congruence.key, []).append(e)
    groups = []
    for key, members in by_key.items():
        names = tuple(sorted((e.name for e in members), key=order.get))
        mkey = mirror_congruence(members[0].congruence).key
        partner = ()
        if mkey != key and mkey in by_key:
            partner = tuple(
                sorted((e.name for e in by_key[mkey]), key=order.get)
            )
        groups.append(IsoGroup(names=names, key=key, mirror_partner=partner))
    groups.sort(key=lambda g: order[g.names[0]])
    return groups


# distinct congruence count is reported, not asserted; see reports module
def distinct_congruence_count(entries) -> int:
    return len({e.congruence.key for e in entries})
