"""Exact linear algebra over the rationals for quadratic presentations:
relation spaces, polarization, bracket-weight-graded dimensions, consequence
ranks, and the quadratic-monomial Koszulness certificate.

Vectors over arity 3 are tuples of 12 Fractions indexed by the canonical
ordering of the arity-3 monomials.  Large consequence matrices are reduced
with fraction-free integer elimination on sparse rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .dimensions import DimensionTable, graded_table, table_from_dims
from .errors import CapExceededError
from .permutations import S3
from .trees import (
    MAG3,
    MAG3_INDEX,
    TreeMonomial,
    act,
    count_monomials,
    enumerate_monomials,
    occurrences,
)
from .upoly import UPoly

LINEAR_ARITY_CAP = 6

ZERO12 = (Fraction(0),) * 12


# --- exact row reduction -------------------------------------------------


def rref(rows, width: int):
    """Canonical reduced row echelon basis of the row span, over Fraction."""
    basis: list = []  # list of (lead, row-tuple) sorted by lead
    for row in rows:
        row = list(row)
        for lead, b in basis:
            if row[lead] != 0:
                coeff = row[lead]
                row = [ri - coeff * bi for ri, bi in zip(row, b)]
        leads = [i for i, v in enumerate(row) if v != 0]
        if not leads:
            continue
        lead = leads[0]
        inv = row[lead]
        row = [v / inv for v in row]
        basis.append((lead, row))
        basis.sort(key=lambda t: t[0])
        # back-substitute to keep the basis fully reduced
        for i, (l1, r1) in enumerate(basis):
            for l2, r2 in basis:
                if l2 != l1 and r1[l2] != 0:
                    coeff = r1[l2]
                    r1 = [a - coeff * b for a, b in zip(r1, r2)]
            basis[i] = (l1, r1)
    return tuple(tuple(r) for _, r in basis)


def _normalize_int_row(row: dict) -> tuple:
    if not row:
        return ()
    g = 0
    for v in row.values():
        g = gcd(g, abs(v))
    lead = min(row)
    sign = 1 if row[lead] > 0 else -1
    return tuple(sorted((c, sign * v // g) for c, v in row.items()))


class IntRowReducer:
    """Rank of a sparse integer matrix by fraction-free forward elimination.

    Rows are dicts column -> int.  Combining rows uses cross-multiplication
    followed by gcd normalization, so entries stay integral and bounded.
    """

    def __init__(self):
        self.pivots: dict = {}  # lead column -> normalized row dict

    def add(self, row: dict) -> bool:
        row = {c: v for c, v in row.items() if v != 0}
        while row:
            lead = min(row)
            piv = self.pivots.get(lead)
            if piv is None:
                g = 0
                for v in row.values():
                    g = gcd(g, abs(v))
                sign = 1 if row[lead] > 0 else -1
                self.pivots[lead] = {c: sign * v // g for c, v in row.items()}
                return True
            a = piv[lead]
            b = row[lead]
            new = {}
            for c, v in row.items():
                new[c] = a * v
            for c, v in piv.items():
                w = new.get(c, 0) - b * v
                if w:
                    new[c] = w
                else:
                    new.pop(c, None)
            row = new
        return False

    @property
    def rank(self) -> int:
        return len(self.pivots)


def int_rank(rows) -> int:
    reducer = IntRowReducer()
    for row in rows:
        reducer.add(row)
    return reducer.rank


def _fractions_to_int_row(vec) -> dict:
    denom = 1
    for v in vec:
        if v:
            denom = denom * v.denominator // gcd(denom, v.denominator)
    return {i: int(v * denom) for i, v in enumerate(vec) if v}


# --- vectors over the 12 arity-3 monomials --------------------------------


def vec12(coeffs: dict) -> tuple:
    out = [Fraction(0)] * 12
    for m, c in coeffs.items():
        out[MAG3_INDEX[m]] += Fraction(c)
    return tuple(out)


def act_vec12(v, sigma) -> tuple:
    out = [Fraction(0)] * 12
    for i, c in enumerate(v):
        if c:
            out[MAG3_INDEX[act(MAG3[i], sigma)]] += c
    return tuple(out)


def mirror_vec12(v) -> tuple:
    from .trees import mirror

    out = [Fraction(0)] * 12
    for i, c in enumerate(v):
        if c:
            out[MAG3_INDEX[mirror(MAG3[i])]] += c
    return tuple(out)


def render_vec12(v) -> str:
    parts = []
    for i, c in enumerate(v):
        if not c:
            continue
        m = str(MAG3[i])
        if c == 1:
            parts.append(f"+ {m}")
        elif c == -1:
            parts.append(f"- {m}")
        elif c > 0:
            parts.append(f"+ {c}*{m}")
        else:
            parts.append(f"- {-c}*{m}")
    if not parts:
        return "0"
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


def _swap_vectors_arity3():
    """Differences m - m' for every single-node child swap at arity 3."""
    out = []
    for m in MAG3:
        tree = m.tree
        root_swapped = TreeMonomial((tree[1], tree[0]))
        out.append(vec12({m: 1, root_swapped: -1}))
        left, right = tree
        if isinstance(left, tuple):
            inner = TreeMonomial(((left[1], left[0]), right))
        else:
            inner = TreeMonomial((left, (right[1], right[0])))
        out.append(vec12({m: 1, inner: -1}))
    return out


# --- polarized monomials ---------------------------------------------------

SYM = "s"
SKEW = "b"


def pol_canonical(ptree):
    """Canonical form of a marked unordered tree; returns (tree, sign).
    Children are ordered by minimal leaf; swapping under a bracket flips
    the sign."""
    if isinstance(ptree, int):
        return ptree, 1
    op, a, b = ptree
    ca, sa = pol_canonical(a)
    cb, sb = pol_canonical(b)
    sign = sa * sb
    if _min_leaf(ca) > _min_leaf(cb):
        ca, cb = cb, ca
        if op == SKEW:
            sign = -sign
    return (op, ca, cb), sign


def _min_leaf(ptree):
    while not isinstance(ptree, int):
        ptree = ptree[1]
    return ptree


def pol_weight(ptree) -> int:
    if isinstance(ptree, int):
        return 0
    return (ptree[0] == SKEW) + pol_weight(ptree[1]) + pol_weight(ptree[2])


def _pol_key(ptree):
    if isinstance(ptree, int):
        return (0, ptree)
    return (1, ptree[0], _pol_key(ptree[1]), _pol_key(ptree[2]))


@lru_cache(maxsize=None)
def _pol_trees_on(labels: tuple) -> tuple:
    if len(labels) == 1:
        return (labels[0],)
    lo = labels[0]
    rest = labels[1:]
    out = []
    for mask in range(1 << len(rest)):
        left = [lo]
        right = []
        for i, lab in enumerate(rest):
            (left if mask & (1 << i) else right).append(lab)
        if not right:
            continue
        for op in (SYM, SKEW):
            for a in _pol_trees_on(tuple(left)):
                for b in _pol_trees_on(tuple(right)):
                    out.append((op, a, b))
    out.sort(key=_pol_key)
    return tuple(out)


def polarized_basis(n: int) -> tuple:
    """Canonical marked unordered trees on labels 1..n; there are as many as
    ordinary monomials, and their expansions form a basis."""
    return _pol_trees_on(tuple(range(1, n + 1)))


def pol_expand_tree(ptree) -> dict:
    """Expansion into plain trees: dict nested-tree -> coefficient."""
    if isinstance(ptree, int):
        return {ptree: Fraction(1)}
    op, a, b = ptree
    ea = pol_expand_tree(a)
    eb = pol_expand_tree(b)
    out: dict = {}
    for ta, ca in ea.items():
        for tb, cb in eb.items():
            c = ca * cb
            out[(ta, tb)] = out.get((ta, tb), Fraction(0)) + c
            back = c if op == SYM else -c
            out[(tb, ta)] = out.get((tb, ta), Fraction(0)) + back
    return {t: c for t, c in out.items() if c}


def pol_expand(ptree) -> dict:
    """Expansion as dict TreeMonomial -> Fraction."""
    return {TreeMonomial(t): c for t, c in pol_expand_tree(ptree).items()}


def pol_render(ptree) -> str:
    if isinstance(ptree, int):
        return "abcdefgh"[ptree - 1]
    op, a, b = ptree
    if op == SKEW:
        return f"[{pol_render(a)},{pol_render(b)}]"

    def side(t):
        s = pol_render(t)
        return f"({s})" if not isinstance(t, int) and t[0] == SYM else s

    return f"{side(a)}.{side(b)}"


POL12 = polarized_basis(3)
POL12_EXPANSIONS = tuple(vec12(pol_expand(q)) for q in POL12)


@lru_cache(maxsize=1)
def _pol12_solver():
    """Row-reduce the expansion matrix once; returns a function taking a
    12-vector in monomial coordinates to polarized coordinates."""
    cols = POL12_EXPANSIONS
    # solve E c = v for c by Gaussian elimination on the augmented identity
    n = 12
    aug = [
        [cols[j][i] for j in range(n)] + [Fraction(1 if k == i else 0) for k in range(n)]
        for i in range(n)
    ]
    row = 0
    for col in range(n):
        piv = next(r for r in range(row, n) if aug[r][col] != 0)
        aug[row], aug[piv] = aug[piv], aug[row]
        inv = aug[row][col]
        aug[row] = [v / inv for v in aug[row]]
        for r in range(n):
            if r != row and aug[r][col] != 0:
                coeff = aug[r][col]
                aug[r] = [a - coeff * b for a, b in zip(aug[r], aug[row])]
        row += 1
    inverse = [r[n:] for r in aug]

    def solve(v):
        return tuple(
            sum((inverse[i][k] * v[k] for k in range(n)), Fraction(0))
            for i in range(n)
        )

    return solve


def to_polarized_coords(v) -> tuple:
    return _pol12_solver()(v)


def pol_coord_weight(i: int) -> int:
    return pol_weight(POL12[i])


# --- relation spaces -------------------------------------------------------


@dataclass(frozen=True)
class LinearRelationSpace:
    """A subspace of the 12-dimensional arity-3 span, stored as a canonical
    reduced row echelon basis in monomial coordinates and, in parallel, in
    polarized coordinates.  weights gives the bracket weight of each
    polarized basis row when the space is graded, else None."""

    basis: tuple
    pol_basis: tuple
    weights: tuple | None

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def weight_homogeneous(self) -> bool:
        return self.weights is not None

    def contains(self, v) -> bool:
        row = list(v)
        for b in self.basis:
            lead = next(i for i, x in enumerate(b) if x == 1)
            if row[lead] != 0:
                coeff = row[lead]
                row = [a - coeff * c for a, c in zip(row, b)]
        return all(x == 0 for x in row)

    def is_s3_stable(self) -> bool:
        return all(
            self.contains(act_vec12(b, sigma)) for b in self.basis for sigma in S3
        )

    def __eq__(self, other):
        return isinstance(other, LinearRelationSpace) and self.basis == other.basis

    def __hash__(self):
        return hash(self.basis)

    def render(self) -> list:
        return [render_vec12(b) + " = 0" for b in self.basis]


def space_from_vectors(vectors, saturate: bool = True) -> LinearRelationSpace:
    rows = []
    for v in vectors:
        if saturate:
            rows.extend(act_vec12(v, sigma) for sigma in S3)
        else:
            rows.append(tuple(v))
    basis = rref(rows, 12)
    pol_basis = rref([to_polarized_coords(b) for b in basis], 12)
    weights = []
    homogeneous = True
    for row in pol_basis:
        ws = {pol_coord_weight(i) for i, c in enumerate(row) if c}
        if len(ws) == 1:
            weights.append(ws.pop())
        else:
            homogeneous = False
            break
    return LinearRelationSpace(
        basis=basis,
        pol_basis=pol_basis,
        weights=tuple(weights) if homogeneous else None,
    )


def relation_space(source, symmetrize: bool = False) -> LinearRelationSpace:
    """Span of the relation vectors of a congruence (differences within each
    class, plus single-node swap differences when symmetrize is set), or of
    explicitly given 12-vectors; always saturated under the action."""
    from .presentations import Congruence

    if isinstance(source, Congruence):
        vectors = [
            vec12({cls[0]: 1, other: -1})
            for cls in source.classes
            for other in cls[1:]
        ]
        if symmetrize:
            vectors.extend(_swap_vectors_arity3())
        return space_from_vectors(vectors, saturate=True)
    return space_from_vectors(list(source), saturate=True)


# --- consequence ranks and dimensions --------------------------------------


def _check_linear_cap(n: int, cap: int | None):
    cap = LINEAR_ARITY_CAP if cap is None else cap
    if n > cap:
        raise CapExceededError("linear arity", n, cap)


def ordinary_consequence_rows(R: LinearRelationSpace, n: int):
    """Substitutions of every relation basis vector into every occurrence of
    every arity-n monomial, as sparse integer rows over the canonical
    monomial index.  This spans the arity-n part of the generated ideal."""
    index = {m: i for i, m in enumerate(enumerate_monomials(n, cap=n))}
    int_basis = [_fractions_to_int_row(b) for b in R.basis]
    rows = set()
    for m in index:
        for occ in occurrences(m):
            targets = {}
            for r in int_basis:
                row: dict = {}
                for k, coeff in r.items():
                    if k not in targets:
                        targets[k] = index[occ.reassemble(MAG3[k])]
                    col = targets[k]
                    row[col] = row.get(col, 0) + coeff
                row = {c: v for c, v in row.items() if v}
                if row:
                    rows.add(_normalize_int_row(row))
    return [dict(r) for r in rows]


def linear_dims(R: LinearRelationSpace, max_arity: int, cap: int | None = None,
                operad_key: str = "") -> DimensionTable:
    """Ungraded dimensions of the quotient by the ideal generated by R."""
    _check_linear_cap(max_arity, cap)
    dims = []
    for n in range(1, max_arity + 1):
        if n == 1:
            dims.append(1)
        elif n == 2:
            dims.append(2)
        else:
            rank = int_rank(ordinary_consequence_rows(R, n))
            dims.append(count_monomials(n) - rank)
    return table_from_dims(operad_key, dims)


def _pol_edges(ctree):
    """Internal edges of a canonical marked tree: (path-to-parent, side)."""
    out = []

    def walk(node, path):
        if isinstance(node, int):
            return
        for side in (1, 2):
            if not isinstance(node[side], int):
                out.append((path, side))
        walk(node[1], path + (1,))
        walk(node[2], path + (2,))

    walk(ctree, ())
    return out


def _pol_replace(node, path, fragment):
    if not path:
        return fragment
    op, a, b = node
    if path[0] == 1:
        return (op, _pol_replace(a, path[1:], fragment), b)
    return (op, a, _pol_replace(b, path[1:], fragment))


def _pol_subtree(node, path):
    for p in path:
        node = node[p]
    return node


def _pol_fill(pattern, slots):
    if isinstance(pattern, int):
        return slots[pattern - 1]
    return (pattern[0], _pol_fill(pattern[1], slots), _pol_fill(pattern[2], slots))


def polarized_consequence_rows(R: LinearRelationSpace, n: int):
    """Weight-homogeneous consequence rows in the polarized basis; returns a
    dict weight -> list of sparse integer rows over the weight block."""
    basis_n = polarized_basis(n)
    col_index: dict = {}
    per_weight_count: dict = {}
    for t in basis_n:
        w = pol_weight(t)
        col_index[t] = (w, per_weight_count.get(w, 0))
        per_weight_count[w] = per_weight_count.get(w, 0) + 1

    pol_int_basis = [_fractions_to_int_row(b) for b in R.pol_basis]
    rows: dict = {}
    seen: dict = {}
    for host in basis_n:
        for path, side in _pol_edges(host):
            parent = _pol_subtree(host, path)
            child = parent[side]
            other = parent[2] if side == 1 else parent[1]
            slots = (child[1], child[2], other)
            filled_cache = {}
            for r in pol_int_basis:
                row: dict = {}
                for k, coeff in r.items():
                    if k not in filled_cache:
                        fragment = _pol_fill(POL12[k], slots)
                        new = _pol_replace(host, path, fragment)
                        ctree, sign = pol_canonical(new)
                        filled_cache[k] = (col_index[ctree], sign)
                    (w, col), sign = filled_cache[k]
                    row[(w, col)] = row.get((w, col), 0) + sign * coeff
                row = {c: v for c, v in row.items() if v}
                if not row:
                    continue
                ws = {c[0] for c in row}
                if len(ws) != 1:
                    raise AssertionError("consequence row mixes weights")
                w = ws.pop()
                norm = _normalize_int_row({c[1]: v for c, v in row.items()})
                if norm not in seen.setdefault(w, set()):
                    seen[w].add(norm)
                    rows.setdefault(w, []).append(dict(norm))
    return rows, per_weight_count


def graded_dims(R: LinearRelationSpace, max_arity: int, cap: int | None = None,
                operad_key: str = "") -> DimensionTable:
    """Bracket-weight-refined dimensions; requires a weight-homogeneous
    relation space."""
    _check_linear_cap(max_arity, cap)
    if not R.weight_homogeneous:
        raise ValueError(
            "relation space is not bracket-weight homogeneous; "
            "use the ungraded closure dimensions instead"
        )
    polys = []
    for n in range(1, max_arity + 1):
        if n == 1:
            polys.append(UPoly.const(1))
            continue
        if n == 2:
            polys.append(UPoly({0: 1, 1: 1}))
            continue
        rows, block_sizes = polarized_consequence_rows(R, n)
        coeffs = {}
        for w, size in sorted(block_sizes.items()):
            rank = int_rank(rows.get(w, []))
            d = size - rank
            if d:
                coeffs[w] = Fraction(d)
        polys.append(UPoly(coeffs))
    return graded_table(operad_key, polys)


# --- the quadratic-monomial certificate ------------------------------------


@dataclass(frozen=True)
class Certificate:
    monomials: tuple  # polarized trees whose expansions span the space

    @property
    def ok(self) -> bool:
        return True

    def render(self) -> list:
        return [pol_render(t) + " = 0" for t in self.monomials]


@dataclass(frozen=True)
class Refusal:
    monomials: tuple
    gap: int  # dim R minus the span of the monomials found inside R

    @property
    def ok(self) -> bool:
        return False


def monomial_certificate(R: LinearRelationSpace):
    """Certificate that the quotient is presented by polarized monomials:
    the polarized monomials lying in R must span it.  Soundness only; a
    refusal proves nothing."""
    found = [
        q for q, v in zip(POL12, POL12_EXPANSIONS) if R.contains(v)
    ]
    if len(found) == R.dim:
        return Certificate(monomials=tuple(found))
    return Refusal(monomials=tuple(found), gap=R.dim - len(found))


def expand_ast(node) -> dict:
    """Expansion of a parsed presentation term into plain trees."""
    if node[0] == "leaf":
        return {node[1]: Fraction(1)}
    _, op, a, b = node
    ea = expand_ast(a)
    eb = expand_ast(b)
    out: dict = {}
    for ta, ca in ea.items():
        for tb, cb in eb.items():
            c = ca * cb
            out[(ta, tb)] = out.get((ta, tb), Fraction(0)) + c
            if op == "sym":
                out[(tb, ta)] = out.get((tb, ta), Fraction(0)) + c
            elif op == "skew":
                out[(tb, ta)] = out.get((tb, ta), Fraction(0)) - c
    return {t: c for t, c in out.items() if c}


def ast_to_vec12(node) -> tuple:
    return vec12({TreeMonomial(t): c for t, c in expand_ast(node).items()})
