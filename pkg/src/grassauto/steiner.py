"""3-dimensional subspaces of F_2^n, difference sets, and the clique route to S_2[2,3,n].

A subspace is the ascending 7-tuple of the exponents of its nonzero
elements.  The group acting on subspaces is generated by the cyclic shift
(add j to every exponent) and the Frobenius map (double every exponent),
all modulo N = 2^n - 1, and has order n*N.

Bulk work is done on ``(rows, 7)`` integer arrays.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

import numpy as np

from .clique import CliqueResult, find_clique
from .cyclo import CosetTable, GroupTable
from .field import ZECH_ZERO, FieldCtx
from .pgeom import gaussian_binomial

Subspace3 = tuple[int, ...]

# index pairs (i < j) of a 7-tuple
_PAIRS = np.array(list(combinations(range(7), 2)), dtype=np.int64)


class SteinerError(ValueError):
    pass


class Dependent(SteinerError):
    pass


class UnexpectedStabilizer(SteinerError):
    pass


def _check_binary(ctx: FieldCtx) -> None:
    if ctx.p != 2:
        raise SteinerError(f"subspace routines need p = 2, got p={ctx.p}")


def _add(ctx: FieldCtx, a: int, b: int) -> int | None:
    z = int(ctx.zech[(a - b) % ctx.q_minus_1])
    return None if z == ZECH_ZERO else (b + z) % ctx.q_minus_1


# -- single subspaces -------------------------------------------------------------


def span3(ctx: FieldCtx, e1: int, e2: int, e3: int) -> Subspace3:
    """Nonzero exponents of span(alpha^e1, alpha^e2, alpha^e3), or :class:`Dependent`."""
    _check_binary(ctx)
    N = ctx.q_minus_1
    a, b, c = e1 % N, e2 % N, e3 % N
    if len({a, b, c}) < 3:
        raise Dependent(f"generators {e1}, {e2}, {e3} are not distinct")
    ab = _add(ctx, a, b)
    if ab == c:
        raise Dependent(f"alpha^{c} = alpha^{a} + alpha^{b}")
    ac, bc = _add(ctx, a, c), _add(ctx, b, c)
    abc = _add(ctx, ab, c)
    elems = {a, b, c, ab, ac, bc, abc}
    if None in elems or len(elems) != 7:
        raise Dependent(f"alpha^{a}, alpha^{b}, alpha^{c} span less than 3 dimensions")
    return tuple(sorted(elems))


def is_subspace(ctx: FieldCtx, X: Sequence[int]) -> bool:
    N = ctx.q_minus_1
    xs = {int(x) % N for x in X}
    if len(xs) != 7 or len(X) != 7:
        return False
    return all(_add(ctx, a, b) in xs for a, b in combinations(sorted(xs), 2))


def two_subspaces(ctx: FieldCtx, X: Sequence[int]) -> list[tuple[int, int, int]]:
    """The seven 2-subspaces of X as sorted triples {a, b, c} with alpha^a + alpha^b + alpha^c = 0."""
    out = set()
    for a, b in combinations(sorted(X), 2):
        c = _add(ctx, a, b)
        out.add(tuple(sorted((a, b, c))))
    return sorted(out)


@dataclass(frozen=True)
class DiffSet:
    diffs: frozenset[int]
    coset_reps: frozenset[int]


def diff_set(ctx: FieldCtx, X: Sequence[int], cosets: CosetTable) -> DiffSet:
    N = ctx.q_minus_1
    diffs = frozenset((a - b) % N for a in X for b in X if a != b)
    return DiffSet(diffs=diffs, coset_reps=frozenset(int(cosets.rep_of[d]) for d in diffs))


def is_complete(ctx: FieldCtx, X: Sequence[int]) -> bool:
    N = ctx.q_minus_1
    return len({(a - b) % N for a in X for b in X if a != b}) == 42


def is_coset_complete(ctx: FieldCtx, X: Sequence[int], cosets: CosetTable) -> bool:
    return len(diff_set(ctx, X, cosets).coset_reps) == 42


def shift_subspace(ctx: FieldCtx, j: int, X: Sequence[int]) -> Subspace3:
    N = ctx.q_minus_1
    return tuple(sorted((x + j) % N for x in X))


def frobenius_subspace(ctx: FieldCtx, ell: int, X: Sequence[int]) -> Subspace3:
    N = ctx.q_minus_1
    f = pow(2, ell, N)
    return tuple(sorted(x * f % N for x in X))


def group_label(ctx: FieldCtx, X: Sequence[int], groups: GroupTable) -> tuple[int, ...]:
    """Sorted distinct group indices met by the differences of X (7 of them iff coset complete)."""
    N = ctx.q_minus_1
    return tuple(sorted({int(groups.group_index[(b - a) % N]) for a, b in combinations(X, 2)}))


# -- orbits in bulk ------------------------------------------------------------------


def _encode(rows: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Two int64 keys whose lexicographic order is the row order (entries < 2^n)."""
    rows = rows.astype(np.int64)
    hi = np.zeros(rows.shape[:-1], dtype=np.int64)
    lo = np.zeros(rows.shape[:-1], dtype=np.int64)
    for k in range(3):
        hi = (hi << n) | rows[..., k + 1]
    for k in range(3):
        lo = (lo << n) | rows[..., k + 4]
    return hi, lo


def _decode(hi: np.ndarray, lo: np.ndarray, n: int) -> np.ndarray:
    out = np.zeros(hi.shape + (7,), dtype=np.int64)
    mask = (1 << n) - 1
    for k in range(3):
        out[..., 3 - k] = (hi >> (n * k)) & mask
        out[..., 6 - k] = (lo >> (n * k)) & mask
    return out


def canonical_forms(ctx: FieldCtx, rows: np.ndarray, frobenius: bool = True, chunk: int = 8192) -> tuple[np.ndarray, np.ndarray]:
    """Lexicographically smallest image of each row and the stabiliser order.

    The smallest image contains exponent 0, so it is among the images that
    send one element of a Frobenius image to 0.  The stabiliser order is
    how many of those (frobenius power, element) pairs hit the minimum.
    """
    N, n = ctx.q_minus_1, ctx.n
    rows = np.asarray(rows, dtype=np.int64)
    ells = range(n) if frobenius else range(1)
    canon = np.empty_like(rows)
    stab = np.empty(len(rows), dtype=np.int64)
    for lo_i in range(0, len(rows), chunk):
        X = rows[lo_i : lo_i + chunk]
        variants = []
        for ell in ells:
            Y = X * pow(2, ell, N) % N
            for k in range(7):
                variants.append((Y - Y[:, k : k + 1]) % N)
        V = np.sort(np.stack(variants, axis=1), axis=2)  # (r, variants, 7)
        hi, lo = _encode(V, n)
        min_hi = hi.min(axis=1)
        at_hi = hi == min_hi[:, None]
        lo_masked = np.where(at_hi, lo, np.iinfo(np.int64).max)
        min_lo = lo_masked.min(axis=1)
        stab[lo_i : lo_i + chunk] = (at_hi & (lo == min_lo[:, None])).sum(axis=1)
        canon[lo_i : lo_i + chunk] = _decode(min_hi, min_lo, n)
    return canon, stab


def canonical_rep(ctx: FieldCtx, X: Sequence[int], frobenius: bool = True) -> Subspace3:
    canon, _ = canonical_forms(ctx, np.asarray([X]), frobenius=frobenius)
    return tuple(int(x) for x in canon[0])


def orbit(ctx: FieldCtx, X: Sequence[int], frobenius: bool = True) -> np.ndarray:
    """All distinct images of X under shifts (and Frobenius maps), sorted rows."""
    N, n = ctx.q_minus_1, ctx.n
    base = np.asarray(X, dtype=np.int64)
    j = np.arange(N, dtype=np.int64)[:, None]
    parts = []
    for ell in range(n if frobenius else 1):
        Y = base * pow(2, ell, N) % N
        parts.append(np.sort((Y[None, :] + j) % N, axis=1))
    return np.unique(np.concatenate(parts), axis=0)


def orbit_size(ctx: FieldCtx, stabiliser: int, frobenius: bool = True) -> int:
    return (ctx.n if frobenius else 1) * ctx.q_minus_1 // stabiliser


def subspaces_through_one(ctx: FieldCtx, frobenius_reduced: bool = False) -> np.ndarray:
    """Sorted rows of 3-subspaces containing alpha^0 = 1.

    Each subspace containing 1 is span(1, alpha^a, alpha^b) and holds three
    2-subspaces through 1.  With ``frobenius_reduced`` only subspaces that
    contain one of a fixed set of Frobenius representatives of the lines
    through 1 are produced; every orbit still appears.  Each subspace is
    emitted once.
    """
    _check_binary(ctx)
    N, n = ctx.q_minus_1, ctx.n
    Z = ctx.zech.astype(np.int64)
    e = np.arange(N, dtype=np.int64)
    # id of the line {1, alpha^e, 1 + alpha^e} through 1: its smaller exponent
    line_id = np.where(e > 0, np.minimum(e, Z), -1)
    line_id[0] = -1
    if frobenius_reduced:
        keep = np.zeros(N, dtype=bool)
        ids = np.unique(line_id[1:])
        best = np.full(len(ids), np.iinfo(np.int64).max)
        for ell in range(n):
            f = pow(2, ell, N)
            img = np.minimum(ids * f % N, Z[ids] * f % N)
            best = np.minimum(best, img)
        keep[ids[best == ids]] = True
        is_rep = keep
    else:
        is_rep = np.zeros(N, dtype=bool)
        is_rep[np.unique(line_id[1:])] = True

    def plus(x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return (y + Z[(x - y) % N]) % N

    out = []
    for a in np.flatnonzero(is_rep):
        c = int(Z[a])
        b = np.setdiff1d(e[1:], (a, c))
        zb = Z[b]
        ab = plus(np.full_like(b, a), b)
        cb = plus(np.full_like(b, c), b)
        # one b per subspace: the smallest of the four elements off the line {1, a, c}
        first = (b < zb) & (b < ab) & (b < cb)
        # one line per subspace: skip if another line through 1 is a smaller representative
        own = a
        l2, l3 = line_id[b], line_id[ab]
        dup = (is_rep[l2] & (l2 < own)) | (is_rep[l3] & (l3 < own))
        sel = first & ~dup
        k = int(sel.sum())
        rows = np.empty((k, 7), dtype=np.int64)
        rows[:, 0] = 0
        rows[:, 1] = a
        rows[:, 2] = c
        rows[:, 3] = b[sel]
        rows[:, 4] = zb[sel]
        rows[:, 5] = ab[sel]
        rows[:, 6] = cb[sel]
        out.append(rows)
    return np.sort(np.concatenate(out), axis=1)


def pair_differences(ctx: FieldCtx, rows: np.ndarray) -> np.ndarray:
    """(r, 21) differences x_j - x_i over index pairs i < j."""
    N = ctx.q_minus_1
    return (rows[:, _PAIRS[:, 1]] - rows[:, _PAIRS[:, 0]]) % N


def complete_mask(ctx: FieldCtx, rows: np.ndarray) -> np.ndarray:
    N = ctx.q_minus_1
    d = pair_differences(ctx, rows)
    both = np.sort(np.concatenate([d, (N - d) % N], axis=1), axis=1)
    return (np.diff(both, axis=1) > 0).all(axis=1)


def group_labels(ctx: FieldCtx, rows: np.ndarray, groups: GroupTable) -> tuple[np.ndarray, np.ndarray]:
    """Per row: (7 smallest distinct group indices, coset-complete flag)."""
    g = np.sort(groups.group_index[pair_differences(ctx, rows)], axis=1)
    first = np.concatenate([np.ones((len(g), 1), dtype=bool), np.diff(g, axis=1) > 0], axis=1)
    distinct = first.sum(axis=1)
    ok = distinct == 7
    labels = np.zeros((len(g), 7), dtype=np.int64)
    if ok.any():
        labels[ok] = g[ok][first[ok]].reshape(-1, 7)
    return labels, ok


@dataclass
class Orbits:
    reps: np.ndarray  # canonical representatives, lexicographically sorted
    stabilisers: np.ndarray
    frobenius: bool

    def sizes(self, ctx: FieldCtx) -> np.ndarray:
        return (ctx.n if self.frobenius else 1) * ctx.q_minus_1 // self.stabilisers


def enumerate_orbits(ctx: FieldCtx, frobenius: bool = True, rows: np.ndarray | None = None) -> Orbits:
    """Canonical representatives of all subspace orbits (or of those meeting ``rows``)."""
    if rows is None:
        rows = subspaces_through_one(ctx, frobenius_reduced=frobenius)
    canon, stab = canonical_forms(ctx, rows, frobenius=frobenius)
    reps, idx = np.unique(canon, axis=0, return_index=True)
    return Orbits(reps=reps, stabilisers=stab[idx], frobenius=frobenius)


# -- vertices and graph ----------------------------------------------------------------


@dataclass
class VertexSet:
    """One vertex per realised label.

    ``mode="coset"``: label = the 7 coset-group indices of a coset-complete
    subspace, equivalence = shifts and Frobenius maps.
    ``mode="complete"``: label = the 42 differences of a complete subspace,
    equivalence = shifts only.
    """

    mode: str
    labels: list[tuple[int, ...]]
    reps: list[Subspace3]
    multiplicity: list[int]
    universe: int  # labels are subsets of range(universe)
    orbits_total: int = 0
    index: dict[tuple[int, ...], int] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        if not self.index:
            self.index = {lab: i for i, lab in enumerate(self.labels)}

    def __len__(self) -> int:
        return len(self.labels)


def enumerate_vertices(
    ctx: FieldCtx, groups: GroupTable | None = None, mode: str = "coset", orbits: Orbits | None = None
) -> VertexSet:
    _check_binary(ctx)
    if mode == "coset":
        if groups is None:
            raise SteinerError("coset mode needs a group table")
        if orbits is None:
            rows = subspaces_through_one(ctx, frobenius_reduced=True)
            _, ok = group_labels(ctx, rows, groups)
            orbits = enumerate_orbits(ctx, frobenius=True, rows=rows[ok])
        labels, ok = group_labels(ctx, orbits.reps, groups)
        keep_reps, keep_labels = orbits.reps[ok], labels[ok]
        universe = groups.group_count
    elif mode == "complete":
        if orbits is None:
            orbits = enumerate_orbits(ctx, frobenius=False)
        ok = complete_mask(ctx, orbits.reps)
        keep_reps = orbits.reps[ok]
        d = pair_differences(ctx, keep_reps)
        keep_labels = np.sort(np.concatenate([d, (ctx.q_minus_1 - d) % ctx.q_minus_1], axis=1), axis=1)
        universe = ctx.q_minus_1
    else:
        raise ValueError(f"unknown vertex mode {mode!r}")

    first: dict[tuple[int, ...], int] = {}
    labels_out: list[tuple[int, ...]] = []
    reps_out: list[Subspace3] = []
    mult: list[int] = []
    # reps are sorted, so the first orbit met for a label is its smallest representative
    for lab, rep in zip(map(tuple, keep_labels.tolist()), map(tuple, keep_reps.tolist())):
        v = first.get(lab)
        if v is None:
            first[lab] = len(labels_out)
            labels_out.append(lab)
            reps_out.append(rep)
            mult.append(1)
        else:
            mult[v] += 1
    order = sorted(range(len(labels_out)), key=lambda i: labels_out[i])
    return VertexSet(
        mode=mode,
        labels=[labels_out[i] for i in order],
        reps=[reps_out[i] for i in order],
        multiplicity=[mult[i] for i in order],
        universe=universe,
        orbits_total=len(orbits.reps),
    )


@dataclass
class DisjointnessGraph:
    packed: np.ndarray  # (V, ceil(V/8)) little-endian adjacency bits
    vertex_count: int
    edge_count: int

    def neighbours(self, v: int) -> np.ndarray:
        return np.flatnonzero(np.unpackbits(self.packed[v], count=self.vertex_count, bitorder="little"))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.packed[u, v >> 3] >> (v & 7) & 1)

    def edges(self):
        for u in range(self.vertex_count):
            for v in self.neighbours(u):
                if v > u:
                    yield u, int(v)

    def density(self) -> float:
        V = self.vertex_count
        return 0.0 if V < 2 else self.edge_count / (V * (V - 1) / 2)


def label_masks(labels: Sequence[Sequence[int]], universe: int) -> np.ndarray:
    words = (universe + 63) // 64
    out = np.zeros((len(labels), words), dtype=np.uint64)
    for v, lab in enumerate(labels):
        for g in lab:
            out[v, g >> 6] |= np.uint64(1) << np.uint64(g & 63)
    return out


def build_graph(vs: VertexSet | Sequence[Sequence[int]], universe: int | None = None) -> DisjointnessGraph:
    """Edge between two labels iff they are disjoint."""
    if isinstance(vs, VertexSet):
        labels, universe = vs.labels, vs.universe
    else:
        labels = vs
        universe = universe if universe is not None else 1 + max((max(l) for l in labels if l), default=0)
    V = len(labels)
    masks = label_masks(labels, universe)
    width = (V + 7) // 8
    packed = np.zeros((V, width), dtype=np.uint8)
    degree = 0
    for v in range(V):
        clash = (masks & masks[v]).any(axis=1)
        row = np.packbits(~clash, bitorder="little")
        packed[v, : len(row)] = row
        degree += int(V - clash.sum())
    return DisjointnessGraph(packed=packed, vertex_count=V, edge_count=degree // 2)


def steiner_clique_size(n: int, mode: str = "coset") -> int:
    """Clique size a Steiner structure would need: every difference covered once."""
    return (2**n - 2) // (42 * n if mode == "coset" else 42)


def search_clique(graph: DisjointnessGraph, target: int | None, budget_seconds: float | None = None,
                  seed: int | None = None, restart_seconds: float | None = None) -> CliqueResult:
    return find_clique(graph.packed, target=target, budget_seconds=budget_seconds, seed=seed,
                       restart_seconds=restart_seconds)


# -- codes ---------------------------------------------------------------------------------


@dataclass
class SubspaceCode:
    members: np.ndarray  # sorted rows
    source_clique: list[int]

    def __len__(self) -> int:
        return len(self.members)


def expand_code(ctx: FieldCtx, clique: Sequence[int], vs: VertexSet) -> SubspaceCode:
    """Union of the full shift/Frobenius orbits of the clique's representatives."""
    labels = [set(vs.labels[v]) for v in clique]
    for i in range(len(labels)):
        for j in range(i + 1, len(labels)):
            if labels[i] & labels[j]:
                raise SteinerError(f"vertices {clique[i]} and {clique[j]} are not disjoint")
    frob = vs.mode == "coset"
    full = (ctx.n if frob else 1) * ctx.q_minus_1
    parts = []
    for v in clique:
        orb = orbit(ctx, vs.reps[v], frobenius=frob)
        if len(orb) != full:
            raise UnexpectedStabilizer(f"vertex {v} rep {vs.reps[v]} has orbit size {len(orb)} < {full}")
        parts.append(orb)
    members = np.concatenate(parts) if parts else np.zeros((0, 7), dtype=np.int64)
    members = np.unique(members, axis=0)
    return SubspaceCode(members=members, source_clique=list(clique))


@dataclass
class CodeReport:
    members: int
    two_subspaces_total: int  # 7 per member, with repetition
    distinct_two_subspaces: int
    repeated_two_subspaces: int
    all_two_subspaces: int  # Gaussian binomial [n, 2]_2
    coverage_histogram: dict[int, int]
    min_distance_ok: bool
    steiner: bool
    first_violation: str | None


def two_subspace_keys(ctx: FieldCtx, rows: np.ndarray) -> np.ndarray:
    """(r, 7) int64 codes a*N^2 + b*N + c of the 2-subspaces of each row."""
    N = ctx.q_minus_1
    Z = ctx.zech.astype(np.int64)
    rows = np.asarray(rows, dtype=np.int64)
    a = rows[:, _PAIRS[:, 0]]
    b = rows[:, _PAIRS[:, 1]]
    c = (b + Z[(a - b) % N]) % N
    # each 2-subspace shows up for its three pairs; keep the pair of its two smallest elements
    take = c > b
    keys = (a * N + b) * N + c
    out = keys[take]
    if out.size != 7 * len(rows):
        raise SteinerError("rows are not 3-dimensional subspaces")
    return out.reshape(len(rows), 7)


def verify_code(ctx: FieldCtx, code: SubspaceCode | np.ndarray) -> CodeReport:
    members = code.members if isinstance(code, SubspaceCode) else np.asarray(code)
    N = ctx.q_minus_1
    total_pairs = gaussian_binomial(ctx.n, 2, 2)
    bad = None
    if len(members):
        keys = two_subspace_keys(ctx, members).ravel()
        uniq, counts = np.unique(keys, return_counts=True)
    else:
        uniq = counts = np.zeros(0, dtype=np.int64)
    hist: dict[int, int] = {0: total_pairs - len(uniq)}
    for c, k in zip(*np.unique(counts, return_counts=True)):
        hist[int(c)] = int(k)
    repeated = int((counts > 1).sum())
    if repeated:
        key = int(uniq[np.argmax(counts > 1)])
        a, rest = divmod(key, N * N)
        b, c = divmod(rest, N)
        bad = f"2-subspace {{{a}, {b}, {c}}} lies in {int(counts.max())} members"
    distinct_rows = len(np.unique(members, axis=0)) if len(members) else 0
    if bad is None and distinct_rows != len(members):
        bad = "code lists a subspace twice"
    ok = bad is None
    return CodeReport(
        members=len(members),
        two_subspaces_total=7 * len(members),
        distinct_two_subspaces=len(uniq),
        repeated_two_subspaces=repeated,
        all_two_subspaces=total_pairs,
        coverage_histogram=hist,
        min_distance_ok=ok,
        steiner=ok and hist[0] == 0,
        first_violation=bad,
    )
