"""Cyclotomic cosets of Z_{p^n - 1} and the six-coset grouping for p = 2."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .field import ZECH_ZERO, FieldCtx


class GroupingInconsistent(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class CosetTable:
    rep_of: np.ndarray  # e -> smallest element of its coset
    cosets: tuple[tuple[int, ...], ...]  # sorted, ordered by representative
    size_n_count: int

    def size_histogram(self) -> dict[int, int]:
        hist: dict[int, int] = {}
        for c in self.cosets:
            hist[len(c)] = hist.get(len(c), 0) + 1
        return hist


@dataclass(frozen=True, eq=False)
class GroupTable:
    group_of: dict[int, int]  # coset representative -> group index
    groups: tuple[tuple[int, ...], ...]  # sorted representatives per group
    group_index: np.ndarray  # e -> group index of C(e), or -1 for size-1 cosets

    @property
    def group_count(self) -> int:
        return len(self.groups)


def coset(ctx: FieldCtx, s: int) -> list[int]:
    mod = ctx.q_minus_1
    s %= mod
    out = {s * pow(ctx.p, i, mod) % mod for i in range(ctx.n)}
    return sorted(out)


def coset_rep(ctx: FieldCtx, s: int) -> int:
    return coset(ctx, s)[0]


def build_coset_table(ctx: FieldCtx) -> CosetTable:
    mod, p, n = ctx.q_minus_1, ctx.p, ctx.n
    e = np.arange(mod, dtype=np.int64)
    orbit = np.empty((n, mod), dtype=np.int64)
    cur = e.copy()
    for i in range(n):
        orbit[i] = cur
        cur = cur * p % mod
    rep_of = orbit.min(axis=0)
    rep_of.setflags(write=False)
    cosets = []
    for r in np.flatnonzero(rep_of == e):
        cosets.append(tuple(sorted(set(orbit[:, r].tolist()))))
    size_n = sum(1 for c in cosets if len(c) == n)
    return CosetTable(rep_of=rep_of, cosets=tuple(cosets), size_n_count=size_n)


def _six_reps(ctx: FieldCtx, table: CosetTable, d: int) -> list[int]:
    mod = ctx.q_minus_1
    z = int(ctx.zech[d])
    if z == ZECH_ZERO:
        raise GroupingInconsistent(f"1 + alpha^{d} = 0; no 2-subspace through 1 and alpha^{d}")
    diffs = (d, -d, z, -z, z - d, d - z)
    return [int(table.rep_of[x % mod]) for x in diffs]


def build_group_table(ctx: FieldCtx, table: CosetTable) -> GroupTable:
    """Partition the size-n cosets into groups of six.

    The 2-subspace {0, 1, alpha^d, 1 + alpha^d} has the six differences
    +-d, +-z, +-(z - d) with alpha^z = 1 + alpha^d; their cosets always
    travel together in a coset difference set.
    """
    p, n = ctx.p, ctx.n
    if p != 2:
        raise GroupingInconsistent(f"coset grouping is defined for p = 2 only (got p={p})")
    if n % 6 != 1:
        # the group count (2^n - 2)/(6n) and the 42n divisibility behind it need n = 1 (mod 6)
        raise GroupingInconsistent(f"coset grouping needs n = 1 (mod 6), got n={n}")
    reps = [c[0] for c in table.cosets if len(c) == n]
    group_of: dict[int, int] = {}
    groups: list[tuple[int, ...]] = []
    for d in reps:
        if d in group_of:
            continue
        members = _six_reps(ctx, table, d)
        if len(set(members)) != 6:
            raise GroupingInconsistent(
                f"n={n}: the six difference cosets generated from {d} are not distinct: {members}"
            )
        if any(len(coset(ctx, r)) != n for r in members):
            raise GroupingInconsistent(f"n={n}: group of {d} contains a short coset")
        g = tuple(sorted(members))
        # every member must regenerate the same group
        for r in g:
            if r in group_of:
                raise GroupingInconsistent(f"n={n}: coset {r} lies in two groups")
            if tuple(sorted(_six_reps(ctx, table, r))) != g:
                raise GroupingInconsistent(f"n={n}: walks from {d} and {r} disagree")
        for r in g:
            group_of[r] = len(groups)
        groups.append(g)
    if 6 * len(groups) != len(reps):
        raise GroupingInconsistent(f"n={n}: {len(reps)} size-n cosets do not split into groups of six")

    index = np.full(ctx.q_minus_1, -1, dtype=np.int64)
    for e in range(ctx.q_minus_1):
        r = int(table.rep_of[e])
        if r in group_of:
            index[e] = group_of[r]
    index.setflags(write=False)
    return GroupTable(group_of=group_of, groups=tuple(groups), group_index=index)


def coset_report(table: CosetTable, groups: GroupTable | None = None, listing: bool = False) -> str:
    lines = []
    for size, count in sorted(table.size_histogram().items()):
        lines.append(f"cosets of size {size}: {count}")
    if groups is not None:
        lines.append(f"groups: {groups.group_count}")
    if listing:
        for c in table.cosets:
            lines.append(f"{c[0]}: " + " ".join(map(str, c)))
    return "\n".join(lines) + "\n"
