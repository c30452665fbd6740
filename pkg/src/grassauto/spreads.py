"""Spreads and parallelisms of lines in PG(n, p) built from a small seed.

A seed is a list of base lines (one P0 point each), p - 1 shift amounts per
base line, and a list of generator lines lying wholly in P0.  The first
spread is

    {type-1 line}
    + {Frob_l(Shift_s(B)) : B base line, s one of its shifts, 0 <= l < n}
    + {Frob_l(G) : G generator, 0 <= l < n}

and spread i+1 is the image of spread i under Shift_{p-1}.  Seed lines
themselves are not spread members.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

from .pgeom import PG, Line


class ConstructionError(ValueError):
    """Base for verification failures; ``violation`` names the first problem."""

    def __init__(self, violation: str):
        super().__init__(violation)
        self.violation = violation


class NotASpread(ConstructionError):
    pass


class NotAParallelism(ConstructionError):
    pass


class SearchExhausted(RuntimeError):
    def __init__(self, msg: str, nodes: int = 0):
        super().__init__(msg)
        self.nodes = nodes


class SearchTimedOut(RuntimeError):
    def __init__(self, msg: str, best_depth: int, nodes: int):
        super().__init__(msg)
        self.best_depth = best_depth
        self.nodes = nodes


@dataclass(frozen=True)
class Conditions:
    p: int
    n: int
    n_odd: bool
    n_divides: bool
    coprime: bool

    @property
    def ok(self) -> bool:
        return self.n_odd and self.n_divides and self.coprime

    def failures(self) -> list[str]:
        out = []
        if not self.n_odd:
            out.append(f"n={self.n} is even")
        if not self.n_divides:
            out.append(f"n={self.n} does not divide (p^(n-1)-1)/(p^2-1)")
        if not self.coprime:
            out.append(f"gcd(p-1, (p^n-1)/(p-1)) != 1")
        return out


def check_conditions(p: int, n: int) -> Conditions:
    m = (p**n - 1) // (p - 1)
    num, den = p ** (n - 1) - 1, p * p - 1
    divides = num % den == 0 and (num // den) % n == 0
    return Conditions(p=p, n=n, n_odd=n % 2 == 1, n_divides=divides, coprime=gcd(p - 1, m) == 1)


def spread_size(p: int, n: int) -> int:
    """p^(n-1) + p^(n-3) + ... + p^2 + 1 (n odd)."""
    return (p ** (n + 1) - 1) // (p * p - 1)


def base_line_count(p: int, n: int) -> int:
    return (p ** (n - 1) - 1) // ((p - 1) * n)


def generator_count(p: int, n: int) -> int:
    return (p ** (n - 1) - 1) // ((p * p - 1) * n)


@dataclass
class SpreadSeed:
    base_lines: list[Line]
    shift_table: list[list[int]]  # per base line, p - 1 shifts; entry r is = r + 1 (mod p - 1)
    generators: list[Line]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SpreadSeed):
            return NotImplemented
        return (
            [tuple(b) for b in self.base_lines] == [tuple(b) for b in other.base_lines]
            and [list(r) for r in self.shift_table] == [list(r) for r in other.shift_table]
            and [tuple(g) for g in self.generators] == [tuple(g) for g in other.generators]
        )


@dataclass
class Spread:
    lines: list[Line]

    def __len__(self) -> int:
        return len(self.lines)

    def as_set(self) -> frozenset[Line]:
        return frozenset(self.lines)


@dataclass
class Parallelism:
    spreads: list[Spread] = field(default_factory=list)

    def line_count(self) -> int:
        return sum(len(s) for s in self.spreads)


# -- verification ---------------------------------------------------------------


def verify_spread(pg: PG, lines: Sequence[Line]) -> str | None:
    """Return ``None`` for a valid spread, else a description of the first violation."""
    owner: dict[int, Line] = {}
    seen: set[Line] = set()
    for line in lines:
        if not pg.is_line(line):
            return f"{pg.format_line(line)} is not a line"
        if line in seen:
            return f"duplicate line {pg.format_line(line)}"
        seen.add(line)
        for pt in line:
            if pt in owner:
                return (
                    f"point {pg.token(pt)} on both {pg.format_line(owner[pt])} "
                    f"and {pg.format_line(line)}"
                )
            owner[pt] = line
    if len(owner) != pg.num_points:
        missing = next(k for k in range(pg.num_points) if k not in owner)
        return f"point {pg.token(missing)} not covered ({len(owner)} of {pg.num_points} covered)"
    return None


def verify_parallelism(pg: PG, par: Parallelism) -> str | None:
    for i, s in enumerate(par.spreads):
        bad = verify_spread(pg, s.lines)
        if bad is not None:
            return f"spread {i}: {bad}"
    home: dict[Line, int] = {}
    for i, s in enumerate(par.spreads):
        for line in s.lines:
            if line in home:
                return f"line {pg.format_line(line)} in spreads {home[line]} and {i}"
            home[line] = i
    total = pg.line_count()
    if len(home) != total:
        return f"{len(home)} of {total} lines covered"
    return None


# -- construction -----------------------------------------------------------------


def type1_line(pg: PG) -> Line:
    return pg.type1_line()


def check_seed_shape(pg: PG, seed: SpreadSeed) -> None:
    p, n = pg.p, pg.n
    if len(seed.base_lines) != base_line_count(p, n):
        raise NotASpread(f"seed has {len(seed.base_lines)} base lines, expected {base_line_count(p, n)}")
    if len(seed.generators) != generator_count(p, n):
        raise NotASpread(f"seed has {len(seed.generators)} generators, expected {generator_count(p, n)}")
    if len(seed.shift_table) != len(seed.base_lines):
        raise NotASpread("shift table rows do not match base lines")
    for k, (b, row) in enumerate(zip(seed.base_lines, seed.shift_table)):
        if not pg.is_line(b) or sum(1 for x in b if pg.in_p0(x)) != 1:
            raise NotASpread(f"base line {k} ({pg.format_line(b)}) is not a line with one P0 point")
        if len(row) != p - 1:
            raise NotASpread(f"base line {k} has {len(row)} shifts, expected {p - 1}")
    for k, g in enumerate(seed.generators):
        if not pg.is_line(g) or not all(pg.in_p0(x) for x in g):
            raise NotASpread(f"generator {k} ({pg.format_line(g)}) is not a line inside P0")


def shifted_base_lines(pg: PG, seed: SpreadSeed) -> list[list[Line]]:
    """Per base line, its p - 1 shifted copies (the table's shift columns)."""
    return [[pg.shift_line(s, b) for s in row] for b, row in zip(seed.base_lines, seed.shift_table)]


def expand_seed(pg: PG, seed: SpreadSeed) -> Spread:
    check_seed_shape(pg, seed)
    n = pg.n
    type2 = []
    for row in shifted_base_lines(pg, seed):
        for x in row:
            type2.extend(pg.frobenius_line(ell, x) for ell in range(n))
    type3 = [pg.frobenius_line(ell, g) for g in seed.generators for ell in range(n)]
    lines = [pg.type1_line()] + type2 + type3

    p = pg.p
    if len(type2) != p ** (n - 1) - 1 or len(type3) != (p ** (n - 1) - 1) // (p * p - 1):
        raise NotASpread("type counts do not match a spread")
    bad = verify_spread(pg, lines)
    if bad is not None:
        raise NotASpread(bad)
    return Spread(lines=sorted(lines))


def next_spread(pg: PG, spread: Spread) -> Spread:
    lines = sorted(pg.shift_line(pg.p - 1, x) for x in spread.lines)
    bad = verify_spread(pg, lines)
    if bad is not None:
        raise NotASpread(bad)
    return Spread(lines=lines)


def build_parallelism(pg: PG, seed: SpreadSeed) -> Parallelism:
    cond = check_conditions(pg.p, pg.n)
    if not cond.ok:
        raise NotAParallelism("conditions fail: " + "; ".join(cond.failures()))
    first = expand_seed(pg, seed)
    spreads = [first]
    for _ in range(pg.m - 1):
        spreads.append(next_spread(pg, spreads[-1]))
    par = Parallelism(spreads=spreads)
    bad = verify_parallelism(pg, par)
    if bad is not None:
        raise NotAParallelism(bad)
    return par


# -- seed search --------------------------------------------------------------------


def shift_orbit_id(pg: PG, line: Sequence[int]) -> Line:
    """Canonical member of the orbit of ``line`` under Shift_{(p-1)t}.

    Every line has a P0 point; for each one take the unique t moving it to
    P0(0) and keep the smallest image.
    """
    step = pg.p - 1
    inv = pow(step, -1, pg.m) if pg.m > 1 else 0
    best = None
    for k in line:
        if k >= pg.m:
            continue
        t = (-k * inv) % pg.m
        img = pg.shift_line(step * t, line)
        if best is None or img < best:
            best = img
    if best is None:
        raise ValueError("line without a P0 point")
    return best


@dataclass
class _Block:
    lines: tuple[Line, ...]
    mask: int
    orbits: int
    key: Line


def _frobenius_block(pg: PG, line: Line) -> tuple[Line, ...] | None:
    imgs = tuple(pg.frobenius_line(ell, line) for ell in range(pg.n))
    if len(set(imgs)) != pg.n:
        return None
    pts = [x for img in imgs for x in img]
    if len(set(pts)) != len(pts):
        return None
    return imgs


def search_seed(pg: PG, budget_seconds: float = 60.0, max_nodes: int | None = None) -> SpreadSeed:
    """Backtracking search for a seed whose parallelism verifies.

    Works on Frobenius orbits of lines ("blocks").  The first spread must be
    a partition of the points, closed under Frobenius, and must meet every
    Shift_{p-1} orbit of lines at most once (otherwise two of the generated
    spreads would share a line).  Branching always covers the smallest
    uncovered point; candidates are tried in ascending line order, so the
    result is deterministic.
    """
    cond = check_conditions(pg.p, pg.n)
    if not cond.ok:
        raise SearchExhausted("conditions fail: " + "; ".join(cond.failures()))
    deadline = time.monotonic() + budget_seconds

    t1 = pg.type1_line()
    t1_mask = 0
    for x in t1:
        t1_mask |= 1 << x
    orbit_index: dict[Line, int] = {}
    blocks: list[_Block] = []
    seen: set[Line] = set()
    for line in pg.all_lines():
        if line in seen or line == t1:
            continue
        kind = pg.classify_line(line)
        if kind not in (2, 3) or pg.m in line:
            continue
        imgs = _frobenius_block(pg, line)
        seen.update(imgs or (line,))
        if imgs is None:
            continue
        mask = 0
        for img in imgs:
            for x in img:
                mask |= 1 << x
        if mask & t1_mask:
            continue
        ids = {orbit_index.setdefault(shift_orbit_id(pg, img), len(orbit_index)) for img in imgs}
        if len(ids) != pg.n:
            continue
        omask = 0
        for i in ids:
            omask |= 1 << i
        blocks.append(_Block(lines=imgs, mask=mask, orbits=omask, key=min(imgs)))
    blocks.sort(key=lambda b: b.key)
    by_point: list[list[_Block]] = [[] for _ in range(pg.num_points)]
    for b in blocks:
        for x in range(pg.num_points):
            if b.mask >> x & 1:
                by_point[x].append(b)

    full = (1 << pg.num_points) - 1
    chosen: list[_Block] = []
    stats = {"nodes": 0, "best": 0}

    def dfs(covered: int, orbits: int) -> bool:
        stats["nodes"] += 1
        if stats["nodes"] & 1023 == 0 and time.monotonic() > deadline:
            raise SearchTimedOut("seed search budget exhausted", stats["best"], stats["nodes"])
        if max_nodes is not None and stats["nodes"] > max_nodes:
            raise SearchTimedOut("seed search node limit reached", stats["best"], stats["nodes"])
        if covered == full:
            return True
        free = ~covered & full
        u = (free & -free).bit_length() - 1
        for b in by_point[u]:
            if b.mask & covered or b.orbits & orbits:
                continue
            chosen.append(b)
            stats["best"] = max(stats["best"], len(chosen))
            if dfs(covered | b.mask, orbits | b.orbits):
                return True
            chosen.pop()
        return False

    if not dfs(t1_mask, 0):
        raise SearchExhausted("no seed exists under the search order", stats["nodes"])
    seed = seed_from_blocks(pg, [b.lines for b in chosen])
    build_parallelism(pg, seed)
    return seed


def seed_from_blocks(pg: PG, blocks: Sequence[Sequence[Line]]) -> SpreadSeed:
    """Recover base lines, shifts and generators from the Frobenius orbits of a spread."""
    p, m, qm1 = pg.p, pg.m, pg.qm1
    type2 = [min(b) for b in blocks if pg.classify_line(b[0]) == 2]
    type3 = sorted(min(b) for b in blocks if pg.classify_line(b[0]) == 3)
    # Frobenius orbit of each type-2 line, to find which block a shifted line lands in
    home: dict[Line, int] = {}
    for idx, x in enumerate(type2):
        for ell in range(pg.n):
            home[pg.frobenius_line(ell, x)] = idx
    used = [False] * len(type2)
    base_lines: list[Line] = []
    shift_table: list[list[int]] = []
    for idx, x in enumerate(type2):
        if used[idx]:
            continue
        used[idx] = True
        e = min(k for k in x if k > m) - m - 1
        base = pg.shift_line(-e, x)
        shifts = {e % (p - 1): e}
        # partners: spread lines Frobenius-equivalent to Shift_d(x) with d != 0 (mod p-1)
        for r in range(1, p - 1):
            found = False
            for k in range(qm1):
                if k % (p - 1) != r:
                    continue
                img = pg.shift_line(k, x)
                partner = home.get(img)
                if partner is not None and not used[partner]:
                    used[partner] = True
                    shifts[(e + k) % (p - 1)] = (e + k) % qm1
                    found = True
                    break
            if not found:
                raise NotASpread(f"type-2 line {pg.format_line(x)} has no shift partner in the spread")
        base_lines.append(base)
        shift_table.append([shifts[(r + 1) % (p - 1)] for r in range(p - 1)])
    return SpreadSeed(base_lines=base_lines, shift_table=shift_table, generators=type3)
