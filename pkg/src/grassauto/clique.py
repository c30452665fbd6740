"""Branch-and-bound clique search over Python-int bitsets.

Vertices are renumbered by a degeneracy (smallest-last) order so that bit
``i`` of a candidate set is the i-th vertex of that order.  Each node
colours its candidate set greedily; the colour number is an upper bound on
the clique that node can still add (Tomita-style MCQ).
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np


@dataclass
class CliqueResult:
    clique: list[int]  # original vertex ids, ascending
    target: int | None
    reached_target: bool
    exhaustive: bool  # tree fully explored: maximum (no target) or proof no target-size clique exists
    timed_out: bool
    nodes: int
    seconds: float
    restarts: int = 0
    seed: int | None = None
    history: list[tuple[float, int]] = field(default_factory=list)  # (seconds, size) improvements


class CliqueTimedOut(RuntimeError):
    def __init__(self, result: CliqueResult):
        super().__init__(f"clique search budget exhausted; best size {len(result.clique)}")
        self.result = result


def _bits(x: int) -> list[int]:
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return out


def pack_bitsets(adj: Sequence[int]) -> np.ndarray:
    """Int bitsets -> packed little-endian bit matrix of shape (n, ceil(n/8))."""
    n = len(adj)
    width = (n + 7) // 8
    out = np.zeros((n, width), dtype=np.uint8)
    for v, a in enumerate(adj):
        out[v] = np.frombuffer(a.to_bytes(width, "little"), dtype=np.uint8)
    return out


def bitsets_from_packed(packed: np.ndarray, order: Sequence[int] | None = None, chunk: int = 2048) -> list[int]:
    """Rows of a packed matrix as ints; with ``order`` vertices are renumbered so bit i is order[i]."""
    n = packed.shape[0]
    width = packed.shape[1]
    if order is None:
        return [int.from_bytes(packed[v].tobytes(), "little") for v in range(n)]
    order = np.asarray(order, dtype=np.int64)
    out = []
    for lo in range(0, n, chunk):
        rows = packed[order[lo : lo + chunk]]
        bits = np.unpackbits(rows, axis=1, count=n, bitorder="little")[:, order]
        repacked = np.packbits(bits, axis=1, bitorder="little")
        pad = width - repacked.shape[1]
        if pad:
            repacked = np.pad(repacked, ((0, 0), (0, pad)))
        out.extend(int.from_bytes(r.tobytes(), "little") for r in repacked)
    return out


def degeneracy_order(packed: np.ndarray) -> list[int]:
    """Smallest-last ordering; ties broken by vertex index.

    The returned list puts the vertex removed *last* (deepest core) first.
    """
    n = packed.shape[0]
    deg = np.zeros(n, dtype=np.int64)
    for lo in range(0, n, 4096):
        deg[lo : lo + 4096] = np.unpackbits(packed[lo : lo + 4096], axis=1, count=n, bitorder="little").sum(axis=1)
    big = np.iinfo(np.int64).max
    removed = []
    for _ in range(n):
        v = int(np.argmin(deg))
        removed.append(v)
        deg -= np.unpackbits(packed[v], count=n, bitorder="little")
        deg[v] = big
    # neighbours already removed were decremented too, but they sit at ``big``
    removed.reverse()
    return removed


class _Search:
    def __init__(self, adj: list[int], target: int | None, deadline: float | None, max_nodes: int | None):
        self.adj = adj
        self.target = target
        self.deadline = deadline
        self.max_nodes = max_nodes
        self.nodes = 0
        self.best: list[int] = []
        self.stop = False
        self.timed_out = False
        self.t0 = time.monotonic()
        self.history: list[tuple[float, int]] = []
        # prune against this size: a branch must be able to beat it
        self.bar = 0 if target is None else target - 1

    def color_sort(self, cand: int) -> tuple[list[int], list[int]]:
        adj = self.adj
        order, colors = [], []
        k = 0
        while cand:
            k += 1
            q = cand
            while q:
                low = q & -q
                v = low.bit_length() - 1
                q &= ~adj[v] & ~low
                cand ^= low
                order.append(v)
                colors.append(k)
        return order, colors

    def expand(self, clique: list[int], cand: int) -> None:
        self.nodes += 1
        if self.nodes & 255 == 0:
            if self.deadline is not None and time.monotonic() > self.deadline:
                self.stop = self.timed_out = True
            if self.max_nodes is not None and self.nodes > self.max_nodes:
                self.stop = self.timed_out = True
        if self.stop:
            return
        order, colors = self.color_sort(cand)
        size = len(clique)
        for idx in range(len(order) - 1, -1, -1):
            if size + colors[idx] <= self.bar:
                return
            v = order[idx]
            clique.append(v)
            nxt = cand & self.adj[v]
            if len(clique) > len(self.best):
                self.best = clique.copy()
                self.history.append((time.monotonic() - self.t0, len(clique)))
                if self.target is None:
                    self.bar = max(self.bar, len(clique))
                elif len(clique) >= self.target:
                    self.stop = True
                    return
            if nxt:
                self.expand(clique, nxt)
                if self.stop:
                    return
            clique.pop()
            cand &= ~(1 << v)


def find_clique(
    adj: Sequence[int] | np.ndarray,
    target: int | None = None,
    budget_seconds: float | None = None,
    seed: int | None = None,
    restart_seconds: float | None = None,
    max_nodes: int | None = None,
) -> CliqueResult:
    """Maximum clique (``target=None``) or the first clique of size ``target``.

    ``adj`` is either a list of neighbour bitsets or a packed bit matrix (see
    :func:`pack_bitsets`).  Without ``seed`` the run is one deterministic
    branch and bound in degeneracy order.  With ``seed`` the order is
    shuffled by a seeded generator and, if ``restart_seconds`` is given, the
    search restarts with a fresh shuffle every that many seconds until the
    target or the overall budget is reached.
    """
    t0 = time.monotonic()
    deadline = None if budget_seconds is None else t0 + budget_seconds
    packed = adj if isinstance(adj, np.ndarray) else pack_bitsets(adj)
    n = packed.shape[0]
    if n and np.unpackbits(packed, axis=1, count=n, bitorder="little").diagonal().any():
        raise ValueError("adjacency has a self-loop")
    if n == 0:
        return CliqueResult([], target, target is not None and target <= 0, True, False, 0, 0.0, seed=seed)

    base_order = degeneracy_order(packed)
    rng = random.Random(seed) if seed is not None else None
    best: list[int] = []
    history: list[tuple[float, int]] = []
    nodes = 0
    restarts = 0
    exhaustive = timed_out = False
    while True:
        order = list(base_order)
        if rng is not None:
            rng.shuffle(order)
        local = bitsets_from_packed(packed, order)
        sub_deadline = deadline
        if rng is not None and restart_seconds is not None:
            cap = time.monotonic() + restart_seconds
            sub_deadline = cap if deadline is None else min(cap, deadline)
        s = _Search(local, target, sub_deadline, max_nodes)
        if target is None:
            s.bar = len(best)
        s.expand([], (1 << n) - 1)
        nodes += s.nodes
        found = sorted(order[i] for i in s.best)
        if len(found) > len(best):
            best = found
            history.append((time.monotonic() - t0, len(best)))
        if not s.timed_out:
            # finished the tree: either hit the target or proved nothing larger exists
            exhaustive = target is None or len(best) < target
            break
        if target is not None and len(best) >= target:
            break
        out_of_time = deadline is not None and time.monotonic() >= deadline
        if out_of_time or rng is None or restart_seconds is None or max_nodes is not None:
            timed_out = True
            break
        restarts += 1
    reached = target is not None and len(best) >= target
    return CliqueResult(
        clique=best,
        target=target,
        reached_target=reached,
        exhaustive=exhaustive and not reached,
        timed_out=timed_out and not reached,
        nodes=nodes,
        seconds=time.monotonic() - t0,
        restarts=restarts,
        seed=seed,
        history=history,
    )


def is_clique(adj: Sequence[int], vertices: Sequence[int]) -> bool:
    vs = list(vertices)
    if len(set(vs)) != len(vs):
        return False
    for i, v in enumerate(vs):
        for u in vs[i + 1 :]:
            if not adj[v] >> u & 1:
                return False
    return True
