"""Text file formats: seeds, line lists, DIMACS graphs with a vertex sidecar, codes."""

from __future__ import annotations

import io
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence, TextIO

import numpy as np

from .pgeom import PG, Line
from .spreads import SpreadSeed


class FormatError(ValueError):
    pass


def _content_lines(text: str) -> Iterable[tuple[int, str]]:
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


# -- seeds -------------------------------------------------------------------------


def parse_seed(pg: PG, text: str) -> SpreadSeed:
    sections: dict[str, list[tuple[int, str]]] = {"base": [], "shifts": [], "generators": []}
    current = None
    for no, line in _content_lines(text):
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip()
            if current not in sections:
                raise FormatError(f"line {no}: unknown section [{current}]")
            continue
        if current is None:
            raise FormatError(f"line {no}: content before the first section")
        sections[current].append((no, line))
    try:
        base = [pg.parse_line(t) for _, t in sections["base"]]
        gens = [pg.parse_line(t) for _, t in sections["generators"]]
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    shifts = []
    for no, t in sections["shifts"]:
        try:
            shifts.append([int(v) % pg.qm1 for v in t.split()])
        except ValueError:
            raise FormatError(f"line {no}: shifts must be integers") from None
    return SpreadSeed(base_lines=base, shift_table=shifts, generators=gens)


def format_seed(pg: PG, seed: SpreadSeed) -> str:
    out = ["[base]"]
    out += [pg.format_line(b) for b in seed.base_lines]
    out.append("[shifts]")
    out += [" ".join(str(s) for s in row) for row in seed.shift_table]
    out.append("[generators]")
    out += [pg.format_line(g) for g in seed.generators]
    return "\n".join(out) + "\n"


def load_seed(pg: PG, path: str | Path) -> SpreadSeed:
    return parse_seed(pg, read_fixture_or_file(path))


def read_fixture_or_file(path: str | Path) -> str:
    """Read ``path``; bare names like ``paper_pg53.seed`` fall back to bundled fixtures."""
    p = Path(path)
    if p.exists():
        return p.read_text(encoding="utf-8")
    res = resources.files("grassauto") / "fixtures" / p.name
    if res.is_file():
        return res.read_text(encoding="utf-8")
    if not p.suffix:
        res = resources.files("grassauto") / "fixtures" / (p.name + ".seed")
        if res.is_file():
            return res.read_text(encoding="utf-8")
    raise FileNotFoundError(str(path))


# -- line lists --------------------------------------------------------------------


def format_lines(pg: PG, lines: Iterable[Line]) -> str:
    return "".join(pg.format_line(x) + "\n" for x in lines)


def parse_lines(pg: PG, text: str) -> list[Line]:
    return [pg.parse_line(t) for _, t in _content_lines(text)]


def format_spreads(pg: PG, spreads: Sequence[Sequence[Line]]) -> str:
    buf = io.StringIO()
    for i, s in enumerate(spreads):
        buf.write(f"[spread {i}]\n")
        buf.write(format_lines(pg, s))
    return buf.getvalue()


def parse_spreads(pg: PG, text: str) -> list[list[Line]]:
    out: list[list[Line]] = []
    for no, t in _content_lines(text):
        if t.startswith("[spread"):
            out.append([])
            continue
        if not out:
            raise FormatError(f"line {no}: line outside a [spread] section")
        out[-1].append(pg.parse_line(t))
    return out


# -- graphs ------------------------------------------------------------------------


def write_dimacs(fh: TextIO, vertex_count: int, edges: Iterable[tuple[int, int]], edge_count: int) -> None:
    """DIMACS undirected format with 1-based vertex numbers."""
    fh.write(f"p edge {vertex_count} {edge_count}\n")
    for i, j in edges:
        fh.write(f"e {i + 1} {j + 1}\n")


def read_dimacs(fh: TextIO) -> tuple[int, list[tuple[int, int]]]:
    n = None
    edges = []
    for no, line in enumerate(fh, 1):
        parts = line.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "p":
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise FormatError(f"line {no}: bad problem line {line.strip()!r}")
            n = int(parts[2])
        elif parts[0] == "e":
            if n is None:
                raise FormatError(f"line {no}: edge before problem line")
            i, j = int(parts[1]) - 1, int(parts[2]) - 1
            if not (0 <= i < n and 0 <= j < n) or i == j:
                raise FormatError(f"line {no}: bad edge {i + 1} {j + 1}")
            edges.append((min(i, j), max(i, j)))
        else:
            raise FormatError(f"line {no}: unknown record {parts[0]!r}")
    if n is None:
        raise FormatError("missing problem line")
    return n, edges


def write_vertex_map(fh: TextIO, labels: Sequence[Sequence[int]], reps: Sequence[Sequence[int]]) -> None:
    """``vertex_id: g1 .. g7 / rep: i1 .. i7`` (0-based vertex ids)."""
    for v, (lab, rep) in enumerate(zip(labels, reps)):
        fh.write(f"{v}: {' '.join(map(str, lab))} / rep: {' '.join(map(str, rep))}\n")


def read_vertex_map(fh: TextIO) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    labels, reps = [], []
    for no, line in enumerate(fh, 1):
        line = line.strip()
        if not line:
            continue
        try:
            head, rest = line.split(":", 1)
            lab, rep = rest.split("/ rep:")
        except ValueError:
            raise FormatError(f"line {no}: expected 'id: labels / rep: exponents'") from None
        if int(head) != len(labels):
            raise FormatError(f"line {no}: vertex ids must be consecutive from 0")
        labels.append(tuple(int(x) for x in lab.split()))
        reps.append(tuple(int(x) for x in rep.split()))
    return labels, reps


# -- cliques and codes -------------------------------------------------------------


def format_clique(clique: Sequence[int]) -> str:
    return " ".join(map(str, clique)) + "\n"


def parse_clique(text: str) -> list[int]:
    return [int(x) for _, t in _content_lines(text) for x in t.split()]


def write_code(fh: TextIO, members: np.ndarray) -> None:
    """One sorted 7-tuple of exponents per line."""
    np.savetxt(fh, np.asarray(members, dtype=np.int64), fmt="%d", delimiter=" ")


def read_code(fh: TextIO) -> np.ndarray:
    rows = [[int(x) for x in t.split()] for _, t in _content_lines(fh.read())]
    if not rows:
        return np.zeros((0, 7), dtype=np.int64)
    arr = np.asarray(rows, dtype=np.int64)
    if arr.ndim != 2 or arr.shape[1] != 7:
        raise FormatError("code rows must have 7 exponents each")
    return arr
