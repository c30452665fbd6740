"""Points and lines of PG(n, p) in the two-cycle model.

Points are the nonzero pairs (x, c) in F_{p^n} x F_p up to F_p-scalars,
split into

* P0: (alpha^i, 0) for 0 <= i < m, m = (p^n - 1)/(p - 1),
* P1: (x, 1) for every x in F_{p^n} (including zero).

Every point has an integer key: P0(i) -> i, P1(zero) -> m, P1(alpha^e)
-> m + 1 + e.  A line is the ascending tuple of its p + 1 point keys,
so lines hash and compare cheaply.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

from .field import ZECH_ZERO, FieldCtx, from_prime_field

Line = tuple[int, ...]

TYPE_UNCLASSIFIED = 0


class GeometryError(ValueError):
    pass


class SamePoint(GeometryError):
    pass


class NotALine(GeometryError):
    pass


class PG:
    """PG(n, p) over a built field: point model, mappings, incidence."""

    def __init__(self, ctx: FieldCtx):
        self.ctx = ctx
        self.p = ctx.p
        self.n = ctx.n
        self.m = ctx.m
        self.qm1 = ctx.q_minus_1
        self.num_points = self.m + self.qm1 + 1
        self._zech = ctx.zech.tolist()
        # exponents of the nonzero prime-field scalars 1..p-1
        self._scalar = [None] + [from_prime_field(ctx, c) for c in range(1, self.p)]
        self._frob_cache: dict[int, list[int]] = {}

    # -- points ---------------------------------------------------------------

    def p0(self, i: int) -> int:
        return i % self.m

    def p1(self, e: int | None) -> int:
        return self.m if e is None else self.m + 1 + e % self.qm1

    def in_p0(self, key: int) -> bool:
        return key < self.m

    def coords(self, key: int) -> tuple[int | None, int]:
        """Pair (x, c) with x as an exponent (None for zero) and c in Z_p."""
        if key < self.m:
            return key, 0
        if key == self.m:
            return None, 1
        return key - self.m - 1, 1

    def normalize(self, x: int | None, c: int) -> int:
        c %= self.p
        if c == 0:
            if x is None:
                raise GeometryError("the zero vector is not a projective point")
            return x % self.m
        if x is None:
            return self.m
        # divide by c so the second coordinate becomes 1
        return self.m + 1 + (x - self._scalar[c]) % self.qm1

    def token(self, key: int) -> str:
        if key < self.m:
            return f"P0:{key}"
        if key == self.m:
            return "P1:zero"
        return f"P1:{key - self.m - 1}"

    def parse_token(self, tok: str) -> int:
        kind, _, val = tok.partition(":")
        if kind == "P0":
            i = int(val)
            if not 0 <= i < self.m:
                raise GeometryError(f"P0 exponent {i} outside [0, {self.m})")
            return i
        if kind == "P1":
            if val == "zero":
                return self.m
            e = int(val)
            if not 0 <= e < self.qm1:
                raise GeometryError(f"P1 exponent {e} outside [0, {self.qm1})")
            return self.m + 1 + e
        raise GeometryError(f"bad point token {tok!r}")

    # -- mappings ---------------------------------------------------------------

    def frobenius_pt(self, ell: int, key: int) -> int:
        return self._frob_table(ell)[key]

    def _frob_table(self, ell: int) -> list[int]:
        ell %= self.n
        table = self._frob_cache.get(ell)
        if table is None:
            m, qm1 = self.m, self.qm1
            f0 = pow(self.p, ell, m) if m > 1 else 0
            f1 = pow(self.p, ell, qm1)
            table = [i * f0 % m for i in range(m)] + [m] + [m + 1 + e * f1 % qm1 for e in range(qm1)]
            self._frob_cache[ell] = table
        return table

    def shift_pt(self, j: int, key: int) -> int:
        m = self.m
        if key < m:
            return (key + j) % m
        if key == m:
            return m
        return m + 1 + (key - m - 1 + j) % self.qm1

    def map_line(self, amount: int, which: str, line: Sequence[int], check: bool = True) -> Line:
        """Image of ``line`` under Frobenius (``which="frobenius"``) or shift."""
        if which in ("frobenius", "F"):
            table = self._frob_table(amount)
            image = tuple(sorted(table[k] for k in line))
        elif which in ("shift", "S"):
            image = tuple(sorted(self.shift_pt(amount, k) for k in line))
        else:
            raise ValueError(f"unknown mapping {which!r}")
        if check and not self.is_line(image):
            raise NotALine(f"image {self.format_line(image)} of {self.format_line(line)} is not a line")
        return image

    def shift_line(self, j: int, line: Sequence[int]) -> Line:
        return tuple(sorted(self.shift_pt(j, k) for k in line))

    def frobenius_line(self, ell: int, line: Sequence[int]) -> Line:
        table = self._frob_table(ell)
        return tuple(sorted(table[k] for k in line))

    # -- incidence --------------------------------------------------------------

    def _add(self, a: int | None, b: int | None) -> int | None:
        if a is None:
            return b
        if b is None:
            return a
        z = self._zech[(a - b) % self.qm1]
        if z == ZECH_ZERO:
            return None
        return (b + z) % self.qm1

    def line_through(self, a: int, b: int) -> Line:
        if a == b:
            raise SamePoint(f"{self.token(a)} twice")
        xa, ca = self.coords(a)
        xb, cb = self.coords(b)
        pts = {b}
        for mu in range(self.p):
            if mu == 0:
                pts.add(a)
                continue
            s = self._scalar[mu]
            mxb = None if xb is None else xb + s
            pts.add(self.normalize(self._add(xa, mxb), ca + mu * cb))
        if len(pts) != self.p + 1:
            raise GeometryError("degenerate line computation")
        return tuple(sorted(pts))

    def is_line(self, pts: Sequence[int]) -> bool:
        pts = tuple(sorted(pts))
        if len(pts) != self.p + 1 or len(set(pts)) != len(pts):
            return False
        return self.line_through(pts[0], pts[1]) == pts

    def all_lines(self) -> list[Line]:
        """Every line once, sorted by key sequence."""
        out = []
        for a in range(self.num_points):
            seen = set()
            for b in range(a + 1, self.num_points):
                if b in seen:
                    continue
                line = self.line_through(a, b)
                seen.update(line)
                if line[0] == a:
                    out.append(line)
        out.sort()
        return out

    def line_count(self) -> int:
        return gaussian_binomial(self.n + 1, 2, self.p)

    # -- classification ------------------------------------------------------------

    def type1_line(self) -> Line:
        pts = {0, self.m}
        pts.update(self.m + 1 + (self.m * i) % self.qm1 for i in range(self.p - 1))
        return tuple(sorted(pts))

    def classify_line(self, line: Sequence[int]) -> int:
        if all(k < self.m for k in line):
            return 3
        if tuple(sorted(line)) == self.type1_line():
            return 1
        if sum(1 for k in line if k < self.m) == 1:
            return 2
        return TYPE_UNCLASSIFIED

    # -- text -----------------------------------------------------------------------

    def format_line(self, line: Iterable[int]) -> str:
        return " ".join(self.token(k) for k in sorted(line))

    def parse_line(self, text: str) -> Line:
        line = tuple(sorted(self.parse_token(t) for t in text.split()))
        if not self.is_line(line):
            raise NotALine(f"{text!r} is not a line of PG({self.n},{self.p})")
        return line

    def points(self) -> Iterator[int]:
        return iter(range(self.num_points))


def gaussian_binomial(n: int, k: int, q: int) -> int:
    num, den = 1, 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den
