import numpy as np
import pytest
from hypothesis import given, strategies as st

from grassauto.field import field_from_spec
from grassauto.pgeom import PG, NotALine, SamePoint, gaussian_binomial

from oracles import alpha_powers, gaussian_binomial_brute, rank_mod_p


def _vectors(pg):
    """Point key -> homogeneous coordinate vector in F_p^(n+1), built from the oracle field."""
    ctx = pg.ctx
    ref = alpha_powers(pg.p, pg.n, list(ctx.params.poly))
    out = {}
    for k in pg.points():
        x, c = pg.coords(k)
        head = (0,) * pg.n if x is None else ref[x]
        out[k] = tuple(head) + (c,)
    return out


@pytest.mark.parametrize("name", ["f2_3", "f2_7", "f3_5", "f2_13"])
def test_point_count(name):
    ctx = field_from_spec(name)
    pg = PG(ctx)
    p, n = ctx.p, ctx.n
    assert pg.num_points == (p ** (n + 1) - 1) // (p - 1)
    assert pg.num_points == pg.m + 1 + ctx.q_minus_1


@pytest.mark.parametrize("name", ["f2_3", "f2_5", "f3_5"])
def test_all_lines_count_and_incidence(name):
    pg = PG(field_from_spec(name))
    lines = pg.all_lines()
    assert len(lines) == len(set(lines)) == pg.line_count()
    assert len(lines) == gaussian_binomial_brute(pg.n + 1, 2, pg.p) == gaussian_binomial(pg.n + 1, 2, pg.p)
    vec = _vectors(pg)
    assert len(set(vec.values())) == pg.num_points
    for line in lines:
        assert len(line) == pg.p + 1
        assert rank_mod_p([vec[k] for k in line], pg.p) == 2
    # every pair of points lies on exactly one line
    pair_count = sum(len(x) * (len(x) - 1) // 2 for x in lines)
    assert pair_count == pg.num_points * (pg.num_points - 1) // 2


def test_line_types_53(pg53, lines53):
    types = [pg53.classify_line(x) for x in lines53]
    assert types.count(1) == 1
    assert types.count(3) == gaussian_binomial(5, 2, 3) == 1210
    assert types.count(2) == 11011 - 1211
    assert pg53.classify_line(pg53.type1_line()) == 1


def test_point_map_examples(pg53):
    assert pg53.frobenius_pt(1, pg53.p0(100)) == pg53.p0(58)
    assert pg53.shift_pt(218, pg53.p0(5)) == pg53.p0(102)
    assert pg53.shift_pt(218, pg53.p1(190)) == pg53.p1(166)
    for ell in range(5):
        assert pg53.frobenius_pt(ell, pg53.p1(None)) == pg53.p1(None)
    assert pg53.shift_pt(77, pg53.p1(None)) == pg53.p1(None)
    assert pg53.token(pg53.p1(None)) == "P1:zero"
    assert pg53.parse_token("P0:5") == pg53.p0(5)


@pytest.mark.parametrize("name", ["f2_3", "f3_5", "f2_7"])
def test_point_maps_are_bijections(name):
    pg = PG(field_from_spec(name))
    pts = list(pg.points())
    for ell in range(pg.n):
        assert sorted(pg.frobenius_pt(ell, k) for k in pts) == pts
    for j in range(0, pg.ctx.q_minus_1, 7):
        assert sorted(pg.shift_pt(j, k) for k in pts) == pts


def _encode(rows, base):
    rows = np.sort(rows, axis=1)
    out = np.zeros(len(rows), dtype=np.int64)
    for c in range(rows.shape[1]):
        out = out * base + rows[:, c]
    return out


@pytest.mark.parametrize("name", ["f2_3", "f3_5"])
def test_line_images_are_lines_exhaustive(name):
    pg = PG(field_from_spec(name))
    lines = np.array(pg.all_lines(), dtype=np.int64)
    known = np.sort(_encode(lines, pg.num_points))
    pts = list(pg.points())
    maps = [np.array([pg.frobenius_pt(ell, k) for k in pts]) for ell in range(pg.n)]
    maps += [np.array([pg.shift_pt(j, k) for k in pts]) for j in range(pg.ctx.q_minus_1)]
    for table in maps:
        img = _encode(table[lines], pg.num_points)
        assert np.isin(img, known).all()
        assert len(np.unique(img)) == len(lines)


def test_frobenius_preserves_types(pg53, lines53):
    for line in lines53[::7]:
        t = pg53.classify_line(line)
        for ell in range(1, 5):
            assert pg53.classify_line(pg53.frobenius_line(ell, line)) == t


@given(st.integers(0, 363), st.integers(0, 363))
def test_line_through(a, b):
    pg = PG(field_from_spec("f3_5"))
    if a == b:
        with pytest.raises(SamePoint):
            pg.line_through(a, b)
        return
    line = pg.line_through(a, b)
    assert a in line and b in line and pg.is_line(line)
    assert pg.line_through(line[-1], line[0]) == line


def test_map_line_identity_and_errors(pg53, lines53):
    line = lines53[500]
    assert pg53.map_line(0, "frobenius", line) == line
    assert pg53.map_line(0, "shift", line) == line
    with pytest.raises(NotALine):
        pg53.parse_line("P0:1 P0:2 P0:3 P0:4")
    with pytest.raises(NotALine):
        pg53.map_line(1, "shift", (0, 1, 2, 3))
