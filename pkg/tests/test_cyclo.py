import pytest
from hypothesis import given, strategies as st

from grassauto import cyclo
from grassauto.field import field_from_spec

from oracles import alpha_powers, vec_add

CASES = [("f2_3", 2, 3), ("f2_7", 2, 7), ("f3_5", 3, 5), ("f2_13", 2, 13)]


@pytest.mark.parametrize("name,p,n", CASES)
def test_size_n_coset_count(name, p, n):
    table = cyclo.build_coset_table(field_from_spec(name))
    assert table.size_n_count == (p**n - p) // n
    hist = table.size_histogram()
    # n prime: every coset has size 1 or n; size 1 means e*(p-1) = 0 mod q-1
    assert set(hist) <= {1, n}
    assert hist[1] == p - 1


@pytest.mark.parametrize("name", ["f2_7", "f3_5"])
def test_cosets_partition_and_reps(name):
    ctx = field_from_spec(name)
    table = cyclo.build_coset_table(ctx)
    seen = sorted(e for c in table.cosets for e in c)
    assert seen == list(range(ctx.q_minus_1))
    for c in table.cosets:
        assert set(c) == {c[0] * ctx.p**k % ctx.q_minus_1 for k in range(ctx.n)}
        assert all(table.rep_of[e] == min(c) for e in c)


@given(st.integers(0, 8190))
def test_coset_rep_is_min(s):
    ctx = field_from_spec("f2_13")
    c = cyclo.coset(ctx, s)
    assert cyclo.coset_rep(ctx, s) == min(c)
    assert s in c


def _zech_oracle(ctx):
    ref = alpha_powers(ctx.p, ctx.n, list(ctx.params.poly))
    log = {v: e for e, v in enumerate(ref)}
    return lambda d: log[vec_add(ref[0], ref[d], ctx.p)]


@pytest.mark.parametrize("name,groups", [("f2_7", 3), ("f2_13", 105)])
def test_group_table(name, groups):
    ctx = field_from_spec(name)
    table = cyclo.build_coset_table(ctx)
    gt = cyclo.build_group_table(ctx, table)
    assert gt.group_count == groups
    assert 6 * ctx.n * groups == 2**ctx.n - 2
    zech = _zech_oracle(ctx)
    q1 = ctx.q_minus_1
    covered = set()
    for g in gt.groups:
        assert len(g) == 6 and len(set(g)) == 6
        for d in g:
            z = zech(d)
            expect = {table.rep_of[x % q1] for x in (d, -d, z, -z, z - d, d - z)}
            assert expect == set(g)
        covered |= set(g)
    assert covered == {c[0] for c in table.cosets if len(c) == ctx.n}
    for e in range(1, q1):
        assert gt.groups[gt.group_index[e]].count(table.rep_of[e]) == 1
    assert gt.group_index[0] == -1
    # groups numbered by ascending smallest member
    assert [min(g) for g in gt.groups] == sorted(min(g) for g in gt.groups)


@pytest.mark.parametrize("name", ["f2_5", "f3_5", "f2_3"])
def test_grouping_rejected_off_precondition(name):
    ctx = field_from_spec(name)
    with pytest.raises(cyclo.GroupingInconsistent):
        cyclo.build_group_table(ctx, cyclo.build_coset_table(ctx))


def test_coset_report_format(f2_7):
    table = cyclo.build_coset_table(f2_7)
    text = cyclo.coset_report(table, cyclo.build_group_table(f2_7, table), listing=True)
    assert "groups: 3" in text
    assert "1: 1 2 4 8 16 32 64" in text.splitlines()
    short = cyclo.coset_report(table)
    assert "1: 1 2" not in short
