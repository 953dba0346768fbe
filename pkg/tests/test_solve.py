import itertools

import pytest

from torusdom.errors import InstanceTooLargeError, InvalidInputError
from torusdom.formulas import gamma_p_m3, gamma_t_m3, gamma_tp_m4, lower_bound_regular
from torusdom.solve import (
    ORACLE_AUTO_CAP,
    SolveMethod,
    enumerate_total_dominating_sets,
    find_efficient_tds,
    solve,
    solve_oracle,
    solve_paired,
    solve_paired_dp,
    solve_profile_dp,
)
from torusdom.torus import VertexSet, make_torus
from torusdom.validate import (
    DominationKind,
    is_efficient_total,
    is_total_dominating,
    satisfies,
)

PLAIN = DominationKind.PLAIN
TOTAL = DominationKind.TOTAL
PAIRED = DominationKind.PAIRED


def _brute_minimum(n, m, kind):
    """First minimum set in lexicographic slot order, by full enumeration."""
    g = make_torus(n, m)
    order = g.dims.order
    start = step = 2 if kind is PAIRED else 1
    for k in range(start, order + 1, step):
        for combo in itertools.combinations(range(order), k):
            d = VertexSet.from_slots(g.dims, combo)
            if satisfies(g, d, kind):
                return k, list(combo)
    raise AssertionError("no dominating set at all")


@pytest.mark.parametrize(
    "n,m,kind,value",
    [
        (3, 3, PLAIN, 3),
        (3, 3, TOTAL, 3),
        (3, 3, PAIRED, 4),
        (3, 4, PLAIN, 3),
        (3, 4, TOTAL, 4),
        (3, 4, PAIRED, 4),
        (4, 4, TOTAL, 4),
        (4, 4, PAIRED, 4),
    ],
)
def test_oracle_agrees_with_full_enumeration(n, m, kind, value):
    res = solve_oracle(n, m, kind)
    size, slots = _brute_minimum(n, m, kind)
    assert res.value == size == value
    got = [g for g in range(n * m) if res.certificate.mask >> g & 1]
    assert got == slots  # lexicographically least optimum


def test_oracle_certificate_is_valid():
    res = solve_oracle(4, 5, PAIRED)
    g = make_torus(4, 5)
    assert len(res.certificate) == res.value
    assert satisfies(g, res.certificate, PAIRED)
    assert res.method is SolveMethod.ORACLE
    assert res.elapsed >= 0.0


def test_oracle_respects_size_cap():
    with pytest.raises(InstanceTooLargeError):
        solve_oracle(5, 5, TOTAL)


def test_oracle_rejects_efficient_kind():
    with pytest.raises(InvalidInputError):
        solve_oracle(3, 3, DominationKind.EFFICIENT_TOTAL)


def test_engines_agree_on_all_small_grids():
    for n in range(3, 7):
        for m in range(3, 7):
            if n * m > ORACLE_AUTO_CAP:
                continue
            for kind in (PLAIN, TOTAL):
                a = solve_oracle(n, m, kind)
                b = solve_profile_dp(n, m, kind)
                assert a.value == b.value, (n, m, kind)
                assert a.value >= (n * m + 4) // 5
            a = solve_oracle(n, m, PAIRED)
            b = solve_paired_dp(n, m)
            assert a.value == b.value, (n, m)
            assert a.value % 2 == 0
            assert a.value >= lower_bound_regular(n, m)


def test_profile_dp_matches_closed_forms():
    assert solve_profile_dp(13, 3, TOTAL).value == gamma_t_m3(13) == 11
    assert solve_profile_dp(6, 4, TOTAL).value == gamma_tp_m4(6) == 8
    assert solve_profile_dp(10, 4, TOTAL).value == gamma_tp_m4(10) == 12


def test_profile_dp_certificates_validate():
    for n, m, kind in [(9, 3, TOTAL), (7, 4, TOTAL), (8, 5, PLAIN)]:
        res = solve_profile_dp(n, m, kind)
        g = make_torus(n, m)
        assert satisfies(g, res.certificate, kind)
        assert len(res.certificate) == res.value
        assert res.method is SolveMethod.PROFILE_DP


def test_profile_dp_orientation_is_transparent():
    a = solve_profile_dp(10, 3, TOTAL)
    b = solve_profile_dp(3, 10, TOTAL)
    assert a.value == b.value == 8
    assert a.certificate.dims.n == 10 and a.certificate.dims.m == 3
    assert b.certificate.dims.n == 3 and b.certificate.dims.m == 10


def test_profile_dp_kind_and_width_checks():
    with pytest.raises(InvalidInputError):
        solve_profile_dp(6, 4, PAIRED)
    with pytest.raises(InstanceTooLargeError):
        solve_profile_dp(9, 9, TOTAL)


def test_paired_dp_matches_closed_forms():
    assert solve_paired_dp(5, 3).value == gamma_p_m3(5) == 4
    assert solve_paired_dp(13, 3).value == gamma_p_m3(13) == 12
    assert solve_paired_dp(6, 4).value == gamma_tp_m4(6) == 8
    res = solve_paired_dp(9, 4)
    assert res.value == 10
    assert satisfies(make_torus(9, 4), res.certificate, PAIRED)


def test_paired_dp_width_cap():
    with pytest.raises(InstanceTooLargeError):
        solve_paired_dp(7, 7)


def test_paired_front_door_values():
    # Sides of five: no closed form, certified by search or sandwich.
    assert solve_paired(5, 5).value == 8
    assert solve_paired(6, 5).value == 8
    assert solve_paired(6, 6).value == 10


def test_paired_search_certificate():
    res = solve_paired(7, 5)
    assert res.value == 10
    assert res.method is SolveMethod.PAIRED_SEARCH
    assert satisfies(make_torus(7, 5), res.certificate, PAIRED)


def test_solve_dispatch_methods():
    assert solve(4, 4, TOTAL).method is SolveMethod.ORACLE
    assert solve(6, 4, TOTAL).method is SolveMethod.PROFILE_DP
    r88 = solve(8, 8, TOTAL)
    assert (r88.value, r88.method) == (16, SolveMethod.SANDWICH)
    p88 = solve(8, 8, PAIRED)
    assert (p88.value, p88.method) == (16, SolveMethod.SANDWICH)
    p74 = solve(7, 4, PAIRED)
    assert (p74.value, p74.method) == (8, SolveMethod.SANDWICH)
    p123 = solve(12, 3, PAIRED)
    assert (p123.value, p123.method) == (10, SolveMethod.SANDWICH)
    p55 = solve(5, 5, PAIRED)
    assert (p55.value, p55.method) == (8, SolveMethod.PAIRED_SEARCH)


def test_solve_forced_methods():
    assert solve(4, 4, TOTAL, method="oracle").method is SolveMethod.ORACLE
    assert solve(4, 4, TOTAL, method="dp").method is SolveMethod.PROFILE_DP
    assert solve(4, 4, PAIRED, method="dp").method is SolveMethod.PROFILE_DP
    with pytest.raises(InvalidInputError):
        solve(4, 4, TOTAL, method="bogus")
    with pytest.raises(InvalidInputError):
        solve(4, 4, DominationKind.EFFICIENT_TOTAL)


def test_solve_plain_on_five_by_five():
    res = solve(5, 5, PLAIN)
    assert res.value == 5
    assert satisfies(make_torus(5, 5), res.certificate, PLAIN)


def test_solutions_are_deterministic():
    a = solve_profile_dp(10, 4, TOTAL)
    b = solve_profile_dp(10, 4, TOTAL)
    assert a.certificate == b.certificate
    c = solve_paired_dp(9, 3)
    d = solve_paired_dp(9, 3)
    assert c.certificate == d.certificate
    e = solve_oracle(4, 4, PAIRED)
    f = solve_oracle(4, 4, PAIRED)
    assert e.certificate == f.certificate


def test_efficient_sets_exist_exactly_when_expected():
    for n, m in [(4, 4), (4, 8), (8, 8), (12, 4)]:
        found = find_efficient_tds(n, m)
        assert found is not None
        assert len(found) == n * m // 4
        assert is_efficient_total(make_torus(n, m), found)
    for n, m in [(5, 4), (3, 3), (6, 6), (7, 4), (5, 5)]:
        assert find_efficient_tds(n, m) is None


def test_efficient_march_width_cap():
    with pytest.raises(InstanceTooLargeError):
        find_efficient_tds(12, 9)


def _brute_total_sets(n, m, max_size):
    g = make_torus(n, m)
    out = set()
    for k in range(1, max_size + 1):
        for combo in itertools.combinations(range(g.dims.order), k):
            d = VertexSet.from_slots(g.dims, combo)
            if is_total_dominating(g, d):
                out.add(d.mask)
    return out


@pytest.mark.parametrize("n,m,cap", [(3, 3, 5), (3, 4, 5)])
def test_enumeration_is_complete_and_duplicate_free(n, m, cap):
    got = list(enumerate_total_dominating_sets(n, m, cap))
    masks = [d.mask for d in got]
    assert len(masks) == len(set(masks))
    assert set(masks) == _brute_total_sets(n, m, cap)
    g = make_torus(n, m)
    for d in got:
        assert is_total_dominating(g, d)
        assert len(d) <= cap


def test_enumeration_below_minimum_is_empty():
    assert list(enumerate_total_dominating_sets(3, 3, 2)) == []


def test_block_excision_property_on_eight_rows():
    # Every total dominating set of size <= 9 meets each band of four
    # consecutive rows in at least 4 vertices; bands whose vertices are
    # all dominated exactly once can be excised without losing totality.
    from torusdom.torus import BlockRange, excise_block, map_set
    from torusdom.validate import domination_multiplicity

    g = make_torus(8, 4)
    dims = g.dims
    band = {
        i: [dims.slot(dims.wrap(i + di, j)) for di in range(4) for j in range(1, 5)]
        for i in range(1, 9)
    }
    excisions = {i: excise_block(g, BlockRange(i, 4)) for i in range(1, 9)}
    sets = applicable = 0
    for d in enumerate_total_dominating_sets(8, 4, 9):
        sets += 1
        counts = domination_multiplicity(g, d)
        for i in range(1, 9):
            inside = sum(1 for s in band[i] if d.mask >> s & 1)
            assert inside >= 4, (i, d.pairs())
            if all(counts[s] == 1 for s in band[i]):
                applicable += 1
                small, ring_map = excisions[i]
                mask = 0
                for s in band[i]:
                    mask |= 1 << s
                moved = map_set(VertexSet(dims, d.mask & ~mask), small, ring_map)
                assert is_total_dominating(small, moved), (i, d.pairs())
    assert sets == 656
    assert applicable == 896
