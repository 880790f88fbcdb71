import json
import math

import pytest

from pellsquares.bounds import search_enum_bound, small_d_holds, step_d_bounds
from pellsquares.numeric import square_root
from pellsquares.search import (
    CandidateTuple,
    SearchConfig,
    brute_force_tuples,
    enumerate_block,
    enumerate_candidates,
    run_search,
    verify_candidate,
)
from pellsquares.sequences import validate_params


def oracle(b, u, norm, t, predicate="escape", strict=True):
    """Direct scan over every a, with the record predicate evaluated from step_d_bounds."""
    w = t * t - 4 * norm
    if w <= 0 or w % (u * u):
        return []
    d = w // (u * u)
    if d < 2 or d > search_enum_bound(b, u).cap or math.isqrt(d) ** 2 == d:
        return []
    out = []
    total = d * b**4
    for a in range(1, math.isqrt(total) + 1):
        n2 = total - a * a
        n = math.isqrt(n2)
        if n == 0 or n * n != n2:
            continue
        inside = small_d_holds(b, d, u, strict) and all(step_d_bounds(b=b, d=d, u=u, n_alpha=-n2, strict=strict))
        if inside == (predicate == "window"):
            out.append((a, b, d, t, u, norm, n))
    return out


def as_rows(tuples):
    return [(x.a, x.b, x.d, x.t, x.u, x.sign, x.n) for x in tuples]


def restricted(b, u, norm, t, **kw):
    return list(enumerate_candidates(b, SearchConfig(verify=False, only_u=u, only_norm=norm, only_t=t, **kw)))


def test_micro_examples():
    six = restricted(5, 1, -1, 1)
    assert [x.a for x in six] == [10, 25, 38, 41, 50, 55]
    assert all(x.d == 5 for x in six)
    five = restricted(5, 1, -1, 2)
    assert [x.a for x in five] == [10, 34, 50, 62, 70]
    assert as_rows(six) == oracle(5, 1, -1, 1)
    assert as_rows(five) == oracle(5, 1, -1, 2)


def test_no_tuples_for_impossible_unit():
    assert restricted(5, 1, 1, 1) == []


@pytest.mark.parametrize("predicate", ["escape", "window"])
def test_completeness_u1(predicate):
    cfg = SearchConfig(predicate=predicate, verify=False, only_u=1)
    got = []
    for norm in (-1, 1):
        for t in range(1, 201):
            got += as_rows(enumerate_block(5, (1, norm, t, t), cfg))
    expect = [row for norm in (-1, 1) for t in range(1, 201) for row in oracle(5, 1, norm, t, predicate)]
    assert got == expect
    assert len(got) > 100 or predicate == "window"


@pytest.mark.parametrize("u, norm, t", [(2, -1, 8), (3, 1, 11), (5, -1, 41), (1, 1, 77)])
def test_brute_force_helper_agrees(u, norm, t):
    assert as_rows(restricted(5, u, norm, t)) == as_rows(brute_force_tuples(5, u, norm, t))


def test_emitted_invariants():
    for tup in enumerate_candidates(5, SearchConfig(verify=False, only_u=3)):
        assert tup.t**2 - tup.d * tup.u**2 == 4 * tup.sign
        assert square_root(tup.d) is None and tup.d >= 2
        assert tup.d * tup.b**4 - tup.a**2 == tup.n**2 and tup.n >= 1
        assert tup.d <= search_enum_bound(5, 3).cap


def test_pruned_tuples_satisfy_all_bounds():
    # tuples the default predicate drops are exactly those meeting every bound
    for tup in enumerate_candidates(5, SearchConfig(predicate="window", verify=False, only_u=2)):
        assert small_d_holds(tup.b, tup.d, tup.u)
        assert all(step_d_bounds(tup.params()))


def test_sorted_order():
    tuples = list(enumerate_candidates(5, SearchConfig(verify=False, only_u=4)))
    assert tuples == sorted(tuples, key=CandidateTuple.sort_key)


def test_fingerprint():
    a = SearchConfig(threads=1)
    b = SearchConfig(threads=8)
    assert a.fingerprint() == b.fingerprint()
    assert a.fingerprint() != SearchConfig(strict=False).fingerprint()


def test_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(predicate="nope")
    with pytest.raises(ValueError):
        SearchConfig(only_norm=0)
    with pytest.raises(ValueError):
        SearchConfig(threads=0)


def test_determinism_across_threads(tmp_path):
    outs = []
    for threads in (1, 3):
        path = tmp_path / f"t{threads}.jsonl"
        rep = run_search(5, SearchConfig(threads=threads, only_u=3), tuples_path=path)
        outs.append((path.read_bytes(), rep.candidate_count, rep.per_u))
    assert outs[0] == outs[1]
    assert outs[0][1] == sum(outs[0][2].values())


def test_jsonl_format(tmp_path):
    path = tmp_path / "out.jsonl"
    run_search(5, SearchConfig(only_u=1, only_norm=-1, only_t=1), tuples_path=path)
    rows = [json.loads(line) for line in path.read_text().splitlines()]
    assert len(rows) == 6
    assert set(rows[0]) == {"a", "b", "d", "t", "u", "sign", "n"}
    assert all(isinstance(v, str) for v in rows[0].values())


def test_checkpoint_resume(tmp_path):
    cfg = SearchConfig(only_u=5)
    first = run_search(5, cfg, checkpoint_dir=tmp_path)
    files = sorted(tmp_path.iterdir())
    assert files
    second = run_search(5, cfg, checkpoint_dir=tmp_path)
    assert (first.candidate_count, first.violations) == (second.candidate_count, second.violations)
    assert sorted(tmp_path.iterdir()) == files


def test_csv_row():
    rep = run_search(5, SearchConfig(only_u=1, only_norm=-1, only_t=1))
    assert rep.csv_header() == "b,U_b,D_b,c_b,violations,cpu_seconds"
    assert rep.csv_row().startswith("5,64,33203125,6,1,")


def test_verify_candidate():
    assert verify_candidate(validate_params(10, 5, 5, 1, 1)) == []
    assert verify_candidate(validate_params(41, 5, 5, 1, 1)) == [(-7, 53)]
    assert verify_candidate(validate_params(50, 5, 8, 2, 1)) == [(3, 65), (-4, 65)]
    with pytest.raises(ValueError):
        verify_candidate(validate_params(42, 4, 7, 16, 6))
