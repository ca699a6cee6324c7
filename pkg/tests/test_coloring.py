import random
from fractions import Fraction

import pytest

from ksgks.catalog import COVER_BUILDERS, builtin_cover
from ksgks.coloring import (
    DROP_CONTEXT,
    SAT,
    SHRINK_CONTEXT,
    UNSAT,
    criticality_report,
    delete_element,
    exhaustive_oracle,
    format_criticality,
    search_assignment,
    verify_exactly_one,
)
from ksgks.covers import Context, CoverStructure, parity_certificate

F = Fraction

EXPECTED_STATUS = {
    "ks18": UNSAT,
    "gks18": UNSAT,
    "ks24cell": SAT,
    "gks24cell": UNSAT,
    "ksperes24": UNSAT,
    "gkshexagon": UNSAT,
}


def bare_cover(*contexts):
    return CoverStructure(
        contexts=tuple(Context(f"c{i}", tuple(ids)) for i, ids in enumerate(contexts)),
        kind="basis",
        rayset=None,
    )


@pytest.mark.parametrize("name", sorted(COVER_BUILDERS))
def test_search_builtin_status(name):
    res = search_assignment(builtin_cover(name))
    assert res.status == EXPECTED_STATUS[name]
    if res.status == SAT:
        assert verify_exactly_one(builtin_cover(name).contexts, res.witness)
    else:
        assert res.witness is None


def test_search_single_tetrad():
    cover = bare_cover((1, 2, 3, 4))
    res = search_assignment(cover)
    assert res.status == SAT
    assert sum(res.witness.values()) == 1


@pytest.mark.parametrize("name", sorted(COVER_BUILDERS))
def test_oracle_agrees_with_search(name):
    cover = builtin_cover(name)
    if len(cover.element_ids()) > 25:
        pytest.skip("beyond oracle bound")
    assert exhaustive_oracle(cover).status == search_assignment(cover).status


def test_oracle_counts():
    # three disjoint tetrads: 4*4*4 independent choices
    res = exhaustive_oracle(builtin_cover("ks24cell"))
    assert res.status == SAT and res.solutions == 64
    assert res.nodes_visited == 1 << 12
    # a single two-element context has exactly two satisfying assignments
    res = exhaustive_oracle(bare_cover((1, 2)))
    assert res.status == SAT and res.solutions == 2
    # lowest satisfying assignment: element 1 set, element 2 clear
    assert res.witness == {1: 1, 2: 0}


def test_oracle_scans_whole_space_on_unsat():
    res = exhaustive_oracle(builtin_cover("ks18"))
    assert res.status == UNSAT and res.solutions == 0
    assert res.nodes_visited == 262144


def test_oracle_rejects_large_instance():
    big = bare_cover(tuple(range(1, 27)))
    with pytest.raises(ValueError):
        exhaustive_oracle(big)


def test_oracle_vs_search_random_covers():
    rng = random.Random(4711)
    for _ in range(60):
        n_elem = rng.randint(2, 10)
        contexts = []
        for _ in range(rng.randint(1, 5)):
            size = rng.randint(1, min(4, n_elem))
            contexts.append(tuple(sorted(rng.sample(range(1, n_elem + 1), size))))
        cover = bare_cover(*contexts)
        a = search_assignment(cover)
        b = exhaustive_oracle(cover)
        assert a.status == b.status
        if a.status == SAT:
            assert verify_exactly_one(cover.contexts, a.witness)


@pytest.mark.parametrize("name", sorted(COVER_BUILDERS))
def test_parity_implies_unsat(name):
    cover = builtin_cover(name)
    if parity_certificate(cover).valid:
        assert search_assignment(cover).status == UNSAT


def test_search_determinism():
    cover = builtin_cover("ks18")
    a = search_assignment(cover)
    b = search_assignment(cover)
    assert a.nodes_visited == b.nodes_visited
    assert a.witness == b.witness
    sat_cover = builtin_cover("ks24cell")
    w1 = search_assignment(sat_cover).witness
    w2 = search_assignment(sat_cover).witness
    assert w1 == w2


def test_parallel_matches_serial():
    for name in ("ks18", "ks24cell", "gks18"):
        cover = builtin_cover(name)
        serial = search_assignment(cover)
        parallel = search_assignment(cover, jobs=2)
        assert parallel.status == serial.status
        assert parallel.witness == serial.witness


def test_search_empty_cover_is_vacuously_sat():
    cover = CoverStructure(contexts=(), kind="basis", rayset=None)
    res = search_assignment(cover)
    assert res.status == SAT and res.witness == {}


def test_search_empty_context_is_unsat():
    res = search_assignment(bare_cover((1, 2), ()))
    assert res.status == UNSAT


def test_criticality_ks18():
    cover = builtin_cover("ks18")
    report = criticality_report(cover)
    assert report.critical
    assert sorted(report.per_element) == sorted(cover.element_ids())
    for e, outcome in report.per_element.items():
        assert outcome.collapses
        reduced = delete_element(cover, e)
        assert verify_exactly_one(reduced.contexts, outcome.witness)


def test_criticality_single_context_trivial():
    report = criticality_report(bare_cover((1, 2, 3)))
    assert report.critical
    for outcome in report.per_element.values():
        assert outcome.collapses  # no contexts remain


def test_deletion_semantics_differ():
    # one context holding a single element: dropping it leaves no
    # constraint (SAT); shrinking it leaves an empty context (UNSAT)
    cover = bare_cover((1,))
    drop = criticality_report(cover, semantics=DROP_CONTEXT)
    shrink = criticality_report(cover, semantics=SHRINK_CONTEXT)
    assert drop.per_element[1].collapses
    assert not shrink.per_element[1].collapses
    assert not shrink.critical


def test_shrink_keeps_contexts():
    cover = bare_cover((1, 2), (2, 3))
    reduced = delete_element(cover, 2, semantics=SHRINK_CONTEXT)
    assert [c.element_ids for c in reduced.contexts] == [(1,), (3,)]
    reduced = delete_element(cover, 2, semantics=DROP_CONTEXT)
    assert reduced.contexts == ()


def test_delete_element_rejects_unknown_semantics():
    with pytest.raises(ValueError):
        delete_element(bare_cover((1, 2)), 1, semantics="explode")


def test_format_criticality():
    report = criticality_report(bare_cover((1, 2)))
    text = format_criticality(report)
    lines = text.strip().splitlines()
    assert lines[0].startswith("1 SAT")
    assert lines[1].startswith("2 SAT")


def test_nodes_counted():
    res = search_assignment(builtin_cover("ks18"))
    assert res.nodes_visited > 0
    assert res.elapsed >= 0.0
