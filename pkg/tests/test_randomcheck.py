"""The seeded battery itself: determinism, coverage, fault injection."""

import random

import pytest

from meetjoin.posets import JOIN, MEET, is_closed
from meetjoin.randomcheck import (
    CHECK_NAMES,
    VerifyReport,
    check_attainment,
    random_instance,
    run_verify,
)


def test_instances_are_deterministic():
    a = [random_instance(random.Random(42)) for _ in range(10)]
    b = [random_instance(random.Random(42)) for _ in range(10)]
    assert [i.label for i in a] == [i.label for i in b]
    assert [i.mode for i in a] == [i.mode for i in b]
    assert [i.subset.members for i in a] == [i.subset.members for i in b]


def test_instances_are_valid():
    rng = random.Random(9)
    modes = set()
    backends = set()
    for _ in range(40):
        inst = random_instance(rng)
        assert 1 <= inst.subset.n <= 8
        assert inst.family.n == inst.subset.n
        modes.add(inst.mode)
        backends.add(type(inst.subset.backend).__name__)
        for x in inst.subset.members:
            assert x in inst.universe
    assert modes == {MEET, JOIN}
    assert backends == {"DivisorLattice", "FinitePoset"}


def test_force_closed_instances_are_closed():
    rng = random.Random(31)
    for _ in range(25):
        inst = random_instance(rng, force_closed=True)
        assert is_closed(inst.subset, inst.mode)


def test_fixed_mode_is_respected():
    rng = random.Random(5)
    for _ in range(10):
        assert random_instance(rng, mode=MEET).mode == MEET
        assert random_instance(rng, mode=JOIN).mode == JOIN


def test_run_verify_passes_and_counts():
    report = run_verify(seed=1, cases=60)
    assert report.ok
    assert report.counts["factorization"] == 60
    assert report.counts["psi_two_routes"] == 60
    assert report.counts["transpose_duality"] == 60
    assert report.counts["det_theorem"] >= 20
    assert report.counts["attainment_lower"] == 1
    assert report.counts["attainment_upper"] == 1
    for name in report.counts:
        assert name in CHECK_NAMES


def test_run_verify_is_deterministic():
    a = run_verify(seed=8, cases=25)
    b = run_verify(seed=8, cases=25)
    assert a.counts == b.counts
    assert a.failures == b.failures


def test_run_verify_rejects_bad_cases():
    with pytest.raises(ValueError):
        run_verify(seed=1, cases=0)


def test_fault_injection_is_caught():
    report = run_verify(seed=1, cases=20, fault_negate_psi=True)
    assert not report.ok
    assert any(f.check == "factorization" for f in report.failures)
    # the corruption touches only the factorization check
    others = {f.check for f in report.failures} - {"factorization"}
    assert not others


def test_attainment_constructions():
    report = VerifyReport(seed=0, cases=0)
    check_attainment(report)
    assert report.ok
    assert report.counts == {"attainment_lower": 1, "attainment_upper": 1}
