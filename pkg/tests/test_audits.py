import pytest

from jchroma.audits import msb_chain_failures, run_audit
from jchroma.constructions import msb_diff
from jchroma.errors import InvalidInputError


def test_chain_reduction_matches_literal_scan():
    literal = [(x, y, z) for x in range(1, 40) for y in range(x + 1, 40) for z in range(y + 1, 40)
               if msb_diff(x, y) == msb_diff(y, z)]
    assert literal == [] and msb_chain_failures(39) == []


def test_chain_reduction_detects_a_planted_violation(monkeypatch):
    import jchroma.audits as audits

    monkeypatch.setattr(audits, "msb_diff", lambda a, b: 1)
    fails = audits.msb_chain_failures(4)
    assert {"x": 1, "y": 2, "z": 3, "msb": 1} in fails


@pytest.mark.parametrize("check", ["lemma1", "bipartite-k2", "bipartite-k3"])
def test_audits_are_clean_and_deterministic(check):
    a = run_audit(check, 7, samples=60, seed=3)
    b = run_audit(check, 7, samples=60, seed=3)
    assert a.ok and a.to_dict() == b.to_dict()
    assert a.to_dict() == {"check": check, "n": 7, "samples": 60, "failures": []}


def test_thread_split_does_not_change_results():
    serial = run_audit("bipartite-k3", 6, samples=40, seed=1, threads=1)
    split = run_audit("bipartite-k3", 6, samples=40, seed=1, threads=2)
    assert serial.to_dict() == split.to_dict()


def test_unknown_check():
    with pytest.raises(InvalidInputError):
        run_audit("nope", 5)
