import pytest

import cardmpc


def test_encode_decode():
    assert cardmpc.encode(1, 4) == "HCHH"
    assert cardmpc.encode(0, 2) == "CH"
    for k in (2, 5, 8):
        for v in range(k):
            assert cardmpc.decode(cardmpc.encode(v, k)) == v
    with pytest.raises(ValueError):
        cardmpc.encode(5, 3)
    with pytest.raises(ValueError):
        cardmpc.decode("HH")


def test_oracles():
    assert cardmpc.oracle_equality([2, 3, 2, 0, 2], 6) == 0
    assert cardmpc.oracle_equality([7, 7, 7], 8) == 1
    assert cardmpc.oracle_set([3, 2, 3, 0, 5, 0], 6) == [0, 2, 3, 5]
    assert cardmpc.oracle_set_size([3, 2, 3, 0, 5, 0], 6) == 4


def test_run_record():
    rec = cardmpc.run("equality", [2, 3, 2, 0, 2], 6, seed=42)
    assert list(rec.keys()) == [
        "protocol", "k", "n", "inputs", "tape", "output", "transcript", "shuffles_used",
    ]
    assert rec["protocol"] == "equality"
    assert rec["output"] == 0
    assert rec["shuffles_used"] == 5
    assert len(rec["transcript"]) == 5
    assert rec["transcript"][-1]["step"] == "step4"
    assert cardmpc.run("set", [3, 2, 3, 0, 5, 0], 6, seed=1)["output"] == [0, 2, 3, 5]


def test_tape_replay():
    rec = cardmpc.run("set", [3, 2, 3, 0, 5, 0], 6, seed=9)
    again = cardmpc.run("set", [3, 2, 3, 0, 5, 0], 6, tape=rec["tape"])
    assert again == rec
    explicit = cardmpc.run("set-size", [0, 2], 3,
                           tape=[{"scramble": [2, 1, 3]}, {"scramble": [1, 2, 3]}])
    assert explicit["output"] == 2
    assert explicit["tape"] == [{"scramble": [2, 1, 3]}, {"scramble": [1, 2, 3]}]
    with pytest.raises(ValueError):
        cardmpc.run("set", [0, 1], 2, tape=[{"spin": 1}])


def test_transcript_distribution():
    dist = cardmpc.transcript_distribution("equality", [0, 0], 2)
    assert dist["universe"] == 4
    assert sum(dist["counts"].values()) == 4


def test_verify_correctness():
    rep = cardmpc.verify_correctness("equality", 2, 2)
    assert rep["runs"] == 16
    assert rep["mismatches"] == 0
    assert rep["first_mismatch"] is None


def test_check_security():
    rep = cardmpc.check_security("equality", 2, 2)
    assert rep["verdict"] == "pass"
    assert rep["counterexample"] is None
    broken = cardmpc.check_security("set", 2, 2, skip_final_shuffle=True)
    assert broken["verdict"] == "fail"
    assert broken["counterexample"]["count_a"] != broken["counterexample"]["count_b"]


def test_budget_errors():
    with pytest.raises(cardmpc.BudgetExceeded):
        cardmpc.verify_correctness("equality", 9, 9)
    assert issubclass(cardmpc.BudgetExceeded, RuntimeError)
    with pytest.raises(ValueError):
        cardmpc.run("majority", [0, 1], 2)


def test_cost_model_and_constants():
    assert cardmpc.cost_model("equality", 6, 5) == (30, 5)
    assert cardmpc.cost_model("set", 3, 2) == (9, 2)
    assert cardmpc.cost_model("baseline-ri", 5, 3) == (18, 8)
    assert cardmpc.DEFAULT_BUDGET == 10_000_000
    assert cardmpc.PROTOCOLS == ("equality", "set-size", "set")
