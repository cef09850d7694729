import json

from lpbn.checkers import (
    PROVED,
    SUITE,
    Analysis,
    Verdict,
    check_conjecture_2k,
    check_encoding_bridge,
    check_fvs_bounds,
    check_lfp_invariants,
    check_neg_cycle_necessity,
    check_pos_cycle_unicity,
    check_regular_equals_min_stable_ts,
    check_supported_ts_cover,
    hunt_conjecture_2k,
    replay_witness,
    run_suite,
)
from lpbn.core import Limits
from lpbn.generate import GenProfile, gen_program
from lpbn.parser import parse_program

from conftest import CURATED

H, V, S, T = Verdict.HOLDS, Verdict.VIOLATED, Verdict.SKIPPED, Verdict.TOO_LARGE


def test_p1_suite(p1):
    r = {x.check: x for x in run_suite(p1)}
    assert r["encoding_bridge"].verdict is H and r["encoding_bridge"].stats["ig_equals_dg"]
    assert r["regular_equals_min_stable_ts"].verdict is H
    assert r["neg_cycle_necessity"].verdict is H
    assert r["pos_cycle_unicity"].verdict is S
    fvs = r["fvs_bounds"]
    assert fvs.verdict is H and fvs.stats["k"] == 1 and fvs.stats["margin_2k"] == 0
    assert r["conjecture_2k"].verdict is S
    assert all(x.verdict in (H, S) for x in r.values())


def test_hidden_loop_suite(hidden_loop):
    assert check_pos_cycle_unicity(hidden_loop).verdict is H
    assert check_neg_cycle_necessity(hidden_loop).verdict is S
    lfp_rep = check_lfp_invariants(hidden_loop)
    assert lfp_rep.verdict is H
    assert not lfp_rep.stats["dg_pos_cycle"] and lfp_rep.stats["dg_lfp_pos_cycle"]


def test_odd_self_loop():
    prog = parse_program("p :- not p.")
    assert check_neg_cycle_necessity(prog).verdict is S
    assert check_pos_cycle_unicity(prog).verdict is H
    assert check_regular_equals_min_stable_ts(prog).stats["n_regular"] == 1


def test_acyclic_program_meets_3k_with_equality():
    rep = check_fvs_bounds(parse_program("p.\nq :- not p.\n"))
    assert rep.stats["k"] == 0 and rep.stats["margin_3k"] == 0


def test_curated_cases_never_violate_proved_checks():
    for name, text in CURATED.items():
        for rep in run_suite(parse_program(text), PROVED):
            assert rep.verdict in (H, S), (name, rep.to_json())


def test_quasi_ig_equals_dg_is_a_stat_not_a_verdict():
    rep = check_encoding_bridge(parse_program("v :- not a.\nv :- not a, not b.\n"))
    assert rep.verdict is H and rep.stats["quasi"] and not rep.stats["ig_equals_dg"]


def test_supported_ts_cover_counterexample():
    prog = parse_program("x0 :- not x0.\nx1 :- x0, not x0.\n")
    rep = check_supported_ts_cover(prog)
    assert rep.verdict is V
    assert rep.witness["details"]["uncovered"] == [{"x0": "u", "x1": "f"}]
    assert check_supported_ts_cover(parse_program(CURATED["p1"])).verdict is H


def test_too_large_is_a_verdict():
    prog = parse_program("a :- not b.\nb :- not c.\nc :- not a.\n")
    rep = check_regular_equals_min_stable_ts(prog, Limits(max_atoms_3v=2))
    assert rep.verdict is T and rep.witness is None


def test_conjecture_skips_tight_programs(p1):
    assert check_conjecture_2k(p1).verdict is S
    assert check_conjecture_2k(parse_program("p :- q.\nq :- p.\n")).verdict is H


def test_report_json_drops_timings_on_request(p1):
    rep = check_fvs_bounds(p1)
    assert "seconds" in rep.stats
    assert "seconds" not in rep.to_json(timings=False)["stats"]
    json.dumps(rep.to_json())


def test_run_suite_by_name(p1):
    assert [r.check for r in run_suite(p1, "fvs_bounds")] == ["fvs_bounds"]
    assert len(run_suite(Analysis(p1))) == len(SUITE)


def zero_bound(k):
    return 0


def test_hunter_fires_with_weakened_bound(tmp_path):
    prof = GenProfile(5, 8, seed=7)
    rep = hunt_conjecture_2k(prof, 100, bound=zero_bound, witness_dir=tmp_path)
    assert rep.verdict is V
    files = list(tmp_path.iterdir())
    assert len(files) == 1
    w = json.loads(files[0].read_text())
    assert set(w) == {"profile", "seed", "program", "check", "verdict", "details"}
    assert w["verdict"] == "violated" and w["check"] == "conjecture_2k"
    # the witness regenerates from its profile and re-fires in isolation
    assert parse_program(w["program"]) == gen_program(GenProfile(**w["profile"]))
    again = replay_witness(files[0], bound=zero_bound)
    assert again.verdict is V and again.witness["program"] == w["program"]
    assert again.witness["details"]["n_regular"] == w["details"]["n_regular"]
    assert replay_witness(files[0]).verdict is H


def test_hunter_counts_only_non_tight_trials():
    rep = hunt_conjecture_2k(GenProfile(5, 8, seed=3), 50)
    assert rep.verdict is H and rep.stats["trials"] == 50
    tight_only = hunt_conjecture_2k(GenProfile(4, 6, bias="tight", seed=3), 5, max_attempts=30)
    assert tight_only.stats["trials"] == 0 and tight_only.stats["skipped_tight"] == 30


def test_hunter_parallel_matches_serial():
    prof = GenProfile(6, 10, seed=11)
    a = hunt_conjecture_2k(prof, 60)
    b = hunt_conjecture_2k(prof, 60, jobs=2)
    assert a.to_json(timings=False) == b.to_json(timings=False)


def test_replay_of_suite_witness():
    prog = parse_program("x0 :- not x0.\nx1 :- x0, not x0.\n")
    w = check_supported_ts_cover(prog).witness
    assert replay_witness(w).to_json(timings=False) == check_supported_ts_cover(prog).to_json(timings=False)
