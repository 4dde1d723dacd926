import json
import random

import pytest

from kripkelewis import (
    Atom,
    Bel,
    Box,
    Cond,
    EmptyEventError,
    Model,
    Not,
    Or,
    frame_to_json,
    load_frame,
    load_model,
    model_to_json,
    parse,
    revised_support,
    truth,
    truth_set,
    validate_frame,
)

import helpers

P, Q = Atom("p"), Atom("q")


def _raw_fx2():
    return {
        "states": ["s0", "s1"],
        "belief": {"s0": ["s1"], "s1": ["s1"]},
        "selection": [
            {"state": "s0", "event": ["s0"], "selected": ["s0"]},
            {"state": "s0", "event": ["s1"], "selected": ["s1"]},
            {"state": "s0", "event": ["s0", "s1"], "selected": ["s0", "s1"]},
            {"state": "s1", "event": ["s0"], "selected": ["s1"]},
            {"state": "s1", "event": ["s1"], "selected": ["s1"]},
            {"state": "s1", "event": ["s0", "s1"], "selected": ["s0", "s1"]},
        ],
    }


def test_validate_smallest_frame():
    frame, issues = validate_frame(
        {
            "states": ["s0"],
            "belief": {"s0": ["s0"]},
            "selection": [{"state": "s0", "event": ["s0"], "selected": ["s0"]}],
        }
    )
    assert issues == []
    assert frame == helpers.m0_frame()


def test_validate_reports_non_serial():
    raw = _raw_fx2()
    raw["belief"] = {"s0": [], "s1": ["s1"]}
    frame, issues = validate_frame(raw)
    assert frame is None
    assert [i.kind for i in issues] == ["non_serial"]
    assert "s0" in issues[0].detail


def test_validate_reports_missing_selection_entry():
    raw = _raw_fx2()
    raw["selection"] = [e for e in raw["selection"] if not (e["state"] == "s1" and e["event"] == ["s0"])]
    frame, issues = validate_frame(raw)
    assert frame is None
    assert [i.kind for i in issues] == ["missing_selection_entry"]
    assert "s1" in issues[0].detail and "s0" in issues[0].detail


def test_validate_reports_unknown_state():
    raw = _raw_fx2()
    raw["belief"]["s0"] = ["s9"]
    frame, issues = validate_frame(raw)
    assert frame is None
    assert any(i.kind == "unknown_state" for i in issues)


def test_validate_collects_multiple_issues():
    raw = _raw_fx2()
    raw["belief"] = {"s0": []}
    raw["selection"] = raw["selection"][:4]
    frame, issues = validate_frame(raw)
    assert frame is None
    kinds = {i.kind for i in issues}
    assert "non_serial" in kinds and "missing_selection_entry" in kinds
    assert len(issues) >= 3  # s0 and s1 non-serial plus missing entries


def test_validate_rejects_empty_event_and_duplicates():
    raw = _raw_fx2()
    raw["selection"].append({"state": "s0", "event": [], "selected": []})
    frame, issues = validate_frame(raw)
    assert frame is None
    assert [i.kind for i in issues] == ["empty_event"]

    raw = _raw_fx2()
    raw["selection"].append({"state": "s0", "event": ["s0"], "selected": ["s1"]})
    frame, issues = validate_frame(raw)
    assert frame is None
    assert [i.kind for i in issues] == ["duplicate_selection_entry"]


def test_loaded_fixture_matches_handbuilt(fx2_path):
    with open(fx2_path) as handle:
        model = load_model(json.load(handle))
    assert model.frame == helpers.fx2_frame()
    assert model.valuation == {"p": 0b01}


def test_truth_vacuous_conditional_on_m0(m0):
    model = Model(m0, {})  # p has the empty truth set
    assert truth(model, 0, parse("p > q")) is True


def test_truth_believed_conditional_on_m0(m0):
    model = Model(m0, {"p": 0b1, "q": 0b1})
    assert truth(model, 0, parse("B(p > q)")) is True


def test_truth_set_goldens(m0):
    rng = random.Random(140)
    for _ in range(50):
        model = helpers.random_model(rng)
        assert truth_set(model, parse("p | ~p")) == model.frame.full
    model = Model(m0, {"p": 0b1})
    assert truth_set(model, parse("[] p")) == 0b1


def test_truth_fx2_refutes_believed_identity_conditional(fx2):
    model = Model(fx2, {"p": 0b01})
    f = parse("B(p > p)")
    assert truth(model, 0, f) is False
    assert truth_set(model, f) == 0


def test_truth_rejects_illformed(m0):
    model = Model(m0, {})
    with pytest.raises(ValueError):
        truth(model, 0, Cond(Bel(P), Q))
    with pytest.raises(ValueError):
        truth_set(model, Bel(Box(P)))


def test_truth_rejects_bad_state(m0):
    with pytest.raises(IndexError):
        truth(Model(m0, {}), 1, P)


def test_truth_matches_truth_set_on_random_pairs():
    rng = random.Random(107)
    for _ in range(1000):
        model = helpers.random_model(rng)
        f = helpers.gen_wellformed(rng, depth=rng.randrange(1, 4))
        ts = truth_set(model, f)
        for s in range(model.frame.n):
            assert truth(model, s, f) == bool(ts >> s & 1)


def test_truth_set_boolean_structure():
    rng = random.Random(108)
    for _ in range(300):
        model = helpers.random_model(rng)
        full = model.frame.full
        f = helpers.gen_wellformed(rng, depth=2)
        g = helpers.gen_wellformed(rng, depth=2)
        assert truth_set(model, Not(f)) == full ^ truth_set(model, f)
        assert truth_set(model, Or(f, g)) == truth_set(model, f) | truth_set(model, g)


def test_conditional_vacuity_for_impossible_antecedents():
    rng = random.Random(109)
    for _ in range(200):
        model = helpers.random_model(rng)
        antecedent = rng.choice([Atom("z"), Atom("p") & ~Atom("p")])
        assert truth_set(model, antecedent) == 0
        consequent = helpers.gen_phi0(rng, depth=2)
        cond = Cond(antecedent, consequent) if rng.random() < 0.5 else Cond(
            antecedent, Not(consequent)
        )
        assert truth_set(model, cond) == model.frame.full


def test_box_truth_is_state_independent():
    rng = random.Random(110)
    for _ in range(200):
        model = helpers.random_model(rng)
        f = Box(helpers.gen_phi0(rng, depth=2))
        values = {truth(model, s, f) for s in range(model.frame.n)}
        assert len(values) == 1


def test_revised_support_goldens(m0, fx2):
    assert revised_support(m0, 0, 0b1) == 0b1
    assert revised_support(fx2, 0, 0b01) == 0b10


def test_revised_support_empty_event(m0):
    with pytest.raises(EmptyEventError):
        revised_support(m0, 0, 0)


def test_revised_support_singleton_belief():
    rng = random.Random(111)
    for _ in range(100):
        frame = helpers.random_frame(rng)
        s = rng.randrange(frame.n)
        singles = [x for x in range(frame.n) if frame.belief[s] == 1 << x]
        if singles:
            e = rng.randrange(1, frame.full + 1)
            assert revised_support(frame, s, e) == frame.selection[singles[0]][e]


def test_revised_support_bounded_by_full_selection_column():
    rng = random.Random(112)
    for _ in range(200):
        frame = helpers.random_frame(rng)
        s = rng.randrange(frame.n)
        e = rng.randrange(1, frame.full + 1)
        column = 0
        for x in range(frame.n):
            column |= frame.selection[x][e]
        assert revised_support(frame, s, e) & ~column == 0


def test_frame_json_round_trip():
    rng = random.Random(113)
    for _ in range(50):
        frame = helpers.random_frame(rng)
        assert load_frame(frame_to_json(frame)) == frame


def test_model_json_round_trip():
    rng = random.Random(114)
    for _ in range(50):
        model = helpers.random_model(rng)
        loaded = load_model(model_to_json(model))
        assert loaded.frame == model.frame
        assert loaded.valuation == model.valuation
