import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conflictdyn.model import PARAM_NAMES, ModelParams, State
from conflictdyn.scenarios import (
    PRESETS,
    GameSpec,
    Scenario,
    ScenarioError,
    SimulateSpec,
    get_preset,
    parse_scenario,
    scenario_to_dict,
    serialize_scenario,
)

GOLDEN = {
    "salamis_straits": dict(P_x=0.25, P_y=0.8, TN_x=0.7, TN_y=0.35, G=0.4, D_x=0.8, D_y=0.2, E_x=0.3, E_y=0.7),
    "open_saronic": dict(P_x=0.25, P_y=0.8, TN_x=0.7, TN_y=0.35, G=0.64, D_x=0.8, D_y=0.2, E_x=0.3, E_y=0.7),
    "isthmus": dict(P_x=0.25, P_y=0.8, TN_x=0.7, TN_y=0.35, G=0.7, D_x=0.8, D_y=0.2, E_x=0.3, E_y=0.7),
    "damage_even": dict(P_x=0.25, P_y=0.8, TN_x=0.7, TN_y=0.35, G=0.4, D_x=0.5, D_y=0.5, E_x=0.3, E_y=0.7),
    "damage_persian_edge": dict(P_x=0.25, P_y=0.8, TN_x=0.7, TN_y=0.35, G=0.4, D_x=0.3, D_y=0.7, E_x=0.3, E_y=0.7),
    "damage_greek_edge": dict(P_x=0.25, P_y=0.8, TN_x=0.7, TN_y=0.35, G=0.4, D_x=0.8, D_y=0.2, E_x=0.3, E_y=0.7),
}


def test_presets_golden():
    assert set(PRESETS) == set(GOLDEN)
    for name, values in GOLDEN.items():
        assert PRESETS[name].params.as_dict() == values


def test_preset_round_trip(preset):
    assert parse_scenario(serialize_scenario(preset)) == preset


def test_unknown_preset():
    with pytest.raises(ScenarioError, match="unknown preset"):
        get_preset("thermopylae")


def _doc(**params):
    values = dict(GOLDEN["salamis_straits"], **params)
    return {"name": "open_saronic", "params": values}


def test_parse_matches_preset():
    s = parse_scenario(json.dumps(_doc(G=0.64)))
    assert s == PRESETS["open_saronic"]
    assert s.simulate == SimulateSpec(State(0.5, 0.5), 24, False)
    assert s.game is None


def test_missing_param_named():
    doc = _doc()
    del doc["params"]["G"]
    with pytest.raises(ScenarioError, match=r"params\.G"):
        parse_scenario(json.dumps(doc))


@pytest.mark.parametrize(
    "mutate, match",
    [
        (lambda d: d.update(extra=1), "unknown key 'extra'"),
        (lambda d: d["params"].update(Gx=0.1), "unknown key 'Gx'"),
        (lambda d: d.update(simulate={"steps": 5, "stepz": 1}), "simulate"),
        (lambda d: d.update(simulate={"steps": -1}), "simulate.steps"),
        (lambda d: d.update(simulate={"initial": [0.1]}), "simulate.initial"),
        (lambda d: d.update(simulate={"clamp": 1}), "simulate.clamp"),
        (lambda d: d["params"].update(G="0.4"), r"params\.G"),
        (lambda d: d["params"].update(G=True), r"params\.G"),
        (lambda d: d.update(name=""), "name"),
        (lambda d: d.update(game={"variant": "chicken"}), "game.variant"),
    ],
)
def test_rejections(mutate, match):
    doc = _doc()
    mutate(doc)
    with pytest.raises(ScenarioError, match=match):
        parse_scenario(json.dumps(doc))


def test_malformed_json_has_line():
    with pytest.raises(ScenarioError, match="line 2"):
        parse_scenario('{"name": "a",\n "params": {,}}')


@pytest.mark.parametrize("token", ["NaN", "Infinity", "-Infinity"])
def test_nonfinite_rejected(token):
    text = json.dumps(_doc()).replace('"G": 0.4', f'"G": {token}')
    with pytest.raises(ScenarioError, match="non-finite"):
        parse_scenario(text)


def test_overflowing_number():
    text = json.dumps(_doc()).replace('"G": 0.4', '"G": 1e999')
    with pytest.raises(ScenarioError, match=r"params\.G"):
        parse_scenario(text)


def test_game_block():
    doc = _doc()
    doc["game"] = {"variant": "symmetric", "benefit": 1, "cost": 2}
    s = parse_scenario(json.dumps(doc))
    assert s.game == GameSpec("symmetric", 1.0, 2.0)
    assert scenario_to_dict(s)["game"] == {"variant": "symmetric", "benefit": 1.0, "cost": 2.0}


def test_default_game():
    assert PRESETS["salamis_straits"].game_or_default == GameSpec("first-injurer", 2.0, 1.0)


finite = st.floats(allow_nan=False, allow_infinity=False, width=64)
scenarios = st.builds(
    Scenario,
    name=st.text(min_size=1, max_size=20),
    params=st.builds(ModelParams, **{k: finite for k in PARAM_NAMES}),
    simulate=st.builds(SimulateSpec, st.builds(State, finite, finite), st.integers(0, 10**6), st.booleans()),
    game=st.none() | st.builds(GameSpec, st.sampled_from(["symmetric", "first-injurer"]), finite, finite),
)


@settings(max_examples=200, deadline=None)
@given(scenarios)
def test_random_round_trip(s):
    assert parse_scenario(serialize_scenario(s)) == s
