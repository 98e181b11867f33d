"""Scenario files (JSON) and the built-in presets.

A scenario file looks like::

    {
      "name": "salamis_straits",
      "params": {"P_x": 0.25, "P_y": 0.8, "TN_x": 0.7, "TN_y": 0.35, "G": 0.4,
                 "D_x": 0.8, "D_y": 0.2, "E_x": 0.3, "E_y": 0.7},
      "simulate": {"initial": [0.5, 0.5], "steps": 24, "clamp": false},
      "game": {"variant": "first-injurer", "benefit": 2, "cost": 1}
    }

``simulate`` and ``game`` are optional. Unknown keys are rejected.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from pathlib import Path

from .games import GAME_VARIANTS
from .model import PARAM_NAMES, ModelParams, State, ValidationError

TOP_KEYS = ("name", "params", "simulate", "game")
SIMULATE_KEYS = ("initial", "steps", "clamp")
GAME_KEYS = ("variant", "benefit", "cost")


class ScenarioError(ValueError):
    """Malformed or invalid scenario document."""


@dataclass(frozen=True)
class SimulateSpec:
    initial: State = State(0.5, 0.5)
    steps: int = 24
    clamp: bool = False


@dataclass(frozen=True)
class GameSpec:
    variant: str = "first-injurer"
    benefit: float = 2.0
    cost: float = 1.0

    def build(self):
        return GAME_VARIANTS[self.variant](self.benefit, self.cost)


DEFAULT_GAME = GameSpec()


@dataclass(frozen=True)
class Scenario:
    name: str
    params: ModelParams
    simulate: SimulateSpec = field(default_factory=SimulateSpec)
    game: GameSpec | None = None

    def __post_init__(self):
        if not self.name:
            raise ScenarioError("name must be a nonempty string")
        if self.simulate.steps < 0:
            raise ScenarioError("simulate.steps must be >= 0")

    @property
    def game_or_default(self) -> GameSpec:
        return self.game if self.game is not None else DEFAULT_GAME


SALAMIS = ModelParams(P_x=0.25, P_y=0.8, TN_x=0.7, TN_y=0.35, G=0.4, D_x=0.8, D_y=0.2, E_x=0.3, E_y=0.7)

PRESETS: dict[str, Scenario] = {
    s.name: s
    for s in (
        Scenario("salamis_straits", SALAMIS),
        Scenario("open_saronic", SALAMIS.with_(G=0.64)),
        Scenario("isthmus", SALAMIS.with_(G=0.7)),
        Scenario("damage_even", SALAMIS.with_(D_x=0.5, D_y=0.5)),
        Scenario("damage_persian_edge", SALAMIS.with_(D_x=0.3, D_y=0.7)),
        Scenario("damage_greek_edge", SALAMIS.with_(D_x=0.8, D_y=0.2)),
    )
}


def get_preset(name: str) -> Scenario:
    try:
        return PRESETS[name]
    except KeyError:
        raise ScenarioError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None


def _reject_constant(token: str):
    raise ScenarioError(f"non-finite number {token} is not allowed")


def _number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, Decimal)):
        raise ScenarioError(f"{where}: expected a number, got {json.dumps(value, default=str)}")
    try:
        out = float(value)
    except (InvalidOperation, OverflowError):
        raise ScenarioError(f"{where}: number out of range") from None
    if not math.isfinite(out):
        raise ScenarioError(f"{where}: number must be finite")
    return out


def _object(value, where: str, allowed: tuple[str, ...]) -> dict:
    if not isinstance(value, dict):
        raise ScenarioError(f"{where}: expected an object")
    unknown = [k for k in value if k not in allowed]
    if unknown:
        raise ScenarioError(f"{where}: unknown key {unknown[0]!r} (allowed: {', '.join(allowed)})")
    return value


def parse_scenario(text: str) -> Scenario:
    try:
        doc = json.loads(text, parse_float=Decimal, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    doc = _object(doc, "document", TOP_KEYS)

    name = doc.get("name")
    if not isinstance(name, str) or not name:
        raise ScenarioError("name: expected a nonempty string")

    if "params" not in doc:
        raise ScenarioError("params: missing")
    raw = _object(doc["params"], "params", PARAM_NAMES)
    for key in PARAM_NAMES:
        if key not in raw:
            raise ScenarioError(f"params.{key}: missing")
    try:
        params = ModelParams(**{k: _number(raw[k], f"params.{k}") for k in PARAM_NAMES})
    except ValidationError as exc:
        raise ScenarioError(f"params: {exc}") from None

    simulate = SimulateSpec()
    if "simulate" in doc:
        sim = _object(doc["simulate"], "simulate", SIMULATE_KEYS)
        initial = simulate.initial
        if "initial" in sim:
            pair = sim["initial"]
            if not isinstance(pair, list) or len(pair) != 2:
                raise ScenarioError("simulate.initial: expected [x, y]")
            initial = State(_number(pair[0], "simulate.initial[0]"), _number(pair[1], "simulate.initial[1]"))
        steps = simulate.steps
        if "steps" in sim:
            steps = sim["steps"]
            if isinstance(steps, bool) or not isinstance(steps, int) or steps < 0:
                raise ScenarioError("simulate.steps: expected a nonnegative integer")
        clamp = sim.get("clamp", False)
        if not isinstance(clamp, bool):
            raise ScenarioError("simulate.clamp: expected true or false")
        simulate = SimulateSpec(initial, steps, clamp)

    game = None
    if "game" in doc:
        g = _object(doc["game"], "game", GAME_KEYS)
        variant = g.get("variant", DEFAULT_GAME.variant)
        if variant not in GAME_VARIANTS:
            raise ScenarioError(f"game.variant: expected one of {', '.join(GAME_VARIANTS)}")
        game = GameSpec(
            variant,
            _number(g["benefit"], "game.benefit") if "benefit" in g else DEFAULT_GAME.benefit,
            _number(g["cost"], "game.cost") if "cost" in g else DEFAULT_GAME.cost,
        )
    return Scenario(name, params, simulate, game)


def scenario_to_dict(s: Scenario) -> dict:
    doc = {
        "name": s.name,
        "params": s.params.as_dict(),
        "simulate": {
            "initial": [s.simulate.initial.x, s.simulate.initial.y],
            "steps": s.simulate.steps,
            "clamp": s.simulate.clamp,
        },
    }
    if s.game is not None:
        doc["game"] = {"variant": s.game.variant, "benefit": s.game.benefit, "cost": s.game.cost}
    return doc


def serialize_scenario(s: Scenario) -> str:
    # repr-based float output round-trips exactly through parse_scenario
    return json.dumps(scenario_to_dict(s), indent=2) + "\n"


def load_scenario(path: str | Path) -> Scenario:
    return parse_scenario(Path(path).read_text(encoding="utf-8"))
