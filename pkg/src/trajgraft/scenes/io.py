"""JSON-lines dataset serialization.

One scene per line. Floats are written with 17 significant digits so
parsing reproduces every value bit-exactly, making serialization a pure
function of the dataset (byte-for-byte deterministic).
"""

from __future__ import annotations

import json
from typing import IO, List, Optional, Sequence

import numpy as np

from .types import Agent, AgentType, Maneuver, Scene


def _dump(obj) -> str:
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format(float(obj), ".17g")
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(_dump(v) for v in obj) + "]"
    if isinstance(obj, np.ndarray):
        return _dump(obj.tolist())
    if isinstance(obj, dict):
        return "{" + ",".join(f"{json.dumps(k)}:{_dump(v)}" for k, v in obj.items()) + "}"
    if obj is None:
        return "null"
    raise TypeError(f"cannot serialize {type(obj)!r}")


def _grid_obj(grid: np.ndarray) -> dict:
    return {"shape": list(grid.shape), "data": grid.reshape(-1).tolist()}


def _agent_obj(agent: Agent, prediction: Optional[dict] = None) -> dict:
    obj = {
        "observed": agent.observed.tolist(),
        "future": agent.future.tolist(),
        "agent_type": agent.agent_type.value,
        "heading": agent.heading.tolist(),
        "maneuver": agent.maneuver.value,
        "captions": list(agent.captions),
    }
    if prediction is not None:
        obj["prediction"] = prediction
    return obj


def scene_to_line(scene: Scene, predictions: Optional[Sequence[dict]] = None) -> str:
    if predictions is None:
        predictions = [None] * len(scene.agents)
    obj = {
        "scene_id": scene.scene_id,
        "grid_extent": float(scene.grid_extent),
        "ego_index": scene.ego_index,
        "agents": [_agent_obj(a, p) for a, p in zip(scene.agents, predictions)],
        "bev_image": _grid_obj(scene.bev_image),
        "bev_map": _grid_obj(scene.bev_map),
    }
    return _dump(obj)


def prediction_obj(rho: np.ndarray, mu: np.ndarray, sigma: np.ndarray) -> dict:
    return {"rho": rho.tolist(), "mu": _grid_obj(mu), "sigma": _grid_obj(sigma)}


def _parse_grid(obj: dict) -> np.ndarray:
    return np.asarray(obj["data"], dtype=np.float64).reshape(obj["shape"])


def scene_from_line(line: str) -> Scene:
    obj = json.loads(line)
    agents = []
    for a in obj["agents"]:
        agents.append(
            Agent(
                observed=np.asarray(a["observed"], dtype=np.float64),
                future=np.asarray(a["future"], dtype=np.float64),
                agent_type=AgentType(a["agent_type"]),
                heading=np.asarray(a["heading"], dtype=np.float64),
                maneuver=Maneuver(a["maneuver"]),
                captions=tuple(a["captions"]),
            )
        )
    return Scene(
        scene_id=obj["scene_id"],
        agents=agents,
        bev_image=_parse_grid(obj["bev_image"]),
        bev_map=_parse_grid(obj["bev_map"]),
        grid_extent=float(obj["grid_extent"]),
        ego_index=obj["ego_index"],
    )


def parse_predictions(line: str) -> List[Optional[dict]]:
    """Per-agent prediction dicts from a line written with predictions."""
    obj = json.loads(line)
    out = []
    for a in obj["agents"]:
        p = a.get("prediction")
        if p is not None:
            p = {"rho": np.asarray(p["rho"], dtype=np.float64), "mu": _parse_grid(p["mu"]), "sigma": _parse_grid(p["sigma"])}
        out.append(p)
    return out


def write_dataset(path: str, scenes: Sequence[Scene], predictions=None):
    with open(path, "w", encoding="utf-8") as f:
        _write(f, scenes, predictions)


def _write(f: IO[str], scenes: Sequence[Scene], predictions=None):
    for i, scene in enumerate(scenes):
        f.write(scene_to_line(scene, predictions[i] if predictions is not None else None))
        f.write("\n")


def read_dataset(path: str) -> List[Scene]:
    scenes = []
    with open(path, "r", encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if line:
                scenes.append(scene_from_line(line))
    return scenes
