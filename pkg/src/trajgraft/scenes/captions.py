"""Templated agent captions: type, action, and rationale.

Agents that share (type, maneuver) draw from the same five-template pool,
so their captions stay lexically close; different maneuvers share almost no
action/rationale vocabulary. Each agent receives three distinct templates.
"""

from __future__ import annotations

import re
from typing import Dict, List, Tuple

import numpy as np

from .types import AgentType, Maneuver

# (action, rationale) pairs; every stationary action mentions "waiting"
_PHRASES: Dict[Maneuver, List[Tuple[str, str]]] = {
    Maneuver.STATIONARY: [
        ("waiting at the edge of the road", "staying put until the way is clear"),
        ("standing still and waiting near the crossing", "because the signal has not changed yet"),
        ("waiting in place with no visible motion", "likely to remain stopped for now"),
        ("halted and waiting beside the lane", "letting other traffic pass first"),
        ("waiting without moving from its spot", "expected to stay exactly where it is"),
    ],
    Maneuver.STRAIGHT: [
        ("moving straight ahead at a steady pace", "keeping to its current lane"),
        ("continuing forward along the road", "with no sign of changing course"),
        ("travelling straight through the area", "expected to keep the same heading"),
        ("heading directly onward at constant speed", "following the lane markings ahead"),
        ("proceeding straight past the junction", "maintaining its present direction"),
    ],
    Maneuver.TURN_LEFT: [
        ("slowing with its left signal on", "preparing to turn left at the junction"),
        ("beginning to swing toward the left", "about to turn left onto the side road"),
        ("angling left into the intersection", "committed to a left turn"),
        ("easing into a wide left turn", "heading for the road on the left"),
        ("curving steadily to the left", "expected to complete the left turn"),
    ],
    Maneuver.TURN_RIGHT: [
        ("slowing with its right signal on", "preparing to turn right at the junction"),
        ("beginning to swing toward the right", "about to turn right onto the side road"),
        ("angling right into the intersection", "committed to a right turn"),
        ("easing into a tight right turn", "heading for the road on the right"),
        ("curving steadily to the right", "expected to complete the right turn"),
    ],
    Maneuver.LANE_CHANGE_LEFT: [
        ("drifting toward the left lane", "merging left ahead of slower traffic"),
        ("signalling and shifting one lane to the left", "making room on the right side"),
        ("sliding gradually into the left lane", "expected to settle in the left lane"),
        ("crossing the marking to the left", "changing lanes toward the left side"),
        ("starting a smooth left lane change", "aiming for the adjacent left lane"),
    ],
    Maneuver.LANE_CHANGE_RIGHT: [
        ("drifting toward the right lane", "merging right behind faster traffic"),
        ("signalling and shifting one lane to the right", "making room on the left side"),
        ("sliding gradually into the right lane", "expected to settle in the right lane"),
        ("crossing the marking to the right", "changing lanes toward the right side"),
        ("starting a smooth right lane change", "aiming for the adjacent right lane"),
    ],
}

POOL_SIZE = 5


def caption_pool(agent_type: AgentType, maneuver: Maneuver) -> List[str]:
    """All template instantiations for one (type, maneuver) pair."""
    return [f"a {agent_type.value} {action}, {rationale}" for action, rationale in _PHRASES[maneuver]]


def render_caption(agent_type: AgentType, maneuver: Maneuver, rng: np.random.Generator) -> Tuple[str, str, str]:
    """Three distinct captions drawn from the (type, maneuver) pool."""
    pool = caption_pool(agent_type, maneuver)
    idx = rng.choice(POOL_SIZE, size=3, replace=False)
    return tuple(pool[i] for i in idx)


def tokenize(text: str) -> List[str]:
    """Lowercase alphanumeric word split shared with the guidance module."""
    return re.findall(r"[a-z0-9]+", text.lower())
