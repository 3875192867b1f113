"""Experiment scenarios: JSON schema, built-in default, and the runner.

A scenario is one JSON document::

    {
      "units": "gaussian-cgs",
      "level": 2,
      "beam": {"speed": 3.0e5, "position": [0, 0, -1], "direction": [0, 0, 1],
               "mass": 1.6735e-24},
      "field_region": {"field": [0.0033356, 0, 0],
                       "lower": [-5, -5, 0], "upper": [5, 5, 10]},
      "ring": {"radius": 1.0, "center": [0, -5.6, 15], "normal": [0, 0, 1]},
      "integrator": {"dt": 1e-7, "n_steps": 800},
      "separation_plane_z": 15.0
    }

All quantities are in the scenario's unit system (cm, s, g, statvolt/cm for
``gaussian-cgs``).  ``ring`` may also be a list of rings.  ``mass`` defaults
to the hydrogen atom mass.  Two beams are launched with identical initial
conditions and charges +g and -g, g being the charge of level ``level``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import jsonschema
import numpy as np

from .errors import DomainError
from .experiment import (
    BeamSpec,
    FieldRegion,
    RingDetector,
    Trajectory,
    beam_separation,
    gyroradius,
    integrate_trajectory,
    ring_crossings,
    ring_flux_event,
    squid_signal,
)
from .monopole import solve_magnetic_charge
from .units import STATVOLT_PER_VOLT, Constants, make_unit_system

_VEC3 = {"type": "array", "items": {"type": "number"}, "minItems": 3, "maxItems": 3}
_RING = {
    "type": "object",
    "required": ["radius", "center", "normal"],
    "properties": {
        "radius": {"type": "number", "exclusiveMinimum": 0},
        "center": _VEC3,
        "normal": _VEC3,
    },
    "additionalProperties": False,
}

SCENARIO_SCHEMA = {
    "type": "object",
    "required": ["beam", "field_region", "ring", "integrator"],
    "properties": {
        "units": {"enum": ["gaussian-cgs", "atomic"]},
        "level": {"type": "integer", "minimum": 1},
        "beam": {
            "type": "object",
            "required": ["speed", "position", "direction"],
            "properties": {
                "speed": {"type": "number", "exclusiveMinimum": 0},
                "position": _VEC3,
                "direction": _VEC3,
                "mass": {"type": "number", "exclusiveMinimum": 0},
            },
            "additionalProperties": False,
        },
        "field_region": {
            "type": "object",
            "required": ["field", "lower", "upper"],
            "properties": {"field": _VEC3, "lower": _VEC3, "upper": _VEC3},
            "additionalProperties": False,
        },
        "ring": {"oneOf": [_RING, {"type": "array", "items": _RING, "minItems": 1}]},
        "integrator": {
            "type": "object",
            "required": ["dt", "n_steps"],
            "properties": {
                "dt": {"type": "number", "exclusiveMinimum": 0},
                "n_steps": {"type": "integer", "minimum": 1},
            },
            "additionalProperties": False,
        },
        "separation_plane_z": {"type": "number"},
    },
    "additionalProperties": False,
}


class ScenarioError(DomainError):
    pass


def validate_scenario(doc) -> None:
    """Raise :class:`ScenarioError` naming the first schema violation."""
    validator = jsonschema.Draft202012Validator(SCENARIO_SCHEMA)
    errors = sorted(validator.iter_errors(doc), key=lambda e: (list(e.path), e.message))
    if errors:
        err = errors[0]
        where = "/".join(str(p) for p in err.path) or "<root>"
        raise ScenarioError(f"scenario invalid at {where}: {err.message}")


def default_scenario(c: Constants | None = None, level: int = 2) -> dict:
    """Thermal hydrogen (3 km/s) through 1 V/cm over 10 cm; rings 5 cm downstream.

    Each ring (radius 1 cm) is centred on the analytic exit path of one beam.
    """
    c = c or make_unit_system("gaussian-cgs")
    if c.length_unit_cm != 1.0:
        raise DomainError("the default scenario is defined in gaussian-cgs units")
    speed, length, downstream = 3.0e5, 10.0, 15.0
    field = 1.0 * STATVOLT_PER_VOLT
    g = solve_magnetic_charge(level, c)
    radius = gyroradius(c.hydrogen_mass, speed, g, field, c)
    if radius <= length:
        raise DomainError("default geometry needs the orbit radius to exceed the region length")
    theta = math.asin(length / radius)
    y_exit = -radius + math.sqrt(radius * radius - length * length)
    y_ring = y_exit - (downstream - length) * math.tan(theta)
    rings = [
        {"radius": 1.0, "center": [0.0, y, downstream], "normal": [0.0, 0.0, 1.0]}
        for y in (y_ring, -y_ring)
    ]
    return {
        "units": "gaussian-cgs",
        "level": level,
        "beam": {"speed": speed, "position": [0.0, 0.0, -1.0], "direction": [0.0, 0.0, 1.0]},
        "field_region": {"field": [field, 0.0, 0.0], "lower": [-5.0, -5.0, 0.0], "upper": [5.0, 5.0, length]},
        "ring": rings,
        "integrator": {"dt": 1.0e-7, "n_steps": 800},
        "separation_plane_z": downstream,
    }


@dataclass
class ScenarioResult:
    constants: Constants
    g: float
    trajectories: dict
    events: dict
    separation: dict


def run_scenario(doc: dict) -> ScenarioResult:
    validate_scenario(doc)
    c = make_unit_system(doc.get("units", "gaussian-cgs"))
    level = int(doc.get("level", 2))
    g = solve_magnetic_charge(level, c)
    b = doc["beam"]
    beam = BeamSpec(b.get("mass", c.hydrogen_mass), b["speed"], b["position"], b["direction"], g)
    fr = doc["field_region"]
    region = FieldRegion(fr["field"], fr["lower"], fr["upper"])
    ring_docs = doc["ring"] if isinstance(doc["ring"], list) else [doc["ring"]]
    rings = [RingDetector.facing(r["radius"], r["center"], r["normal"]) for r in ring_docs]
    dt, n_steps = doc["integrator"]["dt"], doc["integrator"]["n_steps"]

    trajectories: dict[str, Trajectory] = {}
    for label, charge in (("plus", g), ("minus", -g)):
        trajectories[label] = integrate_trajectory(beam.with_charge(charge), region, dt, n_steps, c)

    events = {"flux_quantum": c.flux_quantum, "g": g.g, "eg_over_hbar_c": g.coupling(c), "beams": {}}
    for label, traj in trajectories.items():
        per_ring = []
        for i, ring in enumerate(rings):
            crossings = ring_crossings(traj, ring)
            flux = ring_flux_event(traj, ring, traj.charge, c)
            per_ring.append({
                "ring": i,
                "crossings": [{"time": x.time, "point": list(x.point), "sign": x.sign} for x in crossings],
                "flux": flux,
                "flux_quanta": squid_signal(flux, c),
            })
        events["beams"][label] = {"charge": traj.charge.g, "rings": per_ring}

    plane = doc.get("separation_plane_z")
    if plane is None:
        plane = float(np.mean([r.center[2] for r in rings]))
    separation = {
        "plane_z": plane,
        "separation": beam_separation(trajectories["plus"], trajectories["minus"], plane),
        "field_strength": region.strength,
        "gyroradius": gyroradius(beam.mass, beam.speed, g, region.strength, c) if region.strength > 0 else None,
    }
    return ScenarioResult(c, g.g, trajectories, events, separation)
