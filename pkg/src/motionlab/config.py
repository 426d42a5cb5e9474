"""Motion config files: a single versioned JSON document per experiment.

Astala blocks carry one harmonic spec and a map count; composites carry a
member list and per-component counts.  Emitting a built motion materializes
the computed centers so downstream runs are placement-stable, and
emit(parse(x)) is canonical: parsing what was emitted and emitting again is
byte-stable.
"""

from __future__ import annotations

import json
import re

from . import harmonic as hm
from . import motion as mo
from .errors import ConfigError

SCHEMA_VERSION = 1


def parse_lambda(text: str) -> complex:
    """Parse `a`, `bi`, `a+bi`, `a-bi` with decimal reals."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ConfigError("empty lambda")
    if s.endswith("i"):
        body = s[:-1]
        m = re.match(
            r"^(?P<re>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
            r"(?P<im>[+-](?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)$",
            body,
        )
        if m:
            return complex(float(m.group("re")), float(m.group("im")))
        # pure imaginary: `bi`, `-bi`, `i`, `-i`
        if body in ("", "+", "-"):
            body += "1"
        try:
            return complex(0.0, float(body))
        except ValueError as exc:
            raise ConfigError(f"cannot parse lambda {text!r}") from exc
    try:
        return complex(float(s), 0.0)
    except ValueError as exc:
        raise ConfigError(f"cannot parse lambda {text!r}") from exc


def harmonic_to_dict(f: hm.HarmonicFn) -> dict:
    if isinstance(f, hm.Affine):
        return {"type": "affine", "alpha": f.alpha, "beta": f.beta, "gamma": f.gamma}
    if isinstance(f, hm.TrigPoly):
        return {
            "type": "trigpoly",
            "c0": f.c0,
            "cos": list(f.cos_coeffs),
            "sin": list(f.sin_coeffs),
        }
    raise ConfigError(
        f"only affine/trigpoly specs serialize; got {type(f).__name__}"
    )


def harmonic_from_dict(d: dict) -> hm.HarmonicFn:
    try:
        kind = d["type"]
        if kind == "affine":
            return hm.Affine(float(d["alpha"]), float(d["beta"]), float(d["gamma"]))
        if kind == "trigpoly":
            return hm.TrigPoly(
                float(d["c0"]),
                tuple(float(c) for c in d.get("cos", ())),
                tuple(float(s) for s in d.get("sin", ())),
            )
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad harmonic spec {d!r}") from exc
    raise ConfigError(f"unknown harmonic spec type {d.get('type')!r}")


def motion_to_dict(m) -> dict:
    if isinstance(m, mo.AstalaMotion):
        return {
            "v": SCHEMA_VERSION,
            "kind": "astala",
            "n": m.n,
            "harmonic": harmonic_to_dict(m.h),
            "centers": [[w.real, w.imag] for w in m.centers],
        }
    if isinstance(m, mo.CompositeMotion):
        return {
            "v": SCHEMA_VERSION,
            "kind": "composite",
            "component_ns": [c.motion.n for c in m.components],
            "members": [harmonic_to_dict(f) for f in m.target.members],
            "centers": [
                [[w.real, w.imag] for w in c.motion.centers] for c in m.components
            ],
        }
    raise ConfigError(f"cannot serialize {type(m).__name__}")


def motion_from_dict(d: dict):
    if not isinstance(d, dict):
        raise ConfigError("config root must be a JSON object")
    if d.get("v") != SCHEMA_VERSION:
        raise ConfigError(f"unsupported schema version {d.get('v')!r}")
    kind = d.get("kind")
    if kind == "astala":
        try:
            n = int(d["n"])
            h = harmonic_from_dict(d["harmonic"])
        except KeyError as exc:
            raise ConfigError(f"missing field {exc}") from exc
        centers = d.get("centers")
        if centers is not None:
            centers = [complex(x, y) for x, y in centers]
        return mo.build_astala_motion(h, n, centers)
    if kind == "composite":
        try:
            ns = [int(n) for n in d["component_ns"]]
            members = tuple(harmonic_from_dict(f) for f in d["members"])
        except KeyError as exc:
            raise ConfigError(f"missing field {exc}") from exc
        target = hm.InfHarmonicFn(members)
        cm = mo.build_prescribed_motion(target, ns)
        centers = d.get("centers")
        if centers is not None:
            if len(centers) != len(cm.components):
                raise ConfigError("centers list does not match component count")
            comps = tuple(
                mo.MotionComponent(
                    mo.build_astala_motion(
                        c.motion.h, c.motion.n, [complex(x, y) for x, y in ws]
                    ),
                    c.container,
                )
                for c, ws in zip(cm.components, centers)
            )
            cm = mo.CompositeMotion(comps, target)
        return cm
    raise ConfigError(f"unknown motion kind {kind!r}")


def emit(d: dict) -> str:
    """Canonical JSON: sorted keys, two-space indent, round-trip floats."""
    return json.dumps(d, sort_keys=True, indent=2, allow_nan=False) + "\n"


def load_motion(path: str):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return motion_from_dict(data)


def save_motion(m, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(emit(motion_to_dict(m)))
