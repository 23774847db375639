"""Reading and writing fixture documents.

A fixture document is a JSON object::

    {"name": "s2", "d": 1, "l": 0, "comment": "...",
     "components": [{"sign": 1, "tangent_weights": [1], "bundle_weights": []}, ...]}

``comment`` is optional; any other key is rejected.  A rigidity report
document (see ``cli``) is also accepted, and its embedded ``fixture`` is
loaded, so reports round-trip through ``load_fixture``.
"""
from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Any

from .errors import FixtureError
from .lefschetz_core import FixedPointComponent, ManifoldFixture, validate_fixture

FIXTURE_KEYS = {"name", "d", "l", "components", "comment"}
REQUIRED_KEYS = {"name", "d", "l", "components"}
COMPONENT_KEYS = {"sign", "tangent_weights", "bundle_weights"}
REPORT_KEYS = {"fixture", "lambda", "K", "orders", "anomaly", "residuals"}

BUNDLED = ("s2", "s4", "s6", "s2xs2", "cp3", "onepoint", "anomalous")


def fixture_from_dict(doc: Any) -> ManifoldFixture:
    if not isinstance(doc, dict):
        raise FixtureError("fixture document must be a JSON object")
    if set(doc) == REPORT_KEYS:
        doc = doc["fixture"]
        if not isinstance(doc, dict):
            raise FixtureError("report 'fixture' entry must be a JSON object")
    unknown = set(doc) - FIXTURE_KEYS
    if unknown:
        raise FixtureError(f"unknown keys: {sorted(unknown)}")
    missing = REQUIRED_KEYS - set(doc)
    if missing:
        raise FixtureError(f"missing keys: {sorted(missing)}")
    if not isinstance(doc["components"], list):
        raise FixtureError("components must be a list")
    comps = []
    for idx, c in enumerate(doc["components"]):
        if not isinstance(c, dict):
            raise FixtureError(f"component {idx} must be a JSON object")
        bad = set(c) - COMPONENT_KEYS
        if bad:
            raise FixtureError(f"component {idx}: unknown keys: {sorted(bad)}")
        if "tangent_weights" not in c:
            raise FixtureError(f"component {idx}: missing tangent_weights")
        tw, bw = c["tangent_weights"], c.get("bundle_weights", [])
        if not isinstance(tw, list) or not isinstance(bw, list):
            raise FixtureError(f"component {idx}: weights must be lists")
        comps.append(FixedPointComponent(tuple(tw), tuple(bw), c.get("sign", 1)))
    comment = doc.get("comment", "")
    if not isinstance(comment, str):
        raise FixtureError("comment must be a string")
    return validate_fixture(ManifoldFixture(doc["name"], doc["d"], doc["l"], tuple(comps), comment))


def fixture_to_dict(f: ManifoldFixture) -> dict:
    doc = {"name": f.name, "d": f.d, "l": f.l}
    if f.comment:
        doc["comment"] = f.comment
    doc["components"] = [
        {"sign": c.sign, "tangent_weights": list(c.tangent_weights), "bundle_weights": list(c.bundle_weights)}
        for c in f.components
    ]
    return doc


def loads_fixture(text: str) -> ManifoldFixture:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FixtureError(f"invalid JSON: {exc}") from None
    return fixture_from_dict(doc)


def bundled_fixture(name: str) -> ManifoldFixture:
    if name not in BUNDLED:
        raise FixtureError(f"no bundled fixture named {name!r}")
    text = resources.files("rigiditylab.fixtures").joinpath(f"{name}.json").read_text("utf-8")
    return loads_fixture(text)


def load_fixture(source: str | Path) -> ManifoldFixture:
    """Load from a path; a bare bundled name (``s2`` or ``s2.json``) that is
    not an existing file resolves to the bundled copy."""
    path = Path(source)
    if path.is_file():
        try:
            text = path.read_text("utf-8")
        except (OSError, UnicodeDecodeError) as exc:
            raise FixtureError(f"cannot read {path}: {exc}") from None
        return loads_fixture(text)
    stem = path.name[:-5] if path.name.endswith(".json") else path.name
    if path.parent == Path(".") and stem in BUNDLED:
        return bundled_fixture(stem)
    raise FixtureError(f"fixture not found: {source}")
