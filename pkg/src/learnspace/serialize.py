"""Reading and writing families as text.

Two formats are accepted on input:

* JSON: ``{"domain": ["a", "b"], "states": [[], ["a"], ["a", "b"]]}``
* compact lines: one state per line, items separated by commas, ``-`` for
  the empty state.  An optional ``domain: a,b,...`` line fixes the item
  order; otherwise items are ordered by first appearance.  ``#`` starts a
  comment.

Output is always in canonical state order, so writing is deterministic.
"""

from __future__ import annotations

import json
import warnings
from importlib import resources

from learnspace.core import DomainError, ItemDomain, SetFamily

FIXTURES = ("f_ex", "g_ex", "l_ex", "k_ny")


class FormatError(ValueError):
    pass


class DuplicateStateWarning(UserWarning):
    pass


def _build(domain_names, states) -> SetFamily:
    try:
        domain = ItemDomain(tuple(domain_names))
        masks = [domain.mask_of(s) for s in states]
    except (DomainError, TypeError) as exc:
        raise FormatError(str(exc)) from exc
    family = SetFamily(domain, tuple(masks))
    if len(family) < len(masks):
        warnings.warn(
            f"{len(masks) - len(family)} duplicate state(s) collapsed",
            DuplicateStateWarning,
            stacklevel=3,
        )
    return family


def _parse_json(text: str) -> SetFamily:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "domain" not in doc or "states" not in doc:
        raise FormatError("document needs 'domain' and 'states' keys")
    domain, states = doc["domain"], doc["states"]
    if not isinstance(domain, list) or not isinstance(states, list):
        raise FormatError("'domain' and 'states' must be lists")
    if not all(isinstance(s, list) for s in states):
        raise FormatError("every state must be a list of item names")
    return _build(domain, states)


def _split(line: str) -> list[str]:
    return [tok.strip() for tok in line.split(",") if tok.strip()]


def _parse_lines(text: str) -> SetFamily:
    domain: list[str] | None = None
    states: list[list[str]] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("domain:"):
            if domain is not None:
                raise FormatError("more than one domain line")
            if states:
                raise FormatError("domain line must precede the states")
            domain = _split(line[len("domain:"):])
            continue
        states.append([] if line == "-" else _split(line))
    if not states:
        raise FormatError("no states found")
    if domain is None:
        domain = list(dict.fromkeys(item for s in states for item in s))
    return _build(domain, states)


def parse_family(text: str) -> SetFamily:
    if text.lstrip().startswith("{"):
        return _parse_json(text)
    return _parse_lines(text)


def serialize_family(F: SetFamily, fmt: str = "json") -> str:
    if fmt == "json":
        doc = {"domain": list(F.domain.items), "states": [list(s) for s in F.as_names()]}
        return json.dumps(doc) + "\n"
    if fmt == "lines":
        out = ["domain: " + ",".join(F.domain.items)]
        out += [",".join(s) if s else "-" for s in F.as_names()]
        return "\n".join(out) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def load_fixture(name: str) -> SetFamily:
    """One of the shipped example families: f_ex, g_ex, l_ex, k_ny."""
    if name not in FIXTURES:
        raise KeyError(f"no fixture named {name!r}")
    text = resources.files("learnspace").joinpath("fixtures", name).read_text()
    return parse_family(text)
