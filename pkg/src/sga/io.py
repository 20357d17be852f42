"""Instance files: JSON documents tagged with a kind and a format version."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Union

from . import action as _action
from . import groupoid as _groupoid
from . import ultragraph as _ultragraph
from .action import FinitePartialAction
from .errors import ValidationError
from .groupoid import Groupoid
from .ultragraph import Ultragraph

FORMAT_VERSION = 1
Instance = Union[Groupoid, FinitePartialAction, Ultragraph]

_VALIDATORS = {
    "groupoid": _groupoid.validate,
    "action": _action.validate,
    "ultragraph": _ultragraph.validate,
}


def kind_of(obj: Instance) -> str:
    if isinstance(obj, Groupoid):
        return "groupoid"
    if isinstance(obj, FinitePartialAction):
        return "action"
    if isinstance(obj, Ultragraph):
        return "ultragraph"
    raise TypeError(f"not an instance type: {type(obj).__name__}")


def to_document(obj: Instance) -> dict:
    return {"kind": kind_of(obj), "version": FORMAT_VERSION, **obj.to_dict()}


def from_document(doc) -> Instance:
    if not isinstance(doc, dict):
        raise ValidationError("instance file must hold a JSON object")
    kind = doc.get("kind")
    if kind not in _VALIDATORS:
        raise ValidationError(f"unknown or missing kind {kind!r}; expected one of {sorted(_VALIDATORS)}")
    version = doc.get("version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise ValidationError(f"unsupported format version {version!r}")
    body = {k: v for k, v in doc.items() if k not in ("kind", "version")}
    return _VALIDATORS[kind](body)


def dumps(obj: Instance) -> str:
    return json.dumps(to_document(obj), indent=2, sort_keys=True) + "\n"


def loads(text: str) -> Instance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed JSON: {exc}") from None
    return from_document(doc)


def load(path: str | Path) -> Instance:
    """Raises OSError for unreadable files and ValidationError for bad content."""
    return loads(Path(path).read_text(encoding="utf-8"))


def dump(obj: Instance, path: str | Path) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")
