"""Canonical ordering of rendered keys.

Renderings are compared token by token: punctuation by character code,
labels by a natural key so that ``x2 < x10`` and ``a < b``.
"""

from __future__ import annotations

import re

_TOKEN = re.compile(r"[A-Za-z][A-Za-z0-9_]*|.", re.S)
_LABEL_PARTS = re.compile(r"^(.*?)(\d*)$")


def label_key(label: str) -> tuple:
    prefix, digits = _LABEL_PARTS.match(label).groups()
    return (prefix, int(digits) if digits else -1, label)


def text_key(text: str) -> tuple:
    out = []
    for tok in _TOKEN.findall(text):
        if tok[0].isalpha():
            out.append((1, label_key(tok)))
        else:
            out.append((0, tok))
    return tuple(out)


def canonical_key(obj) -> tuple:
    """Sort key for anything that can be a LinComb key."""
    key = getattr(obj, "sort_key", None)
    if key is not None:
        return key
    if isinstance(obj, tuple):
        return tuple(canonical_key(x) for x in obj)
    if isinstance(obj, str):
        return text_key(obj)
    return (obj,)
