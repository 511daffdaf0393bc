"""Python front end for the abcover core library.

Cover data and search specs are accepted either as JSON text or as plain
dicts; results come back as dicts.
"""

import json

from . import _core
from ._core import InvalidCoverData, ParseError

__version__ = _core.__version__

__all__ = [
    "InvalidCoverData",
    "ParseError",
    "analyze",
    "bounds",
    "example",
    "example_names",
    "search",
    "validate",
]


def _text(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


def analyze(cover, *, verbose=False, threads=1, timing=False):
    return json.loads(_core.analyze_json(_text(cover), verbose, threads, timing))


def validate(cover):
    return json.loads(_core.validate_json(_text(cover)))


def bounds(dim, *, include_profiles=True, threads=1):
    return json.loads(_core.bounds_json(dim, include_profiles, threads))


def search(spec, *, threads=1, timing=False):
    """Returns (hits, summary)."""
    hits, summary = _core.search_json(_text(spec), threads, timing)
    return [json.loads(h) for h in hits], json.loads(summary)


def example(name):
    return json.loads(_core.example_json(name))


def example_names():
    return list(_core.example_names())
