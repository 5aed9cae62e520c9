"""Integrability and hypertranscendence of linear difference systems.

Systems are passed as documents (a dict or a JSON string with keys
"case", "q", "matrix", "options"); every call returns the report as a dict.
"""

import json as _json

from . import _diffgal
from ._diffgal import DiffgalError, ParseError, canonical

__all__ = [
    "DiffgalError",
    "ParseError",
    "canonical",
    "analyze",
    "integrable",
    "projectively_integrable",
    "constant_group",
    "telescope",
    "scalar_classify",
    "lift_report",
    "companion_report",
    "gauge",
    "kron",
]


def _doc(document):
    return document if isinstance(document, str) else _json.dumps(document)


def analyze(document, **bounds):
    return _json.loads(_diffgal.analyze(_doc(document), **bounds))


def integrable(document, **bounds):
    return _json.loads(_diffgal.integrable(_doc(document), **bounds))


def projectively_integrable(document, **bounds):
    return _json.loads(_diffgal.projectively_integrable(_doc(document), **bounds))


def constant_group(document, **bounds):
    return _json.loads(_diffgal.constant_group(_doc(document), **bounds))


def telescope(g, case="S", q="", allow_constant=False, **bounds):
    return _json.loads(_diffgal.telescope(g, case, str(q), allow_constant, **bounds))


def scalar_classify(a, case="S", q="", **bounds):
    return _json.loads(_diffgal.scalar_classify(a, case, str(q), **bounds))


def lift_report(group):
    return _json.loads(_diffgal.lift_report(group))["lift"]


def companion_report(polys):
    return _json.loads(_diffgal.companion_report(list(polys)))["lift"]


def gauge(document, T):
    t = T if isinstance(T, str) else _json.dumps([[str(e) for e in row] for row in T])
    return _json.loads(_diffgal.gauge(_doc(document), t))


def kron(document):
    return _json.loads(_diffgal.kron(_doc(document)))
