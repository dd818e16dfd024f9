"""Lie wedges of coherently controlled unital Lindblad systems.

Matrices are NumPy arrays (float64 when real, complex128 otherwise).
Reports are returned as dictionaries with the same layout as the CLI JSON.
"""

import json

from . import _core
from ._core import (
    SCHEMA,
    ParseError,
    comm,
    dual_cone_contains,
    expm,
    figure_data,
    kraus_operators,
    lie_closure,
    logm,
    majorized,
    pauli_string,
    r3,
    sigma_hat,
)

__all__ = [
    "SCHEMA",
    "ParseError",
    "channel_report",
    "comm",
    "conditions_report",
    "dual_cone_contains",
    "example_report",
    "expm",
    "figure_data",
    "kraus_operators",
    "lie_closure",
    "logm",
    "majorized",
    "parse_system",
    "pauli_string",
    "r3",
    "semialgebra_case_report",
    "sigma_hat",
    "wedge_report",
]


def parse_system(text):
    """Parse system-file text; returns the system as a dictionary."""
    return json.loads(_core.parse_system(text))


def example_report(n):
    return json.loads(_core.example_report(n))


def channel_report(name, rates=(), t=1.0):
    return json.loads(_core.channel_report(name, list(rates), t))


def wedge_report(text, samples=None, rounds=None):
    """Saturation report for system-file text."""
    return json.loads(_core.wedge_report(text, samples, rounds))


def conditions_report(text):
    return json.loads(_core.conditions_report(text))


def semialgebra_case_report(case):
    return json.loads(_core.semialgebra_case_report(case))
