"""Exception hierarchy shared across the package.

Two branches matter to callers: input problems (bad files, bad values,
missing calibration entries) and unsupported-feature problems (constructs
the model deliberately does not handle). The CLI maps them to exit codes
1 and 2 respectively.
"""

from __future__ import annotations


class FidelisError(Exception):
    """Base class for all package errors."""


class InputError(FidelisError):
    """Malformed or invalid input (files, documents, values)."""


class UnsupportedFeatureError(FidelisError):
    """Circuit or request uses a feature outside the supported model."""


class QasmSyntaxError(InputError):
    """OpenQASM text that does not match the supported grammar."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class UnsupportedGateError(UnsupportedFeatureError):
    """Gate kind outside the supported set."""


class QubitIndexError(InputError):
    """Qubit index out of range or repeated within one gate."""


class CalibrationError(InputError):
    """Calibration document violates the schema or an invariant."""


class MissingCalibrationError(InputError):
    """No calibration record (and no default) covers a gate or qubit."""


class SimulationSizeError(UnsupportedFeatureError):
    """Circuit exceeds the density-matrix simulator's qubit cap."""
