"""Python bindings for the matroot C++ core.

Every call returns a Result whose ``data`` is the same JSON document the
``matroot`` command line tool prints, and whose ``exit_code`` is the code
the tool would exit with.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Optional, Union

from . import _core
from ._core import (
    ArgumentError,
    BackendError,
    DimensionError,
    DomainError,
    MatrootError,
    NumericError,
    ParseError,
)

EXIT_HOLDS = _core.EXIT_HOLDS
EXIT_USAGE = _core.EXIT_USAGE
EXIT_REFUTED = _core.EXIT_REFUTED
EXIT_QUARANTINED = _core.EXIT_QUARANTINED

Number = Union[int, float, str]
MatrixLike = Union[dict, str]

__all__ = [
    "Result",
    "decide",
    "construct",
    "verify",
    "search",
    "factor",
    "MatrootError",
    "ParseError",
    "DimensionError",
    "BackendError",
    "DomainError",
    "ArgumentError",
    "NumericError",
    "EXIT_HOLDS",
    "EXIT_USAGE",
    "EXIT_REFUTED",
    "EXIT_QUARANTINED",
]


@dataclass(frozen=True)
class Result:
    data: dict
    exit_code: int

    def __getitem__(self, key: str) -> Any:
        return self.data[key]


def _wrap(pair) -> Result:
    text, code = pair
    return Result(json.loads(text), code)


def _scalar(a: Number) -> str:
    # Floats go through repr so the core sees the shortest round-trip digits.
    return a if isinstance(a, str) else repr(a)


def _matrix(m: MatrixLike) -> str:
    return m if isinstance(m, str) else json.dumps(m)


def decide(k: int, n: int, a: Number, tol: Optional[float] = None, rtol: Optional[float] = None) -> Result:
    return _wrap(_core.decide(k, n, _scalar(a), tol, rtol))


def construct(
    tag: str,
    k: int,
    n: int,
    a: Optional[Number] = None,
    a_imag: Optional[Number] = None,
    conjugate_seed: Optional[int] = None,
) -> Result:
    return _wrap(
        _core.construct(
            tag,
            k,
            n,
            None if a is None else _scalar(a),
            None if a_imag is None else _scalar(a_imag),
            conjugate_seed,
        )
    )


def verify(
    matrix: MatrixLike,
    k: int,
    n: int,
    a: Number,
    variant: Optional[str] = None,
    tol: Optional[float] = None,
    rtol: Optional[float] = None,
) -> Result:
    return _wrap(_core.verify(_matrix(matrix), k, n, _scalar(a), variant, tol, rtol))


def search(k: int, n: int, a: Number, budget: int, seed: int = 0) -> Result:
    return _wrap(_core.search(k, n, _scalar(a), budget, seed))


def factor(
    matrix: MatrixLike,
    n: int,
    a: Number,
    variant: Optional[str] = None,
    tol: Optional[float] = None,
    rtol: Optional[float] = None,
) -> Result:
    return _wrap(_core.factor(_matrix(matrix), n, _scalar(a), variant, tol, rtol))
