"""Working tolerances.

The defaults below are used everywhere. They can be overridden for a block of
code with :func:`use_tolerances`; the override lives in a context variable, so
threads and asyncio tasks each see their own setting.
"""

from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    # ||M M^* - I||_F <= unitary * sqrt(n)
    unitary: float = 1e-8
    # two eigen-angles are "equal" when closer than this
    angle: float = 1e-7
    # relative singular-value grouping tolerance (times sigma_max)
    singular: float = 1e-9
    # membership residuals for groups and algebras
    membership: float = 1e-8
    # rank threshold used when counting +i*pi multiplicities
    rank: float = 1e-6
    # slack on the |Im(lambda)| <= pi bound for principal logarithms
    eigen_bound: float = 1e-9
    # accepted ||exp(L) - M||_F for a logarithm
    exp_residual: float = 1e-8
    # Jacobi eigensolver
    jacobi_threshold: float = 1e-13
    jacobi_max_sweeps: int = 60
    # torus enumeration guard: at most 2**torus_guard representatives
    torus_guard: int = 20


_current: contextvars.ContextVar[Tolerances] = contextvars.ContextVar(
    "ulog_tolerances", default=Tolerances()
)


def tolerances() -> Tolerances:
    return _current.get()


@contextlib.contextmanager
def use_tolerances(**overrides):
    """Temporarily override some tolerances.

    >>> with use_tolerances(angle=1e-6):
    ...     tolerances().angle
    1e-06
    """
    token = _current.set(replace(_current.get(), **overrides))
    try:
        yield _current.get()
    finally:
        _current.reset(token)
