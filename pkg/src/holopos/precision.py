"""Working-precision context.

All ball operations read the active binary precision from here.  The policy
is deterministic: computations start at a caller-chosen precision (default
64 bits) and the adaptive drivers double it on failure up to ``PREC_CAP``
bits, after which :class:`~holopos.errors.PrecisionExhausted` is raised.
"""

from __future__ import annotations

import contextlib
import threading

from .errors import PrecisionExhausted

DEFAULT_PREC = 64
PREC_CAP = 4096

_state = threading.local()


def get_precision() -> int:
    return getattr(_state, "prec", DEFAULT_PREC)


def set_precision(bits: int) -> None:
    if bits < 2:
        raise ValueError("precision must be at least 2 bits")
    _state.prec = int(bits)


@contextlib.contextmanager
def precision(bits: int):
    """Temporarily set the working precision.

    >>> with precision(128):
    ...     pass
    """
    old = get_precision()
    set_precision(bits)
    try:
        yield
    finally:
        set_precision(old)


def escalate(start: int | None = None, cap: int = PREC_CAP):
    """Yield a doubling sequence of precisions, ending in PrecisionExhausted.

    Usage::

        for prec in escalate(64):
            with precision(prec):
                try:
                    return compute()
                except DomainError:
                    continue
    """
    bits = start if start is not None else get_precision()
    while bits <= cap:
        yield bits
        bits *= 2
    raise PrecisionExhausted(f"no success up to {cap} bits")
