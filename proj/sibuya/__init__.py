"""Canonical solutions, Stokes multipliers and their zeros for
-y'' + (x^m + a_1 x^{m-1} + ... + a_m) y = 0."""

from ._core import (
    CoalescenceEvent,
    InputError,
    NumericsError,
    SweepResult,
    VerificationError,
    ZeroRecord,
    connection,
    dc_dlambda,
    f0,
    f0_log,
    f0_negative_zeros,
    hypothesis,
    origin_data,
    spectrum,
    stokes,
    sweep,
    verify,
    winding,
)

__all__ = [
    "CoalescenceEvent",
    "InputError",
    "NumericsError",
    "SweepResult",
    "VerificationError",
    "ZeroRecord",
    "connection",
    "dc_dlambda",
    "f0",
    "f0_log",
    "f0_negative_zeros",
    "hypothesis",
    "origin_data",
    "spectrum",
    "stokes",
    "sweep",
    "verify",
    "winding",
]
