"""Time-dependent Green's functions for a point interaction at the origin."""

from ._pointgreen import Datum, Interaction, lambda_fn, verify

__all__ = ["Datum", "Interaction", "lambda_fn", "verify"]
