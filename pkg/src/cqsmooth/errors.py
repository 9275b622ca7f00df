"""Exceptions shared across the package.

Bad user input raises plain ``ValueError``.  The classes below mark the two
other failure modes the command line distinguishes: a mathematical identity
that should hold did not (exit code 3), and a computation refused because it
would exceed a configured size cap (exit code 2, raise the cap and retry).
"""


class VerificationError(RuntimeError):
    """An exact identity that must hold for valid inputs failed."""


class DegreeCapError(RuntimeError):
    """A polynomial computation would exceed the configured degree cap."""
