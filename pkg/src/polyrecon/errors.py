"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class PolyreconError(Exception):
    """Base class for all errors raised by polyrecon."""


class InputError(PolyreconError, ValueError):
    """Malformed or out-of-contract input."""


class CapacityError(PolyreconError):
    """The input exceeds a documented size cap of an exhaustive routine."""


class NotPolytopalError(InputError):
    """A vertex-set family does not have the structure of a polytope face lattice."""


class SurgeryError(PolyreconError):
    """Truncation or its inverse produced something that is not a face lattice."""


class DegeneracyError(InputError):
    """A linear functional takes the same value on two vertices."""


class UnsupportedClassError(PolyreconError):
    """The graph has too many non-simple vertices for any implemented algorithm."""

    def __init__(self, h: int, message: str | None = None):
        self.h = h
        super().__init__(
            message
            or f"not supported: graph has h={h} non-simple vertices; "
            "counterexamples to reconstruction exist at h=3"
        )


class ReconstructionFailed(PolyreconError):
    """A reconstruction stage failed; carries the stage name and offending face."""

    def __init__(self, stage: str, detail: str, face=None):
        self.stage = stage
        self.face = None if face is None else tuple(sorted(face))
        msg = f"reconstruction failed at stage '{stage}': {detail}"
        if self.face is not None:
            msg += f" (face {list(self.face)})"
        super().__init__(msg)


class NotSimpleGraphError(ReconstructionFailed):
    """The simple-polytope algorithm assembled a family that is not a face lattice."""
