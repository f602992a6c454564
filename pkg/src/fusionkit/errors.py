from __future__ import annotations


class FusionKitError(Exception):
    """Base class for all package errors."""


class CapExceeded(FusionKitError):
    def __init__(self, what: str, size: int, cap: int):
        super().__init__(f"{what}: size {size} exceeds cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap


class DegreeMismatch(FusionKitError, ValueError):
    pass


class ParseError(FusionKitError, ValueError):
    def __init__(self, msg: str, line: int | None = None):
        if line is not None:
            msg = f"line {line}: {msg}"
        super().__init__(msg)
        self.line = line


class NotAHomomorphism(FusionKitError, ValueError):
    pass


class ImageOutsideCodomain(FusionKitError, ValueError):
    pass


class NotASubgroup(FusionKitError, ValueError):
    pass


class PremiseError(FusionKitError):
    """A construction's hypothesis failed; ``premise`` names which one."""

    def __init__(self, premise: str, detail: str = ""):
        super().__init__(f"premise '{premise}' failed" + (f": {detail}" if detail else ""))
        self.premise = premise
        self.detail = detail


class SaturationError(FusionKitError):
    def __init__(self, witness: dict):
        super().__init__(f"result is not saturated: {witness}")
        self.witness = witness
