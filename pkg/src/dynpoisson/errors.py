"""Exception types raised across the package."""


class DynPoissonError(Exception):
    """Base class; the CLI turns these into structured JSON errors."""

    kind = "Error"

    def to_json(self) -> dict:
        return {"error": self.kind, "message": str(self)}


class UnknownType(DynPoissonError):
    kind = "UnknownType"


class BadSubset(DynPoissonError):
    kind = "BadSubset"


class TooLarge(DynPoissonError):
    kind = "TooLarge"


class DegreeMismatch(DynPoissonError):
    kind = "DegreeMismatch"


class PoleAt(DynPoissonError):
    kind = "PoleAt"

    def __init__(self, root, message: str = ""):
        self.root = tuple(root)
        super().__init__(message or f"coth pole at root {list(self.root)}")

    def to_json(self) -> dict:
        out = super().to_json()
        out["root"] = list(self.root)
        return out


class NotClassifiable(DynPoissonError):
    kind = "NotClassifiable"


class RegularityViolated(DynPoissonError):
    kind = "RegularityViolated"


class BadNesting(DynPoissonError):
    kind = "BadNesting"


class UnsupportedX1(DynPoissonError):
    kind = "UnsupportedX1"


class UnsupportedType(DynPoissonError):
    kind = "UnsupportedType"


class Singular(DynPoissonError):
    kind = "Singular"


class OffManifold(DynPoissonError):
    kind = "OffManifold"


class OffCell(DynPoissonError):
    kind = "OffCell"


class IrregularLambda(DynPoissonError):
    kind = "IrregularLambda"


class ChartSingularity(DynPoissonError):
    kind = "ChartSingularity"
