"""Structured errors shared by all modules.

Every domain error carries a machine-readable (stage, kind, detail) triple so
the CLI can emit a stable error object without inspecting exception types.
"""


class KitError(Exception):
    """Base class for all domain errors."""

    def __init__(self, kind, detail="", stage=None):
        self.kind = kind
        self.detail = detail
        self.stage = stage or self.__class__.default_stage
        super().__init__(f"{self.stage}:{kind}: {detail}" if detail else f"{self.stage}:{kind}")

    default_stage = "kit"

    def as_object(self):
        return {"stage": self.stage, "kind": self.kind, "detail": self.detail}


class MapError(KitError):
    default_stage = "planar_map"


class OrientationError(KitError):
    default_stage = "orientation"


class SchnyderError(KitError):
    default_stage = "schnyder"


class DualityError(KitError):
    default_stage = "duality"


class EvenError(KitError):
    default_stage = "even"


class DrawingError(KitError):
    default_stage = "drawing"


class SamplerError(KitError):
    default_stage = "sampler"
