"""Exception types shared across the package."""


class SonobeError(Exception):
    """Base class for all errors raised by this package."""


class NonManifoldEdge(SonobeError):
    """An undirected edge is incident to a number of faces other than 2."""


class Unorientable(SonobeError):
    """No globally consistent face orientation exists."""


class Disconnected(SonobeError):
    """Face-adjacency graph is not connected, or a vertex is not on the surface."""


class DegenerateFace(SonobeError):
    """A face repeats a vertex, or two faces share the same vertex set."""


class OddResult(SonobeError):
    """Euler characteristic came out odd; signals a validation bug upstream."""


class ZeroLengthEdge(SonobeError):
    """An edge has (numerically) coincident endpoints; gradient undefined."""


class DegenerateNormal(SonobeError):
    """A face has (numerically) zero area; its normal is undefined."""


class DegenerateTriangle(SonobeError):
    """Triangle is degenerate or too far from equilateral to cap."""


class ZeroVolume(SonobeError):
    """Signed volume is numerically zero; orientation cannot be decided."""


class LayoutFailed(SonobeError):
    """The barycentric layout system is singular (input not 3-connected)."""


class UnknownName(SonobeError):
    """Requested catalog entry does not exist."""


class UnsupportedFaceSize(SonobeError):
    """A face has a vertex count this package does not handle."""


class OffSyntaxError(SonobeError):
    """Malformed OFF input; carries the 1-based offending line number."""

    def __init__(self, line_number, message):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number
