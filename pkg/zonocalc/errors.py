from typing import Any, Optional


class ZonocalcError(Exception):
    """Base class for every failure raised by the calculus."""

    # exit code used by the CLI when this error escapes a command
    exit_code = 2


# ------------------------------------------
# Scalar errors
# ------------------------------------------

class NotRational(ZonocalcError):
    exit_code = 1

    def __init__(self, value: Any):
        self.value = value
        super().__init__(f"cyclotomic value is not rational: {value}")


class IncompatibleOrder(ZonocalcError):
    def __init__(self, order: int, target: int):
        self.order = order
        self.target = target
        super().__init__(f"cannot embed Q(zeta_{order}) into Q(zeta_{target})")


# ------------------------------------------
# Combinatorial / geometric errors
# ------------------------------------------

class DoesNotSpan(ZonocalcError):
    def __init__(self, weights: Any = None, message: Optional[str] = None):
        self.weights = weights
        super().__init__(message or f"weights do not span the ambient space: {weights}")


class NotPointed(ZonocalcError):
    def __init__(self, weights: Any = None):
        self.weights = weights
        super().__init__(f"weights do not span a pointed cone: {weights}")


class NotUnimodular(ZonocalcError):
    def __init__(self, weights: Any = None):
        self.weights = weights
        super().__init__(f"weight list is not unimodular: {weights}")


class NotAVertex(ZonocalcError):
    def __init__(self, vertex: Any = None):
        self.vertex = vertex
        super().__init__(f"not a toric vertex of the weight list: {vertex}")


class NotRegularFace(ZonocalcError):
    def __init__(self, functional: Any = None, weight: Any = None):
        self.functional = functional
        self.weight = weight
        super().__init__(f"functional {functional} vanishes on weight {weight}")


class IrregularPoint(ZonocalcError):
    def __init__(self, point: Any = None):
        self.point = point
        super().__init__(f"point lies on a wall of the arrangement: {point}")


class Unbounded(ZonocalcError):
    def __init__(self, message: str = "polyhedron is unbounded"):
        super().__init__(message)


# ------------------------------------------
# Piecewise engine errors
# ------------------------------------------

class TruncationTooLow(ZonocalcError):
    exit_code = 1

    def __init__(self, degree: int, truncation: int):
        self.degree = degree
        self.truncation = truncation
        super().__init__(f"polynomial of degree {degree} exceeds series truncation {truncation}")


class WindowExceeded(ZonocalcError):
    exit_code = 1

    def __init__(self, point: Any = None):
        self.point = point
        super().__init__(f"requested point lies outside the working window: {point}")


class UnboundedSupport(ZonocalcError):
    exit_code = 1

    def __init__(self):
        super().__init__("semidiscrete convolution needs a compactly supported spline")


class SingularSystem(ZonocalcError):
    exit_code = 1

    def __init__(self, message: str = "interpolation system is singular"):
        super().__init__(message)


# ------------------------------------------
# Front door errors
# ------------------------------------------

class ConfigError(ZonocalcError):
    def __init__(self, message: str, key: Optional[str] = None, line: Optional[int] = None):
        self.key = key
        self.line = line
        context = []
        if line is not None:
            context.append(f"line {line}")
        if key:
            context.append(f"key '{key}'")
        prefix = f"[{', '.join(context)}] " if context else ""
        super().__init__(f"{prefix}{message}")


class ArtifactError(ZonocalcError):
    exit_code = 1


class IdentityMismatch(ZonocalcError):
    exit_code = 1

    def __init__(self, message: str):
        super().__init__(f"identity check failed: {message}")
