class InstanceError(Exception):
    """The instance itself is invalid (exit code 1)."""
    position: int | None = None

    def located(self, position: int) -> "InstanceError":
        self.position = position
        return self

class QueryError(Exception):
    """The instance is fine but the query cannot be answered (exit code 2)."""


class DuplicatePair(InstanceError):
    i: int
    j: int

    def __init__(self, i: int, j: int):
        super().__init__(f"More than one entry for pair ({i}, {j}); the basis is not multiplicative")
        self.i = i
        self.j = j

class ZeroCoefficient(InstanceError):
    i: int
    j: int

    def __init__(self, i: int, j: int):
        super().__init__(f"Zero coefficient for pair ({i}, {j}); a zero action must be left out")
        self.i = i
        self.j = j

class IndexOutOfRange(InstanceError):
    space: str
    index: int
    size: int

    def __init__(self, space: str, index: int, size: int):
        super().__init__(f"{space}-index {index} out of range for size {size}")
        self.space = space
        self.index = index
        self.size = size

class NonPrimeModulus(InstanceError):
    modulus: int

    def __init__(self, modulus: int):
        super().__init__(f"Modulus {modulus} is not prime")
        self.modulus = modulus

class InvalidSize(InstanceError):
    pass

class DuplicateLabel(InstanceError):
    label: str

    def __init__(self, space: str, label: str):
        super().__init__(f"Duplicate {space} label: {label}")
        self.label = label

class ScalarFormatError(InstanceError):
    pass

class InstanceParseError(InstanceError):
    location: str

    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}")
        self.location = location


class FieldMismatch(QueryError):
    pass

class NotConnected(QueryError):
    source: int
    target: int

    def __init__(self, source: int, target: int):
        super().__init__(f"Index {source} is not connected to index {target}")
        self.source = source
        self.target = target

class SizeLimitExceeded(QueryError):
    size: int
    limit: int

    def __init__(self, size: int, limit: int):
        super().__init__(f"Instance has {size} indices, brute force is limited to {limit}")
        self.size = size
        self.limit = limit

class EmptyModule(QueryError):
    pass

class Unsatisfiable(QueryError):
    pass

class UnknownIndex(QueryError):
    pass

class NotStarMultiplicative(QueryError):
    violation_count: int

    def __init__(self, violation_count: int):
        super().__init__(f"Basis is not star-multiplicative ({violation_count} violations)")
        self.violation_count = violation_count


class ComponentCountMismatch(Exception):
    """A generated sample missed the requested component count; the generator resamples."""
    found: int
    wanted: int

    def __init__(self, found: int, wanted: int):
        super().__init__(f"Generated {found} components, wanted {wanted}")
        self.found = found
        self.wanted = wanted
