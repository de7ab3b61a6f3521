from dataclasses import dataclass
from fractions import Fraction

from constants.instance import rational_field_name
from mbmod.errors import FieldMismatch, NonPrimeModulus, ScalarFormatError

RawScalar = Fraction | int

# Deterministic for every modulus below 3.3 * 10^24
_witness_bases = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)

def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _witness_bases:
        if n % p == 0:
            return n == p

    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1

    for a in _witness_bases:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False

    return True


@dataclass(frozen=True)
class FieldSpec:
    """Either the rationals (modulus None) or the prime field GF(modulus)."""
    modulus: int | None = None

    def __post_init__(self) -> None:
        if self.modulus is not None and (type(self.modulus) is not int or not is_prime(self.modulus)):
            raise NonPrimeModulus(self.modulus)

    @staticmethod
    def rationals() -> "FieldSpec":
        return FieldSpec(None)

    @staticmethod
    def prime(modulus: int) -> "FieldSpec":
        return FieldSpec(modulus)

    @staticmethod
    def parse(text: str) -> "FieldSpec":
        """Accepts "rational", "gf:<p>" or a bare prime."""
        cleaned = text.strip().lower()
        if cleaned in (rational_field_name, "rationals", "q"):
            return FieldSpec.rationals()
        if cleaned.startswith("gf:"):
            cleaned = cleaned[3:]
        try:
            return FieldSpec.prime(int(cleaned))
        except ValueError:
            raise ScalarFormatError(f"Unknown field: {text}")

    @property
    def is_rational(self) -> bool:
        return self.modulus is None

    def describe(self) -> str:
        return rational_field_name if self.modulus is None else f"GF({self.modulus})"

    def reduce(self, value: object) -> RawScalar:
        """Canonical raw value of an int, Fraction, Scalar or string in this field."""
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatch(f"Scalar from {value.field.describe()} used in {self.describe()}")
            return value.value
        if isinstance(value, str):
            return self.parse_raw(value)
        if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
            raise ScalarFormatError(f"Not an exact scalar: {value!r}")

        if self.modulus is None:
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % self.modulus == 0:
                raise ScalarFormatError(f"{value} has no image in {self.describe()}")
            return value.numerator * pow(value.denominator, -1, self.modulus) % self.modulus
        return value % self.modulus

    def parse_raw(self, text: str) -> RawScalar:
        try:
            if self.modulus is None:
                return Fraction(text.strip())
            residue = int(text.strip())
        except (ValueError, ZeroDivisionError):
            raise ScalarFormatError(f"Invalid scalar for {self.describe()}: {text!r}")

        if not 0 <= residue < self.modulus:
            raise ScalarFormatError(f"Residue {residue} not canonical modulo {self.modulus}")
        return residue

    def element(self, value: object) -> "Scalar":
        return Scalar(self.reduce(value), self)

    def zero(self) -> "Scalar":
        return self.element(0)

    def one(self) -> "Scalar":
        return self.element(1)


def format_raw(value: RawScalar) -> str:
    if isinstance(value, Fraction) and value.denominator != 1:
        return f"{value.numerator}/{value.denominator}"
    return str(int(value))


@dataclass(frozen=True)
class Scalar:
    value: RawScalar
    field: FieldSpec

    def _other(self, other: object) -> RawScalar:
        return self.field.reduce(other)

    def _wrap(self, value: RawScalar) -> "Scalar":
        if self.field.modulus is not None:
            value = value % self.field.modulus
        return Scalar(value, self.field)

    def __add__(self, other: object) -> "Scalar":
        return self._wrap(self.value + self._other(other))

    def __radd__(self, other: object) -> "Scalar":
        return self + other

    def __sub__(self, other: object) -> "Scalar":
        return self._wrap(self.value - self._other(other))

    def __neg__(self) -> "Scalar":
        return self._wrap(-self.value)

    def __mul__(self, other: object) -> "Scalar":
        return self._wrap(self.value * self._other(other))

    def __rmul__(self, other: object) -> "Scalar":
        return self * other

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("Zero has no inverse")
        if self.field.modulus is None:
            return Scalar(1 / Fraction(self.value), self.field)
        return Scalar(pow(int(self.value), -1, self.field.modulus), self.field)

    def __truediv__(self, other: object) -> "Scalar":
        return self * Scalar(self._other(other), self.field).inverse()

    def is_zero(self) -> bool:
        return self.value == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __str__(self) -> str:
        return format_raw(self.value)
