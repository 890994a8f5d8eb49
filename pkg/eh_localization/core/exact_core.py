"""
Exact scalar and polynomial arithmetic shared by every other module.

Scalars are either ``fractions.Fraction`` (the rationals) or ``Residue``
(an element of a prime field). Evaluators never mix the two: they take a
field object (``RationalField`` or ``PrimeField``) and coerce every integer
input through it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple, Union

from sympy import isprime

from eh_localization.utils.logging_config import setup_logging

logger = setup_logging("exact_core")


class ExactCoreError(Exception):
    """Root of every error raised by eh_localization."""


class ContractViolation(ExactCoreError, ValueError):
    """A caller broke an operation's precondition."""


class FieldMismatchError(ContractViolation):
    """Arithmetic between values of different kinds or different moduli."""


class InternalConsistencyError(ExactCoreError, AssertionError):
    """A value that a theorem guarantees came out wrong."""


class BudgetExceededError(ExactCoreError):
    """An enumeration ran past its configured cap."""


class DegenerateSubstitutionError(ExactCoreError, ZeroDivisionError):
    """
    A fixed-point sum hit a zero denominator.

    Attributes:
        denominator: the offending denominator (an integer or field value)
        context: which substitution values collided, in words
    """

    def __init__(self, denominator: object, context: str = ""):
        self.denominator = denominator
        self.context = context
        message = f"degenerate substitution: zero denominator {denominator!r}"
        if context:
            message += f" ({context})"
        super().__init__(message)


def require(condition: bool, message: str) -> None:
    if not condition:
        raise ContractViolation(message)


@dataclass(frozen=True, eq=False)
class Residue:
    """An element of the prime field F_p, stored as 0 <= value < modulus."""

    value: int
    modulus: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.modulus)

    def _coerce(self, other: object) -> int:
        if isinstance(other, Residue):
            if other.modulus != self.modulus:
                raise FieldMismatchError(
                    f"cannot combine residues mod {self.modulus} and mod {other.modulus}"
                )
            return other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return other % self.modulus
        raise FieldMismatchError(
            f"cannot combine a residue mod {self.modulus} with {type(other).__name__}"
        )

    def _new(self, value: int) -> Residue:
        return Residue(value, self.modulus)

    def __add__(self, other):
        return self._new(self.value + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self._new(self.value - self._coerce(other))

    def __rsub__(self, other):
        return self._new(self._coerce(other) - self.value)

    def __mul__(self, other):
        return self._new(self.value * self._coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._new(self.value * mod_inverse(self._coerce(other), self.modulus))

    def __rtruediv__(self, other):
        return self._new(self._coerce(other) * mod_inverse(self.value, self.modulus))

    def __neg__(self):
        return self._new(-self.value)

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self._new(pow(mod_inverse(self.value, self.modulus), -exponent, self.modulus))
        return self._new(pow(self.value, exponent, self.modulus))

    def __eq__(self, other):
        # a plain int matches only its own representative, so hashes agree with ints
        if isinstance(other, Residue):
            return other.modulus == self.modulus and other.value == self.value
        if isinstance(other, int) and not isinstance(other, bool):
            return other == self.value
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Residue({self.value} mod {self.modulus})"


FieldValue = Union[Fraction, Residue]


class RationalField:
    """The rationals, realized by ``fractions.Fraction``."""

    name = "QQ"
    characteristic = 0

    def coerce(self, value: Union[int, Fraction]) -> Fraction:
        if isinstance(value, Residue):
            raise FieldMismatchError("cannot read a residue as a rational")
        return Fraction(value)

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def divide(self, numerator: FieldValue, denominator: FieldValue, context: str = ""):
        if denominator == 0:
            raise DegenerateSubstitutionError(denominator, context)
        return numerator / denominator

    def to_json(self, value: Fraction) -> Union[int, str]:
        return value.numerator if value.denominator == 1 else str(value)

    def __repr__(self):
        return "RationalField()"


class PrimeField:
    """F_p. Primality of ``p`` is checked once, here."""

    def __init__(self, p: int):
        require(isinstance(p, int) and isprime(p), f"modulus {p} is not prime")
        self.p = p
        self.name = f"GF({p})"
        self.characteristic = p

    def coerce(self, value: Union[int, Fraction, Residue]) -> Residue:
        if isinstance(value, Residue):
            if value.modulus != self.p:
                raise FieldMismatchError(f"residue mod {value.modulus} is not in {self.name}")
            return value
        if isinstance(value, Fraction):
            return Residue(value.numerator, self.p) / value.denominator
        return Residue(value, self.p)

    @property
    def zero(self) -> Residue:
        return Residue(0, self.p)

    @property
    def one(self) -> Residue:
        return Residue(1, self.p)

    def divide(self, numerator: FieldValue, denominator: FieldValue, context: str = ""):
        if denominator == 0:
            raise DegenerateSubstitutionError(denominator, context)
        return numerator / denominator

    def to_json(self, value: Residue) -> int:
        return value.value

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


Field = Union[RationalField, PrimeField]


def field_for(modulus: int = 0) -> Field:
    """``RationalField`` for modulus 0, otherwise ``PrimeField(modulus)``."""
    return RationalField() if not modulus else PrimeField(modulus)


def reduce_rational(value: Fraction, p: int) -> Residue:
    """Image of a rational in F_p; the denominator must be a unit."""
    return PrimeField(p).coerce(value)


def mod_inverse(a: int, p: int) -> int:
    """
    Inverse of ``a`` modulo the prime ``p``.

    Raises:
        DegenerateSubstitutionError: if a is divisible by p
    """
    if a % p == 0:
        raise DegenerateSubstitutionError(a, f"{a} is not invertible mod {p}")
    return pow(a, -1, p)


def multinomial(d: int, parts: Sequence[int]) -> int:
    """d! / prod(parts_i!) for non-negative parts summing to d."""
    require(all(part >= 0 for part in parts), f"negative part in {list(parts)}")
    require(sum(parts) == d, f"parts {list(parts)} do not sum to {d}")
    result = 1
    remaining = d
    for part in parts:
        result *= math.comb(remaining, part)
        remaining -= part
    return result


Exponent = Tuple[int, ...]


class SparsePoly:
    """
    Polynomial with integer coefficients in ``nvars`` variables.

    Terms map a dense exponent tuple of length ``nvars`` to a nonzero
    integer. Instances are treated as immutable.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exponent, int] | None = None):
        require(nvars >= 0, f"variable count must be non-negative, got {nvars}")
        self.nvars = nvars
        self.terms: Dict[Exponent, int] = {}
        for exps, coefficient in (terms or {}).items():
            exps = tuple(exps)
            require(len(exps) == nvars, f"exponent {exps} has length != {nvars}")
            require(all(e >= 0 for e in exps), f"negative exponent in {exps}")
            if coefficient:
                self.terms[exps] = self.terms.get(exps, 0) + int(coefficient)
                if not self.terms[exps]:
                    del self.terms[exps]

    @classmethod
    def _trusted(cls, nvars: int, terms: Dict[Exponent, int]) -> SparsePoly:
        poly = cls.__new__(cls)
        poly.nvars = nvars
        poly.terms = terms
        return poly

    @classmethod
    def constant(cls, nvars: int, value: int) -> SparsePoly:
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def variable(cls, nvars: int, index: int) -> SparsePoly:
        """The variable with 0-based ``index``."""
        require(0 <= index < nvars, f"variable index {index} out of range for {nvars}")
        exps = [0] * nvars
        exps[index] = 1
        return cls(nvars, {tuple(exps): 1})

    @classmethod
    def linear(cls, coefficients: Sequence[int]) -> SparsePoly:
        """sum_i coefficients[i] * v_i."""
        nvars = len(coefficients)
        terms = {}
        for index, coefficient in enumerate(coefficients):
            exps = [0] * nvars
            exps[index] = 1
            terms[tuple(exps)] = coefficient
        return cls(nvars, terms)

    def _check(self, other: SparsePoly) -> None:
        if not isinstance(other, SparsePoly):
            raise ContractViolation(f"expected SparsePoly, got {type(other).__name__}")
        require(
            other.nvars == self.nvars,
            f"variable count mismatch: {self.nvars} != {other.nvars}",
        )

    def __add__(self, other: SparsePoly) -> SparsePoly:
        self._check(other)
        terms = dict(self.terms)
        for exps, coefficient in other.terms.items():
            total = terms.get(exps, 0) + coefficient
            if total:
                terms[exps] = total
            else:
                terms.pop(exps, None)
        return SparsePoly._trusted(self.nvars, terms)

    def __neg__(self) -> SparsePoly:
        return SparsePoly._trusted(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: SparsePoly) -> SparsePoly:
        return self + (-other)

    def __mul__(self, other: Union[SparsePoly, int]) -> SparsePoly:
        if isinstance(other, int):
            if not other:
                return SparsePoly(self.nvars)
            return SparsePoly._trusted(self.nvars, {e: c * other for e, c in self.terms.items()})
        self._check(other)
        terms: Dict[Exponent, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                terms[exps] = terms.get(exps, 0) + c1 * c2
        return SparsePoly._trusted(self.nvars, {e: c for e, c in terms.items() if c})

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> SparsePoly:
        require(exponent >= 0, "negative polynomial power")
        result = SparsePoly.constant(self.nvars, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __iter__(self) -> Iterator[Tuple[Exponent, int]]:
        return iter(sorted(self.terms.items(), reverse=True))

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, exps: Sequence[int]) -> int:
        exps = tuple(exps)
        require(len(exps) == self.nvars, f"exponent {exps} has length != {self.nvars}")
        return self.terms.get(exps, 0)

    def support(self) -> frozenset:
        return frozenset(self.terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degrees = {sum(e) for e in self.terms}
        if degree is not None:
            return degrees <= {degree}
        return len(degrees) <= 1

    def derivative(self, index: int, times: int = 1) -> SparsePoly:
        """The ``times``-fold partial derivative in the 0-based variable ``index``."""
        require(0 <= index < self.nvars, f"variable index {index} out of range")
        terms: Dict[Exponent, int] = {}
        for exps, coefficient in self.terms.items():
            power = exps[index]
            if power < times:
                continue
            falling = math.perm(power, times)
            lowered = list(exps)
            lowered[index] = power - times
            terms[tuple(lowered)] = terms.get(tuple(lowered), 0) + coefficient * falling
        return SparsePoly(self.nvars, terms)

    def evaluate(self, values: Sequence, field: Field | None = None):
        """Value at ``values``; integers are coerced through ``field`` (QQ by default)."""
        require(len(values) == self.nvars, f"need {self.nvars} values, got {len(values)}")
        field = field or RationalField()
        points = [field.coerce(v) for v in values]
        total = field.zero
        for exps, coefficient in self.terms.items():
            term = field.coerce(coefficient)
            for point, power in zip(points, exps):
                if power:
                    term = term * point**power
            total = total + term
        return total

    def to_json(self) -> list:
        return [[list(exps), coefficient] for exps, coefficient in self]

    def __repr__(self):
        if not self.terms:
            return "0"
        pieces = []
        for exps, coefficient in self:
            monomial = "*".join(
                f"v{i + 1}^{e}" if e > 1 else f"v{i + 1}" for i, e in enumerate(exps) if e
            )
            if not monomial:
                pieces.append(str(coefficient))
            elif coefficient == 1:
                pieces.append(monomial)
            elif coefficient == -1:
                pieces.append(f"-{monomial}")
            else:
                pieces.append(f"{coefficient}*{monomial}")
        return " + ".join(pieces).replace("+ -", "- ")


def poly_add(a: SparsePoly, b: SparsePoly) -> SparsePoly:
    return a + b


def poly_mul(a: SparsePoly, b: SparsePoly) -> SparsePoly:
    return a * b


def poly_coef(a: SparsePoly, exps: Sequence[int]) -> int:
    return a.coefficient(exps)


def poly_pow(a: SparsePoly, exponent: int) -> SparsePoly:
    return a**exponent


def poly_product(nvars: int, factors: Iterable[SparsePoly]) -> SparsePoly:
    result = SparsePoly.constant(nvars, 1)
    for factor in factors:
        result = result * factor
    return result


def exact_integer(value: Fraction, what: str) -> int:
    """Return ``value`` as an int, or fail loudly if it is not integral."""
    if value.denominator != 1:
        raise InternalConsistencyError(f"{what} is not an integer: {value}")
    return value.numerator
