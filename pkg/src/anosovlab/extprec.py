"""Extended-precision scalars, 2-vectors, 2x2 matrices and mod-1 conventions.

All arithmetic is MPFR-backed (via gmpy2) at a single process-wide working
precision, 113 mantissa bits by default (IEEE binary128 equivalent).  MPFR
guarantees correctly rounded basic operations and transcendentals, which is
far inside the 4-ulp budget the difference-quotient experiments need.

Every value in a run must carry the working precision; ``real()`` rejects
foreign-precision inputs so a mid-run precision switch fails fast instead of
silently mixing mantissa lengths.
"""

from __future__ import annotations

import contextlib
from dataclasses import dataclass

import gmpy2
from gmpy2 import mpfr

Real = mpfr

DEFAULT_PRECISION = 113
MIN_PRECISION = 113


class DomainError(ValueError):
    """Input outside the documented domain of an operation."""


class DegenerateVectorError(ValueError):
    """A direction was requested from a zero vector."""


class PrecisionMixError(ValueError):
    """A value built at a different working precision leaked into a run."""


class ParameterError(ValueError):
    """Invalid configuration parameter (map parameters, orbit lengths, ...)."""


def set_precision(bits: int) -> None:
    """Set the working precision in mantissa bits (>= 113)."""
    if bits < MIN_PRECISION:
        raise ParameterError(f"working precision must be >= {MIN_PRECISION} bits, got {bits}")
    gmpy2.get_context().precision = bits


def get_precision() -> int:
    return gmpy2.get_context().precision


@contextlib.contextmanager
def precision(bits: int):
    """Temporarily switch the working precision (tests, oracle evaluations)."""
    old = get_precision()
    set_precision(bits)
    try:
        yield
    finally:
        gmpy2.get_context().precision = old


def real(x) -> Real:
    """Coerce x to an mpfr at the working precision.

    Accepts int, float, str and mpz exactly as mpfr() does.  An mpfr input
    whose precision differs from the working precision raises
    PrecisionMixError: that only happens when the precision was changed while
    values from the old setting are still alive.
    """
    if isinstance(x, mpfr):
        if x.precision != get_precision():
            raise PrecisionMixError(
                f"value has {x.precision}-bit precision, working precision is {get_precision()}"
            )
        return x
    return mpfr(x)


def ulp_scale(shift: int) -> Real:
    """2**(shift - precision); tolerance unit that tracks the working precision."""
    return gmpy2.exp2(mpfr(shift - get_precision()))


def mod1(x: Real) -> Real:
    """Wrap x to the canonical torus representative in [0, 1).

    The result is correctly rounded on the circle: values within half an ulp
    below an integer wrap to 0 rather than to an unrepresentable 1 - eps.
    """
    if not gmpy2.is_finite(x):
        raise DomainError(f"mod1 requires a finite argument, got {x}")
    r = x - gmpy2.floor(x)
    if r >= 1:
        r = r - 1
    if r < 0:
        r = r + 1
    return r


def torus_delta(a: Real, b: Real) -> Real:
    """Minimal signed displacement d in [-1/2, 1/2) with b + d = a on the circle."""
    for v in (a, b):
        if not (0 <= v < 1):
            raise DomainError(f"torus_delta arguments must lie in [0,1), got {v}")
    half = mpfr("0.5")
    d = mod1(a - b + half) - half
    return d


@dataclass(frozen=True)
class Vec2:
    """Immutable tangent-space vector."""

    x: Real
    y: Real

    def __add__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "Vec2":
        return Vec2(-self.x, -self.y)

    def scale(self, s: Real) -> "Vec2":
        return Vec2(self.x * s, self.y * s)

    def dot(self, other: "Vec2") -> Real:
        return self.x * other.x + self.y * other.y

    def cross(self, other: "Vec2") -> Real:
        """Signed area x1*y2 - y1*x2; |cross| of unit vectors is sin of the angle."""
        return self.x * other.y - self.y * other.x

    def norm(self) -> Real:
        return gmpy2.sqrt(self.x * self.x + self.y * self.y)


def normalize(v: Vec2) -> tuple[Vec2, Real]:
    """Return (v / |v|, |v|).  Raises DegenerateVectorError on the zero vector."""
    n = v.norm()
    if n == 0:
        raise DegenerateVectorError("cannot normalize the zero vector")
    return Vec2(v.x / n, v.y / n), n


@dataclass(frozen=True)
class Mat2:
    """Immutable 2x2 matrix (a11 a12 / a21 a22)."""

    a11: Real
    a12: Real
    a21: Real
    a22: Real

    def matvec(self, v: Vec2) -> Vec2:
        return Vec2(self.a11 * v.x + self.a12 * v.y, self.a21 * v.x + self.a22 * v.y)

    def matmul(self, other: "Mat2") -> "Mat2":
        return Mat2(
            self.a11 * other.a11 + self.a12 * other.a21,
            self.a11 * other.a12 + self.a12 * other.a22,
            self.a21 * other.a11 + self.a22 * other.a21,
            self.a21 * other.a12 + self.a22 * other.a22,
        )

    def det(self) -> Real:
        return self.a11 * self.a22 - self.a12 * self.a21

    def trace(self) -> Real:
        return self.a11 + self.a22

    def adjugate(self) -> "Mat2":
        """(a22 -a12 / -a21 a11); equals the inverse for det = 1 matrices."""
        return Mat2(self.a22, -self.a12, -self.a21, self.a11)


def format_sci(x, sig: int = 36) -> str:
    """Deterministic scientific notation with exactly `sig` significant digits.

    gmpy2's own __format__ is unreliable across versions, so this goes through
    gmpy2.digits, which is round-to-nearest and version-stable.
    """
    if isinstance(x, (int,)):
        x = mpfr(x)
    if gmpy2.is_nan(x):
        return "nan"
    if not gmpy2.is_finite(x):
        return "-inf" if x < 0 else "inf"
    if x == 0:
        return "0." + "0" * (sig - 1) + "e+00"
    digits, exp, _ = gmpy2.digits(x, 10, sig)
    sign = ""
    if digits.startswith("-"):
        sign = "-"
        digits = digits[1:]
    digits = digits.ljust(sig, "0")
    e = exp - 1  # digits encode 0.d1d2... * 10**exp
    return f"{sign}{digits[0]}.{digits[1:]}e{e:+03d}"


# Importing the package establishes the default working precision; gmpy2's
# own default (53 bits) must never leak into a run.
set_precision(DEFAULT_PRECISION)
