"""Exact finite-decimal numbers.

Every value that flows through a network is an :class:`ExactDec`: an
arbitrary-precision integer mantissa scaled by a power of ten.  Sums,
differences and products of finite decimals are finite decimals, so the
whole evaluation pipeline stays exact.  Division is deliberately absent.

The module also hosts the digit-level helpers used by the two
straight-line-program activations (:func:`slp_mul_activation` and
:func:`dec_activation`).
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

from .errors import DecimalFormatError, NonIntegerError, OutOfRangeError

__all__ = [
    "ExactDec",
    "dec",
    "int_frac_split",
    "frac_len",
    "int_digit_count",
    "slp_mul_activation",
    "dec_activation",
    "int_to_str",
    "num_digits",
]

_DECIMAL_RE = re.compile(r"^([+-]?)(\d+)(?:\.(\d+))?$")
_LOG10_2 = math.log10(2)
# str() on ints above this size is slow (and capped by the interpreter).
_STR_CHUNK_DIGITS = 2000


def num_digits(n: int) -> int:
    """Number of decimal digits of ``|n|``; ``num_digits(0) == 1``."""
    n = abs(n)
    if n < 10:
        return 1
    est = int(n.bit_length() * _LOG10_2)
    # est is exact or one short.
    if n >= 10**est:
        est += 1
    return est


def int_to_str(n: int) -> str:
    """``str(n)`` without the interpreter's int-to-str digit limit."""
    if n < 0:
        return "-" + int_to_str(-n)
    if n.bit_length() < 6000:
        return str(n)
    width = num_digits(n)
    half = width // 2
    hi, lo = divmod(n, 10**half)
    return int_to_str(hi) + int_to_str(lo).rjust(half, "0")


def _str_to_int(digits: str) -> int:
    if len(digits) <= _STR_CHUNK_DIGITS:
        return int(digits)
    half = len(digits) // 2
    return _str_to_int(digits[:-half]) * 10**half + _str_to_int(digits[-half:])


def _strip(mantissa: int, scale: int) -> tuple[int, int]:
    if mantissa == 0:
        return 0, 0
    while scale > 0:
        q, r = divmod(mantissa, 10)
        if r:
            break
        mantissa = q
        scale -= 1
    return mantissa, scale


class ExactDec:
    """Immutable exact decimal ``mantissa * 10**(-scale)`` in canonical form.

    Canonical form: when ``scale > 0`` the mantissa is not a multiple of ten,
    and zero is ``(0, 0)``.  Plain ``int`` operands are accepted wherever an
    ``ExactDec`` is; floats are rejected.
    """

    __slots__ = ("mantissa", "scale")

    def __init__(self, mantissa: int = 0, scale: int = 0):
        if not isinstance(mantissa, int) or isinstance(mantissa, bool):
            raise TypeError(f"mantissa must be int, got {type(mantissa).__name__}")
        if scale < 0:
            raise ValueError("scale must be non-negative")
        if scale:
            mantissa, scale = _strip(mantissa, scale)
        object.__setattr__(self, "mantissa", mantissa)
        object.__setattr__(self, "scale", scale)

    @classmethod
    def _raw(cls, mantissa: int, scale: int) -> "ExactDec":
        # Caller guarantees canonical form.
        obj = object.__new__(cls)
        object.__setattr__(obj, "mantissa", mantissa)
        object.__setattr__(obj, "scale", scale)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("ExactDec is immutable")

    def __reduce__(self):
        return (ExactDec, (self.mantissa, self.scale))

    # construction ------------------------------------------------------

    @classmethod
    def parse(cls, text: str) -> "ExactDec":
        """Parse a plain decimal string such as ``"-3.25"`` or ``"110"``."""
        if not isinstance(text, str):
            raise DecimalFormatError(f"expected a string, got {type(text).__name__}")
        m = _DECIMAL_RE.match(text.strip())
        if m is None:
            raise DecimalFormatError(f"not a finite decimal: {text!r}")
        sign, whole, frac = m.groups()
        frac = frac or ""
        mantissa = _str_to_int(whole + frac)
        if sign == "-":
            mantissa = -mantissa
        return cls(mantissa, len(frac))

    @classmethod
    def of(cls, value) -> "ExactDec":
        """Coerce an int, decimal string or ExactDec."""
        if isinstance(value, ExactDec):
            return value
        if isinstance(value, bool):
            raise TypeError("bool is not a number here")
        if isinstance(value, int):
            return cls._raw(value, 0)
        if isinstance(value, str):
            return cls.parse(value)
        if isinstance(value, Fraction):
            den = value.denominator
            k = 0
            while den % 10 == 0:
                den //= 10
                k += 1
            twos = fives = 0
            while den % 2 == 0:
                den //= 2
                twos += 1
            while den % 5 == 0:
                den //= 5
                fives += 1
            if den != 1:
                raise OutOfRangeError(f"{value} has no finite decimal expansion")
            extra = max(twos, fives)
            scale = k + extra
            mantissa = value.numerator * (2 ** (extra - twos)) * (5 ** (extra - fives))
            return cls(mantissa, scale)
        raise TypeError(f"cannot convert {type(value).__name__} to ExactDec")

    # inspection --------------------------------------------------------

    def is_integer(self) -> bool:
        return self.scale == 0

    def to_fraction(self) -> Fraction:
        return Fraction(self.mantissa, 10**self.scale)

    def __int__(self) -> int:
        if self.scale:
            raise NonIntegerError(f"{self} is not an integer")
        return self.mantissa

    def __index__(self) -> int:
        return int(self)

    def __bool__(self) -> bool:
        return self.mantissa != 0

    def __str__(self) -> str:
        if self.scale == 0:
            return int_to_str(self.mantissa)
        sign = "-" if self.mantissa < 0 else ""
        digits = int_to_str(abs(self.mantissa)).rjust(self.scale + 1, "0")
        return f"{sign}{digits[:-self.scale]}.{digits[-self.scale:]}"

    def __repr__(self) -> str:
        if self.mantissa.bit_length() > 256:
            return f"ExactDec(<{num_digits(self.mantissa)} digits>, scale={self.scale})"
        return f"ExactDec('{self}')"

    def __hash__(self) -> int:
        if self.scale == 0:
            return hash(self.mantissa)
        return hash((self.mantissa, self.scale))

    # arithmetic --------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            if self.scale == 0:
                return ExactDec._raw(self.mantissa + other, 0)
            return ExactDec._raw(self.mantissa + other * 10**self.scale, self.scale)
        if not isinstance(other, ExactDec):
            return NotImplemented
        a, sa, b, sb = self.mantissa, self.scale, other.mantissa, other.scale
        if sa == sb:
            if sa == 0:
                return ExactDec._raw(a + b, 0)
            return ExactDec(a + b, sa)
        if sa < sb:
            # larger-scale operand is canonical, so the sum is too
            return ExactDec._raw(a * 10 ** (sb - sa) + b, sb)
        return ExactDec._raw(a + b * 10 ** (sa - sb), sa)

    __radd__ = __add__

    def __neg__(self):
        return ExactDec._raw(-self.mantissa, self.scale)

    def __pos__(self):
        return self

    def __abs__(self):
        return self if self.mantissa >= 0 else -self

    def __sub__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return self + (-other)
        if not isinstance(other, ExactDec):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            if self.scale == 0:
                return ExactDec._raw(self.mantissa * other, 0)
            return ExactDec(self.mantissa * other, self.scale)
        if not isinstance(other, ExactDec):
            return NotImplemented
        scale = self.scale + other.scale
        if scale == 0:
            return ExactDec._raw(self.mantissa * other.mantissa, 0)
        # product of two canonical mantissas can still end in 0 (2 * 5)
        return ExactDec(self.mantissa * other.mantissa, scale)

    __rmul__ = __mul__

    def shift(self, places: int) -> "ExactDec":
        """Multiply by ``10**places`` (``places`` may be negative)."""
        if places >= 0:
            if places <= self.scale:
                return ExactDec._raw(self.mantissa, self.scale - places)
            return ExactDec._raw(self.mantissa * 10 ** (places - self.scale), 0)
        return ExactDec(self.mantissa, self.scale - places)

    def floor(self) -> int:
        if self.scale == 0:
            return self.mantissa
        return self.mantissa // 10**self.scale

    # comparison --------------------------------------------------------

    def _cmp(self, other) -> int:
        if isinstance(other, int) and not isinstance(other, bool):
            other = ExactDec._raw(other, 0)
        elif not isinstance(other, ExactDec):
            return NotImplemented
        a, sa, b, sb = self.mantissa, self.scale, other.mantissa, other.scale
        if sa < sb:
            a *= 10 ** (sb - sa)
        elif sb < sa:
            b *= 10 ** (sa - sb)
        return (a > b) - (a < b)

    def __eq__(self, other):
        if isinstance(other, ExactDec):
            return self.mantissa == other.mantissa and self.scale == other.scale
        if isinstance(other, int) and not isinstance(other, bool):
            return self.scale == 0 and self.mantissa == other
        return NotImplemented

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __lt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c >= 0


ZERO = ExactDec(0)
ONE = ExactDec(1)


def dec(value) -> ExactDec:
    """Shorthand for :meth:`ExactDec.of`."""
    return ExactDec.of(value)


def int_frac_split(a) -> tuple[int, ExactDec]:
    """Split ``a`` into ``(floor(a), a - floor(a))``.

    The fractional part always lies in ``[0, 1)``, also for negative input:
    ``int_frac_split(-1.25) == (-2, 0.75)``.
    """
    a = dec(a)
    if a.scale == 0:
        return a.mantissa, ZERO
    unit = 10**a.scale
    beta, rest = divmod(a.mantissa, unit)
    # rest < unit and rest is not a multiple of 10 (a is canonical)
    return beta, ExactDec._raw(rest, a.scale) if rest else ZERO


def frac_len(lam) -> int:
    """Number of digits after the decimal point of a canonical value in [0, 1)."""
    lam = dec(lam)
    if lam < 0 or lam >= 1:
        raise OutOfRangeError(f"frac_len expects a value in [0, 1), got {lam}")
    return lam.scale


def int_digit_count(a) -> int:
    """Digits of ``|a|`` before the decimal point, for integer ``a`` (0 counts 1)."""
    a = dec(a)
    if a.scale:
        raise NonIntegerError(f"int_digit_count expects an integer, got {a}")
    return num_digits(a.mantissa)


def slp_mul_activation(a) -> ExactDec:
    """``beta * lam * 10**frac_len(lam)`` with ``(beta, lam) = int_frac_split(a)``.

    ``lam * 10**frac_len(lam)`` is the canonical mantissa of ``lam``, so an
    input ``b + 0.xyz`` returns ``b * xyz``.
    """
    beta, lam = int_frac_split(a)
    return ExactDec._raw(beta * lam.mantissa, 0)


def dec_activation(a) -> ExactDec:
    """``a * 10**(-int_digit_count(a))``: 138 becomes 0.138."""
    a = dec(a)
    if a.scale:
        raise NonIntegerError(f"dec_activation expects an integer, got {a}")
    return ExactDec(a.mantissa, num_digits(a.mantissa))
