"""
Exact rational helpers shared by scoring and serialization.
"""
from decimal import Decimal, localcontext
from fractions import Fraction

HALF = Fraction(1, 2)


def to_fraction(value):
    """
    Convert an int, decimal string, Decimal or Fraction to an exact Fraction.

    Floats go through their shortest repr so 2.5 becomes 5/2, not the
    binary approximation.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError('booleans are not weights')
    if isinstance(value, float):
        return Fraction(repr(value))
    if isinstance(value, (int, Decimal)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f'Cannot convert {type(value).__name__} to a rational')


def _terminating_digits(denominator):
    twos = fives = 0
    while denominator % 2 == 0:
        denominator //= 2
        twos += 1
    while denominator % 5 == 0:
        denominator //= 5
        fives += 1
    if denominator != 1:
        return None
    return max(twos, fives)


def format_rational(value):
    """
    Render a rational as the shortest exact decimal string.

    Values whose decimal expansion does not terminate render as "p/q".

    Examples:
        Fraction(9, 2) -> "4.5", Fraction(8) -> "8", Fraction(1, 3) -> "1/3"
    """
    value = Fraction(value)
    digits = _terminating_digits(value.denominator)
    if digits is None:
        return f'{value.numerator}/{value.denominator}'

    with localcontext() as ctx:
        ctx.prec = len(str(abs(value.numerator))) + digits + 2
        exact = Decimal(value.numerator) / Decimal(value.denominator)
        text = format(exact.normalize(), 'f')
    return '0' if text in ('-0', '0') else text


def parse_rational(text):
    """Inverse of format_rational for both "4.5" and "17/6" forms."""
    return Fraction(text)
