"""
Exact decimals
==============

Every number in the toolkit is an ``ExactDec``: an integer mantissa with a
power-of-ten scale.  Nothing is ever rounded.
"""

# %%
from fractions import Fraction

from dnnt import dec
from dnnt.exactnum import dec_activation, num_digits, slp_mul_activation

a, b = dec("2.55"), dec("-0.125")
print(a + b, a * b, a - b)
print(Fraction(str(a * b)) == Fraction("2.55") * Fraction("-0.125"))

# %% [markdown]
# The two activations used by the straight-line program construction.
# ``dec_activation`` moves the decimal point in front of an integer and
# ``slp_mul_activation`` multiplies the integer part by the fractional digits
# read as an integer.

# %%
print(dec_activation(dec(138)))  # 0.138
print(slp_mul_activation(dec("2.55")))  # 2 * 55 = 110

# %% [markdown]
# Together they multiply: ``slp_mul(b + dec(a)) == b * a`` as long as ``a`` is
# positive and has no trailing zero.  A trailing zero is lost by the shift.

# %%
for b_val, a_val in ((7, 13), (7, 130), (123456789, 987654321)):
    got = slp_mul_activation(dec(b_val) + dec_activation(dec(a_val)))
    print(b_val, a_val, got, got == b_val * a_val)

# %% [markdown]
# Values far beyond the interpreter's default int-to-string limit stay exact.

# %%
big = dec(3)
for _ in range(13):
    big = big * big
print("digits of 3^(2^13):", num_digits(big.mantissa))
