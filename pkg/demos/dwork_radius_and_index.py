"""Walkthrough: radius-of-convergence profiles and the annulus index.

Everything is tracked as exact rational valuations: weight lambda means the
circle |x| = p^(-lambda), and r(lambda) = -log_p R is the convergence
exponent of the rank-one operator d/dx - g at that circle.

Three operators:
  * the trivial operator d/dx: maximal convergence, r = lambda;
  * the exponential-kernel operator d/dx - pi/x^2: r = 2 lambda, the
    hallmark square-shrinking of the disk of convergence;
  * its twist by a regular-singular factor c/x with c a p-adic integer:
    the smaller radius wins, the profile slope stays 2 at both ends, and
    the annulus index (difference of endpoint slopes) cancels to 0.
"""

from fractions import Fraction

from expsumlab import (PiNumber, RationalFunctionPi, dwork_twist,
                       radius_profile, robba_index, symbol_sequence)

p = 3
pi = PiNumber.pi(p)

print("symbols of D^s for d/dx - pi/x^2 (numerators over x^(2s)):")
g = RationalFunctionPi.monomial_ratio(p, pi, 2)
for s, b in enumerate(symbol_sequence(g, 3)):
    print(f"  b_{s}: num = {b.num}, den degree = {len(b.den) - 1}")

for name, operator in (
        ("trivial d/dx", RationalFunctionPi.zero(p)),
        ("d/dx - pi/x^2", g),
        ("twist by (1/2)/x", dwork_twist(
            RationalFunctionPi.monomial_ratio(p, Fraction(1, 2), 1)))):
    prof = radius_profile(operator)
    print(f"\n{name}:")
    for sample in prof.samples:
        tag = "stable" if sample.stabilized else "NOT STABILIZED"
        print(f"  lambda = {sample.lam}:  r = {sample.r}   [{tag}, "
              f"{sample.method}]")
    print(f"  endpoint slopes (outer, inner): {prof.endpoint_slopes}")

prof = radius_profile(dwork_twist(
    RationalFunctionPi.monomial_ratio(p, Fraction(1, 2), 1)))
print(f"\nannulus index of the twist: {robba_index(prof)} "
      "(slopes 2 - 2 cancel)")
