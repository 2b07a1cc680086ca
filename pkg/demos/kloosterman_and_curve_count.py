"""Walkthrough: Kloosterman sums against the curve Euler-characteristic count.

f(x) = x + 1/x on the punctured line.  The topological count
2g + c + m + d - 2 (genus 0, no extra punctures, two poles, degree 2)
predicts degree 2; the enumerated L-series is a certified rational function
of total degree 2.  In the exp(sum S_m t^m / m) normalization the sums land
in the numerator (L is a polynomial), so we compare degree magnitudes.
"""

from expsumlab import (CurveSpec, VarietySpec, build_field, curve_degree,
                       exp_power_sums, power_sum_table, reconstruct_auto,
                       scaled_degree_check)
from expsumlab import lfun

base = build_field(5, 1)
f = VarietySpec.torus(1, {(1,): 1, (-1,): 1})  # x + 1/x

seq = power_sum_table(f, base, 6)[0]
print("Kloosterman sums over F_5 (coordinates in 1, z, z^2, z^3):")
for m in range(1, 7):
    print(f"  S_{m} = {list(seq[m].coords)}")

L = reconstruct_auto(exp_power_sums(seq))
print(f"\ncertified L-series: deg P = {len(L.P) - 1}, deg Q = {len(L.Q) - 1}")
print(f"degree = {lfun.degree(L)}, total degree = {lfun.total_degree(L)}")

predicted = curve_degree(CurveSpec(g=0, c=0, m=2, d=2))
print(f"curve count 2g + c + m + d - 2 = {predicted}")
assert abs(lfun.degree(L)) == predicted == lfun.total_degree(L)

print("\nscale invariance: degrees of L for c*f match those for f")
for c in (2, 3, 4):
    rep = scaled_degree_check(f, base, c, 6)
    print(f"  c = {c}: degrees equal: {rep.degree_equal}, "
          f"twist identity: {rep.twist_holds}")
    assert rep.passed
