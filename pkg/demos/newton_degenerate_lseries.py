"""Walkthrough: exact L-series of a Newton-degenerate polynomial.

The polynomial f(x, y) = x^2 y - x on the affine plane is neither convenient
nor nondegenerate for its Newton polyhedron, so volume-based degree formulas
do not apply -- but the sums themselves are easy to enumerate exactly.  This
script computes S_1..S_6 over F_3 and F_5, reconstructs the L-series as a
certified rational function, and confirms the geometric-series shape
L = 1/(1 - q t).
"""

from expsumlab import (VarietySpec, build_field, exp_power_sums,
                       log_derivative_check, pade_reconstruct,
                       power_sum_table)
from expsumlab import lfun

f = VarietySpec.affine_space(2, {(2, 1): 1, (1, 0): -1})  # x^2 y - x

for p in (3, 5):
    base = build_field(p, 1)
    print(f"== F_{p}: S_m for f = x^2 y - x on the plane ==")
    seq = power_sum_table(f, base, 6)[0]
    for m in range(1, 7):
        s = seq[m]
        print(f"  S_{m} = {s.coords[0]}   (expected q^m = {p ** m})")
        assert s.coords[0] == p ** m and all(c == 0 for c in s.coords[1:])

    series = exp_power_sums(seq)
    L = pade_reconstruct(series, 0, 1)
    q_coeff = [int(c.as_rational()) for c in L.Q]
    print(f"  L = 1 / (1 {q_coeff[1]:+d} t), certified through order "
          f"{L.certified_order}")
    print(f"  degree = {lfun.degree(L)}, total degree = {lfun.total_degree(L)}")
    assert log_derivative_check(L, seq)
    print("  logarithmic-derivative identity holds\n")
