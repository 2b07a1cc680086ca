"""Walkthrough: degree predictions from topology and combinatorics.

Three prediction routes on display:
  * Milnor-fiber Betti numbers of the A3 and B3 plane arrangements give the
    L-series degree and a total-degree bound by pure arithmetic;
  * the Chern-series coefficient on projective space and the Newton-polytope
    volume cross-check each other on the degree-(n+1) Fermat-type family,
    where they jointly disagree with the closed form n^n (n+1) quoted for
    the same family (the discrepancy is flagged, neither value asserted);
  * small power sums of the actual arrangement polynomials over F_5 anchor
    the enumeration side at desk scale (the full arrangement L-series needs
    about fifty levels over q^(3m) points and is out of reach on purpose).
"""

from expsumlab import (BettiSpec, VarietySpec, betti_degree, build_field,
                       fermat_discrepancy_report, multiply_terms,
                       power_sum_table)

print("== Milnor-fiber arithmetic ==")
for name, betti in (("A3", (7, 18)), ("B3", (8, 79))):
    degree, bound = betti_degree(BettiSpec(3, betti))
    print(f"  {name}: reduced Betti numbers {betti} -> degree {degree}, "
          f"total degree <= {bound}")

print("\n== Chern coefficient vs Newton volume (Fermat-type family) ==")
for n in (1, 2, 3):
    rep = fermat_discrepancy_report(n)
    flag = "  <-- DISCREPANT" if rep["discrepant"] else ""
    print(f"  n = {n}: chern {rep['chern_value']}, newton "
          f"{rep['newton_value']}, closed form {rep['alternative_value']}"
          f"{flag}")

print("\n== enumeration anchor: arrangement sums over F_5 ==")
x, y, z = {(1, 0, 0): 1}, {(0, 1, 0): 1}, {(0, 0, 1): 1}
a3 = {(0, 0, 0): 1}
for factor in (x, y, z,
               {(1, 0, 0): 1, (0, 1, 0): -1},
               {(0, 1, 0): 1, (0, 0, 1): -1},
               {(0, 0, 1): 1, (1, 0, 0): -1}):
    a3 = multiply_terms(a3, factor)
base = build_field(5, 1)
seq = power_sum_table(VarietySpec.affine_space(3, a3), base, 2)[0]
print(f"  A3 = xyz(x-y)(y-z)(z-x): S_1 = {list(seq[1].coords)}, "
      f"S_2 = {list(seq[2].coords)}")
