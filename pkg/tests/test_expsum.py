import itertools

import pytest

from expsumlab.expsum import (BudgetExceededError, PowerSumSequence,
                              VarietySpec, count_points, multiply_terms,
                              power_sum, power_sum_naive, power_sum_table,
                              scaled_degree_check, sym_trace)
from expsumlab.ffield import (CyclotomicInt, FieldCtx, additive_character,
                              build_field, galois_twist, trace_to_prime)

F2 = build_field(2, 1)
F3 = build_field(3, 1)
F5 = build_field(5, 1)

NEWTON_DEGENERATE = VarietySpec.affine_space(2, {(2, 1): 1, (1, 0): -1})
KLOOSTERMAN = VarietySpec.torus(1, {(1,): 1, (-1,): 1})
TORUS_LINEAR = VarietySpec.torus(1, {(1,): 1})
AFFINE_LINEAR = VarietySpec.affine_space(1, {(1,): 1})


def brute_sum(base, m, dim, f, torus=False):
    """Third route: plain FqElem point loop with a Python callable."""
    tower = build_field(base.p, base.n * m)
    els = [x for x in tower.elements() if not (torus and x.is_zero())]
    acc = CyclotomicInt.zero(base.p)
    for point in itertools.product(els, repeat=dim):
        acc = acc + additive_character(base.p, trace_to_prime(f(*point)))
    return acc


# -- count_points ------------------------------------------------------------------

def test_count_points_examples():
    assert count_points(VarietySpec.affine_space(2, {}), F3, 1) == 9
    assert count_points(VarietySpec.torus(1, {}), build_field(2, 2), 1) == 3
    assert count_points(VarietySpec.sl2([1]), F2, 1) == 6
    assert count_points(VarietySpec.sl2([1]), F2, 8) == 2 ** 24 - 2 ** 8
    # complement of {x = 0} in A^1 is the torus
    vc = VarietySpec.hypersurface_complement(1, {(1,): 1}, {(1,): 1}, 0)
    assert count_points(vc, F5, 2) == 24


def test_count_points_rejects_bad_level():
    with pytest.raises(ValueError):
        count_points(AFFINE_LINEAR, F3, 0)


# -- sym_trace ----------------------------------------------------------------------

def test_sym_trace_examples():
    t = F5.from_int(3)
    s = sym_trace(t, 1)
    assert s[0] == F5.one() and s[1] == t
    # identity matrix over F_5: trace 2, dim Sym^2 = 3
    s = sym_trace(F5.from_int(2), 2)
    assert s[2] == F5.from_int(3)
    with pytest.raises(ValueError):
        sym_trace(t, -1)


def test_sym_trace_matches_matrix_powers():
    # independent route: for det-1 eigenvalues a, b the complete homogeneous
    # sums satisfy Tr(A^n) = s_n - s_(n-2), checkable from literal matrix
    # powers without eigenvalues
    p = 7
    ctx = build_field(p, 1)

    def matmul(A, B):
        return [[sum(A[i][k] * B[k][j] for k in range(2)) % p
                 for j in range(2)] for i in range(2)]

    for a, b, c in itertools.product(range(p), repeat=3):
        if (-b * c) % p != 1:  # force det([[a, b], [c, 0]]) = 1
            continue
        A = [[a, b], [c, 0]]
        s = sym_trace(ctx.from_int(a), 4)
        An = A
        for n in (2, 3, 4):
            An = matmul(An, A)
            pn = ctx.from_int((An[0][0] + An[1][1]) % p)
            assert pn == s[n] - s[n - 2], (A, n)


# -- power sums ---------------------------------------------------------------------

def test_newton_degenerate_power_sums():
    for m in range(1, 5):
        assert power_sum(NEWTON_DEGENERATE, F3, m) == \
            CyclotomicInt.from_int(3, 3 ** m)


def test_trivial_power_sums():
    for m in (1, 2, 3):
        assert power_sum(AFFINE_LINEAR, F5, m).is_zero()
        assert power_sum(TORUS_LINEAR, F5, m) == CyclotomicInt.from_int(5, -1)


def test_sl2_trace_sum_over_f2():
    # six matrices: four with trace 0, two with trace 1
    assert power_sum(VarietySpec.sl2([1]), F2, 1) == \
        CyclotomicInt.from_int(2, 2)


def test_kloosterman_first_sum():
    # x + 1/x over F_5: values 2, 0, 0, 3 at x = 1..4
    assert power_sum(KLOOSTERMAN, F5, 1) == CyclotomicInt(5, [2, 0, 1, 1])


@pytest.mark.parametrize("v,base,m", [
    (NEWTON_DEGENERATE, F3, 1),
    (NEWTON_DEGENERATE, F3, 2),
    (NEWTON_DEGENERATE, F5, 1),
    (KLOOSTERMAN, F5, 1),
    (KLOOSTERMAN, F5, 2),
    (TORUS_LINEAR, build_field(2, 2), 1),
    (VarietySpec.sl2([1]), F2, 1),
    (VarietySpec.sl2([1]), F2, 2),
    (VarietySpec.sl2([1, 1]), F3, 1),
    (VarietySpec.hypersurface_complement(
        1, {(2,): 1}, {(1,): 1, (0,): -1}, 1), F3, 2),
])
def test_fast_path_matches_naive(v, base, m):
    assert power_sum(v, base, m) == power_sum_naive(v, base, m)


def test_fast_path_matches_callable_brute_force():
    got = power_sum(NEWTON_DEGENERATE, F3, 2)
    assert got == brute_sum(F3, 2, 2, lambda x, y: x * x * y - x)
    got = power_sum(KLOOSTERMAN, F5, 1)
    assert got == brute_sum(F5, 1, 1, lambda x: x + x.inverse(), torus=True)


def test_power_sum_table_examples():
    tab = power_sum_table(NEWTON_DEGENERATE, F3, 4)[0]
    assert [s.coords[0] for s in tab.values] == [3, 9, 27, 81]
    zero_f = VarietySpec.affine_space(1, {})
    tab = power_sum_table(zero_f, F3, 2)[0]
    assert [s.coords[0] for s in tab.values] == [3, 9]  # point counts
    tab = power_sum_table(TORUS_LINEAR, F3, 3)[0]
    assert [s.coords[0] for s in tab.values] == [-1, -1, -1]
    assert [p["m"] for p in tab.progress] == [1, 2, 3]


def test_constant_function_gives_point_counts():
    for v in (NEWTON_DEGENERATE, KLOOSTERMAN, VarietySpec.sl2([1])):
        zeroed = v.scaled(0) if v.kind == "sl2" else VarietySpec(
            v.kind, dim=v.dim, terms=())
        base = F2 if v.kind == "sl2" else F3
        for m in (1, 2):
            assert power_sum(zeroed, base, m) == CyclotomicInt.from_int(
                base.p, count_points(v, base, m))


def test_affine_line_decomposes_as_origin_plus_torus():
    # A^1 = {0} + G_m pointwise for several f
    for terms in ({(1,): 1}, {(2,): 1, (1,): 3}, {(3,): 2, (0,): 1}):
        va = VarietySpec.affine_space(1, terms)
        vt = VarietySpec.torus(1, terms)
        f0 = terms.get((0,), 0)
        for m in (1, 2):
            lhs = power_sum(va, F5, m)
            # the origin contributes psi(Tr f(0)) = psi(m * f0) at level m
            rhs = power_sum(vt, F5, m) + additive_character(5, m * f0)
            assert lhs == rhs


def test_galois_equivariance():
    for v, base in ((NEWTON_DEGENERATE, F3), (KLOOSTERMAN, F5)):
        s1 = power_sum(v, base, 1)
        for u in range(2, base.p):
            assert power_sum(v.scaled(u), base, 1) == galois_twist(s1, u)


def test_determinism_under_partitioning(monkeypatch):
    import expsumlab.expsum as es
    want = power_sum(NEWTON_DEGENERATE, F3, 3)
    monkeypatch.setattr(es, "_BLOCK", 7)
    assert power_sum(NEWTON_DEGENERATE, F3, 3) == want
    assert power_sum(NEWTON_DEGENERATE, F3, 3, threads=3) == want


def test_modulus_independence_of_sums():
    # same S_m when the level field uses a different irreducible modulus
    alt = FieldCtx(3, 2, (2, 1, 1))  # x^2 + x + 2, not the lex-first choice
    assert alt != build_field(3, 2)
    for v in (NEWTON_DEGENERATE, TORUS_LINEAR):
        assert power_sum(v, F3, 2, tower=alt) == power_sum(v, F3, 2)
        assert power_sum_naive(v, F3, 2, tower=alt) == power_sum_naive(v, F3, 2)


def test_base_extension_tower():
    # base F_4 inside F_16: linear torus sums are -1 at every level
    f4 = build_field(2, 2)
    for m in (1, 2):
        got = power_sum(TORUS_LINEAR, f4, m)
        assert got == CyclotomicInt.from_int(2, -1)
        assert got == power_sum_naive(TORUS_LINEAR, f4, m)
    # a function with a genuine F_4 coefficient
    alpha = f4.element([0, 1])
    v = VarietySpec.torus(1, {(1,): alpha})
    assert power_sum(v, f4, 2) == power_sum_naive(v, f4, 2)


def test_conjugate_absolute_value_bound():
    # numeric sanity: all Galois conjugates of S_m are bounded by #X(k_m)
    import cmath
    v, base, m = KLOOSTERMAN, F5, 2
    s = power_sum(v, base, m)
    bound = count_points(v, base, m)
    for u in range(1, 5):
        tw = galois_twist(s, u)
        z = cmath.exp(2j * cmath.pi / 5)
        val = sum(c * z ** i for i, c in enumerate(tw.coords))
        assert abs(val) <= bound + 1e-6


def test_budget_refusal():
    with pytest.raises(BudgetExceededError):
        power_sum_table(NEWTON_DEGENERATE, F3, 12, budget=1000)
    with pytest.raises(BudgetExceededError):
        power_sum(NEWTON_DEGENERATE, F5, 6, budget=10 ** 6)


def test_scaled_pass_matches_separate_passes():
    tabs = power_sum_table(KLOOSTERMAN, F5, 3, scales=(1, 2, 3))
    for idx, c in ((1, 2), (2, 3)):
        solo = power_sum_table(KLOOSTERMAN.scaled(c), F5, 3)[0]
        assert tabs[idx].values == solo.values


def test_scaled_degree_check_report():
    rep = scaled_degree_check(KLOOSTERMAN, F5, 2, 6)
    assert rep.degree_equal and rep.total_degree_equal
    assert rep.twist_checked and rep.twist_holds and rep.passed
    # c = 1 reproduces the identical L-series
    rep1 = scaled_degree_check(KLOOSTERMAN, F5, 1, 6)
    assert rep1.lseries.P == rep1.lseries_scaled.P
    assert rep1.lseries.Q == rep1.lseries_scaled.Q
    # torus-linear example: both degrees -1, totals 1
    from expsumlab import lfun
    rep = scaled_degree_check(TORUS_LINEAR, F5, 2, 5)
    assert lfun.degree(rep.lseries) == lfun.degree(rep.lseries_scaled) == -1
    assert lfun.total_degree(rep.lseries) == 1
    with pytest.raises(ValueError):
        scaled_degree_check(TORUS_LINEAR, F5, 0, 5)


def test_spec_validation_errors():
    with pytest.raises(ValueError):
        VarietySpec.affine_space(1, {(-1,): 1})
    with pytest.raises(ValueError):
        VarietySpec("weird", dim=1)
    with pytest.raises(ValueError):
        VarietySpec.hypersurface_complement(1, {(1,): 1}, {}, 1)
    with pytest.raises(ValueError):
        power_sum_table(KLOOSTERMAN, F5, 0)


def test_empty_point_complement():
    # h = 1 never vanishes: the dim-0 complement is a single point, f = 0
    vc = VarietySpec.hypersurface_complement(0, {(): 0}, {(): 1}, 1)
    for m in (1, 2):
        assert power_sum(vc, F3, m) == CyclotomicInt.one(3)


def test_multiply_terms():
    # (x - y)(x + y) = x^2 - y^2
    a = {(1, 0): 1, (0, 1): -1}
    b = {(1, 0): 1, (0, 1): 1}
    assert multiply_terms(a, b) == {(2, 0): 1, (0, 2): -1}


def test_variety_json_round_trip():
    for v in (NEWTON_DEGENERATE, KLOOSTERMAN, VarietySpec.sl2([1, 2]),
              VarietySpec.hypersurface_complement(
                  1, {(2,): 1}, {(1,): 1, (0,): -1}, 2)):
        assert VarietySpec.from_json(v.to_json()) == v
    seq = power_sum_table(KLOOSTERMAN, F5, 3)[0]
    assert PowerSumSequence.from_json(seq.to_json()).values == seq.values
