"""Point enumeration over F_{q^m} and exact accumulation of character sums.

The fast path encodes field elements by discrete logs (see tables.py) and
runs the enumeration in blocked numpy integer arrays; per block it
histograms the trace of f(x) into p buckets, so the exact sum is
sum_t count[t] * zeta^t with ordinary integer counts.  A naive reference
path (power_sum_naive) evaluates everything with FqElem arithmetic and is
used to cross-check the table-driven path on small inputs.
"""

from __future__ import annotations

import itertools
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .ffield import (CyclotomicInt, FieldCtx, FqElem, additive_character,
                     build_field, galois_twist, trace_to_prime)
from .tables import FieldTables, get_tables

DEFAULT_BUDGET = 10 ** 9
_BLOCK = 1 << 20

AFFINE = "affine"
TORUS = "torus"
COMPLEMENT = "complement"
SL2 = "sl2"


class BudgetExceededError(RuntimeError):
    """Estimated enumeration work exceeds the configured budget."""


def _normalize_terms(terms) -> tuple:
    """Collect {exponent-vector: coefficient} into a canonical sorted tuple
    of (coefficient, exponents) pairs.  Accepts dicts or pair iterables."""
    if isinstance(terms, dict):
        items = terms.items()
    else:
        items = [(tuple(e), c) for c, e in terms]
    merged: dict = {}
    for exps, coef in items:
        exps = tuple(int(e) for e in exps)
        if exps in merged:
            merged[exps] = merged[exps] + coef
        else:
            merged[exps] = coef
    out = []
    for exps in sorted(merged):
        coef = merged[exps]
        if isinstance(coef, int) and coef == 0:
            continue
        if isinstance(coef, FqElem) and coef.is_zero():
            continue
        out.append((coef, exps))
    return tuple(out)


def multiply_terms(a, b) -> dict:
    """Product of two polynomials given as {exponents: coefficient} dicts."""
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c != 0}


@dataclass(frozen=True)
class VarietySpec:
    """A supported domain together with the regular function to sum over.

    kind        one of "affine", "torus", "complement", "sl2"
    dim         number of coordinates (affine/torus/complement)
    terms       polynomial (affine: exponents >= 0; torus: any signs)
    g, h, k     complement only: f = g / h^k away from {h = 0}
    sl2_coeffs  sl2 only: (a_1..a_N) for f(A) = sum a_n Tr(Sym^n A)
    """

    kind: str
    dim: int = 0
    terms: tuple = ()
    g: tuple = ()
    h: tuple = ()
    k: int = 1
    sl2_coeffs: tuple = ()

    def __post_init__(self):
        if self.kind not in (AFFINE, TORUS, COMPLEMENT, SL2):
            raise ValueError(f"unsupported variety kind {self.kind!r}")
        if self.kind in (AFFINE, TORUS, COMPLEMENT) and self.dim < 0:
            raise ValueError("dimension must be >= 0")
        if self.kind == AFFINE:
            for _, exps in self.terms:
                if any(e < 0 for e in exps):
                    raise ValueError("affine polynomials need exponents >= 0")
        if self.kind == COMPLEMENT:
            for _, exps in self.g + self.h:
                if any(e < 0 for e in exps):
                    raise ValueError("complement data must be polynomial")
            if not self.h:
                raise ValueError("complement needs a nonzero h")
            if self.k < 0:
                raise ValueError("pole order k must be >= 0")

    # constructors ------------------------------------------------------------

    @classmethod
    def affine_space(cls, dim: int, terms) -> "VarietySpec":
        return cls(AFFINE, dim=dim, terms=_normalize_terms(terms))

    @classmethod
    def torus(cls, dim: int, terms) -> "VarietySpec":
        return cls(TORUS, dim=dim, terms=_normalize_terms(terms))

    @classmethod
    def hypersurface_complement(cls, dim: int, g, h, k: int = 1) -> "VarietySpec":
        return cls(COMPLEMENT, dim=dim, g=_normalize_terms(g),
                   h=_normalize_terms(h), k=k)

    @classmethod
    def sl2(cls, coeffs: Sequence) -> "VarietySpec":
        return cls(SL2, sl2_coeffs=tuple(coeffs))

    def scaled(self, c) -> "VarietySpec":
        """The same variety with f replaced by c*f."""
        if self.kind == SL2:
            return VarietySpec.sl2([c * a if isinstance(a, FqElem) else
                                    (a * c) for a in self.sl2_coeffs])
        if self.kind == COMPLEMENT:
            g = _normalize_terms([(c * coef if isinstance(coef, FqElem) or
                                   isinstance(c, FqElem) else coef * c, e)
                                  for coef, e in self.g])
            return VarietySpec(COMPLEMENT, dim=self.dim, g=g, h=self.h, k=self.k)
        terms = _normalize_terms([(c * coef if isinstance(coef, FqElem) or
                                   isinstance(c, FqElem) else coef * c, e)
                                  for coef, e in self.terms])
        return VarietySpec(self.kind, dim=self.dim, terms=terms)

    # JSON wire format ---------------------------------------------------------

    def to_json(self) -> dict:
        def dump_terms(ts):
            return [[coef.coeffs if isinstance(coef, FqElem) else coef,
                     list(e)] for coef, e in ts]

        out = {"kind": self.kind}
        if self.kind == SL2:
            out["coeffs"] = [c.coeffs if isinstance(c, FqElem) else c
                             for c in self.sl2_coeffs]
            return out
        out["dim"] = self.dim
        if self.kind == COMPLEMENT:
            out["g"] = dump_terms(self.g)
            out["h"] = dump_terms(self.h)
            out["k"] = self.k
        else:
            out["f"] = dump_terms(self.terms)
        return out

    @classmethod
    def from_json(cls, doc: dict, base: Optional[FieldCtx] = None) -> "VarietySpec":
        def load_coef(c):
            if isinstance(c, list):
                if base is None:
                    raise ValueError("vector coefficients need a base field")
                return base.element(c)
            return int(c)

        def load_terms(ts):
            return [(load_coef(c), tuple(e)) for c, e in ts]

        kind = doc["kind"]
        if kind == SL2:
            return cls.sl2([load_coef(c) for c in doc["coeffs"]])
        dim = int(doc["dim"])
        if kind == COMPLEMENT:
            return cls.hypersurface_complement(
                dim, load_terms(doc["g"]), load_terms(doc["h"]),
                int(doc.get("k", 1)))
        if kind == AFFINE:
            return cls.affine_space(dim, load_terms(doc["f"]))
        if kind == TORUS:
            return cls.torus(dim, load_terms(doc["f"]))
        raise ValueError(f"unsupported variety kind {kind!r}")


@dataclass(frozen=True)
class PowerSumSequence:
    """S_1..S_M over the base field F_q, q = p^n, as exact cyclotomic integers."""

    p: int
    n: int
    values: tuple
    progress: tuple = field(default=(), compare=False)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, m: int) -> CyclotomicInt:
        """S_m, 1-indexed."""
        if not 1 <= m <= len(self.values):
            raise IndexError(f"level {m} not computed")
        return self.values[m - 1]

    def to_json(self) -> dict:
        return {"p": self.p, "n": self.n,
                "records": [{"m": i + 1, "coords": list(v.coords)}
                            for i, v in enumerate(self.values)]}

    @classmethod
    def from_json(cls, doc: dict) -> "PowerSumSequence":
        p = int(doc["p"])
        vals = [CyclotomicInt(p, rec["coords"]) for rec in
                sorted(doc["records"], key=lambda r: r["m"])]
        return cls(p, int(doc["n"]), tuple(vals))


def count_points(v: VarietySpec, base: FieldCtx, m: int,
                 budget: int = DEFAULT_BUDGET) -> int:
    """#X(k_m) where k_m = F_{q^m}."""
    if m < 1:
        raise ValueError("level must be >= 1")
    q = base.q ** m
    if v.kind == AFFINE:
        return q ** v.dim
    if v.kind == TORUS:
        return (q - 1) ** v.dim
    if v.kind == SL2:
        return q ** 3 - q
    if v.kind == COMPLEMENT:
        counts = _histograms(v, base, m, scales=(1,), budget=budget,
                             count_only=True)
        return counts
    raise ValueError(f"unsupported variety kind {v.kind!r}")


def sym_trace(t: FqElem, N: int) -> list:
    """Traces of the symmetric powers of a determinant-1 matrix with trace t:
    s_0 = 1, s_1 = t, s_n = t*s_(n-1) - s_(n-2)."""
    if N < 0:
        raise ValueError("N must be >= 0")
    out = [t.ctx.one()]
    if N >= 1:
        out.append(t)
    for _ in range(2, N + 1):
        out.append(t * out[-1] - out[-2])
    return out


# -- fast path ----------------------------------------------------------------

def _enumeration_work(v: VarietySpec, q: int) -> int:
    if v.kind in (AFFINE, COMPLEMENT):
        return q ** v.dim
    if v.kind == TORUS:
        return (q - 1) ** v.dim
    return q ** 3  # sl2 strata enumerate (q-1)q^2 + (q-1)q points


def _coef_code(T: FieldTables, base: FieldCtx, coef) -> int:
    if isinstance(coef, FqElem):
        if coef.ctx != base:
            raise ValueError("coefficient from a different base field")
        return T.embed(coef, base)
    return int(T.const_code[coef % T.ctx.p])


def _term_codes(T: FieldTables, base: FieldCtx, terms):
    out = []
    for coef, exps in terms:
        code = _coef_code(T, base, coef)
        if code != T.zero_code:
            out.append((code, exps))
    return out


def _work_dtype(T: FieldTables, terms) -> type:
    """int32 when exponent-weighted code sums cannot overflow it."""
    weight = 1
    for _, exps in terms:
        weight = max(weight, 1 + sum(abs(e) for e in exps))
    return np.int32 if weight * T.q < 2 ** 31 else np.int64


def _eval_terms(T: FieldTables, terms, coords, zmasks, npts: int,
                may_vanish: bool, dt) -> np.ndarray:
    """Codes of sum_terms coef * prod x_j^(e_j) on a block of points.

    zmasks is a per-coordinate cache of (x == zero) masks, shared across
    terms; on the torus coordinates are never zero and the cache is unused.
    """
    n = T.group_order
    z = T.zero_code
    acc = None
    for code, exps in terms:
        t = None
        vanish = None
        for j, (e, x) in enumerate(zip(exps, coords)):
            if e == 0:
                continue
            if may_vanish and e > 0:
                if zmasks[j] is None:
                    zmasks[j] = x == z
                vanish = zmasks[j] if vanish is None else (vanish | zmasks[j])
            contrib = x if e == 1 else e * x
            t = contrib if t is None else t + contrib
        if t is None:
            t = np.full(npts, code, dtype=dt)
        else:
            t = t + code  # allocates, so aliasing a coordinate array is fine
            t %= n
        if vanish is not None:
            t = np.where(vanish, z, t)
        acc = t if acc is None else T.vadd(acc, t)
    if acc is None:  # f is identically zero
        acc = np.full(npts, z, dtype=dt)
    return acc


def _block_ranges(total: int, block: int):
    start = 0
    while start < total:
        end = min(start + block, total)
        yield start, end
        start = end


def _histograms(v: VarietySpec, base: FieldCtx, m: int, scales,
                budget: int = DEFAULT_BUDGET, threads: int = 1,
                tower: Optional[FieldCtx] = None, count_only: bool = False):
    """Trace histograms of c*f over X(k_m) for each scale c.

    Returns a list of integer count-vectors of length p aligned with
    `scales` (or, with count_only, just the number of points)."""
    p = base.p
    if m < 1:
        raise ValueError("level must be >= 1")
    work = _enumeration_work(v, base.q ** m)
    if work > budget:
        raise BudgetExceededError(
            f"level {m} needs ~{work} point evaluations; budget is {budget}")
    if tower is None:
        tower = build_field(p, base.n * m)
    elif tower.p != p or tower.n != base.n * m:
        raise ValueError("tower context has the wrong degree")
    T = get_tables(tower)
    scale_codes = [_coef_code(T, base, c) for c in scales]
    if any(c == T.zero_code for c in scale_codes):
        raise ValueError("scales must be nonzero")

    if v.kind == SL2:
        tasks = list(_sl2_blocks(T, v, base))
    else:
        tasks = list(_product_blocks(T, v, base))

    def run(task):
        f_codes, keep = task()
        if count_only:
            return int(f_codes.size if keep is None else int(keep.sum()))
        counts = []
        for sc in scale_codes:
            vals = f_codes if sc == 0 else T.vmul_code(f_codes, sc)
            tr = T.trace_of_code[vals]
            if keep is not None:
                tr = tr[keep]
            counts.append(np.bincount(tr, minlength=p))
        return counts

    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, tasks))
    else:
        results = [run(t) for t in tasks]

    if count_only:
        return sum(results)
    totals = [[0] * p for _ in scales]
    for counts in results:
        for i, c in enumerate(counts):
            for t in range(p):
                totals[i][t] += int(c[t])
    return totals


def _product_blocks(T: FieldTables, v: VarietySpec, base: FieldCtx):
    """Yield thunks computing (f_codes, keep_mask) over blocks of the
    coordinate odometer for affine/torus/complement kinds."""
    q = T.q
    length = q - 1 if v.kind == TORUS else q
    dim = v.dim
    total = length ** dim

    if dim == 0:
        def single():
            terms = _term_codes(T, base, v.g if v.kind == COMPLEMENT else v.terms)
            val = T.zero_code
            for code, _ in terms:
                val = T.add(val, code)
            if v.kind == COMPLEMENT:
                h_terms = _term_codes(T, base, v.h)
                h = T.zero_code
                for code, _ in h_terms:
                    h = T.add(h, code)
                if h == T.zero_code:
                    return (np.array([], dtype=np.int64), None)
                val = T.mul(val, (T.inv(h) * v.k) % T.group_order)
            return (np.array([val], dtype=np.int64), None)
        yield single
        return

    if v.kind == COMPLEMENT:
        g_terms = _term_codes(T, base, v.g)
        h_terms = _term_codes(T, base, v.h)
        dt = _work_dtype(T, g_terms + h_terms)
    else:
        f_terms = _term_codes(T, base, v.terms)
        dt = _work_dtype(T, f_terms)

    may_vanish = v.kind != TORUS
    inner = np.arange(length, dtype=dt)
    outer_total = length ** (dim - 1)
    group = max(1, _BLOCK // length)

    for o_start, o_end in _block_ranges(outer_total, group):
        def thunk(o_start=o_start, o_end=o_end):
            o_idx = np.arange(o_start, o_end, dtype=np.int64)
            npts = o_idx.size * length
            coords = []
            stride = outer_total
            rest = o_idx
            for _ in range(dim - 1):
                stride //= length
                coords.append(np.repeat((rest // stride).astype(dt), length))
                rest = rest % stride
            coords.append(np.tile(inner, o_idx.size))
            zmasks = [None] * dim
            if v.kind == COMPLEMENT:
                h = _eval_terms(T, h_terms, coords, zmasks, npts,
                                may_vanish, dt)
                keep = h != T.zero_code
                g = _eval_terms(T, g_terms, coords, zmasks, npts,
                                may_vanish, dt)
                hinv_k = np.where(keep, (-h * v.k) % T.group_order, 0)
                vals = T.vmul(g, hinv_k)
                vals = np.where(keep, vals, T.zero_code)
                return vals, keep
            return _eval_terms(T, f_terms, coords, zmasks, npts,
                               may_vanish, dt), None
        yield thunk


def _sl2_f_codes(T: FieldTables, coeff_codes, t: np.ndarray) -> np.ndarray:
    """f = sum_n a_n s_n(t) with s_0 = 1, s_1 = t, s_n = t s_(n-1) - s_(n-2)."""
    npts = t.size
    acc = np.full(npts, T.zero_code, dtype=np.int64)
    s_prev = np.zeros(npts, dtype=np.int64)  # code 0 encodes 1
    s_cur = t
    for a_code in coeff_codes:
        if a_code is not None:
            acc = T.vadd(acc, T.vmul_code(s_cur, a_code))
        s_prev, s_cur = s_cur, T.vsub(T.vmul(t, s_cur), s_prev)
    return acc


def _sl2_blocks(T: FieldTables, v: VarietySpec, base: FieldCtx):
    """SL2 points split as a != 0 (d solved from det) plus the a = 0 stratum."""
    q = T.q
    coeff_codes = []
    for a in v.sl2_coeffs:
        code = _coef_code(T, base, a)
        coeff_codes.append(None if code == T.zero_code else code)

    # stratum a != 0: (a, b, c) free, d = (1 + b c) / a
    total = (q - 1) * q * q
    for start, end in _block_ranges(total, _BLOCK):
        def thunk(start=start, end=end):
            idx = np.arange(start, end, dtype=np.int64)
            a = idx // (q * q)           # codes 0..q-2, all nonzero
            rest = idx % (q * q)
            b = rest // q
            c = rest % q
            bc = T.vmul(b, c)
            one_plus = T.vadd(np.zeros_like(bc), bc)
            d = T.vmul(one_plus, (-a) % T.group_order)
            t = T.vadd(a, d)
            return _sl2_f_codes(T, coeff_codes, t), None
        yield thunk

    # stratum a = 0: b != 0, c = -1/b, d free; trace is d
    total0 = (q - 1) * q
    for start, end in _block_ranges(total0, _BLOCK):
        def thunk0(start=start, end=end):
            idx = np.arange(start, end, dtype=np.int64)
            d = idx % q
            t = d
            return _sl2_f_codes(T, coeff_codes, t), None
        yield thunk0


def _counts_to_cyclotomic(p: int, counts) -> CyclotomicInt:
    last = counts[p - 1]
    return CyclotomicInt(p, [counts[i] - last for i in range(p - 1)])


def power_sum(v: VarietySpec, base: FieldCtx, m: int, *,
              budget: int = DEFAULT_BUDGET, threads: int = 1,
              tower: Optional[FieldCtx] = None) -> CyclotomicInt:
    """S_m(f): the exact character sum over X(k_m)."""
    counts = _histograms(v, base, m, scales=(1,), budget=budget,
                         threads=threads, tower=tower)
    return _counts_to_cyclotomic(base.p, counts[0])


def power_sum_table(v: VarietySpec, base: FieldCtx, M: int, *,
                    budget: int = DEFAULT_BUDGET, threads: int = 1,
                    scales=(1,)) -> dict:
    """S_1..S_M for each scale c (f replaced by c*f), in one pass per level.

    Returns {scale_index: PowerSumSequence}; scale_index runs over the
    positions in `scales`.  Refuses to start if the whole table would
    exceed the work budget."""
    if M < 1:
        raise ValueError("need at least one level")
    total_work = sum(_enumeration_work(v, base.q ** m) for m in range(1, M + 1))
    if total_work > budget:
        raise BudgetExceededError(
            f"table through level {M} needs ~{total_work} point evaluations; "
            f"budget is {budget}")
    per_scale = [[] for _ in scales]
    progress = []
    for m in range(1, M + 1):
        t0 = time.perf_counter()
        counts = _histograms(v, base, m, scales=scales, budget=budget,
                             threads=threads)
        progress.append({"m": m,
                         "points": _enumeration_work(v, base.q ** m),
                         "seconds": time.perf_counter() - t0})
        for i, c in enumerate(counts):
            per_scale[i].append(_counts_to_cyclotomic(base.p, c))
    prog = tuple(progress)
    return {i: PowerSumSequence(base.p, base.n, tuple(vals), progress=prog)
            for i, vals in enumerate(per_scale)}


# -- naive reference path ------------------------------------------------------

def _naive_embedding(base: FieldCtx, tower: FieldCtx):
    """Map base-field elements into the tower via a root of the base modulus
    (exhaustive search with plain field arithmetic)."""
    if base.n == 1:
        return lambda x: tower.from_int(x.coeffs[0])
    root = None
    for cand in tower.elements():
        acc = tower.zero()
        for c in reversed(base.modulus):
            acc = acc * cand + tower.from_int(c)
        if acc.is_zero():
            root = cand
            break
    if root is None:
        raise RuntimeError("no root of base modulus in tower")

    def embed(x: FqElem) -> FqElem:
        acc = tower.zero()
        for c in reversed(x.coeffs):
            acc = acc * root + tower.from_int(c)
        return acc

    return embed


def power_sum_naive(v: VarietySpec, base: FieldCtx, m: int,
                    tower: Optional[FieldCtx] = None) -> CyclotomicInt:
    """Reference evaluation of S_m with plain field arithmetic; exponential
    in the point count, meant for small cross-checks."""
    p = base.p
    if tower is None:
        tower = build_field(p, base.n * m)
    embed = _naive_embedding(base, tower)

    def lift(coef):
        if isinstance(coef, FqElem):
            return embed(coef)
        return tower.from_int(coef)

    def eval_terms(terms, point):
        acc = tower.zero()
        for coef, exps in terms:
            val = lift(coef)
            for e, x in zip(exps, point):
                if e:
                    val = val * (x ** e if e > 0 else x.inverse() ** (-e))
            acc = acc + val
        return acc

    acc = CyclotomicInt.zero(p)
    if v.kind == SL2:
        coeffs = [lift(c) for c in v.sl2_coeffs]
        els = list(tower.elements())
        one = tower.one()
        for a, b, c, d in itertools.product(els, repeat=4):
            if a * d - b * c == one:
                s = sym_trace(a + d, len(coeffs))
                val = tower.zero()
                for i, cf in enumerate(coeffs, start=1):
                    val = val + cf * s[i]
                acc = acc + additive_character(p, trace_to_prime(val))
        return acc

    els = list(tower.elements())
    nonzero = [x for x in els if not x.is_zero()]
    rng = nonzero if v.kind == TORUS else els
    for point in itertools.product(rng, repeat=v.dim):
        if v.kind == COMPLEMENT:
            h = eval_terms(v.h, point)
            if h.is_zero():
                continue
            val = eval_terms(v.g, point) * (h.inverse() ** v.k)
        else:
            val = eval_terms(v.terms, point)
        acc = acc + additive_character(p, trace_to_prime(val))
    return acc


# -- scale invariance ----------------------------------------------------------

@dataclass
class ScaleCheckReport:
    """Outcome of comparing the L-series of f and of c*f."""

    scale: object
    lseries: object
    lseries_scaled: object
    degree_equal: bool
    total_degree_equal: bool
    twist_checked: bool
    twist_holds: bool

    @property
    def passed(self) -> bool:
        return (self.degree_equal and self.total_degree_equal and
                (self.twist_holds or not self.twist_checked))


def scaled_degree_check(v: VarietySpec, base: FieldCtx, c, M: int, *,
                        budget: int = DEFAULT_BUDGET,
                        threads: int = 1) -> ScaleCheckReport:
    """Compare L-series invariants of f and c*f (c nonzero in F_q); also
    verifies S_m(c f) = galois_twist(S_m(f), c) when c is a prime-field
    scalar."""
    from . import lfun

    if isinstance(c, FqElem):
        c_is_prime = c.in_prime_field()
        c_int = c.coeffs[0] if c_is_prime else None
        if c.is_zero():
            raise ValueError("scale must be nonzero")
    else:
        c_int = c % base.p
        if c_int == 0:
            raise ValueError("scale must be nonzero")
        c_is_prime = True

    tables = power_sum_table(v, base, M, budget=budget, threads=threads,
                             scales=(1, c))
    seq, seq_scaled = tables[0], tables[1]
    l_base = lfun.reconstruct_auto(lfun.exp_power_sums(seq))
    l_scaled = lfun.reconstruct_auto(lfun.exp_power_sums(seq_scaled))

    twist_checked = bool(c_is_prime)
    twist_holds = True
    if twist_checked:
        twist_holds = all(
            galois_twist(seq.values[i], c_int) == seq_scaled.values[i]
            for i in range(M))
    return ScaleCheckReport(
        scale=c,
        lseries=l_base,
        lseries_scaled=l_scaled,
        degree_equal=lfun.degree(l_base) == lfun.degree(l_scaled),
        total_degree_equal=(lfun.total_degree(l_base)
                            == lfun.total_degree(l_scaled)),
        twist_checked=twist_checked,
        twist_holds=twist_holds,
    )


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get("EXPSUMLAB_THREADS", "1")))
    except ValueError:
        return 1
