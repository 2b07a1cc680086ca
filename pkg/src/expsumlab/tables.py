"""Discrete-log tables for fast exact enumeration over F_q.

Nonzero elements are encoded by their discrete log with respect to a fixed
generator g (code e  <->  g^e, e in [0, q-1)); the zero element gets the
extra code q-1.  Multiplication is then index addition mod q-1 and field
addition goes through the Zech logarithm z(d) = log(1 + g^d).  Everything
is integer-valued, so numpy int64 vector ops stay exact.
"""

from __future__ import annotations

import numpy as np

from .ffield import FieldCtx, FqElem, _factor, trace_to_prime

ZECH_SENTINEL = -1


class PoleEvaluationError(ValueError):
    """A rational form was evaluated at a zero of its denominator."""


class FieldTables:
    """Log/Zech/trace tables for one field context."""

    def __init__(self, ctx: FieldCtx):
        self.ctx = ctx
        q = ctx.q
        self.q = q
        self.zero_code = q - 1
        self.group_order = q - 1

        gen = self._find_generator()
        self.generator = gen

        # exp/log: exp[e] = coefficient tuple of g^e
        exp = []
        log_map = {}
        cur = ctx.one()
        for e in range(q - 1):
            exp.append(cur.coeffs)
            log_map[cur.coeffs] = e
            cur = cur * gen
        if cur != ctx.one():
            raise RuntimeError("generator order mismatch")
        self.exp = exp
        self.log_map = log_map

        # Zech logs: zech[d] = log(1 + g^d), sentinel where 1 + g^d = 0.
        # One extra slot so vector code may index d = q-1 on entries that the
        # zero-operand masks discard anyway.
        zech = np.full(q, ZECH_SENTINEL, dtype=np.int32)
        p = ctx.p
        for d in range(q - 1):
            coeffs = list(exp[d])
            coeffs[0] = (coeffs[0] + 1) % p
            t = tuple(coeffs)
            if any(t):
                zech[d] = log_map[t]
        self.zech = zech

        # code of -1 (additive negation is a log shift; in char 2 it is a no-op)
        if p == 2:
            self.neg_shift = 0
        else:
            minus_one = tuple([p - 1] + [0] * (ctx.n - 1))
            self.neg_shift = log_map[minus_one]

        # trace to F_p per code (zero element has trace 0)
        tr_basis = [trace_to_prime(ctx.element([0] * j + [1]))
                    for j in range(ctx.n)]
        tr = np.zeros(q, dtype=np.int32)
        for e in range(q - 1):
            tr[e] = sum(c * t for c, t in zip(exp[e], tr_basis)) % p
        self.trace_of_code = tr

        # codes of the prime-field constants 0..p-1
        const = np.full(p, self.zero_code, dtype=np.int64)
        for c in range(1, p):
            const[c] = log_map[tuple([c] + [0] * (ctx.n - 1))]
        self.const_code = const

        self._embed_roots: dict = {}

    def _find_generator(self) -> FqElem:
        ctx = self.ctx
        order = ctx.q - 1
        primes = _factor(order) if order > 1 else []
        for idx in range(1, ctx.q):
            cand = ctx.element_at(idx)
            if cand.is_zero():
                continue
            if all((cand ** (order // ell)) != ctx.one() for ell in primes):
                return cand
        raise RuntimeError("no generator found")  # unreachable

    # -- scalar code arithmetic ----------------------------------------------

    def code_of(self, x: FqElem) -> int:
        if x.ctx != self.ctx:
            raise ValueError("element from a different context")
        if x.is_zero():
            return self.zero_code
        return self.log_map[x.coeffs]

    def element_of(self, code: int) -> FqElem:
        if code == self.zero_code:
            return self.ctx.zero()
        return self.ctx.element(self.exp[code])

    def add(self, a: int, b: int) -> int:
        z = self.zero_code
        if a == z:
            return b
        if b == z:
            return a
        d = (b - a) % self.group_order
        zd = int(self.zech[d])
        if zd == ZECH_SENTINEL:
            return z
        return (a + zd) % self.group_order

    def mul(self, a: int, b: int) -> int:
        z = self.zero_code
        if a == z or b == z:
            return z
        return (a + b) % self.group_order

    def neg(self, a: int) -> int:
        if a == self.zero_code:
            return a
        return (a + self.neg_shift) % self.group_order

    def inv(self, a: int) -> int:
        if a == self.zero_code:
            raise ZeroDivisionError("inverse of zero")
        return (-a) % self.group_order

    # -- vector code arithmetic (numpy integer arrays of codes) ---------------
    #
    # Codes live in [0, q-1] with q-1 encoding zero, so sums of two codes stay
    # below 2(q-1) and a compare-and-subtract replaces the integer division of
    # a true modulo.

    def _fold(self, t: np.ndarray) -> np.ndarray:
        n = self.group_order
        np.subtract(t, n, out=t, where=t >= n)
        return t

    def vadd(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        z = self.zero_code
        d = b - a
        np.add(d, self.group_order, out=d, where=d < 0)
        zd = self.zech[d]
        t = self._fold(a + zd)
        return np.where(a == z, b, np.where(b == z, a,
                        np.where(zd == ZECH_SENTINEL, z, t)))

    def vmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        z = self.zero_code
        t = self._fold(a + b)
        return np.where((a == z) | (b == z), z, t)

    def vmul_code(self, a: np.ndarray, c: int) -> np.ndarray:
        if c == self.zero_code:
            return np.full_like(a, self.zero_code)
        z = self.zero_code
        return np.where(a == z, z, self._fold(a + c))

    def vneg(self, a: np.ndarray) -> np.ndarray:
        z = self.zero_code
        return np.where(a == z, z, self._fold(a + self.neg_shift))

    def vsub(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.vadd(a, self.vneg(b))

    def vinv(self, a: np.ndarray) -> np.ndarray:
        if (a == self.zero_code).any():
            raise ZeroDivisionError("inverse of zero")
        return (-a) % self.group_order

    def vpow_int(self, a: np.ndarray, e: int) -> np.ndarray:
        """Coordinate-wise e-th power.  Negative e requires no zeros."""
        z = self.zero_code
        if e == 0:
            return np.zeros_like(a)  # code 0 encodes the element 1
        if e < 0 and (a == z).any():
            raise PoleEvaluationError("negative power of zero")
        return np.where(a == z, z, (a * e) % self.group_order)

    # -- embedding of a base field into this one ------------------------------

    def embed_root(self, base: FieldCtx) -> int:
        """Code of a root of the base modulus in this field (exhaustive
        search, cached).  Hosting the base field requires base.p == p and
        base.n | n."""
        key = (base.p, base.n, base.modulus)
        if key in self._embed_roots:
            return self._embed_roots[key]
        if base.p != self.ctx.p or self.ctx.n % base.n != 0:
            raise ValueError("base field does not embed into this context")
        if base.n == 1:
            root = self.zero_code  # modulus is x; constants embed canonically
        else:
            root = None
            mod = list(base.modulus)
            for cand in range(self.group_order):
                acc = self.const_code[mod[-1] % base.p]
                for c in reversed(mod[:-1]):
                    acc = self.add(self.mul(acc, cand), int(self.const_code[c]))
                if acc == self.zero_code:
                    root = cand
                    break
            if root is None:
                raise RuntimeError("no root of base modulus found")
        self._embed_roots[key] = root
        return root

    def embed(self, x: FqElem, base: FieldCtx) -> int:
        """Code of the image of a base-field element under the cached embedding."""
        root = self.embed_root(base)
        acc = self.zero_code
        for c in reversed(x.coeffs):
            acc = self.add(self.mul(acc, root), int(self.const_code[c % base.p]))
        return acc


_CACHE: dict = {}


def get_tables(ctx: FieldCtx) -> FieldTables:
    key = (ctx.p, ctx.n, ctx.modulus)
    if key not in _CACHE:
        _CACHE[key] = FieldTables(ctx)
    return _CACHE[key]
