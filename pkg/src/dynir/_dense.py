"""Dense univariate polynomial kernels over an abstract coefficient field.

Polynomials are plain Python lists of coefficient *indices* (small ints
interpreted by a coefficient-ops adapter), lowest degree first, with no
trailing zeros; ``[]`` is the zero polynomial.

The adapter must expose::

    order      cardinality of the coefficient field (int)
    char       characteristic p
    prime_p    p when indices are residues mod p (prime level), else None
    add(a, b) / sub(a, b) / neg(a) / mul(a, b) / inv(a)   on indices
    embed_int(n)   index of the base-field constant n mod p

When ``prime_p`` is set, multiplication and modular reduction switch to
vectorized int64 kernels (plain convolution; no FFT), guarded against
overflow.  All other levels run the schoolbook loops.
"""

from __future__ import annotations

try:
    import numpy as _np
except ImportError:  # pragma: no cover - numpy is a declared dependency
    _np = None

_NP_MIN_LEN = 24          # below this, python loops beat array overhead
_INT64_GUARD = 1 << 62


def _np_ok(ops, length: int) -> bool:
    p = ops.prime_p
    return (
        _np is not None
        and p is not None
        and length >= _NP_MIN_LEN
        and length * (p - 1) * (p - 1) < _INT64_GUARD
    )


def trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def deg(c: list[int]) -> int:
    return len(c) - 1


def add(a, b, ops):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] = ops.add(out[i], x)
    return trim(out)


def sub(a, b, ops):
    out = list(a) + [0] * (len(b) - len(a))
    for i, x in enumerate(b):
        out[i] = ops.sub(out[i], x)
    return trim(out)


def neg(a, ops):
    return [ops.neg(x) for x in a]


def scalar_mul(a, s, ops):
    if s == 0:
        return []
    return trim([ops.mul(x, s) for x in a])


def mul(a, b, ops):
    if not a or not b:
        return []
    if _np_ok(ops, min(len(a), len(b))):
        out = _np.convolve(_np.asarray(a, dtype=_np.int64),
                           _np.asarray(b, dtype=_np.int64)) % ops.prime_p
        return trim(out.tolist())
    out = [0] * (len(a) + len(b) - 1)
    if len(a) > len(b):
        a, b = b, a
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = ops.add(out[i + j], ops.mul(x, y))
    return trim(out)


def divmod_(a, b, ops):
    """Quotient and remainder of a by nonzero b."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], list(a)
    p = ops.prime_p
    if _np_ok(ops, len(b)) and p is not None:
        return _divmod_np(a, b, p)
    binv = ops.inv(b[-1])
    r = list(a)
    q = [0] * (len(a) - len(b) + 1)
    db = len(b) - 1
    for i in range(len(q) - 1, -1, -1):
        if len(r) == i + db + 1 and r[-1] != 0:
            c = ops.mul(r[-1], binv)
            q[i] = c
            for j in range(db):
                r[i + j] = ops.sub(r[i + j], ops.mul(c, b[j]))
            r.pop()
            trim(r)
        elif len(r) > i + db + 1:
            raise AssertionError("divmod invariant broken")
    return trim(q), trim(r)


def _divmod_np(a, b, p):
    binv = pow(b[-1], -1, p)
    r = _np.asarray(a, dtype=_np.int64).copy()
    barr = _np.asarray(b, dtype=_np.int64)
    db = len(b) - 1
    q = _np.zeros(len(a) - db, dtype=_np.int64)
    for i in range(len(q) - 1, -1, -1):
        c = (int(r[i + db]) * binv) % p
        if c:
            q[i] = c
            r[i:i + db + 1] = (r[i:i + db + 1] - c * barr) % p
    return trim(q.tolist()), trim(r[:db].tolist())


def rem(a, b, ops):
    return divmod_(a, b, ops)[1]


def monic(a, ops):
    """Return (a/lc, lc)."""
    if not a:
        return [], 0
    lc = a[-1]
    if lc == 1:
        return list(a), 1
    linv = ops.inv(lc)
    return [ops.mul(x, linv) for x in a], lc


def gcd(a, b, ops):
    a, b = list(a), list(b)
    while b:
        a, b = b, rem(a, b, ops)
    return monic(a, ops)[0]


def gcdext(a, b, ops):
    """Extended gcd: returns monic g and s, t with s*a + t*b = g."""
    r0, r1 = list(a), list(b)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = divmod_(r0, r1, ops)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, ops), ops)
        t0, t1 = t1, sub(t0, mul(q, t1, ops), ops)
    g, lc = monic(r0, ops)
    if lc not in (0, 1):
        linv = ops.inv(lc)
        s0 = scalar_mul(s0, linv, ops)
        t0 = scalar_mul(t0, linv, ops)
    return g, s0, t0


def invmod(a, m, ops):
    """Inverse of a modulo m; raises ZeroDivisionError if not coprime."""
    g, s, _ = gcdext(a, m, ops)
    if deg(g) != 0:
        raise ZeroDivisionError("element is not invertible modulo the modulus")
    return rem(s, m, ops)


class ModCtx:
    """Reduction context for a fixed monic modulus.

    Over a prime coefficient level the x^D..x^(2D-2) residues are cached as
    a reduction matrix so that mulmod is one convolution plus one matvec.
    """

    def __init__(self, modulus, ops):
        if not modulus or modulus[-1] != 1:
            raise ValueError("modulus must be monic and nonzero")
        self.m = list(modulus)
        self.ops = ops
        self.d = len(modulus) - 1
        self._mat = None
        self._use_np = self.d >= 2 and _np_ok(ops, self.d)

    def _matrix(self):
        if self._mat is None:
            p = self.ops.prime_p
            d = self.d
            rows = _np.zeros((d - 1 if d > 1 else 0, d), dtype=_np.int64)
            cur = [(-c) % p for c in self.m[:d]]  # x^d mod m
            if d > 1:
                rows[0] = cur
                for i in range(1, d - 1):
                    top = cur[-1]
                    cur = [0] + cur[:-1]
                    if top:
                        for j in range(d):
                            cur[j] = (cur[j] - top * self.m[j]) % p
                    rows[i] = cur
            self._mat = rows
            self._row_d = _np.array([(-c) % p for c in self.m[:d]],
                                    dtype=_np.int64)
        return self._mat

    def reduce(self, c):
        """Reduce a coefficient list of degree <= 2d-2 modulo m."""
        if len(c) <= self.d:
            return list(c)
        if self._use_np:
            mat = self._matrix()
            arr = _np.asarray(c, dtype=_np.int64)
            low = _np.zeros(self.d, dtype=_np.int64)
            low[:min(self.d, len(arr))] = arr[:self.d]
            high = arr[self.d:]
            out = (low + high @ mat[:len(high)]) % self.ops.prime_p
            return trim(out.tolist())
        return rem(list(c), self.m, self.ops)

    def mulmod(self, a, b):
        if not a or not b:
            return []
        if self._use_np:
            conv = _np.convolve(_np.asarray(a, dtype=_np.int64),
                                _np.asarray(b, dtype=_np.int64)) % self.ops.prime_p
            return self.reduce(trim(conv.tolist()))
        return rem(mul(a, b, self.ops), self.m, self.ops)

    def powmod(self, a, e: int):
        if e < 0:
            a = invmod(a, self.m, self.ops)
            e = -e
        result = [1]
        if e == 0:
            return result
        base = rem(list(a), self.m, self.ops)
        for bit in bin(e)[2:]:
            result = self.mulmod(result, result)
            if bit == "1":
                result = self.mulmod(result, base)
        return result


def small_prime_factors(n: int) -> list[int]:
    """Distinct prime factors of a small positive integer."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(f, ops, order: int) -> bool:
    """Rabin test: x^(Q^d) = x mod f and gcd(x^(Q^(d/r)) - x, f) = 1
    for every prime r | d.  Extra gcd checks at small i are sound early
    exits (a hit exhibits a factor of degree dividing i < d).
    """
    d = deg(f)
    if d < 1:
        raise ValueError("constant polynomial")
    if d == 1:
        return True
    fm = monic(f, ops)[0]
    if fm[0] == 0:
        return False  # divisible by x
    ctx = ModCtx(fm, ops)
    marks = {d // r for r in small_prime_factors(d)}
    early = min(8, d // 2)
    x = [0, 1]
    cur = x
    for i in range(1, d + 1):
        cur = ctx.powmod(cur, order)
        if (i in marks or i <= early) and i < d:
            if deg(gcd(sub(cur, x, ops), fm, ops)) != 0:
                return False
    return cur == x
