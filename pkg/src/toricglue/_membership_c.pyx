# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of ``_membership_py.search`` on 64-bit integers.

Callers must check ``fits_int64`` first; the search itself never produces a
value larger than an input entry, and the congruence solver is kept inside
int64 by the bound on the axis steps.
"""
from libc.stdlib cimport malloc, free

ctypedef long long i64

cdef i64 STEP_LIMIT = 1LL << 31
cdef i64 VALUE_LIMIT = 1LL << 62


def fits_int64(general, axis, v):
    cdef object prod = 1
    for s in axis:
        if s >= STEP_LIMIT:
            return False
        if s:
            prod *= s
    if prod >= VALUE_LIMIT:
        return False
    for x in v:
        if x >= VALUE_LIMIT:
            return False
    for g in general:
        for x in g:
            if x >= VALUE_LIMIT:
                return False
    return True


cdef inline i64 _gcd(i64 a, i64 b) nogil:
    cdef i64 t
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef inline i64 _inverse(i64 a, i64 m) nogil:
    # a invertible mod m, m > 1
    cdef i64 old_r = a % m, r = m, old_s = 1, s = 0, q, t
    while r:
        q = old_r // r
        t = old_r - q * r
        old_r = r
        r = t
        t = old_s - q * s
        old_s = s
        s = t
    old_s %= m
    if old_s < 0:
        old_s += m
    return old_s


cdef inline i64 _mod(i64 a, i64 m) nogil:
    a %= m
    if a < 0:
        a += m
    return a


cdef i64 _bound(const i64* g, const i64* r, int dim) nogil:
    cdef i64 b = -1, q
    cdef int j
    for j in range(dim):
        if g[j]:
            q = r[j] // g[j]
            if b < 0 or q < b:
                b = q
    return b


cdef i64 _solve_last(const i64* g, const i64* r, const i64* axis, int dim) nogil:
    """Return x >= 0 or -1 for no solution."""
    cdef i64 b = _bound(g, r, dim)
    cdef i64 fixed = -1, x0 = 0, mod = 1
    cdef i64 gj, rj, sj, d, m, a, e, me, t, x
    cdef int j
    for j in range(dim):
        gj = g[j]
        rj = r[j]
        sj = axis[j]
        if sj == 0:
            if gj == 0:
                if rj:
                    return -1
                continue
            if rj % gj:
                return -1
            if fixed >= 0 and fixed != rj // gj:
                return -1
            fixed = rj // gj
            continue
        d = _gcd(gj, sj)
        if rj % d:
            return -1
        m = sj // d
        if m == 1:
            continue
        a = _mod(_mod(rj // d, m) * _inverse(gj // d, m), m)
        e = _gcd(mod, m)
        if _mod(a - x0, e):
            return -1
        me = m // e
        if me > 1:
            t = _mod(_mod((a - x0) // e, me) * _inverse(_mod(mod // e, me), me), me)
        else:
            t = 0
        x0 += mod * t
        mod *= me
        x0 = _mod(x0, mod)
    if fixed >= 0:
        if fixed <= b and _mod(fixed - x0, mod) == 0:
            return fixed
        return -1
    x = b - _mod(b - x0, mod)
    return x if x >= 0 else -1


cdef class _Search:
    cdef int n, dim
    cdef i64* gens
    cdef i64* axis
    cdef i64* stack
    cdef i64* coeffs
    cdef set failed

    def __cinit__(self, general, axis, v):
        cdef int i, j
        self.n = len(general)
        self.dim = len(v)
        self.gens = <i64*> malloc(max(1, self.n * self.dim) * sizeof(i64))
        self.axis = <i64*> malloc(max(1, self.dim) * sizeof(i64))
        self.stack = <i64*> malloc(max(1, (self.n + 1) * self.dim) * sizeof(i64))
        self.coeffs = <i64*> malloc(max(1, self.n) * sizeof(i64))
        if not (self.gens and self.axis and self.stack and self.coeffs):
            raise MemoryError()
        for i in range(self.n):
            for j in range(self.dim):
                self.gens[i * self.dim + j] = general[i][j]
            self.coeffs[i] = 0
        for j in range(self.dim):
            self.axis[j] = axis[j]
            self.stack[j] = v[j]
        self.failed = set()

    def __dealloc__(self):
        free(self.gens)
        free(self.axis)
        free(self.stack)
        free(self.coeffs)

    cdef bint rec(self, int i):
        cdef int dim = self.dim, j
        cdef i64* r = self.stack + i * dim
        cdef i64* nxt = self.stack + (i + 1) * dim
        cdef i64* g = self.gens + i * dim
        cdef i64 x, top
        if i == self.n - 1:
            x = _solve_last(g, r, self.axis, dim)
            if x < 0:
                return False
            self.coeffs[i] = x
            return True
        key = None
        if i > 0:
            key = (i, tuple([r[j] for j in range(dim)]))
            if key in self.failed:
                return False
        top = _bound(g, r, dim)
        for j in range(dim):
            nxt[j] = r[j] - top * g[j]
        x = top
        while x >= 0:
            self.coeffs[i] = x
            if self.rec(i + 1):
                return True
            for j in range(dim):
                nxt[j] += g[j]
            x -= 1
        if key is not None:
            self.failed.add(key)
        return False

    def run(self):
        cdef int i, j
        if self.n == 0:
            for j in range(self.dim):
                if self.axis[j]:
                    if self.stack[j] % self.axis[j]:
                        return None
                elif self.stack[j]:
                    return None
            return []
        if not self.rec(0):
            return None
        return [self.coeffs[i] for i in range(self.n)]


def search(general, axis, v):
    """Same contract as ``_membership_py.search``."""
    return _Search(general, axis, v).run()
