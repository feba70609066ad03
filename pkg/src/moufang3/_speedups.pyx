# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for concrete loop arithmetic, identity sweeps and
brute-force polynomial evaluation.

Mirrors moufang3._native exactly (same draw order, same results); the
parity tests hold the two backends together.
"""

from libc.stdint cimport uint64_t
from libc.stdlib cimport free, malloc

BACKEND = "compiled"

SWEEP_NAMES = (
    "moufang",
    "left_alternative",
    "right_alternative",
    "flexible",
    "inverse",
    "tail_central",
)

cdef uint64_t RNG_MULTIPLIER = 2685821657736338717ULL


cdef inline uint64_t _step(uint64_t s) nogil:
    s ^= s >> 12
    s ^= s << 25
    s ^= s >> 27
    return s


cdef inline int _trit(uint64_t s) nogil:
    return <int>((s * RNG_MULTIPLIER) % 3)


cdef uint64_t _draw(uint64_t s, int *dst) nogil:
    cdef int i
    for i in range(19):
        s = _step(s)
        dst[i] = _trit(s)
    return s


cdef uint64_t _draw_tail(uint64_t s, int *dst) nogil:
    cdef int i
    for i in range(10):
        dst[i] = 0
    for i in range(10, 19):
        s = _step(s)
        dst[i] = _trit(s)
    return s


cdef inline bint _eq(const int *a, const int *b) nogil:
    cdef int i
    for i in range(19):
        if a[i] != b[i]:
            return False
    return True


cdef int _read_elem(object seq, int *dst) except -1:
    cdef int i, v
    if len(seq) != 19:
        raise ValueError("element must have 19 coordinates")
    for i in range(19):
        v = seq[i]
        if v < 0 or v > 2:
            raise ValueError(f"coordinate {v!r} is not a GF(3) residue")
        dst[i] = v
    return 0


cdef object _to_tuple(const int *src):
    cdef int i
    return tuple([src[i] for i in range(19)])


cdef struct FlatTable:
    int nterm
    int *term_start   # length nslots + 1
    int *coeff        # length nterm
    int *fact_start   # length nterm + 1
    int *fact_code


cdef int _build_table(object flat, FlatTable *tab, int max_code) except -1:
    cdef list term_start = [0]
    cdef list coeff = []
    cdef list fact_start = [0]
    cdef list fact_code = []
    cdef int i, c
    for terms in flat:
        for co, codes in terms:
            coeff.append(co)
            for c in codes:
                if c < 0 or c >= max_code:
                    raise ValueError("factor code out of range")
                fact_code.append(c)
            fact_start.append(len(fact_code))
        term_start.append(len(coeff))
    tab.nterm = len(coeff)
    tab.term_start = <int *> malloc(len(term_start) * sizeof(int))
    tab.coeff = <int *> malloc(max(len(coeff), 1) * sizeof(int))
    tab.fact_start = <int *> malloc(len(fact_start) * sizeof(int))
    tab.fact_code = <int *> malloc(max(len(fact_code), 1) * sizeof(int))
    if (tab.term_start == NULL or tab.coeff == NULL
            or tab.fact_start == NULL or tab.fact_code == NULL):
        raise MemoryError()
    for i in range(len(term_start)):
        tab.term_start[i] = term_start[i]
    for i in range(len(coeff)):
        tab.coeff[i] = coeff[i]
    for i in range(len(fact_start)):
        tab.fact_start[i] = fact_start[i]
    for i in range(len(fact_code)):
        tab.fact_code[i] = fact_code[i]
    return 0


cdef void _free_table(FlatTable *tab) noexcept:
    free(tab.term_start)
    free(tab.coeff)
    free(tab.fact_start)
    free(tab.fact_code)


cdef class LoopKernel:
    """Concrete evaluation of the table-defined product and inverse."""

    cdef FlatTable f
    cdef FlatTable h
    cdef bint _built

    def __cinit__(self, f_flat, h_flat):
        if len(f_flat) != 19 or len(h_flat) != 19:
            raise ValueError("tables must have 19 coordinates")
        _build_table(f_flat, &self.f, 20)
        _build_table(h_flat, &self.h, 10)
        self._built = True

    def __dealloc__(self):
        if self._built:
            _free_table(&self.f)
            _free_table(&self.h)

    cdef void _mul(self, const int *x, const int *y, int *out) nogil:
        cdef int v[20]
        cdef int k, t, j, p, acc
        for k in range(10):
            v[k] = x[k]
            v[10 + k] = y[k]
        for k in range(19):
            acc = x[k] + y[k]
            for t in range(self.f.term_start[k], self.f.term_start[k + 1]):
                p = self.f.coeff[t]
                for j in range(self.f.fact_start[t], self.f.fact_start[t + 1]):
                    p *= v[self.f.fact_code[j]]
                    if p == 0:
                        break
                acc += p
            out[k] = acc % 3

    cdef void _inv(self, const int *x, int *out) nogil:
        cdef int k, t, j, p, acc
        for k in range(19):
            acc = 3 - x[k]
            for t in range(self.h.term_start[k], self.h.term_start[k + 1]):
                p = self.h.coeff[t]
                for j in range(self.h.fact_start[t], self.h.fact_start[t + 1]):
                    p *= x[self.h.fact_code[j]]
                    if p == 0:
                        break
                acc += p
            out[k] = acc % 3

    def mul(self, x, y):
        cdef int xv[19]
        cdef int yv[19]
        cdef int out[19]
        _read_elem(x, xv)
        _read_elem(y, yv)
        self._mul(xv, yv, out)
        return _to_tuple(out)

    def inv(self, x):
        """Raw inverse -x + h(x); the self-checking wrapper lives above."""
        cdef int xv[19]
        cdef int out[19]
        _read_elem(x, xv)
        self._inv(xv, out)
        return _to_tuple(out)

    def random_element(self, state):
        """Draw 19 trits from xorshift-star; returns (element, new state)."""
        cdef uint64_t s = <uint64_t> state
        cdef int coords[19]
        s = _draw(s, coords)
        return _to_tuple(coords), s

    def sweep(self, str name, state, trials):
        """Run a named identity sweep; see the pure backend for the contract."""
        cdef uint64_t s = <uint64_t> state
        cdef long long n = <long long> trials
        cdef long long i, violations = 0, first = -1
        cdef int x[19]
        cdef int y[19]
        cdef int z[19]
        cdef int t1[19]
        cdef int t2[19]
        cdef int t3[19]
        cdef int t4[19]
        cdef int k, bad
        witness = None

        if name == "moufang":
            for i in range(n):
                s = _draw(s, x)
                s = _draw(s, y)
                s = _draw(s, z)
                self._mul(x, y, t1)
                self._mul(z, x, t2)
                self._mul(t1, t2, t3)
                self._mul(y, z, t1)
                self._mul(x, t1, t2)
                self._mul(t2, x, t4)
                if not _eq(t3, t4):
                    violations += 1
                    if first < 0:
                        first = i
                        witness = (_to_tuple(x), _to_tuple(y), _to_tuple(z))
        elif name == "left_alternative":
            for i in range(n):
                s = _draw(s, x)
                s = _draw(s, y)
                self._mul(x, x, t1)
                self._mul(t1, y, t3)
                self._mul(x, y, t2)
                self._mul(x, t2, t4)
                if not _eq(t3, t4):
                    violations += 1
                    if first < 0:
                        first = i
                        witness = (_to_tuple(x), _to_tuple(y))
        elif name == "right_alternative":
            for i in range(n):
                s = _draw(s, x)
                s = _draw(s, y)
                self._mul(y, x, t1)
                self._mul(t1, x, t3)
                self._mul(x, x, t2)
                self._mul(y, t2, t4)
                if not _eq(t3, t4):
                    violations += 1
                    if first < 0:
                        first = i
                        witness = (_to_tuple(x), _to_tuple(y))
        elif name == "flexible":
            for i in range(n):
                s = _draw(s, x)
                s = _draw(s, y)
                self._mul(x, y, t1)
                self._mul(t1, x, t3)
                self._mul(y, x, t2)
                self._mul(x, t2, t4)
                if not _eq(t3, t4):
                    violations += 1
                    if first < 0:
                        first = i
                        witness = (_to_tuple(x), _to_tuple(y))
        elif name == "inverse":
            for i in range(n):
                s = _draw(s, x)
                self._inv(x, y)
                self._mul(x, y, t1)
                self._mul(y, x, t2)
                bad = 0
                for k in range(19):
                    if t1[k] != 0 or t2[k] != 0:
                        bad = 1
                        break
                if bad:
                    violations += 1
                    if first < 0:
                        first = i
                        witness = (_to_tuple(x),)
        elif name == "tail_central":
            for i in range(n):
                s = _draw(s, x)
                s = _draw_tail(s, z)
                for k in range(19):
                    t3[k] = (x[k] + z[k]) % 3
                self._mul(x, z, t1)
                self._mul(z, x, t2)
                if not (_eq(t1, t3) and _eq(t2, t3)):
                    violations += 1
                    if first < 0:
                        first = i
                        witness = (_to_tuple(x), _to_tuple(z))
        else:
            raise ValueError(f"unknown sweep {name!r}")
        return violations, first, witness


cdef class PolyEvaluator:
    """Brute-force evaluator for flattened polynomials (see polys.flatten_polys)."""

    cdef FlatTable polys
    cdef int npolys
    cdef public int nvars
    cdef int *poly_start   # term index ranges per polynomial
    cdef bint _built

    def __cinit__(self, flat, nvars):
        cdef int i
        self.nvars = nvars
        self.npolys = len(flat)
        _build_table(flat, &self.polys, nvars)
        self.poly_start = <int *> malloc((self.npolys + 1) * sizeof(int))
        if self.poly_start == NULL:
            raise MemoryError()
        for i in range(self.npolys + 1):
            self.poly_start[i] = self.polys.term_start[i]
        self._built = True

    def __dealloc__(self):
        if self._built:
            _free_table(&self.polys)
            free(self.poly_start)

    cdef int _eval_one(self, int p0, const int *point) nogil:
        cdef int t, j, p, acc = 0
        for t in range(self.poly_start[p0], self.poly_start[p0 + 1]):
            p = self.polys.coeff[t]
            for j in range(self.polys.fact_start[t], self.polys.fact_start[t + 1]):
                p *= point[self.polys.fact_code[j]]
                if p == 0:
                    break
            acc += p
        return acc % 3

    def eval_at(self, point):
        cdef int *pt
        cdef int i, v
        if len(point) != self.nvars:
            raise ValueError(f"point must have {self.nvars} coordinates")
        pt = <int *> malloc(max(self.nvars, 1) * sizeof(int))
        if pt == NULL:
            raise MemoryError()
        try:
            for i in range(self.nvars):
                v = point[i]
                pt[i] = v
            return tuple([self._eval_one(i, pt) for i in range(self.npolys)])
        finally:
            free(pt)

    def count_all_zero(self):
        """Count points of F_3^nvars where every polynomial vanishes."""
        cdef int n = self.nvars
        cdef int point[16]
        cdef long long total = 1, count = 0, it
        cdef int i, p
        cdef bint ok
        if n > 16:
            raise ValueError("refusing to enumerate 3^%d points" % n)
        for i in range(n):
            point[i] = 0
            total *= 3
        with nogil:
            for it in range(total):
                ok = True
                for p in range(self.npolys):
                    if self._eval_one(p, point) != 0:
                        ok = False
                        break
                if ok:
                    count += 1
                i = n - 1
                while i >= 0:
                    point[i] += 1
                    if point[i] == 3:
                        point[i] = 0
                        i -= 1
                    else:
                        break
        return count
