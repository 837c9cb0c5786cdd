# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled partition/expand kernel; results match lzn.solver._pykernel exactly."""

from libc.stdint cimport uint64_t
from libc.stdlib cimport calloc, free
from libc.string cimport memcpy
from cpython.bytes cimport PyBytes_FromStringAndSize


cdef extern from *:
    int popcount64 "__builtin_popcountll"(unsigned long long)
    int ctz64 "__builtin_ctzll"(unsigned long long)


cdef class Kernel:
    cdef public int n
    cdef public int radius
    cdef int W
    cdef uint64_t* sph      # [n][radius][W]
    cdef uint64_t* clo      # [n][W]
    cdef uint64_t* buf_a    # [n][W] partition scratch
    cdef uint64_t* buf_b
    cdef uint64_t* word     # [W] scratch

    def __cinit__(self, dist, closed):
        cdef int n = len(dist)
        cdef int radius = max(max(row) for row in dist) + 1
        cdef int W = (n + 63) // 64
        cdef int u, x, d
        self.n = n
        self.radius = radius
        self.W = W
        self.sph = <uint64_t*> calloc(n * radius * W, sizeof(uint64_t))
        self.clo = <uint64_t*> calloc(n * W, sizeof(uint64_t))
        self.buf_a = <uint64_t*> calloc(n * W, sizeof(uint64_t))
        self.buf_b = <uint64_t*> calloc(n * W, sizeof(uint64_t))
        self.word = <uint64_t*> calloc(W, sizeof(uint64_t))
        if not (self.sph and self.clo and self.buf_a and self.buf_b and self.word):
            raise MemoryError()
        for u in range(n):
            row = dist[u]
            for x in range(n):
                d = row[x]
                self.sph[(u * radius + d) * W + x // 64] |= (<uint64_t> 1) << (x % 64)
            self._load(closed[u], self.clo + u * W)

    def __dealloc__(self):
        free(self.sph)
        free(self.clo)
        free(self.buf_a)
        free(self.buf_b)
        free(self.word)

    cdef void _load(self, object value, uint64_t* out):
        cdef bytes raw = (<object> value).to_bytes(self.W * 8, "little")
        memcpy(out, <char*> raw, self.W * 8)

    cdef object _store(self, uint64_t* w):
        return int.from_bytes(PyBytes_FromStringAndSize(<char*> w, self.W * 8), "little")

    cdef int _partition(self, probe) except -1:
        """Leaves the classes in buf_a (in order) and returns their count."""
        cdef int W = self.W, R = self.radius
        cdef int nparts = 1, cnt, p, d, w, u
        cdef uint64_t t, nz, left
        cdef uint64_t* cur = self.buf_a
        cdef uint64_t* nxt = self.buf_b
        cdef uint64_t* tmp
        cdef uint64_t* layer
        cdef uint64_t* rest = self.word
        for u in probe:
            cnt = 0
            for p in range(nparts):
                memcpy(rest, cur + p * W, W * 8)
                for d in range(R):
                    layer = self.sph + (u * R + d) * W
                    nz = 0
                    for w in range(W):
                        t = rest[w] & layer[w]
                        nxt[cnt * W + w] = t
                        nz |= t
                    if nz:
                        left = 0
                        for w in range(W):
                            rest[w] ^= nxt[cnt * W + w]
                            left |= rest[w]
                        cnt += 1
                        if not left:
                            break
            tmp = cur
            cur = nxt
            nxt = tmp
            nparts = cnt
        if cur != self.buf_a:
            memcpy(self.buf_a, cur, nparts * W * 8)
        return nparts

    cdef int _count(self, uint64_t* m):
        cdef int w, c = 0
        for w in range(self.W):
            c += popcount64(m[w])
        return c

    cdef void _expand_into(self, uint64_t* m, uint64_t* out):
        cdef int W = self.W, w, v, x
        cdef uint64_t bits
        cdef uint64_t* nb
        for w in range(W):
            out[w] = 0
        for w in range(W):
            bits = m[w]
            while bits:
                x = w * 64 + ctz64(bits)
                bits &= bits - 1
                nb = self.clo + x * W
                for v in range(W):
                    out[v] |= nb[v]

    def classes(self, state, probe):
        self._load(state, self.buf_a)
        cdef int k = self._partition(probe), i
        return [self._store(self.buf_a + i * self.W) for i in range(k)]

    def expand(self, mask):
        cdef uint64_t* tmp = <uint64_t*> calloc(self.W, sizeof(uint64_t))
        cdef uint64_t* out = <uint64_t*> calloc(self.W, sizeof(uint64_t))
        try:
            self._load(mask, tmp)
            self._expand_into(tmp, out)
            return self._store(out)
        finally:
            free(tmp)
            free(out)

    cdef tuple _successors(self, state, probe):
        cdef int W = self.W, k, i
        cdef uint64_t* out = <uint64_t*> calloc(W, sizeof(uint64_t))
        found = set()
        try:
            self._load(state, self.buf_a)
            k = self._partition(probe)
            for i in range(k):
                if self._count(self.buf_a + i * W) >= 2:
                    self._expand_into(self.buf_a + i * W, out)
                    found.add(self._store(out))
        finally:
            free(out)
        return tuple(sorted(found))

    def successors(self, state, probe):
        return self._successors(state, probe)

    def all_successors(self, state, probes):
        return [self._successors(state, p) for p in probes]

    def scores(self, state, probes):
        cdef int W = self.W, k, i, c, big
        cdef long long sq
        out = []
        for p in probes:
            self._load(state, self.buf_a)
            k = self._partition(p)
            big = 0
            sq = 0
            for i in range(k):
                c = self._count(self.buf_a + i * W)
                if c > big:
                    big = c
                sq += c * c
            out.append((big, sq))
        return out

    def restrict(self, state, int u, int d):
        if d >= self.radius:
            return 0
        cdef int W = self.W, w
        self._load(state, self.buf_a)
        cdef uint64_t* layer = self.sph + (u * self.radius + d) * W
        for w in range(W):
            self.buf_a[w] &= layer[w]
        return self._store(self.buf_a)
