# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled Felsch enumeration kernel.

Statement-for-statement twin of ``_felsch_py.run``; the two must produce
identical raw tables for identical inputs (the test suite enforces this).
See the pure Python module for the shared protocol documentation.
"""

from libc.stdint cimport int32_t
from libc.stdlib cimport free, malloc, realloc
from libc.string cimport memset

import numpy as np

KERNEL_NAME = "compiled"


cdef class _Engine:
    cdef:
        int32_t* table
        int32_t* parent
        int32_t* ded          # deduction stack, (coset, column) pairs
        int32_t* queue        # coincidence queue buffer
        int32_t* wflat        # relator conjugates, flattened
        int32_t* wstart
        int32_t* bflat        # bucket word indices per column, flattened
        int32_t* bstart
        int32_t* sflat        # subgroup words, flattened
        int32_t* sstart
        Py_ssize_t ncols, nrows, cap, max_rows
        Py_ssize_t live, high
        Py_ssize_t ded_len, ded_cap
        Py_ssize_t q_cap
        Py_ssize_t nwords, nsub
        bint exceeded

    def __cinit__(self):
        self.table = NULL
        self.parent = NULL
        self.ded = NULL
        self.queue = NULL
        self.wflat = NULL
        self.wstart = NULL
        self.bflat = NULL
        self.bstart = NULL
        self.sflat = NULL
        self.sstart = NULL

    def __dealloc__(self):
        free(self.table)
        free(self.parent)
        free(self.ded)
        free(self.queue)
        free(self.wflat)
        free(self.wstart)
        free(self.bflat)
        free(self.bstart)
        free(self.sflat)
        free(self.sstart)

    cdef int _setup(self, Py_ssize_t ncols, words, bucket_of, subgroup,
                    Py_ssize_t max_rows) except -1:
        cdef Py_ssize_t total, k, i
        self.ncols = ncols
        self.max_rows = max_rows
        self.exceeded = False

        self.nwords = len(words)
        total = 0
        for w in words:
            total += len(w)
        self.wflat = <int32_t*> malloc(max(total, 1) * sizeof(int32_t))
        self.wstart = <int32_t*> malloc((self.nwords + 1) * sizeof(int32_t))
        if self.wflat == NULL or self.wstart == NULL:
            raise MemoryError
        k = 0
        for i in range(self.nwords):
            self.wstart[i] = <int32_t> k
            for letter in words[i]:
                self.wflat[k] = <int32_t> letter
                k += 1
        self.wstart[self.nwords] = <int32_t> k

        total = 0
        for bucket in bucket_of:
            total += len(bucket)
        self.bflat = <int32_t*> malloc(max(total, 1) * sizeof(int32_t))
        self.bstart = <int32_t*> malloc((ncols + 1) * sizeof(int32_t))
        if self.bflat == NULL or self.bstart == NULL:
            raise MemoryError
        k = 0
        for i in range(ncols):
            self.bstart[i] = <int32_t> k
            for wi in bucket_of[i]:
                self.bflat[k] = <int32_t> wi
                k += 1
        self.bstart[ncols] = <int32_t> k

        self.nsub = len(subgroup)
        total = 0
        for w in subgroup:
            total += len(w)
        self.sflat = <int32_t*> malloc(max(total, 1) * sizeof(int32_t))
        self.sstart = <int32_t*> malloc((self.nsub + 1) * sizeof(int32_t))
        if self.sflat == NULL or self.sstart == NULL:
            raise MemoryError
        k = 0
        for i in range(self.nsub):
            self.sstart[i] = <int32_t> k
            for letter in subgroup[i]:
                self.sflat[k] = <int32_t> letter
                k += 1
        self.sstart[self.nsub] = <int32_t> k

        self.cap = 64 if max_rows > 64 else max_rows
        if self.cap < 1:
            self.cap = 1
        self.table = <int32_t*> malloc(self.cap * max(ncols, 1) * sizeof(int32_t))
        self.parent = <int32_t*> malloc(self.cap * sizeof(int32_t))
        if self.table == NULL or self.parent == NULL:
            raise MemoryError
        memset(self.table, 0xFF, ncols * sizeof(int32_t))  # row 0 := -1
        self.parent[0] = 0
        self.nrows = 1
        self.live = 1
        self.high = 1

        self.ded_cap = 256
        self.ded = <int32_t*> malloc(2 * self.ded_cap * sizeof(int32_t))
        self.ded_len = 0
        self.q_cap = 64
        self.queue = <int32_t*> malloc(self.q_cap * sizeof(int32_t))
        if self.ded == NULL or self.queue == NULL:
            raise MemoryError
        return 0

    cdef inline int32_t rep(self, int32_t k):
        cdef int32_t r = k
        cdef int32_t t
        while self.parent[r] != r:
            r = self.parent[r]
        while self.parent[k] != r:
            t = self.parent[k]
            self.parent[k] = r
            k = t
        return r

    cdef int push_ded(self, int32_t a, int32_t c) except -1:
        cdef int32_t* grown
        if self.ded_len >= self.ded_cap:
            self.ded_cap *= 2
            grown = <int32_t*> realloc(self.ded, 2 * self.ded_cap * sizeof(int32_t))
            if grown == NULL:
                raise MemoryError
            self.ded = grown
        self.ded[2 * self.ded_len] = a
        self.ded[2 * self.ded_len + 1] = c
        self.ded_len += 1
        return 0

    cdef int32_t define(self, int32_t alpha, int32_t c) except? -2:
        cdef Py_ssize_t newcap
        cdef int32_t* grown
        cdef int32_t beta
        if self.nrows >= self.max_rows:
            self.exceeded = True
            return -1
        if self.nrows >= self.cap:
            newcap = self.cap * 2
            if newcap > self.max_rows:
                newcap = self.max_rows
            grown = <int32_t*> realloc(self.table, newcap * max(self.ncols, 1) * sizeof(int32_t))
            if grown == NULL:
                raise MemoryError
            self.table = grown
            grown = <int32_t*> realloc(self.parent, newcap * sizeof(int32_t))
            if grown == NULL:
                raise MemoryError
            self.parent = grown
            self.cap = newcap
        beta = <int32_t> self.nrows
        memset(self.table + beta * self.ncols, 0xFF, self.ncols * sizeof(int32_t))
        self.parent[beta] = beta
        self.nrows += 1
        self.live += 1
        if self.live > self.high:
            self.high = self.live
        self.table[alpha * self.ncols + c] = beta
        self.table[beta * self.ncols + (c ^ 1)] = alpha
        self.push_ded(alpha, c)
        return beta

    cdef int merge(self, int32_t x, int32_t y, Py_ssize_t* qlen) except -1:
        cdef int32_t t
        cdef int32_t* grown
        x = self.rep(x)
        y = self.rep(y)
        if x != y:
            if x > y:
                t = x
                x = y
                y = t
            self.parent[y] = x
            self.live -= 1
            if qlen[0] >= self.q_cap:
                self.q_cap *= 2
                grown = <int32_t*> realloc(self.queue, self.q_cap * sizeof(int32_t))
                if grown == NULL:
                    raise MemoryError
                self.queue = grown
            self.queue[qlen[0]] = y
            qlen[0] += 1
        return 0

    cdef int coincidence(self, int32_t a, int32_t b) except -1:
        cdef Py_ssize_t qlen = 0, qi = 0
        cdef int32_t gamma, delta, mu, nu, c
        self.merge(a, b, &qlen)
        while qi < qlen:
            gamma = self.queue[qi]
            qi += 1
            for c in range(<int32_t> self.ncols):
                delta = self.table[gamma * self.ncols + c]
                if delta == -1:
                    continue
                self.table[delta * self.ncols + (c ^ 1)] = -1
                mu = self.rep(gamma)
                nu = self.rep(delta)
                if self.table[mu * self.ncols + c] != -1:
                    self.merge(nu, self.table[mu * self.ncols + c], &qlen)
                elif self.table[nu * self.ncols + (c ^ 1)] != -1:
                    self.merge(mu, self.table[nu * self.ncols + (c ^ 1)], &qlen)
                else:
                    self.table[mu * self.ncols + c] = nu
                    self.table[nu * self.ncols + (c ^ 1)] = mu
                    self.push_ded(mu, c)
        return 0

    cdef int scan(self, int32_t alpha, Py_ssize_t wi) except -1:
        cdef int32_t* w = self.wflat + self.wstart[wi]
        cdef Py_ssize_t j = (self.wstart[wi + 1] - self.wstart[wi]) - 1
        cdef Py_ssize_t i = 0
        cdef int32_t f = alpha, b = alpha, nxt, prv
        while i <= j:
            nxt = self.table[f * self.ncols + w[i]]
            if nxt == -1:
                break
            f = nxt
            i += 1
        if i > j:
            if f != b:
                self.coincidence(f, b)
            return 0
        while j >= i:
            prv = self.table[b * self.ncols + (w[j] ^ 1)]
            if prv == -1:
                break
            b = prv
            j -= 1
        if j < i:
            self.coincidence(f, b)
        elif j == i:
            self.table[f * self.ncols + w[i]] = b
            self.table[b * self.ncols + (w[i] ^ 1)] = f
            self.push_ded(f, w[i])
        return 0

    cdef int scan_and_fill(self, int32_t alpha, Py_ssize_t si) except -1:
        cdef int32_t* w = self.sflat + self.sstart[si]
        cdef Py_ssize_t j = (self.sstart[si + 1] - self.sstart[si]) - 1
        cdef Py_ssize_t i = 0
        cdef int32_t f = alpha, b = alpha
        while True:
            while i <= j and self.table[f * self.ncols + w[i]] != -1:
                f = self.table[f * self.ncols + w[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return 0
            while j >= i and self.table[b * self.ncols + (w[j] ^ 1)] != -1:
                b = self.table[b * self.ncols + (w[j] ^ 1)]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return 0
            if j == i:
                self.table[f * self.ncols + w[i]] = b
                self.table[b * self.ncols + (w[i] ^ 1)] = f
                self.push_ded(f, <int32_t> w[i])
                return 0
            self.define(f, w[i])
            if self.exceeded:
                return 0

    cdef int process_deductions(self) except -1:
        cdef int32_t alpha, c, beta, cinv
        cdef Py_ssize_t k
        while self.ded_len > 0:
            self.ded_len -= 1
            alpha = self.ded[2 * self.ded_len]
            c = self.ded[2 * self.ded_len + 1]
            if self.rep(alpha) != alpha:
                continue
            for k in range(self.bstart[c], self.bstart[c + 1]):
                self.scan(alpha, self.bflat[k])
                if self.parent[alpha] != alpha:
                    break
            if self.parent[alpha] != alpha:
                continue
            beta = self.table[alpha * self.ncols + c]
            if beta != -1 and self.rep(beta) == beta:
                cinv = c ^ 1
                for k in range(self.bstart[cinv], self.bstart[cinv + 1]):
                    self.scan(beta, self.bflat[k])
                    if self.parent[beta] != beta:
                        break
        return 0

    cdef int execute(self) except -1:
        cdef Py_ssize_t si
        cdef int32_t alpha, c
        for si in range(self.nsub):
            if self.sstart[si + 1] > self.sstart[si]:
                self.scan_and_fill(0, si)
                if self.exceeded:
                    return 0
                self.process_deductions()
        alpha = 0
        while alpha < <int32_t> self.nrows:
            if self.parent[alpha] == alpha:
                c = 0
                while c < <int32_t> self.ncols:
                    if self.parent[alpha] != alpha:
                        break
                    if self.table[alpha * self.ncols + c] == -1:
                        self.define(alpha, c)
                        if self.exceeded:
                            return 0
                        self.process_deductions()
                    c += 1
            alpha += 1
        return 0

    cdef tuple finish(self):
        cdef Py_ssize_t i, j
        if self.exceeded:
            return "exceeded", None, None, self.high
        table = np.empty((self.nrows, self.ncols), dtype=np.int32)
        parent = np.empty(self.nrows, dtype=np.int32)
        cdef int32_t[:, ::1] tview = table
        cdef int32_t[::1] pview = parent
        for i in range(self.nrows):
            pview[i] = self.parent[i]
            for j in range(self.ncols):
                tview[i, j] = self.table[i * self.ncols + j]
        return "complete", table, parent, self.high


def run(ncols, words, bucket_of, subgroup, max_rows):
    cdef _Engine engine = _Engine()
    engine._setup(ncols, words, bucket_of, subgroup, max_rows)
    engine.execute()
    return engine.finish()
