# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled spherical scan kernel; same contract as ``_scan_py.scan_range``.

Values are int64; the caller guarantees no intermediate can overflow.
"""
from array import array

from libc.stdlib cimport malloc, free


cdef Py_ssize_t _scan(long long[:, :] gram, long long[:] W, long long[:] Bv,
                      long long beta_s, long long c_s, long long D,
                      long long bound, long long r_lo, long long r_hi,
                      long long[:] out, Py_ssize_t cap) noexcept nogil:
    cdef Py_ssize_t rho = gram.shape[0]
    cdef Py_ssize_t i, j, k, n = 0
    cdef long long r, s, im, q, acc, re0, num, r_beta, r_c
    cdef long long *l = <long long *> malloc(rho * sizeof(long long))
    cdef bint done
    if l == NULL:
        return -1
    for r in range(r_lo, r_hi):
        r_beta = r * beta_s
        r_c = r * c_s
        for i in range(rho):
            l[i] = -bound
        done = False
        while not done:
            im = 0
            for i in range(rho):
                im += l[i] * W[i]
            if im == r_beta:
                q = 0
                for i in range(rho):
                    acc = 0
                    for j in range(rho):
                        acc += gram[i, j] * l[j]
                    q += l[i] * acc
                re0 = -r_c
                for i in range(rho):
                    re0 += l[i] * Bv[i]
                if r == 0:
                    if q == -2:
                        for s in range(-bound, bound + 1):
                            if re0 - D * s <= 0:
                                if n < cap:
                                    out[n * (rho + 2)] = r
                                    for k in range(rho):
                                        out[n * (rho + 2) + 1 + k] = l[k]
                                    out[n * (rho + 2) + rho + 1] = s
                                n += 1
                else:
                    num = q + 2
                    if num % (2 * r) == 0:
                        s = num // (2 * r)
                        if -bound <= s <= bound and re0 - D * s <= 0:
                            if n < cap:
                                out[n * (rho + 2)] = r
                                for k in range(rho):
                                    out[n * (rho + 2) + 1 + k] = l[k]
                                out[n * (rho + 2) + rho + 1] = s
                            n += 1
            # odometer, last coordinate fastest (matches itertools.product)
            i = rho - 1
            while True:
                if l[i] < bound:
                    l[i] += 1
                    break
                l[i] = -bound
                if i == 0:
                    done = True
                    break
                i -= 1
    free(l)
    return n


def scan_range(gram, W, Bv, long long beta_s, long long c_s, long long D,
               long long bound, long long r_lo, long long r_hi):
    cdef Py_ssize_t rho = len(gram)
    flat = array("q", [x for row in gram for x in row])
    cdef long long[:, :] gv = memoryview(flat).cast("B").cast("q", [rho, rho])
    cdef long long[:] Wv = array("q", W)
    cdef long long[:] Bvv = array("q", Bv)
    cdef Py_ssize_t cap = 256
    cdef Py_ssize_t n
    cdef long long[:] outv
    while True:
        buf = array("q", bytes(8 * cap * (rho + 2)))
        outv = buf
        with nogil:
            n = _scan(gv, Wv, Bvv, beta_s, c_s, D, bound, r_lo, r_hi, outv, cap)
        if n < 0:
            raise MemoryError
        if n <= cap:
            break
        cap = n
    width = rho + 2
    return [(buf[k * width], tuple(buf[k * width + 1:k * width + 1 + rho]), buf[k * width + rho + 1])
            for k in range(n)]
