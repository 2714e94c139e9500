# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled subexpression kernels.  See ``_defects_py`` for the reference."""

import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef cnp.int32_t i32
ctypedef cnp.int64_t i64
ctypedef cnp.uint8_t u8


cdef inline int _bit_length(unsigned long long x) nogil:
    cdef int n = 0
    while x:
        x >>= 1
        n += 1
    return n


cdef int _step(const i32[::1] word, const i32[:, ::1] mul, const u8[:, ::1] up,
               i32* w, i32* d, int m, unsigned long long code, int first) nogil:
    cdef int i, s, wi, nxt
    for i in range(first, m):
        s = word[i]
        wi = w[i]
        if (code >> (m - 1 - i)) & 1:
            nxt = mul[wi, s]
            if nxt < 0:
                return -1
            w[i + 1] = nxt
            d[i + 1] = d[i]
        else:
            w[i + 1] = wi
            d[i + 1] = d[i] + (1 if up[wi, s] else -1)
    return 0


def defect_histogram(word, mul, up, int start, int n_elements):
    cdef const i32[::1] wv = np.ascontiguousarray(word, dtype=np.int32)
    cdef const i32[:, ::1] mv = np.ascontiguousarray(mul, dtype=np.int32)
    cdef const u8[:, ::1] uv = np.ascontiguousarray(up, dtype=np.uint8)
    cdef int m = wv.shape[0]
    if m > 62:
        raise ValueError("expression too long")
    out = np.zeros((n_elements, 2 * m + 1), dtype=np.int64)
    cdef i64[:, ::1] ov = out
    cdef i32[64] w
    cdef i32[64] d
    cdef unsigned long long code, prev = 0, total = 1ULL << m
    cdef int first, bad = 0
    w[0] = start
    d[0] = 0
    with nogil:
        if _step(wv, mv, uv, w, d, m, 0, 0) < 0:
            bad = 1
        else:
            ov[w[m], d[m] + m] += 1
            code = 1
            while code < total:
                first = m - _bit_length(code ^ prev)
                if _step(wv, mv, uv, w, d, m, code, first) < 0:
                    bad = 1
                    break
                ov[w[m], d[m] + m] += 1
                prev = code
                code += 1
    if bad:
        raise IndexError("element table too short for this expression")
    return out


def expressing_codes(word, mul, up, int start, int target):
    cdef const i32[::1] wv = np.ascontiguousarray(word, dtype=np.int32)
    cdef const i32[:, ::1] mv = np.ascontiguousarray(mul, dtype=np.int32)
    cdef const u8[:, ::1] uv = np.ascontiguousarray(up, dtype=np.uint8)
    cdef int m = wv.shape[0]
    if m > 62:
        raise ValueError("expression too long")
    cdef i32[64] w
    cdef i32[64] d
    cdef unsigned long long code = 0, prev = 0, total = 1ULL << m
    cdef int first
    codes = []
    defects = []
    w[0] = start
    d[0] = 0
    while code < total:
        first = 0 if code == 0 else m - _bit_length(code ^ prev)
        if _step(wv, mv, uv, w, d, m, code, first) < 0:
            raise IndexError("element table too short for this expression")
        if w[m] == target:
            codes.append(code)
            defects.append(d[m])
        prev = code
        code += 1
    return np.array(codes, dtype=np.int64), np.array(defects, dtype=np.int64)
