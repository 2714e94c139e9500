"""Pure-Python subexpression kernels.  Same signatures as ``_defects``."""

import numpy as np


def _walk(word, mul, up, start):
    """Yield ``(code, element index, defect)`` for every 01-word in
    lexicographic order (first letter is the most significant bit)."""
    m = len(word)
    w = [start] * (m + 1)
    d = [0] * (m + 1)
    for i in range(m):
        s = word[i]
        d[i + 1] = d[i] + (1 if up[w[i]][s] else -1)
    yield 0, w[m], d[m]
    prev = 0
    for code in range(1, 1 << m):
        first = m - (code ^ prev).bit_length()
        for i in range(first, m):
            s = word[i]
            wi = w[i]
            if (code >> (m - 1 - i)) & 1:
                nxt = mul[wi][s]
                if nxt < 0:
                    raise IndexError("element table too short for this expression")
                w[i + 1] = nxt
                d[i + 1] = d[i]
            else:
                w[i + 1] = wi
                d[i + 1] = d[i] + (1 if up[wi][s] else -1)
        prev = code
        yield code, w[m], d[m]


def defect_histogram(word, mul, up, start, n_elements):
    """``out[x, d + m]`` counts 01-words expressing element ``x`` with defect ``d``."""
    word = [int(s) for s in word]
    m = len(word)
    mul_l = np.asarray(mul).tolist()
    up_l = np.asarray(up).tolist()
    out = np.zeros((n_elements, 2 * m + 1), dtype=np.int64)
    for _, x, d in _walk(word, mul_l, up_l, int(start)):
        out[x, d + m] += 1
    return out


def expressing_codes(word, mul, up, start, target):
    """Codes and defects of the 01-words expressing ``target``, in
    lexicographic order."""
    word = [int(s) for s in word]
    mul_l = np.asarray(mul).tolist()
    up_l = np.asarray(up).tolist()
    codes, defects = [], []
    for code, x, d in _walk(word, mul_l, up_l, int(start)):
        if x == target:
            codes.append(code)
            defects.append(d)
    return np.array(codes, dtype=np.int64), np.array(defects, dtype=np.int64)
