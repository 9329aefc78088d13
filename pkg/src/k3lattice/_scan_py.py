"""Pure-Python spherical scan kernel (fallback for ``_scan_ext``).

All inputs are integers, pre-scaled by a common denominator ``D``:

    D * Im Z(r, l, s) = sum_i l_i W_i - r * beta_s
    D * Re Z(r, l, s) = sum_i l_i Bv_i - D * s - r * c_s

A hit is a spherical vector (l.l - 2 r s = -2) with Im Z = 0 and Re Z <= 0.
"""
import itertools


def scan_range(gram, W, Bv, beta_s, c_s, D, bound, r_lo, r_hi):
    rho = len(gram)
    hits = []
    box = range(-bound, bound + 1)
    for r in range(r_lo, r_hi):
        r_beta = r * beta_s
        r_c = r * c_s
        for l in itertools.product(box, repeat=rho):
            im = 0
            for i in range(rho):
                im += l[i] * W[i]
            if im != r_beta:
                continue
            q = 0
            for i in range(rho):
                gi = gram[i]
                acc = 0
                for j in range(rho):
                    acc += gi[j] * l[j]
                q += l[i] * acc
            re0 = -r_c
            for i in range(rho):
                re0 += l[i] * Bv[i]
            if r == 0:
                if q != -2:
                    continue
                for s in box:
                    if re0 - D * s <= 0:
                        hits.append((r, l, s))
            else:
                num = q + 2
                if num % (2 * r):
                    continue
                s = num // (2 * r)
                if -bound <= s <= bound and re0 - D * s <= 0:
                    hits.append((r, l, s))
    return hits
