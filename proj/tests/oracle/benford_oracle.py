#!/usr/bin/env python3
"""Independent oracle for the frozen expected values in tests/oracle_values.hpp.

Re-implements, without sharing any code with the C++ library:
  * Benford expectations by direct summation,
  * MAD / chi-square by the textbook formulas,
  * the pinned random pipeline (mt19937_64, splitmix64 seed mixing,
    rejection-bounded integers, partial Fisher-Yates sampling) so that the
    Monte-Carlo values are bit-for-bit the ones the library must reproduce.

Run: python3 tests/oracle/benford_oracle.py
"""
import math

MASK = (1 << 64) - 1


class MT19937_64:
    N, M = 312, 156
    MATRIX_A = 0xB5026F5AA96619E9
    UPPER, LOWER = 0xFFFFFFFF80000000, 0x7FFFFFFF

    def __init__(self, seed):
        self.mt = [0] * self.N
        self.mt[0] = seed & MASK
        for i in range(1, self.N):
            prev = self.mt[i - 1]
            self.mt[i] = (6364136223846793005 * (prev ^ (prev >> 62)) + i) & MASK
        self.idx = self.N

    def _twist(self):
        mt = self.mt
        for i in range(self.N):
            x = (mt[i] & self.UPPER) | (mt[(i + 1) % self.N] & self.LOWER)
            xa = x >> 1
            if x & 1:
                xa ^= self.MATRIX_A
            mt[i] = mt[(i + self.M) % self.N] ^ xa
        self.idx = 0

    def __call__(self):
        if self.idx >= self.N:
            self._twist()
        y = self.mt[self.idx]
        self.idx += 1
        y ^= (y >> 29) & 0x5555555555555555
        y ^= (y << 17) & 0x71D67FFFEDA60000
        y ^= (y << 37) & 0xFFF7EEE000000000
        y ^= y >> 43
        return y & MASK


def below(rng, rng_range):
    threshold = ((1 << 64) - rng_range) % rng_range
    while True:
        r = rng()
        if r >= threshold:
            return r % rng_range


def unit(rng):
    return (rng() >> 11) * 2.0 ** -53


def splitmix(z):
    z &= MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
    return z ^ (z >> 31)


def derive_seed(master, index):
    return splitmix(master + (index + 1) * 0x9E3779B97F4A7C15)


def sample_indices(total, n, rng):
    idx = list(range(total))
    for i in range(n):
        j = i + below(rng, total - i)
        idx[i], idx[j] = idx[j], idx[i]
    return idx[:n]


def uniform_mixture(count, s_max, law, seed):
    rng = MT19937_64(seed)
    log_max = math.log(s_max)
    out = []
    for _ in range(count):
        if law == "log_uniform":
            s = int(math.floor(math.exp(unit(rng) * log_max) + 0.5))
            s = min(max(s, 1), s_max)
        else:
            s = 1 + below(rng, s_max)
        out.append(1 + below(rng, s))
    return out


def planted(values, f, v, seed):
    rng = MT19937_64(seed)
    k = int(math.floor(f * len(values) + 0.5))
    out = list(values)
    for i in sample_indices(len(values), k, rng):
        out[i] = v
    return out


def padded(values, step, p, seed):
    rng = MT19937_64(seed)
    out = []
    for x in values:
        if unit(rng) < p:
            x = -(-x // step) * step
        out.append(x)
    return out


# Digit extraction via string rendering.
def digit(v, base, pos):
    if v == 0:
        return None
    s = []
    while v:
        s.append(v % base)
        v //= base
    s.reverse()
    return s[pos - 1] if len(s) >= pos else None


def benford(base, pos):
    if pos == 1:
        return {d: math.log(1 + 1 / d, base) for d in range(1, base)}
    return {k: sum(math.log(1 + 1 / (j * base + k), base) for j in range(1, base))
            for k in range(base)}


def freqs(values, base, pos):
    digs = [digit(v, base, pos) for v in values]
    digs = [d for d in digs if d is not None]
    keys = range(1, base) if pos == 1 else range(base)
    return {d: digs.count(d) / len(digs) for d in keys}, len(digs)


def mad(a, b):
    return sum(abs(a[d] - b[d]) for d in a) / len(a)


def main():
    # Sanity: C++ standard mandates the 10000th output of a default mt19937_64.
    g = MT19937_64(5489)
    for _ in range(9999):
        g()
    assert g() == 9981545732273789042

    b1, b2 = benford(10, 1), benford(10, 2)
    print("first row  ", [round(b1[d], 3) for d in b1])
    print("second row ", [round(b2[d], 3) for d in b2])
    print("exact mean 1  %.17g" % sum(d * p for d, p in b1.items()))
    print("exact mean 2  %.17g" % sum(d * p for d, p in b2.items()))
    print("printed mean 1 %.17g" % sum(d * round(p, 3) for d, p in b1.items()))
    print("printed mean 2 %.17g" % sum(d * round(p, 3) for d, p in b2.items()))
    print("mad uniform vs benford %.17g" % (sum(abs(1 / 9 - b1[d]) for d in b1) / 9))
    print("chi2 900 uniform %.17g" % sum((100 - 900 * b1[d]) ** 2 / (900 * b1[d]) for d in b1))

    print("derive_seed(42, 0) = %d" % derive_seed(42, 0))
    print("derive_seed(42, 9) = %d" % derive_seed(42, 9))
    r = MT19937_64(7)
    print("below(7, 1000) x3 =", [below(r, 1000) for _ in range(3)])

    # Generators (pinned seeds).
    M = 100000
    base_vals = uniform_mixture(M, 10 ** 7, "log_uniform", 20140709)
    fb, _ = freqs(base_vals, 10, 1)
    mad_mix = mad(fb, b1)
    print("mixture first 5", base_vals[:5])
    print("MAD mixture %.17g" % mad_mix)

    pl = planted(base_vals, 0.3, 500000, 11)
    mad_pl = mad(freqs(pl, 10, 1)[0], b1)
    print("MAD planted %.17g" % mad_pl)

    pd = padded(base_vals, 100, 0.8, 13)
    mad_pd = mad(freqs(pd, 10, 1)[0], b1)
    print("MAD padded %.17g" % mad_pd)

    pd1 = padded(base_vals, 100, 1.0, 13)
    f2_before = freqs(base_vals, 10, 2)[0]
    f2_after = freqs(pd1, 10, 2)[0]
    print("2nd-digit zero mass before %.17g after %.17g" % (f2_before[0], f2_after[0]))

    # Sorted vs random on a 486250-record heavy-tailed fixture.
    N = 486250
    fixture = uniform_mixture(N, 54353496, "log_uniform", 486250)
    order = sorted(range(N), key=lambda i: -fixture[i])
    top = [fixture[i] for i in order[:20000]]
    mad_sorted = mad(freqs(top, 10, 1)[0], b1)
    per = []
    for r_i in range(10):
        rng = MT19937_64(derive_seed(42, r_i))
        sample = [fixture[i] for i in sample_indices(N, 20000, rng)]
        per.append(freqs(sample, 10, 1)[0])
    avg = {d: sum(p[d] for p in per) / 10 for d in b1}
    mad_random = mad(avg, b1)
    print("MAD sorted_top %.17g" % mad_sorted)
    print("MAD random avg %.17g" % mad_random)

    # N-sweep trend on a conforming source.
    for n in (5000, 10000, 15000, 20000):
        per = []
        for r_i in range(10):
            rng = MT19937_64(derive_seed(42, r_i))
            sample = [fixture[i] for i in sample_indices(N, n, rng)]
            per.append(freqs(sample, 10, 1)[0])
        avg = {d: sum(p[d] for p in per) / 10 for d in b1}
        print("sweep n=%d MAD %.17g" % (n, mad(avg, b1)))


if __name__ == "__main__":
    main()
