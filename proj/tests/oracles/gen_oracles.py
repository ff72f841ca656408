#!/usr/bin/env python3
"""Independent reference values for the C++ test suite.

Everything here is computed from first principles with Fractions or mpmath,
without calling into the library. Run it to regenerate frozen.json:

    python3 tests/oracles/gen_oracles.py > tests/oracles/frozen.json
"""
import itertools
import json
import math
from fractions import Fraction as F

import mpmath as mp

mp.mp.dps = 60


def s(x):
    return mp.nstr(mp.mpf(x), 50, strip_zeros=False)


def frac(x):
    return f"{x.numerator}/{x.denominator}"


out = {}

# Geometry ---------------------------------------------------------------
out["dist_point_plane"] = s(mp.fabs(1 + 1) / mp.sqrt(2))
out["minor_1x1"] = s(mp.mpf(2) * mp.mpf("0.6") + mp.mpf("0.8"))
out["minor_1x1_derivative"] = s(mp.mpf("0.6"))
out["gram_schmidt_entry"] = s(1 / mp.sqrt(2))

# split_rounds: minimal m with (1 - p2)^m <= 1 - p.
def split_rounds(p, p2):
    m = 1
    while (1 - p2) ** m > 1 - p:
        m += 1
    return m

out["split_rounds"] = [
    {"p": frac(p), "p2": frac(p2), "m": split_rounds(p, p2)}
    for p, p2 in [(F(1, 2), F(1, 2)), (F(3, 4), F(1, 2)), (F(9, 10), F(1, 2)),
                  (F(1, 2), F(1, 4)), (F(99, 100), F(1, 3))]
]

# Lacunary systems --------------------------------------------------------
fib = [2, 3]
while len(fib) < 40:
    fib.append(fib[-1] + fib[-2])
ratios = [F(fib[k + 1], fib[k]) for k in range(31)]
q = min(ratios)
out["fibonacci_lacunarity"] = {"q": frac(q), "argmin": 1 + ratios.index(q), "indices": 32}


def compute_nr(beta, q):
    n = 1
    while True:
        r = int(math.floor(math.log2(n))) + 1
        if (1 / beta) ** r <= q ** n:
            return n, r
        n += 1

out["compute_n_r"] = [
    {"beta": frac(b), "q": frac(qq), "n": compute_nr(b, qq)[0], "r": compute_nr(b, qq)[1]}
    for b, qq in [(F(1, 4), F(2)), (F(1, 2), F(4)), (F(1, 4), F(3)), (F(1, 5), F(3, 2)),
                  (F(1, 4), F(16))]
]


def window_of(beta, r, t1, t):
    j = 1
    while not (t1 * (1 / beta) ** (r * (j - 1)) <= t < t1 * (1 / beta) ** (r * j)):
        j += 1
    return j

out["window_of"] = [
    {"beta": "1/4", "r": 3, "t1": 1, "t": t, "j": window_of(F(1, 4), 3, 1, t)}
    for t in [1, 63, 64, 100, 4095, 4096, 10**6]
]

# The gate used by the library: rho1 < beta^r delta / (4 t1).
out["first_ball_gate"] = [
    {"beta": "1/4", "r": 3, "delta": d, "t1": t1, "gate": frac(F(1, 4) ** 3 * d / (4 * t1))}
    for d, t1 in [(1, 1), (4, 2), (1, 3)]
]

out["theoretical_c"] = [
    {"beta": "1/4", "r": r, "rho1": "1/1000", "t1": t1, "delta": frac(F(d)),
     "c": frac(min(F(1, 4) ** (r + 1) * F(1, 1000) * t1, F(d, 4)))}
    for r, t1, d in [(3, 1, 1), (3, 2, 1), (2, 3, 1), (3, 1, F(1, 10**6))]
]


def best_approx(alpha, qbound):
    best = None
    res = []
    for qq in range(1, qbound + 1):
        e = mp.fabs(qq * alpha - mp.nint(qq * alpha))
        if best is None or e < best:
            best = e
            res.append(qq)
    return res

phi = (1 + mp.sqrt(5)) / 2
out["best_approximations"] = {
    "phi": best_approx(phi, 100),
    "sqrt2": best_approx(mp.sqrt(2), 100),
}


def greedy(values, qmin):
    keep = [0]
    for i in range(1, len(values)):
        if values[i] >= qmin * values[keep[-1]]:
            keep.append(i)
    return keep

out["lacunary_subsequence"] = greedy([1, 2, 3, 5, 8, 13], 2)

# Bad_0 windows --------------------------------------------------------
def windows(m, n, R):
    R = mp.mpf(R)
    L = m + n
    lam = mp.mpf(n) / L
    delta = R ** (-n * L * L)
    delta_t = R ** (-m * L * L)
    return {
        "m": m, "n": n, "r": s(R),
        "delta": s(delta),
        "delta_t": s(delta_t),
        "x_bound": [s(delta * R ** (m * (lam + i))) for i in range(4)],
        "ax_bound": [s(delta * R ** (-n * (lam + i) - m)) for i in range(4)],
        "y_bound": [s(delta_t * R ** (n * (1 + j))) for j in range(4)],
        "by_bound": [s(delta_t * R ** (-m * (1 + j) - n)) for j in range(4)],
        "k_threshold": [s(R ** (-(n + L * i))) for i in range(4)],
        "h_threshold": [s(R ** (-L * (1 + j))) for j in range(4)],
        "observation_constant": s(delta ** L * R ** (-m * L)),
    }

out["windows"] = [windows(1, 1, 4), windows(2, 1, 8), windows(2, 3, "1.5")]


# Y-phase solutions for M = N = 1: exists A in the ball with |a y + z| < vb.
def enumerate_y(center, radius, R, j):
    R = mp.mpf(R)
    delta_t = R ** -4
    nb = delta_t * R ** (1 + j)
    vb = delta_t * R ** (-(1 + j) - 1)
    sols = []
    box = int(mp.floor(nb))
    for y in range(-box, box + 1):
        if y == 0 or abs(y) >= nb:
            continue
        for z in range(-box * 4 - 4, box * 4 + 5):
            if mp.fabs(mp.mpf(center) * y + z) < vb + mp.mpf(radius) * abs(y):
                sols.append([y, z])
    return sols

out["enumerate_s"] = [
    {"center": c, "radius": r, "r": 4, "j": j, "solutions": enumerate_y(c, r, 4, j)}
    for c, r, j in [("0", "1e-6", 4), ("0", "1e-6", 0), ("0.5", "1e-3", 4), ("0.3", "0.01", 5)]
]

# Finite-game constants ----------------------------------------------------
def schedule(order, beta, sigma):
    c = max(math.comb(order, v - 1) for v in range(1, order + 1))
    root = mp.sqrt(order)
    eps1 = 1 / (2 * root * c)
    eps2 = 1 / (2 * c * (1 + root * sigma))
    nu = [mp.mpf(1)]
    mu = []
    for v in range(1, order + 1):
        mu.append(beta ** 2 * eps2 * nu[-1] / (v * v))
        nu.append(min(beta ** 2 * eps2 * mu[-1] / (2 * v), eps1 / (v * sigma)))
    return {"order": order, "beta": s(beta), "sigma": s(sigma), "eps1": s(eps1),
            "eps2": s(eps2), "nu": [s(x) for x in nu], "mu": [s(x) for x in mu]}

out["schedules"] = [schedule(o, mp.mpf(1) / 4, mp.mpf(sig))
                    for o, sig in [(1, 1), (2, 1), (3, 2), (4, "1.5")]]

# Fractals --------------------------------------------------------------------
out["example34"] = {
    "fixed_points": [[0, 0], [0.5, 1], [1, 0]],
    "address_1": [0.4, 0.8],
    "dimension": float(mp.log(3) / mp.log(5)),
}
out["cantor_dimension"] = float(mp.log(2) / mp.log(3))
out["sierpinski_dimension"] = float(mp.log(3) / mp.log(2))

# Verification ------------------------------------------------------------------
def badness(alpha, qmax):
    best, arg = None, None
    for qq in range(-qmax, qmax + 1):
        if qq == 0:
            continue
        v = abs(qq) * mp.fabs(qq * alpha - mp.nint(qq * alpha))
        if best is None or v < best:
            best, arg = v, qq
    return float(best), arg

b_phi = badness(phi, 10000)
b_rt2 = badness(mp.sqrt(2), 10000)
out["badness"] = {
    "phi": {"inf": b_phi[0], "argmin": b_phi[1], "closed_form": float((3 - mp.sqrt(5)) / 2)},
    "sqrt2": {"inf": b_rt2[0], "argmin": b_rt2[1], "closed_form": float(6 - 4 * mp.sqrt(2))},
}


def cf(num, den):
    digits = []
    while den:
        a, r = divmod(num, den)
        digits.append(a)
        num, den = den, r
    return digits

out["continued_fractions"] = {
    "355/113": cf(355, 113),
    "-7/3": cf(-7, 3),
}


def cf_real(x, n):
    d = []
    for _ in range(n + 1):
        a = int(mp.floor(x))
        d.append(a)
        x = 1 / (x - a)
    return d

out["continued_fractions"]["sqrt2_20"] = cf_real(mp.sqrt(2), 20)
out["continued_fractions"]["e_12"] = cf_real(mp.e, 12)

out["escape_half"] = [float(mp.fabs(mp.mpf(3) ** k / 2 - mp.nint(mp.mpf(3) ** k / 2)))
                      for k in range(1, 21)]

print(json.dumps(out, indent=1, sort_keys=True))
