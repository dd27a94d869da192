"""Independent oracles for the frozen expected values used in the C++ tests.

Nothing here shares code with the library. Covering numbers are computed by
an O(n^2) partition DP (minimum number of runs whose span is at most r) rather
than by the greedy sweep, and closed-form costs are evaluated with mpmath at
50 digits. Run with `python3 tests/oracles/derive_values.py`.
"""
from fractions import Fraction
import itertools
import mpmath as mp

mp.mp.dps = 50


def min_runs(points, r):
    """Fewest runs of consecutive sorted points with span <= r."""
    pts = sorted(points)
    n = len(pts)
    best = [0] + [None] * n
    for j in range(1, n + 1):
        cands = [best[i] + 1 for i in range(j) if pts[j - 1] - pts[i] <= r]
        best[j] = min(cands)
    return best[n]


def brute_placements(points, r):
    """Exhaustive search over interval anchors at point coordinates."""
    pts = sorted(points)
    for k in range(1, len(pts) + 1):
        for anchors in itertools.combinations(pts, k):
            if all(any(a <= p <= a + r for a in anchors) for p in pts):
                return k
    return None


def reciprocal_truncation(r):
    pts = [Fraction(0)]
    n = 1
    while Fraction(1, n) >= r:
        pts.append(Fraction(1, n))
        n += 1
    return pts


def main():
    r = Fraction(1, 100)
    x = reciprocal_truncation(r)
    print("len generate(reciprocal(1), 0.01) =", len(x))
    print("N_0.01 of that set =", min_runs(x, r))
    loc = [p for p in x if p <= Fraction(1, 10)]
    print("localized count (center 0, R=0.1, r=0.01) =", min_runs(loc, r))
    gaps = [b - a for a, b in zip(sorted(x), sorted(x)[1:])]
    print("min gap =", min(gaps), float(min(gaps)))

    eq = [Fraction(i, 10) for i in range(11)]
    print("11 equispaced @0.1, r=0.1 brute =", brute_placements(eq, Fraction(1, 10)))

    # reciprocal(1) covering numbers at the count example grid
    # (independent of the truncation: exact counts of the infinite set)
    for k in range(9):
        rr = mp.mpf("1e-2") * mp.mpf("0.316") ** k
        print("count grid r_%d = %s" % (k, mp.nstr(rr, 15)))

    s, theta, rr = mp.mpf("0.4"), mp.mpf("0.5"), mp.mpf("1e-4")
    M = mp.ceil(rr ** (-(s + theta * (1 - s)) / 2))
    coarse = mp.ceil((1 / M) / rr ** theta)
    cost = M * rr ** s + coarse * rr ** (theta * s)
    print("two-scale s=0.4 theta=0.5 r=1e-4: M =", M, "coarse =", coarse,
          "cost =", mp.nstr(cost, 20))

    # mass distribution theta=1/2, r=1e-3
    ss = mp.mpf(1) / 3
    print("mass M =", mp.ceil(mp.mpf("1e-3") ** (-ss) - mp.mpf("1e-30")))

    # Hausdorff certificate, s=1, eps=0.1 with cost eps/2
    for s_, eps in [(1, mp.mpf("0.1"))]:
        s_ = mp.mpf(s_)
        delta = (eps / 2 * (1 - 2 ** -s_) * 2 ** s_) ** (1 / s_)
        print("hausdorff delta(s=1, eps=0.1) =", delta)


if __name__ == "__main__":
    main()
