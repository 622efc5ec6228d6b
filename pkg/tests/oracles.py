"""Independent oracles used to freeze expected values.

These deliberately avoid the library's own solution paths: exact-rational
normal equations for the polynomial fit, bisection for the allocation
water level, and plain scans for maxima/breaches.
"""

from __future__ import annotations

from fractions import Fraction


def exact_wls_coefficients(values, order, discount):
    """Solve the discounted WLS normal equations in exact rationals.

    Time runs t = -(n-1)..0 with weight discount**(-t). `values` and
    `discount` are converted via Fraction, so pass rationals or exact
    floats.
    """
    n = len(values)
    rho = Fraction(discount)
    ts = [Fraction(t) for t in range(-(n - 1), 1)]
    ws = [rho ** (-t) for t in ts]
    ys = [Fraction(v) for v in values]

    dim = order + 1
    ata = [[sum(w * t ** (i + j) for w, t in zip(ws, ts)) for j in range(dim)]
           for i in range(dim)]
    atb = [sum(w * (t ** i) * y for w, t, y in zip(ws, ts, ys)) for i in range(dim)]

    # Gaussian elimination with partial pivoting, all in Fraction
    m = [row[:] + [b] for row, b in zip(ata, atb)]
    for col in range(dim):
        pivot = max(range(col, dim), key=lambda r: abs(m[r][col]))
        if m[pivot][col] == 0:
            raise ZeroDivisionError("singular normal equations")
        m[col], m[pivot] = m[pivot], m[col]
        for r in range(dim):
            if r != col and m[r][col] != 0:
                factor = m[r][col] / m[col][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[col])]
    return [m[i][dim] / m[i][i] for i in range(dim)]


def eval_poly(coeffs, t):
    return sum(c * Fraction(t) ** i for i, c in enumerate(coeffs))


def bisection_water_level(demands, eff, target, iters=200):
    """Find lambda with sum_i min(d_i, lambda*e_i) = target by bisection."""
    positive = [(d, e) for d, e in zip(demands, eff) if e > 0]
    if not positive:
        return 0.0
    hi = max(d / e for d, e in positive) or 1.0
    lo = 0.0

    def placed(lam):
        return sum(min(d, lam * e) for d, e in zip(demands, eff))

    for _ in range(iters):
        mid = (lo + hi) / 2
        if placed(mid) < target:
            lo = mid
        else:
            hi = mid
    return hi


def bisection_awards(demands, eff, supply):
    total = sum(demands)
    if supply >= total:
        return list(demands)
    lam = bisection_water_level(demands, eff, supply)
    return [min(d, lam * e) for d, e in zip(demands, eff)]


def scan_max(values, days):
    best = values[0]
    for v in values[1:days]:
        if v > best:
            best = v
    return best


def scan_breach_days(active_values, kappa, availability, horizon):
    """1-based days where kappa*active exceeds availability."""
    return [i + 1 for i in range(horizon)
            if kappa * active_values[i] > availability]
