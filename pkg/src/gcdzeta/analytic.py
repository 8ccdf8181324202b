"""Sieved summatory scans, main-term fitting, and extremal-order probes.

The partial sums of both A_r and the Piltz divisor function tau_k behave
like x times a polynomial in log x.  Only the leading coefficient has a
closed form (an Euler product for A_r, 1/(k-1)! for tau_k); the lower
coefficients here are fitted, never derived, and the reports keep the two
provenances separate.  All float accumulation is exactly-rounded block
summation in a fixed order, so repeated runs are byte-identical.
"""

from __future__ import annotations

import csv
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .arith import primes_in_range, primes_upto
from .dirichlet import f_r_local
from .errors import DomainError, NumericalError, ResourceError

# A float table of this many entries is the largest scan we attempt.
SCAN_LIMIT = 10**8


@dataclass
class SummatoryReport:
    """Checkpointed partial sums of one function plus the fitted main term.

    fitted_poly lists Q's coefficients ascending in log x, with the leading
    coefficient pinned to fixed_leading (the closed-form value).
    fitted_leading_free comes from a companion fit with the leading
    coefficient left free, so it can cross-validate the closed form.
    Residuals are S(x) - x Q(log x) at every checkpoint.  Fit fields stay
    empty when the checkpoint span is too narrow to condition the fit.
    """

    kind: str
    r_or_k: int
    x_max: int
    checkpoints: list[tuple[int, float]]
    degree: int
    fixed_leading: float
    euler_leading: float
    euler_tail_bound: float
    fitted_poly: list[float] = field(default_factory=list)
    fitted_leading_free: float = math.nan
    residuals: list[tuple[int, float]] = field(default_factory=list)
    elapsed: float = 0.0

    def main_term(self, x: float) -> float:
        if not self.fitted_poly:
            raise NumericalError("report carries no fitted main term")
        t = math.log(x)
        acc = 0.0
        for c in reversed(self.fitted_poly):
            acc = acc * t + c
        return x * acc

    def to_dict(self) -> dict:
        # elapsed is deliberately not serialized: identical configurations
        # must produce byte-identical exports, and wall time never does
        return {
            "kind": self.kind,
            "r_or_k": self.r_or_k,
            "x_max": self.x_max,
            "degree": self.degree,
            "fixed_leading": self.fixed_leading,
            "euler_leading": self.euler_leading,
            "euler_tail_bound": self.euler_tail_bound,
            "fitted_poly": list(self.fitted_poly),
            "fitted_leading_free": self.fitted_leading_free,
            "checkpoints": [[int(x), s] for x, s in self.checkpoints],
            "residuals": [[int(x), r] for x, r in self.residuals],
        }


@dataclass(frozen=True)
class ExtremalSample:
    """The normalized growth statistic at the squarefree extremal modulus.

    The modulus is the product of all primes in (x/log x, x]; it is never
    materialized, everything stays in the log domain.
    """

    x: int
    log_n_x: float
    omega_n_x: int
    log_a_r: float
    statistic: float

    def to_dict(self) -> dict:
        return {
            "x": self.x,
            "log_n_x": self.log_n_x,
            "omega_n_x": self.omega_n_x,
            "log_a_r": self.log_a_r,
            "statistic": self.statistic,
        }


def _a_local_float(p: int, k: int, r: int) -> float:
    t = 1.0 - 1.0 / p
    acc = 0.0
    power = 1.0
    for j in range(r + 1):
        acc += math.comb(k + j - 1, j) * power
        power *= t
    return acc


def _value_table(kind: str, param: int, x_max: int) -> np.ndarray:
    """vals[n] = f(n) in float64 for n <= x_max, multiplicatively sieved.

    One pass per prime power: entries divisible by p^k pick up the ratio
    local(p, k) / local(p, k-1), which leaves exactly local(p, v_p(n))
    multiplied in for every n.
    """
    vals = np.ones(x_max + 1)
    vals[0] = 0.0
    for p in primes_upto(x_max):
        pk = p
        k = 1
        prev = 1.0
        while pk <= x_max:
            if kind == "A":
                loc = _a_local_float(p, k, param)
            else:
                loc = float(math.comb(k + param - 1, param - 1))
            vals[pk::pk] *= loc / prev
            prev = loc
            pk *= p
            k += 1
    return vals


def _geometric_checkpoints(x_max: int, count: int) -> list[int]:
    x_min = max(10, x_max // 1000)
    if x_min >= x_max:
        return [x_max]
    pts = np.geomspace(x_min, x_max, count)
    cps = sorted(set(int(round(v)) for v in pts))
    cps[-1] = x_max
    return sorted(set(cps))


def summatory_scan(
    kind: str,
    r_or_k: int,
    x_max: int,
    checkpoint_count: int = 40,
    prime_limit: int | None = None,
) -> SummatoryReport:
    """Scan partial sums of A_r (kind="A") or tau_k (kind="tau") to x_max.

    Checkpoints are geometrically spaced.  When they span at least two
    decades the main term is fitted (leading coefficient pinned to the
    closed form) and residuals are recorded; otherwise the fit fields are
    left empty and only the sums are reported.
    """
    if kind not in ("A", "tau"):
        raise DomainError(f"unknown scan kind {kind!r}")
    if r_or_k < 1:
        raise DomainError(f"function order must be >= 1, got {r_or_k}")
    if x_max < 10:
        raise DomainError(f"x_max must be >= 10, got {x_max}")
    if x_max > SCAN_LIMIT:
        raise ResourceError(f"scan to {x_max} exceeds guard {SCAN_LIMIT}")
    t0 = time.perf_counter()

    vals = _value_table(kind, r_or_k, x_max)
    cps = _geometric_checkpoints(x_max, checkpoint_count)
    checkpoints: list[tuple[int, float]] = []
    block_sums: list[float] = []
    prev = 0
    for x in cps:
        block_sums.append(math.fsum(vals[prev + 1 : x + 1]))
        checkpoints.append((x, math.fsum(block_sums)))
        prev = x

    if kind == "A":
        degree = r_or_k
        limit = prime_limit if prime_limit is not None else max(100, min(x_max, 10**6))
        euler_leading, euler_tail = euler_leading_coefficient(r_or_k, limit)
        fixed = euler_leading
    else:
        degree = r_or_k - 1
        fixed = 1.0 / math.factorial(r_or_k - 1)
        euler_leading, euler_tail = fixed, 0.0

    report = SummatoryReport(
        kind=kind,
        r_or_k=r_or_k,
        x_max=x_max,
        checkpoints=checkpoints,
        degree=degree,
        fixed_leading=fixed,
        euler_leading=euler_leading,
        euler_tail_bound=euler_tail,
    )
    xs = [x for x, _ in checkpoints]
    wide_enough = len(checkpoints) >= degree + 2 and xs[-1] >= 100 * xs[0]
    if wide_enough:
        report.fitted_poly = fit_main_term(checkpoints, degree, fixed)
        free = fit_main_term(checkpoints, degree, None)
        report.fitted_leading_free = free[-1]
        report.residuals = [
            (x, s - report.main_term(x)) for x, s in checkpoints
        ]
    report.elapsed = time.perf_counter() - t0
    return report


def write_checkpoint_csv(path: str, report: SummatoryReport) -> None:
    """Write the checkpoint table as CSV: x, sum, main_term, residual.

    The fit columns stay empty when the report carries no fitted main
    term.  Floats go through repr, so reruns are byte-identical.
    """
    residuals = dict(report.residuals)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x", "sum", "main_term", "residual"])
        for x, s in report.checkpoints:
            if x in residuals:
                writer.writerow(
                    [x, repr(s), repr(report.main_term(x)), repr(residuals[x])]
                )
            else:
                writer.writerow([x, repr(s), "", ""])


def fit_main_term(
    checkpoints: list[tuple[int, float]],
    degree: int,
    fixed_leading: float | None,
) -> list[float]:
    """Least-squares fit of S(x) = x Q(log x), coefficients ascending.

    With fixed_leading given, the leading coefficient of Q is constrained
    to it and only the lower coefficients are solved for.  The fit
    minimizes the absolute residuals S(x) - x Q(log x); weighting the
    relative form S(x)/x by anything less keeps the small-x noise from
    leaking a linear-in-x bias into the large-x residuals.
    """
    if degree < 0:
        raise DomainError(f"degree must be >= 0, got {degree}")
    if len(checkpoints) < degree + 2:
        raise DomainError(
            f"need at least {degree + 2} checkpoints, got {len(checkpoints)}"
        )
    xs = np.array([float(x) for x, _ in checkpoints])
    sums = np.array([s for _, s in checkpoints])
    if xs.max() < 100 * xs.min():
        raise DomainError("checkpoints must span at least two decades")
    logs = np.log(xs)

    n_free = degree + 1 if fixed_leading is None else degree
    if n_free == 0:
        return [fixed_leading]
    design = np.column_stack([xs * logs**j for j in range(n_free)])
    target = sums.copy()
    if fixed_leading is not None:
        target = target - fixed_leading * xs * logs**degree

    scale = np.linalg.norm(design, axis=0)
    cond = np.linalg.cond(design / scale)
    if not np.isfinite(cond) or cond > 1e10:
        raise NumericalError(
            f"fit is ill-conditioned (cond={cond:.2e}); "
            "use more or wider checkpoints"
        )
    coef, *_ = np.linalg.lstsq(design / scale, target, rcond=None)
    coef = coef / scale
    out = list(coef)
    if fixed_leading is not None:
        out.append(fixed_leading)
    return [float(c) for c in out]


def euler_leading_coefficient(
    r: int, prime_limit: int, tail_terms: int = 1000
) -> tuple[float, float]:
    """Leading coefficient of the A_r main-term polynomial:

        (1/r!) prod_p (1 + sum_{k=1}^{r} f_r(p^k) / p^k),

    truncated at prime_limit, each local factor evaluated exactly before
    conversion.  The returned tail bound uses that every f_r(p^k) has zero
    constant term as a polynomial in 1/p, so |f_r(p^k)| <= M/p with M the
    largest coefficient-magnitude sum, making each omitted factor
    1 + O(1/p^2).
    """
    if r < 1:
        raise DomainError(f"r must be >= 1, got {r}")
    if prime_limit < 100:
        raise DomainError(f"prime_limit must be >= 100, got {prime_limit}")
    if tail_terms < 1:
        raise DomainError(f"tail_terms must be >= 1, got {tail_terms}")
    polys = [f_r_local(r, k) for k in range(1, r + 1)]
    coeff_mass = max(sum(abs(c) for c in poly.coefficients) for poly in polys)

    product = 1.0
    for p in primes_upto(prime_limit):
        u = Fraction(1, p)
        factor = Fraction(1)
        pk = p
        for poly in polys:
            factor += poly.evaluate(u) / pk
            pk *= p
        product *= float(factor)
    value = product / math.factorial(r)

    # |sum_k f_r(p^k)/p^k| <= M/(p(p-1)) <= 2M/p^2, and |log(1+d)| <= 2|d|
    # for |d| <= 1/2, so the omitted log mass is below 4M sum_{m>P} 1/m^2.
    lo = prime_limit
    explicit = math.fsum(1.0 / m**2 for m in range(lo + 1, lo + tail_terms + 1))
    log_tail = 4.0 * coeff_mass * (explicit + 1.0 / (lo + tail_terms))
    tail_bound = abs(value) * math.expm1(log_tail)
    return value, tail_bound


def residual_exponent_estimate(report: SummatoryReport) -> float:
    """Slope of log |R(x)| against log x over the report's residuals.

    Points with |R| < 1 are ignored (they sit inside the rounding floor
    and their logs would swamp the regression).
    """
    residuals = report.residuals
    if len(residuals) < 10:
        raise NumericalError(
            f"need at least 10 residual points, got {len(residuals)}"
        )
    xs_all = [x for x, _ in residuals]
    if max(xs_all) < 100 * min(xs_all):
        raise NumericalError("residuals must span at least two decades")
    usable = [(x, abs(res)) for x, res in residuals if abs(res) >= 1.0]
    if len(usable) < 2:
        raise NumericalError("not enough residuals with |R| >= 1")
    lx = np.log([x for x, _ in usable])
    ly = np.log([v for _, v in usable])
    slope = np.polyfit(lx, ly, 1)[0]
    return float(slope)


def omega_bound_exponents(r: int) -> tuple[float, float, float]:
    """The three exponents of the lower-bound reference curve b_r."""
    if r < 1:
        raise DomainError(f"r must be >= 1, got {r}")
    e1 = r / (2 * r + 2)
    e2 = ((r + 2) / (2 * r + 2)) * ((r + 1) ** ((2 * r + 2) / (r + 2)) - 1)
    e3 = -(3 * r + 2) / (4 * r + 4)
    return e1, e2, e3


def omega_bound(r: int, x: float) -> float:
    """Reference curve b_r(x) = (x log x)^e1 (log2 x)^e2 (log3 x)^e3.

    Emitted for comparison plots only; nothing asserts that residuals
    exceed it at finite x, since the underlying statement is about
    infinitely many x.
    """
    if x < 20:
        raise DomainError(f"x must be >= 20 so log3 x > 0, got {x}")
    e1, e2, e3 = omega_bound_exponents(r)
    l1 = math.log(x)
    l2 = math.log(l1)
    l3 = math.log(l2)
    return (x * l1) ** e1 * l2**e2 * l3**e3


def extremal_statistic(r: int, x: int) -> ExtremalSample:
    """Evaluate log A_r at the product of all primes in (x/log x, x].

    That modulus is squarefree, so each prime contributes the local value
    sum_{j=0}^{r} (1 - 1/p)^j = p (1 - (1 - 1/p)^(r+1)); sums of logs
    replace the (astronomically large) modulus itself.  The statistic
    log A_r(n) log log n / log n approaches log(r+1) along this family.
    """
    if r < 1:
        raise DomainError(f"r must be >= 1, got {r}")
    if x < 100:
        raise DomainError(f"x must be >= 100, got {x}")
    lo = int(x / math.log(x))
    ps = primes_in_range(lo, x)
    log_n = math.fsum(math.log(p) for p in ps)
    log_a = math.fsum(
        math.log(p * (1.0 - (1.0 - 1.0 / p) ** (r + 1))) for p in ps
    )
    statistic = log_a * math.log(log_n) / log_n
    return ExtremalSample(
        x=x,
        log_n_x=log_n,
        omega_n_x=len(ps),
        log_a_r=log_a,
        statistic=statistic,
    )
