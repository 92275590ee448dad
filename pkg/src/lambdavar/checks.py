"""Seeded property suites, shared by the test suite and the check command.

Random inputs live on a dyadic grid (multiples of 1/64) so that breakpoint
arithmetic -- sums, translations, mixtures with power-of-two atom counts --
is exact in floating point.  Identities asserted with zero tolerance really
hold bit-for-bit on that class; everything else carries an explicit
tolerance.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from . import curves, dual, measures, profiles
from .curves import Cdf, from_samples, mixture, truncate_left, uniform
from .exceptions import BracketError, DualRangeError
from .measures import lambda_var, value_at_risk, worst_case
from .profiles import LossProfile, constant_profile, piecewise_profile, step_profile

GRAIN = 64


def dy(rng: random.Random, lo: float, hi: float) -> float:
    """A random multiple of 1/64 in [lo, hi]."""
    return rng.randint(round(lo * GRAIN), round(hi * GRAIN)) / GRAIN


def random_empirical(rng, max_atoms=20, lo=-8.0, hi=8.0, pow2=False) -> Cdf:
    if pow2:
        n = rng.choice([2, 4, 8, 16])
    else:
        n = rng.randint(1, max_atoms)
    return from_samples([dy(rng, lo, hi) for _ in range(n)])


def random_dominated_pair(rng):
    """(P, Q) with Q dominated by P: each sample of Q sits at or left of P's."""
    xs = [dy(rng, -8.0, 8.0) for _ in range(rng.randint(1, 20))]
    shifts = [dy(rng, 0.0, 4.0) for _ in xs]
    p = from_samples(xs)
    q = from_samples([x - s for x, s in zip(xs, shifts)])
    return p, q


def random_step_stack(rng, orientation=curves.NONDECREASING, jumps=4, cap=60) -> LossProfile:
    """Piecewise-constant profile with dyadic levels strictly below 1."""
    k = rng.randint(0, jumps)
    if k == 0:
        return constant_profile(rng.randint(0, cap) / GRAIN)
    xs = sorted(rng.sample(range(-8 * GRAIN, 8 * GRAIN), k))
    levels = sorted(rng.randint(0, cap) / GRAIN for _ in range(k + 1))
    if orientation == curves.NONINCREASING:
        levels = levels[::-1]
    pts = [(x / GRAIN, levels[i], levels[i + 1]) for i, x in enumerate(xs)]
    return piecewise_profile(pts, (levels[0], levels[-1]), orientation)


def random_ramp_profile(rng, orientation=curves.NONDECREASING, cap=60) -> LossProfile:
    """Continuous piecewise-linear profile with dyadic nodes."""
    k = rng.randint(2, 5)
    xs = sorted(rng.sample(range(-8 * GRAIN, 8 * GRAIN), k))
    levels = sorted(rng.randint(0, cap) / GRAIN for _ in range(k))
    if orientation == curves.NONINCREASING:
        levels = levels[::-1]
    pts = [(x / GRAIN, levels[i], levels[i]) for i, x in enumerate(xs)]
    return piecewise_profile(pts, (levels[0], levels[-1]), orientation)


def random_mixed_profile(rng, orientation=curves.NONDECREASING, cap=60) -> LossProfile:
    """Profile mixing jumps and ramps: monotone level chain split over nodes."""
    k = rng.randint(1, 5)
    xs = sorted(rng.sample(range(-8 * GRAIN, 8 * GRAIN), k))
    chain = sorted(rng.randint(0, cap) / GRAIN for _ in range(2 * k))
    if orientation == curves.NONINCREASING:
        chain = chain[::-1]
    pts = [(x / GRAIN, chain[2 * i], chain[2 * i + 1]) for i, x in enumerate(xs)]
    return piecewise_profile(pts, (chain[0], chain[-1]), orientation)


def random_profile(rng) -> LossProfile:
    """A feasible profile of a random kind and orientation."""
    kind = rng.randrange(7)
    if kind == 0:
        return constant_profile(rng.randint(0, 60) / GRAIN)
    if kind == 1:
        lo = rng.randint(0, 40) / GRAIN
        hi = rng.randint(round(lo * GRAIN), 60) / GRAIN
        return step_profile(lo, hi, dy(rng, -8.0, 8.0))
    if kind == 2:
        return random_step_stack(rng)
    if kind == 3:
        return random_ramp_profile(rng)
    if kind == 4:
        return random_mixed_profile(rng)
    if kind == 5:
        return random_mixed_profile(rng, curves.NONINCREASING)
    return random_ramp_profile(rng, curves.NONINCREASING)


def random_test_function(rng) -> dual.TestFunction:
    k = rng.randint(2, 6)
    xs = sorted(rng.sample(range(-8 * GRAIN, 8 * GRAIN), k))
    ys = sorted((rng.randint(-GRAIN, GRAIN) / GRAIN for _ in range(k)), reverse=True)
    return dual.TestFunction(tuple((x / GRAIN, y) for x, y in zip(xs, ys)))


@dataclass
class SuiteResult:
    suite: str
    trials: int
    violations: int
    max_residual: float
    details: dict = field(default_factory=dict)


def suite_mon(trials: int, seed: int, tol: float = 1e-9) -> SuiteResult:
    """Dominated pairs never get a smaller risk."""
    rng = random.Random(seed)
    violations = 0
    worst = 0.0
    for _ in range(trials):
        p, q = random_dominated_pair(rng)
        prof = random_profile(rng)
        a = lambda_var(p, prof).value
        b = lambda_var(q, prof).value
        if b < a:
            violations += 1
            worst = max(worst, a - b)
    return SuiteResult("mon", trials, violations, worst)


def suite_qco(trials: int, seed: int, tol: float = 1e-9) -> SuiteResult:
    """Mixtures are never riskier than the worse component."""
    rng = random.Random(seed)
    violations = 0
    worst = 0.0
    for _ in range(trials):
        p = random_empirical(rng, pow2=True)
        q = random_empirical(rng, pow2=True)
        lam = rng.randint(0, GRAIN) / GRAIN
        prof = random_profile(rng)
        m = lambda_var(mixture(p, q, lam), prof).value
        cap = max(lambda_var(p, prof).value, lambda_var(q, prof).value)
        if m > cap:
            violations += 1
            worst = max(worst, m - cap)
    return SuiteResult("qco", trials, violations, worst)


def suite_translation(trials: int, seed: int, tol: float = 1e-9) -> SuiteResult:
    """Cash-translation identity, exact on the jump class."""
    rng = random.Random(seed)
    violations = 0
    worst = 0.0
    for _ in range(trials):
        p = random_empirical(rng)
        kind = rng.randrange(3)
        if kind == 0:
            prof = constant_profile(rng.randint(0, 60) / GRAIN)
        elif kind == 1:
            prof = random_step_stack(rng)
        else:
            prof = random_step_stack(rng, curves.NONINCREASING)
        alpha = dy(rng, -4.0, 4.0)
        lhs, rhs = measures.translation_pair(p, prof, alpha)
        if lhs != rhs:
            violations += 1
            worst = max(worst, abs(lhs - rhs))
    return SuiteResult("translation", trials, violations, worst)


def suite_reductions(trials: int, seed: int, tol: float = 1e-9) -> SuiteResult:
    """Constant profiles reproduce Value at Risk and the worst case exactly."""
    rng = random.Random(seed)
    violations = 0
    worst = 0.0
    for _ in range(trials):
        p = random_empirical(rng)
        lam = rng.randint(1, 63) / GRAIN
        a = lambda_var(p, constant_profile(lam)).value
        b = value_at_risk(p, lam)
        c = lambda_var(p, constant_profile(0.0)).value
        d = worst_case(p)
        if a != b or c != d:
            violations += 1
            worst = max(worst, abs(a - b), abs(c - d))
    return SuiteResult("reductions", trials, violations, worst)


def suite_cfa(trials: int, seed: int, tol: float = 1e-9) -> SuiteResult:
    """Left-truncation sequences decrease to P with risks rising to the limit."""
    rng = random.Random(seed)
    violations = 0
    worst = 0.0
    for _ in range(trials):
        p = random_empirical(rng)
        if rng.random() < 0.5:
            prof = constant_profile(rng.randint(0, 40) / GRAIN)
        else:
            prof = None
            for _ in range(50):
                cand = random_step_stack(rng)
                report = lambda_var(p, cand)
                if report.violation_point - p.support_lower > 0.03:
                    prof = cand
                    break
            if prof is None:
                prof = constant_profile(rng.randint(0, 40) / GRAIN)
        base = lambda_var(p, prof).value
        a = p.support_lower
        prev = -math.inf
        ok = True
        last = None
        for n in range(1, 51):
            qn = truncate_left(p.payload, a + 0.02 / n)
            val = lambda_var(qn, prof).value
            if val < prev:
                ok = False
            prev = val
            last = val
        residual = abs(last - base)
        worst = max(worst, residual)
        if not ok or residual >= 1e-3:
            violations += 1
    return SuiteResult("cfa", trials, violations, worst)


def suite_cfb_counterexample(trials: int, seed: int, tol: float = 1e-9) -> SuiteResult:
    """Continuity from below fails: the step-profile uniform fixture.

    Along the increasing sequence the risk goes to 0 at rate 1/n while the
    limit distribution scores minus the step height, so the discontinuity
    equals the gap between the two profile levels.  The trials argument is
    ignored; the fixture is fixed.
    """
    lam_min, lam_max, xbar = 0.1, 0.3, 0.0
    prof = step_profile(lam_min, lam_max, xbar)
    rate_err = 0.0
    for n in range(1, 101):
        pn = uniform(-lam_min - 1.0 / n, 1.0 - lam_min - 1.0 / n)
        v = lambda_var(pn, prof).value
        rate_err = max(rate_err, abs(v - 1.0 / n))
    limit_value = lambda_var(uniform(-lam_min, 1.0 - lam_min), prof).value
    discontinuity = abs(0.0 - limit_value)
    expected = lam_max - lam_min
    violations = 0
    if rate_err > 1e-9 or abs(discontinuity - expected) > 1e-12:
        violations = 1
    return SuiteResult(
        "cfb-counterexample",
        100,
        violations,
        max(rate_err, abs(discontinuity - expected)),
        details={
            "discontinuity": discontinuity,
            "expected_jump": expected,
            "sequence_limit": 0.0,
            "limit_value": limit_value,
        },
    )


def suite_duality_sandwich(trials: int, seed: int, tol: float = 1e-9) -> SuiteResult:
    """Weak duality plus the brute-force sandwich around gamma."""
    rng = random.Random(seed)
    violations = 0
    worst = 0.0
    informative = 0
    for _ in range(trials):
        p = random_empirical(rng, max_atoms=10)
        kind = rng.randrange(3)
        if kind == 0:
            prof = constant_profile(rng.randint(0, 40) / GRAIN)
        elif kind == 1:
            prof = random_step_stack(rng, jumps=2)
        else:
            prof = random_ramp_profile(rng)
        f = random_test_function(rng)
        phi = lambda_var(p, prof).value
        t = dual.stieltjes(f, p.payload)
        gamma = dual.profile_gamma(prof)
        try:
            bound = dual.risk_lower_bound_from_gamma(t, f, lambda m: gamma(m, f), tol=tol)
        except (BracketError, DualRangeError):
            bound = None
        if bound is not None and not math.isinf(bound):
            informative += 1
            if bound > phi:
                violations += 1
                worst = max(worst, bound - phi)
        m = dy(rng, -4.0, 4.0)
        closed = dual.gamma_increasing(m, f, prof)
        member = profiles.family_member(prof, -m)
        brute = dual.gamma_bruteforce(
            m,
            f,
            lambda q: lambda_var(q, prof).value,
            dual.truncation_candidates(member, range(1, 51)),
        )
        if brute > closed + 1e-12:
            violations += 1
            worst = max(worst, brute - closed)
    return SuiteResult(
        "duality-sandwich", trials, violations, worst, details={"informative": informative}
    )


_SUITES = {
    "mon": suite_mon,
    "qco": suite_qco,
    "translation": suite_translation,
    "reductions": suite_reductions,
    "cfa": suite_cfa,
    "cfb-counterexample": suite_cfb_counterexample,
    "duality-sandwich": suite_duality_sandwich,
}


def suite_names():
    return sorted(_SUITES)


def run_suite(name: str, trials: int, seed: int, tol: float = 1e-9) -> SuiteResult:
    if name not in _SUITES:
        raise ValueError(f"unknown suite {name!r}; known: {', '.join(suite_names())}")
    return _SUITES[name](trials, seed, tol)
