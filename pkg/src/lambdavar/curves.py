"""Exact distribution functions on the real line.

Everything in this package is built on one representation: a right-continuous
piecewise-linear function with finitely many jumps, constant outside the hull
of its breakpoints.  The class is closed under mixing, translation, left
truncation and the acceptance-boundary constructions, so quantiles, stochastic
dominance and curve crossings are computed exactly from breakpoint data.
Grids appear only in test oracles.

Risk values elsewhere in the package are plain floats; ``math.inf`` is a legal
value (infinitely risky) but ``-math.inf`` is never returned -- situations
that would produce it raise instead.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field

NONDECREASING = "nondecreasing"
NONINCREASING = "nonincreasing"

_RANGE_SLACK = 1e-9


def _interp(xa, ya, xb, yb, x):
    # Shared interpolation form: crossing and quantile arithmetic must use the
    # same expression so identical inputs produce identical floats.
    return ya + (x - xa) * (yb - ya) / (xb - xa)


def _clip01(y):
    if y < 0.0:
        if y < -_RANGE_SLACK:
            raise ValueError(f"value {y} outside [0, 1]")
        return 0.0
    if y > 1.0:
        if y > 1.0 + _RANGE_SLACK:
            raise ValueError(f"value {y} outside [0, 1]")
        return 1.0
    return y


def _collinear(xa, ya, xb, yb, xc, yc):
    return (yb - ya) * (xc - xb) == (yc - yb) * (xb - xa)


@dataclass(frozen=True)
class MonotoneRC:
    """Right-continuous piecewise-linear function R -> [0, 1] with jumps.

    ``points`` is an ordered tuple of ``(x, left_limit, value)`` triples.  The
    function equals ``tail_left`` on ``(-inf, x_1)``, ``tail_right`` on
    ``[x_N, +inf)``, is affine between consecutive breakpoints, and at each
    breakpoint takes ``value`` (the left limit is stored separately, so jumps
    are ``value - left_limit``).

    ``orientation`` selects which monotonicity is enforced; ``None`` skips the
    check entirely, which is needed for the non-monotone acceptance boundaries
    induced by decreasing loss profiles.

    Instances are canonicalized on construction (redundant breakpoints
    dropped), so ``==`` is a meaningful exact equality.
    """

    points: tuple
    tail_left: float
    tail_right: float
    orientation: str | None = NONDECREASING
    _xs: tuple = field(init=False, repr=False, compare=False, default=())

    def __post_init__(self):
        pts = [(float(x), _clip01(float(l)), _clip01(float(v))) for x, l, v in self.points]
        tl = _clip01(float(self.tail_left))
        tr = _clip01(float(self.tail_right))
        for x, _, _ in pts:
            if not math.isfinite(x):
                raise ValueError("breakpoint abscissae must be finite")
        for a, b in zip(pts, pts[1:]):
            if not a[0] < b[0]:
                raise ValueError("breakpoint abscissae must be strictly increasing")
        pts = self._canonical(pts, tl, tr)
        if pts:
            if pts[0][1] != tl:
                raise ValueError("left limit of first breakpoint must equal tail_left")
            if pts[-1][2] != tr:
                raise ValueError("value of last breakpoint must equal tail_right")
        elif tl != tr:
            raise ValueError("a curve without breakpoints must be constant")
        if self.orientation == NONDECREASING:
            self._check_monotone(pts, up=True)
        elif self.orientation == NONINCREASING:
            self._check_monotone(pts, up=False)
        elif self.orientation is not None:
            raise ValueError(f"unknown orientation {self.orientation!r}")
        object.__setattr__(self, "points", tuple(pts))
        object.__setattr__(self, "tail_left", tl)
        object.__setattr__(self, "tail_right", tr)
        object.__setattr__(self, "_xs", tuple(p[0] for p in pts))

    @staticmethod
    def _canonical(pts, tl, tr):
        # Drop continuous breakpoints that are exactly collinear with their
        # neighbours, then flat endpoints that merge into a constant tail.
        out = []
        for p in pts:
            out.append(p)
            while len(out) >= 3:
                (xa, _, ya), (xb, lb, vb), (xc, lc, _) = out[-3], out[-2], out[-1]
                if lb == vb and _collinear(xa, ya, xb, vb, xc, lc):
                    del out[-2]
                else:
                    break
        while len(out) >= 2:
            x0, l0, v0 = out[0]
            if l0 == v0 == tl and out[1][1] == v0:
                del out[0]
            else:
                break
        while len(out) >= 2:
            xn, ln, vn = out[-1]
            if ln == vn == tr and out[-2][2] == ln:
                del out[-1]
            else:
                break
        if len(out) == 1:
            x0, l0, v0 = out[0]
            if l0 == v0 == tl == tr:
                out = []
        return out

    @staticmethod
    def _check_monotone(pts, up):
        def ok(a, b):
            return a <= b if up else a >= b
        prev_v = None
        for x, l, v in pts:
            if not ok(l, v):
                raise ValueError("breakpoint jump violates orientation")
            if prev_v is not None and not ok(prev_v, l):
                raise ValueError("segment slope violates orientation")
            prev_v = v

    # ---------- evaluation ----------

    def __call__(self, x: float) -> float:
        """Right-continuous value at x."""
        i = bisect.bisect_right(self._xs, x) - 1
        if i < 0:
            return self.tail_left
        xi, _, vi = self.points[i]
        if x == xi or i == len(self.points) - 1:
            return vi if x == xi else self.tail_right
        xj, lj, _ = self.points[i + 1]
        return _interp(xi, vi, xj, lj, x)

    def left_limit(self, x: float) -> float:
        """Limit from the left at x."""
        i = bisect.bisect_left(self._xs, x) - 1
        if i < 0:
            return self.tail_left
        if i + 1 < len(self.points) and self.points[i + 1][0] == x:
            return self.points[i + 1][1]
        xi, _, vi = self.points[i]
        if i == len(self.points) - 1:
            return vi
        xj, lj, _ = self.points[i + 1]
        return _interp(xi, vi, xj, lj, x)

    def jump(self, x: float) -> float:
        i = bisect.bisect_left(self._xs, x)
        if i < len(self.points) and self.points[i][0] == x:
            _, l, v = self.points[i]
            return v - l
        return 0.0

    # ---------- summaries ----------

    @property
    def xs(self) -> tuple:
        return self._xs

    @property
    def sup_value(self) -> float:
        vals = [self.tail_left, self.tail_right]
        for _, l, v in self.points:
            vals.append(l)
            vals.append(v)
        return max(vals)

    @property
    def inf_value(self) -> float:
        vals = [self.tail_left, self.tail_right]
        for _, l, v in self.points:
            vals.append(l)
            vals.append(v)
        return min(vals)

    @property
    def is_continuous(self) -> bool:
        return all(l == v for _, l, v in self.points)

    def atoms(self):
        """Jump locations and sizes, as (x, mass) pairs."""
        return [(x, v - l) for x, l, v in self.points if v != l]

    def shift_x(self, dx: float) -> "MonotoneRC":
        """Same curve with every breakpoint moved right by dx."""
        return MonotoneRC(
            tuple((x + dx, l, v) for x, l, v in self.points),
            self.tail_left,
            self.tail_right,
            self.orientation,
        )


def merged_xs(f: MonotoneRC, g: MonotoneRC):
    return sorted(set(f._xs) | set(g._xs))


def _piece_at(curve: MonotoneRC, lo: float):
    """The affine piece of the curve covering an open interval starting at lo.

    Returns ("c", value) for constant stretches (tails and flat segments) and
    ("a", (xa, ya, xb, yb)) for a genuinely sloped piece, described by the
    curve's own breakpoints.  Callers guarantee no breakpoint lies strictly
    inside the interval they care about.
    """
    i = bisect.bisect_right(curve._xs, lo) - 1
    if i < 0:
        return ("c", curve.tail_left)
    xa, _, va = curve.points[i]
    if i == len(curve.points) - 1:
        return ("c", va)
    xb, lb, _ = curve.points[i + 1]
    if lb == va:
        return ("c", va)
    return ("a", (xa, va, xb, lb))


def _solve_level(piece, level):
    xa, ya, xb, yb = piece
    return xa + (level - ya) * (xb - xa) / (yb - ya)


def _crossing_point(f: MonotoneRC, g: MonotoneRC, prev: float, x: float):
    """Where f - g crosses zero on (prev, x), both affine there.

    Solved on the curves' own pieces so the result does not depend on which
    merged grid exposed the segment; distributions sharing a piece and a
    level therefore get bit-identical crossings.
    """
    fp = _piece_at(f, prev)
    gp = _piece_at(g, prev)
    if fp[0] == "c" and gp[0] == "a":
        xc = _solve_level(gp[1], fp[1])
    elif gp[0] == "c" and fp[0] == "a":
        xc = _solve_level(fp[1], gp[1])
    elif fp[0] == "a" and gp[0] == "a":
        xaf, yaf, xbf, ybf = fp[1]
        xag, yag, xbg, ybg = gp[1]
        sf = (ybf - yaf) / (xbf - xaf)
        sg = (ybg - yag) / (xbg - xag)
        if sf == sg:
            # parallel pieces: the strict exceedance was detected only at the
            # right end, so the infimum sits there
            return x
        xc = ((yag - sg * xag) - (yaf - sf * xaf)) / (sf - sg)
    else:
        raise AssertionError("two constant pieces cannot cross strictly")
    return min(max(xc, prev), x)


def pointwise_leq(f: MonotoneRC, g: MonotoneRC) -> bool:
    """Exact test of f(x) <= g(x) for all real x.

    Both curves are affine between merged breakpoints, so tails plus values
    and left limits at merged breakpoints decide the comparison.
    """
    if f.tail_left > g.tail_left or f.tail_right > g.tail_right:
        return False
    for x in merged_xs(f, g):
        if f.left_limit(x) > g.left_limit(x) or f(x) > g(x):
            return False
    return True


def first_above(f: MonotoneRC, g: MonotoneRC):
    """Infimum of {x : f(x) > g(x)}, computed exactly.

    Returns None when f <= g everywhere, and -inf when f exceeds g already on
    a left tail (the strict-exceedance set is unbounded below).
    """
    if f.tail_left > g.tail_left:
        return -math.inf
    xs = merged_xs(f, g)
    prev = None
    for x in xs:
        if prev is not None and f.left_limit(x) > g.left_limit(x):
            return _crossing_point(f, g, prev, x)
        if f(x) > g(x):
            return x
        prev = x
    return None


@dataclass(frozen=True)
class Cdf:
    """A distribution function: nondecreasing MonotoneRC with tails 0 and 1."""

    payload: MonotoneRC

    def __post_init__(self):
        p = self.payload
        if p.orientation != NONDECREASING:
            raise ValueError("a CDF must be nondecreasing")
        if p.tail_left != 0.0 or p.tail_right != 1.0:
            raise ValueError("a CDF must have limits 0 and 1")
        if not p.points:
            raise ValueError("a CDF must reach 1 at a finite point")

    def __call__(self, x: float) -> float:
        return self.payload(x)

    def left_limit(self, x: float) -> float:
        return self.payload.left_limit(x)

    def atoms(self):
        return self.payload.atoms()

    @property
    def support_lower(self) -> float:
        """Infimum of {x : F(x) > 0}."""
        pts = self.payload.points
        for i, (x, _, v) in enumerate(pts):
            if v > 0.0:
                return x
            if i + 1 < len(pts) and pts[i + 1][1] > 0.0:
                return x
        raise AssertionError("CDF never leaves 0")

    @property
    def support_upper(self) -> float:
        """Smallest x with F(x) = 1 from there on."""
        return self.payload.points[-1][0]

    def quantile_right(self, u: float) -> float:
        """sup{x : F(x) <= u}, the right-continuous inverse, for u in (0, 1)."""
        if not 0.0 < u < 1.0:
            raise ValueError("quantile level must lie in (0, 1)")
        pts = self.payload.points
        for i, (x, l, v) in enumerate(pts):
            if v > u:
                if l <= u:
                    return x
                xa, _, va = pts[i - 1]
                return xa + (u - va) * (x - xa) / (l - va)
        raise AssertionError("CDF never exceeds the requested level")

    def translate(self, m: float) -> "Cdf":
        """Distribution shifted right by m: result(x) = F(x - m)."""
        return Cdf(self.payload.shift_x(float(m)))


def dirac(x: float) -> Cdf:
    """Point mass at x."""
    if not math.isfinite(x):
        raise ValueError("point mass location must be finite")
    return Cdf(MonotoneRC(((float(x), 0.0, 1.0),), 0.0, 1.0))


def uniform(a: float, b: float) -> Cdf:
    """Continuous uniform distribution on [a, b]."""
    if not a < b:
        raise ValueError("uniform requires a < b")
    return Cdf(MonotoneRC(((float(a), 0.0, 0.0), (float(b), 1.0, 1.0)), 0.0, 1.0))


def from_samples(xs) -> Cdf:
    """Empirical distribution of the samples; ties merge into one jump."""
    xs = [float(x) for x in xs]
    if not xs:
        raise ValueError("no data")
    if not all(math.isfinite(x) for x in xs):
        raise ValueError("samples must be finite")
    xs.sort()
    n = len(xs)
    pts = []
    count = 0
    i = 0
    while i < n:
        j = i
        while j < n and xs[j] == xs[i]:
            j += 1
        prev = count / n
        count += j - i
        pts.append((xs[i], prev, count / n))
        i = j
    pts[-1] = (pts[-1][0], pts[-1][1], 1.0)
    return Cdf(MonotoneRC(tuple(pts), 0.0, 1.0))


def piecewise_cdf(points) -> Cdf:
    """CDF from explicit (x, left_limit, value) breakpoints with tails 0, 1."""
    return Cdf(MonotoneRC(tuple(points), 0.0, 1.0))


def mixture(p: Cdf, q: Cdf, lam: float) -> Cdf:
    """Compound lottery lam*P + (1-lam)*Q, exact on merged breakpoints."""
    if not 0.0 <= lam <= 1.0:
        raise ValueError("mixture weight must lie in [0, 1]")
    if lam == 1.0:
        return p
    if lam == 0.0:
        return q
    co = 1.0 - lam
    pts = []
    for x in merged_xs(p.payload, q.payload):
        left = lam * p.left_limit(x) + co * q.left_limit(x)
        val = lam * p(x) + co * q(x)
        pts.append((x, left, val))
    return Cdf(MonotoneRC(tuple(pts), 0.0, 1.0))


def truncate_left(g: MonotoneRC, c: float) -> Cdf:
    """The distribution with CDF g(x) for x >= c and 0 below.

    Mass that g places at or below c collapses into an atom at c; g must
    reach 1 (tail_right == 1).
    """
    if g.tail_right != 1.0:
        raise ValueError("truncation requires a curve reaching 1")
    pts = [(float(c), 0.0, g(c))]
    pts.extend(p for p in g.points if p[0] > c)
    return Cdf(MonotoneRC(tuple(pts), 0.0, 1.0))


def dominates(p: Cdf, q: Cdf) -> bool:
    """True iff P first-order dominates Q, i.e. F_P <= F_Q everywhere."""
    return pointwise_leq(p.payload, q.payload)


def converges_weakly(seq, limit: Cdf, probes, tol: float = 0.05) -> bool:
    """Probe weak convergence of a CDF sequence at continuity points.

    For each probe x the errors |F_n(x) - F(x)| must shrink monotonically
    along the tail of the sequence and end below tol.  Probes sitting on a
    jump of the limit are rejected.
    """
    seq = list(seq)
    if not seq:
        raise ValueError("empty sequence")
    for x in probes:
        if limit.payload.jump(x) != 0.0:
            raise ValueError(f"probe not a continuity point: {x}")
    tail = seq[len(seq) // 2:] if len(seq) >= 4 else seq
    for x in probes:
        errs = [abs(f(x) - limit(x)) for f in tail]
        if any(b > a for a, b in zip(errs, errs[1:])):
            return False
        if errs[-1] > tol:
            return False
    return True
