"""Reference limit laws, KS distances, and limit-law diagnostics for shapes."""

from __future__ import annotations

import ast
import bisect
import math
import operator
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Sequence

from .cumulants import DegenerateDistribution, formal_cumulants, normalize
from .equivalence import normalized_key
from .qpoly import DistributionTable, IntPolynomial, distribution_from_poly, expand, maj_gf
from .shapes import aft as shape_aft
from .shapes import as_skew, hook_lengths, parse_shape

SQRT2PI = math.sqrt(2 * math.pi)


# --- reference laws ----------------------------------------------------------


def _ih_sum(M: int, x: Fraction, power: int) -> Fraction:
    return sum(
        ((-1) ** k * comb(M, k) * (x - k) ** power for k in range(math.floor(x) + 1)),
        Fraction(0),
    )


def irwin_hall_cdf(M: int, x: float) -> float:
    """CDF of the sum of ``M`` independent uniforms on [0, 1].

    The alternating sum is evaluated in exact rationals; in floats it loses
    every digit near ``x = M`` once ``M`` is in the teens.
    """
    if M < 1:
        raise ValueError("Irwin-Hall needs M >= 1")
    if x <= 0:
        return 0.0
    if x >= M:
        return 1.0
    return float(_ih_sum(M, Fraction(x), M) / factorial(M))


def irwin_hall_pdf(M: int, x: float) -> float:
    if M < 1:
        raise ValueError("Irwin-Hall needs M >= 1")
    if x < 0 or x > M:
        return 0.0
    if M == 1:
        return 1.0
    return float(_ih_sum(M, Fraction(x), M - 1) / factorial(M - 1))


def normal_cdf(x: float) -> float:
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


def normal_pdf(x: float, mu: float = 0.0, var: float = 1.0) -> float:
    if var <= 0:
        raise ValueError("normal_pdf needs a positive variance")
    sigma = math.sqrt(var)
    z = (x - mu) / sigma
    return math.exp(-0.5 * z * z) / (sigma * SQRT2PI)


@dataclass(frozen=True)
class LimitLaw:
    """``kind`` is ``"normal"``, ``"irwin_hall"`` (standardized IH_M) or ``"discrete"``."""

    kind: str
    M: int | None = None
    reference: DistributionTable | None = None

    def __post_init__(self):
        if self.kind == "irwin_hall" and (self.M is None or self.M < 1):
            raise ValueError("the Irwin-Hall limit needs M >= 1")
        if self.kind == "discrete" and self.reference is None:
            raise ValueError("a discrete limit needs a reference table")
        if self.kind not in ("normal", "irwin_hall", "discrete"):
            raise ValueError(f"unknown limit law {self.kind!r}")

    @classmethod
    def normal(cls) -> "LimitLaw":
        return cls("normal")

    @classmethod
    def irwin_hall(cls, M: int) -> "LimitLaw":
        return cls("irwin_hall", M)

    @classmethod
    def discrete(cls, table: DistributionTable) -> "LimitLaw":
        return cls("discrete", reference=table)

    def cdf(self, z: float) -> float:
        """CDF of the standardized law (mean 0, variance 1)."""
        if self.kind == "normal":
            return normal_cdf(z)
        if self.kind == "irwin_hall":
            return irwin_hall_cdf(self.M, self.M / 2 + z * math.sqrt(self.M / 12))
        points, cum = _standardized_steps(self.reference)
        i = bisect.bisect_right(points, z)
        return cum[i - 1] if i else 0.0

    def pdf(self, z: float) -> float:
        if self.kind == "normal":
            return normal_pdf(z)
        if self.kind == "irwin_hall":
            s = math.sqrt(self.M / 12)
            return s * irwin_hall_pdf(self.M, self.M / 2 + z * s)
        raise ValueError("a discrete law has no density")


def _standardized_steps(t: DistributionTable) -> tuple[list[float], list[float]]:
    var = t.variance
    if var <= 0:
        raise DegenerateDistribution("cannot standardize a point mass")
    mu, sigma = float(t.mean), math.sqrt(var)
    points = [(k - mu) / sigma for k in t.support]
    cum, acc = [], Fraction(0)
    for p in t.probs:
        acc += p
        cum.append(float(acc))
    return points, cum


def ks_distance(t: DistributionTable, law: LimitLaw) -> float:
    """Sup distance between the standardized CDF of ``t`` and ``law``.

    A step CDF against a continuous one attains the sup at a jump, from one
    side or the other; two step CDFs attain it at a jump of either one.
    """
    points, cum = _standardized_steps(t)
    if law.kind == "discrete":
        ref_points, ref_cum = _standardized_steps(law.reference)

        def step(pts, cs, z):
            i = bisect.bisect_right(pts, z)
            return cs[i - 1] if i else 0.0

        best = 0.0
        for z in sorted(set(points) | set(ref_points)):
            best = max(best, abs(step(points, cum, z) - step(ref_points, ref_cum, z)))
        return best
    best, before = 0.0, 0.0
    for z, c in zip(points, cum):
        f = law.cdf(z)
        best = max(best, abs(c - f), abs(before - f))
        before = c
    return best


# --- shape-level diagnostics -----------------------------------------------


def maj_table(shape) -> DistributionTable:
    return distribution_from_poly(expand(maj_gf(shape), check=False))


@dataclass
class ShapeMetrics:
    shape: str
    n: int
    aft: int
    kappa3_star: float | None
    kappa4_star: float | None
    ks_normal: float | None
    ks_irwin_hall: float | None


@dataclass
class FamilyReport:
    rows: list[ShapeMetrics]
    verdict: str
    limit: str | None = None
    window: int = 0
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)


def shape_metrics(shape, *, ks: bool = True) -> ShapeMetrics:
    skew = as_skew(shape)
    n, a = skew.size, shape_aft(skew)
    k3 = k4 = ks_n = ks_ih = None
    k = formal_cumulants(maj_gf(shape), 4)
    if k[2] > 0:
        _, _, k3, k4 = normalize(k)
        if ks:
            table = maj_table(shape)
            ks_n = ks_distance(table, LimitLaw.normal())
            if a >= 1:
                ks_ih = ks_distance(table, LimitLaw.irwin_hall(a))
    return ShapeMetrics(str(shape), n, a, k3, k4, ks_n, ks_ih)


def _tail_window(count: int) -> int:
    return min(count, max(3, math.ceil(0.2 * count)))


def classify_family(shapes: Sequence, *, ks: bool = True) -> FamilyReport:
    """Finite-prefix diagnosis of which limit regime a shape sequence shows.

    Looks at the last ``max(3, 20%)`` shapes: normalized distributions all
    equal gives ``(iii)``; sizes strictly increasing with constant aft ``M``
    gives ``(ii)`` with limit IH_M; aft nondecreasing and strictly larger at
    the end of the window than at its start gives ``(i)``.  Anything else is
    ``inconclusive``.  A finite prefix proves nothing about the sequence.
    """
    if not shapes:
        raise ValueError("classify_family needs at least one shape")
    rows = [shape_metrics(s, ks=ks) for s in shapes]
    w = _tail_window(len(rows))
    tail, tail_shapes = rows[-w:], shapes[-w:]
    afts = [r.aft for r in tail]
    sizes = [r.n for r in tail]
    keys = {normalized_key(expand(maj_gf(s), check=False)) for s in tail_shapes}
    report = FamilyReport(rows, "inconclusive", window=w)
    if len(keys) == 1:
        report.verdict, report.limit = "iii", "discrete"
    elif len(set(afts)) == 1 and all(a < b for a, b in zip(sizes, sizes[1:])) and afts[0] >= 1:
        report.verdict, report.limit = "ii", f"IH_{afts[0]}*"
    elif all(a <= b for a, b in zip(afts, afts[1:])) and afts[-1] > afts[0]:
        report.verdict, report.limit = "i", "normal"
    if w < 3:
        report.notes.append("fewer than three shapes; verdict is weak")
    return report


def cumulant_decay(shape, d: int) -> float:
    """``|k_d*| * aft**(d/2 - 1)``, which stays within fixed bounds across shapes."""
    if d < 4 or d % 2:
        raise ValueError("cumulant_decay needs an even d >= 4")
    a = shape_aft(as_skew(shape))
    if a == 0:
        raise DegenerateDistribution(f"{shape} has aft 0")
    k = formal_cumulants(maj_gf(shape), d)
    return abs(normalize(k)[d - 1]) * a ** (d // 2 - 1)


def local_limit_deviation(shape, poly: IntPolynomial | None = None) -> float:
    """``sigma * aft * max_k |P[X = k] - normal density at k|``.

    The normal density uses the exact mean and variance.  ``poly`` may pass a
    precomputed maj generating polynomial.
    """
    a = shape_aft(as_skew(shape))
    if a <= 1:
        raise DegenerateDistribution(f"{shape} has aft {a}; the bound is stated for aft > 1")
    return local_limit_deviation_raw(shape, poly)


def local_limit_deviation_raw(shape, poly: IntPolynomial | None = None) -> float:
    """The same quantity without the aft precondition; needs a positive variance."""
    pf = maj_gf(shape)
    a = shape_aft(as_skew(shape))
    k = formal_cumulants(pf, 2)
    if k[2] <= 0:
        raise DegenerateDistribution(f"{shape} has zero variance")
    mu, var = float(k[1]), float(k[2])
    if poly is None:
        poly = expand(pf, check=False)
    coeffs = poly.coeffs
    total = float(poly(1))
    sigma = math.sqrt(var)
    c = 1.0 / (sigma * SQRT2PI)
    lo = poly.low_degree()
    exp = math.exp
    # one integer either side of the support covers the density tails
    worst = max(
        c * exp(-0.5 * ((lo - 1 - mu) / sigma) ** 2),
        c * exp(-0.5 * ((len(coeffs) - mu) / sigma) ** 2),
    )
    for i in range(lo, len(coeffs)):
        z = (i - mu) / sigma
        d = abs(coeffs[i] / total - c * exp(-0.5 * z * z))
        if d > worst:
            worst = d
    return worst * sigma * a


def beta_integral_check(n: int, d: int) -> float:
    """Ratio of ``sum_i [i(n-i)]^d - i^d`` to ``n^(2d+1) (d!)^2/(2d+1)!``."""
    if n < 2 or d < 1:
        raise ValueError("beta_integral_check needs n >= 2 and d >= 1")
    s = sum((i * (n - i)) ** d - i**d for i in range(1, n))
    return float(Fraction(s * factorial(2 * d + 1), n ** (2 * d + 1) * factorial(d) ** 2))


def plot_rows(shape, overlay: Iterable[str] = ("normal", "ih")) -> list[dict]:
    """Coefficient counts with density overlays scaled to the same total.

    Columns: ``k, count, normal_pdf_scaled, ih_pdf_scaled``; the Irwin-Hall
    column uses ``M = aft`` and is empty when aft is 0.
    """
    poly = expand(maj_gf(shape), check=False)
    total = poly(1)
    k = formal_cumulants(maj_gf(shape), 2)
    mu, var = float(k[1]), float(k[2])
    sigma = math.sqrt(var) if var > 0 else 0.0
    a = shape_aft(as_skew(shape))
    law = LimitLaw.irwin_hall(a) if a >= 1 else None
    overlay = set(overlay)
    rows = []
    for e, count in enumerate(poly.coeffs):
        row = {"k": e, "count": count, "normal_pdf_scaled": "", "ih_pdf_scaled": ""}
        if sigma:
            if "normal" in overlay:
                row["normal_pdf_scaled"] = total * normal_pdf(e, mu, var)
            if "ih" in overlay and law is not None:
                row["ih_pdf_scaled"] = total * law.pdf((e - mu) / sigma) / sigma
        rows.append(row)
    return rows


# --- power-gap bounds ----------------------------------------------------


def hook_power_gap(shape, d: int) -> int:
    """``sum_{j<=n} j**d - sum_c h_c**d``."""
    skew = as_skew(shape)
    return sum(j**d for j in range(1, skew.size + 1)) - sum(h**d for h in hook_lengths(skew))


@dataclass(frozen=True)
class GapBound:
    regime: str  # "small-hook" or "large-hook"
    lower: Fraction
    value: int
    upper: Fraction
    strict: bool

    @property
    def ok(self) -> bool:
        if self.strict:
            return self.lower < self.value < self.upper
        return self.lower <= self.value <= self.upper


def power_gap_bounds(shape, d: int) -> GapBound:
    """Two-sided bounds on :func:`hook_power_gap`, chosen by the max hook.

    Max hook below ``0.8 n``: strictly between
    ``n^(d+1)/(26(d+1)) - 2 (0.8)^d n^d`` and ``n^(d+1)/(d+1) + n^d``.
    Otherwise (and ``n >= 10``): between ``aft * floor(n/10)^d / d`` and
    ``2 aft (n^d + d n^(d-1))``, inclusive.
    """
    if d < 1:
        raise ValueError("power_gap_bounds needs d >= 1")
    skew = as_skew(shape)
    n = skew.size
    value = hook_power_gap(skew, d)
    big = max(hook_lengths(skew), default=0)
    if 5 * big < 4 * n:
        four_fifths = Fraction(4, 5)
        lower = Fraction(n ** (d + 1), 26 * (d + 1)) - 2 * four_fifths**d * n**d
        upper = Fraction(n ** (d + 1), d + 1) + n**d
        return GapBound("small-hook", lower, value, upper, strict=True)
    if n < 10:
        raise ValueError("the large-hook bound needs n >= 10")
    a = shape_aft(skew)
    lower = Fraction(a * (n // 10) ** d, d)
    upper = Fraction(2 * a * (n**d + d * n ** (d - 1)))
    return GapBound("large-hook", lower, value, upper, strict=False)


# --- family expressions ----------------------------------------------------
#
#   "N+5,5 @ N=20..100:10"        rows built from an integer range
#   "ceil(exp(j)),j @ j=1..7"     any single-letter-or-word variable
#   "N,N @ N=2|3|5"               explicit values
#
# The template uses the shape syntax (",", "/", ";"); each comma-separated
# field is an arithmetic expression, and a field may also be a tuple
# expression such as (1,)*N to splice in repeated parts.

_FUNCS = {
    "floor": math.floor,
    "ceil": math.ceil,
    "ln": math.log,
    "log": math.log,
    "exp": math.exp,
    "sqrt": math.sqrt,
}
_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.FloorDiv: operator.floordiv,
    ast.Mod: operator.mod,
    ast.Pow: operator.pow,
}


class FamilyExpressionError(ValueError):
    pass


def _eval(node, env: dict):
    if isinstance(node, ast.Expression):
        return _eval(node.body, env)
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return node.value
    if isinstance(node, ast.Name):
        if node.id not in env:
            raise FamilyExpressionError(f"unknown name {node.id!r}")
        return env[node.id]
    if isinstance(node, ast.Tuple):
        return tuple(_eval(e, env) for e in node.elts)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        return -_eval(node.operand, env)
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        return _BINOPS[type(node.op)](_eval(node.left, env), _eval(node.right, env))
    if (
        isinstance(node, ast.Call)
        and isinstance(node.func, ast.Name)
        and node.func.id in _FUNCS
        and len(node.args) == 1
        and not node.keywords
    ):
        return _FUNCS[node.func.id](_eval(node.args[0], env))
    raise FamilyExpressionError(f"unsupported syntax: {ast.dump(node)[:60]}")


def _eval_parts(text: str, env: dict) -> str:
    text = text.strip()
    if not text:
        return ""
    try:
        tree = ast.parse(f"({text},)", mode="eval")
    except SyntaxError as exc:
        raise FamilyExpressionError(f"cannot parse {text!r}") from exc
    flat: list[int] = []

    def add(v):
        if isinstance(v, tuple):
            for x in v:
                add(x)
        elif isinstance(v, float):
            if v != int(v):
                raise FamilyExpressionError(f"non-integer part {v} in {text!r}")
            flat.append(int(v))
        else:
            flat.append(int(v))

    add(_eval(tree, env))
    return ",".join(map(str, flat))


def _values(spec: str) -> list[int]:
    spec = spec.strip()
    if "|" in spec:
        return [int(v) for v in spec.split("|")]
    if ".." in spec:
        lo_hi, _, step = spec.partition(":")
        lo, _, hi = lo_hi.partition("..")
        return list(range(int(lo), int(hi) + 1, int(step) if step else 1))
    return [int(spec)]


def parse_family(expr: str) -> list:
    """Expand ``"<template> @ VAR=<values>"`` into a list of shapes."""
    template, sep, binding = expr.partition("@")
    if not sep:
        raise FamilyExpressionError(f"missing '@' in family expression {expr!r}")
    var, eq, spec = binding.partition("=")
    var = var.strip()
    if not eq or not var.isidentifier():
        raise FamilyExpressionError(f"bad binding {binding.strip()!r}; expected VAR=a..b")
    try:
        values = _values(spec)
    except ValueError as exc:
        raise FamilyExpressionError(f"bad values {spec.strip()!r}") from exc
    shapes = []
    for v in values:
        env = {var: v}
        blocks = []
        for block in template.split(";"):
            outer, slash, inner = block.partition("/")
            text = _eval_parts(outer, env)
            if slash:
                text += "/" + _eval_parts(inner, env)
            blocks.append(text)
        shapes.append(parse_shape(";".join(blocks)))
    return shapes
