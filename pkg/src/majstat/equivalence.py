"""When do two partitions share the same standardized maj distribution?

Two routes are kept separate on purpose: a combinatorial test on hook
multisets, and an exact comparison of the standardized distributions.  The
exhaustive scan checks that they agree.
"""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .qpoly import IntPolynomial, distribution_from_poly, expand, maj_gf
from .shapes import Partition, coerce_partition, hook_lengths, partitions, transpose

DEFAULT_PAIR_CAP = 18

Pair = tuple[tuple[int, ...], tuple[int, ...]]


class CapExceeded(ValueError):
    pass


def _parts(p) -> tuple[int, ...]:
    return coerce_partition(p).parts


def _hooks(p) -> Counter:
    return Counter(hook_lengths(coerce_partition(p)))


def _is_line(p: tuple[int, ...]) -> bool:
    return len(p) == 1 or (len(p) > 0 and p[0] == 1)


_CASE_IV = {(2, 1), (2, 2)}


def hook_case(lam, nu) -> str | None:
    """Which of the four hook/shape criteria relates ``lam`` and ``nu``, if any.

    Checked in the order i, ii, iii, iv; the first match wins, so
    ``(n)`` vs ``(n-1)`` reports ``"ii"`` although both are single rows.
    """
    a, b = _parts(lam), _parts(nu)
    if not a or not b:
        return None
    ha, hb = _hooks(a), _hooks(b)
    if ha == hb:
        return "i"
    if ha == hb + Counter({sum(a): 1}) or hb == ha + Counter({sum(b): 1}):
        return "ii"
    if _is_line(a) and _is_line(b):
        return "iii"
    if a in _CASE_IV and b in _CASE_IV:
        return "iv"
    return None


def normalized_key(poly: IntPolynomial) -> tuple:
    """Canonical form of the distribution up to positive affine maps.

    Support is rescaled onto [0, 1] by its min and max, which is a positive
    affine map, so two laws agree after standardization iff their keys agree.
    """
    t = distribution_from_poly(poly)
    lo, hi = t.support[0], t.support[-1]
    if lo == hi:
        return ("point",)
    width = hi - lo
    return tuple((Fraction(k - lo, width), p) for k, p in zip(t.support, t.probs))


def _rational_sqrt(x: Fraction) -> Fraction | None:
    rn, rd = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None


def standardized_equal(p: IntPolynomial, r: IntPolynomial) -> bool:
    """Exact test that ``(X - EX)/sd(X)`` and ``(Y - EY)/sd(Y)`` agree in law.

    Equal laws force the scale factor between the supports to be rational,
    so an irrational ``sqrt(var X / var Y)`` already means they differ.
    """
    s, t = distribution_from_poly(p), distribution_from_poly(r)
    if len(s.support) != len(t.support):
        return False
    vs, vt = s.variance, t.variance
    if vs == 0 or vt == 0:
        return vs == vt
    scale = _rational_sqrt(vs / vt)
    if scale is None:
        return False
    ms, mt = s.mean, t.mean
    left = {(k - ms) / scale: w for k, w in zip(s.support, s.probs)}
    right = {k - mt: w for k, w in zip(t.support, t.probs)}
    return left == right


def same_normalized_distribution(lam, nu) -> tuple[bool, str]:
    case = hook_case(lam, nu)
    return case is not None, case or "none"


def _with_transposes(pairs: Iterable[Pair]) -> list[Pair]:
    out: list[Pair] = []
    seen = set()
    for lam, nu in pairs:
        for a in (lam, transpose(lam).parts):
            for b in (nu, transpose(nu).parts):
                if (a, b) not in seen:
                    seen.add((a, b))
                    out.append((a, b))
    return out


# (larger, smaller) with |larger| = |smaller| + 1
LITERAL_SPORADIC_PAIRS: tuple[Pair, ...] = (
    ((3, 1, 1, 1, 1, 1), (3, 3, 1)),
    ((4, 1, 1, 1, 1, 1, 1), (3, 3, 3, 1)),
)
# (4,1^6) has 10 cells like (3,3,3,1), so it cannot be a case-(ii) partner;
# the exhaustive scan finds these two instead, and nothing else up to n = 18.
SPORADIC_PAIRS: tuple[Pair, ...] = (
    ((3, 1, 1, 1, 1, 1), (3, 3, 1)),
    ((5, 1, 1, 1, 1, 1, 1), (3, 3, 3, 1)),
    ((6, 1, 1, 1, 1, 1, 1), (3, 3, 3, 2)),
)


def case_ii_pairs(n_max: int, *, literal: bool = False) -> list[Pair]:
    """Every case-(ii) pair with ``|lam| <= n_max``, transposes included.

    ``literal`` uses the uncorrected sporadic list, whose second pair has
    equal sizes and so is never case (ii).
    """
    if n_max < 2:
        raise ValueError("case_ii_pairs needs n_max >= 2")
    base: list[Pair] = []
    for n in range(2, n_max + 1):
        base.append(((n,), (n - 1,)))
    r = 1
    while 3 * r + 3 <= n_max:
        base.append(((r + 1,) + (1,) * (2 * r + 2), (2,) * (r + 1) + (1,) * r))
        r += 1
    s = 4
    while 2 * s + 2 <= n_max:
        base.append(((s,) + (1,) * (s + 2), (s, s, 1)))
        s += 1
    sporadic = LITERAL_SPORADIC_PAIRS if literal else SPORADIC_PAIRS
    base.extend(p for p in sporadic if sum(p[0]) <= n_max)
    return _with_transposes(base)


@dataclass
class Theorem71Report:
    n_max: int
    widened: bool
    pairs: list[tuple[Pair, str]] = field(default_factory=list)
    counterexamples: list[dict] = field(default_factory=list)
    case_ii_missing: list[Pair] = field(default_factory=list)
    case_ii_unexpected: list[Pair] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.counterexamples or self.case_ii_missing or self.case_ii_unexpected)

    def case_counts(self) -> dict[str, int]:
        return dict(sorted(Counter(c for _, c in self.pairs).items()))

    def to_dict(self) -> dict:
        return {
            "n_max": self.n_max,
            "widened": self.widened,
            "ok": self.ok,
            "case_counts": self.case_counts(),
            "pairs": [{"lambda": list(a), "nu": list(b), "case": c} for (a, b), c in self.pairs],
            "counterexamples": self.counterexamples,
            "case_ii_missing": [[list(a), list(b)] for a, b in self.case_ii_missing],
            "case_ii_unexpected": [[list(a), list(b)] for a, b in self.case_ii_unexpected],
        }


def _order(a: tuple[int, ...], b: tuple[int, ...]) -> Pair:
    """Larger size first, then the lexicographically larger partition."""
    return (a, b) if (sum(a), a) >= (sum(b), b) else (b, a)


def _keys_for_size(n: int) -> list[tuple[tuple[int, ...], tuple]]:
    return [(lam, normalized_key(expand(maj_gf(lam), check=False))) for lam in partitions(n)]


def verify_theorem71(
    n_max: int, *, cap: int = DEFAULT_PAIR_CAP, widen: bool = False, jobs: int = 1
) -> Theorem71Report:
    """Compare the hook criteria with exact distribution equality on all pairs.

    Pairs are unordered, of distinct partitions of sizes ``1..n_max`` whose
    sizes differ by at most one (any sizes with ``widen``).  Distribution
    classes are found by hashing canonical keys, so the cost is linear in the
    number of partitions plus the number of equal pairs.
    """
    if n_max > cap:
        raise CapExceeded(f"n_max={n_max} is over the pair-scan cap of {cap}")
    if n_max < 1:
        raise ValueError("verify_theorem71 needs n_max >= 1")
    sizes = range(1, n_max + 1)
    if jobs > 1:
        from multiprocessing import Pool

        with Pool(jobs) as pool:
            per_size = pool.map(_keys_for_size, sizes)
    else:
        per_size = [_keys_for_size(n) for n in sizes]

    def close(a, b) -> bool:
        return widen or abs(sum(a) - sum(b)) <= 1

    by_key: dict[tuple, list[tuple[int, ...]]] = defaultdict(list)
    for rows in per_size:
        for lam, key in rows:
            by_key[key].append(lam)
    equal_pairs: set[Pair] = set()
    for group in by_key.values():
        for i, a in enumerate(group):
            for b in group[i + 1:]:
                if close(a, b):
                    equal_pairs.add(_order(a, b))

    flagged: dict[Pair, str] = {}
    everything = [lam for rows in per_size for lam, _ in rows]
    by_hooks: dict[tuple, list[tuple[int, ...]]] = defaultdict(list)
    for lam in everything:
        by_hooks[tuple(sorted(hook_lengths(Partition(lam))))].append(lam)
    candidates: set[Pair] = set()
    for lam in everything:
        hooks = sorted(hook_lengths(Partition(lam)))
        for other in by_hooks[tuple(hooks)]:
            if other != lam:
                candidates.add(_order(lam, other))
        if hooks and hooks[-1] == sum(lam):
            for other in by_hooks.get(tuple(hooks[:-1]), ()):
                candidates.add(_order(lam, other))
    lines = [lam for lam in everything if _is_line(lam)]
    candidates.update(_order(a, b) for i, a in enumerate(lines) for b in lines[i + 1:])
    if n_max >= 4:
        candidates.add(((2, 2), (2, 1)))
    for a, b in candidates:
        if close(a, b):
            case = hook_case(a, b)
            if case is not None:
                flagged[(a, b)] = case

    report = Theorem71Report(n_max, widen)
    report.pairs = sorted(flagged.items())
    for pair in sorted(equal_pairs - flagged.keys()):
        report.counterexamples.append(_diagnose(pair, "equal distributions, no criterion"))
    for pair in sorted(flagged.keys() - equal_pairs):
        report.counterexamples.append(_diagnose(pair, f"criterion {flagged[pair]}, distributions differ"))
    found_ii = {p for p, c in flagged.items() if c == "ii"}
    predicted = {_order(a, b) for a, b in case_ii_pairs(max(n_max, 2)) if sum(a) <= n_max}
    report.case_ii_missing = sorted(predicted - found_ii)
    report.case_ii_unexpected = sorted(found_ii - predicted)
    return report


def _diagnose(pair: Pair, reason: str) -> dict:
    a, b = pair
    return {
        "lambda": list(a),
        "nu": list(b),
        "reason": reason,
        "hooks_lambda": sorted(hook_lengths(Partition(a))),
        "hooks_nu": sorted(hook_lengths(Partition(b))),
        "independent_check": standardized_equal(
            expand(maj_gf(a), check=False), expand(maj_gf(b), check=False)
        ),
    }
