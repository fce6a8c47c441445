"""Exhaustive coefficient-shape scans over all partitions of n.

All predicates act on the shift-stripped polynomial; a power of q in front
changes neither unimodality nor log-concavity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .limits import local_limit_deviation_raw
from .qpoly import IntPolynomial, expand, maj_gf
from .shapes import aft, corners, partitions, transpose

DEFAULT_SCAN_CAP = 50


class CapExceeded(ValueError):
    pass


def _coeffs(p: IntPolynomial | Sequence[int]) -> list[int]:
    if isinstance(p, IntPolynomial):
        return list(p.strip_shift()[1].coeffs)
    c = list(p)
    while len(c) > 1 and c[0] == 0:
        c.pop(0)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return c


def f_coeffs(lam) -> list[int]:
    """Coefficients of the maj polynomial of ``lam`` with the q-shift removed."""
    return list(expand(maj_gf(lam), check=False).strip_shift()[1].coeffs)


def is_unimodal(p) -> bool:
    c = _coeffs(p)
    i = 1
    while i < len(c) and c[i - 1] <= c[i]:
        i += 1
    while i < len(c) and c[i - 1] >= c[i]:
        i += 1
    return i >= len(c)


NEARLY_PATTERNS = ("nearly", "nearly-center")


def unimodality_pattern(p) -> str:
    """Classify coefficients as ``"unimodal"``, a near-unimodal pattern, or ``"no"``.

    A symmetric, non-unimodal sequence is near-unimodal when its first half
    ``c_0..c_{floor(n/2)}`` rises weakly to ``c_j`` and then drops exactly once,
    by exactly one, at ``j+1``:

    * ``"nearly"``: the drop is before the last index of the half and
      ``c_{j+2} > c_{j+1}``;
    * ``"nearly-center"``: the drop lands on the single central coefficient
      of an odd-length sequence, so its mirror image is the same dip;
    * ``"middle-ambiguous"``: the drop lands on the left one of the two
      central coefficients of an even-length sequence, giving a two-wide
      dip.  Not counted as near-unimodal.
    """
    c = _coeffs(p)
    if is_unimodal(c):
        return "unimodal"
    if c != c[::-1]:
        return "no"
    half = c[: (len(c) - 1) // 2 + 1]
    drops = [i for i in range(1, len(half)) if half[i] < half[i - 1]]
    if len(drops) != 1:
        return "no"
    k = drops[0]  # k = j + 1
    if half[k] != half[k - 1] - 1:
        return "no"
    if k == len(half) - 1:
        return "nearly-center" if len(c) % 2 else "middle-ambiguous"
    return "nearly" if half[k + 1] > half[k] else "no"


def is_nearly_unimodal(p) -> bool:
    """Nearly unimodal but not unimodal; see :func:`unimodality_pattern`."""
    return unimodality_pattern(p) in NEARLY_PATTERNS


def _lc_at(c: list[int], i: int) -> bool:
    return c[i] * c[i] >= c[i - 1] * c[i + 1]


def is_log_concave(p) -> bool:
    c = _coeffs(p)
    return all(_lc_at(c, i) for i in range(1, len(c) - 1))


def lc_failures(p) -> list[int]:
    c = _coeffs(p)
    return [i for i in range(1, len(c) - 1) if not _lc_at(c, i)]


NLC_CONVENTIONS = ("half-open", "half-closed", "drop-ends")


def is_nearly_log_concave(p, convention: str = "half-open") -> bool:
    """Log-concavity away from the ends of a symmetric sequence.

    ``"half-open"`` checks ``1 < i < floor(n/2)`` with ``n`` the degree;
    ``"half-closed"`` also checks ``i = floor(n/2)``; ``"drop-ends"`` checks
    every ``1 < i < n - 1``.  Non-symmetric input is never nearly log-concave.
    """
    c = _coeffs(p)
    if c != c[::-1]:
        return False
    n = len(c) - 1
    if convention == "half-open":
        idx = range(2, n // 2)
    elif convention == "half-closed":
        idx = range(2, min(n // 2 + 1, n))
    elif convention == "drop-ends":
        idx = range(2, n - 1)
    else:
        raise ValueError(f"unknown convention {convention!r}")
    return all(_lc_at(c, i) for i in idx)


# --- predicted exceptions ---------------------------------------------------

SPECIAL_EXCEPTIONS: tuple[tuple[int, ...], ...] = (
    (3, 3, 2), (4, 2, 2), (4, 4, 2), (4, 4, 1, 1), (5, 3, 3),
    (7, 5), (6, 2, 1, 1, 1, 1),
    (5, 5, 2), (5, 5, 1, 1), (5, 3, 2, 2), (4, 4, 3, 1), (4, 4, 2, 2),
    (7, 3, 3), (8, 6), (6, 6, 2),
    (6, 6, 1, 1), (5, 5, 2, 2), (5, 3, 3, 3), (4, 4, 4, 2),
    (11, 5), (10, 6), (9, 7), (7, 7, 2),
    (7, 7, 1, 1), (6, 6, 4), (6, 6, 1, 1, 1, 1), (6, 5, 5), (5, 5, 3, 3),
    (12, 6), (11, 7), (10, 8),
    (15, 5), (14, 6), (11, 9), (16, 6), (12, 10), (18, 6),
    (14, 10), (20, 6), (22, 6),
)

NEARLY_SPECIAL: tuple[tuple[int, ...], ...] = (
    (3, 3, 2), (4, 2, 2), (5, 3, 3), (7, 5), (6, 2, 1, 1, 1, 1), (5, 3, 2, 2),
    (4, 4, 3, 1), (7, 3, 3), (5, 3, 3, 3),
    (11, 5), (6, 6, 1, 1, 1, 1), (6, 5, 5), (15, 5), (22, 6),
)


def _close_transpose(parts: Iterable[tuple[int, ...]]) -> set[tuple[int, ...]]:
    out = set()
    for p in parts:
        out.add(tuple(p))
        out.add(transpose(p).parts)
    return out


def _rectangles(n: int) -> list[tuple[int, ...]]:
    return [(n // b,) * b for b in range(2, n) if n % b == 0 and n // b >= 2]


def _even_family(n: int, tail: tuple[int, ...], kmin: int) -> list[tuple[int, ...]]:
    k = n - sum(tail)
    return [(k,) + tail] if k >= kmin and k % 2 == 0 else []


def predicted_exceptions(n: int) -> set[tuple[int, ...]]:
    """Partitions of ``n`` expected to have a non-unimodal maj polynomial."""
    base = list(_rectangles(n))
    base += _even_family(n, (2,), 4)
    base += _even_family(n, (4,), 6)
    base += _even_family(n, (2, 1, 1), 2)
    if n - 4 >= 6:
        base.append((n - 4, 2, 2))
    base += [p for p in SPECIAL_EXCEPTIONS if sum(p) == n]
    return _close_transpose(base)


def predicted_nearly(n: int) -> set[tuple[int, ...]]:
    """Partitions of ``n`` expected to be nearly unimodal but not unimodal."""
    base = [r for r in _rectangles(n) if n > 30]
    base += _even_family(n, (2,), 4)
    base += _even_family(n, (4,), 6)
    base += _even_family(n, (2, 1, 1), 2)
    base += [p for p in NEARLY_SPECIAL if sum(p) == n]
    return _close_transpose(base)


# --- scans ---------------------------------------------------------------------


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise CapExceeded(f"n={n} is over the scan cap of {cap}")
    if n < 0:
        raise ValueError("n must be nonnegative")


def _shard_map(fn: Callable, items: list, jobs: int) -> list:
    """``[fn(x) for x in items]``, optionally across processes, in input order."""
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    from multiprocessing import Pool

    chunk = max(1, len(items) // (4 * jobs))
    with Pool(jobs) as pool:
        return pool.map(fn, items, chunksize=chunk)


def _unimodal_row(lam: tuple[int, ...]) -> tuple[bool, str]:
    c = f_coeffs(lam)
    return is_unimodal(c), unimodality_pattern(c)


@dataclass
class UnimodalityReport:
    n: int
    exceptions: list[tuple[int, ...]]
    predicted: list[tuple[int, ...]]
    unexpected: list[tuple[int, ...]]
    missing: list[tuple[int, ...]]
    patterns: dict[tuple[int, ...], str] = field(default_factory=dict)
    four_corner_exceptions: list[tuple[int, ...]] = field(default_factory=list)

    @property
    def diff(self) -> tuple[list, list]:
        return self.unexpected, self.missing

    @property
    def ok(self) -> bool:
        return not (self.unexpected or self.missing)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "ok": self.ok,
            "exceptions": [list(p) for p in self.exceptions],
            "predicted": [list(p) for p in self.predicted],
            "unexpected": [list(p) for p in self.unexpected],
            "missing": [list(p) for p in self.missing],
            "patterns": {",".join(map(str, p)): s for p, s in self.patterns.items()},
            "four_corner_exceptions": [list(p) for p in self.four_corner_exceptions],
        }


def unimodality_scan(n: int, *, cap: int = DEFAULT_SCAN_CAP, jobs: int = 1) -> UnimodalityReport:
    """Non-unimodal partitions of ``n`` against the predicted exception set.

    Both lists hold every partition, a partition and its transpose
    separately, sorted lexicographically.
    """
    _check_cap(n, cap)
    lams = list(partitions(n))
    rows = _shard_map(_unimodal_row, lams, jobs)
    exceptions = sorted(lam for lam, (u, _) in zip(lams, rows) if not u)
    patterns = {lam: pat for lam, (u, pat) in zip(lams, rows) if not u}
    predicted = sorted(predicted_exceptions(n))
    found, pred = set(exceptions), set(predicted)
    return UnimodalityReport(
        n,
        exceptions,
        predicted,
        sorted(found - pred),
        sorted(pred - found),
        dict(sorted(patterns.items())),
        [lam for lam in exceptions if len(corners(lam)) >= 4],
    )


def nearly_unimodal_check(n_max: int) -> list[tuple[tuple[int, ...], str]]:
    """Predicted nearly-unimodal partitions of size ``<= n_max`` that are not."""
    bad = []
    for n in range(1, n_max + 1):
        for lam in sorted(predicted_nearly(n)):
            pat = unimodality_pattern(f_coeffs(lam))
            if pat not in NEARLY_PATTERNS:
                bad.append((lam, pat))
    return bad


def _lc_row(lam: tuple[int, ...]) -> tuple[bool, tuple[bool, ...], bool]:
    c = f_coeffs(lam)
    self_conj = transpose(lam).parts == lam
    return is_log_concave(c), tuple(is_nearly_log_concave(c, v) for v in NLC_CONVENTIONS), self_conj


@dataclass
class LogConcavityReport:
    n: int
    total: int
    classes: int
    p_lc: float
    p_nlc: float
    p_lc_classes: float
    p_nlc_classes: float
    nlc_by_convention: dict[str, float]
    nlc_classes_by_convention: dict[str, float]

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def log_concavity_probabilities(
    n: int, *, cap: int = DEFAULT_SCAN_CAP, jobs: int = 1, convention: str = "half-open"
) -> LogConcavityReport:
    """Fractions of partitions of ``n`` with log-concave / nearly log-concave f.

    ``p_lc``/``p_nlc`` count every partition once; the ``_classes`` fields
    count each pair ``{lam, lam'}`` once (valid since f is transpose
    invariant).  ``nlc_by_convention`` covers every near-log-concavity
    reading; ``p_nlc`` uses ``convention``.
    """
    _check_cap(n, cap)
    if convention not in NLC_CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")
    lams = list(partitions(n))
    rows = _shard_map(_lc_row, lams, jobs)
    total = len(rows)
    weights = [1.0 if sc else 0.5 for _, _, sc in rows]
    classes = sum(weights)
    lc = sum(1 for r in rows if r[0])
    lc_cls = sum(w for w, r in zip(weights, rows) if r[0])
    nlc = {v: sum(1 for r in rows if r[1][i]) / total for i, v in enumerate(NLC_CONVENTIONS)}
    nlc_cls = {
        v: sum(w for w, r in zip(weights, rows) if r[1][i]) / classes
        for i, v in enumerate(NLC_CONVENTIONS)
    }
    return LogConcavityReport(
        n,
        total,
        int(classes),
        lc / total,
        nlc[convention],
        lc_cls / classes,
        nlc_cls[convention],
        nlc,
        nlc_cls,
    )


@dataclass
class K22Result:
    k: int
    ok: bool
    j: int
    gap: int
    expected_gap: int
    prefix_ok: bool
    median_ok: bool


def k22_check(k: int) -> K22Result:
    """Check the max-coefficient gap for ``(k,2,2)``.

    ``j`` is the first index where the maximum is attained; the prediction
    is ``c_j - c_{j+1} = floor(k/6) + [k = 4 mod 6]``, ``c_0..c_j`` weakly
    increasing, and ``j+1`` the median index among nonzero coefficients.
    """
    if k < 3:
        raise ValueError("k22_check needs k >= 3")
    c = f_coeffs((k, 2, 2))
    top = max(c)
    j = c.index(top)
    gap = c[j] - c[j + 1]
    expected = k // 6 + (1 if k % 6 == 4 else 0)
    prefix = all(c[i] <= c[i + 1] for i in range(j))
    nz = [i for i, x in enumerate(c) if x]
    median_ok = len(nz) % 2 == 1 and nz[len(nz) // 2] == j + 1
    return K22Result(k, gap == expected and prefix and median_ok, j, gap, expected, prefix, median_ok)


def local_limit_scan(
    n_lo: int, n_hi: int, *, jobs: int = 1, bound: float = 1 / 9
) -> dict:
    """``local_limit_deviation`` over all partitions with ``n_lo < n <= n_hi``.

    Partitions with aft 1 are reported separately and not held to the bound.
    """
    worst = (0.0, None)
    violations = []
    aft_one = []
    count = 0
    for n in range(n_lo + 1, n_hi + 1):
        lams = list(partitions(n))
        for lam, val in zip(lams, _shard_map(_local_row, lams, jobs)):
            if val is None:
                continue
            if isinstance(val, tuple):
                aft_one.append((lam, val[0]))
                continue
            count += 1
            if val > worst[0]:
                worst = (val, lam)
            if val > bound:
                violations.append((lam, val))
    return {
        "range": [n_lo, n_hi],
        "checked": count,
        "max": worst[0],
        "argmax": list(worst[1]) if worst[1] else None,
        "violations": [[list(l), v] for l, v in violations],
        "aft_one": [[list(l), v] for l, v in aft_one],
    }


def _local_row(lam: tuple[int, ...]):
    """A float for aft > 1, a 1-tuple for aft 1 (unnormalized by the bound), None for aft 0."""
    a = aft(lam)
    if a == 0:
        return None
    val = local_limit_deviation_raw(lam)
    return (val,) if a == 1 else val
