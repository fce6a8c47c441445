"""Bernoulli numbers, cumulants of product forms, and moment conversions.

Everything is exact ``Fraction`` arithmetic; :func:`normalize` is the only
place floats appear.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Sequence

from .qpoly import DistributionTable, QProductForm
from .shapes import partitions

DEFAULT_DMAX = 8


class DegenerateDistribution(ValueError):
    """Zero variance (or zero aft) where a normalized quantity is needed."""


_BERNOULLI = [Fraction(1)]
_BERNOULLI_LOCK = threading.Lock()


def bernoulli(d: int) -> Fraction:
    """``B_d`` with ``B_1 = +1/2``, the coefficients of ``t / (1 - exp(-t))``.

    Multiplying that series by ``(exp(t) - 1) / t`` gives ``exp(t)``, hence
    ``sum_{k<=d} C(d+1, k) B_k = d + 1``.
    """
    if d < 0:
        raise ValueError("bernoulli needs d >= 0")
    if d >= len(_BERNOULLI):
        with _BERNOULLI_LOCK:
            table = list(_BERNOULLI)
            for m in range(len(table), d + 1):
                s = sum(comb(m + 1, k) * table[k] for k in range(m))
                table.append((m + 1 - s) / (m + 1))
            _BERNOULLI[len(_BERNOULLI):] = table[len(_BERNOULLI):]
    return _BERNOULLI[d]


def power_sum(n: int, d: int) -> int:
    """``1**d + ... + n**d`` through the Bernoulli polynomial expansion."""
    if n < 0 or d < 1:
        raise ValueError("power_sum needs n >= 0 and d >= 1")
    total = sum(comb(d + 1, k) * bernoulli(k) * n ** (d + 1 - k) for k in range(d + 1))
    total /= d + 1
    assert total.denominator == 1
    return int(total)


@dataclass(frozen=True)
class CumulantSequence:
    values: tuple[Fraction, ...]

    def __getitem__(self, d: int) -> Fraction:
        """1-based access: ``k[1]`` is the mean."""
        if d < 1:
            raise IndexError("cumulants are indexed from 1")
        return self.values[d - 1]

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class MomentSequence:
    values: tuple[Fraction, ...]
    central: bool = False

    def __getitem__(self, d: int) -> Fraction:
        if d == 0:
            return Fraction(1)
        return self.values[d - 1]

    def __len__(self) -> int:
        return len(self.values)


def formal_cumulants(pf: QProductForm, dmax: int = DEFAULT_DMAX) -> CumulantSequence:
    vals = [bernoulli(d) / d * pf.power_sum_difference(d) for d in range(1, dmax + 1)]
    if vals:
        vals[0] += pf.shift
    return CumulantSequence(tuple(vals))


def _moments_from(kappas: Sequence[Fraction]) -> list[Fraction]:
    mu = [Fraction(1)]
    for d in range(1, len(kappas) + 1):
        mu.append(sum(comb(d - 1, m - 1) * kappas[m - 1] * mu[d - m] for m in range(1, d + 1)))
    return mu[1:]


def cumulants_to_moments(k: CumulantSequence) -> MomentSequence:
    return MomentSequence(tuple(_moments_from(k.values)))


def cumulants_to_central_moments(k: CumulantSequence) -> MomentSequence:
    kappas = list(k.values)
    if kappas:
        kappas[0] = Fraction(0)
    return MomentSequence(tuple(_moments_from(kappas)), central=True)


def moments_to_cumulants(mu: MomentSequence) -> CumulantSequence:
    kappas: list[Fraction] = []
    for d in range(1, len(mu) + 1):
        rest = sum(
            (comb(d - 1, m - 1) * kappas[m - 1] * mu[d - m] for m in range(1, d)), Fraction(0)
        )
        kappas.append(mu[d] - rest)
    return CumulantSequence(tuple(kappas))


def normalize(k: CumulantSequence) -> list[float]:
    """``[0, 1, k3/s^3, k4/s^4, ...]`` with ``s**2 = k[2]``."""
    if len(k) < 2 or k[2] <= 0:
        raise DegenerateDistribution("normalizing needs a positive variance")
    var = k[2]
    out = [0.0, 1.0]
    for d in range(3, len(k) + 1):
        kd = k[d]
        if d % 2 == 0:
            out.append(float(kd / var ** (d // 2)))
        else:
            sq = kd * kd / var**d
            out.append(math.copysign(math.sqrt(sq), kd) if kd else 0.0)
    return out


def exact_moments_from_table(t: DistributionTable, dmax: int = DEFAULT_DMAX) -> MomentSequence:
    return MomentSequence(
        tuple(
            sum((p * k**d for k, p in zip(t.support, t.probs)), Fraction(0))
            for d in range(1, dmax + 1)
        )
    )


def exact_central_moments_from_table(
    t: DistributionTable, dmax: int = DEFAULT_DMAX
) -> MomentSequence:
    mu = t.mean
    return MomentSequence(
        tuple(
            sum((p * (k - mu) ** d for k, p in zip(t.support, t.probs)), Fraction(0))
            for d in range(1, dmax + 1)
        ),
        central=True,
    )


def _z(lam: Sequence[int]) -> int:
    z = 1
    for part in set(lam):
        m = lam.count(part)
        z *= part**m * factorial(m)
    return z


def partition_sum(f: Sequence[Fraction], d: int) -> Fraction:
    """``sum_{lam |- d} d!/z_lam prod f_{lam_i}/(lam_i - 1)!`` (exp composed with ``E_f``)."""
    total = Fraction(0)
    for lam in partitions(d):
        term = Fraction(factorial(d), _z(lam))
        for part in lam:
            term *= f[part - 1] / factorial(part - 1)
            if not term:
                break
        total += term
    return total


def product_form_moment(pf: QProductForm, d: int, central: bool = False) -> Fraction:
    """Moment of a product form as a sum over partitions of ``d``.

    Each part ``p`` contributes ``B_p / p! * (sum a**p - sum b**p)``; for raw
    moments, parts of size 1 also carry the shift.  Only parts that are even
    (or 1, for raw moments) survive since odd Bernoulli numbers vanish.
    """
    total = Fraction(0)
    for lam in partitions(d):
        if any(p % 2 and (central or p != 1) for p in lam):
            continue
        term = Fraction(factorial(d), _z(lam))
        for p in lam:
            factor = bernoulli(p) / factorial(p) * pf.power_sum_difference(p)
            if p == 1:
                factor += pf.shift
            term *= factor
        total += term
    return total
