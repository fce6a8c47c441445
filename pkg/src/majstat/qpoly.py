"""Exact integer polynomials in ``q`` and product-form generating functions."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate
from typing import Iterable, Sequence

from .shapes import (
    BlockDiagonalShape,
    Partition,
    SkewShape,
    coerce_partition,
    hook_lengths,
    rank,
)


class NotAPolynomial(ArithmeticError):
    """A division by ``[b]_q`` left a nonzero remainder."""


def _trim(coeffs: list[int]) -> list[int]:
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


@dataclass(frozen=True)
class IntPolynomial:
    """Dense polynomial; ``coeffs[i]`` is the coefficient of ``q**i``."""

    coeffs: tuple[int, ...] = (0,)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(_trim([int(c) for c in self.coeffs] or [0])))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "IntPolynomial":
        return cls((0,) * k + (c,))

    @property
    def degree(self) -> int:
        return -1 if self.is_zero() else len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return self.coeffs == (0,)

    def __call__(self, q):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return IntPolynomial(tuple(x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)))

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial(tuple(c * other for c in self.coeffs))
        a, b = self.coeffs, other.coeffs
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "IntPolynomial":
        out = IntPolynomial((1,))
        for _ in range(k):
            out = out * self
        return out

    def low_degree(self) -> int:
        """Smallest exponent with a nonzero coefficient."""
        return next((i for i, c in enumerate(self.coeffs) if c), 0)

    def strip_shift(self) -> tuple[int, "IntPolynomial"]:
        """Split off the largest ``q**beta`` factor: ``self = q**beta * rest``."""
        k = self.low_degree()
        return k, IntPolynomial(self.coeffs[k:])

    def is_palindromic(self) -> bool:
        c = self.strip_shift()[1].coeffs
        return c == c[::-1]

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("q" if i == 1 else f"q^{i}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms) if terms else "0"

    def to_json(self) -> dict:
        shift, rest = self.strip_shift()
        return {"shift": shift, "coeffs": [str(c) for c in rest.coeffs]}

    @classmethod
    def from_json(cls, obj) -> "IntPolynomial":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls((0,) * int(obj.get("shift", 0)) + tuple(int(c) for c in obj["coeffs"]))


# --- raw coefficient-list kernels -------------------------------------------
#
# [a]_q = (1 - q^a) / (1 - q), so a product form with equally many numerator
# and denominator factors is prod (1 - q^a) / prod (1 - q^b).  Both operations
# below work on truncated power series of a fixed length.


def _times_one_minus(c: list[int], a: int) -> list[int]:
    """``c * (1 - q**a)`` truncated to ``len(c)``."""
    if a >= len(c):
        return c
    return c[:a] + [x - y for x, y in zip(c[a:], c)]


def _over_one_minus(c: list[int], b: int) -> list[int]:
    """``c / (1 - q**b)`` as a power series truncated to ``len(c)``; in place."""
    # for b >= len(c) the series 1 + q^b + ... is invisible below q^len(c)
    if b < len(c):
        for r in range(b):
            c[r::b] = accumulate(c[r::b])
    return c


def _balanced(pf: "QProductForm") -> tuple[list[int], list[int]]:
    num, den = list(pf.numerators), list(pf.denominators)
    extra = len(num) - len(den)
    if extra > 0:
        den += [1] * extra
    else:
        num += [1] * -extra
    return num, den


def _series(num: list[int], den: list[int], length: int) -> list[int]:
    c = [1] + [0] * (length - 1)
    for a in num:
        c = _times_one_minus(c, a)
    for b in den:
        c = _over_one_minus(c, b)
    return c


def _mul_qint(c: list[int], a: int) -> list[int]:
    """Exact product with ``[a]_q``."""
    if a == 1:
        return c
    out = _times_one_minus(c + [0] * a, a)
    return _over_one_minus(out, 1)[: len(c) + a - 1]


def _div_qint(c: list[int], b: int) -> list[int]:
    """Exact quotient by ``[b]_q``; raises if the remainder is nonzero."""
    if b == 1:
        return c
    out = _over_one_minus(_times_one_minus(c + [0], 1), b)
    qdeg = len(c) - b
    if qdeg < 0 or any(out[qdeg + 1:]):
        raise NotAPolynomial(f"polynomial of degree {len(c) - 1} is not divisible by [{b}]_q")
    return out[: qdeg + 1]


def q_int(n: int) -> IntPolynomial:
    if n < 0:
        raise ValueError("q_int needs n >= 0")
    return IntPolynomial((1,) * n or (0,))


def q_factorial(n: int) -> IntPolynomial:
    c = [1]
    for k in range(2, n + 1):
        c = _mul_qint(c, k)
    return IntPolynomial(tuple(c))


def q_multinomial(alpha: Sequence[int]) -> IntPolynomial:
    alpha = [int(a) for a in alpha]
    if any(a < 0 for a in alpha):
        raise ValueError(f"not a weak composition: {alpha}")
    c = list(q_factorial(sum(alpha)).coeffs)
    for a in alpha:
        for k in range(2, a + 1):
            c = _div_qint(c, k)
    return IntPolynomial(tuple(c))


def q_binomial(n: int, k: int) -> IntPolynomial:
    if not 0 <= k <= n:
        raise ValueError(f"q_binomial needs 0 <= k <= n, got n={n}, k={k}")
    return q_multinomial((k, n - k))


@dataclass(frozen=True)
class QProductForm:
    """``q**shift * prod [a]_q / prod [b]_q`` with equal elements cancelled."""

    numerators: tuple[int, ...]
    denominators: tuple[int, ...]
    shift: int = 0

    def __post_init__(self):
        num, den = Counter(self.numerators), Counter(self.denominators)
        if any(x <= 0 for x in (num + den)) or self.shift < 0:
            raise ValueError("product form needs positive factors and a nonnegative shift")
        common = num & den
        num, den = num - common, den - common
        num.pop(1, None)
        den.pop(1, None)
        object.__setattr__(self, "numerators", tuple(sorted(num.elements())))
        object.__setattr__(self, "denominators", tuple(sorted(den.elements())))

    def power_sum_difference(self, d: int) -> int:
        """``sum a**d - sum b**d`` once both sides are padded to equal length with 1s.

        Written as ``sum (a**d - 1) - sum (b**d - 1)``, which neither the
        cancellation above nor dropping factors ``[1]_q`` can change.
        """
        return sum(a**d - 1 for a in self.numerators) - sum(b**d - 1 for b in self.denominators)

    def __mul__(self, other: "QProductForm") -> "QProductForm":
        return QProductForm(
            self.numerators + other.numerators,
            self.denominators + other.denominators,
            self.shift + other.shift,
        )


def expand(pf: QProductForm, *, check: bool = True) -> IntPolynomial:
    """Expand ``pf`` into a polynomial.

    With ``check`` the whole series is computed and every coefficient above
    the expected degree must vanish, which holds exactly when ``pf`` is a
    polynomial.  ``check=False`` is for forms already known to be
    polynomial: a quotient of palindromic q-integers that is a polynomial is
    itself palindromic, so only the lower half is computed and mirrored.
    """
    num, den = _balanced(pf)
    degree = sum(num) - sum(den)
    if degree < 0:
        raise NotAPolynomial(f"{pf} has negative degree")
    if check:
        c = _series(num, den, sum(num) + 1)
        if any(c[degree + 1:]):
            raise NotAPolynomial(f"{pf} does not expand to a polynomial")
        c = c[: degree + 1]
    else:
        half = degree // 2 + 1
        low = _series(num, den, half)
        c = low + low[: degree + 1 - half][::-1]
    return IntPolynomial((0,) * pf.shift + tuple(c))


def maj_gf(shape) -> QProductForm:
    """Product form of the major index generating function.

    Straight shapes use the q-hook length formula; block diagonal shapes
    merge the q-multinomial with each block's hook formula, which leaves
    ``[n]_q!`` over all hooks, shifted by the sum of block ranks.
    General skew shapes have no product formula and are rejected.
    """
    if isinstance(shape, SkewShape):
        if not shape.is_straight():
            raise ValueError(f"no product formula for the skew shape {shape}")
        shape = shape.outer
    if isinstance(shape, BlockDiagonalShape):
        blocks = shape.blocks
    else:
        blocks = (coerce_partition(shape),)
    n = sum(b.size for b in blocks)
    hooks = [h for b in blocks for h in hook_lengths(b)]
    return QProductForm(tuple(range(1, n + 1)), tuple(hooks), sum(rank(b) for b in blocks))


def baj_inv_product_form(n: int) -> QProductForm:
    """Product part of the baj - inv generating function, without the constant ``n``."""
    if n < 1:
        raise ValueError("baj_inv_gf needs n >= 1")
    return QProductForm(tuple(i * (n - i) for i in range(1, n)), tuple(range(1, n)))


def baj_inv_gf(n: int) -> IntPolynomial:
    """``n * prod_{i<n} [i(n-i)]_q / [i]_q``; the leading ``n`` is ``[n]_q(1)``."""
    if n < 1:
        raise ValueError("baj_inv_gf needs n >= 1")
    return expand(baj_inv_product_form(n)) * n


@dataclass(frozen=True)
class DistributionTable:
    """Exact law of ``X`` with ``P[X = k] = c_k / p(1)``."""

    support: tuple[int, ...]
    probs: tuple[Fraction, ...]

    @property
    def mean(self) -> Fraction:
        return sum((k * p for k, p in zip(self.support, self.probs)), Fraction(0))

    @property
    def variance(self) -> Fraction:
        mu = self.mean
        return sum(((k - mu) ** 2 * p for k, p in zip(self.support, self.probs)), Fraction(0))

    def as_dict(self) -> dict[int, Fraction]:
        return dict(zip(self.support, self.probs))

    def float_view(self) -> tuple[list[float], list[float]]:
        return [float(k) for k in self.support], [float(p) for p in self.probs]

    def cdf_steps(self) -> list[tuple[int, Fraction]]:
        """Cumulative probability at each support point."""
        return list(zip(self.support, accumulate(self.probs)))


def distribution_from_poly(p: IntPolynomial) -> DistributionTable:
    if p.is_zero():
        raise ValueError("the zero polynomial defines no distribution")
    if any(c < 0 for c in p.coeffs):
        raise ValueError("negative coefficient in a generating polynomial")
    total = p(1)
    pairs = [(k, Fraction(c, total)) for k, c in enumerate(p.coeffs) if c]
    return DistributionTable(tuple(k for k, _ in pairs), tuple(x for _, x in pairs))


def poly_from_pairs(exponents: Iterable[int]) -> IntPolynomial:
    """``sum q**e`` over the given exponents."""
    counts = Counter(exponents)
    if not counts:
        return IntPolynomial()
    if min(counts) < 0:
        raise ValueError("negative exponent")
    out = [0] * (max(counts) + 1)
    for e, m in counts.items():
        out[e] += m
    return IntPolynomial(tuple(out))
