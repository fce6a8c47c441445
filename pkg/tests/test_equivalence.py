import pytest

from majstat.equivalence import (
    LITERAL_SPORADIC_PAIRS,
    SPORADIC_PAIRS,
    CapExceeded,
    case_ii_pairs,
    hook_case,
    normalized_key,
    same_normalized_distribution,
    standardized_equal,
    verify_theorem71,
)
from majstat.qpoly import IntPolynomial, expand, maj_gf


def _poly(lam):
    return expand(maj_gf(lam))


def test_hook_twins_from_the_examples():
    a, b = (12, 12, 3, 3, 3, 2, 2, 1, 1), (15, 6, 6, 6, 4, 2)
    assert same_normalized_distribution(a, b) == (True, "i")
    assert standardized_equal(_poly(a), _poly(b))


@pytest.mark.parametrize(
    "lam, nu, case",
    [
        ((2, 1), (2, 2), "iv"),
        ((3, 1), (2, 2), None),
        ((5,), (4,), "ii"),
        ((1, 1, 1, 1), (6,), "iii"),
        ((4, 2, 1), (3, 2, 1, 1), "i"),
        ((3, 1, 1, 1, 1, 1), (3, 3, 1), "ii"),
        ((5, 1, 1, 1, 1, 1, 1), (3, 3, 3, 1), "ii"),
        ((6, 1, 1, 1, 1, 1, 1), (3, 3, 3, 2), "ii"),
        ((4, 1, 1, 1, 1, 1, 1), (3, 3, 3, 1), None),
    ],
)
def test_hook_case(lam, nu, case):
    assert hook_case(lam, nu) == case
    assert hook_case(nu, lam) == case
    assert standardized_equal(_poly(lam), _poly(nu)) == (case is not None)


def test_normalized_key_invariance():
    p = IntPolynomial((1, 2, 1))
    shifted = IntPolynomial((0, 0, 0, 1, 0, 2, 0, 1))  # 3 + 2X
    assert normalized_key(p) == normalized_key(shifted)
    assert standardized_equal(p, shifted)
    assert normalized_key(IntPolynomial((0, 5))) == ("point",)
    assert not standardized_equal(IntPolynomial((1, 2, 1)), IntPolynomial((1, 1, 1)))


def test_case_ii_pairs_contents():
    pairs = set(case_ii_pairs(11))
    assert ((5,), (4,)) in pairs
    assert ((2, 1, 1, 1, 1), (2, 2, 1)) in pairs  # r = 1
    assert ((4, 1, 1, 1, 1, 1, 1), (4, 4, 1)) in pairs  # s = 4
    assert ((7, 1, 1, 1, 1), (4, 3, 3)) in pairs  # transposed components
    literal = set(case_ii_pairs(10, literal=True))
    assert ((4, 1, 1, 1, 1, 1, 1), (3, 3, 3, 1)) in literal
    with pytest.raises(ValueError):
        case_ii_pairs(1)


def test_sporadic_lists():
    assert LITERAL_SPORADIC_PAIRS[0] == SPORADIC_PAIRS[0]
    for lam, nu in SPORADIC_PAIRS:
        assert sum(lam) == sum(nu) + 1
    lam, nu = LITERAL_SPORADIC_PAIRS[1]
    assert sum(lam) == sum(nu)


def test_small_scan_pairs():
    r = verify_theorem71(2)
    assert r.ok
    assert dict(r.pairs) == {
        ((1, 1), (1,)): "ii",
        ((2,), (1,)): "ii",
        ((2,), (1, 1)): "i",
    }
    assert dict(verify_theorem71(4).pairs)[((2, 2), (2, 1))] == "iv"


def test_scan_to_twelve():
    r = verify_theorem71(12)
    assert r.ok, r.to_dict()
    assert r.case_counts() == {"i": 127, "ii": 74, "iv": 1}


def test_widened_scan():
    r = verify_theorem71(8, widen=True)
    assert r.ok, r.counterexamples
    assert any(c == "iii" for _, c in r.pairs)


def test_cap():
    with pytest.raises(CapExceeded):
        verify_theorem71(19)


def test_parallel_scan_is_deterministic():
    assert verify_theorem71(9, jobs=2).to_dict() == verify_theorem71(9).to_dict()
