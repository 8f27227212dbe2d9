import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sosface.boltzmann import sigma_weight, valid_zeta_exponents
from sosface.cyclo import CycNum, qfact, qint
from sosface.fusion import theta_weight
from sosface.su2 import (BTriple, admissible, b_set, c_coeff, check_base_table, check_c_recursions,
                         check_colored_ybe, check_inverse, check_representatives, hpaths, sigma_face,
                         sign_index, sign_index_inversions, su2_params, su2_problems, theta_su2, valley,
                         w_pm, w_table)


def all_su2(L, primitive=False):
    out = []
    for eps in (1, -1):
        for k in valid_zeta_exponents(2, L, eps, primitive):
            p = su2_params(L, eps, k)
            if not su2_problems(p):
                out.append(p)
    return out


def test_b_set_examples():
    assert BTriple(0, 0, 0) in b_set(3)
    assert b_set(1) == {BTriple(0, 0, 0), BTriple(0, 1, 1), BTriple(1, 0, 1), BTriple(1, 1, 0)}
    assert len(b_set(2)) == 10


@pytest.mark.parametrize("L", range(1, 6))
def test_b_set_brute_force(L):
    brute = set()
    for k in range(L + 1):
        for i in range(L + 1):
            for j in range(L + 1):
                # SU(2)_L fusion: j in |i-k| .. min(i+k, 2L-i-k) step 2
                if j in range(abs(i - k), min(i + k, 2 * L - i - k) + 1, 2):
                    brute.add(BTriple(k, i, j))
    assert b_set(L) == brute


def test_c_coeff_examples():
    p = su2_params(2)
    assert c_coeff(0, 0, 0, p) == 1
    with pytest.raises(ValueError):
        c_coeff(1, 1, 1, p)


@pytest.mark.parametrize("L", [1, 2, 3, 4])
def test_c_recursions(L):
    for p in all_su2(L)[:4]:
        assert check_c_recursions(p) == []


def test_c_coeff_direct_formula():
    p = su2_params(3, -1, 1)
    t = p.t
    for k, i, j in b_set(3):
        direct = (qfact((i + j + k) // 2 + 1, t) * qfact((i - j + k) // 2, t) * qfact((j - i + k) // 2, t)
                  / (qint(i + 1, t) * qfact((i + j - k) // 2, t)))
        assert c_coeff(k, i, j, p) == direct


def test_c_values_need_no_sqrt_minus_one_for_eps_minus():
    # for eps = -1 every c lies in Q(zeta_{4(L+2)}); the larger field is only needed for eps = 1
    for L in (2, 4):
        p = su2_params(L, -1, 1)
        order = 4 * (L + 2)
        for k, i, j in b_set(L):
            c = c_coeff(k, i, j, p)
            assert c.to_order(order).to_order(p.M) == c


def test_sigma_face_matches_general_weights():
    for L in (2, 3):
        for p in all_su2(L)[:3]:
            for a in range(L + 1):
                for b in range(L + 1):
                    for c in range(L + 1):
                        for d in range(L + 1):
                            assert sigma_face(a, b, c, d, p) == sigma_weight((a, 0), (b, 0), (c, 0), (d, 0), p)


@pytest.mark.parametrize("L", [1, 2, 3, 4])
def test_base_table(L):
    for p in all_su2(L)[:4]:
        assert check_base_table(p) == []


@pytest.mark.parametrize("L", [1, 2, 3, 4])
def test_w_plus_minus_mutually_inverse(L):
    p = all_su2(L)[0]
    for m in range(L + 1):
        for n in range(L + 1):
            assert check_inverse(m, n, p) == []


def test_w_independent_of_representatives():
    for L in (2, 3):
        p = all_su2(L)[0]
        for m in (1, 2, 3):
            for n in (1, 2):
                for sign in (1, -1):
                    assert check_representatives(m, n, sign, p) == []


def test_ising_block():
    """L=2, all spins 1: the h=k=1 block of w+_11 is zeta^-1/sqrt2 [[i, 1], [1, i]]."""
    p = su2_params(2, 1, 1)
    assert p.kt == 1
    t = cmath.exp(1j * math.pi / 4)
    zi = cmath.exp(-1j * math.pi / 8)
    ref = zi / math.sqrt(2) * np.array([[1j, 1], [1, 1j]])
    tab = w_table(1, 1, 1, p).entries
    got = np.array([[tab.get((1, b, c, 1), CycNum.zero(p.M)).embed() for b in (0, 2)] for c in (0, 2)])
    assert np.abs(got - ref).max() < 1e-12
    ev = sorted(np.linalg.eigvals(got), key=cmath.phase)
    want = sorted([zi * t, -zi / t], key=cmath.phase)
    assert all(abs(a - b) < 1e-12 for a, b in zip(ev, want))


def test_theta_su2_examples():
    for L in (1, 2, 3):
        for p in all_su2(L, primitive=True)[:3]:
            assert theta_su2(0, 1, p) == 1
            assert theta_su2(1, 1, p) == p.zeta ** 3
            assert theta_su2(1, -1, p) == -(p.zeta ** 3)
            for i in range(L + 1):
                assert theta_su2(i, 1, p) == theta_weight((i, 0), p)


def test_sign_index_forms_agree():
    for L in (2, 3, 4):
        for i in range(L + 1):
            for j in range(L + 1):
                for k in range(0, 7):
                    for path in hpaths(i, j, k, L):
                        assert sign_index(path) == sign_index_inversions(path)
                    if hpaths(i, j, k, L):
                        assert sign_index(valley(i, j, k)) == 0


@given(st.integers(1, 5), st.data())
def test_admissible_symmetric(L, data):
    k, i, j = (data.draw(st.integers(0, L)) for _ in range(3))
    assert admissible(k, i, j, L) == admissible(k, j, i, L) == admissible(i, k, j, L)


@pytest.mark.parametrize("triple", [(1, 1, 1), (1, 1, 2), (1, 2, 1), (2, 1, 1), (1, 2, 2), (2, 2, 2)])
def test_colored_ybe(triple):
    for L in (2, 3):
        p = all_su2(L)[0]
        assert check_colored_ybe(*triple, p) == []


def test_w_pm_zero_outside_admissible():
    p = su2_params(2)
    assert w_pm(1, 1, 1, 0, 0, 0, 0, p).is_zero()


def test_su2_problems():
    assert su2_problems(su2_params(1, 1, 1)) == []
    assert "eps must be 1 when L is odd" in su2_problems(su2_params(1, -1, 1))
