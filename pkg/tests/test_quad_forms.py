import numpy as np
import pytest

import oracles
from threeweight import CycInt, diagonalize, form, gauss_sum, radical_rank, s_sum, symmetric_matrix, t_sum, validate
from threeweight.errors import NonIntegerSum, RegimeError
from threeweight.field_tower import tower_for
from threeweight.quad_forms import (evaluate_matrix_form, form_invariants, gauss_sum_closed,
                                    intersection_set_counts, complex_closed_form,
                                    predicted_set_counts, predicted_value_distribution,
                                    radical_size_by_definition, rank_from_radical_size,
                                    value_distribution)

S332 = validate(3, 3, 2)
S531 = validate(5, 3, 1)
S362 = validate(3, 6, 2)


# ------------------------------------------------------------------ CycInt

def test_cycint_canonical_and_integers():
    assert CycInt(3, [5, 5, 5]) == 0
    assert CycInt(3, [0, 18, 18]).to_int() == -18
    assert CycInt.integer(5, 7).to_int() == 7
    with pytest.raises(NonIntegerSum):
        CycInt.zeta(3).to_int()


def test_cycint_ring_relations():
    z = CycInt.zeta(5)
    assert z ** 5 == 1
    assert sum((z ** j for j in range(5)), CycInt.integer(5, 0)) == 0
    g = CycInt.quadratic_gauss_sum(5)
    assert g * g == 5              # eta_0(-1) = 1 for p = 5
    g3 = CycInt.quadratic_gauss_sum(3)
    assert g3 * g3 == -3
    assert g3.norm2() == 3


def test_cycint_complex_embedding():
    g = CycInt.quadratic_gauss_sum(3)
    assert abs(g.to_complex() - 1j * np.sqrt(3)) < 1e-12


# ------------------------------------------------------------------- ranks

def test_rank_zero_form():
    assert radical_rank(form(S332, 0, 0)) == 0


def test_rank_full_when_b_zero():
    t = tower_for(S332)
    for a in range(1, t.N):
        assert radical_rank(form(S332, a, 0)) == 3


def test_rank_a0_b1_332():
    # [DERIVED] GF(p)-rank of the traced polar form, list arithmetic oracle
    t = tower_for(S332)
    assert oracles.form_rank(t, 2, 0, 1) == 3
    assert radical_rank(form(S332, 0, 1)) == 3
    size = radical_size_by_definition(form(S332, 0, 1), exhaustive=True)
    assert rank_from_radical_size(t, size) == 3


def test_matrix_zero_and_symmetric():
    assert not symmetric_matrix(form(S332, 0, 0)).any()
    A = symmetric_matrix(form(S362, 5, 77))
    assert np.array_equal(A, A.T)


def test_matrix_evaluates_form():
    t = tower_for(S362)
    f = form(S362, 123, 456)
    A = symmetric_matrix(f)
    rng = np.random.default_rng(4)
    for _ in range(30):
        X = rng.integers(0, t.q, t.s)
        Xf = t.gfq.elems[X]
        x = 0
        for i in range(t.s):
            x = t.add(x, t.mul(int(Xf[i]), int(t.qbasis[i])))
        assert evaluate_matrix_form(t, A, Xf) == f(x)


def test_diagonalize_trivial_cases():
    t = tower_for(S362)
    zero = np.zeros((3, 3), dtype=np.int64)
    assert diagonalize(zero, t) == ([], 0)
    eye = np.eye(3, dtype=np.int64)
    assert diagonalize(eye, t) == ([1, 1, 1], 3)


def test_diagonalize_needs_off_diagonal_repair():
    t = tower_for(S332)
    A = np.array([[0, 1, 0], [1, 0, 0], [0, 0, 0]])
    diag, r = diagonalize(A, t)
    assert r == 2
    # hyperbolic plane: discriminant -1 up to squares
    assert t.quadratic_character(t.mul(diag[0], diag[1]), "q") == t.quadratic_character(t.neg(1), "q")


def test_matrix_rank_vs_kernel_rank_random():
    # 200 random forms over a few towers: two independent rank computations
    rng = np.random.default_rng(5)
    for spec in (S332, S531, S362):
        t = tower_for(spec)
        for a, b in rng.integers(0, t.N, (67, 2)).tolist():
            f = form(spec, a, b)
            assert form_invariants(f)[0] == radical_rank(f)


def test_eta_independent_of_pivot_order_random():
    rng = np.random.default_rng(6)
    for spec in (S332, S531, S362):
        t = tower_for(spec)
        for a, b in rng.integers(0, t.N, (67, 2)).tolist():
            f = form(spec, a, b)
            assert form_invariants(f, "first") == form_invariants(f, "last")


def test_rank_against_list_oracle_random():
    rng = np.random.default_rng(8)
    for spec in (S332, S362, validate(3, 5, 4)):
        t = tower_for(spec)
        for a, b in rng.integers(0, t.N, (6, 2)).tolist():
            assert radical_rank(form(spec, a, b)) == oracles.form_rank(t, spec.k, a, b)


# -------------------------------------------------------------- Gauss sums

def test_gauss_sum_zero_form():
    assert gauss_sum(form(S332, 0, 0)) == 27


def test_gauss_sum_a1_b0_332():
    # [DERIVED] complex float sum with list arithmetic gives -3 sqrt(3) i;
    # the exact value is 3 + 6 zeta^2 in canonical form
    t = tower_for(S332)
    G = gauss_sum(form(S332, 1, 0))
    assert G == CycInt(3, [3, 0, 6])
    assert abs(oracles.gauss_float(t, 2, 1, 0) - G.to_complex()) < 1e-9
    assert G.norm2() == 27          # q^(2s - s) with r = s = 3


def test_closed_form_matches_complex_formula():
    for p, e in ((3, 1), (3, 2), (5, 1), (7, 1), (3, 3)):
        for r in range(0, 4):
            for eta in (1, -1):
                z = gauss_sum_closed(p, e, 3, r, eta).to_complex()
                assert abs(z - complex_closed_form(p, e, 3, r, eta)) < 1e-6 * abs(z)


def test_gauss_sum_random_forms_float_oracle():
    rng = np.random.default_rng(9)
    for spec in (S531, S362):
        t = tower_for(spec)
        for a, b in rng.integers(0, t.N, (5, 2)).tolist():
            G = gauss_sum(form(spec, a, b))
            assert abs(G.to_complex() - oracles.gauss_float(t, spec.k, a, b)) < 1e-6


# ------------------------------------------------------------ S and T sums

def test_s_at_origin():
    assert s_sum(S332, 0, 0, method="both") == 2 * 2 * 27


def test_t_at_origin():
    assert t_sum(S531, 0, 0, method="both") == 2 * 4 * 125


def test_s_a1_b0_332():
    # [DERIVED] float sum over 27 x and 2 y with list arithmetic: 0
    t = tower_for(S332)
    assert abs(oracles.exp_sum_float(S332, t, 1, 0)) < 1e-9
    assert s_sum(S332, 1, 0, method="both") == 0


def test_t_a0_b1_362():
    # [DERIVED] float sum over 729 x and 2 y with list arithmetic: 0
    t = tower_for(S362)
    assert abs(oracles.exp_sum_float(S362, t, 0, 1)) < 1e-9
    assert t_sum(S362, 0, 1, method="both") == 0


def test_s_values_in_three_value_set_332():
    t = tower_for(S332)
    vals = {s_sum(S332, a, b, method="fast") for a in range(t.N) for b in range(t.N) if a or b}
    assert vals <= {0, 18, -18}


def test_t_nonzero_values_531():
    vals = set(predicted_value_distribution(S531)) - {1000}
    assert vals == {0, 200, -200}


def test_regime_errors():
    with pytest.raises(RegimeError):
        t_sum(S332, 1, 1)
    with pytest.raises(RegimeError):
        s_sum(S531, 1, 1)


def test_value_distribution_332():
    vd = value_distribution(S332)
    assert vd.counts == {108: 1, 18: 312, -18: 156, 0: 260}
    assert vd.first_moment == 2 * 2 * 3 ** 6


def test_value_distribution_531():
    vd = value_distribution(S531)
    assert vd.counts == {1000: 1, 200: 1860, -200: 1240, 0: 12524}
    assert vd.first_moment == 2 * 4 * 5 ** 6


# -------------------------------------------------------- intersection sets

def test_sets_332():
    assert intersection_set_counts(S332) == (108, 4, 4, 108)
    assert intersection_set_counts(S332, method="brute") == (108, 4, 4, 108)


def test_sets_531():
    assert intersection_set_counts(S531) == (2000,) * 4


def test_sets_even_e_split():
    # for even e every element of GF(p)* is a square in GF(q), so the four sets
    # split as (p-1)^2 (2p^m - 1), (p-1)^2, (p-1)^2, (p-1)^2 (2p^m - 1)
    got = intersection_set_counts(S362, method="brute")
    assert got == intersection_set_counts(S362) == predicted_set_counts(S362) == (5828, 4, 4, 5828)
    assert sum(got) == 4 * 4 * 729


def test_origin_lies_in_every_set():
    # (x1, x2) = (0, 0) solves every defining system, for every (y1, y2):
    # each set has at least (p-1)^2 elements
    for spec in (S332, S531, S362):
        assert min(intersection_set_counts(spec)) >= (spec.p - 1) ** 2
