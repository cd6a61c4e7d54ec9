import pytest

from orthospin.branching import (
    POSITIVITY_UNKNOWN,
    b_coefficient,
    _b_by_reduction,
    enumerate_Pn,
    is_positive_closed_form,
    reduce_by_recurrence,
    spectral_extract_branching,
)
from orthospin.group_chars import dim_o
from orthospin.partitions import (
    LambdaRhoPair,
    Partition,
    enumerate_lambda_rho,
)
from orthospin.tableaux import cell_branching, dim_sn


def mk(lam, k, rho):
    return LambdaRhoPair(Partition(lam), k, Partition(rho))


def test_reduce_identity_when_last_row_empty():
    pair = mk([2], 1, [3, 1])
    assert reduce_by_recurrence(pair, 3) == pair


def test_reduce_examples():
    # odd stripped row flips lambda: (2) -> (2,1) at theta=3
    red = reduce_by_recurrence(mk([2], 4, [4, 3, 3]), 3)
    assert red.lam.parts == (2, 1)
    assert red.rho.parts == (1,)
    # even stripped row keeps lambda
    red = reduce_by_recurrence(mk([2], 2, [4, 2]), 2)
    assert red.lam.parts == (2,)
    assert red.rho.parts == (2,)


def test_b_examples():
    assert b_coefficient(mk([2], 1, [3, 1]), 2) == 1
    assert b_coefficient(mk([], 2, [3, 1]), 2) == 0
    assert b_coefficient(mk([1, 1], 1, [2, 1, 1]), 4) == 1
    assert b_coefficient(mk([], 2, [2, 2]), 2) == 1
    with pytest.raises(ValueError):
        b_coefficient(mk([2, 2], 0, [2, 2]), 2)


def test_positivity_closed_form_examples():
    # theta=3 exception 1: one-row lambda, rho_1 = rho_2 odd
    assert not is_positive_closed_form(mk([2], 2, [3, 3]), 3)
    # theta=3 exception 2: hook lambda, rho_2 = rho_3 even
    assert not is_positive_closed_form(mk([3, 1], 1, [2, 2, 2]), 3)
    # theta=2: lambda=(1,1) wants both rows odd
    assert is_positive_closed_form(mk([1, 1], 2, [3, 3]), 2)
    assert not is_positive_closed_form(mk([1, 1], 1, [2, 2]), 2)
    with pytest.raises(ValueError):
        is_positive_closed_form(mk([1], 0, [1]), 4)


def test_enumerate_Pn_small():
    table = {(p.lam.parts, p.rho.parts): b for p, b in enumerate_Pn(2, 2)}
    assert table == {((2,), (2,)): 1, ((), (2,)): 1, ((1, 1), (1, 1)): 1}
    pairs = enumerate_Pn(1, 5)
    assert len(pairs) == 1 and pairs[0][0].lam.parts == (1,)
    total = sum(dim_o(p.lam, 2) * b * dim_sn(p.rho) for p, b in enumerate_Pn(4, 2))
    assert total == 16


def test_theta2_values_are_indicators():
    for n in range(1, 11):
        for pair in enumerate_lambda_rho(n, 2):
            b = b_coefficient(pair, 2)
            assert b in (0, 1)
            assert (b == 1) == is_positive_closed_form(pair, 2)
            red = _b_by_reduction(pair, 2)
            assert red == b, (pair, red, b)


def test_theta3_positivity_matches_reduction_values():
    for n in range(1, 13):
        for pair in enumerate_lambda_rho(n, 3):
            b = b_coefficient(pair, 3)
            assert (b > 0) == is_positive_closed_form(pair, 3), pair


def test_b_at_most_cell_branching():
    for theta in (2, 3):
        for n in range(1, 11):
            for pair in enumerate_lambda_rho(n, theta):
                bt = cell_branching(pair.lam, pair.rho)
                assert b_coefficient(pair, theta) <= bt, pair


def test_b_equals_cell_when_rho_columns_small():
    from orthospin.partitions import transpose

    for theta in (2, 3, 4):
        for n in range(1, 13):
            if theta == 4 and n > 7:
                continue
            for pair in enumerate_lambda_rho(n, theta):
                cols = transpose(pair.rho)
                if cols[0] + cols[1] > theta + 1:
                    continue
                b = b_coefficient(pair, theta, use_oracle=False)
                if b is POSITIVITY_UNKNOWN:
                    continue
                assert b == cell_branching(pair.lam, pair.rho), pair


def test_vanishing_rule():
    # b vanishes when the (flipped, if the stripped row is odd) lambda does
    # not fit inside rho minus its theta-th row
    from orthospin.partitions import column_flip

    for theta in (2, 3):
        for n in range(1, 11):
            for pair in enumerate_lambda_rho(n, theta):
                rt = pair.rho[theta - 1]
                lam = pair.lam if rt % 2 == 0 else column_flip(pair.lam, theta)
                if any(
                    lam[j] > max(pair.rho[j] - rt, 0) for j in range(len(lam))
                ):
                    assert b_coefficient(pair, theta) == 0, pair
                # the literal row condition also holds whenever no flip occurs
                if rt % 2 == 0 and any(
                    pair.lam[j] > pair.rho[j] - rt for j in range(theta // 2)
                ):
                    assert b_coefficient(pair, theta) == 0, pair


def test_growth_bounds():
    for n in range(1, 15):
        vals2 = [b_coefficient(p, 2) for p in enumerate_lambda_rho(n, 2)]
        assert max(vals2) <= 1
        vals3 = [b_coefficient(p, 3) for p in enumerate_lambda_rho(n, 3)]
        assert max(vals3) <= n**7


def test_spectral_extraction_matches_closed_forms():
    for theta in (2, 3):
        for n in range(1, 7):
            table = {
                (p.lam.parts, p.k, p.rho.parts): b
                for p, b in spectral_extract_branching(n, theta)
            }
            for pair in enumerate_lambda_rho(n, theta):
                expect = b_coefficient(pair, theta, use_oracle=False)
                got = table[(pair.lam.parts, pair.k, pair.rho.parts)]
                assert got == expect, (theta, n, pair)
                assert (got > 0) == is_positive_closed_form(pair, theta)


def test_spectral_extraction_given_parameters():
    res = dict(
        ((p.lam.parts, p.rho.parts), b)
        for p, b in spectral_extract_branching(2, 2, 0.7, 0.3)
    )
    assert res == {((2,), (2,)): 1, ((), (2,)): 1, ((1, 1), (1, 1)): 1,
                   ((1, 1), (2,)): 0, ((2,), (1, 1)): 0, ((), (1, 1)): 0}


def test_okada_rule_theta4():
    for n in (4, 5):
        for pair, b in spectral_extract_branching(n, 4):
            if all(p == 1 for p in pair.lam.parts):
                odd = sum(1 for p in pair.rho.parts if p % 2 == 1)
                assert b == (1 if odd == len(pair.lam) else 0), pair


def test_three_cycle_class_scalar():
    # the 3-cycle class sum acts on each line's eigenspace as the scalar
    # sum of squared contents minus C(n,2)
    import numpy as np

    from orthospin.branching import _omega3, _three_cycle_sum
    from orthospin.spectra import spectral_lines, sum_pair_ops

    theta, n = 2, 4
    L1, L2 = 1.3, 0.6
    sum_t, sum_b = sum_pair_ops(theta, n, "Q")
    evals, evecs = np.linalg.eigh(-(L1 * sum_t + L2 * sum_b))
    c3 = _three_cycle_sum(theta, n)
    for line in spectral_lines(n, theta, L1, L2):
        sel = np.abs(evals - line.eigenvalue) < 1e-8
        if int(np.sum(sel)) != line.multiplicity:
            continue  # degenerate cluster
        block = evecs[:, sel]
        omega = _omega3(line.rho)
        assert np.max(np.abs(c3 @ block - omega * block)) < 1e-8
    # the scalar itself against hand-computed small cases
    assert _omega3(Partition([3])) == 2.0
    assert _omega3(Partition([2, 1])) == -1.0
    assert _omega3(Partition([1, 1, 1])) == 2.0


def test_unknown_sentinel_beyond_caps():
    # theta=6, n=10: rho has tall first columns, lambda is not one-column,
    # and 6^10 is far past the dense cap, so no exact route applies
    pair = mk([2, 2], 3, [2, 2, 2, 2, 2])
    assert b_coefficient(pair, 6) is POSITIVITY_UNKNOWN
    with pytest.raises(ValueError):
        enumerate_Pn(10, 6)
