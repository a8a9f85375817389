import itertools
import json
from math import comb

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from quatcode.codes import cyclic_code_from_zeros
from quatcode.designs import (
    all_supports,
    assmus_mattson,
    complete_design,
    design_from_blocks,
    design_sweep,
    incidence_counts,
    rank_subsets,
    supports,
    unrank_subset,
    verify_design,
)
from quatcode.errors import InvalidArgument
from quatcode.galois import make_field
from quatcode.subfield import quaternary_code, quaternary_dual
from quatcode.weights import macwilliams, weight_distribution


def naive_lambdas(design, t):
    """Set of block counts over all t-subsets, by direct containment."""
    blocks = [set(b) for b in design.blocks.tolist()]
    return {sum(set(T) <= B for B in blocks) for T in itertools.combinations(range(design.v), t)}


def test_h2_weight12_design():
    d = supports(quaternary_code(2), 12)
    assert (d.v, d.k, d.b) == (17, 12, 68)
    v = verify_design(d, 3)
    assert v.lam == 22 and v.counterexample is None
    assert naive_lambdas(d, 3) == {22}


@pytest.mark.slow
def test_h3_designs():
    dist = weight_distribution(quaternary_code(3))
    designs = all_supports(quaternary_code(3), dist=dist)
    expect = {44: (6240, 1892), 48: (5460, 2162), 52: (10080, 5100)}
    for k, (b, lam) in expect.items():
        d = designs[k]
        v = verify_design(d, 3)
        assert (d.b, v.lam) == (b, lam)
        assert d.b * comb(k, 3) == lam * comb(65, 3)
        assert d.codewords == 3 * d.b


@pytest.mark.slow
def test_dual_side_sweep_h2():
    res = design_sweep(quaternary_dual(2), 3, 16, budget=1 << 26)
    assert [d.k for d, _ in res] == list(range(4, 16))
    assert all(v.is_design for _, v in res)


def test_empty_weight_gives_empty_design():
    d = supports(quaternary_code(2), 13)
    assert d.b == 0
    assert verify_design(d, 3).lam == 0


@pytest.mark.parametrize("v,k,t", [(7, 3, 2), (8, 4, 3), (9, 5, 1)])
def test_complete_design(v, k, t):
    assert verify_design(complete_design(v, k), t).lam == comb(v - t, k - t)


def test_fano_plane_from_hamming_code():
    H = cyclic_code_from_zeros(make_field(1), 7, [1])
    d = supports(H, 3)
    assert d.b == 7
    assert verify_design(d, 2).lam == 1
    assert verify_design(d, 3).lam is None


def test_counterexample_is_deviant():
    d = design_from_blocks(6, [[0, 1, 2], [0, 1, 3], [2, 4, 5]])
    v = verify_design(d, 2)
    assert v.lam is None
    T = set(v.counterexample)
    base = sum({0, 1} <= set(b) for b in d.blocks.tolist())
    assert sum(T <= set(b) for b in d.blocks.tolist()) != base


def test_design_from_blocks_validates():
    with pytest.raises(InvalidArgument):
        design_from_blocks(5, [[0, 1, 7]])
    with pytest.raises(InvalidArgument):
        design_from_blocks(5, [[0, 1, 1]])
    d = design_from_blocks(5, [[2, 1, 0], [0, 1, 2]])
    assert d.b == 1


def test_t_larger_than_k_rejected():
    with pytest.raises(InvalidArgument):
        verify_design(complete_design(5, 2), 3)


@given(st.integers(3, 30), st.data())
def test_rank_unrank_round_trip(v, data):
    t = data.draw(st.integers(1, 3))
    subset = sorted(data.draw(st.sets(st.integers(0, v - 1), min_size=t, max_size=t)))
    r = int(rank_subsets(np.array(subset), v))
    assert 0 <= r < comb(v, t)
    assert unrank_subset(r, t) == subset


def test_ranks_are_a_bijection():
    subs = np.array(list(itertools.combinations(range(9), 3)))
    assert sorted(rank_subsets(subs, 9).tolist()) == list(range(comb(9, 3)))


def test_incidence_counts_chunking(monkeypatch):
    import quatcode.designs as designs

    d = supports(quaternary_code(2), 12)
    full = incidence_counts(d, 3)
    monkeypatch.setattr(designs, "CHUNK_INCREMENTS", 500)
    assert np.array_equal(incidence_counts(d, 3), full)


def test_assmus_mattson_fails_at_h3_yet_designs_exist():
    primal = weight_distribution(quaternary_code(3))
    am = assmus_mattson(primal, macwilliams(primal), 3)
    assert am.applicable and not am.condition_holds
    assert (am.d, am.dual_d, am.s) == (44, 5, 58)


def test_assmus_mattson_h2_report():
    primal = weight_distribution(quaternary_code(2))
    am = assmus_mattson(primal, macwilliams(primal), 3)
    assert (am.t, am.d, am.s) == (3, 12, 11)
    assert not am.condition_holds


def test_assmus_mattson_not_applicable_when_t_ge_d():
    primal = weight_distribution(quaternary_code(1))
    am = assmus_mattson(primal, macwilliams(primal), 4)
    assert not am.applicable and not am.condition_holds


def test_assmus_mattson_positive_case_golay_like():
    # extended binary Hamming [8,4,4] is self-dual and holds 3-designs by AM
    H = cyclic_code_from_zeros(make_field(1), 7, [1])
    G = np.hstack([H.linear.generator_matrix, H.linear.generator_matrix.sum(axis=1, keepdims=True) % 2])
    from quatcode.codes import LinearCode

    E = LinearCode.from_rows(make_field(1), G)
    dist = weight_distribution(E)
    am = assmus_mattson(dist, macwilliams(dist), 3)
    assert am.condition_holds and 4 in am.primal_weights
    assert verify_design(supports(E, 4), 3).lam == 1


def test_design_json_export():
    d = supports(quaternary_code(2), 12)
    js = d.to_json(verify_design(d, 3), emit_blocks=True)
    js = json.loads(json.dumps(js))
    assert js["lambda"] == "22" and js["b"] == "68" and len(js["blocks"]) == 68
    assert "blocks" not in d.to_json(verify_design(d, 3))
