import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quatcode.cyclotomic import build_E
from quatcode.designs import all_supports, design_from_blocks, supports
from quatcode.errors import InvalidArgument
from quatcode.galois import make_field, quaternary_tower
from quatcode.projective import (
    INF,
    LinearFractionalMap,
    enumerate_stabilizer,
    expansion_exponents,
    kind_I,
    kind_II,
    kind_III,
    lemma_weight,
    pgl2_maps,
    projective_points,
    spectrum,
    stabilizer_sample,
    transformed_values,
    triple_map,
    triple_map_closed_form,
    unit_index,
    unit_permutation,
    verify_block_invariance,
    verify_expansion_lemmas,
    verify_pgl2_order,
    verify_spectrum_lemma,
    verify_stabilizer_structure,
    verify_three_transitivity,
)
from quatcode.subfield import quaternary_code, quaternary_dual

F4 = make_field(2)
F16 = make_field(4)


def test_group_axioms_exhaustive_q4():
    G = pgl2_maps(F4)
    assert len(G) == 60
    ident = LinearFractionalMap.identity(F4)
    Gs = set(G)
    for a in G:
        assert a @ ident == a == ident @ a
        assert a @ a.inverse() == ident
        for b in G:
            assert a @ b in Gs


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_left_action_and_associativity_q16(data):
    G = pgl2_maps(F16)
    a, b, c = (G[data.draw(st.integers(0, len(G) - 1))] for _ in range(3))
    x = data.draw(st.sampled_from(projective_points(F16)))
    assert a(b(x)) == (a @ b)(x)
    assert (a @ b) @ c == a @ (b @ c)
    assert a.inverse()(a(x)) == x


def test_normalization():
    m = LinearFractionalMap.make(F16, 0, 5, 7, 9)
    assert m.entries[:2] == (0, 1)
    with pytest.raises(InvalidArgument):
        LinearFractionalMap.make(F16, 1, 1, 1, 1)


def test_infinity_conventions():
    m = LinearFractionalMap.make(F16, 3, 1, 1, 0)  # x -> (3x + 1)/x
    assert m(0) == INF
    assert m(INF) == 3
    assert LinearFractionalMap.identity(F16)(INF) == INF


@pytest.mark.parametrize("q", [4, 16])
def test_pgl2_order_by_triples(q):
    r = verify_pgl2_order(q)
    assert r["pass"], r
    assert r["maps"] == (q + 1) * q * (q - 1)


def test_closed_form_triple_map():
    for a, b, c in itertools.permutations(range(1, 6), 3):
        m = triple_map_closed_form(F16, a, b, c)
        assert (m(INF), m(0), m(1)) == (a, b, c)
        assert m == triple_map(F16, a, b, c)


@pytest.mark.parametrize("h", [1, 2])
def test_kind_II_identity_u0_is_involution(h):
    T = quaternary_tower(h)
    p = unit_permutation(T, kind_II(T, 1).as_map)
    assert np.array_equal(p[p], np.arange(T.n))
    assert p.tolist() == [(-j) % T.n for j in range(T.n)]


def test_kind_I_beta_is_cyclic_shift():
    T = quaternary_tower(2)
    assert unit_permutation(T, kind_I(T, T.beta).as_map).tolist() == [(j + 1) % 17 for j in range(17)]


def test_kind_III_exhaustive_h2():
    T = quaternary_tower(2)
    U = set(T.unit_circle())
    cs = [c for c in range(1, T.gfq2.size) if c not in U]
    assert len(cs) == 256 - 1 - 17
    for c in cs:
        m = kind_III(T, c).as_map
        assert {m(u) for u in U} == U


def test_kind_III_rejects_c_on_circle():
    T = quaternary_tower(2)
    with pytest.raises(InvalidArgument):
        kind_III(T, T.beta)


def test_non_stabilizer_map_detected():
    T = quaternary_tower(2)
    m = LinearFractionalMap.make(T.gfq2, 1, 1, 0, 1)  # u -> u + 1
    with pytest.raises(InvalidArgument):
        unit_permutation(T, m)


@pytest.mark.parametrize("h", [1, 2])
def test_stabilizer_structure(h):
    r = verify_stabilizer_structure(h)
    assert r["pass"], r


def test_three_kinds_are_pairwise_distinct_h2():
    T = quaternary_tower(2)
    els = enumerate_stabilizer(T)
    assert len({e.as_map for e in els}) == len(els) == 17 * 16 * 15


@pytest.mark.parametrize("h", [2, 3])
def test_three_transitivity_search(h):
    r = verify_three_transitivity(h, 100, seed=7)
    assert r["pass"], r["failure"]


def test_sample_is_reproducible_and_valid():
    a = stabilizer_sample(64, 20, seed=5, kinds=("I", "II", "III", "word"), word_length=3)
    b = stabilizer_sample(64, 20, seed=5, kinds=("I", "II", "III", "word"), word_length=3)
    assert [x.as_map for x in a] == [x.as_map for x in b]
    assert len(a) == 80


@pytest.mark.parametrize("h", [2, 3])
def test_block_invariance_primal(h):
    T = quaternary_tower(h)
    els = stabilizer_sample(T.q, 200 if h == 2 else 50, seed=h)
    for k, d in all_supports(quaternary_code(h)).items():
        r = verify_block_invariance(d, els, T)
        assert r["pass"], r["violations"][:1]


@pytest.mark.slow
def test_block_invariance_dual_h2():
    T = quaternary_tower(2)
    els = stabilizer_sample(T.q, 50, seed=11)
    for k, d in all_supports(quaternary_dual(2), budget=1 << 26).items():
        if k < 16:
            assert verify_block_invariance(d, els, T)["pass"]


def test_block_invariance_detects_violation():
    T = quaternary_tower(2)
    d = design_from_blocks(17, [[0, 1, 2]])
    r = verify_block_invariance(d, [kind_I(T, T.beta)], T)
    assert not r["pass"]
    assert r["violations"][0]["image_block"] == [1, 2, 3]


def test_spectrum_lemma_exhaustive_h1():
    r = verify_spectrum_lemma(1)
    assert r["pass"] and r["mode"] == "exhaustive"
    assert r["cases"] == 16 * 16 * 10


@pytest.mark.parametrize("h", [2, 3])
def test_spectrum_lemma_random(h):
    r = verify_spectrum_lemma(h, 500, seed=3)
    assert r["pass"], r["failure"]
    assert r["cases"] == 500


def test_spectrum_of_zero_function_is_empty():
    T = quaternary_tower(2)
    g = transformed_values(T, {}, 3, lemma_weight(2))
    assert not spectrum(T, g).any()


def test_spectrum_check_is_not_vacuous():
    # a monomial outside E leaks outside E under the same transform
    T = quaternary_tower(2)
    E = set(build_E(2))
    c = next(c for c in range(2, 256) if not T.in_unit_circle(c))
    b = spectrum(T, transformed_values(T, {1: 1}, c, lemma_weight(2)))
    assert any(b[ell] for ell in range(T.n) if ell not in E)


@pytest.mark.parametrize("h", [1, 2, 3, 4, 5])
def test_expansion_lemmas(h):
    assert verify_expansion_lemmas(h)["pass"]


def test_expansion_exponents_h1():
    lucas, formula = expansion_exponents(1, (1,))
    assert lucas == formula
    assert {ell % 5 for ell in formula} <= {2, 3}


def test_lemma_weight():
    assert lemma_weight(1) == 10
    assert lemma_weight(2) == 2 * (256 - 1) // 3


def test_unit_index():
    T = quaternary_tower(2)
    assert unit_index(T, T.gfq2.pow(T.beta, 9)) == 9
    with pytest.raises(InvalidArgument):
        unit_index(T, 2)
