import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quatcode.codes import LinearCode, mds_family_code
from quatcode.errors import ResourceLimit
from quatcode.galois import make_field
from quatcode.subfield import quaternary_code, quaternary_dual
from quatcode.weights import WeightDistribution, krawtchouk, macwilliams, min_distance, weight_distribution

F4 = make_field(2)


def test_h2_enumerator():
    assert weight_distribution(quaternary_code(2)).as_dict() == {0: 1, 12: 204, 16: 51}


def test_h3_enumerator():
    dist = weight_distribution(quaternary_code(3))
    assert dist.as_dict() == {0: 1, 44: 18720, 48: 16380, 52: 30240, 64: 195}
    assert dist.enumerator() == "1 + 18720z^44 + 16380z^48 + 30240z^52 + 195z^64"


def test_h1_oracle_is_mds_not_weight_five():
    dist = weight_distribution(quaternary_code(1))
    assert dist.as_dict() == {0: 1, 4: 15}
    assert dist.total == 16 and dist.dimension == 2


@pytest.mark.parametrize("h,params", [(2, (17, 13, 4)), (3, (65, 57, 5))])
def test_dual_parameters_by_macwilliams(h, params):
    primal = weight_distribution(quaternary_code(h))
    dual = macwilliams(primal)
    assert (dual.n, dual.dimension, dual.min_distance) == params
    assert dual.counts[0] == 1
    assert dual.provenance == "macwilliams"


@pytest.mark.slow
def test_h2_dual_exhaustive_matches_macwilliams():
    exhaustive = weight_distribution(quaternary_dual(2), budget=1 << 26)
    assert exhaustive.total == 4 ** 13
    assert exhaustive.counts == macwilliams(weight_distribution(quaternary_code(2))).counts


@pytest.mark.parametrize("h", [1, 2, 3])
def test_macwilliams_involution(h):
    d = weight_distribution(quaternary_code(h))
    assert macwilliams(macwilliams(d)).counts == d.counts


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4), st.integers(4, 8), st.integers(0, 2 ** 32))
def test_macwilliams_matches_enumerated_dual(k, n, seed):
    G = np.random.default_rng(seed).integers(0, 4, size=(k, n))
    C = LinearCode.from_rows(F4, G, n)
    if 4 ** (n - C.k) > 1 << 16:
        return
    assert macwilliams(weight_distribution(C)).counts == weight_distribution(C.dual()).counts


def test_zero_code():
    Z = LinearCode(F4, np.zeros((0, 6), dtype=np.int64), 6)
    d = weight_distribution(Z)
    assert d.counts == (1, 0, 0, 0, 0, 0, 0)
    assert d.min_distance is None
    assert macwilliams(d).total == 4 ** 6


def test_repetition_code():
    R = LinearCode.from_rows(F4, np.ones((1, 9), dtype=np.int64))
    md = min_distance(R)
    assert (md.value, md.method) == (9, "exhaustive")


def test_budget_is_enforced(monkeypatch):
    with pytest.raises(ResourceLimit):
        weight_distribution(quaternary_code(3), budget=1000)
    monkeypatch.setenv("QUATCODE_BUDGET", "100")
    with pytest.raises(ResourceLimit):
        weight_distribution(quaternary_code(2))


def test_min_distance_falls_back_to_macwilliams():
    md = min_distance(quaternary_dual(2))
    assert (md.value, md.method) == (4, "macwilliams")
    md = min_distance(quaternary_dual(3))
    assert (md.value, md.method) == (5, "macwilliams")


def test_min_distance_falls_back_to_bounds():
    C = mds_family_code(64, 10)
    md = min_distance(C, budget=1 << 10)
    assert md.method == "analytic"
    assert md.lower == md.upper == 64 - 20 + 3


def test_min_distance_of_quaternary_code_from_defining_set_oracle():
    assert min_distance(quaternary_code(1)).value == 4


def test_exports():
    d = weight_distribution(quaternary_code(2))
    assert d.to_csv() == "weight,count\n0,1\n12,204\n16,51\n"
    js = json.loads(json.dumps(d.to_json()))
    assert js["counts"] == {"0": "1", "12": "204", "16": "51"}
    assert js["provenance"] == "exhaustive"


def test_krawtchouk_orthogonality_small():
    n, q = 5, 4
    for i in range(n + 1):
        for j in range(n + 1):
            s = sum(krawtchouk(i, x, n, q) * krawtchouk(x, j, n, q) for x in range(n + 1))
            assert s == (q ** n if i == j else 0)


def test_non_linear_input_rejected():
    bogus = WeightDistribution(5, 4, (1, 1, 0, 0, 0, 0))
    with pytest.raises(ValueError):
        macwilliams(bogus, k=1)
