import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tilecoh import catalog
from tilecoh.cohomology import (
    CochainSystem,
    InvalidSystemError,
    complex_cohomology,
    from_chain_complex,
    graph_system,
    validate_system,
)
from tilecoh.generators import random_primitive_aperiodic, random_unimodular
from tilecoh.linalg import IntMatrix, smith
from tilecoh.subst1d import build_ap, build_bd

M = IntMatrix.from_rows


def _inverse(u: IntMatrix) -> IntMatrix:
    sd = smith(u)
    return sd.V @ sd.U


def test_solenoid_circle():
    res = complex_cohomology(catalog.graph("solenoid-graph"))
    assert res.cech_strings() == ["Z", "Z[1/2]"]
    assert res[0].induced_map.to_lists() == [[1]]
    assert res[1].induced_map.to_lists() == [[2]]
    assert res.euler == 0


def test_eyeglasses_graph():
    sys = catalog.graph("eyeglasses")
    assert sys.dims == (3, 4)
    res = complex_cohomology(sys)
    assert res.cech_strings() == ["Z", "Z[1/2]^2"]


def test_fibonacci_bd_graph():
    res = complex_cohomology(build_bd(catalog.subst1d("fibonacci")).system)
    assert str(res[1].group) == "Z^2"
    assert str(res[1].cech) == "Z^2"


def test_discrete_vertices():
    sys = graph_system(["x", "y", "z"], [], {"x": "x", "y": "y", "z": "z"}, {})
    res = complex_cohomology(sys)
    assert res.cech_strings() == ["Z^3", "0"]


def test_torsion_in_a_two_complex():
    # one vertex, one loop, one disc glued along twice the loop
    sys = from_chain_complex((1, 1, 1), (M([[0]]), M([[2]])), (M([[1]]),) * 3)
    res = complex_cohomology(sys)
    assert [str(d.group) for d in res.degrees] == ["Z", "0", "Z/2"]
    assert res.cech_strings() == ["Z", "0", "Z/2"]


def test_validate_reports_delta_squared():
    d0 = M([[1], [1]])
    d1 = M([[1, 0]])
    sys = CochainSystem((1, 2, 1), (d0, d1), (M([[1]]), IntMatrix.identity(2), M([[1]])))
    v = validate_system(sys)
    assert len(v) == 1 and v[0].startswith("degree 0:") and "delta_1 delta_0" in v[0]
    with pytest.raises(InvalidSystemError):
        complex_cohomology(sys)


def test_validate_reports_commutation():
    sys = CochainSystem((1, 1), (M([[1]]),), (M([[1]]), M([[2]])))
    v = validate_system(sys)
    assert len(v) == 1 and "F_1 delta_0 != delta_0 F_0" in v[0]


def test_validate_reports_shapes():
    sys = CochainSystem((1, 2), (M([[1]]),), (M([[1]]), IntMatrix.identity(2)))
    assert any("shape" in x for x in validate_system(sys))


def test_graph_errors():
    with pytest.raises(ValueError, match="dangling"):
        graph_system(["v"], [("e", "v", "w")], {"v": "v"}, {"e": ["e"]})
    with pytest.raises(ValueError, match="ends at|breaks"):
        graph_system(["v", "w"], [("e", "v", "w")], {"v": "v", "w": "w"}, {"e": ["e", "e"]})


def test_reverse_steps_in_paths():
    # the map flips the loop
    sys = graph_system(["v"], [("e", "v", "v")], {"v": "v"}, {"e": ["-e"]})
    res = complex_cohomology(sys)
    assert res[1].induced_map.to_lists() == [[-1]]
    assert str(res[1].cech) == "Z"


def test_generator_lifts_are_cocycles_and_class_map_inverts_them():
    sys = build_ap(catalog.subst1d("thue-morse")).system
    res = complex_cohomology(sys)
    for d in res.degrees:
        delta = sys.delta(d.degree)
        assert (delta @ d.generators).is_zero()
        for j in range(d.generators.cols):
            coords = d.coordinates(d.generators.col(j))
            assert coords == [int(i == j) for i in range(d.generators.cols)]


def _conjugate(sys: CochainSystem, rng: random.Random) -> CochainSystem:
    ps = [random_unimodular(rng, n) for n in sys.dims]
    inv = [_inverse(p) for p in ps]
    deltas = tuple(ps[k + 1] @ d @ inv[k] for k, d in enumerate(sys.coboundaries))
    endo = tuple(ps[k] @ f @ inv[k] for k, f in enumerate(sys.endo))
    return CochainSystem(sys.dims, deltas, endo)


@given(st.integers(0, 10**6))
def test_naturality_under_change_of_cochain_basis(seed):
    rng = random.Random(seed)
    s = random_primitive_aperiodic(rng, 3, 4)
    sys = build_bd(s).system
    twisted = _conjugate(sys, rng)
    assert validate_system(twisted) == []
    a, b = complex_cohomology(sys), complex_cohomology(twisted)
    for x, y in zip(a.degrees, b.degrees):
        assert str(x.cech) == str(y.cech)
        assert x.cech.invariants == y.cech.invariants


def _components(vertices, edges):
    parent = {v: v for v in vertices}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for _, t, h in edges:
        parent[find(t)] = find(h)
    return len({find(v) for v in vertices})


@st.composite
def graphs(draw):
    nv = draw(st.integers(1, 5))
    vertices = [f"v{i}" for i in range(nv)]
    ne = draw(st.integers(0, 7))
    edges = [
        (f"e{j}", draw(st.sampled_from(vertices)), draw(st.sampled_from(vertices))) for j in range(ne)
    ]
    return vertices, edges


@given(graphs())
def test_graph_betti_numbers(g):
    vertices, edges = g
    sys = graph_system(vertices, edges, {v: v for v in vertices}, {e[0]: [e[0]] for e in edges})
    res = complex_cohomology(sys)
    k = _components(vertices, edges)
    assert res[0].group.free_rank == k
    assert res[1].group.free_rank == len(edges) - len(vertices) + k
    assert res[0].induced_map == IntMatrix.identity(k)


def test_connected_builders_have_trivial_h0():
    for name in ("fibonacci", "thue-morse", "period-doubling", "pinwheel-line"):
        s = catalog.subst1d(name)
        for sys in (build_bd(s).system, build_ap(s).system):
            res = complex_cohomology(sys)
            assert str(res[0].cech) == "Z"
            assert res[0].induced_map.to_lists() == [[1]]
