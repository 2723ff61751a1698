import random
from math import gcd, prod

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import orbit_image_size
from tilecoh.dlim import (
    DlimPresentation,
    GroupDescription,
    Invariants,
    describe,
    dlim_describe,
    dlim_equal_invariants,
    eventual_range,
)
from tilecoh.generators import random_unimodular
from tilecoh.linalg import FgAbGroup, IntMatrix, det, rank, rank_mod_p, smith

M = IntMatrix.from_rows
FIB_COLLARED = [[0, 1, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [1, 1, 1, 0]]


def test_eventual_range_examples():
    basis, r = eventual_range(M([[1, 1], [1, 1]]))
    assert basis.cols == 1 and r.to_lists() == [[2]]
    u = M([[2, 1], [1, 1]])
    basis, r = eventual_range(u)
    assert basis == IntMatrix.identity(2) and r == u
    basis, r = eventual_range(M(FIB_COLLARED))
    assert r.rows == 3 and det(r) != 0
    basis, r = eventual_range(M([[0, 1], [0, 0]]))
    assert r.shape == (0, 0)


def test_describe_examples():
    assert str(describe(M([[1, 1], [1, 0]]))) == "Z^2"
    d = describe(M([[2]]))
    assert str(d) == "Z[1/2]" and d.certified
    d = describe(M([[2, 1, 1], [1, 2, 1], [1, 1, 2]]))
    assert str(d) == "Z^2 (+) Z[1/2]"
    assert any("scales by 4" in n for n in d.scaling_note)
    assert str(describe(M(FIB_COLLARED))) == "Z^3"
    assert str(describe(M([[2, 0], [0, 3]]))) == "Z[1/2] (+) Z[1/3]"
    assert str(describe(M([[0]]))) == "0"


def test_torsion_is_reported_after_the_free_part():
    d = describe(M([[1, 0], [0, 1]]), M([[2], [0]]))
    assert str(d) == "Z (+) Z/2"
    # multiplication by 2 kills Z/2 eventually
    assert str(describe(M([[2, 0], [0, 1]]), M([[2], [0]]))) == "Z"


def test_entangled_primes_are_not_certified():
    # eigenvalues 2 and 7; the eigenlattices have index 5 and the quotient survives
    d = describe(M([[4, 1], [6, 5]]))
    assert not d.certified and d.invariants_only is not None
    split = describe(M([[2, 0], [0, 7]]))
    assert split.certified
    assert d.q_rank == 2 and d.p_rank(2) == 1 and d.p_rank(7) == 1


def test_mixed_constant_term_is_not_certified():
    d = describe(M([[6]]))
    assert not d.certified
    assert d.invariants_only == Invariants(1, ((2, 0), (3, 0)))
    assert str(d).startswith("dlim(rank 1;")


def test_equal_invariants_examples():
    a = describe(M([[1, 1], [0, 2]]))
    b = describe(M([[2, 0], [0, 1]]))
    assert dlim_equal_invariants(a, b)
    assert not dlim_equal_invariants(describe(M([[1, 1], [1, 0]])), a)
    four = describe(M([[4, 0, 0], [0, 1, 1], [0, 1, 0]]))
    two = describe(M([[2, 0, 0], [0, 1, 1], [0, 1, 0]]))
    assert dlim_equal_invariants(four, two)
    assert str(four) == str(two) == "Z^2 (+) Z[1/2]"


def test_description_validates_its_own_invariants():
    with pytest.raises(ValueError):
        GroupDescription(1, ((2, 1),), FgAbGroup(0), True, Invariants(3, ()))
    with pytest.raises(ValueError):
        GroupDescription(0, ((3, 1), (2, 1)), FgAbGroup(0), True, Invariants(2, ((2, 1), (3, 1))))


def test_relations_must_be_invariant():
    with pytest.raises(ValueError):
        DlimPresentation.build(M([[0, 1], [1, 0]]), M([[2], [0]]))


@st.composite
def endomorphisms(draw, max_n=4, bound=3):
    n = draw(st.integers(1, max_n))
    return M([[draw(st.integers(-bound, bound)) for _ in range(n)] for _ in range(n)])


@given(endomorphisms(), st.integers(0, 10**6))
def test_conjugation_invariance(m, seed):
    rng = random.Random(seed)
    u = random_unimodular(rng, m.rows)
    u_inv = _inverse(u)
    a, b = describe(m), describe(u @ m @ u_inv)
    assert str(a) == str(b)
    assert a.invariants == b.invariants


def _inverse(u: IntMatrix) -> IntMatrix:
    sd = smith(u)
    # U u V = I, so u^-1 = V U
    return sd.V @ sd.U


@given(endomorphisms())
def test_certified_fingerprint_matches_decomposition(m):
    d = describe(m)
    r = DlimPresentation.build(m).restricted_map
    q = r.rows
    for p in (2, 3, 5, 7):
        # p-rank via the restricted map, independently of the ambient computation
        power = IntMatrix.identity(q)
        for _ in range(q):
            power = (power @ r.mod(p)).mod(p)
        direct = rank_mod_p(power, p) if q else 0
        assert d.p_rank(p) == direct
        if d.certified:
            assert direct == q - dict(d.localized).get(p, 0)


@given(endomorphisms(max_n=3, bound=2))
def test_unimodular_on_eventual_range_gives_free_group(m):
    p = DlimPresentation.build(m)
    if p.eventual_rank and abs(det(p.restricted_map)) == 1:
        d = dlim_describe(p)
        assert d.certified and d.free_rank == p.eventual_rank and not d.localized
    assert p.eventual_rank == rank(m ** max(1, m.rows))


@given(
    st.lists(st.sampled_from([2, 3, 4, 6, 8]), min_size=1, max_size=2).filter(
        lambda ds: prod(ds) <= 64
    ),
    st.data(),
)
def test_torsion_limit_matches_enumeration(moduli, data):
    # make a valid endomorphism of Z/d1 (+) Z/d2: entry (i, j) must respect the orders
    n = len(moduli)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            step = moduli[i] // gcd(moduli[i], moduli[j])
            row.append(step * data.draw(st.integers(0, moduli[i])))
        rows.append(row)
    relations = IntMatrix.diagonal(moduli)
    d = describe(M(rows), relations)
    assert d.q_rank == 0
    assert d.torsion.torsion_order == orbit_image_size(rows, moduli)


def test_record_is_canonical():
    rec = describe(M([[2, 1, 1], [1, 2, 1], [1, 1, 2]])).to_record()
    assert rec["string"] == "Z^2 (+) Z[1/2]"
    assert rec["localized"] == [{"prime": 2, "rank": 1}]
    assert rec["free_rank"] == 2 and rec["certified"]
    assert rec["invariants"] == {"q_rank": 3, "p_ranks": {"2": 2}}
