import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import subwords_of_iterates
from tilecoh import catalog
from tilecoh.cohomology import complex_cohomology, validate_system
from tilecoh.generators import random_primitive_aperiodic, random_substitution
from tilecoh.linalg import charpoly
from tilecoh.subst1d import (
    DIAGNOSTIC_ONLY,
    Substitution1D,
    allowed_words,
    bd_diagnostics,
    build_ap,
    build_bd,
    cech_1d,
    collar,
    periodicity_heuristic,
    preflight,
    primitivity,
    word_str,
)

FIB = Substitution1D.from_dict({"a": "ab", "b": "a"})


def test_substitution_basics():
    assert FIB.iterate("a", 4) == tuple("abaababa")
    assert FIB.matrix().to_lists() == [[1, 1], [1, 0]]
    assert str(FIB) == "a->ab, b->a"
    with pytest.raises(ValueError):
        Substitution1D.from_dict({"a": "ac"})
    with pytest.raises(ValueError):
        Substitution1D.from_dict({"a": ""})


@given(st.integers(0, 10**6))
@settings(max_examples=40)
def test_allowed_words_match_long_iterates(seed):
    s = random_primitive_aperiodic(random.Random(seed), 3, 3)
    rules = {a: word_str(w) for a, w in s.rule_map.items()}
    for n in (1, 2, 3):
        got = {word_str(w) for w in allowed_words(s, n)}
        assert got == subwords_of_iterates(rules, n, 10)


def test_primitivity_and_periodicity():
    assert primitivity(FIB)
    assert not primitivity(Substitution1D.from_dict({"a": "ab", "b": "b"}))
    assert periodicity_heuristic(FIB) == "aperiodic-likely"
    assert periodicity_heuristic(Substitution1D.from_dict({"a": "ab", "b": "ab"})) == "periodic"
    assert preflight(Substitution1D.from_dict({"a": "ab", "b": "b"}))
    assert preflight(catalog.subst1d("thue-morse")) == []


def test_collared_fibonacci_rules():
    c = collar(FIB).substitution
    rules = dict(zip(c.alphabet, (" ".join(r) for r in c.rules)))
    assert rules == {
        "(a)a(b)": "(b)a(b) (a)b(a)",
        "(a)b(a)": "(b)a(a)",
        "(b)a(a)": "(a)a(b) (a)b(a)",
        "(b)a(b)": "(a)a(b) (a)b(a)",
    }
    # x (x^2 - x - 1) (x + 1)
    assert charpoly(c.matrix()) == [1, 0, -2, -1, 0]


def test_collar_projection_and_radius():
    for name in ("fibonacci", "thue-morse", "pinwheel-line"):
        s = catalog.subst1d(name)
        for r in (1, 2):
            c = collar(s, r)
            assert set(c.letters) == allowed_words(s, 2 * r + 1)
            assert c.substitution.matrix().rows == len(c.letters)


def test_bd_cell_counts():
    fib = build_bd(FIB)
    assert len(fib.tile_cells) == 2 and len(fib.flaps) == 3 and len(fib.vertices) == 4
    assert len(build_bd(catalog.subst1d("thue-morse")).flaps) == 4
    assert len(build_bd(catalog.subst1d("solenoid")).flaps) == 1


@pytest.mark.parametrize(
    "name, k, ell",
    [("fibonacci", 1, 0), ("thue-morse", 1, 1), ("pinwheel-line", 1, 1), ("period-doubling", 1, 0)],
)
def test_bd_diagnostics(name, k, ell):
    d = bd_diagnostics(build_bd(catalog.subst1d(name)))
    assert (d.k, d.ell) == (k, ell)
    assert d.consistent
    assert set(d.s0er) <= set(d.s0er_with_transients)


@pytest.mark.parametrize(
    "name, h0, h1",
    [
        ("fibonacci", "Z", "Z^2"),
        ("thue-morse", "Z", "Z (+) Z[1/2]"),
        ("period-doubling", "Z", "Z (+) Z[1/2]"),
        ("pinwheel-line", "Z", "Z^2 (+) Z[1/5]"),
        ("solenoid", "Z", "Z[1/2]"),
    ],
)
def test_cech_examples(name, h0, h1):
    res = cech_1d(catalog.subst1d(name))
    assert res.agree
    assert res.bd.cech_strings() == [h0, h1]
    assert res.ap.cech_strings() == [h0, h1]


def test_uncollared_thue_morse_is_diagnostic_only():
    ap = build_ap(catalog.subst1d("thue-morse"), collared=False)
    assert ap.diagnostic_only and DIAGNOSTIC_ONLY in ap.system.notes
    assert complex_cohomology(ap.system).cech_strings() == ["Z", "Z[1/2]"]
    assert not build_ap(catalog.subst1d("thue-morse")).diagnostic_only


def test_collaring_twice_does_not_change_cohomology():
    for name in ("fibonacci", "thue-morse"):
        s = catalog.subst1d(name)
        once = collar(s).substitution
        assert cech_1d(once).bd.cech_strings() == cech_1d(s).bd.cech_strings()


@given(st.integers(0, 10**6))
@settings(max_examples=30)
def test_flaps_are_allowed_two_words_and_systems_validate(seed):
    s = random_substitution(random.Random(seed), 3, 4)
    bd = build_bd(s)
    assert set(bd.flaps) == allowed_words(s, 2)
    assert validate_system(bd.system) == []
    assert validate_system(build_ap(s, collared=False).system) == []
    for f, image in bd.flap_map.items():
        assert image in bd.flaps and f in bd.flaps
