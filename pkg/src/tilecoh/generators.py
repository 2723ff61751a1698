"""Seeded random inputs for property tests and experiment scripts."""

from __future__ import annotations

import random

from .linalg import IntMatrix
from .subst1d import Substitution1D, periodicity_heuristic, primitivity

LETTERS = "abcd"


def random_matrix(rng: random.Random, rows: int, cols: int, bound: int = 5) -> IntMatrix:
    return IntMatrix.from_rows([[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)], cols=cols)


def random_unimodular(rng: random.Random, n: int, steps: int = 12, bound: int = 3) -> IntMatrix:
    """Product of random elementary operations and sign flips."""
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps if n > 1 else 0):
        i, j = rng.sample(range(n), 2)
        k = rng.randint(-bound, bound)
        for col in range(n):
            m[i][col] += k * m[j][col]
    for i in range(n):
        if rng.random() < 0.3:
            m[i] = [-x for x in m[i]]
    if n > 1:
        rng.shuffle(m)
    return IntMatrix.from_rows(m, cols=n)


def random_substitution(rng: random.Random, max_letters: int = 4, max_length: int = 5) -> Substitution1D:
    k = rng.randint(2, max_letters)
    alphabet = LETTERS[:k]
    rules = {a: "".join(rng.choice(alphabet) for _ in range(rng.randint(1, max_length))) for a in alphabet}
    return Substitution1D.from_dict(rules)


def random_primitive_aperiodic(rng: random.Random, max_letters: int = 4, max_length: int = 5, tries: int = 10000) -> Substitution1D:
    """Rejection sampling until primitive and aperiodic according to the complexity heuristic."""
    for _ in range(tries):
        s = random_substitution(rng, max_letters, max_length)
        if max(len(w) for w in s.rules) < 2:
            continue
        if primitivity(s) and periodicity_heuristic(s) == "aperiodic-likely":
            return s
    raise RuntimeError("no primitive aperiodic substitution found")
