"""Named examples used by the tests, the scripts and ``--example`` on the command line."""

from __future__ import annotations

from .cohomology import CochainSystem, graph_system
from .subst1d import Substitution1D
from .subst2d import BlockSubstitution2D

SUBST1D = {
    "fibonacci": {"a": "ab", "b": "a"},
    "thue-morse": {"a": "ab", "b": "ba"},
    "period-doubling": {"a": "ab", "b": "aa"},
    "pinwheel-line": {"a": "aabba", "b": "baabb"},
    "solenoid": {"a": "aa"},
    "tribonacci": {"a": "ab", "b": "ac", "c": "a"},
}

ARROW_TURN = {"NE": "NW", "NW": "SW", "SW": "SE", "SE": "NE"}


def _rotate_ccw(grid):
    n = len(grid)
    return [[grid[j][n - 1 - i] for j in range(n)] for i in range(n)]


def chair_rules() -> dict[str, list[list[str]]]:
    """Arrow chair: the northeast rule, the others by quarter turns of the picture."""
    rules = {"NE": [["SE", "NE"], ["NE", "NW"]]}
    arrow = "NE"
    for _ in range(3):
        turned = [[ARROW_TURN[x] for x in row] for row in _rotate_ccw(rules[arrow])]
        arrow = ARROW_TURN[arrow]
        rules[arrow] = turned
    return rules


SUBST2D = {
    "three-square": {"A": [["A", "A"], ["B", "C"]], "B": [["A", "B"], ["B", "C"]], "C": [["A", "C"], ["B", "C"]]},
    "torus": {"X": [["X", "X"], ["X", "X"]]},
    "chair": chair_rules(),
}

ALPHABETS_2D = {"chair": ["NE", "NW", "SW", "SE"]}


def subst1d(name: str) -> Substitution1D:
    return Substitution1D.from_dict(SUBST1D[name])


def subst2d(name: str) -> BlockSubstitution2D:
    return BlockSubstitution2D.from_dict(SUBST2D[name], ALPHABETS_2D.get(name))


# Graph inputs in the command-line "complex" format.
GRAPHS = {
    "solenoid-graph": {
        "vertices": ["v"],
        "edges": [["c", "v", "v"]],
        "vertex_map": {"v": "v"},
        "edge_paths": {"c": ["c", "c"]},
    },
    # Loops a and d joined by b then c; reconstructed from the follower relations.
    "eyeglasses": {
        "vertices": ["v1", "v2", "v3"],
        "edges": [["a", "v1", "v1"], ["b", "v1", "v2"], ["c", "v2", "v3"], ["d", "v3", "v3"]],
        "vertex_map": {"v1": "v1", "v2": "v2", "v3": "v3"},
        "edge_paths": {"a": ["a", "a"], "b": ["a", "b"], "c": ["c", "d"], "d": ["d", "d"]},
    },
}


def graph(name: str) -> CochainSystem:
    g = GRAPHS[name]
    return graph_system(g["vertices"], [tuple(e) for e in g["edges"]], g["vertex_map"], g["edge_paths"])


def example_document(name: str) -> dict:
    """Input document (as parsed JSON) for a named example."""
    if name in SUBST1D:
        rules = SUBST1D[name]
        return {"schema": 1, "mode": "subst1d", "alphabet": list(rules), "rules": dict(rules)}
    if name in SUBST2D:
        rules = SUBST2D[name]
        alphabet = ALPHABETS_2D.get(name, list(rules))
        return {
            "schema": 1,
            "mode": "subst2d",
            "block_size": len(next(iter(rules.values()))),
            "alphabet": alphabet,
            "rules": {a: rules[a] for a in alphabet},
        }
    if name in GRAPHS:
        return {"schema": 1, "mode": "complex", **GRAPHS[name]}
    raise KeyError(name)


def names() -> list[str]:
    return sorted(set(SUBST1D) | set(SUBST2D) | set(GRAPHS))
