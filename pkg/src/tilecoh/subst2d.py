"""Constant-size square block substitutions and their Anderson-Putnam complex.

Grids are tuples of rows with row 0 on top.  Horizontal edges point east
and vertical edges point north, so a face has boundary ``S + E - N - W``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .cohomology import CochainSystem, CohomologyResult, complex_cohomology, from_chain_complex
from .linalg import IntMatrix
from .subst1d import DIAGNOSTIC_ONLY

Grid = tuple[tuple[str, ...], ...]

SIDES = ("S", "E", "N", "W")
CORNERS = ("SW", "SE", "NE", "NW")
# endpoints of each side, as (tail corner, head corner)
SIDE_ENDS = {"S": ("SW", "SE"), "N": ("NW", "NE"), "W": ("SW", "NW"), "E": ("SE", "NE")}
FACE_SIGN = {"S": 1, "E": 1, "N": -1, "W": -1}


def _grid(rows) -> Grid:
    return tuple(tuple(r) for r in rows)


def subgrids(g: Grid, k: int):
    n, m = len(g), len(g[0]) if g else 0
    for i in range(n - k + 1):
        for j in range(m - k + 1):
            yield tuple(row[j : j + k] for row in g[i : i + k])


def grid_name(g: Grid) -> str:
    sep = "" if all(len(x) == 1 for row in g for x in row) else ","
    return "[" + "|".join(sep.join(row) for row in g) + "]"


@dataclass(frozen=True)
class BlockSubstitution2D:
    alphabet: tuple[str, ...]
    block_size: int
    rules: tuple[Grid, ...]

    def __post_init__(self):
        n = self.block_size
        if n < 2:
            raise ValueError("block size must be at least 2")
        if not self.alphabet or len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("alphabet must be nonempty without repeats")
        if len(self.rules) != len(self.alphabet):
            raise ValueError("need exactly one rule per letter")
        known = set(self.alphabet)
        for a, g in zip(self.alphabet, self.rules):
            if len(g) != n or any(len(row) != n for row in g):
                raise ValueError(f"rule for {a!r} is not a {n}x{n} grid")
            for row in g:
                for x in row:
                    if x not in known:
                        raise ValueError(f"rule for {a!r} uses unknown letter {x!r}")

    @classmethod
    def from_dict(cls, rules: Mapping[str, Sequence[Sequence[str]]], alphabet: Sequence[str] | None = None):
        alphabet = tuple(alphabet) if alphabet is not None else tuple(rules)
        for a in alphabet:
            if a not in rules:
                raise ValueError(f"no rule for letter {a!r}")
        for a in rules:
            if a not in alphabet:
                raise ValueError(f"rule given for unknown letter {a!r}")
        grids = tuple(_grid(rules[a]) for a in alphabet)
        n = len(grids[0]) if grids else 0
        return cls(alphabet, n, grids)

    @property
    def rule_map(self) -> dict[str, Grid]:
        return dict(zip(self.alphabet, self.rules))

    def apply(self, g: Grid) -> Grid:
        rm = self.rule_map
        n = self.block_size
        out = []
        for row in g:
            for r in range(n):
                out.append(tuple(x for letter in row for x in rm[letter][r]))
        return tuple(out)

    def matrix(self) -> IntMatrix:
        idx = {a: i for i, a in enumerate(self.alphabet)}
        k = len(self.alphabet)
        m = [[0] * k for _ in range(k)]
        for j, g in enumerate(self.rules):
            for row in g:
                for x in row:
                    m[idx[x]][j] += 1
        return IntMatrix.from_rows(m, cols=k)

    def primitive(self) -> bool:
        k = len(self.alphabet)
        a = self.matrix()
        base = [[a[i, j] > 0 for j in range(k)] for i in range(k)]
        power = base
        for _ in range((k - 1) ** 2 + 1):
            if all(all(r) for r in power):
                return True
            power = [[any(power[i][t] and base[t][j] for t in range(k)) for j in range(k)] for i in range(k)]
        return False

    def to_record(self) -> dict:
        return {
            "block_size": self.block_size,
            "alphabet": list(self.alphabet),
            "rules": {a: [list(r) for r in g] for a, g in zip(self.alphabet, self.rules)},
        }


def allowed_blocks(s: BlockSubstitution2D, k: int) -> frozenset[Grid]:
    """All ``k x k`` patches of the substitution language, by closure."""
    if k < 1:
        raise ValueError("block size must be at least 1")
    found: set[Grid] = set()
    for a in s.alphabet:
        g: Grid = ((a,),)
        while len(g) < k:
            g = s.apply(g)
        found.update(subgrids(g, k))
    todo = list(found)
    while todo:
        g = todo.pop()
        for u in subgrids(s.apply(g), k):
            if u not in found:
                found.add(u)
                todo.append(u)
    return frozenset(found)


@dataclass(frozen=True)
class Collared2D:
    base: BlockSubstitution2D
    letters: tuple[Grid, ...]
    substitution: BlockSubstitution2D

    def projection(self, name: str) -> str:
        return self.letters[self.substitution.alphabet.index(name)][1][1]


def collar2d(s: BlockSubstitution2D) -> Collared2D:
    """Rewrite ``s`` over tiles labelled by their 3x3 neighbourhoods."""
    n = s.block_size
    letters = tuple(sorted(allowed_blocks(s, 3)))
    names = {g: grid_name(g) for g in letters}
    rules = []
    for g in letters:
        big = s.apply(g)
        rule = []
        for i in range(n, 2 * n):
            row = []
            for j in range(n, 2 * n):
                nb = tuple(r[j - 1 : j + 2] for r in big[i - 1 : i + 2])
                assert nb in names, "collared image is not an allowed 3x3 block"
                row.append(names[nb])
            rule.append(tuple(row))
        rules.append(tuple(rule))
    sub = BlockSubstitution2D(tuple(names[g] for g in letters), n, tuple(rules))
    return Collared2D(s, letters, sub)


class _UnionFind:
    def __init__(self, items):
        self.order = {x: i for i, x in enumerate(items)}
        self.parent = {x: x for x in items}

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            if self.order[ry] < self.order[rx]:
                rx, ry = ry, rx
            self.parent[ry] = rx

    def classes(self) -> list[list]:
        out: dict = {}
        for x in self.order:
            out.setdefault(self.find(x), []).append(x)
        return sorted(out.values(), key=lambda c: self.order[c[0]])


@dataclass(frozen=True)
class SquareComplex:
    substitution: BlockSubstitution2D
    collared: bool
    faces: tuple[str, ...]
    h_edges: tuple[tuple[tuple[str, str], ...], ...]
    v_edges: tuple[tuple[tuple[str, str], ...], ...]
    vertices: tuple[tuple[tuple[str, str], ...], ...]
    system: CochainSystem
    collaring: Collared2D | None = field(default=None, compare=False)

    @property
    def diagnostic_only(self) -> bool:
        return not self.collared


def square_complex(t: BlockSubstitution2D, blocks2: frozenset[Grid] | None = None):
    """Glue one square per letter along the allowed 2x2 blocks; return cells and chain data."""
    if blocks2 is None:
        blocks2 = allowed_blocks(t, 2)
    side_uf = _UnionFind([(a, x) for a in t.alphabet for x in SIDES])
    corner_uf = _UnionFind([(a, x) for a in t.alphabet for x in CORNERS])
    for (p, q), (r, s) in sorted(blocks2):
        for left, right in ((p, q), (r, s)):
            side_uf.union((left, "E"), (right, "W"))
            corner_uf.union((left, "NE"), (right, "NW"))
            corner_uf.union((left, "SE"), (right, "SW"))
        for top, bottom in ((p, r), (q, s)):
            side_uf.union((top, "S"), (bottom, "N"))
            corner_uf.union((top, "SW"), (bottom, "NW"))
            corner_uf.union((top, "SE"), (bottom, "NE"))
    edge_classes = side_uf.classes()
    h = [c for c in edge_classes if c[0][1] in "SN"]
    v = [c for c in edge_classes if c[0][1] in "EW"]
    edges = h + v
    corners = corner_uf.classes()
    eid = {x: i for i, c in enumerate(edges) for x in c}
    cid = {x: i for i, c in enumerate(corners) for x in c}
    faces = t.alphabet
    fid = {a: i for i, a in enumerate(faces)}
    nv, ne, nf = len(corners), len(edges), len(faces)

    d1 = [[0] * ne for _ in range(nv)]
    for i, c in enumerate(edges):
        tail, head = SIDE_ENDS[c[0][1]]
        a = c[0][0]
        for slot in c:
            st, sh = SIDE_ENDS[slot[1]]
            if (cid[(slot[0], st)], cid[(slot[0], sh)]) != (cid[(a, tail)], cid[(a, head)]):
                raise AssertionError(f"edge class {i} has inconsistent endpoints")
        d1[cid[(a, head)]][i] += 1
        d1[cid[(a, tail)]][i] -= 1
    d2 = [[0] * nf for _ in range(ne)]
    for a in faces:
        for side in SIDES:
            d2[eid[(a, side)]][fid[a]] += FACE_SIGN[side]

    n = t.block_size
    rm = t.rule_map
    f2 = [[0] * nf for _ in range(nf)]
    for a in faces:
        for row in rm[a]:
            for x in row:
                f2[fid[x]][fid[a]] += 1

    def side_image(a: str, side: str) -> list[tuple[str, str]]:
        g = rm[a]
        if side == "S":
            return [(x, "S") for x in g[n - 1]]
        if side == "N":
            return [(x, "N") for x in g[0]]
        if side == "W":
            return [(g[i][0], "W") for i in range(n)]
        return [(g[i][n - 1], "E") for i in range(n)]

    corner_pos = {"SW": (n - 1, 0), "SE": (n - 1, n - 1), "NE": (0, n - 1), "NW": (0, 0)}
    f1 = [[0] * ne for _ in range(ne)]
    for i, c in enumerate(edges):
        images = {tuple(sorted(eid[x] for x in side_image(*slot))) for slot in c}
        if len(images) != 1:
            raise AssertionError(f"substitution image of edge class {i} is not well defined")
        for j in images.pop():
            f1[j][i] += 1
    f0 = [[0] * nv for _ in range(nv)]
    for i, c in enumerate(corners):
        images = set()
        for a, corner in c:
            r, col = corner_pos[corner]
            images.add(cid[(rm[a][r][col], corner)])
        if len(images) != 1:
            raise AssertionError(f"substitution image of vertex class {i} is not well defined")
        f0[images.pop()][i] = 1

    system = from_chain_complex(
        (nv, ne, nf),
        (IntMatrix.from_rows(d1, cols=ne), IntMatrix.from_rows(d2, cols=nf)),
        (IntMatrix.from_rows(f0, cols=nv), IntMatrix.from_rows(f1, cols=ne), IntMatrix.from_rows(f2, cols=nf)),
        (
            tuple(f"v{i}" for i in range(nv)),
            tuple(f"{'h' if i < len(h) else 'v'}{i}" for i in range(ne)),
            tuple(faces),
        ),
    )
    return tuple(map(tuple, h)), tuple(map(tuple, v)), tuple(map(tuple, corners)), system


def build_ap2d(s: BlockSubstitution2D, collared: bool = True) -> SquareComplex:
    col = collar2d(s) if collared else None
    t = col.substitution if col else s
    h, v, corners, system = square_complex(t)
    if not collared:
        system = CochainSystem(system.dims, system.coboundaries, system.endo, system.labels, (DIAGNOSTIC_ONLY,))
    return SquareComplex(t, collared, t.alphabet, h, v, corners, system, col)


def cech_2d(s: BlockSubstitution2D, collared: bool = True) -> CohomologyResult:
    """Once-collared Anderson-Putnam pipeline."""
    return complex_cohomology(build_ap2d(s, collared).system)
