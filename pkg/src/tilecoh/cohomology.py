"""Cohomology of a finite integer cochain complex with a cochain self-map.

Every complex builder in the package produces a :class:`CochainSystem`; the
functions here turn it into ``H^k`` presentations, the induced map on each
``H^k``, and the direct limit of that map.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .dlim import DlimPresentation, GroupDescription, dlim_describe
from .linalg import FgAbGroup, IntMatrix, smith

MAX_DEGREE = 2


class InvalidSystemError(ValueError):
    """Raised when a cochain system fails ``d^2 = 0`` or the commutation law."""

    def __init__(self, violations: list[str]):
        super().__init__("; ".join(violations[:5]))
        self.violations = violations


@dataclass(frozen=True)
class CochainSystem:
    """Cochain groups ``C^0 .. C^d`` with coboundaries ``delta[k]: C^k -> C^(k+1)``.

    ``endo[k]`` is the cochain map on ``C^k``; matrices act on column vectors.
    """

    dims: tuple[int, ...]
    coboundaries: tuple[IntMatrix, ...]
    endo: tuple[IntMatrix, ...]
    labels: tuple[tuple[str, ...], ...] = ()
    notes: tuple[str, ...] = field(default=(), compare=False)

    @property
    def top_degree(self) -> int:
        return len(self.dims) - 1

    def delta(self, k: int) -> IntMatrix:
        """Coboundary out of degree ``k``; zero-target matrices at the ends."""
        if k < 0:
            return IntMatrix.zeros(self.dims[0], 0)
        if k >= len(self.coboundaries):
            return IntMatrix.zeros(0, self.dims[k])
        return self.coboundaries[k]

    def label(self, k: int, i: int) -> str:
        if k < len(self.labels) and i < len(self.labels[k]):
            return self.labels[k][i]
        return f"c{k}_{i}"


def from_chain_complex(
    dims: Sequence[int],
    boundaries: Sequence[IntMatrix],
    chain_maps: Sequence[IntMatrix],
    labels: Sequence[Sequence[str]] = (),
    notes: Sequence[str] = (),
) -> CochainSystem:
    """Dualize a cellular chain complex: ``boundaries[k]`` is ``C_(k+1) -> C_k``."""
    return CochainSystem(
        tuple(dims),
        tuple(b.T for b in boundaries),
        tuple(f.T for f in chain_maps),
        tuple(tuple(x) for x in labels),
        tuple(notes),
    )


def _first_nonzero(m: IntMatrix) -> tuple[int, int, int] | None:
    for i in range(m.rows):
        for j in range(m.cols):
            if m[i, j]:
                return i, j, m[i, j]
    return None


def validate_system(sys: CochainSystem) -> list[str]:
    """List every violated structural law; empty when the system is valid."""
    out: list[str] = []
    d = len(sys.dims) - 1
    if d < 0:
        return ["system has no cochain groups"]
    if d > MAX_DEGREE:
        out.append(f"degree {d} exceeds the supported bound {MAX_DEGREE}")
    if len(sys.coboundaries) != d:
        out.append(f"expected {d} coboundaries, got {len(sys.coboundaries)}")
        return out
    if len(sys.endo) != d + 1:
        out.append(f"expected {d + 1} endomorphisms, got {len(sys.endo)}")
        return out
    for k, delta in enumerate(sys.coboundaries):
        if delta.shape != (sys.dims[k + 1], sys.dims[k]):
            out.append(f"delta_{k} has shape {delta.shape}, expected {(sys.dims[k + 1], sys.dims[k])}")
    for k, f in enumerate(sys.endo):
        if f.shape != (sys.dims[k], sys.dims[k]):
            out.append(f"F_{k} has shape {f.shape}, expected {(sys.dims[k], sys.dims[k])}")
    if out:
        return out
    for k in range(d - 1):
        bad = _first_nonzero(sys.coboundaries[k + 1] @ sys.coboundaries[k])
        if bad:
            i, j, v = bad
            out.append(f"degree {k}: (delta_{k + 1} delta_{k})[{i},{j}] = {v}, expected 0")
    for k in range(d):
        lhs = sys.endo[k + 1] @ sys.coboundaries[k]
        rhs = sys.coboundaries[k] @ sys.endo[k]
        bad = _first_nonzero(lhs - rhs)
        if bad:
            i, j, _ = bad
            out.append(
                f"degree {k}: F_{k + 1} delta_{k} != delta_{k} F_{k} at [{i},{j}] "
                f"({lhs[i, j]} vs {rhs[i, j]})"
            )
    return out


@dataclass(frozen=True)
class DegreeCohomology:
    """``H^k`` with explicit generators.

    ``generators`` columns are cocycles in ``C^k``; generator ``i`` has order
    ``moduli[i]`` (0 for infinite order).  ``class_map`` sends a cocycle to its
    class coordinates (reduce entry ``i`` mod ``moduli[i]`` when nonzero).
    """

    degree: int
    group: FgAbGroup
    generators: IntMatrix
    moduli: tuple[int, ...]
    class_map: IntMatrix
    induced_map: IntMatrix
    presentation: DlimPresentation
    cech: GroupDescription

    def coordinates(self, cocycle: Sequence[int]) -> list[int]:
        v = self.class_map.apply(cocycle)
        return [x % d if d else x for x, d in zip(v, self.moduli)]


@dataclass(frozen=True)
class CohomologyResult:
    system: CochainSystem
    degrees: tuple[DegreeCohomology, ...]
    euler: int

    def __getitem__(self, k: int) -> DegreeCohomology:
        return self.degrees[k]

    def cech_strings(self) -> list[str]:
        return [str(d.cech) for d in self.degrees]


def _degree(sys: CochainSystem, k: int) -> DegreeCohomology:
    n = sys.dims[k]
    sd = smith(sys.delta(k))
    r = sd.rank
    kernel = sd.V.submatrix(range(n), range(r, n))
    to_kernel = sd.V_inv.submatrix(range(r, n), range(n))
    boundary = to_kernel @ sys.delta(k - 1)
    sd2 = smith(boundary)
    z = kernel.cols
    diag = list(sd2.diagonal) + [0] * (z - len(sd2.diagonal))
    keep = [i for i in range(z) if diag[i] != 1]
    moduli = tuple(diag[i] for i in keep)
    lifts = kernel @ sd2.U_inv.submatrix(range(z), keep)
    class_map = sd2.U.submatrix(keep, range(z)) @ to_kernel
    raw = class_map @ sys.endo[k] @ lifts
    induced = IntMatrix.from_rows(
        [[x % moduli[i] if moduli[i] else x for x in raw.row(i)] for i in range(len(keep))],
        cols=len(keep),
    )
    torsion = [i for i, d in enumerate(moduli) if d]
    relations = IntMatrix.from_columns(
        [[moduli[i] if row == i else 0 for row in range(len(keep))] for i in torsion], rows=len(keep)
    )
    group = FgAbGroup(sum(1 for d in moduli if d == 0), tuple(sorted(d for d in moduli if d)))
    pres = DlimPresentation.build(induced, relations)
    return DegreeCohomology(k, group, lifts, moduli, class_map, induced, pres, dlim_describe(pres))


def complex_cohomology(sys: CochainSystem) -> CohomologyResult:
    """Compute ``H^k``, the induced maps and their direct limits in every degree."""
    violations = validate_system(sys)
    if violations:
        raise InvalidSystemError(violations)
    degrees = tuple(_degree(sys, k) for k in range(len(sys.dims)))
    euler = sum((-1) ** k * dim for k, dim in enumerate(sys.dims))
    homological = sum((-1) ** d.degree * d.group.free_rank for d in degrees)
    if euler != homological:
        raise AssertionError(f"Euler characteristic mismatch: {euler} vs {homological}")
    return CohomologyResult(sys, degrees, euler)


# ---------------------------------------------------------------------------
# graphs


def _signed(step) -> tuple[str, int]:
    if isinstance(step, str):
        return (step[1:], -1) if step.startswith("-") else (step, 1)
    name, sign = step
    if sign not in (1, -1):
        raise ValueError(f"path step sign must be +1 or -1, got {sign!r}")
    return name, sign


def graph_system(
    vertices: Sequence[str],
    edges: Sequence[tuple[str, str, str]],
    vertex_map: Mapping[str, str],
    edge_paths: Mapping[str, Sequence],
    notes: Sequence[str] = (),
) -> CochainSystem:
    """Cochain system of a directed graph with a cellular self-map.

    ``edges`` are ``(name, tail, head)``.  Each edge maps to a path of signed
    edges: a name, ``"-name"`` for reverse traversal, or a ``(name, sign)`` pair.
    """
    vidx = {v: i for i, v in enumerate(vertices)}
    if len(vidx) != len(vertices):
        raise ValueError("duplicate vertex names")
    eidx = {e[0]: i for i, e in enumerate(edges)}
    if len(eidx) != len(edges):
        raise ValueError("duplicate edge names")
    for name, tail, head in edges:
        for end in (tail, head):
            if end not in vidx:
                raise ValueError(f"edge {name!r} has dangling end {end!r}")
    for v in vertices:
        if vertex_map.get(v) not in vidx:
            raise ValueError(f"vertex {v!r} maps to unknown vertex {vertex_map.get(v)!r}")
    V, E = len(vertices), len(edges)
    boundary = [[0] * E for _ in range(V)]
    for j, (_, tail, head) in enumerate(edges):
        boundary[vidx[head]][j] += 1
        boundary[vidx[tail]][j] -= 1
    f0 = [[0] * V for _ in range(V)]
    for v in vertices:
        f0[vidx[vertex_map[v]]][vidx[v]] = 1
    f1 = [[0] * E for _ in range(E)]
    for j, (name, tail, head) in enumerate(edges):
        if name not in edge_paths:
            raise ValueError(f"edge {name!r} has no image path")
        at = vertex_map[tail]
        for step in edge_paths[name]:
            sname, sign = _signed(step)
            if sname not in eidx:
                raise ValueError(f"path of {name!r} uses unknown edge {sname!r}")
            _, t, h = edges[eidx[sname]]
            start, end = (t, h) if sign > 0 else (h, t)
            if start != at:
                raise ValueError(f"path of {name!r} breaks at {sname!r}: expected start {at!r}, found {start!r}")
            at = end
            f1[eidx[sname]][j] += sign
        if at != vertex_map[head]:
            raise ValueError(f"path of {name!r} ends at {at!r}, expected {vertex_map[head]!r}")
    return from_chain_complex(
        (V, E),
        (IntMatrix.from_rows(boundary, cols=E),),
        (IntMatrix.from_rows(f0, cols=V), IntMatrix.from_rows(f1, cols=E)),
        (tuple(vertices), tuple(e[0] for e in edges)),
        notes,
    )
