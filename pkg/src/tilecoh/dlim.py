"""Direct limits ``dlim(G, f)`` of a finitely generated abelian group under an endomorphism.

The free part is handled through the *eventual range*: the image of a high
power of ``f`` on the free quotient, on which ``f`` is injective.  If
``R`` is the matrix of ``f`` there, ``dlim(Z^r, R)`` is the union of the
lattices ``R^-n Z^r`` inside ``Q^r``.

A description is *certified* only when the characteristic polynomial of
``R`` splits into unit-constant factors (free summands) and factors that
are nilpotent mod a single prime ``p`` (``Z[1/p]`` summands), and the
pieces provably assemble into a direct sum.  Otherwise the result carries
only a fingerprint: the rational rank and the ``p``-ranks ``dim D/pD``.
Both are isomorphism invariants of the limit group, so fingerprints can be
compared safely even when the group cannot be named.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce

import sympy

from .linalg import (
    FgAbGroup,
    IntMatrix,
    cokernel,
    column_hnf,
    det,
    integer_coordinates,
    kernel_basis,
    poly_to_str,
    rank_mod_p,
    smith,
)
from .linalg import charpoly as _charpoly

PROBE_PRIMES = (2, 3, 5, 7)


# ---------------------------------------------------------------------------
# eventual ranges


def eventual_range(m: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Lattice ``im(m^s)`` at the first power where the rank stops dropping.

    Returns ``(basis, restricted)`` with ``m @ basis == basis @ restricted``;
    ``restricted`` has nonzero determinant (or is 0x0).  Any later power gives
    an integrally conjugate ``restricted`` matrix, since ``m`` maps each
    such lattice isomorphically onto the next.
    """
    if m.rows != m.cols:
        raise ValueError("eventual range needs a square matrix")
    n = m.rows
    lattice = IntMatrix.identity(n)
    while True:
        image = column_hnf(m @ lattice)
        if image.cols == lattice.cols:
            break
        lattice = image
    if lattice.cols == 0:
        return lattice, IntMatrix.zeros(0, 0)
    restricted = integer_coordinates(lattice, m @ lattice)
    return lattice, restricted


def _stable_image(endo: IntMatrix, relations: IntMatrix) -> IntMatrix:
    """Hermite basis of the lattice ``endo^n Z^m + relations`` once it stops shrinking.

    ``relations`` must be ``endo``-invariant and of full rank (finite quotient).
    """
    lattice = column_hnf(IntMatrix.identity(endo.rows))
    while True:
        nxt = column_hnf((endo @ lattice).hstack(relations))
        if nxt == lattice:
            return lattice
        lattice = nxt


def finite_eventual_image(endo: IntMatrix, moduli: tuple[int, ...]) -> FgAbGroup:
    """Eventual image of ``endo`` acting on ``Z/d1 (+) ... (+) Z/dk``.

    On that image ``endo`` is an automorphism, so it is the direct limit of
    the finite group.
    """
    if not moduli:
        return FgAbGroup(0)
    rel = IntMatrix.diagonal(moduli)
    stable = _stable_image(endo, rel)
    quotient = cokernel(integer_coordinates(stable, rel))
    assert quotient.free_rank == 0
    return quotient


# ---------------------------------------------------------------------------
# presentations


@dataclass(frozen=True)
class DlimPresentation:
    """``Z^m / relations`` with an endomorphism, split into torsion and free parts.

    Use :meth:`build`; the remaining fields are derived.  Torsion and free
    generators are expressed in Smith coordinates of the relation matrix.
    """

    relations: IntMatrix
    endo: IntMatrix
    torsion_moduli: tuple[int, ...]
    torsion_endo: IntMatrix
    free_endo: IntMatrix
    lattice_basis: IntMatrix
    restricted_map: IntMatrix

    @property
    def eventual_rank(self) -> int:
        return self.restricted_map.rows

    @property
    def ambient(self) -> FgAbGroup:
        return FgAbGroup(self.free_endo.rows, self.torsion_moduli)

    @classmethod
    def build(cls, endo: IntMatrix, relations: IntMatrix | None = None) -> "DlimPresentation":
        m = endo.rows
        if endo.cols != m:
            raise ValueError("endomorphism must be square")
        if relations is None:
            relations = IntMatrix.zeros(m, 0)
        if relations.rows != m:
            raise ValueError("relations must have one row per generator")
        rel_basis = column_hnf(relations)
        if rel_basis.cols:
            try:
                integer_coordinates(rel_basis, endo @ rel_basis)
            except ValueError:
                raise ValueError("endomorphism does not preserve the relation lattice") from None

        sd = smith(relations)
        d = sd.diagonal
        torsion = [i for i in range(len(d)) if d[i] > 1]
        free = [i for i in range(m) if i >= len(d) or d[i] == 0]
        e = sd.U @ endo @ sd.U_inv
        if any(e[i, j] for i in free for j in torsion):
            raise AssertionError("torsion generator mapped off the torsion subgroup")
        moduli = tuple(d[i] for i in torsion)
        t_endo = IntMatrix.from_rows(
            [[e[i, j] % d[i] for j in torsion] for i in torsion], cols=len(torsion)
        )
        f_endo = e.submatrix(free, free)
        basis, restricted = eventual_range(f_endo)
        return cls(relations, endo, moduli, t_endo, f_endo, basis, restricted)


# ---------------------------------------------------------------------------
# descriptions


@dataclass(frozen=True)
class Invariants:
    """Order-independent fingerprint: rational rank and a table of p-ranks.

    ``p_ranks`` lists every prime where the p-rank can differ from ``q_rank``;
    for any other prime it equals ``q_rank``.
    """

    q_rank: int
    p_ranks: tuple[tuple[int, int], ...]

    def p_rank(self, p: int) -> int:
        return dict(self.p_ranks).get(p, self.q_rank)

    def to_record(self) -> dict:
        return {"q_rank": self.q_rank, "p_ranks": {str(p): r for p, r in self.p_ranks}}


@dataclass(frozen=True)
class GroupDescription:
    free_rank: int
    localized: tuple[tuple[int, int], ...]
    torsion: FgAbGroup
    certified: bool
    invariants: Invariants
    scaling_note: tuple[str, ...] = ()
    charpoly: tuple[int, ...] = field(default=(1,), compare=False)

    def __post_init__(self):
        primes = [p for p, _ in self.localized]
        if primes != sorted(set(primes)):
            raise ValueError("localized summands must be sorted by prime, one entry per prime")
        if self.certified:
            inv = self.invariants
            if self.free_rank + sum(r for _, r in self.localized) != inv.q_rank:
                raise ValueError("ranks do not add up to the rational rank")
            for p, r in self.localized:
                if inv.p_rank(p) != inv.q_rank - r:
                    raise ValueError(f"p-rank mismatch at {p}")

    @property
    def invariants_only(self) -> Invariants | None:
        return None if self.certified else self.invariants

    @property
    def q_rank(self) -> int:
        return self.invariants.q_rank

    def p_rank(self, p: int) -> int:
        return self.invariants.p_rank(p)

    def __str__(self) -> str:
        parts = []
        if self.certified:
            if self.free_rank == 1:
                parts.append("Z")
            elif self.free_rank > 1:
                parts.append(f"Z^{self.free_rank}")
            for p, r in self.localized:
                parts.append(f"Z[1/{p}]" + (f"^{r}" if r > 1 else ""))
        elif self.invariants.q_rank:
            pr = ", ".join(f"{p}-rank {r}" for p, r in self.invariants.p_ranks)
            parts.append(f"dlim(rank {self.invariants.q_rank}; {pr})")
        parts.extend(f"Z/{d}" for d in self.torsion.invariant_factors)
        return " (+) ".join(parts) if parts else "0"

    def to_record(self) -> dict:
        return {
            "string": str(self),
            "certified": self.certified,
            "free_rank": self.free_rank if self.certified else None,
            "localized": [{"prime": p, "rank": r} for p, r in self.localized],
            "torsion": list(self.torsion.invariant_factors),
            "invariants": self.invariants.to_record(),
            "scaling_note": list(self.scaling_note),
            "charpoly": list(self.charpoly),
        }


def factor_polynomial(coeffs: list[int]) -> list[tuple[tuple[int, ...], int]]:
    x = sympy.Symbol("x")
    poly = sympy.Poly(coeffs, x, domain="ZZ")
    content, factors = poly.factor_list()
    out = []
    for f, mult in factors:
        c = [int(v) for v in f.all_coeffs()]
        if c[0] < 0:
            c = [-v for v in c]
        out.append((tuple(c), mult))
    out.sort()
    return out


def _single_prime(n: int) -> int | None:
    fac = sympy.factorint(abs(n))
    if len(fac) == 1:
        return next(iter(fac))
    return None


def _classify(factor: tuple[int, ...]) -> int | None:
    """0 for a unit-constant factor, p for a factor nilpotent mod p with p-power constant, else None."""
    c0 = factor[-1]
    if abs(c0) == 1:
        return 0
    if c0 == 0:
        return None
    p = _single_prime(c0)
    if p is None:
        return None
    if all(c % p == 0 for c in factor[1:]):
        return p
    return None


def _poly_at(coeffs: tuple[int, ...], m: IntMatrix) -> IntMatrix:
    n = m.rows
    acc = IntMatrix.zeros(n, n)
    ident = IntMatrix.identity(n)
    for c in coeffs:
        acc = acc @ m + ident.scale(c)
    return acc


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return tuple(out)


def _poly_pow(a, k):
    return reduce(_poly_mul, [a] * k, (1,))


def _fingerprint(p: DlimPresentation) -> Invariants:
    q = p.eventual_rank
    primes = set(PROBE_PRIMES)
    if q:
        dr = det(p.restricted_map)
        primes |= set(sympy.factorint(abs(dr)))
    f = p.free_endo
    out = []
    for prime in sorted(primes):
        base = f.mod(prime)
        acc = IntMatrix.identity(f.rows)
        for _ in range(f.rows):
            acc = (acc @ base).mod(prime)
        r = rank_mod_p(acc, prime) if f.rows else 0
        if r != q:
            out.append((prime, r))
    return Invariants(q, tuple(out))


def _scaling_notes(groups: dict[int, list[tuple[tuple[int, ...], int]]]) -> tuple[str, ...]:
    notes = []
    for p in sorted(k for k in groups if k):
        for fac, mult in groups[p]:
            deg = len(fac) - 1
            suffix = f" (multiplicity {mult})" if mult > 1 else ""
            if deg == 1:
                notes.append(f"Z[1/{p}] scales by {-fac[1]}{suffix}")
            else:
                notes.append(f"Z[1/{p}]^{deg} acts by charpoly {poly_to_str(list(fac))}{suffix}")
    return tuple(notes)


def dlim_describe(p: DlimPresentation) -> GroupDescription:
    torsion = finite_eventual_image(p.torsion_endo, p.torsion_moduli)
    inv = _fingerprint(p)
    R = p.restricted_map
    q = R.rows
    if q == 0:
        return GroupDescription(0, (), torsion, True, inv, (), (1,))
    chi = _charpoly(R)
    factors = factor_polynomial(chi)
    groups: dict[int, list] = {}
    certified = True
    for fac, mult in factors:
        cls = _classify(fac)
        if cls is None:
            certified = False
            break
        groups.setdefault(cls, []).append((fac, mult))

    if certified:
        localized_primes = sorted(k for k in groups if k)
        if len(localized_primes) > 1:
            certified = _localized_parts_split(R, groups)

    if not certified:
        return GroupDescription(0, (), torsion, False, inv, (), tuple(chi))

    def degree(k):
        return sum((len(f) - 1) * mult for f, mult in groups.get(k, []))

    localized = tuple((k, degree(k)) for k in sorted(groups) if k)
    rebuilt = Invariants(q, tuple((k, q - r) for k, r in localized))
    checked = {pr for pr, _ in inv.p_ranks} | {pr for pr, _ in localized}
    if any(rebuilt.p_rank(pr) != inv.p_rank(pr) for pr in checked):
        raise AssertionError(f"certified decomposition disagrees with fingerprint: {rebuilt} vs {inv}")
    return GroupDescription(degree(0), localized, torsion, True, inv, _scaling_notes(groups), tuple(chi))


def _localized_parts_split(R: IntMatrix, groups: dict) -> bool:
    """Do the ``Z[1/p]`` pieces for different primes form a direct sum inside the limit?

    Let ``M`` be the sum of the integer invariant sublattices ``ker g_p(R)`` and
    ``W`` its saturation.  The limit of ``W`` contains the limit of ``M`` with
    quotient the limit of the finite group ``W/M``, i.e. its eventual image.
    The split is certified when that eventual image is trivial.  Free
    summands never obstruct: the localized part is pure, with a free quotient.
    """
    primes = sorted(k for k in groups if k)
    blocks = []
    whole = (1,)
    for p in primes:
        g = (1,)
        for fac, mult in groups[p]:
            g = _poly_mul(g, _poly_pow(fac, mult))
        whole = _poly_mul(whole, g)
        blocks.append(kernel_basis(_poly_at(g, R)))
    sat = kernel_basis(_poly_at(whole, R))
    M = blocks[0]
    for b in blocks[1:]:
        M = M.hstack(b)
    coords = integer_coordinates(sat, M)
    if abs(det(coords)) == 1:
        return True
    r_sat = integer_coordinates(sat, R @ sat)
    stable = _stable_image(r_sat, coords)
    return stable == column_hnf(coords)


def dlim_equal_invariants(a: GroupDescription, b: GroupDescription) -> bool:
    """Necessary condition for isomorphism; also sufficient when both are certified."""
    if a.q_rank != b.q_rank:
        return False
    if a.torsion.invariant_factors != b.torsion.invariant_factors:
        return False
    primes = {p for p, _ in a.invariants.p_ranks} | {p for p, _ in b.invariants.p_ranks}
    if any(a.p_rank(p) != b.p_rank(p) for p in primes):
        return False
    if a.certified and b.certified:
        return (a.free_rank, a.localized) == (b.free_rank, b.localized)
    return True


def describe(endo: IntMatrix, relations: IntMatrix | None = None) -> GroupDescription:
    """Shorthand: ``dlim_describe(DlimPresentation.build(endo, relations))``."""
    return dlim_describe(DlimPresentation.build(endo, relations))
