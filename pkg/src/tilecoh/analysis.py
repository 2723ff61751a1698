"""Quantities derived from the cohomology: frequencies and traces, deformation
spectra, and exact regularity of patch counts.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath
import numpy as np
import sympy

from .cohomology import CohomologyResult, complex_cohomology
from .dlim import factor_polynomial
from .linalg import IntMatrix, charpoly, charpoly_rational, column_hnf, integer_coordinates, solve_rational
from .subst1d import Substitution1D, Word, allowed_words, ap_complex, collar, primitivity, word_str

PERRON_TOL = 1e-12


class InsufficientDataError(ValueError):
    """Too few occurrences of the anchoring word; use a deeper iterate."""


def fraction_record(x: Fraction) -> dict:
    return {"num": x.numerator, "den": x.denominator}


# ---------------------------------------------------------------------------
# Perron-Frobenius data


def perron_vector(a: np.ndarray, tol: float = PERRON_TOL, max_iter: int = 100000) -> tuple[float, np.ndarray]:
    """Leading eigenvalue and positive right eigenvector of a primitive matrix.

    Power iteration on ``A + I`` (same eigenvector, no periodic oscillation),
    then a few Rayleigh-quotient iteration steps.
    """
    n = a.shape[0]
    shifted = a + np.eye(n)
    x = np.ones(n) / n
    for _ in range(max_iter):
        y = shifted @ x
        y /= y.sum()
        done = np.max(np.abs(y - x)) < tol
        x = y
        if done:
            break
    lam = float(x @ a @ x / (x @ x))
    for _ in range(3):
        try:
            y = np.linalg.solve(a - lam * np.eye(n), x)
        except np.linalg.LinAlgError:
            break
        if not np.all(np.isfinite(y)):
            break
        y /= y.sum()
        x = y
        lam = float(x @ a @ x / (x @ x))
    residual = np.max(np.abs(a @ x - lam * x))
    if residual > 1e-9 * max(1.0, lam):
        raise ArithmeticError(f"Perron iteration did not converge (residual {residual:g})")
    return lam, np.abs(x)


@dataclass(frozen=True)
class FrequencyReport:
    perron: float
    alphabet: tuple[str, ...]
    tile_lengths: tuple[float, ...]
    tile_freqs: tuple[float, ...]
    trace_values: tuple[float, ...]
    warnings: tuple[str, ...] = ()

    def trace(self, letter: str) -> float:
        """Trace of the indicator cochain of a letter: its frequency per unit length."""
        return self.tile_freqs[self.alphabet.index(letter)]

    def to_record(self) -> dict:
        return {
            "perron": self.perron,
            "tile_lengths": dict(zip(self.alphabet, self.tile_lengths)),
            "tile_freqs": dict(zip(self.alphabet, self.tile_freqs)),
            "generator_traces": list(self.trace_values),
            "warnings": list(self.warnings),
        }


def _letter_data(s: Substitution1D, lengths: Sequence[float] | None):
    a = np.array(s.matrix().to_lists(), dtype=float)
    lam, right = perron_vector(a)
    _, left = perron_vector(a.T)
    warnings = []
    if lengths is None:
        lens = left / left.min()
    else:
        lens = np.array([float(x) for x in lengths])
        if lens.shape != (len(s.alphabet),) or np.any(lens <= 0):
            raise ValueError("need one positive length per letter")
        ratio = lens / left
        if np.max(ratio) - np.min(ratio) > 1e-9 * np.max(ratio):
            warnings.append("declared lengths are not a left Perron vector; the tiling is not self-similar")
    freqs = right / (right @ lens)
    return lam, lens, freqs, warnings


def frequencies(s: Substitution1D, lengths: Sequence[float] | None = None) -> FrequencyReport:
    """Tile frequencies per unit length and traces of the top-degree generators.

    Generator traces refer to the once-collared Anderson-Putnam complex: a
    collared tile has the length of its core, and its frequency is read off
    the Perron vector of the collared substitution.
    """
    if not primitivity(s):
        raise ValueError("frequencies need a primitive substitution")
    lam, lens, freqs, warnings = _letter_data(s, lengths)
    t, c_freqs = collared_frequencies(s, lens)
    _, system = ap_complex(t)
    h1 = complex_cohomology(system)[1]
    traces = tuple(float(np.dot(c_freqs, np.array(h1.generators.col(j), dtype=float))) for j in range(h1.generators.cols))
    return FrequencyReport(lam, s.alphabet, tuple(map(float, lens)), tuple(map(float, freqs)), traces, tuple(warnings))


def collared_frequencies(s: Substitution1D, lengths: Sequence[float] | None = None) -> tuple[Substitution1D, np.ndarray]:
    """Collared substitution and the per-unit-length frequencies of its letters."""
    _, lens, _, _ = _letter_data(s, lengths)
    c = collar(s)
    idx = {x: i for i, x in enumerate(s.alphabet)}
    c_lens = [lens[idx[c.projection(w)]] for w in c.letters]
    return c.substitution, _letter_data(c.substitution, c_lens)[2]


# ---------------------------------------------------------------------------
# deformations


@dataclass(frozen=True)
class DeformationReport:
    charpoly: tuple[int, ...]
    factors: tuple[tuple[tuple[int, ...], int], ...]
    spectrum: tuple[tuple[complex, int], ...]
    an_dimension: int
    pisot: bool
    dimension: int

    @property
    def eigenvalues(self) -> list[complex]:
        return [z for z, m in self.spectrum for _ in range(m)]

    def to_record(self) -> dict:
        def num(z: complex):
            if abs(z.imag) < 1e-30:
                return z.real
            return {"re": z.real, "im": z.imag}

        return {
            "charpoly": list(self.charpoly),
            "factors": [{"coeffs": list(f), "multiplicity": m} for f, m in self.factors],
            "spectrum": [{"value": num(z), "modulus": abs(z), "multiplicity": m} for z, m in self.spectrum],
            "an_dimension": self.an_dimension,
            "pisot": self.pisot,
            "dimension": self.dimension,
        }


def _roots(coeffs: tuple[int, ...], dps: int = 60) -> list[complex]:
    if len(coeffs) == 2:
        return [complex(Fraction(-coeffs[1], coeffs[0]))]
    with mpmath.workdps(dps):
        rs = mpmath.polyroots(list(coeffs), maxsteps=500, extraprec=4 * dps)
        return [complex(r) for r in rs]


def _modulus_class(coeffs: tuple[int, ...], z: complex) -> int:
    """-1, 0 or 1 as ``|z|`` is below, on or above the unit circle."""
    x = sympy.Symbol("x")
    if sympy.Poly(list(coeffs), x).is_cyclotomic:
        return 0
    m = abs(z)
    if abs(m - 1) < 1e-12:
        # non-cyclotomic irreducible factors may still have roots on the circle (Salem)
        with mpmath.workdps(100):
            rs = mpmath.polyroots(list(coeffs), maxsteps=800, extraprec=400)
            best = min(rs, key=lambda r: abs(complex(r) - z))
            mm = abs(best)
            if abs(mm - 1) < mpmath.mpf(10) ** -80:
                return 0
            return 1 if mm > 1 else -1
    return 1 if m > 1 else -1


def deformations(result: CohomologyResult, d: int = 1) -> DeformationReport:
    """Spectrum of the substitution action on the first Cech group and its contracting part."""
    if len(result.degrees) < 2:
        raise ValueError("no first cohomology in this result")
    r = result[1].presentation.restricted_map
    chi = charpoly(r)
    if chi != charpoly_rational(r):
        raise AssertionError("integer and rational characteristic polynomials differ")
    factors = tuple(factor_polynomial(chi)) if r.rows else ()
    spectrum = []
    below = above = 0
    for fac, mult in factors:
        for z in _roots(fac):
            spectrum.append((z, mult))
            cls = _modulus_class(fac, z)
            if cls < 0:
                below += mult
            elif cls > 0:
                above += mult
    spectrum.sort(key=lambda zm: (-abs(zm[0]), -zm[0].real, -zm[0].imag))
    total = sum(m for _, m in spectrum)
    if total != r.rows:
        raise AssertionError("root count does not match the rank")
    pisot = above == 1 and below == total - 1
    return DeformationReport(tuple(chi), factors, tuple(spectrum), d * below, pisot, d)


# ---------------------------------------------------------------------------
# exact regularity


@dataclass(frozen=True)
class RegularityReport:
    substitution: Substitution1D
    patches: tuple[Word, ...]
    basis_patches: tuple[Word, ...]
    coefficients: tuple[tuple[Fraction, ...], ...]
    collar_radius: int
    power: int
    residual_radius: int
    integral: bool
    classes: tuple[tuple[int, ...], ...] = field(compare=False, default=())

    def coefficient_map(self) -> dict[str, tuple[Fraction, ...]]:
        return {word_str(p): c for p, c in zip(self.patches, self.coefficients)}

    def to_record(self) -> dict:
        return {
            "basis_patches": [word_str(p) for p in self.basis_patches],
            "coefficients": {
                word_str(p): [fraction_record(x) for x in c] for p, c in zip(self.patches, self.coefficients)
            },
            "collar_radius": self.collar_radius,
            "power": self.power,
            "residual_radius": self.residual_radius,
            "integral": self.integral,
        }


def _stabilization_power(m: IntMatrix) -> int:
    lattice = IntMatrix.identity(m.rows)
    s = 0
    while True:
        image = column_hnf(m @ lattice)
        if image.cols == lattice.cols:
            return s
        lattice = image
        s += 1


MAX_EXTRA_LENGTH = 8


def _regularity_basis(s: Substitution1D, pats: tuple[Word, ...], span: int):
    """Greedy basis from letters, the queried patches, then allowed words up to ``span``.

    Returns ``None`` when words of that length do not yet span the group.
    """
    r = max(1, span - 1)
    c = collar(s, r)
    _, system = ap_complex(c.substitution)
    h1 = complex_cohomology(system)[1]
    pres = h1.presentation
    if pres.torsion_moduli:
        raise AssertionError("graph cohomology has no torsion")
    power = _stabilization_power(pres.free_endo)
    e_power = pres.free_endo**power
    basis = pres.lattice_basis
    q = pres.eventual_rank

    def cls(p: Word) -> tuple[int, ...]:
        cochain = [1 if w[r : r + len(p)] == p else 0 for w in c.letters]
        y = h1.coordinates(cochain)
        z = integer_coordinates(basis, IntMatrix.from_columns([e_power.apply(y)], rows=e_power.rows))
        return z.col(0)

    pool: list[Word] = [(a,) for a in s.alphabet] + list(pats)
    for n in range(2, span + 1):
        pool += sorted(allowed_words(s, n))
    chosen: list[Word] = []
    vecs: list[tuple[int, ...]] = []
    seen = set()
    for p in pool:
        if len(chosen) == q:
            break
        if p in seen:
            continue
        seen.add(p)
        v = cls(p)
        trial = IntMatrix.from_columns(vecs + [v], rows=q)
        if column_hnf(trial).cols == len(vecs) + 1:
            chosen.append(p)
            vecs.append(v)
    if len(chosen) != q:
        return None
    return r, power, cls, chosen, vecs, q


def exact_regularity(s: Substitution1D, patches: Sequence[Sequence[str]]) -> RegularityReport:
    """Express patch-count classes rationally in a basis of patch classes.

    Each patch ``P`` gives the cochain counting occurrences of ``P`` that start
    on a tile; it is defined on tiles collared far enough ahead to see ``P``.
    Classes are compared after pushing forward into the eventual range of the
    substitution action, where linear relations are those of the Cech group.
    """
    pats = tuple(tuple(p) for p in patches)
    if not pats:
        raise ValueError("no patches given")
    m = max(len(p) for p in pats)
    for p in pats:
        if not p:
            raise ValueError("empty patch")
        if p not in allowed_words(s, len(p)):
            raise ValueError(f"patch {word_str(p)!r} is not in the language")
    for span in range(max(m, 1), max(m, 1) + MAX_EXTRA_LENGTH + 1):
        attempt = _regularity_basis(s, pats, span)
        if attempt is not None:
            break
    else:
        raise AssertionError("patch classes do not span the first Cech group")
    r, power, cls, chosen, vecs, q = attempt
    bmat = IntMatrix.from_columns(vecs, rows=q)
    coeffs = []
    classes = []
    for p in pats:
        v = cls(p)
        sol = solve_rational(bmat, v)
        assert sol is not None
        coeffs.append(tuple(sol))
        classes.append(v)
    integral = all(x.denominator == 1 for cf in coeffs for x in cf)
    longest = max(len(t_word) for t_word in (s.iterate((a,), power + 1) for a in s.alphabet))
    residual = (r + 1) * longest
    return RegularityReport(s, pats, tuple(chosen), tuple(coeffs), r, power, residual, integral, tuple(classes))


@dataclass(frozen=True)
class EmpiricalVerdict:
    passed: bool
    regions: int
    anchor: Word
    depth: int
    counterexample: dict | None = None

    def to_record(self) -> dict:
        return {
            "passed": self.passed,
            "regions": self.regions,
            "anchor": word_str(self.anchor),
            "depth": self.depth,
            "counterexample": self.counterexample,
        }


def _prefix_counts(word: Word, p: Word) -> list[int]:
    """``out[i]`` = occurrences of ``p`` starting before position ``i``."""
    k = len(p)
    out = [0]
    for i in range(len(word)):
        out.append(out[-1] + (word[i : i + k] == p))
    return out


def regularity_empirical_check(
    s: Substitution1D,
    report: RegularityReport,
    depth: int = 12,
    seed: str | None = None,
    min_regions: int = 20,
) -> EmpiricalVerdict:
    """Check ``#P(R) = sum c_i #P_i(R)`` exactly on regions between aligned occurrences of a long word."""
    seed = seed if seed is not None else s.alphabet[0]
    word = s.iterate((seed,), depth)
    length = max(2 * report.residual_radius, 2 * max(len(p) for p in report.patches + report.basis_patches))
    if len(word) < length:
        raise InsufficientDataError(f"iterate of length {len(word)} is shorter than the anchor length {length}")
    counts = Counter(word[i : i + length] for i in range(len(word) - length + 1))
    anchor = min(counts, key=lambda w: (-counts[w], w))
    starts = [i for i in range(len(word) - length + 1) if word[i : i + length] == anchor]
    h = length // 2
    pairs = [(i, j) for k, i in enumerate(starts) for j in starts[k + 1 :]]
    if len(pairs) < min_regions:
        raise InsufficientDataError(
            f"only {len(pairs)} regions from {len(starts)} occurrences of the anchor; increase the depth"
        )
    tables = {p: _prefix_counts(word, p) for p in set(report.patches) | set(report.basis_patches)}
    for i, j in pairs:
        lo, hi = i + h, j + h
        basis_counts = [tables[b][hi] - tables[b][lo] for b in report.basis_patches]
        for p, cf in zip(report.patches, report.coefficients):
            lhs = tables[p][hi] - tables[p][lo]
            rhs = sum(c * n for c, n in zip(cf, basis_counts))
            if lhs != rhs:
                return EmpiricalVerdict(
                    False,
                    len(pairs),
                    anchor,
                    depth,
                    {"region": [lo, hi], "patch": word_str(p), "count": lhs, "predicted": str(rhs)},
                )
    return EmpiricalVerdict(True, len(pairs), anchor, depth)
