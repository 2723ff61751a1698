"""One-dimensional substitutions: languages, collaring and the two complexes.

Words are tuples of letter names so that multi-character letters (such as
collared letters) behave like single symbols.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .cohomology import CochainSystem, CohomologyResult, complex_cohomology, graph_system
from .dlim import GroupDescription, describe, dlim_equal_invariants
from .linalg import IntMatrix, charpoly

Word = tuple[str, ...]

DIAGNOSTIC_ONLY = "diagnostic only: valid for Cech cohomology only if the substitution forces the border"


class PipelineDisagreement(RuntimeError):
    """Two independent pipelines produced different invariants (always a bug)."""


def _as_word(w) -> Word:
    if isinstance(w, str):
        return tuple(w)
    return tuple(w)


def word_str(w: Sequence[str]) -> str:
    if all(len(x) == 1 for x in w):
        return "".join(w)
    return " ".join(w)


@dataclass(frozen=True)
class Substitution1D:
    alphabet: tuple[str, ...]
    rules: tuple[Word, ...]

    def __post_init__(self):
        if not self.alphabet:
            raise ValueError("alphabet is empty")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("alphabet has repeated letters")
        if len(self.rules) != len(self.alphabet):
            raise ValueError("need exactly one rule per letter")
        known = set(self.alphabet)
        for a, w in zip(self.alphabet, self.rules):
            if not w:
                raise ValueError(f"rule for {a!r} is empty")
            for x in w:
                if x not in known:
                    raise ValueError(f"rule for {a!r} uses unknown letter {x!r}")

    @classmethod
    def from_dict(cls, rules: Mapping[str, Sequence[str] | str], alphabet: Sequence[str] | None = None):
        """Build from ``{"a": "ab", "b": "a"}``; strings split into characters."""
        alphabet = tuple(alphabet) if alphabet is not None else tuple(rules)
        missing = [a for a in alphabet if a not in rules]
        if missing:
            raise ValueError(f"no rule for letter {missing[0]!r}")
        extra = [a for a in rules if a not in alphabet]
        if extra:
            raise ValueError(f"rule given for unknown letter {extra[0]!r}")
        return cls(alphabet, tuple(_as_word(rules[a]) for a in alphabet))

    @property
    def rule_map(self) -> dict[str, Word]:
        return dict(zip(self.alphabet, self.rules))

    def apply(self, word: Sequence[str]) -> Word:
        rm = self.rule_map
        out: list[str] = []
        for x in word:
            out.extend(rm[x])
        return tuple(out)

    def iterate(self, word: Sequence[str], n: int) -> Word:
        w = tuple(word)
        for _ in range(n):
            w = self.apply(w)
        return w

    def matrix(self) -> IntMatrix:
        """``A[i][j]`` = number of letter ``i`` in the image of letter ``j``."""
        idx = {a: i for i, a in enumerate(self.alphabet)}
        n = len(self.alphabet)
        a = [[0] * n for _ in range(n)]
        for j, w in enumerate(self.rules):
            for x in w:
                a[idx[x]][j] += 1
        return IntMatrix.from_rows(a, cols=n)

    def to_record(self) -> dict:
        return {"alphabet": list(self.alphabet), "rules": {a: list(w) for a, w in zip(self.alphabet, self.rules)}}

    def __str__(self) -> str:
        return ", ".join(f"{a}->{word_str(w)}" for a, w in zip(self.alphabet, self.rules))


# ---------------------------------------------------------------------------
# language


def _subwords(w: Word, n: int):
    for i in range(len(w) - n + 1):
        yield w[i : i + n]


def allowed_words(s: Substitution1D, n: int) -> frozenset[Word]:
    """All length-``n`` words of the substitution language, by closure."""
    if n < 1:
        raise ValueError("word length must be at least 1")
    found: set[Word] = set()
    cap = n * len(s.alphabet) + 8
    for a in s.alphabet:
        w: Word = (a,)
        steps = 0
        while len(w) < n and steps < cap:
            w = s.apply(w)
            steps += 1
        found.update(_subwords(w, n))
    todo = list(found)
    while todo:
        w = todo.pop()
        for u in _subwords(s.apply(w), n):
            if u not in found:
                found.add(u)
                todo.append(u)
    return frozenset(found)


def primitivity(s: Substitution1D) -> bool:
    """Whether some power ``A^m`` with ``m <= (n-1)^2 + 1`` is entrywise positive."""
    n = len(s.alphabet)
    a = s.matrix()
    base = [[a[i, j] > 0 for j in range(n)] for i in range(n)]
    power = base
    for _ in range((n - 1) ** 2 + 1):
        if all(all(row) for row in power):
            return True
        power = [[any(power[i][k] and base[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    return False


def complexity(s: Substitution1D, n_max: int = 64) -> list[int]:
    """``p(n)`` for ``n = 1 .. n_max`` (prefixes of the longest words are enough)."""
    top = allowed_words(s, n_max)
    return [len({w[:n] for w in top}) for n in range(1, n_max + 1)]


def periodicity_heuristic(s: Substitution1D, n_max: int = 64) -> str:
    """``"periodic"`` if complexity ever satisfies ``p(n) <= n``, else ``"aperiodic-likely"``."""
    p = complexity(s, n_max)
    if any(pn <= n for n, pn in enumerate(p, start=1)):
        return "periodic"
    if p[-1] == p[-2] and len(p) > 2:
        return "inconclusive"
    return "aperiodic-likely"


def preflight(s: Substitution1D) -> list[str]:
    """Warnings about primitivity and periodicity; the pipelines proceed regardless."""
    out = []
    if not primitivity(s):
        out.append("substitution is not primitive; results describe the closure language only")
    else:
        verdict = periodicity_heuristic(s)
        if verdict != "aperiodic-likely":
            out.append(f"complexity heuristic says {verdict}; aperiodicity is assumed, not proved")
    return out


# ---------------------------------------------------------------------------
# collaring


@dataclass(frozen=True)
class CollaredAlphabet:
    """Letters are allowed words of length ``2 r + 1``; the core is the middle letter."""

    base: Substitution1D
    radius: int
    letters: tuple[Word, ...]
    rules: tuple[tuple[Word, ...], ...]

    def name(self, w: Word) -> str:
        r = self.radius
        return f"({word_str(w[:r])}){word_str(w[r : r + 1])}({word_str(w[r + 1 :])})"

    def projection(self, w: Word) -> str:
        return w[self.radius]

    @property
    def substitution(self) -> Substitution1D:
        names = tuple(self.name(w) for w in self.letters)
        return Substitution1D(names, tuple(tuple(self.name(x) for x in rule) for rule in self.rules))


def collar(s: Substitution1D, radius: int = 1) -> CollaredAlphabet:
    """Rewrite ``s`` over tiles labelled by their ``radius``-neighbourhoods."""
    if radius < 1:
        raise ValueError("collar radius must be positive")
    r = radius
    letters = tuple(sorted(allowed_words(s, 2 * r + 1)))
    rules = []
    for w in letters:
        left = s.apply(w[:r])
        mid = s.apply(w[r : r + 1])
        full = left + mid + s.apply(w[r + 1 :])
        off = len(left)
        rule = tuple(full[off + i - r : off + i + r + 1] for i in range(len(mid)))
        rules.append(rule)
    known = set(letters)
    for rule in rules:
        for x in rule:
            assert x in known, f"collared image {x} is not an allowed word"
    c = CollaredAlphabet(s, r, letters, tuple(rules))
    for w, rule in zip(letters, c.rules):
        assert tuple(c.projection(x) for x in rule) == s.rule_map[w[r]]
    return c


# ---------------------------------------------------------------------------
# Barge-Diamond complex


@dataclass(frozen=True)
class BdComplex1D:
    substitution: Substitution1D
    flaps: tuple[Word, ...]
    vertices: tuple[str, ...]
    system: CochainSystem
    flap_map: Mapping[Word, Word] = field(compare=False)

    @property
    def tile_cells(self) -> tuple[str, ...]:
        return self.substitution.alphabet


def build_bd(s: Substitution1D) -> BdComplex1D:
    """Tile edges ``a- -> a+`` and a flap ``a+ -> b-`` for every allowed 2-word ``ab``."""
    flaps = tuple(sorted(allowed_words(s, 2)))
    rm = s.rule_map
    vertices = [f"{a}{sign}" for a in s.alphabet for sign in ("-", "+")]
    tile_name = {a: f"t[{a}]" for a in s.alphabet}
    flap_name = {f: f"f[{word_str(f)}]" for f in flaps}
    edges = [(tile_name[a], f"{a}-", f"{a}+") for a in s.alphabet]
    edges += [(flap_name[f], f"{f[0]}+", f"{f[1]}-") for f in flaps]
    vmap = {}
    for a in s.alphabet:
        vmap[f"{a}-"] = f"{rm[a][0]}-"
        vmap[f"{a}+"] = f"{rm[a][-1]}+"
    paths: dict[str, list[str]] = {}
    flap_map: dict[Word, Word] = {}
    for a in s.alphabet:
        w = rm[a]
        path = [tile_name[w[0]]]
        for x, y in zip(w, w[1:]):
            path += [flap_name[(x, y)], tile_name[y]]
        paths[tile_name[a]] = path
    for f in flaps:
        image = (rm[f[0]][-1], rm[f[1]][0])
        flap_map[f] = image
        paths[flap_name[f]] = [flap_name[image]]
    system = graph_system(vertices, edges, vmap, paths)
    return BdComplex1D(s, flaps, tuple(vertices), system, flap_map)


@dataclass(frozen=True)
class BdDiagnostics:
    s0er: tuple[Word, ...]
    s0er_with_transients: tuple[Word, ...]
    k: int
    ell: int
    tile_limit: GroupDescription
    predicted_rank: int
    actual_rank: int

    @property
    def consistent(self) -> bool:
        return self.predicted_rank == self.actual_rank

    def sequence_report(self) -> str:
        return (
            f"0 -> Z^{self.k - 1} -> {self.tile_limit} -> H^1 -> Z^{self.ell} -> 0; "
            f"rank check {self.tile_limit.q_rank} - {self.k - 1} + {self.ell} = {self.predicted_rank} "
            f"vs {self.actual_rank}: {'ok' if self.consistent else 'MISMATCH'}"
        )

    def to_record(self) -> dict:
        return {
            "S0ER": [word_str(f) for f in self.s0er],
            "S0ER_with_transients": [word_str(f) for f in self.s0er_with_transients],
            "k": self.k,
            "ell": self.ell,
            "tile_dlim": str(self.tile_limit),
            "predicted_rank": self.predicted_rank,
            "actual_rank": self.actual_rank,
            "sequence_report": self.sequence_report(),
        }


def _components(vertices: Sequence[str], edges: Sequence[tuple[str, str]]) -> int:
    parent = {v: v for v in vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        parent[find(u)] = find(v)
    return len({find(v) for v in vertices})


def bd_diagnostics(c: BdComplex1D, h1: GroupDescription | None = None) -> BdDiagnostics:
    """Eventual range of the flap map and the rank bookkeeping of the exact sequence."""
    fm = c.flap_map
    current = set(c.flaps)
    transient = {fm[f] for f in c.flaps}
    for _ in range(len(c.flaps)):
        current = {fm[f] for f in current}
    s0er = tuple(sorted(current))
    ends = sorted({f"{f[0]}+" for f in s0er} | {f"{f[1]}-" for f in s0er})
    k = _components(ends, [(f"{f[0]}+", f"{f[1]}-") for f in s0er])
    ell = len(s0er) - len(ends) + k
    tile_limit = describe(c.substitution.matrix().T)
    if h1 is None:
        h1 = complex_cohomology(c.system)[1].cech
    predicted = tile_limit.q_rank - (k - 1) + ell
    return BdDiagnostics(s0er, tuple(sorted(transient)), k, ell, tile_limit, predicted, h1.q_rank)


# ---------------------------------------------------------------------------
# Anderson-Putnam complex


@dataclass(frozen=True)
class ApComplex1D:
    substitution: Substitution1D
    collared: bool
    vertex_classes: tuple[tuple[str, ...], ...]
    system: CochainSystem
    collaring: CollaredAlphabet | None = field(default=None, compare=False)

    @property
    def diagnostic_only(self) -> bool:
        return not self.collared


def ap_complex(t: Substitution1D, words2: frozenset[Word] | None = None) -> tuple[tuple[tuple[str, ...], ...], CochainSystem]:
    """Edge per letter, endpoints glued along allowed 2-words; returns vertex classes and system."""
    if words2 is None:
        words2 = allowed_words(t, 2)
    slots = [(a, end) for a in t.alphabet for end in ("start", "end")]
    parent = {x: x for x in slots}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in sorted(words2):
        ra, rb = find((a, "end")), find((b, "start"))
        if ra != rb:
            parent[max(ra, rb, key=slots.index)] = min(ra, rb, key=slots.index)
    classes: dict = {}
    for x in slots:
        classes.setdefault(find(x), []).append(x)
    ordered = sorted(classes.values(), key=lambda c: slots.index(c[0]))
    vname = {}
    for i, cls in enumerate(ordered):
        for x in cls:
            vname[x] = f"v{i}"
    rm = t.rule_map
    vmap: dict[str, str] = {}
    for a in t.alphabet:
        for end, pick in (("start", 0), ("end", -1)):
            src = vname[(a, end)]
            dst = vname[(rm[a][pick], end)]
            if vmap.setdefault(src, dst) != dst:
                raise AssertionError(f"vertex map is not well defined at {src}")
    edges = [(a, vname[(a, "start")], vname[(a, "end")]) for a in t.alphabet]
    paths = {a: list(rm[a]) for a in t.alphabet}
    vertices = [f"v{i}" for i in range(len(ordered))]
    system = graph_system(vertices, edges, vmap, paths)
    labels = tuple(tuple(f"{a}.{end}" for a, end in cls) for cls in ordered)
    return labels, system


def build_ap(s: Substitution1D, collared: bool = True) -> ApComplex1D:
    if collared:
        c = collar(s)
        t = c.substitution
        classes, system = ap_complex(t)
        return ApComplex1D(t, True, classes, system, c)
    classes, system = ap_complex(s)
    system = CochainSystem(system.dims, system.coboundaries, system.endo, system.labels, (DIAGNOSTIC_ONLY,))
    return ApComplex1D(s, False, classes, system)


# ---------------------------------------------------------------------------
# both pipelines


@dataclass(frozen=True)
class Cech1D:
    substitution: Substitution1D
    bd: CohomologyResult
    ap: CohomologyResult
    agree: bool
    diagnostics: BdDiagnostics
    warnings: tuple[str, ...] = ()

    @property
    def groups(self) -> tuple[GroupDescription, ...]:
        return tuple(d.cech for d in self.bd.degrees)


def results_agree(x: CohomologyResult, y: CohomologyResult) -> bool:
    """Same dlim invariants in every degree and the same rational action of the substitution."""
    if len(x.degrees) != len(y.degrees):
        return False
    for dx, dy in zip(x.degrees, y.degrees):
        if not dlim_equal_invariants(dx.cech, dy.cech):
            return False
        if charpoly(dx.presentation.restricted_map) != charpoly(dy.presentation.restricted_map):
            return False
    return True


def cech_1d(s: Substitution1D, check: bool = True) -> Cech1D:
    """Run the BD and collared AP pipelines; raise if they disagree."""
    bd = build_bd(s)
    ap = build_ap(s, collared=True)
    rb = complex_cohomology(bd.system)
    ra = complex_cohomology(ap.system)
    agree = results_agree(rb, ra)
    diag = bd_diagnostics(bd, rb[1].cech)
    if check and not agree:
        raise PipelineDisagreement(
            f"BD gives {rb.cech_strings()} but collared AP gives {ra.cech_strings()} for {s}"
        )
    if check and not diag.consistent:
        raise AssertionError(f"exact sequence rank bookkeeping fails: {diag.sequence_report()}")
    return Cech1D(s, rb, ra, agree, diag, tuple(preflight(s)))
