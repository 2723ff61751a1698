"""Print the cohomology and analysis results for every built-in example."""

from __future__ import annotations

import time

from tilecoh import catalog
from tilecoh.analysis import deformations, exact_regularity, frequencies, regularity_empirical_check
from tilecoh.cohomology import complex_cohomology
from tilecoh.subst1d import cech_1d
from tilecoh.subst2d import build_ap2d

PHI = (1 + 5**0.5) / 2


def main() -> None:
    for name in catalog.SUBST1D:
        start = time.perf_counter()
        res = cech_1d(catalog.subst1d(name))
        d = res.diagnostics
        print(f"{name:16s} {res.bd.cech_strings()}  k={d.k} ell={d.ell}  ({time.perf_counter() - start:.2f} s)")
    for name in catalog.SUBST2D:
        start = time.perf_counter()
        c = build_ap2d(catalog.subst2d(name))
        res = complex_cohomology(c.system)
        notes = [n for deg in res.degrees for n in deg.cech.scaling_note]
        print(f"{name:16s} {res.cech_strings()}  cells {list(c.system.dims)}  {notes}  ({time.perf_counter() - start:.2f} s)")
    for name in catalog.GRAPHS:
        print(f"{name:16s} {complex_cohomology(catalog.graph(name)).cech_strings()}")

    fib = catalog.subst1d("fibonacci")
    r = frequencies(fib, [PHI, 1])
    print(f"fibonacci traces a={r.trace('a')!r} b={r.trace('b')!r}")
    ap = complex_cohomology(build_ap2d(catalog.subst2d("three-square")).system)
    for name, dim, res in (
        ("fibonacci", 1, cech_1d(fib).ap),
        ("tribonacci", 1, cech_1d(catalog.subst1d("tribonacci")).ap),
        ("three-square", 2, ap),
    ):
        dr = deformations(res, dim)
        print(f"{name} deformations: {[round(z.real, 12) for z in dr.eigenvalues]} an_dimension={dr.an_dimension} pisot={dr.pisot}")
    for name, patches in (("thue-morse", ["a", "b"]), ("fibonacci", ["ab", "b"])):
        s = catalog.subst1d(name)
        rep = exact_regularity(s, patches)
        v = regularity_empirical_check(s, rep)
        print(f"{name} regularity {rep.coefficient_map()} empirical {'pass' if v.passed else 'FAIL'} on {v.regions} regions")


if __name__ == "__main__":
    main()
