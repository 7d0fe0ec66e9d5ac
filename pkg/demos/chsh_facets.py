"""Facets of the (2,2,2) local polytope by Fourier-Motzkin elimination."""

import logging
import sys
import time

from contextuality import catalog, nc_polytope_facets, nontrivial_facets

if "-v" in sys.argv:
    logging.basicConfig(level=logging.DEBUG, format="%(message)s")
    logging.getLogger("contextuality.lp").setLevel(logging.INFO)

s = catalog.chsh_scenario()
t0 = time.perf_counter()
system = nc_polytope_facets(s)
print(f"{len(system.inequalities)} facets, {len(system.equalities)} equalities "
      f"({time.perf_counter() - t0:.1f}s)")

bell, pr = catalog.bell_table(), catalog.pr_box()
for f in nontrivial_facets(s, system):
    gap_bell = f.value(bell) - f.bound
    mark = "  <- violated by the Bell table" if gap_bell > 0 else ""
    print(f"{f}{mark}")
