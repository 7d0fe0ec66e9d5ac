"""The Bell table: logical violation, contextual fraction and its witness."""

from contextuality import catalog, decompose, logical_bell_inequality, noncontextual_fraction, witness_inequality
from contextuality.logic import logical_bell_report

e = catalog.bell_table()
print(e.table())
print()

rep = logical_bell_report(e, catalog.bell_formulas())
for cf, p in zip(catalog.bell_formulas(), rep.probabilities):
    print(f"p({cf.formula}) = {p}")
print(f"sum = {rep.total}, K = {rep.K}, violation = {rep.violation}")
print()

res = noncontextual_fraction(e)
print("NCF =", res.ncf, " CF =", res.cf)
parts = decompose(e, res)
print("\nnon-contextual part")
print(parts.noncontextual.table())
print("\ncontextual part (a PR box)")
print(parts.contextual.table())

w = witness_inequality(e, res)
print("\nwitness:", w.integral())
print("normalised violation by e:", w.normalized_violation(e))

# the logical inequality, for comparison
print("logical inequality:", logical_bell_inequality(e.scenario, catalog.bell_formulas()))
