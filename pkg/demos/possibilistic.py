"""Support-level classification of a few standard models."""

from contextuality import catalog, classify, contextual_fraction, support_of
from contextuality.possibilistic import unexplained

for name, model in [("Bell table", catalog.bell_table()),
                    ("Hardy", catalog.hardy_model()),
                    ("PR box", catalog.pr_box())]:
    verdict = classify(model)
    print(f"{name:<11} cf = {str(contextual_fraction(model)):<5} {verdict.value}")
    for c, s in unexplained(support_of(model)):
        print(f"    {list(c)} = {list(s)} has no global extension")
