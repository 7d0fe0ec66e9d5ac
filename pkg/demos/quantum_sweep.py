"""Contextual fraction of Bell-state statistics as Bob's angles open up.

Rounding each entry independently can break no-signalling; rationalize
refuses such tables, so we take the finest denominator that survives.
"""

import math

from contextuality import contextual_fraction
from contextuality.model import SignallingError
from contextuality.quantum import PlanarMeasurement, bell_state, born_model, rationalize

for k in range(0, 13):
    theta = k * math.pi / 12
    settings = [[PlanarMeasurement(0, "a", 0.0), PlanarMeasurement(0, "a'", math.pi / 2)],
                [PlanarMeasurement(1, "b", -theta), PlanarMeasurement(1, "b'", theta)]]
    approx = born_model(bell_state(), settings)
    for D in (4096, 1024, 256, 64, 16, 8):
        try:
            model = rationalize(approx, D)
        except SignallingError:
            continue
        cf = contextual_fraction(model)
        print(f"theta = {k:>2}pi/12   D = {D:<5} cf = {str(cf):>12}  ~ {float(cf):.4f}")
        break
    else:
        print(f"theta = {k:>2}pi/12   no denominator in the list keeps no-signalling")

print(f"\nTsirelson point (theta = pi/4): sqrt(2) - 1 = {math.sqrt(2) - 1:.4f}")
