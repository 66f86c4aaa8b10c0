"""A tour of the three current fields.

Samples each field, pokes at its spatial gradient, and demonstrates the
two structural properties the planner leans on: the jet is divergence
free (it comes from a stream function), and its pattern repeats in a
frame drifting east at the phase speed.

Run:  python demos/tour_of_fields.py
"""

import math
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

import numpy as np

from flowplan import JetField, RiverField, UniformField, jacobian, sample


def main():
    print("== Uniform field ==")
    uniform = UniformField(0.4, -0.1)
    print(f"current anywhere, anytime: {sample(uniform, (123.0, -45.0), 9.9)}")
    print(f"gradient is exactly zero:  {jacobian(uniform, (0.0, 0.0), 0.0)}")

    print("\n== River field (300 m wide, 1.8 m/s peak) ==")
    river = RiverField(width=300.0, peak_speed=1.8)
    for x in (0.0, 75.0, 150.0, 225.0, 300.0):
        vec = sample(river, (x, 30.0), 0.0)
        print(f"x = {x:5.0f} m   cross-current = {vec.v:.3f} m/s")
    print("the profile is steady:", sample(river, (75.0, 0.0), 0.0) ==
          sample(river, (75.0, 0.0), 1e6))

    print("\n== Meandering jet (dimensionless) ==")
    jet = JetField()
    print(f"meander amplitude at t=0:       {float(jet.meander_amplitude(0.0)):.3f}")
    print(f"stream function on the core:    "
          f"{float(jet.stream_function(0.0, 1.2, 0.0)):.3f} (exactly 1 on the core)")
    print(f"current on the core at t=0:     {sample(jet, (0.0, 1.2), 0.0)}")
    print(f"current far above the jet:      {sample(jet, (0.0, 60.0), 0.0)}")

    print("\ndivergence of the jet near the core (should be ~0):")
    rng = np.random.default_rng(1)
    for _ in range(5):
        p = (rng.uniform(0, 21), rng.uniform(-1.5, 1.5))
        jac = jacobian(jet, p, rng.uniform(0, 30))
        print(f"  at ({p[0]:6.2f}, {p[1]:6.2f}):  u_x + v_y = {jac.u_x + jac.v_y:+.2e}")

    period = 2.0 * math.pi / jet.oscillation_frequency
    x, y, t = 4.0, 0.5, 2.0
    now = sample(jet, (x, y), t)
    later = sample(jet, (x + jet.phase_speed * period, y), t + period)
    print(f"\npattern repeats in the drifting frame (period {period:.3f}):")
    print(f"  at t:          ({now.u:+.6f}, {now.v:+.6f})")
    print(f"  shifted, t+T:  ({later.u:+.6f}, {later.v:+.6f})")


if __name__ == "__main__":
    main()
