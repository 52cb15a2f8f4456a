"""
Fat tails against white noise of the same variance
==================================================

Student-t(3) returns put more mass near the centre and in the far tails
than a Gaussian with equal variance. The walls of the t potential sit
where its density drops below the Gaussian one.
"""

import numpy as np

from bohmscale import SynthSpec, compare_with_white_noise, generate

returns = generate(SynthSpec("student_t", 10**6, sigma=1.0, df=3.0, seed=0))
cmp = compare_with_white_noise(returns, seed=1)
s = cmp.summary

print("sample sigma:", round(s["sigma"], 4))
print("t walls:     ", round(s["market_walls"]["q_minus"], 3), round(s["market_walls"]["q_plus"], 3))
print("white walls: ", round(s["white_walls"]["q_minus"], 3), round(s["white_walls"]["q_plus"], 3))

print("\ndensity at the t mode")
for k, v in s["density_at_market_mode"].items():
    print(f"  {k:10s}{v:.4f}")

print("\nmass beyond the t walls")
for k, v in s["tail_mass_beyond_market_walls"].items():
    print(f"  {k:10s}{v:.4f}")

# Side by side on the shared grid, nearest grid points to a few q values
m, w = cmp.market, cmp.white
q = m.density.q
idx = np.unique([np.argmin(np.abs(q - x)) for x in np.linspace(-4, 4, 17) * s["sigma"]])
print("\n      q     p_t   p_white      U_t  U_white")
for i in idx:
    print(f"{q[i]:7.2f} {m.density.p[i]:7.4f} {w.density.p[i]:9.4f} {m.potential.U[i]:8.3f} {w.potential.U[i]:8.3f}")
