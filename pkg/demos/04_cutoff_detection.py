"""
Finding a cut-off in a width curve
==================================

A width curve with slope 0.4 up to tau = 32 and 0.6 beyond, with 1% noise.
The two-segment fit tries every admissible breakpoint and keeps the best.
"""

import numpy as np

from bohmscale import WidthCurve, fit_piecewise, fit_scaling

taus = 2 ** np.arange(9)
rng = np.random.default_rng(7)
widths = np.where(taus <= 32, taus**0.4, 32**0.4 * (taus / 32) ** 0.6)
widths *= np.exp(rng.normal(0, 0.01, len(taus)))
curve = WidthCurve(tuple(zip(taus.tolist(), widths.tolist())))

single = fit_scaling(curve)
pw = fit_piecewise(curve)
print(f"single slope {single.slope:.3f}, SSE {single.sse:.2e}")
print(f"breakpoint tau {pw.breakpoint_tau}: slopes {pw.slope_pre:.3f} -> {pw.slope_post:.3f}, SSE {pw.sse_total:.2e}")
print("two segments preferred:", pw.preferred)

print("\ncandidate  SSE")
for tau, sse in pw.candidates:
    print(f"{tau:9d}  {sse:.3e}")

# On a curve with one slope the extra segment buys nothing
flat = WidthCurve(tuple(zip(taus.tolist(), (2 * taus**0.45).tolist())))
print("\nsingle-slope curve, two segments preferred:", fit_piecewise(flat).preferred)
