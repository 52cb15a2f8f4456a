"""
Wall width across time scales
=============================

For iid increments the walls widen like tau^0.5. Fractional Gaussian noise
with Hurst index H widens like tau^H, so the width slope separates
anti-persistent (H < 0.5) from persistent (H > 0.5) series.
"""

import numpy as np

from bohmscale import PriceSeries, SynthSpec, compute_width_curve, estimate_hurst, fit_scaling, generate

n = 2**18
for kind, H in [("fgn", 0.3), ("white", 0.5), ("fgn", 0.7)]:
    r = generate(SynthSpec(kind, n, sigma=0.01, hurst=H, seed=42))
    prices = PriceSeries.from_log_prices(np.concatenate([[0.0], np.cumsum(r.values)]))
    curve = compute_width_curve(prices)
    fit = fit_scaling(curve)
    print(f"H = {H}: width slope {fit.slope:.3f}  R^2 {fit.r_squared:.4f}  aggregated-variance H {estimate_hurst(r):.3f}")

# The last curve in detail
print("\n tau     width")
for tau, width in curve.points:
    print(f"{tau:4d}  {width:.5f}")
