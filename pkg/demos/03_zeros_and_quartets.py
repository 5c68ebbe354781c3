"""Zeros on the critical line, and what the residuals look like off it."""
from zgb import hardy_z, quartet_grid_scan, scan_critical_line

spacer = "_" * 60

print("Hardy Z at a few heights")
for t in (0.0, 10.0, 14.0, 14.5, 21.0, 21.5):
    print(f"  Z({t:5.1f}) = {hardy_z(t):+.10f}")

print(spacer)

# Sign changes bracket the zeros; the null-condition residuals are then computed
# from a fresh circle expansion at each ordinate.
for c in scan_critical_line(5, 30, 0.05):
    print(f"rho = {c.rho:.10f}  odd residual {c.odd_residual:.1e}  even residual {c.even_residual:.1e}")

print(spacer)

# A residual map over admissible azimuths at the first zero's radius. Only the
# canonical end alpha = pi/2 is small; this is an observation, not a proof.
for r in quartet_grid_scan(14.134725, 6):
    print(f"alpha = {r.probe.alpha:.5f}  eps = {r.probe.epsilon:.4f}  |Z_GB| = {r.r_total:.3e}")
