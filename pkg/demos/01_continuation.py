"""Zeta through the Gram-Backlund continuation, checked three ways."""
import numpy as np

from zgb import auto_params, dirichlet_oracle, evaluate_zeta, reflect_zeta
from zgb.zeta_gb import zeta_pole_removed

spacer = "_" * 60

# Right of the line X = 1 the plain Dirichlet series converges and is our reference.
s = 3 + 4j
v = evaluate_zeta(s)
print("zeta(3+4i)        =", v.value)
print("Dirichlet oracle  =", dirichlet_oracle(s))
print("error estimate    =", v.error, " params:", v.params)

print(spacer)

# The truncation is chosen per point. Height drives N, the tolerance drives mu.
for s in (2, 0.5 + 14j, 0.5 + 25j, -3 + 2j):
    p = auto_params(s, 1e-10)
    print(f"{s!s:>12}  N={p.N:3d}  mu_max={p.mu_max:2d}")

print(spacer)

# Inside the strip, compare with the functional equation.
grid = [complex(x, y) for x in np.linspace(-0.5, 1.5, 5) for y in (3.0, 12.0, 27.0)]
worst = max(abs(evaluate_zeta(z).value - reflect_zeta(z).value) for z in grid)
print("max |direct - reflected| on a strip grid:", worst)

print("zeta(0)  =", evaluate_zeta(0).value, " (reflected:", reflect_zeta(0).value, ")")
print("zeta(-2) =", evaluate_zeta(-2).value)
print("(s-1) zeta(s) at s = 1:", zeta_pole_removed(1).value)
