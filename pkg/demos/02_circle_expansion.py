"""Laurent expansions on circles about s = 1/2 and their parity split."""
import math

from zgb import fgb_series, q_coeffs_closed_form, q_series
from zgb.laurent import circle_params
from zgb.zeta_gb import q_of

spacer = "_" * 60

# Q = 1/(s(1-s)) has only even powers of s' = s - 1/2. Outside |s'| = 1/2 they are
# -4^(1-m) s'^(-2m); inside, 4^(m+1) s'^(2m).
outer = q_series(1.0)
inner = q_series(0.25)
print(" k   outer c_k            closed form   |  inner c_k")
for k in range(-6, 7):
    print(f"{k:3d}  {outer[k].real:+.12f}  {q_coeffs_closed_form('outer', k):+8.4f}   |  {complex(inner[k]).real:+.6f}")

print(spacer)

# The same machinery applied to F_GB on the circle through the first zero.
rho = 14.134725141734694
p = circle_params(rho)
series = fgb_series(rho, p)
print("window", series.window, " K =", series.K, " digits =", series.dps)
even, odd = series.even(), series.odd()
sp = complex(0, rho)
print("|F^AS(i rho)|     =", abs(complex(odd(sp))))
print("|F^S(i rho) - Q|  =", abs(complex(even(sp)) - q_of(0.5 + sp)))

print(spacer)

# Away from a zero neither part vanishes.
rho = 10.0
series = fgb_series(rho, circle_params(rho))
sp = complex(0, rho)
print("rho = 10: |F^AS| =", abs(complex(series.odd()(sp))),
      " |F^S - Q| =", abs(complex(series.even()(sp)) - q_of(0.5 + sp)))
print("largest |Im c_k| =", max(abs(c.imag) for c in series.complex_coeffs().values()))
