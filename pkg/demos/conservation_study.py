"""How well do the two integrators keep the invariants of the truncated flow?

Run with ``python3 demos/conservation_study.py``.  A Wiener sample at N = 8
is evolved to T = 1 at a ladder of step sizes with both integrators; the
table shows relative drifts of the L2 norm and of the Hamiltonian.  IFRK4
drifts shrink by a factor of roughly 20 to 30 per halving; GL4 keeps L2
to round-off.
"""

from gkdv.flow import FlowConfig, evolve
from gkdv.invariance import conservation_report
from gkdv.sampler import WienerSpec, sample_wiener

f = sample_wiener(WienerSpec(8, 2))
print(f"{'integrator':>10} {'dt':>8} {'L2 drift':>10} {'H drift':>10}")
for integrator in ("IFRK4", "GL4"):
    for dt in (2e-3, 1e-3, 5e-4):
        rep = conservation_report(evolve(f, FlowConfig(N=8, T=1.0, dt=dt, integrator=integrator)))
        print(f"{integrator:>10} {dt:>8.0e} {rep.l2_drift:>10.2e} {rep.H_drift:>10.2e}")
