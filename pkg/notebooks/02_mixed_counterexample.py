# %% [markdown]
# # Mixed states need the purity factor
#
# Replacing squared overlaps by fidelities gives a tempting bound for mixed
# ensembles.  Without a purity factor in the numerator it can exceed the
# exact PGM value.

# %%
import numpy as np

from pgmbounds import make_mixed_ensemble, mixed_bound_report

# %%
rho1 = np.diag([0.5, 0.5, 0.0])
rho2 = np.diag([0.5, 0.0, 0.5])
rep = mixed_bound_report(make_mixed_ensemble([rho1, rho2]))
print("PGM            ", rep.pgm_exact)
print("fidelity bound ", rep.fidelity_bound)
print("naive bound    ", rep.naive_bound)
print("naive exceeds  ", rep.naive_exceeds_pgm)
