# %% [markdown]
# # The expected trace norm of a Gaussian matrix
#
# The integral f(r) of the singular-value density has a hypergeometric
# closed form.  It is computed both ways here and compared with its
# concave lower bound, which is tight at r = 0 and r = 1.

# %%
from pgmbounds import rmt
from pgmbounds.experiments import ExperimentConfig, run_fig2

# %%
table = run_fig2(ExperimentConfig("fig2", grid=tuple(k / 10 for k in range(11))))
print(" r     quadrature          series              gap")
for r, quad, series, bound, err in table.rows:
    print(f"{r:.1f}  {quad:.15f}  {series:.15f}  {err:.2e}")

# %%
rep = rmt.g_concavity_check()
print("largest second difference", rep.max_second_difference)
print("expected PGM bound at r = 1", rmt.expected_pgm_bound(1.0))
print("break-even ratio", rmt.break_even_ratio())
