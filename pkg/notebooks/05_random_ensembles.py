# %% [markdown]
# # Haar-random ensembles
#
# n random states in d dimensions can be identified with probability
# bounded away from zero as long as n / d stays bounded.  At n = d the
# limit is 64 / (9 pi^2).

# %%
from pgmbounds import rmt
from pgmbounds.experiments import ExperimentConfig, run_fig1, run_mp_hist

# %%
table = run_fig1(ExperimentConfig("fig1", seed=1, d=30, grid=(0.25, 0.5, 1.0, 2.0, 4.0), runs=5))
print("  r    n  bound   mean")
for r, n, d, bound, mean, std, runs in table.rows:
    print(f"{r:4.2f} {n:4d}  {bound:.4f}  {mean:.4f}")
print("limit at r = 1:", rmt.TRACE_NORM_RATIO_SQ)

# %% [markdown]
# The eigenvalues of a Wishart matrix follow the Marcenko-Pastur law.

# %%
hist = run_mp_hist(ExperimentConfig("mp-hist", seed=1, d=256))
print(hist.summary)
