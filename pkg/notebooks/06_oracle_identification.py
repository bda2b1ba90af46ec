# %% [markdown]
# # Identifying a random phase oracle
#
# A single query to an oracle on log2 D bits prepares a state with
# amplitudes +-1/sqrt(D).  With N = D candidate oracles the PGM still
# succeeds with probability close to the Haar value.

# %%
from pgmbounds import rmt
from pgmbounds.experiments import ExperimentConfig, run_oracle_id

# %%
table = run_oracle_id(ExperimentConfig("oracle-id", seed=2, d=64, grid=(0.25, 1.0, 1.5), runs=5))
print("   N   D  bound   mean    min")
for N, D, r, bound, mean, low, tail, clipped in table.rows:
    print(f"{N:4d} {D:3d}  {bound:.4f}  {mean:.4f}  {low:.4f}")

# %% [markdown]
# Concentration on the Boolean cube makes large deviations unlikely.

# %%
print("tail at N = D = 256, eps = 0.1:", rmt.cube_tail(256, 256, 0.1))
