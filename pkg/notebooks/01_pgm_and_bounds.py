# %% [markdown]
# # The pretty good measurement on small ensembles
#
# The PGM success probability of a pure ensemble only depends on the Gram
# matrix of the probability-weighted states: it is the sum of the squared
# diagonal entries of its square root.

# %%
import numpy as np

from pgmbounds import bound_report, helstrom, make_pure_ensemble, pgm_measurement, pgm_success, validate_povm

# %% [markdown]
# Two states with overlap 0.6.  For two equiprobable pure states the PGM is
# optimal, so it matches the Helstrom value.

# %%
e = make_pure_ensemble([[1, 0], [0.6, 0.8]])
print("PGM      ", pgm_success(e))
print("Helstrom ", helstrom(e))

# %% [markdown]
# The measurement operators resolve the identity on the span of the states.

# %%
m = pgm_measurement(e)
print(validate_povm(m, 2))

# %% [markdown]
# Random ensembles: the inner-product and eigenvalue bounds sit below the
# exact value, and the guessing baseline sits below both.

# %%
rng = np.random.default_rng(0)
for n, d in [(3, 5), (8, 8), (20, 6)]:
    v = rng.standard_normal((n, d)) + 1j * rng.standard_normal((n, d))
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    rep = bound_report(make_pure_ensemble(v))
    print(f"n={n:2d} d={d:2d}  pgm={rep.pgm_exact:.4f}  inner={rep.inner_product_bound:.4f}  "
          f"eig={rep.eigenvalue_bound:.4f}  guess={rep.guessing_baseline:.4f}")
