# %% [markdown]
# # Equal overlaps
#
# When every pair of states has the same real overlap p, all diagonal
# entries of the Gram square root agree and the eigenvalue bound is exact.

# %%
from pgmbounds import constant_overlap_exact, constant_overlap_gram, eigenvalue_bound, inner_product_bound, pgm_success, realize_gram

# %%
print(" n    p    exact    eig-bound  inner-bound")
for n in (2, 8, 64):
    for p in (0.1, 0.5, 0.9):
        G = constant_overlap_gram(n, p)
        e = realize_gram(G)
        print(f"{n:3d}  {p:.1f}  {pgm_success(e):.6f}  {eigenvalue_bound(G):.6f}  {inner_product_bound(e):.6f}")

# %% [markdown]
# For small p the exact value stays close to 1 - p even as n grows, while
# the inner-product bound decays like 1/n.

# %%
for n in (10, 100, 1000):
    print(n, constant_overlap_exact(n, 0.05))
