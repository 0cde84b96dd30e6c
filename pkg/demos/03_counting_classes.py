# %% [markdown]
# C_k(n) is the number of ~n classes over k letters. The engine grows shortlex
# minimal representatives one length at a time and stops at the first length
# that contributes nothing new.

# %%
from simcon import EnumerationConfig, count_classes

for k, n in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3)]:
    r = count_classes(EnumerationConfig(k, n))
    print(f"C_{k}({n}) = {r.total_classes:>6}  per length {r.per_length}")

# %%
# a hashed key gives the same counts with less memory
r = count_classes(EnumerationConfig(2, 6, mode="fingerprint"))
print(r.total_classes, r.termination, f"collision bound {r.collision_bound:.1e}")

# %%
# small cells are also checked against a brute-force subword oracle
from simcon import verify_against_oracle

print(bool(verify_against_oracle(2, 3)))
