# %% [markdown]
# Known and computed values of C_k(n) sit between closed-form lower and upper
# bounds. We put the numbers side by side, working on a log2 scale.

# %%
import math

from simcon.bounds import CountTable, bounds_for, format_reports

table = CountTable.published()
print(format_reports(bounds_for(2, 5, table, "all")))

# %%
for k, n in [(2, 6), (3, 3), (4, 2)]:
    c = table.exact(k, n)
    print(f"log2 C_{k}({n}) = {math.log2(c):.2f}")

# %%
# the analytic inequality behind the upper bound, over a small grid
from simcon.bounds import appendix_inequality_check

print(all(appendix_inequality_check(k, n) for k in range(2, 5) for n in range(2, 8)))
