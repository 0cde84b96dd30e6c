# %% [markdown]
# Two words are ~n-equivalent when they share the same scattered subwords of
# length at most n. Here we look at a few pairs and find what separates them.

# %%
from simcon import distinguishing_subword, equivalent, format_word, parse_word, subwords_up_to

x, y = parse_word("abab", 2), parse_word("baab", 2)
for n in range(4):
    print(f"n={n}: equivalent={equivalent(x, y, n)}")

# %%
# the shortest subword that is in one word but not the other
w = distinguishing_subword(x, y, 3)
print("witness at n=3:", format_word(w))

# %%
print(sorted(format_word(u) for u in subwords_up_to(parse_word("abc", 3), 2).members))

# %%
# equivalence is a congruence: context does not break it
u, v = parse_word("ab", 2), parse_word("ba", 2)
a, b = parse_word("aabb", 2), parse_word("abab", 2)
print(equivalent(a, b, 1), equivalent(u + a + v, u + b + v, 1))
