# %% [markdown]
# A word over k letters is rich if every letter appears in it. Cutting off the
# shortest rich prefix repeatedly gives the rich factorization; the number of
# cuts is the richness.

# %%
from simcon import parse_word, rich_factorization, richness

for text in ["abcabcab", "aaabbbccc", "cabbac", "aabb"]:
    x = parse_word(text, 3)
    fac = rich_factorization(x, 3)
    print(f"{text:10s} richness={richness(x, 3)}  {fac.render()}")

# %%
# two words of richness at least n are always ~n-equivalent
from simcon import equivalent

x, y = parse_word("abcabc", 3), parse_word("cbaacbb", 3)
print(richness(x, 3), richness(y, 3), equivalent(x, y, 2))
