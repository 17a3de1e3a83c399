# %% [markdown]
# Height one: a single automorphism
#
# Over Q_p the series [p](x) = p x + x^p gives sigma_alpha with
# i_n = p^(n+r) - 1 when r = v(alpha - 1) (odd p, or r >= 2).  Differences
# grow by exactly p and the step recovers e.  A characteristic-p style
# sequence, such as the ramified example's 2, 26, 242, grows too fast.

# %%
from wildram import Kind, i_sequence, reduced_automorphism
from wildram.nottingham import char_classify_rank1, height_profile, ram_index_rank1, sen_check

for p, r in [(3, 1), (3, 2), (2, 2)]:
    s = i_sequence(reduced_automorphism(Kind.QP, p, f"1+p^{r}", 2 * p ** (r + 3)), 3)
    print(f"p={p} r={r}: {s.values}  {char_classify_rank1(s).label}  e={ram_index_rank1(s).e}"
          f"  Sen ok={sen_check(s).passed}")

# %%
s = i_sequence(reduced_automorphism(Kind.RAMIFIED, 3, "1+pi", 250), 2)
c = char_classify_rank1(s)
print(s.values, c.label, c.evidence[0])
print("log_p ratios:", [round(x, 3) for x in height_profile(s).log_ratios])

# %% [markdown]
# p = 2, r = 1 is special: every odd alpha has alpha^2 = 1 mod 8, so the
# second break skips ahead.

# %%
s = i_sequence(reduced_automorphism(Kind.QP, 2, "3", 64), 4)
print(s.values, char_classify_rank1(s, window_start=2).label, ram_index_rank1(s, window_start=2).e)
