# %% [markdown]
# Unramified base: F = Q_3(zeta), zeta^2 = -1
#
# With [p](x) = 3x + x^9 the reductions live in F_9((x)).  alpha = 1+p and
# beta = 1+zeta p give identical break sequences, and the index formula
# returns e = 8.  Replacing beta by beta' = alpha beta^3 keeps both break
# sequences, so the naive answer is still 8, but the joint filtration
# changes and the true index is 24.

# %%
from wildram import Kind, breaks_rank2, i_sequence, rank_two_profile, reduced_automorphism
from wildram.ramification import ram_index_rank2

N = 730
sa = reduced_automorphism(Kind.UNRAMIFIED, 3, "1+p", N)
sb = reduced_automorphism(Kind.UNRAMIFIED, 3, "1+zeta*p", N)
sb2 = reduced_automorphism(Kind.UNRAMIFIED, 3, "(1+p)*(1+zeta*p)^3", N)
for name, g in [("alpha", sa), ("beta", sb), ("beta'", sb2)]:
    print(f"i_n({name}) =", i_sequence(g, 2).values)

# %%
for label, tau in [("G = <s_alpha, s_beta>", sb), ("G' = <s_alpha, s_beta'>", sb2)]:
    prof = rank_two_profile(sa, tau)
    table = breaks_rank2(sa, tau, 80)
    r = ram_index_rank2(prof, table)
    print(label)
    print("   joint breaks:", table.entries)
    print("   formula e =", r.e, "| flag:", r.hypothesis_flag, "| e from filtration:",
          [str(x) for x in r.e_filtration])

# %% [markdown]
# For G' the first break has index 3 where the generator shape needs 9:
# some combination of the generators is deeper than either generator, so
# the formula's hypothesis fails and the flag is raised.
