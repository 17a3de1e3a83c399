# %% [markdown]
# Ramified base: F = Q_3(pi), pi^2 = 3
#
# The Lubin-Tate series [pi](x) = pi x + x^3 has endomorphisms [alpha] for
# every unit alpha.  Reducing mod pi gives wild automorphisms of F_3((x)).
# Two of them, for alpha = 1+pi and beta = 1+pi^2, generate a copy of
# Z_3 x Z_3 whose ramification we read off below.

# %%
from wildram import Kind, breaks_rank2, i_sequence, phi_from_breaks, rank_two_profile, reduced_automorphism
from wildram.ramification import char_classify_rank2, depth_classify, ram_index_rank2

N = 730
sigma = reduced_automorphism(Kind.RAMIFIED, 3, "1+pi", N)
tau = reduced_automorphism(Kind.RAMIFIED, 3, "1+pi^2", N)
print("i_n(sigma):", i_sequence(sigma, 2).values)
print("i_n(tau):  ", i_sequence(tau, 2).values)

# %% [markdown]
# The two sequences interleave, 2 < 8 < 26 < 80 < 242 < 728, so the joint
# filtration jumps by p at every break.

# %%
prof = rank_two_profile(sigma, tau)
print("depth:", depth_classify(prof).pattern)
print("gamma:", prof.gamma1.value, prof.gamma2.value)
print("class:", char_classify_rank2(prof).label)

table = breaks_rank2(sigma, tau, 80)
print("joint lower breaks and indices:", table.entries)
phi = phi_from_breaks(table)
print("upper breaks:", [str(phi(b)) for b in table.breaks])

# %% [markdown]
# Upper breaks go up by 2 each time (2, 4, 6, 8).  The index formula gives
# the same value from gamma alone.

# %%
r = ram_index_rank2(prof, table)
print(f"branch={r.branch} a={r.a} e={r.e} (from filtration: {[str(x) for x in r.e_filtration]})")
