"""
Right-angled Artin groups
=========================

Words are put in normal form, cyclically reduced, split into pure factors,
and their centralizers written down.  An element is rank one exactly when
its centralizer is cyclic.
"""

from cubelab import raag

P3 = raag.DefiningGraph.path(3)   # a - b - c
P4 = raag.DefiningGraph.path(4)   # a - b - c - d

# %%
w = "b a b^-1 c a^-1"
print("normal form:", raag.format_word(raag.normal_form(w, P3), P3))
core, conj = raag.cyclic_reduction(w, P3)
print("cyclic core:", raag.format_word(core, P3), " conjugator:", raag.format_word(conj, P3))
print("support:", raag.support(w, P3))

# %%
# b commutes with a and c, so ac and b split as two pure factors
for w, dg in [("abc", P3), ("ad", P4), ("abcd", P4)]:
    parts = raag.pure_factor_decomposition(raag.normal_form(w, dg), dg)
    print(w, "->", [raag.format_word(p, dg) for p in parts])

# %%
for w, dg in [("b", P3), ("a", P3), ("ac", P3), ("abc", P3), ("ad", P4), ("abcd", P4)]:
    d = raag.centralizer(w, dg)
    print(f"{w:5s} {d.structure_tag:14s} generators {[raag.format_word(g, dg) for g in d.generators()]}"
          f"  rank one: {raag.algebraic_rank_one(w, dg)}")

# %%
# the centralizer of b(ac) in A(P3) = Z x F2 is Z^2; compare with a brute
# force search of the ball of radius 4
d = raag.centralizer("b a c", P3)
found = raag.commutant_in_ball("b a c", P3, 4)
print(d.structure_tag, d.rank_abelianization, "commuting elements in the 4-ball:", len(found))
print("generated subgroup matches:", set(found) == set(raag.subgroup_in_ball(d, 4)))
