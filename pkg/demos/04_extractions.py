"""
Extracting realizable subfamilies
=================================

Two greedy procedures pick a subfamily that is realizable by construction:
one for families of comparable-or-disjoint sets keeping the same algebra,
one building a sequence where each new set contains no atom of the earlier
ones.  Both take members in input order.
"""

from boolimg import extract_chain_disjoint, extract_pi_sequence, is_realizable
from boolimg.decide import same_algebra
from boolimg.family import CubeSpace, SetFamily
from boolimg.catalog import gen_example5

# %%
# Four points; a set, its complement and two nested pieces.
sp = CubeSpace.from_vectors(["00", "01", "10", "11"])
masks = (0b0011, 0b1100, 0b0001, 0b0010)
fam = SetFamily(sp, ("A", "notA", "A0", "A1"), masks)
ext = extract_chain_disjoint(fam)
print("kept:", [fam.names[i] for i in ext.selection], "rejected:", [fam.names[i] for i in ext.rejected])
print("same algebra:", same_algebra(fam, ext.selection, range(len(fam))))
print("realizable:", is_realizable(fam.subfamily(ext.selection)).realizable)

# %%
# On the five-coordinate example the last set is refused.
_, ex5 = gen_example5()
pi = extract_pi_sequence(ex5)
print("pi sequence:", [ex5.names[i] for i in pi.selection], "refused:", [ex5.names[i] for i in pi.rejected])
