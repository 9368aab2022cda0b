"""
Irredundancy, strong irredundancy and pivots
============================================

Pivots in every subfamily force realizability, and realizability forces
strong irredundancy.  The five-coordinate example shows the last step does
not reverse.
"""

from boolimg import has_pivot_hereditarily, is_irredundant, is_realizable, is_strongly_irredundant
from boolimg.catalog import gen_abc, gen_chain3, gen_example5
from boolimg.family import CubeSpace, SetFamily

fixtures = {"chain3": gen_chain3()[1], "abc": gen_abc()[1], "example5": gen_example5()[1]}

# %%
print(f"{'family':10} pivot  realizable  strong  irredundant")
for name, fam in fixtures.items():
    row = (
        has_pivot_hereditarily(fam).holds,
        is_realizable(fam).realizable,
        is_strongly_irredundant(fam).strongly_irredundant,
        is_irredundant(fam).irredundant,
    )
    print(f"{name:10}", "  ".join(f"{str(v):5}" for v in row))

# %%
# A whole-space member generates the trivial algebra, so no two disjoint
# subfamilies share a nontrivial set; yet that member is redundant.
one = SetFamily.coordinates(CubeSpace.from_vectors(["1"]))
print("single full set: strong", is_strongly_irredundant(one).strongly_irredundant,
      "irredundant", is_irredundant(one).irredundant)
