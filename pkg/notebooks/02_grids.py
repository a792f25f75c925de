# %% [markdown]
# # Grids: integer lattices described by congruences
#
# A grid is a set of points satisfying linear congruences `e = r (mod m)`.
# Modulus 0 means a plain equality.  The dual view is a set of grid
# generators: points, parameters (lattice steps) and lines.

# %%
from numdom import Grid, Variable, congruence

A, B = Variable(0), Variable(1)

# %% [markdown]
# A is even, and A + 2B is 2 modulo 4.

# %%
g = Grid.from_congruences([congruence(A, 0, 2), congruence(A + 2 * B, 2, 4)])
for gen in g.minimized_grid_generators():
    print(gen)

# %%
for pt in ([2, 0], [0, 1], [4, 1], [1, 0], [2, 1]):
    print(pt, g.contains_point(pt))

# %% [markdown]
# The meet of two one-dimensional grids follows the Chinese remainder theorem.

# %%
x3 = Grid.from_congruences([congruence(A, 1, 3)], dim=1)
x5 = Grid.from_congruences([congruence(A, 2, 5)], dim=1)
both = x3.copy().intersection_assign(x5)
print(list(map(str, both.minimized_congruences())))

# %% [markdown]
# Affine images are exact: shifting A by 2B maps the grid onto another grid.

# %%
h = g.copy().affine_image(A, A + 2 * B)
print(list(map(str, h.minimized_congruences())))

# %% [markdown]
# The join of isolated points is the smallest grid containing them.

# %%
p = Grid.from_constraints([A == 0], dim=1)
q = Grid.from_constraints([A == 6], dim=1)
print(list(map(str, p.copy().upper_bound_assign(q).minimized_congruences())))
