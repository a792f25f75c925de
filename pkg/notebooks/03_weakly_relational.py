# %% [markdown]
# # Bounded differences and octagons
#
# These shapes trade precision for speed.  A bounded-difference shape keeps
# constraints `x - y <= c`.  An octagon also keeps `x + y <= c`.  Both are
# stored as matrices and normalized by a shortest-path style closure.

# %%
from numdom import ANY, POLYNOMIAL, BdShape, OctShape, Polyhedron, Variable, to_bds, to_oct

A, B, C = Variable(0), Variable(1), Variable(2)

# %% [markdown]
# Closure derives implied bounds: A - B <= 1 and B - C <= 2 give A - C <= 3.

# %%
s = BdShape.from_constraints([A - B <= 1, B - C <= 2], dim=3)
print(list(map(str, s.minimized_constraints())))
print("A - C <= 3 entailed:", BdShape.from_constraints([A - C <= 3], dim=3).contains(s))

# %% [markdown]
# The integer family stores integer bounds only, rounding each one up.
# The result is a sound over-approximation of the rational shape.

# %%
cs = [2 * A - 2 * B <= 1, B <= 0]
rat = OctShape.from_constraints(cs, dim=2)
intg = OctShape.from_constraints(cs, dim=2, family="integer")
print("rational A - B <=", rat.bound(A - B), "  integer A - B <=", intg.bound(A - B))

# %% [markdown]
# Approximating a polyhedron: cheap syntactic conversion versus the precise
# one that solves linear programs.

# %%
tri = Polyhedron.from_constraints([A >= 0, B >= 0, A + 2 * B <= 4])
print("polynomial:", list(map(str, to_oct(tri, POLYNOMIAL).minimized_constraints())))
print("any:       ", list(map(str, to_oct(tri, ANY).minimized_constraints())))
print("bds:       ", list(map(str, to_bds(tri, ANY).minimized_constraints())))

# %% [markdown]
# Widening drops bounds that keep growing, so loops converge.

# %%
cur = BdShape.from_constraints([A >= 0, A <= 0], dim=1)
for k in range(1, 10):
    nxt = cur.copy().upper_bound_assign(BdShape.from_constraints([A >= 0, A <= k], dim=1))
    w = cur.copy().widening_bds_assign(nxt)
    if w == cur:
        print("stable after", k, "steps:", list(map(str, cur.minimized_constraints())))
        break
    cur = w
