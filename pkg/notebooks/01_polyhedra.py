# %% [markdown]
# # Convex polyhedra in exact arithmetic
#
# A polyhedron can be given by constraints or by generators (points, rays,
# lines).  numdom keeps both views and converts lazily between them.

# %%
from numdom import Polyhedron, Variable, point, ray

A, B = Variable(0), Variable(1)

# %% [markdown]
# An unbounded wedge: three half-planes whose intersection opens toward
# the upper right.

# %%
wedge = Polyhedron.from_constraints([A + B >= 5, A - 2 * B <= 2, B - 2 * A <= 2])
for g in wedge.minimized_generators():
    print(g)

# %% [markdown]
# Going back from the generators recovers the same three constraints.

# %%
again = Polyhedron.from_generators([point([4, 1]), point([1, 4]), ray([2, 1]), ray([1, 2])])
print(sorted(str(c) for c in again.minimized_constraints()))
print("same set:", again == wedge)

# %% [markdown]
# Optimization is exact.  Unbounded directions report no finite optimum.

# %%
print("min A + B =", wedge.minimize(A + B)[0])
print("max A bounded?", wedge.bounds_from_above(A))

# %% [markdown]
# Lattice operations: the convex hull of two boxes and their meet.

# %%
box1 = Polyhedron.from_constraints([A >= 0, A <= 1, B >= 0, B <= 1])
box2 = Polyhedron.from_constraints([A >= 2, A <= 3, B >= 2, B <= 3])
hull = box1.copy().upper_bound_assign(box2)
print("hull has", len(list(hull.minimized_constraints())), "constraints")
print("contains both:", hull.contains(box1) and hull.contains(box2))
print("boxes disjoint:", box1.is_disjoint_from(box2))

# %% [markdown]
# Widening on the ascending chain 0 <= A <= k converges after two steps.

# %%
cur = Polyhedron.from_constraints([A >= 0, A <= 0])
for k in range(1, 6):
    nxt = cur.copy().upper_bound_assign(Polyhedron.from_constraints([A >= 0, A <= k]))
    widened = cur.copy().widening_h79_assign(nxt)
    if widened == cur:
        print("stable after", k, "steps:", list(map(str, cur.minimized_constraints())))
        break
    cur = widened
