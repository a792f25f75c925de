# %% [markdown]
# # Finite disjunctions of shapes
#
# A powerset keeps several disjuncts instead of one convex hull, which
# preserves information such as "A is in [0, 1] or in [5, 6]".

# %%
from numdom import PointsetPowerset, Polyhedron, Powerset, Variable

A = Variable(0)


def interval(lo, hi):
    return Polyhedron.from_constraints([A >= lo, A <= hi])


# %% [markdown]
# Adding a disjunct that is already covered leaves the set unchanged, and a
# new disjunct drops the ones it covers.

# %%
s = Powerset([interval(0, 1), interval(5, 6)])
print(s)
s.add_disjunct(interval(0, 2))
print(s)
print("hull:", list(map(str, s.hull().minimized_constraints())))

# %% [markdown]
# Transfer functions apply to every disjunct.

# %%
p = PointsetPowerset(1, [interval(0, 1), interval(5, 6)])
p.affine_image(A, 2 * A + 1)
print(p)
print("3 inside:", p.contains_point([3]), " 11 inside:", p.contains_point([11]))

# %% [markdown]
# A chain that keeps adding new intervals never stabilizes under plain
# joins.  The certificate widening collapses it once no measure improves.

# %%
cur = Powerset([interval(0, 0)])
for k in range(1, 30):
    nxt = cur.copy().upper_bound_assign(Powerset([interval(2 * k, 2 * k)]))
    w = cur.copy().certificate_widening_assign(nxt)
    if w == cur:
        print("stable after", k, "steps with", len(cur), "disjuncts:", cur)
        break
    cur = w
