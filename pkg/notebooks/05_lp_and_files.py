# %% [markdown]
# # Exact linear programming and file formats
#
# The LP solver is a rational simplex.  Constraints can be added one at a
# time, and each new solve starts from the previous basis.

# %%
import tempfile
from pathlib import Path

from numdom import (MAXIMIZATION, LpProblem, Variable, domain_to_poly, parse_mps,
                    parse_poly_file, poly_to_domain, write_poly_file)
from numdom import cli

A, B = Variable(0), Variable(1)

# %%
lp = LpProblem(2, [A >= 0, B >= 0, A + B <= 4, A - B <= 1], A + 2 * B, MAXIMIZATION)
print(lp.solve(), lp.optimal_value())
lp.add_constraint(B <= 2)
print(lp.solve(), lp.optimal_value())
lp.add_constraint(A + B >= 7)
print("still satisfiable?", lp.is_satisfiable())

# %% [markdown]
# MPS models turn into the same kind of problem.

# %%
MPS = """NAME tiny
OBJSENSE
    MAX
ROWS
 N  obj
 L  c1
COLUMNS
    x  obj  1  c1  1
    y  obj  1  c1  2
RHS
    rhs  c1  4
ENDATA
"""
cs, objective, sense = parse_mps(MPS).to_lp()
lp = LpProblem(2, cs, objective, sense)
print("tiny:", lp.solve(), lp.optimal_value())

# %% [markdown]
# H/V text files in the usual `begin ... end` layout convert in both
# directions.

# %%
SQUARE = """square
H-representation
begin
4 3 integer
0 1 0
1 -1 0
0 0 1
1 0 -1
end
"""
poly = poly_to_domain(parse_poly_file(SQUARE))
print(write_poly_file(domain_to_poly(poly, "V", name="square")))

# %% [markdown]
# The same conversions are exposed as command-line tools.  Here they run
# in-process on a temporary file.

# %%
with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "square.ine"
    path.write_text(SQUARE)
    print("vconvert exit:", cli.vconvert([str(path)]))
    print("bounds exit:", cli.bounds([str(path)]))
