"""Finite relational systems: the exact oracle in action.

A relational system is a matrix between challenges X and responses Y.
Two numbers summarize it: d (the least number of responses that dominate
every challenge) and b (the least number of challenges no single
response bounds).  On finite systems both are computed exactly, so the
classical identities can be checked by brute force.
"""

from cichon import finite as fin

# The running example: three responses whose cones are {0,1}, {1,2}, {0,2}.
R = fin.FinSys.from_matrix([
    [1, 0, 1],
    [1, 1, 0],
    [0, 1, 1],
])
print("cones system:  d =", fin.d_num(R), " b =", fin.b_num(R))
print("via the enumeration oracle:", fin.d_num_brute(R), fin.b_num_brute(R))

# Duality swaps the two numbers (and is an involution).
D = fin.dual(R)
print("dual:          d =", fin.d_num(D), " b =", fin.b_num(D))
assert fin.dual(D) == R

# A linear order has d = 1 and no unbounded family at all (b = inf).
L = fin.le_system(3)
print("linear order:  d =", fin.d_num(L), " b =", fin.b_num(L))

# Products: b is the exact minimum of the factors.
P = fin.product(fin.identity_system(2), L)
print("product:       d =", fin.d_num(P), " b =", fin.b_num(P))

# Tukey connections transport bounds; the search is exhaustive.
m = fin.tukey_search(fin.identity_system(2), fin.identity_system(3))
print("id2 -> id3 connection:", m.psi_minus, m.psi_plus)
print("id3 -> id2 connection:", fin.tukey_search(fin.identity_system(3),
                                                 fin.identity_system(2)))

# Small-set ideals: [4]^{<2} and its covering system.
i_sys, c_sys = fin.ideal_systems(4, 2)
print("[4]^{<2}:  add =", fin.b_num(i_sys), " cof =", fin.d_num(i_sys),
      " non =", fin.b_num(c_sys), " cov =", fin.d_num(c_sys))

# The embedding criterion: R maps into the covering system of [n]^{<k}
# exactly when every subset of X of size < k is bounded.
for k in (2, 3):
    _, target = fin.ideal_systems(R.x_size, k)
    hit = fin.tukey_search(R, target)
    print(f"R embeds into C[3]^{{<{k}}}: {hit is not None}   "
          f"every <{k}-subset bounded: {fin.bounded_below(R, k)}")

# Ideals also load from text: ground size, then one subset per line.
with open("demos/systems/triangle.idl") as fh:
    tri = fin.parse_finideal(fh.read())
ti, tc = fin.systems_of_ideal(tri)
print("triangle ideal:  add =", fin.b_num(ti), " cof =", fin.d_num(ti),
      " non =", fin.b_num(tc), " cov =", fin.d_num(tc))
