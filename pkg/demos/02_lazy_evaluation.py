# Lazy composition: record operations as expression-tree nodes and answer
# support queries by propagation instead of computing the result set.

import time

import numpy as np

import setcalc as sc
from setcalc import concretize, lazy_support_function, make_node

# One step of a linear reachability recurrence: CH(X0, Phi*X0 + E).
X0 = sc.BallInf([1.0, 0.0], 0.1)
Phi = np.array([[0.95105652, 0.02459079], [-3.88322208, 0.95105652]])
E = sc.Hyperrectangle(np.zeros(2), [0.05477208, 0.07676220])

omega = make_node(
    "ConvexHullUnion",
    [X0, make_node("MinkowskiSum", [make_node("LinearMap", [X0], matrix=Phi), E])],
)
print("tree:", omega.kind, "with", omega.num_leaves(), "concrete leaves")

# The query walks the tree: max over the hull branches, a sum across the
# Minkowski sum, and a transposed-matrix pullback through the linear map.
d = np.array([-1.0, 1.0])
print("lazy rho(d, omega):", lazy_support_function(d, omega))

# The same number via full concretization into a polygon.
polygon = concretize(omega)
print("concrete rho(d, omega):", sc.support_function(d, polygon))
print("polygon vertex count:", polygon.num_vertices)

# The lazy route only touches the directions you ask about, which is the
# point: per-query it is far cheaper than materializing the set.
N = 2000
t0 = time.perf_counter()
for _ in range(N):
    lazy_support_function(d, omega)
lazy_us = (time.perf_counter() - t0) / N * 1e6
t0 = time.perf_counter()
for _ in range(N):
    sc.support_function(d, concretize(omega))
concrete_us = (time.perf_counter() - t0) / N * 1e6
print(f"lazy {lazy_us:.1f} us/query vs concretize-then-query {concrete_us:.1f} us "
      f"({concrete_us / lazy_us:.0f}x)")

# Lazy sets plug into the approximation routines unchanged.
print("bounding box of the lazy set:", sc.box_approximation(omega))

# Deep sums flatten into one n-ary node.
chain = make_node("MinkowskiSumArray", [X0, X0, X0, E])
print("4-term sum support:", lazy_support_function([1.0, 0.0], chain))

# Membership works on the boolean fragment (unions, complements,
# intersections, invertible maps, translations).
donut = make_node(
    "Intersection",
    [
        make_node("Complement", [sc.BallInf([0.0, 0.0], 0.5)]),
        sc.BallInf([0.0, 0.0], 1.0),
    ],
)
print("(0.75, 0) in ring:", sc.lazy_membership([0.75, 0.0], donut))
print("(0, 0) in ring:", sc.lazy_membership([0.0, 0.0], donut))
