# Tour of the concrete set types and their queries: construction, support
# functions, membership, vertex/constraint views, volume, and sampling.

import numpy as np

import setcalc as sc

# Half-spaces and hyperplanes store exactly their defining parameters.
a = np.array([1.0, 0.0])
print("half-space  x <= 1:", sc.HalfSpace(a, 1.0))
print("hyperplane  x == 1:", sc.Hyperplane(a, 1.0))

# A 1000-dimensional hypercube is just a center and a scalar radius, so
# construction is instantaneous even though it has 2^1000 vertices.
big = sc.BallInf(np.zeros(1000), 1.0)
print("dim:", sc.dim(big))
print("the all-ones point is a member:", sc.membership(np.ones(1000), big))

# Vertices are computed on demand for small dimensions.
small = sc.BallInf([1.0, 4.0], 1.0)
print("vertices of BallInf([1,4], 1):", [v.tolist() for v in sc.vertices_list(small)])
print("volume of BallInf(0_3, 1):", sc.volume(sc.BallInf(np.zeros(3), 1.0)))

# The support function rho(d, X) = max d.x over X finds the boundary in a
# direction; the support vector is a maximizer.
polygon = sc.VPolygon(
    [[-3, 0.6], [-2, -2], [0, -2], [1, -1], [2, 1], [0, 2], [-0.8, 1.8]]
)
d = np.array([-1.0, 1.0])
print("rho((-1,1), polygon):", sc.support_function(d, polygon))
print("sigma((-1,1), polygon):", sc.support_vector(d, polygon).tolist())
print("polygon has", len(sc.constraints_list(polygon)), "edges/constraints")

# Zonotopes: center plus generators, with coefficients in [-1, 1].
Z = sc.Zonotope([0.0, 0.0], np.array([[1.0, 0.0, 1.0], [0.0, 1.0, 1.0]]))
print("rho((1,1), Z):", sc.support_function([1.0, 1.0], Z))
print("(1,1) in Z:", sc.membership([1.0, 1.0], Z))

# Predicates: emptiness, inclusion, disjointness, equivalence.
box = sc.BallInf(np.zeros(2), 1.0)
product = sc.cartesian_product(sc.Interval(-1, 1), sc.Interval(-1, 1))
print("interval^2 equivalent to the unit box:", sc.is_equivalent(product, box))
print("disjoint from a far box:", sc.is_disjoint(box, sc.BallInf([3.0, 3.0], 1.0)))
empty = sc.intersection(sc.BallInf([0.0, 0.0], 1.0), sc.BallInf([5.0, 5.0], 1.0))
print("intersection of far boxes is empty:", sc.is_empty(empty))

# Rejection sampling draws members through the membership test.
points = sc.sample(polygon, 5, seed=7)
print("5 samples from the polygon:")
for p in points:
    print("   ", np.round(p, 4).tolist(), "member:", sc.membership(p, polygon))
