# Taylor models (polynomial + interval remainder over a domain) converted
# to zonotope and box enclosures; the zonotope keeps the linear coupling
# between components, the box does not.

import os

import numpy as np

import setcalc as sc
from setcalc import TaylorModel1, TaylorModelVector, tm_to_box, tm_to_zonotope
from setcalc.cli import render_svg

OUT = os.path.join(os.path.dirname(__file__), "output")
os.makedirs(OUT, exist_ok=True)

remainder = (-0.5, 0.5)
domain = (-3.0, 1.0)

# Linear pair: p1 = 2 + t, p2 = 0.9 + 3t.  The zonotope conversion is exact.
linear = TaylorModelVector(
    [
        TaylorModel1([2.0, 1.0], remainder, 0.0, domain),
        TaylorModel1([0.9, 3.0], remainder, 0.0, domain),
    ]
)
Z = tm_to_zonotope(linear)
H = tm_to_box(linear)
print("linear zonotope center:", Z.center.tolist())
print("generators (shared first):")
print(np.round(Z.generators, 6))
print("box:", H)

# Nonlinear second component: p2 = 0.9 + 3t + 3t^2.  The zonotope is only
# an enclosure now, but its bounding box still sits inside the interval box.
nonlinear = TaylorModelVector(
    [
        TaylorModel1([2.0, 1.0], remainder, 0.0, domain),
        TaylorModel1([0.9, 3.0, 3.0], remainder, 0.0, domain),
    ]
)
Znl = tm_to_zonotope(nonlinear)
Hnl = tm_to_box(nonlinear)
print("nonlinear zonotope bounding box:", sc.box_approximation(Znl))
print("nonlinear interval box:         ", Hnl)
print("hull inside box:", sc.is_subset(sc.box_approximation(Znl), Hnl))

# Sampled trajectories stay inside both enclosures.
rng = np.random.default_rng(4)
inside = 0
for _ in range(500):
    t = rng.uniform(*domain)
    r = rng.uniform(remainder[0], remainder[1], 2)
    point = np.array([2.0 + t + r[0], 0.9 + 3.0 * t + 3.0 * t * t + r[1]])
    inside += sc.membership(point, Znl) and sc.membership(point, Hnl)
print(f"samples enclosed: {inside}/500")

# Splitting the domain tightens the union of per-block enclosures.
blocks = tm_to_zonotope(nonlinear, splits=6)
print("6 domain blocks; generator counts:", [b.num_generators for b in blocks])
shapes = [sc.VPolygon(sc.vertices_list(Hnl)), sc.VPolygon(sc.vertices_list(Znl))]
shapes += [sc.VPolygon(sc.vertices_list(b)) for b in blocks]
path = os.path.join(OUT, "taylor.svg")
with open(path, "w") as handle:
    handle.write(render_svg([np.array(s.vertices) for s in shapes]))
print("wrote", path)
