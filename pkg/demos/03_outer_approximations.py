# Over- and under-approximation: bounding boxes, template polytopes,
# eps-close polygons, fitted zonotopes, and the sandwich between them.
# Writes SVG pictures next to this script (demos/output/).

import os

import numpy as np

import setcalc as sc
from setcalc.cli import render_svg

OUT = os.path.join(os.path.dirname(__file__), "output")
os.makedirs(OUT, exist_ok=True)


def save(name, *objects):
    polygons = [np.array(sc.vertices_list(sc.VPolygon(sc.vertices_list(o)))) for o in objects]
    path = os.path.join(OUT, name)
    with open(path, "w") as handle:
        handle.write(render_svg(polygons))
    print("wrote", path)


X = sc.VPolygon([[-3, 0.6], [-2, -2], [0, -2], [1, -1], [2, 1], [0, 2], [-0.8, 1.8]])

# Every direction family gives an outer polytope with one constraint per
# direction; more directions, tighter fit.
box_hull = sc.box_approximation(X)
octagon = sc.overapproximate_template(X, sc.oct_template())
print("box hull:", box_hull)
print("octagon constraints:", len(octagon.constraints_list()))
save("templates.svg", box_hull, sc.tovrep(octagon), X)

# Zonotope fits along polar candidate directions (three vs five).
Z3 = sc.overapproximate_zonotope(X, sc.generate_directions(sc.polar_template(3)))
Z5 = sc.overapproximate_zonotope(X, sc.generate_directions(sc.polar_template(5)))
print("polar-3 fit uses", Z3.num_generators, "generators; polar-5 uses", Z5.num_generators)
for name, A in (("box", box_hull), ("Z3", Z3), ("Z5", Z5)):
    for other, B in (("box", box_hull), ("Z3", Z3), ("Z5", Z5)):
        if name != other and sc.is_subset(A, B):
            print(f"  note: {name} inside {other}")
print("(no inclusions printed: the three approximations are incomparable)")
save("zonotope_fits.svg", box_hull, Z3, Z5, X)

# The adaptive eps-close method refines directions until the Hausdorff
# distance guarantee holds.
for eps in (0.5, 0.1, 0.01):
    P = sc.overapproximate_eps_2d(X, eps)
    print(f"eps={eps:<5} -> {P.num_vertices:3d} vertices, area {P.area():.4f}"
          f" (exact {X.area():.4f})")
save("eps_close.svg", sc.overapproximate_eps_2d(X, 0.5), sc.overapproximate_eps_2d(X, 0.05), X)

# Support vectors along a direction fan give an inner polytope; together
# with any outer approximation this sandwiches the set.
inner = sc.underapproximate(X, sc.generate_directions(sc.polar_template(8)))
print("inner subset of X:", sc.is_subset(inner, X))
print("X subset of octagon:", sc.is_subset(X, octagon))
save("sandwich.svg", sc.tovrep(octagon), X, inner)

# The symmetric interval hull centers the box at the origin.
shifted = sc.BallInf([1.0, 0.0], 1.0)
print("symmetric hull of BallInf([1,0],1):", sc.symmetric_interval_hull(shifted))
