"""Exact conversions between set representations, including 2-D H/V round-trips.

Only loss-free conversions live here; anything lossy belongs to the
approximation module.  Conversions of H/V representations beyond dimension
two are not implemented and raise.
"""

from __future__ import annotations

from .errors import (
    DegeneratePolygonError,
    EmptySetError,
    UnboundedSetError,
    UnsupportedOperationError,
)
from .numerics import ToleranceContext, resolve_tolerance
from .sets import (
    AbstractHyperrectangle,
    ConcreteSet,
    HPolytope,
    Hyperrectangle,
    Interval,
    VPolygon,
    Zonotope,
    _hrep_vertices_2d,
)
from .concrete_ops import _as_zonotope, cartesian_product, is_empty


def tohrep(X: ConcreteSet, ctx: ToleranceContext | None = None) -> HPolytope:
    """H-representation of a bounded 2-D polytopic set (edge normals)."""
    ctx = resolve_tolerance(ctx)
    if X.dim != 2:
        raise UnsupportedOperationError("tohrep is only implemented in dimension 2")
    if isinstance(X, HPolytope):
        return X
    polygon = X if isinstance(X, VPolygon) else VPolygon(X.vertices_list(ctx))
    if polygon.num_vertices < 3:
        raise DegeneratePolygonError(
            f"cannot build an H-representation from {polygon.num_vertices} "
            "vertices: the polygon is degenerate (all points collinear)"
        )
    return HPolytope(polygon.constraints_list(ctx))


def tovrep(X: HPolytope, ctx: ToleranceContext | None = None) -> VPolygon:
    """Vertex representation of a bounded, nonempty 2-D H-polytope.

    Vertices come from pairwise constraint intersections filtered by
    feasibility, so redundant constraints are harmless.
    """
    ctx = resolve_tolerance(ctx)
    if X.dim != 2:
        raise UnsupportedOperationError("tovrep is only implemented in dimension 2")
    if is_empty(X, ctx):
        raise EmptySetError("tovrep of an empty polytope")
    if not X.is_bounded(ctx):
        raise UnboundedSetError("tovrep of an unbounded region")
    vertices = _hrep_vertices_2d(X.constraints, ctx)
    if vertices is None:
        raise EmptySetError("tovrep of an empty polytope")
    return VPolygon(vertices)


def convert_to(target: type, X, ctx: ToleranceContext | None = None) -> ConcreteSet:
    """Exact conversion of X to the given target representation class.

    Supported pairs: Interval -> Hyperrectangle/Zonotope/HPolytope;
    box kinds -> Hyperrectangle/Zonotope/HPolytope/VPolygon (2-D);
    Zonotope (2-D) -> VPolygon; VPolygon <-> HPolytope (2-D); and the
    cartesian product of an interval with a box -> Zonotope.  Unknown pairs
    raise, pointing at the approximation module for lossy routes.
    """
    ctx = resolve_tolerance(ctx)

    # A lazy cartesian product of box kinds converts by first building the
    # concrete product box.
    from .lazyops import LazyNode

    if isinstance(X, LazyNode):
        if X.kind == "CartesianProduct" and all(
            isinstance(op, AbstractHyperrectangle) for op in X.operands
        ):
            product = X.operands[0]
            for op in X.operands[1:]:
                product = cartesian_product(product, op, ctx)
            return convert_to(target, product, ctx)
        raise UnsupportedOperationError(
            f"cannot convert lazy node {X.kind!r}; concretize it first"
        )

    if target is Hyperrectangle:
        if isinstance(X, AbstractHyperrectangle):
            return Hyperrectangle(X.center, X.radius_vector)
    elif target is Zonotope:
        if isinstance(X, (AbstractHyperrectangle, Zonotope)):
            return _as_zonotope(X)
    elif target is HPolytope:
        if isinstance(X, AbstractHyperrectangle):
            return HPolytope(X.constraints_list(ctx))
        if isinstance(X, VPolygon):
            return tohrep(X, ctx)
    elif target is VPolygon:
        if isinstance(X, VPolygon):
            return X
        if isinstance(X, (AbstractHyperrectangle, Zonotope)) and X.dim == 2:
            return VPolygon(X.vertices_list(ctx))
        if isinstance(X, HPolytope) and X.dim == 2:
            return tovrep(X, ctx)
    elif target is Interval:
        if isinstance(X, AbstractHyperrectangle) and X.dim == 1:
            return Interval(float(X.low[0]), float(X.high[0]))

    raise UnsupportedOperationError(
        f"no exact conversion from {type(X).__name__} to {target.__name__}; "
        "see the approximation module for lossy routes"
    )
