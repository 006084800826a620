"""Lazy set operations as immutable expression-tree nodes.

A :class:`LazyNode` records an operation applied to child sets (lazy or
concrete) without computing anything.  Queries are answered by recursive
propagation:

    rho(d, X + Y)        = rho(d, X) + rho(d, Y)
    rho((d1, d2), X x Z) = rho(d1, X) + rho(d2, Z)
    rho(d, CH(X u Y))    = max(rho(d, X), rho(d, Y))
    rho(d, M X)          = rho(M^T d, X)
    rho(d, X + b)        = rho(d, X) + d . b

plus a box formula for the symmetric interval hull.  An exact support value
over a lazy binary intersection has no composition rule; exact queries
concretize 2-D intersections and refuse otherwise, while the explicit
overapproximate mode returns the upper bound ``min(rho(d, X), rho(d, Y))``.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DimensionMismatchError, UnsupportedOperationError
from .numerics import ToleranceContext, resolve_tolerance
from .sets import (
    AbstractHyperrectangle,
    ConcreteSet,
    ConvexSet,
    HPolyhedron,
    Hyperrectangle,
    VPolygon,
    Zonotope,
    _as_direction,
    _as_vector,
    _sign_plus,
)
from . import concrete_ops
from .conversion import tohrep
from .sets import _hrep_vertices_2d

UNARY_KINDS = frozenset({"LinearMap", "AffineMap", "Translation", "SymmetricIntervalHull", "Complement"})
NARY_KINDS = frozenset({"MinkowskiSumArray", "Union"})
BINARY_KINDS = frozenset({"MinkowskiSum", "Intersection", "CartesianProduct", "ConvexHullUnion"})
KINDS = UNARY_KINDS | NARY_KINDS | BINARY_KINDS

# Kinds under which a tree of zonotopic leaves concretizes in closed form.
_ZONOTOPAL_KINDS = frozenset(
    {"MinkowskiSum", "MinkowskiSumArray", "LinearMap", "AffineMap", "Translation", "CartesianProduct"}
)


class LazyNode(ConvexSet):
    """One operation applied to operand sets, evaluated on demand.

    ``matrix``/``vector`` carry the payload of map and translation kinds.
    Nodes are immutable; build them with :func:`make_node`.
    """

    __slots__ = ("kind", "operands", "matrix", "vector", "_dim")

    def __init__(self, kind, operands, matrix=None, vector=None, _dim=None):
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "operands", tuple(operands))
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "vector", vector)
        object.__setattr__(self, "_dim", _dim)

    def __setattr__(self, name, value):
        raise AttributeError("LazyNode is immutable")

    @property
    def dim(self) -> int:
        return self._dim

    def __repr__(self):
        inner = ", ".join(repr(op) for op in self.operands)
        return f"LazyNode({self.kind!r}, [{inner}])"

    def __eq__(self, other):
        if not isinstance(other, LazyNode) or self.kind != other.kind:
            return False
        if (self.matrix is None) != (other.matrix is None):
            return False
        if self.matrix is not None and not np.array_equal(self.matrix, other.matrix):
            return False
        if (self.vector is None) != (other.vector is None):
            return False
        if self.vector is not None and not np.array_equal(self.vector, other.vector):
            return False
        return self.operands == other.operands

    __hash__ = None

    def support_function(self, d, ctx: ToleranceContext | None = None) -> float:
        return lazy_support_function(d, self, ctx=ctx)

    def support_vector(self, d, ctx: ToleranceContext | None = None) -> np.ndarray:
        return lazy_support_vector(d, self, ctx=ctx)

    def contains(self, x, ctx: ToleranceContext | None = None) -> bool:
        return lazy_membership(x, self, ctx)

    def depth(self) -> int:
        child = max((op.depth() if isinstance(op, LazyNode) else 1) for op in self.operands)
        return 1 + child

    def num_leaves(self) -> int:
        total = 0
        for op in self.operands:
            total += op.num_leaves() if isinstance(op, LazyNode) else 1
        return total


def make_node(kind: str, operands, matrix=None, vector=None) -> LazyNode:
    """Validated construction of a lazy node; no computation happens.

    Dimensions must be consistent with the kind: cartesian products
    concatenate, maps require matching matrix columns, everything else needs
    equal operand dimensions.
    """
    if kind not in KINDS:
        raise UnsupportedOperationError(f"unknown lazy operation kind {kind!r}")
    operands = tuple(operands)
    if not operands:
        raise ValueError(f"{kind} needs at least one operand")
    for op in operands:
        if not isinstance(op, ConvexSet):
            raise TypeError(f"operand {op!r} is not a set")

    if kind in UNARY_KINDS:
        if len(operands) != 1:
            raise ValueError(f"{kind} takes exactly one operand")
    elif kind in BINARY_KINDS:
        if len(operands) != 2:
            raise ValueError(f"{kind} takes exactly two operands")
    elif len(operands) < 2:
        raise ValueError(f"{kind} takes at least two operands")

    dims = [op.dim for op in operands]
    if kind == "CartesianProduct":
        node_dim = sum(dims)
    elif kind == "LinearMap" or kind == "AffineMap":
        if matrix is None:
            raise ValueError(f"{kind} needs a matrix payload")
        matrix = np.atleast_2d(np.asarray(matrix, dtype=float))
        matrix.flags.writeable = False
        if matrix.shape[1] != dims[0]:
            raise DimensionMismatchError(
                f"{kind} matrix has {matrix.shape[1]} columns, operand "
                f"{type(operands[0]).__name__} has dimension {dims[0]}"
            )
        node_dim = matrix.shape[0]
        if kind == "AffineMap":
            if vector is None:
                raise ValueError("AffineMap needs a vector payload")
            vector = _as_vector(vector, node_dim, "shift")
    elif kind == "Translation":
        if vector is None:
            raise ValueError("Translation needs a vector payload")
        vector = _as_vector(vector, dims[0], "shift")
        node_dim = dims[0]
    else:
        first = dims[0]
        for op, d in zip(operands, dims):
            if d != first:
                raise DimensionMismatchError(
                    f"{kind} operands {type(operands[0]).__name__} (dim {first}) and "
                    f"{type(op).__name__} (dim {d}) have different dimensions"
                )
        node_dim = first
    return LazyNode(kind, operands, matrix, vector, _dim=node_dim)


def _support_pair(d, X, ctx, mode, want_vector):
    """Shared recursion for support function and vector.

    Returns ``(value, vector_or_None)``; the vector is only materialized
    when requested, but both are produced by the same composition rules so
    they are always consistent.
    """
    if isinstance(X, ConcreteSet):
        value = X.support_function(d, ctx)
        vec = X.support_vector(d, ctx) if want_vector else None
        return value, vec

    kind = X.kind
    if kind == "Complement":
        raise UnsupportedOperationError("support queries over a complement are not defined")

    if kind in ("MinkowskiSum", "MinkowskiSumArray"):
        total = 0.0
        vec = np.zeros(X.dim) if want_vector else None
        for op in X.operands:
            value, sigma = _support_pair(d, op, ctx, mode, want_vector)
            total = total + value
            if want_vector:
                vec = vec + sigma
        return total, vec

    if kind in ("ConvexHullUnion", "Union"):
        best = -math.inf
        best_op = None
        for op in X.operands:
            value, _ = _support_pair(d, op, ctx, mode, False)
            if value > best:
                best, best_op = value, op
        if not want_vector:
            return best, None
        _, sigma = _support_pair(d, best_op, ctx, mode, True)
        return best, sigma

    if kind == "CartesianProduct":
        offset = 0
        total = 0.0
        parts = []
        for op in X.operands:
            sub = d[offset : offset + op.dim]
            value, sigma = _support_pair(sub, op, ctx, mode, want_vector)
            total += value
            if want_vector:
                parts.append(sigma)
            offset += op.dim
        return total, (np.concatenate(parts) if want_vector else None)

    if kind == "LinearMap":
        value, sigma = _support_pair(X.matrix.T @ d, X.operands[0], ctx, mode, want_vector)
        return value, (X.matrix @ sigma if want_vector else None)

    if kind == "AffineMap":
        value, sigma = _support_pair(X.matrix.T @ d, X.operands[0], ctx, mode, want_vector)
        value = value + float(d @ X.vector)
        return value, (X.matrix @ sigma + X.vector if want_vector else None)

    if kind == "Translation":
        value, sigma = _support_pair(d, X.operands[0], ctx, mode, want_vector)
        return value + float(d @ X.vector), (sigma + X.vector if want_vector else None)

    if kind == "SymmetricIntervalHull":
        child = X.operands[0]
        n = X.dim
        radius = np.empty(n)
        for i in range(n):
            e = np.zeros(n)
            e[i] = 1.0
            up, _ = _support_pair(e, child, ctx, mode, False)
            down, _ = _support_pair(-e, child, ctx, mode, False)
            radius[i] = max(abs(up), abs(down))
        value = float(np.abs(d) @ radius)
        return value, (_sign_plus(d) * radius if want_vector else None)

    if kind == "Intersection":
        if mode == "overapproximate":
            left, _ = _support_pair(d, X.operands[0], ctx, mode, False)
            right, _ = _support_pair(d, X.operands[1], ctx, mode, False)
            if not want_vector:
                return min(left, right), None
            raise UnsupportedOperationError(
                "support vectors are not available in overapproximate mode"
            )
        if X.dim == 2:
            region = _intersection_hrep_2d(X, ctx)
            value = region.support_function(d, ctx)
            vec = region.support_vector(d, ctx) if want_vector else None
            return value, vec
        raise UnsupportedOperationError(
            "exact support over a lazy intersection is only available in 2-D; "
            "use mode='overapproximate' for the min-bound"
        )

    raise UnsupportedOperationError(f"support rule missing for kind {kind!r}")


def lazy_support_function(d, T: ConvexSet, ctx: ToleranceContext | None = None, mode: str = "exact") -> float:
    """Support value of a lazy tree via the composition rules.

    ``mode='exact'`` (default) refuses trees it cannot answer exactly;
    ``mode='overapproximate'`` additionally handles lazy intersections with
    the upper bound ``min`` rule.
    """
    if mode not in ("exact", "overapproximate"):
        raise ValueError(f"unknown mode {mode!r}")
    ctx = resolve_tolerance(ctx)
    d = _as_direction(d, T.dim)
    value, _ = _support_pair(d, T, ctx, mode, False)
    return value


def lazy_support_vector(d, T: ConvexSet, ctx: ToleranceContext | None = None, mode: str = "exact") -> np.ndarray:
    """A maximizer consistent with :func:`lazy_support_function`."""
    if mode not in ("exact", "overapproximate"):
        raise ValueError(f"unknown mode {mode!r}")
    ctx = resolve_tolerance(ctx)
    d = _as_direction(d, T.dim)
    _, vec = _support_pair(d, T, ctx, mode, True)
    return vec


def _is_singleton(X) -> np.ndarray | None:
    if isinstance(X, AbstractHyperrectangle) and np.all(X.radius_vector == 0.0):
        return X.center
    if isinstance(X, Zonotope) and X.num_generators == 0:
        return X.center
    if isinstance(X, (VPolygon,)) and X.num_vertices == 1:
        return X.vertices[0]
    return None


def lazy_membership(x, T: ConvexSet, ctx: ToleranceContext | None = None) -> bool:
    """Exact membership on the boolean-friendly fragment.

    Supported kinds: Union (or), Intersection (and), Complement (negation),
    Translation, invertible LinearMap/AffineMap, CartesianProduct (split),
    and MinkowskiSum with a singleton operand.  Anything else raises.
    """
    ctx = resolve_tolerance(ctx)
    x = _as_direction(x, T.dim)
    if isinstance(T, ConcreteSet):
        return T.contains(x, ctx)
    kind = T.kind
    if kind == "Union":
        return any(lazy_membership(x, op, ctx) for op in T.operands)
    if kind == "Intersection":
        return all(lazy_membership(x, op, ctx) for op in T.operands)
    if kind == "Complement":
        return not lazy_membership(x, T.operands[0], ctx)
    if kind == "Translation":
        return lazy_membership(x - T.vector, T.operands[0], ctx)
    if kind in ("LinearMap", "AffineMap"):
        M = T.matrix
        if M.shape[0] != M.shape[1]:
            raise UnsupportedOperationError("membership needs an invertible map")
        try:
            Minv = np.linalg.inv(M)
        except np.linalg.LinAlgError:
            raise UnsupportedOperationError("membership needs an invertible map") from None
        y = x - T.vector if kind == "AffineMap" else x
        return lazy_membership(Minv @ y, T.operands[0], ctx)
    if kind == "CartesianProduct":
        offset = 0
        for op in T.operands:
            if not lazy_membership(x[offset : offset + op.dim], op, ctx):
                return False
            offset += op.dim
        return True
    if kind in ("MinkowskiSum", "MinkowskiSumArray"):
        points = [_is_singleton(op) for op in T.operands]
        movable = [i for i, p in enumerate(points) if p is None]
        if len(movable) == 1:
            shift = sum((p for p in points if p is not None), np.zeros(T.dim))
            return lazy_membership(x - shift, T.operands[movable[0]], ctx)
        if len(movable) == 0:
            shift = sum(points, np.zeros(T.dim))
            return bool(np.all(np.abs(x - shift) <= ctx.atol))
        raise UnsupportedOperationError(
            "membership in a Minkowski sum needs all but one operand to be singletons"
        )
    raise UnsupportedOperationError(f"membership is not defined for lazy kind {kind!r}")


def _is_zonotopal(X) -> bool:
    if isinstance(X, (AbstractHyperrectangle, Zonotope)):
        return True
    if isinstance(X, LazyNode) and X.kind in _ZONOTOPAL_KINDS:
        return all(_is_zonotopal(op) for op in X.operands)
    return False


def _concretize_zonotopal(X, ctx) -> Zonotope:
    if isinstance(X, ConcreteSet):
        return concrete_ops._as_zonotope(X)
    kind = X.kind
    children = [_concretize_zonotopal(op, ctx) for op in X.operands]
    if kind in ("MinkowskiSum", "MinkowskiSumArray"):
        out = children[0]
        for child in children[1:]:
            out = concrete_ops.minkowski_sum(out, child, ctx)
        return out
    if kind == "LinearMap":
        return concrete_ops.linear_map(X.matrix, children[0], ctx)
    if kind == "AffineMap":
        return concrete_ops.translate(
            concrete_ops.linear_map(X.matrix, children[0], ctx), X.vector
        )
    if kind == "Translation":
        return concrete_ops.translate(children[0], X.vector)
    if kind == "CartesianProduct":
        return concrete_ops.cartesian_product(children[0], children[1], ctx)
    raise UnsupportedOperationError(f"kind {kind!r} does not preserve zonotopes")


def _intersection_hrep_2d(X, ctx) -> HPolyhedron:
    """H-representation of a 2-D lazy intersection node.

    Concrete operands contribute their constraint lists directly (so
    half-space and H-polyhedron operands are fine); lazy operands are
    concretized to polygons first.
    """
    constraints = []
    for op in X.operands:
        if isinstance(op, ConcreteSet):
            constraints.extend(op.constraints_list(ctx))
        else:
            poly = concrete_ops._to_polygon(concretize(op, ctx), ctx)
            constraints.extend(tohrep(poly, ctx).constraints)
    return HPolyhedron(constraints, dim=2)


def _concretize_2d(X, ctx) -> ConcreteSet:
    if isinstance(X, ConcreteSet):
        return concrete_ops._to_polygon(X, ctx)

    def as_poly(node):
        return concrete_ops._to_polygon(_concretize_2d(node, ctx), ctx)

    kind = X.kind
    if kind in ("MinkowskiSum", "MinkowskiSumArray"):
        out = as_poly(X.operands[0])
        for op in X.operands[1:]:
            out = concrete_ops._polygon_minkowski(out, as_poly(op), ctx)
        return out
    if kind == "ConvexHullUnion":
        left = as_poly(X.operands[0])
        right = as_poly(X.operands[1])
        return VPolygon(np.vstack([left.vertices, right.vertices]))
    if kind == "LinearMap":
        child = concretize(X.operands[0], ctx)
        return concrete_ops._to_polygon(concrete_ops.linear_map(X.matrix, child, ctx), ctx)
    if kind == "AffineMap":
        child = concretize(X.operands[0], ctx)
        mapped = concrete_ops.linear_map(X.matrix, child, ctx)
        return concrete_ops._to_polygon(concrete_ops.translate(mapped, X.vector), ctx)
    if kind == "Translation":
        return as_poly(X.operands[0]).translate(X.vector)
    if kind == "Intersection":
        region = _intersection_hrep_2d(X, ctx)
        if not region.is_bounded(ctx):
            return region
        vertices = _hrep_vertices_2d(region.constraints, ctx)
        return VPolygon([]) if vertices is None else VPolygon(vertices)
    if kind == "CartesianProduct":
        children = [concretize(op, ctx) for op in X.operands]
        product = children[0]
        for child in children[1:]:
            product = concrete_ops.cartesian_product(product, child, ctx)
        return concrete_ops._to_polygon(product, ctx)
    if kind == "SymmetricIntervalHull":
        child = X.operands[0]
        radius = np.empty(2)
        for i in range(2):
            e = np.zeros(2)
            e[i] = 1.0
            up = lazy_support_function(e, child, ctx)
            down = lazy_support_function(-e, child, ctx)
            radius[i] = max(abs(up), abs(down))
        return concrete_ops._to_polygon(Hyperrectangle(np.zeros(2), radius), ctx)
    raise UnsupportedOperationError(f"cannot concretize lazy kind {kind!r} in 2-D")


def concretize(T: ConvexSet, ctx: ToleranceContext | None = None) -> ConcreteSet:
    """Evaluate a lazy tree into a concrete set.

    Trees whose kinds all preserve zonotopes collapse in closed form (any
    dimension); general 2-D trees over polytopic leaves are evaluated
    bottom-up into a polygon.  Everything else raises.
    """
    ctx = resolve_tolerance(ctx)
    if isinstance(T, ConcreteSet):
        return T
    if not isinstance(T, LazyNode):
        raise TypeError(f"expected a set, got {type(T).__name__}")
    if _is_zonotopal(T):
        return _concretize_zonotopal(T, ctx)
    if T.dim == 2:
        return _concretize_2d(T, ctx)
    raise UnsupportedOperationError(
        f"cannot concretize kind {T.kind!r} in dimension {T.dim}: outside both "
        "the zonotope-preserving and the 2-D polygon fragments"
    )
