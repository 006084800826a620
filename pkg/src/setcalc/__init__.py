"""setcalc: symbolic-numeric calculus with convex sets.

Concrete set representations (boxes, zonotopes, polytopes, half-spaces),
lazily composed set operations queried through support-function rules,
predicates backed by an embedded simplex solver, and controlled over- and
under-approximation between representations.
"""

from .errors import (
    DegeneratePolygonError,
    DimensionMismatchError,
    DocumentError,
    EmptySetError,
    SamplingBudgetError,
    SetcalcError,
    UnboundedSetError,
    UnsupportedOperationError,
)
from .numerics import (
    LinearProgram,
    LpOutcome,
    LpStatus,
    ToleranceContext,
    approx_eq,
    default_tolerance,
    is_feasible,
    set_default_tolerance,
    solve_lp,
)
from .sets import (
    BallInf,
    ConcreteSet,
    ConvexSet,
    HalfSpace,
    HPolyhedron,
    HPolytope,
    Hyperplane,
    Hyperrectangle,
    Interval,
    VPolygon,
    VPolytope,
    Zonotope,
    an_element,
    constraints_list,
    dim,
    is_bounded,
    membership,
    sample,
    support_function,
    support_vector,
    vertices_list,
    volume,
)
from .concrete_ops import (
    SingleEntryVector,
    cartesian_product,
    convex_hull_union,
    intersection,
    intersection_fastpath,
    is_disjoint,
    is_empty,
    is_equivalent,
    is_subset,
    linear_map,
    minkowski_sum,
    translate,
)
from .lazyops import (
    LazyNode,
    concretize,
    lazy_membership,
    lazy_support_function,
    lazy_support_vector,
    make_node,
)
from .conversion import convert_to, tohrep, tovrep
from .approximation import (
    DirectionTemplate,
    box_approximation,
    box_template,
    custom_template,
    generate_directions,
    oct_template,
    overapproximate_eps_2d,
    overapproximate_template,
    overapproximate_zonotope,
    polar_template,
    spherical_template,
    symmetric_interval_hull,
    underapproximate,
)
from .taylor import (
    TaylorModel1,
    TaylorModelVector,
    interval_eval,
    tm_to_box,
    tm_to_zonotope,
)

__version__ = "0.1.0"
