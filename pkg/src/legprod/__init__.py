"""Combinatorial invariants of products of Legendrian submanifolds."""

from .diagram import (
    PDCode,
    Face,
    area_constraints,
    crossing_signs,
    diagram_tb,
    diagram_to_model,
    euler_counts,
    faces,
    load_fixture,
    parse_pd,
    reverse,
)
from .errors import LegprodError
from .explore import SearchReport, tb_range_search
from .feasibility import (
    LinearConstraint,
    LinearSystem,
    equivalent,
    fm_eliminate,
    implies,
    is_feasible,
    parse_constraint,
    sample_point,
    system,
)
from .model import (
    LegendrianModel,
    MorseCritical,
    ReebChord,
    chord_sum_tb,
    dumps_model,
    knot_fixture,
    loads_model,
    stabilize_with_cancelling_pair,
    validate_model,
    whitney,
)
from .product import (
    PerturbedChord,
    frontspin,
    infinite_family_tb,
    maslov_product,
    perturb_product,
    product_tb,
    tau,
)
from .rational import format_rational, parse_rational
from .triple import iterated_tb, triple_tau, triple_tb, triple_vs_iterated

__version__ = "0.1.0"
