"""Exact classification of special quasi-monomial valuations on del Pezzo
surfaces with a nodal anticanonical cycle."""

from .quadratic import ExtPos, IncompatibleRadicands, QuadVal, Rat, interval_contains, parse_quad, quad_cmp
from .lattice import (ContractionView, DivisorClass, NotInRange, SurfaceLattice, contract,
                      h0_anticanonical, intersect, is_nef, mori_rays, pushforward, unicuspidal_witness)
from .cycle import (ConfigError, CycleConfig, Edge, NodeRef, PointMap, Vertex, Violation,
                    anticanonical_cycles, circle_atlas, contract_non_nef, load_config, nodal_cubic, validate)
from .blowup import TransformMatrix, colength, et_self, pair_intersections, transform_matrix
from .feasibility import infeasibility_witness, positivity_feasible
from .specialness import (Partition, Region, Verdict, WitnessEntry, WitnessSet, classify, partition,
                          region, witness_set)
from .degeneration import (MonoidPresentation, RationalPolytope, WpsCiRecord, area2, chamber_endpoints,
                           ehrhart, g, monoid_hilbert, polytope, validate_homogeneity, wps_ci_record)

__version__ = "0.1.0"
