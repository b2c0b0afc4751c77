"""Exact-arithmetic planar storyplans: models, validators, and synthesis."""

from .errors import CoverageError, ParseError
from .geom import (CCW, COLLINEAR, CW, HalfPlane, Line, Point, PointLocation,
                   SegmentKind, SegmentRelation, arrangement_cell_representatives,
                   convex_hull, dist2_point_polygon, format_rational,
                   halfplanes_feasible, line_through, orientation,
                   parse_rational, point_in_polygon, pt, segment_relation)
from .graph_core import (Graph, PlanarityStatus, PlanarityVerdict, build_graph,
                         euler_nonplanarity_check, induced_subgraph, is_planar,
                         read_graph_json, write_graph_json)
from .storyplan import (Drawing, Interval, Mode, Schedule, Storyplan,
                        ValidationReport, ViolationCode, frame_graph,
                        read_storyplan, render_frames_svg, validate_frame,
                        validate_schedule, validate_storyplan, write_storyplan)
from .quads import (Quad, QuadClass, QuadKind, classify_quad, edge_on_outer_face,
                    good_edges, make_quad, non_nested, outer_halfplane, precedes,
                    sees_all_vertices)
from .counterexample import (build_counterexample, build_counterexample_storyplan,
                             COUNTEREXAMPLE_LABELS)
from .reduction import (Assignment, Bundle, Formula, GadgetMap, Role,
                        SynthesisPlan, brute_force_one_in_three,
                        build_reduction, check_one_in_three, parse_formula,
                        plan_synthesis, reduce_and_certify,
                        synthesize_storyplan)
