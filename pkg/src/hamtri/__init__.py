"""Triangulations of the sphere and projective plane: exact hamiltonian
cycle counts, 4-separator censuses, and the constructive witness pipeline
behind the linear-separator exponential-growth theorem."""

from .embedding import (Face, Graph, SignedEmbedding, euler_genus,
                        k3q_euler_genus, parse_planar_code,
                        parse_signed_rotation, serialize_planar_code,
                        serialize_signed_rotation, trace_faces,
                        validate_triangulation)
from .connectivity import (SeparatorSet, enumerate_4_separators,
                           enumerate_separating_cycles, is_k_connected,
                           vertex_connectivity)
from .cycles import (Cycle, DiamondMatch, DiamondSixPattern, cycle_sidedness,
                     enumerate_cycles, find_diamond6, saturates_diamond6,
                     saturating_pairs, vertices_dominating_cycle)
from .hamilton import (HamCount, count_hc_avoiding, count_hc_backtrack,
                       count_hc_dp, is_hamiltonian)
from .generators import (diagonal_flip, double_wheel, icosahedron,
                         k6_projective, low_separator_family, octahedron,
                         random_triangulation_4c)
from .witness import (ConflictGraph, EdgeChoiceSet, WitnessReport,
                      check_lemma7, enumerate_edge_choices,
                      refine_no_saturation, run_pipeline, stage1_low_degree,
                      stage2_independent, stage3_prune_separating,
                      verify_conditions)

__version__ = "0.1.0"
