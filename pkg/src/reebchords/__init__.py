"""Combinatorial Reeb dynamics of contact surgeries on Legendrian fronts.

Turn a front diagram with +-1 surgery coefficients into exact planar data:
chords, closed-orbit words, linearized return maps, Conley-Zehnder and
Maslov indices, homology classes, intersection gradings, and filtered
differential-candidate reports.
"""

from .diagram import (DiagramError, FrontCode, FrontError, ResolvedDiagram,
                      chord_actions, classical_invariants, faces, parse_front,
                      point_basis, resolve)
from .dynamics import (cz_mod2, embed_orbit, hyperbolic_type, is_bad,
                       orbit_action, return_map)
from .homology import (h1_presentation, crossing_monomials,
                       orbit_class_monomial, orbit_class_pushout)
from .indices import (capping_angle, c1_class, cz_integral, index_closed,
                      index_disk, index_general, maslov_bcs, meridian_twist)
from .quiver import (build_quiver, bubbling_faces, cyclic_equivalence,
                     delta_i_obstruction, energy_lower_bound,
                     exposed_required, i_grading)
from .report import differential_candidates, generators
from .words import (CyclicWord, OrbitString, Word, all_orbit_strings,
                    canonical_cyclic, enumerate_chord_words,
                    enumerate_orbit_words, primitive_decomposition, push_out)

__version__ = "0.1.0"
