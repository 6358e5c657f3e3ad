"""Combinatorial non-Abelian bundles and gerbes on simplicial complexes."""

from .errors import (GerbekitError, IncompleteFieldError,
                     InapplicableGeneratorError, LinearizationDomainError,
                     MalformedCellError, OutOfDomainError, TopologyError,
                     UnsupportedDimensionError)
from .liegroup import (SO3, SU2, Automorphism, LieGroup, adjoint_algebra,
                       adjoint_group, exp_map, get_group, log_map,
                       trace_ad_pairing)
from .simplicial import (OrientedCell, SimplicialComplex, based_loops,
                         boundary_complex, build_complex, cell_key,
                         standard_simplex)
from .pathspace import (HomotopyWord, TwoCellGenerator, apply_generator,
                        detect_backtrack, face_scheme_words, tetra_sweep_word)
from .cochain import (Cochain1, Cochain2, Cochain3, bianchi_residual_linear,
                      cocycle_residual_linear, cup_pair_22,
                      cup_pair_22_scalar, curvature_full, curvature_quadratic,
                      d1, nabla0, nabla1, nabla2, nabla2_eta, nabla2_xi,
                      nu_component, omega_component)
from .bundle import (BundleData, curvature_c, gauge_transform, holonomy,
                     linearize_bundle, linearize_curvature,
                     mult_bianchi_defect)
from .gerbe import (GerbeData, GerbeGauge, LinearGerbeData, SectionData,
                    bundle_induced_gerbe, cocycle_defect_group,
                    fake_curvature, fake_curvature_defect,
                    fake_curvature_linear, gauge_transform_linear,
                    linearize_gerbe, naturality_defect, omega_group,
                    sweep_section, trivial_gerbe, word_value, zigzag_check)
from .bf import BFConfiguration, bf_action, gauge_variation, orient_four_cells

__version__ = "0.1.0"
