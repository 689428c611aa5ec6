"""Limit r-spin structures on stable curves: local models, dual graphs and
degenerations, computed exactly."""
from .artin import (GF, QQ, ArtinElement, ArtinError, ArtinRing, BaseField, NotAUnitError,
                    associate_solve, invert, is_nilpotent, is_unit, normalize, rth_root_lift,
                    truncated_polynomial_ring)
from .degeneration import (ChainSolution, DegenerationError, NodeFamilyDatum, SemistableFibre,
                           chain_degrees, chain_length, divisor_degree, limit_from_divisor, limit_spin_type,
                           normalize_chain, reduce_nonexceptional, render_local)
from .graphs import (GraphError, Presentation, SpinType, StableGraph, aut_order, count_roots,
                     degree_sum_check, enumerate_spin_types, natural_pullback_degree,
                     spin_corpus, stable_graphs, universal_deformation_presentation,
                     validate_graph)
from .local import (AutGroup, EpqModule, LocalModelError, ModuleHom, NodalAlgebra, NodalElement,
                    SigmaReport, SpinMapLocal, check_spin_relations, cokernel_length,
                    epq_isomorphic, epq_membership, extract_sigma, hom_complete,
                    is_good_cokernel, local_aut_group, make_spin_map, nodal_mul)

__version__ = "0.1.0"
