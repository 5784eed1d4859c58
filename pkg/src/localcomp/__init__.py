"""Local computation of marginals on hypertrees.

Valuations (probability potentials, belief functions) factored on a
hypergraph are propagated over a Markov tree built from a hypertree
construction sequence.
"""

from .belief import (FocalSet, MassFunction, belief_from_mass, dempster_combine,
                     marginalize_mass, project_subset, vacuous_extension)
from .errors import DomainError, LocalComputationError, UndefinedCombination
from .frames import project_config
from .hypergraph import (ConstructionSequence, Hypergraph, construction_sequence, covers,
                         hypertree_cover, is_hypertree, is_twig)
from .markov_tree import MarkovTree, from_construction_sequence, verify_markov_property
from .potential import Potential, combine_potentials, marginalize_potential, normalize
from .propagation import (PropagationResult, brute_force_marginal, collect_marginal,
                          delete_twig, propagate, propagate_all)
from .valuation import (Factorization, Valuation, assign_to_cover, combine, combine_all,
                        marginalize)

__version__ = "0.1.0"
