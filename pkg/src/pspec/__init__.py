"""Equational probability, spectra and quantitative primality of finite algebras."""

from .core import (AlgebraError, Apply, BudgetExceeded, Equation, FiniteAlgebra,
                   FunctionTable, PreconditionError, Var, compile_term, eval_term,
                   index_tuple, make_equation, parse_algebra, parse_equation, parse_term,
                   serialize_algebra, tuple_index)
from .builtins import BuiltinSpec, builtin_algebra
from .clone import (CloneSet, Membership, PrimalityVerdict, Status, clone_contains,
                    compatible_functions, generate_clone, is_automorphism_primal_at,
                    is_idemprimal_at, is_primal, post_classes)
from .symmetry import (AutomorphismGroup, OrbitPartition, automorphism_group,
                       orbit_bound_at, orbit_partition, sigma_subset_sums)
from .spectrum import (SpectrumReport, check_orbit_inclusion, direct_product,
                       equation_probability, power, pspec_at)
from .approx import (PrimReport, best_approximation, coincidence_mu, covering_radius,
                     hamming_distance, prim_at, walsh_nonlinearity)
from .homs import AlgebraMap, check_homomorphism, lemma_elementary_check

__version__ = "0.1.0"
