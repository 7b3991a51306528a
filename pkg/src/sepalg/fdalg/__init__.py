"""Finite-dimensional commutative algebras by structure constants."""

from .algebra import (AlgebraElement, AlgebraModule, Embedded, GroupAction, Quotient, StructureAlgebra,
                      ValidationReport, base_change, base_field, change_basis, direct_product,
                      exterior_algebra, from_table, group_algebra, ideal_algebra, monogenic,
                      quotient_algebra, regular_module, split_algebra, subspace_algebra,
                      tensor_product, validate, zero_algebra)
from .galois import GaloisReport, fixed_subalgebra, frobenius_extension, galois_check
from .idempotents import IdempotentDecomposition, element_minpoly, nilradical, primitive_idempotents
from .separable import (SeparabilityWitness, counit_section_check, etale_via_trace_form,
                        graded_separability_idempotent, separability_idempotent,
                        solution_space_dimension, tensor_witness, trace_form)
from .tower import (DegreeFunction, RelativeAlgebra, SplitRetraction, SplittingStep,
                    SplittingTowerRecord, degree, degree_function, relative_splitting_tower,
                    relative_tensor_square, split_retraction, splitting_step, splitting_tower,
                    unblocked_tower_dims)

__all__ = [name for name in dir() if not name.startswith("_")]
