"""Symbolic verification of PT, CPT and strong-reflection invariance for
formal field theories presented as finitely generated affine subspaces of a
free (super)commutative algebra of field symbols."""

from .algebra import (COMMUTATIVE, FREE, SUPER, AlgebraContext, AlgebraElement,
                      FieldDecl, FieldSymbolSpace, InvolutionSpec, conjugation_C,
                      dagger, hash_involution, identity_involution, multiply,
                      named_involution, normal_form, reinterpret,
                      star_hash_involution, star_involution, strong_reflection)
from .actions import (classical_action, classify_charge, classify_transform,
                      holomorphic_classical_action, holomorphic_structure_action,
                      infinitesimal_action, quantum_action)
from .classical import (Poly, PolyField, apply_operator, pullback_transform,
                        random_polyfield, verify_correspondence)
from .clifford import CliffordElement, clifford_mul, pin_project, verify_axioms
from .corpus import builtin_examples
from .dsl import Diagnostic, elaborate, load, parse, pretty_print
from .lorentz import (CoverElement, Galilean, LorentzElement, Signature,
                      classify_component, cover_conjugate, cover_project,
                      lie_basis, pt_representative, sample_cover,
                      sample_proper_ortho, total_reflection_lift)
from .reps import (RepSpec, antisym2, dirac, direct_sum, dual, grade_split,
                   sym2, tensor, trivial, vector, weyl_left, weyl_right)
from .scalars import QI
from .theories import (FiniteTransform, FormalTheory, InfinitesimalTransform,
                       affine_membership, check_invariance, counterexample_2d,
                       counterexample_galilean, direction_membership,
                       is_hermitian, orthochronous_invariance, theorem_harness)

__version__ = "0.1.0"
