"""H-selfadjoint m-th roots of H-selfadjoint matrices.

A pair (B, H) with H Hermitian invertible and HB = B*H is reduced to the
canonical form (J, sum of eps_i Q_k), existence of an H-selfadjoint m-th
root is decided from the Jordan structure and the sign characteristic,
and when a root exists one is constructed explicitly along with the
Jordan basis that exhibits it.
"""

from .descriptor import (DEFAULT_TOL, Descriptor, MatrixPair, PairBlock,
                         RealBlock, SegreCharacteristic, classify,
                         descriptor_from_dict, descriptor_to_dict,
                         jordan_block, matrix_from_lists, matrix_to_lists,
                         pair_violations, realize, scramble, segre_at, sip,
                         validate)
from .canonical import (CanonicalizationResult, Eigenstructure,
                        IllConditionedError, canonicalize, eigenstructure_of,
                        inertia_of)
from .existence import (Certificate, DecisionReport, Refusal, decide,
                        decide_negative, decide_zero, enumerate_groupings,
                        quick_refusal_corollary, required_positive_counts,
                        root_eigenvalue_choice)
from .construction import (ChainPairing, RootResult, assemble_root,
                           chain_pairing, phi_values, root_block_conjugate_pair,
                           root_block_negative_even, root_block_real,
                           root_nilpotent, solve_phi, transport)
from .verify import (ResidualReport, oracle_decide_nilpotent,
                     oracle_negative_even, power_structure, verify_root)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TOL", "Descriptor", "MatrixPair", "PairBlock", "RealBlock",
    "SegreCharacteristic", "classify", "descriptor_from_dict",
    "descriptor_to_dict", "jordan_block", "matrix_from_lists",
    "matrix_to_lists", "pair_violations", "realize", "scramble", "segre_at",
    "sip", "validate",
    "CanonicalizationResult", "Eigenstructure", "IllConditionedError",
    "canonicalize", "eigenstructure_of", "inertia_of",
    "Certificate", "DecisionReport", "Refusal", "decide", "decide_negative",
    "decide_zero", "enumerate_groupings", "quick_refusal_corollary",
    "required_positive_counts", "root_eigenvalue_choice",
    "ChainPairing", "RootResult", "assemble_root", "chain_pairing",
    "phi_values", "root_block_conjugate_pair", "root_block_negative_even",
    "root_block_real", "root_nilpotent", "solve_phi", "transport",
    "ResidualReport", "oracle_decide_nilpotent", "oracle_negative_even",
    "power_structure", "verify_root",
    "__version__",
]
