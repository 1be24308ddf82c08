"""Verification toolkit for parity-superselected modes and local tomography.

The package machine-checks a family of constructions around one question:
when do locally indistinguishable bipartite states coincide with
independently prepared ones? It provides dense linear algebra on small
Hilbert spaces (:mod:`paritylab.linops`), string-ordered fermionic mode
operators with parity superselection (:mod:`paritylab.fermion`), twirling
and independence tests (:mod:`paritylab.independence`), executable
probabilistic models with local-tomography analysis (:mod:`paritylab.gpt`),
and a deterministic scenario runner (:mod:`paritylab.scenarios`,
:mod:`paritylab.cli`).
"""

from .fermion import (
    ModeSystem,
    allowed_effect_basis,
    basis_state,
    build_modes,
    check_car,
    is_ssr_state,
    quadrature_sign_check,
)
from .gpt import (
    COMPLEX_QUBIT_PAIR,
    FERMI_TWO_MODES,
    INSTANCE_KINDS,
    REAL_QUBIT_PAIR,
    CompositeModel,
    GPTSystem,
    SubspaceBasis,
    build_instance,
    check_independence_equivalence,
    holistic_subspace,
    holistic_witness,
    is_locally_tomographic,
    product_span,
)
from .independence import (
    IndependenceVerdict,
    TwirlGroup,
    counterexample_scenario,
    counterexample_state,
    independence_verdict,
    is_independently_preparable,
    is_operationally_independent,
    is_product,
    is_ssr_separable_two_modes,
    parity_twirl_group,
    ppt_separable_2x2,
    twirl,
)
from .linops import (
    Effect,
    EffectBasis,
    QuantumState,
    commutator_norm,
    herm_eigen,
    is_density,
    is_effect,
    kron,
    matrix_from_json,
    matrix_to_json,
    partial_trace,
    partial_transpose,
    pauli_basis,
)
from .report import AggregateReport, CheckResult, Report
from .scenarios import RunConfig, ScenarioDescriptor, list_scenarios, run_all, run_scenario

__version__ = "0.1.0"
