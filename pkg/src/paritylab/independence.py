"""Twirling and independence tests for bipartite states.

The operational-independence test quantifies, over a pair of effect bases,
how far the joint statistics of a state deviate from the product of its
marginal statistics. By bilinearity of the trace, a verdict over spanning
bases extends to the full spanned effect spaces, so the test is exact and
finite. The module also provides twirling over finite unitary groups,
product and preparability tests, the PPT separability decision for a pair
of qubits, and the audited construction of a two-mode state that passes the
superselected independence test while failing every unrestricted one.
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass
from itertools import product as iter_product
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .fermion import ModeSystem, allowed_effect_basis, build_modes, is_ssr_state
from .linops import (
    QuantumState,
    commutator_norm,
    frobenius,
    kron,
    partial_trace,
    partial_transpose,
    pauli_basis,
)
from .report import CheckResult, Report

__all__ = [
    "IndependenceVerdict",
    "OperationalIndependence",
    "TwirlGroup",
    "bell_projector",
    "bell_vector",
    "counterexample_scenario",
    "counterexample_state",
    "independence_verdict",
    "is_independently_preparable",
    "is_operationally_independent",
    "is_product",
    "is_ssr_separable_two_modes",
    "operational_independence_residual",
    "parity_twirl_group",
    "ppt_separable_2x2",
    "product_residual",
    "twirl",
]


@dataclass(frozen=True, eq=False)
class TwirlGroup:
    """Finite group of unitaries used for twirling, with uniform weights.

    Construction verifies that every element is unitary and that the set is
    closed under products (up to tolerance), so averaging over the elements
    is a projection onto the commutant of the group.
    """

    elements: tuple[np.ndarray, ...]
    tol: InitVar[float] = 1e-9

    def __post_init__(self, tol: float) -> None:
        if not self.elements:
            raise ValueError("a twirl group needs at least one element")
        frozen = []
        dim = np.asarray(self.elements[0]).shape[0]
        ident = np.eye(dim)
        for u in self.elements:
            arr = np.array(u)
            if arr.shape != (dim, dim):
                raise ValueError("group elements must share one square shape")
            if frobenius(arr.conj().T @ arr - ident) > tol:
                raise ValueError("group element is not unitary")
            arr.setflags(write=False)
            frozen.append(arr)
        for u in frozen:
            for v in frozen:
                w = u @ v
                if min(frobenius(w - g) for g in frozen) > tol:
                    raise ValueError("element set is not closed under products")
        object.__setattr__(self, "elements", tuple(frozen))

    def __len__(self) -> int:
        return len(self.elements)


def parity_twirl_group(
    ms: ModeSystem, subsets: Sequence[Iterable[int]] = ((0,), (1,))
) -> TwirlGroup:
    """Group generated by the parity operators of the given mode subsets.

    For two single-mode subsets this is the four-element group
    {I, P_A, P_B, P_A P_B}, ordered by the exponent bit strings.
    """
    paritys = [ms.parity_op(s) for s in subsets]
    elements = []
    for bits in iter_product((0, 1), repeat=len(subsets)):
        u = np.eye(ms.dim)
        for bit, p in zip(bits, paritys):
            if bit:
                u = u @ p
        elements.append(u)
    return TwirlGroup(tuple(elements))


def twirl(state: QuantumState, group: TwirlGroup) -> QuantumState:
    """Average U rho U^+ over the group; idempotent and state-preserving."""
    first = group.elements[0]
    if first.shape[0] != state.side:
        raise ValueError("group and state dimensions do not match")
    acc = np.zeros_like(state.op)
    for u in group.elements:
        acc = acc + u @ state.op @ u.conj().T
    return QuantumState(acc / len(group), state.dims)


class OperationalIndependence(NamedTuple):
    independent: bool
    max_residual: float
    witness: tuple[int, int]


def operational_independence_residual(
    op: np.ndarray,
    dims: Sequence[int],
    basis_a: Sequence[np.ndarray],
    basis_b: Sequence[np.ndarray],
) -> tuple[float, tuple[int, int]]:
    """Worst deviation of joint from product statistics over basis pairs.

    Returns the largest |tr[(e_a (x) e_b) rho] - tr[e_a rho_A] tr[e_b rho_B]|
    together with the first basis index pair attaining it (ties break toward
    the lowest pair).
    """
    op = np.asarray(op)
    dims_t = tuple(int(d) for d in dims)
    if len(dims_t) != 2:
        raise ValueError("operational independence is a bipartite notion")
    marg_a = partial_trace(op, dims_t, 0)
    marg_b = partial_trace(op, dims_t, 1)
    best = -1.0
    witness = (0, 0)
    for i, ea in enumerate(basis_a):
        local_a = float(np.trace(np.asarray(ea) @ marg_a).real)
        for j, eb in enumerate(basis_b):
            joint = float(np.trace(kron(np.asarray(ea), np.asarray(eb)) @ op).real)
            local_b = float(np.trace(np.asarray(eb) @ marg_b).real)
            delta = abs(joint - local_a * local_b)
            if delta > best:
                best = delta
                witness = (i, j)
    return best, witness


def is_operationally_independent(
    state: QuantumState,
    basis_a: Sequence[np.ndarray],
    basis_b: Sequence[np.ndarray],
    tol: float = 1e-9,
) -> OperationalIndependence:
    residual, witness = operational_independence_residual(
        state.op, state.dims, basis_a, basis_b
    )
    return OperationalIndependence(residual <= tol, residual, witness)


def product_residual(op: np.ndarray, dims: Sequence[int]) -> float:
    """Frobenius distance of a bipartite operator from the product of its marginals.

    A bipartite state is a product state exactly when it equals the product
    of its own marginals, so this residual is zero iff the state factorizes.
    """
    op = np.asarray(op)
    dims_t = tuple(int(d) for d in dims)
    if len(dims_t) != 2:
        raise ValueError("product_residual expects a bipartite operator")
    marg_a = partial_trace(op, dims_t, 0)
    marg_b = partial_trace(op, dims_t, 1)
    return frobenius(op - np.kron(marg_a, marg_b))


def is_product(state: QuantumState, tol: float = 1e-9) -> bool:
    return product_residual(state.op, state.dims) <= tol


def _split_partition(
    ms: ModeSystem, partition: Sequence[Iterable[int]]
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    if len(partition) != 2:
        raise ValueError("partition must have exactly two parts")
    part_a = tuple(sorted(set(partition[0])))
    part_b = tuple(sorted(set(partition[1])))
    if sorted(part_a + part_b) != list(range(ms.n_modes)):
        raise ValueError("partition must cover all modes disjointly")
    if part_a != tuple(range(len(part_a))):
        raise ValueError("only contiguous partitions with part A first are supported")
    return part_a, part_b


def is_independently_preparable(
    ms: ModeSystem,
    state: QuantumState,
    partition: Sequence[Iterable[int]] = ((0,), (1,)),
    tol: float = 1e-9,
) -> bool:
    """True iff the state is a product whose factors both obey the parity rule."""
    part_a, part_b = _split_partition(ms, partition)
    dims2 = (2 ** len(part_a), 2 ** len(part_b))
    if product_residual(state.op, dims2) > tol:
        return False
    for keep, part in ((0, part_a), (1, part_b)):
        marg = partial_trace(state.op, dims2, keep)
        local = build_modes(len(part))
        if commutator_norm(marg, local.parity_op().astype(complex)) > tol:
            return False
    return True


def ppt_separable_2x2(state: QuantumState, tol: float = 1e-9) -> bool:
    """Separability of a two-qubit state via the partial transpose.

    Positivity of the partial transpose is necessary and sufficient for
    separability at dimensions 2x2 (and 2x3); other shapes are rejected
    because the criterion is not conclusive there.
    """
    if state.dims != (2, 2):
        raise ValueError("ppt_separable_2x2 expects a pair of qubits")
    pt = partial_transpose(state.op, state.dims, sys=1)
    return bool(np.linalg.eigvalsh(pt)[0] >= -tol)


def is_ssr_separable_two_modes(
    ms: ModeSystem, state: QuantumState, tol: float = 1e-9
) -> bool:
    """Membership in the convex hull of parity-respecting product states.

    On one mode per party, states that obey the parity rule are diagonal, so
    the hull of their products is exactly the set of diagonal two-mode
    states: the test reduces to the off-diagonal entries vanishing.
    """
    if ms.n_modes != 2:
        raise ValueError("the two-mode separability test needs exactly two modes")
    if state.side != 4:
        raise ValueError("state does not live on two modes")
    off = state.op - np.diag(np.diag(state.op))
    return bool(np.max(np.abs(off)) <= tol)


@dataclass(frozen=True)
class IndependenceVerdict:
    """The three-way classification of a bipartite state.

    ``independently_preparable`` implies ``product_state``; the converse can
    fail because a product of parity-violating factors is not preparable.
    """

    operationally_independent: bool
    product_state: bool
    independently_preparable: bool
    max_residual: float
    witness: tuple[int, int] | None = None

    def __post_init__(self) -> None:
        if self.independently_preparable and not self.product_state:
            raise ValueError("preparable states must be product states")
        if self.max_residual < 0:
            raise ValueError("residuals are nonnegative")


def independence_verdict(
    ms: ModeSystem,
    state: QuantumState,
    partition: Sequence[Iterable[int]] = ((0,), (1,)),
    tol: float = 1e-9,
) -> IndependenceVerdict:
    """Run the three independence tests under parity-restricted effects."""
    part_a, part_b = _split_partition(ms, partition)
    dims2 = (2 ** len(part_a), 2 ** len(part_b))
    view = QuantumState(state.op, dims2)
    basis_a = allowed_effect_basis(ms, part_a)
    basis_b = allowed_effect_basis(ms, part_b)
    oi = is_operationally_independent(view, basis_a, basis_b, tol)
    return IndependenceVerdict(
        operationally_independent=oi.independent,
        product_state=is_product(view, tol),
        independently_preparable=is_independently_preparable(ms, state, partition, tol),
        max_residual=oi.max_residual,
        witness=oi.witness,
    )


_BELL_KINDS = ("phi+", "phi-", "psi+", "psi-")


def bell_vector(kind: str) -> np.ndarray:
    """One of the four Bell vectors on two qubits."""
    if kind not in _BELL_KINDS:
        raise ValueError(f"kind must be one of {_BELL_KINDS}")
    vec = np.zeros(4)
    sign = 1.0 if kind.endswith("+") else -1.0
    if kind.startswith("phi"):
        vec[0], vec[3] = 1.0, sign
    else:
        vec[1], vec[2] = 1.0, sign
    return vec / np.sqrt(2.0)


def bell_projector(kind: str) -> np.ndarray:
    """Projector onto a Bell vector, with exactly dyadic entries."""
    if kind not in _BELL_KINDS:
        raise ValueError(f"kind must be one of {_BELL_KINDS}")
    i, j = (0, 3) if kind.startswith("phi") else (1, 2)
    sign = 1.0 if kind.endswith("+") else -1.0
    proj = np.zeros((4, 4))
    proj[i, i] = proj[j, j] = 0.5
    proj[i, j] = proj[j, i] = 0.5 * sign
    return proj


def counterexample_state() -> QuantumState:
    """Equal mixture of the even-parity and odd-parity plus Bell states.

    All entries are exact dyadic rationals (the matrix is (I + XX)/4), so
    identities involving this state hold exactly in floating point.
    """
    op = (bell_projector("phi+") + bell_projector("psi+")) / 2.0
    return QuantumState(op, (2, 2))


def counterexample_scenario(tol: float = 1e-9) -> Report:
    """Full audit of the correlated two-mode state.

    Asserts, in order: the state respects the global parity rule; its parity
    twirl is maximally mixed; it passes the independence test under
    parity-restricted effects; it fails the test under unrestricted effects
    with the XX witness at residual one; it is not a product; it is not a
    product of parity-respecting factors; its partial transpose is positive
    (so it is separable); and it is not in the hull of parity-respecting
    products (nonzero off-diagonal entries).
    """
    ms = build_modes(2)
    rho = counterexample_state()
    checks: list[CheckResult] = []

    res = commutator_norm(rho.op, ms.parity_op().astype(complex))
    checks.append(CheckResult("parity-superselection", res <= tol, res))

    group = parity_twirl_group(ms)
    twirled = twirl(rho, group)
    res = float(np.max(np.abs(twirled.op - np.eye(4) / 4.0)))
    checks.append(CheckResult("twirl-maximally-mixed", res <= tol, res))

    basis_a = allowed_effect_basis(ms, (0,))
    basis_b = allowed_effect_basis(ms, (1,))
    oi = is_operationally_independent(rho, basis_a, basis_b, tol)
    checks.append(
        CheckResult(
            "operational-independence-allowed-effects",
            oi.independent,
            oi.max_residual,
            witness=list(oi.witness),
        )
    )

    unrestricted = pauli_basis(1)
    oi_full = is_operationally_independent(rho, unrestricted, unrestricted, tol)
    res = abs(oi_full.max_residual - 1.0)
    checks.append(
        CheckResult(
            "operational-dependence-unrestricted-effects",
            (not oi_full.independent) and oi_full.witness == (1, 1) and res <= tol,
            res,
            witness=list(oi_full.witness),
        )
    )

    prod_res = product_residual(rho.op, rho.dims)
    checks.append(CheckResult("not-product", prod_res > tol, prod_res))

    preparable = is_independently_preparable(ms, rho, ((0,), (1,)), tol)
    checks.append(CheckResult("not-independently-preparable", not preparable, prod_res))

    pt_eigs = np.linalg.eigvalsh(partial_transpose(rho.op, rho.dims, sys=1))
    negativity = max(0.0, -float(pt_eigs[0]))
    checks.append(
        CheckResult("ppt-separable", ppt_separable_2x2(rho, tol), negativity)
    )

    off = rho.op - np.diag(np.diag(rho.op))
    off_max = float(np.max(np.abs(off)))
    checks.append(
        CheckResult(
            "not-ssr-separable",
            not is_ssr_separable_two_modes(ms, rho, tol),
            off_max,
        )
    )

    return Report("counterexample", checks, tol=tol)
