"""Executable probabilistic models for bipartite composition.

A single system is a real vector space presented through an orthonormal
Hermitian operator basis, together with finite generating sets of states and
effects and the unit effect (the trace functional). Composition is the
Kronecker product, which for every instance built here lands exactly inside
the declared composite ambient space.

Three instances are provided:

* ``complex-qubit-pair``: full Hermitian operators on each side, composite
  space of dimension 16.
* ``real-qubit-pair``: real symmetric operators on each side (dimension 3),
  composite space of real symmetric 4x4 operators (dimension 10).
* ``fermi-two-modes``: parity-commutant operators on each side (diagonal
  qubit operators, dimension 2), composite space of global-parity-commutant
  operators (dimension 8), with effects restricted exactly as in
  :func:`paritylab.fermion.allowed_effect_basis`.

On top of the instances the module computes the span of product states, its
Hilbert-Schmidt orthogonal complement (the holistic subspace, invisible to
all pairs of local effects), decides local tomography by rank, verifies that
operational independence coincides with product form on locally tomographic
instances, and constructs explicit witness states that are locally identical
to a product base state yet not products whenever the holistic subspace is
nontrivial.
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass
from typing import Sequence

import numpy as np

from . import fermion
from .independence import operational_independence_residual, product_residual
from .linops import frobenius, partial_trace, paulis
from .report import CheckResult, Report

__all__ = [
    "COMPLEX_QUBIT_PAIR",
    "FERMI_TWO_MODES",
    "INSTANCE_KINDS",
    "REAL_QUBIT_PAIR",
    "CompositeModel",
    "GPTSystem",
    "SubspaceBasis",
    "build_instance",
    "check_independence_equivalence",
    "hermitian_basis",
    "holistic_subspace",
    "holistic_witness",
    "is_locally_tomographic",
    "marginals",
    "product_span",
    "random_product_state",
    "random_state",
    "symmetric_basis",
]

COMPLEX_QUBIT_PAIR = "complex-qubit-pair"
REAL_QUBIT_PAIR = "real-qubit-pair"
FERMI_TWO_MODES = "fermi-two-modes"
INSTANCE_KINDS = (COMPLEX_QUBIT_PAIR, REAL_QUBIT_PAIR, FERMI_TWO_MODES)

PRODUCT_SPAN = "product-span"
HOLISTIC = "holistic"

_RANK_REL_TOL = 1e-8  # instance ranks are integer separated, far from this


def _unit(d: int, i: int, j: int, dtype=complex) -> np.ndarray:
    m = np.zeros((d, d), dtype=dtype)
    m[i, j] = 1.0
    return m


def hermitian_basis(d: int) -> list[np.ndarray]:
    """Orthonormal (Hilbert-Schmidt) basis of d x d Hermitian matrices.

    Diagonal units come first, then for each index pair i < j the symmetric
    and antisymmetric combinations.
    """
    if d <= 0:
        raise ValueError("dimension must be positive")
    out = [_unit(d, i, i) for i in range(d)]
    for i in range(d):
        for j in range(i + 1, d):
            out.append((_unit(d, i, j) + _unit(d, j, i)) / np.sqrt(2.0))
            out.append(1j * (_unit(d, j, i) - _unit(d, i, j)) / np.sqrt(2.0))
    return out


def symmetric_basis(d: int) -> list[np.ndarray]:
    """Orthonormal basis of d x d real symmetric matrices."""
    if d <= 0:
        raise ValueError("dimension must be positive")
    out = [_unit(d, i, i, dtype=float) for i in range(d)]
    for i in range(d):
        for j in range(i + 1, d):
            out.append((_unit(d, i, j, dtype=float) + _unit(d, j, i, dtype=float)) / np.sqrt(2.0))
    return out


def _parity_commutant_basis() -> list[np.ndarray]:
    """Orthonormal Hermitian basis of the commutant of Z(x)Z on two qubits.

    Block diagonal with respect to the even sector {00, 11} and the odd
    sector {01, 10}: the four diagonal units plus the symmetric and
    antisymmetric coherences inside each sector, 8 elements in total.
    """
    out = [_unit(4, i, i) for i in range(4)]
    for i, j in ((0, 3), (1, 2)):
        out.append((_unit(4, i, j) + _unit(4, j, i)) / np.sqrt(2.0))
        out.append(1j * (_unit(4, j, i) - _unit(4, i, j)) / np.sqrt(2.0))
    return out


def _coords(basis: Sequence[np.ndarray], mat: np.ndarray) -> np.ndarray:
    return np.array(
        [float(np.trace(b.conj().T @ mat).real) for b in basis]
    )


def _from_coords(basis: Sequence[np.ndarray], vec: np.ndarray) -> np.ndarray:
    acc = np.zeros_like(np.asarray(basis[0]))
    for c, b in zip(vec, basis):
        acc = acc + c * b
    return acc


def _check_orthonormal(basis: Sequence[np.ndarray], tol: float = 1e-10) -> None:
    gram = np.array(
        [[complex(np.trace(a.conj().T @ b)) for b in basis] for a in basis]
    )
    if np.max(np.abs(gram - np.eye(len(basis)))) > tol:
        raise ValueError("basis is not Hilbert-Schmidt orthonormal")


@dataclass(frozen=True, eq=False)
class GPTSystem:
    """One side of a composite: ambient basis, state and effect generators.

    The unit effect is the trace functional, represented by the identity
    operator. Construction validates that every normalized state generator
    has unit trace and that every effect generator takes values in [0, 1]
    on every state generator.
    """

    name: str
    basis: tuple[np.ndarray, ...]
    state_generators: tuple[np.ndarray, ...]
    effect_generators: tuple[np.ndarray, ...]
    unit_effect: np.ndarray
    tol: InitVar[float] = 1e-9

    def __post_init__(self, tol: float) -> None:
        basis = tuple(np.array(b) for b in self.basis)
        _check_orthonormal(basis)
        states = tuple(np.array(s) for s in self.state_generators)
        effects = tuple(np.array(e) for e in self.effect_generators)
        unit = np.array(self.unit_effect)
        for mats in (states, effects, (unit,)):
            for m in mats:
                recon = _from_coords(basis, _coords(basis, m))
                if frobenius(recon - m) > 1e-10:
                    raise ValueError("generator lies outside the ambient space")
        for s in states:
            if abs(complex(np.trace(unit.conj().T @ s)) - 1.0) > tol:
                raise ValueError("state generator is not normalized")
            for e in effects:
                val = float(np.trace(e.conj().T @ s).real)
                if val < -tol or val > 1.0 + tol:
                    raise ValueError("effect generator leaves [0, 1] on a state")
        for group, mats in (("basis", basis), ("states", states), ("effects", effects)):
            for m in mats:
                m.setflags(write=False)
        unit.setflags(write=False)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "state_generators", states)
        object.__setattr__(self, "effect_generators", effects)
        object.__setattr__(self, "unit_effect", unit)

    @property
    def ambient_dim(self) -> int:
        return len(self.basis)

    @property
    def side(self) -> int:
        return self.basis[0].shape[0]

    def to_coords(self, mat: np.ndarray) -> np.ndarray:
        return _coords(self.basis, mat)

    def from_coords(self, vec: np.ndarray) -> np.ndarray:
        return _from_coords(self.basis, vec)


@dataclass(frozen=True, eq=False)
class CompositeModel:
    """Bipartite instance: two sides, a composite ambient basis, and states.

    ``state_generators`` lists valid composite states spanning the composite
    ambient space, product states first. The composition of side operators
    is the plain Kronecker product; :meth:`compose` additionally verifies
    that the result lies in the composite ambient space, which holds exactly
    for all three shipped instances.
    """

    kind: str
    sys_a: GPTSystem
    sys_b: GPTSystem
    basis: tuple[np.ndarray, ...]
    state_generators: tuple[np.ndarray, ...]
    tol: InitVar[float] = 1e-9

    def __post_init__(self, tol: float) -> None:
        basis = tuple(np.array(b) for b in self.basis)
        _check_orthonormal(basis)
        gens = tuple(np.array(g) for g in self.state_generators)
        for g in gens:
            if not self._valid_state_raw(basis, g, tol):
                raise ValueError("composite state generator is not a valid state")
        unit_ab = np.kron(self.sys_a.unit_effect, self.sys_b.unit_effect)
        if frobenius(unit_ab - np.eye(self.sys_a.side * self.sys_b.side)) > tol:
            raise ValueError("composite unit effect must be the identity")
        for wa in self.sys_a.state_generators:
            for wb in self.sys_b.state_generators:
                prod = np.kron(wa, wb)
                for ea in self.sys_a.effect_generators:
                    for eb in self.sys_b.effect_generators:
                        joint = float(np.trace(np.kron(ea, eb).conj().T @ prod).real)
                        local = float(np.trace(ea.conj().T @ wa).real) * float(
                            np.trace(eb.conj().T @ wb).real
                        )
                        if abs(joint - local) > tol:
                            raise ValueError("composition does not factor on products")
        for m in basis + gens:
            m.setflags(write=False)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "state_generators", gens)

    @staticmethod
    def _valid_state_raw(
        basis: Sequence[np.ndarray], mat: np.ndarray, tol: float
    ) -> bool:
        if np.max(np.abs(mat - mat.conj().T)) > tol:
            return False
        if abs(complex(np.trace(mat)) - 1.0) > tol:
            return False
        if np.linalg.eigvalsh(mat)[0] < -tol:
            return False
        recon = _from_coords(basis, _coords(basis, mat))
        return frobenius(recon - mat) <= max(tol, 1e-10)

    @property
    def composite_dim(self) -> int:
        return len(self.basis)

    @property
    def side_dims(self) -> tuple[int, int]:
        return (self.sys_a.side, self.sys_b.side)

    def compose(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        out = np.kron(np.asarray(a), np.asarray(b))
        recon = _from_coords(self.basis, _coords(self.basis, out))
        if frobenius(recon - out) > 1e-9:
            raise ValueError("composition left the composite ambient space")
        return out

    def to_coords(self, mat: np.ndarray) -> np.ndarray:
        return _coords(self.basis, mat)

    def from_coords(self, vec: np.ndarray) -> np.ndarray:
        return _from_coords(self.basis, vec)

    def in_ambient(self, mat: np.ndarray, tol: float = 1e-9) -> bool:
        recon = _from_coords(self.basis, _coords(self.basis, mat))
        return frobenius(recon - np.asarray(mat)) <= tol

    def is_valid_state(self, mat: np.ndarray, tol: float = 1e-9) -> bool:
        return self._valid_state_raw(self.basis, np.asarray(mat), tol)

    def marginals(self, mat: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Contract with the partner unit effect; the partial traces."""
        mat = np.asarray(mat)
        return (
            partial_trace(mat, self.side_dims, 0),
            partial_trace(mat, self.side_dims, 1),
        )

    def effect_pairs(self) -> list[tuple[np.ndarray, np.ndarray]]:
        return [
            (ea, eb)
            for ea in self.sys_a.effect_generators
            for eb in self.sys_b.effect_generators
        ]


def marginals(cm: CompositeModel, state: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Reduced states of a composite state, one per side."""
    return cm.marginals(state)


@dataclass(frozen=True, eq=False)
class SubspaceBasis:
    """Orthonormal coordinate basis of a subspace of a composite ambient space."""

    vectors: tuple[np.ndarray, ...]
    label: str

    def __post_init__(self) -> None:
        vecs = tuple(np.array(v, dtype=float) for v in self.vectors)
        if vecs:
            gram = np.array([[float(np.dot(a, b)) for b in vecs] for a in vecs])
            if np.max(np.abs(gram - np.eye(len(vecs)))) > 1e-10:
                raise ValueError("subspace basis is not orthonormal")
        for v in vecs:
            v.setflags(write=False)
        object.__setattr__(self, "vectors", vecs)

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def as_operators(self, cm: CompositeModel) -> list[np.ndarray]:
        """Each basis vector reshaped to its operator form."""
        return [cm.from_coords(v) for v in self.vectors]

    def project_coords(self, vec: np.ndarray) -> np.ndarray:
        out = np.zeros(len(vec))
        for v in self.vectors:
            out = out + float(np.dot(v, vec)) * v
        return out


def _product_coord_matrix(cm: CompositeModel) -> np.ndarray:
    cols = []
    for wa in cm.sys_a.state_generators:
        for wb in cm.sys_b.state_generators:
            cols.append(cm.to_coords(np.kron(wa, wb)))
    return np.stack(cols, axis=1)


def _product_span_svd(cm: CompositeModel, rel_tol: float) -> tuple[np.ndarray, int]:
    mat = _product_coord_matrix(cm)
    u, s, _ = np.linalg.svd(mat, full_matrices=True)
    if s.size == 0 or s[0] <= 0.0:
        raise ValueError("state generators span nothing")
    rank = int(np.sum(s > rel_tol * s[0]))
    if rank == 0:
        raise ValueError("state generators are degenerate")
    return u, rank


def product_span(cm: CompositeModel, rel_tol: float = _RANK_REL_TOL) -> SubspaceBasis:
    """Orthonormal basis of the span of all products of state generators."""
    u, rank = _product_span_svd(cm, rel_tol)
    return SubspaceBasis(tuple(u[:, k] for k in range(rank)), PRODUCT_SPAN)


def holistic_subspace(cm: CompositeModel, rel_tol: float = _RANK_REL_TOL) -> SubspaceBasis:
    """Orthogonal complement of the product span inside the composite ambient.

    Every vector of the returned basis is invisible to local measurements:
    all pairs of local effect generators evaluate to zero on it (verified on
    construction at 1e-10).
    """
    u, rank = _product_span_svd(cm, rel_tol)
    vectors = tuple(u[:, k] for k in range(rank, cm.composite_dim))
    basis = SubspaceBasis(vectors, HOLISTIC)
    for v in basis.vectors:
        h = cm.from_coords(v)
        for ea, eb in cm.effect_pairs():
            val = abs(float(np.trace(np.kron(ea, eb).conj().T @ h).real))
            if val > 1e-10:
                raise RuntimeError("holistic direction is visible to local effects")
    return basis


def is_locally_tomographic(cm: CompositeModel, rel_tol: float = _RANK_REL_TOL) -> bool:
    """True iff pairs of local effects separate all composite states.

    Decided by the rank of the matrix whose rows are the coordinates of all
    pairwise local effect functionals; full rank is equivalent to the
    holistic subspace being zero.
    """
    rows = [cm.to_coords(np.kron(ea, eb)) for ea, eb in cm.effect_pairs()]
    mat = np.stack(rows, axis=0)
    s = np.linalg.svd(mat, compute_uv=False)
    rank = int(np.sum(s > rel_tol * s[0])) if s.size and s[0] > 0 else 0
    return rank == cm.composite_dim


def _mixture(gens: Sequence[np.ndarray], weights: np.ndarray) -> np.ndarray:
    acc = np.zeros_like(np.asarray(gens[0]))
    for w, g in zip(weights, gens):
        acc = acc + w * g
    return acc


def random_product_state(cm: CompositeModel, rng: np.random.Generator) -> np.ndarray:
    """Product of random mixtures of the per-side state generators."""
    wa = rng.random(len(cm.sys_a.state_generators))
    wa = wa / wa.sum()
    wb = rng.random(len(cm.sys_b.state_generators))
    wb = wb / wb.sum()
    return np.kron(
        _mixture(cm.sys_a.state_generators, wa),
        _mixture(cm.sys_b.state_generators, wb),
    )


def random_state(cm: CompositeModel, rng: np.random.Generator) -> np.ndarray:
    """Generic valid composite state drawn inside the instance's ambient space.

    Samples A as a random combination of the ambient basis (complex
    coefficients when the ambient is complex) and returns A A^H normalized;
    the ambient spaces of all shipped instances are closed under products,
    so the result stays inside them.
    """
    dim = cm.composite_dim
    coeffs = rng.standard_normal(dim)
    if np.iscomplexobj(cm.basis[0]):
        coeffs = coeffs + 1j * rng.standard_normal(dim)
    a = np.zeros_like(np.asarray(cm.basis[0]))
    for c, b in zip(coeffs, cm.basis):
        a = a + c * b
    rho = a @ a.conj().T
    trace = float(np.trace(rho).real)
    if trace <= 1e-12:
        raise RuntimeError("degenerate random draw")
    rho = rho / trace
    if not cm.in_ambient(rho):
        raise RuntimeError("ambient space is not closed under products")
    return rho


def check_independence_equivalence(
    cm: CompositeModel, trials: int = 100, seed: int = 0, tol: float = 1e-9
) -> Report:
    """Verify that independence of local statistics coincides with product form.

    Requires a locally tomographic instance. Even trials draw a generic
    random state, odd trials a random product state; each trial asserts that
    the operational-independence residual and the distance from the product
    of marginals vanish together (both below ``tol`` or both above). Trial
    randomness derives from ``seed + trial index`` so trials could run in
    parallel.
    """
    if not is_locally_tomographic(cm):
        raise ValueError("instance is not locally tomographic")
    if trials < 2:
        raise ValueError("need at least two trials to cover both state classes")
    eff_a = cm.sys_a.effect_generators
    eff_b = cm.sys_b.effect_generators
    disagreements = 0
    product_max = 0.0
    correlated_min = np.inf
    for t in range(trials):
        rng = np.random.default_rng(seed + t)
        if t % 2 == 0:
            s = random_state(cm, rng)
        else:
            s = random_product_state(cm, rng)
        oi_res, _ = operational_independence_residual(s, cm.side_dims, eff_a, eff_b)
        prod_res = product_residual(s, cm.side_dims)
        if (oi_res <= tol) != (prod_res <= tol):
            disagreements += 1
        if prod_res <= tol:
            product_max = max(product_max, oi_res)
        else:
            correlated_min = min(correlated_min, oi_res)
    checks = [
        CheckResult("biconditional", disagreements == 0, float(disagreements)),
        CheckResult("product-states-factorize", product_max <= tol, product_max),
    ]
    if np.isfinite(correlated_min):
        checks.append(
            CheckResult(
                "correlated-states-detected", correlated_min > tol, float(correlated_min)
            )
        )
    return Report("tomographic-equivalence", checks, tol=tol, seed=seed)


# Scalings are searched on an exact dyadic-rational grid so the accepted
# witness is reproducible bit for bit.
_SCALE_GRID = tuple(k / 1000.0 for k in range(1000, -1001, -1) if k != 0)


def holistic_witness(
    cm: CompositeModel, base_product: np.ndarray, tol: float = 1e-9
) -> tuple[np.ndarray | None, Report]:
    """Displace a product state along the holistic subspace into a witness.

    The direction is the normalized holistic component of the first
    composite state generator that has one (the instances place their
    canonical correlated state first among the non-product generators). The
    scaling is the largest grid value t in [-1, 1] for which base + t * h is
    a valid state. The report then asserts that the witness has the same
    local statistics and the same marginals as the base, passes the
    operational-independence test, and is not a product. When no grid
    scaling yields a valid state, the failure is reported rather than
    raised.
    """
    base = np.asarray(base_product)
    hol = holistic_subspace(cm)
    if hol.dim == 0:
        raise ValueError("holistic subspace is empty; the instance is locally tomographic")
    if not cm.is_valid_state(base, tol):
        raise ValueError("base state is invalid")
    if product_residual(base, cm.side_dims) > max(tol, 1e-9):
        raise ValueError("base state is not a product state")

    direction: np.ndarray | None = None
    for gen in cm.state_generators:
        component = hol.project_coords(cm.to_coords(gen))
        norm = float(np.linalg.norm(component))
        if norm > 1e-8:
            direction = cm.from_coords(component / norm)
            break
    if direction is None:
        raise ValueError("no composite state generator carries a holistic component")

    witness: np.ndarray | None = None
    scale = 0.0
    for t in _SCALE_GRID:
        candidate = base + t * direction
        if cm.is_valid_state(candidate, tol):
            witness = candidate
            scale = t
            break

    checks: list[CheckResult] = []
    if witness is None:
        checks.append(CheckResult("witness-found", False, 1.0))
        return None, Report("holistic-witness", checks, tol=tol)
    checks.append(CheckResult("witness-found", True, 0.0, witness=scale))

    trace_res = abs(complex(np.trace(witness)) - 1.0)
    checks.append(CheckResult("unit-normalization", trace_res <= tol, float(trace_res)))

    negativity = max(0.0, -float(np.linalg.eigvalsh(witness)[0]))
    checks.append(CheckResult("positive-semidefinite", negativity <= tol, negativity))

    stat_res = 0.0
    for ea, eb in cm.effect_pairs():
        val = abs(float(np.trace(np.kron(ea, eb).conj().T @ (witness - base)).real))
        stat_res = max(stat_res, val)
    checks.append(CheckResult("local-statistics-match-base", stat_res <= tol, stat_res))

    wa, wb = cm.marginals(witness)
    ba, bb = cm.marginals(base)
    marg_res = max(frobenius(wa - ba), frobenius(wb - bb))
    checks.append(CheckResult("marginals-match-base", marg_res <= tol, marg_res))

    oi_res, _ = operational_independence_residual(
        witness, cm.side_dims, cm.sys_a.effect_generators, cm.sys_b.effect_generators
    )
    checks.append(CheckResult("operational-independence", oi_res <= tol, oi_res))

    prod_res = product_residual(witness, cm.side_dims)
    checks.append(CheckResult("not-product", prod_res > tol, prod_res))

    return witness, Report("holistic-witness", checks, tol=tol)


def _qubit_projectors(symbols: Sequence[np.ndarray]) -> list[np.ndarray]:
    ident = np.eye(2, dtype=symbols[0].dtype)
    out = []
    for s in symbols:
        out.append((ident + s) / 2.0)
        out.append((ident - s) / 2.0)
    return out


def _build_complex_pair() -> CompositeModel:
    _, sx, sy, sz = paulis()
    gens = tuple(_qubit_projectors((sx, sy, sz)))
    side = GPTSystem(
        name="complex-qubit",
        basis=tuple(hermitian_basis(2)),
        state_generators=gens,
        effect_generators=gens,
        unit_effect=np.eye(2, dtype=complex),
    )
    products = tuple(
        np.kron(a, b) for a in side.state_generators for b in side.state_generators
    )
    return CompositeModel(
        kind=COMPLEX_QUBIT_PAIR,
        sys_a=side,
        sys_b=side,
        basis=tuple(hermitian_basis(4)),
        state_generators=products,
    )


def _build_real_pair() -> CompositeModel:
    sx = np.array([[0.0, 1.0], [1.0, 0.0]])
    sz = np.array([[1.0, 0.0], [0.0, -1.0]])
    gens = tuple(_qubit_projectors((sx, sz)))
    side = GPTSystem(
        name="real-qubit",
        basis=tuple(symmetric_basis(2)),
        state_generators=gens,
        effect_generators=gens,
        unit_effect=np.eye(2),
    )
    products = [
        np.kron(a, b) for a in side.state_generators for b in side.state_generators
    ]
    _, _, sy, _ = paulis()
    yy = np.kron(sy, sy).real  # entries are real integers
    correlated = (np.eye(4) + yy) / 4.0
    return CompositeModel(
        kind=REAL_QUBIT_PAIR,
        sys_a=side,
        sys_b=side,
        basis=tuple(symmetric_basis(4)),
        state_generators=tuple(products + [correlated]),
    )


def _sector_projector(i: int, j: int, phase: complex) -> np.ndarray:
    """Projector onto (e_i + phase * e_j) / sqrt(2), written with exact halves."""
    out = np.zeros((4, 4), dtype=complex)
    out[i, i] = out[j, j] = 0.5
    out[i, j] = 0.5 * np.conj(phase)
    out[j, i] = 0.5 * phase
    return out


def _build_fermi_pair() -> CompositeModel:
    one_mode = fermion.build_modes(1)
    effects = tuple(
        op.astype(complex) for op in fermion.allowed_effect_basis(one_mode, (0,))
    )
    side = GPTSystem(
        name="fermi-mode",
        basis=effects,  # the two diagonal units are already orthonormal
        state_generators=effects,
        effect_generators=effects,
        unit_effect=np.eye(2, dtype=complex),
    )
    products = [
        np.kron(a, b) for a in side.state_generators for b in side.state_generators
    ]
    _, sx, _, _ = paulis()
    correlated = (np.eye(4, dtype=complex) + np.kron(sx, sx)) / 4.0
    sector_states = [
        _sector_projector(0, 3, 1.0),
        _sector_projector(0, 3, 1.0j),
        _sector_projector(1, 2, 1.0),
        _sector_projector(1, 2, 1.0j),
    ]
    return CompositeModel(
        kind=FERMI_TWO_MODES,
        sys_a=side,
        sys_b=side,
        basis=tuple(_parity_commutant_basis()),
        state_generators=tuple(products + [correlated] + sector_states),
    )


_BUILDERS = {
    COMPLEX_QUBIT_PAIR: _build_complex_pair,
    REAL_QUBIT_PAIR: _build_real_pair,
    FERMI_TWO_MODES: _build_fermi_pair,
}


def build_instance(kind: str) -> CompositeModel:
    """Construct one of the three shipped bipartite instances by name."""
    try:
        builder = _BUILDERS[kind]
    except KeyError:
        raise ValueError(
            f"unknown instance {kind!r}; choose one of {INSTANCE_KINDS}"
        ) from None
    return builder()
