"""Fermionic mode systems on a 2**n Fock space.

Mode 0 is the leftmost Kronecker factor and the basis index of an occupation
string (b_0, ..., b_{n-1}) is sum_j b_j * 2**(n-1-j), so |10> of a two-mode
register sits at index 2. Lowering operators carry sign strings over all
lower-indexed modes:

    f_j = Z^(j) (x) sigma_minus (x) I^(n-1-j),      sigma_minus = |0><1|.

This convention makes the anticommutation relations hold to machine
precision by construction and fixes every operator-ordering sign, which is
what :func:`quadrature_sign_check` probes on two modes.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .linops import EffectBasis, QuantumState, commutator_norm, paulis
from .report import CheckResult, Report

__all__ = [
    "ModeSystem",
    "allowed_effect_basis",
    "basis_state",
    "build_modes",
    "check_car",
    "is_ssr_state",
    "occupation_index",
    "quadrature_sign_check",
]

_SIGMA_MINUS = np.array([[0.0, 1.0], [0.0, 0.0]])
_Z = np.array([[1.0, 0.0], [0.0, -1.0]])

MAX_MODES = 10


@dataclass(frozen=True, eq=False)
class ModeSystem:
    """Lowering operators and parity operators for ``n_modes`` fermionic modes."""

    n_modes: int
    lowering: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        ops = []
        for f in self.lowering:
            arr = np.array(f)
            arr.setflags(write=False)
            ops.append(arr)
        object.__setattr__(self, "lowering", tuple(ops))

    @property
    def dim(self) -> int:
        return 2**self.n_modes

    def raising(self, mode: int) -> np.ndarray:
        return self.lowering[mode].conj().T.copy()

    def vacuum(self) -> np.ndarray:
        vac = np.zeros(self.dim)
        vac[0] = 1.0
        return vac

    def parity_op(self, modes: Iterable[int] | None = None) -> np.ndarray:
        """Parity operator of a mode subset (all modes when omitted).

        Diagonal with entry (-1)**(number of occupied subset modes); the
        subset parity is by construction the product of the single-mode
        parities.
        """
        subset = range(self.n_modes) if modes is None else sorted(set(modes))
        signs = np.ones(self.dim)
        idx = np.arange(self.dim)
        for j in subset:
            if j < 0 or j >= self.n_modes:
                raise ValueError(f"mode index {j} out of range")
            bit = (idx >> (self.n_modes - 1 - j)) & 1
            signs = signs * np.where(bit == 1, -1.0, 1.0)
        return np.diag(signs)


def build_modes(n: int) -> ModeSystem:
    """Construct the string-ordered lowering operators for ``n`` modes."""
    if not 1 <= n <= MAX_MODES:
        raise ValueError(f"mode count must be between 1 and {MAX_MODES}, got {n}")
    ops = []
    for j in range(n):
        factors = [_Z] * j + [_SIGMA_MINUS] + [np.eye(2)] * (n - 1 - j)
        op = factors[0]
        for fac in factors[1:]:
            op = np.kron(op, fac)
        ops.append(op)
    return ModeSystem(n, tuple(ops))


def occupation_index(occupations: Sequence[int]) -> int:
    """Basis index of an occupation string, leftmost mode most significant."""
    idx = 0
    for b in occupations:
        if b not in (0, 1):
            raise ValueError("occupations must be 0 or 1")
        idx = (idx << 1) | int(b)
    return idx


def basis_state(occupations: Sequence[int]) -> np.ndarray:
    """Fock basis vector for an occupation string."""
    vec = np.zeros(2 ** len(occupations))
    vec[occupation_index(occupations)] = 1.0
    return vec


def check_car(lowering_ops: Sequence[np.ndarray], tol: float = 1e-12) -> Report:
    """Verify the anticommutation relations of a family of lowering operators.

    Checks {f_i, f_j^+} = delta_ij I and {f_i, f_j} = 0 over all pairs and
    reports the worst residual of each kind together with the offending pair.
    """
    ops = [np.asarray(f) for f in lowering_ops]
    if not ops:
        raise ValueError("at least one lowering operator is required")
    dim = ops[0].shape[0]
    ident = np.eye(dim)
    worst_mixed = (-1.0, (0, 0))
    worst_plain = (-1.0, (0, 0))
    for i, fi in enumerate(ops):
        for j, fj in enumerate(ops):
            mixed = fi @ fj.conj().T + fj.conj().T @ fi
            if i == j:
                mixed = mixed - ident
            res = float(np.linalg.norm(mixed))
            if res > worst_mixed[0]:
                worst_mixed = (res, (i, j))
            plain = fi @ fj + fj @ fi
            res = float(np.linalg.norm(plain))
            if res > worst_plain[0]:
                worst_plain = (res, (i, j))
    checks = [
        CheckResult(
            "lower-raise-anticommutators",
            worst_mixed[0] <= tol,
            worst_mixed[0],
            witness=list(worst_mixed[1]),
        ),
        CheckResult(
            "lower-lower-anticommutators",
            worst_plain[0] <= tol,
            worst_plain[0],
            witness=list(worst_plain[1]),
        ),
    ]
    return Report("car", checks, tol=tol)


def is_ssr_state(
    ms: ModeSystem,
    state: QuantumState,
    modes: Iterable[int] | None = None,
    tol: float = 1e-9,
) -> bool:
    """True iff the state commutes with the parity of the given mode subset."""
    if state.side != ms.dim:
        raise ValueError(
            f"state of side {state.side} does not fit a {ms.n_modes}-mode system"
        )
    return commutator_norm(state.op, ms.parity_op(modes).astype(complex)) <= tol


def _local_parity_signs(n_local: int) -> np.ndarray:
    idx = np.arange(2**n_local)
    pops = np.array([bin(k).count("1") for k in idx])
    return np.where(pops % 2 == 0, 1.0, -1.0)


def allowed_effect_basis(
    ms: ModeSystem, modes: Iterable[int], restricted: bool = True
) -> EffectBasis:
    """Hermitian basis of the local effect space on a mode subset.

    With ``restricted=True`` (the superselected case) the basis spans the
    commutant of the subset parity on the subset's 2**k dimensional factor:
    all operators block diagonal with respect to the even and odd
    local-parity sectors, 2**(2k-1) elements in total. With
    ``restricted=False`` the full Hermitian space is returned (Pauli
    products, 4**k elements) for comparison runs with the superselection
    rule switched off.
    """
    subset = tuple(sorted(set(modes)))
    if not subset:
        raise ValueError("mode subset must be nonempty")
    if subset[0] < 0 or subset[-1] >= ms.n_modes:
        raise ValueError(f"mode subset {subset} out of range")
    k = len(subset)
    d = 2**k

    if not restricted:
        singles = paulis()
        ops: list[np.ndarray] = list(singles)
        for _ in range(k - 1):
            ops = [np.kron(a, s) for a in ops for s in singles]
        return EffectBasis(tuple(ops), label=f"modes={subset} unrestricted")

    signs = _local_parity_signs(k)
    parity = np.diag(signs)
    ops = []
    for i in range(d):
        unit = np.zeros((d, d))
        unit[i, i] = 1.0
        ops.append(unit)
    for sector_sign in (1.0, -1.0):
        sector = [i for i in range(d) if signs[i] == sector_sign]
        for i, j in combinations(sector, 2):
            sym = np.zeros((d, d), dtype=complex)
            sym[i, j] = 1.0
            sym[j, i] = 1.0
            ops.append(sym)
            anti = np.zeros((d, d), dtype=complex)
            anti[i, j] = -1.0j
            anti[j, i] = 1.0j
            ops.append(anti)
    for op in ops:
        if commutator_norm(op.astype(complex), parity.astype(complex)) != 0.0:
            raise RuntimeError("constructed effect does not commute with parity")
    return EffectBasis(tuple(ops), label=f"modes={subset} parity-restricted")


def quadrature_sign_check(ms: ModeSystem) -> Report:
    """Compare string-ordered and factorwise action of a one-mode quadrature.

    On the doubly occupied two-mode state, applying the quadrature
    f_1 + f_1^+ of the second mode through the string-ordered operators gives
    minus the factorwise result: the sign records that the operator acts
    through the occupied first mode.
    """
    if ms.n_modes != 2:
        raise ValueError("quadrature_sign_check is defined for exactly two modes")
    f_a, f_b = ms.lowering
    both = ms.raising(0) @ ms.raising(1) @ ms.vacuum()
    quadrature = f_b + f_b.conj().T
    v1 = quadrature @ both
    target = basis_state((1, 0))
    one = np.array([0.0, 1.0])
    v2 = np.kron(one, (_SIGMA_MINUS + _SIGMA_MINUS.T) @ one)
    checks = [
        CheckResult(
            "string-ordered-action",
            bool(np.array_equal(v1, -target)),
            float(np.max(np.abs(v1 + target))),
        ),
        CheckResult(
            "factorwise-action",
            bool(np.array_equal(v2, target)),
            float(np.max(np.abs(v2 - target))),
        ),
        CheckResult(
            "relative-sign",
            abs(float(np.dot(v1, v2)) + 1.0) <= 1e-12,
            abs(float(np.dot(v1, v2)) + 1.0),
        ),
    ]
    return Report("quadrature-sign", checks, tol=1e-12)
