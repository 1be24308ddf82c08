"""Dense linear algebra for operators on small Hilbert spaces.

Operators are plain numpy arrays and the scalar field travels with the
dtype (real floating versus complex floating). Every function here is pure:
inputs are never mutated and returned arrays are freshly allocated, so
values are safe to share across threads.

Conventions fixed once for the whole package: row-major storage in the
computational basis with |0...0> first, subsystem 0 as the leftmost
Kronecker factor, and the Hilbert-Schmidt inner product <a, b> = tr(a^H b)
on operator spaces.
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "PAULI_LABELS",
    "Effect",
    "EffectBasis",
    "QuantumState",
    "commutator_norm",
    "dagger",
    "field_kind",
    "frobenius",
    "herm_eigen",
    "hs_inner",
    "is_density",
    "is_effect",
    "is_hermitian",
    "kron",
    "matrix_from_json",
    "matrix_to_json",
    "partial_trace",
    "partial_transpose",
    "pauli_basis",
    "paulis",
    "project_to_state",
]

PAULI_LABELS = ("I", "X", "Y", "Z")


def paulis() -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Identity and the three Pauli matrices, complex dtype."""
    ident = np.eye(2, dtype=complex)
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sy = np.array([[0, -1j], [1j, 0]], dtype=complex)
    sz = np.array([[1, 0], [0, -1]], dtype=complex)
    return ident, sx, sy, sz


def field_kind(m: np.ndarray) -> str:
    """Scalar field of an array: ``"complex"`` or ``"real"``."""
    return "complex" if np.iscomplexobj(m) else "real"


def dagger(m: np.ndarray) -> np.ndarray:
    return np.asarray(m).conj().T.copy()


def hs_inner(a: np.ndarray, b: np.ndarray) -> complex:
    """Hilbert-Schmidt inner product tr(a^H b)."""
    return complex(np.trace(np.asarray(a).conj().T @ np.asarray(b)))


def frobenius(m: np.ndarray) -> float:
    return float(np.linalg.norm(np.asarray(m)))


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with ``a`` acting on the leftmost subsystem.

    Both factors must live over the same scalar field; mixing a real and a
    complex operator is rejected rather than silently promoted.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    if a.ndim != 2 or b.ndim != 2:
        raise ValueError("kron expects two matrices")
    if field_kind(a) != field_kind(b):
        raise ValueError(
            f"kron requires matching scalar fields, got {field_kind(a)} and {field_kind(b)}"
        )
    return np.kron(a, b)


def is_hermitian(m: np.ndarray, tol: float = 1e-9) -> bool:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    return bool(np.max(np.abs(m - m.conj().T)) <= tol)


def is_density(m: np.ndarray, tol: float = 1e-9) -> bool:
    """True iff ``m`` is Hermitian, positive semidefinite, and unit trace."""
    m = np.asarray(m)
    if not is_hermitian(m, tol):
        return False
    if abs(complex(np.trace(m)) - 1.0) > tol:
        return False
    return bool(np.linalg.eigvalsh(m)[0] >= -tol)


def is_effect(m: np.ndarray, tol: float = 1e-9) -> bool:
    """True iff ``m`` is Hermitian with spectrum inside [-tol, 1 + tol]."""
    m = np.asarray(m)
    if not is_hermitian(m, tol):
        return False
    eigs = np.linalg.eigvalsh(m)
    return bool(eigs[0] >= -tol and eigs[-1] <= 1.0 + tol)


def herm_eigen(m: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Ascending eigenvalues of a Hermitian matrix.

    The eigendecomposition is verified by reconstruction before the
    eigenvalues are returned.
    """
    m = np.asarray(m)
    if not is_hermitian(m, tol):
        raise ValueError("herm_eigen requires a Hermitian matrix")
    vals, vecs = np.linalg.eigh(m)
    recon = (vecs * vals) @ vecs.conj().T
    if frobenius(recon - m) > tol:
        raise RuntimeError("eigendecomposition failed to reconstruct the input")
    return vals


def commutator_norm(a: np.ndarray, b: np.ndarray) -> float:
    """Frobenius norm of the commutator ab - ba."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape or a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("commutator_norm expects two square matrices of equal size")
    return frobenius(a @ b - b @ a)


def _check_dims(op: np.ndarray, dims: Sequence[int]) -> tuple[int, ...]:
    dims_t = tuple(int(d) for d in dims)
    if not dims_t or any(d <= 0 for d in dims_t):
        raise ValueError("subsystem dimensions must be positive")
    side = int(np.prod(dims_t))
    if op.ndim != 2 or op.shape != (side, side):
        raise ValueError(
            f"operator of shape {op.shape} does not match subsystem dimensions {dims_t}"
        )
    return dims_t


def partial_trace(
    op: np.ndarray, dims: Sequence[int], keep: int | Iterable[int]
) -> np.ndarray:
    """Trace out every subsystem not listed in ``keep``.

    ``dims`` lists the subsystem dimensions left to right; ``keep`` is a
    single index or an iterable of indices. The result acts on the kept
    subsystems in their original order and has the same trace as ``op``.
    """
    op = np.asarray(op)
    dims_t = _check_dims(op, dims)
    n = len(dims_t)
    if isinstance(keep, (int, np.integer)):
        keep_t: tuple[int, ...] = (int(keep),)
    else:
        keep_t = tuple(sorted({int(k) for k in keep}))
    if not keep_t or any(k < 0 or k >= n for k in keep_t):
        raise ValueError(f"keep indices {keep_t} out of range for {n} subsystems")
    tensor = op.reshape(dims_t + dims_t)
    remaining = n
    # Descending order keeps the axis positions of the untouched subsystems.
    for ax in sorted(set(range(n)) - set(keep_t), reverse=True):
        tensor = np.trace(tensor, axis1=ax, axis2=ax + remaining)
        remaining -= 1
    side = int(np.prod([dims_t[k] for k in keep_t]))
    return tensor.reshape(side, side)


def partial_transpose(op: np.ndarray, dims: Sequence[int], sys: int = 1) -> np.ndarray:
    """Transpose one subsystem of a bipartite operator."""
    op = np.asarray(op)
    dims_t = _check_dims(op, dims)
    if len(dims_t) != 2:
        raise ValueError("partial_transpose expects a bipartite operator")
    if sys not in (0, 1):
        raise ValueError("sys must be 0 or 1")
    tensor = op.reshape(dims_t + dims_t)
    if sys == 0:
        tensor = tensor.transpose(2, 1, 0, 3)
    else:
        tensor = tensor.transpose(0, 3, 2, 1)
    side = dims_t[0] * dims_t[1]
    return tensor.reshape(side, side)


def pauli_basis(n_qubits: int = 1) -> "EffectBasis":
    """Tensor products of {I, X, Y, Z}, lexicographic in the factor labels.

    Spans the full Hermitian operator space of ``n_qubits`` qubits; used as
    the unrestricted comparison basis in independence tests.
    """
    if n_qubits < 1:
        raise ValueError("n_qubits must be at least 1")
    singles = paulis()
    ops: list[np.ndarray] = list(singles)
    for _ in range(n_qubits - 1):
        ops = [np.kron(a, s) for a in ops for s in singles]
    return EffectBasis(tuple(ops), label=f"pauli-{n_qubits}")


def matrix_to_json(m: np.ndarray) -> dict:
    """Encode a matrix as ``{"rows", "cols", "field", "data"}``.

    ``data`` is row-major with one ``[re, im]`` pair per entry; the imaginary
    parts are written (as zeros) for real matrices too, so the layout never
    depends on the field.
    """
    arr = np.asarray(m)
    if arr.ndim != 2:
        raise ValueError("matrix_to_json expects a matrix")
    rows, cols = arr.shape
    data = [[float(np.real(v)), float(np.imag(v))] for v in arr.reshape(-1)]
    return {"rows": int(rows), "cols": int(cols), "field": field_kind(arr), "data": data}


def matrix_from_json(obj: dict) -> np.ndarray:
    """Inverse of :func:`matrix_to_json`; bit-exact for finite entries."""
    try:
        rows = int(obj["rows"])
        cols = int(obj["cols"])
        field = obj["field"]
        data = obj["data"]
    except (KeyError, TypeError) as exc:
        raise ValueError("malformed matrix object") from exc
    if rows <= 0 or cols <= 0:
        raise ValueError("matrix dimensions must be positive")
    if field not in ("real", "complex"):
        raise ValueError(f"unknown field tag {field!r}")
    if len(data) != rows * cols:
        raise ValueError("data length does not match rows * cols")
    re = np.array([float(pair[0]) for pair in data])
    im = np.array([float(pair[1]) for pair in data])
    if field == "real":
        if np.any(im != 0.0):
            raise ValueError("real matrices must have zero imaginary parts")
        return re.reshape(rows, cols)
    return (re + 1j * im).reshape(rows, cols)


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class QuantumState:
    """Positive semidefinite unit-trace operator with subsystem metadata."""

    op: np.ndarray
    dims: tuple[int, ...]
    tol: InitVar[float] = 1e-9

    def __post_init__(self, tol: float) -> None:
        op = np.array(self.op, dtype=complex)
        dims_t = _check_dims(op, self.dims)
        if not is_hermitian(op, tol):
            raise ValueError("state operator is not Hermitian")
        eigs = np.linalg.eigvalsh(op)
        if eigs[0] < -tol:
            raise ValueError(f"state operator has negative eigenvalue {eigs[0]}")
        trace = complex(np.trace(op))
        if abs(trace - 1.0) > tol:
            raise ValueError(f"state operator has trace {trace}, expected 1")
        object.__setattr__(self, "op", _freeze(op))
        object.__setattr__(self, "dims", dims_t)

    @property
    def side(self) -> int:
        return self.op.shape[0]

    def marginal(self, keep: int) -> "QuantumState":
        """Reduced state on one subsystem."""
        reduced = partial_trace(self.op, self.dims, keep)
        return QuantumState(reduced, (self.dims[keep],))


@dataclass(frozen=True, eq=False)
class Effect:
    """Hermitian operator with spectrum inside [0, 1] (up to tolerance)."""

    op: np.ndarray
    tol: InitVar[float] = 1e-9

    def __post_init__(self, tol: float) -> None:
        op = np.array(self.op)
        if not is_effect(op, tol):
            raise ValueError("operator is not a valid effect")
        object.__setattr__(self, "op", _freeze(op))


@dataclass(frozen=True, eq=False)
class EffectBasis:
    """Hermitian operators spanning an allowed local effect space.

    Basis elements need not be effects themselves; by linearity, checking a
    spanning set is as strong as checking the full effect cone.
    """

    ops: tuple[np.ndarray, ...]
    label: str = ""

    def __post_init__(self) -> None:
        frozen = []
        for op in self.ops:
            arr = np.array(op)
            if not is_hermitian(arr, 1e-12):
                raise ValueError("effect basis elements must be Hermitian")
            frozen.append(_freeze(arr))
        object.__setattr__(self, "ops", tuple(frozen))

    def __len__(self) -> int:
        return len(self.ops)

    def __iter__(self):
        return iter(self.ops)

    def __getitem__(self, idx: int) -> np.ndarray:
        return self.ops[idx]


def project_to_state(op: np.ndarray, dims: Sequence[int], tol: float = 1e-9) -> QuantumState:
    """Nearest valid state: symmetrize, clip negative eigenvalues, renormalize.

    Used to push perturbed operators back inside the state set before they
    are fed to predicates that demand valid inputs.
    """
    op = np.asarray(op, dtype=complex)
    dims_t = _check_dims(op, dims)
    herm = (op + op.conj().T) / 2.0
    vals, vecs = np.linalg.eigh(herm)
    vals = np.clip(vals, 0.0, None)
    total = float(vals.sum())
    if total <= tol:
        raise ValueError("operator has no positive part to normalize")
    clipped = (vecs * (vals / total)) @ vecs.conj().T
    return QuantumState(clipped, dims_t, tol=tol)
