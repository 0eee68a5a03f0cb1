"""Density matrices, pure states, POVMs and outcome probabilities.

States are ordinary numpy arrays: a density matrix is a ``(d, d)`` complex
array and a pure state is a length-``d`` complex vector. The ``as_*``
functions validate and normalise inputs; everything else accepts whatever
they accept.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from os import PathLike
from typing import Sequence

import numpy as np

from .errors import DimensionMismatchError, InvalidStateError
from .matcore import as_matrix, asymmetry, eigvalsh

STATE_TOL = 1e-10
PURE_NORM_TOL = 1e-12
POVM_TOL = 1e-9
PROB_CLAMP_TOL = 1e-12
PROB_SUM_TOL = 1e-9

IDENTITY2 = np.eye(2, dtype=np.complex128)
SIGMA1 = np.array([[0, 1], [1, 0]], dtype=np.complex128)
# Sign convention [[0, i], [-i, 0]]; the opposite of the usual Pauli Y.
SIGMA2 = np.array([[0, 1j], [-1j, 0]], dtype=np.complex128)


def as_density_matrix(rho, tol: float = STATE_TOL) -> np.ndarray:
    """Validate a density matrix: Hermitian, PSD and unit trace within `tol`.

    Returns the exactly Hermitian part of the input.
    """
    try:
        m = as_matrix(rho)
    except ValueError as exc:
        raise InvalidStateError(str(exc)) from None
    if m.shape[0] != m.shape[1]:
        raise InvalidStateError(f"density matrix must be square, got {m.shape}")
    asym = asymmetry(m)
    if asym > tol:
        raise InvalidStateError(
            f"density matrix is not Hermitian (max asymmetry {asym:.3e})")
    m = 0.5 * (m + m.conj().T)
    tr = float(np.trace(m).real)
    if abs(tr - 1.0) > tol:
        raise InvalidStateError(f"density matrix trace is {tr!r}, expected 1")
    lam = float(eigvalsh(m).min())
    if lam < -tol:
        raise InvalidStateError(
            f"density matrix has negative eigenvalue {lam:.3e}")
    return m


def as_state_pair(rho0, rho1) -> tuple[np.ndarray, np.ndarray]:
    """Validate two density matrices of the same dimension."""
    rho0 = as_density_matrix(rho0)
    rho1 = as_density_matrix(rho1)
    if rho0.shape != rho1.shape:
        raise DimensionMismatchError(f"states have shapes {rho0.shape} and {rho1.shape}")
    return rho0, rho1


def as_pure_state(psi, tol: float = PURE_NORM_TOL) -> np.ndarray:
    v = np.asarray(psi, dtype=np.complex128)
    if v.ndim != 1 or v.size == 0:
        raise InvalidStateError(f"pure state must be a non-empty vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise InvalidStateError("pure state has non-finite entries")
    norm = float(np.linalg.norm(v))
    if abs(norm - 1.0) > tol:
        raise InvalidStateError(f"pure state has norm {norm!r}, expected 1")
    return v


def projector_of(psi) -> np.ndarray:
    """Rank-one projector ``|psi><psi|``."""
    v = as_pure_state(psi)
    p = np.outer(v, v.conj())
    return 0.5 * (p + p.conj().T)


def as_prob_vector(p, clamp_tol: float = PROB_CLAMP_TOL,
                   sum_tol: float = PROB_SUM_TOL) -> np.ndarray:
    """Validate a probability vector.

    Entries in ``[-clamp_tol, 0)`` are set to zero. If the sum then misses one
    by at most `sum_tol` the vector is renormalised; a larger miss is an
    error.
    """
    p = np.asarray(p, dtype=np.float64)
    if p.ndim != 1 or p.size == 0:
        raise InvalidStateError(f"probability vector must be 1-D and non-empty, got shape {p.shape}")
    if not np.all(np.isfinite(p)):
        raise InvalidStateError("probability vector has non-finite entries")
    if np.any(p < -clamp_tol):
        raise InvalidStateError(f"negative probability {float(p.min()):.3e}")
    p = np.where(p < 0, 0.0, p)
    total = float(p.sum())
    if abs(total - 1.0) > sum_tol:
        raise InvalidStateError(f"probabilities sum to {total!r}, expected 1")
    return p / total


@dataclass(frozen=True, eq=False)
class Povm:
    """A finite measurement: positive operators summing to the identity."""

    outcomes: tuple

    def __post_init__(self):
        ops = tuple(as_matrix(m) for m in self.outcomes)
        if not ops:
            raise InvalidStateError("a POVM needs at least one outcome")
        d = ops[0].shape[0]
        for i, m in enumerate(ops):
            if m.shape != (d, d):
                raise DimensionMismatchError(
                    f"outcome {i} has shape {m.shape}, expected {(d, d)}")
            asym = asymmetry(m)
            if asym > POVM_TOL:
                raise InvalidStateError(f"outcome {i} is not Hermitian (asymmetry {asym:.3e})")
            lam = float(eigvalsh(m, tol=POVM_TOL).min())
            if lam < -POVM_TOL:
                raise InvalidStateError(f"outcome {i} has negative eigenvalue {lam:.3e}")
        dev = float(np.max(np.abs(sum(ops) - np.eye(d))))
        if dev > POVM_TOL:
            raise InvalidStateError(f"outcomes do not sum to the identity (deviation {dev:.3e})")
        object.__setattr__(self, "outcomes", ops)

    @property
    def dim(self) -> int:
        return self.outcomes[0].shape[0]

    def __len__(self) -> int:
        return len(self.outcomes)

    @classmethod
    def from_basis(cls, vectors: np.ndarray) -> "Povm":
        """Projective measurement onto the columns of a unitary matrix."""
        v = np.asarray(vectors, dtype=np.complex128)
        return cls(tuple(np.outer(v[:, i], v[:, i].conj()) for i in range(v.shape[1])))


def outcome_distribution(m: Povm, rho) -> np.ndarray:
    """Outcome probabilities ``Re tr(M_i rho)`` of measuring `rho` with `m`."""
    rho = as_density_matrix(rho)
    if rho.shape[0] != m.dim:
        raise DimensionMismatchError(
            f"state dimension {rho.shape[0]} does not match measurement dimension {m.dim}")
    # tr(M rho) = sum_ij M_ij rho_ji
    tr = np.array([np.sum(op * rho.T) for op in m.outcomes])
    imag = float(np.max(np.abs(tr.imag)))
    if imag > 1e-10:
        raise InvalidStateError(f"outcome probability has imaginary part {imag:.3e}")
    return as_prob_vector(tr.real)


def pauli_pair(a: float, b: float, theta: float) -> tuple[np.ndarray, np.ndarray]:
    """Qubit pair ``(I + a σ1)/2`` and ``(I + b cosθ σ1 + b sinθ σ2)/2``."""
    if abs(a) > 1 or abs(b) > 1:
        raise InvalidStateError(
            f"Bloch lengths must satisfy |a| <= 1 and |b| <= 1, got a={a}, b={b}")
    rho0 = 0.5 * (IDENTITY2 + a * SIGMA1)
    rho1 = 0.5 * (IDENTITY2 + b * np.cos(theta) * SIGMA1 + b * np.sin(theta) * SIGMA2)
    return as_density_matrix(rho0), as_density_matrix(rho1)


BELL_PHI_PLUS = np.array([1, 0, 0, 1], dtype=np.complex128) / np.sqrt(2)


def entanglement_pair() -> tuple[np.ndarray, np.ndarray]:
    """The maximally entangled two-qubit state and its classical mixture.

    ``rho0`` projects onto ``(|00> + |11>)/sqrt(2)``; ``rho1`` is the equal
    mixture of ``|00>`` and ``|11>``. No measurement acting on each qubit
    separately can tell these two apart.
    """
    rho0 = np.zeros((4, 4), dtype=np.complex128)
    rho0[0, 0] = rho0[0, 3] = rho0[3, 0] = rho0[3, 3] = 0.5
    rho1 = np.diag([0.5, 0, 0, 0.5]).astype(np.complex128)
    return rho0, rho1


# -- random states --------------------------------------------------------

def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar unitary from the QR decomposition of a complex Gaussian matrix."""
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph


def random_density_matrix(d: int, rng: np.random.Generator) -> np.ndarray:
    """Full-rank mixed state: uniform simplex spectrum in a Haar-random basis."""
    w = rng.dirichlet(np.ones(d))
    u = random_unitary(d, rng)
    rho = (u * w) @ u.conj().T
    return 0.5 * (rho + rho.conj().T)


def random_pure_state(d: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return z / np.linalg.norm(z)


# -- state files ----------------------------------------------------------

def load_state(path: str | PathLike) -> np.ndarray:
    """Read a density matrix from a JSON state file.

    The document holds ``dim`` (int) and ``re``/``im`` (``dim x dim`` nested
    lists). ``im`` may be omitted for real matrices.
    """
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidStateError(
            f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return state_from_dict(doc, source=str(path))


def state_from_dict(doc: dict, source: str = "<state>") -> np.ndarray:
    if not isinstance(doc, dict) or "dim" not in doc or "re" not in doc:
        raise InvalidStateError(f"{source}: expected an object with fields 'dim', 're', 'im'")
    dim = doc["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise InvalidStateError(f"{source}: 'dim' must be a positive integer, got {dim!r}")
    try:
        re = np.asarray(doc["re"], dtype=np.float64)
        im = np.asarray(doc.get("im", np.zeros((dim, dim))), dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise InvalidStateError(f"{source}: non-numeric matrix entries ({exc})") from None
    for name, arr in (("re", re), ("im", im)):
        if arr.shape != (dim, dim):
            raise InvalidStateError(
                f"{source}: '{name}' has shape {arr.shape}, expected {(dim, dim)}")
    try:
        return as_density_matrix(re + 1j * im)
    except InvalidStateError as exc:
        raise InvalidStateError(f"{source}: {exc}") from None


def state_to_dict(rho) -> dict:
    rho = np.asarray(rho, dtype=np.complex128)
    return {"dim": int(rho.shape[0]), "re": rho.real.tolist(), "im": rho.imag.tolist()}


def save_state(path: str | PathLike, rho) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(state_to_dict(rho), fh, indent=1)
        fh.write("\n")


def basis_povm(d: int) -> Povm:
    return Povm.from_basis(np.eye(d))


def two_outcome_povm(psi: Sequence[complex]) -> Povm:
    """``{|psi><psi|, I - |psi><psi|}``."""
    p = projector_of(psi)
    return Povm((p, np.eye(p.shape[0]) - p))
