"""Brute-force verifier in a truncated two-mode number basis.

Everything the covariance modules compute has an independent counterpart
here: the density matrix is evolved under the exact generator built from
truncated ladder operators, moments are read off by tracing, and
entanglement is measured as the negativity of the partially transposed
density matrix.  Agreement between the two routes is the package's main
correctness check; this module therefore never calls the covariance
propagator.

A hard-truncated Fock space cannot hold a Gaussian state exactly, so results
are only trusted while the population of the top number level stays below
TRUNCATION_TOL.
"""

from dataclasses import dataclass

import numpy as np
import scipy.sparse

from . import matkit
from .dynamics import BathSpec, kossakowski
from .errors import (
    CutoffTooSmall,
    NotNormalizable,
    NumericalFailure,
    TruncationLeak,
    WrongModeCount,
)
from .gaussian_state import CovarianceBlocks

TRUNCATION_TOL = 1e-4
TRACE_TOL = 1e-8
DEFAULT_DT = 1e-3


def lowering_operators(cutoff: int) -> tuple[np.ndarray, np.ndarray]:
    """Dense truncated lowering operators (a_1, a_2) on the two-mode space
    with per-mode occupation 0..cutoff."""
    if cutoff < 2:
        raise CutoffTooSmall(f"cutoff must be >= 2, got {cutoff}")
    q = cutoff + 1
    a = np.zeros((q, q), dtype=complex)
    a[np.arange(q - 1), np.arange(1, q)] = np.sqrt(np.arange(1, q))
    eye = np.eye(q, dtype=complex)
    return np.kron(a, eye), np.kron(eye, a)


@dataclass(frozen=True)
class FockState:
    """Truncated two-mode density matrix, indexed by |n1, n2>."""

    rho: np.ndarray
    cutoff: int

    def __post_init__(self):
        r = matkit.require_square(matkit.as_matrix(self.rho))
        q = self.cutoff + 1
        if r.shape[0] != q * q:
            raise ValueError(f"rho must be {q * q}x{q * q} for cutoff {self.cutoff}, got {r.shape}")
        trace = complex(np.trace(r))
        if abs(trace - 1.0) > 1e-10:
            raise ValueError(f"rho must have unit trace, got {trace}")
        r = matkit.require_hermitian(r, rtol=1e-10)
        r = np.array(r, copy=True)
        r.setflags(write=False)
        object.__setattr__(self, "rho", r)

    def min_eigenvalue(self) -> float:
        w, _ = matkit.hermitian_eigensystem(self.rho)
        return float(w[0])


def vacuum_state(cutoff: int) -> FockState:
    q = cutoff + 1
    rho = np.zeros((q * q, q * q), dtype=complex)
    rho[0, 0] = 1.0
    return FockState(rho, cutoff)


def thermal_state(mean_occupations, cutoff: int) -> FockState:
    """Product of truncated thermal modes (geometric number distributions,
    renormalized on the truncated space)."""
    occ = np.asarray(mean_occupations, dtype=float)
    if occ.shape != (2,):
        raise WrongModeCount(f"expected 2 occupations, got shape {occ.shape}")
    q = cutoff + 1
    diags = []
    for nbar in occ:
        if nbar < 0:
            raise ValueError(f"occupations must be >= 0, got {nbar}")
        if nbar == 0:
            p = np.zeros(q)
            p[0] = 1.0
        else:
            p = (nbar / (1.0 + nbar)) ** np.arange(q)
            p /= p.sum()
        diags.append(p)
    rho = np.diag(np.kron(diags[0], diags[1])).astype(complex)
    return FockState(rho, cutoff)


def _pure_mode_amplitudes(omega: complex, cutoff: int) -> np.ndarray:
    """Number-basis amplitudes of the single-mode Gaussian pure state with
    squeezing parameter Omega: psi_{2k} proportional to
    (Omega/2)^k sqrt((2k)!) / k!, normalized on the truncated space."""
    if abs(omega) >= 1.0:
        raise NotNormalizable(f"|Omega| must be < 1, got {abs(omega)}")
    q = cutoff + 1
    psi = np.zeros(q, dtype=complex)
    psi[0] = 1.0
    amp = 1.0 + 0j
    k = 0
    while 2 * k + 2 < q:
        nxt = 2 * k + 2
        amp = amp * (omega / 2.0) * np.sqrt(nxt * (nxt - 1)) / (k + 1)
        psi[nxt] = amp
        k += 1
    return psi / np.linalg.norm(psi)


def pure_product_state(omega1: complex, omega2: complex, cutoff: int) -> FockState:
    """Density matrix of the two-mode pure product state with squeezing
    parameters (Omega_1, Omega_2); matches gaussian_state.pure_product."""
    if cutoff < 2:
        raise CutoffTooSmall(f"cutoff must be >= 2, got {cutoff}")
    psi = np.kron(_pure_mode_amplitudes(omega1, cutoff), _pure_mode_amplitudes(omega2, cutoff))
    return FockState(np.outer(psi, psi.conj()), cutoff)


class LindbladGenerator:
    """Exact master-equation generator on the truncated space.

    Acts as rho_dot = -i[H, rho] + sum_k c_k (L_k rho L_k^dag
    - {L_k^dag L_k, rho}/2), where the jump operators diagonalize the
    Kossakowski matrix (c_k may be negative for non-CP baths; the
    construction is the same).
    """

    def __init__(self, bath: BathSpec, cutoff: int):
        if bath.n != 2:
            raise WrongModeCount(f"the oracle is built for 2 modes, got {bath.n}")
        a1, a2 = lowering_operators(cutoff)
        ladder = [a1, a2, a1.conj().T, a2.conj().T]
        self.cutoff = cutoff
        self.dim = a1.shape[0]

        h = np.zeros_like(a1)
        for i in range(2):
            for j in range(2):
                h += bath.omega[i, j] * ladder[2 + i] @ ladder[j]

        c = kossakowski(bath)
        w, u = matkit.hermitian_eigensystem(c)
        scale = float(np.abs(w).max(initial=0.0))
        self.rates = []
        self.jumps = []
        for k in range(4):
            if scale == 0.0 or abs(w[k]) <= 1e-14 * scale:
                continue
            l_k = np.zeros_like(a1)
            for nu in range(4):
                l_k += np.conj(u[nu, k]) * ladder[nu]
            self.rates.append(float(w[k]))
            self.jumps.append(np.ascontiguousarray(l_k))

        k_op = np.zeros_like(a1)
        for rate, l_k in zip(self.rates, self.jumps):
            k_op += rate * (l_k.conj().T @ l_k)
        # Non-Hermitian drift: rho_dot = G rho + rho G^dag + jump terms.
        self.drift = -1j * h - 0.5 * k_op
        # Hot-path precomputes.  The generator matrices are narrow-banded
        # combinations of ladder operators (< 2% fill), and left-multiplying
        # a dense matrix by a sparse one is the only fast sparse product, so
        # the Hermitian fast path below is arranged to use nothing else.
        self._drift_sp = scipy.sparse.csr_matrix(self.drift)
        self._drift_dag = self.drift.conj().T.copy()
        self._jumps_sp = [scipy.sparse.csr_matrix(l_k) for l_k in self.jumps]
        self._scaled_jumps_sp = [
            scipy.sparse.csr_matrix(rate * l_k) for rate, l_k in zip(self.rates, self.jumps)
        ]
        self._jump_dags = [l_k.conj().T.copy() for l_k in self.jumps]

    def _apply_hermitian(self, rho: np.ndarray) -> np.ndarray:
        """Generator action for Hermitian rho: with M = G rho + (1/2) sum_k
        c_k L_k (L_k rho)^dag, the result is M + M^dag (each jump sandwich
        c L rho L^dag equals c L (L rho)^dag and is itself Hermitian)."""
        m = self._drift_sp @ rho
        for l_sp, l_scaled_sp in zip(self._jumps_sp, self._scaled_jumps_sp):
            p = l_sp @ rho
            m += 0.5 * (l_scaled_sp @ p.conj().T)
        return m + m.conj().T

    def apply(self, rho: np.ndarray) -> np.ndarray:
        """Generator action on a matrix (Hermitian or not)."""
        out = self._drift_sp @ rho
        out += rho @ self._drift_dag
        for l_scaled_sp, l_dag in zip(self._scaled_jumps_sp, self._jump_dags):
            out += (l_scaled_sp @ rho) @ l_dag
        return out

    def matvec(self, vec: np.ndarray) -> np.ndarray:
        """Action on a row-major vectorized density matrix."""
        d = self.dim
        return self.apply(np.asarray(vec, dtype=complex).reshape(d, d)).reshape(-1)

    def to_superoperator(self) -> np.ndarray:
        """Dense matrix acting on the row-major vectorized rho.  Only
        sensible at small cutoffs; guarded to keep memory bounded."""
        d = self.dim
        if d > 64:
            raise MemoryError(f"dense superoperator would be {d * d}x{d * d}; use matvec instead")
        eye = np.eye(d, dtype=complex)
        sup = np.kron(self.drift, eye) + np.kron(eye, self.drift.conj())
        for rate, l_k in zip(self.rates, self.jumps):
            sup += rate * np.kron(l_k, l_k.conj())
        return sup


def build_generator(bath: BathSpec, cutoff: int) -> LindbladGenerator:
    if cutoff < 2:
        raise CutoffTooSmall(f"cutoff must be >= 2, got {cutoff}")
    return LindbladGenerator(bath, cutoff)


def top_level_population(state: FockState) -> float:
    """Total population of number levels with n1 = cutoff or n2 = cutoff."""
    q = state.cutoff + 1
    diag = np.real(np.diagonal(state.rho)).reshape(q, q)
    return float(diag[q - 1, :].sum() + diag[:, q - 1].sum() - diag[q - 1, q - 1])


def evolve_rho(
    rho0: FockState, bath: BathSpec, t: float, dt: float = DEFAULT_DT
) -> FockState:
    """Fixed-step fourth-order integration of the master equation.

    Hermiticity is enforced by symmetrization after every step; the trace is
    checked at the end (the generator is trace-free, so drift beyond roundoff
    signals an integrator failure).  Raises TruncationLeak when the top
    number level accumulates more than TRUNCATION_TOL population.
    """
    if t < 0:
        raise ValueError("t must be >= 0")
    if dt <= 0:
        raise ValueError("dt must be > 0")
    gen = build_generator(bath, rho0.cutoff)
    rho = np.array(rho0.rho, dtype=complex, copy=True)
    remaining = float(t)
    while remaining > 1e-15:
        step = min(dt, remaining)
        k1 = gen._apply_hermitian(rho)
        k2 = gen._apply_hermitian(rho + 0.5 * step * k1)
        k3 = gen._apply_hermitian(rho + 0.5 * step * k2)
        k4 = gen._apply_hermitian(rho + step * k3)
        rho += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        rho = 0.5 * (rho + rho.conj().T)
        remaining -= step
    trace = complex(np.trace(rho))
    if abs(trace - 1.0) > TRACE_TOL:
        raise NumericalFailure(f"trace drifted to {trace}")
    out = FockState(rho / trace.real, rho0.cutoff)
    leak = top_level_population(out)
    if leak > TRUNCATION_TOL:
        raise TruncationLeak(
            f"top number level holds {leak:.3e} > {TRUNCATION_TOL:.0e}; "
            "increase the cutoff or shorten the evolution"
        )
    return out


def extract_moments(state: FockState) -> CovarianceBlocks:
    """Second moments alpha[i, j] = Tr[a_i a_j rho], beta[i, j] = Tr[a_i a_j^dag rho]."""
    a1, a2 = lowering_operators(state.cutoff)
    ops = (a1, a2)
    lowered = [op @ state.rho for op in ops]
    raised = [op.conj().T @ state.rho for op in ops]
    alpha = np.zeros((2, 2), dtype=complex)
    beta = np.zeros((2, 2), dtype=complex)
    for i in range(2):
        a_i_t = ops[i].T
        for j in range(2):
            alpha[i, j] = np.sum(a_i_t * lowered[j])
            beta[i, j] = np.sum(a_i_t * raised[j])
    alpha = 0.5 * (alpha + alpha.T)
    return CovarianceBlocks(alpha=alpha, beta=beta)


def negativity(state: FockState) -> float:
    """Sum of |negative eigenvalues| of the partial transpose over mode 1."""
    q = state.cutoff + 1
    pt = state.rho.reshape(q, q, q, q).transpose(2, 1, 0, 3).reshape(q * q, q * q)
    w = np.linalg.eigvalsh(pt)
    return float(np.abs(w[w < 0]).sum())
