"""Bath specification, complete-positivity check, and covariance evolution.

The bath is parametrized by four n x n matrices: a quadratic Hamiltonian
omega_hat and dissipative coefficient matrices eta_hat (decay), sigma_hat
(pumping) and lambda_hat (anomalous coupling).  The covariance then obeys the
linear flow

    dV/dt = A^dag V + V A + B,

whose drift A and diffusion B are assembled in :func:`drift_diffusion`.  The
generated semigroup is completely positive exactly when the Kossakowski
matrix of :func:`kossakowski` is positive semidefinite.

Index convention for lambda_hat: entry lam[i, j] pairs the i-th lowering
operator on the left of the state with the j-th on the right, so for a single
nonzero entry the two-mode CP bound reads |lam_21|^2 <= eta_22 * sigma_11.
"""

from dataclasses import dataclass, field

import numpy as np

from . import matkit
from .errors import DomainError, NonPhysicalInput, NotCP, Unstable
from .gaussian_state import Covariance, is_physical

# check_cp admits eigenvalues down to -CP_RTOL * ||C|| (spectral norm).
CP_RTOL = 1e-12

# steady_state demands Re(eig A) < -STABILITY_TOL strictly; a marginal mode
# sitting at zero must be reported Unstable, not regularized away.
STABILITY_TOL = 1e-12

_ONES2 = np.ones((2, 2))


def _lock(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=complex, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class BathSpec:
    """Model input: Hamiltonian matrix and the three dissipative matrices.

    omega must be Hermitian positive semidefinite, eta and sigma Hermitian;
    lam is an arbitrary complex matrix of the same shape.
    """

    omega: np.ndarray
    eta: np.ndarray
    sigma: np.ndarray
    lam: np.ndarray

    def __post_init__(self):
        mats = {}
        shape = None
        for name in ("omega", "eta", "sigma", "lam"):
            a = matkit.require_square(matkit.as_matrix(getattr(self, name)))
            if shape is None:
                shape = a.shape
            elif a.shape != shape:
                raise ValueError(f"all bath matrices must share one shape; {name} has {a.shape}")
            mats[name] = a
        for name in ("omega", "eta", "sigma"):
            mats[name] = matkit.require_hermitian(mats[name])
        w, _ = matkit.hermitian_eigensystem(mats["omega"])
        scale = max(float(np.abs(w).max(initial=0.0)), 1e-300)
        if w[0] < -1e-12 * scale:
            raise DomainError(f"omega must be positive semidefinite, min eigenvalue {w[0]:.3e}")
        for name, a in mats.items():
            object.__setattr__(self, name, _lock(a))

    @property
    def n(self) -> int:
        return self.omega.shape[0]


@dataclass(frozen=True)
class DriftDiffusion:
    """Drift A and diffusion B of the covariance flow dV/dt = A^dag V + V A + B."""

    a: np.ndarray
    b: np.ndarray


@dataclass(frozen=True)
class Trajectory:
    """Sampled covariance evolution.  cp_certified records whether the bath
    passed the complete-positivity check when the trajectory was produced."""

    times: np.ndarray
    states: list
    cp_certified: bool = field(default=True)

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        if t.ndim != 1 or len(t) != len(self.states):
            raise ValueError("times and states must have equal length")
        if np.any(np.diff(t) <= 0):
            raise ValueError("times must be strictly increasing")
        object.__setattr__(self, "times", t)


def kossakowski(bath: BathSpec) -> np.ndarray:
    """2n x 2n Kossakowski matrix of the dissipative part.

    With the lambda pairing convention of this module the blocks are
    [[eta, lam*], [lam^T, sigma]]; the dynamics is completely positive iff
    this matrix is positive semidefinite.
    """
    return np.block([[bath.eta, bath.lam.conj()], [bath.lam.T, bath.sigma]])


def check_cp(bath: BathSpec) -> tuple[bool, float]:
    """Complete-positivity verdict and the minimum Kossakowski eigenvalue."""
    w, _ = matkit.hermitian_eigensystem(kossakowski(bath))
    min_eig = float(w[0])
    norm = float(np.abs(w).max(initial=0.0))
    return min_eig >= -CP_RTOL * norm, min_eig


def drift_diffusion(bath: BathSpec) -> DriftDiffusion:
    """Assemble the drift and diffusion matrices from the bath coefficients."""
    lam = bath.lam.T  # generator-side coupling; see module docstring
    lam_s = 0.5 * (lam + lam.T)
    lam_a = 0.5 * (lam - lam.T)
    eta, sig, om = bath.eta, bath.sigma, bath.omega
    a = 0.5 * np.block(
        [
            [sig.conj() - eta + 2j * om, -2.0 * lam_a.conj()],
            [-2.0 * lam_a, sig - eta.conj() - 2j * om.conj()],
        ]
    )
    b = 0.5 * np.block(
        [
            [sig.conj() + eta, -2.0 * lam_s.conj()],
            [-2.0 * lam_s, sig + eta.conj()],
        ]
    )
    return DriftDiffusion(a=a, b=b)


def _propagator_pieces_single(gen: DriftDiffusion, t: float) -> tuple[np.ndarray, np.ndarray]:
    """(e^{tA}, F(t)) with F(t) = int_0^t e^{s A^dag} B e^{s A} ds, from one
    exponential of the augmented block matrix [[-A^dag, B], [0, A]] whose
    top-right block equals e^{-t A^dag} F(t)."""
    m = gen.a.shape[0]
    aug = np.zeros((2 * m, 2 * m), dtype=complex)
    aug[:m, :m] = -gen.a.conj().T
    aug[:m, m:] = gen.b
    aug[m:, m:] = gen.a
    big = matkit.expm(t * aug)
    e_ta = big[m:, m:]
    f = e_ta.conj().T @ big[:m, m:]
    return e_ta, 0.5 * (f + f.conj().T)


# The augmented exponential mixes blocks of size e^{+t||A||} and e^{-t||A||},
# so one call loses the decaying block once t||A|| is large.  Composing exact
# pieces over bounded-norm chunks keeps full precision at any horizon.
_MAX_CHUNK_NORM = 8.0


def _propagator_pieces(gen: DriftDiffusion, t: float) -> tuple[np.ndarray, np.ndarray]:
    """Exact propagator pair (e^{tA}, F(t)) for any t >= 0, composed from
    bounded-norm chunks through the semigroup law."""
    scale = float(np.linalg.norm(gen.a, 2))
    if t * scale <= _MAX_CHUNK_NORM:
        return _propagator_pieces_single(gen, t)
    n_chunks = int(np.ceil(t * scale / _MAX_CHUNK_NORM))
    e_step, f_step = _propagator_pieces_single(gen, t / n_chunks)
    e_ta, f = e_step, f_step
    for _ in range(n_chunks - 1):
        f = e_step.conj().T @ f @ e_step + f_step
        e_ta = e_ta @ e_step
    return e_ta, 0.5 * (f + f.conj().T)


def _require_propagatable(v0: Covariance, bath: BathSpec, allow_non_cp: bool) -> None:
    if v0.n != bath.n:
        raise ValueError(f"state has {v0.n} modes but bath has {bath.n}")
    physical, min_eig = is_physical(v0)
    if not physical:
        raise NonPhysicalInput(f"initial covariance violates positivity, min eigenvalue {min_eig:.3e}")
    if not allow_non_cp:
        ok, min_c = check_cp(bath)
        if not ok:
            raise NotCP(
                f"Kossakowski matrix has negative eigenvalue {min_c:.3e}; "
                "pass allow_non_cp=True to propagate anyway"
            )


def propagate_exact(v0: Covariance, bath: BathSpec, t: float, *, allow_non_cp: bool = False) -> Covariance:
    """Evolve the covariance for time t:

        V(t) = e^{t A^dag} V(0) e^{t A} + int_0^t e^{s A^dag} B e^{s A} ds,

    with the integral evaluated exactly through an augmented matrix
    exponential (no quadrature error, semigroup law holds to roundoff).
    """
    if t < 0:
        raise ValueError("t must be >= 0")
    _require_propagatable(v0, bath, allow_non_cp)
    gen = drift_diffusion(bath)
    e_ta, f = _propagator_pieces(gen, t)
    v = e_ta.conj().T @ v0.v @ e_ta + f
    return Covariance(v, v0.n)


def propagate_steps(
    v0: Covariance, bath: BathSpec, t_max: float, dt: float, *, allow_non_cp: bool = False
) -> Trajectory:
    """Sample the evolution on the grid 0, dt, 2*dt, ..., t_max.

    Each sample is produced from the previous one with the exact single-step
    propagator, so stepping introduces no error beyond roundoff.  A shorter
    final step is taken when dt does not divide t_max.
    """
    if dt <= 0:
        raise ValueError("dt must be > 0")
    if t_max < 0:
        raise ValueError("t_max must be >= 0")
    _require_propagatable(v0, bath, allow_non_cp)
    certified = check_cp(bath)[0]
    gen = drift_diffusion(bath)

    times = [0.0]
    while times[-1] < t_max - 1e-12 * max(t_max, 1.0):
        times.append(min(times[-1] + dt, t_max))
    states = [v0]
    e_ta, f = _propagator_pieces(gen, dt)
    for k in range(1, len(times)):
        step = times[k] - times[k - 1]
        if abs(step - dt) > 1e-12 * max(dt, 1.0):
            e_step, f_step = _propagator_pieces(gen, step)
        else:
            e_step, f_step = e_ta, f
        v = e_step.conj().T @ states[-1].v @ e_step + f_step
        states.append(Covariance(v, v0.n))
    if certified:
        for state in states:
            ok, min_eig = is_physical(state, tol=1e-8)
            if not ok:
                raise NonPhysicalInput(
                    f"CP evolution produced a non-physical sample (min eigenvalue {min_eig:.3e})"
                )
    return Trajectory(times=np.asarray(times), states=states, cp_certified=certified)


def steady_state(bath: BathSpec) -> Covariance:
    """Unique stationary covariance A^dag V + V A + B = 0 of a CP bath whose
    drift is strictly stable.  Raises Unstable when any drift eigenvalue has
    real part >= -1e-12 (no, or no unique, equilibrium)."""
    ok, min_c = check_cp(bath)
    if not ok:
        raise NotCP(f"Kossakowski matrix has negative eigenvalue {min_c:.3e}")
    gen = drift_diffusion(bath)
    re_max = float(np.linalg.eigvals(gen.a).real.max())
    if re_max >= -STABILITY_TOL:
        raise Unstable(
            f"drift has eigenvalue with Re = {re_max:.3e} >= -{STABILITY_TOL:.0e}; "
            "no unique asymptotic state"
        )
    x = matkit.solve_sylvester(gen.a.conj().T, gen.a, gen.b)
    return Covariance(0.5 * (x + x.conj().T), bath.n)


def collective_bath(eta: float, sigma: float, omega: float, lam: complex) -> BathSpec:
    """Two-mode bath in the rank-one collective pattern: every coefficient
    matrix proportional to [[1, 1], [1, 1]].

    Only the symmetric mode A = (a_1 + a_2)/sqrt(2) is damped; the
    antisymmetric mode decouples.  The Hamiltonian is scaled so that the
    symmetric mode sees exactly omega * A^dag A, which keeps the scalar
    steady-state formulas of collective_steady_moments() in the same
    parameters.
    """
    return BathSpec(
        omega=0.5 * float(omega) * _ONES2,
        eta=float(eta) * _ONES2,
        sigma=float(sigma) * _ONES2,
        lam=complex(lam) * _ONES2,
    )


def collective_sector_bath(eta: float, sigma: float, omega: float, lam: complex) -> BathSpec:
    """Single-mode restriction of the collective bath to its damped mode.

    The scalar flow is d beta/dt = -2(eta - sigma)(beta - beta_inf) and
    d alpha/dt = -2(eta - sigma + i omega)(alpha - alpha_inf).
    """
    return BathSpec(
        omega=np.array([[float(omega)]]),
        eta=np.array([[2.0 * float(eta)]]),
        sigma=np.array([[2.0 * float(sigma)]]),
        lam=np.array([[2.0 * complex(lam)]]),
    )


def collective_steady_moments(eta: float, sigma: float, omega: float, lam: complex) -> tuple[complex, float]:
    """Closed-form asymptotic moments of the damped collective mode:

        alpha_inf = conj(lam) (sigma - eta + i omega) / ((eta - sigma)^2 + omega^2)
        beta_inf  = eta / (eta - sigma)

    Requires eta > sigma; otherwise no equilibrium exists.
    """
    if not eta > sigma:
        raise Unstable(f"equilibrium requires eta > sigma, got eta={eta}, sigma={sigma}")
    denom = (eta - sigma) ** 2 + omega**2
    alpha_inf = np.conj(lam) * (sigma - eta + 1j * omega) / denom
    beta_inf = eta / (eta - sigma)
    return complex(alpha_inf), float(beta_inf)
