"""Truncated extended-space matrices and (quasi)energy spectra.

Two closely related real symmetric block-tridiagonal matrices are built here:
the Fourier-truncated matrix of the driven two-level system (harmonic index
n in [-N, N]) and the Fock-truncated matrix of the corresponding quantized
field model (n in [0, N]).  Spectra are converged by increasing N, folded
where appropriate, and scanned for crossings vs avoided crossings.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import (
    IDENTITY,
    DEFAULT_POLICY,
    ModelParams,
    NonConvergent,
    NumericPolicy,
    fold_quasienergy,
    principal_phase,
)
from .propagate import PropagationResult

_QUANTUM_LOW_COUNT = 10


@dataclass(frozen=True)
class TruncatedBlockMatrix:
    """Real symmetric block-tridiagonal matrix with 2x2 spin blocks."""

    half_width: int           # harmonic index range [-N, N] or Fock cutoff N
    entries: np.ndarray       # dense real symmetric matrix
    kind: str                 # "semiclassical_floquet" | "quantum_rabi"
    params: ModelParams
    coupling: float           # drive amplitude A or field coupling g


@dataclass(frozen=True)
class SpectrumResult:
    """Converged central eigenvalues of a truncated matrix."""

    eigenvalues: np.ndarray            # central window (semiclassical) / lowest M (quantum)
    folded_quasienergies: np.ndarray | None  # two values in [-omega/2, omega/2)
    truncation_used: int
    convergence_defect: float
    kind: str


@dataclass(frozen=True)
class CrossingReport:
    """A refined local gap minimum along a parameter sweep."""

    delta: float
    classification: str  # "crossing" | "anti_crossing"
    min_gap: float


@dataclass(frozen=True)
class HiddenSymmetryReport:
    """Degeneracy diagnostics of U(T) at one parameter point."""

    epsilon_over_omega: float
    epsilon_is_integer: bool
    total_phase_gap: float      # |theta_+ - theta_-| reduced mod 2*pi
    identity_distance: float    # ||U(T) - e^{i theta_+} I||_2
    degenerate: bool
    geometric_quantities_unique: bool


def _blocks_to_dense(diagonals: list[np.ndarray], couplings: list[np.ndarray]) -> np.ndarray:
    m = len(diagonals)
    out = np.zeros((2 * m, 2 * m))
    for k, blk in enumerate(diagonals):
        out[2 * k:2 * k + 2, 2 * k:2 * k + 2] = blk
    for k, blk in enumerate(couplings):
        out[2 * k:2 * k + 2, 2 * k + 2:2 * k + 4] = blk
        out[2 * k + 2:2 * k + 4, 2 * k:2 * k + 2] = blk.T
    return out


def build_semiclassical_floquet(p: ModelParams, N: int) -> TruncatedBlockMatrix:
    """Fourier-truncated extended-space matrix of the driven two-level system.

    Basis ordering is (up, n), (down, n) for n = -N..N.  Diagonal blocks are
    [[n*omega - eps/2, -Delta/2], [-Delta/2, n*omega + eps/2]]; neighbouring
    harmonics couple through -A/4 on the up-up chain and +A/4 on the
    down-down chain.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    diagonals = []
    for n in range(-N, N + 1):
        diagonals.append(np.array([
            [n * p.omega - 0.5 * p.epsilon, -0.5 * p.delta],
            [-0.5 * p.delta, n * p.omega + 0.5 * p.epsilon],
        ]))
    coupling = np.diag([-0.25 * p.amplitude, 0.25 * p.amplitude])
    couplings = [coupling] * (2 * N)
    return TruncatedBlockMatrix(
        half_width=N,
        entries=_blocks_to_dense(diagonals, couplings),
        kind="semiclassical_floquet",
        params=p,
        coupling=p.amplitude,
    )


def build_quantum_rabi(g: float, p: ModelParams, N: int) -> TruncatedBlockMatrix:
    """Fock-truncated matrix of the quantized-field two-level model.

    Basis ordering is (up, n), (down, n) for n = 0..N; the photon ladder
    couples through -+(g/4)*sqrt(n+1) with the same spin sign split as the
    driven model.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    diagonals = []
    for n in range(N + 1):
        diagonals.append(np.array([
            [n * p.omega - 0.5 * p.epsilon, -0.5 * p.delta],
            [-0.5 * p.delta, n * p.omega + 0.5 * p.epsilon],
        ]))
    couplings = [np.diag([-0.25 * g * np.sqrt(n + 1.0), 0.25 * g * np.sqrt(n + 1.0)])
                 for n in range(N)]
    return TruncatedBlockMatrix(
        half_width=N,
        entries=_blocks_to_dense(diagonals, couplings),
        kind="quantum_rabi",
        params=p,
        coupling=g,
    )


def _central_eigenvalues(mat: TruncatedBlockMatrix) -> np.ndarray:
    """Trusted part of the spectrum of one truncated matrix.

    For the driven model only eigenvalues within [-omega, omega] of the fold
    centre are kept (the window edges of the truncated ladder are
    contaminated); for the quantized model the lowest few levels are kept.
    """
    vals = np.linalg.eigvalsh(mat.entries)
    if mat.kind == "semiclassical_floquet":
        omega = mat.params.omega
        return vals[np.abs(vals) <= omega]
    return vals[:_QUANTUM_LOW_COUNT]


def _fold_pair(central: np.ndarray, omega: float) -> np.ndarray:
    """Two representative folded quasienergies, q and its partner -q mod omega.

    The one-period evolution has unit determinant, so the second class is
    always the reflection of the first about the fold centre.
    """
    folded = fold_quasienergy(central, omega)
    q1 = float(folded[np.argmin(np.abs(folded))])
    q2 = float(fold_quasienergy(-q1, omega))
    return np.array(sorted([q1, q2]))


def converged_spectrum(build, schedule=None,
                       policy: NumericPolicy = DEFAULT_POLICY) -> SpectrumResult:
    """Increase the truncation until the trusted eigenvalues stop moving.

    ``build`` maps an integer N to a :class:`TruncatedBlockMatrix`; the
    default schedules are {10, 15, 20, ...} for the driven model and
    {20, 40, 60, ...} Fock states for the quantized model.  Raises
    :class:`NonConvergent` when the defect stays above ``spectrum_tol`` (in
    units of omega) at the end of the schedule.
    """
    probe = build(1)
    omega = probe.params.omega
    if schedule is None:
        if probe.kind == "semiclassical_floquet":
            schedule = range(10, 41, 5)
        else:
            schedule = range(20, 141, 20)
    schedule = list(schedule)

    tol = policy.spectrum_tol * omega
    prev = None
    defect = np.inf
    for N in schedule:
        mat = build(N)
        if mat.kind == "semiclassical_floquet":
            current = _fold_pair(_central_eigenvalues(mat), omega)
        else:
            current = _central_eigenvalues(mat)
        if prev is not None:
            if mat.kind == "semiclassical_floquet":
                diff = np.abs(principal_phase(
                    (current - prev) * (2.0 * np.pi / omega))) * omega / (2.0 * np.pi)
                defect = float(np.max(diff))
            else:
                defect = float(np.max(np.abs(current - prev)))
            if defect <= tol:
                folded = current if mat.kind == "semiclassical_floquet" else None
                eig = (np.sort(_central_eigenvalues(mat))
                       if mat.kind == "semiclassical_floquet" else current)
                return SpectrumResult(
                    eigenvalues=eig,
                    folded_quasienergies=folded,
                    truncation_used=N,
                    convergence_defect=defect,
                    kind=mat.kind,
                )
        prev = current
    raise NonConvergent(
        f"eigenvalue movement {defect:g} above {tol:g} at N={schedule[-1]}")


def quasienergy_gap(p: ModelParams, policy: NumericPolicy = DEFAULT_POLICY) -> float:
    """Distance between the two folded quasienergy classes on the fold circle."""
    res = converged_spectrum(lambda N: build_semiclassical_floquet(p, N),
                             policy=policy)
    q1, q2 = res.folded_quasienergies
    d = abs(q1 - q2) % p.omega
    return float(min(d, p.omega - d))


def _golden_min(f, lo: float, hi: float, iters: int = 70):
    """Golden-section minimum of a unimodal (possibly V-shaped) function."""
    invphi = (np.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
        if b - a < 1e-12:
            break
    xm = 0.5 * (a + b)
    return xm, f(xm)


def classify_crossings(p_base: ModelParams, deltas,
                       policy: NumericPolicy = DEFAULT_POLICY,
                       kind: str = "semiclassical_floquet",
                       g: float | None = None) -> list[CrossingReport]:
    """Locate and label the gap minima of a spectrum swept over the tunneling.

    Scans the given monotone grid, refines every interior local minimum of
    the gap by golden-section search, and labels it ``crossing`` when the
    refined gap is below ``degeneracy_tol * omega``, else ``anti_crossing``.
    For the quantized model the gap is the smallest spacing among the
    low-lying levels.
    """
    deltas = np.asarray(deltas, dtype=float)

    def gap_at(d: float) -> float:
        p = ModelParams(d, p_base.epsilon, p_base.amplitude, p_base.omega)
        if kind == "semiclassical_floquet":
            return quasienergy_gap(p, policy)
        res = converged_spectrum(lambda N: build_quantum_rabi(g, p, N),
                                 policy=policy)
        return float(np.min(np.diff(np.sort(res.eigenvalues))))

    gaps = np.array([gap_at(d) for d in deltas])
    reports = []
    for k in range(1, len(deltas) - 1):
        if gaps[k] <= gaps[k - 1] and gaps[k] <= gaps[k + 1]:
            d_min, g_min = _golden_min(gap_at, deltas[k - 1], deltas[k + 1])
            label = ("crossing" if g_min < policy.degeneracy_tol * p_base.omega
                     else "anti_crossing")
            reports.append(CrossingReport(delta=float(d_min),
                                          classification=label,
                                          min_gap=float(g_min)))
    return reports


def hidden_symmetry_check(p: ModelParams, r: PropagationResult,
                          policy: NumericPolicy = DEFAULT_POLICY) -> HiddenSymmetryReport:
    """Diagnose whether U(T) collapses to a global phase times the identity.

    When the static bias is an integer multiple of the drive frequency and
    the two total phases coincide mod 2*pi, every state is cyclic and the
    per-branch geometric quantities stop being uniquely defined.
    """
    UT = r.unitaries[-1]
    c = float(np.clip(np.real(UT[0, 0]), -1.0, 1.0))
    theta_p = float(np.arctan2(np.sqrt(max(0.0, 1.0 - c * c)), c))
    # theta_- = -theta_+ in this structure, so the gap is 2*theta_+ mod 2*pi
    gap = abs(principal_phase(2.0 * theta_p))
    dist = float(np.linalg.norm(UT - np.exp(1j * theta_p) * IDENTITY, ord=2))
    ratio = p.epsilon / p.omega
    eps_int = bool(abs(ratio - round(ratio)) < policy.degeneracy_tol)
    degenerate = bool(gap <= policy.degeneracy_tol)
    return HiddenSymmetryReport(
        epsilon_over_omega=ratio,
        epsilon_is_integer=eps_int,
        total_phase_gap=gap,
        identity_distance=dist,
        degenerate=degenerate,
        geometric_quantities_unique=not (eps_int and degenerate),
    )
