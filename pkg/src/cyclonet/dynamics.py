"""Iterated cycle evolution, spectral matrix powers, and acyclic perturbations.

State evolution over n cycles expands in the cycle unitary's eigenbasis, so
U^n costs the same for any n.  For the single-angle rotation-pair network
(ControlUp(phi)·ControlDown(phi)) every active-block entry of U^n has the
closed form a + b cos(n nu1) + c sin(n nu1), tabulated here.  A probe qubit
on an acyclic line couples to a cycle once through a control gate; the
entangled result splits into an unperturbed branch and a perturbed branch,
and chains of cycles linked by one probe qubit evolve branch-by-branch.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gates import SIGMA_X, CyclicNetwork, alternating_pair_network, compile_cycle
from .linalg import Spectrum, check_state, check_unitary, dense_eigendecomposition
from .spectral import (
    DegenerateSpectrumError,
    block_form_eigenstates,
    real_trace_eigenvalues,
)

_P0 = np.diag([1.0, 0.0]).astype(complex)
_P1 = np.diag([0.0, 1.0]).astype(complex)
_EYE2 = np.eye(2, dtype=complex)

#: Probe-space basis labels (acyclic bit 1, then top and bottom loop bits).
PERTURBED_BASIS_LABELS = ("100", "101", "110", "111")


def matrix_power_spectral(u, n: int, spectrum: Spectrum | None = None) -> np.ndarray:
    """U^n assembled from the eigenbasis; cost independent of n, negative n allowed."""
    u = np.asarray(u, dtype=complex)
    if spectrum is None:
        spectrum = dense_eigendecomposition(u)
    v = spectrum.vectors
    return (v * np.exp(1j * n * spectrum.phases)) @ v.conj().T


def evolve(net: CyclicNetwork, psi0, n: int, spectrum: Spectrum | None = None) -> np.ndarray:
    """State after n cycles, via the eigenbasis expansion of the cycle unitary."""
    u = compile_cycle(net)
    psi0 = check_state(psi0)
    if psi0.shape[0] != u.shape[0]:
        raise ValueError(
            f"dimension mismatch: network dimension {u.shape[0]}, state {psi0.shape[0]}"
        )
    if spectrum is None:
        spectrum = dense_eigendecomposition(u)
    coeffs = spectrum.vectors.conj().T @ psi0
    return spectrum.vectors @ (np.exp(1j * n * spectrum.phases) * coeffs)


# ----------------------------------------------------------------------------
# Closed-form powers of the single-angle rotation pair


@dataclass(frozen=True)
class ClosedFormElement:
    """One matrix entry of U^n as a + b cos(n nu1) + c sin(n nu1)."""

    a: float
    b: float
    c: float

    def value(self, n, nu1: float):
        n = np.asarray(n, dtype=float)
        return self.a + self.b * np.cos(n * nu1) + self.c * np.sin(n * nu1)


@dataclass(frozen=True)
class CyclePowerTable:
    """Closed-form coefficient grid for the active 3x3 block of U^n."""

    phi: float
    nu1: float
    elements: tuple  # 3x3 nested tuple of ClosedFormElement

    def block_power(self, n: int) -> np.ndarray:
        """The active 3x3 block of U^n."""
        return np.array(
            [[self.elements[j][jp].value(n, self.nu1) for jp in range(3)] for j in range(3)]
        )

    def cycle_power(self, n: int) -> np.ndarray:
        """Full 4x4 U^n (inert |00> entry restored)."""
        g = np.eye(4, dtype=complex)
        g[1:, 1:] = self.block_power(n)
        return g


def so3_example_closed_form(phi: float) -> CyclePowerTable:
    """Coefficient table for the rotation-pair network's cycle powers.

    Valid away from the singular angles (sin phi and 1 + cos phi must not
    vanish); near those points the table's denominators blow up and a
    DegenerateSpectrumError directs callers to the spectral route instead.
    """
    c, s = float(np.cos(phi)), float(np.sin(phi))
    if abs(s) < 1e-6 or abs(c + 1.0) < 1e-6:
        raise DegenerateSpectrumError(f"closed-form table singular at phi = {phi}")
    trace = c * c + 2.0 * c
    nu1 = float(np.arccos((trace - 1.0) / 2.0))
    cn, sn = np.cos(nu1), np.sin(nu1)
    c2n, s2n = np.cos(2.0 * nu1), np.sin(2.0 * nu1)
    d1 = c + 3.0
    d2 = (c + 1.0) * d1
    d3 = s * s * d2
    d4 = s**3 * d2
    e = ClosedFormElement
    elements = (
        (
            e((c + 1.0) / d1, 2.0 / d1, 0.0),
            e(-(c + 1.0) / d1, (4.0 * c - 2.0 * c * c * cn - 2.0 * cn) / d3, -2.0 * sn / d2),
            e(
                -s / d1,
                (2.0 * c**3 * cn - 6.0 * c * c + 6.0 * c * cn - 2.0 * c2n) / d4,
                (-2.0 * c**3 * sn + 6.0 * c * sn - 2.0 * s2n) / d4,
            ),
        ),
        (
            e(-(c + 1.0) / d1, (4.0 * c - 2.0 * c * c * cn - 2.0 * cn) / d3, 2.0 * sn / d2),
            e((c + 1.0) / d1, 2.0 / d1, 0.0),
            e(
                s / d1,
                2.0 * (-(c**3) + 3.0 * c * c * cn - c * (c2n + 2.0) + cn) / d4,
                2.0 * (c * c * sn - c * s2n + sn) / d4,
            ),
        ),
        (
            e(
                -s / d1,
                (2.0 * c**3 * cn - 6.0 * c * c + 6.0 * c * cn - 2.0 * c2n) / d4,
                (2.0 * c**3 * sn - 6.0 * c * sn + 2.0 * s2n) / d4,
            ),
            e(
                s / d1,
                2.0 * (-(c**3) + 3.0 * c * c * cn - c * (c2n + 2.0) + cn) / d4,
                2.0 * (-(c * c) * sn + c * s2n - sn) / d4,
            ),
            e((1.0 - c) / d1, 2.0 * (c + 1.0) / d1, 0.0),
        ),
    )
    return CyclePowerTable(phi=float(phi), nu1=nu1, elements=elements)


# ----------------------------------------------------------------------------
# Acyclic-qubit perturbation


@dataclass(frozen=True, eq=False)
class PerturbationScenario:
    """A two-qubit cycle probed once by an acyclic qubit through a control gate.

    The probe qubit is the leftmost bit of the 8-dim joint space.  With
    coupling='control_on_acyclic' the probe controls the operator applied to
    the bottom loop qubit; 'target_on_acyclic' flips the gate around.  The
    coupling operator defaults to a bit flip and may be any 2x2 unitary.
    """

    net: CyclicNetwork
    acyclic_state: tuple[complex, complex]
    cycles_before: int
    cycles_after: int
    initial_state: np.ndarray
    coupling: str = "control_on_acyclic"
    coupling_operator: np.ndarray | None = None

    def probe_vector(self) -> np.ndarray:
        return check_state(np.asarray(self.acyclic_state, dtype=complex))

    def operator(self) -> np.ndarray:
        w = SIGMA_X if self.coupling_operator is None else np.asarray(self.coupling_operator, complex)
        return check_unitary(w)


def perturb(scenario: PerturbationScenario) -> np.ndarray:
    """Joint probe+cycle state after n cycles, one coupling event, and n' more cycles."""
    if scenario.net.qubits != 2:
        raise ValueError("perturbation scenarios require a two-qubit cycle")
    if scenario.cycles_before < 0 or scenario.cycles_after < 0:
        raise ValueError("cycle counts must be non-negative")
    u = compile_cycle(scenario.net)
    psi = check_state(scenario.initial_state)
    phi_vec = scenario.probe_vector()
    w = scenario.operator()
    spectrum = dense_eigendecomposition(u)
    u_before = matrix_power_spectral(u, scenario.cycles_before, spectrum)
    u_after = matrix_power_spectral(u, scenario.cycles_after, spectrum)
    if scenario.coupling == "control_on_acyclic":
        w_bottom = np.kron(_EYE2, w)
        branch0 = u_after @ u_before @ psi
        branch1 = u_after @ w_bottom @ u_before @ psi
        out = np.kron(_P0 @ phi_vec, branch0) + np.kron(_P1 @ phi_vec, branch1)
    elif scenario.coupling == "target_on_acyclic":
        p0_bottom = np.kron(_EYE2, _P0)
        p1_bottom = np.kron(_EYE2, _P1)
        evolved = u_before @ psi
        branch0 = u_after @ p0_bottom @ evolved
        branch1 = u_after @ p1_bottom @ evolved
        out = np.kron(phi_vec, branch0) + np.kron(w @ phi_vec, branch1)
    else:
        raise ValueError(f"unknown coupling {scenario.coupling!r}")
    return out


def rotation_pair_spectrum(phi: float) -> Spectrum:
    """Closed-form spectrum of the single-angle rotation pair, in root order.

    Eigenvalue order is (1, e^{i nu1}, e^{-i nu1}, inert |00>), matching the
    closed-form amplitude expressions.
    """
    net = alternating_pair_network(phi)
    g = compile_cycle(net)
    c = np.cos(phi)
    roots = real_trace_eigenvalues(c * c + 2.0 * c)
    return block_form_eigenstates(g, roots)


def _basis_index(basis: str) -> int:
    if basis not in PERTURBED_BASIS_LABELS:
        raise ValueError(f"basis must be one of {PERTURBED_BASIS_LABELS}, got {basis!r}")
    return int(basis, 2)


def perturbed_amplitude_series(
    phi: float, k: int, basis: str, n_prime_max: int
) -> np.ndarray:
    """Amplitude of one joint basis state versus n' for the canonical probe scenario.

    The cycle is the single-angle rotation pair started in its eigenstate k
    (k = 0, 1, 2), the probe qubit is |1>, and the coupling is a
    controlled-Not with control on the probe.  Returns the amplitudes of
    |basis> for n' = 0 .. n_prime_max; the |100> series is constant.
    """
    if k not in (0, 1, 2):
        raise ValueError("eigenstate index k must be 0, 1 or 2")
    if n_prime_max < 0:
        raise ValueError("n_prime_max must be non-negative")
    idx = _basis_index(basis)
    spectrum = rotation_pair_spectrum(phi)
    psi_k = spectrum.vectors[:, k]
    flipped = np.kron(_EYE2, SIGMA_X) @ psi_k
    # Amplitude of cyclic basis state (idx - 4) in U^{n'} · flipped, all n' at once.
    coeffs = spectrum.vectors.conj().T @ flipped
    row = spectrum.vectors[idx - 4, :]
    n_primes = np.arange(n_prime_max + 1)
    phase_grid = np.exp(1j * np.outer(n_primes, spectrum.phases))
    return phase_grid @ (row * coeffs)


def closed_form_amplitude(phi: float, k: int, basis: str, n_prime) -> np.ndarray:
    """The same series as perturbed_amplitude_series, from the coefficient table.

    Evaluates the tabulated a + b cos(n' nu1) + c sin(n' nu1) forms combined
    with the flipped-eigenstate components; n' may be a scalar or array and
    need not be an integer (the continuous background curve).
    """
    if k not in (0, 1, 2):
        raise ValueError("eigenstate index k must be 0, 1 or 2")
    idx = _basis_index(basis)
    table = so3_example_closed_form(phi)
    spectrum = rotation_pair_spectrum(phi)
    lam = np.exp(1j * spectrum.phases[k])
    norm_k = spectrum.normalizations[k]
    c, s = np.cos(phi), np.sin(phi)
    n_prime = np.asarray(n_prime, dtype=float)
    if idx == 4:  # probe |1>, cycle |00>: inert under further cycles
        return np.full(n_prime.shape, -norm_k * s * (1.0 - c * lam), dtype=complex)
    j = idx - 5  # active-block row for |01>, |10>, |11>
    m_j2 = table.elements[j][1].value(n_prime, table.nu1)
    m_j3 = table.elements[j][2].value(n_prime, table.nu1)
    return norm_k * (m_j2 * (c - lam) ** 2 - s * m_j3 * (c - lam))


# ----------------------------------------------------------------------------
# Chains of cycles linked by one probe qubit


def chain_evolve(nets, acyclic_state, initial_states, n_prime: int) -> np.ndarray:
    """Joint state of q linked cycles after the probe passes all of them plus n' cycles.

    The probe qubit couples to cycle j (j = 1..q) through a controlled-Not
    after that cycle has completed j iterations; every cycle runs n' + q
    iterations in total.  The joint state orders factors as
    probe (x) cycle_q (x) ... (x) cycle_1, and the returned vector has
    dimension 2·4^q.
    """
    nets = list(nets)
    q = len(nets)
    if not 1 <= q <= 4:
        raise ValueError("chains support 1 to 4 linked cycles")
    initial_states = [check_state(s) for s in initial_states]
    if len(initial_states) != q:
        raise ValueError("need one initial state per cycle")
    probe = check_state(np.asarray(acyclic_state, dtype=complex))
    if n_prime < 0:
        raise ValueError("n_prime must be non-negative")
    flip_bottom = np.kron(_EYE2, SIGMA_X)
    branch0 = []
    branch1 = []
    for j, (net, psi) in enumerate(zip(nets, initial_states), start=1):
        if net.qubits != 2:
            raise ValueError("chain links must be two-qubit cycles")
        u = compile_cycle(net)
        spectrum = dense_eigendecomposition(u)
        branch0.append(matrix_power_spectral(u, n_prime + q, spectrum) @ psi)
        pre = matrix_power_spectral(u, j, spectrum) @ psi
        branch1.append(matrix_power_spectral(u, n_prime + q - j, spectrum) @ flip_bottom @ pre)

    def chain_tensor(parts):
        out = parts[-1]  # cycle q is leftmost
        for part in reversed(parts[:-1]):
            out = np.kron(out, part)
        return out

    out0 = np.kron(_P0 @ probe, chain_tensor(branch0))
    out1 = np.kron(_P1 @ probe, chain_tensor(branch1))
    return out0 + out1


def nu1_to_phi(nu1: float) -> float:
    """Angle phi of the rotation pair whose nontrivial eigenphase equals nu1.

    Solves cos nu1 = (tr - 1)/2 with tr = cos^2 phi + 2 cos phi by bisection
    on (0, pi), where the trace is monotone decreasing.
    """
    if not 0.0 < nu1 < np.pi:
        raise ValueError(f"nu1 must lie strictly inside (0, pi), got {nu1}")
    target = 2.0 * np.cos(nu1) + 1.0  # required trace value

    def residual(phi: float) -> float:
        c = np.cos(phi)
        return c * c + 2.0 * c - target

    lo, hi = 0.0, float(np.pi)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if residual(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
