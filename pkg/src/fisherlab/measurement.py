"""POVMs, outcome statistics, classical Fisher information and entropy.

The classical Fisher information sums ``(dp_a)^2 / p_a`` over outcomes.
Outcomes with vanishing probability are a 0/0 limit, not a discardable
term: for an effect that annihilates the state, ``p(lam + d) ~ d^2
<dpsi|E|dpsi>`` and ``dp(lam + d) ~ 2 d <dpsi|E|dpsi>``, so the term
tends to ``4 <dpsi|E|dpsi>``. Dropping such terms would report zero
information for measurements that are in fact optimal; the limit rule
below is what keeps those cases correct.

Shannon entropies are in nats throughout (natural log).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimMismatchError, InvalidQError
from .metrology import SldData
from .numerics import as_state_vector, require_hermitian
from .state_family import StateAndDerivative

__all__ = [
    "EPS_PROB",
    "Povm",
    "OutcomeDistribution",
    "outcome_distribution",
    "classical_fisher",
    "shannon_entropy",
    "sld_measurement",
    "q_family_measurement",
    "rotated_qubit_measurement",
]

# Probabilities at or below this are treated as the vanishing-outcome
# limit in the Fisher sum.
EPS_PROB = 1e-10

_PSD_TOL = -1e-10
_COMPLETENESS_TOL = 1e-9


@dataclass(frozen=True)
class Povm:
    """A finite positive-operator-valued measure.

    Effects must be Hermitian, positive semidefinite to rounding
    (smallest eigenvalue >= -1e-10) and sum to the identity to 1e-9 in
    max-entry deviation. Labels identify outcomes and survive every
    transformation the package applies.
    """

    effects: tuple
    labels: tuple = ()

    def __post_init__(self):
        effects = tuple(require_hermitian(e) for e in self.effects)
        if not effects:
            raise DimMismatchError("a POVM needs at least one effect")
        dim = effects[0].shape[0]
        total = np.zeros((dim, dim), dtype=complex)
        for eff in effects:
            if eff.shape[0] != dim:
                raise DimMismatchError("POVM effects have mixed dimensions")
            lowest = np.linalg.eigvalsh(eff)[0]
            if lowest < _PSD_TOL:
                raise ValueError(f"effect has negative eigenvalue {lowest:.3e}")
            total += eff
        deviation = np.max(np.abs(total - np.eye(dim)))
        if deviation > _COMPLETENESS_TOL:
            raise ValueError(f"effects sum to identity only within {deviation:.3e}")
        labels = tuple(self.labels) if self.labels else tuple(f"E{i}" for i in range(len(effects)))
        if len(labels) != len(effects):
            raise ValueError("label count does not match effect count")
        object.__setattr__(self, "effects", effects)
        object.__setattr__(self, "labels", labels)

    @property
    def dim(self) -> int:
        return self.effects[0].shape[0]

    def __len__(self) -> int:
        return len(self.effects)


@dataclass(frozen=True)
class OutcomeDistribution:
    """Outcome probabilities and their parameter derivatives."""

    probs: np.ndarray
    dprobs: np.ndarray

    def __post_init__(self):
        probs = np.asarray(self.probs, dtype=float)
        dprobs = np.asarray(self.dprobs, dtype=float)
        if probs.shape != dprobs.shape or probs.ndim != 1:
            raise DimMismatchError("probs and dprobs must be 1-d arrays of equal length")
        if np.min(probs) < -1e-12:
            raise ValueError(f"negative probability {np.min(probs):.3e}")
        if abs(probs.sum() - 1.0) > 1e-9:
            raise ValueError(f"probabilities sum to {probs.sum()!r}, not 1")
        if abs(dprobs.sum()) > 1e-9:
            raise ValueError(f"probability derivatives sum to {dprobs.sum():.3e}, not 0")
        object.__setattr__(self, "probs", probs)
        object.__setattr__(self, "dprobs", dprobs)


def _check_dims(povm: Povm, sd: StateAndDerivative) -> None:
    if povm.dim != sd.dim:
        raise DimMismatchError(f"POVM dim {povm.dim} does not match state dim {sd.dim}")


def outcome_distribution(povm: Povm, sd: StateAndDerivative) -> OutcomeDistribution:
    """Born-rule probabilities ``<psi|E|psi>`` and derivatives ``2 Re<dpsi|E|psi>``."""
    _check_dims(povm, sd)
    probs = np.empty(len(povm))
    dprobs = np.empty(len(povm))
    for i, eff in enumerate(povm.effects):
        probs[i] = min(max(np.vdot(sd.state, eff @ sd.state).real, 0.0), 1.0)
        dprobs[i] = 2.0 * np.vdot(sd.dstate, eff @ sd.state).real
    return OutcomeDistribution(probs=probs, dprobs=dprobs)


def classical_fisher(povm: Povm, sd: StateAndDerivative) -> float:
    """Fisher information of the POVM's outcome distribution.

    Sums ``(dp_a)^2 / p_a``, replacing each vanishing-probability term
    (``p_a <= EPS_PROB``) with its limit ``4 <dpsi|E_a|dpsi>``.
    """
    _check_dims(povm, sd)
    total = 0.0
    for eff in povm.effects:
        prob = np.vdot(sd.state, eff @ sd.state).real
        if prob > EPS_PROB:
            dprob = 2.0 * np.vdot(sd.dstate, eff @ sd.state).real
            total += dprob * dprob / prob
        else:
            total += max(4.0 * np.vdot(sd.dstate, eff @ sd.dstate).real, 0.0)
    return float(total)


def shannon_entropy(dist) -> float:
    """Shannon entropy ``-sum p ln p`` in nats, with ``0 ln 0 = 0``.

    Accepts an :class:`OutcomeDistribution` or any probability sequence.
    """
    probs = np.asarray(getattr(dist, "probs", dist), dtype=float)
    positive = probs[probs > 0.0]
    return float(-np.sum(positive * np.log(positive)))


def _complete(effects: list, labels: list, dim: int) -> Povm:
    """Append the lumped complement effect when the span leaves room for it."""
    if dim > 2:
        rest = np.eye(dim, dtype=complex)
        for eff in effects:
            rest -= eff
        effects.append(rest)
        labels.append("rest")
    return Povm(effects=tuple(effects), labels=tuple(labels))


def sld_measurement(sldd: SldData) -> Povm:
    """Projective measurement onto the SLD eigenbasis.

    Effects are the projectors onto the ``+-2/N`` eigenstates plus, for
    dimension > 2, one lumped complement covering the null space. The
    complement annihilates both the state and its derivative, so its
    probability and its Fisher contribution are zero.
    """
    p_plus = np.outer(sldd.plus_state, sldd.plus_state.conj())
    p_minus = np.outer(sldd.minus_state, sldd.minus_state.conj())
    return _complete([p_plus, p_minus], ["+", "-"], sldd.plus_state.size)


def q_family_measurement(sldd: SldData, state, q: float) -> Povm:
    """Optimal projective measurement with tunable outcome bias ``q``.

    Projects onto ``sqrt(q)|psi> + sqrt(1-q)|perp>`` and its orthogonal
    partner ``sqrt(1-q)|psi> - sqrt(q)|perp>``. Every member extracts the
    full quantum Fisher information while the outcome distribution is
    ``(q, 1-q)``, so the entropy sweeps the whole range [0, ln 2].
    """
    if not 0.0 <= q <= 1.0:
        raise InvalidQError(f"q must lie in [0, 1], got {q!r}")
    psi = as_state_vector(state)
    if psi.size != sldd.tangent.size:
        raise DimMismatchError("state dim does not match SLD data dim")
    ket_q = np.sqrt(q) * psi + np.sqrt(1.0 - q) * sldd.tangent
    ket_qbar = np.sqrt(1.0 - q) * psi - np.sqrt(q) * sldd.tangent
    proj_q = np.outer(ket_q, ket_q.conj())
    proj_qbar = np.outer(ket_qbar, ket_qbar.conj())
    return _complete([proj_q, proj_qbar], ["q", "qbar"], psi.size)


def rotated_qubit_measurement(phi: float) -> Povm:
    """Qubit measurement along the equatorial axis at angle ``phi``.

    Projects onto ``(|0> +- e^{i phi}|1>)/sqrt(2)``, the eigenstates of
    ``cos(phi) sigma_x + sin(phi) sigma_y``.
    """
    phase = np.exp(1j * phi)
    plus = np.array([1.0, phase], dtype=complex) / np.sqrt(2.0)
    minus = np.array([1.0, -phase], dtype=complex) / np.sqrt(2.0)
    return Povm(
        effects=(np.outer(plus, plus.conj()), np.outer(minus, minus.conj())),
        labels=("+", "-"),
    )
