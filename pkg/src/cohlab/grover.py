"""Analytic Grover model and its coherence-depletion trajectory.

The iteration rotates the state in the plane spanned by the uniform
superpositions of targets and non-targets through A = 2 arctan sqrt(m/(N-m))
per step, so the whole trajectory reduces to two amplitudes. All closed-form
quantities (success probability, the geometric-mean coherence monotone, its
derivative in r, the l1 and relative-entropy columns, cost performance) are
evaluated from that compressed form, in log space wherever products of
N-dependent powers would underflow. A full statevector simulator provides the
independent route for cross-validation on power-of-2 sizes.

Analytic mode accepts any N >= 2; nothing in the closed forms needs qubit
structure. Targets are canonicalized to the first m basis indices; the
statevector side accepts arbitrary target sets.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from math import atan2, cos, exp, inf, log, log2, pi, sin, sqrt

import numpy as np

from .errors import ArgumentError
from .states import PureState

INTEGER_HIT_TOL = 1e-9
AMP_TOL = 1e-12
MAX_QUBITS = 20
CSV_COLUMNS = ("r", "alpha_r", "P", "coherence_number", "ccN", "l1", "rel_entropy", "w")


@dataclass(frozen=True)
class GroverParams:
    """Search of m marked items among N."""

    n_items: int
    n_targets: int

    def __post_init__(self):
        n, m = self.n_items, self.n_targets
        if int(n) != n or int(m) != m:
            raise ArgumentError("item and target counts must be integers")
        if n < 2 or not 1 <= m < n:
            raise ArgumentError(f"need 1 <= m < N with N >= 2, got N={n} m={m}")

    @property
    def mu(self) -> float:
        return self.n_targets / self.n_items


def grover_angle(params: GroverParams) -> float:
    """Rotation angle per iteration, A = 2 arctan sqrt(m/(N-m))."""
    m, n = params.n_targets, params.n_items
    return 2.0 * atan2(sqrt(m), sqrt(n - m))


def alpha_r(params: GroverParams, r: float) -> float:
    return (r + 0.5) * grover_angle(params)


@dataclass
class CompressedGroverState:
    """Two-amplitude form of the state after r iterations."""

    params: GroverParams
    r: float
    alpha: float
    target_amplitude: float
    other_amplitude: float

    def expand(self) -> PureState:
        n, m = self.params.n_items, self.params.n_targets
        amps = np.full(n, self.other_amplitude, dtype=complex)
        amps[:m] = self.target_amplitude
        return PureState(amplitudes=amps)


def grover_state(params: GroverParams, r: float) -> CompressedGroverState:
    if r < 0:
        raise ArgumentError("iteration count must be nonnegative")
    n, m = params.n_items, params.n_targets
    a = alpha_r(params, r)
    crit = critical_iteration(params)
    if crit.integer_hit and float(r) == float(crit.r_int):
        # alpha = pi/2 algebraically: snap to the exact depleted form
        return CompressedGroverState(
            params=params, r=r, alpha=a,
            target_amplitude=1.0 / sqrt(m), other_amplitude=0.0,
        )
    return CompressedGroverState(
        params=params, r=r, alpha=a,
        target_amplitude=sin(a) / sqrt(m),
        other_amplitude=cos(a) / sqrt(n - m),
    )


def success_probability(params: GroverParams, r: float) -> float:
    """sin^2((r + 1/2) A); exactly m/N at r = 0."""
    if r == 0:
        return params.n_targets / params.n_items
    return sin(alpha_r(params, r)) ** 2


@dataclass
class CriticalIteration:
    r_star: float
    integer_hit: bool
    r_int: int | None


def critical_iteration(params: GroverParams) -> CriticalIteration:
    """r* = pi/(2A) - 1/2, with the integer-landing flag."""
    r_star = pi / (2.0 * grover_angle(params)) - 0.5
    hit = abs(r_star - round(r_star)) < INTEGER_HIT_TOL
    return CriticalIteration(
        r_star=r_star, integer_hit=hit, r_int=int(round(r_star)) if hit else None
    )


def grover_coherence_number(params: GroverParams, r: float) -> int:
    """N while the non-target amplitude survives, m when it vanishes."""
    crit = critical_iteration(params)
    if crit.integer_hit and float(r) == float(crit.r_int):
        return params.n_targets
    state = grover_state(params, r)
    n, m = params.n_items, params.n_targets
    count = 0
    if abs(state.target_amplitude) > AMP_TOL:
        count += m
    if abs(state.other_amplitude) > AMP_TOL:
        count += n - m
    return count


def ccN_closed_form(params: GroverParams, r: float) -> float:
    """Geometric-mean coherence monotone along the trajectory, in log space.

    Exactly 1 at r = 0 (uniform state) and exactly 0 at an integer-landing
    critical iteration (the non-target amplitude vanishes).
    """
    if r == 0:
        return 1.0
    crit = critical_iteration(params)
    if crit.integer_hit and float(r) == float(crit.r_int):
        return 0.0
    n, m = params.n_items, params.n_targets
    a = alpha_r(params, r)
    s2, c2 = sin(a) ** 2, cos(a) ** 2
    if s2 <= 1e-300 or c2 <= 1e-300:
        return 0.0
    return exp(
        log(n)
        + (m / n) * (log(s2) - log(m))
        + ((n - m) / n) * (log(c2) - log(n - m))
    )


def ccN_from_probability(params: GroverParams, p: float) -> float:
    """Same monotone parameterized by success probability."""
    if not 0.0 <= p <= 1.0:
        raise ArgumentError("probability outside [0, 1]")
    n, m = params.n_items, params.n_targets
    if p <= 1e-300 or 1.0 - p <= 1e-300:
        return 0.0
    return exp(
        log(n)
        + (m / n) * (log(p) - log(m))
        + ((n - m) / n) * (log1p_neg(p) - log(n - m))
    )


def log1p_neg(p: float) -> float:
    """log(1 - p) without cancellation near p = 1."""
    return float(np.log1p(-p))


def ccN_derivative(params: GroverParams, r: float) -> float:
    """d ccN / dr at real r, from the log-differentiated closed form.

    The exponents are combined algebraically before evaluation so the
    vanishing cos alpha at the critical point produces the correct limit: 0
    for N > 2m (the bracket's divergence is outweighed), -2A at N = 2m, and a
    genuine divergence reported as -inf only when N < 2m.
    """
    if r == 0:
        return 0.0
    n, m = params.n_items, params.n_targets
    big_a = grover_angle(params)
    a = alpha_r(params, r)
    s, c = sin(a), cos(a)
    t = m * c * c - (n - m) * s * s
    if n == 2 * m:
        # closed form reduces to sin(2 alpha): no singular factor at all
        return (4.0 * big_a / n) * t
    if abs(c) <= 1e-300:
        # bracket stays finite; |cos|^((N-2m)/N) decides the limit
        return 0.0 if n > 2 * m else (-inf if s > 0 else inf)
    if abs(s) <= 1e-300:
        return 0.0 if n < 2 * m else (inf if c > 0 else -inf)
    if t == 0.0:
        return 0.0
    magnitude = exp(
        log(2.0 * big_a)
        + log(abs(t))
        + ((2.0 * m - n) / n) * log(abs(s))
        + ((n - 2.0 * m) / n) * log(abs(c))
        - (m * log(m) + (n - m) * log(n - m)) / n
    )
    sign = (1.0 if t > 0 else -1.0) * (1.0 if c > 0 else -1.0)
    return sign * magnitude


@dataclass
class CostPerformance:
    """Exact and large-N forms of w = -dP/dC."""

    exact: float
    asymptotic: float


def cost_performance(params: GroverParams, p: float) -> CostPerformance:
    """Probability gained per unit of coherence spent, defined on (m/N, 1]."""
    n, m = params.n_items, params.n_targets
    mu = m / n
    if not mu < p <= 1.0:
        raise ArgumentError(f"cost performance needs m/N < P <= 1, got P={p}")
    if p == 1.0:
        return CostPerformance(exact=0.0, asymptotic=0.0)
    shared = mu * log1p_neg(p) + (1.0 - mu) * log(p) - log(p - mu)
    exact = exp(mu * log(m) + (1.0 - mu) * log(n - m) - log(n) + shared)
    asymptotic = exp(mu * log(mu) + shared)
    return CostPerformance(exact=exact, asymptotic=asymptotic)


# ---------------------------------------------------------------------------
# trajectory
# ---------------------------------------------------------------------------


@dataclass
class TrajectoryPoint:
    r: float
    alpha_r: float
    P: float
    coherence_number: int
    ccN: float
    l1: float
    rel_entropy: float
    w: float | None


def _point(params: GroverParams, r: float) -> TrajectoryPoint:
    n, m = params.n_items, params.n_targets
    a = alpha_r(params, r)
    p = success_probability(params, r)
    s, c = sin(a), abs(cos(a))
    s2, c2 = s * s, c * c
    l1 = (sqrt(m) * abs(s) + sqrt(n - m) * c) ** 2 - 1.0
    rel = 0.0
    if s2 > 1e-300:
        rel -= s2 * log2(s2 / m)
    if c2 > 1e-300:
        rel -= c2 * log2(c2 / (n - m))
    w = None
    if p - m / n > 1e-15:
        w = cost_performance(params, p).exact
    return TrajectoryPoint(
        r=r, alpha_r=a, P=p,
        coherence_number=grover_coherence_number(params, r),
        ccN=ccN_closed_form(params, r),
        l1=max(0.0, l1), rel_entropy=max(0.0, rel), w=w,
    )


def trajectory(params: GroverParams, r_max: int) -> list[TrajectoryPoint]:
    """Integer-iteration sweep r = 0..r_max."""
    if r_max < 0:
        raise ArgumentError("r_max must be nonnegative")
    return [_point(params, r) for r in range(int(r_max) + 1)]


def dense_trajectory(params: GroverParams, samples: int = 200) -> list[TrajectoryPoint]:
    """Real-r sampling of [0, r*] for smooth depletion curves."""
    if samples < 2:
        raise ArgumentError("dense sampling needs at least 2 points")
    r_star = critical_iteration(params).r_star
    return [_point(params, float(r)) for r in np.linspace(0.0, r_star, samples)]


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return "%.12g" % value


def trajectory_csv_text(points, extra_columns=None) -> str:
    """Render trajectory rows; extra_columns is an ordered (name, values) list
    appended after the base columns, with None rendered as an empty cell."""
    extras = list(extra_columns or [])
    for name, values in extras:
        if len(values) != len(points):
            raise ArgumentError(f"column {name!r} length does not match rows")
    buf = io.StringIO()
    header = list(CSV_COLUMNS) + [name for name, _ in extras]
    buf.write(",".join(header) + "\n")
    for i, pt in enumerate(points):
        row = [pt.r, pt.alpha_r, pt.P, pt.coherence_number, pt.ccN, pt.l1,
               pt.rel_entropy, pt.w] + [values[i] for _, values in extras]
        buf.write(",".join(_csv_cell(x) for x in row) + "\n")
    return buf.getvalue()


# ---------------------------------------------------------------------------
# statevector route
# ---------------------------------------------------------------------------


def statevector_simulate(n_qubits: int, target_indices, r: int) -> PureState:
    """Oracle phase flip plus reflection about the uniform state, r times."""
    if not 1 <= n_qubits <= MAX_QUBITS:
        raise ArgumentError(f"statevector mode limited to 1..{MAX_QUBITS} qubits")
    n = 1 << n_qubits
    raw = [int(t) for t in target_indices]
    targets = sorted(set(raw))
    if len(targets) != len(raw):
        raise ArgumentError("duplicate target indices")
    if not targets or len(targets) >= n:
        raise ArgumentError("targets must be a nonempty proper subset")
    if targets[0] < 0 or targets[-1] >= n:
        raise ArgumentError("target index out of range")
    if r < 0:
        raise ArgumentError("iteration count must be nonnegative")
    v = np.full(n, 1.0 / sqrt(n))
    idx = np.array(targets)
    for _ in range(int(r)):
        v[idx] = -v[idx]
        v = 2.0 * v.mean() - v
    return PureState(amplitudes=v.astype(complex))


def analytic_statevector(params: GroverParams, r: float, target_indices) -> np.ndarray:
    """Closed-form amplitudes on an arbitrary target set, for comparisons."""
    state = grover_state(params, r)
    amps = np.full(params.n_items, state.other_amplitude, dtype=complex)
    amps[np.array(sorted(target_indices))] = state.target_amplitude
    return amps


def statevector_deviation(n_qubits: int, target_indices, r: int) -> float:
    """Max per-amplitude gap between the simulator and the closed form."""
    targets = [int(t) for t in target_indices]
    sim = statevector_simulate(n_qubits, targets, r)
    params = GroverParams(1 << n_qubits, len(targets))
    ana = analytic_statevector(params, r, targets)
    return float(np.max(np.abs(sim.amplitudes - ana)))
