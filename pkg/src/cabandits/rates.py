"""Achievable-rate curves and the lower-bound hypothesis family.

theta_m traces the best cumulative-regret exponent achievable by an
algorithm that is granted T**m "free" regret: on an (L, alpha) problem the
regret exponent is max(m, 1 - m*alpha/(alpha+1)); as alpha -> inf it tends
to m.  Any curve achievable uniformly over smoothness classes must satisfy
theta(alpha) >= 1 - theta(inf)*alpha/(alpha+1); the theta_m family is
exactly the Pareto frontier of that constraint.

The hypothesis family phi_0..phi_K realizes the matching lower bound: K
needle functions that agree with a shared smooth bump on [1/2, 1] and hide
an (L, alpha) needle in one of K cells of [0, 1/2], against a needle-free
member phi_0.
"""

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .envs import MeanPayoffFunction

# preset needle height constant for the proof-optimal family
PRESET_C = 1.0 / 128.0


def theta(m, alpha):
    """Rate exponent max(m, 1 - m*alpha/(alpha+1)); alpha may be math.inf."""
    if not (0.5 <= m <= 1.0):
        raise ValueError("m must lie in [1/2, 1]")
    if math.isinf(alpha):
        return float(m)
    if alpha <= 0:
        raise ValueError("alpha must be positive (or inf)")
    return max(m, 1.0 - m * alpha / (alpha + 1.0))


def minimax_exponent(alpha):
    """Nonadaptive benchmark exponent (alpha+1)/(2*alpha+1)."""
    if math.isinf(alpha):
        return 0.5
    if alpha <= 0:
        raise ValueError("alpha must be positive (or inf)")
    return (alpha + 1.0) / (2.0 * alpha + 1.0)


def m_of_gamma(gamma):
    """The m whose curve is tangent to the minimax rate at alpha = gamma."""
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    return (gamma + 1.0) / (2.0 * gamma + 1.0)


def satisfies_rate_inequation(alphas, thetas, tol=1e-9):
    """Check theta(alpha) >= 1 - theta(inf)*alpha/(alpha+1) on a sampled curve.

    theta(inf) is proxied by the value at the largest sampled alpha, so the
    grid should extend far enough for the curve to flatten.
    """
    alphas = np.asarray(alphas, dtype=np.float64)
    thetas = np.asarray(thetas, dtype=np.float64)
    if alphas.shape != thetas.shape or alphas.ndim != 1 or alphas.size == 0:
        raise ValueError("need matching nonempty 1-d alpha and theta arrays")
    theta_inf = float(thetas[np.argmax(alphas)])
    lhs = thetas
    rhs = 1.0 - theta_inf * alphas / (alphas + 1.0)
    return bool(np.all(lhs >= rhs - tol))


def adaptive_lower_bound(B, horizon, L, alpha, ell=None, gamma=None):
    """Unavoidable regret 2**-10 * T * L**(1/(a+1)) * B**(-a/(a+1)).

    Holds for any algorithm whose regret on the smooth alternative is at
    most B.  When (ell, gamma) are supplied the side conditions on L are
    checked and a warning is emitted if they fail (the value is still
    returned).
    """
    if B <= 0 or horizon < 1 or L <= 0 or alpha <= 0:
        raise ValueError("need B > 0, horizon >= 1, L > 0, alpha > 0")
    if ell is not None and gamma is not None:
        lo = 2.0**-3 * 12.0**alpha / B
        hi = ell ** (1.0 + alpha) * float(horizon) ** (alpha / 2.0) * 2.0 ** (
            (1.0 + alpha) * (8.0 - 2.0 * gamma)
        )
        if not (lo <= L <= hi):
            warnings.warn(
                f"L={L:g} outside the validity window [{lo:g}, {hi:g}] "
                "for the adaptive lower bound",
                UserWarning,
            )
    return (
        2.0**-10
        * horizon
        * L ** (1.0 / (alpha + 1.0))
        * B ** (-alpha / (alpha + 1.0))
    )


@dataclass(frozen=True)
class GlobregResult:
    phi0_ok: bool
    phii_ok: bool
    phi0_value: float
    phii_value: float


def globreg_check(delta, n_cells, rough, smooth):
    """Smoothness-membership conditions for the hypothesis family.

    phi_i (i >= 1) lies in the rough class H(L, alpha) iff the needle fits
    its cell: (delta/L)**(1/alpha) <= 1/(4K).  phi_0 lies in the smooth
    class H(ell, gamma) iff the bump fits [1/2, 1]:
    (delta/(2*ell))**(1/gamma) <= 1/4.
    """
    if delta <= 0:
        raise ValueError("delta must be positive")
    if n_cells < 1:
        raise ValueError("need at least one cell")
    phii_value = (delta / rough.L) ** (1.0 / rough.alpha)
    phi0_value = (delta / (2.0 * smooth.L)) ** (1.0 / smooth.alpha)
    return GlobregResult(
        phi0_ok=bool(phi0_value <= 0.25),
        phii_ok=bool(phii_value <= 1.0 / (4.0 * n_cells)),
        phi0_value=phi0_value,
        phii_value=phii_value,
    )


@dataclass
class LowerBoundFamily:
    """The K+1 hypothesis payoffs phi_0..phi_K and their geometry."""

    M: float
    delta: float
    n_cells: int
    rough: object
    smooth: object
    functions: list = field(repr=False)
    midpoints: np.ndarray = field(repr=False)

    def __len__(self):
        return len(self.functions)

    def check(self):
        return globreg_check(self.delta, self.n_cells, self.rough, self.smooth)


def lowerbound_family(M, delta, n_cells, rough, smooth):
    """Build phi_0..phi_K.

    Every member pays the floor M - delta except on the shared bump region
    [1/2, 1], where all members rise to M - delta/2 at x=3/4 with smooth
    (ell, gamma) sides; member i >= 1 additionally hides a rough (L, alpha)
    needle of full height M at the midpoint of cell [(i-1)/(2K), i/(2K)].

    Requires smooth.L <= rough.L and rough.alpha <= smooth.alpha: the
    needle class must be the rougher one.
    """
    if not (0.5 <= M <= 1.0):
        raise ValueError("M must lie in [1/2, 1]")
    if not (0.0 < delta <= M):
        raise ValueError("delta must lie in (0, M]")
    if n_cells < 1:
        raise ValueError("need at least one cell")
    if smooth.L > rough.L:
        raise ValueError("smooth class constant must not exceed the rough one")
    if rough.alpha > smooth.alpha:
        raise ValueError("rough class exponent must not exceed the smooth one")
    mids = (np.arange(1, n_cells + 1) - 0.5) / (2.0 * n_cells)
    functions = []
    for i in range(n_cells + 1):
        params = [
            M,
            delta,
            float(n_cells),
            rough.L,
            rough.alpha,
            smooth.L,
            smooth.alpha,
            float(i),
        ]
        if i == 0:
            peak = (M - 0.5 * delta, 0.75)
        else:
            peak = (M, float(mids[i - 1]))
        functions.append(
            MeanPayoffFunction(
                _kernels.PAYOFF_HYPOTHESIS,
                params,
                f"phi_{i}",
                closed_form_max=peak,
            )
        )
    return LowerBoundFamily(
        M=M,
        delta=delta,
        n_cells=n_cells,
        rough=rough,
        smooth=smooth,
        functions=functions,
        midpoints=mids,
    )


def proof_preset(B, rough, M=1.0, c=PRESET_C):
    """Needle height and cell count that maximize the proved lower bound.

    delta = c * L**(1/(a+1)) * B**(-a/(a+1)) and
    K = floor(c**(-1/a)/4 * (L*B)**(1/(a+1))), with c = 1/128.
    """
    if B <= 0:
        raise ValueError("B must be positive")
    L, alpha = rough.L, rough.alpha
    delta = c * L ** (1.0 / (alpha + 1.0)) * B ** (-alpha / (alpha + 1.0))
    k = int(
        math.floor(c ** (-1.0 / alpha) / 4.0 * (L * B) ** (1.0 / (alpha + 1.0)))
    )
    if k < 1:
        raise ValueError("preset yields no cells; increase B or L")
    if delta > M:
        raise ValueError("preset needle higher than M; increase B")
    return delta, k
