"""
Spectra Service

Laplacian spectra, eigenratio reports, the closed-form cycle spectrum and the
complement pairing identity.
"""

import math
from typing import Optional

import numpy as np

from src.models.errors import DisconnectedGraphError, InvalidSpecError
from src.models.schemas import Graph, Spectrum, SyncReport
from src.services.eigensolver import symmetric_eigenvalues
from src.services.graph_core import connectivity
from src.utils.config import get_settings


def laplacian_spectrum(g: Graph, tol: Optional[float] = None, method: Optional[str] = None) -> Spectrum:
    """Sorted eigenvalues of L = D - A."""
    settings = get_settings().spectra
    tol = tol if tol is not None else settings.tol
    values = symmetric_eigenvalues(g.laplacian_matrix(), tol=tol, method=method or settings.solver)
    return Spectrum(values=tuple(float(x) for x in values), tol=tol)


def eigen_multiplicity(s: Spectrum, value: float, tol: Optional[float] = None) -> int:
    """
    Number of eigenvalues in the cluster around value.

    Entries within tol * max(1, lambdaN) of value seed the cluster; the cluster then
    absorbs any entry within the same distance of a member, so a run of nearly equal
    eigenvalues is counted whole.
    """
    tol = tol if tol is not None else get_settings().spectra.multiplicity_tol
    width = tol * max(1.0, s.lambda_max)
    values = s.values

    members = [i for i, x in enumerate(values) if abs(x - value) <= width]
    if not members:
        return 0

    lo, hi = members[0], members[-1]
    while lo > 0 and values[lo] - values[lo - 1] <= width:
        lo -= 1
    while hi < len(values) - 1 and values[hi + 1] - values[hi] <= width:
        hi += 1
    return hi - lo + 1


def sync_report(g: Graph, tol: Optional[float] = None, method: Optional[str] = None) -> SyncReport:
    """
    Eigenratio r = lambda2 / lambdaN with multiplicities.

    Raises:
        InvalidSpecError: single-node graph
        DisconnectedGraphError: more than one component (lambda2 = 0)
    """
    if g.n < 2:
        raise InvalidSpecError("eigenratio needs at least 2 nodes")
    count, _ = connectivity(g)
    if count != 1:
        raise DisconnectedGraphError(count)

    spectrum = laplacian_spectrum(g, tol=tol, method=method)
    lambda2, lambda_n = spectrum.values[1], spectrum.values[-1]
    return SyncReport(
        lambda2=lambda2,
        lambda_n=lambda_n,
        r=min(1.0, lambda2 / lambda_n),
        mult2=eigen_multiplicity(spectrum, lambda2),
        mult_n=eigen_multiplicity(spectrum, lambda_n),
    )


def cycle_spectrum_closed_form(N: int) -> Spectrum:
    """
    Cycle spectrum from mu_{k+1} = 3 - sin(3k pi / N) / sin(k pi / N), k = 1..N-1.

    The ratio equals 1 + 2 cos(2k pi / N), so the formula is 2 - 2 cos(2k pi / N) and
    holds for N = 3 as well.
    """
    if N < 3:
        raise InvalidSpecError(f"cycle spectrum needs N >= 3, got {N}")
    mu = [0.0]
    for k in range(1, N):
        mu.append(3.0 - math.sin(3 * k * math.pi / N) / math.sin(k * math.pi / N))
    return Spectrum(values=tuple(sorted(mu)), tol=get_settings().spectra.tol)


def complement_spectrum(s: Spectrum) -> Spectrum:
    """
    Complement spectrum from lambda_i(G^c) + lambda_{N-i+2}(G) = N for 2 <= i <= N.
    """
    n = s.n
    values = [0.0] + [float(n - x) for x in s.values[1:]]
    return Spectrum(values=tuple(sorted(values)), tol=s.tol)


def max_spectral_gap(a: Spectrum, b: Spectrum) -> float:
    """Largest elementwise gap between two spectra of equal length."""
    if a.n != b.n:
        raise InvalidSpecError(f"spectra have different lengths {a.n} and {b.n}")
    return float(np.max(np.abs(a.as_array() - b.as_array())))
