"""Resonance location: asymptotic guesses, Newton refinement, tracks.

Eigenvalues and resonances of a mode ell are the zeros of char_q on the
logarithmic cover.  Near zero energy they form branch-indexed families, and
each family has a closed-form leading approximation that serves as a Newton
starting point:

* Disappearing0 (ell = 0, deepening only): log-scale guess
  lambda = (2/rho) exp(2/(rho^2 eps) - gamma + i pi/2); for eps > 0 the
  mode-0 zero leaves every small sector, so there is nothing to guess.
* PersistSqrt (|ell| >= 2, sheet m): lambda^2 = eps (|ell|-1)/|ell| placed
  at arg = m pi (eps > 0) or m pi + pi/2 (eps < 0).
* PersistLw (|ell| = 1, branch n != 0): log lambda = log(2/rho) + 1/2
  - gamma + i pi/2 + W_n(eps rho^2 e^{2 gamma - 1}/4)/2.

Refinement runs Newton on Q_ell in the log(lambda) coordinate, which keeps
the iteration on whatever sheet the guess started and makes sheet drift an
observable (warned) event rather than a silent wraparound.
"""

from __future__ import annotations

import enum
import math
import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .cylinder import EULER_GAMMA, SurfacePoint, bessel_j
from .errors import (
    DomainError,
    Inconclusive,
    RangeError,
    SheetDriftWarning,
    StructureError,
)
from .lambert import lambert_w
from .well import CouplingFamily, Well, char_q, char_q_scale

# Newton stays honest only if the guess is in the small-|lambda| regime the
# asymptotics cover; outside it we record NotFound instead of wandering
GUESS_BASIN = 3.0
RESIDUAL_TOL = 1e-9
EIGEN_ARG_TOL = 1e-6
FD_STEP = 1e-7


class Classification(enum.Enum):
    EIGENVALUE = "eigenvalue"
    RESONANCE = "resonance"
    NOT_FOUND = "not-found"


class Verdict(enum.Enum):
    PERSISTS = "persists"
    DISAPPEARS = "disappears"


@dataclass(frozen=True)
class GuessKind:
    """Guess family selector; persist kinds carry their branch index."""

    family: str
    branch: int | None = None

    _FAMILIES = ("disappearing0", "persist-lw", "persist-sqrt")

    def __post_init__(self) -> None:
        if self.family not in self._FAMILIES:
            raise DomainError(f"unknown guess family {self.family!r}")
        if self.family == "disappearing0" and self.branch is not None:
            raise DomainError("disappearing0 carries no branch index")
        if self.family != "disappearing0" and self.branch is None:
            raise DomainError(f"{self.family} requires a branch index")
        if self.family == "persist-lw" and self.branch == 0:
            raise DomainError("persist-lw branch index must be nonzero")

    @classmethod
    def disappearing0(cls) -> "GuessKind":
        return cls("disappearing0")

    @classmethod
    def persist_lw(cls, n: int) -> "GuessKind":
        return cls("persist-lw", n)

    @classmethod
    def persist_sqrt(cls, m: int) -> "GuessKind":
        return cls("persist-sqrt", m)


@dataclass(frozen=True)
class ResonanceRecord:
    """One refined point of a track."""

    epsilon: float
    guess: SurfacePoint
    refined: SurfacePoint
    residual: float
    classification: Classification
    energy: complex


@dataclass(frozen=True)
class ResonanceTrack:
    """Ordered refinement records of one mode along an eps grid."""

    ell: int
    family: CouplingFamily
    kind: GuessKind
    records: tuple[ResonanceRecord, ...]


@dataclass(frozen=True)
class SectorScan:
    """Grid scan of |Q_0| over a closed sector of the physical half-plane."""

    minimum: float
    median: float
    location: SurfacePoint
    found_zero: bool


def thread_budget() -> int:
    """Worker count for parallel passes; RESONANCE_LAB_THREADS caps it."""
    raw = os.environ.get("RESONANCE_LAB_THREADS", "")
    try:
        n = int(raw)
        if n >= 1:
            return n
    except ValueError:
        pass
    return min(8, os.cpu_count() or 1)


def _check_structure(ell: int, family: CouplingFamily) -> None:
    order = 1 if ell == 0 else abs(ell) - 1
    j_edge = abs(bessel_j(order, family.rho * family.a0).value)
    if j_edge > 1e-9:
        raise StructureError(
            f"family a0 = {family.a0:.12g} has |J_{order}(rho a0)| = {j_edge:.3e}; "
            "no zero-energy structure for this mode"
        )


def initial_guess(
    ell: int, eps: float, family: CouplingFamily, kind: GuessKind
) -> SurfacePoint:
    """Leading-order location of the mode-ell zero at coupling offset eps.

    Raises StructureError when the family has no zero-energy structure in
    this mode at eps = 0, and DomainError for a disappearing0 guess with
    eps > 0 (the zero has left every small sector).
    """
    if eps == 0:
        raise DomainError("eps = 0 is the degenerate family point")
    n = abs(ell)
    rho = family.rho
    if kind.family == "disappearing0":
        if n != 0:
            raise DomainError("disappearing0 guesses apply to ell = 0 only")
        _check_structure(0, family)
        if eps > 0:
            raise DomainError("no small zero exists for eps > 0 in mode 0")
        w = (
            math.log(2.0 / rho)
            + 2.0 / (rho * rho * eps)
            - EULER_GAMMA
            + 1j * (math.pi / 2)
        )
        return SurfacePoint(w)
    if kind.family == "persist-sqrt":
        if n < 2:
            raise DomainError("persist-sqrt guesses apply to |ell| >= 2")
        _check_structure(n, family)
        m = kind.branch
        arg = m * math.pi + (math.pi / 2 if eps < 0 else 0.0)
        return SurfacePoint(
            0.5 * math.log(abs(eps) * (n - 1) / n) + 1j * arg
        )
    # persist-lw
    if n != 1:
        raise DomainError("persist-lw guesses apply to |ell| = 1")
    _check_structure(1, family)
    x = eps * rho * rho * math.exp(2.0 * EULER_GAMMA - 1.0) / 4.0
    w = (
        math.log(2.0 / rho)
        + 0.5
        - EULER_GAMMA
        + 1j * (math.pi / 2)
        + 0.5 * lambert_w(kind.branch, x)
    )
    return SurfacePoint(w)


def _not_found(eps: float, guess: SurfacePoint, last: SurfacePoint) -> ResonanceRecord:
    try:
        energy = last.value ** 2
    except OverflowError:
        energy = complex(math.inf, math.inf)
    return ResonanceRecord(
        epsilon=eps,
        guess=guess,
        refined=last,
        residual=math.inf,
        classification=Classification.NOT_FOUND,
        energy=energy,
    )


def refine(
    ell: int,
    guess: SurfacePoint,
    well: Well,
    max_iter: int = 20,
    tol: float = 1e-12,
    epsilon: float = math.nan,
) -> ResonanceRecord:
    """Newton refinement of char_q in the log(lambda) coordinate.

    Runs at most max_iter steps with central-difference derivatives (step
    1e-7 in log lambda, i.e. 1e-7*|lambda| in lambda), stopping when the
    step drops below tol.  The record is NotFound when the normalized
    residual |Q|/(|t1|+|t2|) stays above 1e-9, when evaluation leaves the
    kernel's validated range, or when the guess is outside the small-energy
    basin |lambda| <= 3.  A SheetDriftWarning is issued when the refined
    argument moved more than pi/2 from the guess.
    """
    n = abs(ell)
    # compare in log scale so absurd guesses cannot overflow exp()
    if guess.log_value.real > math.log(GUESS_BASIN):
        return _not_found(epsilon, guess, guess)
    w = guess.log_value

    def q_at(wv: complex) -> complex:
        return char_q(n, SurfacePoint(wv), well)

    try:
        for _ in range(max_iter):
            f = q_at(w)
            fp = (q_at(w + FD_STEP) - q_at(w - FD_STEP)) / (2 * FD_STEP)
            if fp == 0 or not (abs(f) < math.inf and abs(fp) < math.inf):
                return _not_found(epsilon, guess, SurfacePoint(w))
            dw = f / fp
            w = w - dw
            if abs(dw) <= tol:
                break
        scale = char_q_scale(n, SurfacePoint(w), well)
        residual = abs(q_at(w)) / scale if scale > 0 else math.inf
    except (RangeError, OverflowError):
        return _not_found(epsilon, guess, SurfacePoint(w))

    refined = SurfacePoint(w)
    if not (residual <= RESIDUAL_TOL):
        return _not_found(epsilon, guess, refined)

    if abs(refined.argument - guess.argument) > math.pi / 2:
        warnings.warn(
            f"refined arg {refined.argument:.4f} drifted from guess arg "
            f"{guess.argument:.4f}",
            SheetDriftWarning,
            stacklevel=2,
        )

    energy = refined.value ** 2
    on_axis = abs(refined.argument - math.pi / 2) <= EIGEN_ARG_TOL
    real_energy = abs(energy.imag) <= 1e-8 * abs(energy)
    classification = (
        Classification.EIGENVALUE if on_axis and real_energy else Classification.RESONANCE
    )
    return ResonanceRecord(
        epsilon=epsilon,
        guess=guess,
        refined=refined,
        residual=residual,
        classification=classification,
        energy=energy,
    )


def _validate_eps_grid(eps_list: tuple[float, ...]) -> None:
    if not eps_list:
        raise DomainError("eps grid is empty")
    if any(e == 0 for e in eps_list):
        raise DomainError("eps grid contains 0, the degenerate family point")
    diffs = [b - a for a, b in zip(eps_list, eps_list[1:])]
    if diffs and not (all(d > 0 for d in diffs) or all(d < 0 for d in diffs)):
        raise DomainError("eps grid must be strictly monotone")


def track(
    ell: int,
    family: CouplingFamily,
    eps_list: tuple[float, ...] | list[float],
    kind: GuessKind,
) -> ResonanceTrack:
    """Refine the mode-ell family over an ordered eps grid.

    A parallel pass refines every point from its asymptotic guess; a
    sequential sweep then re-refines each point from the previous kept
    zero (continuation) and keeps whichever result has the smaller
    residual.  NotFound points are recorded and the track continues.
    """
    eps_tuple = tuple(float(e) for e in eps_list)
    _validate_eps_grid(eps_tuple)
    wells = [family.well(e) for e in eps_tuple]
    guesses = [initial_guess(ell, e, family, kind) for e in eps_tuple]

    with ThreadPoolExecutor(max_workers=thread_budget()) as pool:
        base = list(
            pool.map(
                lambda item: refine(ell, item[0], item[1], epsilon=item[2]),
                zip(guesses, wells, eps_tuple),
            )
        )

    records: list[ResonanceRecord] = []
    prev: SurfacePoint | None = None
    for rec, well in zip(base, wells):
        best = rec
        if prev is not None:
            alt = refine(ell, prev, well, epsilon=rec.epsilon)
            if alt.residual < best.residual:
                best = ResonanceRecord(
                    epsilon=best.epsilon,
                    guess=rec.guess,
                    refined=alt.refined,
                    residual=alt.residual,
                    classification=alt.classification,
                    energy=alt.energy,
                )
        records.append(best)
        if best.classification is not Classification.NOT_FOUND:
            prev = best.refined
    return ResonanceTrack(ell=ell, family=family, kind=kind, records=tuple(records))


def sector_scan(
    well: Well,
    radius: float = 0.3,
    n_radii: int = 200,
    n_angles: int = 60,
    depth_tol: float = 1e-3,
) -> SectorScan:
    """Scan |Q_0| over {0 < |lambda| <= radius, |arg lambda| <= pi/2}.

    found_zero is True when some grid point dips below depth_tol times the
    grid median, the signature of a zero inside the sector.
    """
    values: list[float] = []
    best = math.inf
    best_at = SurfacePoint.from_polar(radius, 0.0)
    for i in range(1, n_radii + 1):
        r = radius * i / n_radii
        for k in range(n_angles):
            theta = -math.pi / 2 + math.pi * k / (n_angles - 1)
            pt = SurfacePoint.from_polar(r, theta)
            q = abs(char_q(0, pt, well))
            values.append(q)
            if q < best:
                best, best_at = q, pt
    values.sort()
    median = values[len(values) // 2]
    return SectorScan(
        minimum=best,
        median=median,
        location=best_at,
        found_zero=best < depth_tol * median,
    )


def persistence_verdict(
    trk: ResonanceTrack, scan_eps: tuple[float, ...] | None = None
) -> Verdict:
    """Decide whether the zero-energy family persists through eps = 0.

    Persist-type tracks must span both signs of eps with a gap-free,
    jump-bounded chain of found zeros; broken chains raise Inconclusive.
    Disappearing0 tracks (eps < 0 only) are judged by sector scans on the
    shallow side: no dip of |Q_0| anywhere in the sector means Disappears.
    """
    recs = trk.records
    for i, rec in enumerate(recs):
        if rec.classification is Classification.NOT_FOUND and 0 < i < len(recs) - 1:
            raise Inconclusive(f"interior NotFound gap at eps = {rec.epsilon}")
    found = [r for r in recs if r.classification is not Classification.NOT_FOUND]
    if not found:
        raise Inconclusive("no refined zeros in the track")

    if trk.kind.family == "disappearing0":
        if scan_eps is None:
            mags = sorted(abs(r.epsilon) for r in recs)
            scan_eps = tuple(dict.fromkeys(mags[:2]))
        for e in scan_eps:
            scan = sector_scan(trk.family.well(abs(e)))
            if scan.found_zero:
                return Verdict.PERSISTS
        return Verdict.DISAPPEARS

    signs = {math.copysign(1.0, r.epsilon) for r in found}
    if len(signs) < 2:
        raise DomainError("persistence needs a track spanning both signs of eps")
    for a, b in zip(found, found[1:]):
        jump = abs(a.refined.value - b.refined.value)
        allowed = 2.0 * (a.refined.modulus + b.refined.modulus) + 1e-6
        if jump > allowed:
            raise Inconclusive(
                f"jump {jump:.3e} between eps = {a.epsilon} and {b.epsilon}"
            )
    return Verdict.PERSISTS


def fit_first_correction(trk: ResonanceTrack) -> complex:
    """Least-squares estimate of c in lambda_eps ~ guess * (1 + c*eps).

    A post-hoc diagnostic of the next-order coefficient; guesses never use
    it.  Needs at least two found records.
    """
    num = 0j
    den = 0.0
    count = 0
    for rec in trk.records:
        if rec.classification is Classification.NOT_FOUND:
            continue
        g = rec.guess.value
        r = rec.refined.value
        num += rec.epsilon * g.conjugate() * (r - g)
        den += rec.epsilon ** 2 * abs(g) ** 2
        count += 1
    if count < 2 or den == 0:
        raise DomainError("need at least two found records to fit a correction")
    return num / den
