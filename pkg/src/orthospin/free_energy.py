"""Variational free energy, phase classification, critical temperatures,
one-sided field derivatives, and the spin-1 phase-boundary curve.

The variational functional is

    phi(x, y) = (1/2)[(L1+L2) sum x_i^2 - L2 sum y_i^2] - sum x_i log x_i

maximised over the ordered simplex in x with 0 <= y_1 <= x_1 - x_theta and
all other y_i = 0 (theta = 2, 3; for L2 >= 0 the y term never helps, which
extends the formula to every theta).  The inner y maximisation is solved in
closed form; the x problem runs a dense grid scan over the ordered simplex
followed by Newton refinement on groups of equal coordinates, which reaches
machine-precision stationarity and keeps repeated runs bit-identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .spectra import convert_parameters

LOG16 = math.log(16.0)


class NotProvenError(Exception):
    """The requested regime is outside what the theory covers."""


@dataclass(frozen=True)
class SimplexPoint:
    x: Tuple[float, ...]
    y: Tuple[float, ...]


@dataclass
class MaximizeResult:
    value: float
    points: List[SimplexPoint]
    y1_interval: Optional[Tuple[float, float]] = None


def phi(theta: int, L1: float, L2: float, point: SimplexPoint) -> float:
    """The variational functional at an explicit (x, y) point."""
    x = point.x
    y = point.y
    if len(x) != theta or len(y) != theta:
        raise ValueError(f"need {theta} coordinates")
    if abs(sum(x) - 1.0) > 1e-9 or any(v < -1e-12 for v in x):
        raise ValueError("x must lie on the simplex")
    if any(x[i] < x[i + 1] - 1e-12 for i in range(theta - 1)):
        raise ValueError("x must be sorted descending")
    r = theta // 2
    if any(abs(y[i]) > 1e-12 for i in range(r, theta)):
        raise ValueError("y_i must vanish for i > floor(theta/2)")
    if theta in (2, 3):
        if not (-1e-12 <= y[0] <= x[0] - x[-1] + 1e-12):
            raise ValueError("need 0 <= y_1 <= x_1 - x_theta")
    ent = -sum(v * math.log(v) for v in x if v > 0.0)
    return 0.5 * ((L1 + L2) * sum(v * v for v in x) - L2 * sum(v * v for v in y)) + ent


def beta_c(theta: int) -> float:
    """Critical coupling: 2 at theta=2, else 2 (theta-1)/(theta-2) log(theta-1)."""
    if theta < 2:
        raise ValueError("theta >= 2 required")
    if theta == 2:
        return 2.0
    return 2.0 * (theta - 1) / (theta - 2) * math.log(theta - 1.0)


def beta_of_xstar(theta: int, x: float) -> float:
    """Coupling at which x is the ordered maximiser:
    (theta-1)/(theta x - 1) * log(x (theta-1)/(1-x)), for x in (1-1/theta, 1)."""
    if not (1.0 - 1.0 / theta < x < 1.0):
        raise ValueError("x must lie in (1 - 1/theta, 1)")
    return (theta - 1.0) / (theta * x - 1.0) * math.log(x * (theta - 1.0) / (1.0 - x))


# ---------------------------------------------------------------------------
# inner y maximisation (closed form)

def _y_bonus(L2: float, habs: float, Y: float) -> Tuple[float, float]:
    """max of -(L2/2) y^2 + habs*y over y in [0, Y]; returns (value, argmax)."""
    if Y <= 0.0:
        return (0.0, 0.0)
    if L2 > 0.0:
        y = min(habs / L2, Y) if habs > 0.0 else 0.0
    else:
        y = Y if (habs > 0.0 or L2 < 0.0) else 0.0
    return (-(0.5 * L2) * y * y + habs * y, y)


# ---------------------------------------------------------------------------
# simplex optimizer

@lru_cache(maxsize=16)
def _sorted_simplex_grid(theta: int, step: float) -> np.ndarray:
    """Lattice points of the ordered simplex x_1 >= ... >= x_theta >= 0."""
    m = int(round(1.0 / step))
    out: List[Tuple[int, ...]] = []

    def rec(remaining: int, max_part: int, slots: int, prefix: Tuple[int, ...]):
        if slots == 1:
            if remaining <= max_part:
                out.append(prefix + (remaining,))
            return
        lo = (remaining + slots - 1) // slots
        for v in range(min(remaining, max_part), lo - 1, -1):
            rec(remaining - v, v, slots - 1, prefix + (v,))

    rec(m, m, theta, ())
    return np.array(out, dtype=float) / m


_GRID_STEP = {2: 1e-3, 3: 1e-3, 4: 0.01, 5: 0.02, 6: 0.025}


def _objective_factory(theta: int, L1: float, L2: float, habs: float) -> Callable:
    beta = L1 + L2

    def f_vec(xs: np.ndarray) -> np.ndarray:
        ent = np.where(xs > 0.0, xs * np.log(np.where(xs > 0.0, xs, 1.0)), 0.0)
        base = 0.5 * beta * np.sum(xs * xs, axis=1) - np.sum(ent, axis=1)
        Y = xs[:, 0] - xs[:, -1]
        if L2 > 0.0:
            y = np.minimum(habs / L2, Y) if habs > 0.0 else np.zeros_like(Y)
        elif L2 < 0.0 or habs > 0.0:
            y = Y
        else:
            y = np.zeros_like(Y)
        return base + (-(0.5 * L2) * y * y + habs * y)

    return f_vec


def _group_pattern(x: Sequence[float], tol: float = 1e-6) -> List[int]:
    """Multiplicities of blocks of (nearly) equal coordinates, sorted input."""
    sizes = [1]
    for i in range(1, len(x)):
        if abs(x[i] - x[i - 1]) <= tol:
            sizes[-1] += 1
        else:
            sizes.append(1)
    return sizes


def _grouped_newton(theta: int, L1: float, L2: float, habs: float,
                    x0: Sequence[float]) -> Optional[Tuple[float, Tuple[float, ...]]]:
    """Newton ascent treating blocks of equal coordinates as single variables.

    Returns (value, x) at a stationary point of the block-reduced objective,
    or None if the iteration leaves the feasible cone.
    """
    sizes = _group_pattern(x0)
    L = len(sizes)
    beta = L1 + L2
    # representative for each block
    g = []
    pos = 0
    for s in sizes:
        g.append(sum(x0[pos : pos + s]) / s)
        pos += s

    def unpack(free: np.ndarray) -> np.ndarray:
        last = (1.0 - sum(f * s for f, s in zip(free, sizes[:-1]))) / sizes[-1]
        return np.array(list(free) + [last])

    def value_and_grad(free: np.ndarray):
        gv = unpack(free)
        if np.any(gv <= 0.0):
            return None
        xs = np.repeat(gv, sizes)
        val = 0.5 * beta * np.sum(xs * xs) - np.sum(xs * np.log(xs))
        Y = xs[0] - xs[-1]
        bonus, y = _y_bonus(L2, habs, Y)
        val += bonus
        # d(bonus)/dY: 0 when the inner optimum is interior (L2>0, y<Y)
        if L2 > 0.0:
            dbdY = 0.0 if y < Y else (habs - L2 * Y)
        else:
            dbdY = habs - L2 * Y if (habs > 0.0 or L2 < 0.0) else 0.0
        dphi = [sizes[j] * (beta * gv[j] - math.log(gv[j]) - 1.0) for j in range(L)]
        dphi[0] += dbdY
        dphi[-1] -= dbdY
        grad = np.array(
            [dphi[j] - (sizes[j] / sizes[-1]) * dphi[-1] for j in range(L - 1)]
        )
        return val, grad, gv

    if L == 1:
        res = value_and_grad(np.array([]))
        return (res[0], tuple(np.repeat(res[2], sizes))) if res else None

    free = np.array(g[:-1])
    for _ in range(80):
        res = value_and_grad(free)
        if res is None:
            return None
        val, grad, gv = res
        if np.max(np.abs(grad)) < 1e-11:
            break
        # finite-difference Hessian of the analytic gradient
        eps = 1e-7
        hess = np.zeros((L - 1, L - 1))
        for j in range(L - 1):
            probe = free.copy()
            probe[j] += eps
            rp = value_and_grad(probe)
            probe[j] -= 2 * eps
            rm = value_and_grad(probe)
            if rp is None or rm is None:
                return None
            hess[:, j] = (rp[1] - rm[1]) / (2 * eps)
        try:
            step = np.linalg.solve(hess, grad)
        except np.linalg.LinAlgError:
            return None
        scale = 1.0
        for _ in range(30):
            cand = free - scale * step
            rc = value_and_grad(cand)
            if rc is not None and rc[0] >= val - 1e-15:
                free = cand
                break
            scale *= 0.5
        else:
            break
    res = value_and_grad(free)
    if res is None:
        return None
    val, grad, gv = res
    if grad.size and np.max(np.abs(grad)) > 1e-9:
        return None
    xs = np.repeat(gv, sizes)
    if np.any(np.diff(xs) > 1e-12):
        return None
    return float(val), tuple(float(v) for v in xs)


def maximize_phi(theta: int, L1: float, L2: float, h: float = 0.0,
                 tie_tol: float = 1e-8,
                 grid_step: Optional[float] = None) -> MaximizeResult:
    """Global maximum of phi (+ |h| y_1 when h != 0) over the ordered simplex.

    The full (L1, L2) plane is available for theta in {2, 3}; for larger
    theta only L2 >= 0 is covered and L2 < 0 raises NotProvenError.  All
    maximisers within tie_tol of the best value are returned.
    """
    if theta < 2:
        raise ValueError("theta >= 2 required")
    if theta not in (2, 3) and L2 < 0.0:
        raise NotProvenError(
            f"free energy unknown for theta={theta}, L2={L2} < 0"
        )
    habs = abs(h)
    step = grid_step if grid_step is not None else _GRID_STEP.get(theta, 0.05)
    grid = _sorted_simplex_grid(theta, step)
    f_vec = _objective_factory(theta, L1, L2, habs)
    vals = f_vec(grid)
    best = float(np.max(vals))
    top = np.nonzero(vals >= best - 1e-4)[0]
    # keep one representative start per coarse grid cell (flat near-critical
    # basins otherwise flood the refiner with duplicates)
    starts = []
    buckets = set()
    for i in top[np.argsort(-vals[top])]:
        key = tuple(np.round(grid[i], 2))
        if key in buckets:
            continue
        buckets.add(key)
        starts.append(tuple(grid[i]))
        if len(starts) >= 48:
            break
    # canonical starts keep both transition branches in play near beta_c
    sym = tuple([1.0 / theta] * theta)
    starts.append(sym)
    for t in (0.45, 0.6, 0.75, 0.9, 0.97):
        starts.append(tuple([t] + [(1.0 - t) / (theta - 1)] * (theta - 1)))
    if theta > 2:
        for t in (0.55, 0.75, 0.95):
            starts.append(tuple([t, 1.0 - t] + [0.0] * (theta - 2)))

    refined: List[Tuple[float, Tuple[float, ...]]] = []
    seen = set()
    for x0 in starts:
        x0 = tuple(max(v, 1e-9) for v in x0)
        tot = sum(x0)
        x0 = tuple(v / tot for v in x0)
        key = tuple(round(v, 5) for v in x0)
        if key in seen:
            continue
        seen.add(key)
        res = _grouped_newton(theta, L1, L2, habs, x0)
        if res is not None:
            refined.append(res)
        # also try merging near-equal coordinates more aggressively
        res2 = _grouped_newton(
            theta, L1, L2, habs, tuple(round(v, 2) + 1e-9 for v in x0)
        ) if theta > 2 else None
        if res2 is not None:
            refined.append(res2)
    if not refined:
        # fall back to the best grid point (should not happen in practice)
        i = int(np.argmax(vals))
        refined = [(best, tuple(float(v) for v in grid[i]))]
    top = max(v for v, _ in refined)
    top = max(top, best)
    points: List[SimplexPoint] = []
    y1_interval = None
    for val, xs in sorted(refined, key=lambda t: -t[0]):
        if val < top - tie_tol:
            continue
        Y = xs[0] - xs[-1]
        bonus, y = _y_bonus(L2, habs, Y)
        if theta in (2, 3):
            ys = (y,) + (0.0,) * (theta - 1)
        else:
            ys = (0.0,) * theta
        pt = SimplexPoint(tuple(xs), ys)
        if all(max(abs(a - b) for a, b in zip(pt.x, q.x)) > 1e-7 for q in points):
            points.append(pt)
    if L2 == 0.0 and habs == 0.0 and theta in (2, 3):
        ymax = max(p.x[0] - p.x[-1] for p in points)
        y1_interval = (0.0, ymax)
    return MaximizeResult(top, points, y1_interval)


# ---------------------------------------------------------------------------
# free energy and derivatives

def free_energy(theta: int, p1: float, p2: float, mode: str = "L",
                h: float = 0.0, apply_shift: bool = False) -> float:
    """Maximal phi value; with apply_shift=True the per-site constant from
    the parameter transformation is subtracted, giving the free energy of
    the original model in its own units."""
    L1, L2, shift = convert_parameters(mode, p1, p2, theta)
    value = maximize_phi(theta, L1, L2, h=h).value
    if apply_shift:
        value -= shift / 2.0
    return value


def field_free_energy(theta: int, L1: float, L2: float, h: float) -> float:
    """max over the domain of [phi + |h| y_1], theta in {2, 3}."""
    if theta not in (2, 3):
        raise NotProvenError("field free energy proved for theta in {2,3}")
    return maximize_phi(theta, L1, L2, h=h).value


def one_sided_derivatives(theta: int, L1: float, L2: float,
                          tie_tol: float = 1e-8) -> Tuple[float, float]:
    """(right, left) derivative of the field free energy at h = 0:
    the extreme values of y_1 over the maximiser set of phi."""
    if theta not in (2, 3):
        raise NotProvenError("field derivatives proved for theta in {2,3}")
    res = maximize_phi(theta, L1, L2, tie_tol=tie_tol)
    if L2 > 0.0:
        return (0.0, 0.0)
    if L2 < 0.0:
        ys = [p.x[0] - p.x[-1] for p in res.points]
        return (float(max(ys)), float(min(ys)))
    ymax = max(p.x[0] - p.x[-1] for p in res.points)
    return (float(ymax), 0.0)


# ---------------------------------------------------------------------------
# phase classification

@dataclass
class PhaseResult:
    label: str
    conjectured: bool
    value: float
    maximizers: List[SimplexPoint] = field(default_factory=list)
    note: str = ""


def classify_phase(theta: int, p1: float, p2: float, mode: Optional[str] = None,
                   boundary_tol: float = 1e-9) -> PhaseResult:
    """Phase label per the finite-temperature diagrams.

    theta=2 expects XXZ couplings (K1, K2), theta=3 bilinear-biquadratic
    (J1, J2); canonical (L1, L2) input is converted.  theta >= 4 with
    L2 >= 0 distinguishes Disordered from Ordered across beta_c.
    """
    if mode is None:
        mode = {2: "K", 3: "J"}.get(theta, "L")
    mode = mode.upper()
    if theta == 2:
        if mode in ("L", "CANONICAL"):
            K1 = 2.0 * (p1 + p2)
            K2 = 2.0 * (p1 - p2)
        else:
            K1, K2 = p1, p2
        L1, L2, _ = convert_parameters("K", K1, K2, 2)
        res = maximize_phi(2, L1, L2)
        near1 = abs(K1 - 4.0) <= boundary_tol
        near2 = abs(K2 - 4.0) <= boundary_tol
        neareq = abs(K1 - K2) <= boundary_tol and K1 >= 4.0
        if (near1 and K2 <= 4.0) or (near2 and K1 <= 4.0) or neareq:
            return PhaseResult("Boundary", False, res.value, res.points)
        if K1 <= 4.0 and K2 <= 4.0:
            return PhaseResult("Disordered", False, res.value, res.points)
        if K2 > K1:
            return PhaseResult("Ising", False, res.value, res.points)
        return PhaseResult("XY", False, res.value, res.points)

    if theta == 3:
        if mode in ("L", "CANONICAL"):
            J1, J2 = p1, p1 + p2
        else:
            J1, J2 = p1, p2
        L1, L2, _ = convert_parameters("J", J1, J2, 3)
        res = maximize_phi(3, L1, L2)
        sym_val = phi(3, L1, L2, SimplexPoint((1 / 3, 1 / 3, 1 / 3), (0.0, 0.0, 0.0)))
        in_a = res.value <= sym_val + boundary_tol
        if J2 >= J1:
            if abs(J2 - LOG16) <= boundary_tol and J1 <= LOG16:
                return PhaseResult("Boundary", False, res.value, res.points)
            if J2 > LOG16:
                return PhaseResult("Nematic", False, res.value, res.points)
            return PhaseResult("Disordered", False, res.value, res.points)
        if in_a:
            return PhaseResult("Disordered", False, res.value, res.points)
        if abs(J1) <= boundary_tol and J2 <= -3.0:
            return PhaseResult(
                "Boundary", True, res.value, res.points,
                note="NOT_PROVEN: behaviour on the half-line J1=0, J2<=-3 is open",
            )
        if J1 > 0.0:
            return PhaseResult("Ferromagnetic", True, res.value, res.points)
        return PhaseResult("FourthPhase", True, res.value, res.points)

    if mode not in ("L", "CANONICAL"):
        raise ValueError(f"theta={theta} takes canonical (L1, L2) parameters only")
    L1, L2, _ = convert_parameters("L", p1, p2, theta)
    if L2 < 0.0:
        raise NotProvenError(f"phase diagram unknown for theta={theta}, L2<0")
    res = maximize_phi(theta, L1, L2)
    b = L1 + L2
    bc = beta_c(theta)
    if abs(b - bc) <= boundary_tol:
        return PhaseResult("Boundary", False, res.value, res.points)
    if b < bc:
        return PhaseResult("Disordered", False, res.value, res.points)
    return PhaseResult("Ordered", False, res.value, res.points)


def quadratic_alpha(J1: float, J2: float) -> float:
    """Asymptotic maximiser location of the large-coupling quadratic:
    1 in the ferromagnetic wedge, J2/(J1+J2) clamped to [1/2, 1] in the
    fourth-phase wedge."""
    if J1 > 0.0 and J1 > J2:
        return 1.0
    if J1 < 0.0 and 2 * J1 - J2 > 0.0:
        return min(max(J2 / (J1 + J2), 0.5), 1.0)
    if J1 <= 0.0 and abs(2 * J1 - J2) == 0.0:
        return 2.0 / 3.0
    raise ValueError("outside the ferromagnetic and fourth-phase wedges")


# ---------------------------------------------------------------------------
# the spin-1 boundary curve

def _phi_region_r_arrays(grid_step: float = 0.004):
    """Precompute the (J-independent) pieces of phi over the region
    x1 >= x2, 1 - x2 >= x1 >= 1 - 2 x2 (non-negative third coordinate,
    second coordinate at least the third)."""
    pts = []
    m = int(round(1.0 / grid_step))
    for i in range(m + 1):
        x1 = i / m
        for j in range(m + 1):
            x2 = j / m
            x3 = 1.0 - x1 - x2
            if x1 >= x2 - 1e-12 and x2 >= x3 - 1e-12 and x3 >= -1e-12:
                pts.append((x1, x2, max(x3, 0.0)))
    arr = np.array(pts)
    x1, x2, x3 = arr[:, 0], arr[:, 1], arr[:, 2]
    a = -2 * x1**2 + x2**2 - 2 * x1 * x2 + 2 * x1
    b = (2 * x1 + x2 - 1.0) ** 2

    def ent(v):
        return np.where(v > 0, -v * np.log(np.where(v > 0, v, 1.0)), 0.0)

    s = ent(x1) + ent(x2) + ent(x3)
    return arr, a, b, s


_REGION_CACHE: dict = {}


def _phi_r_max(J1: float, J2: float) -> Tuple[float, Tuple[float, float]]:
    """Global max of phi over the region R, Newton-refined."""
    if "grid" not in _REGION_CACHE:
        _REGION_CACHE["grid"] = _phi_region_r_arrays()
    arr, a, b, s = _REGION_CACHE["grid"]
    vals = 0.5 * (J2 * a + J1 * b) + s
    order = np.argsort(vals)[::-1][:12]

    def f_and_grad(x1: float, x2: float):
        x3 = 1.0 - x1 - x2
        if x1 <= 0 or x2 <= 0 or x3 <= 0:
            return None
        val = 0.5 * (
            J2 * (-2 * x1**2 + x2**2 - 2 * x1 * x2 + 2 * x1)
            + J1 * (2 * x1 + x2 - 1.0) ** 2
        ) - x1 * math.log(x1) - x2 * math.log(x2) - x3 * math.log(x3)
        g1 = (2 * J1 - J2) * (2 * x1 + x2 - 1.0) - math.log(x1) + math.log(x3)
        g2 = J1 * (2 * x1 + x2 - 1.0) + J2 * (x2 - x1) - math.log(x2) + math.log(x3)
        h11 = 2 * (2 * J1 - J2) - 1.0 / x1 - 1.0 / x3
        h12 = (2 * J1 - J2) - 1.0 / x3
        h22 = J1 + J2 - 1.0 / x2 - 1.0 / x3
        return val, np.array([g1, g2]), np.array([[h11, h12], [h12, h22]])

    best_val = float(np.max(vals))
    best_pt = (float(arr[order[0], 0]), float(arr[order[0], 1]))
    for idx in order:
        x = np.array([arr[idx, 0], arr[idx, 1]])
        x = np.clip(x, 1e-6, None)
        for _ in range(60):
            res = f_and_grad(x[0], x[1])
            if res is None:
                break
            val, grad, hess = res
            if np.max(np.abs(grad)) < 1e-12:
                break
            try:
                step = np.linalg.solve(hess, grad)
            except np.linalg.LinAlgError:
                break
            scale = 1.0
            moved = False
            for _ in range(30):
                cand = x - scale * step
                rc = f_and_grad(cand[0], cand[1])
                if rc is not None and rc[0] >= val - 1e-15:
                    x = cand
                    moved = True
                    break
                scale *= 0.5
            if not moved:
                break
        res = f_and_grad(x[0], x[1])
        if res is None:
            continue
        val = res[0]
        # keep only points inside (or on) the region
        x1, x2 = float(x[0]), float(x[1])
        x3 = 1.0 - x1 - x2
        if x1 >= x2 - 1e-9 and x2 >= x3 - 1e-9 and x3 >= -1e-12:
            if val > best_val:
                best_val, best_pt = val, (x1, x2)
    return best_val, best_pt


def _phi_r_sym(J1: float, J2: float) -> float:
    x = 1.0 / 3.0
    return 0.5 * (J2 * (-2 * x * x + x * x - 2 * x * x + 2 * x) + J1 * 0.0) + 3 * (
        -x * math.log(x)
    )


def in_disordered_region(J1: float, J2: float, tol: float = 1e-9) -> bool:
    """Is the symmetric point the global maximiser of phi over R at (J1, J2)?"""
    max_val, _ = _phi_r_max(J1, J2)
    return max_val <= _phi_r_sym(J1, J2) + tol


def trace_curve_C(resolution: int = 40,
                  j1_min: float = 1.9) -> List[Tuple[float, float]]:
    """Boundary of the spin-1 disordered region inside the wedge J1 >= J2.

    For each J1 on a grid the boundary J2 is found by bisecting the
    membership predicate vertically (moving straight down eventually leaves
    the region, so membership along that ray is monotone).  The polyline
    follows the straight piece J2 = 2 J1 - 3 below (9/4, 3/2) and the convex
    arc joining (9/4, 3/2) to (log 16, log 16).
    """
    if resolution < 10:
        raise ValueError("resolution >= 10 required")
    j1_max = LOG16 - 2e-3
    grid = [j1_min + (j1_max - j1_min) * i / (resolution - 1) for i in range(resolution)]
    # always sample the junction of the straight piece and the arc
    if j1_min < 2.25 < j1_max:
        grid.append(2.25)
    out: List[Tuple[float, float]] = []
    for J1 in sorted(grid):
        hi = min(J1, LOG16) - 1e-9  # inside the region
        lo = 2 * J1 - 3.0 - 0.5  # comfortably outside
        if not in_disordered_region(J1, hi):
            raise RuntimeError(f"bisection bracket broken at J1={J1}: top not inside")
        if in_disordered_region(J1, lo):
            raise RuntimeError(f"bisection bracket broken at J1={J1}: bottom not outside")
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            if in_disordered_region(J1, mid):
                hi = mid
            else:
                lo = mid
            if hi - lo < 1e-11:
                break
        out.append((J1, 0.5 * (lo + hi)))
    return out
