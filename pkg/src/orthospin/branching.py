"""Brauer-algebra / symmetric-group branching coefficients b^{n,theta}.

Exact values for theta = 2, 3 come from the column recurrence (strip the
theta-th row of rho, flipping lambda when the stripped row length is odd)
followed by the cell-module identity b = btilde valid once the first two
columns of rho sum to at most theta + 1.  For general theta the one-column
rule (lambda a single column (1^j): b = 1 exactly when rho has j odd parts)
and the same cell identity cover part of the lattice; outside that the
package answers from a dense spectral-extraction oracle when the tensor
space is small, and otherwise returns an explicit POSITIVITY_UNKNOWN
sentinel rather than a guess.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

import numpy as np

from .partitions import (
    LambdaRhoPair,
    Partition,
    admissible_lambda,
    column_flip,
    content_sum,
    enumerate_lambda_rho,
    transpose,
)
from .tableaux import cell_branching, dim_sn


class _PositivityUnknown:
    def __repr__(self):
        return "POSITIVITY_UNKNOWN"

    def __bool__(self):
        raise TypeError("branching coefficient unknown; no truth value")


POSITIVITY_UNKNOWN = _PositivityUnknown()


class UnresolvedExtractionError(RuntimeError):
    """Raised when eigenvalue collisions cannot be resolved; shrink n."""


def _validate_pair(pair: LambdaRhoPair, theta: int) -> None:
    if pair.k < 0:
        raise ValueError(f"{pair!r} has negative defect")
    if not admissible_lambda(pair.lam, theta):
        raise ValueError(f"{pair!r}: lambda columns exceed theta={theta}")
    if transpose(pair.rho)[0] > theta:
        raise ValueError(f"{pair!r}: rho has more than theta={theta} rows")


def reduce_by_recurrence(pair: LambdaRhoPair, theta: int) -> LambdaRhoPair:
    """Strip rho_theta from every row of rho; flip lambda if rho_theta is odd.

    The branching coefficient is invariant under this reduction.  The result
    can have negative defect (lambda larger than rho), in which case the
    coefficient is zero.
    """
    rt = pair.rho[theta - 1]
    if rt == 0:
        return pair
    new_rho = Partition(tuple(max(r - rt, 0) for r in pair.rho.parts))
    lam = pair.lam if rt % 2 == 0 else column_flip(pair.lam, theta)
    diff = new_rho.size - lam.size
    if diff % 2 != 0:
        raise ArithmeticError("parity broken by recurrence reduction")
    return LambdaRhoPair(lam, diff // 2, new_rho)


def _is_one_column(lam: Partition) -> Optional[int]:
    """j if lam = (1^j) (including the empty partition as j=0), else None."""
    if all(p == 1 for p in lam.parts):
        return len(lam)
    return None


def _odd_parts(rho: Partition) -> int:
    return sum(1 for p in rho.parts if p % 2 == 1)


def _rho_two_columns(rho: Partition) -> int:
    cols = transpose(rho).parts
    t1 = cols[0] if cols else 0
    t2 = cols[1] if len(cols) > 1 else 0
    return t1 + t2


def is_positive_closed_form(pair: LambdaRhoPair, theta: int) -> bool:
    """Exact positivity predicate for theta = 2, 3.

    theta=2: positive iff lambda_1 <= rho_1 - rho_2, except lambda empty
    (both rows of rho must be even) and lambda = (1,1) (both rows odd).
    theta=3: positive iff lambda_1 <= rho_1 - rho_3, with the one-column
    labels following the odd-parts rule and the one-row / hook labels
    excluded when the stated row-parity degeneracies occur.
    """
    if theta not in (2, 3):
        raise ValueError("closed-form positivity available for theta in {2,3}")
    _validate_pair(pair, theta)
    lam, rho = pair.lam, pair.rho
    if theta == 2:
        if lam.parts == ():
            return rho[0] % 2 == 0 and rho[1] % 2 == 0
        if lam.parts == (1, 1):
            return rho[0] % 2 == 1 and rho[1] % 2 == 1
        return lam[0] <= rho[0] - rho[1]

    j = _is_one_column(lam)
    if j is not None:
        return _odd_parts(rho) == j
    if lam[0] > rho[0] - rho[2]:
        return False
    if len(lam) == 1:
        if rho[1] == rho[2] and rho[2] % 2 == 1:
            return False
        if rho[0] == rho[1] and rho[1] % 2 == 1:
            return False
        return True
    if len(lam) == 2 and lam[1] == 1:
        if rho[1] == rho[2] and rho[2] % 2 == 0:
            return False
        if rho[0] == rho[1] and rho[1] % 2 == 0:
            return False
        return True
    raise AssertionError(f"unexpected theta=3 label {lam!r}")


def _b_by_reduction(pair: LambdaRhoPair, theta: int):
    """Recurrence + cell-module path; exact for theta=2,3, partial beyond."""
    reduced = pair
    rt = pair.rho[theta - 1]
    if rt > 0:
        new_rho = Partition(tuple(max(r - rt, 0) for r in pair.rho.parts))
        lam = pair.lam if rt % 2 == 0 else column_flip(pair.lam, theta)
        if lam.size > new_rho.size:
            return 0
        reduced = LambdaRhoPair(lam, (new_rho.size - lam.size) // 2, new_rho)
    lam, rho = reduced.lam, reduced.rho
    j = _is_one_column(lam)
    if j is not None:
        return 1 if _odd_parts(rho) == j else 0
    if _rho_two_columns(rho) <= theta + 1:
        return cell_branching(lam, rho)
    return None


def b_coefficient(pair: LambdaRhoPair, theta: int, use_oracle: bool = True,
                  oracle_seed: int = 0):
    """Exact branching coefficient, or POSITIVITY_UNKNOWN when out of reach.

    theta=2: every positive coefficient equals one, so the closed-form
    predicate is the value.  theta=3: recurrence + cell-module reduction
    (always applicable).  theta>=4: one-column rule and the cell identity
    where they apply, otherwise the dense spectral oracle for small n.
    """
    _validate_pair(pair, theta)
    if theta == 2:
        return 1 if is_positive_closed_form(pair, theta) else 0
    value = _b_by_reduction(pair, theta)
    if value is not None:
        return value
    if use_oracle:
        n = pair.rho.size
        from .spectra import dense_cap

        if theta**n <= dense_cap():
            table = _oracle_table(n, theta, oracle_seed)
            return table[(pair.lam.parts, pair.k, pair.rho.parts)]
    return POSITIVITY_UNKNOWN


@lru_cache(maxsize=None)
def enumerate_Pn(n: int, theta: int, oracle: bool = False) -> Tuple[Tuple[LambdaRhoPair, int], ...]:
    """All pairs with positive branching coefficient and their multiplicities."""
    out = []
    if oracle:
        for pair, b in spectral_extract_branching(n, theta):
            if b > 0:
                out.append((pair, b))
        return tuple(out)
    for pair in enumerate_lambda_rho(n, theta):
        b = b_coefficient(pair, theta, use_oracle=False)
        if b is POSITIVITY_UNKNOWN:
            raise ValueError(
                f"exact mode cannot decide {pair!r} at theta={theta}; use oracle"
            )
        if b > 0:
            out.append((pair, b))
    return tuple(out)


# ---------------------------------------------------------------------------
# spectral extraction oracle

def _three_cycle_sum(theta: int, n: int) -> np.ndarray:
    """Dense matrix of the sum of all 3-cycles acting by place permutation."""
    from .spectra import _check_cap
    from .brauer import _perm_indices

    _check_cap(theta, n)
    N = theta**n
    out = np.zeros((N, N))
    cols = np.arange(N)
    for x, y, z in itertools.combinations(range(1, n + 1), 3):
        for cyc in ((y, z, x), (z, x, y)):
            sigma = list(range(1, n + 1))
            sigma[x - 1], sigma[y - 1], sigma[z - 1] = cyc
            rows = _perm_indices(sigma, theta, n)
            np.add.at(out, (rows, cols), 1.0)
    return out


def _omega3(rho: Partition) -> float:
    """Scalar of the 3-cycle class sum on the rho irreducible:
    sum of squared contents minus C(n,2)."""
    total = 0
    for i, row in enumerate(rho.parts):
        for j in range(row):
            total += (j - i) ** 2
    n = rho.size
    return float(total - n * (n - 1) // 2)


@lru_cache(maxsize=None)
def _oracle_table(n: int, theta: int, seed: int = 0) -> Dict[Tuple, int]:
    pairs_b = spectral_extract_branching(n, theta, seed=seed)
    return {
        (pair.lam.parts, pair.k, pair.rho.parts): b for pair, b in pairs_b
    }


def spectral_extract_branching(
    n: int,
    theta: int,
    L1: Optional[float] = None,
    L2: Optional[float] = None,
    seed: int = 0,
    max_resamples: int = 10,
) -> List[Tuple[LambdaRhoPair, int]]:
    """Read b off the dense spectrum of H(L1, L2).

    Candidates sharing the exact integer invariants (c(rho), c(lambda) +
    k(1-theta)) collide at every parameter choice; those groups are resolved
    by combining the measured eigenspace dimension, the cell-module upper
    bound b <= btilde, and the restriction of the 3-cycle class sum to the
    eigenspace.  Raises UnresolvedExtractionError when that still leaves
    more than one integer solution.
    """
    from . import spectra
    from .group_chars import dim_o

    spectra._check_cap(theta, n)
    rng = np.random.default_rng(seed)
    candidates = enumerate_lambda_rho(n, theta)
    invariants = [
        (content_sum(p.rho), content_sum(p.lam) + p.k * (1 - theta))
        for p in candidates
    ]
    weights = [dim_o(p.lam, theta) * dim_sn(p.rho) for p in candidates]
    btilde = []
    for p in candidates:
        bt = cell_branching(p.lam, p.rho) if p.rho.contains(p.lam) else 0
        btilde.append(bt)

    groups: Dict[Tuple[int, int], List[int]] = {}
    for i, inv in enumerate(invariants):
        groups.setdefault(inv, []).append(i)
    group_keys = list(groups.keys())

    def predicted(key: Tuple[int, int], l1: float, l2: float) -> float:
        crho, cbr = key
        return -((l1 + l2) * crho - l2 * cbr)

    # find parameters separating the distinct invariant groups
    for attempt in range(max_resamples):
        if L1 is not None and attempt == 0:
            l1, l2 = float(L1), float(L2)
        else:
            l1 = float(rng.uniform(0.6, 2.0))
            l2 = float(rng.uniform(0.25, 1.0)) * (1 if attempt % 2 == 0 else -1)
        values = [predicted(k, l1, l2) for k in group_keys]
        order = np.argsort(values)
        gaps = np.diff(np.sort(values))
        if len(values) < 2 or np.min(gaps) > 1e-3 * max(1.0, n):
            break
    else:
        raise UnresolvedExtractionError("could not separate invariant groups")

    sum_t, sum_b = spectra.sum_pair_ops(theta, n, "Q")
    ham = -(l1 * sum_t + l2 * sum_b)
    evals, evecs = np.linalg.eigh(ham)

    match_tol = 1e-7 * max(1.0, float(np.max(np.abs(evals))))
    values = np.array([predicted(k, l1, l2) for k in group_keys])
    assign = np.argmin(np.abs(evals[:, None] - values[None, :]), axis=1)
    if np.max(np.abs(evals - values[assign])) > match_tol:
        raise UnresolvedExtractionError("dense eigenvalue outside every predicted line")
    dims = np.bincount(assign, minlength=len(group_keys))

    c3 = None
    result: Dict[int, int] = {}
    for gi, key in enumerate(group_keys):
        members = groups[key]
        dim = int(dims[gi])
        live = [i for i in members if btilde[i] > 0]
        for i in members:
            if btilde[i] == 0:
                result[i] = 0
        if not live:
            if dim != 0:
                raise UnresolvedExtractionError(
                    f"eigenspace of dimension {dim} with no admissible candidate"
                )
            continue
        if len(live) == 1:
            i = live[0]
            b, rem = divmod(dim, weights[i])
            if rem != 0 or b > btilde[i]:
                raise UnresolvedExtractionError(
                    f"dimension {dim} not a multiple of {weights[i]} for {candidates[i]!r}"
                )
            result[i] = b
            continue
        # collision group: enumerate integer solutions within cell bounds
        sols = []
        for combo in itertools.product(*(range(btilde[i] + 1) for i in live)):
            if sum(b * weights[i] for b, i in zip(combo, live)) == dim:
                sols.append(combo)
        if len(sols) > 1:
            if c3 is None:
                c3 = _three_cycle_sum(theta, n)
            sel = np.nonzero(assign == gi)[0]
            block = evecs[:, sel]
            moment = float(np.real(np.sum(np.conj(block) * (c3 @ block))))
            omegas = [_omega3(candidates[i].rho) for i in live]
            sols = [
                combo
                for combo in sols
                if abs(
                    sum(b * weights[i] * om for b, i, om in zip(combo, live, omegas))
                    - moment
                )
                < 1e-4 * max(1.0, abs(moment))
            ]
        if len(sols) != 1:
            raise UnresolvedExtractionError(
                f"collision group {[(candidates[i]) for i in live]} unresolved"
            )
        for b, i in zip(sols[0], live):
            result[i] = b

    total = sum(result[i] * weights[i] for i in range(len(candidates)))
    if total != theta**n:
        raise UnresolvedExtractionError(
            f"multiplicities sum to {total}, expected {theta**n}"
        )
    return [(candidates[i], result[i]) for i in range(len(candidates))]
