"""Finite probability distributions on ordered state spaces.

Distributions, stochastic dominance, the comonotone (quantile) coupling and
the relatively-independent gluing of two couplings over a common middle
marginal.  States live on an `OrderedStateSpace`: either totally ordered (the
stored state order is the order) or partially ordered coordinate-wise through
an integer coordinate vector per state.

All values are immutable after construction and every operation is a pure
function, so everything here is safe to call concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence, Tuple

from .errors import (
    MarginMismatchError,
    SpaceMismatchError,
    TotalOrderError,
    ValidationError,
)
from .numeric import (
    FLOAT_MARGIN_TOL,
    FLOAT_SUM_TOL,
    Mode,
    Scalar,
    coerce,
    common_mode,
    join_modes,
    scalars_equal,
    zero,
)

State = object  # state identifiers: ints, strings or coordinate tuples


@dataclass(frozen=True)
class OrderedStateSpace:
    """Finite state space of one level, with a total or coordinate order.

    `level` is the (nonpositive) time index the space belongs to.  When
    `total_order` is set the states must be stored in strictly ascending
    order.  `coordinates` optionally attaches an integer vector to each state
    (same dimension d >= 1 for all states), giving the coordinate-wise
    partial order used by multidimensional chains.
    """

    level: int
    states: Tuple[State, ...]
    total_order: bool = True
    coordinates: Optional[Tuple[Tuple[int, ...], ...]] = None

    def __post_init__(self):
        if self.level > 0:
            raise ValidationError(f"level must be <= 0, got {self.level}")
        if not self.states:
            raise ValidationError("state space must be nonempty")
        if len(set(self.states)) != len(self.states):
            raise ValidationError("states must be distinct")
        if self.total_order:
            for a, b in zip(self.states, self.states[1:]):
                if not a < b:
                    raise ValidationError(
                        "totally ordered states must be stored strictly ascending"
                    )
        if self.coordinates is not None:
            if len(self.coordinates) != len(self.states):
                raise ValidationError("one coordinate vector per state required")
            dims = {len(c) for c in self.coordinates}
            if len(dims) != 1 or min(dims) < 1:
                raise ValidationError("coordinate vectors must share dimension d >= 1")

    @cached_property
    def _index(self) -> dict:
        return {s: i for i, s in enumerate(self.states)}

    def index(self, state: State) -> int:
        try:
            return self._index[state]
        except KeyError:
            raise ValidationError(f"state {state!r} not in level-{self.level} space")

    def __len__(self) -> int:
        return len(self.states)

    def __contains__(self, state: State) -> bool:
        return state in self._index

    @property
    def dimension(self) -> Optional[int]:
        if self.coordinates is None:
            return None
        return len(self.coordinates[0])

    def coordinate_of(self, state: State) -> Tuple[int, ...]:
        if self.coordinates is None:
            raise ValidationError("space has no coordinates")
        return self.coordinates[self.index(state)]

    def leq(self, x: State, y: State) -> bool:
        """Order comparison: total order or coordinate-wise partial order."""
        if self.total_order:
            return self.index(x) <= self.index(y)
        if self.coordinates is not None:
            cx, cy = self.coordinate_of(x), self.coordinate_of(y)
            return all(a <= b for a, b in zip(cx, cy))
        raise TotalOrderError("space has neither a total order nor coordinates")


def _state_leq(x: State, y: State) -> bool:
    """Cross-space comparison for coupling supports (numbers or int tuples)."""
    if isinstance(x, tuple) and isinstance(y, tuple):
        return all(a <= b for a, b in zip(x, y))
    return x <= y


@dataclass(frozen=True)
class Dist:
    """Probability vector over an OrderedStateSpace, exact or float."""

    space: OrderedStateSpace
    weights: Tuple[Scalar, ...]

    def __post_init__(self):
        if len(self.weights) != len(self.space):
            raise ValidationError("one weight per state required")
        mode = common_mode(self.weights)
        for w in self.weights:
            if w < 0:
                raise ValidationError(f"negative weight {w}")
        total = sum(self.weights)
        if not scalars_equal(total, 1 if mode == "exact" else 1.0, mode, FLOAT_SUM_TOL):
            raise ValidationError(f"weights sum to {total}, not 1")

    @cached_property
    def mode(self) -> Mode:
        return common_mode(self.weights)

    def weight(self, state: State) -> Scalar:
        return self.weights[self.space.index(state)]

    def support(self) -> Tuple[State, ...]:
        return tuple(s for s, w in zip(self.space.states, self.weights) if w > 0)

    def mean(self) -> Scalar:
        """Expectation of the identity; states must be numeric."""
        return sum(w * s for s, w in zip(self.space.states, self.weights))


def make_dist(space: OrderedStateSpace, weights: Sequence[Scalar]) -> Dist:
    """Normalize nonnegative weights into a Dist (exact in exact mode)."""
    if len(weights) != len(space):
        raise ValidationError(
            f"{len(weights)} weights for {len(space)} states"
        )
    mode = common_mode(weights)
    ws = [coerce(w, mode) for w in weights]
    for w in ws:
        if w < 0:
            raise ValidationError(f"negative weight {w}")
    total = sum(ws)
    if total == 0:
        raise ValidationError("zero total mass")
    return Dist(space, tuple(w / total for w in ws))


def delta(space: OrderedStateSpace, state: State) -> Dist:
    """Point mass, exact mode."""
    i = space.index(state)
    return Dist(space, tuple(Fraction(1 if j == i else 0) for j in range(len(space))))


def uniform(space: OrderedStateSpace) -> Dist:
    n = len(space)
    return Dist(space, (Fraction(1, n),) * n)


def cdf(d: Dist) -> Tuple[Scalar, ...]:
    """Prefix sums in state order; requires a total order."""
    if not d.space.total_order:
        raise TotalOrderError("cdf requires a totally ordered space")
    out = []
    acc = zero(d.mode)
    for w in d.weights:
        acc = acc + w
        out.append(acc)
    return tuple(out)


def stochastically_dominates(nu: Dist, mu: Dist) -> bool:
    """True iff mu <=st nu, i.e. cdf(nu) <= cdf(mu) pointwise."""
    if nu.space != mu.space:
        raise SpaceMismatchError("dominance needs a common space")
    if not nu.space.total_order:
        raise TotalOrderError("stochastic dominance requires a total order")
    return all(fn <= fm for fn, fm in zip(cdf(nu), cdf(mu)))


@dataclass(frozen=True)
class CouplingPlan:
    """Joint distribution with prescribed row and column margins."""

    row_space: OrderedStateSpace
    col_space: OrderedStateSpace
    joint: Tuple[Tuple[Scalar, ...], ...]
    row_margin: Dist
    col_margin: Dist

    def __post_init__(self):
        if self.row_margin.space != self.row_space or self.col_margin.space != self.col_space:
            raise SpaceMismatchError("margins must live on the plan's spaces")
        mode = join_modes(self.row_margin.mode, self.col_margin.mode)
        tol = FLOAT_MARGIN_TOL
        if len(self.joint) != len(self.row_space):
            raise ValidationError("joint row count mismatch")
        for i, row in enumerate(self.joint):
            if len(row) != len(self.col_space):
                raise ValidationError("joint column count mismatch")
            for w in row:
                if w < 0:
                    raise ValidationError("negative joint mass")
            if not scalars_equal(sum(row), self.row_margin.weights[i], mode, tol):
                raise MarginMismatchError(f"row margin mismatch at index {i}")
        for j in range(len(self.col_space)):
            col = sum(row[j] for row in self.joint)
            if not scalars_equal(col, self.col_margin.weights[j], mode, tol):
                raise MarginMismatchError(f"column margin mismatch at index {j}")

    @property
    def mode(self) -> Mode:
        return self.row_margin.mode

    def mass(self, x: State, y: State) -> Scalar:
        return self.joint[self.row_space.index(x)][self.col_space.index(y)]

    def support(self) -> Tuple[Tuple[State, State], ...]:
        out = []
        for i, x in enumerate(self.row_space.states):
            for j, y in enumerate(self.col_space.states):
                if self.joint[i][j] > 0:
                    out.append((x, y))
        return tuple(out)

    def ordered_direction(self) -> Optional[str]:
        """"le", "ge", "both" when the support is ordered, else None."""
        le = all(_state_leq(x, y) for x, y in self.support())
        ge = all(_state_leq(y, x) for x, y in self.support())
        if le and ge:
            return "both"
        if le:
            return "le"
        if ge:
            return "ge"
        return None

    @property
    def is_ordered(self) -> bool:
        return self.ordered_direction() is not None

    def expected_cost(self, cost) -> Scalar:
        """Sum of joint mass times cost(x, y) over the support."""
        total = zero(self.mode)
        for i, x in enumerate(self.row_space.states):
            for j, y in enumerate(self.col_space.states):
                w = self.joint[i][j]
                if w > 0:
                    total = total + w * cost(x, y)
        return total


def quantile_coupling(mu: Dist, nu: Dist) -> CouplingPlan:
    """Comonotone plan: overlap of the two CDF interval partitions.

    If mu <=st nu the support lies in {x <= y}; more generally the plan is the
    image of a single uniform innovation through both quantile functions.
    """
    if not mu.space.total_order or not nu.space.total_order:
        raise TotalOrderError("quantile coupling requires totally ordered spaces")
    mode = join_modes(mu.mode, nu.mode)
    nr, nc = len(mu.space), len(nu.space)
    joint = [[zero(mode) for _ in range(nc)] for _ in range(nr)]
    i = j = 0
    fi, fj = mu.weights[0], nu.weights[0]
    # walk both CDFs, assigning each overlap to the corresponding pair
    while i < nr and j < nc:
        step = fi if fi <= fj else fj
        if step > 0:
            joint[i][j] = joint[i][j] + step
        fi = fi - step
        fj = fj - step
        if fi == 0 and i < nr - 1:
            i += 1
            fi = mu.weights[i]
        elif fi == 0:
            break
        if fj == 0 and j < nc - 1:
            j += 1
            fj = nu.weights[j]
        elif fj == 0:
            break
    return CouplingPlan(mu.space, nu.space, tuple(tuple(r) for r in joint), mu, nu)


def independent_coupling(mu: Dist, nu: Dist) -> CouplingPlan:
    """Product plan; handy as a non-ordered reference in tests."""
    join_modes(mu.mode, nu.mode)
    joint = tuple(tuple(a * b for b in nu.weights) for a in mu.weights)
    return CouplingPlan(mu.space, nu.space, joint, mu, nu)


@dataclass(frozen=True)
class ThreeWayCoupling:
    """Joint law of (a, b, c) from gluing two plans over the middle margin."""

    space_a: OrderedStateSpace
    space_b: OrderedStateSpace
    space_c: OrderedStateSpace
    joint: Tuple[Tuple[Tuple[Scalar, ...], ...], ...]  # indexed [a][b][c]

    def mass(self, a: State, b: State, c: State) -> Scalar:
        return self.joint[self.space_a.index(a)][self.space_b.index(b)][self.space_c.index(c)]

    def _margins(self):
        mode = common_mode(
            w for plane in self.joint for row in plane for w in row
        )
        na, nb, nc = len(self.space_a), len(self.space_b), len(self.space_c)
        ab = [[zero(mode)] * nb for _ in range(na)]
        bc = [[zero(mode)] * nc for _ in range(nb)]
        ac = [[zero(mode)] * nc for _ in range(na)]
        for i in range(na):
            for j in range(nb):
                for k in range(nc):
                    w = self.joint[i][j][k]
                    if w == 0:
                        continue
                    ab[i][j] = ab[i][j] + w
                    bc[j][k] = bc[j][k] + w
                    ac[i][k] = ac[i][k] + w
        return ab, bc, ac

    def _plan(self, rows, row_space, col_space) -> CouplingPlan:
        row_m = make_dist(row_space, [sum(r) for r in rows])
        col_m = make_dist(col_space, [sum(r[j] for r in rows) for j in range(len(col_space))])
        return CouplingPlan(row_space, col_space, tuple(tuple(r) for r in rows), row_m, col_m)

    def margin_ab(self) -> CouplingPlan:
        ab, _, _ = self._margins()
        return self._plan(ab, self.space_a, self.space_b)

    def margin_bc(self) -> CouplingPlan:
        _, bc, _ = self._margins()
        return self._plan(bc, self.space_b, self.space_c)

    def margin_ac(self) -> CouplingPlan:
        _, _, ac = self._margins()
        return self._plan(ac, self.space_a, self.space_c)


def glue_couplings(pi_ab: CouplingPlan, pi_bc: CouplingPlan) -> ThreeWayCoupling:
    """Relatively independent coupling over the common middle margin.

    P(a,b,c) = pi_ab(a,b) * pi_bc(b,c) / nu(b) whenever nu(b) > 0, else 0.
    Zero-probability middle states contribute zero mass by convention.
    """
    mode = join_modes(pi_ab.mode, pi_bc.mode)
    nu, nu2 = pi_ab.col_margin, pi_bc.row_margin
    if nu.space != nu2.space:
        raise SpaceMismatchError("middle spaces differ")
    tol = 0.0 if mode == "exact" else FLOAT_MARGIN_TOL
    for wb, wb2 in zip(nu.weights, nu2.weights):
        if abs(wb - wb2) > tol:
            raise MarginMismatchError("middle margins of the two plans differ")
    na, nb, nc = len(pi_ab.row_space), len(nu.space), len(pi_bc.col_space)
    joint = [[[zero(mode) for _ in range(nc)] for _ in range(nb)] for _ in range(na)]
    for j in range(nb):
        wb = nu.weights[j]
        if wb == 0:
            continue
        for i in range(na):
            w_ab = pi_ab.joint[i][j]
            if w_ab == 0:
                continue
            for k in range(nc):
                w_bc = pi_bc.joint[j][k]
                if w_bc == 0:
                    continue
                joint[i][j][k] = w_ab * w_bc / wb
    return ThreeWayCoupling(
        pi_ab.row_space,
        nu.space,
        pi_bc.col_space,
        tuple(tuple(tuple(r) for r in plane) for plane in joint),
    )


def total_variation(mu: Dist, nu: Dist) -> Scalar:
    """(1/2) * sum |mu(x) - nu(x)|; Kantorovich under the discrete metric."""
    if mu.space != nu.space:
        raise SpaceMismatchError("total variation needs a common space")
    join_modes(mu.mode, nu.mode)
    return sum(abs(a - b) for a, b in zip(mu.weights, nu.weights)) / 2
