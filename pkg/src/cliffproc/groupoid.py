"""Process groupoid: extensives, their partial composition, and iterants.

An extensive ``[P Q]`` is a directed process from point ``P`` to point ``Q``
carrying a real strength.  Two extensives compose when they meet at a shared
point.  The orientation rule ``[P Q] = -[Q P]`` lets a pair meet in any of
four ways; the shared point contributes its metric sign.  A loop ``[X X]``
is a point rather than a process and evaluates to the metric sign of ``X``.

The second half of the module holds the iterant calculus: ordered pairs
``[A, B]`` with componentwise arithmetic, and the linear operators
(annihilator, creator and friends) that act on them.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Hashable, Mapping, Sequence

import numpy as np

from .algebra import Algebra, Multivector

Point = Hashable


class ConstructionError(ValueError):
    """The process table does not close into a Clifford algebra."""


class _Undefined:
    """Outcome of composing two extensives that share no point."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __bool__(self):
        return False

    def __repr__(self):
        return "UNDEFINED"

    def __reduce__(self):
        return (_Undefined, ())


UNDEFINED = _Undefined()


@dataclass(frozen=True)
class Extensive:
    source: Point
    target: Point
    strength: float = 1.0

    @property
    def is_loop(self) -> bool:
        return self.source == self.target

    def swapped(self) -> "Extensive":
        """Endpoint swap.  A loop has no orientation, so it is returned unchanged."""
        if self.is_loop:
            return self
        return Extensive(self.target, self.source, -self.strength)

    def scaled(self, c: float) -> "Extensive":
        return Extensive(self.source, self.target, self.strength * c)

    def __neg__(self):
        return self.scaled(-1.0)

    def __repr__(self):
        s = self.strength
        prefix = "" if s == 1 else "-" if s == -1 else f"{s:g}*"
        return f"{prefix}[{self.source} {self.target}]"


def _sign(metric: Mapping[Point, int], p: Point) -> int:
    try:
        g = metric[p]
    except KeyError:
        raise KeyError(f"no metric sign assigned to point {p!r}") from None
    if g not in (1, -1):
        raise ValueError(f"metric sign of {p!r} must be +1 or -1, got {g!r}")
    return g


def compose(a: Extensive, b: Extensive, metric: Mapping[Point, int],
            incidence: bool = False):
    """Compose ``a`` then ``b``: ``[P Q] . [Q R] = g_Q [P R]``.

    If the pair does not meet head to tail as given, the orientation rule is
    used to flip ``b``, then ``a``, then both.  Pairs sharing no point give
    :data:`UNDEFINED`, or ``0.0`` when ``incidence`` is set.
    """
    for fa, fb in ((False, False), (False, True), (True, False), (True, True)):
        x = a.swapped() if fa else a
        y = b.swapped() if fb else b
        if x.target == y.source:
            g = _sign(metric, x.target)
            return Extensive(x.source, y.target, g * x.strength * y.strength)
    return 0.0 if incidence else UNDEFINED


def evaluate(x, metric: Mapping[Point, int]):
    """Canonical form used to compare composition results.

    Loops become the scalar ``strength * g_X``; other extensives are put in a
    fixed orientation (source sorts before target by ``repr``).
    """
    if x is UNDEFINED or isinstance(x, float):
        return x
    if x.is_loop:
        return ("scalar", x.strength * _sign(metric, x.source))
    if repr(x.source) > repr(x.target):
        x = x.swapped()
    return ("arrow", x.source, x.target, x.strength)


def results_equal(x, y, metric, atol: float = 0.0) -> bool:
    ex, ey = evaluate(x, metric), evaluate(y, metric)
    if ex is UNDEFINED or ey is UNDEFINED or isinstance(ex, float) or isinstance(ey, float):
        return ex == ey
    if ex[:-1] != ey[:-1]:
        return False
    return abs(ex[-1] - ey[-1]) <= atol


def associativity_failures(points: Sequence[Point], metric: Mapping[Point, int]):
    """Exhaustively compose all triples of unit extensives over ``points``.

    Returns the list of triples where both groupings are defined but differ.
    """
    arrows = [Extensive(p, q) for p in points for q in points]
    bad = []
    for a, b, c in itertools.product(arrows, repeat=3):
        ab = compose(a, b, metric)
        bc = compose(b, c, metric)
        if ab is UNDEFINED or bc is UNDEFINED:
            continue
        left = compose(ab, c, metric)
        right = compose(a, bc, metric)
        if left is UNDEFINED or right is UNDEFINED:
            continue
        if not results_equal(left, right, metric):
            bad.append((a, b, c))
    return bad


# -- realization as a Clifford algebra ---------------------------------

@dataclass(frozen=True)
class CliffordRealization:
    """A process table realized inside a Clifford algebra.

    ``images`` sends each ordered pair of points ``(P, Q)`` to the
    multivector representing the unit extensive ``[P Q]``.
    """
    algebra: Algebra
    signature: tuple[int, int]
    base: Point
    generators: tuple[Point, ...]
    images: Mapping[tuple[Point, Point], Multivector]
    metric: Mapping[Point, int]

    def image(self, x) -> Multivector | None:
        if x is UNDEFINED:
            return None
        if isinstance(x, float):
            return self.algebra.scalar(x)
        if x.is_loop:
            return self.algebra.scalar(x.strength * self.metric[x.source])
        return x.strength * self.images[(x.source, x.target)]

    def bracket_of(self, value: Multivector, prefer=(), atol: float = 1e-12) -> str | None:
        """Name ``value`` as +-1 or +-[P Q] if it is one of the unit extensives.

        Orientations listed in ``prefer`` are tried first.
        """
        one = self.algebra.scalar(1)
        if value.allclose(one, atol):
            return "1"
        if value.allclose(-one, atol):
            return "-1"
        keys = list(prefer) + [k for k in self.images if k not in prefer]
        for p, q in keys:
            img = self.images[(p, q)]
            if value.allclose(img, atol):
                return f"[{p}{q}]"
            if value.allclose(-img, atol):
                return f"-[{p}{q}]"
        return None


def build_clifford(generators: Sequence[Extensive], metric: Mapping[Point, int],
                   first_index: int = 1) -> CliffordRealization:
    """Realize the extensives ``[P0 Pi]`` as generators of a Clifford algebra.

    ``[P0 Pi] . [P0 Pi] = -g_i``, so the generator for ``Pi`` squares to
    ``-metric[Pi]``.  Generators squaring to +1 are placed first, giving the
    signature ``C(p, q)``.  Every product of two unit extensives that the
    groupoid defines must match the geometric product of their images,
    otherwise :class:`ConstructionError` is raised.
    """
    if not generators:
        raise ConstructionError("need at least one generator")
    base = generators[0].source
    if any(g.source != base for g in generators):
        raise ConstructionError("all generators must share the same source point")
    targets = [g.target for g in generators]
    if base in targets or len(set(targets)) != len(targets):
        raise ConstructionError("generator targets must be distinct and differ from the source")
    if any(g.strength != 1 for g in generators):
        raise ConstructionError("generators must have unit strength")
    points = [base, *targets]
    for p in points:
        _sign(metric, p)
    if metric[base] != 1:
        raise ConstructionError(f"[{base}{base}] must act as the unit (metric +1)")

    squares = []
    for g in generators:
        sq = evaluate(compose(g, g, metric), metric)
        squares.append(int(round(sq[1])))
    order = sorted(range(len(targets)), key=lambda i: squares[i] != 1)
    alg = Algebra([squares[i] for i in order], first_index=first_index)
    slot = {targets[i]: k for k, i in enumerate(order)}
    e = alg.generators()

    images: dict[tuple[Point, Point], Multivector] = {}
    g0 = metric[base]
    for t in targets:
        images[(base, t)] = e[slot[t]]
        images[(t, base)] = -e[slot[t]]
    for s, t in itertools.permutations(targets, 2):
        images[(s, t)] = -g0 * (e[slot[s]] * e[slot[t]])
    real = CliffordRealization(alg, (alg.p, alg.q), base,
                               tuple(targets[i] for i in order), images, dict(metric))

    arrows = [Extensive(p, q) for p in points for q in points]
    for a, b in itertools.product(arrows, repeat=2):
        ab = compose(a, b, metric)
        if ab is UNDEFINED:
            continue
        if not real.image(ab).allclose(real.image(a) * real.image(b), 1e-12):
            raise ConstructionError(f"{a!r} . {b!r} does not close under the metric {dict(metric)}")
    return real


def product_table(real: CliffordRealization, rows: Sequence[tuple[Point, Point]]):
    """Bracket-notation product table for the listed unit extensives."""
    out = []
    for r in rows:
        line = []
        for c in rows:
            prod = compose(Extensive(*r), Extensive(*c), real.metric)
            line.append(real.bracket_of(real.image(prod), rows) if prod is not UNDEFINED else None)
        out.append(line)
    return out


def full_product_table(real: CliffordRealization, rows: Sequence[tuple[Point, Point]],
                       route: str = "groupoid") -> list[list[str | None]]:
    """Full table layout: a header row and column headed by ``1``.

    Entry ``[i][j]`` is the product of row element ``i`` and column element
    ``j`` in bracket notation.  ``route="groupoid"`` composes extensives;
    ``route="algebra"`` multiplies their Clifford images instead.
    """
    if route not in ("groupoid", "algebra"):
        raise ValueError("route must be 'groupoid' or 'algebra'")
    labels = ["1"] + [f"[{p}{q}]" for p, q in rows]
    inner = product_table(real, rows) if route == "groupoid" else [
        [real.bracket_of(real.images[r] * real.images[c], rows) for c in rows] for r in rows]
    table = [labels]
    for i, r in enumerate(rows, start=1):
        table.append([labels[i]] + inner[i - 1])
    return table


# Reference multiplication tables, cell by cell (header row and column
# headed by 1).  The point metrics are the ones that produce them.
REFERENCE_TABLES = {
    "cl02": {
        "generators": [("P0", "P1"), ("P0", "P2")],
        "metric": {"P0": 1, "P1": 1, "P2": 1},
        "first_index": 1,
        "rows": [("P0", "P1"), ("P0", "P2"), ("P1", "P2")],
        "table": [
            ["1", "[P0P1]", "[P0P2]", "[P1P2]"],
            ["[P0P1]", "-1", "-[P1P2]", "[P0P2]"],
            ["[P0P2]", "[P1P2]", "-1", "-[P0P1]"],
            ["[P1P2]", "-[P0P2]", "[P0P1]", "-1"],
        ],
    },
    "cl11": {
        "generators": [("P0", "T"), ("P0", "P")],
        "metric": {"P0": 1, "T": -1, "P": 1},
        "first_index": 0,
        "rows": [("P0", "T"), ("P0", "P"), ("P", "T")],
        "table": [
            ["1", "[P0T]", "[P0P]", "[PT]"],
            ["[P0T]", "1", "[PT]", "[P0P]"],
            ["[P0P]", "-[PT]", "-1", "[P0T]"],
            ["[PT]", "-[P0P]", "-[P0T]", "1"],
        ],
    },
}


# -- iterants ----------------------------------------------------------

@dataclass(frozen=True)
class Iterant:
    """Ordered pair ``[A, B]`` with componentwise product and sum."""
    left: float
    right: float

    def __mul__(self, other):
        if isinstance(other, Iterant):
            return iterant_product(self, other)
        return Iterant(self.left * other, self.right * other)

    __rmul__ = __mul__

    def __add__(self, other: "Iterant"):
        return iterant_sum(self, other)

    def __neg__(self):
        return Iterant(-self.left, -self.right)

    def __sub__(self, other: "Iterant"):
        return iterant_sum(self, -other)

    def __iter__(self):
        return iter((self.left, self.right))

    def __repr__(self):
        return f"[{self.left}, {self.right}]"


def iterant_product(x: Iterant, y: Iterant) -> Iterant:
    return Iterant(x.left * y.left, x.right * y.right)


def iterant_sum(x: Iterant, y: Iterant) -> Iterant:
    return Iterant(x.left + y.left, x.right + y.right)


@dataclass(frozen=True)
class IterantOperator:
    """Linear map on iterants, stored as a 2x2 integer matrix acting on (A, B)."""
    name: str
    matrix: tuple[tuple[int, int], tuple[int, int]]

    def __call__(self, x: Iterant) -> Iterant:
        (p, q), (r, s) = self.matrix
        return Iterant(p * x.left + q * x.right, r * x.left + s * x.right)

    def _combine(self, other, op, sym):
        m = op(np.array(self.matrix), np.array(other.matrix))
        return IterantOperator(f"({self.name}{sym}{other.name})",
                               tuple(tuple(int(v) for v in row) for row in m))

    def __add__(self, other):
        return self._combine(other, np.add, "+")

    def __sub__(self, other):
        return self._combine(other, np.subtract, "-")

    def __matmul__(self, other):
        """Composition: ``(f @ g)(x) = f(g(x))``."""
        return self._combine(other, np.matmul, "")


A_OP = IterantOperator("a", ((0, 1), (0, 0)))
ADAG_OP = IterantOperator("a+", ((0, 0), (1, 0)))

# Actions as tabulated: a[A,B]=[B,0], a+[A,B]=[0,A], sx[A,B]=[B,A],
# sz[A,B]=[A,-B], p[A,B]=[0,B], psiL1[A,B]=[A,A], psiL2[A,B]=[B,B].
OPERATORS: dict[str, IterantOperator] = {
    "a": A_OP,
    "a+": ADAG_OP,
    "sigma_x": IterantOperator("sigma_x", ((0, 1), (1, 0))),
    "sigma_z": IterantOperator("sigma_z", ((1, 0), (0, -1))),
    "p": IterantOperator("p", ((0, 0), (0, 1))),
    "psi_L1": IterantOperator("psi_L1", ((1, 0), (1, 0))),
    "psi_L2": IterantOperator("psi_L2", ((0, 1), (0, 1))),
}
_ALIASES = {"a†": "a+", "adag": "a+", "σx": "sigma_x", "σz": "sigma_z",
            "ψL1": "psi_L1", "ψL2": "psi_L2"}


def operator(name: str) -> IterantOperator:
    return OPERATORS[_ALIASES.get(name, name)]


def apply_operator(name: str, x: Iterant) -> Iterant:
    return operator(name)(x)


# The same operators written in terms of a and a+.
LADDER_FORMS: dict[str, IterantOperator] = {
    "sigma_x": A_OP + ADAG_OP,
    "sigma_z": A_OP - ADAG_OP,
    "p": ADAG_OP @ A_OP,
    "psi_L1": A_OP @ ADAG_OP + ADAG_OP,
    "psi_L2": ADAG_OP @ A_OP + A_OP,
}

# sigma_z = a - a+ gives [B, -A], not the tabulated [A, -B].
EXPECTED_MISMATCHES = frozenset({"sigma_z"})


def check_ladder_forms(samples: Sequence[Iterant]) -> list[dict]:
    """Compare each tabulated operator with its ladder form on ``samples``.

    Each row reports ``agrees`` and whether a disagreement is an expected,
    documented one.
    """
    rows = []
    for name, form in LADDER_FORMS.items():
        agrees = all(OPERATORS[name](x) == form(x) for x in samples)
        rows.append({"name": name, "ladder": form.name, "agrees": agrees,
                     "expected_mismatch": name in EXPECTED_MISMATCHES})
    return rows
