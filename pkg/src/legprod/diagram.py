"""Planar diagram (PD) codes of Lagrangian projections.

A crossing is written ``X[a,b,c,d]``: the four arc labels met going
counterclockwise around the crossing, starting with the incoming under-strand
(so ``a -> c`` is the under-strand and ``b``, ``d`` belong to the over-strand).
The over-strand is the upper sheet, i.e. the chord's top endpoint.

Positions around a crossing are numbered 0..3 in that counterclockwise order
and corner ``k`` is the sector between positions ``k`` and ``k + 1``.
Corners 1 and 3 are positive: going counterclockwise around a face, the
boundary climbs from the under-strand to the over-strand there.
"""

from dataclasses import dataclass
from importlib import resources
import re

from .errors import ConstraintViolated, InvalidDiagram, ParseError
from .feasibility import LinearConstraint, LinearSystem
from .model import LegendrianModel, MorseCritical, ReebChord, require_valid
from .rational import parse_rational

_TOKEN_RE = re.compile(
    r"X\[\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\]|outer\s*=\s*(-?\d+)|(\S+)")


@dataclass(frozen=True)
class PDCode:
    """A validated PD code with its traced orientation.

    ``over_in[i]`` is the position (1 or 3) at which the over-strand enters
    crossing ``i``; it is derived, not part of the input.
    """

    crossings: tuple
    outer_face_arc: int
    over_in: tuple

    def __len__(self):
        return len(self.crossings)

    def to_text(self):
        lines = ["X[{},{},{},{}]".format(*x) for x in self.crossings]
        lines.append(f"outer={self.outer_face_arc}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Corner:
    crossing: int  # 1-based crossing id
    position: int  # sector index 0..3
    sign: int      # +1 positive corner, -1 negative corner


@dataclass(frozen=True)
class Face:
    corners: tuple
    unbounded: bool = False

    def area_form(self):
        """Coefficient of each crossing's action in the face area."""
        coefs = {}
        for c in self.corners:
            coefs[c.crossing] = coefs.get(c.crossing, 0) + c.sign
        return coefs


def _occurrences(crossings):
    occ = {}
    for i, x in enumerate(crossings):
        for p, arc in enumerate(x):
            occ.setdefault(arc, []).append((i, p))
    return occ


def _other_end(occ, arc, here):
    a, b = occ[arc]
    return b if a == here else a


def _trace(crossings, occ):
    """Follow the knot from crossing 0's under-strand; return over-entry positions."""
    n = len(crossings)
    over_in = [None] * n
    visited_arcs = set()
    here = (0, 0)
    for _ in range(2 * n):
        i, p = here
        if p == 2:
            raise InvalidDiagram(f"strand enters crossing {i + 1} on its outgoing under-arc")
        if p in (1, 3):
            if over_in[i] is not None and over_in[i] != p:
                raise InvalidDiagram(f"over-strand of crossing {i + 1} traversed twice")
            over_in[i] = p
        out = (i, (p + 2) % 4)
        arc = crossings[i][out[1]]
        if arc in visited_arcs:
            break
        visited_arcs.add(arc)
        here = _other_end(occ, arc, out)
        if here == (0, 0):
            break
    if len(visited_arcs) != 2 * n or here != (0, 0) or None in over_in:
        raise InvalidDiagram("diagram is not a single connected, consistently oriented knot")
    return tuple(over_in)


def make_pd(crossings, outer_face_arc):
    """Validate raw crossings and build a PDCode."""
    crossings = tuple(tuple(int(a) for a in x) for x in crossings)
    if not crossings:
        raise InvalidDiagram("a diagram needs at least one crossing")
    if any(len(x) != 4 for x in crossings):
        raise InvalidDiagram("each crossing needs four arc labels")
    occ = _occurrences(crossings)
    n = len(crossings)
    if set(occ) != set(range(1, 2 * n + 1)):
        raise InvalidDiagram(f"arc labels must be exactly 1..{2 * n}")
    bad = sorted(arc for arc, o in occ.items() if len(o) != 2)
    if bad:
        raise InvalidDiagram(f"arc labels {bad} do not occur exactly twice")
    if abs(outer_face_arc) not in occ:
        raise InvalidDiagram(f"outer face arc {outer_face_arc} is not an arc label")
    over_in = _trace(crossings, occ)
    pd = PDCode(crossings, int(outer_face_arc), over_in)
    fs = _face_cycles(pd)
    if n - 2 * n + len(fs) != 2:
        raise InvalidDiagram(f"not planar: V - E + F = {n - 2 * n + len(fs)}")
    return pd


def parse_pd(text):
    """Parse whitespace-separated ``X[a,b,c,d]`` tokens and one ``outer=k``.

    ``outer=k`` puts the unbounded face on the right of arc k; ``outer=-k``
    on its left. ``#`` starts a comment running to the end of the line.
    """
    text = "\n".join(line.split("#", 1)[0] for line in text.splitlines())
    crossings, outer = [], []
    for match in _TOKEN_RE.finditer(text):
        if match.group(6) is not None:
            raise ParseError(f"unexpected token {match.group(6)!r}")
        if match.group(5) is not None:
            outer.append(int(match.group(5)))
        else:
            crossings.append(tuple(int(g) for g in match.group(1, 2, 3, 4)))
    if len(outer) != 1:
        raise ParseError("expected exactly one outer=k directive")
    return make_pd(crossings, outer[0])


def reverse(pd):
    """The same diagram with the knot's orientation reversed."""
    flipped = tuple((c, d, a, b) for a, b, c, d in pd.crossings)
    return make_pd(flipped, pd.outer_face_arc)


def crossing_signs(pd):
    """Sign of each crossing (1-based id): +1 iff (over, under) is positively oriented."""
    return {i + 1: (1 if p == 3 else -1) for i, p in enumerate(pd.over_in)}


def diagram_tb(pd):
    return sum(crossing_signs(pd).values())


def _face_cycles(pd):
    """Faces as cycles of darts ``(crossing, leaving position)``.

    Arriving at a crossing through position p we leave through p - 1, which
    keeps the face on the left: bounded faces come out counterclockwise.
    """
    occ = _occurrences(pd.crossings)
    seen, cycles = set(), []
    for i in range(len(pd.crossings)):
        for p in range(4):
            if (i, p) in seen:
                continue
            cycle, dart = [], (i, p)
            while dart not in seen:
                seen.add(dart)
                cycle.append(dart)
                ci, cp = dart
                arc = pd.crossings[ci][cp]
                j, q = _other_end(occ, arc, dart)
                dart = (j, (q - 1) % 4)
            cycles.append(cycle)
    return cycles


def _outer_dart(pd):
    """The dart bounding the unbounded face.

    ``outer=k`` names the face to the right of arc k (as oriented by the
    knot), ``outer=-k`` the face to its left. The arc runs from its exit
    slot to its entry slot and faces are traced on the left of darts, so the
    right-hand face belongs to the dart leaving from the entry slot.
    """
    occ = _occurrences(pd.crossings)
    arc = abs(pd.outer_face_arc)
    for i, p in occ[arc]:
        entering = p == 0 or p == pd.over_in[i]
        if entering == (pd.outer_face_arc > 0):
            return (i, p)
    raise AssertionError("every arc has an entry slot")


def faces(pd):
    """All faces with their corners; the outer one is flagged unbounded."""
    occ = _occurrences(pd.crossings)
    outer = _outer_dart(pd)
    out = []
    for cycle in _face_cycles(pd):
        corners = []
        for ci, cp in cycle:
            arc = pd.crossings[ci][cp]
            j, q = _other_end(occ, arc, (ci, cp))
            sector = (q - 1) % 4
            corners.append(Corner(j + 1, sector, 1 if sector % 2 else -1))
        out.append(Face(tuple(corners), unbounded=outer in cycle))
    return out


def area_constraints(pd, labels=None):
    """Positive-area conditions on the chord actions.

    One strict inequality per bounded face (positive-corner actions minus
    negative-corner actions > 0) and ``x > 0`` for every crossing. Variables
    are ``labels[i]`` for crossing ``i + 1`` (default ``x1``, ``x2``, ...).
    """
    names = _labels(pd, labels)
    cons = []
    for face in faces(pd):
        if face.unbounded:
            continue
        coefs = {names[i - 1]: c for i, c in face.area_form().items()}
        cons.append(LinearConstraint(coefs, ">", 0))
    cons.extend(LinearConstraint({v: 1}, ">", 0) for v in names)
    return LinearSystem(tuple(names), tuple(cons))


def _labels(pd, labels):
    if labels is None:
        return [f"x{i + 1}" for i in range(len(pd))]
    labels = list(labels)
    if len(labels) != len(pd) or len(set(labels)) != len(labels):
        raise ValueError(f"need {len(pd)} distinct labels")
    return labels


def diagram_to_model(pd, actions, labels=None):
    """Knot model whose chords are the crossings, with the given actions.

    ``actions`` maps label to action; it must satisfy the area constraints.
    """
    names = _labels(pd, labels)
    actions = {k: parse_rational(v) for k, v in actions.items()}
    sys = area_constraints(pd, names)
    for con in sys.constraints:
        if not con.holds(actions):
            raise ConstraintViolated(str(con))
    signs = crossing_signs(pd)
    chords = tuple(ReebChord(name, actions[name], signs[i + 1]) for i, name in enumerate(names))
    model = LegendrianModel(dim=1, euler=0, cotangent_euler=0, chords=chords,
                            morse=(MorseCritical("m0", 0), MorseCritical("m1", 1)),
                            maslov={"r": 0})
    require_valid(model)
    return model


def euler_counts(pd):
    """(V, E, F) of the underlying 4-valent plane graph."""
    n = len(pd)
    return n, 2 * n, len(_face_cycles(pd))


FIXTURE_LABELS = {
    "stabilized_unknot": ("a1", "a2"),
    "r1_unknot": ("b1", "b2", "b3"),
    "trefoil": ("c1", "c2", "c3", "c4", "c5"),
    "kink": ("x1",),
}


def fixture_text(name):
    if name not in FIXTURE_LABELS:
        raise KeyError(f"unknown diagram fixture {name!r}; expected one of {sorted(FIXTURE_LABELS)}")
    return resources.files("legprod").joinpath("fixtures").joinpath(f"{name}.pd").read_text()


def load_fixture(name):
    """The bundled PD code ``name`` and its chord labels, in crossing order."""
    return parse_pd(fixture_text(name)), FIXTURE_LABELS[name]
