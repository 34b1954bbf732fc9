"""Road geometry: cleat height maps and the enveloped effective road.

The raw road is flat ground plus rectangular cleats (negative height =
pothole), each a box in the horizontal plane that may be yawed relative to
the direction of travel.  A tire does not feel the raw step edges: a tandem
pair of superelliptical cam followers rides over the height map and their
midpoint height / pitch angle give a smoothed effective profile.  Two cam
tracks offset laterally under each tire resolve the transverse slope.

Station ``s`` is arclength along the path in metres, ``y`` is the signed
lateral offset from the path centreline (positive left).  All heights in
metres, slopes in radians.
"""

from __future__ import annotations

import csv
import math
from bisect import bisect_right
from dataclasses import dataclass

from .errors import InputError, InvalidCamGeometry, ParameterError
from .params import CamGeometry, RoadInputs, SlopeMode

_CLEAT_COLUMNS = ("start_m", "length_m", "height_m", "width_m", "yaw_deg")


@dataclass(frozen=True)
class CleatSpec:
    """One rectangular cleat, axis-aligned in its own yawed frame.

    The footprint starts at station ``start_m`` on the centreline and spans
    ``length_m`` along the (yawed) crossing direction and ``width_m`` across
    it.  ``yaw_rad`` rotates the rectangle about its starting corner point;
    zero means the crossing edge is square to the path.
    """

    start_m: float
    length_m: float
    height_m: float
    width_m: float
    yaw_rad: float = 0.0

    def __post_init__(self):
        for name in ("start_m", "length_m", "height_m", "width_m", "yaw_rad"):
            if not math.isfinite(getattr(self, name)):
                raise ParameterError(f"CleatSpec.{name} must be finite",
                                     category="InvalidCleat")
        if self.length_m <= 0 or self.width_m <= 0:
            raise ParameterError(
                f"CleatSpec length_m and width_m must be > 0, got "
                f"{self.length_m}, {self.width_m}", category="InvalidCleat")
        if abs(self.yaw_rad) >= math.pi / 2:
            raise ParameterError(
                f"CleatSpec.yaw_rad must lie in (-pi/2, pi/2), got "
                f"{self.yaw_rad}", category="InvalidCleat")


def load_cleats(path) -> tuple[CleatSpec, ...]:
    """Read a cleat table from CSV (yaw column in degrees, all else SI).

    Columns must be exactly ``start_m,length_m,height_m,width_m,yaw_deg``.
    An empty table is valid and means flat road.  Row order is preserved;
    where overlapping cleats tie in |height| the earlier row wins.
    """
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise InputError(f"{path}: no header row", category="SchemaError")
        header = [h.strip() for h in header]
        if tuple(header) != _CLEAT_COLUMNS:
            raise InputError(
                f"{path}: cleat columns must be {','.join(_CLEAT_COLUMNS)}, "
                f"got {','.join(header)}", category="SchemaError")
        cleats = []
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != len(_CLEAT_COLUMNS):
                raise InputError(f"{path}:{lineno}: expected "
                                 f"{len(_CLEAT_COLUMNS)} fields, got {len(row)}",
                                 category="SchemaError")
            try:
                start, length, height, width, yaw_deg = (float(c) for c in row)
            except ValueError:
                raise InputError(f"{path}:{lineno}: non-numeric field",
                                 category="SchemaError")
            cleats.append(CleatSpec(start, length, height, width,
                                    math.radians(yaw_deg)))
    return tuple(cleats)


def road_height(s_m: float, y_m: float, cleats) -> float:
    """Raw road height at one point; overlaps resolve to the height of
    largest magnitude, earliest-listed cleat winning exact ties."""
    best = 0.0
    for c in cleats:
        ds = s_m - c.start_m
        cy = math.cos(c.yaw_rad)
        sy = math.sin(c.yaw_rad)
        cross = ds * cy - y_m * sy
        if cross < 0.0 or cross > c.length_m:
            continue
        axial = ds * sy + y_m * cy
        if abs(axial) > 0.5 * c.width_m:
            continue
        if abs(c.height_m) > abs(best):
            best = c.height_m
    return best


def _footprint_interval(cleat: CleatSpec, y_m: float):
    """Station interval [s1, s2] where the line at lateral offset ``y_m``
    crosses the cleat footprint, or None if it misses."""
    cy = math.cos(cleat.yaw_rad)
    sy = math.sin(cleat.yaw_rad)
    s0 = cleat.start_m
    a1 = s0 + y_m * sy / cy
    a2 = a1 + cleat.length_m / cy
    half_w = 0.5 * cleat.width_m
    if sy == 0.0:
        if abs(y_m * cy) > half_w:
            return None
        lo, hi = a1, a2
    else:
        b1 = s0 + (-half_w - y_m * cy) / sy
        b2 = s0 + (half_w - y_m * cy) / sy
        if b1 > b2:
            b1, b2 = b2, b1
        lo, hi = max(a1, b1), min(a2, b2)
    if lo >= hi:
        return None
    return lo, hi


def _check_cam(cam: CamGeometry) -> None:
    for name in ("half_length_m", "half_height_m", "spacing_m",
                 "track_half_width_m"):
        if getattr(cam, name) <= 0:
            raise InvalidCamGeometry(
                f"cam.{name} must be > 0, got {getattr(cam, name)}")
    if cam.exponent < 1.0:
        raise InvalidCamGeometry(f"cam.exponent must be >= 1, got {cam.exponent}")


class TrackEnvelope:
    """Tandem-cam follower along one fixed lateral track.

    The raw profile along the track is piecewise constant, so it is
    partitioned once into constant-height segments; each cam height query
    is then an exact analytic maximum of ``segment height + cam lower
    boundary`` over the segments under the cam, no sampling grid involved.
    """

    def __init__(self, y_m: float, cleats, cam: CamGeometry):
        _check_cam(cam)
        self._cam = cam
        points = set()
        for c in cleats:
            span = _footprint_interval(c, y_m)
            if span is not None:
                points.update(span)
        # Constant-height partition of the whole track, sentinel-bounded so
        # ground contact in any gap (or a pothole floor) is always a
        # candidate.  Segment heights are sampled at interior points with
        # the same point query used everywhere else.
        cuts = sorted(points)
        starts, ends, heights = [], [], []
        prev = -math.inf
        for cut in cuts + [math.inf]:
            if prev < cut:
                if math.isinf(prev):
                    rep = cut - 1.0 if math.isfinite(cut) else 0.0
                elif math.isinf(cut):
                    rep = prev + 1.0
                else:
                    rep = 0.5 * (prev + cut)
                starts.append(prev)
                ends.append(cut)
                heights.append(road_height(rep, y_m, cleats))
            prev = cut
        self._starts = starts
        self._ends = ends
        self._heights = heights

    def _cam_offset(self, x_m: float) -> float:
        """Signed drop of the cam lower boundary at longitudinal offset
        ``x_m`` from the cam centre; zero at the centre, -half_height at
        the rim, clamped beyond it."""
        cam = self._cam
        r = abs(x_m) / cam.half_length_m
        if r >= 1.0:
            return -cam.half_height_m
        n = cam.exponent
        return cam.half_height_m * ((1.0 - r**n) ** (1.0 / n) - 1.0)

    def cam_height(self, s_m: float) -> float:
        """Resting height of one cam centred at station ``s_m``."""
        half_len = self._cam.half_length_m
        lo = s_m - half_len
        hi = s_m + half_len
        starts, ends, heights = self._starts, self._ends, self._heights
        i = bisect_right(ends, lo)
        best = -math.inf
        while i < len(starts) and starts[i] < hi:
            x1 = max(starts[i], lo) - s_m
            x2 = min(ends[i], hi) - s_m
            # nearest point to the cam centre within this segment
            x = x1 if x1 > 0.0 else (x2 if x2 < 0.0 else 0.0)
            cand = heights[i] + self._cam_offset(x)
            if cand > best:
                best = cand
            i += 1
        return best

    def sample(self, s_m: float) -> tuple[float, float]:
        """Enveloped (height, forward slope) at station ``s_m``.

        The slope is arctan((rear cam - front cam) / spacing), so climbing
        an obstacle reads negative; only its cosine enters the load chain,
        the sign is a reporting convention.
        """
        half = 0.5 * self._cam.spacing_m
        front = self.cam_height(s_m + half)
        rear = self.cam_height(s_m - half)
        return 0.5 * (front + rear), math.atan((rear - front) / self._cam.spacing_m)


def envelope_track(s_m: float, y_m: float, cleats,
                   cam: CamGeometry) -> tuple[float, float]:
    """Enveloped (height, forward slope) for a single cam track."""
    return TrackEnvelope(y_m, cleats, cam).sample(s_m)


@dataclass(frozen=True)
class EffectiveRoadPoint:
    """Effective road under one tire: height w, transverse slope (positive
    when the road rises toward +y, matching the lateral-slope convention)
    and forward slope (see ``TrackEnvelope.sample`` for its sign)."""

    effective_height_m: float
    transverse_slope_rad: float
    forward_slope_rad: float


class EffectiveProfile:
    """Effective road evaluator for one tire path at lateral offset ``y_m``.

    Holds the two precomputed cam tracks straddling the tire so repeated
    queries along the path stay cheap; the global slopes vary per query and
    are passed with each call.  The transverse slope is resolved between
    the +y-side track and the -y-side track, road-fixed for every tire so
    it adds coherently to the global lateral slope and mirror scenarios
    stay exactly antisymmetric.  With an empty cleat map, queries reduce
    exactly to the flat-road value: height equal to the static deflection
    and slopes equal to the mode-selected global slope.
    """

    def __init__(self, y_m: float, cleats, cam: CamGeometry):
        _check_cam(cam)
        self._half_track = cam.track_half_width_m
        if cleats:
            self._outer = TrackEnvelope(y_m + self._half_track, cleats, cam)
            self._inner = TrackEnvelope(y_m - self._half_track, cleats, cam)
        else:
            self._outer = self._inner = None

    def at(self, s_m: float, static_deflection_m: float,
           road: RoadInputs) -> EffectiveRoadPoint:
        if road.slope_mode is SlopeMode.LATERAL:
            transverse = road.lateral_slope_rad
            forward = 0.0
        else:
            transverse = 0.0
            forward = road.longitudinal_slope_rad
        if self._outer is None:
            return EffectiveRoadPoint(static_deflection_m, transverse, forward)
        h_outer, slope_outer = self._outer.sample(s_m)
        h_inner, slope_inner = self._inner.sample(s_m)
        height = static_deflection_m + 0.5 * (h_outer + h_inner)
        transverse += math.atan((h_outer - h_inner) / (2.0 * self._half_track))
        forward += 0.5 * (slope_outer + slope_inner)
        return EffectiveRoadPoint(height, transverse, forward)


def effective_profile(s_m: float, y_m: float, static_deflection_m: float,
                      road: RoadInputs, cam: CamGeometry) -> EffectiveRoadPoint:
    """Effective road point under a tire at station ``s_m``, lateral offset
    ``y_m``, given the flat-road static deflection of that tire."""
    return EffectiveProfile(y_m, road.cleats, cam).at(s_m, static_deflection_m,
                                                      road)
