"""End-to-end chain from a Seifert symbol to an equivariant circle bundle.

normalize -> base orbifold -> (chi, e) -> geometry.  Spherical manifolds,
which include every fibration over a teardrop or a spindle, are refused.
Otherwise: smooth orientable cover -> Galois closure -> verification ->
pulled-back Euler number -> fiber exponents, twist and residuals.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from . import cover as cv
from . import descent as ds
from .errors import CoverNotFound, ParseError, PipelineError, SeifertError
from .symbol import (
    Geometry,
    base_orbifold,
    bad_orbifold_kind,
    classify_geometry,
    euler_number,
    format_orbifold,
    format_rational,
    normalize,
    orbifold_euler_characteristic,
    parse_orbifold,
    parse_symbol,
)

SCHEMA_VERSION = 1

SPHERICAL_NOTE = (
    "spherical geometry: a uniruled model for this case is provided by Kollar's "
    "conic-bundle construction and is not built here"
)


class Status(Enum):
    REFUSED_SPHERICAL = "Refused-Spherical"
    REFUSED_BAD_ORBIFOLD = "Refused-BadOrbifold-Spherical"
    COMPLETED = "Completed"
    COVER_NOT_FOUND = "CoverNotFound"


EXIT_CODES = {
    Status.COMPLETED: 0,
    Status.REFUSED_SPHERICAL: 2,
    Status.REFUSED_BAD_ORBIFOLD: 2,
    Status.COVER_NOT_FOUND: 3,
}


@dataclass(frozen=True)
class PipelineReport:
    symbol: object
    base: object
    chi: Fraction
    e: Fraction
    geometry: Geometry
    status: Status
    note: str = ""
    orientation_cover: object = None
    search_degree: int = None
    cover: object = None
    pullback_euler: int = None
    descent: object = None

    @property
    def exit_code(self):
        return EXIT_CODES[self.status]

    def to_dict(self):
        return {
            "schema": SCHEMA_VERSION,
            "symbol": str(self.symbol),
            "base": format_orbifold(self.base),
            "chi": format_rational(self.chi),
            "e": format_rational(self.e),
            "geometry": self.geometry.value,
            "status": self.status.value,
            "note": self.note,
            "orientation_cover": None if self.orientation_cover is None else format_orbifold(self.orientation_cover),
            "search_degree": self.search_degree,
            "cover": None if self.cover is None else self.cover.to_dict(),
            "pullback_euler": self.pullback_euler,
            "descent": None if self.descent is None else self.descent.to_dict(),
        }

    @classmethod
    def from_dict(cls, data):
        if data.get("schema") != SCHEMA_VERSION:
            raise ValueError(f"unsupported report schema {data.get('schema')!r}")
        oc = data.get("orientation_cover")
        return cls(
            symbol=normalize(parse_symbol(data["symbol"])),
            base=parse_orbifold(data["base"]),
            chi=Fraction(data["chi"]),
            e=Fraction(data["e"]),
            geometry=Geometry(data["geometry"]),
            status=Status(data["status"]),
            note=data.get("note", ""),
            orientation_cover=None if oc is None else parse_orbifold(oc),
            search_degree=data.get("search_degree"),
            cover=None if data.get("cover") is None else cv.CoverCertificate.from_dict(data["cover"]),
            pullback_euler=data.get("pullback_euler"),
            descent=None if data.get("descent") is None else ds.DescentReport.from_dict(data["descent"]),
        )


def _stage(name, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except (SeifertError, ValueError) as exc:
        if isinstance(exc, (ParseError, PipelineError)):
            raise
        raise PipelineError(name, exc) from exc


def run_pipeline(symbol_text, max_degree_multiplier=cv.DEFAULT_MAX_MULT, seed=0,
                 node_limit=cv.DEFAULT_NODE_LIMIT, group_cap=cv.P.DEFAULT_GROUP_CAP):
    raw = parse_symbol(symbol_text)
    s = _stage("normalize", normalize, raw)
    o = base_orbifold(s)
    chi = orbifold_euler_characteristic(o)
    e = euler_number(s)
    geometry = classify_geometry(chi, e)
    head = dict(symbol=s, base=o, chi=chi, e=e, geometry=geometry)

    if geometry is Geometry.S3:
        kind = bad_orbifold_kind(o)
        if kind is not None:
            return PipelineReport(status=Status.REFUSED_BAD_ORBIFOLD,
                                  note=f"{SPHERICAL_NOTE}; base is a {kind.value.lower()}", **head)
        return PipelineReport(status=Status.REFUSED_SPHERICAL, note=SPHERICAL_NOTE, **head)

    # An orientable cover of a nonorientable base factors through the
    # orientation double cover; it is searched for directly over the base so
    # that the Galois closure below is Galois over the base itself.
    double = None if o.orientable else cv.orientation_double_cover(o)
    try:
        found = _stage("cover", cv.smooth_cover_search, o, max_degree_multiplier, seed, node_limit)
    except PipelineError as exc:
        if isinstance(exc.cause, CoverNotFound):
            return PipelineReport(status=Status.COVER_NOT_FOUND, note=str(exc.cause),
                                  orientation_cover=double, **head)
        raise
    closure = _stage("galois-closure", cv.galois_closure, found, group_cap)
    verdict = cv.verify_certificate(o, closure)
    if not verdict:
        raise PipelineError("verify", ValueError(verdict.reason))
    _stage("verify", cv.deck_group_order, closure, group_cap)
    e_up = _stage("pullback-euler", ds.pullback_euler, s, closure.degree)
    report = _stage("descent", ds.descent_report, s, closure.degree)
    if any(report.residuals):
        raise PipelineError("descent", ValueError(f"nonzero residuals {report.residuals}"))
    return PipelineReport(status=Status.COMPLETED, orientation_cover=double, search_degree=found.degree,
                          cover=closure, pullback_euler=e_up, descent=report, **head)


def render_text(report):
    lines = [
        f"symbol:    {report.symbol}",
        f"base:      {report.base.describe()}  ({format_orbifold(report.base)})",
        f"chi:       {format_rational(report.chi)}",
        f"e:         {format_rational(report.e)}",
        f"geometry:  {report.geometry.value}",
        f"status:    {report.status.value}",
    ]
    if report.note:
        lines.append(f"note:      {report.note}")
    if report.orientation_cover is not None:
        lines.append(f"orientation double cover: {report.orientation_cover.describe()}")
    if report.cover is not None:
        c = report.cover
        lines.append(f"cover:     first certificate degree {report.search_degree}; "
                     f"Galois closure degree {c.degree}, genus {c.cover_genus}")
    if report.pullback_euler is not None:
        lines.append(f"pulled-back Euler number: {report.pullback_euler}")
    if report.descent is not None:
        lines.extend(render_descent(report.descent).splitlines())
    return "\n".join(lines)


def render_descent(r):
    exps = ", ".join(f"({f.p}: {f.q_exp})" for f in r.fiber_data) or "none"
    return "\n".join([
        f"fiber exponents (p: q_exp): {exps}",
        f"twist coefficients: {list(r.twist.coefficients)}",
        f"residuals: {list(r.residuals)}",
        f"twisted degree over cover: {r.twisted_degree}",
        f"descended degree: {format_rational(r.descended_degree)} "
        f"({'integral' if r.descended_degree_ok else 'not integral'})",
    ])
