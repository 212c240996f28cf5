"""The .mfcc text format: multi-filtered cell complexes, line by line.

Grammar (UTF-8, line oriented, # starts a comment):

    mfcc version=1 params=<n> field=<p>
    cell <id> dim=<d> grade=<g1,...,gn> bd=<id>:<coeff>[,<id>:<coeff>...]
    simplex <v1> <v2> ... <vk> grade=<g1,...,gn>

The header comes first.  A file uses cell lines or simplex lines, never
both.  bd is omitted for cells with empty boundary (0-cells always).  In
simplex mode incidence is generated with the standard alternating signs;
faces that are not listed are auto-completed at the coordinatewise maximum
of their vertices' grades, so every vertex must be listed explicitly.
Entrance grades must be non-negative; negative grades remain legal in
queries only.

write() emits canonical cell mode: cells sorted by (dim, id), boundary
entries sorted by face id, coefficients as canonical residues in [1, p).
parse(write(f)) reproduces the document model exactly.
"""

from __future__ import annotations

from .complexes import Cell, CellComplex, ComplexValidation, from_simplices
from .fieldmat import FieldError, validate_prime
from .filtration import FiltrationValidation, Grade, MultiFiltration


class MfccError(ValueError):
    """Base class for .mfcc parsing failures."""


class MfccSyntaxError(MfccError):
    """A malformed line; carries the 1-based line number."""

    def __init__(self, line: int, msg: str):
        super().__init__(f"line {line}: {msg}")
        self.line = line


class MfccMixedModesError(MfccError):
    """cell and simplex records mixed in one file."""

    def __init__(self, line: int):
        super().__init__(f"line {line}: cell and simplex records cannot be mixed")
        self.line = line


class MfccValidationError(MfccError):
    """Parsed but invalid; carries both validators' findings."""

    def __init__(
        self,
        complex_report: ComplexValidation | None,
        filtration_report: FiltrationValidation | None,
        msg: str,
    ):
        super().__init__(msg)
        self.complex_report = complex_report
        self.filtration_report = filtration_report


def _parse_kv(tok: str, key: str, line_no: int) -> str:
    if not tok.startswith(key + "="):
        raise MfccSyntaxError(line_no, f"expected {key}=..., got {tok!r}")
    return tok[len(key) + 1 :]


def _parse_int(s: str, line_no: int, what: str) -> int:
    try:
        return int(s)
    except ValueError:
        raise MfccSyntaxError(line_no, f"{what} must be an integer, got {s!r}") from None


def _parse_grade(s: str, n: int, line_no: int) -> Grade:
    parts = s.split(",")
    if len(parts) != n:
        raise MfccSyntaxError(line_no, f"grade needs {n} coordinates, got {len(parts)}")
    return tuple(_parse_int(x, line_no, "grade coordinate") for x in parts)


def parse_mfcc(text: str, field_override: int | None = None) -> MultiFiltration:
    """Parses .mfcc text into a validated filtration.

    field_override recomputes over a different characteristic: simplex-mode
    files regenerate their signs exactly; cell-mode coefficients are
    reinterpreted modulo the new field, which may fail validation (reported,
    not patched).
    """
    lines = text.splitlines()
    header: tuple[int, int] | None = None
    mode: str | None = None
    cells: list[Cell] = []
    incidence: dict[tuple[int, int], int] = {}
    entrance: dict[int, Grade] = {}
    seen_ids: set[int] = set()
    simplices: dict[frozenset[int], Grade | None] = {}
    n = p = 0

    for i, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if header is None:
            if toks[0] != "mfcc":
                raise MfccSyntaxError(i, f"expected mfcc header, got {toks[0]!r}")
            if len(toks) != 4:
                raise MfccSyntaxError(i, "header needs version=, params=, field=")
            version = _parse_int(_parse_kv(toks[1], "version", i), i, "version")
            if version != 1:
                raise MfccSyntaxError(i, f"unsupported version {version}")
            n = _parse_int(_parse_kv(toks[2], "params", i), i, "params")
            p = _parse_int(_parse_kv(toks[3], "field", i), i, "field")
            if n < 1:
                raise MfccSyntaxError(i, f"params must be >= 1, got {n}")
            if field_override is not None:
                p = field_override
            try:
                validate_prime(p)
            except FieldError as e:
                raise MfccSyntaxError(i, str(e)) from None
            header = (n, p)
            continue
        kind = toks[0]
        if kind == "cell":
            if mode == "simplex":
                raise MfccMixedModesError(i)
            mode = "cell"
            if len(toks) < 4:
                raise MfccSyntaxError(i, "cell line needs id, dim=, grade=")
            cid = _parse_int(toks[1], i, "cell id")
            if cid in seen_ids:
                raise MfccSyntaxError(i, f"duplicate cell id {cid}")
            seen_ids.add(cid)
            dim = _parse_int(_parse_kv(toks[2], "dim", i), i, "dim")
            if dim < 0:
                raise MfccSyntaxError(i, f"dim must be >= 0, got {dim}")
            grade = _parse_grade(_parse_kv(toks[3], "grade", i), n, i)
            if len(toks) > 5:
                raise MfccSyntaxError(i, f"unexpected trailing tokens: {toks[5:]}")
            if len(toks) == 5:
                bd = _parse_kv(toks[4], "bd", i)
                for pair in bd.split(","):
                    if ":" not in pair:
                        raise MfccSyntaxError(i, f"bd entry needs id:coeff, got {pair!r}")
                    fid, coeff = pair.split(":", 1)
                    key = (cid, _parse_int(fid, i, "boundary id"))
                    if key in incidence:
                        raise MfccSyntaxError(i, f"duplicate boundary entry for face {fid}")
                    incidence[key] = _parse_int(coeff, i, "boundary coefficient")
            cells.append(Cell(id=cid, dim=dim))
            entrance[cid] = grade
        elif kind == "simplex":
            if mode == "cell":
                raise MfccMixedModesError(i)
            mode = "simplex"
            if toks[-1].startswith("grade="):
                grade = _parse_grade(_parse_kv(toks[-1], "grade", i), n, i)
                vtoks = toks[1:-1]
            else:
                grade = None  # filled in from the vertices later
                vtoks = toks[1:]
            if not vtoks:
                raise MfccSyntaxError(i, "simplex line needs at least one vertex")
            vs = [_parse_int(t, i, "vertex id") for t in vtoks]
            if len(set(vs)) != len(vs):
                raise MfccSyntaxError(i, f"repeated vertex in simplex {vs}")
            key = frozenset(vs)
            if key in simplices:
                raise MfccSyntaxError(i, f"simplex {sorted(vs)} listed twice")
            simplices[key] = grade
        else:
            raise MfccSyntaxError(i, f"unknown record {kind!r}")

    if header is None:
        raise MfccSyntaxError(1, "missing mfcc header")

    if mode == "simplex":
        return _build_simplex_mode(simplices, n, p)
    cx = CellComplex(cells, incidence, p=p)
    f = MultiFiltration(cx, n, entrance)
    _validate_or_raise(f)
    return f


def _build_simplex_mode(
    simplices: dict[frozenset[int], Grade | None], n: int, p: int
) -> MultiFiltration:
    build = from_simplices(simplices.keys(), p=p)
    vertices = {
        next(iter(s)) for s, g in simplices.items() if len(s) == 1 and g is not None
    }
    missing_vertices = sorted(
        {v for s in simplices for v in s} - vertices
    )
    if missing_vertices:
        raise MfccValidationError(
            None,
            None,
            "auto-completion needs every vertex's grade; missing vertex lines for "
            f"{missing_vertices}",
        )
    entrance: dict[int, Grade] = {}
    for s, cid in build.id_of.items():
        g = simplices.get(s)
        if g is None:
            g = tuple(max(simplices[frozenset((v,))][k] for v in s) for k in range(n))
        entrance[cid] = g
    f = MultiFiltration(build.complex, n, entrance)
    _validate_or_raise(f)
    return f


def _validate_or_raise(f: MultiFiltration) -> None:
    cv = f.complex.validate()
    fv = f.validate()
    if not cv.ok or not fv.ok:
        bits = []
        if cv.bad_dimension:
            bits.append(f"incidence dimension violations {cv.bad_dimension[:5]}")
        if cv.bad_square:
            bits.append(f"dd != 0 at pairs {cv.bad_square[:5]}")
        if fv.bad_arity:
            bits.append(f"wrong grade arity for cells {fv.bad_arity[:5]}")
        if fv.negative:
            bits.append(f"negative entrance grades for cells {fv.negative[:5]}")
        if fv.non_monotone:
            bits.append(f"faces entering after cofaces {fv.non_monotone[:5]}")
        if fv.missing:
            bits.append(f"cells without grades {fv.missing[:5]}")
        if fv.extra:
            bits.append(f"grades for unknown cells {fv.extra[:5]}")
        raise MfccValidationError(cv, fv, "; ".join(bits))


def write_mfcc(f: MultiFiltration) -> str:
    """Canonical cell-mode serialization.

    Coefficients are written as balanced representatives (-1 rather than
    p-1), so complexes whose incidence is genuinely integral -- every
    simplicial one -- survive a --field override at a different prime.
    """
    out = [f"mfcc version=1 params={f.n} field={f.p}"]
    half = f.p // 2
    for c in f.complex.cells:
        g = ",".join(str(x) for x in f.entrance[c.id])
        line = f"cell {c.id} dim={c.dim} grade={g}"
        faces = f.complex.faces(c.id)
        if faces:
            bd = ",".join(
                f"{fid}:{coeff if coeff <= half or f.p == 2 else coeff - f.p}"
                for fid, coeff in faces
            )
            line += f" bd={bd}"
        out.append(line)
    return "\n".join(out) + "\n"


def documents_equal(a: MultiFiltration, b: MultiFiltration) -> bool:
    """Document-model equality: same cells, incidence, field, n, grades."""
    return (
        a.n == b.n
        and a.p == b.p
        and [(c.id, c.dim) for c in a.complex.cells]
        == [(c.id, c.dim) for c in b.complex.cells]
        and a.complex.incidence == b.complex.incidence
        and a.entrance == b.entrance
    )
