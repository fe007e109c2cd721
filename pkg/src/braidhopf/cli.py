"""Command-line front end: algebra files, suite dispatch, JSON reports.

The file format (sparse structure-constant triples over an exact field)
and the report layout are documented in docs/schemas/.  Scalars in files
use the same text syntax the field parsers accept, with the cyclotomic
generator spelled "z"; duplicate triples are summed and unspecified
entries are zero.

Exit codes: 0 when every executed check passed, 1 when some suite
recorded a failure, 2 on infrastructure errors (unreadable input, schema
violations, axiom failures at load time).  A JSON document is emitted in
every case, to stdout or to --out.
"""

from __future__ import annotations

import hashlib
import json
import time
from importlib import resources
from pathlib import Path

import click

from . import __version__
from .algebras import BUILTIN_NAMES, AlgebraBundle, PairData, builtin
from .braiding import CategoryCtx, make_braiding, make_twist
from .cm import ModularPair, build_cm, check_twisted_mpi, verify_powers
from .errors import BraidHopfError, NotCyclic, ParseError, TruncationError
from .fields import make_field
from .homology import build_bicomplex, total_homology
from .hopf import HopfAlgebra, check_hopf_axioms
from .lemmas import run_lemma_suite
from .modcoalg import (
    ModuleCoalgebra,
    build_c_object,
    check_trace,
    regular_module_coalgebra,
    solve_traces,
    verify_cm_trace,
)
from .reports import Report, thread_count
from .tensorcat import Mor, Obj, column_mor, row_mor, tensor_obj
from .words import check_relations, evaluate_word, normalize, parse_word
from .words import hom_transport

FILE_SCHEMA = "algebra-file/v1"
REPORT_SCHEMA = "verification-report/v1"

DEFAULT_N_MAX = 4
DEFAULT_DEGREE_BOUND = 6

# Tensor levels are kept strictly below this many basis vectors.  The
# trace tower reaches one level past its truncation, which is what
# actually attains the bound: a six-dimensional algebra capped at level 3
# materializes 6^4 = 1296 columns there and nothing larger anywhere.
LEVEL_CEILING = 1296

RELATION_FAMILIES = ("SR", "PCR", "CC", "TwistedCC")


def level_cap(dim, requested):
    """Clamp a truncation level so dim**level stays below LEVEL_CEILING.

    One-dimensional carriers are never clamped; dim 2 allows level 10,
    dim 4 allows 5, dim 6 allows 3.
    """
    if dim <= 1:
        return requested
    n = 0
    while dim ** (n + 1) < LEVEL_CEILING:
        n += 1
    return min(requested, n)


# ---------------------------------------------------------------------------
# algebra files


_TOP_KEYS = frozenset((
    "schema", "name", "field", "dim", "grades", "braiding", "twist",
    "mult", "unit", "comult", "counit", "antipode", "pairs",
    "module_coalgebra",
))
_REQUIRED_KEYS = frozenset((
    "field", "dim", "grades", "mult", "unit", "comult", "counit", "antipode",
))


def load_algebra(path):
    """Parse and validate an algebra file.

    Malformed JSON raises ParseError carrying line and position; schema
    violations raise ParseError; axiom failures raise ValidationError
    with the failing report attached.  The in-memory form is canonical:
    it does not depend on the ordering of triples in the file.
    """
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise ParseError("cannot read %s: %s" % (path, exc)) from None
    return _load_bytes(raw)


def _load_bytes(raw):
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError("algebra file is not UTF-8: %s" % exc) from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, position=exc.colno) from None
    return algebra_from_json(doc)


def algebra_from_json(doc):
    """Build a validated AlgebraBundle from a decoded algebra document."""
    if not isinstance(doc, dict):
        raise ParseError("top level must be a JSON object")
    unknown = sorted(set(doc) - _TOP_KEYS)
    if unknown:
        raise ParseError("unknown keys: %s" % ", ".join(unknown))
    missing = sorted(_REQUIRED_KEYS - set(doc))
    if missing:
        raise ParseError("missing keys: %s" % ", ".join(missing))
    schema = doc.get("schema", FILE_SCHEMA)
    if schema != FILE_SCHEMA:
        raise ParseError("unsupported schema %r; this build reads %r"
                         % (schema, FILE_SCHEMA))
    field = make_field(doc["field"])
    dim = doc["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ParseError("dim must be a positive integer, got %r" % (dim,))
    grades = _grade_list(doc["grades"], "grades", dim)
    name = doc.get("name", "algebra")
    if not isinstance(name, str) or not name:
        raise ParseError("name must be a nonempty string")

    obj = Obj(name, dim, grades, field)
    braiding = make_braiding(doc.get("braiding", "trivial"), field)
    twist = make_twist(doc.get("twist", "identity"), field, base=obj)
    ctx = CategoryCtx(field, braiding, twist)
    hh = tensor_obj([obj, obj])

    mult = _triples_to_mor(doc["mult"], "mult", hh, obj,
                           (dim, dim, dim), "dom", field)
    comult = _triples_to_mor(doc["comult"], "comult", obj, hh,
                             (dim, dim, dim), "cod", field)
    unit = column_mor(obj, _vector(doc["unit"], "unit", dim, field))
    counit = row_mor(obj, _vector(doc["counit"], "counit", dim, field))
    antipode = _matrix_to_mor(doc["antipode"], "antipode", obj, field)

    # Raises ValidationError with the axiom report on failure.
    H = HopfAlgebra(ctx, obj, mult, unit, comult, counit, antipode)

    pairs = []
    seen = set()
    for pos, entry in enumerate(_object_list(doc.get("pairs", []), "pairs")):
        pair = _pair_from_json(H, entry, pos)
        if pair.name in seen:
            raise ParseError("duplicate pair name %r" % pair.name)
        seen.add(pair.name)
        pairs.append(pair)

    module_coalgebra = None
    if "module_coalgebra" in doc:
        module_coalgebra = _module_coalgebra_from_json(
            H, doc["module_coalgebra"])
    return AlgebraBundle(name, H, pairs, module_coalgebra)


def _grade_list(entries, label, dim):
    if (not isinstance(entries, list)
            or not all(isinstance(g, int) and not isinstance(g, bool)
                       for g in entries)):
        raise ParseError("%s must be a list of integers" % label)
    if len(entries) != dim:
        raise ParseError("dim is %d but %d %s given"
                         % (dim, len(entries), label))
    return tuple(entries)


def _object_list(entries, label):
    if not isinstance(entries, list):
        raise ParseError("%s must be a list" % label)
    for pos, entry in enumerate(entries):
        if not isinstance(entry, dict):
            raise ParseError("%s[%d] must be an object" % (label, pos))
    return entries


def _scalar(field, value, where):
    try:
        return field.scalar_from_json(value)
    except ParseError as exc:
        raise ParseError("%s: %s" % (where, exc)) from None


def _vector(entries, label, dim, field):
    if not isinstance(entries, list) or len(entries) != dim:
        raise ParseError("%s must be a list of %d scalars" % (label, dim))
    return [_scalar(field, v, "%s[%d]" % (label, i))
            for i, v in enumerate(entries)]


def _matrix_to_mor(rows, label, obj, field):
    d = obj.dim
    if not isinstance(rows, list) or len(rows) != d:
        raise ParseError("%s must be a %dx%d matrix" % (label, d, d))
    parsed = [_vector(row, "%s[%d]" % (label, r), d, field)
              for r, row in enumerate(rows)]
    return Mor.from_rows(obj, obj, parsed)


def _triples_to_mor(entries, label, dom, cod, dims, split, field):
    """Sparse [i, j, k, scalar] triples with duplicates summed.

    split "dom" reads the pair (i, j) as the source index i*dims[1] + j
    and k as the target (product-like maps); split "cod" reads i as the
    source and (j, k) as the target j*dims[2] + k (coproduct-like maps).
    """
    if not isinstance(entries, list):
        raise ParseError("%s must be a list of [i, j, k, scalar] entries"
                         % label)
    acc = {}
    for pos, entry in enumerate(entries):
        if not isinstance(entry, list) or len(entry) != 4:
            raise ParseError("%s[%d] must be [i, j, k, scalar]" % (label, pos))
        i, j, k, sval = entry
        for idx, bound in zip((i, j, k), dims):
            if (not isinstance(idx, int) or isinstance(idx, bool)
                    or not 0 <= idx < bound):
                raise ParseError("%s[%d]: index %r out of range 0..%d"
                                 % (label, pos, idx, bound - 1))
        val = _scalar(field, sval, "%s[%d]" % (label, pos))
        key = (i, j, k)
        acc[key] = acc[key] + val if key in acc else val
    cols = {}
    for (i, j, k), val in acc.items():
        if val == field.zero:
            continue
        if split == "dom":
            col, row = i * dims[1] + j, k
        else:
            col, row = i, j * dims[2] + k
        cols.setdefault(col, {})[row] = val
    return Mor(dom, cod, cols)


def _pair_from_json(H, entry, pos):
    label = "pairs[%d]" % pos
    extra = sorted(set(entry) - {"name", "delta", "sigma"})
    if extra:
        raise ParseError("%s: unknown keys %s" % (label, ", ".join(extra)))
    missing = sorted({"name", "delta", "sigma"} - set(entry))
    if missing:
        raise ParseError("%s: missing keys %s" % (label, ", ".join(missing)))
    name = entry["name"]
    if not isinstance(name, str) or not name:
        raise ParseError("%s: name must be a nonempty string" % label)
    d = H.carrier.dim
    delta = row_mor(H.carrier, _vector(entry["delta"], label + ".delta",
                                       d, H.field))
    sigma = column_mor(H.carrier, _vector(entry["sigma"], label + ".sigma",
                                          d, H.field))
    ModularPair(H, delta, sigma)  # ValidationError on a bad pair
    return PairData(name, delta, sigma)


def _module_coalgebra_from_json(H, block):
    label = "module_coalgebra"
    if not isinstance(block, dict):
        raise ParseError("%s must be an object" % label)
    keys = {"name", "dim", "grades", "comult", "counit", "action"}
    extra = sorted(set(block) - keys)
    if extra:
        raise ParseError("%s: unknown keys %s" % (label, ", ".join(extra)))
    missing = sorted(keys - {"name"} - set(block))
    if missing:
        raise ParseError("%s: missing keys %s" % (label, ", ".join(missing)))
    dim = block["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ParseError("%s.dim must be a positive integer" % label)
    grades = _grade_list(block["grades"], label + ".grades", dim)
    name = block.get("name", "C")
    field = H.field
    obj = Obj(name, dim, grades, field)
    comult = _triples_to_mor(block["comult"], label + ".comult",
                             obj, tensor_obj([obj, obj]),
                             (dim, dim, dim), "cod", field)
    counit = row_mor(obj, _vector(block["counit"], label + ".counit",
                                  dim, field))
    action = _triples_to_mor(block["action"], label + ".action",
                             tensor_obj([obj, H.carrier]), obj,
                             (dim, H.carrier.dim, dim), "dom", field)
    # Raises ValidationError with the axiom report on failure.
    return ModuleCoalgebra(H, obj, comult, counit, action)


def serialize(bundle):
    """Canonical JSON document for a bundle; load_algebra inverts it."""
    H = bundle.hopf
    field = H.field
    d = H.carrier.dim
    doc = {
        "schema": FILE_SCHEMA,
        "name": bundle.name,
        "field": field.to_json(),
        "dim": d,
        "grades": list(H.carrier.grades),
        "braiding": H.ctx.braiding.to_json(),
        "twist": H.ctx.twist.to_json(),
        "mult": _mor_to_triples(H.mult, (d, d, d), "dom", field),
        "unit": _mor_to_vector(H.unit, "column", d, field),
        "comult": _mor_to_triples(H.comult, (d, d, d), "cod", field),
        "counit": _mor_to_vector(H.counit, "row", d, field),
        "antipode": [[field.scalar_to_json(v) for v in row]
                     for row in H.antipode.rows()],
    }
    if bundle.pairs:
        doc["pairs"] = [
            {"name": p.name,
             "delta": _mor_to_vector(p.delta, "row", d, field),
             "sigma": _mor_to_vector(p.sigma, "column", d, field)}
            for p in bundle.pairs
        ]
    if bundle.module_coalgebra is not None:
        C = bundle.module_coalgebra
        dc = C.carrier.dim
        doc["module_coalgebra"] = {
            "name": C.carrier.name,
            "dim": dc,
            "grades": list(C.carrier.grades),
            "comult": _mor_to_triples(C.comult_c, (dc, dc, dc), "cod", field),
            "counit": _mor_to_vector(C.counit_c, "row", dc, field),
            "action": _mor_to_triples(C.action, (dc, d, dc), "dom", field),
        }
    return doc


def _mor_to_triples(m, dims, split, field):
    out = []
    for col, rows in m.cols.items():
        for row, val in rows.items():
            if split == "dom":
                i, j, k = col // dims[1], col % dims[1], row
            else:
                i, j, k = col, row // dims[2], row % dims[2]
            out.append([i, j, k, field.scalar_to_json(val)])
    out.sort(key=lambda t: (t[0], t[1], t[2]))
    return out


def _mor_to_vector(m, orient, d, field):
    if orient == "column":
        vals = [m.cols.get(0, {}).get(r, field.zero) for r in range(d)]
    else:
        vals = [m.cols.get(c, {}).get(0, field.zero) for c in range(d)]
    return [field.scalar_to_json(v) for v in vals]


def example_path(name):
    """Filesystem path of a shipped example algebra file."""
    return Path(str(resources.files(__package__).joinpath(
        "data", name + ".json")))


# ---------------------------------------------------------------------------
# suites


def suite_axioms(bundle):
    rep = Report("axioms")
    rep.extend(check_hopf_axioms(bundle.hopf))
    return rep


def _clamp_note(rep, requested, used, what):
    if used != requested:
        rep.add("truncation clamp", True,
                "%s %d requested, %d used (level ceiling %d)"
                % (what, requested, used, LEVEL_CEILING))


def suite_lemmas(bundle, pairs, n_max):
    rep = Report("lemmas")
    n = level_cap(bundle.hopf.carrier.dim, n_max)
    _clamp_note(rep, n_max, n, "n_max")
    if not pairs:
        rep.add("pairs", True, "none supplied; nothing to check")
    for p in pairs:
        inner = run_lemma_suite(bundle.hopf, p.delta, p.sigma, n_max=n)
        inner.name = "pair %s" % p.name
        rep.extend(inner)
    return rep


def suite_relations(bundle, pairs, families, n_max):
    """Relation families on the pair towers and the module-coalgebra tower.

    On a pair tower the twisted cyclicity family is a theorem only when
    the twisted involution predicate holds, so TwistedCC is evaluated
    there exactly when it does, and the predicate's value is recorded
    either way (the same convention verify_powers uses).  On the
    module-coalgebra tower twisted cyclicity is unconditional, so the
    default family choice (families None) is SR and PCR per pair plus
    TwistedCC wherever it is a theorem.
    """
    H = bundle.hopf
    rep = Report("relations")
    n = level_cap(H.carrier.dim, n_max)
    _clamp_note(rep, n_max, n, "n_max")
    if not pairs:
        rep.add("pairs", True, "none supplied; no pair towers to check")
    for p in pairs:
        mp = ModularPair(H, p.delta, p.sigma)
        mpi = check_twisted_mpi(H, mp)
        fams = ["SR", "PCR"] if families is None else list(families)
        note = "twisted involution predicate %s" % ("true" if mpi else "false")
        if mpi and "TwistedCC" not in fams:
            fams.append("TwistedCC")
        if not mpi and "TwistedCC" in fams:
            fams.remove("TwistedCC")
            note += "; TwistedCC not a theorem here, omitted"
        rep.add("pair %s plan" % p.name, True,
                "%s (families %s)" % (note, ",".join(fams) or "none"))
        if fams:
            P = build_cm(H, mp, n)
            inner = check_relations(P, n, fams)
            inner.name = "pair %s tower" % p.name
            rep.extend(inner)
    C = bundle.module_coalgebra
    if C is None:
        C = regular_module_coalgebra(H)
    fams = ["SR", "PCR", "TwistedCC"] if families is None else list(families)
    rep.add("module coalgebra tower plan", True,
            "families %s (twisted cyclicity is unconditional here)"
            % ",".join(fams))
    inner = check_relations(build_c_object(C, n), n, fams)
    inner.name = "module coalgebra tower"
    rep.extend(inner)
    return rep


def suite_powers(bundle, pairs, n_max):
    H = bundle.hopf
    rep = Report("powers")
    n = level_cap(H.carrier.dim, n_max)
    _clamp_note(rep, n_max, n, "n_max")
    if not pairs:
        rep.add("pairs", True, "none supplied; nothing to check")
    for p in pairs:
        inner = verify_powers(H, ModularPair(H, p.delta, p.sigma), n)
        inner.name = "pair %s" % p.name
        rep.extend(inner)
    return rep


def suite_traces(bundle, pairs, n_max):
    """Solve for trace vectors, re-check the defining conditions on each
    basis element, then run the commutation families against the tower."""
    H = bundle.hopf
    rep = Report("traces")
    n = level_cap(H.carrier.dim, n_max)
    _clamp_note(rep, n_max, n, "n_max")
    C = bundle.module_coalgebra
    rep.add("module coalgebra", True,
            "regular (carrier coacting on itself)" if C is None
            else "from the input file")
    if C is None:
        C = regular_module_coalgebra(H)
    if not pairs:
        rep.add("pairs", True, "none supplied; nothing to check")
    for p in pairs:
        sub = Report("pair %s" % p.name)
        sols = solve_traces(C, p.delta, p.sigma)
        if not sols:
            sub.add("solution space", True,
                    "dimension 0: no nonzero vector satisfies the trace "
                    "conditions")
        else:
            sub.add("solution space", True, "dimension %d" % len(sols))
        for k, cand in enumerate(sols):
            sub.add("basis[%d]" % k, True, _format_vector(cand.alpha, C))
            _, conditions = check_trace(C, p.delta, p.sigma, cand.alpha)
            conditions.name = "basis[%d] trace conditions" % k
            sub.extend(conditions)
            tower = verify_cm_trace(H, p, C, cand, n)
            tower.name = "basis[%d] tower commutation" % k
            sub.extend(tower)
        rep.extend(sub)
    return rep


def _format_vector(alpha, C):
    field = C.field
    vals = [alpha.cols.get(0, {}).get(r, field.zero)
            for r in range(C.carrier.dim)]
    return "[" + ", ".join(field.format_scalar(v) for v in vals) + "]"


def suite_homology(bundle, pairs, degree_bound):
    """Cyclic cohomology of the grade-zero transport of each pair's tower.

    A pair whose transported rotations fail strict cyclicity has no
    complex to build; that is reported, not failed.
    """
    H = bundle.hopf
    rep = Report("homology")
    bound = level_cap(H.carrier.dim, degree_bound)
    _clamp_note(rep, degree_bound, bound, "degree bound")
    if not pairs:
        rep.add("pairs", True, "none supplied; nothing to check")
    for p in pairs:
        sub = Report("pair %s" % p.name)
        P = build_cm(H, ModularPair(H, p.delta, p.sigma), bound)
        T = hom_transport(P, "FromUnit")
        try:
            bic = build_bicomplex(T, bound)
        except NotCyclic as exc:
            sub.add("cyclicity certificate", True,
                    "absent (%s); cyclic cohomology undefined for this pair"
                    % exc)
            rep.extend(sub)
            continue
        sub.add("cyclicity certificate", True,
                "rotation power collapses to the identity on every "
                "transported level")
        inner = bic.report
        inner.name = "differential identities"
        sub.extend(inner)
        summary = total_homology(bic, bound)
        for deg in summary.degrees:
            sub.add("HC^%d" % deg.degree, True,
                    "dimension %d" % deg.homology if deg.trusted else
                    "dimension %d (adjacent to the truncation; not trusted)"
                    % deg.homology)
        rep.extend(sub)
    return rep


def _word_depth(word):
    lvl = max(word.source, word.target)
    for g in word.gens:
        lvl = max(lvl, g[1] + 1 if g[0] == "s" else g[1])
    return lvl


def run_eval(bundle, pair, word_text):
    """Evaluate a generator word on the pair's tower.

    Returns (report, result): the report checks that the word and its
    normal form evaluate to the same matrix, the result holds the matrix
    itself in canonical scalar form.
    """
    H = bundle.hopf
    word = parse_word(word_text)
    normal = normalize(word).to_word()
    depth = max(_word_depth(word), _word_depth(normal), 1)
    cap = level_cap(H.carrier.dim, depth)
    if cap < depth:
        raise TruncationError(
            "word passes through level %d but dim %d is capped at level %d"
            % (depth, H.carrier.dim, cap))
    P = build_cm(H, ModularPair(H, pair.delta, pair.sigma), depth)
    matrix = evaluate_word(P, word)
    rep = Report("eval")
    rep.add("word", True, word.text() or "id(%d)" % word.source)
    rep.add("normal form", True, normal.text() or "id(%d)" % normal.source)
    rep.add_eq("evaluation agrees with the normal form",
               matrix, evaluate_word(P, normal))
    rep.add("boundary", True, "level %d -> level %d (%d x %d matrix)"
            % (word.source, word.target, matrix.cod.dim, matrix.dom.dim))
    field = H.field
    result = {
        "word": word.text() or "id(%d)" % word.source,
        "normal_form": normal.text() or "id(%d)" % normal.source,
        "source_level": word.source,
        "target_level": word.target,
        "rows": [[field.scalar_to_json(v) for v in row]
                 for row in matrix.rows()],
    }
    return rep, result


# ---------------------------------------------------------------------------
# command plumbing


def _canonical_bytes(doc):
    return (json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"
            ).encode("utf-8")


def _digest(data):
    return "sha256:" + hashlib.sha256(data).hexdigest()


def _resolve_source(builtin_name, algebra_file, q_text, q_order):
    if (builtin_name is None) == (algebra_file is None):
        raise click.UsageError("pass exactly one of --builtin or "
                               "--algebra-file")
    if builtin_name is None:
        if q_text is not None or q_order is not None:
            raise click.UsageError("--q applies only to builtin "
                                   "anyonic_line_q")
        try:
            raw = Path(algebra_file).read_bytes()
        except OSError as exc:
            raise ParseError("cannot read %s: %s"
                             % (algebra_file, exc)) from None
        bundle = _load_bytes(raw)
        info = {"kind": "file", "path": str(algebra_file),
                "digest": _digest(raw)}
        return bundle, info
    if builtin_name != "anyonic_line_q" and (q_text is not None
                                             or q_order is not None):
        raise click.UsageError("--q applies only to builtin anyonic_line_q")
    if q_text is None:
        if q_order is not None:
            raise click.UsageError("--q-order needs --q")
        bundle = builtin(builtin_name)
    else:
        field = make_field(q_order if q_order is not None else "Q")
        bundle = builtin(builtin_name, q=field.parse_scalar(q_text))
    info = {"kind": "builtin", "name": builtin_name,
            "digest": _digest(_canonical_bytes(serialize(bundle)))}
    return bundle, info


def _select_pairs(bundle, label):
    if label is None:
        return list(bundle.pairs)
    for p in bundle.pairs:
        if p.name == label:
            return [p]
    raise click.UsageError("no pair named %r; have %s"
                           % (label, ", ".join(p.name for p in bundle.pairs)
                              or "none"))


def _parse_families(text):
    if text is None:
        return None
    fams = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if part not in RELATION_FAMILIES:
            raise click.UsageError(
                "unknown family %r; known: %s"
                % (part, ", ".join(RELATION_FAMILIES)))
        if part not in fams:
            fams.append(part)
    if not fams:
        raise click.UsageError("--families must name at least one family")
    return fams


def _new_doc(command, info, config):
    return {
        "tool": "braidhopf",
        "version": __version__,
        "schema": REPORT_SCHEMA,
        "command": command,
        "input": info,
        "config": config,
        "suites": [],
        "passed": True,
        "timing": {"threads": thread_count(), "suites": {}},
    }


def _run_suite(doc, name, fn):
    t0 = time.perf_counter()
    rep = fn()
    doc["timing"]["suites"][name] = round(time.perf_counter() - t0, 6)
    doc["suites"].append(rep.to_json())
    doc["passed"] = doc["passed"] and rep.passed


def _error_json(exc):
    out = {"type": type(exc).__name__, "message": str(exc)}
    line = getattr(exc, "line", None)
    if line is not None:
        out["line"] = line
        out["position"] = getattr(exc, "position", None)
    rep = getattr(exc, "report", None)
    if rep is not None:
        out["report"] = rep.to_json()
    return out


def _emit(doc, out_path):
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if out_path is None:
        click.echo(text, nl=False)
        return
    Path(out_path).write_text(text, encoding="utf-8")
    if "error" in doc:
        click.echo("error: %s" % doc["error"]["message"])
    else:
        for suite in doc["suites"]:
            click.echo("[%s] %s" % ("PASS" if suite["passed"] else "FAIL",
                                    suite["name"]))
    click.echo("report written to %s" % out_path)


def _execute(command, out_path, runner):
    started = time.perf_counter()
    try:
        doc = runner()
    except BraidHopfError as exc:
        _emit({
            "tool": "braidhopf",
            "version": __version__,
            "schema": REPORT_SCHEMA,
            "command": command,
            "error": _error_json(exc),
            "passed": False,
        }, out_path)
        raise SystemExit(2)
    doc["timing"]["total"] = round(time.perf_counter() - started, 6)
    _emit(doc, out_path)
    raise SystemExit(0 if doc["passed"] else 1)


def _source_options(fn):
    for opt in reversed((
        click.option("--builtin", "builtin_name",
                     type=click.Choice(BUILTIN_NAMES), default=None,
                     help="Named example algebra."),
        click.option("--algebra-file", "algebra_file",
                     type=click.Path(), default=None,
                     help="Algebra file (see docs/schemas)."),
        click.option("--q", "q_text", default=None,
                     help="Exact crossing scalar for anyonic_line_q."),
        click.option("--q-order", "q_order", type=click.IntRange(1),
                     default=None,
                     help="Parse --q in the cyclotomic field of this "
                          "order."),
        click.option("--pair", "pair_label", default=None,
                     help="Restrict to one stored pair by name."),
        click.option("--out", "out_path", type=click.Path(), default=None,
                     help="Write the JSON report here instead of stdout."),
    )):
        fn = opt(fn)
    return fn


_N_MAX_OPTION = click.option(
    "--n-max", "n_max", type=click.IntRange(0), default=DEFAULT_N_MAX,
    show_default=True,
    help="Top tensor level (clamped per algebra; see level_cap).")
_DEGREE_BOUND_OPTION = click.option(
    "--degree-bound", "degree_bound", type=click.IntRange(1),
    default=DEFAULT_DEGREE_BOUND, show_default=True,
    help="Total-complex truncation degree (clamped per algebra).")


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(__version__, prog_name="braidhopf")
def main():
    """Exact verification suites for braided Hopf algebra towers."""


@main.command()
@_source_options
@_N_MAX_OPTION
def verify(builtin_name, algebra_file, q_text, q_order, pair_label,
           out_path, n_max):
    """Hopf axioms plus the identity suites for every stored pair."""
    def runner():
        bundle, info = _resolve_source(builtin_name, algebra_file,
                                       q_text, q_order)
        pairs = _select_pairs(bundle, pair_label)
        doc = _new_doc("verify", info, {"n_max": n_max, "pair": pair_label})
        _run_suite(doc, "axioms", lambda: suite_axioms(bundle))
        _run_suite(doc, "lemmas", lambda: suite_lemmas(bundle, pairs, n_max))
        return doc
    _execute("verify", out_path, runner)


@main.command()
@_source_options
@_N_MAX_OPTION
@click.option("--families", "families_text", default=None,
              help="Comma list from SR, PCR, CC, TwistedCC.  Default: "
                   "SR,PCR plus TwistedCC where the twisted involution "
                   "predicate holds.")
def relations(builtin_name, algebra_file, q_text, q_order, pair_label,
              out_path, n_max, families_text):
    """Simplicial, paracocyclic, and cyclicity relations on the tower."""
    families = _parse_families(families_text)
    def runner():
        bundle, info = _resolve_source(builtin_name, algebra_file,
                                       q_text, q_order)
        pairs = _select_pairs(bundle, pair_label)
        doc = _new_doc("relations", info,
                       {"n_max": n_max, "pair": pair_label,
                        "families": families})
        _run_suite(doc, "relations",
                   lambda: suite_relations(bundle, pairs, families, n_max))
        return doc
    _execute("relations", out_path, runner)


@main.command()
@_source_options
@_N_MAX_OPTION
def powers(builtin_name, algebra_file, q_text, q_order, pair_label,
           out_path, n_max):
    """Closed formulas for powers of the cyclic operator."""
    def runner():
        bundle, info = _resolve_source(builtin_name, algebra_file,
                                       q_text, q_order)
        pairs = _select_pairs(bundle, pair_label)
        doc = _new_doc("powers", info, {"n_max": n_max, "pair": pair_label})
        _run_suite(doc, "powers", lambda: suite_powers(bundle, pairs, n_max))
        return doc
    _execute("powers", out_path, runner)


@main.command()
@_source_options
@_N_MAX_OPTION
def traces(builtin_name, algebra_file, q_text, q_order, pair_label,
           out_path, n_max):
    """Solve the trace conditions and check the commutation families."""
    def runner():
        bundle, info = _resolve_source(builtin_name, algebra_file,
                                       q_text, q_order)
        pairs = _select_pairs(bundle, pair_label)
        doc = _new_doc("traces", info, {"n_max": n_max, "pair": pair_label})
        _run_suite(doc, "traces", lambda: suite_traces(bundle, pairs, n_max))
        return doc
    _execute("traces", out_path, runner)


@main.command()
@_source_options
@_DEGREE_BOUND_OPTION
def homology(builtin_name, algebra_file, q_text, q_order, pair_label,
             out_path, degree_bound):
    """Cyclic cohomology of the transported tower, degree by degree."""
    def runner():
        bundle, info = _resolve_source(builtin_name, algebra_file,
                                       q_text, q_order)
        pairs = _select_pairs(bundle, pair_label)
        doc = _new_doc("homology", info,
                       {"degree_bound": degree_bound, "pair": pair_label})
        _run_suite(doc, "homology",
                   lambda: suite_homology(bundle, pairs, degree_bound))
        return doc
    _execute("homology", out_path, runner)


@main.command("eval")
@_source_options
@click.option("--word", "word_text", required=True,
              help='Generator word, e.g. "t(2).d(2,0)" or "id(3)".')
def eval_cmd(builtin_name, algebra_file, q_text, q_order, pair_label,
             out_path, word_text):
    """Evaluate a generator word to an explicit matrix."""
    def runner():
        bundle, info = _resolve_source(builtin_name, algebra_file,
                                       q_text, q_order)
        pairs = _select_pairs(bundle, pair_label)
        if not pairs:
            raise click.UsageError("the algebra stores no pairs; eval "
                                   "needs one")
        doc = _new_doc("eval", info,
                       {"pair": pairs[0].name, "word": word_text})
        t0 = time.perf_counter()
        rep, result = run_eval(bundle, pairs[0], word_text)
        doc["timing"]["suites"]["eval"] = round(time.perf_counter() - t0, 6)
        doc["suites"].append(rep.to_json())
        doc["passed"] = rep.passed
        doc["result"] = result
        return doc
    _execute("eval", out_path, runner)


@main.command()
@_source_options
@_N_MAX_OPTION
@_DEGREE_BOUND_OPTION
def report(builtin_name, algebra_file, q_text, q_order, pair_label,
           out_path, n_max, degree_bound):
    """Every suite in one document: axioms, lemmas, relations, powers,
    traces, homology."""
    def runner():
        bundle, info = _resolve_source(builtin_name, algebra_file,
                                       q_text, q_order)
        pairs = _select_pairs(bundle, pair_label)
        doc = _new_doc("report", info,
                       {"n_max": n_max, "degree_bound": degree_bound,
                        "pair": pair_label})
        _run_suite(doc, "axioms", lambda: suite_axioms(bundle))
        _run_suite(doc, "lemmas", lambda: suite_lemmas(bundle, pairs, n_max))
        _run_suite(doc, "relations",
                   lambda: suite_relations(bundle, pairs, None, n_max))
        _run_suite(doc, "powers", lambda: suite_powers(bundle, pairs, n_max))
        _run_suite(doc, "traces", lambda: suite_traces(bundle, pairs, n_max))
        _run_suite(doc, "homology",
                   lambda: suite_homology(bundle, pairs, degree_bound))
        return doc
    _execute("report", out_path, runner)


if __name__ == "__main__":
    main()
