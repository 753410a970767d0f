"""Line-oriented text formats for algebras, maps, and constraint systems.

An algebra document::

    dim 2
    params lambda
    basis e1 e2
    complete skew-binary
    complete skew-ternary
    binary e1 e2 = -e2
    ternary e1 e2 e1 = lambda*e2
    alpha e1 = e1 + a*e2

Header lines declare the dimension, the scalar parameters, and the basis
labels; parameters must be declared before use and referenced labels must be
declared (undeclared name = parse error).  The optional ``complete``
directives fill unassigned constants by skew-symmetry (in the first two slots
for the ternary product) and zero the corresponding diagonal; an explicit
assignment that contradicts a completed value is rejected.  Right-hand sides
are linear combinations of basis labels in the scalar grammar.  ``alpha``
lines give the twist columnwise; omitting the stanza means the identity.

Emission is deterministic (sorted indices, canonical scalar layout), so
emit(parse(emit(x))) == emit(x) byte for byte.

Constraint-system documents carry an ``unknowns`` header, an optional
``params`` header, and then one polynomial per line, each meaning "= 0".
"""

from __future__ import annotations

import math
import re

from .algebra import HomAlgebra, LinearMap, Vector
from .errors import ParseError
from .morphisms import ConstraintSystem
from .scalars import Scalar, ZERO, parse_scalar

__all__ = [
    "parse_algebra",
    "emit_algebra",
    "parse_map",
    "emit_map",
    "parse_constraints",
    "emit_constraints",
    "format_vector",
    "format_suite_report",
]

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def format_vector(v, labels):
    """Render coordinates as the flat linear-combination grammar, e1 first."""
    parts = []
    for coord, label in zip(v.coords, labels):
        for mono, coeff in coord.terms():
            factors = [f"{name}^{e}" if e > 1 else name for name, e in mono]
            factors.append(label)
            mag = abs(coeff)
            if mag != 1:
                factors.insert(0, str(mag))
            body = "*".join(factors)
            if not parts:
                parts.append(body if coeff > 0 else "-" + body)
            else:
                parts.append(("+ " if coeff > 0 else "- ") + body)
    return " ".join(parts) if parts else "0"


def format_suite_report(report, labels=None):
    lines = [f"suite {report.suite} (twist exponent {report.twist_exponent})"]
    for name, failure in report.results:
        if failure is None:
            lines.append(f"  {name}: pass")
        else:
            if labels is None:
                assign = ", ".join(f"{v}=#{i}" for v, i in zip(failure.variables, failure.indices))
            else:
                assign = ", ".join(f"{v}={labels[i]}" for v, i in zip(failure.variables, failure.indices))
            residual = format_vector(failure.residual, labels or tuple(f"#{i}" for i in range(failure.residual.dim)))
            lines.append(f"  {name}: FAIL at ({assign}), residual {residual}")
    verdict = "pass" if report.passed else "FAIL"
    lines.append(f"  => {verdict}")
    return "\n".join(lines)


def _content_lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _vector_from_scalar(poly, labels, lineno):
    label_set = set(labels)
    coords = [ZERO] * len(labels)
    for mono, coeff in poly.terms():
        hits = [(name, e) for name, e in mono if name in label_set]
        if len(hits) != 1 or hits[0][1] != 1:
            raise ParseError(
                "right-hand side must be a linear combination of basis vectors", line=lineno
            )
        rest = tuple((name, e) for name, e in mono if name not in label_set)
        i = labels.index(hits[0][0])
        coords[i] = coords[i] + Scalar({rest: coeff})
    return Vector(coords)


class _DocReader:
    """Shared header handling for algebra and map documents."""

    def __init__(self, text):
        self.dim = None
        self.params = None
        self.basis = None
        self.lines = list(_content_lines(text))

    def names(self):
        return set(self.params or ()) | set(self.basis)

    def handle_header(self, lineno, words):
        key = words[0]
        if key == "dim":
            if self.dim is not None:
                raise ParseError("duplicate dim line", line=lineno)
            if len(words) != 2 or not words[1].isdigit() or int(words[1]) < 1:
                raise ParseError("dim takes one positive integer", line=lineno)
            self.dim = int(words[1])
            return True
        if key == "params":
            if self.params is not None:
                raise ParseError("duplicate params line", line=lineno)
            names = words[1:]
            for name in names:
                if not _NAME.match(name):
                    raise ParseError(f"bad parameter name {name!r}", line=lineno)
            if len(set(names)) != len(names):
                raise ParseError("duplicate parameter name", line=lineno)
            self.params = tuple(names)
            return True
        if key == "basis":
            if self.basis is not None:
                raise ParseError("duplicate basis line", line=lineno)
            if self.dim is None:
                raise ParseError("dim must come before basis", line=lineno)
            labels = words[1:]
            if len(labels) != self.dim or len(set(labels)) != self.dim:
                raise ParseError(f"basis needs {self.dim} distinct labels", line=lineno)
            for label in labels:
                if not _NAME.match(label):
                    raise ParseError(f"bad basis label {label!r}", line=lineno)
            if self.params and set(labels) & set(self.params):
                raise ParseError("basis labels and parameters overlap", line=lineno)
            self.basis = tuple(labels)
            return True
        return False

    def need_basis(self, lineno):
        if self.basis is None:
            raise ParseError("basis must be declared before assignments", line=lineno)

    def label_index(self, label, lineno):
        try:
            return self.basis.index(label)
        except ValueError:
            raise ParseError(f"undeclared symbol {label!r}", line=lineno) from None

    def rhs_vector(self, line, lineno):
        _, _, rhs = line.partition("=")
        if not rhs.strip():
            raise ParseError("missing right-hand side", line=lineno)
        try:
            poly = parse_scalar(rhs, self.names())
        except ParseError as exc:
            raise ParseError(f"{exc.args[0]}", line=lineno) from None
        return _vector_from_scalar(poly, self.basis, lineno)


def parse_algebra(text):
    doc = _DocReader(text)
    skew_binary = False
    skew_ternary = False
    binary = {}
    ternary = {}
    alpha = {}

    for lineno, line in doc.lines:
        words = line.split("=", 1)[0].split()
        if not words:
            raise ParseError("missing keyword", line=lineno)
        if doc.handle_header(lineno, words):
            continue
        key = words[0]
        if key == "complete":
            if len(words) != 2 or words[1] not in ("skew-binary", "skew-ternary"):
                raise ParseError("complete takes skew-binary or skew-ternary", line=lineno)
            if words[1] == "skew-binary":
                skew_binary = True
            else:
                skew_ternary = True
            continue
        if key in ("binary", "ternary", "alpha"):
            doc.need_basis(lineno)
            arity = {"binary": 2, "ternary": 3, "alpha": 1}[key]
            if len(words) != 1 + arity or "=" not in line:
                raise ParseError(f"expected '{key} {' '.join(['<label>'] * arity)} = <value>'", line=lineno)
            idx = tuple(doc.label_index(w, lineno) for w in words[1:])
            store = {"binary": binary, "ternary": ternary, "alpha": alpha}[key]
            if idx in store:
                raise ParseError(f"duplicate assignment for {key} {' '.join(words[1:])}", line=lineno)
            store[idx] = (doc.rhs_vector(line, lineno), lineno)
            continue
        raise ParseError(f"unknown keyword {key!r}", line=lineno)

    if doc.dim is None:
        raise ParseError("missing dim line")
    if doc.basis is None:
        raise ParseError("missing basis line")
    n = doc.dim
    zero = Vector.zero(n)

    def completed_pairs(assigned, skew, partner, diagonal, what):
        cells = {}
        for idx, (value, lineno) in assigned.items():
            cells[idx] = value
        if skew:
            for idx, (value, lineno) in assigned.items():
                mate = partner(idx)
                if mate == idx:
                    if not value.is_zero():
                        raise ParseError(
                            f"conflicting assignment: {what} at {idx} must vanish under skew completion",
                            line=lineno,
                        )
                    continue
                if mate in assigned:
                    if assigned[mate][0] != -value:
                        raise ParseError(
                            f"conflicting assignment: {what} at {mate} breaks skew symmetry",
                            line=assigned[mate][1],
                        )
                else:
                    cells[mate] = -value
            for idx in diagonal:
                cells.setdefault(idx, zero)
        return cells

    bin_cells = completed_pairs(
        binary,
        skew_binary,
        lambda ij: (ij[1], ij[0]),
        [(i, i) for i in range(n)],
        "binary product",
    )
    tern_cells = completed_pairs(
        ternary,
        skew_ternary,
        lambda ijk: (ijk[1], ijk[0], ijk[2]),
        [(i, i, k) for i in range(n) for k in range(n)],
        "ternary product",
    )

    binary_tensor = tuple(
        tuple(bin_cells.get((i, j), zero).coords for j in range(n)) for i in range(n)
    )
    ternary_tensor = tuple(
        tuple(tuple(tern_cells.get((i, j, k), zero).coords for k in range(n)) for j in range(n))
        for i in range(n)
    )

    if alpha:
        missing = [doc.basis[j] for j in range(n) if (j,) not in alpha]
        if missing:
            raise ParseError(f"alpha image missing for {missing[0]!r}")
        twist = LinearMap.from_columns(tuple(alpha[(j,)][0].coords for j in range(n)))
    else:
        twist = LinearMap.identity(n)

    return HomAlgebra(
        dim=n,
        basis=doc.basis,
        params=frozenset(doc.params or ()),
        binary=binary_tensor,
        ternary=ternary_tensor,
        twist=twist,
    )


def emit_algebra(alg):
    lines = [f"dim {alg.dim}"]
    declared = sorted(alg.all_variables())
    if declared:
        lines.append("params " + " ".join(declared))
    lines.append("basis " + " ".join(alg.basis))
    n = alg.dim
    for i in range(n):
        for j in range(n):
            cell = alg.binary_value(i, j)
            if not cell.is_zero():
                lines.append(f"binary {alg.basis[i]} {alg.basis[j]} = {format_vector(cell, alg.basis)}")
    for i in range(n):
        for j in range(n):
            for k in range(n):
                cell = alg.ternary_value(i, j, k)
                if not cell.is_zero():
                    lines.append(
                        f"ternary {alg.basis[i]} {alg.basis[j]} {alg.basis[k]} = "
                        f"{format_vector(cell, alg.basis)}"
                    )
    if not alg.twist.is_identity():
        for j in range(n):
            lines.append(f"alpha {alg.basis[j]} = {format_vector(alg.twist.column(j), alg.basis)}")
    return "\n".join(lines) + "\n"


def parse_map(text):
    """Parse a map document (header plus one alpha line per basis vector).

    Returns (LinearMap, basis labels, declared parameter names).
    """
    doc = _DocReader(text)
    alpha = {}
    for lineno, line in doc.lines:
        words = line.split("=", 1)[0].split()
        if not words:
            raise ParseError("missing keyword", line=lineno)
        if doc.handle_header(lineno, words):
            continue
        if words[0] != "alpha":
            raise ParseError("map documents allow only header and alpha lines", line=lineno)
        doc.need_basis(lineno)
        if len(words) != 2 or "=" not in line:
            raise ParseError("expected 'alpha <label> = <value>'", line=lineno)
        j = doc.label_index(words[1], lineno)
        if j in alpha:
            raise ParseError(f"duplicate assignment for alpha {words[1]}", line=lineno)
        alpha[j] = doc.rhs_vector(line, lineno)
    if doc.dim is None:
        raise ParseError("missing dim line")
    if doc.basis is None:
        raise ParseError("missing basis line")
    missing = [doc.basis[j] for j in range(doc.dim) if j not in alpha]
    if missing:
        raise ParseError(f"alpha image missing for {missing[0]!r}")
    m = LinearMap.from_columns(tuple(alpha[j].coords for j in range(doc.dim)))
    return m, doc.basis, frozenset(doc.params or ())


def emit_map(m, basis, params=None):
    lines = [f"dim {m.dim}"]
    declared = sorted(set(params or ()) | m.variables())
    if declared:
        lines.append("params " + " ".join(declared))
    lines.append("basis " + " ".join(basis))
    for j in range(m.dim):
        lines.append(f"alpha {basis[j]} = {format_vector(m.column(j), basis)}")
    return "\n".join(lines) + "\n"


def parse_constraints(text):
    unknowns = None
    params = ()
    equations = []
    for lineno, line in _content_lines(text):
        words = line.split()
        if words[0] == "unknowns":
            if unknowns is not None:
                raise ParseError("duplicate unknowns line", line=lineno)
            if len(words) < 2 or len(set(words[1:])) != len(words) - 1:
                raise ParseError("unknowns takes distinct names", line=lineno)
            unknowns = tuple(words[1:])
            continue
        if words[0] == "params":
            if unknowns is None:
                raise ParseError("unknowns must come first", line=lineno)
            params = tuple(words[1:])
            continue
        if unknowns is None:
            raise ParseError("unknowns must come first", line=lineno)
        try:
            equations.append(parse_scalar(line, set(unknowns) | set(params)))
        except ParseError as exc:
            raise ParseError(f"{exc.args[0]}", line=lineno) from None
    if unknowns is None:
        raise ParseError("missing unknowns line")
    dim = math.isqrt(len(unknowns))
    if dim * dim != len(unknowns):
        raise ParseError("the number of unknowns must be a perfect square")
    return ConstraintSystem(
        dim=dim, unknowns=unknowns, params=frozenset(params), equations=tuple(equations)
    )


def emit_constraints(system):
    lines = ["unknowns " + " ".join(system.unknowns)]
    if system.params:
        lines.append("params " + " ".join(sorted(system.params)))
    for eq in system.equations:
        lines.append(str(eq))
    return "\n".join(lines) + "\n"
