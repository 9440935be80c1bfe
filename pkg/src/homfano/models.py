"""The model language and the embedded catalog of Fano zero loci.

A document is a sequence of records::

    #: free-text source of the record
    model 2-16 alt 1 on P(2) x Gr(2,4) cut dual(U2)(1,0) + O(0,2) expect (14,22,2,2);

Whitespace between tokens is insignificant and ``#`` starts a line comment.
A comment of the form ``#: text`` directly before a record is kept as the
record's ``source``; every other comment is discarded.
"""

from __future__ import annotations

import os
import re
from collections.abc import Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .bundlecalc import (
    BundleError,
    BundleExpr,
    Dual,
    Ext,
    LineO,
    Schur,
    Sym,
    Taut,
    Tensor,
    Twist,
    Wedge,
    ZeroBundle,
    direct_sum,
    normalize,
    to_dsl,
)
from .bwb import Factor, Flag, Grassmannian, Projective, Space, WeightedProjective
from .chow import anticanonical_degree
from .koszul import FanoConstraints, ZeroLocusProblem, h0_anticanonical, hodge_numbers

TAGS = ("restricted-section", "weighted-stored-only", "extension-bundle")
JOBS_ENV = "HOMFANO_JOBS"


class DslError(ValueError):
    """A syntax or semantic error in a model document, located by character offset."""

    def __init__(self, message: str, offset: int, text: str = "") -> None:
        self.offset = offset
        self.line = text.count("\n", 0, offset) + 1
        self.column = offset - (text.rfind("\n", 0, offset) + 1) + 1
        self.message = message
        super().__init__(f"{message} at offset {offset} (line {self.line}, column {self.column})")


class DslSyntaxError(DslError):
    pass


class DslSemanticError(DslError):
    """Well-formed text that refers to a missing factor or has the wrong twist arity."""


@dataclass(frozen=True)
class ModelRecord:
    id: str
    variant: int
    space: Space
    bundle: BundleExpr
    expected: tuple[int | None, ...] = ()
    tags: frozenset[str] = frozenset()
    source: str = ""

    @property
    def is_del_pezzo(self) -> bool:
        return self.id.startswith("dp-")

    @property
    def target_dim(self) -> int:
        return 2 if self.is_del_pezzo else 3

    @property
    def rho(self) -> int:
        """Picard rank read off the id: the leading integer."""
        head = self.id[3:] if self.is_del_pezzo else self.id
        return int(head.split("-")[0])

    @property
    def weighted(self) -> bool:
        return "weighted-stored-only" in self.tags

    @property
    def key(self) -> tuple:
        return (id_sort_key(self.id), self.variant)

    def __str__(self) -> str:
        return print_record(self)


def id_sort_key(ident: str) -> tuple:
    """Three-folds in numeric order, then del Pezzo surfaces."""
    dp = ident.startswith("dp-")
    parts = (ident[3:] if dp else ident).split("-")
    return (dp, tuple(int(p) if p.isdigit() else 0 for p in parts), ident)


# ---------------------------------------------------------------------------
# parser

_ID = re.compile(r"[A-Za-z0-9][A-Za-z0-9-]*")
_TAG = re.compile(r"[a-z][a-z-]*")
_INT = re.compile(r"-?\d+")
_WORD = re.compile(r"[A-Za-z]+")


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0
        self.pending_source: str | None = None

    # -- lexical helpers ----------------------------------------------------

    def skip(self) -> None:
        text = self.text
        while self.pos < len(text):
            ch = text[self.pos]
            if ch.isspace():
                self.pos += 1
            elif ch == "#":
                end = text.find("\n", self.pos)
                end = len(text) if end < 0 else end
                line = text[self.pos:end]
                if line.startswith("#:"):
                    self.pending_source = line[2:].strip()
                self.pos = end
            else:
                break

    def error(self, message: str, offset: int | None = None) -> DslSyntaxError:
        return DslSyntaxError(message, self.pos if offset is None else offset, self.text)

    def peek(self, s: str) -> bool:
        self.skip()
        return self.text.startswith(s, self.pos)

    def accept(self, s: str) -> bool:
        if self.peek(s):
            self.pos += len(s)
            return True
        return False

    def expect(self, s: str) -> int:
        self.skip()
        if not self.text.startswith(s, self.pos):
            found = self.text[self.pos:self.pos + 1] or "end of input"
            raise self.error(f"expected {s!r}, found {found!r}")
        start = self.pos
        self.pos += len(s)
        return start

    def regex(self, pattern: re.Pattern[str], what: str) -> str:
        self.skip()
        m = pattern.match(self.text, self.pos)
        if not m:
            found = self.text[self.pos:self.pos + 1] or "end of input"
            raise self.error(f"expected {what}, found {found!r}")
        self.pos = m.end()
        return m.group()

    def word(self) -> str | None:
        """Consume an alphabetic keyword if one starts here."""
        self.skip()
        m = _WORD.match(self.text, self.pos)
        return m.group() if m else None

    def keyword(self, kw: str) -> bool:
        self.skip()
        m = _WORD.match(self.text, self.pos)
        if m and m.group() == kw:
            self.pos = m.end()
            return True
        return False

    def integer(self) -> int:
        return int(self.regex(_INT, "an integer"))

    def natural(self) -> int:
        start = self.pos
        value = self.integer()
        if value < 0:
            raise self.error("expected a non-negative integer", start)
        return value

    def ints(self) -> tuple[int, ...]:
        out = [self.integer()]
        while self.accept(","):
            out.append(self.integer())
        return tuple(out)

    def at_end(self) -> bool:
        self.skip()
        return self.pos >= len(self.text)

    # -- grammar ------------------------------------------------------------

    def document(self) -> list[ModelRecord]:
        out = []
        while not self.at_end():
            out.append(self.record())
        return out

    def record(self) -> ModelRecord:
        self.pending_source = None
        self.skip()
        if not self.keyword("model"):
            raise self.error("expected 'model'")
        source = self.pending_source or ""
        ident = self.regex(_ID, "a model id")
        variant = 0
        if self.keyword("alt"):
            variant = self.natural()
        if not self.keyword("on"):
            raise self.error("expected 'on'")
        space = self.space()
        if not self.keyword("cut"):
            raise self.error("expected 'cut'")
        bundle_start = self.pos
        bundle, spans = self.bundle_with_spans()
        expected: tuple[int | None, ...] = ()
        if self.keyword("expect"):
            expected = self.expect_tuple()
        tags: frozenset[str] = frozenset()
        if self.keyword("tags"):
            tags = self.taglist()
        self.expect(";")
        check_bundle(space, bundle, spans, self.text, bundle_start)
        return ModelRecord(ident, variant, space, bundle, expected, tags, source)

    def space(self) -> Space:
        factors = [self.factor()]
        while self.keyword("x"):
            factors.append(self.factor())
        return Space(tuple(factors))

    def factor(self) -> Factor:
        self.skip()
        start = self.pos
        name = self.word()
        if name not in ("P", "Gr", "Fl", "WP"):
            raise self.error("expected a factor P(..), Gr(..), Fl(..) or WP(..)")
        self.pos += len(name)
        self.expect("(")
        try:
            if name == "P":
                f: Factor = Projective(self.natural())
            elif name == "Gr":
                k = self.natural()
                self.expect(",")
                f = Grassmannian(k, self.natural())
            elif name == "Fl":
                ks = [self.natural()]
                while self.accept(","):
                    ks.append(self.natural())
                self.expect(";")
                f = Flag(tuple(ks), self.natural())
            else:
                f = WeightedProjective(self.ints())
        except ValueError as exc:
            if isinstance(exc, DslError):
                raise
            raise DslSemanticError(str(exc), start, self.text) from None
        self.expect(")")
        return f

    def bundle_with_spans(self) -> tuple[BundleExpr, dict[int, int]]:
        self.spans: dict[int, int] = {}
        expr = self.bundle()
        return expr, self.spans

    def bundle(self) -> BundleExpr:
        items = [self.prod()]
        while self.accept("+"):
            items.append(self.prod())
        return direct_sum(items)

    def prod(self) -> BundleExpr:
        items = [self.atom()]
        while self.accept("*"):
            items.append(self.atom())
        return items[0] if len(items) == 1 else Tensor(tuple(items))

    def atom(self) -> BundleExpr:
        self.skip()
        start = self.pos
        expr = self.primary()
        while self.peek("("):
            self.expect("(")
            degrees = self.ints()
            self.expect(")")
            expr = Twist(expr, degrees)
        self.spans[id(expr)] = start
        return expr

    def primary(self) -> BundleExpr:
        self.skip()
        start = self.pos
        if self.text.startswith("0", self.pos) and not _INT.match(self.text, self.pos + 1):
            self.pos += 1
            return ZeroBundle()
        name = self.word()
        if name is None:
            raise self.error("expected a bundle")
        if name == "O":
            self.pos += 1
            self.expect("(")
            degrees = self.ints()
            self.expect(")")
            return LineO(degrees)
        if name == "dual":
            self.pos += len(name)
            self.expect("(")
            inner = self.bundle()
            self.expect(")")
            return Dual(inner)
        if name == "Ext":
            self.pos += len(name)
            self.expect("[")
            pieces = [self.bundle()]
            while self.accept(","):
                pieces.append(self.bundle())
            self.expect("]")
            if len(pieces) < 2:
                raise self.error("Ext needs at least two graded pieces", start)
            return Ext(tuple(pieces))
        if name == "Schur":
            self.pos += len(name)
            self.expect("[")
            lam = self.ints()
            self.expect("]")
            if any(a < b for a, b in zip(lam, lam[1:])) or any(x < 0 for x in lam):
                raise self.error("Schur index must be a partition", start)
            self.expect("(")
            inner = self.bundle()
            self.expect(")")
            return Schur(lam, inner)
        for kw, node in (("Sym", Sym), ("Wedge", Wedge)):
            if name == kw:
                self.pos += len(kw)
                m = re.compile(r"\d+").match(self.text, self.pos)
                if not m:
                    raise self.error(f"expected a power after {kw}")
                self.pos = m.end()
                self.expect("(")
                inner = self.bundle()
                self.expect(")")
                return node(int(m.group()), inner)
        m = re.compile(r"([UQ])(\d+)(?:\.(\d+))?").match(self.text, self.pos)
        if m and name in ("U", "Q"):
            self.pos = m.end()
            return Taut(m.group(1), int(m.group(2)), int(m.group(3)) if m.group(3) else None)
        raise self.error(f"unknown bundle {name!r}")

    def expect_tuple(self) -> tuple[int | None, ...]:
        self.expect("(")
        out: list[int | None] = [self.entry()]
        while self.accept(","):
            out.append(self.entry())
        self.expect(")")
        return tuple(out)

    def entry(self) -> int | None:
        if self.accept("_"):
            return None
        return self.integer()

    def taglist(self) -> frozenset[str]:
        out = []
        while True:
            start = self.pos
            tag = self.regex(_TAG, "a tag")
            if tag not in TAGS:
                raise DslSemanticError(f"unknown tag {tag!r}", start, self.text)
            out.append(tag)
            if not self.accept(","):
                return frozenset(out)


def check_bundle(space: Space, expr: BundleExpr, spans: dict[int, int] | None = None,
                 text: str = "", default_offset: int = 0) -> None:
    """Semantic checks that do not need the engine: factor references and twist arity."""
    spans = spans or {}
    rho = space.picard_rank

    def walk(e: BundleExpr) -> None:
        offset = spans.get(id(e), default_offset)
        if isinstance(e, LineO) or isinstance(e, Twist):
            if len(e.degrees) != rho:
                raise DslSemanticError(
                    f"degree vector {e.degrees} has length {len(e.degrees)}, but {space} has Picard rank {rho}",
                    offset, text)
        if isinstance(e, Taut):
            if not 1 <= e.factor <= len(space.factors):
                raise DslSemanticError(f"{e.kind}{e.factor}: {space} has no factor {e.factor}", offset, text)
            f = space.factors[e.factor - 1]
            if f.weighted:
                raise DslSemanticError(f"{e.kind}{e.factor}: weighted factors carry no tautological bundles",
                                       offset, text)
            r = len(f.subspace_dims)
            if (e.index is None and r != 1) or (e.index is not None and not 1 <= e.index <= r):
                raise DslSemanticError(f"{to_dsl(e)}: bad subspace index for {f}", offset, text)
        for child in _children(e):
            walk(child)

    walk(expr)


def _children(e: BundleExpr) -> tuple[BundleExpr, ...]:
    if isinstance(e, (Tensor, Ext)) or type(e).__name__ == "DirectSum":
        return e.args  # type: ignore[attr-defined]
    if isinstance(e, (Dual, Twist, Wedge, Sym, Schur)):
        return (e.arg,)
    return ()


def parse(text: str) -> list[ModelRecord]:
    """Parse a model document."""
    return _Parser(text).document()


def parse_space(text: str) -> Space:
    p = _Parser(text)
    space = p.space()
    if not p.at_end():
        raise p.error("unexpected trailing input")
    return space


def parse_bundle(text: str, space: Space | None = None) -> BundleExpr:
    """Parse a bundle expression; with ``space`` it is also checked against it."""
    p = _Parser(text)
    expr, spans = p.bundle_with_spans()
    if not p.at_end():
        raise p.error("unexpected trailing input")
    if space is not None:
        check_bundle(space, expr, spans, text)
    return expr


# ---------------------------------------------------------------------------
# printing


def print_space(space: Space) -> str:
    return str(space)


def _entry(v: int | None) -> str:
    return "_" if v is None else str(v)


def print_record(rec: ModelRecord, with_source: bool = False) -> str:
    parts = [f"model {rec.id}"]
    if rec.variant:
        parts.append(f"alt {rec.variant}")
    parts.append(f"on {print_space(rec.space)} cut {to_dsl(rec.bundle)}")
    if rec.expected:
        parts.append("expect (" + ",".join(_entry(v) for v in rec.expected) + ")")
    if rec.tags:
        parts.append("tags " + ",".join(t for t in TAGS if t in rec.tags))
    line = " ".join(parts) + ";"
    if with_source and rec.source:
        return f"#: {rec.source}\n{line}"
    return line


def print_document(records: Iterable[ModelRecord]) -> str:
    return "\n".join(print_record(r, with_source=True) for r in records) + "\n"


def export(records: Iterable[ModelRecord] | None = None) -> str:
    """One record per line in canonical form, for external tooling."""
    recs = catalog() if records is None else records
    return "".join(print_record(r) + "\n" for r in recs)


# ---------------------------------------------------------------------------
# catalog


@lru_cache(maxsize=1)
def catalog() -> tuple[ModelRecord, ...]:
    text = resources.files("homfano").joinpath("data/catalog.fano").read_text(encoding="utf-8")
    return tuple(sorted(parse(text), key=lambda r: r.key))


def family_ids() -> list[str]:
    return sorted({r.id for r in catalog()}, key=id_sort_key)


def lookup(ident: str) -> list[ModelRecord]:
    out = [r for r in catalog() if r.id == ident]
    if not out:
        raise KeyError(f"no model with id {ident!r}")
    return out


def get(ident: str, variant: int = 0) -> ModelRecord:
    for r in lookup(ident):
        if r.variant == variant:
            return r
    raise KeyError(f"{ident} has no variant {variant}")


# ---------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class FieldCheck:
    name: str
    computed: int | tuple[int, int] | None
    expected: int | None
    ok: bool | None  # None when there is no reference value

    def format(self) -> str:
        c = self.computed
        shown = "?" if c is None else (str(c) if isinstance(c, int) else f"[{c[0]},{c[1]}]")
        if self.expected is None:
            return f"{self.name}={shown}"
        mark = "ok" if self.ok else "MISMATCH"
        return f"{self.name}={shown} (expected {self.expected}, {mark})"


@dataclass(frozen=True)
class VerifyReport:
    id: str
    variant: int
    status: str  # PASS, FAIL or SKIPPED
    checks: tuple[FieldCheck, ...] = ()
    constraints_used: tuple[str, ...] = ()
    formal: bool = False
    unpinched: tuple[str, ...] = ()
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "PASS"

    def check(self, name: str) -> FieldCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def invariants(self) -> tuple:
        """The computed invariant tuple, used for cross-variant comparison."""
        return tuple(c.computed for c in self.checks if c.name != "dim")


def _field(name: str, computed, expected: int | None) -> FieldCheck:
    if expected is None:
        return FieldCheck(name, computed, None, None)
    return FieldCheck(name, computed, expected, computed == expected)


def verify(rec: ModelRecord) -> VerifyReport:
    """Run the full pipeline on one record and compare with its reference values."""
    if rec.weighted or rec.space.weighted:
        return VerifyReport(rec.id, rec.variant, "SKIPPED", note="weighted factor: not machine-verifiable")
    formal = "restricted-section" in rec.tags
    try:
        bundle = normalize(rec.bundle, rec.space)
    except BundleError as exc:
        return VerifyReport(rec.id, rec.variant, "FAIL", note=f"bundle error: {exc}")
    d = rec.space.dim - bundle.rank
    checks = [_field("dim", d, rec.target_dim)]
    if d != rec.target_dim:
        return VerifyReport(rec.id, rec.variant, "FAIL", tuple(checks), formal=formal, note="dimension check failed")
    try:
        problem = ZeroLocusProblem(rec.space, bundle, FanoConstraints(), formal)
        exp = rec.expected + (None,) * 4
        h0 = h0_anticanonical(problem)
        deg = anticanonical_degree(rec.space, bundle, d)
        table = hodge_numbers(problem)
    except (ArithmeticError, RuntimeError, ValueError) as exc:
        return VerifyReport(rec.id, rec.variant, "FAIL", tuple(checks), formal=formal,
                            note=f"{type(exc).__name__}: {exc}")

    def cell(p: int, q: int):
        lo, hi = table.interval(p, q)
        return lo if lo == hi else (lo, hi)

    if rec.is_del_pezzo:
        checks += [_field("K^2", deg, exp[0]), _field("chi(-K)", h0, exp[1])]
    else:
        checks += [_field("h0(-K)", h0, exp[0]), _field("(-K)^3", deg, exp[1])]
    checks += [_field(f"h0{q}", cell(0, q), 0) for q in range(1, d + 1)]
    rho = exp[3] if not rec.is_del_pezzo and exp[3] is not None else rec.rho
    checks.append(_field("h11", cell(1, 1), rho))
    if not rec.is_del_pezzo:
        checks.append(_field("h21", cell(2, 1), exp[2]))
    unpinched = tuple(f"h{p}{q}" for p in range(d + 1) for q in range(d + 1) if not table.pinched(p, q))
    ok = all(c.ok is not False for c in checks)
    return VerifyReport(rec.id, rec.variant, "PASS" if ok else "FAIL", tuple(checks),
                        table.constraints_used, formal, unpinched)


def default_jobs() -> int:
    env = os.environ.get(JOBS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def verify_many(records: Sequence[ModelRecord], jobs: int | None = None) -> list[VerifyReport]:
    """Verify records with up to ``jobs`` worker processes; reports come back sorted by id."""
    jobs = default_jobs() if jobs is None else max(1, jobs)
    recs = sorted(records, key=lambda r: r.key)
    if jobs == 1 or len(recs) <= 1:
        reports = [verify(r) for r in recs]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(verify, recs, chunksize=1))
    return sorted(reports, key=lambda r: (id_sort_key(r.id), r.variant))
