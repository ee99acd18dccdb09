"""Descriptor files and the command line front end.

Descriptor grammar (line oriented, ``#`` starts a comment)::

    [group]
    type = 1A          # 1A 2A B C 1D 2D 1E6 2E6 E7 E8 F4 G2 (bare A/D/E6 mean inner)
    rank = 2           # optional for E7 E8 F4 G2

    [field]
    degree = 1
    complex_places = 0
    locally_determined = true   # defaults to true up to degree 6
    galois = true               # defaults: true for degree 1, else false
    hbar_fiber = trivial        # trivial | nontrivial | unknown

    [aut]
    g1 = (v5a v5b)(w1 w2)       # cycle notation over declared place labels

    [places]
    v5a = class=c5 kind=split omega=2/5   # kind defaults to split; omega to 0
    # fractions a/m scale into the local group; Klein values are written (b1,b2)

    [real]
    w1 = form=SL_R(3)            # omega= required for forms that do not pin their class

Subcommands: ``classify FILE-or-DIR [--json]``, ``orbit FILE``,
``realforms TYPE RANK [--bound N]``, ``equiv CATALOG``, ``selftest``.
Exit codes: 0 rigid or success, 1 not rigid, 2 undetermined, 3 error,
4 out of scope.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from ._util import natural_key
from .arith_equiv import PermGroup, perm_from_cycles, verify_prop_almost_conjugate
from .brauer import OmegaVector, weak_uniformity, plain_orbits
from .classifier import (
    GroupDescriptor,
    Outcome,
    Verdict,
    classify,
)
from .errors import (
    CapacityError,
    DescriptorParseError,
    MissingRealClassError,
    OutOfScopeError,
    RigidityError,
    ValidationError,
)
from .field_model import (
    FieldDescriptor,
    HbarFiber,
    PlaceLabel,
    PlacePerm,
    PlaceSymmetry,
)
from .invariants import (
    Family,
    FormKind,
    GroupType,
    LocalClass,
    PlaceKind,
    Shape,
    h2_local,
    zero,
)
from .real_forms import RealFormTag, real_class

EXIT_BY_OUTCOME = {
    Outcome.RIGID: 0,
    Outcome.NOT_RIGID: 1,
    Outcome.UNDETERMINED: 2,
    Outcome.OUT_OF_SCOPE: 4,
}

VERDICT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["outcome", "reasons", "witness", "symbolic_witness", "missing"],
    "additionalProperties": False,
    "properties": {
        "outcome": {"enum": ["Rigid", "NotRigid", "Undetermined", "OutOfScope"]},
        "reasons": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["tag", "detail"],
                "additionalProperties": False,
                "properties": {"tag": {"type": "string"}, "detail": {"type": "string"}},
            },
        },
        "witness": {"type": ["string", "null"]},
        "symbolic_witness": {"type": ["string", "null"]},
        "missing": {"type": ["string", "null"]},
    },
}


# ---------------------------------------------------------------------------
# parsing

_TYPE_CODES = {
    "A": (Family.A, FormKind.INNER), "1A": (Family.A, FormKind.INNER), "2A": (Family.A, FormKind.OUTER),
    "B": (Family.B, FormKind.INNER), "C": (Family.C, FormKind.INNER),
    "D": (Family.D, FormKind.INNER), "1D": (Family.D, FormKind.INNER), "2D": (Family.D, FormKind.OUTER),
    "E6": (Family.E6, FormKind.INNER), "1E6": (Family.E6, FormKind.INNER), "2E6": (Family.E6, FormKind.OUTER),
    "E7": (Family.E7, FormKind.INNER), "E8": (Family.E8, FormKind.INNER),
    "F4": (Family.F4, FormKind.INNER), "G2": (Family.G2, FormKind.INNER),
}

_SECTIONS = ("group", "field", "aut", "places", "real")
_GROUP_KEYS = {"type", "rank"}
_FIELD_KEYS = {"degree", "complex_places", "locally_determined", "galois", "hbar_fiber"}


class _Parser:
    def __init__(self, text: str):
        self.errors: List[Tuple[int, int, str]] = []
        self.lines = text.splitlines()

    def err(self, line: int, col: int, msg: str):
        self.errors.append((line, col, msg))

    def parse(self) -> GroupDescriptor:
        sections: Dict[str, List[Tuple[int, str, str]]] = {s: [] for s in _SECTIONS}
        current: Optional[str] = None
        for no, raw in enumerate(self.lines, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if line.startswith("[") and line.endswith("]"):
                name = line[1:-1].strip()
                if name not in _SECTIONS:
                    self.err(no, 1, f"unknown section [{name}]")
                    current = None
                else:
                    current = name
                continue
            if current is None:
                self.err(no, 1, "entry outside any section")
                continue
            if "=" not in line:
                self.err(no, 1, "expected 'key = value'")
                continue
            key, value = (part.strip() for part in line.split("=", 1))
            if not key:
                self.err(no, 1, "empty key")
                continue
            sections[current].append((no, key, value))
        if not sections["group"]:
            self.err(1, 1, "missing [group] section")
            raise DescriptorParseError(self.errors)

        gtype = self._parse_group(sections["group"])
        fieldinfo = self._parse_field(sections["field"])
        if gtype is None or fieldinfo is None or self.errors:
            raise DescriptorParseError(self.errors or [(1, 1, "unusable descriptor")])

        finite, fin_omega = self._parse_places(sections["places"], gtype)
        real, real_omega, tags = self._parse_real(sections["real"], gtype)
        perms = self._parse_aut(sections["aut"], {p.id for p in finite + real})
        if self.errors:
            raise DescriptorParseError(self.errors)

        degree, complexes, loc_det, galois, hbar = fieldinfo
        fdesc = FieldDescriptor(
            degree=degree,
            real_places=tuple(real),
            complex_place_count=complexes,
            finite_places=tuple(finite),
            locally_determined=loc_det,
            galois_over_q=galois,
            hbar_fiber=hbar,
        )
        try:
            omega = OmegaVector(gtype, tuple(fin_omega), tuple(real_omega))
            desc = GroupDescriptor(
                group_type=gtype,
                field=fdesc,
                symmetry=PlaceSymmetry(tuple(perms)),
                omega=omega,
                real_forms=tuple(tags),
            )
        except RigidityError as e:
            self.err(1, 1, str(e))
            raise DescriptorParseError(self.errors)
        return desc

    def _parse_group(self, entries) -> Optional[GroupType]:
        code = rank = None
        code_line = 1
        for no, key, value in entries:
            if key == "type":
                code, code_line = value, no
            elif key == "rank":
                try:
                    rank = int(value)
                except ValueError:
                    self.err(no, 1, f"rank must be an integer, got {value!r}")
            else:
                self.err(no, 1, f"unknown key {key!r} in [group]")
        if code is None:
            self.err(1, 1, "missing type in [group]")
            return None
        if code not in _TYPE_CODES:
            self.err(code_line, 1, f"unknown type code {code!r}")
            return None
        family, kind = _TYPE_CODES[code]
        fixed = {Family.E6: 6, Family.E7: 7, Family.E8: 8, Family.F4: 4, Family.G2: 2}
        if rank is None:
            if family not in fixed:
                self.err(code_line, 1, f"type {code} needs an explicit rank")
                return None
            rank = fixed[family]
        if family == Family.D and rank == 4:
            self.err(code_line, 1, "triality type D4 is out of scope")
            return None
        try:
            return GroupType(family, rank, kind)
        except ValueError as e:
            self.err(code_line, 1, str(e))
            return None

    def _parse_field(self, entries):
        degree = None
        complexes = 0
        loc_det = None
        galois = None
        hbar = None
        for no, key, value in entries:
            if key not in _FIELD_KEYS:
                self.err(no, 1, f"unknown key {key!r} in [field]")
                continue
            if key in ("degree", "complex_places"):
                try:
                    n = int(value)
                except ValueError:
                    self.err(no, 1, f"{key} must be an integer")
                    continue
                if key == "degree":
                    degree = n
                else:
                    complexes = n
            elif key in ("locally_determined", "galois"):
                if value not in ("true", "false"):
                    self.err(no, 1, f"{key} must be true or false")
                    continue
                if key == "locally_determined":
                    loc_det = value == "true"
                else:
                    galois = value == "true"
            else:
                try:
                    hbar = HbarFiber(value)
                except ValueError:
                    self.err(no, 1, "hbar_fiber must be trivial, nontrivial, or unknown")
        if degree is None:
            self.err(1, 1, "missing degree in [field]")
            return None
        if galois is None:
            galois = degree == 1
        if loc_det is None:
            if degree <= 6:
                loc_det = True  # fields of degree up to six are locally determined
            else:
                self.err(1, 1, "degree above 6: declare locally_determined explicitly")
                return None
        if hbar is None:
            hbar = HbarFiber.TRIVIAL if galois else HbarFiber.UNKNOWN
        return degree, complexes, loc_det, galois, hbar

    def _parse_value(self, no: int, text: str, shape: Shape) -> Optional[LocalClass]:
        text = text.strip()
        if shape.kind == "klein":
            if not (text.startswith("(") and text.endswith(")")):
                self.err(no, 1, f"expected a bit pair (b1,b2), got {text!r}")
                return None
            parts = text[1:-1].split(",")
            if len(parts) != 2:
                self.err(no, 1, f"expected two components in {text!r}")
                return None
            try:
                return LocalClass(shape, (int(parts[0]), int(parts[1])))
            except ValueError:
                self.err(no, 1, f"bad bit pair {text!r}")
                return None
        if "/" in text:
            num, den = text.split("/", 1)
            try:
                a, m = int(num), int(den)
            except ValueError:
                self.err(no, 1, f"bad fraction {text!r}")
                return None
            if m <= 0:
                self.err(no, 1, f"bad fraction {text!r}")
                return None
            if shape.kind == "trivial":
                if a % m != 0:
                    self.err(no, 1, f"value {text} does not lie in the trivial group")
                    return None
                return zero(shape)
            if shape.modulus % m != 0:
                self.err(no, 1, f"denominator {m} does not divide the local order {shape.modulus}")
                return None
            return LocalClass(shape, a * (shape.modulus // m))
        try:
            v = int(text)
        except ValueError:
            self.err(no, 1, f"bad value {text!r}")
            return None
        if shape.kind == "trivial":
            if v != 0:
                self.err(no, 1, "only 0 lies in the trivial group")
                return None
            return zero(shape)
        return LocalClass(shape, v)

    def _parse_places(self, entries, gtype: GroupType):
        labels: List[PlaceLabel] = []
        omega = []
        seen = set()
        for no, label, value in entries:
            if label in seen:
                self.err(no, 1, f"place {label} declared twice")
                continue
            seen.add(label)
            opts = self._parse_opts(no, value, {"class", "kind", "omega"})
            if opts is None:
                continue
            kind_txt = opts.get("kind", "split")
            if kind_txt not in ("split", "nonsplit"):
                self.err(no, 1, "kind must be split or nonsplit")
                continue
            if kind_txt == "nonsplit" and not gtype.is_outer:
                self.err(no, 1, f"inner form {gtype.symbol()} has no nonsplit places")
                continue
            kind = PlaceKind.FINITE_INNER if kind_txt == "split" else PlaceKind.FINITE_OUTER
            lab = PlaceLabel(label, kind, opts.get("class"))
            shape = h2_local(gtype, kind)
            if "omega" in opts:
                cls = self._parse_value(no, opts["omega"], shape)
                if cls is None:
                    continue
            else:
                cls = zero(shape)
            labels.append(lab)
            omega.append((lab, cls))
        return labels, omega

    def _parse_real(self, entries, gtype: GroupType):
        labels: List[PlaceLabel] = []
        omega = []
        tags = []
        seen = set()
        for no, label, value in entries:
            if label in seen:
                self.err(no, 1, f"real place {label} declared twice")
                continue
            seen.add(label)
            opts = self._parse_opts(no, value, {"form", "omega", "kind"})
            if opts is None:
                continue
            if "form" not in opts:
                self.err(no, 1, f"real place {label} needs a form")
                continue
            explicit_kind = opts.get("kind")
            tag = self._parse_form(no, opts["form"], gtype, explicit_kind)
            if tag is None:
                continue
            outer = tag.signature()[2]
            if explicit_kind is not None:
                want_outer = explicit_kind == "nonsplit"
                if want_outer != outer:
                    self.err(no, 1, f"form {tag} contradicts kind={explicit_kind}")
                    continue
            kind = PlaceKind.REAL_OUTER if outer else PlaceKind.REAL_INNER
            lab = PlaceLabel(label, kind)
            shape = h2_local(gtype, kind)
            supplied = None
            if "omega" in opts:
                supplied = self._parse_value(no, opts["omega"], shape)
                if supplied is None:
                    continue
            try:
                cls = real_class(tag, gtype, supplied)
            except MissingRealClassError as e:
                self.err(no, 1, str(e))
                continue
            except RigidityError as e:
                self.err(no, 1, str(e))
                continue
            labels.append(lab)
            omega.append((lab, cls))
            tags.append((label, tag))
        return labels, omega, tags

    def _parse_form(self, no: int, text: str, gtype: GroupType,
                    explicit_kind: Optional[str]) -> Optional[RealFormTag]:
        text = text.strip()
        name, params = text, ()
        if "(" in text:
            if not text.endswith(")"):
                self.err(no, 1, f"unbalanced parentheses in form {text!r}")
                return None
            name, inner = text[:-1].split("(", 1)
            try:
                params = tuple(int(p) for p in inner.split(","))
            except ValueError:
                self.err(no, 1, f"bad form parameters in {text!r}")
                return None
        try:
            if name in ("SplitForm", "CompactForm", "AnisotropicOther"):
                outer = explicit_kind == "nonsplit"
                return RealFormTag(name, family=gtype.family, rank=gtype.rank, outer=outer)
            return RealFormTag(name, params)
        except ValueError as e:
            self.err(no, 1, str(e))
            return None

    def _parse_opts(self, no: int, value: str, allowed) -> Optional[Dict[str, str]]:
        opts: Dict[str, str] = {}
        for token in value.split():
            if "=" not in token:
                self.err(no, 1, f"expected key=value, got {token!r}")
                return None
            k, v = token.split("=", 1)
            if k not in allowed:
                self.err(no, 1, f"unknown option {k!r}")
                return None
            if k in opts:
                self.err(no, 1, f"option {k!r} given twice")
                return None
            opts[k] = v
        return opts

    def _parse_aut(self, entries, declared) -> List[PlacePerm]:
        perms = []
        for no, name, value in entries:
            cycles = []
            rest = value.strip()
            if not rest:
                self.err(no, 1, f"generator {name} is empty")
                continue
            ok = True
            while rest:
                if not rest.startswith("("):
                    self.err(no, 1, f"generator {name}: expected '(' in cycle notation")
                    ok = False
                    break
                close = rest.find(")")
                if close < 0:
                    self.err(no, 1, f"generator {name}: unbalanced cycle")
                    ok = False
                    break
                cyc = tuple(rest[1:close].split())
                if len(cyc) < 2:
                    self.err(no, 1, f"generator {name}: cycles need at least two labels")
                    ok = False
                    break
                for pid in cyc:
                    if pid not in declared:
                        self.err(no, 1, f"generator {name}: undeclared place {pid}")
                        ok = False
                cycles.append(cyc)
                rest = rest[close + 1:].strip()
            if not ok:
                continue
            try:
                perms.append(PlacePerm.from_cycles(cycles))
            except ValidationError as e:
                self.err(no, 1, f"generator {name}: {e}")
        return perms


def parse(text_or_path) -> GroupDescriptor:
    """Parse a descriptor from text or a file path."""
    if isinstance(text_or_path, Path) or (
        isinstance(text_or_path, str) and "\n" not in text_or_path and text_or_path.endswith(".grp")
    ):
        text = Path(text_or_path).read_text(encoding="utf-8")
    else:
        text = text_or_path
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# emitting

def _format_value(cls: LocalClass) -> str:
    return str(cls)


def _format_form(tag: RealFormTag) -> str:
    if tag.name in ("SplitForm", "CompactForm", "AnisotropicOther"):
        return tag.name
    if tag.params:
        return f"{tag.name}({','.join(str(p) for p in tag.params)})"
    return tag.name


_TYPE_OUT = {
    (Family.A, FormKind.INNER): "1A", (Family.A, FormKind.OUTER): "2A",
    (Family.B, FormKind.INNER): "B", (Family.C, FormKind.INNER): "C",
    (Family.D, FormKind.INNER): "1D", (Family.D, FormKind.OUTER): "2D",
    (Family.E6, FormKind.INNER): "1E6", (Family.E6, FormKind.OUTER): "2E6",
    (Family.E7, FormKind.INNER): "E7", (Family.E8, FormKind.INNER): "E8",
    (Family.F4, FormKind.INNER): "F4", (Family.G2, FormKind.INNER): "G2",
}


def emit_descriptor(g: GroupDescriptor) -> str:
    """Print a descriptor in the input grammar; parse(emit(g)) reproduces g."""
    out = ["[group]", f"type = {_TYPE_OUT[(g.group_type.family, g.group_type.form_kind)]}",
           f"rank = {g.group_type.rank}", "", "[field]", f"degree = {g.field.degree}",
           f"complex_places = {g.field.complex_place_count}",
           f"locally_determined = {'true' if g.field.locally_determined else 'false'}",
           f"galois = {'true' if g.field.galois_over_q else 'false'}",
           f"hbar_fiber = {g.field.hbar_fiber.value}"]
    if g.symmetry.generators:
        out += ["", "[aut]"]
        for i, perm in enumerate(g.symmetry.generators, start=1):
            out.append(f"g{i} = {perm}")
    if g.field.finite_places:
        out += ["", "[places]"]
        for lab, cls in g.omega.finite:
            parts = [lab.id, "="]
            if lab.adelic_class is not None:
                parts.append(f"class={lab.adelic_class}")
            if g.group_type.is_outer:
                parts.append(f"kind={'split' if lab.kind == PlaceKind.FINITE_INNER else 'nonsplit'}")
            parts.append(f"omega={_format_value(cls)}")
            out.append(" ".join(parts))
    if g.field.real_places:
        out += ["", "[real]"]
        for lab, cls in g.omega.real:
            tag = g.real_tag(lab.id)
            parts = [lab.id, "=", f"form={_format_form(tag)}"]
            if tag.name == "AnisotropicOther":
                parts.append(f"kind={'nonsplit' if lab.kind == PlaceKind.REAL_OUTER else 'split'}")
            parts.append(f"omega={_format_value(cls)}")
            out.append(" ".join(parts))
    return "\n".join(out) + "\n"


def verdict_to_json(v: Verdict) -> dict:
    return {
        "outcome": v.outcome.value,
        "reasons": [{"tag": t, "detail": d} for t, d in v.reasons],
        "witness": emit_descriptor(v.witness) if v.witness is not None else None,
        "symbolic_witness": v.symbolic_witness,
        "missing": v.missing,
    }


def render_verdict(v: Verdict) -> str:
    lines = [f"verdict: {v.outcome.value}"]
    for tag, detail in v.reasons:
        lines.append(f"  reason [{tag}] {detail}")
    if v.missing:
        lines.append(f"  missing: {v.missing}")
    if v.symbolic_witness:
        lines.append(f"  witness (symbolic): {v.symbolic_witness}")
    if v.witness is not None:
        lines.append("witness descriptor:")
        lines.extend("  " + l for l in emit_descriptor(v.witness).splitlines())
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# subcommands

def _classify_file(path: Path, as_json: bool, out) -> int:
    try:
        desc = parse(path)
        verdict = classify(desc)
    except DescriptorParseError as e:
        scope = any("out of scope" in msg for _, _, msg in e.errors)
        if scope:
            verdict = Verdict(Outcome.OUT_OF_SCOPE, [("scope", str(e))])
            print(json.dumps(verdict_to_json(verdict), indent=2) if as_json
                  else render_verdict(verdict), file=out)
            return 4
        for ln, col, msg in e.errors:
            print(f"{path}:{ln}:{col}: {msg}", file=sys.stderr)
        return 3
    except RigidityError as e:
        print(f"{path}: {e}", file=sys.stderr)
        return 3
    print(json.dumps(verdict_to_json(verdict), indent=2) if as_json
          else render_verdict(verdict), file=out)
    return EXIT_BY_OUTCOME[verdict.outcome]


def cmd_classify(args, out=None) -> int:
    out = out if out is not None else sys.stdout
    target = Path(args.file)
    if target.is_dir():
        code = 0
        for path in sorted(target.glob("*.grp"), key=lambda p: natural_key(p.name)):
            print(f"== {path.name}", file=out)
            code = max(code, _classify_file(path, args.json, out))
        return code
    return _classify_file(target, args.json, out)


def cmd_orbit(args, out=None) -> int:
    out = out if out is not None else sys.stdout
    try:
        desc = parse(Path(args.file))
        report = weak_uniformity(desc.omega, desc.field, desc.symmetry)
        glob, adel = plain_orbits(desc.omega, desc.field, desc.symmetry)
    except RigidityError as e:
        print(f"{args.file}: {e}", file=sys.stderr)
        return 3

    def show(name, vectors):
        print(f"{name} ({len(vectors)}):", file=out)
        for vec in vectors:
            print("  " + "  ".join(f"{lab.id}:{cls}" for lab, cls in vec), file=out)

    show("realized (two-sided, automorphisms)", report.lhs)
    show("possible (flips x adelic)", report.rhs)
    print(f"weak uniformity: {'holds' if report.holds else 'fails'}", file=out)
    show("automorphism orbit", glob)
    show("adelic orbit", adel)
    return 0


def cmd_realforms(args, out=None) -> int:
    out = out if out is not None else sys.stdout
    from .real_forms import trivial_image_forms

    code = args.type
    if code not in _TYPE_CODES:
        print(f"unknown type code {code!r}", file=sys.stderr)
        return 3
    family, kind = _TYPE_CODES[code]
    try:
        t = GroupType(family, args.rank, kind)
        forms = trivial_image_forms(t, bound=args.bound)
    except OutOfScopeError as e:
        print(str(e), file=sys.stderr)
        return 4
    except (ValueError, RigidityError) as e:
        print(str(e), file=sys.stderr)
        return 3
    for tag in forms:
        print(str(tag), file=out)
    return 0


def parse_catalog(text: str) -> List[PermGroup]:
    """Catalog grammar: one group per line, ``NAME DEGREE (cycles)(...)``, 1-based points."""
    groups = []
    errors = []
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split(None, 2)
        if len(parts) < 3:
            errors.append((no, 1, "expected NAME DEGREE CYCLES"))
            continue
        name, deg_txt, gen_txt = parts
        try:
            degree = int(deg_txt)
        except ValueError:
            errors.append((no, 1, f"bad degree {deg_txt!r}"))
            continue
        gens = []
        for chunk in gen_txt.split(";"):
            chunk = chunk.strip()
            cycles = []
            rest = chunk
            while rest:
                if not rest.startswith("(") or ")" not in rest:
                    errors.append((no, 1, f"bad cycle notation {chunk!r}"))
                    break
                close = rest.index(")")
                pts = tuple(int(x) - 1 for x in rest[1:close].split())
                cycles.append(pts)
                rest = rest[close + 1:].strip()
            else:
                gens.append(perm_from_cycles(degree, cycles))
        groups.append(PermGroup(degree, gens, name=name))
    if errors:
        raise DescriptorParseError(errors)
    return groups


def cmd_equiv(args, out=None) -> int:
    out = out if out is not None else sys.stdout
    try:
        groups = parse_catalog(Path(args.catalog).read_text(encoding="utf-8"))
    except (OSError, DescriptorParseError) as e:
        print(str(e), file=sys.stderr)
        return 3
    failures = 0
    for G in groups:
        try:
            ok, pair = verify_prop_almost_conjugate(G)
        except CapacityError as e:
            print(f"{G.name}: {e}", file=out)
            failures += 1
            continue
        print(f"{G.name} (order {G.order()}): {'ok' if ok else 'COUNTEREXAMPLE'}", file=out)
        if not ok:
            failures += 1
    return 0 if failures == 0 else 3


def cmd_selftest(args, out=None) -> int:
    from .selftest import run_selftest

    return run_selftest(out if out is not None else sys.stdout)


def main(argv: Optional[List[str]] = None) -> int:
    parser = argparse.ArgumentParser(prog="rigidity", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify a descriptor file (or every *.grp in a directory)")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("orbit", help="print the uniformity orbit sets of a descriptor")
    p.add_argument("file")
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("realforms", help="list the real forms compatible with rigidity")
    p.add_argument("type")
    p.add_argument("rank", type=int)
    p.add_argument("--bound", type=int, default=100)
    p.set_defaults(func=cmd_realforms)

    p = sub.add_parser("equiv", help="run the almost-conjugacy suite over a catalog file")
    p.add_argument("catalog")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("selftest", help="run the bundled fixture battery")
    p.set_defaults(func=cmd_selftest)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
