"""Textual proof scripts: parsing and checking.

A script file holds one or more theorem blocks::

    theorem NAME mode=NOM_E
      hyp H1: p |- q
      goal: |- p -> q
      1: p |- q by hyp H1
      2: |- p -> q by imp_i from 1
    qed

Each numbered line is justified either by a primitive rule, by a catalog
entry (``by derived ID``), or by restating a declared hypothesis
(``by hyp NAME``).  Premise references (``from N1 N2``) must point at
earlier lines.  Quantifier rules carry their instantiation inline as
``t=TERM`` or ``x=VAR``.  ``#`` starts a comment anywhere on a line.

Checking never trusts the justification text: every line is rebuilt as a
kernel derivation and re-validated with ``check_derivation``, including
the fully expanded output of catalog entries.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from .kernel import MODES, RULES, Derivation, check_derivation, check_inference
from .syntax import (
    ParseError, Sequent, Signature, Var, expand, parse_sequent, parse_term,
)


class ScriptError(Exception):
    """Raised when a script file cannot be parsed."""

    def __init__(self, message: str, lineno: int = 0):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno else message)


@dataclass(frozen=True)
class ScriptLine:
    number: int
    sequent: Sequent
    rule: str                       # RuleId, "derived", or "hyp"
    catalog_id: Optional[str] = None
    args: tuple = ()                # (("t", Term) | ("x", Var)) pairs
    refs: tuple = ()                # earlier line numbers
    hyp_name: Optional[str] = None
    source_line: int = 0


@dataclass(frozen=True)
class ProofScript:
    name: str
    mode: str
    goal: Sequent
    hypotheses: tuple = ()          # (name, Sequent) pairs
    lines: tuple = ()


@dataclass
class LineStatus:
    number: int
    ok: bool
    message: str = "ok"


@dataclass
class ScriptReport:
    name: str
    mode: str
    accepted: bool
    lines: list = field(default_factory=list)
    message: str = ""
    derivation: Optional[Derivation] = None

    def __str__(self):
        verdict = "accepted" if self.accepted else "rejected"
        out = [f"{self.name} [{self.mode}]: {verdict}"]
        for ls in self.lines:
            if not ls.ok:
                out.append(f"  line {ls.number}: {ls.message}")
        if self.message and not self.accepted:
            out.append(f"  {self.message}")
        return "\n".join(out)


_THEOREM_RE = re.compile(r"theorem\s+(\S+)\s+mode=(\S+)\s*$")
_HYP_RE = re.compile(r"hyp\s+([A-Za-z_][A-Za-z0-9_']*)\s*:\s*(.*)$")
_STEP_RE = re.compile(r"(\d+)\s*:\s*(.*)$")
# lookahead keeps runs like "... by by RULE" splittable at the last 'by'
_BY_RE = re.compile(r"\s\bby\b(?=\s)")
_ARG_RE = re.compile(r"([tx])=(\S+)$")


def _strip(raw: str) -> str:
    cut = raw.find("#")
    if cut >= 0:
        raw = raw[:cut]
    return raw.strip()


def _parse_justification(text, sig, lineno):
    """Split the part after ``by`` into (rule, catalog_id, args, refs, hyp)."""
    tokens = text.split()
    if not tokens:
        raise ScriptError("missing justification after 'by'", lineno)
    if tokens[0] == "hyp":
        if len(tokens) != 2:
            raise ScriptError("'by hyp' takes exactly one hypothesis name", lineno)
        return "hyp", None, (), (), tokens[1]
    catalog_id = None
    if tokens[0] == "derived":
        if len(tokens) < 2:
            raise ScriptError("'derived' needs a catalog id", lineno)
        rule, catalog_id = "derived", tokens[1]
        tokens = tokens[2:]
    else:
        rule = tokens[0]
        if rule not in RULES:
            raise ScriptError(f"unknown rule '{rule}'", lineno)
        tokens = tokens[1:]
    args = []
    while tokens:
        m = _ARG_RE.match(tokens[0])
        if not m:
            break
        key, src = m.group(1), m.group(2)
        try:
            term = parse_term(src, sig)
        except ParseError as exc:
            raise ScriptError(f"bad {key}= argument: {exc}", lineno)
        if key == "x" and not isinstance(term, Var):
            raise ScriptError("x= must name a variable", lineno)
        args.append((key, term))
        tokens = tokens[1:]
    refs = ()
    if tokens:
        if tokens[0] != "from":
            raise ScriptError(f"unexpected token '{tokens[0]}'", lineno)
        try:
            refs = tuple(int(t) for t in tokens[1:])
        except ValueError:
            raise ScriptError("'from' takes line numbers", lineno)
        if not refs:
            raise ScriptError("'from' needs at least one line number", lineno)
    return rule, catalog_id, tuple(args), refs, None


def parse_script_file(text: str, signature: Optional[Signature] = None):
    """Parse a file into a tuple of ProofScripts.

    All theorems share one signature, so relation arities and letter/atom
    distinctions stay consistent across the file.
    """
    sig = signature if signature is not None else Signature()
    scripts = []
    name = mode = goal = None
    hyps: list = []
    steps: list = []
    in_theorem = False

    def sequent(src, lineno):
        try:
            return parse_sequent(src, sig)
        except ParseError as exc:
            raise ScriptError(str(exc), lineno)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue
        if not in_theorem:
            m = _THEOREM_RE.match(line)
            if not m:
                raise ScriptError("expected 'theorem NAME mode=...'", lineno)
            name, mode = m.group(1), m.group(2)
            if mode not in MODES:
                raise ScriptError(f"unknown mode '{mode}'", lineno)
            goal, hyps, steps = None, [], []
            in_theorem = True
            continue
        if line == "qed":
            if goal is None:
                raise ScriptError("theorem ended without a goal", lineno)
            scripts.append(ProofScript(name, mode, goal, tuple(hyps), tuple(steps)))
            in_theorem = False
            continue
        m = _HYP_RE.match(line)
        if m and line.startswith("hyp"):
            if goal is not None:
                raise ScriptError("hypotheses must precede the goal", lineno)
            hname = m.group(1)
            if any(h[0] == hname for h in hyps):
                raise ScriptError(f"duplicate hypothesis '{hname}'", lineno)
            hyps.append((hname, sequent(m.group(2), lineno)))
            continue
        if line.startswith("goal"):
            rest = line[4:].lstrip()
            if not rest.startswith(":"):
                raise ScriptError("expected 'goal: SEQUENT'", lineno)
            if goal is not None:
                raise ScriptError("duplicate goal", lineno)
            goal = sequent(rest[1:], lineno)
            continue
        m = _STEP_RE.match(line)
        if not m:
            raise ScriptError("expected a numbered proof line", lineno)
        if goal is None:
            raise ScriptError("proof lines must follow the goal", lineno)
        number = int(m.group(1))
        if steps and number <= steps[-1].number:
            raise ScriptError("line numbers must increase", lineno)
        body = m.group(2)
        splits = list(_BY_RE.finditer(" " + body))
        if not splits:
            raise ScriptError("expected 'SEQUENT by RULE ...'", lineno)
        pivot = splits[-1]
        seq_src = (" " + body)[: pivot.start()]
        rule, cid, args, refs, hyp_name = _parse_justification(
            (" " + body)[pivot.end():], sig, lineno)
        steps.append(ScriptLine(number, sequent(seq_src, lineno), rule, cid,
                                args, refs, hyp_name, lineno))
    if in_theorem:
        raise ScriptError("missing 'qed' at end of file", len(text.splitlines()))
    return tuple(scripts)


def _eq(a: Sequent, b: Sequent) -> bool:
    if len(a.antecedent) != len(b.antecedent):
        return False
    pairs = zip(a.antecedent + (a.succedent,), b.antecedent + (b.succedent,))
    return all(expand(x) == expand(y) for x, y in pairs)


def check_script(script: ProofScript) -> ScriptReport:
    """Re-derive every line through the kernel and report per-line status."""
    report = ScriptReport(script.name, script.mode, accepted=False)
    hyp_sequents = tuple(s for _, s in script.hypotheses)
    by_name = dict(script.hypotheses)
    derivations = {}
    all_ok = True
    for ln in script.lines:
        status = LineStatus(ln.number, ok=True)
        report.lines.append(status)
        premises = []
        for r in ln.refs:
            if r not in derivations:
                status.ok = False
                status.message = f"reference to line {r}, which is not proven yet"
                break
            premises.append(derivations[r])
        if not status.ok:
            all_ok = False
            continue

        if ln.rule == "hyp":
            declared = by_name.get(ln.hyp_name)
            if declared is None:
                status.ok = False
                status.message = f"no hypothesis named '{ln.hyp_name}'"
            elif not _eq(ln.sequent, declared):
                status.ok = False
                status.message = f"sequent differs from hypothesis {ln.hyp_name}"
            else:
                derivations[ln.number] = Derivation(ln.sequent, "hyp")
        elif ln.rule == "derived":
            from .tactics import TacticError, match_and_build
            try:
                d = match_and_build(ln.catalog_id, premises, ln.sequent,
                                    script.mode, dict(ln.args))
            except TacticError as exc:
                status.ok = False
                status.message = str(exc)
            else:
                fail = check_derivation(d, script.mode, hyp_sequents)
                if fail is not None:
                    status.ok = False
                    status.message = str(fail)
                elif not _eq(d.conclusion, ln.sequent):
                    status.ok = False
                    status.message = "catalog entry proves a different sequent"
                else:
                    derivations[ln.number] = d
        else:
            inst = dict(ln.args)
            instantiation = inst.get("t") if ln.rule == "all_e" else inst.get("x")
            violation = check_inference(
                ln.rule, [p.conclusion for p in premises], ln.sequent,
                script.mode, instantiation)
            if violation is not None:
                status.ok = False
                status.message = str(violation)
            else:
                derivations[ln.number] = Derivation(
                    ln.sequent, ln.rule, tuple(premises), instantiation)
        if not status.ok:
            all_ok = False
            # keep downstream lines checkable; acceptance is already lost
            derivations.setdefault(ln.number, Derivation(ln.sequent, "hyp"))

    if not script.lines:
        report.message = "no proof lines"
        return report
    last = script.lines[-1]
    if all_ok:
        if _eq(last.sequent, script.goal):
            final = derivations[last.number]
            fail = check_derivation(final, script.mode, hyp_sequents)
            if fail is None:
                report.accepted = True
                report.derivation = final
            else:
                report.message = str(fail)
        else:
            report.message = "final line does not match the goal"
    return report


def check_file(text: str, signature: Optional[Signature] = None):
    """Parse and check every theorem in a file; returns the reports."""
    return [check_script(s) for s in parse_script_file(text, signature)]
