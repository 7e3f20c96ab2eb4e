"""The trusted proof-checking core.

Everything that decides whether an inference is legal lives in
``check_inference``; ``check_derivation`` just folds it over a tree.
Tactics and scripts elsewhere in the package only ever *construct*
derivations — acceptance always comes back through this module.

Schema matching is positional: premise order is part of each rule.
Formulas are compared by alpha-equality after expanding the derived
connectives, so a conclusion written with \\/ or >< matches the rule
schemas of its expansion.
"""

from __future__ import annotations

from dataclasses import dataclass

from .syntax import (
    And, Forall, Imp, Neg, Sequent, Var,
    expand, is_nonduplicating, render_sequent, substitute, term_free_vars,
)

__all__ = [
    "MODES", "RULES", "PREMISE_COUNTS", "Derivation",
    "RuleViolation", "CheckFailure",
    "check_inference", "check_derivation", "weaken", "hyp", "node",
]

MODES = ("NOM", "NOM_E", "NOM_Q", "NOM_q")

PREMISE_COUNTS = {
    "assume": 0, "cut": 2, "paste": 2, "cexch": 3,
    "and_i": 2, "and_e1": 1, "and_e2": 1,
    "imp_i": 1, "imp_e": 1, "lem": 2, "explode": 1,
    "exch": 1, "all_i": 1, "all_e": 1, "qexch": 1,
}

RULES = tuple(PREMISE_COUNTS)

# which additional rules each mode switches on (the first eleven are universal)
_MODE_RULES = {
    "NOM": frozenset(),
    "NOM_E": frozenset({"exch"}),
    "NOM_Q": frozenset({"all_i", "all_e"}),
    "NOM_q": frozenset({"all_i", "all_e", "qexch"}),
}


@dataclass(frozen=True)
class Derivation:
    """A rule-application tree; the kernel's only certificate.

    ``instantiation`` carries the explicit datum of the quantifier
    rules: the bound variable for all_i, the substituted term for
    all_e.  The pseudo-rule "hyp" marks a leaf standing on a declared
    hypothesis of an open derivation.
    """

    conclusion: Sequent
    rule: str
    premises: tuple = ()
    instantiation: object = None


def hyp(s: Sequent) -> Derivation:
    return Derivation(s, "hyp")


def node(rule: str, conclusion: Sequent, *premises, instantiation=None) -> Derivation:
    return Derivation(conclusion, rule, tuple(premises), instantiation)


@dataclass(frozen=True)
class RuleViolation:
    rule: str
    message: str

    def __str__(self):
        return f"{self.rule}: {self.message}"


@dataclass(frozen=True)
class CheckFailure:
    """A RuleViolation located at a premise path inside a derivation."""

    path: tuple
    violation: RuleViolation
    conclusion: Sequent

    def __str__(self):
        where = ".".join(str(i) for i in self.path) if self.path else "root"
        return f"at {where} [{render_sequent(self.conclusion)}]: {self.violation}"


def _feq(a, b) -> bool:
    return expand(a) == expand(b)


def _ctx_eq(xs, ys) -> bool:
    return len(xs) == len(ys) and all(_feq(a, b) for a, b in zip(xs, ys))


def check_inference(rule, premises, conclusion, mode, instantiation=None):
    """None when (premises / conclusion) instantiates the rule in the
    given mode, otherwise a RuleViolation naming what failed."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    bad = lambda msg: RuleViolation(rule, msg)
    if rule not in PREMISE_COUNTS:
        return bad("unknown rule")
    if rule not in ("assume", "cut", "paste", "cexch", "and_i", "and_e1",
                    "and_e2", "imp_i", "imp_e", "lem", "explode") \
            and rule not in _MODE_RULES[mode]:
        return bad(f"not available in mode {mode}")
    if len(premises) != PREMISE_COUNTS[rule]:
        return bad(f"needs {PREMISE_COUNTS[rule]} premises, got {len(premises)}")
    if mode == "NOM_q":
        for s in (*premises, conclusion):
            for f in (*s.antecedent, s.succedent):
                if not is_nonduplicating(f):
                    return bad("formula duplicates a variable inside an atom "
                               f"(NOM_q): {f!r}")

    ante, succ = conclusion.antecedent, conclusion.succedent

    if rule == "assume":
        if not ante:
            return bad("conclusion needs at least one antecedent")
        if not _feq(ante[-1], succ):
            return bad("last antecedent must equal the succedent")
        return None

    if rule == "cut":
        p1, p2 = premises
        if not _ctx_eq(p1.antecedent, ante):
            return bad("first premise must share the conclusion's antecedent")
        if not (_ctx_eq(p2.antecedent[:-1], ante) and p2.antecedent
                and _feq(p2.antecedent[-1], p1.succedent)):
            return bad("second premise must extend the antecedent by the cut formula")
        if not _feq(p2.succedent, succ):
            return bad("second premise must conclude the succedent")
        return None

    if rule == "paste":
        p1, p2 = premises
        if not ante:
            return bad("conclusion needs at least one antecedent")
        gamma = ante[:-1]
        if not (_ctx_eq(p1.antecedent, gamma) and _ctx_eq(p2.antecedent, gamma)):
            return bad("premises must share the conclusion's antecedent minus its last formula")
        if not _feq(ante[-1], p1.succedent):
            return bad("pasted formula must be the first premise's succedent")
        if not _feq(succ, p2.succedent):
            return bad("succedent must come from the second premise")
        return None

    if rule == "cexch":
        p1, p2, p3 = premises
        if len(ante) < 2:
            return bad("conclusion needs at least two antecedents")
        gamma, psi, phi = ante[:-2], ante[-2], ante[-1]
        straight = (*gamma, phi, psi)
        if not (_ctx_eq(p1.antecedent, straight) and _feq(p1.succedent, phi)):
            return bad("first premise must be Γ, φ, ψ ⊢ φ")
        if not (_ctx_eq(p2.antecedent, straight) and _feq(p2.succedent, succ)):
            return bad("second premise must be Γ, φ, ψ ⊢ χ")
        if not (_ctx_eq(p3.antecedent, ante) and _feq(p3.succedent, psi)):
            return bad("third premise must be Γ, ψ, φ ⊢ ψ")
        return None

    if rule == "and_i":
        p1, p2 = premises
        target = expand(succ)
        if not isinstance(target, And):
            return bad("succedent must be a conjunction")
        if not (_ctx_eq(p1.antecedent, ante) and _ctx_eq(p2.antecedent, ante)):
            return bad("premises must share the conclusion's antecedent")
        if not (expand(p1.succedent) == target.left
                and expand(p2.succedent) == target.right):
            return bad("premises must conclude the two conjuncts in order")
        return None

    if rule in ("and_e1", "and_e2"):
        (p1,) = premises
        source = expand(p1.succedent)
        if not isinstance(source, And):
            return bad("premise succedent must be a conjunction")
        if not _ctx_eq(p1.antecedent, ante):
            return bad("premise must share the conclusion's antecedent")
        part = source.left if rule == "and_e1" else source.right
        if expand(succ) != part:
            return bad("succedent must be the conjunct the rule projects")
        return None

    if rule == "imp_i":
        (p1,) = premises
        target = expand(succ)
        if not isinstance(target, Imp):
            return bad("succedent must be an implication")
        if not (p1.antecedent and _ctx_eq(p1.antecedent[:-1], ante)):
            return bad("premise antecedent must be the conclusion's plus one formula")
        if expand(p1.antecedent[-1]) != target.left:
            return bad("discharged formula must be the implication's antecedent")
        if expand(p1.succedent) != target.right:
            return bad("premise succedent must be the implication's consequent")
        return None

    if rule == "imp_e":
        (p1,) = premises
        source = expand(p1.succedent)
        if not isinstance(source, Imp):
            return bad("premise succedent must be an implication")
        if not ante:
            return bad("conclusion needs at least one antecedent")
        if not _ctx_eq(p1.antecedent, ante[:-1]):
            return bad("conclusion antecedent must extend the premise's by one formula")
        if expand(ante[-1]) != source.left:
            return bad("added antecedent must be the implication's antecedent")
        if expand(succ) != source.right:
            return bad("succedent must be the implication's consequent")
        return None

    if rule == "lem":
        p1, p2 = premises
        if not (p1.antecedent and p2.antecedent):
            return bad("premises must extend the antecedent by φ and ¬φ")
        if not (_ctx_eq(p1.antecedent[:-1], ante) and _ctx_eq(p2.antecedent[:-1], ante)):
            return bad("premises must extend the conclusion's antecedent")
        if expand(p2.antecedent[-1]) != Neg(expand(p1.antecedent[-1])):
            return bad("second premise must assume the negation of the first's assumption")
        if not (_feq(p1.succedent, succ) and _feq(p2.succedent, succ)):
            return bad("premises must conclude the succedent")
        return None

    if rule == "explode":
        (p1,) = premises
        if not ante:
            return bad("conclusion needs at least one antecedent")
        if not _ctx_eq(p1.antecedent, ante[:-1]):
            return bad("premise antecedent must be the conclusion's minus its last formula")
        if expand(p1.succedent) != Neg(expand(ante[-1])):
            return bad("premise must conclude the negation of the added antecedent")
        return None

    if rule == "exch":
        (p1,) = premises
        if not _feq(p1.succedent, succ):
            return bad("succedent must be unchanged")
        src = p1.antecedent
        if len(src) != len(ante) or len(src) < 2:
            return bad("antecedents must be equal-length sequences of length >= 2")
        for i in range(len(src) - 1):
            swapped = (*src[:i], src[i + 1], src[i], *src[i + 2:])
            if _ctx_eq(swapped, ante):
                return None
        return bad("conclusion is not an adjacent transposition of the premise")

    if rule == "all_i":
        (p1,) = premises
        target = expand(succ)
        if not isinstance(target, Forall):
            return bad("succedent must be universally quantified")
        if instantiation is None:
            return bad("needs the quantified variable recorded (x=...)")
        x = instantiation if isinstance(instantiation, Var) \
            else Var(str(instantiation), target.var.sort)
        if not _ctx_eq(p1.antecedent, ante):
            return bad("premise must share the conclusion's antecedent")
        if Forall(x, expand(p1.succedent)) != target:
            return bad("succedent must quantify the premise's succedent over x")
        for f in ante:
            if x.name in f.free:
                return bad(f"{x.name} occurs free in the antecedent")
        return None

    if rule == "all_e":
        (p1,) = premises
        source = expand(p1.succedent)
        if not isinstance(source, Forall):
            return bad("premise succedent must be universally quantified")
        if instantiation is None:
            return bad("needs the substituted term recorded (t=...)")
        t = instantiation
        if not _ctx_eq(p1.antecedent, ante):
            return bad("premise must share the conclusion's antecedent")
        if mode == "NOM_q" and term_free_vars(t) & source.body.free:
            return bad("substituted term shares a free variable with the matrix (NOM_q)")
        if expand(succ) != expand(substitute(source.body, source.var, t)):
            return bad("succedent must be the matrix with the term substituted")
        return None

    if rule == "qexch":
        (p1,) = premises
        if len(ante) < 2 or len(p1.antecedent) != len(ante):
            return bad("needs equal antecedents of length >= 2")
        if not _feq(p1.succedent, succ):
            return bad("succedent must be unchanged")
        if not _ctx_eq(p1.antecedent[:-2], ante[:-2]):
            return bad("only the last two antecedents may move")
        if not (_feq(p1.antecedent[-2], ante[-1]) and _feq(p1.antecedent[-1], ante[-2])):
            return bad("conclusion must swap the premise's last two antecedents")
        if ante[-1].free & ante[-2].free:
            return bad("swapped formulas share a free variable")
        return None

    raise AssertionError(rule)


def _hyp_match(leaf: Sequent, h: Sequent) -> bool:
    # A leaf may also carry extra leading context: that is exactly the
    # sequent ``weaken`` produces from the hypothesis, and weakening is
    # admissible in every mode.
    extra = len(leaf.antecedent) - len(h.antecedent)
    if extra < 0 or not _feq(leaf.succedent, h.succedent):
        return False
    return _ctx_eq(leaf.antecedent[extra:], h.antecedent)


def check_derivation(d: Derivation, mode, hypotheses=()):
    """Depth-first re-check of a whole tree; None, or the first
    CheckFailure in preorder.  Leaves with rule "hyp" are accepted when
    alpha-equal (modulo expansion) to a declared hypothesis, possibly
    with extra leading context (a weakened hypothesis).

    Tactic-built derivations share subtrees, so each distinct node is
    checked once; a node's validity depends only on its own sequents.
    """
    seen = set()
    stack = [((), d)]
    while stack:
        path, n = stack.pop()
        if id(n) in seen:
            continue
        seen.add(id(n))
        if n.rule == "hyp":
            if n.premises:
                return CheckFailure(path, RuleViolation("hyp", "hypotheses take no premises"),
                                    n.conclusion)
            if not any(_hyp_match(n.conclusion, h) for h in hypotheses):
                return CheckFailure(
                    path, RuleViolation("hyp", "sequent is not a declared hypothesis"),
                    n.conclusion)
            continue
        v = check_inference(n.rule, [p.conclusion for p in n.premises],
                            n.conclusion, mode, n.instantiation)
        if v is not None:
            return CheckFailure(path, v, n.conclusion)
        stack.extend(reversed([(path + (i,), p) for i, p in enumerate(n.premises)]))
    return None


def _instantiation_vars(d: Derivation):
    out, seen, stack = set(), set(), [d]
    while stack:
        n = stack.pop()
        if id(n) in seen:
            continue
        seen.add(id(n))
        if n.rule == "all_i" and n.instantiation is not None:
            x = n.instantiation
            out.add(x.name if isinstance(x, Var) else str(x))
        stack.extend(n.premises)
    return out


def weaken(d: Derivation, delta) -> Derivation:
    """Prefix a formula sequence onto every sequent of a derivation.

    The inductive weakening transform: the result has the same tree
    shape and still checks.  Refuses a prefix whose free variables
    collide with an all_i eigenvariable inside the tree, since that
    would break the rule's side condition.
    """
    delta = tuple(delta)
    if not delta:
        return d
    clash = _instantiation_vars(d)
    free = set()
    for f in delta:
        free |= f.free
    if clash & free:
        raise ValueError(f"prefix would capture quantified variable(s) {clash & free}")
    return _weaken(d, delta, {})


def _weaken(d, delta, memo):
    stack = [d]
    while stack:
        n = stack[-1]
        if id(n) in memo:
            stack.pop()
            continue
        todo = [p for p in n.premises if id(p) not in memo]
        if todo:
            stack.extend(todo)
            continue
        stack.pop()
        c = Sequent(delta + n.conclusion.antecedent, n.conclusion.succedent)
        memo[id(n)] = Derivation(c, n.rule,
                                 tuple(memo[id(p)] for p in n.premises),
                                 n.instantiation)
    return memo[id(d)]
