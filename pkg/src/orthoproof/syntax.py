r"""Formulas, terms, and sequents for orthomodular natural deduction.

Core connectives are ~ (orthocomplement), /\ (meet), -> (Sasaki arrow)
and the quantifier forall; \/ , >< (compatibility) and exists are kept
as derived nodes until `expand` rewrites them away.  All syntax values
are immutable, and formulas compare equal up to renaming of bound
variables.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

DEFAULT_SORT = "_"

__all__ = [
    "DEFAULT_SORT",
    "Var", "Const", "App",
    "Formula", "Letter", "Atom", "Neg", "And", "Imp", "Or", "Compat",
    "Forall", "Exists",
    "Sequent", "Signature", "ParseError", "SignatureError",
    "parse_formula", "parse_sequent", "parse_term",
    "expand", "substitute", "free_variables", "is_nonduplicating",
    "render", "render_term", "render_sequent", "letters", "alpha_key",
]


class ParseError(Exception):
    """Raised on malformed input; carries a character offset."""

    def __init__(self, message, pos=None):
        if pos is not None:
            message = f"{message} (at position {pos})"
        super().__init__(message)
        self.pos = pos


class SignatureError(Exception):
    """Raised on undeclared or inconsistently used symbols."""


# ---------------------------------------------------------------------------
# terms


@dataclass(frozen=True)
class Var:
    name: str
    sort: str = DEFAULT_SORT


@dataclass(frozen=True)
class Const:
    name: str
    sort: str = DEFAULT_SORT


@dataclass(frozen=True)
class App:
    name: str
    args: tuple
    sort: str = DEFAULT_SORT


def term_free_vars(t) -> frozenset:
    if isinstance(t, Var):
        return frozenset((t.name,))
    if isinstance(t, Const):
        return frozenset()
    out = frozenset()
    for a in t.args:
        out |= term_free_vars(a)
    return out


def substitute_term(t, name: str, r):
    if isinstance(t, Var):
        return r if t.name == name else t
    if isinstance(t, Const):
        return t
    return App(t.name, tuple(substitute_term(a, name, r) for a in t.args), t.sort)


def render_term(t) -> str:
    """Print a term; no internal whitespace, so terms survive any tokenizer."""
    if isinstance(t, (Var, Const)):
        return t.name
    return t.name + "(" + ",".join(render_term(a) for a in t.args) + ")"


def _term_key(t, env, depth):
    if isinstance(t, Var):
        if env and t.name in env:
            return ("b", depth - env[t.name], t.sort)
        return ("v", t.name, t.sort)
    if isinstance(t, Const):
        return ("c", t.name, t.sort)
    return ("f", t.name, t.sort) + tuple(_term_key(a, env, depth) for a in t.args)


# ---------------------------------------------------------------------------
# formulas


class Formula:
    """Base class.  Equality and hashing are alpha-equivalence."""

    def __eq__(self, other):
        return self is other or (
            isinstance(other, Formula) and alpha_key(self) == alpha_key(other))

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash(alpha_key(self))


@dataclass(frozen=True, eq=False)
class Letter(Formula):
    name: str

    def __post_init__(self):
        object.__setattr__(self, "free", frozenset())


@dataclass(frozen=True, eq=False)
class Atom(Formula):
    name: str
    args: tuple

    def __post_init__(self):
        fv = frozenset()
        for t in self.args:
            fv |= term_free_vars(t)
        object.__setattr__(self, "free", fv)


@dataclass(frozen=True, eq=False)
class Neg(Formula):
    sub: Formula

    def __post_init__(self):
        object.__setattr__(self, "free", self.sub.free)


class _Binary(Formula):
    def __post_init__(self):
        object.__setattr__(self, "free", self.left.free | self.right.free)


@dataclass(frozen=True, eq=False)
class And(_Binary):
    left: Formula
    right: Formula


@dataclass(frozen=True, eq=False)
class Imp(_Binary):
    left: Formula
    right: Formula


@dataclass(frozen=True, eq=False)
class Or(_Binary):
    left: Formula
    right: Formula


@dataclass(frozen=True, eq=False)
class Compat(_Binary):
    left: Formula
    right: Formula


class _Quant(Formula):
    def __post_init__(self):
        object.__setattr__(self, "free", self.body.free - {self.var.name})


@dataclass(frozen=True, eq=False)
class Forall(_Quant):
    var: Var
    body: Formula


@dataclass(frozen=True, eq=False)
class Exists(_Quant):
    var: Var
    body: Formula


_QTAG = {Forall: "Q*", Exists: "Q?"}
_BTAG = {And: "&", Imp: ">", Or: "|", Compat: "#"}


def alpha_key(f: Formula):
    """Canonical key: equal keys iff formulas differ only in bound names."""
    k = getattr(f, "_akey", None)
    if k is None:
        k = _fkey(f, None, 0)
        object.__setattr__(f, "_akey", k)
    return k


def _fkey(f, env, depth):
    if env and not (f.free & env.keys()):
        env = None
    if env is None and depth:
        # no captured references: the key is position-independent, reuse cache
        return alpha_key(f)
    if isinstance(f, Letter):
        return ("L", f.name)
    if isinstance(f, Atom):
        return ("A", f.name) + tuple(_term_key(t, env, depth) for t in f.args)
    if isinstance(f, Neg):
        return ("~", _fkey(f.sub, env, depth))
    if isinstance(f, _Binary):
        return (_BTAG[type(f)], _fkey(f.left, env, depth), _fkey(f.right, env, depth))
    env = dict(env) if env else {}
    env[f.var.name] = depth
    return (_QTAG[type(f)], f.var.sort, _fkey(f.body, env, depth + 1))


def free_variables(f: Formula) -> frozenset:
    """Names of the variables occurring free in ``f``."""
    return f.free


def letters(f: Formula) -> frozenset:
    """Names of the propositional letters occurring in ``f``."""
    if isinstance(f, Letter):
        return frozenset((f.name,))
    if isinstance(f, Atom):
        return frozenset()
    if isinstance(f, Neg):
        return letters(f.sub)
    if isinstance(f, _Binary):
        return letters(f.left) | letters(f.right)
    return letters(f.body)


def expand(f: Formula) -> Formula:
    """Rewrite derived nodes: a\\/b, a><b and exists disappear.

    The result uses only Letter/Atom, Neg, And, Imp and Forall nodes and
    is a fixed point of ``expand``.
    """
    e = getattr(f, "_ex", None)
    if e is None:
        e = _expand(f)
        object.__setattr__(f, "_ex", e)
        if e is not f:
            object.__setattr__(e, "_ex", e)
    return e


def _expand(f):
    if isinstance(f, (Letter, Atom)):
        return f
    if isinstance(f, Neg):
        s = expand(f.sub)
        return f if s is f.sub else Neg(s)
    if isinstance(f, Or):
        a, b = expand(f.left), expand(f.right)
        return Neg(And(Neg(a), Neg(b)))
    if isinstance(f, Compat):
        a, b = expand(f.left), expand(f.right)
        return And(Imp(a, Imp(b, a)), Imp(b, Imp(a, b)))
    if isinstance(f, Exists):
        return Neg(Forall(f.var, Neg(expand(f.body))))
    if isinstance(f, _Binary):
        a, b = expand(f.left), expand(f.right)
        return f if (a is f.left and b is f.right) else type(f)(a, b)
    b = expand(f.body)
    return f if b is f.body else Forall(f.var, b)


def _variant(name, avoid):
    while name in avoid:
        name += "'"
    return name


def substitute(f: Formula, x, t) -> Formula:
    """Capture-avoiding substitution of term ``t`` for variable ``x``.

    ``x`` may be a name or a Var; bound variables are renamed (with
    primes) whenever they would capture a variable of ``t``.
    """
    if isinstance(x, Var):
        if x.sort != t.sort:
            raise SignatureError(
                f"cannot substitute {t.sort}-sorted term for {x.sort}-sorted {x.name}")
        x = x.name
    return _subst(f, x, t)


def _subst(f, x, t):
    if x not in f.free:
        return f
    if isinstance(f, Atom):
        return Atom(f.name, tuple(substitute_term(a, x, t) for a in f.args))
    if isinstance(f, Neg):
        return Neg(_subst(f.sub, x, t))
    if isinstance(f, _Binary):
        return type(f)(_subst(f.left, x, t), _subst(f.right, x, t))
    v, body = f.var, f.body
    tfree = term_free_vars(t)
    if v.name in tfree:
        fresh = _variant(v.name, body.free | tfree | {x})
        body = _subst(body, v.name, Var(fresh, v.sort))
        v = Var(fresh, v.sort)
    return type(f)(v, _subst(body, x, t))


def is_nonduplicating(f: Formula) -> bool:
    """True when no variable occurs twice inside any single atom."""
    if isinstance(f, Letter):
        return True
    if isinstance(f, Atom):
        seen = []
        stack = list(f.args)
        while stack:
            t = stack.pop()
            if isinstance(t, Var):
                if t.name in seen:
                    return False
                seen.append(t.name)
            elif isinstance(t, App):
                stack.extend(t.args)
        return True
    if isinstance(f, Neg):
        return is_nonduplicating(f.sub)
    if isinstance(f, _Binary):
        return is_nonduplicating(f.left) and is_nonduplicating(f.right)
    return is_nonduplicating(f.body)


# ---------------------------------------------------------------------------
# sequents


@dataclass(frozen=True)
class Sequent:
    antecedent: tuple
    succedent: Formula

    def __str__(self):
        return render_sequent(self)


# ---------------------------------------------------------------------------
# signatures


@dataclass
class Signature:
    """Symbol table for predicate formulas.

    By default the parser is permissive: the first use of a symbol
    declares it (with wildcard sorts), and later uses must stay
    consistent.  Building a Signature with ``permissive=False`` turns
    undeclared symbols into errors instead.  The wildcard sort "_"
    matches every sort.
    """

    sorts: set = field(default_factory=set)
    relations: dict = field(default_factory=dict)
    functions: dict = field(default_factory=dict)
    constants: dict = field(default_factory=dict)
    permissive: bool = True
    letters: set = field(default_factory=set)

    def declare_sort(self, name):
        self.sorts.add(name)

    def declare_relation(self, name, arg_sorts):
        arg_sorts = tuple(arg_sorts)
        old = self.relations.get(name)
        if old is not None and old != arg_sorts:
            raise SignatureError(f"relation {name} redeclared with different profile")
        self.relations[name] = arg_sorts
        self.sorts.update(arg_sorts)

    def declare_function(self, name, arg_sorts, result_sort=DEFAULT_SORT):
        profile = (tuple(arg_sorts), result_sort)
        old = self.functions.get(name)
        if old is not None and old != profile:
            raise SignatureError(f"function {name} redeclared with different profile")
        self.functions[name] = profile
        self.sorts.update(profile[0])
        self.sorts.add(result_sort)

    def declare_constant(self, name, sort=DEFAULT_SORT):
        old = self.constants.get(name)
        if old is not None and old != sort:
            raise SignatureError(f"constant {name} redeclared with different sort")
        self.constants[name] = sort
        self.sorts.add(sort)

    def _relation(self, name, nargs):
        prof = self.relations.get(name)
        if prof is None:
            if name in self.letters:
                raise SignatureError(f"{name} already used as a propositional letter")
            if not self.permissive:
                raise SignatureError(f"undeclared relation {name}")
            prof = (DEFAULT_SORT,) * nargs
            self.relations[name] = prof
        if len(prof) != nargs:
            raise SignatureError(f"relation {name} takes {len(prof)} arguments, got {nargs}")
        return prof

    def _function(self, name, nargs):
        prof = self.functions.get(name)
        if prof is None:
            if not self.permissive:
                raise SignatureError(f"undeclared function {name}")
            prof = ((DEFAULT_SORT,) * nargs, DEFAULT_SORT)
            self.functions[name] = prof
        if len(prof[0]) != nargs:
            raise SignatureError(f"function {name} takes {len(prof[0])} arguments, got {nargs}")
        return prof

    def _letter(self, name):
        if name in self.relations:
            raise SignatureError(f"relation {name} used without arguments")
        self.letters.add(name)
        return Letter(name)


def _sorts_fit(declared, actual):
    return declared == DEFAULT_SORT or actual == DEFAULT_SORT or declared == actual


# ---------------------------------------------------------------------------
# parsing

_TOKEN_RE = re.compile(r"\s+|#[^\n]*|(\|-|->|/\\|\\/|><|[~(),.])|([A-Za-z_][A-Za-z0-9_']*)")
_KEYWORDS = {"forall", "exists"}


def _tokenize(text):
    toks, i = [], 0
    while i < len(text):
        m = _TOKEN_RE.match(text, i)
        if m is None:
            raise ParseError(f"unexpected character {text[i]!r}", i)
        if m.group(1):
            toks.append((m.group(1), i))
        elif m.group(2):
            toks.append((m.group(2), i))
        i = m.end()
    toks.append((None, len(text)))
    return toks


class _Parser:
    def __init__(self, text, sig):
        self.toks = _tokenize(text)
        self.i = 0
        self.sig = sig
        self.bound = []

    def peek(self):
        return self.toks[self.i][0]

    def pos(self):
        return self.toks[self.i][1]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok[0]

    def expect(self, tok):
        if self.peek() != tok:
            found = self.peek() if self.peek() is not None else "end of input"
            raise ParseError(f"expected {tok!r}, found {found!r}", self.pos())
        return self.take()

    def ident(self, what="identifier"):
        tok = self.peek()
        if tok is None or not tok[0].isalpha() and tok[0] != "_" or tok in _KEYWORDS:
            raise ParseError(f"expected {what}", self.pos())
        return self.take()

    # grammar, lowest precedence first

    def formula(self):
        left = self.cmpterm()
        if self.peek() == "->":
            self.take()
            return Imp(left, self.formula())
        return left

    def cmpterm(self):
        left = self.orterm()
        if self.peek() == "><":
            self.take()
            return Compat(left, self.orterm())
        return left

    def orterm(self):
        f = self.andterm()
        while self.peek() == "\\/":
            self.take()
            f = Or(f, self.andterm())
        return f

    def andterm(self):
        f = self.unary()
        while self.peek() == "/\\":
            self.take()
            f = And(f, self.unary())
        return f

    def unary(self):
        if self.peek() == "~":
            self.take()
            return Neg(self.unary())
        return self.atom()

    def atom(self):
        tok, pos = self.peek(), self.pos()
        if tok == "(":
            self.take()
            f = self.formula()
            self.expect(")")
            return f
        if tok in _KEYWORDS:
            self.take()
            v = Var(self.ident("variable"))
            self.expect(".")
            self.bound.append(v.name)
            body = self.formula()
            self.bound.pop()
            return (Forall if tok == "forall" else Exists)(v, body)
        name = self.ident("formula")
        if self.peek() != "(":
            try:
                return self.sig._letter(name)
            except SignatureError as e:
                raise ParseError(str(e), pos) from None
        args = self.term_args()
        try:
            prof = self.sig._relation(name, len(args))
        except SignatureError as e:
            raise ParseError(str(e), pos) from None
        self._check_sorts(prof, args, name, pos)
        return Atom(name, args)

    def term_args(self):
        self.expect("(")
        args = [self.term()]
        while self.peek() == ",":
            self.take()
            args.append(self.term())
        self.expect(")")
        return tuple(args)

    def term(self):
        pos = self.pos()
        name = self.ident("term")
        if self.peek() == "(":
            args = self.term_args()
            try:
                prof = self.sig._function(name, len(args))
            except SignatureError as e:
                raise ParseError(str(e), pos) from None
            self._check_sorts(prof[0], args, name, pos)
            return App(name, args, prof[1])
        if name not in self.bound and name in self.sig.constants:
            return Const(name, self.sig.constants[name])
        return Var(name)

    def _check_sorts(self, declared, args, name, pos):
        for want, arg in zip(declared, args):
            if not _sorts_fit(want, arg.sort):
                raise ParseError(
                    f"{arg.sort}-sorted argument where {name} wants {want}", pos)

    def sequent(self):
        ante = []
        if self.peek() != "|-":
            ante.append(self.formula())
            while self.peek() == ",":
                self.take()
                ante.append(self.formula())
        self.expect("|-")
        return Sequent(tuple(ante), self.formula())

    def finish(self, value):
        if self.peek() is not None:
            raise ParseError(f"unexpected {self.peek()!r}", self.pos())
        return value


def parse_formula(text: str, sig: Signature | None = None) -> Formula:
    """Parse a formula; precedence ~ > /\\ > \\/ > >< > -> with -> right-associative."""
    p = _Parser(text, sig if sig is not None else Signature())
    return p.finish(p.formula())


def parse_sequent(text: str, sig: Signature | None = None) -> Sequent:
    """Parse ``phi1, ..., phin |- psi`` keeping antecedent order (n = 0 allowed)."""
    p = _Parser(text, sig if sig is not None else Signature())
    return p.finish(p.sequent())


def parse_term(text: str, sig: Signature | None = None):
    p = _Parser(text, sig if sig is not None else Signature())
    return p.finish(p.term())


# ---------------------------------------------------------------------------
# printing

_LEVEL = {Imp: 0, Compat: 1, Or: 2, And: 3, Neg: 4}
_OPTXT = {Imp: "->", Compat: "><", Or: "\\/", And: "/\\"}


def render(f: Formula) -> str:
    """Print with minimal parentheses; ``parse_formula(render(f)) == f``."""
    return _render(f, 0, True)


def _render(f, need, tail):
    # tail: nothing that could extend a formula follows in the output, so a
    # quantifier body may run to the end without being bracketed
    if isinstance(f, Letter):
        return f.name
    if isinstance(f, Atom):
        return f.name + "(" + ",".join(render_term(t) for t in f.args) + ")"
    if isinstance(f, Neg):
        return "~" + _render(f.sub, 4, tail)
    if isinstance(f, _Quant):
        word = "forall" if isinstance(f, Forall) else "exists"
        s = f"{word} {f.var.name}. " + _render(f.body, 0, True)
        return s if tail else "(" + s + ")"
    lvl = _LEVEL[type(f)]
    wrap = lvl < need
    if isinstance(f, Imp):
        lneed, rneed = 1, 0
    elif isinstance(f, Compat):
        lneed, rneed = 2, 2
    else:
        lneed, rneed = lvl, lvl + 1
    right_tail = True if wrap else tail
    s = (_render(f.left, lneed, False) + f" {_OPTXT[type(f)]} "
         + _render(f.right, rneed, right_tail))
    return "(" + s + ")" if wrap else s


def render_sequent(s: Sequent) -> str:
    succ = _render(s.succedent, 0, True)
    if not s.antecedent:
        return "|- " + succ
    return ", ".join(_render(f, 0, True) for f in s.antecedent) + " |- " + succ
