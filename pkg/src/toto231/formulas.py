"""First-order formulas over permutations.

The signature has two binary order relations and equality: ``x <p y``
compares positions, ``x <v y`` compares values, ``x = y`` is element
equality.  A permutation of size n is the model whose domain is its n
elements; quantifiers range over elements.

Text form is a whitespace-separated s-expression, UTF-8:

    atoms        (= a b)  (<p a b)  (<v a b)
    connectives  (not f)  (and f ...)  (or f ...)  (imp f g)  (iff f g)
    quantifiers  (E x f)  (A x f)

with variable names matching ``[a-z][a-z0-9]*``.  The classic example,
"some two elements form a 21 pattern":

    (E x (E y (and (<p x y) (<v y x))))

Three evaluators are provided: :func:`models` is the direct recursive
definition, :func:`compile_formula` builds a fast closure for repeated
evaluation on small permutations, and :func:`compile_formula_rows`
builds a jitted batch evaluator over arrays of samples.
"""

from __future__ import annotations

import re
import sys
from dataclasses import dataclass

import numpy as np

from .perms import njit

EQV = "eqv"
LTP = "ltP"
LTV = "ltV"

_VAR_RE = re.compile(r"[a-z][a-z0-9]*\Z")


class FormulaSyntaxError(ValueError):
    """Malformed sentence text; the message carries a character offset."""


class UnboundVariableError(ValueError):
    """A formula was used as a sentence but has free variables."""


@dataclass(frozen=True)
class Formula:
    pass


@dataclass(frozen=True)
class Atom(Formula):
    rel: str  # EQV | LTP | LTV
    a: str
    b: str


@dataclass(frozen=True)
class Not(Formula):
    f: Formula


@dataclass(frozen=True)
class And(Formula):
    args: tuple


@dataclass(frozen=True)
class Or(Formula):
    args: tuple


@dataclass(frozen=True)
class Implies(Formula):
    a: Formula
    b: Formula


@dataclass(frozen=True)
class Iff(Formula):
    a: Formula
    b: Formula


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    f: Formula


@dataclass(frozen=True)
class Forall(Formula):
    var: str
    f: Formula


def conj(*fs: Formula) -> Formula:
    """And, collapsing a single operand."""
    if not fs:
        raise ValueError("empty conjunction")
    return fs[0] if len(fs) == 1 else And(tuple(fs))


def disj(*fs: Formula) -> Formula:
    if not fs:
        raise ValueError("empty disjunction")
    return fs[0] if len(fs) == 1 else Or(tuple(fs))


# ---------- parsing ----------


def _tokenize(text: str):
    out = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif c in "()":
            out.append((c, i))
            i += 1
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in "()":
                j += 1
            out.append((text[i:j], i))
            i = j
    return out


def _var(tok, pos):
    if not _VAR_RE.match(tok):
        raise FormulaSyntaxError(f"bad variable name {tok!r} at offset {pos}")
    return sys.intern(tok)


_ATOM_OPS = {"=": EQV, "<p": LTP, "<v": LTV}


def parse_formula(text) -> Formula:
    """Parse formula text (str or UTF-8 bytes); free variables allowed."""
    if isinstance(text, (bytes, bytearray)):
        text = bytes(text).decode("utf-8")
    toks = _tokenize(text)
    idx = 0

    def need(what):
        nonlocal idx
        if idx >= len(toks):
            raise FormulaSyntaxError(f"unexpected end of input, expected {what}")
        tok, pos = toks[idx]
        idx += 1
        return tok, pos

    def parse_node() -> Formula:
        nonlocal idx
        tok, pos = need("'('")
        if tok != "(":
            raise FormulaSyntaxError(f"expected '(' at offset {pos}, got {tok!r}")
        op, oppos = need("an operator")
        if op in _ATOM_OPS:
            a = _var(*need("a variable"))
            b = _var(*need("a variable"))
            node = Atom(_ATOM_OPS[op], a, b)
        elif op == "not":
            node = Not(parse_node())
        elif op in ("and", "or"):
            args = []
            while idx < len(toks) and toks[idx][0] == "(":
                args.append(parse_node())
            if not args:
                raise FormulaSyntaxError(f"'{op}' needs at least one operand at offset {oppos}")
            node = And(tuple(args)) if op == "and" else Or(tuple(args))
        elif op in ("imp", "iff"):
            a = parse_node()
            b = parse_node()
            node = Implies(a, b) if op == "imp" else Iff(a, b)
        elif op in ("E", "A"):
            v = _var(*need("a variable"))
            body = parse_node()
            node = Exists(v, body) if op == "E" else Forall(v, body)
        else:
            raise FormulaSyntaxError(f"unknown operator {op!r} at offset {oppos}")
        tok, pos = need("')'")
        if tok != ")":
            raise FormulaSyntaxError(f"expected ')' at offset {pos}, got {tok!r}")
        return node

    node = parse_node()
    if idx != len(toks):
        raise FormulaSyntaxError(f"trailing input at offset {toks[idx][1]}")
    return node


def parse_sentence(text) -> Formula:
    """Parse and additionally require that no variable occurs free."""
    f = parse_formula(text)
    fv = free_vars(f)
    if fv:
        raise UnboundVariableError(f"free variables in sentence: {sorted(fv)}")
    return f


def unparse(f: Formula) -> str:
    """Inverse of :func:`parse_formula`, canonical single-line form."""
    if isinstance(f, Atom):
        op = {EQV: "=", LTP: "<p", LTV: "<v"}[f.rel]
        return f"({op} {f.a} {f.b})"
    if isinstance(f, Not):
        return f"(not {unparse(f.f)})"
    if isinstance(f, And):
        return "(and " + " ".join(unparse(g) for g in f.args) + ")"
    if isinstance(f, Or):
        return "(or " + " ".join(unparse(g) for g in f.args) + ")"
    if isinstance(f, Implies):
        return f"(imp {unparse(f.a)} {unparse(f.b)})"
    if isinstance(f, Iff):
        return f"(iff {unparse(f.a)} {unparse(f.b)})"
    if isinstance(f, Exists):
        return f"(E {f.var} {unparse(f.f)})"
    if isinstance(f, Forall):
        return f"(A {f.var} {unparse(f.f)})"
    raise TypeError(f"not a formula: {f!r}")


# ---------- structural queries ----------


def qdepth(f: Formula) -> int:
    """Maximal quantifier nesting: atoms 0, negation transparent,
    binary/variadic connectives take the max, quantifiers add one."""
    if isinstance(f, Atom):
        return 0
    if isinstance(f, Not):
        return qdepth(f.f)
    if isinstance(f, (And, Or)):
        return max(qdepth(g) for g in f.args)
    if isinstance(f, (Implies, Iff)):
        return max(qdepth(f.a), qdepth(f.b))
    if isinstance(f, (Exists, Forall)):
        return 1 + qdepth(f.f)
    raise TypeError(f"not a formula: {f!r}")


def free_vars(f: Formula) -> frozenset:
    if isinstance(f, Atom):
        return frozenset((f.a, f.b))
    if isinstance(f, Not):
        return free_vars(f.f)
    if isinstance(f, (And, Or)):
        out: frozenset = frozenset()
        for g in f.args:
            out |= free_vars(g)
        return out
    if isinstance(f, (Implies, Iff)):
        return free_vars(f.a) | free_vars(f.b)
    if isinstance(f, (Exists, Forall)):
        return free_vars(f.f) - {f.var}
    raise TypeError(f"not a formula: {f!r}")


# ---------- reference evaluator ----------


def models(sigma, psi: Formula, env=None) -> bool:
    """Does sigma satisfy psi under the (partial) assignment env?

    Elements are identified with positions 0..n-1; ``<p`` compares the
    positions themselves, ``<v`` the values ``sigma[.]``.  Quantifiers
    range over all n elements, so on the empty permutation every
    universal sentence holds and every existential one fails.
    """
    n = len(sigma)
    scope = dict(env) if env else {}
    missing = free_vars(psi) - scope.keys()
    if missing:
        raise UnboundVariableError(f"unbound variables: {sorted(missing)}")

    def ev(f) -> bool:
        if isinstance(f, Atom):
            i, j = scope[f.a], scope[f.b]
            if f.rel == LTP:
                return i < j
            if f.rel == LTV:
                return sigma[i] < sigma[j]
            return i == j
        if isinstance(f, Not):
            return not ev(f.f)
        if isinstance(f, And):
            return all(ev(g) for g in f.args)
        if isinstance(f, Or):
            return any(ev(g) for g in f.args)
        if isinstance(f, Implies):
            return (not ev(f.a)) or ev(f.b)
        if isinstance(f, Iff):
            return ev(f.a) == ev(f.b)
        if isinstance(f, (Exists, Forall)):
            had = f.var in scope
            old = scope.get(f.var)
            hit = not isinstance(f, Exists)
            for i in range(n):
                scope[f.var] = i
                if ev(f.f) != hit:
                    hit = not hit
                    break
            if had:
                scope[f.var] = old
            else:
                scope.pop(f.var, None)
            return hit
        raise TypeError(f"not a formula: {f!r}")

    return ev(psi)


# ---------- compiled evaluators ----------


def _mangle(v: str) -> str:
    return "v_" + v


def compile_formula(psi: Formula):
    """Closure ``f(sigma) -> bool`` equivalent to ``models(sigma, psi)``.

    The formula is translated once into nested any/all comprehensions and
    compiled; evaluation short-circuits.  Sentences only.
    """
    if free_vars(psi):
        raise UnboundVariableError("compile_formula needs a sentence")

    def expr(f) -> str:
        if isinstance(f, Atom):
            a, b = _mangle(f.a), _mangle(f.b)
            if f.rel == LTP:
                return f"({a} < {b})"
            if f.rel == LTV:
                return f"(s[{a}] < s[{b}])"
            return f"({a} == {b})"
        if isinstance(f, Not):
            return f"(not {expr(f.f)})"
        if isinstance(f, And):
            return "(" + " and ".join(expr(g) for g in f.args) + ")"
        if isinstance(f, Or):
            return "(" + " or ".join(expr(g) for g in f.args) + ")"
        if isinstance(f, Implies):
            return f"((not {expr(f.a)}) or {expr(f.b)})"
        if isinstance(f, Iff):
            return f"({expr(f.a)} == {expr(f.b)})"
        if isinstance(f, Exists):
            return f"any({expr(f.f)} for {_mangle(f.var)} in range(n))"
        if isinstance(f, Forall):
            return f"all({expr(f.f)} for {_mangle(f.var)} in range(n))"
        raise TypeError(f"not a formula: {f!r}")

    src = f"def _check(s):\n    n = len(s)\n    return {expr(psi)}\n"
    ns: dict = {}
    exec(compile(src, "<formula>", "exec"), ns)
    fn = ns["_check"]
    fn.source = src
    return fn


def _standardize_apart(f: Formula) -> Formula:
    # distinct bound names; the statement-loop backend has a single flat
    # scope, so shadowed variables would otherwise be clobbered
    counter = [0]

    def walk(f, env):
        if isinstance(f, Atom):
            return Atom(f.rel, env.get(f.a, f.a), env.get(f.b, f.b))
        if isinstance(f, Not):
            return Not(walk(f.f, env))
        if isinstance(f, And):
            return And(tuple(walk(g, env) for g in f.args))
        if isinstance(f, Or):
            return Or(tuple(walk(g, env) for g in f.args))
        if isinstance(f, Implies):
            return Implies(walk(f.a, env), walk(f.b, env))
        if isinstance(f, Iff):
            return Iff(walk(f.a, env), walk(f.b, env))
        if isinstance(f, (Exists, Forall)):
            fresh = f"b{counter[0]}"
            counter[0] += 1
            body = walk(f.f, {**env, f.var: fresh})
            return Exists(fresh, body) if isinstance(f, Exists) else Forall(fresh, body)
        raise TypeError(f"not a formula: {f!r}")

    return walk(f, {})


def _emit_rows(f, flag, out, indent, depth):
    # statement-style code generation for the jitted row evaluator; each
    # quantifier becomes a loop that sweeps positions from both ends
    # inward (0, n-1, 1, n-2, ...) so witnesses near either end are cheap
    pad = "    " * indent
    if isinstance(f, Atom):
        a, b = _mangle(f.a), _mangle(f.b)
        if f.rel == LTP:
            out.append(f"{pad}{flag} = {a} < {b}")
        elif f.rel == LTV:
            out.append(f"{pad}{flag} = s[{a}] < s[{b}]")
        else:
            out.append(f"{pad}{flag} = {a} == {b}")
        return
    if isinstance(f, Not):
        sub = f"{flag}n"
        _emit_rows(f.f, sub, out, indent, depth)
        out.append(f"{pad}{flag} = not {sub}")
        return
    if isinstance(f, (And, Or)):
        stop = isinstance(f, Or)  # value that ends the scan early
        out.append(f"{pad}{flag} = {stop}")
        cur = indent
        for i, g in enumerate(f.args):
            sub = f"{flag}c{i}"
            _emit_rows(g, sub, out, cur, depth)
            out.append("    " * cur + f"{flag} = {sub}")
            if i + 1 < len(f.args):
                cond = "" if stop else "not "
                out.append("    " * cur + f"if {cond}{sub}:")
                out.append("    " * cur + "    pass")
                out.append("    " * cur + "else:")
                cur += 1
        return
    if isinstance(f, Implies):
        sub = f"{flag}a"
        _emit_rows(f.a, sub, out, indent, depth)
        out.append(f"{pad}{flag} = True")
        out.append(f"{pad}if {sub}:")
        sub2 = f"{flag}b"
        _emit_rows(f.b, sub2, out, indent + 1, depth)
        out.append(f"{pad}    {flag} = {sub2}")
        return
    if isinstance(f, Iff):
        sa, sb = f"{flag}a", f"{flag}b"
        _emit_rows(f.a, sa, out, indent, depth)
        _emit_rows(f.b, sb, out, indent, depth)
        out.append(f"{pad}{flag} = {sa} == {sb}")
        return
    if isinstance(f, (Exists, Forall)):
        exist = isinstance(f, Exists)
        t = f"t{depth}"
        v = _mangle(f.var)
        out.append(f"{pad}{flag} = {not exist}")
        out.append(f"{pad}for {t} in range(n):")
        out.append(f"{pad}    {v} = {t} >> 1 if {t} & 1 == 0 else n - 1 - ({t} >> 1)")
        sub = f"{flag}q"
        _emit_rows(f.f, sub, out, indent + 1, depth + 1)
        cond = sub if exist else f"not {sub}"
        out.append(f"{pad}    if {cond}:")
        out.append(f"{pad}        {flag} = {exist}")
        out.append(f"{pad}        break")
        return
    raise TypeError(f"not a formula: {f!r}")


def compile_formula_rows(psi: Formula):
    """Batch evaluator ``f(arr) -> uint8 array`` where ``arr`` is an
    (count, n) int32 array of permutations; entry r is 1 iff row r
    satisfies psi.  Jitted when numba is available; row results agree
    with :func:`models`.
    """
    if free_vars(psi):
        raise UnboundVariableError("compile_formula_rows needs a sentence")
    psi = _standardize_apart(psi)
    lines = ["def _row(s, n):"]
    _emit_rows(psi, "f0", lines, 1, 0)
    lines.append("    return f0")
    lines.append("")
    lines.append("def _batch(arr, out):")
    lines.append("    n = arr.shape[1]")
    lines.append("    for r in range(arr.shape[0]):")
    lines.append("        out[r] = 1 if _row(arr[r], n) else 0")
    src = "\n".join(lines) + "\n"
    ns: dict = {}
    exec(compile(src, "<formula-rows>", "exec"), ns)
    ns["_row"] = njit(cache=False, nogil=True)(ns["_row"])
    batch = njit(cache=False, nogil=True)(ns["_batch"])

    def run(arr) -> np.ndarray:
        arr = np.ascontiguousarray(arr, dtype=np.int32)
        out = np.empty(arr.shape[0], np.uint8)
        batch(arr, out)
        return out

    run.source = src
    return run
