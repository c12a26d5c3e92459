"""Intersection type ASTs: construction, parsing, printing, organization.

Types are hash-consed: the factory functions ``const``, ``var``, ``arrow``
and ``inter`` return interned immutable nodes, so structural equality of
canonical types is object identity.  ``inter`` is the canonicalizing
constructor: it flattens nested intersections, drops omega components,
deduplicates, and keeps components in a deterministic structural order.
"""

from __future__ import annotations

from dataclasses import dataclass


class Type:
    __slots__ = ("_skey", "_collapsed", "_size")

    def __str__(self) -> str:
        return print_type(self)

    def __repr__(self) -> str:
        return f"<{print_type(self)}>"


class Const(Type):
    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name


class Var(Type):
    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name


class _Omega(Type):
    __slots__ = ()


class Arrow(Type):
    __slots__ = ("source", "target")

    def __init__(self, source: Type, target: Type):
        self.source = source
        self.target = target


class Inter(Type):
    __slots__ = ("components",)

    def __init__(self, components: tuple[Type, ...]):
        self.components = components


OMEGA = _Omega()
OMEGA._skey = (2,)
OMEGA._collapsed = OMEGA
OMEGA._size = 1

_cache: dict[tuple, Type] = {}


def _fresh_slots(t: Type) -> Type:
    t._skey = None
    t._collapsed = None
    t._size = None
    return t


def const(name: str) -> Const:
    key = ("C", name)
    t = _cache.get(key)
    if t is None:
        t = _cache[key] = _fresh_slots(Const(name))
    return t


def var(name: str) -> Var:
    key = ("V", name)
    t = _cache.get(key)
    if t is None:
        t = _cache[key] = _fresh_slots(Var(name))
    return t


def arrow(source: Type, target: Type) -> Arrow:
    key = ("A", source, target)
    t = _cache.get(key)
    if t is None:
        t = _cache[key] = _fresh_slots(Arrow(source, target))
    return t


def arrows(args, target: Type) -> Type:
    """Right-nested arrow chain args[0] -> ... -> args[-1] -> target."""
    t = target
    for a in reversed(args):
        t = arrow(a, t)
    return t


def skey(t: Type):
    """Structural sort key: a nested tuple, total order over all types."""
    k = t._skey
    if k is None:
        if isinstance(t, Const):
            k = (0, t.name)
        elif isinstance(t, Var):
            k = (1, t.name)
        elif isinstance(t, Arrow):
            k = (3, skey(t.source), skey(t.target))
        else:
            k = (4,) + tuple(skey(c) for c in t.components)
        t._skey = k
    return k


def inter(parts) -> Type:
    """Canonical intersection: flatten, drop omega, dedup, sort.

    The empty intersection is OMEGA; a singleton is the component itself.
    """
    flat: list[Type] = []
    seen: set[int] = set()
    for p in parts:
        if p is OMEGA:
            continue
        sub = p.components if isinstance(p, Inter) else (p,)
        for c in sub:
            if id(c) not in seen:
                seen.add(id(c))
                flat.append(c)
    if not flat:
        return OMEGA
    if len(flat) == 1:
        return flat[0]
    flat.sort(key=skey)
    key = ("I",) + tuple(flat)
    t = _cache.get(key)
    if t is None:
        t = _cache[key] = _fresh_slots(Inter(tuple(flat)))
    return t


def components(t: Type) -> tuple[Type, ...]:
    """Top-level components; the empty tuple for omega."""
    if t is OMEGA:
        return ()
    if isinstance(t, Inter):
        return t.components
    return (t,)


def size(t: Type) -> int:
    """Number of nodes in the syntax tree."""
    n = t._size
    if n is None:
        if isinstance(t, Arrow):
            n = 1 + size(t.source) + size(t.target)
        elif isinstance(t, Inter):
            # n components = n-1 binary intersection nodes
            n = len(t.components) - 1 + sum(size(c) for c in t.components)
        else:
            n = 1
        t._size = n
    return n


def is_atom(t: Type) -> bool:
    return isinstance(t, (Const, Var))


def type_constants(t: Type) -> set[str]:
    out: set[str] = set()
    stack = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, Const):
            out.add(u.name)
        elif isinstance(u, Arrow):
            stack.append(u.source)
            stack.append(u.target)
        elif isinstance(u, Inter):
            stack.extend(u.components)
    return out


def type_vars(t: Type) -> set[str]:
    out: set[str] = set()
    stack = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, Var):
            out.add(u.name)
        elif isinstance(u, Arrow):
            stack.append(u.source)
            stack.append(u.target)
        elif isinstance(u, Inter):
            stack.extend(u.components)
    return out


def contains_omega(t: Type) -> bool:
    if t is OMEGA:
        return True
    if isinstance(t, Arrow):
        return contains_omega(t.source) or contains_omega(t.target)
    if isinstance(t, Inter):
        return any(contains_omega(c) for c in t.components)
    return False


# ---------------------------------------------------------------------------
# omega collapse and organization

def omega_collapse(t: Type) -> Type:
    """Replace every subterm equal to omega (the T^omega shapes) by omega."""
    c = t._collapsed
    if c is None:
        if isinstance(t, Arrow):
            tg = omega_collapse(t.target)
            c = OMEGA if tg is OMEGA else arrow(omega_collapse(t.source), tg)
        elif isinstance(t, Inter):
            c = inter(omega_collapse(x) for x in t.components)
        else:
            c = t
        t._collapsed = c
    return c


def is_omega_equal(t: Type) -> bool:
    """True iff t is semantically equal to omega (the T^omega grammar)."""
    return omega_collapse(t) is OMEGA


_organize_cache: dict[Type, Type] = {}


def organize(t: Type) -> Type:
    """Equivalent organized type: omega or an intersection of paths.

    Arrow targets are organized recursively and the arrow distributed over
    the resulting paths; arrow arguments are left untouched.
    """
    got = _organize_cache.get(t)
    if got is not None:
        return got
    if isinstance(t, Arrow):
        tg = organize(t.target)
        if tg is OMEGA:
            out = OMEGA
        else:
            out = inter(arrow(t.source, p) for p in components(tg))
    elif isinstance(t, Inter):
        out = inter(organize(c) for c in t.components)
    elif t is OMEGA:
        out = OMEGA
    else:
        out = t
    _organize_cache[t] = out
    return out


def is_path(t: Type) -> bool:
    while isinstance(t, Arrow):
        t = t.target
    return is_atom(t)


def is_organized(t: Type) -> bool:
    if t is OMEGA:
        return True
    return all(is_path(c) for c in components(t))


@dataclass(frozen=True)
class Path:
    """A path tau_1 -> ... -> tau_k -> head seen as arguments plus head."""

    arguments: tuple[Type, ...]
    head: Type  # Const or Var

    def to_type(self) -> Type:
        return arrows(self.arguments, self.head)


def path_split(t: Type) -> Path:
    """Decompose a path type; raises ValueError on non-paths."""
    args = []
    while isinstance(t, Arrow):
        args.append(t.source)
        t = t.target
    if not is_atom(t):
        raise ValueError(f"not a path: {t!r}")
    return Path(tuple(args), t)


# ---------------------------------------------------------------------------
# parsing

class TypeSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_IDENT_START = set("abcdefghijklmnopqrstuvwxyz_")
_IDENT_CHARS = _IDENT_START | set("0123456789")


def _tokenize(text: str):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch in " \t\r\n":
            i += 1
            continue
        if ch in "(&)'":
            tokens.append((ch, ch, i))
            i += 1
            continue
        if text.startswith("->", i):
            tokens.append(("->", "->", i))
            i += 2
            continue
        if ch in _IDENT_START:
            j = i
            while j < n and text[j] in _IDENT_CHARS:
                j += 1
            tokens.append(("ident", text[i:j], i))
            i = j
            continue
        raise TypeSyntaxError(f"unexpected character {ch!r}", i)
    tokens.append(("eof", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str):
        tok = self.next()
        if tok[0] != kind:
            raise TypeSyntaxError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        return tok

    def parse_type(self) -> Type:
        left = self.parse_inter()
        if self.peek()[0] == "->":
            self.next()
            return arrow(left, self.parse_type())
        return left

    def parse_inter(self) -> Type:
        parts = [self.parse_atom()]
        while self.peek()[0] == "&":
            self.next()
            parts.append(self.parse_atom())
        return inter(parts)

    def parse_atom(self) -> Type:
        kind, value, at = self.next()
        if kind == "(":
            t = self.parse_type()
            self.expect(")")
            return t
        if kind == "'":
            tok = self.expect("ident")
            if tok[1] == "omega":
                raise TypeSyntaxError("'omega' is reserved and cannot name a variable", tok[2])
            return var(tok[1])
        if kind == "ident":
            if value == "omega":
                return OMEGA
            return const(value)
        raise TypeSyntaxError(f"unexpected token {value!r}", at)


def parse_type(text: str) -> Type:
    p = _Parser(text)
    t = p.parse_type()
    tok = p.peek()
    if tok[0] != "eof":
        raise TypeSyntaxError(f"trailing input {tok[1]!r}", tok[2])
    return t


# ---------------------------------------------------------------------------
# printing

def print_type(t: Type) -> str:
    if t is OMEGA:
        return "omega"
    if isinstance(t, Const):
        return t.name
    if isinstance(t, Var):
        return "'" + t.name
    if isinstance(t, Arrow):
        src = print_type(t.source)
        if isinstance(t.source, (Arrow, Inter)):
            src = f"({src})"
        return f"{src} -> {print_type(t.target)}"
    parts = []
    for c in t.components:
        s = print_type(c)
        if isinstance(c, Arrow):
            s = f"({s})"
        parts.append(s)
    return " & ".join(parts)
