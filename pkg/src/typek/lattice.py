"""Lattices given by Gram matrices, plus a small constructor-expression language.

Expressions look like ``"U + U(2) + E8(-2)"``, ``"<-4> + <-4>"``,
``"2*U(6)"`` or ``"K3"``.  Root lattices ``A_m``, ``D_n``, ``E_l`` are the
positive-definite Cartan matrices; negative versions need an explicit scale.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import linalg


class LatticeExprError(ValueError):
    """Malformed lattice expression; ``pos`` is the offending character offset."""

    def __init__(self, message: str, pos: int = -1):
        super().__init__(f"{message} (at position {pos})" if pos >= 0 else message)
        self.pos = pos


@dataclass(frozen=True)
class Lattice:
    gram: Tuple[Tuple, ...]
    label: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        g = tuple(tuple(row) for row in self.gram)
        if not linalg.is_symmetric(g):
            raise ValueError("Gram matrix must be square and symmetric")
        object.__setattr__(self, "gram", g)

    @property
    def rank(self) -> int:
        return len(self.gram)

    def matrix(self) -> list:
        return [list(row) for row in self.gram]

    def __repr__(self) -> str:
        return f"Lattice({self.label or self.matrix()!r})"

    def pair(self, x: Sequence, y: Sequence):
        return linalg.bilinear(self.gram, x, y)

    def to_json(self) -> dict:
        d = {"gram": self.matrix()}
        if self.label:
            d["expr"] = self.label
        return d


# ---------------------------------------------------------------------------
# constructors


def cartan_A(m: int) -> list:
    if m < 1:
        raise ValueError(f"A_m needs m >= 1, got {m}")
    return [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(m)] for i in range(m)]


def cartan_D(n: int) -> list:
    if n < 4:
        raise ValueError(f"D_n needs n >= 4, got {n}")
    G = cartan_A(n - 1) + [[0] * (n - 1)]
    for row in G:
        row.append(0)
    # node n-1 (0-based) hangs off node n-3
    G[n - 1][n - 1] = 2
    G[n - 1][n - 3] = G[n - 3][n - 1] = -1
    return G


def cartan_E(l: int) -> list:
    if l not in (6, 7, 8):
        raise ValueError(f"E_l needs l in {{6,7,8}}, got {l}")
    # Bourbaki labels 1..l: chain 1-3-4-5-...-l with 2 attached to 4
    edges = [(1, 3), (3, 4), (2, 4)] + [(k, k + 1) for k in range(4, l)]
    G = [[2 if i == j else 0 for j in range(l)] for i in range(l)]
    for a, b in edges:
        G[a - 1][b - 1] = G[b - 1][a - 1] = -1
    return G


HYPERBOLIC = [[0, 1], [1, 0]]


def direct_sum(*lattices: Lattice) -> Lattice:
    labels = [L.label for L in lattices]
    label = " + ".join(labels) if all(labels) else None
    return Lattice(linalg.block_diag(*[L.gram for L in lattices]), label)


def rescale(L: Lattice, n) -> Lattice:
    if n == 0:
        raise ValueError("cannot rescale a lattice by 0")
    label = f"({L.label})({n})" if L.label else None
    return Lattice([[n * v for v in row] for row in L.gram], label)


def diagonal(*entries: int) -> Lattice:
    return Lattice(linalg.block_diag(*[[[a]] for a in entries]), " + ".join(f"<{a}>" for a in entries))


# ---------------------------------------------------------------------------
# invariants


def disc(L: Lattice):
    return linalg.det(L.gram)


def is_even(L: Lattice) -> bool:
    return all(L.gram[i][i] % 2 == 0 for i in range(L.rank)) and all(
        Fraction(v).denominator == 1 for row in L.gram for v in row
    )


def is_nondegenerate(L: Lattice) -> bool:
    return disc(L) != 0


def signature(L: Lattice) -> Tuple[int, int]:
    """``(t_plus, t_minus)``; raises if degenerate (see :func:`inertia`)."""
    pos, neg, zero = inertia(L)
    if zero:
        raise ValueError(f"degenerate lattice: nullity {zero}")
    return pos, neg


def inertia(L: Lattice) -> Tuple[int, int, int]:
    """``(t_plus, t_minus, nullity)``."""
    _, d = linalg.congruent_diagonalize(L.gram)
    return sum(x > 0 for x in d), sum(x < 0 for x in d), sum(x == 0 for x in d)


def orthogonal_complement(ambient: Lattice, sub_basis: Sequence[Sequence[int]]) -> Tuple[Lattice, list]:
    """Primitive complement of the span of ``sub_basis`` (rows, ambient coordinates).

    Returns ``(lattice, basis)`` where ``basis`` rows are ambient coordinates.
    """
    sub = [list(r) for r in sub_basis]
    if sub and linalg.rank(sub) < len(sub):
        raise ValueError("sub_basis rows are linearly dependent")
    if not sub:
        basis = linalg.identity(ambient.rank)
    else:
        basis = linalg.saturated_kernel(linalg.matmul(sub, ambient.gram), ambient.rank)
    return Lattice(linalg.congruence(basis, ambient.gram)), basis


def sublattice(ambient: Lattice, basis: Sequence[Sequence]) -> Lattice:
    return Lattice(linalg.congruence(basis, ambient.gram))


# ---------------------------------------------------------------------------
# expression language
#
#   expr := term ("+" term)*
#   term := INT "*" term | atom ["(" INT ")"]
#   atom := NAME | "<" INT ">" | "(" expr ")"

_TOKEN = re.compile(r"\s*(?:(?P<int>[-+]?\d+)|(?P<name>[A-Za-z][A-Za-z0-9]*)|(?P<op>[+*()<>]))")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    text = text.replace("−", "-").replace("⊕", "+").replace("⟨", "<").replace("⟩", ">")
    toks = []
    pos = 0
    prev_kind = None
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise LatticeExprError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastgroup)
        kind, val = m.lastgroup, m.group(m.lastgroup)
        # a leading '+' on an integer after a complete term is the sum operator
        if kind == "int" and val[0] == "+" and prev_kind in ("int", "name", ")", ">"):
            toks.append(("op", "+", start))
            kind, val, start = "int", val[1:], start + 1
        toks.append((kind, val, start))
        prev_kind = val if kind == "op" else kind
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind, val=None):
        tok = self.peek()
        if tok[0] != kind or (val is not None and tok[1] != val):
            want = val or kind
            raise LatticeExprError(f"expected {want!r}, found {tok[1] or 'end of input'!r}", tok[2])
        self.i += 1
        return tok

    def parse(self) -> list:
        terms = self.expr()
        if self.peek()[0] != "end":
            tok = self.peek()
            raise LatticeExprError(f"unexpected {tok[1]!r}", tok[2])
        return terms

    def expr(self) -> list:
        blocks = self.term()
        while self.peek()[:2] == ("op", "+"):
            self.i += 1
            blocks += self.term()
        return blocks

    def term(self) -> list:
        tok = self.peek()
        if tok[0] == "int":
            self.i += 1
            k = int(tok[1])
            if k < 1:
                raise LatticeExprError("multiplicity must be positive", tok[2])
            self.take("op", "*")
            return self.term() * k
        blocks = self.atom()
        if self.peek()[:2] == ("op", "("):
            self.i += 1
            s = self.take("int")
            n = int(s[1])
            if n == 0:
                raise LatticeExprError("rescale by 0", s[2])
            self.take("op", ")")
            blocks = [(name, scale * n) for name, scale in blocks]
        return blocks

    def atom(self) -> list:
        tok = self.peek()
        if tok[:2] == ("op", "<"):
            self.i += 1
            a = int(self.take("int")[1])
            self.take("op", ">")
            return [(f"<{a}>", 1)]
        if tok[:2] == ("op", "("):
            self.i += 1
            inner = self.expr()
            self.take("op", ")")
            return inner
        if tok[0] == "name":
            self.i += 1
            name = tok[1]
            try:
                _block(name)
            except ValueError as exc:
                raise LatticeExprError(str(exc), tok[2]) from None
            return [(name, 1)]
        raise LatticeExprError(f"expected a lattice, found {tok[1] or 'end of input'!r}", tok[2])


def _block(name: str) -> list:
    if name.startswith("<"):
        return [[int(name[1:-1])]]
    if name == "U":
        return [list(r) for r in HYPERBOLIC]
    if name == "K3":
        return linalg.block_diag(HYPERBOLIC, HYPERBOLIC, HYPERBOLIC, *[[[-v for v in r] for r in cartan_E(8)]] * 2)
    m = re.fullmatch(r"([ADE])(\d+)", name)
    if not m:
        raise ValueError(f"unknown lattice name {name!r}")
    kind, k = m.group(1), int(m.group(2))
    return {"A": cartan_A, "D": cartan_D, "E": cartan_E}[kind](k)


def _format_blocks(blocks: list) -> str:
    out = []
    for name, scale in blocks:
        out.append(name if scale == 1 else f"{name}({scale})")
    return " + ".join(out)


def parse_lattice(expr: str) -> Lattice:
    """Parse a constructor expression into a block-diagonal Gram matrix."""
    blocks = _Parser(expr).parse()
    grams = [[[scale * v for v in row] for row in _block(name)] for name, scale in blocks]
    return Lattice(linalg.block_diag(*grams), _format_blocks(blocks))


def canonical_expr(expr: str) -> str:
    """Flattened form of an expression (``2*U(2)`` -> ``U(2) + U(2)``)."""
    return _format_blocks(_Parser(expr).parse())


def lattice_from_json(obj: dict | str) -> Lattice:
    """Read ``{"expr": ..., "gram": ...}``; when both are present they must agree."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    expr, gram = obj.get("expr"), obj.get("gram")
    if expr is None and gram is None:
        raise ValueError("lattice JSON needs 'expr' or 'gram'")
    if expr is not None:
        L = parse_lattice(expr)
        if gram is not None and [list(r) for r in gram] != L.matrix():
            raise ValueError(f"'gram' does not match expression {expr!r}")
        return L
    return Lattice(gram)
