"""Generalized polynomials: variables interleaved with coefficient symbols.

Grammar (whitespace free-form, '*' optional between factors):

    poly     := term (('+'|'-') term)*
    term     := (rational '*')? factor ('*'? factor)*
    factor   := var | coeff | '[' poly (',' poly)+ ']' | '(' poly ')'
    var      := 'x' digits
    coeff    := ('w'|'e') digits
    rational := '-'? digits ('/' digits)?

Commutators are left-normed: [a,b,c] = [[a,b],c].  Coefficient symbols
resolve against an action: 'w<i>' is the i-th listed basis element of the
coefficient algebra, any other token is looked up by label; unresolved
symbols are tail coefficients (index >= listed size) when the action
carries a kernel tail, and monomials containing them vanish identically.

Internally a polynomial expands to words: tuples mixing positive ints
(variable indices) and negative ints (-(k+1) for coefficient index k).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product

from .errors import ParseError, UnassignedVariable, UnknownCoefficient
from .linalg import rat

_ZERO = Fraction(0)
_ONE = Fraction(1)


# -- AST -----------------------------------------------------------------------


@dataclass(frozen=True)
class Var:
    index: int

    def __str__(self):
        return f"x{self.index}"


@dataclass(frozen=True)
class Coeff:
    name: str  # as written: w1, e2, ...

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Scalar:
    value: Fraction
    body: "Node"

    def __str__(self):
        v = self.value
        body = _factor_str(self.body)
        return f"{v}*{body}"


@dataclass(frozen=True)
class Sum:
    terms: tuple

    def __str__(self):
        parts = []
        for i, t in enumerate(self.terms):
            neg = isinstance(t, Scalar) and t.value < 0
            if neg:
                inner = Scalar(-t.value, t.body)
                if inner.value == 1:
                    s = _factor_str(inner.body) if isinstance(inner.body, (Var, Coeff, Comm)) else str(inner.body)
                    s = str(inner.body) if isinstance(inner.body, Prod) else s
                else:
                    s = str(inner)
                parts.append(("-" if i == 0 else " - ") + s)
            else:
                parts.append(("" if i == 0 else " + ") + str(t))
        return "".join(parts)


@dataclass(frozen=True)
class Prod:
    factors: tuple

    def __str__(self):
        return "*".join(_factor_str(f) for f in self.factors)


@dataclass(frozen=True)
class Comm:
    entries: tuple

    def __str__(self):
        return "[" + ",".join(str(e) for e in self.entries) + "]"


Node = (Var, Coeff, Scalar, Sum, Prod, Comm)


def _factor_str(node):
    if isinstance(node, (Sum, Scalar)):
        return "(" + str(node) + ")"
    return str(node)


# -- parser ---------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg):
        raise ParseError(msg, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def eat(self, ch):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def digits(self):
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("expected digits")
        return int(self.text[start : self.pos])

    def poly(self):
        terms = [self.term()]
        while True:
            c = self.peek()
            if c == "+":
                self.pos += 1
                terms.append(self.term())
            elif c == "-":
                self.pos += 1
                t = self.term()
                terms.append(_scale(t, Fraction(-1)))
            else:
                break
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))

    def term(self):
        scalar = _ONE
        c = self.peek()
        if c.isdigit() or (c == "-" and self._rational_ahead()):
            scalar = self.rational()
            if self.peek() == "*":
                self.pos += 1
        factors = [self.factor()]
        while True:
            c = self.peek()
            if c == "*":
                self.pos += 1
                factors.append(self.factor())
            elif c in ("x", "w", "e", "[", "("):
                factors.append(self.factor())
            else:
                break
        node = factors[0] if len(factors) == 1 else Prod(tuple(factors))
        return node if scalar == 1 else _scale(node, scalar)

    def _rational_ahead(self):
        return self.pos + 1 < len(self.text) and self.text[self.pos + 1].isdigit()

    def rational(self):
        sign = 1
        if self.peek() == "-":
            self.pos += 1
            sign = -1
        num = self.digits()
        den = 1
        if self.peek() == "/":
            self.pos += 1
            den = self.digits()
            if den == 0:
                self.error("zero denominator")
        return Fraction(sign * num, den)

    def factor(self):
        c = self.peek()
        if c == "x":
            self.pos += 1
            return Var(self.digits())
        if c in ("w", "e"):
            self.pos += 1
            tag = c
            return Coeff(f"{tag}{self.digits()}")
        if c == "[":
            self.pos += 1
            entries = [self.poly()]
            while self.peek() == ",":
                self.pos += 1
                entries.append(self.poly())
            self.eat("]")
            if len(entries) < 2:
                self.error("commutator needs at least two entries")
            return Comm(tuple(entries))
        if c == "(":
            self.pos += 1
            inner = self.poly()
            self.eat(")")
            return inner
        self.error("expected a variable, coefficient, commutator or group")


def _scale(node, c: Fraction):
    if c == 1:
        return node
    if isinstance(node, Scalar):
        return _scale(node.body, c * node.value)
    if isinstance(node, Sum):
        return Sum(tuple(_scale(t, c) for t in node.terms))
    return Scalar(c, node)


def parse(text: str):
    """Parse a generalized polynomial; every additive term must contain a
    variable (coefficient-only terms are not elements of the free algebra)."""
    p = _Parser(text)
    node = p.poly()
    p.skip()
    if p.pos != len(text):
        p.error("trailing input")
    for word, c in _symbol_words(node).items():
        if c != 0 and not any(isinstance(s, Var) for s in word):
            raise ParseError("term without any variable", 0)
    return node


# -- expansion -------------------------------------------------------------------


def expand_commutators(node):
    """Commutator-free AST: [a,b] -> ab - ba, left-normed recursively."""
    if isinstance(node, Var) or isinstance(node, Coeff):
        return node
    if isinstance(node, Scalar):
        return _scale(expand_commutators(node.body), node.value)
    if isinstance(node, Sum):
        return Sum(tuple(expand_commutators(t) for t in node.terms))
    if isinstance(node, Prod):
        return Prod(tuple(expand_commutators(f) for f in node.factors))
    if isinstance(node, Comm):
        acc = expand_commutators(node.entries[0])
        for e in node.entries[1:]:
            ee = expand_commutators(e)
            acc = Sum((Prod((acc, ee)), _scale(Prod((ee, acc)), Fraction(-1))))
        return acc
    raise TypeError(f"not a polynomial node: {node!r}")


def _symbol_words(node) -> dict:
    """Expand to {word: coefficient} with word a tuple of Var/Coeff."""
    if isinstance(node, Var) or isinstance(node, Coeff):
        return {(node,): _ONE}
    if isinstance(node, Scalar):
        return {w: c * node.value for w, c in _symbol_words(node.body).items()}
    if isinstance(node, Sum):
        out: dict = {}
        for t in node.terms:
            for w, c in _symbol_words(t).items():
                nc = out.get(w, _ZERO) + c
                if nc:
                    out[w] = nc
                else:
                    out.pop(w, None)
        return out
    if isinstance(node, Prod):
        out = {(): _ONE}
        for f in node.factors:
            fw = _symbol_words(f)
            nxt: dict = {}
            for w1, c1 in out.items():
                for w2, c2 in fw.items():
                    w = w1 + w2
                    nc = nxt.get(w, _ZERO) + c1 * c2
                    if nc:
                        nxt[w] = nc
                    else:
                        nxt.pop(w, None)
            out = nxt
        return out
    if isinstance(node, Comm):
        return _symbol_words(expand_commutators(node))
    raise TypeError(f"not a polynomial node: {node!r}")


def variables_of(node) -> set:
    return {s.index for w in _symbol_words(node) for s in w if isinstance(s, Var)}


def renumber_variables(node):
    """Relabel the variables 1..n preserving their index order."""
    mapping = {v: i + 1 for i, v in enumerate(sorted(variables_of(node)))}

    def walk(nd):
        if isinstance(nd, Var):
            return Var(mapping[nd.index])
        if isinstance(nd, Coeff):
            return nd
        if isinstance(nd, Scalar):
            return Scalar(nd.value, walk(nd.body))
        if isinstance(nd, Sum):
            return Sum(tuple(walk(t) for t in nd.terms))
        if isinstance(nd, Prod):
            return Prod(tuple(walk(f) for f in nd.factors))
        if isinstance(nd, Comm):
            return Comm(tuple(walk(e) for e in nd.entries))
        raise TypeError(f"not a polynomial node: {nd!r}")

    return walk(node)


# -- resolution against an action -------------------------------------------------


def resolve_coefficient(action, name: str) -> int:
    """Index of a coefficient symbol in the listed basis; unlisted symbols
    map to the tail sentinel (listed size) for kernel-tail actions."""
    W = action.W
    if name in W.labels:
        return W.labels.index(name)
    if name.startswith("w") and name[1:].isdigit():
        i = int(name[1:])
        if i < W.dim:
            return i
        if action.kernel_tail:
            return W.dim
        raise UnknownCoefficient(f"coefficient {name} outside the listed basis")
    if action.kernel_tail:
        return W.dim
    raise UnknownCoefficient(f"unknown coefficient label {name!r}")


def resolved_words(node, action) -> dict:
    """{word: coefficient} with word a tuple of ints: variable index i > 0,
    coefficient index k stored as -(k+1)."""
    out = {}
    for w, c in _symbol_words(node).items():
        key = tuple(
            s.index if isinstance(s, Var) else -(resolve_coefficient(action, s.name) + 1)
            for s in w
        )
        nc = out.get(key, _ZERO) + c
        if nc:
            out[key] = nc
        else:
            out.pop(key, None)
    return out


# -- multilinearization -----------------------------------------------------------


def _word_multidegree(word):
    deg: dict = {}
    for s in word:
        if isinstance(s, Var):
            deg[s.index] = deg.get(s.index, 0) + 1
    return tuple(sorted(deg.items()))


def multilinearize(node) -> list:
    """Multilinear components of the standard characteristic-zero
    linearization: split into multihomogeneous parts, replace each variable
    of degree k by k fresh copies and keep the part linear in every copy.
    Fresh variables are renumbered 1..n by (original index, copy)."""
    words = _symbol_words(node)
    components: dict = {}
    for w, c in words.items():
        components.setdefault(_word_multidegree(w), {})[w] = c
    out = []
    for deg, part in sorted(components.items()):
        if all(d == 1 for _, d in deg):
            out.append(_words_to_node(part))
            continue
        renumber = {}
        for idx, d in deg:
            for t in range(d):
                renumber[(idx, t)] = len(renumber) + 1
        lin: dict = {}
        for w, c in part.items():
            positions: dict = {}
            for p, s in enumerate(w):
                if isinstance(s, Var):
                    positions.setdefault(s.index, []).append(p)
            choices = []
            for idx, d in deg:
                choices.append(list(permutations(range(d))))
            for combo in product(*choices):
                neww = list(w)
                for (idx, d), perm in zip(deg, combo):
                    for slot, p in enumerate(positions[idx]):
                        neww[p] = Var(renumber[(idx, perm[slot])])
                key = tuple(neww)
                nc = lin.get(key, _ZERO) + c
                if nc:
                    lin[key] = nc
                else:
                    lin.pop(key, None)
        if lin:
            out.append(_words_to_node(lin))
    return out


def _words_to_node(words: dict):
    terms = []
    for w, c in sorted(words.items(), key=lambda kv: _word_sort_key(kv[0])):
        if not w:
            continue
        node = w[0] if len(w) == 1 else Prod(w)
        terms.append(_scale(node, c))
    if not terms:
        return Scalar(_ZERO, Var(1))
    return terms[0] if len(terms) == 1 else Sum(tuple(terms))


def _word_sort_key(word):
    return tuple(
        (0, s.index) if isinstance(s, Var) else (1, s.name) for s in word
    )


# -- monomial basis of the multilinear space --------------------------------------


@dataclass(frozen=True)
class GenMonomial:
    """w_{i0} x_{sigma(1)} w_{i1} ... x_{sigma(n)} w_{in}."""

    n: int
    perm: tuple
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.n + 1:
            raise ValueError("need n+1 coefficient slots")

    def rank(self, s: int) -> int:
        return _perm_rank(self.perm) * s ** (self.n + 1) + _mixed_radix(self.coeffs, s)

    def as_word(self):
        """Resolved-word form (coefficient k as -(k+1), unit slots kept)."""
        out = [-(self.coeffs[0] + 1)]
        for t in range(self.n):
            out.append(self.perm[t])
            out.append(-(self.coeffs[t + 1] + 1))
        return tuple(out)

    def label(self, action=None):
        parts = []
        labels = action.W.labels if action is not None else None

        def wlab(k):
            return labels[k] if labels is not None and k < len(labels) else f"w{k}"

        if self.coeffs[0] != 0 or self.n == 0:
            parts.append(wlab(self.coeffs[0]))
        for t in range(self.n):
            parts.append(f"x{self.perm[t]}")
            if self.coeffs[t + 1] != 0:
                parts.append(wlab(self.coeffs[t + 1]))
        return "*".join(parts)


def _perm_rank(perm):
    n = len(perm)
    items = sorted(perm)
    r = 0
    for i, p in enumerate(perm):
        k = items.index(p)
        r = r * (n - i) + k
        items.pop(k)
    return r


def _mixed_radix(coeffs, s):
    r = 0
    for c in coeffs:
        r = r * s + c
    return r


def enumerate_basis(n: int, s: int):
    """All n! * s^(n+1) monomials in lexicographic (perm, coeffs) order."""
    if n < 1 or s < 1:
        raise ValueError("need n >= 1 and s >= 1")
    for perm in permutations(range(1, n + 1)):
        for coeffs in product(range(s), repeat=n + 1):
            yield GenMonomial(n, perm, coeffs)


def basis_size(n: int, s: int) -> int:
    out = s ** (n + 1)
    for k in range(2, n + 1):
        out *= k
    return out


# -- evaluation --------------------------------------------------------------------


def _eval_word(word, action, assignment):
    s = action.s
    # tail coefficient kills the monomial
    for sym in word:
        if sym < 0 and -(sym + 1) >= s:
            return action.A.zero()
    i = 0
    while i < len(word) and word[i] < 0:
        i += 1
    if i == len(word):
        raise UnassignedVariable("monomial without a variable cannot be evaluated")
    head = word[i]
    if head not in assignment:
        raise UnassignedVariable(f"variable x{head} not assigned")
    val = assignment[head]
    for sym in word[i + 1 :]:
        if sym > 0:
            if sym not in assignment:
                raise UnassignedVariable(f"variable x{sym} not assigned")
            val = val * assignment[sym]
        else:
            val = action.right_act(-(sym + 1), val)
    for j in range(i - 1, -1, -1):
        val = action.left_act(-(word[j] + 1), val)
    return val


def evaluate(node, action, assignment):
    """Evaluate at AlgElements of the acted-on algebra; coefficients act
    through the pairs, tail coefficients annihilate their monomial."""
    assignment = {
        (k.index if isinstance(k, Var) else int(k)): v for k, v in assignment.items()
    }
    total = action.A.zero()
    for word, c in resolved_words(node, action).items():
        v = _eval_word(word, action, assignment)
        total = total + c * v
    return total


def is_identity(node, action):
    """(bool, witness): vanishes under all substitutions; multilinear
    components are checked on all basis tuples, which suffices in
    characteristic zero."""
    A = action.A
    for comp in multilinearize(node):
        vs = sorted(variables_of(comp))
        if not vs:
            continue
        words = resolved_words(comp, action)
        for tup in product(range(A.dim), repeat=len(vs)):
            assignment = {v: A.basis_element(t) for v, t in zip(vs, tup)}
            total = A.zero()
            for word, c in words.items():
                total = total + c * _eval_word(word, action, assignment)
            if not total.is_zero():
                witness = tuple(A.labels[t] for t in tup)
                return False, (vs, witness)
    return True, None


# -- coordinates in the multilinear monomial space ---------------------------------


def vectorize(node, action, n: int) -> dict:
    """Coefficient vector over the degree-n monomial basis, as a sparse
    {rank: Fraction} map.  Coefficient runs between variables merge through
    the coefficient algebra's product; monomials containing tail
    coefficients vanish in these coordinates."""
    W = action.W
    s = W.dim
    if W.unit is None:
        raise UnknownCoefficient("vectorization needs a unital coefficient algebra")
    unit = list(W.unit)
    out: dict = {}
    for word, c in resolved_words(node, action).items():
        if any(sym < 0 and -(sym + 1) >= s for sym in word):
            continue  # tail monomials are identically zero in these coordinates
        runs = [[]]
        perm = []
        for sym in word:
            if sym > 0:
                perm.append(sym)
                runs.append([])
            else:
                runs[-1].append(-(sym + 1))
        if sorted(perm) != list(range(1, n + 1)):
            raise ValueError(
                f"word is not multilinear of degree {n}: variables {perm}"
            )
        merged = []
        for run in runs:
            vec = unit
            for k in run:
                vec = W.multiply_coords(vec, W._unit_vec(k))
            merged.append([(k, v) for k, v in enumerate(vec) if v != 0])
        total = [((), c)]
        for slot in merged:
            total = [(ks + (k,), cc * v) for ks, cc in total for k, v in slot]
        for ks, cc in total:
            r = GenMonomial(n, tuple(perm), ks).rank(s)
            nc = out.get(r, _ZERO) + cc
            if nc:
                out[r] = nc
            else:
                out.pop(r, None)
    return out
