"""Sparse multivariate polynomials with exact rational coefficients.

A polynomial lives over a :class:`Universe`, an ordered tuple of variable
names.  Monomials are dense exponent tuples indexed by that order, and the
coefficient map never stores zeros.
"""
from __future__ import annotations

import ast
from fractions import Fraction
from typing import Iterable, Mapping, Union

Number = Union[int, Fraction]

# Sentinel degree of the zero polynomial, which is homogeneous of every degree.
ANY_DEGREE = "any"


class Universe:
    """An ordered collection of variable names."""

    def __init__(self, names: Iterable[str]):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names in {self.names}")
        self.index = {n: i for i, n in enumerate(self.names)}

    def __len__(self) -> int:
        return len(self.names)

    def __contains__(self, name: str) -> bool:
        return name in self.index

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Universe) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"Universe({', '.join(self.names)})"

    def extend(self, names: Iterable[str]) -> "Universe":
        """Universe with extra names appended (existing ones are skipped)."""
        extra = [n for n in names if n not in self.index]
        return Universe(self.names + tuple(extra))

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def const(self, c: Number) -> "Polynomial":
        c = Fraction(c)
        return Polynomial(self, {(0,) * len(self): c} if c else {})

    def var(self, name: str) -> "Polynomial":
        try:
            i = self.index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None
        e = [0] * len(self)
        e[i] = 1
        return Polynomial(self, {tuple(e): Fraction(1)})

    def vars(self, *names: str) -> list["Polynomial"]:
        return [self.var(n) for n in names]


class Polynomial:
    """Polynomial with Fraction coefficients over a fixed universe.

    Instances are treated as immutable.  Arithmetic accepts ints and Fractions
    on either side; mixing universes raises ``ValueError``.
    """

    __slots__ = ("universe", "terms")

    def __init__(self, universe: Universe, terms: Mapping[tuple, Number]):
        n = len(universe)
        clean = {}
        for e, c in terms.items():
            if len(e) != n:
                raise ValueError(f"exponent {e} has wrong length for {universe}")
            if any(k < 0 for k in e):
                raise ValueError(f"negative exponent {e}")
            if c:
                clean[tuple(e)] = Fraction(c)
        self.universe = universe
        self.terms = clean

    @classmethod
    def _raw(cls, universe: Universe, terms: dict) -> "Polynomial":
        p = object.__new__(cls)
        p.universe = universe
        p.terms = terms
        return p

    # -- coercion ---------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.universe != self.universe:
                raise ValueError(
                    f"universe mismatch: {self.universe} vs {other.universe}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.universe.const(other)
        return NotImplemented

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial._raw(self.universe, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.universe, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return self.universe.zero()
            return Polynomial._raw(self.universe,
                                   {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Polynomial._raw(self.universe, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("polynomial division by zero")
            return self * (Fraction(1) / other)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = self.universe.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.universe.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.universe == other.universe and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.universe, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- inspection -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.universe), Fraction(0))

    def variables(self) -> set[str]:
        names = self.universe.names
        used = set()
        for e in self.terms:
            used.update(names[i] for i, k in enumerate(e) if k)
        return used

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def linear_part(self) -> dict[str, Fraction]:
        """Coefficients of the degree-one monomials, keyed by variable name."""
        names = self.universe.names
        out = {}
        for e, c in self.terms.items():
            if sum(e) == 1:
                out[names[e.index(1)]] = c
        return out

    def weighted_degree(self, weights: Mapping[str, int]):
        """Common weighted degree, ``ANY_DEGREE`` for zero, ``None`` if mixed."""
        if not self.terms:
            return ANY_DEGREE
        w = [weights[n] for n in self.universe.names]
        degs = {sum(a * b for a, b in zip(e, w)) for e in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def is_homogeneous(self, weights: Mapping[str, int], degree: int | None = None) -> bool:
        d = self.weighted_degree(weights)
        if d is None:
            return False
        return d == ANY_DEGREE or degree is None or d == degree

    # -- evaluation and substitution -------------------------------------
    def evaluate(self, point: Mapping[str, Number]) -> Fraction:
        """Value at a point; every variable that occurs must be assigned."""
        names = self.universe.names
        vals = []
        for i, n in enumerate(names):
            vals.append(point.get(n))
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for i, k in enumerate(e):
                if k:
                    v = vals[i]
                    if v is None:
                        raise KeyError(f"variable {names[i]!r} not assigned")
                    term *= Fraction(v) ** k
            total += term
        return total

    def substitute(self, mapping: Mapping[str, "Polynomial | Number"],
                   target: Universe | None = None) -> "Polynomial":
        """Simultaneous substitution of variables by polynomials or numbers.

        Unmapped variables are carried over by name into ``target`` (default:
        this polynomial's universe).
        """
        target = target or self.universe
        names = self.universe.names
        images = []
        for n in names:
            if n in mapping:
                v = mapping[n]
                if isinstance(v, Polynomial):
                    if v.universe != target:
                        raise ValueError(f"image of {n!r} is over a different universe")
                else:
                    v = target.const(v)
                images.append(v)
            elif n in target:
                images.append(target.var(n))
            else:
                images.append(None)
        cache: dict = {}

        def power(i: int, k: int) -> Polynomial:
            key = (i, k)
            if key not in cache:
                cache[key] = images[i] if k == 1 else power(i, k - 1) * images[i]
            return cache[key]

        out = target.zero()
        for e, c in self.terms.items():
            term = target.const(c)
            for i, k in enumerate(e):
                if k:
                    if images[i] is None:
                        raise ValueError(f"variable {names[i]!r} missing from target universe")
                    term = term * power(i, k)
            out = out + term
        return out

    def to_universe(self, target: Universe) -> "Polynomial":
        """Re-express over another universe, matching variables by name."""
        if target == self.universe:
            return self
        idx = []
        for n in self.universe.names:
            idx.append(target.index.get(n))
        out = {}
        for e, c in self.terms.items():
            new = [0] * len(target)
            for i, k in enumerate(e):
                if k:
                    if idx[i] is None:
                        raise ValueError(
                            f"variable {self.universe.names[i]!r} not in target universe")
                    new[idx[i]] = k
            out[tuple(new)] = c
        return Polynomial._raw(target, out)

    def diff(self, name: str) -> "Polynomial":
        i = self.universe.index[name]
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                ne = list(e)
                ne[i] = k - 1
                out[tuple(ne)] = c * k
        return Polynomial._raw(self.universe, out)

    def shift(self, offsets: Mapping[str, Number]) -> "Polynomial":
        """Substitute ``x -> x + offsets[x]``."""
        mapping = {n: self.universe.var(n) + v for n, v in offsets.items() if v}
        return self.substitute(mapping) if mapping else self

    # -- text -------------------------------------------------------------
    def __str__(self) -> str:
        if not self.terms:
            return "0"
        names = self.universe.names
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}"
                for i, k in enumerate(e) if k)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        sign, body = parts[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"Polynomial({self})"


# -- expression evaluation ----------------------------------------------------

_BINOPS = {
    ast.Add: lambda a, b: a + b,
    ast.Sub: lambda a, b: a - b,
    ast.Mult: lambda a, b: a * b,
    ast.Div: lambda a, b: a / b,
}


def evaluate_expression(text: str, env: Mapping[str, object]):
    """Evaluate an arithmetic expression over the values in ``env``.

    Supports ``+ - * / ^ **``, parentheses, integer and decimal-free rational
    literals.  Values may be Fractions, ints or Polynomials.
    """
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse {text!r}: {exc.msg}") from None

    def walk(node):
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return Fraction(node.value)
        if isinstance(node, ast.Name):
            if node.id not in env:
                raise ValueError(f"unknown symbol {node.id!r} in {text!r}")
            return env[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = walk(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                exp = walk(node.right)
                if not (isinstance(exp, Fraction) and exp.denominator == 1 and exp >= 0):
                    raise ValueError(f"exponent must be a non-negative integer in {text!r}")
                base = walk(node.left)
                return base ** int(exp)
            op = _BINOPS.get(type(node.op))
            if op is not None:
                return op(walk(node.left), walk(node.right))
        raise ValueError(f"unsupported syntax in {text!r}")

    return walk(tree)


def parse_polynomial(text: str, universe: Universe,
                     constants: Mapping[str, Number] | None = None) -> Polynomial:
    """Parse text such as ``'p1*q1 - 1/2*p4*t3^2'`` into a polynomial.

    Names in ``constants`` are replaced by their numeric values; every other
    name must belong to ``universe``.
    """
    env: dict = {n: universe.var(n) for n in universe.names}
    for k, v in (constants or {}).items():
        env[k] = Fraction(v)
    value = evaluate_expression(text, env)
    if isinstance(value, Polynomial):
        return value
    return universe.const(value)
