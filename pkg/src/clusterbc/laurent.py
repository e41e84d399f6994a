"""Sparse Laurent polynomials in u_1..u_n (any sign) and y_1..y_n (nonnegative)."""

from __future__ import annotations

import re
from collections.abc import Iterable, Mapping, Sequence

Exp = tuple[int, ...]


class RankError(ValueError):
    pass


class LaurentPoly:
    """Immutable integer Laurent polynomial.

    A term is keyed by a tuple of length 2n: the first n entries are the
    u-exponents, the last n the y-exponents.
    """

    __slots__ = ("_rank", "_terms", "_hash")

    def __init__(self, rank: int, terms: Mapping[Exp, int] | None = None):
        if rank < 0:
            raise ValueError("rank must be nonnegative")
        clean: dict[Exp, int] = {}
        for key, c in (terms or {}).items():
            key = tuple(int(e) for e in key)
            if len(key) != 2 * rank:
                raise RankError(f"exponent vector {key} does not have length {2 * rank}")
            if any(e < 0 for e in key[rank:]):
                raise ValueError(f"negative y-exponent in {key}")
            if c:
                clean[key] = clean.get(key, 0) + int(c)
                if clean[key] == 0:
                    del clean[key]
        self._rank = rank
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, rank: int, terms: dict[Exp, int]) -> LaurentPoly:
        # trusted constructor: keys already validated, no zero coefficients
        p = cls.__new__(cls)
        p._rank = rank
        p._terms = terms
        p._hash = None
        return p

    # constructors

    @classmethod
    def zero(cls, rank: int) -> LaurentPoly:
        return cls._raw(rank, {})

    @classmethod
    def one(cls, rank: int) -> LaurentPoly:
        return cls.constant(rank, 1)

    @classmethod
    def constant(cls, rank: int, c: int) -> LaurentPoly:
        return cls._raw(rank, {(0,) * (2 * rank): int(c)} if c else {})

    @classmethod
    def monomial(
        cls,
        rank: int,
        u: Sequence[int] | None = None,
        y: Sequence[int] | None = None,
        coeff: int = 1,
    ) -> LaurentPoly:
        u = tuple(u) if u is not None else (0,) * rank
        y = tuple(y) if y is not None else (0,) * rank
        return cls(rank, {u + y: coeff})

    @classmethod
    def u(cls, rank: int, i: int) -> LaurentPoly:
        """The variable u_i (1-based)."""
        e = [0] * (2 * rank)
        e[i - 1] = 1
        return cls._raw(rank, {tuple(e): 1})

    @classmethod
    def y(cls, rank: int, i: int) -> LaurentPoly:
        """The variable y_i (1-based)."""
        e = [0] * (2 * rank)
        e[rank + i - 1] = 1
        return cls._raw(rank, {tuple(e): 1})

    # accessors

    @property
    def rank(self) -> int:
        return self._rank

    @property
    def terms(self) -> dict[Exp, int]:
        return dict(self._terms)

    def items(self) -> list[tuple[Exp, int]]:
        """Terms in canonical (graded-lex, descending) order."""
        return sorted(self._terms.items(), key=lambda kv: _order_key(kv[0]))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_y_only(self) -> bool:
        n = self._rank
        return all(not any(k[:n]) for k in self._terms)

    def constant_term(self) -> int:
        return self._terms.get((0,) * (2 * self._rank), 0)

    def coefficients_positive(self) -> bool:
        return all(c > 0 for c in self._terms.values())

    # ring structure

    def _check(self, other: LaurentPoly) -> None:
        if not isinstance(other, LaurentPoly):
            raise TypeError(f"expected LaurentPoly, got {type(other).__name__}")
        if other._rank != self._rank:
            raise RankError(f"rank mismatch: {self._rank} vs {other._rank}")

    def _coerce(self, other) -> LaurentPoly:
        if isinstance(other, int):
            return LaurentPoly.constant(self._rank, other)
        self._check(other)
        return other

    def __add__(self, other) -> LaurentPoly:
        other = self._coerce(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return LaurentPoly._raw(self._rank, out)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly._raw(self._rank, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other) -> LaurentPoly:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> LaurentPoly:
        return self._coerce(other) - self

    def __mul__(self, other) -> LaurentPoly:
        other = self._coerce(other)
        out: dict[Exp, int] = {}
        for ka, ca in self._terms.items():
            for kb, cb in other._terms.items():
                k = tuple([x + y for x, y in zip(ka, kb)])
                s = out.get(k, 0) + ca * cb
                if s:
                    out[k] = s
                else:
                    del out[k]
        return LaurentPoly._raw(self._rank, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> LaurentPoly:
        if e < 0:
            return self.inverse_monomial() ** (-e)
        result = LaurentPoly.one(self._rank)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse_monomial(self) -> LaurentPoly:
        """Inverse of a unit (a monomial with coefficient +-1 and no y)."""
        if not self.is_monomial():
            raise ValueError("only monomials can be inverted")
        (k, c), = self._terms.items()
        if c not in (1, -1) or any(k[self._rank:]):
            raise ValueError(f"{self} is not a unit")
        return LaurentPoly._raw(self._rank, {tuple(-e for e in k): c})

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(self._rank, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._rank == other._rank and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._rank, frozenset(self._terms.items())))
        return self._hash

    # evaluation

    def substitute(
        self,
        u_images: Sequence[LaurentPoly] | None = None,
        y_images: Sequence[LaurentPoly] | None = None,
    ) -> LaurentPoly:
        """Evaluate at the given images; ``None`` means the identity map."""
        return substitute(self, u_images, y_images)

    def specialize_u(self) -> LaurentPoly:
        """Set every u_i = 1."""
        n = self._rank
        out: dict[Exp, int] = {}
        zero = (0,) * n
        for k, c in self._terms.items():
            key = zero + k[n:]
            s = out.get(key, 0) + c
            if s:
                out[key] = s
            else:
                del out[key]
        return LaurentPoly._raw(n, out)

    def degrees(self, top: Sequence[Sequence[int]]) -> set[tuple[int, ...]]:
        """Set of degrees under deg(u_i) = e_i, deg(y_j) = -(column j of top)."""
        n = self._rank
        out = set()
        for k in self._terms:
            u, y = k[:n], k[n:]
            out.add(tuple(u[i] - sum(top[i][j] * y[j] for j in range(n)) for i in range(n)))
        return out

    # rendering

    def __str__(self) -> str:
        return canonical_text(self)

    def __repr__(self) -> str:
        return f"LaurentPoly({self._rank}, {canonical_text(self)!r})"

    def to_json(self) -> list[dict]:
        n = self._rank
        return [{"coeff": c, "u": list(k[:n]), "y": list(k[n:])} for k, c in self.items()]

    @classmethod
    def from_json(cls, rank: int, data: Iterable[Mapping]) -> LaurentPoly:
        return cls(rank, {tuple(t["u"]) + tuple(t["y"]): t["coeff"] for t in data})


def _order_key(k: Exp) -> tuple:
    return (-sum(k), tuple(-e for e in k))


def add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a + b


def mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def substitute(
    p: LaurentPoly,
    u_images: Sequence[LaurentPoly] | None = None,
    y_images: Sequence[LaurentPoly] | None = None,
) -> LaurentPoly:
    """Ring homomorphism sending u_i, y_i to the given images.

    Negative u-exponents need monomial images; anything else raises ValueError.
    """
    n = p.rank
    images = []
    for seq, name in ((u_images, "u"), (y_images, "y")):
        if seq is None:
            seq = [getattr(LaurentPoly, name)(n, i + 1) for i in range(n)]
        if len(seq) != n:
            raise RankError(f"expected {n} {name}-images, got {len(seq)}")
        images.extend(seq)
    rank = images[0].rank if images else n
    for img in images:
        if img.rank != rank:
            raise RankError("images must share one rank")
    cache: dict[tuple[int, int], LaurentPoly] = {}

    def power(i: int, e: int) -> LaurentPoly:
        if (i, e) not in cache:
            img = images[i]
            if e < 0 and not img.is_monomial():
                raise ValueError("negative exponent applied to a non-monomial image")
            if e < 0:
                cache[(i, e)] = img.inverse_monomial() ** (-e)
            else:
                cache[(i, e)] = img ** e
        return cache[(i, e)]

    total = LaurentPoly.zero(rank)
    for k, c in p._terms.items():
        term = LaurentPoly.constant(rank, c)
        for i, e in enumerate(k):
            if e:
                term = term * power(i, e)
        total = total + term
    return total


def _fmt_var(name: str, idx: int, e: int) -> str:
    return f"{name}{idx}" if e == 1 else f"{name}{idx}^{e}"


def canonical_text(p: LaurentPoly) -> str:
    """Deterministic rendering, e.g. ``"y1*y3^2 + 2*y3 + 1"``."""
    if not p:
        return "0"
    n = p.rank
    parts = []
    for k, c in p.items():
        factors = [_fmt_var("u", i + 1, e) for i, e in enumerate(k[:n]) if e]
        factors += [_fmt_var("y", i + 1, e) for i, e in enumerate(k[n:]) if e]
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = f"{mag}*" + "*".join(factors)
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


_FACTOR = re.compile(r"^([uy])(\d+)(?:\^(-?\d+))?$")


def parse(text: str, rank: int) -> LaurentPoly:
    """Inverse of :func:`canonical_text` (accepts any term order)."""
    s = text.strip()
    if s == "0":
        return LaurentPoly.zero(rank)
    # split on +/- that are not part of an exponent
    tokens = re.split(r"(?<!\^)\s*([+-])\s*", s)
    if tokens and tokens[0] == "":
        tokens = tokens[1:]
    else:
        tokens = ["+"] + tokens
    if len(tokens) % 2:
        raise ValueError(f"cannot parse {text!r}")
    out: dict[Exp, int] = {}
    for sign, body in zip(tokens[::2], tokens[1::2]):
        coeff = 1
        key = [0] * (2 * rank)
        for f in body.split("*"):
            f = f.strip()
            if not f:
                raise ValueError(f"empty factor in {text!r}")
            if f.isdigit():
                coeff *= int(f)
                continue
            m = _FACTOR.match(f)
            if not m:
                raise ValueError(f"bad factor {f!r} in {text!r}")
            idx = int(m.group(2))
            if not 1 <= idx <= rank:
                raise ValueError(f"variable index {idx} out of range for rank {rank}")
            e = int(m.group(3)) if m.group(3) else 1
            key[(idx - 1) + (rank if m.group(1) == "y" else 0)] += e
        if sign == "-":
            coeff = -coeff
        k = tuple(key)
        out[k] = out.get(k, 0) + coeff
    return LaurentPoly(rank, out)
