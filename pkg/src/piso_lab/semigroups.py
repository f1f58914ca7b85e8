"""Concrete unital LCM semigroups and their LCM calculus.

Four families are implemented, plus direct products and opposites:

* ``Naturals(k)``  -- the additive monoid N^k, elements are k-tuples of ints
* ``NTimes()``     -- the multiplicative monoid of positive integers
* ``FreeMonoid(n)``-- words over a_1..a_n, elements are tuples of letter indices
* ``DirectProduct`` / ``opposite(...)``

Every implemented semigroup has trivial unit group, so least common
multiples are unique elements rather than classes up to units.  General
LCM semigroups only determine them up to an invertible factor.

Conventions: ``left_lcm(x, y)`` is ``z`` with ``Px ∩ Py = Pz`` and
``right_lcm(x, y)`` is ``z`` with ``xP ∩ yP = zP``.  ``None`` stands for
an empty intersection.
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from typing import Any, Iterable, Optional, Sequence

Element = Any


class DescriptorError(ValueError):
    """An element does not have the shape its semigroup expects."""


class WindowSpecError(ValueError):
    """A window specification string could not be parsed."""


class Semigroup:
    """Base class; subclasses are frozen dataclasses, so equal descriptors compare equal."""

    abelian = False

    @property
    def identity(self) -> Element:
        raise NotImplementedError

    def conforms(self, x) -> bool:
        raise NotImplementedError

    def multiply(self, x, y):
        raise NotImplementedError

    def left_lcm(self, x, y):
        raise NotImplementedError

    def right_lcm(self, x, y):
        raise NotImplementedError

    def left_divide(self, r, y):
        """``s`` with ``r = s y``, or None when ``r`` is not in ``Py``."""
        raise NotImplementedError

    def right_divide(self, r, y):
        """``s`` with ``r = y s``, or None when ``r`` is not in ``yP``."""
        raise NotImplementedError

    def format(self, x) -> str:
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def coerce(self, x):
        """Accept a few convenient spellings (ints for N, strings for words)."""
        if isinstance(x, str):
            return self.parse(x)
        return x

    def check(self, x):
        x = self.coerce(x)
        if not self.conforms(x):
            raise DescriptorError(f"{x!r} is not an element of {self}")
        return x

    def is_unit(self, x) -> bool:
        return x == self.identity

    def name(self) -> str:
        return str(self)


@dataclass(frozen=True)
class Naturals(Semigroup):
    k: int = 1
    abelian = True

    def __post_init__(self):
        if self.k < 1:
            raise DescriptorError("N^k needs k >= 1")

    def __str__(self):
        return "N" if self.k == 1 else f"N^{self.k}"

    @property
    def identity(self):
        return (0,) * self.k

    def coerce(self, x):
        if isinstance(x, int) and not isinstance(x, bool) and self.k == 1:
            return (x,)
        if isinstance(x, list):
            return tuple(x)
        return super().coerce(x)

    def conforms(self, x):
        return (isinstance(x, tuple) and len(x) == self.k
                and all(isinstance(a, int) and a >= 0 for a in x))

    def multiply(self, x, y):
        return tuple(a + b for a, b in zip(x, y))

    def left_lcm(self, x, y):
        return tuple(max(a, b) for a, b in zip(x, y))

    right_lcm = left_lcm

    def left_divide(self, r, y):
        if all(a >= b for a, b in zip(r, y)):
            return tuple(a - b for a, b in zip(r, y))
        return None

    right_divide = left_divide

    def format(self, x):
        if self.k == 1:
            return str(x[0])
        return "(" + ",".join(map(str, x)) + ")"

    def parse(self, text):
        parts = text.strip().strip("()").split(",")
        try:
            return tuple(int(p) for p in parts)
        except ValueError:
            raise DescriptorError(f"cannot parse {text!r} as an element of {self}") from None


@dataclass(frozen=True)
class NTimes(Semigroup):
    abelian = True

    def __str__(self):
        return "N^x"

    @property
    def identity(self):
        return 1

    def conforms(self, x):
        return isinstance(x, int) and not isinstance(x, bool) and x >= 1

    def multiply(self, x, y):
        return x * y

    def left_lcm(self, x, y):
        return math.lcm(x, y)

    right_lcm = left_lcm

    def left_divide(self, r, y):
        return r // y if r % y == 0 else None

    right_divide = left_divide

    def format(self, x):
        return str(x)

    def parse(self, text):
        try:
            return int(text)
        except ValueError:
            raise DescriptorError(f"cannot parse {text!r} as a positive integer") from None


_EMPTY_WORD = "ε"


@dataclass(frozen=True)
class FreeMonoid(Semigroup):
    n: int = 2

    def __post_init__(self):
        if self.n < 2:
            raise DescriptorError("free monoid needs at least 2 generators")

    def __str__(self):
        return f"F_{self.n}^+"

    @property
    def identity(self):
        return ()

    def generator(self, i: int):
        """The letter a_i, 1-based as in the usual notation."""
        return (i - 1,)

    def coerce(self, x):
        if isinstance(x, list):
            return tuple(x)
        return super().coerce(x)

    def conforms(self, x):
        return isinstance(x, tuple) and all(isinstance(a, int) and 0 <= a < self.n for a in x)

    def multiply(self, x, y):
        return x + y

    def left_lcm(self, x, y):
        # Px is the set of words ending in x
        if len(x) < len(y):
            x, y = y, x
        if x[len(x) - len(y):] == y:
            return x
        return None

    def right_lcm(self, x, y):
        if len(x) < len(y):
            x, y = y, x
        if x[:len(y)] == y:
            return x
        return None

    def left_divide(self, r, y):
        if len(r) >= len(y) and r[len(r) - len(y):] == y:
            return r[:len(r) - len(y)]
        return None

    def right_divide(self, r, y):
        if r[:len(y)] == y:
            return r[len(y):]
        return None

    def format(self, x):
        if not x:
            return _EMPTY_WORD
        if self.n <= 26:
            return "".join(chr(ord("a") + i) for i in x)
        return ".".join(f"a{i + 1}" for i in x)

    def parse(self, text):
        text = text.strip()
        if text in ("", _EMPTY_WORD, "e"):
            return ()
        if "." in text or (self.n > 26 and text.startswith("a")):
            letters = [int(t[1:]) - 1 for t in text.split(".")]
        else:
            letters = [ord(c) - ord("a") for c in text]
        word = tuple(letters)
        if not self.conforms(word):
            raise DescriptorError(f"{text!r} is not a word over {self.n} letters")
        return word


@dataclass(frozen=True)
class DirectProduct(Semigroup):
    factors: tuple = ()

    def __post_init__(self):
        if not self.factors:
            raise DescriptorError("direct product needs at least one factor")
        object.__setattr__(self, "factors", tuple(self.factors))

    @property
    def abelian(self):
        return all(f.abelian for f in self.factors)

    def __str__(self):
        return " x ".join(f"({f})" for f in self.factors)

    @property
    def identity(self):
        return tuple(f.identity for f in self.factors)

    def coerce(self, x):
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, (tuple, list)) and len(x) == len(self.factors):
            return tuple(f.coerce(a) for f, a in zip(self.factors, x))
        return x

    def conforms(self, x):
        return (isinstance(x, tuple) and len(x) == len(self.factors)
                and all(f.conforms(a) for f, a in zip(self.factors, x)))

    def multiply(self, x, y):
        return tuple(f.multiply(a, b) for f, a, b in zip(self.factors, x, y))

    def _componentwise(self, op, x, y):
        out = []
        for f, a, b in zip(self.factors, x, y):
            c = getattr(f, op)(a, b)
            if c is None:
                return None
            out.append(c)
        return tuple(out)

    def left_lcm(self, x, y):
        return self._componentwise("left_lcm", x, y)

    def right_lcm(self, x, y):
        return self._componentwise("right_lcm", x, y)

    def left_divide(self, r, y):
        return self._componentwise("left_divide", r, y)

    def right_divide(self, r, y):
        return self._componentwise("right_divide", r, y)

    def format(self, x):
        return "(" + "|".join(f.format(a) for f, a in zip(self.factors, x)) + ")"

    def parse(self, text):
        parts = text.strip()
        if parts.startswith("(") and parts.endswith(")"):
            parts = parts[1:-1]
        items = parts.split("|")
        if len(items) != len(self.factors):
            raise DescriptorError(f"cannot parse {text!r} as an element of {self}")
        return tuple(f.parse(t) for f, t in zip(self.factors, items))


@dataclass(frozen=True)
class Opposite(Semigroup):
    """P^o: same elements, product x•y = yx.  Build through :func:`opposite`."""

    inner: Semigroup = None

    @property
    def abelian(self):
        return self.inner.abelian

    def __str__(self):
        return f"({self.inner})^o"

    @property
    def identity(self):
        return self.inner.identity

    def coerce(self, x):
        return self.inner.coerce(x)

    def conforms(self, x):
        return self.inner.conforms(x)

    def multiply(self, x, y):
        return self.inner.multiply(y, x)

    def left_lcm(self, x, y):
        return self.inner.right_lcm(x, y)

    def right_lcm(self, x, y):
        return self.inner.left_lcm(x, y)

    def left_divide(self, r, y):
        return self.inner.right_divide(r, y)

    def right_divide(self, r, y):
        return self.inner.left_divide(r, y)

    def format(self, x):
        return self.inner.format(x)

    def parse(self, text):
        return self.inner.parse(text)


def opposite(D: Semigroup) -> Semigroup:
    if isinstance(D, Opposite):
        return D.inner
    return Opposite(D)


# -- module level operations ------------------------------------------------

def multiply(D: Semigroup, x, y):
    return D.multiply(D.check(x), D.check(y))


def left_lcm(D: Semigroup, x, y):
    """z with Px ∩ Py = Pz, or None if the intersection is empty."""
    return D.left_lcm(D.check(x), D.check(y))


def right_lcm(D: Semigroup, x, y):
    """z with xP ∩ yP = zP, or None if the intersection is empty."""
    return D.right_lcm(D.check(x), D.check(y))


def ideal_quotient(D: Semigroup, r, y, side: str = "left"):
    """Witness of membership of ``r`` in a principal ideal of ``y``.

    ``side="left"`` tests ``r ∈ Py`` and returns ``s`` with ``r = s y``;
    ``side="right"`` tests ``r ∈ yP`` and returns ``s`` with ``r = y s``.
    """
    r, y = D.check(r), D.check(y)
    if side in ("left", "Py"):
        return D.left_divide(r, y)
    if side in ("right", "yP"):
        return D.right_divide(r, y)
    raise ValueError(f"unknown side {side!r}")


def sigma(D: Semigroup, F: Iterable):
    """Iterated right LCM of a finite nonempty set, None if some partial fold is empty."""
    items = [D.check(x) for x in F]
    if not items:
        raise ValueError("sigma of an empty set is undefined")
    acc = items[0]
    for x in items[1:]:
        acc = D.right_lcm(acc, x)
        if acc is None:
            return None
    return acc


def is_unit(D: Semigroup, x) -> bool:
    return D.is_unit(D.check(x))


# -- windows ---------------------------------------------------------------

@dataclass(frozen=True)
class WindowSpec:
    """Finite test window of a semigroup.

    ``kind`` is one of ``Nk``, ``Free``, ``NTimes``, ``Prod``, ``Op``;
    ``params`` holds the parsed integers and ``parts`` nested specs.
    """

    kind: str
    params: tuple = ()
    parts: tuple = ()

    @property
    def descriptor(self) -> Semigroup:
        p = dict(self.params)
        if self.kind == "Nk":
            return Naturals(p["k"])
        if self.kind == "Free":
            return FreeMonoid(p["n"])
        if self.kind == "NTimes":
            return NTimes()
        if self.kind == "Prod":
            return DirectProduct(tuple(s.descriptor for s in self.parts))
        return opposite(self.parts[0].descriptor)

    def elements(self) -> list:
        p = dict(self.params)
        if self.kind == "Nk":
            return list(itertools.product(range(p["max"] + 1), repeat=p["k"]))
        if self.kind == "Free":
            words = [()]
            for length in range(1, p["len"] + 1):
                words.extend(itertools.product(range(p["n"]), repeat=length))
            return words
        if self.kind == "NTimes":
            out = set()
            primes = p["primes"]
            for exps in itertools.product(range(p["maxexp"] + 1), repeat=len(primes)):
                out.add(math.prod(q ** e for q, e in zip(primes, exps)))
            return sorted(out)
        if self.kind == "Prod":
            return list(itertools.product(*(s.elements() for s in self.parts)))
        return self.parts[0].elements()

    def scaled(self, factor: int = 2) -> "WindowSpec":
        """Same family with every size parameter multiplied; used for basis windows."""
        if self.kind in ("Prod", "Op"):
            return WindowSpec(self.kind, self.params, tuple(s.scaled(factor) for s in self.parts))
        p = dict(self.params)
        for key in ("max", "len", "maxexp"):
            if key in p:
                p[key] = p[key] * factor
        return WindowSpec(self.kind, tuple(sorted(p.items())), ())

    def __str__(self):
        p = dict(self.params)
        if self.kind == "Nk":
            return f"Nk:k={p['k']},max={p['max']}"
        if self.kind == "Free":
            return f"Free:n={p['n']},len={p['len']}"
        if self.kind == "NTimes":
            return f"NTimes:primes={','.join(map(str, p['primes']))};maxexp={p['maxexp']}"
        if self.kind == "Prod":
            return "Prod:" + "|".join(map(str, self.parts))
        return f"Op:{self.parts[0]}"


def _int_field(text, name):
    m = re.fullmatch(rf"\s*{name}\s*=\s*(\d+)\s*", text)
    if not m:
        raise WindowSpecError(f"expected {name}=<int>, got {text!r}")
    return int(m.group(1))


def parse_window_spec(text: str) -> WindowSpec:
    """Parse ``Nk:k=2,max=4``, ``Free:n=2,len=3``, ``NTimes:primes=2,3;maxexp=2``,
    ``Prod:<spec>|<spec>`` or ``Op:<spec>``.

    Product factors are split on ``|``, so a product cannot nest another product
    except as its last factor's ``Op:`` wrapper.
    """
    text = text.strip()
    head, sep, body = text.partition(":")
    if not sep:
        raise WindowSpecError(f"missing ':' in window spec {text!r}")
    if head == "Nk":
        fields = body.split(",")
        if len(fields) != 2:
            raise WindowSpecError(f"Nk spec needs k and max: {text!r}")
        k, mx = _int_field(fields[0], "k"), _int_field(fields[1], "max")
        if k < 1:
            raise WindowSpecError("k must be >= 1")
        return WindowSpec("Nk", (("k", k), ("max", mx)))
    if head == "Free":
        fields = body.split(",")
        if len(fields) != 2:
            raise WindowSpecError(f"Free spec needs n and len: {text!r}")
        n, ln = _int_field(fields[0], "n"), _int_field(fields[1], "len")
        if n < 2:
            raise WindowSpecError("n must be >= 2")
        return WindowSpec("Free", (("len", ln), ("n", n)))
    if head == "NTimes":
        m = re.fullmatch(r"\s*primes\s*=\s*([\d,\s]+);\s*maxexp\s*=\s*(\d+)\s*", body)
        if not m:
            raise WindowSpecError(f"bad NTimes spec {text!r}")
        primes = tuple(int(t) for t in m.group(1).split(",") if t.strip())
        if not primes or any(q < 2 for q in primes):
            raise WindowSpecError("primes must be integers >= 2")
        return WindowSpec("NTimes", (("maxexp", int(m.group(2))), ("primes", primes)))
    if head == "Prod":
        parts = body.split("|")
        if len(parts) < 2:
            raise WindowSpecError(f"product needs at least two factors: {text!r}")
        return WindowSpec("Prod", (), tuple(parse_window_spec(p) for p in parts))
    if head == "Op":
        return WindowSpec("Op", (), (parse_window_spec(body),))
    raise WindowSpecError(f"unknown window kind {head!r}")


def enumerate_window(D: Optional[Semigroup], spec) -> list:
    """Deterministic duplicate-free list of window elements (always contains e)."""
    if isinstance(spec, str):
        spec = parse_window_spec(spec)
    if D is not None and spec.descriptor != D:
        raise WindowSpecError(f"window {spec} does not describe {D}")
    return spec.elements()


def sort_key(x):
    """Order-compatible key for mixed element shapes (used for report ordering)."""
    if isinstance(x, tuple):
        return (1, len(x), tuple(sort_key(a) for a in x))
    return (0, x)


def format_elements(D: Semigroup, xs: Sequence) -> list:
    return [D.format(x) for x in xs]
