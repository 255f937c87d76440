"""Sparse rewriting onto PBW normal forms.

A :class:`Presentation` is an ordered list of generators X_0 < X_1 < ... with
a straightening rule ``X_j X_i -> sum c * (normal monomial)`` for every
j > i.  Normal monomials are exponent tuples read as X_0^e0 X_1^e1 ...;
exponents may be negative on generators flagged invertible.  Optional power
rules ``X_g^n -> rhs`` cut exponents down, which is how quotient algebras
such as B_{alpha,beta} are modelled.

Products of normal monomials are memoized per presentation.  The cache is a
plain dict filled with pure values, so concurrent readers only ever see
complete entries.
"""
from __future__ import annotations

import random
import sys
import threading
from typing import Iterable, Mapping, Sequence

from .coeffq import ONE, ZERO, RatQ
from .errors import (
    FuelExhausted,
    InvalidPresentation,
    NonInvertibleNegativePower,
    UnderivableInverseRule,
)

Mono = tuple
DEFAULT_FUEL = 10**6

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


def grade(m: Mono) -> int:
    return sum(abs(e) for e in m)


def mono_key(m: Mono):
    """Sort key of the graded lexicographic order."""
    return (grade(m), m)


def _add_into(acc: dict, m: Mono, c: RatQ) -> None:
    v = acc.get(m)
    if v is None:
        if c:
            acc[m] = c
    else:
        v = v + c
        if v:
            acc[m] = v
        else:
            del acc[m]


class Elem:
    """A finite linear combination of normal monomials of one presentation."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: "Presentation", terms: Mapping[Mono, RatQ] | None = None):
        self.alg = alg
        if terms is None:
            self.terms = {}
        else:
            self.terms = {m: c for m, c in terms.items() if c}

    # --- views -------------------------------------------------------------

    def items(self):
        """Terms in ascending graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: mono_key(t[0]))

    def __iter__(self):
        return iter(self.items())

    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def coeff(self, m: Mono) -> RatQ:
        return self.terms.get(tuple(m), ZERO)

    def constant_term(self) -> RatQ:
        return self.coeff(self.alg.unit_mono)

    def degree(self) -> int:
        return max((grade(m) for m in self.terms), default=-1)

    def support(self) -> list:
        return [m for m, _ in self.items()]

    def scalar_multiple_of(self, other: "Elem") -> RatQ | None:
        """Return c with ``self == c * other``, or None."""
        if not other.terms:
            return ZERO if not self.terms else None
        if self.terms.keys() != other.terms.keys():
            return None
        m0 = next(iter(other.terms))
        c = self.terms[m0] / other.terms[m0]
        if all(self.terms[m] == c * v for m, v in other.terms.items()):
            return c
        return None

    # --- arithmetic --------------------------------------------------------

    def _check(self, other: "Elem") -> None:
        if other.alg is not self.alg:
            raise ValueError(
                f"elements of different algebras: {self.alg.name} vs {other.alg.name}")

    def _lift(self, other):
        if isinstance(other, Elem):
            self._check(other)
            return other
        return self.alg.scalar(other)

    def __add__(self, other) -> "Elem":
        other = self._lift(other)
        acc = dict(self.terms)
        for m, c in other.terms.items():
            _add_into(acc, m, c)
        return Elem(self.alg, acc)

    __radd__ = __add__

    def __neg__(self) -> "Elem":
        return Elem(self.alg, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Elem":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "Elem":
        return (-self) + other

    def scale(self, c) -> "Elem":
        c = RatQ.coerce(c)
        if not c:
            return Elem(self.alg)
        return Elem(self.alg, {m: v * c for m, v in self.terms.items()})

    def __mul__(self, other) -> "Elem":
        if isinstance(other, Elem):
            self._check(other)
            return self.alg.multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other) -> "Elem":
        return self.scale(other)

    def __pow__(self, n: int) -> "Elem":
        if n < 0:
            raise ValueError("use Presentation.normal_form for negative powers")
        out = self.alg.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, Elem):
            return other.alg is self.alg and other.terms == self.terms
        if isinstance(other, (int, RatQ)):
            return self == self.alg.scalar(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        from .exprio import print_canonical
        return print_canonical(self)

    __str__ = __repr__


class Presentation:
    """Generators, invertibility flags and straightening rules.

    ``rules`` maps ``(j, i)`` with ``j > i`` to the normal form of X_j X_i,
    given as a mapping ``{mono: coeff}``.  ``power_rules`` maps a generator
    index g to ``(n, rhs)`` meaning ``X_g^n = rhs``.
    """

    def __init__(
        self,
        names: Sequence[str],
        rules: Mapping[tuple, Mapping[Mono, RatQ]],
        invertible: Iterable[int] = (),
        power_rules: Mapping[int, tuple] | None = None,
        name: str = "algebra",
        fuel: int = DEFAULT_FUEL,
        _letter_rules: Mapping | None = None,
    ):
        self.names = tuple(names)
        self.ngens = len(self.names)
        self.invertible = frozenset(invertible)
        self.power_rules = dict(power_rules or {})
        self.name = name
        self.fuel = fuel
        self.unit_mono = (0,) * self.ngens
        self._index = {n: i for i, n in enumerate(self.names)}
        self._cache: dict = {}
        self._local = threading.local()
        self._deriving: set = set()
        self._rule_lock = threading.RLock()
        self.base_rules = {}
        for (j, i), rhs in rules.items():
            if not j > i:
                raise InvalidPresentation(f"rule key {(j, i)} must have j > i")
            self.base_rules[(j, i)] = {tuple(m): RatQ.coerce(c) for m, c in rhs.items() if c}
        self._letter_rules = dict(_letter_rules or {})
        for (j, i), rhs in self.base_rules.items():
            self._letter_rules[(j, 1, i, 1)] = rhs
        self._validate()

    # --- construction helpers ---------------------------------------------

    def _validate(self) -> None:
        for j in range(self.ngens):
            for i in range(j):
                if (j, i) not in self.base_rules:
                    raise InvalidPresentation(
                        f"missing straightening rule for {self.names[j]}*{self.names[i]}")
        for g, (n, rhs) in self.power_rules.items():
            if g in self.invertible:
                raise InvalidPresentation("power rules on invertible generators are not supported")
            if n < 2:
                raise InvalidPresentation("power rule exponent must be at least 2")
        for key, rhs in self._letter_rules.items():
            for m, c in rhs.items():
                if len(m) != self.ngens:
                    raise InvalidPresentation(f"rule {key}: monomial {m} has wrong length")
                if not c:
                    raise InvalidPresentation(f"rule {key}: zero coefficient")
                if not self.is_normal(m):
                    raise InvalidPresentation(f"rule {key}: right-hand side term {m} is not normal")
        for g, (n, rhs) in self.power_rules.items():
            for m in rhs:
                if not self.is_normal(m):
                    raise InvalidPresentation(f"power rule for {self.names[g]}: {m} is not normal")

    def index(self, gen) -> int:
        if isinstance(gen, int):
            if not 0 <= gen < self.ngens:
                raise IndexError(gen)
            return gen
        try:
            return self._index[gen]
        except KeyError:
            from .errors import UnknownGenerator
            raise UnknownGenerator(f"{gen!r} is not a generator of {self.name}") from None

    def is_normal(self, m: Mono) -> bool:
        for g, e in enumerate(m):
            if e < 0 and g not in self.invertible:
                return False
            pr = self.power_rules.get(g)
            if pr is not None and e >= pr[0]:
                return False
        return True

    def mono(self, **exps) -> Mono:
        m = [0] * self.ngens
        for k, v in exps.items():
            m[self.index(k)] = v
        return tuple(m)

    # --- elements ---------------------------------------------------------

    def element(self, terms: Mapping[Mono, object]) -> Elem:
        out = {}
        for m, c in terms.items():
            m = tuple(m)
            if len(m) != self.ngens:
                raise ValueError(f"monomial {m} has wrong length for {self.name}")
            _add_into(out, m, RatQ.coerce(c))
        elem = Elem(self)
        for m, c in out.items():
            if not self.is_normal(m):
                raise ValueError(f"monomial {m} is not normal in {self.name}")
        elem.terms = out
        return elem

    def zero(self) -> Elem:
        return Elem(self)

    def one(self) -> Elem:
        return Elem(self, {self.unit_mono: ONE})

    def scalar(self, c) -> Elem:
        return Elem(self, {self.unit_mono: RatQ.coerce(c)})

    def gen(self, g, power: int = 1) -> Elem:
        return self.normal_form([(g, power)])

    def gens(self) -> list:
        return [self.gen(i) for i in range(self.ngens)]

    # --- fuel -------------------------------------------------------------

    def _enter(self) -> None:
        loc = self._local
        depth = getattr(loc, "depth", 0)
        if depth == 0:
            loc.fuel = self.fuel
        loc.depth = depth + 1

    def _leave(self) -> None:
        self._local.depth -= 1

    def _spend(self) -> None:
        loc = self._local
        loc.fuel -= 1
        if loc.fuel < 0:
            raise FuelExhausted(
                f"more than {self.fuel} rule applications in {self.name}; "
                "the rewriting system may not terminate")

    # --- rules ------------------------------------------------------------

    def rule(self, a: int, s: int, b: int, t: int) -> dict:
        """Normal form of the letter product X_a^s X_b^t for a > b."""
        key = (a, s, b, t)
        r = self._letter_rules.get(key)
        if r is None:
            # derivation recurses through multiply; the lock is re-entrant so
            # only other threads wait, and cycle detection stays per thread
            with self._rule_lock:
                r = self._letter_rules.get(key)
                if r is None:
                    r = self._derive_letter_rule(a, s, b, t)
        return r

    def _split_base(self, a: int, b: int):
        base = self.base_rules[(a, b)]
        swapped = [0] * self.ngens
        swapped[a] += 1
        swapped[b] += 1
        swapped = tuple(swapped)
        c = base.get(swapped)
        if c is None:
            raise UnderivableInverseRule(
                f"{self.names[a]}*{self.names[b]} has no {self.names[b]}*{self.names[a]} term")
        rest = {m: v for m, v in base.items() if m != swapped}
        return c, Elem(self, rest)

    def _derive_letter_rule(self, a: int, s: int, b: int, t: int) -> dict:
        if (s < 0 and a not in self.invertible) or (t < 0 and b not in self.invertible):
            raise NonInvertibleNegativePower("letter with negative exponent is not invertible")
        key = (a, s, b, t)
        if key in self._deriving:
            raise UnderivableInverseRule(
                f"recursion does not close for {self.names[a]}^{s}*{self.names[b]}^{t}")
        self._deriving.add(key)
        try:
            c, rest = self._split_base(a, b)
            cinv = c.inverse()
            if s < 0 and t > 0:
                # X_a^-1 X_b = c^-1 (X_b X_a^-1 - X_a^-1 L X_a^-1)
                ainv = self._letter(a, -1)
                lead = self._letter(b, 1) * ainv
                res = (lead - ainv * rest * ainv).scale(cinv)
            elif s > 0 and t < 0:
                # X_a X_b^-1 = c^-1 (X_b^-1 X_a - X_b^-1 L X_b^-1)
                binv = self._letter(b, -1)
                lead = binv * self._letter(a, 1)
                res = (lead - binv * rest * binv).scale(cinv)
            else:
                if rest:
                    raise UnderivableInverseRule(
                        f"both {self.names[a]} and {self.names[b]} inverted with a correction term")
                res = (self._letter(b, -1) * self._letter(a, -1)).scale(c)
        finally:
            self._deriving.discard(key)
        self._letter_rules[key] = res.terms
        return res.terms

    def _letter(self, g: int, s: int) -> Elem:
        m = [0] * self.ngens
        m[g] = s
        return Elem(self, {tuple(m): ONE})

    # --- the engine -------------------------------------------------------

    def mono_mul(self, m1: Mono, m2: Mono) -> dict:
        key = (m1, m2)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        res = self._mono_mul(m1, m2)
        self._cache[key] = res
        return res

    def _mono_mul(self, m1: Mono, m2: Mono) -> dict:
        n = self.ngens
        a = -1
        for g in range(n - 1, -1, -1):
            if m1[g]:
                a = g
                break
        b = n
        for g in range(n):
            if m2[g]:
                b = g
                break
        if a <= b:
            m = tuple(x + y for x, y in zip(m1, m2))
            return self._reduce_powers(m)
        s = 1 if m1[a] > 0 else -1
        t = 1 if m2[b] > 0 else -1
        l1 = list(m1)
        l1[a] -= s
        l2 = list(m2)
        l2[b] -= t
        m1p, m2p = tuple(l1), tuple(l2)
        self._spend()
        out: dict = {}
        for r, c in self.rule(a, s, b, t).items():
            for lm, lc in self.mono_mul(m1p, r).items():
                cc = c * lc
                for fm, fc in self.mono_mul(lm, m2p).items():
                    _add_into(out, fm, cc * fc)
        return out

    def _reduce_powers(self, m: Mono) -> dict:
        for g, (n, rhs) in self.power_rules.items():
            if m[g] >= n:
                self._spend()
                left = tuple(e if k < g else 0 for k, e in enumerate(m))
                right = list(m)
                for k in range(g):
                    right[k] = 0
                right[g] -= n
                right = tuple(right)
                out: dict = {}
                for r, c in rhs.items():
                    for lm, lc in self.mono_mul(left, r).items():
                        cc = c * lc
                        for fm, fc in self.mono_mul(lm, right).items():
                            _add_into(out, fm, cc * fc)
                return out
        return {m: ONE}

    # --- public operations --------------------------------------------------

    def multiply(self, a: Elem, b: Elem) -> Elem:
        self._enter()
        try:
            out: dict = {}
            for m1, c1 in a.terms.items():
                for m2, c2 in b.terms.items():
                    cc = c1 * c2
                    for m, c in self.mono_mul(m1, m2).items():
                        _add_into(out, m, cc * c)
        finally:
            self._leave()
        return Elem(self, out)

    def normal_form(self, factors: Iterable) -> Elem:
        """Normal form of a product of generator powers.

        ``factors`` is a sequence of ``(generator, exponent)`` pairs where the
        generator is a name or an index.
        """
        self._enter()
        try:
            acc = {self.unit_mono: ONE}
            for gen, e in factors:
                g = self.index(gen)
                if e < 0 and g not in self.invertible:
                    raise NonInvertibleNegativePower(
                        f"{self.names[g]}^{e}: {self.names[g]} is not invertible in {self.name}")
                if e == 0:
                    continue
                step = 1 if e > 0 else -1
                letter = [0] * self.ngens
                letter[g] = step
                letter = tuple(letter)
                for _ in range(abs(e)):
                    nxt: dict = {}
                    for m, c in acc.items():
                        for fm, fc in self.mono_mul(m, letter).items():
                            _add_into(nxt, fm, c * fc)
                    acc = nxt
        finally:
            self._leave()
        return Elem(self, acc)

    def commutator(self, a: Elem, b: Elem) -> Elem:
        return self.multiply(a, b) - self.multiply(b, a)

    def monomial(self, m: Mono) -> Elem:
        """The element given by a monomial read as an ordered product."""
        return self.normal_form([(g, e) for g, e in enumerate(m) if e])

    def __repr__(self) -> str:
        return f"Presentation({self.name!r}, gens={list(self.names)})"


def derive_inverse_rules(p: Presentation, k, name: str | None = None) -> Presentation:
    """Localize ``p`` at the generator ``k``.

    Each rule ``X_a X_b = c X_b X_a + L`` is solved for the products that
    involve ``X_k^-1``, recursively normalizing the correction terms.  All
    such rules are derived eagerly so that failures surface here.
    """
    k = p.index(k)
    inv = set(p.invertible) | {k}
    letter_rules = {key: r for key, r in p._letter_rules.items() if key[1] < 0 or key[3] < 0}
    loc = Presentation(
        p.names,
        p.base_rules,
        invertible=inv,
        power_rules=p.power_rules,
        name=name or f"{p.name}[{p.names[k]}^-1]",
        fuel=p.fuel,
        _letter_rules=letter_rules,
    )
    loc._enter()
    try:
        for b in range(k):
            for t in ((1, -1) if b in inv else (1,)):
                loc.rule(k, -1, b, t)
        for a in range(k + 1, p.ngens):
            for s in ((1, -1) if a in inv else (1,)):
                loc.rule(a, s, k, -1)
    finally:
        loc._leave()
    loc._validate()
    return loc


# ---------------------------------------------------------------------------
# independent word rewriting, used as a confluence oracle
# ---------------------------------------------------------------------------

def _expand_mono(m: Mono) -> tuple:
    word = []
    for g, e in enumerate(m):
        s = 1 if e > 0 else -1
        word.extend([(g, s)] * abs(e))
    return tuple(word)


def _find_redexes(p: Presentation, word: tuple) -> list:
    found = []
    for pos in range(len(word) - 1):
        (a, s), (b, t) = word[pos], word[pos + 1]
        if a == b and s != t:
            found.append((pos, "cancel"))
        elif a > b:
            found.append((pos, "swap"))
    for g, (n, _) in p.power_rules.items():
        run = 0
        for pos, (a, s) in enumerate(word):
            run = run + 1 if (a == g and s > 0) else 0
            if run >= n:
                found.append((pos - n + 1, "power"))
    return found


def rewrite_word(p: Presentation, word: Sequence, strategy: str = "leftmost",
                 seed: int | None = None, fuel: int = DEFAULT_FUEL) -> Elem:
    """Normalize a word by rewriting adjacent letters, one redex at a time.

    ``word`` is a sequence of ``(generator, exponent)`` factors.  This path
    shares nothing with :meth:`Presentation.normal_form`: it works on
    letter words, picks the redex to contract by ``strategy``
    (``"leftmost"``, ``"rightmost"`` or ``"random"``), and only remembers
    the final normal form of each word it has already finished.
    """
    if strategy not in ("leftmost", "rightmost", "random"):
        raise ValueError(f"unknown strategy {strategy!r}")
    rng = random.Random(seed)
    letters = []
    for gen, e in word:
        g = p.index(gen)
        if e < 0 and g not in p.invertible:
            raise NonInvertibleNegativePower(f"{p.names[g]} is not invertible")
        letters.extend([(g, 1 if e > 0 else -1)] * abs(e))
    start = tuple(letters)
    memo: dict = {}
    plan: dict = {}
    stack = [start]
    while stack:
        w = stack[-1]
        if w in memo:
            stack.pop()
            continue
        succ = plan.get(w)
        if succ is None:
            reds = _find_redexes(p, w)
            if not reds:
                m = [0] * p.ngens
                for g, s in w:
                    m[g] += s
                memo[w] = {tuple(m): ONE}
                stack.pop()
                continue
            fuel -= 1
            if fuel < 0:
                raise FuelExhausted("word rewriting exceeded its fuel")
            if strategy == "leftmost":
                pos, kind = min(reds)
            elif strategy == "rightmost":
                pos, kind = max(reds)
            else:
                pos, kind = rng.choice(reds)
            succ = _contract(p, w, pos, kind)
            plan[w] = succ
        missing = [v for v, _ in succ if v not in memo]
        if missing:
            stack.extend(missing)
            continue
        out: dict = {}
        for v, c in succ:
            for m, mc in memo[v].items():
                _add_into(out, m, c * mc)
        memo[w] = out
        del plan[w]
        stack.pop()
    return Elem(p, memo[start])


def _contract(p: Presentation, w: tuple, pos: int, kind: str) -> list:
    """The words (with coefficients) that replace ``w`` after one rewrite."""
    if kind == "cancel":
        return [(w[:pos] + w[pos + 2:], ONE)]
    if kind == "swap":
        (a, s), (b, t) = w[pos], w[pos + 1]
        rhs, width = p.rule(a, s, b, t), 2
    else:
        n, rhs = p.power_rules[w[pos][0]]
        width = n
    return [(w[:pos] + _expand_mono(m) + w[pos + width:], c) for m, c in rhs.items()]
