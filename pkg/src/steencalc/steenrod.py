"""Words in the mod-l Steenrod algebra: Adem rewriting, excess, admissibility.

A monomial is a word of operation letters over a fixed prime l.  For l = 2
the word is a tuple of integers (i1, ..., ik) with ij >= 1, read as
Sq^i1 ... Sq^ik.  For odd l the letter 0 stands for the Bockstein b and a
letter s >= 1 stands for the reduced power P^s, so (0, 2, 0, 1) reads
b P^2 b P^1.  The empty word is the identity operation.

Elements are finite F_l-linear combinations of monomials.  adem_normalize
rewrites them into the admissible basis; the rewriting is validated against
an independent Cartan-formula oracle in the test suite, not trusted.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    DslSyntaxError,
    InternalNonTermination,
    MixedPrimes,
    NotAdmissible,
)

# Pair rewrites are memoized; a full normalization pass that exceeds this
# many expansions indicates a cycle and raises InternalNonTermination.
_MAX_REWRITE_STEPS = 1_000_000


def _require_prime(ell):
    if ell < 2 or any(ell % d == 0 for d in range(2, int(ell**0.5) + 1)):
        raise ValueError("not a prime: %r" % (ell,))
    return ell


def binom_mod_ell(n: int, k: int, ell: int) -> int:
    """Binomial coefficient mod l, with the descending-factorial convention
    for negative upper index: binom(n, k) = n(n-1)...(n-k+1) / k!.

    In particular binom(-1, 0) = 1 and binom(n, k) = 0 for k < 0.
    """
    _require_prime(ell)
    if k < 0:
        return 0
    if n < 0:
        # binom(n, k) = (-1)^k binom(k - n - 1, k) as polynomials in n
        sign = -1 if k % 2 else 1
        return (sign * _lucas(k - n - 1, k, ell)) % ell
    return _lucas(n, k, ell)


def _lucas(n, k, ell):
    # n, k >= 0
    result = 1
    while k:
        result = (result * math.comb(n % ell, k % ell)) % ell
        if result == 0:
            return 0
        n //= ell
        k //= ell
    return result


@dataclass(frozen=True)
class SteenrodMonomial:
    """One operation word over a fixed prime.

    Invariants: letters are >= 1 for prime 2 (Sq^i), >= 0 for odd primes
    (0 = Bockstein).  Identity letters Sq^0 / P^0 are never stored.
    """

    prime: int
    word: tuple

    def __post_init__(self):
        _require_prime(self.prime)
        low = 1 if self.prime == 2 else 0
        if any((not isinstance(i, int)) or i < low for i in self.word):
            raise ValueError("bad letter in word %r at prime %d" % (self.word, self.prime))

    def degree(self) -> int:
        if self.prime == 2:
            return sum(self.word)
        return sum(1 if s == 0 else 2 * s * (self.prime - 1) for s in self.word)

    def length(self) -> int:
        return len(self.word)

    def is_admissible(self) -> bool:
        return _is_admissible_word(self.prime, self.word)

    def excess(self) -> int:
        """Excess of an admissible word; NotAdmissible otherwise.

        For l = 2 this is i1 - (i2 + ... + ik).  For odd l it is
        2*l*s1 + e0 - degree, where s1 is the first reduced-power index
        (0 when the word is empty or a bare Bockstein) and e0 records a
        leading Bockstein.  The empty word has excess 0.
        """
        if not self.is_admissible():
            raise NotAdmissible("excess is defined on admissible words only: %r" % (self,))
        if not self.word:
            return 0
        if self.prime == 2:
            return 2 * self.word[0] - self.degree()
        eps0 = 1 if self.word[0] == 0 else 0
        s1 = next((s for s in self.word if s > 0), 0)
        return 2 * self.prime * s1 + eps0 - self.degree()

    def acts_nontrivially_on_class_of_degree(self, n: int) -> bool:
        """Whether this admissible word can act nonzero on some degree-n class.

        True when excess < n.  At excess == n the bottom operation is an
        l-th power, nonzero unless an odd-prime word leads with the
        Bockstein (which kills l-th powers).
        """
        e = self.excess()
        if e < n:
            return True
        if e > n:
            return False
        if self.prime == 2:
            return True
        return not (self.word and self.word[0] == 0)

    def render(self) -> str:
        if not self.word:
            return "1"
        if self.prime == 2:
            return " ".join("Sq^%d" % i for i in self.word)
        return " ".join("b" if s == 0 else "P^%d" % s for s in self.word)

    def __repr__(self):
        return "SteenrodMonomial(p=%d, %s)" % (self.prime, self.render())


def _is_admissible_word(prime, word):
    if prime == 2:
        return all(word[j] >= 2 * word[j + 1] for j in range(len(word) - 1))
    # no double Bocksteins, and s_j >= l*s_{j+1} + eps_j between powers
    for j in range(len(word) - 1):
        if word[j] == 0 and word[j + 1] == 0:
            return False
    powers = [j for j, s in enumerate(word) if s > 0]
    for a, b in zip(powers, powers[1:]):
        eps = b - a - 1  # number of Bocksteins strictly between, 0 or 1
        if word[a] < prime * word[b] + eps:
            return False
    return True


# --------------------------------------------------------------------------
# Adem pair expansions, memoized.  Each returns a list of (word, coeff) with
# coeff already reduced mod l and nonzero.


@lru_cache(maxsize=None)
def _adem_sq(a, b):
    # Sq^a Sq^b with a < 2b
    out = []
    for c in range(a // 2 + 1):
        if binom_mod_ell(b - c - 1, a - 2 * c, 2):
            out.append(((a + b - c, c) if c else (a + b,), 1))
    return out


@lru_cache(maxsize=None)
def _adem_pp(ell, a, b):
    # P^a P^b with a < l*b
    out = []
    for t in range(a // ell + 1):
        coeff = binom_mod_ell((ell - 1) * (b - t) - 1, a - ell * t, ell)
        coeff = (coeff if (a + t) % 2 == 0 else -coeff) % ell
        if coeff:
            out.append(((a + b - t, t) if t else (a + b,), coeff))
    return out


@lru_cache(maxsize=None)
def _adem_pbp(ell, a, b):
    # P^a b P^b with a <= l*b
    out = []
    for t in range(a // ell + 1):
        coeff = binom_mod_ell((ell - 1) * (b - t), a - ell * t, ell)
        coeff = (coeff if (a + t) % 2 == 0 else -coeff) % ell
        if coeff:
            out.append(((0, a + b - t, t) if t else (0, a + b), coeff))
    for t in range((a - 1) // ell + 1):
        coeff = binom_mod_ell((ell - 1) * (b - t) - 1, a - ell * t - 1, ell)
        coeff = (coeff if (a + t) % 2 == 1 else -coeff) % ell
        if coeff:
            out.append(((a + b - t, 0, t) if t else (a + b, 0), coeff))
    return out


def _leftmost_rewrite(prime, word):
    """Find the leftmost non-admissible spot.

    Returns (start, width, expansion) where expansion is a list of
    (replacement_letters, coeff), or None when the word is admissible.
    """
    n = len(word)
    for j in range(n - 1):
        a = word[j]
        if a == 0:
            if word[j + 1] == 0:
                return j, 2, []  # b b = 0
            continue
        nxt = word[j + 1]
        if nxt > 0:
            if a < prime * nxt:
                exp = _adem_sq(a, nxt) if prime == 2 else _adem_pp(prime, a, nxt)
                return j, 2, exp
        elif j + 2 < n and word[j + 2] > 0:
            if a <= prime * word[j + 2]:
                return j, 3, _adem_pbp(prime, a, word[j + 2])
    return None


def _normalize_words(prime, terms):
    """Rewrite a dict word -> coeff into admissible form.  Internal raw words
    (for example with adjacent Bocksteins from concatenation) are allowed."""
    result = {}
    pending = list(terms.items())
    steps = 0
    while pending:
        word, coeff = pending.pop()
        coeff %= prime
        if not coeff:
            continue
        spot = _leftmost_rewrite(prime, word)
        if spot is None:
            new = (result.get(word, 0) + coeff) % prime
            if new:
                result[word] = new
            else:
                result.pop(word, None)
            continue
        steps += 1
        if steps > _MAX_REWRITE_STEPS:
            raise InternalNonTermination("Adem rewriting exceeded %d steps" % _MAX_REWRITE_STEPS)
        j, width, expansion = spot
        head, tail = word[:j], word[j + width:]
        for repl, c in expansion:
            pending.append((head + repl + tail, coeff * c))
    return result


class SteenrodElement:
    """F_l-linear combination of operation words.

    terms maps SteenrodMonomial -> coefficient in 1..l-1.  Elements are
    treated as immutable; all operations return fresh instances.
    """

    __slots__ = ("prime", "terms")

    def __init__(self, prime, terms=None):
        _require_prime(prime)
        self.prime = prime
        clean = {}
        for mono, coeff in (terms or {}).items():
            if not isinstance(mono, SteenrodMonomial):
                mono = SteenrodMonomial(prime, tuple(mono))
            if mono.prime != prime:
                raise MixedPrimes("term at prime %d in element at prime %d" % (mono.prime, prime))
            coeff %= prime
            if coeff:
                clean[mono] = coeff
        self.terms = clean

    # ---------------------------------------------------------- constructors

    @classmethod
    def zero(cls, prime):
        return cls(prime)

    @classmethod
    def one(cls, prime):
        return cls(prime, {(): 1})

    @classmethod
    def sq(cls, i, prime=2):
        """Sq^i at l=2, or P^i at an odd prime."""
        if i < 0:
            raise ValueError("negative operation index")
        return cls.one(prime) if i == 0 else cls(prime, {(i,): 1})

    @classmethod
    def bockstein(cls, prime):
        if prime == 2:
            return cls(2, {(1,): 1})
        return cls(prime, {(0,): 1})

    @classmethod
    def monomial(cls, mono):
        return cls(mono.prime, {mono: 1})

    # ------------------------------------------------------------ arithmetic

    def _check(self, other):
        if self.prime != other.prime:
            raise MixedPrimes("%d vs %d" % (self.prime, other.prime))

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            new = (terms.get(m, 0) + c) % self.prime
            if new:
                terms[m] = new
            else:
                terms.pop(m, None)
        return SteenrodElement(self.prime, terms)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c %= self.prime
        return SteenrodElement(self.prime, {m: (c * v) % self.prime for m, v in self.terms.items()})

    def multiply(self, other) -> "SteenrodElement":
        """Concatenate words and renormalize with Adem relations."""
        self._check(other)
        raw = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                word = m1.word + m2.word
                raw[word] = raw.get(word, 0) + c1 * c2
        return SteenrodElement(self.prime, _normalize_words(self.prime, raw))

    __mul__ = multiply

    def adem_normalize(self) -> "SteenrodElement":
        raw = {m.word: c for m, c in self.terms.items()}
        return SteenrodElement(self.prime, _normalize_words(self.prime, raw))

    def is_admissible(self) -> bool:
        return all(m.is_admissible() for m in self.terms)

    # ----------------------------------------------------------- inspection

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, SteenrodElement)
            and self.prime == other.prime
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.prime, frozenset(self.terms.items())))

    def is_homogeneous(self) -> bool:
        degs = {m.degree() for m in self.terms}
        return len(degs) <= 1

    def degree(self):
        """Common degree of all words, or None for 0 / mixed elements."""
        degs = {m.degree() for m in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def monomials(self):
        return sorted(self.terms, key=lambda m: (m.degree(), m.word))

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in self.monomials():
            c = self.terms[m]
            if not m.word:
                parts.append("%d" % c)
            elif c == 1:
                parts.append(m.render())
            else:
                parts.append("%d %s" % (c, m.render()))
        return " + ".join(parts)

    def __repr__(self):
        return "<SteenrodElement p=%d %s>" % (self.prime, self.render())


# --------------------------------------------------------------------------
# Text format.  Example inputs: "Sq^3 Sq^1", "b P^2 b", "2 P^2 + P^1 P^1".

_OP_TOKEN = re.compile(r"\s*(Sq|P|b|\d+|\^|\+|-|\*)")


def _tokenize_op(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _OP_TOKEN.match(text, pos)
        if not m:
            raise DslSyntaxError("bad character %r in operation" % text[pos], 1, pos + 1)
        out.append((m.group(1), m.start(1) + 1))
        pos = m.end()
    return out


def parse_operation(text: str, prime: int) -> SteenrodElement:
    """Parse the operation word format; inverse of render on canonical output."""
    _require_prime(prime)
    tokens = _tokenize_op(text)
    if not tokens:
        raise DslSyntaxError("empty operation", 1, 1, ("Sq", "P", "b", "integer"))
    terms = {}
    idx = 0
    sign = 1
    while True:
        coeff = sign
        word = []
        saw_anything = False
        # optional integer coefficient
        if idx < len(tokens) and tokens[idx][0].isdigit():
            coeff = sign * int(tokens[idx][0])
            saw_anything = True
            idx += 1
            if idx < len(tokens) and tokens[idx][0] == "*":
                idx += 1
        while idx < len(tokens) and tokens[idx][0] in ("Sq", "P", "b", "*"):
            tok, col = tokens[idx]
            idx += 1
            if tok == "*":
                continue
            saw_anything = True
            if tok == "b":
                word.append(1 if prime == 2 else 0)
                continue
            if tok == "Sq" and prime != 2:
                raise DslSyntaxError("Sq is a prime-2 letter", 1, col, ("P", "b"))
            if tok == "P" and prime == 2:
                raise DslSyntaxError("P is an odd-prime letter", 1, col, ("Sq", "b"))
            if idx >= len(tokens) or tokens[idx][0] != "^":
                raise DslSyntaxError("missing exponent", 1, col, ("^",))
            idx += 1
            if idx >= len(tokens) or not tokens[idx][0].isdigit():
                raise DslSyntaxError("missing exponent value", 1, col, ("integer",))
            i = int(tokens[idx][0])
            idx += 1
            if i > 0:
                word.append(i)
        if not saw_anything:
            col = tokens[idx][1] if idx < len(tokens) else len(text) + 1
            raise DslSyntaxError("expected an operation term", 1, col, ("Sq", "P", "b", "integer"))
        key = tuple(word)
        terms[key] = terms.get(key, 0) + coeff
        if idx >= len(tokens):
            break
        tok, col = tokens[idx]
        if tok == "+":
            sign = 1
        elif tok == "-":
            sign = -1
        else:
            raise DslSyntaxError("unexpected %r" % tok, 1, col, ("+", "-"))
        idx += 1
    return SteenrodElement(prime, terms)


def render_operation(e: SteenrodElement) -> str:
    return e.render()


# Convenience module-level forms mirroring the method names.

def degree(m: SteenrodMonomial) -> int:
    return m.degree()


def is_admissible(m: SteenrodMonomial) -> bool:
    return m.is_admissible()


def excess(m: SteenrodMonomial) -> int:
    return m.excess()


def acts_nontrivially_on_class_of_degree(m: SteenrodMonomial, n: int) -> bool:
    return m.acts_nontrivially_on_class_of_degree(n)


def adem_normalize(e: SteenrodElement) -> SteenrodElement:
    return e.adem_normalize()


def multiply(a: SteenrodElement, b: SteenrodElement) -> SteenrodElement:
    return a.multiply(b)


def admissible_monomials(prime, max_degree, parity=None):
    """All admissible words of degree <= max_degree, optionally filtered to
    odd or even degree ('odd'/'even').  Sorted by (degree, word)."""
    out = [()]
    if prime == 2:
        def grow(word, budget):
            cap = min(budget, word[-1] // 2) if word else budget
            for i in range(1, cap + 1):
                w = word + (i,)
                out.append(w)
                grow(w, budget - i)

        grow((), max_degree)
    else:
        step = 2 * (prime - 1)
        if max_degree >= 1:
            out.append((0,))

        def grow(word, last_s, budget):
            # word ends with the power P^last_s; extend by [b] P^s
            if budget >= 1:
                out.append(word + (0,))
            for eps in (0, 1):
                middle = (0,) if eps else ()
                cap = min((last_s - eps) // prime, (budget - eps) // step)
                for s in range(1, cap + 1):
                    w = word + middle + (s,)
                    out.append(w)
                    grow(w, s, budget - eps - step * s)

        for eps0 in (0, 1):
            for s1 in range(1, (max_degree - eps0) // step + 1):
                w = ((0,) if eps0 else ()) + (s1,)
                out.append(w)
                grow(w, s1, max_degree - eps0 - step * s1)
    monos = []
    for w in sorted(set(out)):
        m = SteenrodMonomial(prime, w)
        d = m.degree()
        if d > max_degree:
            continue
        if parity == "odd" and d % 2 == 0:
            continue
        if parity == "even" and d % 2 == 1:
            continue
        monos.append(m)
    monos.sort(key=lambda m: (m.degree(), m.word))
    return monos
