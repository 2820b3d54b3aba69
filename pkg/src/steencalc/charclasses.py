"""Characteristic classes attached to the twisted operations.

Two total classes are computed for (virtual) bundles presented by truncated
Chern classes: the Chow-theoretic one obtained from the splitting principle
as prod_i (1 + t_i^(l-1)) over Chern roots t_i, and the etale-cohomology one,
which for l = 2 is prod_i (1 + omega + t_i) and for odd l coincides with the
Chow formula.  Symmetric functions of the roots are rewritten into elementary
symmetric polynomials degree by degree and the elementary ones are replaced
with the given Chern classes, so no root ever leaks into a result.

Inhomogeneous results are carried by TotalClass, a finite sum of homogeneous
pieces below a truncation bound on the cohomological degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from .errors import (
    MissingCodim,
    NonHomogeneousInput,
    NotProjectiveBundleScenario,
    OmegaUndeclared,
)
from .rings import RingElement, RingPresentation, TwistedClass


class TotalClass:
    """Finite inhomogeneous class: cohomological degree -> RingElement,
    truncated above `bound` (components beyond it are dropped, not zero)."""

    __slots__ = ("parent", "bound", "components")

    def __init__(self, parent, bound, components=None):
        self.parent = parent
        self.bound = bound
        comps = {}
        for d, elt in (components or {}).items():
            if d < 0 or d > bound or not elt:
                continue
            if not isinstance(elt, RingElement):
                elt = parent.element(elt)
            comps[d] = elt
        self.components = comps

    @classmethod
    def unit(cls, parent, bound):
        return cls(parent, bound, {0: parent.one()})

    @classmethod
    def of_element(cls, parent, elt, bound):
        """Split a (possibly inhomogeneous) element into degree components."""
        return cls(parent, bound, {d: e for d, e in elt.homogeneous_components().items()})

    def component(self, d):
        return self.components.get(d, self.parent.zero())

    def __add__(self, other):
        bound = min(self.bound, other.bound)
        comps = {}
        for d in set(self.components) | set(other.components):
            if d > bound:
                continue
            s = self.component(d) + other.component(d)
            if s:
                comps[d] = s
        return TotalClass(self.parent, bound, comps)

    def scale(self, c):
        return TotalClass(
            self.parent, self.bound, {d: e.scale(c) for d, e in self.components.items()}
        )

    def __mul__(self, other):
        if isinstance(other, RingElement):
            other = TotalClass.of_element(self.parent, other, self.bound)
        bound = min(self.bound, other.bound)
        comps = {}
        for d1, e1 in self.components.items():
            for d2, e2 in other.components.items():
                d = d1 + d2
                if d > bound:
                    continue
                prod = e1 * e2
                if not prod:
                    continue
                acc = comps.get(d)
                comps[d] = prod if acc is None else acc + prod
        return TotalClass(self.parent, bound, comps)

    def inverse(self):
        """Multiplicative inverse of a class with scalar unit part."""
        c0 = self.component(0)
        one = self.parent.one()
        scalar = None
        for s in range(1, self.parent.prime):
            if c0 == one.scale(s):
                scalar = s
        if scalar is None:
            raise NonHomogeneousInput("inverse needs an invertible scalar in degree 0")
        inv0 = pow(scalar, -1, self.parent.prime)
        out = {0: one.scale(inv0)}
        for d in range(1, self.bound + 1):
            acc = self.parent.zero()
            for i in range(1, d + 1):
                fi = self.component(i)
                gj = out.get(d - i)
                if fi and gj is not None:
                    acc = acc + fi * gj
            acc = acc.scale(-inv0)
            if acc:
                out[d] = acc
        return TotalClass(self.parent, self.bound, out)

    def power(self, n):
        if n < 0:
            return self.inverse().power(-n)
        result = TotalClass.unit(self.parent, self.bound)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        return (
            isinstance(other, TotalClass)
            and self.parent is other.parent
            and self.components == other.components
        )

    def __bool__(self):
        return bool(self.components)

    def render(self):
        if not self.components:
            return "0"
        parts = []
        for d in sorted(self.components):
            parts.append("[%d] %s" % (d, self.components[d].render()))
        return "; ".join(parts)

    def __repr__(self):
        return "<TotalClass %s>" % self.render()


@dataclass
class VirtualBundle:
    """Difference of two bundles given by truncated total Chern classes.

    rank is the virtual rank.  Chern lists hold c_1, c_2, ... as homogeneous
    RingElements of degree 2j (twist j); omitted tails are zero.  truncation
    is the codimension bound: classes are computed modulo degree > 2*truncation.
    """

    rank: int
    numerator_chern: list = field(default_factory=list)
    denominator_chern: list = field(default_factory=list)
    truncation: int = 10

    def validate(self, parent):
        for chern in (self.numerator_chern, self.denominator_chern):
            for j, c in enumerate(chern, start=1):
                if not isinstance(c, RingElement) or c.parent is not parent:
                    raise ValueError("Chern class c_%d is not an element of the base ring" % j)
                for m in c.terms:
                    if parent.monomial_degree(m) != 2 * j:
                        raise NonHomogeneousInput("c_%d must be homogeneous of degree %d" % (j, 2 * j))
                    if parent.prime > 2 and (parent.monomial_twist(m) - j) % (parent.prime - 1):
                        raise NonHomogeneousInput("c_%d must have twist %d" % (j, j))


# --------------------------------------------------------------------------
# Symmetric-function reduction, carried out in the basis of elementary
# symmetric functions.  An e-polynomial is a dict mapping an exponent tuple
# (d_1, d_2, ...) for e_1^{d_1} e_2^{d_2} ... (trailing zeros stripped) to a
# coefficient.  The weight of e_j is j, so everything stays finite once
# truncated by weight, independent of any root count.


def _dvec_weight(dvec):
    return sum(j * d for j, d in enumerate(dvec, start=1))


def _trim(dvec):
    n = len(dvec)
    while n and not dvec[n - 1]:
        n -= 1
    return tuple(dvec[:n])


def _emul(a, b, max_weight):
    out = {}
    for da, ca in a.items():
        wa = _dvec_weight(da)
        for db, cb in b.items():
            if wa + _dvec_weight(db) > max_weight:
                continue
            n = max(len(da), len(db))
            key = tuple(
                (da[i] if i < len(da) else 0) + (db[i] if i < len(db) else 0)
                for i in range(n)
            )
            c = out.get(key, 0) + ca * cb
            if c:
                out[key] = c
            else:
                out.pop(key, None)
    return out


@lru_cache(maxsize=None)
def _power_sum_in_elementary(n):
    """p_n in the e-basis, by Newton's identity
    p_n = e_1 p_{n-1} - e_2 p_{n-2} + ... + (-1)^{n-1} n e_n."""
    if n == 0:
        return {(): 1}
    top = (0,) * (n - 1) + (1,)
    out = {top: (-1) ** (n - 1) * n}
    for i in range(1, n):
        e_i = {(0,) * (i - 1) + (1,): (-1) ** (i - 1)}
        for dvec, coeff in _emul(e_i, _power_sum_in_elementary(n - i), n).items():
            c = out.get(dvec, 0) + coeff
            if c:
                out[dvec] = c
            else:
                out.pop(dvec, None)
    return out


@lru_cache(maxsize=None)
def _product_one_plus_power_expansion(c, max_weight):
    """prod_i (1 + t_i^c) through weight max_weight, in the e-basis.

    W = exp(sum_m (-1)^{m+1} p_{cm} / m) is evaluated by the weighted
    Euler-derivative recurrence n W_n = sum_{cm <= n} (-1)^{m+1} c p_{cm}
    W_{n-cm}; each step's sum is exactly divisible by n, so the arithmetic
    never leaves the integers."""
    by_weight = {0: {(): 1}}
    for n in range(1, max_weight + 1):
        acc = {}
        m = 1
        while c * m <= n:
            rest = by_weight.get(n - c * m)
            if rest:
                sign = c if m % 2 else -c
                for d1, c1 in _power_sum_in_elementary(c * m).items():
                    for d2, c2 in rest.items():
                        k = max(len(d1), len(d2))
                        key = tuple(
                            (d1[i] if i < len(d1) else 0)
                            + (d2[i] if i < len(d2) else 0)
                            for i in range(k)
                        )
                        acc[key] = acc.get(key, 0) + sign * c1 * c2
            m += 1
        piece = {}
        for dvec, coeff in acc.items():
            if coeff:
                q, r = divmod(coeff, n)
                if r:
                    raise ArithmeticError("non-integral symmetric expansion")
                piece[dvec] = q
        if piece:
            by_weight[n] = piece
    out = {}
    for chunk in by_weight.values():
        for dvec, coeff in chunk.items():
            out[_trim(dvec)] = coeff
    return out


def _substitute_chern(parent, dvec, chern, degree_bound):
    """prod_j chern[j-1]^{d_j}, or zero when a needed c_j is missing."""
    acc = parent.one()
    for j, d in enumerate(dvec, start=1):
        if not d:
            continue
        if j > len(chern):
            return parent.zero()
        acc = acc * (chern[j - 1] ** d)
        if not acc:
            return acc
    return acc


def _splitting_total(parent, chern, c, truncation):
    """prod_i (1 + t_i^c) with e_j = chern[j-1], as a TotalClass."""
    bound = 2 * truncation
    comps = {0: parent.one()}
    pieces = {}
    for dvec, coeff in _product_one_plus_power_expansion(c, truncation).items():
        w = _dvec_weight(dvec)
        if not w:
            continue
        term = _substitute_chern(parent, dvec, chern, bound)
        if term:
            pieces[w] = pieces.get(w, parent.zero()) + term.scale(coeff)
    for w, piece in pieces.items():
        if piece:
            comps[2 * w] = piece
    return TotalClass(parent, bound, comps)


def _eta(parent, bound):
    if parent.omega is None:
        raise OmegaUndeclared("the prime-2 etale class needs a distinguished omega")
    omega = parent.gen(parent.omega)
    return TotalClass(parent, bound, {0: parent.one(), 1: omega})


def w_bro(parent: RingPresentation, v: VirtualBundle) -> TotalClass:
    """Chow-theoretic total class prod (1 + t^(l-1)), extended to virtual
    classes multiplicatively."""
    v.validate(parent)
    c = parent.prime - 1
    num = _splitting_total(parent, v.numerator_chern, c, v.truncation)
    if not v.denominator_chern:
        return num
    den = _splitting_total(parent, v.denominator_chern, c, v.truncation)
    return num * den.inverse()


def w_et(parent: RingPresentation, v: VirtualBundle) -> TotalClass:
    """Etale total class: prod (1 + omega + t) for l = 2, the Chow formula
    for odd l.  Rank enters only through the factor (1 + omega)^rank."""
    v.validate(parent)
    if parent.prime != 2:
        return w_bro(parent, v)
    bound = 2 * v.truncation
    eta = _eta(parent, bound)

    def side(chern):
        # sum_j eta^(-j) c_j; the global eta^rank is applied once at the end
        acc = TotalClass.unit(parent, bound)
        inv = eta.inverse()
        power = TotalClass.unit(parent, bound)
        for j, cj in enumerate(chern, start=1):
            power = power * inv
            acc = acc + power * cj
        return acc

    out = eta.power(v.rank) * side(v.numerator_chern)
    if v.denominator_chern:
        out = out * side(v.denominator_chern).inverse()
    return out


def verify_wet_chow(parent: RingPresentation, v: VirtualBundle) -> bool:
    """Check w_et(v) = sum_j (1 + omega)^(rank - j) * (degree-2j part of
    w_bro(v)) at l = 2; for odd l both sides are the same formula."""
    if parent.prime != 2:
        return w_et(parent, v) == w_bro(parent, v)
    bound = 2 * v.truncation
    lhs = w_et(parent, v)
    chow = w_bro(parent, v)
    eta = _eta(parent, bound)
    rhs = TotalClass(parent, bound)
    for d, piece in chow.components.items():
        j = d // 2
        rhs = rhs + eta.power(v.rank - j) * piece
    return lhs == rhs


# --------------------------------------------------------------------------
# Projective-bundle pushforward and the relative Wu verification.


def _hyperplane_data(parent, hyperplane):
    if hyperplane not in parent.index:
        raise NotProjectiveBundleScenario("no generator %r" % hyperplane)
    gi = parent.index[hyperplane]
    rule = parent.rules.get(gi)
    if rule is None or rule[1]:
        raise NotProjectiveBundleScenario(
            "generator %r is not nilpotent by a rule with zero right side" % hyperplane
        )
    if parent.generators[gi].degree != 2 or parent.generators[gi].parity != "even":
        raise NotProjectiveBundleScenario("hyperplane class must be even of degree 2")
    return gi, rule[0] - 1  # fiber dimension n


def fiber_dimension(parent: RingPresentation, hyperplane: str = "l") -> int:
    """The n for which the hyperplane class satisfies l^(n+1) = 0."""
    return _hyperplane_data(parent, hyperplane)[1]


def projective_pushforward(parent: RingPresentation, x, n: int, hyperplane: str = "l"):
    """Coefficient of hyperplane^n: integration over a P^n fiber.  Accepts a
    RingElement or TotalClass; the result lives in the same presentation
    (supported on hyperplane-free monomials)."""
    gi, fiber_n = _hyperplane_data(parent, hyperplane)
    if fiber_n != n:
        raise NotProjectiveBundleScenario(
            "presentation truncates at %d but pushforward was asked for n=%d" % (fiber_n, n)
        )
    if isinstance(x, TotalClass):
        comps = {}
        for d, elt in x.components.items():
            pushed = projective_pushforward(parent, elt, n, hyperplane)
            if pushed:
                comps[d - 2 * n] = pushed
        return TotalClass(parent, x.bound - 2 * n, comps)
    terms = {}
    for m, c in x.terms.items():
        if m[gi] != n:
            continue
        stripped = list(m)
        stripped[gi] = 0
        terms[tuple(stripped)] = c
    return RingElement(parent, terms)


def normal_bundle_total(parent: RingPresentation, n: int, bound: int,
                        hyperplane: str = "l") -> TotalClass:
    """w_et of the relative virtual normal bundle of P^n -> point over the
    base: (1+omega)/(1+omega+l)^(n+1) at l=2, (1+l^(l-1))^-(n+1) at odd l."""
    gi, fiber_n = _hyperplane_data(parent, hyperplane)
    lam = parent.gen(hyperplane)
    if parent.prime == 2:
        eta = _eta(parent, bound)
        denom = eta + TotalClass(parent, bound, {2: lam})
        return eta * denom.power(-(n + 1))
    one_plus = TotalClass.unit(parent, bound) + TotalClass(
        parent, bound, {2 * (parent.prime - 1): lam ** (parent.prime - 1)}
    )
    return one_plus.power(-(n + 1))


def total_operation_class(parent: RingPresentation, x, bound: int) -> TotalClass:
    """Total Sq (l=2) or total P (odd l) of an element, as a TotalClass."""
    comps = {}
    for m, c in x.terms.items():
        mono = parent.element({m: c})
        deg = parent.monomial_degree(m)
        for i, piece in parent.total_sq(mono).items():
            shift = i if parent.prime == 2 else 2 * i * (parent.prime - 1)
            d = deg + shift
            if d > bound:
                continue
            acc = comps.get(d)
            comps[d] = piece if acc is None else acc + piece
    return TotalClass(parent, bound, comps)


def verify_relative_wu_projective(parent: RingPresentation, y, m: int,
                                  hyperplane: str = "l") -> bool:
    """Check Sq(f_* x) = f_*(Sq(x) . w_et(N_f)) for x = y * hyperplane^m over
    the projective-bundle presentation (f the bundle projection, y a base
    class).  Exact in every degree up to the instability-forced bound."""
    gi, n = _hyperplane_data(parent, hyperplane)
    if not 0 <= m <= n:
        raise ValueError("need 0 <= m <= n")
    for mono in y.terms:
        if mono[gi]:
            raise ValueError("y must be a base class (no hyperplane factor)")
    ydeg = max((parent.monomial_degree(mo) for mo in y.terms), default=0)
    bound = parent.prime * (ydeg + 2 * m) + 2 * (n - m) + 2
    lam = parent.gen(hyperplane)
    x = y * lam ** m
    lhs = total_operation_class(parent, y if m == n else parent.zero(), bound - 2 * n)
    sq_x = total_operation_class(parent, x, bound)
    rhs = projective_pushforward(
        parent, sq_x * normal_bundle_total(parent, n, bound, hyperplane), n, hyperplane
    )
    return lhs == rhs


def twisted_total_on_cycle(parent: RingPresentation, x: TwistedClass,
                           bound: int) -> TotalClass:
    """The operation tracking cycle classes: sum_i (1+omega)^(codim-i)
    Sq^(2i)(x) for l = 2, total P for odd l.  Needs x.codim."""
    if x.codim is None:
        raise MissingCodim("twisted_total_on_cycle needs the cycle codimension")
    if parent.prime != 2:
        return total_operation_class(parent, x.value, bound)
    eta = _eta(parent, bound)
    out = TotalClass(parent, bound)
    for i in range(0, x.degree // 2 + 1):
        piece = parent.apply_letter(2 * i, x.value)
        if piece:
            out = out + eta.power(x.codim - i) * piece
    return out
