"""Exact semialgebraic multistationarity regions for the covered families.

Regions are finite unions of conjunctions of polynomial sign conditions
with integer coefficients over the network's rate symbols (and a
total-constant symbol c when the network has a conservation law).  All
open regions use strict inequalities; degenerate families yield equality
conditions on measure-zero sets.

Enabling regions for two-species networks are stated with respect to the
canonical RREF conservation-law matrix produced by the network module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .classify import (
    MatchedCase,
    UnsupportedFamilyError,
    build_box_diagram,
    classify_one_species,
    classify_two_species,
)
from .massaction import ParamPoly
from .network import ReactionNetwork, conservation_matrix
from .unipoly import TrinomialForm, trinomial_D

# ---------------------------------------------------------------------------
# Sparse integer polynomials over named symbols

Term = tuple[int, tuple[int, ...]]


class SymPoly:
    """Sparse polynomial with integer coefficients over a fixed symbol list."""

    __slots__ = ("nsym", "terms")

    def __init__(self, nsym: int, terms: dict[tuple[int, ...], int] | None = None):
        self.nsym = nsym
        self.terms = {e: c for e, c in (terms or {}).items() if c != 0}

    @classmethod
    def const(cls, nsym: int, c: int) -> "SymPoly":
        return cls(nsym, {(0,) * nsym: int(c)})

    @classmethod
    def symbol(cls, nsym: int, idx: int, coeff: int = 1) -> "SymPoly":
        e = tuple(1 if i == idx else 0 for i in range(nsym))
        return cls(nsym, {e: int(coeff)})

    @classmethod
    def monomial(cls, nsym: int, coeff: int, exps: Sequence[int]) -> "SymPoly":
        return cls(nsym, {tuple(exps): int(coeff)})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "SymPoly") -> "SymPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return SymPoly(self.nsym, out)

    def __neg__(self) -> "SymPoly":
        return SymPoly(self.nsym, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "SymPoly") -> "SymPoly":
        return self + (-other)

    def __mul__(self, other: "SymPoly") -> "SymPoly":
        out: dict[tuple[int, ...], int] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out.get(e, 0) + ca * cb
        return SymPoly(self.nsym, out)

    def __pow__(self, n: int) -> "SymPoly":
        result = SymPoly.const(self.nsym, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, k: int) -> "SymPoly":
        return SymPoly(self.nsym, {e: c * k for e, c in self.terms.items()})

    def normalized(self) -> "SymPoly":
        """Divide out the common monomial factor and integer content.

        Both are strictly positive on the positive orthant, so sign
        conditions are unchanged; this makes emitted polynomials canonical.
        """
        if self.is_zero():
            return self
        mins = [min(e[i] for e in self.terms) for i in range(self.nsym)]
        g = math.gcd(*(abs(c) for c in self.terms.values()))
        return SymPoly(
            self.nsym,
            {
                tuple(x - m for x, m in zip(e, mins)): c // g
                for e, c in self.terms.items()
            },
        )

    def signs(self) -> list[int]:
        return [1 if c > 0 else -1 for c in self.terms.values()]

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            v = Fraction(c)
            for base, exp in zip(point, e):
                if exp:
                    v *= Fraction(base) ** exp
            total += v
        return total

    def evaluate_float(self, point: Sequence[float]) -> float:
        total = 0.0
        for e, c in self.terms.items():
            v = float(c)
            for base, exp in zip(point, e):
                if exp:
                    v *= base**exp
            total += v
        return total

    def sorted_terms(self) -> list[Term]:
        return [(c, e) for e, c in sorted(self.terms.items())]

    def __eq__(self, other) -> bool:
        return isinstance(other, SymPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        return f"SymPoly({self.nsym}, {self.terms!r})"


@dataclass(frozen=True)
class SignCondition:
    poly: SymPoly
    rel: str  # "<0", "=0", ">0"

    def __post_init__(self) -> None:
        if self.rel not in ("<0", "=0", ">0"):
            raise ValueError(f"bad relation {self.rel!r}")
        if self.poly.is_zero():
            raise ValueError("sign condition on the zero polynomial")

    def holds(self, point: Sequence) -> bool:
        v = self.poly.evaluate(point)
        if self.rel == "<0":
            return v < 0
        if self.rel == ">0":
            return v > 0
        return v == 0

    def holds_float(self, point: Sequence[float]) -> bool:
        v = self.poly.evaluate_float(point)
        if self.rel == "<0":
            return v < 0
        if self.rel == ">0":
            return v > 0
        return v == 0


@dataclass(frozen=True)
class Region:
    """Union of conjunctions of sign conditions over the positive parameters.

    kind is "allowing" (ambient: rate constants) or "enabling" (rate
    constants plus total-constant symbols).  An empty tuple of conjuncts is
    the empty region; a conjunct that is itself empty is the full positive
    orthant.  witnesses optionally stores one validated interior rational
    point per conjunct.
    """

    kind: str
    ambient: tuple[str, ...]
    conjuncts: tuple[tuple[SignCondition, ...], ...]
    case_tag: str
    witnesses: tuple[tuple[Fraction, ...] | None, ...] = field(default=None)

    def __post_init__(self) -> None:
        if self.kind not in ("allowing", "enabling"):
            raise ValueError("kind must be 'allowing' or 'enabling'")
        if self.witnesses is None:
            object.__setattr__(self, "witnesses", (None,) * len(self.conjuncts))
        if len(self.witnesses) != len(self.conjuncts):
            raise ValueError("one witness slot per conjunct required")

    @property
    def is_empty(self) -> bool:
        return not self.conjuncts


def membership(region: Region, point: Sequence) -> bool:
    """Exact rational membership test; point follows region.ambient order."""
    pt = tuple(Fraction(v) for v in point)
    if len(pt) != len(region.ambient):
        raise ValueError(
            f"point has {len(pt)} coordinates, ambient is {len(region.ambient)}"
        )
    return any(all(cond.holds(pt) for cond in conj) for conj in region.conjuncts)


def membership_float(region: Region, point: Sequence[float]) -> bool:
    """Fast floating-point membership; used by the sampling probe."""
    return any(
        all(cond.holds_float(point) for cond in conj) for conj in region.conjuncts
    )


# ---------------------------------------------------------------------------
# One-species regions


def net_ode_poly(net: ReactionNetwork) -> ParamPoly:
    """The single mass-action ODE of a one-species network."""
    if net.num_species != 1:
        raise UnsupportedFamilyError("net ODE polynomial requires one species")
    from .massaction import ode_rhs

    return ode_rhs(net)[0]


def one_species_coefficient_forms(net: ReactionNetwork) -> dict[int, SymPoly]:
    """Coefficient of x^m as a linear form in the rate symbols."""
    r = net.num_reactions
    forms: dict[int, SymPoly] = {}
    for i, rxn in enumerate(net.reactions):
        m = rxn.reactant.coeffs[0]
        step = rxn.product.coeffs[0] - m
        forms.setdefault(m, SymPoly(r))
        forms[m] = forms[m] + SymPoly.symbol(r, i, step)
    return {m: f for m, f in forms.items() if not f.is_zero()}


def region_one_species_three_reactions(net: ReactionNetwork) -> Region:
    """Single-inequality region for one-species, three-reaction networks."""
    verdict = classify_one_species(net)
    ambient = net.rate_labels
    if not verdict.multistationary:
        return Region("allowing", ambient, (), "one_species_not_multistationary")
    # sorted reactant order fixes the roles of kappa_1, kappa_2, kappa_3
    order = sorted(range(3), key=lambda i: net.reactions[i].reactant.coeffs[0])
    ms = [net.reactions[i].reactant.coeffs[0] for i in order]
    ells = [
        abs(net.reactions[i].product.coeffs[0] - net.reactions[i].reactant.coeffs[0])
        for i in order
    ]
    k, n = ms[1] - ms[0], ms[2] - ms[0]
    d = math.gcd(n, k)
    N, K = n // d, k // d
    nsym = 3
    t1 = SymPoly.monomial(
        nsym,
        n**N * ells[0] ** (N - K) * ells[2] ** K,
        _unit_exps(nsym, {order[0]: N - K, order[2]: K}),
    )
    t2 = SymPoly.monomial(
        nsym,
        -((n - k) ** (N - K)) * k**K * ells[1] ** N,
        _unit_exps(nsym, {order[1]: N}),
    )
    poly = (t1 + t2).normalized()
    cond = SignCondition(poly, "<0")
    witness = _one_species_witness(net, verdict.matched_case)
    return Region(
        "allowing", ambient, ((cond,),), "one_species_three_reactions", (witness,)
    )


def _unit_exps(nsym: int, assignments: dict[int, int]) -> tuple[int, ...]:
    e = [0] * nsym
    for idx, exp in assignments.items():
        e[idx] += exp
    return tuple(e)


def _forced_sign(form: SymPoly) -> int:
    """+1/-1 if the linear form has a fixed sign on the positive orthant, else 0."""
    s = form.signs()
    if all(v > 0 for v in s):
        return 1
    if all(v < 0 for v in s):
        return -1
    return 0


def region_one_species_net_trinomial(net: ReactionNetwork) -> Region:
    """Region for one-species networks whose net ODE has at most 3 exponents.

    The region is a union of at most two conjuncts, one per alternating
    sign pattern of the coefficient linear forms; each conjunct pairs the
    pattern's strict sign conditions with the trinomial condition D < 0.
    """
    if net.num_species != 1:
        raise UnsupportedFamilyError("requires one species")
    forms = one_species_coefficient_forms(net)
    exps = sorted(forms)
    if len(exps) > 3:
        raise UnsupportedFamilyError("net ODE has more than 3 distinct exponents")
    ambient = net.rate_labels
    if len(exps) < 3:
        # a binomial or monomial has at most one positive root for every kappa
        return Region("allowing", ambient, (), "one_species_net_trinomial")
    k = exps[1] - exps[0]
    n = exps[2] - exps[0]
    d = math.gcd(n, k)
    N, K = n // d, k // d
    L = [forms[e] for e in exps]
    conjuncts: list[tuple[SignCondition, ...]] = []
    witnesses: list[tuple[Fraction, ...] | None] = []
    for pattern in ((1, -1, 1), (-1, 1, -1)):
        conds: list[SignCondition] = []
        feasible = True
        signed: list[SymPoly] = []
        for form, want in zip(L, pattern):
            forced = _forced_sign(form)
            a = form if want > 0 else -form
            signed.append(a)
            if forced == want:
                continue
            if forced == -want:
                feasible = False
                break
            conds.append(SignCondition(a.normalized(), ">0"))
        if not feasible:
            continue
        a0, a1, a2 = signed
        dpoly = (
            a0 ** (N - K) * a2**K
        ).scale(n**N) - (a1**N).scale((n - k) ** (N - K) * k**K)
        conds.append(SignCondition(dpoly.normalized(), "<0"))
        witness = _pattern_witness(net, exps, pattern, n, k, N, K)
        if witness is None:
            continue  # pattern is unreachable with positive rates
        conjuncts.append(tuple(conds))
        witnesses.append(witness)
    return Region(
        "allowing",
        ambient,
        tuple(conjuncts),
        "one_species_net_trinomial",
        tuple(witnesses),
    )


def _pattern_witness(net, exps, pattern, n, k, N, K):
    """Construct a rational kappa inside one sign-pattern conjunct.

    Sets every rate to 1, adjusts one reaction per exponent group so the
    coefficient has the pattern's sign, then scales the middle group until
    the trinomial D is negative.  Returns None when a group cannot take
    the required sign with positive rates.
    """
    groups: dict[int, list[tuple[int, int]]] = {e: [] for e in exps}
    for i, rxn in enumerate(net.reactions):
        m = rxn.reactant.coeffs[0]
        groups[m].append((i, rxn.product.coeffs[0] - m))
    kappa = [Fraction(1)] * net.num_reactions
    for e, want in zip(exps, pattern):
        steps = groups[e]
        if not any((s > 0) == (want > 0) for _, s in steps):
            return None
        total = sum(Fraction(s) for _, s in steps)
        if (total > 0) == (want > 0) and total != 0:
            continue
        i, s = next((i, s) for i, s in steps if (s > 0) == (want > 0))
        # shift this rate so the group total lands at want * 1
        rest = total - s * kappa[i]
        kappa[i] = (Fraction(want) - rest) / s
    forms = one_species_coefficient_forms(net)

    def coeff(e) -> Fraction:
        return forms[e].evaluate(kappa)

    middle_idx, middle_step = next(
        (i, s)
        for i, s in groups[exps[1]]
        if (s > 0) == (pattern[1] > 0)
    )
    for _ in range(200):
        b = abs(coeff(exps[0]) / coeff(exps[2]))
        c = abs(coeff(exps[1]) / coeff(exps[2]))
        t = TrinomialForm(n, k, b, c)
        if trinomial_D(t) < 0:
            return tuple(kappa)
        kappa[middle_idx] *= 2
    return None


def _one_species_witness(net, matched_case):
    pattern = (1, -1, 1) if matched_case is MatchedCase.ONE_SPECIES_A else (-1, 1, -1)
    forms = one_species_coefficient_forms(net)
    exps = sorted(forms)
    k, n = exps[1] - exps[0], exps[2] - exps[0]
    d = math.gcd(n, k)
    return _pattern_witness(net, exps, pattern, n, k, n // d, k // d)


# ---------------------------------------------------------------------------
# Two-species, two-reaction regions


@dataclass(frozen=True)
class CutoffFunction:
    """The tangency cutoff c* as a function of the two rate constants.

    c* = u1 * K * (1 + 1/alpha) * (-gamma*alpha/K)^(1/(1+alpha)) with
    K = (lam * kappa / kappa_tilde)^(1/a2), expressed through exact
    rational data; evaluate() uses floating point for the radicals.
    """

    u1: int
    a1: int
    a2: int
    gamma: Fraction
    alpha: Fraction
    lam: Fraction

    @property
    def m(self) -> int:
        return self.a1 + self.a2

    def evaluate(self, kappa: Fraction, kappa_tilde: Fraction) -> float:
        """The tangency value t*; its sign is the sign of m/a2."""
        pm = self.power_m(kappa, kappa_tilde)
        mag = abs(self.u1) * float(abs(pm)) ** (1.0 / self.m)
        return mag if Fraction(self.m, self.a2) > 0 else -mag

    def power_m(self, kappa: Fraction, kappa_tilde: Fraction) -> Fraction:
        """Exact value of (c*/u1)^m, rational for rational inputs."""
        G = -self.gamma * self.alpha
        return (
            Fraction(self.m, self.a2) ** self.m
            * (self.lam * Fraction(kappa) / Fraction(kappa_tilde))
            * G**self.a1
        )


def cutoff_c_star(net: ReactionNetwork) -> CutoffFunction:
    """Cutoff function for a nondegenerately multistationary 2x2 network."""
    verdict = classify_two_species(net)
    if not verdict.nondegenerate:
        raise UnsupportedFamilyError("cutoff defined only for the nondegenerate case")
    box = build_box_diagram(net)
    u1 = box.y_prime[0] - box.y[0]
    a1 = box.y_tilde[0] - box.y[0]
    a2 = box.y_tilde[1] - box.y[1]
    return CutoffFunction(u1, a1, a2, box.gamma, box.alpha, box.lam)


def _fraction_as_sympoly_pair(q: Fraction) -> tuple[int, int]:
    return q.numerator, q.denominator


def region_two_species_two_reactions(net: ReactionNetwork) -> tuple[Region, Region]:
    """(enabling, allowing) regions of a two-species, two-reaction network.

    The enabling region is w.r.t. the RREF conservation-law matrix; its
    ambient symbols are the two rate labels followed by "c".
    """
    verdict = classify_two_species(net)
    box = build_box_diagram(net)
    labels = net.rate_labels
    amb_en = labels + ("c",)
    amb_al = labels
    tag = f"two_species_{verdict.matched_case.value}_{verdict.detail}".replace(" ", "_")
    if not verdict.multistationary:
        return (
            Region("enabling", amb_en, (), tag),
            Region("allowing", amb_al, (), tag),
        )
    lam = box.lam
    if verdict.nondegenerate:
        cut = cutoff_c_star(net)
        enabling = _nondegenerate_enabling(net, cut, amb_en, tag)
        allowing = Region("allowing", amb_al, ((),), tag)
        return enabling, allowing
    # degenerate cases
    detail = verdict.detail
    nsym = 3
    kap = SymPoly.symbol(nsym, 0)
    kapt = SymPoly.symbol(nsym, 1)
    ln, ld = _fraction_as_sympoly_pair(lam)
    if detail == "case 2":
        # with y' - y = -lam (y~' - y~), steady states exist iff kappa_tilde = lam kappa
        eq = SignCondition((kapt.scale(ld) - kap.scale(ln)).normalized(), "=0")
        enabling = Region("enabling", amb_en, ((eq,),), tag)
        allowing = Region("allowing", amb_al, ((SignCondition(
            (SymPoly.symbol(2, 1).scale(ld) - SymPoly.symbol(2, 0).scale(ln)).normalized(),
            "=0",
        ),),), tag)
        return enabling, allowing
    if detail == "case 1":
        u1 = box.y_prime[0] - box.y[0]
        u2 = box.y_prime[1] - box.y[1]
        a2 = box.y_tilde[1] - box.y[1]
        # slopes coincide iff lam * kappa = kappa_tilde * gamma^a2, gamma = u2/u1 > 0
        if a2 >= 0:
            lhs = kap.scale(ln * u1**a2)
            rhs = kapt.scale(ld * u2**a2)
        else:
            lhs = kap.scale(ln * u2 ** (-a2))
            rhs = kapt.scale(ld * u1 ** (-a2))
        eq = SignCondition((lhs - rhs).normalized(), "=0")
        czero = SignCondition(SymPoly.symbol(nsym, 2), "=0")
        enabling = Region("enabling", amb_en, ((czero, eq),), tag)
        allowing = Region(
            "allowing",
            amb_al,
            ((SignCondition(SymPoly(2, {e[:2]: c for e, c in eq.poly.terms.items()}), "=0"),),),
            tag,
        )
        return enabling, allowing
    # cases 3 and 4: the steady-state set is an axis-parallel line matching
    # exactly one compatibility class
    if detail == "case 3":
        e = box.y[0] - box.y_tilde[0]
    else:
        e = box.y[1] - box.y_tilde[1]
    # steady-state line: c^e = kappa_tilde / (lam * kappa), e = y_i - y~_i
    c = SymPoly.symbol(nsym, 2)
    if e > 0:
        poly = (kap * c**e).scale(ln) - kapt.scale(ld)
    else:
        poly = (kapt * c ** (-e)).scale(ld) - kap.scale(ln)
    conds = (
        SignCondition(c, ">0"),
        SignCondition(poly.normalized(), "=0"),
    )
    enabling = Region("enabling", amb_en, (conds,), tag)
    allowing = Region("allowing", amb_al, ((),), tag)
    return enabling, allowing


def _nondegenerate_enabling(net, cut: CutoffFunction, ambient, tag) -> Region:
    """Enabling region from the cutoff case analysis, in RREF-c coordinates."""
    w = conservation_matrix(net).rows[0]
    u1 = cut.u1
    u2 = int(cut.gamma * u1)
    # normalized row [-u2, u1] = s * w
    s = Fraction(-u2) / w[0] if w[0] != 0 else Fraction(u1) / w[1]
    mu = s / u1  # t = mu * c_rref
    m = cut.m
    M = abs(m)
    alpha = cut.alpha
    s_t = 1 if (Fraction(m) / cut.a2) > 0 else -1  # sign of t*
    # dir: True means |t| > |t*| inside the region
    bigger = alpha > 0
    s_c = s_t * (1 if mu > 0 else -1)
    # R = (t*)^m = rho * kappa / kappa_tilde
    G = -cut.gamma * alpha
    rho = Fraction(m, cut.a2) ** m * G**cut.a1 * cut.lam
    rho_abs = abs(rho)
    nsym = 3
    mu_absM = abs(mu) ** M
    sgnM = s_c**M
    if m > 0:
        # |mu|^M * s_c^M * c^M * kappa_tilde  cmp  |rho| * kappa
        a = mu_absM
        b = rho_abs
        den = (a.denominator * b.denominator) // math.gcd(a.denominator, b.denominator)
        lhs = SymPoly.monomial(nsym, sgnM * int(a * den), (0, 1, M))
        rhs = SymPoly.monomial(nsym, int(b * den), (1, 0, 0))
    else:
        # |t|^M * |rho| * kappa / kappa_tilde cmp 1
        # => |mu|^M * s_c^M * c^M * |rho| * kappa cmp kappa_tilde
        a = mu_absM * rho_abs
        den = a.denominator
        lhs = SymPoly.monomial(nsym, sgnM * int(a * den), (1, 0, M))
        rhs = SymPoly.monomial(nsym, den, (0, 1, 0))
    diff = (lhs - rhs).normalized()
    rel = ">0" if bigger else "<0"
    main = SignCondition(diff, rel)
    c_cond = SignCondition(
        SymPoly.symbol(nsym, 2, 1 if s_c > 0 else -1), ">0"
    )
    witness = _nondeg_enabling_witness(cut, mu, s_c, bigger)
    return Region("enabling", ambient, ((c_cond, main),), tag, (witness,))


def _nondeg_enabling_witness(cut: CutoffFunction, mu, s_c, bigger):
    """A rational (kappa, kappa_tilde, c) strictly inside the region."""
    kappa = Fraction(1)
    kappa_tilde = Fraction(1)
    tstar = cut.evaluate(kappa, kappa_tilde)
    t = tstar * 2 if bigger else tstar / 2
    c = Fraction(t / float(mu)).limit_denominator(10**6)
    assert (c > 0) == (s_c > 0)
    return (kappa, kappa_tilde, c)


# ---------------------------------------------------------------------------
# Absolute-concentration-robustness reduction (Eq-(8)-shaped networks)


def region_acr_reduction(net: ReactionNetwork) -> Region:
    """Region for 2-species networks where one ODE fixes x1 as a rate ratio.

    Requires one ODE of the form x_i^s (p - q x_i) with single-rate
    monomials p, q, and the other ODE reducing to an alternating trinomial
    at the fixed coordinate.
    """
    from .massaction import ode_rhs

    if net.num_species != 2:
        raise UnsupportedFamilyError("ACR reduction requires two species")
    odes = ode_rhs(net)
    r = net.num_reactions
    for axis in (0, 1):
        other_axis = 1 - axis
        f = odes[axis]
        if f.is_zero():
            continue
        if any(xe[other_axis] != 0 for (xe, _ke) in f.terms):
            continue
        terms = sorted(f.terms.items(), key=lambda t: t[0][0][axis])
        if len(terms) != 2:
            continue
        (xe_lo, ke_lo), c_lo = terms[0]
        (xe_hi, ke_hi), c_hi = terms[1]
        if xe_hi[axis] - xe_lo[axis] != 1:
            continue
        if c_lo <= 0 or c_hi >= 0:
            continue
        # x_axis* = (c_lo/(-c_hi)) * kappa^(ke_lo - ke_hi), a monomial
        star_coeff = c_lo / (-c_hi)
        star_exps = tuple(a - b for a, b in zip(ke_lo, ke_hi))
        g = odes[other_axis]
        if g.is_zero():
            continue
        reduced: dict[int, tuple[Fraction, tuple[int, ...]]] = {}
        ok = True
        for (xe, ke), coeff in g.terms.items():
            e_star = xe[axis]
            mono_coeff = coeff * star_coeff**e_star
            mono_exps = tuple(
                k + e_star * se for k, se in zip(ke, star_exps)
            )
            key = xe[other_axis]
            if key in reduced:
                prev_c, prev_e = reduced[key]
                if prev_e != mono_exps:
                    ok = False
                    break
                reduced[key] = (prev_c + mono_coeff, prev_e)
            else:
                reduced[key] = (mono_coeff, mono_exps)
        if not ok:
            continue
        reduced = {k: v for k, v in reduced.items() if v[0] != 0}
        exps = sorted(reduced)
        if len(exps) != 3 or exps[0] != 0:
            continue
        k_exp, n_exp = exps[1], exps[2]
        signs = [1 if reduced[e][0] > 0 else -1 for e in exps]
        if signs not in ([1, -1, 1], [-1, 1, -1]):
            return Region("allowing", net.rate_labels, (), "acr_reduction")
        d = math.gcd(n_exp, k_exp)
        N, K = n_exp // d, k_exp // d
        # b = a0/a2, ctri = a1/a2 as monomials (magnitudes)
        a = {e: (abs(reduced[e][0]), reduced[e][1]) for e in exps}
        # D < 0: n^N b^(N-K) - (n-k)^(N-K) k^K ctri^N < 0; clear a2 powers
        t1_c = Fraction(n_exp) ** N * a[0][0] ** (N - K) * a[n_exp][0] ** K
        t1_e = tuple(
            (N - K) * x + K * y for x, y in zip(a[0][1], a[n_exp][1])
        )
        t2_c = (
            Fraction(n_exp - k_exp) ** (N - K)
            * Fraction(k_exp) ** K
            * a[k_exp][0] ** N
        )
        t2_e = tuple(N * x for x in a[k_exp][1])
        # clear negative exponents and rational coefficients
        min_e = [min(x, y, 0) for x, y in zip(t1_e, t2_e)]
        t1_e = tuple(x - mn for x, mn in zip(t1_e, min_e))
        t2_e = tuple(x - mn for x, mn in zip(t2_e, min_e))
        den = (t1_c.denominator * t2_c.denominator) // math.gcd(
            t1_c.denominator, t2_c.denominator
        )
        poly = SymPoly(
            r, {t1_e: int(t1_c * den), t2_e: -int(t2_c * den)}
        ).normalized()
        cond = SignCondition(poly, "<0")
        return Region("allowing", net.rate_labels, ((cond,),), "acr_reduction")
    raise UnsupportedFamilyError("network does not match the ACR reduction shape")


def regions_for_network(net: ReactionNetwork) -> tuple[Region, Region]:
    """Dispatch to the covered family; returns (enabling, allowing).

    Full-dimensional networks have identical regions up to kind; networks
    with a conservation law get the case-analytic enabling description.
    """
    from .network import is_full_dimensional

    if net.num_species == 1:
        allowing = region_one_species_net_trinomial(net)
        enabling = Region(
            "enabling",
            allowing.ambient,
            allowing.conjuncts,
            allowing.case_tag,
            allowing.witnesses,
        )
        return enabling, allowing
    if net.num_species == 2:
        if net.num_reactions == 2:
            return region_two_species_two_reactions(net)
        allowing = region_acr_reduction(net)
        if not is_full_dimensional(net):
            raise UnsupportedFamilyError(
                "ACR-shaped network with a conservation law is not covered"
            )
        enabling = Region(
            "enabling",
            allowing.ambient,
            allowing.conjuncts,
            allowing.case_tag,
            allowing.witnesses,
        )
        return enabling, allowing
    raise UnsupportedFamilyError(
        f"{net.num_species}-species networks are not covered"
    )


# ---------------------------------------------------------------------------
# Projection and connectivity verdicts


def project_to_allowing(region: Region) -> Region:
    """Project an enabling region of a covered family onto rate space."""
    if region.kind == "allowing":
        return region
    c_indices = [i for i, s in enumerate(region.ambient) if s.startswith("c")]
    if not c_indices:
        return Region(
            "allowing", region.ambient, region.conjuncts, region.case_tag, region.witnesses
        )
    tag = region.case_tag
    amb = tuple(s for i, s in enumerate(region.ambient) if i not in c_indices)

    def drop_c(poly: SymPoly) -> SymPoly:
        return SymPoly(
            len(amb),
            {
                tuple(x for i, x in enumerate(e) if i not in c_indices): c
                for e, c in poly.terms.items()
            },
        )

    if "nondeg" in tag or "zigzag" in tag or "case 3" in tag or "case_3" in tag or "case_4" in tag:
        if region.is_empty:
            return Region("allowing", amb, (), tag)
        return Region("allowing", amb, ((),), tag)
    if "case_1" in tag or "case_2" in tag or "case 1" in tag or "case 2" in tag:
        conjuncts = []
        for conj in region.conjuncts:
            kept = tuple(
                SignCondition(drop_c(c_.poly), c_.rel)
                for c_ in conj
                if all(e[i] == 0 for e in c_.poly.terms for i in c_indices)
            )
            conjuncts.append(kept)
        return Region("allowing", amb, tuple(conjuncts), tag)
    if region.is_empty:
        return Region("allowing", amb, (), tag)
    raise UnsupportedFamilyError(f"no case-analytic projection for tag {tag!r}")


@dataclass(frozen=True)
class ConnectivityVerdict:
    value: str  # "Connected", "Disconnected", "Unknown"
    justification: str
    witnesses: tuple[tuple[Fraction, ...], ...] = ()


def _one_negative_coefficient(cond: SignCondition) -> bool:
    """True when the condition is {g < 0} with exactly one negative coefficient."""
    poly = cond.poly if cond.rel == "<0" else -cond.poly if cond.rel == ">0" else None
    if poly is None:
        return False
    return sum(1 for c in poly.terms.values() if c < 0) == 1


def connectivity_verdict(region: Region) -> ConnectivityVerdict:
    """Analytic connectivity verdict for regions produced by this module."""
    if region.is_empty:
        return ConnectivityVerdict("Connected", "EmptyRegion")
    tag = region.case_tag
    if len(region.conjuncts) == 1:
        conj = region.conjuncts[0]
        if len(conj) == 0:
            return ConnectivityVerdict("Connected", "FullPositiveOrthant")
        strict = [c for c in conj if c.rel != "=0"]
        if len(conj) == 1 and _one_negative_coefficient(conj[0]):
            return ConnectivityVerdict("Connected", "FeliuTelek_one_negative")
        if tag.startswith("two_species"):
            return ConnectivityVerdict(
                "Connected", "PaperTheorem(two_species_two_reactions)"
            )
        if tag == "one_species_three_reactions" or tag == "one_species_net_trinomial":
            return ConnectivityVerdict(
                "Connected", "PaperTheorem(one_species_up_to_three_reactions)"
            )
        if tag == "acr_reduction" and _one_negative_coefficient(conj[-1]):
            return ConnectivityVerdict("Connected", "FeliuTelek_one_negative")
        return ConnectivityVerdict("Unknown", "ProbeOnly")
    # multiple conjuncts: disconnected when they sit in disjoint sign orthants
    # of the coefficient forms, each certified nonempty by a stored witness
    if all(w is not None for w in region.witnesses) and _disjoint_sign_conjuncts(
        region
    ):
        return ConnectivityVerdict(
            "Disconnected", "SignPatternSplit", tuple(region.witnesses)
        )
    return ConnectivityVerdict("Unknown", "ProbeOnly")


def _disjoint_sign_conjuncts(region: Region) -> bool:
    """Check pairwise that conjuncts impose contradictory strict sign conditions."""
    for i in range(len(region.conjuncts)):
        for j in range(i + 1, len(region.conjuncts)):
            opposed = False
            for ci in region.conjuncts[i]:
                for cj in region.conjuncts[j]:
                    if ci.rel == "=0" or cj.rel == "=0":
                        continue
                    if ci.poly == cj.poly and ci.rel != cj.rel:
                        opposed = True
                    if ci.poly == -cj.poly and ci.rel == cj.rel:
                        opposed = True
            if not opposed:
                return False
    return True


# ---------------------------------------------------------------------------
# Serialization


def condition_to_json(cond: SignCondition) -> dict:
    return {
        "poly": [[c, list(e)] for c, e in cond.poly.sorted_terms()],
        "rel": cond.rel,
    }


def region_to_json(region: Region, verdict: ConnectivityVerdict | None = None) -> dict:
    out = {
        "kind": region.kind,
        "ambient": list(region.ambient),
        "conjuncts": [
            [condition_to_json(c) for c in conj] for conj in region.conjuncts
        ],
        "case_tag": region.case_tag,
    }
    if len(region.conjuncts) == 1:
        out["conditions"] = out["conjuncts"][0]
    if verdict is not None:
        out["connectivity"] = {
            "value": verdict.value,
            "justification": verdict.justification,
            "witnesses": [[str(v) for v in w] for w in verdict.witnesses],
        }
    return out
