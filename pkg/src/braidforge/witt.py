"""Gauss sums of quadratic forms and the Witt group of metric forms.

The Gauss sums are tau(+/-) = sum over g of e^(+-2*pi*i*q(g)), exact
cyclotomic numbers.  Metric forms modulo the isotropic-subquotient
equivalence make a group under orthogonal direct sum; each class is
stored by its anisotropic representative labels per prime, and the
class is detected by reducing to the anisotropic quotient.  The
tau(+) value separates classes at each prime, landing in the finite
set generated by fourth/eighth roots and the rank-1 Gauss sum.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .config import DEFAULT, Config
from .cyclotomic import CycloNum, root_sum
from .errors import ClassificationBug, NotMetric
from .qform import (
    PreMetricGroup,
    build_labeled_form,
    classify_anisotropic,
    direct_sum,
    is_metric,
    isotropic_subgroups,
    odd_rank1,
    quotient_form,
    trivial_form,
)

_METRIC_KINDS = {"OddRank1", "OddNorm", "A", "M", "MplusA"}


@dataclass(frozen=True)
class GaussReport:
    tau_plus: CycloNum
    tau_minus: CycloNum
    norm_check: bool            # (metric implies tau+ tau- = |G|)
    positivity: object          # Fraction when tau+ is rational, else None


def gauss_sum(M: PreMetricGroup) -> GaussReport:
    tau = root_sum((v, 1) for v in M.values)
    taub = tau.conjugate()
    metric = is_metric(M)
    check = (not metric) or tau * taub == CycloNum.from_rational(M.order)
    return GaussReport(tau, taub, check, tau.as_rational())


def tau_plus(M: PreMetricGroup) -> CycloNum:
    return root_sum((v, 1) for v in M.values)


def is_hyperbolic(M: PreMetricGroup, config: Config = DEFAULT):
    """(found, witness): a Lagrangian subgroup if one exists."""
    for rec in isotropic_subgroups(M, config):
        if rec.is_lagrangian:
            return True, rec.subgroup
    return False, None


@dataclass(frozen=True)
class WittClass:
    """Per-prime anisotropic metric representative labels.

    Absent prime = trivial class there; the zero class is the empty
    tuple.  Labels are the canonical classification labels, so equality
    of classes is equality of fields.
    """

    parts: tuple  # sorted tuple of (p, AnisotropicLabel)

    def __post_init__(self):
        for _, lab in self.parts:
            if lab.kind not in _METRIC_KINDS:
                raise NotMetric(f"label {lab} is not a metric class")
        object.__setattr__(self, "parts", tuple(sorted(self.parts)))

    @property
    def is_zero(self) -> bool:
        return not self.parts

    def at(self, p: int):
        for q, lab in self.parts:
            if q == p:
                return lab
        return None

    def representative(self) -> PreMetricGroup:
        M = trivial_form()
        for _, lab in self.parts:
            M = direct_sum(M, build_labeled_form(lab))
        return M

    def __repr__(self):
        if not self.parts:
            return "WittClass(0)"
        return "WittClass(%s)" % ", ".join(f"{p}: {lab}" for p, lab in self.parts)


ZERO_CLASS = WittClass(())


def anisotropic_quotient(M: PreMetricGroup, config: Config = DEFAULT) -> PreMetricGroup:
    """The anisotropic subquotient, by repeated single-line reduction.

    Quotienting by one isotropic cyclic subgroup at a time reaches the
    same isomorphism class as one pass through a maximal isotropic
    subgroup, and keeps every intermediate enumeration tiny.
    """
    from .abelian import Subgroup

    while True:
        g = next((e for e in M.group.elements()[1:] if M.q(e) == 0), None)
        if g is None:
            return M
        M = quotient_form(M, Subgroup.generated(M.group, [g]))


def witt_class(M: PreMetricGroup, config: Config = DEFAULT) -> WittClass:
    """The Witt class of a metric form."""
    if not is_metric(M):
        raise NotMetric("Witt classes are defined for non-degenerate forms")
    core = anisotropic_quotient(M, config)
    labels = classify_anisotropic(core)
    return WittClass(tuple((lab.prime, lab) for lab in labels))


def witt_add(c1: WittClass, c2: WittClass, config: Config = DEFAULT) -> WittClass:
    return witt_class(direct_sum(c1.representative(), c2.representative()), config)


def witt_neg(c: WittClass, config: Config = DEFAULT) -> WittClass:
    return witt_class(c.representative().negated(), config)


# ---------------------------------------------------------------------------
# the tau+ labels
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TauLabel:
    """tau+ of a Witt class modulo positive rationals.

    ``unit`` is the root-of-unity factor as a fraction exponent (an
    eighth root at p = 2, a sign at odd p); ``radical`` counts the
    rank-1 Gauss-sum generator mod 2 (1+i at p = 2, the quadratic Gauss
    sum at odd p).
    """

    unit: Fraction
    radical: int


def _radical_generator(p: int) -> CycloNum:
    if p == 2:
        return CycloNum.one() + CycloNum.from_root(Fraction(1, 4))  # 1 + i
    return tau_plus(odd_rank1(p, 1))


def tau_image(c: WittClass, p: int) -> TauLabel:
    """Express tau+ of the class at p in the canonical generators."""
    lab = c.at(p)
    if lab is None:
        return TauLabel(Fraction(0), 0)
    tau = tau_plus(build_labeled_form(lab))
    units = (
        [Fraction(k, 8) for k in range(8)]
        if p == 2
        else [Fraction(0), Fraction(1, 2)]
    )
    for rad_exp, val in ((0, tau), (1, tau / _radical_generator(p))):
        for u in units:
            r = (val / CycloNum.from_root(u)).as_rational()
            if r is not None and r > 0:
                return TauLabel(u, rad_exp)
    raise ClassificationBug(f"tau+ of {lab} outside the generator set at p = {p}")
