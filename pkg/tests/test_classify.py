"""Classifiers: Bennequin reports, the three rules, the dispatcher."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

import surgerycalc.data as bundled
from surgerycalc import (
    AmbientStatus,
    Conclusion,
    InconsistentAssumptions,
    LegendrianKnotData,
    NotCoprime,
    SurgeryComponent,
    SurgeryDiagram,
    bennequin_check,
    classify_diagram,
    classify_lemma_tight,
    classify_thm1,
    classify_thm2,
    dual_invariants_closed_form,
    verdict_from_bennequin,
    verdict_to_obj,
)
from surgerycalc.classify import CONWAY_FLAG, RULE_NONE
from surgerycalc.invariants import DualKnotInvariants

from helpers import random_diagram


def knot(tb, rot, chi, cid="L"):
    return LegendrianKnotData(id=cid, tb=tb, rot=rot, euler_char=chi)


# --------------------------------------------------------------------------
# Bennequin reports


def test_bennequin_standard_unknot_equality():
    invariants = DualKnotInvariants(
        tb_q=Fraction(-1), rot_q=Fraction(0), order=1, euler_char=1
    )
    report = bennequin_check(invariants)
    assert report.lhs == -1 and report.rhs == -1
    assert report.satisfied


def test_bennequin_violation_direct():
    invariants = DualKnotInvariants(
        tb_q=Fraction(2), rot_q=Fraction(-1), order=1, euler_char=-1
    )
    report = bennequin_check(invariants)
    assert report.lhs == 3 and report.rhs == 1
    assert not report.satisfied
    verdict = verdict_from_bennequin(report)
    assert verdict.conclusion is Conclusion.OVERTWISTED
    assert verdict.rule == "bennequin-violation"
    assert any("reconstructed" in line for line in verdict.trace)


def test_bennequin_full_pipeline():
    invariants = dual_invariants_closed_form(-2, 2, -1, 1)
    assert invariants.tb_q == 2 and invariants.rot_q == -2
    report = bennequin_check(invariants)
    assert report.lhs == 4 and report.rhs == 1
    assert not report.satisfied


# --------------------------------------------------------------------------
# Overtwisting criterion in tight manifolds


def test_thm1_fires():
    verdict = classify_thm1(AmbientStatus.TIGHT, knot(-2, 2, -1), 5)
    assert verdict.conclusion is Conclusion.OVERTWISTED
    assert verdict.rule == "thm1"
    assert any("violation" in line for line in verdict.trace)


def test_thm1_standard_unknot_inconclusive():
    verdict = classify_thm1(AmbientStatus.TIGHT, knot(-1, 0, 1), 1)
    assert verdict.conclusion is Conclusion.INCONCLUSIVE
    assert verdict.rule == "none"


def test_thm1_unknown_ambient_inconclusive():
    verdict = classify_thm1(AmbientStatus.UNKNOWN, knot(-2, 2, -1), 1)
    assert verdict.conclusion is Conclusion.INCONCLUSIVE


def test_thm1_orientation_flag():
    negative_rotation = knot(-2, -2, -1)
    assert (
        classify_thm1(AmbientStatus.TIGHT, negative_rotation, 1).conclusion
        is Conclusion.OVERTWISTED
    )
    literal = classify_thm1(
        AmbientStatus.TIGHT, negative_rotation, 1, both_orientations=False
    )
    assert literal.conclusion is Conclusion.INCONCLUSIVE


def test_thm1_soundness_coupling():
    # Every Overtwisted verdict re-executes its mechanism: the closed
    # form invariants must genuinely violate the bound.
    for tb in range(-5, 0):
        for n in range(1, 6):
            if n * tb + 1 == 0:
                continue
            for chi in (-1, -3):
                for rot in range(-chi + 1, -chi - tb + 1):
                    verdict = classify_thm1(
                        AmbientStatus.TIGHT, knot(tb, rot, chi), n
                    )
                    assert verdict.conclusion is Conclusion.OVERTWISTED
                    report = bennequin_check(
                        dual_invariants_closed_form(tb, rot, chi, n)
                    )
                    assert not report.satisfied


def test_thm1_strictness_boundary_grid():
    # rot = -chi exactly: the bound chain endpoints coincide, so the
    # criterion certifies nothing and must stay inconclusive.
    for tb in range(-6, 0):
        for chi in (-1, -3, -5):
            for n in range(1, 7):
                boundary = -chi
                verdict = classify_thm1(AmbientStatus.TIGHT, knot(tb, boundary, chi), n)
                assert verdict.conclusion is Conclusion.INCONCLUSIVE
                if n * tb + 1 != 0:
                    order = abs(n * tb + 1)
                    assert Fraction(chi + 2 * boundary, order) == Fraction(-chi, order)


def test_thm1_unrealizable_input_has_honest_trace():
    # tb + |rot| > -chi already breaks the classical bound for the knot
    # itself; the verdict still follows the criterion but the trace must
    # not assert the (then false) middle chain inequality.
    verdict = classify_thm1(AmbientStatus.TIGHT, knot(-1, 100, -1), 2)
    assert verdict.conclusion is Conclusion.OVERTWISTED
    assert any("break the classical bound" in line for line in verdict.trace)
    assert not any(">= (euler_char + 2*rot)/order" in line for line in verdict.trace)


def test_thm1_degenerate_order_zero_edge():
    # tb = -1, n = 1 meets the hypotheses with rot = 2, chi = -1 but the
    # dual is not rationally nullhomologous; the verdict still stands on
    # the criterion, with the degeneracy recorded.
    verdict = classify_thm1(AmbientStatus.TIGHT, knot(-1, 2, -1), 1)
    assert verdict.conclusion is Conclusion.OVERTWISTED
    assert any("not rationally nullhomologous" in line for line in verdict.trace)


# --------------------------------------------------------------------------
# Overtwisted ambient criterion


def test_thm2_fires_on_unit_fractions():
    verdict = classify_thm2(AmbientStatus.OVERTWISTED, Fraction(1, 4))
    assert verdict.conclusion is Conclusion.OVERTWISTED
    assert verdict.rule == "thm2"
    assert classify_thm2(AmbientStatus.OVERTWISTED, Fraction(1)).conclusion is (
        Conclusion.OVERTWISTED
    )


def test_thm2_negative_coefficient_inconclusive():
    verdict = classify_thm2(AmbientStatus.OVERTWISTED, Fraction(-1))
    assert verdict.conclusion is Conclusion.INCONCLUSIVE


def test_thm2_needs_overtwisted_ambient():
    assert (
        classify_thm2(AmbientStatus.TIGHT, Fraction(1, 4)).conclusion
        is Conclusion.INCONCLUSIVE
    )


# --------------------------------------------------------------------------
# Tightness persistence


def test_lemma_tight_integer_surgery():
    verdict = classify_lemma_tight(True, 2, 1)
    assert verdict.conclusion is Conclusion.TIGHT
    assert verdict.rule == "lemma-tight"
    assert any("preserves tightness" in line for line in verdict.trace)


def test_lemma_tight_needs_p_greater_q():
    assert classify_lemma_tight(True, 1, 2).conclusion is Conclusion.INCONCLUSIVE


def test_lemma_tight_needs_premise():
    assert classify_lemma_tight(False, 5, 2).conclusion is Conclusion.INCONCLUSIVE


def test_lemma_tight_not_coprime():
    with pytest.raises(NotCoprime):
        classify_lemma_tight(True, 2, 2)


# --------------------------------------------------------------------------
# Dispatcher


def test_classify_empty_diagram():
    diagram = SurgeryDiagram(
        ambient=AmbientStatus.TIGHT, components=(), linking=()
    )
    assert classify_diagram(diagram) == []


def test_classify_counterexample_all_n():
    diagram = bundled.load("figure1.json")
    for n in range(2, 11):
        verdicts = classify_diagram(diagram, {"L": True}, p=n, q=1)
        tight = [v for v in verdicts if v.conclusion is Conclusion.TIGHT]
        assert len(tight) == 1
        flagged = any(CONWAY_FLAG in line for line in tight[0].trace)
        assert flagged == (n == 2)  # 2 <= n < |tb| = 3


def test_classify_pipeline_thm1():
    diagram = SurgeryDiagram(
        ambient=AmbientStatus.TIGHT,
        components=(
            SurgeryComponent(
                knot=knot(-2, 2, -1, "K"), contact_coefficient=Fraction(1, 2)
            ),
        ),
        linking=((0,),),
    )
    verdicts = classify_diagram(diagram)
    assert len(verdicts) == 1
    assert verdicts[0].conclusion is Conclusion.OVERTWISTED
    assert verdicts[0].rule == "thm1"
    assert verdicts[0].trace[0] == "component 'K':"


def test_classify_overtwisted_ambient_uses_thm2():
    diagram = SurgeryDiagram(
        ambient=AmbientStatus.OVERTWISTED,
        components=(
            SurgeryComponent(
                knot=knot(-5, 0, 1, "K"), contact_coefficient=Fraction(1, 3)
            ),
        ),
        linking=((0,),),
    )
    verdicts = classify_diagram(diagram)
    assert verdicts[0].rule == "thm2"
    assert verdicts[0].conclusion is Conclusion.OVERTWISTED


def test_classify_rejects_assumption_in_overtwisted_ambient():
    diagram = SurgeryDiagram(
        ambient=AmbientStatus.OVERTWISTED,
        components=(SurgeryComponent(knot=knot(-3, 0, 1, "K")),),
        linking=((0,),),
    )
    with pytest.raises(InconsistentAssumptions):
        classify_diagram(diagram, {"K": True}, p=2, q=1)


def test_classify_rejects_assumption_against_derived_overtwistedness():
    diagram = SurgeryDiagram(
        ambient=AmbientStatus.TIGHT,
        components=(
            SurgeryComponent(
                knot=knot(-2, 2, -1, "K"), contact_coefficient=Fraction(1)
            ),
            SurgeryComponent(knot=knot(-3, 0, 1, "D")),
        ),
        linking=((0, 0), (0, 0)),
    )
    with pytest.raises(InconsistentAssumptions):
        classify_diagram(diagram, {"D": True}, p=2, q=1)


def test_classify_rejects_assumption_on_surgered_component():
    diagram = bundled.load("s1xs2.json")
    from surgerycalc import ValidationError

    with pytest.raises(ValidationError):
        classify_diagram(diagram, {"K": True}, p=2, q=1)


def test_classify_no_tight_and_overtwisted_together():
    rng = random.Random(777)
    seen_tight = seen_overtwisted = 0
    for _ in range(300):
        diagram = random_diagram(rng)
        assumptions = {}
        if diagram.ambient is not AmbientStatus.OVERTWISTED:
            for component in diagram.components:
                if not component.is_surgered and rng.random() < 0.5:
                    assumptions[component.id] = True
        p = rng.choice((None, 2, 3, 5))
        q = 1 if p is None or p == 2 or rng.random() < 0.7 else 2
        try:
            verdicts = classify_diagram(diagram, assumptions, p=p, q=q)
        except InconsistentAssumptions:
            continue  # rejection is the documented behaviour
        conclusions = {v.conclusion for v in verdicts}
        assert not (
            Conclusion.TIGHT in conclusions and Conclusion.OVERTWISTED in conclusions
        )
        seen_tight += Conclusion.TIGHT in conclusions
        seen_overtwisted += Conclusion.OVERTWISTED in conclusions
    # the property must not pass vacuously
    assert seen_tight > 0 and seen_overtwisted > 0


def test_verdict_serialization_shape():
    verdict = classify_lemma_tight(True, 2, 1)
    obj = verdict_to_obj(verdict)
    assert obj["conclusion"] == "tight"
    assert obj["rule"] == "lemma-tight"
    assert isinstance(obj["trace"], list)
    assert all(isinstance(line, str) for line in obj["trace"])


def test_verdict_invariant_rule_none_iff_inconclusive():
    from surgerycalc import ValidationError, Verdict

    with pytest.raises(ValidationError):
        Verdict(conclusion=Conclusion.TIGHT, rule=RULE_NONE, trace=())
    with pytest.raises(ValidationError):
        Verdict(conclusion=Conclusion.INCONCLUSIVE, rule="thm1", trace=())
