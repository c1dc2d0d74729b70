"""Tight or overtwisted: the decision rules in action.

The classifiers are three-valued and only ever certify what a rule
proves; Inconclusive is the honest default. Every Overtwisted verdict
from the tight-ambient rule re-executes its mechanism: the dual knot's
violation of the rational Bennequin bound tb_Q + |rot_Q| <= -chi/order.
"""

from fractions import Fraction

import surgerycalc.data as bundled
from surgerycalc import (
    AmbientStatus,
    LegendrianKnotData,
    bennequin_check,
    classify_diagram,
    classify_lemma_tight,
    classify_thm1,
    classify_thm2,
    dual_invariants_closed_form,
)


def show(title, verdict):
    print(f"\n{title}")
    print(f"  -> {verdict.conclusion.value} (rule: {verdict.rule})")
    for line in verdict.trace:
        print(f"     {line}")


# Tight ambient, tb < 0, rot > -chi: contact (+1/n)-surgery is overtwisted.
knot = LegendrianKnotData(id="K", tb=-2, rot=2, euler_char=-1)
show("(+1/5)-surgery along tb=-2, rot=2, chi=-1 in a tight manifold:",
     classify_thm1(AmbientStatus.TIGHT, knot, n=5))

# The standard unknot does not meet the hypotheses: (+1)-surgery along it
# gives the tight S^1 x S^2, and the rule stays silent.
unknot = LegendrianKnotData(id="U", tb=-1, rot=0, euler_char=1)
show("(+1)-surgery along the standard unknot:",
     classify_thm1(AmbientStatus.TIGHT, unknot, n=1))

# Boundary rot = -chi: the bound chain collapses to an equality and
# certifies nothing, even though the raw numbers may look violated.
boundary = LegendrianKnotData(id="B", tb=-2, rot=1, euler_char=-1)
show("boundary case rot = -chi:",
     classify_thm1(AmbientStatus.TIGHT, boundary, n=1))
report = bennequin_check(dual_invariants_closed_form(-2, 1, -1, 1))
print(f"     (raw dual arithmetic at the boundary: lhs={report.lhs}, "
      f"rhs={report.rhs}, satisfied={report.satisfied})")

# Overtwisted ambient: any (+1/n)-surgery stays overtwisted.
show("(+1/4)-surgery in an overtwisted manifold:",
     classify_thm2(AmbientStatus.OVERTWISTED, Fraction(1, 4)))

# Tightness persists from (+1) to (+p/q) with p > q.
show("(+2)-surgery given that (+1)-surgery is tight:",
     classify_lemma_tight(True, 2, 1))

# The bundled counterexample: L has tb = -3 in the surgered manifold,
# yet (+2)-surgery along it is tight, contradicting the conjecture that
# (+n)-surgery on a tb <= -2 knot with n < |tb| is overtwisted.
figure = bundled.load("figure1.json")
print("\nfull dispatcher on the counterexample diagram (query n = 2):")
for verdict in classify_diagram(figure, {"L": True}, p=2, q=1):
    print(f"  -> {verdict.conclusion.value} (rule: {verdict.rule})")
    for line in verdict.trace:
        print(f"     {line}")
