"""Which classic axioms survive once proportionality carries weight.

With any positive weight a party can lose a district it gained votes in,
and two profiles with the same statewide vote can get different seat
totals. PR escapes the second problem and FPTP the first.
"""

from misrep.core import INFINITY
from misrep.rules import gerrymandering_proofness_counterexample, strong_monotonicity_counterexample


def show(profile):
    return '(' + ', '.join(str(x) for x in profile) + ')'


for w in ('0', '0.1', '1'):
    res = strong_monotonicity_counterexample(w, 3)
    if not res:
        print(f'w = {w}: strong monotonicity holds ({res.reason})')
        continue
    print(f'w = {w}: A wins district {res.lost_district} at {show(res.before)}')
    print(f'        but loses it at {show(res.after)}, where A only gained votes')

print()
for w in ('0.5', INFINITY):
    res = gerrymandering_proofness_counterexample(w, 4)
    if not res:
        print(f'w = {w}: gerrymandering-proofness holds ({res.reason})')
        continue
    print(f'w = {w}: {show(res.first)} -> {res.first_seats} seats')
    print(f'          {show(res.second)} -> {res.second_seats} seats, same statewide vote')
