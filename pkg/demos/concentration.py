"""Packing voters into fewer districts, seen through majorization.

Moving A's voters from a weak district to a strong one never raises total
misrepresentation when the rule and the evaluation use the same weight.
When they differ, a search finds a pair of profiles where concentration
makes things worse.
"""

from misrep import Profile
from misrep.majorization import majorizes, mm_violation_search, rule_value, t_transform

q = Profile(['0.55', '0.50', '0.45', '0.40'])
p = t_transform(q, 2, 0, '0.2')
print(f'dispersed    {q}')
print(f'concentrated {p}')
cert = majorizes(p, q)
print('partial-sum gaps:', ', '.join(str(g) for g in cert.partial_sum_gaps))
for w in ('0', '0.5', '2'):
    print(f'  w = {w}: value {rule_value(p, w, w)} <= {rule_value(q, w, w)}')

print()
v = mm_violation_search(lam='0.7', w_eval='0.2')
# the pair straddles the point where the rule switches seat totals, so the
# two profiles are almost equal while their scores jump
gap = max(abs(x - y) for x, y in zip(v.dominant.sorted_desc, v.dominated.sorted_desc))
print('rule weight 0.7, judged at weight 0.2')
print(f'  profile near {[round(float(x), 4) for x in v.dominant]}')
print(f'  the two profiles differ by at most {float(gap):.1e} per district')
print(f'  concentrated one scores {float(v.dominant_value):.6f}, '
      f'dispersed one {float(v.dominated_value):.6f}')
how = 'a constructed segment' if v.attempts_used == 0 else f'{v.attempts_used} random attempts'
print(f'  found on {how}')
