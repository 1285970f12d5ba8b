"""How the optimal seat total moves from FPTP to PR as the weight grows.

Twelve districts where Party A wins two seats under FPTP but is entitled to
about five. Each small increase in the weight on statewide proportionality
hands A one more of its strongest remaining districts.
"""

from fractions import Fraction

from misrep import Profile
from misrep.core import agg_misrep, dist_at, fptp_seats, pr_seats
from misrep.optimizer import cutoff_curve, seat_schedule

p = Profile('0.65 0.58 0.49 0.485 0.48 0.47 0.42 0.40 0.39 0.38 0.33 0.325'.split())

print(f'aggregate a = {p.aggregate} ({float(p.aggregate):.2f} seats)')
print(f'FPTP gives {fptp_seats(p)} seats, PR gives {pr_seats(p)}')
print()

sched = seat_schedule(p)
curve = cutoff_curve(p)
print('weight range          seats  Dist    Agg   cutoff')
for lo, hi, s in sched.rows():
    print(f'[{str(lo):>6}, {str(hi):>6})   {s:>5}  {str(dist_at(p, s)):>6}  '
          f'{str(agg_misrep(p, s)):>5}  {curve(lo)}')
print()

# every extra seat trades Dist for Agg at exactly the breakpoint weight
for w, s in zip(sched.breakpoints, range(sched.start_seats, sched.end_seats)):
    d_dist = dist_at(p, s + 1) - dist_at(p, s)
    d_agg = agg_misrep(p, s) - agg_misrep(p, s + 1)
    print(f'seat {s + 1}: costs {d_dist} of Dist, saves {d_agg} of Agg, '
          f'worth it once w >= {d_dist / d_agg} = {w}')
assert all(w == (dist_at(p, s + 1) - dist_at(p, s)) / (agg_misrep(p, s) - agg_misrep(p, s + 1))
           for w, s in zip(sched.breakpoints, range(2, 5)))
print(f'\nbeyond w = {Fraction(1, 25)} the cutoff rests at {curve(1)}')
