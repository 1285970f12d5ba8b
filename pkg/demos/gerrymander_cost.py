"""What it costs a mapmaker to win an extra seat as the weight grows.

The cost is the smallest share of voters that must be moved between
districts, with the statewide vote held fixed. A higher weight on
proportionality makes the same seat grab more expensive, and eventually
impossible.
"""

from misrep import Profile
from misrep.gerrymander import INFEASIBLE, GerryTarget, gerry_cost, gerry_cost_oracle

p = Profile(['0.9', '0.8', '0.6', '0.1', '0.1', '0.1'])
print(f'baseline {p}, a = {p.aggregate}; target 4 seats')
for w in ('0', '0.1', '0.2', '0.3', '0.4'):
    target = GerryTarget(p, w, 4)
    res = gerry_cost(target)
    if res is INFEASIBLE:
        print(f'  w = {w}: no redistricting reaches 4 seats')
        continue
    oracle = gerry_cost_oracle(target, 100)
    print(f'  w = {w}: cost {res.cost} (grid search {oracle}), '
          f'every won district needs {res.threshold}')
    print(f'          e.g. {res.witness}')
