"""
Cross-checking successive minima
================================

Two independent computations: exterior powers (partial sums of minima) and
Smith normal form for integer weights (the minima themselves).
"""
import itertools

from ultranorm.normspace import successive_minima
from ultranorm.oracles import exterior_minima_oracle, random_instance, run_suite, snf_minima_oracle, suite_instances

a, b = random_instance(7, 4, 5, weight_denominator_bound=1)
lams = successive_minima(a, b)
print("engine:      ", [str(x) for x in lams])
print("Smith form:  ", [str(x) for x in snf_minima_oracle(a, b)])
print("partial sums:", [str(x) for x in itertools.accumulate(lams)])
print("exterior:    ", [str(exterior_minima_oracle(a, b, k)) for k in range(1, 5)])

reports = run_suite(suite_instances(100, seed=0))
print(sum(r.equal for r in reports), "of", len(reports), "comparisons agree")
