"""How many commutative tables with i*i = -1 behave like omega?

Every table is unital, commutative and has i*i = -1; that leaves five free
entries, 8**5 = 32768 candidates. Each is filtered by five requirements
and the survivors are grouped up to relabeling j <-> k and sign flips.
"""
import time

from hyperalg.algebra import OMEGA_TABLE
from hyperalg.search import PREDICATES, SearchConfig, canonicalize, count_candidates, search

cfg = SearchConfig(worker_count=2)
print("candidates:", count_candidates(cfg))

t0 = time.perf_counter()
res = search(cfg)
print(f"searched in {time.perf_counter() - t0:.1f}s")

# Where each candidate first fails, in pruning order
for name in PREDICATES:
    print(f"  fails {name:14s} {res.census[name]:6d}")
print(f"  passes all      {res.census['passed']:6d}")

print(f"\n{len(res.survivors)} survivors fall into {len(res.canonical)} class(es)")
for table, count in res.canonical:
    print(f"\ncanonical form, {count} raw tables:\n{table}")
print("\nomega's class:", canonicalize(OMEGA_TABLE).codes() == res.canonical[0][0].codes())

# Dropping requirements lets more through. Associativity alone:
loose = search(SearchConfig(predicates={"P_assoc"}))
print(f"associativity only: {len(loose.survivors)} survivors, {len(loose.canonical)} classes")
