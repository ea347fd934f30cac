"""Time the in-ring Bernoulli table against prime size and spot-check it
against the exact rational values where those are cheap."""

import sys
import time

from harmonic_congruences.exact import bernoulli_exact
from harmonic_congruences.residues import Modulus, primes_in_range, reduce_rational
from harmonic_congruences.tables import bernoulli_mod_p

upper = int(sys.argv[1]) if len(sys.argv) > 1 else 4000
exact = bernoulli_exact(120)

for p in primes_in_range(5, upper):
    if p > 100 and p not in (211, 503, 1009, 2003, 3001, 3989) and p != primes_in_range(2, upper)[-1]:
        continue
    t0 = time.perf_counter()
    table = bernoulli_mod_p(p)
    ms = (time.perf_counter() - t0) * 1000
    mod = Modulus(p, 1)
    ok = all(table[j] == reduce_rational(exact[j], mod).value for j in range(0, min(p - 3, 120) + 1, 2))
    # irregular pairs (p, j): p divides the numerator of B_j
    irregular = [j for j in range(2, p - 2, 2) if table[j] == 0]
    print(f"p={p:<5} {ms:8.1f} ms  exact-match={ok}  irregular indices={irregular}")
