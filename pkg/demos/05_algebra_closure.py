"""C-NOT plus local gates generate the full Lie algebra.

Compares the closure dimension with su(2^N) and so(2^N).
"""
import time

from cnotsynth.verification import expected_algebra_dimension, generated_algebra_dimension

for field in ("C", "R"):
    for n in (1, 2, 3, 4):
        start = time.perf_counter()
        got = generated_algebra_dimension(n, field)
        want = expected_algebra_dimension(n, field)
        print(f"{field} N={n}: {got:4d} of {want:4d}  ({time.perf_counter() - start:.2f}s)")
