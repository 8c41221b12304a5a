"""Compare the compiled kernels with the pure-Python ones.

    python benchmarks/bench_kernels.py [--repeat 5]

Kernel rows call both implementations on identical inputs in this process.
The end-to-end rows run a fixed workload in a child process twice, once
with ``FROBLAB_PURE=1``, so module-level dispatch is exercised as shipped.
"""

import argparse
import os
import subprocess
import sys
import timeit

from froblab import RingSpec, minors_ideal
from froblab import kernels
from froblab.groebner import _internal, groebner
from froblab.poly import DEGREVLEX

WORKLOADS = {
    "verify_main 2x3 p=3": (
        "from froblab.determinantal import verify_main\n"
        "from froblab.testideal import StabilizationPolicy\n"
        "assert verify_main(2, 3, 3, policy=StabilizationPolicy(3, 3)).passed"),
    "groebner I_2 of 3x3 p=5": (
        "from froblab import minors_ideal\n"
        "assert len(minors_ideal(3, 3, 2, 5).groebner()) > 0"),
}


def kernel_cases():
    R = RingSpec.of(32003, "x y z w")
    f = R.parse("x^3 + 2*y^2*z - z*w^4 + 7*x*y*z*w + w^2 + 3")
    g = f * f + R.parse("x*y - 5*z^2")
    a, b = dict(f.packed_terms), dict(g.packed_terms)

    I = minors_ideal(2, 3, 2, 3)
    gb = groebner(I.generators)
    h = (I.generators[0] + I.generators[1]) ** 3 + I.ring.parse("x_1_1^5*x_2_3")
    terms = _internal(h, DEGREVLEX.key_function(I.ring))

    S = RingSpec.of(3, "x y z")
    d = dict(S.parse("x^17*y^4 + 2*y^13*z^9 + x^5*y^5*z^5 + z^26").packed_terms)

    def reduce_args():
        return ({k: c for k, _, c in terms}, {k: P for k, P, _ in terms},
                gb._reducers, I.ring.guard, I.ring.p)

    return {
        "mul_terms": lambda impl: impl.mul_terms(a, b, R.p),
        "reduce_terms": lambda impl: impl.reduce_terms(*reduce_args()),
        "decompose_terms": lambda impl: impl.decompose_terms(d, S.shifts, S.field_mask, 9),
    }


def best(func, repeat):
    timer = timeit.Timer(func)
    n, _ = timer.autorange()
    return min(timer.repeat(repeat, n)) / n


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"backend in this process: {kernels.BACKEND}")
    if kernels.BACKEND != "cython":
        print("compiled extension not built; nothing to compare")
        return 1
    from froblab import _ckernels

    print(f"{'case':28} {'pure':>12} {'compiled':>12} {'speedup':>8}")
    for name, call in kernel_cases().items():
        assert call(_ckernels) == call(kernels.pure), name
        tp = best(lambda: call(kernels.pure), args.repeat)
        tc = best(lambda: call(_ckernels), args.repeat)
        print(f"{name:28} {tp * 1e6:10.1f}us {tc * 1e6:10.1f}us {tp / tc:7.2f}x")
    for name, code in WORKLOADS.items():
        times = []
        for pure in (True, False):
            env = dict(os.environ, FROBLAB_PURE="1") if pure else {
                k: v for k, v in os.environ.items() if k != "FROBLAB_PURE"}
            cmd = [sys.executable, "-c", code]
            times.append(min(timeit.repeat(
                lambda: subprocess.run(cmd, env=env, check=True), number=1,
                repeat=max(1, args.repeat // 2))))
        tp, tc = times
        print(f"{name:28} {tp * 1e3:10.1f}ms {tc * 1e3:10.1f}ms {tp / tc:7.2f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
