"""Compare the compiled kernels with the pure-Python reference.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each case runs on both backends, checks that the results agree and prints
the best wall time of N repeats.  The last case is an end-to-end rank
computation (the quad-a obstruction check) under each backend.
"""

import argparse
import os
import random
import subprocess
import sys
import time

from artinqp._kernels import _pykernels as py
from artinqp.charvar.rank import Packing

try:
    from artinqp._kernels import _ckernels as cy
except ImportError:
    cy = None


def rand_poly(rng, pk, nterms, maxexp, coeff=50):
    out = {}
    while len(out) < nterms:
        key = pk.pack([rng.randrange(maxexp) for _ in range(pk.nvars)])
        out[key] = rng.randint(-coeff, coeff) or 1
    return out


def best(fn, repeat):
    times = []
    res = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        res = fn()
        times.append(time.perf_counter() - t0)
    return min(times), res


def cases(rng):
    pk = Packing(4, 12)
    a = [rand_poly(rng, pk, 60, 6) for _ in range(20)]
    b = [rand_poly(rng, pk, 60, 6) for _ in range(20)]
    prods = [py.mpoly_mul(x, y) for x, y in zip(a, b)]
    prev = rand_poly(rng, pk, 6, 3)
    steps = [(py.mpoly_mul(prev, rand_poly(rng, pk, 10, 3)), rand_poly(rng, pk, 10, 3),
              rand_poly(rng, pk, 10, 3)) for _ in range(50)]
    mat = [[rng.randrange(1 << 30) for _ in range(80)] for _ in range(80)]
    pt = [rng.randrange(2, 1 << 30) for _ in range(4)]
    big = rand_poly(rng, pk, 400, 12)

    def c_mul(k):
        return lambda: [k.mpoly_mul(x, y) for x, y in zip(a, b)]

    def c_div(k):
        return lambda: [k.mpoly_divexact(pr, y, pk.guard) for pr, y in zip(prods, b)]

    def c_step(k):
        def run():
            out = []
            for aij, aik, akj in steps:
                num_p = k.mpoly_mul(prev, aij)
                out.append(k.bareiss_step(prev, num_p, aik, k.mpoly_mul(prev, akj), prev,
                                          pk.guard))
            return out
        return run

    def c_rank(k):
        return lambda: k.rank_mod_p(mat, 2147483647)

    def c_eval(k):
        return lambda: [k.eval_mod_p(big, pt, pk.bits, 2147483647) for _ in range(20)]

    return [("mpoly_mul 20x(60*60 terms)", c_mul), ("mpoly_divexact 20x", c_div),
            ("bareiss_step 50x", c_step), ("rank_mod_p 80x80", c_rank),
            ("eval_mod_p 20x400 terms", c_eval)]


END_TO_END = {
    "quad a/b/c verification x3": (
        "from artinqp.graph import quad_graph;"
        "from artinqp.qpdecide import decide_and_verify;"
        "import time;t=time.perf_counter();"
        "[decide_and_verify(quad_graph(w)) for w in 'abc' for _ in range(3)];"
        "print(time.perf_counter()-t)"
    ),
    "Tri1 label-8 supergraphs": (
        "from artinqp.graph import LabeledGraph;"
        "from artinqp.qpdecide import decide_and_verify;"
        "import time;t=time.perf_counter();"
        "ext=[('x','u',2),('x','v',6),('x','w',4)];"
        "[decide_and_verify(LabeledGraph.build('uvwx',[('u','v',a),('u','w',b),('v','w',c)]+ext))"
        " for a,b,c in [(8,4,2),(8,4,4),(8,8,2),(8,8,8),(10,4,2)]];"
        "print(time.perf_counter()-t)"
    ),
}


def end_to_end(backend, code):
    env = dict(os.environ, ARTINQP_KERNELS=backend)
    out = subprocess.run([sys.executable, "-c", code], env=env, check=True,
                         capture_output=True, text=True)
    return float(out.stdout.strip())


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    if cy is None:
        print("compiled kernels not built; only the Python backend is available")
    rng = random.Random(args.seed)
    print(f"{'case':32} {'python [s]':>11} {'cython [s]':>11} {'speedup':>8}")
    for name, make in cases(rng):
        tp, rp = best(make(py), args.repeat)
        if cy is None:
            print(f"{name:32} {tp:11.4f} {'-':>11} {'-':>8}")
            continue
        tc, rc = best(make(cy), args.repeat)
        if rp != rc:
            raise SystemExit(f"backends disagree on {name}")
        print(f"{name:32} {tp:11.4f} {tc:11.4f} {tp / tc:7.1f}x")
    for name, code in END_TO_END.items():
        tp = end_to_end("python", code)
        if cy is None:
            print(f"{name:32} {tp:11.4f}")
            continue
        tc = end_to_end("cython", code)
        print(f"{name:32} {tp:11.4f} {tc:11.4f} {tp / tc:7.1f}x")

if __name__ == "__main__":
    main()
