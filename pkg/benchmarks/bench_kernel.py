"""Time the compiled term kernel against the pure Python one.

Run ``python3 benchmarks/bench_kernel.py``; the script re-runs itself with
``JACOBIGEOM_PURE=1`` for the Python timings.
"""
import json
import os
import subprocess
import sys
import time


def workload():
    import random
    from jacobigeom.multivec import Multivector, schouten_bracket
    from jacobigeom.sampling import random_poly
    from jacobigeom.symring import KERNEL, PatchVars

    P = PatchVars(["x", "y", "t"])
    rng = random.Random(0)
    polys = [random_poly(P, rng, 3, 6, exps=[{"t": 1}, {"t": -1}]) for _ in range(40)]
    t0 = time.perf_counter()
    acc = P.zero()
    for i in range(len(polys) - 1):
        acc = acc + polys[i] * polys[i + 1]
    t_ring = time.perf_counter() - t0
    L = Multivector(P, 2, {(0, 1): polys[0], (0, 2): polys[1], (1, 2): polys[2]})
    t0 = time.perf_counter()
    for _ in range(5):
        schouten_bracket(L, L)
    t_bracket = time.perf_counter() - t0
    return {"kernel": KERNEL, "ring_products_s": round(t_ring, 4),
            "schouten_s": round(t_bracket, 4)}


if __name__ == "__main__":
    if "--child" in sys.argv:
        print(json.dumps(workload()))
        sys.exit(0)
    rows = []
    for pure in (False, True):
        env = dict(os.environ)
        env.pop("JACOBIGEOM_PURE", None)
        if pure:
            env["JACOBIGEOM_PURE"] = "1"
        out = subprocess.run([sys.executable, __file__, "--child"], env=env,
                             capture_output=True, text=True, check=True).stdout
        rows.append(json.loads(out))
    for r in rows:
        print("%-9s ring %.4fs  schouten %.4fs" % (r["kernel"], r["ring_products_s"],
                                                   r["schouten_s"]))
