"""Benchmark: compiled screening kernels vs the pure-Python fallback, and
the gmpy2 backend vs the stdlib fallback on the bigint-heavy paths.

Run from the repository root:

    python benchmarks/bench_kernels.py
"""

import os
import subprocess
import sys
import time

from fibcf import Params, get_xi
from fibcf._kernels import COMPILED, _screen_py
from fibcf.backend import mpq, mpz


def _time(fn, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernels():
    xi = get_xi(Params(1, 2))
    br = xi.bracket(mpq(1, mpz(1) << 80))
    lo = br.lo
    fp1 = int((lo.numerator << 64) // lo.denominator)
    lo2 = br.power(2).lo
    fp2 = int((lo2.numerator << 64) // lo2.denominator)
    xi_f = float(br.mid())

    jobs = {
        "simul_screen X=10^5": lambda impl: impl.simul_screen(1, 10**5, fp1, fp2, 8 * (10**5 + 1)),
        "quad_screen  H=60": lambda impl: impl.quad_screen(60, 1, 60, xi_f, 1e-6, 1e-9, True),
    }
    print(f"{'kernel':<22}{'pure-python':>14}{'cython':>14}{'speedup':>10}")
    for name, job in jobs.items():
        t_py = _time(lambda: job(_screen_py))
        if COMPILED is not None:
            t_cy = _time(lambda: job(COMPILED))
            print(f"{name:<22}{t_py:>12.4f}s{t_cy:>12.4f}s{t_py / t_cy:>9.1f}x")
        else:
            print(f"{name:<22}{t_py:>12.4f}s{'(not built)':>14}")


_BACKEND_SNIPPET = """
import time
from fibcf import Params, get_xi, triple_sequence, growth_table
p = Params(1, 2)
t0 = time.perf_counter()
triples = triple_sequence(p, 24)
t1 = time.perf_counter()
xi = get_xi(p)
xi.bracket_digits(40000)
t2 = time.perf_counter()
growth_table(p, 18, xi=xi)
t3 = time.perf_counter()
print(f"{t1 - t0:.4f} {t2 - t1:.4f} {t3 - t2:.4f}")
"""


def bench_backends():
    rows = {}
    for backend in ("gmpy2", "python"):
        env = dict(os.environ, FIBCF_BACKEND=backend)
        out = subprocess.run(
            [sys.executable, "-c", _BACKEND_SNIPPET],
            capture_output=True,
            text=True,
            env=env,
        )
        if out.returncode:
            print(f"{backend}: failed ({out.stderr.strip().splitlines()[-1]})")
            continue
        rows[backend] = [float(v) for v in out.stdout.split()]
    labels = ("triple_sequence(24)", "xi bracket 4*10^4 digits", "growth table i<=18")
    print(f"\n{'bigint path':<26}{'python ints':>14}{'gmpy2':>14}{'speedup':>10}")
    for k, label in enumerate(labels):
        t_py = rows.get("python", [float('nan')] * 3)[k]
        t_gm = rows.get("gmpy2", [float('nan')] * 3)[k]
        print(f"{label:<26}{t_py:>12.4f}s{t_gm:>12.4f}s{t_py / t_gm:>9.1f}x")


if __name__ == "__main__":
    bench_kernels()
    bench_backends()
