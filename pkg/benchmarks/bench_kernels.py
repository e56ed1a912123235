"""Compare the compiled and pure-Python cyclotomic kernels.

    python benchmarks/bench_kernels.py [--repeat N] [--json]
"""
import argparse
import json
import random
import timeit

from hirzebruch import _pykernels

try:
    from hirzebruch import _ckernels
except ImportError:
    _ckernels = None

N = 5


def _random_entry(rng):
    return _pykernels.normalize(tuple(rng.randint(-50, 50) for _ in range(N - 1)),
                                rng.randint(1, 12))


def _random_matrix(rng):
    return tuple(tuple(_random_entry(rng) for _ in range(3)) for _ in range(3))


def _word_product(mod, mats, length):
    acc = mats[0]
    for k in range(1, length):
        acc = mod.matmul(acc, mats[k % len(mats)], N)
    return acc


def run(repeat):
    rng = random.Random(0)
    a, b = _random_entry(rng), _random_entry(rng)
    mats = [_random_matrix(rng) for _ in range(3)]
    cases = {
        "mul": lambda m: m.mul(a[0], a[1], b[0], b[1], N),
        "matmul": lambda m: m.matmul(mats[0], mats[1], N),
        "word_product_40": lambda m: _word_product(m, mats, 40),
    }
    backends = {"python": _pykernels}
    if _ckernels is not None:
        backends["cython"] = _ckernels
    rows = []
    for name, fn in cases.items():
        if _ckernels is not None:
            assert fn(_pykernels) == fn(_ckernels), name
        row = {"case": name}
        for label, mod in backends.items():
            t = min(timeit.repeat(lambda: fn(mod), number=repeat, repeat=3))
            row[label + "_us"] = round(1e6 * t / repeat, 2)
        if "cython_us" in row:
            row["speedup"] = round(row["python_us"] / row["cython_us"], 2)
        rows.append(row)
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=2000)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    rows = run(args.repeat)
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    if _ckernels is None:
        print("compiled extension not built; timing the pure-Python kernels only")
    for r in rows:
        print("  ".join(f"{k}={v}" for k, v in r.items()))


if __name__ == "__main__":
    main()
