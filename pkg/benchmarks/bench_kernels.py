"""Compare the numba and pure-numpy kernels.

    python benchmarks/bench_kernels.py [--n 256] [--repeat 20]

Also times one full alternating-projection iteration per filter with the
backend selected by ``POCSRECON_DISABLE_NUMBA``.
"""
import argparse
import timeit

import numpy as np

from pocsrecon import _accel
from pocsrecon.filters import FILTER_KINDS, FilterSpec, _kernels, apply_filter
from pocsrecon.fourier import data_projection, dft2, idft2, measure, radial_mask
from pocsrecon.phantom import shepp_logan


def best_of(fn, repeat):
    fn()  # warm-up / JIT compile
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=256)
    parser.add_argument("--repeat", type=int, default=20)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    u = rng.random((args.n, args.n))
    cases = {
        "diffuse (PM step)": (lambda: _kernels.diffuse_numpy(u, u, 0.1, 0.25, False),
                              lambda: _kernels.diffuse_numba(u, u, 0.1, 0.25, False)),
        "ti_haar_soft (4 levels)": (lambda: _kernels.ti_haar_soft_numpy(u, 4, 0.05),
                                    lambda: _kernels.ti_haar_soft_numba(u, 4, 0.05)),
    }
    print(f"n={args.n}, best of {args.repeat}")
    print(f"{'kernel':28s} {'numpy ms':>10s} {'numba ms':>10s} {'speedup':>8s}")
    for name, (np_fn, nb_fn) in cases.items():
        t_np = best_of(np_fn, args.repeat) * 1e3
        if _accel.HAS_NUMBA:
            t_nb = best_of(nb_fn, args.repeat) * 1e3
            print(f"{name:28s} {t_np:10.3f} {t_nb:10.3f} {t_np / t_nb:8.2f}")
        else:
            print(f"{name:28s} {t_np:10.3f} {'n/a':>10s}")

    truth = shepp_logan(args.n)
    obs = measure(truth, radial_mask(args.n, 22))
    print(f"\nfull iteration, backend={_accel.backend_name()}")
    for kind in FILTER_KINDS:
        spec = FilterSpec.default(kind)

        def one_iteration():
            idft2(data_projection(dft2(apply_filter(truth, spec, 0)), obs))

        print(f"{kind:28s} {best_of(one_iteration, args.repeat) * 1e3:10.3f} ms")


if __name__ == "__main__":
    main()
