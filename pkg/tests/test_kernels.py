import json
import os
import random
import subprocess
import sys

import numpy as np

from lhomdel import _kernels, oracle
from lhomdel.graphs import Instance

import families


def _cases(seed, count):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        h = families.random_target(rng, rng.randint(1, 4))
        inst = families.random_instance(rng, h, rng.randint(1, 6))
        out.append((h, inst))
    return out


def test_numba_enabled_by_default():
    if os.environ.get("LHOM_NO_NUMBA", "") in ("", "0"):
        assert _kernels.using_numba()
    else:
        assert not _kernels.using_numba()


def test_scan_best_paths_agree():
    for h, inst in _cases(11, 30):
        for mode, npr in (("vd", 0), ("ed", 0)):
            arrays = oracle._scan_arrays(h, inst, mode, npr)
            cost_a, dig_a = _kernels._scan_best_loop(*arrays, mode == "ed")
            cost_b, dig_b = _kernels._scan_best_np(*arrays, mode == "ed")
            assert int(cost_a) == int(cost_b)
            if int(cost_a) < int(_kernels.INF):
                assert list(dig_a) == list(dig_b)


def test_scan_table_paths_agree():
    for h, inst in _cases(12, 20):
        npr = min(2, inst.n)
        for mode in ("vd", "ed"):
            arrays = oracle._scan_arrays(h, inst, mode, npr)
            a = _kernels._scan_table_loop(*arrays, mode == "ed", npr)
            b = _kernels._scan_table_np(*arrays, mode == "ed", npr)
            assert np.array_equal(np.asarray(a), np.asarray(b))


def _oracle_costs():
    costs = []
    for h, inst in _cases(13, 25):
        costs.append(oracle.oracle_vd(h, inst).cost)
        try:
            costs.append(oracle.oracle_ed(h, inst).cost)
        except Exception:
            costs.append(-1)
    return costs


def test_pure_fallback_subprocess_matches():
    """The no-numba code path must produce identical oracle results."""
    here = _oracle_costs()
    prog = ("import sys, json; sys.path.insert(0, %r); "
            "import test_kernels; "
            "print(json.dumps(test_kernels._oracle_costs()))"
            % os.path.dirname(__file__))
    env = dict(os.environ, LHOM_NO_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", prog], env=env,
                         capture_output=True, text=True, check=True)
    assert json.loads(out.stdout) == here


def test_subset_scan_matches_python():
    """Kernel subset scan agrees with a direct python re-computation."""
    from lhomdel import analysis
    from lhomdel.graphs import bits, max_incomparable
    rng = random.Random(14)
    done = 0
    while done < 10:
        h = families.random_target(rng, rng.randint(3, 6))
        if analysis.find_obstruction(h) is None:
            continue
        best, mask = _kernels.subset_scan(analysis._nb_array(h),
                                          h.reflexive_mask(), h.n)
        want = 0
        for s in range(1, 1 << h.n):
            sub = h.induced(sorted(bits(s)))
            if analysis.find_obstruction(sub) is None:
                continue
            if oracle.oracle_decomposition(sub) is not None:
                continue
            want = max(want, max_incomparable(sub)[0])
        assert int(best) == want
        sub = h.induced(sorted(bits(int(mask))))
        assert analysis.find_obstruction(sub) is not None
        assert oracle.oracle_decomposition(sub) is None
        assert max_incomparable(sub)[0] == want
        done += 1
