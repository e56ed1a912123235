"""Both kernel backends must agree bit for bit."""
import os
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hirzebruch import _pykernels as py
from hirzebruch import kernels

try:
    from hirzebruch import _ckernels as cy
except ImportError:  # extension not built
    cy = None

needs_cython = pytest.mark.skipif(cy is None, reason="compiled kernels not built")

elt = st.tuples(st.tuples(*[st.integers(-10 ** 6, 10 ** 6)] * 4), st.integers(1, 10 ** 4))


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")


@needs_cython
@pytest.mark.skipif(os.environ.get("HIRZEBRUCH_PURE_PYTHON", "") not in ("", "0"),
                    reason="fallback forced")
def test_compiled_backend_active():
    assert kernels.BACKEND == "cython"


@needs_cython
@given(elt, elt)
def test_add_mul_agree(a, b):
    assert py.add(*a, *b) == cy.add(*a, *b)
    assert py.mul(*a, *b, 5) == cy.mul(*a, *b, 5)
    assert py.normalize(*a) == cy.normalize(*a)


@needs_cython
def test_matmul_agree():
    rnd = random.Random(3)

    def m():
        return tuple(tuple((tuple(rnd.randint(-50, 50) for _ in range(4)), rnd.randint(1, 9))
                           for _ in range(3)) for _ in range(3))
    for _ in range(50):
        A, B = m(), m()
        assert py.matmul(A, B, 5) == cy.matmul(A, B, 5)


def test_normalize_zero_and_sign():
    assert py.normalize((0, 0, 0, 0), 7) == ((0, 0, 0, 0), 1)
    assert py.normalize((2, 4, 0, 6), -4) == ((-1, -2, 0, -3), 2)


def test_pure_python_fallback_subprocess():
    import os
    import subprocess
    import sys
    env = dict(os.environ, HIRZEBRUCH_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c",
                          "import hirzebruch; print(hirzebruch.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
