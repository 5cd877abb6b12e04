import numpy as np
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from stadirac import algebra as alg
from stadirac.complexified import DiracFieldValue

coeff = st.floats(min_value=-3.0, max_value=3.0, allow_nan=False, allow_subnormal=False)
mv_arrays = arrays(np.float64, 16, elements=coeff)
seeds = st.integers(min_value=0, max_value=2**32 - 1)


def even_only(x: np.ndarray) -> np.ndarray:
    x = np.array(x, dtype=float)
    x[alg.ODD] = 0.0
    return x


def odd_only(x: np.ndarray) -> np.ndarray:
    x = np.array(x, dtype=float)
    x[alg.EVEN] = 0.0
    return x


@st.composite
def field_values(draw, charged: bool = True) -> DiracFieldValue:
    parts = [draw(mv_arrays) for _ in range(4)]
    psi = np.stack([even_only(parts[0]), odd_only(parts[1]), even_only(parts[2]), odd_only(parts[3])])
    if not charged:
        psi[2:] = 0.0
    return DiracFieldValue.from_array(psi)


def bivector(values) -> np.ndarray:
    B = np.zeros(16)
    for (mu, nu), c in zip(alg.BIVECTOR_PAIRS, values):
        B[alg.bivector_mask(mu, nu)] = c
    return B


_ACCEPTANCE: list[str] = []


def record_acceptance(line: str) -> None:
    _ACCEPTANCE.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE, key=lambda s: int(s.split()[2])):
            terminalreporter.write_line(line)
