"""Published reference values of ``eps`` and ``eps1`` at ``T = 1`` (6 decimals)."""

HURST = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)
ORDERS = (4, 8, 16, 32, 64, 128, 256)

_EPS = """
0.105598 0.080131 0.060316 0.045402 0.034217 0.025817 0.019497
0.038433 0.019872 0.010714 0.005859 0.003225 0.001782 0.000988
0.026981 0.011369 0.005098 0.002336 0.001080 0.000502 0.000233
0.020052 0.007247 0.002806 0.001115 0.000448 0.000181 0.000073
0.014086 0.004342 0.001451 0.000500 0.000175 0.000061 0.000022
0.009608 0.002469 0.000708 0.000211 0.000064 0.000020 0.000006
0.006589 0.001749 0.000646 0.000271 0.000118 0.000052 0.000023
0.016856 0.009943 0.005903 0.003444 0.001992 0.001148 0.000660
0.079804 0.061176 0.046793 0.035585 0.027001 0.020472 0.015517
"""

_EPS1 = """
0.031922 0.017782 0.010518 0.006369 0.003894 0.002390 0.001469
0.032408 0.015808 0.008203 0.004342 0.002315 0.001238 0.000663
0.026000 0.011073 0.005008 0.002307 0.001071 0.000498 0.000232
0.019188 0.007059 0.002767 0.001107 0.000446 0.000181 0.000073
0.013515 0.004230 0.001431 0.000496 0.000174 0.000061 0.000022
0.009121 0.002387 0.000695 0.000209 0.000064 0.000019 0.000006
0.005792 0.001246 0.000312 0.000081 0.000022 0.000006 0.000002
0.003283 0.000572 0.000123 0.000028 0.000006 0.000001 0.000000
0.001399 0.000195 0.000036 0.000007 0.000001 0.000000 0.000000
"""


def _parse(block: str) -> dict[tuple[float, int], float]:
    rows = [line.split() for line in block.strip().splitlines()]
    return {(H, L): float(v) for H, row in zip(HURST, rows) for L, v in zip(ORDERS, row)}


EPS = _parse(_EPS)
EPS1 = _parse(_EPS1)

#: Legendre rows of the basis-comparison tables at ``H = 1/2``, keyed by ``L``.
LEGENDRE_EPS = dict(zip(ORDERS, (0.014086, 0.004342, 0.001451, 0.000500, 0.000175, 0.000061, 0.000022)))
LEGENDRE_EPS1 = dict(zip(ORDERS, (0.013515, 0.004230, 0.001431, 0.000496, 0.000174, 0.000061, 0.000022)))

#: Lower bounds on the convergence rate ``gamma`` (``eps ~ C / L**gamma``) as published.
RATE_BOUNDS = {0.1: 1.3, 0.2: 1.8, 0.3: 2.1, 0.4: 2.4, 0.5: 2.8, 0.6: 3.2, 0.7: 2.2, 0.8: 1.6, 0.9: 1.3}

#: Tolerance for comparing against 6-decimal published values.
TOLERANCE = 1.5e-6


def lookup(table: dict, H: float, L: int) -> float | None:
    """Reference value for ``(H, L)``, matching ``H`` to within 1e-9."""
    for (h, n), v in table.items():
        if n == L and abs(h - H) < 1e-9:
            return v
    return None
