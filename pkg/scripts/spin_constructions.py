"""Compare the two spin densities on a few fields.

The geometric construction pairs ``psi`` with ``psi g2 g1``; the other uses
the commuting unit ``j``.  They coincide up to sign only when the odd part
is tied to the even part by ``psi_o = psi_e g2 g1 g0``.
"""

import numpy as np

from stadirac import algebra as alg
from stadirac import bilinears as bl
from stadirac.algebra import Multivector
from stadirac.complexified import DiracFieldValue
from stadirac.dynamics import rest_oscillator


def fmt(x):
    return "(" + ", ".join(f"{v:+.4f}" for v in x) + ")"


def main():
    rng = np.random.default_rng(1)
    even = rng.normal(size=16)
    even[alg.ODD] = 0.0
    e = Multivector(even)
    odd = rng.normal(size=16)
    odd[alg.EVEN] = 0.0
    fields = {
        "rest oscillator": DiracFieldValue.from_array(rest_oscillator(8, t=0.7).psi[0]),
        "even only": DiracFieldValue.uncharged(e),
        "tied odd part": DiracFieldValue.uncharged(e, e * alg.REF_PSEUDOVECTOR),
        "independent odd part": DiracFieldValue.uncharged(e, Multivector(odd)),
    }
    for name, v in fields.items():
        geo, non = bl.spin_geometric(v), bl.spin_nongeometric(v)
        print(f"{name:22s} j={fmt(bl.current(v))}")
        print(f"{'':22s} S_geometric={fmt(geo)}  S_j={fmt(non)}  |S_geo + S_j|={np.max(np.abs(geo + non)):.2e}")


if __name__ == "__main__":
    main()
