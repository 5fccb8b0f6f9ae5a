"""
Parrondo Lab
~~~~~~~~~~~~

Exact classification of non-hyperbolic fixed points of one-dimensional
jets and planar elliptic maps, composition maps of periodic systems, and
detection of Parrondo-type effects: repellers whose periodic combination
attracts, or attractors whose combination repels.

Basic usage:

    ```python
    from parrondo_lab import PeriodicSystem1D, detect_parrondo_1d
    from parrondo_lab import jet_from_coeffs

    system = PeriodicSystem1D((
        jet_from_coeffs([-1, 3, -9, 0, 164]),
        jet_from_coeffs([-1, 5, -25, 0, 1259]),
        jet_from_coeffs([-1, 2, -4, 0, 33]),
    ))
    report = detect_parrondo_1d(system)
    print(report.paradox)  # Paradox.LAS_TO_REPELLER
    ```

The command line front end is installed as ``parrondo-lab``.
"""

from .error import ParrondoLabError, InputError, DomainError
from .jet import Jet1D, jet_from_coeffs, jet_compose, jet_inverse
from .stability1d import classify_1d, stability_constants
from .planar import PlanarPolyMap, ComplexJet2, birkhoff_b1, classify_planar
from .periodic import (
    PeriodicSystem1D,
    PeriodicSystem2D,
    detect_parrondo_1d,
    detect_parrondo_2d,
)
from .verdict import Paradox, Stability

__version__ = "0.1.0"
__author__ = "Parrondo Lab contributors"

__all__ = [
    'Jet1D',
    'jet_from_coeffs',
    'jet_compose',
    'jet_inverse',
    'classify_1d',
    'stability_constants',
    'PlanarPolyMap',
    'ComplexJet2',
    'birkhoff_b1',
    'classify_planar',
    'PeriodicSystem1D',
    'PeriodicSystem2D',
    'detect_parrondo_1d',
    'detect_parrondo_2d',
    'Paradox',
    'Stability',
    'ParrondoLabError',
    'InputError',
    'DomainError',
]
