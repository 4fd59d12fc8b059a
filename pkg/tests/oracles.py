"""Independent reference implementations used only to check the package.

These deliberately avoid the code paths under test: the damping family is
rebuilt from its system-plus-auxiliary unitary coupling and a partial trace,
and string mutual information is computed by literal enumeration of every
announcement string.
"""

import itertools
import math

import numpy as np
from scipy.special import rel_entr

_LN2 = math.log(2.0)

# Deterministic seed-vector pools for completing the coupling unitary on the
# subspace its definition leaves free; the first two that survive projection
# are used.  The two pools differ so the two completions really are different
# unitaries.
_COMPLETION_CANDIDATES = {
    0: (
        np.array([0.0, 1.0, 0.0, 0.0], dtype=complex),
        np.array([0.0, 0.0, 0.0, 1.0], dtype=complex),
        np.array([1.0, 0.0, 0.0, 0.0], dtype=complex),
        np.array([0.0, 0.0, 1.0, 0.0], dtype=complex),
    ),
    1: (
        np.array([0.3 + 0.4j, -0.1, 0.8, 0.2 - 0.6j], dtype=complex),
        np.array([-0.5, 0.2 + 0.9j, 0.1j, 0.7], dtype=complex),
        np.array([0.9, 0.1j, -0.3, 0.4 + 0.2j], dtype=complex),
        np.array([0.2j, 0.6, 0.5 - 0.1j, -0.8], dtype=complex),
    ),
}

# (F, G) choices for the auxiliary memory states; orthonormal pairs.
_FG_CHOICES = {
    0: (np.array([1.0, 0.0], dtype=complex), np.array([0.0, 1.0], dtype=complex)),
    1: (
        np.array([1.0, 1.0], dtype=complex) / math.sqrt(2.0),
        np.array([1.0, -1.0], dtype=complex) / math.sqrt(2.0),
    ),
}


def coupling_unitary(x: float, completion: int = 0) -> np.ndarray:
    """4x4 unitary coupling particle and auxiliary for damping strength x.

    Sends |0>|phi> to |0>|F> and |1>|phi> to sqrt(x)|0>|G> + sqrt(1-x)|1>|F>
    with <F|G> = 0, with the auxiliary prepared in phi = first basis vector.
    The action on the remaining two dimensions is an arbitrary orthonormal
    completion; ``completion`` selects between two distinct ones.
    """
    f, g = _FG_CHOICES[completion]
    e0 = np.array([1.0, 0.0], dtype=complex)
    e1 = np.array([0.0, 1.0], dtype=complex)
    gamma0 = np.kron(e0, f)
    gamma1 = math.sqrt(x) * np.kron(e0, g) + math.sqrt(1.0 - x) * np.kron(e1, f)

    cols = [gamma0, gamma1]
    for cand in _COMPLETION_CANDIDATES[completion]:
        if len(cols) == 4:
            break
        v = cand.copy()
        for _ in range(2):  # twice for numerical orthogonality
            for u in cols:
                v = v - u * (u.conj() @ v)
        norm = np.linalg.norm(v)
        if norm > 1e-6:
            cols.append(v / norm)
    assert len(cols) == 4, "could not complete the unitary"

    # Input product-basis columns: |j>|a> sits at index 2j + a, and phi is
    # auxiliary index 0, so |0>|phi> is column 0 and |1>|phi> is column 2.
    u_mat = np.zeros((4, 4), dtype=complex)
    u_mat[:, 0] = cols[0]
    u_mat[:, 2] = cols[1]
    u_mat[:, 1] = cols[2]
    u_mat[:, 3] = cols[3]
    return u_mat


def apply_coupling(x: float, rho: np.ndarray, completion: int = 0) -> np.ndarray:
    """Channel action computed as Tr_aux(U (rho x |phi><phi|) U^dag)."""
    u_mat = coupling_unitary(x, completion)
    phi_proj = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex)
    big = u_mat @ np.kron(np.asarray(rho, dtype=complex), phi_proj) @ u_mat.conj().T
    out = np.empty((2, 2), dtype=complex)
    for i in range(2):
        for j in range(2):
            out[i, j] = big[2 * i, 2 * j] + big[2 * i + 1, 2 * j + 1]
    return out


def mi_bruteforce(probs_b0, probs_b1, k: int, block: int = 10) -> float:
    """I(string : message) in bits by summing over all 4**k strings.

    Per-string probabilities are literal products of single-announcement
    probabilities; no count-class grouping anywhere.
    """
    a0 = np.asarray(probs_b0, dtype=float)
    a1 = np.asarray(probs_b1, dtype=float)
    if k == 0:
        return 0.0
    kb = min(k, block)
    v0, v1 = a0, a1
    for _ in range(kb - 1):
        v0 = np.kron(v0, a0)
        v1 = np.kron(v1, a1)
    total = 0.0
    for prefix in itertools.product(range(4), repeat=k - kb):
        f0 = math.prod(a0[i] for i in prefix)
        f1 = math.prod(a1[i] for i in prefix)
        p0 = f0 * v0
        p1 = f1 * v1
        mid = 0.5 * (p0 + p1)
        total += 0.5 * float(rel_entr(p0, mid).sum() + rel_entr(p1, mid).sum())
    return total / _LN2
