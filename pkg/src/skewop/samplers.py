"""Random matrix samplers.

Every sampler takes a :class:`numpy.random.Generator` and an optional batch
``size``; the result has shape ``(size, d, d)`` (or ``(d, d)`` when ``size``
is None). Real ensembles return float arrays. Quaternion ensembles return
the ``2n x 2n`` complex representation with 2x2 blocks ``[[z, w], [-w*, z*]]``.
"""

from __future__ import annotations

import logging

import numpy as np

log = logging.getLogger(__name__)

COND_LIMIT = 1e12


def _batch_shape(size):
    return () if size is None else (int(size),)


def quaternion_to_complex(z, w):
    """Assemble the complex representation from the ``z`` and ``w`` parts."""
    z, w = np.asarray(z), np.asarray(w)
    *lead, r, c = z.shape
    out = np.empty((*lead, 2 * r, 2 * c), dtype=np.complex128)
    out[..., 0::2, 0::2] = z
    out[..., 0::2, 1::2] = w
    out[..., 1::2, 0::2] = -np.conj(w)
    out[..., 1::2, 1::2] = np.conj(z)
    return out


def symplectic_conjugate(g):
    """``J conj(G) J^-1`` with ``J`` the block-diagonal symplectic form."""
    g = np.asarray(g)
    out = np.empty_like(g, dtype=np.complex128)
    c = np.conj(g)
    out[..., 0::2, 0::2] = c[..., 1::2, 1::2]
    out[..., 0::2, 1::2] = -c[..., 1::2, 0::2]
    out[..., 1::2, 0::2] = -c[..., 0::2, 1::2]
    out[..., 1::2, 1::2] = c[..., 0::2, 0::2]
    return out


def quaternion_defect(g) -> float:
    """Largest entry of ``G - J conj(G) J^-1``; zero for quaternion-real matrices."""
    return float(np.max(np.abs(g - symplectic_conjugate(g)))) if np.size(g) else 0.0


def _quaternion_gaussian(rng, rows, cols, size):
    # each real component N(0, 1/2): density exp(-Tr G G^dagger / 2)
    shape = (*_batch_shape(size), rows, cols)
    s = np.sqrt(0.5)
    z = rng.normal(scale=s, size=shape) + 1j * rng.normal(scale=s, size=shape)
    w = rng.normal(scale=s, size=shape) + 1j * rng.normal(scale=s, size=shape)
    return quaternion_to_complex(z, w)


def sample_real_ginibre(n_dim, rng, size=None):
    if n_dim < 1:
        raise ValueError("n_dim must be >= 1")
    return rng.standard_normal((*_batch_shape(size), n_dim, n_dim))


def sample_quaternion_ginibre(n_quat, rng, size=None):
    if n_quat < 1:
        raise ValueError("n_quat must be >= 1")
    return _quaternion_gaussian(rng, n_quat, n_quat, size)


def _orthonormal_columns(x):
    """QR with the diagonal of R made positive real, i.e. Gram-Schmidt.

    Applied to a left-invariant Gaussian this gives Haar-distributed columns.
    Gram-Schmidt commutes with the quaternion structure, so quaternion input
    gives a symplectic-unitary factor.
    """
    q, r = np.linalg.qr(x)
    d = np.diagonal(r, axis1=-2, axis2=-1)
    phase = np.where(d == 0, 1, d / np.abs(np.where(d == 0, 1, d)))
    return q * phase[..., None, :]


def haar_orthogonal(n_dim, rng, size=None):
    return _orthonormal_columns(rng.standard_normal((*_batch_shape(size), n_dim, n_dim)))


def haar_symplectic(n_quat, rng, size=None):
    """Haar element of USp(2n) in the complex representation."""
    q = _orthonormal_columns(_quaternion_gaussian(rng, n_quat, n_quat, size))
    return 0.5 * (q + symplectic_conjugate(q))


def _psd_sqrt(w):
    vals, vecs = np.linalg.eigh(w)
    vals = np.sqrt(np.clip(vals, 0, None))
    return (vecs * vals[..., None, :]) @ np.conj(np.swapaxes(vecs, -1, -2))


def sample_induced(field_kind, n_dim, m_rows, rng, size=None):
    """``O (X^T X)^(1/2)`` with ``X`` an ``m_rows x n_dim`` Gaussian and ``O`` Haar.

    For quaternion matrices ``n_dim`` and ``m_rows`` count quaternion
    entries. The weight gained is ``det(G G^dagger)^alpha`` with
    ``alpha = (m_rows - n_dim)/2`` (real) or ``m_rows - n_dim`` (quaternion).
    """
    if m_rows < n_dim or n_dim < 1:
        raise ValueError(f"induced sampler needs m_rows >= n_dim >= 1, got {m_rows}, {n_dim}")
    if field_kind == "real":
        x = rng.standard_normal((*_batch_shape(size), m_rows, n_dim))
        root = _psd_sqrt(np.swapaxes(x, -1, -2) @ x)
        return haar_orthogonal(n_dim, rng, size) @ root
    x = _quaternion_gaussian(rng, m_rows, n_dim, size)
    root = _psd_sqrt(np.conj(np.swapaxes(x, -1, -2)) @ x)
    g = haar_symplectic(n_dim, rng, size) @ root
    return 0.5 * (g + symplectic_conjugate(g))


def _inv_sqrt(a):
    vals, vecs = np.linalg.eigh(a)
    return (vecs * (1 / np.sqrt(vals))[..., None, :]) @ np.conj(np.swapaxes(vecs, -1, -2)), vals


def sample_spherical(field_kind, n_dim, m1, rng, size=None, return_resampled=False):
    """``A^(-1/2) Y`` with ``A = X X^dagger``, ``X`` an ``n_dim x m1`` Gaussian.

    Real: weight ``det(1 + G^T G)^(-(m1 + n_dim)/2)``. Quaternion (sizes in
    quaternion units, complex-representation determinants): weight
    ``det(1 + G^dagger G)^(-(m1 + n_dim))``. Draws with ``cond(A) > 1e12``
    are redrawn and counted.
    """
    if m1 < n_dim or n_dim < 1:
        raise ValueError(f"spherical sampler needs m1 >= n_dim >= 1, got {m1}, {n_dim}")
    batch = 1 if size is None else int(size)

    def draw(k):
        if field_kind == "real":
            x = rng.standard_normal((k, n_dim, m1))
            y = rng.standard_normal((k, n_dim, n_dim))
        else:
            x = _quaternion_gaussian(rng, n_dim, m1, k)
            y = _quaternion_gaussian(rng, n_dim, n_dim, k)
        a = x @ np.conj(np.swapaxes(x, -1, -2))
        inv_root, vals = _inv_sqrt(a)
        ok = (vals[..., 0] > 0) & (vals[..., -1] <= COND_LIMIT * vals[..., 0])
        return inv_root @ y, ok

    g, ok = draw(batch)
    resampled = 0
    while not ok.all():
        bad = np.flatnonzero(~ok)
        resampled += bad.size
        g_new, ok_new = draw(bad.size)
        g[bad], ok[bad] = g_new, ok_new
    if resampled:
        log.info("spherical sampler redrew %d near-singular draws", resampled)
    if field_kind != "real":
        g = 0.5 * (g + symplectic_conjugate(g))
    if size is None:
        g = g[0]
    return (g, resampled) if return_resampled else g


def sample_antispherical(field_kind, n_dim, k_total, rng, size=None):
    """Leading ``n_dim x n_dim`` block of a Haar ``k_total x k_total`` matrix.

    Only the first ``n_dim`` columns of the Haar matrix are generated. Real:
    ``b1 = 0, b2 = (k_total - 2 n_dim - 1)/2``. Quaternion (quaternion units,
    complex-representation determinants): ``b1 = 0, b2 = k_total - 2 n_dim + 1/2``.
    """
    if field_kind == "real":
        if k_total < 2 * n_dim + 1:
            raise ValueError(f"need k_total >= 2*n_dim + 1, got {k_total} for n_dim={n_dim}")
        cols = _orthonormal_columns(rng.standard_normal((*_batch_shape(size), k_total, n_dim)))
        return cols[..., :n_dim, :]
    if k_total < 2 * n_dim:
        raise ValueError(f"need k_total >= 2*n_dim, got {k_total} for n_dim={n_dim}")
    cols = _orthonormal_columns(_quaternion_gaussian(rng, k_total, n_dim, size))
    g = cols[..., : 2 * n_dim, :]
    return 0.5 * (g + symplectic_conjugate(g))
