"""Concrete matrix representations of compact groups and their subgroups.

Supported carriers:

* ``su_fundamental(d)``  - C^d viewed as a real 2d-dimensional space,
* ``su_adjoint(d)``      - traceless Hermitian d x d matrices in a
  generalized Gell-Mann basis with tr(T_a T_b) = 2 delta_ab,
* ``so_fundamental(d)``  - R^d,
* ``so_traceless_symmetric(d)`` - traceless symmetric d x d real matrices
  under X -> R X R^T (for d = 3 this is the spin-2 carrier).

Haar sampling is Ginibre + QR with the R-diagonal phase fixed, then
det-normalized into SU(d) / SO(d).  Invariant projectors onto the
H-fixed subspace come either from the exact common kernel of the subgroup's
Lie-algebra action (connected subgroups: tori and unitary block subgroups),
from an exact grid average (tori), or from a Monte-Carlo average that is
symmetrized, powered, and spectrally rounded.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import AccuracyError, DomainError
from .numerics import symmetric_eigen

# ---------------------------------------------------------------------------
# rng plumbing


def ensure_rng(rng):
    """Accept an integer seed or a Generator; default stream is PCG64."""
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


def stream_rng(seed, stream=0):
    """Independent stream ``stream`` of the seed (for sharded Monte Carlo)."""
    return np.random.default_rng([int(seed), int(stream)])


# ---------------------------------------------------------------------------
# carrier bases


@lru_cache(maxsize=None)
def gell_mann_basis(d):
    """Generalized Gell-Mann matrices for su(d), tr(T_a T_b) = 2 delta_ab.

    Ordering: for each index pair j < k the symmetric then the antisymmetric
    element, followed by the d - 1 diagonal elements.  Keeping the diagonal
    (weight-zero) elements last makes torus projectors block out cleanly.
    """
    mats = []
    for j in range(d):
        for k in range(j + 1, d):
            s = np.zeros((d, d), dtype=complex)
            s[j, k] = s[k, j] = 1.0
            mats.append(s)
            a = np.zeros((d, d), dtype=complex)
            a[j, k] = -1.0j
            a[k, j] = 1.0j
            mats.append(a)
    for l in range(1, d):
        m = np.zeros((d, d), dtype=complex)
        m[:l, :l] = np.eye(l)
        m[l, l] = -l
        mats.append(m * np.sqrt(2.0 / (l * (l + 1))))
    return np.array(mats)


@lru_cache(maxsize=None)
def symmetric_traceless_basis(d):
    """Real symmetric traceless basis with tr(B_a B_b) = 2 delta_ab.

    Same layout as :func:`gell_mann_basis` minus the antisymmetric elements.
    """
    mats = []
    for j in range(d):
        for k in range(j + 1, d):
            s = np.zeros((d, d))
            s[j, k] = s[k, j] = 1.0
            mats.append(s)
    for l in range(1, d):
        m = np.zeros((d, d))
        m[:l, :l] = np.eye(l)
        m[l, l] = -l
        mats.append(m * np.sqrt(2.0 / (l * (l + 1))))
    return np.array(mats)


_KINDS = ("su_fundamental", "su_adjoint", "so_fundamental",
          "so_traceless_symmetric")


@dataclass(frozen=True)
class CompactRepSpec:
    """A concrete real representation of SU(d) or SO(d)."""

    kind: str
    d: int

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise DomainError(f"unknown rep kind {self.kind!r}")
        if self.d < 1:
            raise DomainError("d must be >= 1")

    @property
    def is_unitary_group(self):
        return self.kind.startswith("su_")

    @property
    def real_dimension(self):
        d = self.d
        if self.kind == "su_fundamental":
            return 2 * d
        if self.kind == "su_adjoint":
            return d * d - 1
        if self.kind == "so_fundamental":
            return d
        return d * (d + 1) // 2 - 1

    @property
    def block_label(self):
        """Canonical name of the (real) irrep carried, for absence checks.

        SU(2)-adjoint and SO(3)-vector are the same spin-1 irrep and share a
        label; SO(3) symmetric-traceless is spin-2.
        """
        d = self.d
        if self.kind == "su_adjoint":
            return "su2:spin1" if d == 2 else f"su{d}:adjoint"
        if self.kind == "so_fundamental":
            return "su2:spin1" if d == 3 else f"so{d}:vector"
        if self.kind == "so_traceless_symmetric":
            return "su2:spin2" if d == 3 else f"so{d}:sym2"
        return f"su{d}:fund_real"

    def basis(self):
        if self.kind == "su_adjoint":
            return gell_mann_basis(self.d)
        if self.kind == "so_traceless_symmetric":
            return symmetric_traceless_basis(self.d)
        raise DomainError(f"{self.kind} carrier uses the coordinate basis")


def su_adjoint(d):
    return CompactRepSpec("su_adjoint", d)


def so_fundamental(d):
    return CompactRepSpec("so_fundamental", d)


def so_traceless_symmetric(d):
    return CompactRepSpec("so_traceless_symmetric", d)


def su_fundamental(d):
    return CompactRepSpec("su_fundamental", d)


# ---------------------------------------------------------------------------
# Haar sampling


def haar_unitaries(d, n, rng):
    """n Haar samples from SU(d): Ginibre + QR, phases fixed, det normalized."""
    rng = ensure_rng(rng)
    if d == 1:
        return np.ones((n, 1, 1), dtype=complex)
    z = (rng.standard_normal((n, d, d)) + 1j * rng.standard_normal((n, d, d)))
    q, r = np.linalg.qr(z / np.sqrt(2.0))
    diag = np.einsum("nii->ni", r)
    q = q * (diag / np.abs(diag))[:, None, :]
    det = np.linalg.det(q)
    q = q * np.exp(-1j * np.angle(det) / d)[:, None, None]
    return q


def haar_orthogonals(d, n, rng):
    """n Haar samples from SO(d)."""
    rng = ensure_rng(rng)
    if d == 1:
        return np.ones((n, 1, 1))
    q, r = np.linalg.qr(rng.standard_normal((n, d, d)))
    diag = np.einsum("nii->ni", r)
    signs = np.where(diag < 0, -1.0, 1.0)
    q = q * signs[:, None, :]
    flip = np.linalg.det(q) < 0
    q[flip, :, -1] *= -1.0
    return q


def haar_samples(spec, n, rng):
    """Batch of fundamental-picture group elements for ``spec``'s group."""
    if spec.is_unitary_group:
        return haar_unitaries(spec.d, n, rng)
    return haar_orthogonals(spec.d, n, rng)


def haar_sample(spec, rng):
    return haar_samples(spec, 1, rng)[0]


# ---------------------------------------------------------------------------
# representation matrices


def _check_unitary(u, tol):
    u = np.asarray(u)
    d = u.shape[-1]
    err = np.max(np.abs(np.swapaxes(u.conj(), -1, -2) @ u - np.eye(d)))
    if err > tol:
        raise DomainError(f"matrix is not unitary within {tol:g} (error {err:.3e})")


def adjoint_matrices(us, tol=1e-10):
    """Adjoint-action matrices X -> U X U^H on the Gell-Mann basis (batched).

    Output is real orthogonal of size (d^2 - 1) since the basis is
    trace-orthonormal.
    """
    us = np.asarray(us, dtype=complex)
    single = us.ndim == 2
    if single:
        us = us[None]
    _check_unitary(us, tol)
    t = gell_mann_basis(us.shape[-1])
    rotated = np.einsum("nij,ajk,nlk->nail", us, t, us.conj())
    out = 0.5 * np.real(np.einsum("ali,nbil->nab", t, rotated))
    return out[0] if single else out


def adjoint_matrix(u, tol=1e-10):
    return adjoint_matrices(u, tol=tol)


def symmetric_action_matrices(rs):
    """Matrices of X -> R X R^T on the symmetric-traceless basis (batched)."""
    rs = np.asarray(rs, dtype=float)
    single = rs.ndim == 2
    if single:
        rs = rs[None]
    b = symmetric_traceless_basis(rs.shape[-1])
    rotated = np.einsum("nij,ajk,nlk->nail", rs, b, rs)
    out = 0.5 * np.einsum("ali,nbil->nab", b, rotated)
    return out[0] if single else out


def realified(us):
    """C^d matrices as real 2d x 2d blocks [[Re, -Im], [Im, Re]]."""
    us = np.asarray(us, dtype=complex)
    single = us.ndim == 2
    if single:
        us = us[None]
    re, im = us.real, us.imag
    top = np.concatenate([re, -im], axis=-1)
    bot = np.concatenate([im, re], axis=-1)
    out = np.concatenate([top, bot], axis=-2)
    return out[0] if single else out


def rep_matrices(spec, elements):
    """Real orthogonal matrices of ``spec`` at fundamental-picture elements."""
    if spec.kind == "su_adjoint":
        return adjoint_matrices(elements)
    if spec.kind == "so_fundamental":
        out = np.asarray(elements, dtype=float)
        return out
    if spec.kind == "so_traceless_symmetric":
        return symmetric_action_matrices(elements)
    return realified(elements)


# ---------------------------------------------------------------------------
# subgroups


@dataclass(frozen=True, eq=False)
class SubgroupSpec:
    """A sampling description of a closed subgroup in the fundamental picture.

    kinds: ``full_torus`` (maximal torus), ``block_su_u1`` (block-diagonal
    unitaries with overall determinant 1, block sizes in ``blocks``), and
    ``finite_list`` (explicit matrices, assumed to form a finite subgroup).
    """

    kind: str
    blocks: tuple | None = None
    matrices: tuple | None = None

    def __post_init__(self):
        if self.kind not in ("full_torus", "block_su_u1", "finite_list"):
            raise DomainError(f"unknown subgroup kind {self.kind!r}")
        if self.kind == "block_su_u1" and not self.blocks:
            raise DomainError("block_su_u1 needs block sizes")
        if self.kind == "finite_list" and not self.matrices:
            raise DomainError("finite_list needs matrices")


def full_torus():
    return SubgroupSpec("full_torus")


def block_subgroup(*blocks):
    return SubgroupSpec("block_su_u1", blocks=tuple(int(b) for b in blocks))


def finite_subgroup(matrices):
    return SubgroupSpec("finite_list",
                        matrices=tuple(np.asarray(m) for m in matrices))


def _check_blocks(spec, sub):
    if sum(sub.blocks) != spec.d:
        raise DomainError(
            f"block sizes {sub.blocks} do not sum to d = {spec.d}"
        )


def subgroup_samples(spec, sub, n, rng):
    """n elements of the subgroup, in the fundamental picture."""
    rng = ensure_rng(rng)
    d = spec.d
    if sub.kind == "full_torus":
        if spec.is_unitary_group:
            phases = rng.uniform(0.0, 2.0 * np.pi, size=(n, d - 1))
            full = np.concatenate([phases, -phases.sum(axis=1, keepdims=True)],
                                  axis=1)
            out = np.zeros((n, d, d), dtype=complex)
            ii = np.arange(d)
            out[:, ii, ii] = np.exp(1j * full)
            return out
        out = np.tile(np.eye(d), (n, 1, 1))
        for p in range(d // 2):
            th = rng.uniform(0.0, 2.0 * np.pi, size=n)
            c, s = np.cos(th), np.sin(th)
            i, j = 2 * p, 2 * p + 1
            out[:, i, i] = c
            out[:, i, j] = -s
            out[:, j, i] = s
            out[:, j, j] = c
        return out
    if sub.kind == "block_su_u1":
        if not spec.is_unitary_group:
            raise DomainError("block_su_u1 subgroups live in SU(d)")
        _check_blocks(spec, sub)
        out = np.zeros((n, d, d), dtype=complex)
        start = 0
        for b in sub.blocks:
            # unrestricted U(b) blocks; the overall phase is fixed below
            z = (rng.standard_normal((n, b, b))
                 + 1j * rng.standard_normal((n, b, b)))
            q, r = np.linalg.qr(z / np.sqrt(2.0))
            diag = np.einsum("nii->ni", r)
            q = q * (diag / np.abs(diag))[:, None, :]
            out[:, start:start + b, start:start + b] = q
            start += b
        det = np.linalg.det(out)
        out *= np.exp(-1j * np.angle(det) / d)[:, None, None]
        return out
    mats = np.asarray(sub.matrices)
    picks = rng.integers(0, len(mats), size=n)
    return mats[picks]


def subgroup_lie_generators(spec, sub):
    """Fundamental-picture Lie-algebra generators spanning the subgroup.

    Only connected subgroups have these; ``finite_list`` returns None.
    """
    d = spec.d
    if sub.kind == "finite_list":
        return None
    gens = []
    if sub.kind == "full_torus":
        if spec.is_unitary_group:
            for m in gell_mann_basis(d)[-(d - 1):] if d > 1 else []:
                gens.append(1j * m)
        else:
            for p in range(d // 2):
                a = np.zeros((d, d))
                a[2 * p, 2 * p + 1] = -1.0
                a[2 * p + 1, 2 * p] = 1.0
                gens.append(a)
        return gens
    _check_blocks(spec, sub)
    start = 0
    for b in sub.blocks:
        if b > 1:
            for m in gell_mann_basis(b):
                g = np.zeros((d, d), dtype=complex)
                g[start:start + b, start:start + b] = 1j * m
                gens.append(g)
        start += b
    # relative phases between consecutive blocks (traceless diagonal part)
    starts = np.cumsum((0,) + sub.blocks)
    for i in range(len(sub.blocks) - 1):
        g = np.zeros((d, d), dtype=complex)
        b0 = slice(starts[i], starts[i + 1])
        b1 = slice(starts[i + 1], starts[i + 2])
        g[b0, b0] = 1j * np.eye(sub.blocks[i]) / sub.blocks[i]
        g[b1, b1] = -1j * np.eye(sub.blocks[i + 1]) / sub.blocks[i + 1]
        gens.append(g)
    return gens


def _generator_action(spec, a):
    """Matrix of the rep's Lie-algebra action for fundamental generator a."""
    if spec.kind == "su_adjoint":
        t = gell_mann_basis(spec.d)
        comm = np.einsum("ij,bjk->bik", a, t) - np.einsum("bij,jk->bik", t, a)
        return 0.5 * np.real(np.einsum("ali,bil->ab", t, comm))
    if spec.kind == "so_fundamental":
        return np.real(a)
    if spec.kind == "so_traceless_symmetric":
        b = symmetric_traceless_basis(spec.d)
        ar = np.real(a)
        act = np.einsum("ij,bjk->bik", ar, b) + np.einsum("bij,kj->bik", b, ar)
        return 0.5 * np.einsum("ali,bil->ab", b, act)
    return realified(a)


# ---------------------------------------------------------------------------
# invariant projectors


@dataclass(frozen=True)
class TorusGrid:
    """Exact phase-grid quadrature (tori only); n points per phase."""

    n: int = 16


@dataclass(frozen=True)
class MonteCarlo:
    """Haar Monte-Carlo quadrature over the subgroup."""

    n: int = 2000
    seed: int = 0


@dataclass(frozen=True, eq=False)
class InvariantProjector:
    projector: np.ndarray
    rank: int
    eigenvalues: np.ndarray  # of the averaged operator, descending


def _torus_grid_elements(spec, sub, n):
    d = spec.d
    if spec.is_unitary_group:
        axes = d - 1
        grids = np.meshgrid(*[2.0 * np.pi * np.arange(n) / n] * axes,
                            indexing="ij")
        phases = np.stack([g.ravel() for g in grids], axis=1)
        full = np.concatenate([phases, -phases.sum(axis=1, keepdims=True)],
                              axis=1)
        out = np.zeros((len(full), d, d), dtype=complex)
        ii = np.arange(d)
        out[:, ii, ii] = np.exp(1j * full)
        return out
    axes = d // 2
    grids = np.meshgrid(*[2.0 * np.pi * np.arange(n) / n] * axes,
                        indexing="ij")
    angles = np.stack([g.ravel() for g in grids], axis=1)
    out = np.tile(np.eye(d), (len(angles), 1, 1))
    for p in range(axes):
        c, s = np.cos(angles[:, p]), np.sin(angles[:, p])
        i, j = 2 * p, 2 * p + 1
        out[:, i, i] = c
        out[:, i, j] = -s
        out[:, j, i] = s
        out[:, j, j] = c
    return out


def _round_average_to_projector(avg, idem_tol, n_power=5):
    """Power an averaged rep operator toward its eigenvalue-1 projector.

    Subgroup-invariant vectors are exact fixed points of the average, so
    powering shrinks everything else; the result is then symmetrized,
    eigen-split at 1/2, and rounded to an exact orthogonal projector.
    """
    a = avg
    for _ in range(n_power):
        a = a @ a
    a = (a + a.T) / 2.0
    idem = np.max(np.abs(a @ a - a))
    if idem > idem_tol:
        raise AccuracyError(
            f"quadrature too coarse: powered average has idempotence error "
            f"{idem:.3e} > {idem_tol:g}; use a finer grid or more samples"
        )
    evals, evecs = symmetric_eigen(a)
    rank = int(np.sum(evals > 0.5))
    basis = evecs[:, :rank]
    return basis @ basis.T, rank, evals


def invariant_projector(spec, sub, quadrature=None, idem_tol=1e-4,
                        check_tol=1e-6):
    """Orthogonal projector onto the subspace fixed by the subgroup.

    ``quadrature=None`` picks the exact structural route (common kernel of
    the subgroup's Lie-algebra action) for connected subgroups and the exact
    list average for finite ones.  :class:`TorusGrid` and :class:`MonteCarlo`
    force the corresponding numerical averages; rank is the number of
    averaged eigenvalues above 1/2.

    Raises :class:`AccuracyError` when the requested quadrature is too coarse
    (idempotence of the average off by more than ``idem_tol``).
    """
    dim = spec.real_dimension

    if quadrature is None:
        gens = subgroup_lie_generators(spec, sub)
        if gens is not None:
            if not gens:  # trivial connected subgroup: everything is fixed
                return InvariantProjector(np.eye(dim), dim, np.ones(dim))
            stacked = np.concatenate(
                [_generator_action(spec, a) for a in gens], axis=0
            )
            u, s, vt = np.linalg.svd(stacked)
            tol = max(stacked.shape) * np.finfo(float).eps * (s[0] if len(s) else 1.0)
            rank = int(np.sum(s > max(tol, 1e-10)))
            null = vt[rank:].T
            proj = null @ null.T
            evals = np.concatenate([np.ones(null.shape[1]),
                                    np.zeros(dim - null.shape[1])])
            return InvariantProjector(proj, null.shape[1], evals)
        quadrature = MonteCarlo()  # finite_list falls through to averaging

    if isinstance(quadrature, TorusGrid):
        if sub.kind != "full_torus":
            raise DomainError("torus_grid quadrature needs a torus subgroup")
        elements = _torus_grid_elements(spec, sub, quadrature.n)
    elif isinstance(quadrature, MonteCarlo):
        if sub.kind == "finite_list":
            elements = np.asarray(sub.matrices)
        else:
            elements = subgroup_samples(spec, sub, quadrature.n,
                                        ensure_rng(quadrature.seed))
    else:
        raise DomainError(f"unknown quadrature {quadrature!r}")

    gammas = rep_matrices(spec, elements)
    avg = gammas.mean(axis=0)
    # averaging h and h^-1 together keeps the operator symmetric
    avg = (avg + avg.T) / 2.0
    proj, rank, evals = _round_average_to_projector(avg, idem_tol)

    check = rep_matrices(spec, subgroup_samples(spec, sub, 8, ensure_rng(1)))
    drift = np.max(np.abs(check @ proj - proj))
    if drift > check_tol:
        raise AccuracyError(
            f"projector not invariant under fresh subgroup samples "
            f"(drift {drift:.3e} > {check_tol:g}); refine the quadrature"
        )
    return InvariantProjector(proj, rank, evals)


@dataclass(frozen=True)
class WitnessResult:
    consistent: bool
    rank: int


def is_gelfand_witness(spec, sub, quadrature=None):
    """Check an irreducible rep for a >= 2-dimensional H-fixed subspace.

    The caller asserts irreducibility (true for SU(d) adjoint, d >= 2).  A
    fixed subspace of rank >= 2 witnesses that (G, H) is not a Gelfand pair.
    """
    result = invariant_projector(spec, sub, quadrature=quadrature)
    return WitnessResult(result.rank < 2, result.rank)
