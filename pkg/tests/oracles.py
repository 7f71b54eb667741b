"""Independent brute-force oracles used by the test suite.

These deliberately avoid the library's character-sum formulas: multiplicities
are counted by explicitly averaging the regular representation, and reality
types are detected by searching for invariant bilinear forms on explicitly
extracted irrep matrices.
"""

import numpy as np


def regular_matrix(group, g):
    """Left-regular permutation matrix of element index g."""
    n = group.order
    m = np.zeros((n, n))
    for h in range(n):
        m[group.compose(g, h), h] = 1.0
    return m


def isotypic_projector(group, table, irrep):
    """P = (d/|G|) sum_g conj(chi(g)) R(g); Hermitian idempotent."""
    n = group.order
    d = table.dims[irrep]
    p = np.zeros((n, n), dtype=complex)
    for g in range(n):
        p += np.conj(table.value(irrep, g)) * regular_matrix(group, g)
    return p * d / n


def fixed_vector_multiplicity(group, table, irrep, sub):
    """Count H-fixed vectors inside the isotypic component, per irrep copy.

    The isotypic block of the regular representation holds dim(irrep) copies
    of the irrep, so the H-fixed dimension divided by dim(irrep) is the
    multiplicity of the trivial representation in the restriction.
    """
    p = isotypic_projector(group, table, irrep)
    evals, evecs = np.linalg.eigh(p)
    basis = evecs[:, evals > 0.5]
    avg = np.zeros((group.order, group.order))
    for h in sub.members:
        avg += regular_matrix(group, h)
    avg /= sub.order
    inside = basis.conj().T @ avg @ basis
    fixed = int(np.sum(np.linalg.eigvalsh((inside + inside.conj().T) / 2) > 0.5))
    d = table.dims[irrep]
    assert fixed % d == 0, "H-fixed dimension is not a multiple of dim(irrep)"
    return fixed // d


def gelfand_oracle(group, table, sub):
    """Gelfand decision by explicit fixed-vector counting."""
    for irrep in range(table.n_irreps):
        if fixed_vector_multiplicity(group, table, irrep, sub) > 1:
            return False
    return True


def irrep_matrices(group, table, irrep, rng):
    """Explicit unitary matrices of one irrep, projected out of the regular
    representation (commutant-eigenspace splitting)."""
    d = table.dims[irrep]
    p = isotypic_projector(group, table, irrep)
    evals, evecs = np.linalg.eigh(p)
    basis = evecs[:, evals > 0.5]
    assert basis.shape[1] == d * d
    blocks = np.array(
        [basis.conj().T @ regular_matrix(group, g) @ basis for g in group]
    )
    m = rng.standard_normal((d * d, d * d)) \
        + 1j * rng.standard_normal((d * d, d * d))
    m = m + m.conj().T
    comm = np.einsum("gij,jk,glk->il", blocks, m, blocks.conj()) / group.order
    w, v = np.linalg.eigh(comm)
    # group nearly equal eigenvalues; each cluster spans one irrep copy
    start = 0
    cluster = None
    for i in range(1, len(w) + 1):
        if i == len(w) or w[i] - w[i - 1] > 1e-6:
            if i - start == d:
                cluster = v[:, start:i]
                break
            start = i
    assert cluster is not None, "no d-dimensional commutant eigenspace found"
    mats = np.einsum("ai,gab,bj->gij", cluster.conj(), blocks, cluster)
    for g in range(group.order):
        expected = table.value(irrep, g)
        assert abs(np.trace(mats[g]) - expected) < 1e-6
    return mats


def invariant_bilinear_type(mats, rng, tol=1e-8):
    """'real' / 'quaternionic' / 'complex' from invariant bilinear forms.

    Averages a random seed matrix to an invariant symmetric and an invariant
    antisymmetric bilinear form; which of the two survives fixes the type.
    """
    d = mats.shape[1]
    seed = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    sym_seed = seed + seed.T
    anti_seed = seed - seed.T
    sym = np.einsum("gji,jk,gkl->il", mats, sym_seed, mats) / len(mats)
    anti = np.einsum("gji,jk,gkl->il", mats, anti_seed, mats) / len(mats)
    has_sym = np.max(np.abs(sym)) > tol
    has_anti = np.max(np.abs(anti)) > tol if d > 1 else False
    assert not (has_sym and has_anti), "both bilinear forms survived"
    if has_sym:
        return "real"
    if has_anti:
        return "quaternionic"
    return "complex"


def lp_vertex_oracle(c, a_ub, b_ub, lo, hi, tol=1e-9):
    """Maximize c.x over {A x <= b, lo <= x <= hi} by vertex enumeration.

    Returns (status, value): every n-subset of the constraint rows (box rows
    included) is intersected, feasible vertices are kept, and the best value
    reported.  Assumes the box makes the problem bounded.
    """
    import itertools

    n = len(c)
    rows = [np.asarray(r, dtype=float) for r in a_ub]
    rhs = list(b_ub)
    for i in range(n):
        e = np.zeros(n)
        e[i] = 1.0
        rows.append(e.copy())
        rhs.append(hi[i])
        rows.append(-e)
        rhs.append(-lo[i])
    rows = np.array(rows)
    rhs = np.array(rhs)
    best = None
    for combo in itertools.combinations(range(len(rows)), n):
        a = rows[list(combo)]
        if abs(np.linalg.det(a)) < 1e-12:
            continue
        x = np.linalg.solve(a, rhs[list(combo)])
        if np.all(rows @ x <= rhs + tol):
            val = float(c @ x)
            if best is None or val > best:
                best = val
    if best is None:
        return "infeasible", None
    return "optimal", best


def gelfand_tsetlin_count(top):
    """Number of Gelfand-Tsetlin patterns with the given top row.

    Counts weakly interlacing integer triangles; equals the Weyl dimension of
    the SU(len(top)) irrep labeled by the partition.
    """
    import itertools

    def patterns(row):
        if len(row) == 1:
            return 1
        ranges = [range(row[i + 1], row[i] + 1) for i in range(len(row) - 1)]
        total = 0
        for nxt in itertools.product(*ranges):
            if all(a >= b for a, b in zip(nxt, nxt[1:])):
                total += patterns(nxt)
        return total

    return patterns(tuple(top))
