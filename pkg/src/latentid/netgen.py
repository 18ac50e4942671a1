"""Ground-truth network models with a manifest/latent partition.

Adjacency convention: entry ``(q, p)`` is the weight of the edge ``p -> q``,
so ``x(k+1) = A x(k) + u(k)``.  Node identifiers are 1-based throughout.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import InvalidArgumentError

NILPOTENCY_TOL = 1e-12


def _frozen(a, shape=None) -> np.ndarray:
    arr = np.array(a, dtype=float)
    if shape is not None:
        arr = arr.reshape(shape)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class PartitionedNetwork:
    """The four adjacency blocks of a network with manifest nodes first."""

    a11: np.ndarray
    a12: np.ndarray
    a21: np.ndarray
    a22: np.ndarray
    manifest_labels: tuple = ()
    latent_labels: tuple = ()

    def __post_init__(self):
        a11 = np.asarray(self.a11, dtype=float)
        if a11.ndim != 2 or a11.shape[0] != a11.shape[1]:
            raise InvalidArgumentError(f"a11 must be square, got shape {a11.shape}")
        n_m = a11.shape[0]
        a22 = np.asarray(self.a22, dtype=float)
        if a22.size == 0:
            n_l = a22.shape[0] if a22.ndim == 2 else 0
            a22 = a22.reshape(n_l, n_l)
        if a22.ndim != 2 or a22.shape[0] != a22.shape[1]:
            raise InvalidArgumentError(f"a22 must be square, got shape {a22.shape}")
        n_l = a22.shape[0]
        a12 = np.asarray(self.a12, dtype=float)
        a21 = np.asarray(self.a21, dtype=float)
        # zero-extent blocks lose their shape in nested-list form
        if a12.size == 0 and n_m * n_l == 0:
            a12 = np.zeros((n_m, n_l))
        if a21.size == 0 and n_m * n_l == 0:
            a21 = np.zeros((n_l, n_m))
        if a12.shape != (n_m, n_l):
            raise InvalidArgumentError(f"a12 must be {n_m}x{n_l}, got {a12.shape}")
        if a21.shape != (n_l, n_m):
            raise InvalidArgumentError(f"a21 must be {n_l}x{n_m}, got {a21.shape}")

        manifest = tuple(self.manifest_labels) or tuple(range(1, n_m + 1))
        latent = tuple(self.latent_labels) or tuple(range(n_m + 1, n_m + n_l + 1))
        if len(manifest) != n_m or len(latent) != n_l:
            raise InvalidArgumentError("label lists do not match block sizes")
        if len(set(manifest) | set(latent)) != n_m + n_l:
            raise InvalidArgumentError("labels must be distinct across manifest and latent nodes")

        for name, arr in (("a11", a11), ("a12", a12), ("a21", a21), ("a22", a22)):
            if not np.all(np.isfinite(arr)):
                raise InvalidArgumentError(f"{name} has non-finite entries")
            object.__setattr__(self, name, _frozen(arr))
        object.__setattr__(self, "manifest_labels", manifest)
        object.__setattr__(self, "latent_labels", latent)

    @property
    def n_m(self) -> int:
        return self.a11.shape[0]

    @property
    def n_l(self) -> int:
        return self.a22.shape[0]

    @property
    def n(self) -> int:
        return self.n_m + self.n_l

    def full_matrix(self) -> np.ndarray:
        """Assembled adjacency in partitioned (manifest-first) order."""
        return np.block([[self.a11, self.a12], [self.a21, self.a22]])

    def original_matrix(self) -> np.ndarray:
        """Adjacency in the original node ordering (labels must be 1..n)."""
        labels = list(self.manifest_labels) + list(self.latent_labels)
        if sorted(labels) != list(range(1, self.n + 1)):
            raise InvalidArgumentError("labels are not a permutation of 1..n")
        perm = np.asarray(labels) - 1
        a = np.empty((self.n, self.n))
        a[np.ix_(perm, perm)] = self.full_matrix()
        return a

    def with_latent_block(self, a22) -> "PartitionedNetwork":
        return PartitionedNetwork(self.a11, self.a12, self.a21, a22,
                                  self.manifest_labels, self.latent_labels)


@dataclass(frozen=True)
class HigherOrderNetwork:
    """``x(k+1) = sum_i coeffs[i] x(k-i) + u(k)`` with the first ``manifest_count`` nodes manifest."""

    coeffs: tuple
    manifest_count: int

    def __post_init__(self):
        coeffs = tuple(np.asarray(c, dtype=float) for c in self.coeffs)
        if len(coeffs) < 1:
            raise InvalidArgumentError("need at least one coefficient matrix")
        n = coeffs[0].shape[0]
        for c in coeffs:
            if c.shape != (n, n):
                raise InvalidArgumentError("coefficient matrices must all be n x n")
        if not 1 <= self.manifest_count <= n:
            raise InvalidArgumentError(f"manifest_count must be in 1..{n}")
        object.__setattr__(self, "coeffs", tuple(_frozen(c) for c in coeffs))

    @property
    def nu(self) -> int:
        return len(self.coeffs)

    @property
    def n(self) -> int:
        return self.coeffs[0].shape[0]


@dataclass(frozen=True)
class StabilityReport:
    rho_full: float
    rho_latent: float
    stable: bool = field(init=False)
    latent_stable: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "stable", bool(self.rho_full < 1))
        object.__setattr__(self, "latent_stable", bool(self.rho_latent < 1))

    def __str__(self):
        return (f"rho(A) = {self.rho_full:.6g} ({'stable' if self.stable else 'UNSTABLE'}), "
                f"rho(A22) = {self.rho_latent:.6g} "
                f"({'stable' if self.latent_stable else 'UNSTABLE'})")


def _check_indices(indices: Sequence[int], n: int) -> list:
    idx = [int(i) for i in indices]
    if not idx:
        raise InvalidArgumentError("manifest index set is empty")
    if len(set(idx)) != len(idx):
        raise InvalidArgumentError(f"duplicate manifest indices in {idx}")
    bad = [i for i in idx if not 1 <= i <= n]
    if bad:
        raise InvalidArgumentError(f"manifest indices {bad} outside 1..{n}")
    return idx


def partition(a, manifest_indices: Sequence[int]) -> PartitionedNetwork:
    """Permute ``a`` so the given (1-based) manifest nodes come first.

    Latent nodes keep their relative order.  Labels record the original
    node numbers.
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidArgumentError(f"adjacency must be square, got shape {a.shape}")
    n = a.shape[0]
    manifest = _check_indices(manifest_indices, n)
    chosen = set(manifest)
    latent = [i for i in range(1, n + 1) if i not in chosen]
    m0 = np.asarray(manifest) - 1
    l0 = np.asarray(latent, dtype=int) - 1
    return PartitionedNetwork(
        a[np.ix_(m0, m0)], a[np.ix_(m0, l0)], a[np.ix_(l0, m0)], a[np.ix_(l0, l0)],
        tuple(manifest), tuple(latent),
    )


def spectral_radius(m) -> float:
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InvalidArgumentError(f"spectral radius needs a square matrix, got {m.shape}")
    if m.size == 0:
        return 0.0
    return float(np.max(np.abs(np.linalg.eigvals(m))))


def stability_report(net: PartitionedNetwork) -> StabilityReport:
    return StabilityReport(spectral_radius(net.full_matrix()), spectral_radius(net.a22))


def latent_acyclicity_index(a22, tol: float = NILPOTENCY_TOL) -> Optional[int]:
    """Smallest k <= n_l with ``max|a22^k| <= tol``, or None.

    By Cayley-Hamilton a nilpotent matrix vanishes by its dimension, so the
    search stops there.
    """
    if tol < 0:
        raise InvalidArgumentError("tol must be nonnegative")
    a22 = np.asarray(a22, dtype=float)
    n_l = a22.shape[0] if a22.ndim == 2 else 0
    if n_l == 0:
        return 1
    power = np.eye(n_l)
    for k in range(1, n_l + 1):
        power = power @ a22
        if np.max(np.abs(power)) <= tol:
            return k
    return None


def companion_matrix(hon: HigherOrderNetwork) -> np.ndarray:
    """First-order matrix for the stacked state ``[x(k); x(k-1); ...]``."""
    n, nu = hon.n, hon.nu
    big = np.zeros((n * nu, n * nu))
    big[:n, :] = np.hstack(hon.coeffs)
    big[n:, :-n] = np.eye(n * (nu - 1))
    return big


def lift_higher_order(hon: HigherOrderNetwork) -> PartitionedNetwork:
    """Rewrite a higher-order network as a first-order partitioned one.

    The manifest state is ``x_m(k)``; the latent state stacks
    ``x_l(k), x_m(k-1), x_l(k-1), ..., x_m(k-nu+1), x_l(k-nu+1)``, which is
    the companion state with ``x_m(k)`` pulled out.
    """
    return partition(companion_matrix(hon), range(1, hon.manifest_count + 1))


def gen_ring(n: int, edge_weight: float = 0.25, self_loop: float = 0.25,
             manifest_indices: Sequence[int] = (1,)) -> PartitionedNetwork:
    """Directed ring ``i -> i+1`` (mod n) with optional self-loops."""
    if n < 2:
        raise InvalidArgumentError("a ring needs n >= 2")
    a = np.zeros((n, n))
    src = np.arange(n)
    a[(src + 1) % n, src] = edge_weight
    if self_loop != 0:
        a[src, src] += self_loop
    return partition(a, manifest_indices)


def gen_erdos_renyi(n: int, p: float, w_min: float, w_max: float, n_manifest: int,
                    seed: int) -> PartitionedNetwork:
    """Random network with edges drawn in reciprocal pairs.

    Each unordered pair {i, j} carries both directed edges with probability
    ``p``; the two weights are independent uniforms on ``(w_min, w_max)``.
    The manifest set is drawn from the same seeded stream.
    """
    if not 0 <= p <= 1:
        raise InvalidArgumentError("p must be a probability")
    if w_min > w_max:
        raise InvalidArgumentError("w_min must not exceed w_max")
    if not 1 <= n_manifest <= n:
        raise InvalidArgumentError(f"n_manifest must be in 1..{n}")
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, 1)
    present = rng.random(iu.size) < p
    weights = rng.uniform(w_min, w_max, size=(iu.size, 2))
    a = np.zeros((n, n))
    a[ju[present], iu[present]] = weights[present, 0]
    a[iu[present], ju[present]] = weights[present, 1]
    manifest = np.sort(rng.choice(n, size=n_manifest, replace=False)) + 1
    return partition(a, manifest.tolist())
