"""Coherent configurations from stable 2-WL pair colourings.

The basis of the cellular algebra W_G is stored only as its colour classes
(0/1 matrices) together with the intersection numbers p^k_ij; the algebra
itself is never materialised.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError, InvariantError
from .graph import Graph, srg_params
from .wl import DEFAULT_TUPLE_CAP, Coloring, joint_refinement, wlk_stable


@dataclass(frozen=True)
class CoherentConfig:
    n: int
    color_matrix: np.ndarray  # (n, n) class id of each ordered pair
    transpose: tuple[int, ...]  # class i* with A_{i*} = A_i^T
    diagonal: tuple[bool, ...]
    adjacency: tuple[bool, ...]  # classes whose union is A_G
    sizes: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.sizes)

    def basis(self) -> np.ndarray:
        """Stack of the m basis matrices, shape (m, n, n)."""
        return (self.color_matrix[None, :, :] == np.arange(self.rank)[:, None, None]).astype(np.int64)

    def basis_matrix(self, i: int) -> np.ndarray:
        return (self.color_matrix == i).astype(np.int64)


def _config_from_colors(g: Graph, cm: np.ndarray, ids: list[int]) -> CoherentConfig:
    """Build and verify a configuration whose classes are exactly ``ids`` (in order)."""
    n = g.n
    pos = {c: i for i, c in enumerate(ids)}
    local = np.vectorize(pos.__getitem__, otypes=[np.int64])(cm) if n else cm
    m = len(ids)
    a = g.adjacency().astype(bool)
    transpose, diagonal, adjacency, sizes = [], [], [], []
    for i in range(m):
        mask = local == i
        t_classes = np.unique(local.T[mask])
        if len(t_classes) != 1:
            raise InvariantError(f"class {i} is not closed under transpose")
        transpose.append(int(t_classes[0]))
        on_diag = np.diag(mask)
        if on_diag.any() and on_diag.sum() != mask.sum():
            raise InvariantError(f"class {i} mixes diagonal and off-diagonal pairs")
        diagonal.append(bool(on_diag.any()))
        adj = np.unique(a[mask])
        if len(adj) != 1:
            raise InvariantError(f"class {i} mixes edges and non-edges")
        adjacency.append(bool(adj[0]))
        sizes.append(int(mask.sum()))
    cfg = CoherentConfig(n, local, tuple(transpose), tuple(diagonal), tuple(adjacency), tuple(sizes))
    verify_axioms(cfg, g)
    return cfg


def coherent_config(g: Graph, tuple_cap: int = DEFAULT_TUPLE_CAP) -> CoherentConfig:
    if g.n < 1:
        raise InputError("coherent configuration needs at least one vertex")
    col: Coloring = wlk_stable(g, 2, tuple_cap)
    cm = np.array(col.colors, dtype=np.int64).reshape(g.n, g.n)
    return _config_from_colors(g, cm, sorted(set(col.colors)))


def structure_constants(cfg: CoherentConfig) -> np.ndarray:
    """p[k, i, j] = #{w : (v,w) in class i, (w,u) in class j} for any (v,u) in class k.

    Counted by brute force over all (v, w, u); raises if a count is not
    constant on its class.
    """
    n, m, cm = cfg.n, cfg.rank, cfg.color_matrix
    p = np.full((m, m, m), -1, dtype=np.int64)
    for v in range(n):
        for u in range(n):
            counts = np.zeros((m, m), dtype=np.int64)
            for w in range(n):
                counts[cm[v, w], cm[w, u]] += 1
            k = cm[v, u]
            if p[k, 0, 0] < 0:
                p[k] = counts
            elif not np.array_equal(p[k], counts):
                raise InvariantError(f"intersection numbers not constant on class {k}")
    return p


def verify_axioms(cfg: CoherentConfig, g: Graph | None = None) -> None:
    """Raise InvariantError unless cfg is a coherent configuration (and fits g)."""
    basis = cfg.basis()
    n = cfg.n
    if not np.array_equal(basis.sum(axis=0), np.ones((n, n), dtype=np.int64)):
        raise InvariantError("classes do not partition V x V")
    for i, t in enumerate(cfg.transpose):
        if not np.array_equal(basis[t], basis[i].T):
            raise InvariantError(f"transpose of class {i} is not class {t}")
    diag_sum = sum(basis[i] for i in range(cfg.rank) if cfg.diagonal[i])
    if not np.array_equal(diag_sum, np.eye(n, dtype=np.int64)):
        raise InvariantError("diagonal classes do not sum to I")
    if g is not None:
        adj_sum = sum((basis[i] for i in range(cfg.rank) if cfg.adjacency[i]), np.zeros((n, n), np.int64))
        if not np.array_equal(adj_sum, g.adjacency()):
            raise InvariantError("adjacency classes do not sum to A_G")
    p = structure_constants(cfg)
    products = np.einsum("ivw,jwu->ijvu", basis, basis)
    expected = np.einsum("kij,kvu->ijvu", p, basis)
    if not np.array_equal(products, expected) or (p < 0).any():
        raise InvariantError("A_i A_j is not the integral combination sum_k p^k_ij A_k")


def algebra_isomorphic(g: Graph, h: Graph, tuple_cap: int = DEFAULT_TUPLE_CAP) -> bool:
    """Is there an isomorphism W_g -> W_h of cellular algebras sending A_g to A_h?

    Classes are matched through the shared canonical palette of a joint
    2-WL run and the match is certified by comparing diagonal flags,
    transpose pairing, adjacency membership, class sizes and the full
    intersection-number tensors.
    """
    if g.n != h.n:
        return False
    if g.n == 0:
        return True
    joint = joint_refinement(g, h, 2, tuple_cap)
    if not joint.equivalent:
        # refinement stopped early, so the colourings need not be stable
        return False
    cg, ch = joint.colorings
    ids_g, ids_h = sorted(set(cg.colors)), sorted(set(ch.colors))
    if ids_g != ids_h:
        return False
    cfg_g = _config_from_colors(g, np.array(cg.colors).reshape(g.n, g.n), ids_g)
    cfg_h = _config_from_colors(h, np.array(ch.colors).reshape(h.n, h.n), ids_h)
    same_shape = (
        cfg_g.diagonal == cfg_h.diagonal
        and cfg_g.transpose == cfg_h.transpose
        and cfg_g.adjacency == cfg_h.adjacency
        and cfg_g.sizes == cfg_h.sizes
    )
    return same_shape and np.array_equal(structure_constants(cfg_g), structure_constants(cfg_h))


def srg_cellular_check(g: Graph, tuple_cap: int = DEFAULT_TUPLE_CAP) -> bool:
    """For strongly regular g: is the basis exactly {I, A, J - I - A}?"""
    if srg_params(g) is None:
        raise InputError("graph is not strongly regular")
    cfg = coherent_config(g, tuple_cap)
    if cfg.rank != 3:
        return False
    n = g.n
    a = g.adjacency()
    eye = np.eye(n, dtype=np.int64)
    wanted = [eye, a, np.ones((n, n), dtype=np.int64) - eye - a]
    got = [cfg.basis_matrix(i) for i in range(3)]
    return all(any(np.array_equal(w, b) for b in got) for w in wanted)
