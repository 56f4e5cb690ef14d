"""Exact Chern-Mather and Kazhdan-Lusztig classes of Schubert varieties in
orthogonal and Lagrangian Grassmannians, computed by torus localization on
small resolutions."""

__version__ = "0.1.0"

from .combinatorics import (  # noqa: E402
    HMatrix,
    IndexSeq,
    ProfilePath,
    block_matrix,
    bruhat_leq,
    capacity,
    class_partition,
    dual_partition,
    index_seq,
    profile_gap,
    schubert_dim,
    sub_betas,
)
from .euler import d_value, fiber_euler, is_smooth_point  # noqa: E402
from .fixedpoints import (  # noqa: E402
    ambient_fixed_points,
    cell_fixed_point,
    fiber_fixed_count,
    tower_fixed_points,
)
from .localization import degree_audit, gamma, gamma_table  # noqa: E402
from .pq import chern_from_roots, pfaffian, ptilde, qtilde, qtilde_pair  # noqa: E402
from .resolution import admissible, admissible_sequences, build_tower, tower_dim  # noqa: E402

__all__ = [
    "HMatrix", "IndexSeq", "ProfilePath", "admissible", "admissible_sequences",
    "ambient_fixed_points", "block_matrix", "bruhat_leq", "build_tower", "capacity",
    "cell_fixed_point", "chern_from_roots", "class_partition", "d_value", "degree_audit",
    "dual_partition", "fiber_euler", "fiber_fixed_count", "gamma", "gamma_table",
    "index_seq", "is_smooth_point", "pfaffian", "profile_gap", "ptilde", "qtilde",
    "qtilde_pair", "schubert_dim", "sub_betas", "tower_dim", "tower_fixed_points",
]
