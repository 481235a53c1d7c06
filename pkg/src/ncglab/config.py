"""Central numeric defaults. CLI flags and keyword arguments override these."""

# Dense-matrix capacity for Clifford generator construction (2^ceil(n/2) <= cap).
DENSE_DIM_CAP = 4096

# Maximum member count for exhaustive sign/phase enumerations.
ENUMERATION_CAP = 2**20

# Singular values below this fraction of sigma_max are treated as zero.
SVD_RELATIVE_FLOOR = 1e-12

# Max-abs deviation allowed when an input must be Hermitian.
HERMITIAN_TOL = 1e-9

# Floating-point guard for the parallelogram radicand.
RADICAND_CLAMP = -1e-14

# Alternating / ascent solver defaults.
DEFAULT_RESTARTS = 32
DEFAULT_ITERS = 200
DEFAULT_TOL = 1e-10

# Decoder defaults: eps is the slack parameter, delta defaults to the
# matrix-embedding spread threshold sqrt(2)*eps when not supplied.
DEFAULT_EPS = 0.3

# Subspace membership residual considered "inside".
SUBSPACE_RESIDUAL_TOL = 1e-10

# Completeness certificate slack below eta.
CERTIFICATE_SLACK = 1e-6

# File format version written by all serializers.
FORMAT_VERSION = 1
