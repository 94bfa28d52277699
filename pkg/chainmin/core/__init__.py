from chainmin.core._poset import (
    GradedPoset,
    ExplicitPoset,
    ChainPoset
)
from chainmin.core.family import Family
from chainmin.core.field import (
    GaloisField,
    rref,
    span_codes,
    enumerate_rref
)
from chainmin.core.lattice import (
    BooleanLattice,
    SubspaceLattice,
    boolean_c2_prime,
    gaussian_binomial,
    subspace_c2_prime,
    enumerate_subspaces,
    poset_from_descriptor
)
