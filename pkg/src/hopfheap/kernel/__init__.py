from .linalg import charpoly, coordinates, kernel_basis, matrix_inverse, rank, rref, solve
from .poly import roots_in_field
from .scalar import ONE, ZERO, FieldSpec, Scalar, format_scalar, parse_scalar, scalar_inv
from .tensor import (
    SparseTensor,
    apply,
    compose,
    contract,
    einsum,
    fuse_legs,
    kron,
    permute_legs,
    split_leg,
    tensor_product_t,
    transpose,
)

__all__ = [
    "FieldSpec", "Scalar", "ZERO", "ONE", "format_scalar", "parse_scalar", "scalar_inv",
    "SparseTensor", "contract", "permute_legs", "tensor_product_t", "einsum", "apply",
    "compose", "transpose", "kron", "fuse_legs", "split_leg",
    "kernel_basis", "matrix_inverse", "rank", "rref", "solve", "coordinates", "charpoly",
    "roots_in_field",
]
