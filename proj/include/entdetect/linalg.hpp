#pragma once

#include <span>
#include <vector>

#include "entdetect/types.hpp"

namespace entdetect {

/// Singular values of a matrix, sorted non-increasing.
struct SingularSpectrum {
    std::vector<double> values;

    double sum() const;
    double sum_of_squares() const;
};

/// Column-stacking vectorization: entry (i, j) of an m x n matrix lands at
/// position j * m + i (0-based).
ComplexVector vectorize(const ComplexMatrix& a);

/// Inverse of vectorize for a rows x cols matrix.
ComplexMatrix unvectorize(const ComplexVector& v, Eigen::Index rows, Eigen::Index cols);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Realignment of an (mn) x (mn) matrix viewed as an m x m grid of n x n
/// blocks. The row for block (i, j) is vec(Z_ij)^T and sits at index
/// j * m + i, so the result is m^2 x n^2 and R(A (x) B) = vec(A) vec(B)^T.
ComplexMatrix realign(const ComplexMatrix& z, int m, int n);

SingularSpectrum singular_values(const ComplexMatrix& a);

/// Sum of singular values.
double trace_norm(const ComplexMatrix& a);

/// Eigenvalues of a Hermitian matrix in ascending order. Only the lower
/// triangle is read.
RealVector hermitian_eigenvalues(const ComplexMatrix& h);

/// Product of the dimensions; throws DimensionError on non-positive entries.
int total_dimension(std::span<const int> dims);

/// Traces out the listed subsystems (0-based) and returns the reduced matrix
/// over the kept subsystems in their original order.
ComplexMatrix partial_trace(const ComplexMatrix& rho, std::span<const int> dims,
                            std::span<const int> traced);

/// Transposes the chosen tensor factor only.
ComplexMatrix partial_transpose(const ComplexMatrix& rho, std::span<const int> dims,
                                int subsystem);

/// Reorders tensor factors: factor perm[k] of the input becomes factor k of
/// the output. Returns the permuted matrix; the new dims are
/// (dims[perm[0]], dims[perm[1]], ...).
ComplexMatrix permute_systems(const ComplexMatrix& rho, std::span<const int> dims,
                              std::span<const int> perm);

/// Same relabeling applied to a state vector.
ComplexVector permute_vector(const ComplexVector& psi, std::span<const int> dims,
                             std::span<const int> perm);

/// Squared singular values of the dA x dB matricization of psi, sorted
/// non-increasing, length min(dA, dB). psi must have unit norm.
std::vector<double> schmidt_coefficients(const ComplexVector& psi, int dA, int dB);

/// Density matrix |psi><psi|.
ComplexMatrix projector(const ComplexVector& psi);

} // namespace entdetect
