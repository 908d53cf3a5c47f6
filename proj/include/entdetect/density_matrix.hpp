#pragma once

#include <span>

#include "entdetect/types.hpp"

namespace entdetect {

inline constexpr double kHermiticityTolerance = 1e-10;
inline constexpr double kTraceTolerance = 1e-10;
inline constexpr double kPsdTolerance = 1e-8;

/// A D x D complex matrix together with its ordered subsystem dimensions.
///
/// Construction only enforces structure (square, finite, dims multiply to D).
/// Physicality (Hermitian, unit trace, PSD) is reported by validate() so that
/// defective inputs can still be diagnosed.
class DensityMatrix {
public:
    DensityMatrix(ComplexMatrix matrix, Dims dims);

    const ComplexMatrix& matrix() const noexcept { return matrix_; }
    const Dims& dims() const noexcept { return dims_; }
    int dim() const noexcept { return static_cast<int>(matrix_.rows()); }
    int parties() const noexcept { return static_cast<int>(dims_.size()); }

private:
    ComplexMatrix matrix_;
    Dims dims_;
};

struct ValidationReport {
    double hermiticity_defect = 0.0; ///< max |rho - rho^H| entrywise
    double trace_defect = 0.0;       ///< |tr rho - 1|
    double min_eigenvalue = 0.0;     ///< of the Hermitian part

    bool hermitian() const { return hermiticity_defect <= kHermiticityTolerance; }
    bool unit_trace() const { return trace_defect <= kTraceTolerance; }
    bool positive() const { return min_eigenvalue >= -kPsdTolerance; }
    bool valid() const { return hermitian() && unit_trace() && positive(); }
};

ValidationReport validate(const DensityMatrix& rho);

/// Throws InvalidArgument describing the first failed invariant.
void require_valid(const DensityMatrix& rho);

ComplexMatrix partial_trace(const DensityMatrix& rho, std::span<const int> traced);
ComplexMatrix partial_transpose(const DensityMatrix& rho, int subsystem);
DensityMatrix permute_systems(const DensityMatrix& rho, std::span<const int> perm);

/// Regroups an n-party state as the bipartite state party | rest, with the
/// remaining parties merged in ascending index order into one factor.
DensityMatrix bipartition(const DensityMatrix& rho, int party);

double purity(const ComplexMatrix& rho);

} // namespace entdetect
