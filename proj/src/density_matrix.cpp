#include "entdetect/density_matrix.hpp"

#include <cmath>
#include <sstream>

#include "entdetect/linalg.hpp"

namespace entdetect {

DensityMatrix::DensityMatrix(ComplexMatrix matrix, Dims dims)
    : matrix_(std::move(matrix)), dims_(std::move(dims)) {
    const int total = total_dimension(dims_);
    if (matrix_.rows() != total || matrix_.cols() != total) {
        std::ostringstream os;
        os << "density matrix is " << matrix_.rows() << "x" << matrix_.cols()
           << " but dims multiply to " << total;
        throw DimensionError(os.str());
    }
    if (!matrix_.allFinite()) throw NumericalError("density matrix has non-finite entries");
}

ValidationReport validate(const DensityMatrix& rho) {
    const auto& m = rho.matrix();
    ValidationReport r;
    r.hermiticity_defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
    r.trace_defect = std::abs(m.trace() - Complex{1.0, 0.0});
    const ComplexMatrix herm = 0.5 * (m + m.adjoint());
    r.min_eigenvalue = hermitian_eigenvalues(herm).minCoeff();
    return r;
}

void require_valid(const DensityMatrix& rho) {
    const auto r = validate(rho);
    std::ostringstream os;
    if (!r.hermitian())
        os << "state is not Hermitian (defect " << r.hermiticity_defect << ")";
    else if (!r.unit_trace())
        os << "state trace differs from 1 by " << r.trace_defect;
    else if (!r.positive())
        os << "state is not positive semidefinite (min eigenvalue " << r.min_eigenvalue << ")";
    else
        return;
    throw InvalidArgument(os.str());
}

ComplexMatrix partial_trace(const DensityMatrix& rho, std::span<const int> traced) {
    return partial_trace(rho.matrix(), rho.dims(), traced);
}

ComplexMatrix partial_transpose(const DensityMatrix& rho, int subsystem) {
    return partial_transpose(rho.matrix(), rho.dims(), subsystem);
}

DensityMatrix permute_systems(const DensityMatrix& rho, std::span<const int> perm) {
    ComplexMatrix m = permute_systems(rho.matrix(), rho.dims(), perm);
    Dims nd;
    nd.reserve(perm.size());
    for (int p : perm) nd.push_back(rho.dims()[p]);
    return DensityMatrix(std::move(m), std::move(nd));
}

DensityMatrix bipartition(const DensityMatrix& rho, int party) {
    const int n = rho.parties();
    if (party < 0 || party >= n) throw InvalidArgument("bipartition: party index out of range");
    if (n < 2) throw InvalidArgument("bipartition: need at least two subsystems");
    std::vector<int> perm{party};
    for (int k = 0; k < n; ++k)
        if (k != party) perm.push_back(k);
    auto permuted = permute_systems(rho, perm);
    const int first = rho.dims()[party];
    return DensityMatrix(permuted.matrix(), Dims{first, rho.dim() / first});
}

double purity(const ComplexMatrix& rho) {
    return (rho * rho).trace().real();
}

} // namespace entdetect
