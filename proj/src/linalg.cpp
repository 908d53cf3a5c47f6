#include "entdetect/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace entdetect {

namespace {

// Row-major strides: the leftmost factor is the most significant digit.
std::vector<int> strides_of(std::span<const int> dims) {
    std::vector<int> s(dims.size(), 1);
    for (int k = static_cast<int>(dims.size()) - 2; k >= 0; --k)
        s[k] = s[k + 1] * dims[k + 1];
    return s;
}

void require_square(const ComplexMatrix& rho, int total, const char* op) {
    if (rho.rows() != total || rho.cols() != total) {
        std::ostringstream os;
        os << op << ": matrix is " << rho.rows() << "x" << rho.cols()
           << " but dims multiply to " << total;
        throw DimensionError(os.str());
    }
}

void require_subsystem(std::span<const int> dims, int subsystem, const char* op) {
    if (subsystem < 0 || subsystem >= static_cast<int>(dims.size())) {
        std::ostringstream os;
        os << op << ": subsystem index " << subsystem << " out of range for "
           << dims.size() << " subsystems";
        throw InvalidArgument(os.str());
    }
}

// Offsets of every multi-index over the chosen subsystems, enumerated with the
// first listed subsystem most significant.
std::vector<int> offsets_over(std::span<const int> dims, const std::vector<int>& strides,
                              const std::vector<int>& which) {
    std::vector<int> offsets{0};
    for (int k : which) {
        std::vector<int> next;
        next.reserve(offsets.size() * dims[k]);
        for (int base : offsets)
            for (int digit = 0; digit < dims[k]; ++digit)
                next.push_back(base + digit * strides[k]);
        offsets = std::move(next);
    }
    return offsets;
}

// out_index -> in_index for a factor permutation.
std::vector<int> permutation_map(std::span<const int> dims, std::span<const int> perm) {
    const int n = static_cast<int>(dims.size());
    if (static_cast<int>(perm.size()) != n)
        throw InvalidArgument("permute_systems: permutation length differs from number of subsystems");
    std::vector<int> seen(n, 0);
    for (int p : perm) {
        if (p < 0 || p >= n || seen[p]++)
            throw InvalidArgument("permute_systems: not a valid permutation");
    }
    const auto in_strides = strides_of(dims);
    std::vector<int> out_order(perm.begin(), perm.end());
    // Enumerating input offsets in the output's digit order yields the map.
    return offsets_over(dims, in_strides, out_order);
}

} // namespace

double SingularSpectrum::sum() const {
    return std::accumulate(values.begin(), values.end(), 0.0);
}

double SingularSpectrum::sum_of_squares() const {
    double s = 0.0;
    for (double v : values) s += v * v;
    return s;
}

ComplexVector vectorize(const ComplexMatrix& a) {
    ComplexVector v(a.size());
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            v(j * a.rows() + i) = a(i, j);
    return v;
}

ComplexMatrix unvectorize(const ComplexVector& v, Eigen::Index rows, Eigen::Index cols) {
    if (v.size() != rows * cols)
        throw DimensionError("unvectorize: length does not match rows * cols");
    ComplexMatrix a(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i)
            a(i, j) = v(j * rows + i);
    return a;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

ComplexMatrix realign(const ComplexMatrix& z, int m, int n) {
    if (m <= 0 || n <= 0 || z.rows() != static_cast<Eigen::Index>(m) * n ||
        z.cols() != static_cast<Eigen::Index>(m) * n)
        throw DimensionError("realign: Z is not (mn)x(mn)");
    ComplexMatrix r(m * m, n * n);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            const int row = j * m + i;
            // vec of block (i, j): column-stacked, entry (k, c) at c * n + k.
            for (int c = 0; c < n; ++c)
                for (int k = 0; k < n; ++k)
                    r(row, c * n + k) = z(i * n + k, j * n + c);
        }
    }
    return r;
}

SingularSpectrum singular_values(const ComplexMatrix& a) {
    if (a.size() == 0) return {};
    if (!a.allFinite())
        throw NumericalError("singular_values: matrix has non-finite entries");
    Eigen::BDCSVD<ComplexMatrix> svd(a);
    if (svd.info() != Eigen::Success) {
        std::ostringstream os;
        os << "singular_values: SVD did not converge for " << a.rows() << "x" << a.cols()
           << " input (Eigen info code " << static_cast<int>(svd.info()) << ")";
        throw NumericalError(os.str());
    }
    const auto& sv = svd.singularValues();
    SingularSpectrum out;
    out.values.assign(sv.data(), sv.data() + sv.size());
    for (double& v : out.values) v = std::max(v, 0.0);
    std::sort(out.values.begin(), out.values.end(), std::greater<>());
    return out;
}

double trace_norm(const ComplexMatrix& a) {
    return singular_values(a).sum();
}

RealVector hermitian_eigenvalues(const ComplexMatrix& h) {
    if (h.rows() != h.cols())
        throw DimensionError("hermitian_eigenvalues: matrix is not square");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw NumericalError("hermitian_eigenvalues: eigensolver did not converge");
    return es.eigenvalues();
}

int total_dimension(std::span<const int> dims) {
    if (dims.empty()) throw DimensionError("dims must be non-empty");
    long long total = 1;
    for (int d : dims) {
        if (d <= 0) throw DimensionError("subsystem dimensions must be positive");
        total *= d;
        if (total > (1LL << 30)) throw DimensionError("total dimension too large");
    }
    return static_cast<int>(total);
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, std::span<const int> dims,
                            std::span<const int> traced) {
    const int n = static_cast<int>(dims.size());
    require_square(rho, total_dimension(dims), "partial_trace");
    std::vector<bool> is_traced(n, false);
    for (int t : traced) {
        require_subsystem(dims, t, "partial_trace");
        if (is_traced[t]) throw InvalidArgument("partial_trace: repeated subsystem index");
        is_traced[t] = true;
    }
    const int traced_count = static_cast<int>(std::count(is_traced.begin(), is_traced.end(), true));
    if (traced_count == 0 || traced_count == n)
        throw InvalidArgument("partial_trace: traced set must be a non-empty proper subset");

    std::vector<int> kept, gone;
    for (int k = 0; k < n; ++k) (is_traced[k] ? gone : kept).push_back(k);
    const auto strides = strides_of(dims);
    const auto kept_off = offsets_over(dims, strides, kept);
    const auto gone_off = offsets_over(dims, strides, gone);

    const auto dk = static_cast<Eigen::Index>(kept_off.size());
    ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
    for (Eigen::Index r = 0; r < dk; ++r)
        for (Eigen::Index c = 0; c < dk; ++c) {
            Complex s{0.0, 0.0};
            for (int g : gone_off) s += rho(kept_off[r] + g, kept_off[c] + g);
            out(r, c) = s;
        }
    return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho, std::span<const int> dims,
                                int subsystem) {
    const int total = total_dimension(dims);
    require_square(rho, total, "partial_transpose");
    require_subsystem(dims, subsystem, "partial_transpose");
    const auto strides = strides_of(dims);
    const int st = strides[subsystem];
    const int d = dims[subsystem];
    ComplexMatrix out(total, total);
    for (int i = 0; i < total; ++i) {
        const int di = (i / st) % d;
        for (int j = 0; j < total; ++j) {
            const int dj = (j / st) % d;
            out(i + (dj - di) * st, j + (di - dj) * st) = rho(i, j);
        }
    }
    return out;
}

ComplexMatrix permute_systems(const ComplexMatrix& rho, std::span<const int> dims,
                              std::span<const int> perm) {
    const int total = total_dimension(dims);
    require_square(rho, total, "permute_systems");
    const auto map = permutation_map(dims, perm);
    ComplexMatrix out(total, total);
    for (int r = 0; r < total; ++r)
        for (int c = 0; c < total; ++c) out(r, c) = rho(map[r], map[c]);
    return out;
}

ComplexVector permute_vector(const ComplexVector& psi, std::span<const int> dims,
                             std::span<const int> perm) {
    const int total = total_dimension(dims);
    if (psi.size() != total)
        throw DimensionError("permute_vector: vector length does not match dims");
    const auto map = permutation_map(dims, perm);
    ComplexVector out(total);
    for (int r = 0; r < total; ++r) out(r) = psi(map[r]);
    return out;
}

std::vector<double> schmidt_coefficients(const ComplexVector& psi, int dA, int dB) {
    if (dA <= 0 || dB <= 0 || psi.size() != static_cast<Eigen::Index>(dA) * dB)
        throw DimensionError("schmidt_coefficients: length(psi) != dA * dB");
    if (std::abs(psi.norm() - 1.0) > 1e-10)
        throw InvalidArgument("schmidt_coefficients: state vector is not normalized");
    ComplexMatrix m(dA, dB);
    for (int a = 0; a < dA; ++a)
        for (int b = 0; b < dB; ++b) m(a, b) = psi(a * dB + b);
    auto spec = singular_values(m);
    std::vector<double> mu;
    mu.reserve(spec.values.size());
    for (double s : spec.values) mu.push_back(s * s);
    return mu;
}

ComplexMatrix projector(const ComplexVector& psi) {
    return psi * psi.adjoint();
}

} // namespace entdetect
