#include "entdetect/states.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "entdetect/linalg.hpp"

namespace entdetect {

namespace {

using Rng = std::mt19937_64;

ComplexMatrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix g(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(i, j) = Complex{re, im};
        }
    return g;
}

ComplexVector random_unit_vector(int d, Rng& rng) {
    ComplexVector v = ginibre(d, 1, rng).col(0);
    return v / v.norm();
}

std::vector<double> dirichlet_weights(int terms, Rng& rng) {
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> w(terms);
    double total = 0.0;
    for (double& x : w) total += (x = expo(rng));
    for (double& x : w) x /= total;
    return w;
}

ComplexVector kron_vectors(const std::vector<ComplexVector>& factors) {
    ComplexVector out = ComplexVector::Ones(1);
    for (const auto& f : factors) {
        ComplexVector next(out.size() * f.size());
        for (Eigen::Index i = 0; i < out.size(); ++i) next.segment(i * f.size(), f.size()) = out(i) * f;
        out = std::move(next);
    }
    return out;
}

void require_range(double v, double lo, double hi, bool open, const char* what) {
    const bool ok = open ? (v > lo && v < hi) : (v >= lo && v <= hi);
    if (!ok || !std::isfinite(v)) {
        std::ostringstream os;
        os << what << " = " << v << " outside " << (open ? "(" : "[") << lo << ", " << hi
           << (open ? ")" : "]");
        throw InvalidArgument(os.str());
    }
}

} // namespace

ComplexVector basis_ket(const Dims& dims, const std::vector<int>& digits) {
    if (digits.size() != dims.size()) throw DimensionError("basis_ket: digit count differs from dims");
    int index = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        if (digits[k] < 0 || digits[k] >= dims[k]) throw InvalidArgument("basis_ket: digit out of range");
        index = index * dims[k] + digits[k];
    }
    ComplexVector v = ComplexVector::Zero(total_dimension(dims));
    v(index) = 1.0;
    return v;
}

DensityMatrix mix_with_white_noise(const DensityMatrix& rho, double p) {
    require_range(p, 0.0, 1.0, false, "mixing weight p");
    const int d = rho.dim();
    ComplexMatrix m = p * rho.matrix();
    m.diagonal().array() += (1.0 - p) / d;
    return DensityMatrix(std::move(m), rho.dims());
}

DensityMatrix bell_state() {
    ComplexVector v = (basis_ket({2, 2}, {0, 0}) + basis_ket({2, 2}, {1, 1})) / std::sqrt(2.0);
    return DensityMatrix(projector(v), {2, 2});
}

DensityMatrix horodecki_2x4(double d) {
    require_range(d, 0.0, 1.0, true, "horodecki_2x4 parameter d");
    ComplexMatrix m = ComplexMatrix::Zero(8, 8);
    for (int k = 0; k < 7; ++k) m(k, k) = d;
    m(4, 4) = (1.0 + d) / 2.0;
    m(7, 7) = (1.0 + d) / 2.0;
    for (auto [i, j] : {std::pair{0, 5}, {1, 6}, {2, 7}}) m(i, j) = m(j, i) = d;
    m(4, 7) = m(7, 4) = std::sqrt(1.0 - d * d) / 2.0;
    m /= (1.0 + 7.0 * d);
    return DensityMatrix(std::move(m), {2, 4});
}

DensityMatrix horodecki_2x4_bell_mixture(double d, double x) {
    require_range(x, 0.0, 1.0, false, "mixing weight x");
    const Dims dims{2, 4};
    ComplexVector xi = (basis_ket(dims, {0, 0}) + basis_ket(dims, {1, 1})) / std::sqrt(2.0);
    ComplexMatrix m = x * projector(xi) + (1.0 - x) * horodecki_2x4(d).matrix();
    return DensityMatrix(std::move(m), dims);
}

DensityMatrix horodecki_3x3(double x) {
    require_range(x, 0.0, 1.0, true, "horodecki_3x3 parameter x");
    ComplexMatrix m = ComplexMatrix::Zero(9, 9);
    for (int k : {0, 1, 2, 3, 4, 5, 7}) m(k, k) = x;
    for (auto [i, j] : {std::pair{0, 4}, {0, 8}, {4, 8}}) m(i, j) = m(j, i) = x;
    m(6, 6) = m(8, 8) = (1.0 + x) / 2.0;
    m(6, 8) = m(8, 6) = std::sqrt(1.0 - x * x) / 2.0;
    m /= (1.0 + 8.0 * x);
    return DensityMatrix(std::move(m), {3, 3});
}

std::vector<ComplexVector> tiles_upb_vectors() {
    const Dims d{3};
    auto k = [&](int i) { return basis_ket(d, {i}); };
    auto prod = [](const ComplexVector& a, const ComplexVector& b) { return kron_vectors({a, b}); };
    const double r2 = std::sqrt(2.0);
    const ComplexVector sum = k(0) + k(1) + k(2);
    return {
        prod(k(0), k(0) - k(1)) / r2,
        prod(k(0) - k(1), k(2)) / r2,
        prod(k(2), k(1) - k(2)) / r2,
        prod(k(1) - k(2), k(0)) / r2,
        prod(sum, sum) / 3.0,
    };
}

DensityMatrix tiles_upb_state() {
    ComplexMatrix m = ComplexMatrix::Identity(9, 9);
    for (const auto& v : tiles_upb_vectors()) m -= projector(v);
    return DensityMatrix(m / 4.0, {3, 3});
}

ComplexVector w_bar_vector() {
    const Dims d{3, 3, 3};
    ComplexVector v = ComplexVector::Zero(27);
    for (const auto& digits : std::vector<std::vector<int>>{
             {0, 0, 1}, {0, 1, 0}, {1, 0, 0}, {1, 1, 2}, {1, 2, 1}, {2, 1, 1}})
        v += basis_ket(d, digits);
    return v / std::sqrt(6.0);
}

DensityMatrix w_bar_state() {
    return DensityMatrix(projector(w_bar_vector()), {3, 3, 3});
}

ComplexVector ghz_epsilon_vector(double eps) {
    if (!std::isfinite(eps)) throw InvalidArgument("ghz_epsilon_vector: eps must be finite");
    const Dims d{2, 2, 2};
    ComplexVector v = basis_ket(d, {0, 0, 0}) + eps * basis_ket(d, {1, 1, 0}) + basis_ket(d, {1, 1, 1});
    return v / std::sqrt(2.0 + eps * eps);
}

DensityMatrix ghz_epsilon_state(double eps) {
    return DensityMatrix(projector(ghz_epsilon_vector(eps)), {2, 2, 2});
}

DensityMatrix ghz3_state() {
    return ghz_epsilon_state(0.0);
}

ComplexMatrix random_unitary(int d, std::uint64_t seed) {
    if (d <= 0) throw InvalidArgument("random_unitary: dimension must be positive");
    Rng rng(seed);
    const ComplexMatrix g = ginibre(d, d, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(d, d);
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < d; ++i) {
        const double a = std::abs(r(i, i));
        if (a > 0) q.col(i) *= r(i, i) / a;
    }
    return q;
}

ComplexVector random_pure_vector(const Dims& dims, std::uint64_t seed) {
    Rng rng(seed);
    return random_unit_vector(total_dimension(dims), rng);
}

DensityMatrix random_pure(const Dims& dims, std::uint64_t seed) {
    return DensityMatrix(projector(random_pure_vector(dims, seed)), dims);
}

DensityMatrix random_mixed(const Dims& dims, int rank, std::uint64_t seed) {
    const int total = total_dimension(dims);
    if (rank <= 0) throw InvalidArgument("random_mixed: rank must be positive");
    Rng rng(seed);
    const ComplexMatrix g = ginibre(total, rank, rng);
    ComplexMatrix m = g * g.adjoint();
    m /= m.trace().real();
    // Remove the rounding asymmetry of the product.
    m = 0.5 * (m + m.adjoint()).eval();
    return DensityMatrix(std::move(m), dims);
}

DensityMatrix random_separable(const Dims& dims, int terms, std::uint64_t seed) {
    const int total = total_dimension(dims);
    if (terms <= 0) throw InvalidArgument("random_separable: terms must be positive");
    Rng rng(seed);
    const auto w = dirichlet_weights(terms, rng);
    ComplexMatrix m = ComplexMatrix::Zero(total, total);
    for (int t = 0; t < terms; ++t) {
        std::vector<ComplexVector> factors;
        for (int d : dims) factors.push_back(random_unit_vector(d, rng));
        m += w[t] * projector(kron_vectors(factors));
    }
    return DensityMatrix(std::move(m), dims);
}

DensityMatrix random_biseparable(const Dims& dims, int terms, std::uint64_t seed) {
    if (dims.size() != 3) throw InvalidArgument("random_biseparable: need exactly three subsystems");
    const int total = total_dimension(dims);
    if (terms <= 0) throw InvalidArgument("random_biseparable: terms must be positive");
    Rng rng(seed);
    const auto w = dirichlet_weights(terms, rng);
    std::uniform_int_distribution<int> pick(0, 2);
    ComplexMatrix m = ComplexMatrix::Zero(total, total);
    for (int t = 0; t < terms; ++t) {
        const int i = pick(rng);
        std::vector<int> order{i};
        for (int k = 0; k < 3; ++k)
            if (k != i) order.push_back(k);
        const ComplexVector single = random_unit_vector(dims[i], rng);
        const ComplexVector pair = random_unit_vector(dims[order[1]] * dims[order[2]], rng);
        const ComplexVector ordered = kron_vectors({single, pair});
        // Factor order[t] sits at position t; invert to restore 0,1,2.
        std::vector<int> inverse(3);
        for (int pos = 0; pos < 3; ++pos) inverse[order[pos]] = pos;
        const Dims ordered_dims{dims[order[0]], dims[order[1]], dims[order[2]]};
        m += w[t] * projector(permute_vector(ordered, ordered_dims, inverse));
    }
    return DensityMatrix(std::move(m), dims);
}

} // namespace entdetect
