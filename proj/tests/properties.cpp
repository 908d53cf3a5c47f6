#include "properties.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "entdetect/criteria.hpp"
#include "entdetect/linalg.hpp"
#include "entdetect/states.hpp"
#include "oracle.hpp"

namespace props {

namespace {

using namespace entdetect;

ComplexMatrix random_matrix(int rows, int cols, std::mt19937_64& rng) {
    std::normal_distribution<double> n;
    ComplexMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = Complex{n(rng), n(rng)};
    return m;
}

BipartiteParams random_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> a(-3.0, 3.0);
    std::uniform_int_distribution<int> l(1, 6);
    return {a(rng), a(rng), l(rng)};
}

double max_abs(const ComplexMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

Result finish(Result r, bool pass) {
    r.pass = pass;
    std::ostringstream os;
    os << r.cases << " cases, worst " << r.worst << " (tolerance " << r.tolerance << ")";
    if (!r.detail.empty()) os << "; " << r.detail;
    r.detail = os.str();
    return r;
}

const std::vector<Dims> kBipartiteDims{{2, 2}, {2, 3}, {3, 3}};

} // namespace

Result affinity() {
    Result r{"bordered matrix is affine in rho", false, 0, 0.0, 1e-12, ""};
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int c = 0; c < 60; ++c) {
        const Dims& dims = kBipartiteDims[c % 3];
        const auto r1 = random_mixed(dims, 1 + c % 4, 1000 + c);
        const auto r2 = random_mixed(dims, 2 + c % 3, 2000 + c);
        const double k = u(rng);
        const auto p = random_params(rng);
        const ComplexMatrix mix = k * r1.matrix() + (1.0 - k) * r2.matrix();
        const ComplexMatrix lhs = bordered_matrix(mix, dims[0], dims[1], p);
        const ComplexMatrix rhs = k * bordered_matrix(r1, p) + (1.0 - k) * bordered_matrix(r2, p);
        r.worst = std::max(r.worst, max_abs(lhs - rhs));
        ++r.cases;
    }
    return finish(r, r.worst <= r.tolerance);
}

Result unitary_invariance() {
    Result r{"trace norm of the bordered matrix is local-unitary invariant", false, 0, 0.0, 1e-9, ""};
    std::mt19937_64 rng(202);
    for (int c = 0; c < 60; ++c) {
        const Dims& dims = kBipartiteDims[c % 3];
        const auto rho = random_mixed(dims, 1 + c % 5, 3000 + c);
        const auto p = random_params(rng);
        const ComplexMatrix w = kron(random_unitary(dims[0], 4000 + c), random_unitary(dims[1], 5000 + c));
        const DensityMatrix rotated(w * rho.matrix() * w.adjoint(), dims);
        const double a = trace_norm(bordered_matrix(rho, p));
        const double b = trace_norm(bordered_matrix(rotated, p));
        r.worst = std::max(r.worst, std::abs(a - b));
        ++r.cases;
    }
    return finish(r, r.worst <= r.tolerance);
}

Result vec_identities() {
    Result r{"vec and realignment identities", false, 0, 0.0, 1e-10, ""};
    std::mt19937_64 rng(303);
    std::uniform_real_distribution<double> k(-2.0, 2.0);
    double exact = 0.0, linear = 0.0, product = 0.0;
    for (int c = 0; c < 50; ++c) {
        const int m = 2 + c % 3, n = 2 + (c / 3) % 3, p = 1 + c % 4;
        // R(A (x) B) = vec(A) vec(B)^T, exactly.
        const ComplexMatrix a = random_matrix(m, m, rng), b = random_matrix(n, n, rng);
        const ComplexMatrix outer = vectorize(a) * vectorize(b).transpose();
        exact = std::max(exact, max_abs(realign(kron(a, b), m, n) - outer));
        // Linearity of vec and R.
        const double k1 = k(rng), k2 = k(rng);
        const ComplexMatrix z1 = random_matrix(m * n, m * n, rng), z2 = random_matrix(m * n, m * n, rng);
        linear = std::max(linear, max_abs(realign(k1 * z1 + k2 * z2, m, n) -
                                          (k1 * realign(z1, m, n) + k2 * realign(z2, m, n))));
        linear = std::max(linear, (vectorize(k1 * z1 + k2 * z2) - (k1 * vectorize(z1) + k2 * vectorize(z2)))
                                      .cwiseAbs()
                                      .maxCoeff());
        // vec(ABC) = (C^T (x) A) vec(B).
        const ComplexMatrix x = random_matrix(m, n, rng), y = random_matrix(n, p, rng), w = random_matrix(p, m, rng);
        const ComplexVector lhs = vectorize(x * y * w);
        const ComplexVector rhs = kron(w.transpose(), x) * vectorize(y);
        product = std::max(product, (lhs - rhs).cwiseAbs().maxCoeff());
        ++r.cases;
    }
    r.worst = std::max(linear, product);
    std::ostringstream os;
    os << "R(A(x)B) deviation " << exact << " (must be 0), linearity " << linear << " (1e-12), vec(ABC) "
       << product;
    r.detail = os.str();
    return finish(r, exact == 0.0 && linear <= 1e-12 && product <= 1e-10);
}

Result pure_state_inequalities() {
    Result r{"pure-state norm inequalities", false, 0, 1e300, -1e-8, ""};
    std::mt19937_64 rng(404);
    const std::vector<Dims> dims_list{{2, 2}, {2, 3}, {3, 3}, {3, 4}, {4, 4}};
    for (int c = 0; c < 200; ++c) {
        const Dims& dims = dims_list[c % dims_list.size()];
        const auto psi = random_pure_vector(dims, 6000 + c);
        const auto p = random_params(rng);
        const DensityMatrix rho(projector(psi), dims);
        const double norm = trace_norm(bordered_matrix(rho, p));
        const auto mu = schmidt_coefficients(psi, dims[0], dims[1]);
        double cross = 0.0;
        for (std::size_t i = 0; i < mu.size(); ++i)
            for (std::size_t j = i + 1; j < mu.size(); ++j) cross += std::sqrt(mu[i] * mu[j]);
        const int d = std::min(dims[0], dims[1]);
        const double slack1 = bordered_bound(p) + 2.0 * cross - norm;
        const double slack2 = bordered_bound(p) + (d - 1) - norm;
        r.worst = std::min({r.worst, slack1, slack2});
        ++r.cases;
    }
    r.detail = "smallest slack over both inequalities";
    return finish(r, r.worst >= r.tolerance);
}

Result bipartite_soundness() {
    Result r{"bipartite bordered test never fires on separable states", false, 0, -1e300, kDecisionTolerance, ""};
    std::mt19937_64 rng(505);
    std::vector<BipartiteParams> draws;
    for (int k = 0; k < 20; ++k) draws.push_back(random_params(rng));
    draws.push_back({11.66, 11.75, 5});
    draws.push_back({0.0, 0.0, 1});
    int fired = 0;
    for (int c = 0; c < 200; ++c) {
        const Dims& dims = kBipartiteDims[c % 3];
        const auto rho = random_separable(dims, 1 + c % 6, 7000 + c);
        for (const auto& p : draws) {
            const auto v = bordered_realignment_test(rho, p);
            r.worst = std::max(r.worst, v.margin);
            fired += v.detected();
        }
        ++r.cases;
    }
    r.detail = std::to_string(draws.size()) + " parameter draws per state, " + std::to_string(fired) +
               " detections; worst is the largest margin";
    return finish(r, fired == 0);
}

Result gme_soundness() {
    Result r{"genuine-entanglement test never fires on biseparable states", false, 0, -1e300, kDecisionTolerance, ""};
    std::mt19937_64 rng(606);
    int fired = 0;
    for (int c = 0; c < 100; ++c) {
        const Dims dims = c % 4 == 3 ? Dims{3, 3, 3} : Dims{2, 2, 2};
        const auto rho = random_biseparable(dims, 1 + c % 5, 8000 + c);
        auto p = random_params(rng);
        if (c % 10 == 0) p = {1.0, 1.0, 2};
        const auto v = gme_test(rho, p);
        r.worst = std::max(r.worst, v.margin);
        fired += v.detected();
        ++r.cases;
    }
    r.detail = std::to_string(fired) + " detections; worst is the largest margin";
    return finish(r, fired == 0);
}

Result full_separability_soundness() {
    Result r{"multipartite test never fires on fully separable states", false, 0, -1e300, kDecisionTolerance, ""};
    std::mt19937_64 rng(707);
    std::uniform_real_distribution<double> a(0.0, 2.0);
    std::uniform_int_distribution<int> l(1, 4);
    int fired = 0;
    for (int c = 0; c < 100; ++c) {
        const Dims dims = c % 5 == 4 ? Dims{2, 3, 2} : Dims{2, 2, 2};
        const auto rho = random_separable(dims, 1 + c % 6, 9000 + c);
        for (int q = 1; q <= 2; ++q) {
            MultipartiteParams p;
            p.q = q;
            p.l = l(rng);
            for (int k = q; k <= 3; ++k) p.alphas.push_back(a(rng));
            const auto v = full_separability_test(rho, p);
            r.worst = std::max(r.worst, v.margin);
            fired += v.detected();
        }
        ++r.cases;
    }
    r.detail = std::to_string(fired) + " detections; worst is the largest margin";
    return finish(r, fired == 0);
}

namespace {

/// rho = sum_i s_i X_i (x) W_i from the SVD of R(rho) over the cut dA | rest.
std::vector<std::pair<ComplexMatrix, ComplexMatrix>> operator_schmidt(const ComplexMatrix& rho, int dA, int dB) {
    Eigen::JacobiSVD<ComplexMatrix> svd(realign(rho, dA, dB), Eigen::ComputeFullU | Eigen::ComputeFullV);
    std::vector<std::pair<ComplexMatrix, ComplexMatrix>> out;
    const auto& s = svd.singularValues();
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s(i) < 1e-14 * std::max(1.0, s(0))) continue;
        ComplexMatrix x = unvectorize(s(i) * svd.matrixU().col(i), dA, dA);
        ComplexMatrix w = unvectorize(svd.matrixV().col(i).conjugate(), dB, dB);
        out.emplace_back(std::move(x), std::move(w));
    }
    return out;
}

} // namespace

Result decomposition_independence() {
    Result r{"multipartite bordered matrix is decomposition independent", false, 0, 0.0, 1e-9, ""};
    std::mt19937_64 rng(808);
    std::uniform_real_distribution<double> a(0.0, 2.0);
    const std::vector<Dims> dims_list{{2, 2, 2}, {2, 3, 2}, {2, 2}, {3, 2}};
    for (int c = 0; c < 24; ++c) {
        const Dims& dims = dims_list[c % dims_list.size()];
        const int n = static_cast<int>(dims.size());
        // A random sum of products, kept as given terms.
        std::vector<ProductTerm> given;
        ComplexMatrix rho = ComplexMatrix::Zero(total_dimension(dims), total_dimension(dims));
        for (int t = 0; t < 3; ++t) {
            ProductTerm term;
            term.coefficient = Complex{a(rng), a(rng) - 1.0};
            ComplexMatrix prod = ComplexMatrix::Identity(1, 1);
            for (int d : dims) {
                term.factors.push_back(random_matrix(d, d, rng));
                prod = kron(prod, term.factors.back());
            }
            rho += term.coefficient * prod;
            given.push_back(std::move(term));
        }
        // Operator-Schmidt terms, peeled one factor at a time.
        std::vector<ProductTerm> schmidt;
        if (n == 2) {
            for (auto& [x, w] : operator_schmidt(rho, dims[0], dims[1])) schmidt.push_back({Complex{1.0, 0.0}, {x, w}});
        } else {
            for (auto& [x, w] : operator_schmidt(rho, dims[0], dims[1] * dims[2]))
                for (auto& [y, z] : operator_schmidt(w, dims[1], dims[2]))
                    schmidt.push_back({Complex{1.0, 0.0}, {x, y, z}});
        }
        for (int q = 1; q < n; ++q) {
            MultipartiteParams p;
            p.q = q;
            p.l = 1 + c % 3;
            for (int k = q; k <= n; ++k) p.alphas.push_back(a(rng));
            const ComplexMatrix units = multipartite_bordered_matrix(rho, dims, p);
            const double scale = std::max(1.0, max_abs(units));
            r.worst = std::max(r.worst, max_abs(units - multipartite_bordered_matrix(given, dims, p)) / scale);
            r.worst = std::max(r.worst, max_abs(units - multipartite_bordered_matrix(schmidt, dims, p)) / scale);
            ++r.cases;
        }
    }
    r.detail = "matrix units vs given product terms vs operator-Schmidt terms, relative entrywise";
    return finish(r, r.worst <= r.tolerance);
}

Result zero_border_reduction() {
    Result r{"alpha = beta = 0 reduces to the realignment criterion", false, 0, 0.0, 1e-9, ""};
    int mismatched = 0, detected = 0;
    for (int c = 0; c < 50; ++c) {
        const Dims& dims = kBipartiteDims[c % 3];
        DensityMatrix rho = c % 2 ? random_pure(dims, 11000 + c) : random_mixed(dims, 1 + c % 3, 11000 + c);
        const BipartiteParams p{0.0, 0.0, 1 + c % 4};
        const auto a = bordered_realignment_test(rho, p);
        const auto b = realignment_test(rho);
        r.worst = std::max({r.worst, std::abs(a.norm_value - b.norm_value), std::abs(a.bound - b.bound)});
        mismatched += a.verdict != b.verdict;
        detected += b.detected();
        ++r.cases;
    }
    r.detail = std::to_string(mismatched) + " verdict mismatches, " + std::to_string(detected) + " detected states";
    return finish(r, mismatched == 0 && r.worst <= r.tolerance);
}

Result product_norm_identity() {
    Result r{"pure product states attain the bordered bound", false, 0, 0.0, 1e-9, ""};
    std::mt19937_64 rng(909);
    for (int c = 0; c < 50; ++c) {
        const Dims& dims = kBipartiteDims[c % 3];
        const ComplexVector psi = kron(random_pure_vector({dims[0]}, 12000 + c), random_pure_vector({dims[1]}, 13000 + c));
        const DensityMatrix rho(projector(psi), dims);
        const auto p = random_params(rng);
        r.worst = std::max(r.worst, std::abs(trace_norm(bordered_matrix(rho, p)) - bordered_bound(p)));
        ++r.cases;
    }
    return finish(r, r.worst <= r.tolerance);
}

Result schmidt_block_consistency() {
    Result r{"Schmidt-diagonal pure states split into border block plus cross terms", false, 0, 0.0, 1e-9, ""};
    std::mt19937_64 rng(1010);
    std::uniform_real_distribution<double> u(0.05, 1.0);
    for (int c = 0; c < 40; ++c) {
        const int d = 2 + c % 3;
        std::vector<double> mu(d);
        double total = 0.0;
        for (auto& m : mu) total += (m = u(rng));
        for (auto& m : mu) m /= total;
        ComplexVector psi = ComplexVector::Zero(d * d);
        for (int i = 0; i < d; ++i) psi(i * d + i) = std::sqrt(mu[i]);
        const auto p = random_params(rng);
        const DensityMatrix rho(projector(psi), {d, d});
        // Border block: the l border rows/columns plus the diagonal (i, i) indices.
        const int l = p.l;
        ComplexMatrix m1 = ComplexMatrix::Zero(l + d, l + d);
        m1.topLeftCorner(l, l).setConstant(p.alpha * p.beta);
        for (int i = 0; i < d; ++i) {
            m1.block(0, l + i, l, 1).setConstant(p.alpha * mu[i]);
            m1.block(l + i, 0, 1, l).setConstant(p.beta * mu[i]);
            m1(l + i, l + i) = mu[i];
        }
        double cross = 0.0;
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j) cross += std::sqrt(mu[i] * mu[j]);
        const double expected = oracle::trace_norm(m1) + 2.0 * cross;
        r.worst = std::max(r.worst, std::abs(trace_norm(bordered_matrix(rho, p)) - expected));
        ++r.cases;
    }
    return finish(r, r.worst <= r.tolerance);
}

std::vector<Result> all() {
    return {affinity(),
            unitary_invariance(),
            vec_identities(),
            pure_state_inequalities(),
            bipartite_soundness(),
            gme_soundness(),
            full_separability_soundness(),
            decomposition_independence(),
            zero_border_reduction(),
            product_norm_identity(),
            schmidt_block_consistency()};
}

} // namespace props
