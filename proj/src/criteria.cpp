#include "entdetect/criteria.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "entdetect/linalg.hpp"

namespace entdetect {

namespace {

void require_bipartite(const DensityMatrix& rho, const char* op) {
    if (rho.parties() != 2) {
        std::ostringstream os;
        os << op << ": expected a bipartite state, got " << rho.parties() << " subsystems";
        throw InvalidArgument(os.str());
    }
}

void require_tripartite(const DensityMatrix& rho, const char* op) {
    if (rho.parties() != 3) {
        std::ostringstream os;
        os << op << ": expected a tripartite state, got " << rho.parties() << " subsystems";
        throw InvalidArgument(os.str());
    }
}

// Sparse factor used to expand matrix-unit terms without forming dense
// Kronecker products.
struct SparseFactor {
    int rows = 0;
    int cols = 0;
    struct Entry {
        int r, c;
        Complex v;
    };
    std::vector<Entry> entries;
};

SparseFactor unit_factor(int d, int a, int b) {
    return {d, d, {{a, b, Complex{1.0, 0.0}}}};
}

// (alpha tr(E_ab) 1_l ; vec(E_ab)) as a column or its transpose as a row.
SparseFactor bordered_unit_factor(int d, int a, int b, double alpha, int l, bool column) {
    SparseFactor f;
    const int len = l + d * d;
    f.rows = column ? len : 1;
    f.cols = column ? 1 : len;
    auto put = [&](int pos, Complex v) {
        if (column)
            f.entries.push_back({pos, 0, v});
        else
            f.entries.push_back({0, pos, v});
    };
    if (a == b && alpha != 0.0)
        for (int i = 0; i < l; ++i) put(i, alpha);
    put(l + b * d + a, 1.0);
    return f;
}

ComplexMatrix bordered_dense_factor(const ComplexMatrix& y, double alpha, int l, bool column) {
    const auto d2 = y.size();
    ComplexVector v(l + d2);
    v.head(l).setConstant(alpha * y.trace());
    v.tail(d2) = vectorize(y);
    if (column) return v;
    return v.transpose();
}

struct MrShape {
    int rows;
    int cols;
};

MrShape mr_shape(const Dims& dims, const MultipartiteParams& p) {
    const int n = static_cast<int>(dims.size());
    long long lead = 1;
    for (int k = 0; k < p.q - 1; ++k) lead *= dims[k];
    long long rows = lead * (p.l + dims[p.q - 1] * dims[p.q - 1]);
    long long cols = lead;
    for (int k = p.q; k < n; ++k) cols *= (p.l + dims[k] * dims[k]);
    if (rows * cols > (1LL << 28)) throw DimensionError("multipartite_bordered_matrix: result too large");
    return {static_cast<int>(rows), static_cast<int>(cols)};
}

} // namespace

void BipartiteParams::check() const {
    if (l < 1) throw InvalidArgument("border repeat count l must be >= 1");
    if (!std::isfinite(alpha) || !std::isfinite(beta))
        throw InvalidArgument("alpha and beta must be finite");
}

void MultipartiteParams::check(int parties) const {
    if (parties < 2) throw InvalidArgument("multipartite criterion needs at least two subsystems");
    if (q < 1 || q > parties - 1) {
        std::ostringstream os;
        os << "q = " << q << " outside [1, " << parties - 1 << "]";
        throw InvalidArgument(os.str());
    }
    if (l < 1) throw InvalidArgument("border repeat count l must be >= 1");
    if (static_cast<int>(alphas.size()) != parties - q + 1) {
        std::ostringstream os;
        os << "expected " << parties - q + 1 << " alpha weights for q = " << q << ", got "
           << alphas.size();
        throw InvalidArgument(os.str());
    }
    for (double a : alphas)
        if (!std::isfinite(a) || a < 0.0) throw InvalidArgument("alpha weights must be finite and non-negative");
}

std::string to_string(Verdict v) {
    return v == Verdict::EntanglementDetected ? "EntanglementDetected" : "Inconclusive";
}

CriterionVerdict make_verdict(double norm_value, double bound, double tol) {
    CriterionVerdict v;
    v.norm_value = norm_value;
    v.bound = bound;
    v.margin = norm_value - bound;
    v.verdict = v.margin > tol ? Verdict::EntanglementDetected : Verdict::Inconclusive;
    return v;
}

ComplexMatrix omega(const ComplexMatrix& x, int l) {
    if (l < 1) throw InvalidArgument("omega: l must be >= 1");
    return vectorize(x).replicate(1, l);
}

ComplexMatrix bordered_matrix(const ComplexMatrix& rho, int dA, int dB, const BipartiteParams& p) {
    p.check();
    const std::array<int, 2> dims{dA, dB};
    const ComplexMatrix rA = partial_trace(rho, dims, std::array{1});
    const ComplexMatrix rB = partial_trace(rho, dims, std::array{0});
    const int l = p.l;
    ComplexMatrix m(l + dA * dA, l + dB * dB);
    m.topLeftCorner(l, l).setConstant(p.alpha * p.beta);
    m.topRightCorner(l, dB * dB) = p.alpha * omega(rB, l).transpose();
    m.bottomLeftCorner(dA * dA, l) = p.beta * omega(rA, l);
    m.bottomRightCorner(dA * dA, dB * dB) = realign(rho, dA, dB);
    return m;
}

ComplexMatrix bordered_matrix(const DensityMatrix& rho, const BipartiteParams& p) {
    require_bipartite(rho, "bordered_matrix");
    return bordered_matrix(rho.matrix(), rho.dims()[0], rho.dims()[1], p);
}

double bordered_bound(const BipartiteParams& p) {
    return std::sqrt((p.l * p.alpha * p.alpha + 1.0) * (p.l * p.beta * p.beta + 1.0));
}

CriterionVerdict bordered_realignment_test(const DensityMatrix& rho, const BipartiteParams& p,
                                           double tol) {
    return make_verdict(trace_norm(bordered_matrix(rho, p)), bordered_bound(p), tol);
}

CriterionVerdict realignment_test(const DensityMatrix& rho, double tol) {
    require_bipartite(rho, "realignment_test");
    return make_verdict(trace_norm(realign(rho.matrix(), rho.dims()[0], rho.dims()[1])), 1.0, tol);
}

CriterionVerdict ppt_test(const DensityMatrix& rho, std::optional<int> party, double tol) {
    if (rho.parties() < 2) throw InvalidArgument("ppt_test: need at least two subsystems");
    const int s = party.value_or(rho.parties() - 1);
    const ComplexMatrix pt = partial_transpose(rho, s);
    const double lambda_min = hermitian_eigenvalues(0.5 * (pt + pt.adjoint())).minCoeff();
    return make_verdict(-lambda_min, 0.0, tol);
}

double averaged_bordered_norm(const DensityMatrix& rho, const BipartiteParams& p) {
    require_tripartite(rho, "averaged_bordered_norm");
    double sum = 0.0;
    for (int party = 0; party < 3; ++party)
        sum += trace_norm(bordered_matrix(bipartition(rho, party), p));
    return sum / 3.0;
}

double gme_bound(const BipartiteParams& p, int d) {
    return bordered_bound(p) + 2.0 * (d - 1) / 3.0;
}

CriterionVerdict gme_test(const DensityMatrix& rho, const BipartiteParams& p, double tol) {
    require_tripartite(rho, "gme_test");
    const auto& d = rho.dims();
    if (d[0] != d[1] || d[1] != d[2])
        throw InvalidArgument("gme_test requires equal local dimensions");
    return make_verdict(averaged_bordered_norm(rho, p), gme_bound(p, d[0]), tol);
}

ComplexMatrix multipartite_bordered_matrix(const std::vector<ProductTerm>& terms, const Dims& dims,
                                           const MultipartiteParams& p) {
    const int n = static_cast<int>(dims.size());
    p.check(n);
    const auto shape = mr_shape(dims, p);
    ComplexMatrix out = ComplexMatrix::Zero(shape.rows, shape.cols);
    for (const auto& term : terms) {
        if (static_cast<int>(term.factors.size()) != n)
            throw DimensionError("multipartite_bordered_matrix: term has wrong number of factors");
        for (int k = 0; k < n; ++k)
            if (term.factors[k].rows() != dims[k] || term.factors[k].cols() != dims[k])
                throw DimensionError("multipartite_bordered_matrix: factor shape does not match dims");
        const int qi = p.q - 1;
        ComplexMatrix acc = ComplexMatrix::Ones(1, 1);
        for (int k = 0; k < qi; ++k) acc = kron(acc, term.factors[k]);
        acc = kron(acc, bordered_dense_factor(term.factors[qi], p.alphas[0], p.l, true));
        for (int k = n - 1; k > qi; --k)
            acc = kron(acc, bordered_dense_factor(term.factors[k], p.alphas[k - qi], p.l, false));
        out += term.coefficient * acc;
    }
    return out;
}

ComplexMatrix multipartite_bordered_matrix(const ComplexMatrix& rho, const Dims& dims,
                                           const MultipartiteParams& p) {
    const int n = static_cast<int>(dims.size());
    p.check(n);
    const int total = total_dimension(dims);
    if (rho.rows() != total || rho.cols() != total)
        throw DimensionError("multipartite_bordered_matrix: matrix does not match dims");
    const auto shape = mr_shape(dims, p);
    const int qi = p.q - 1;
    ComplexMatrix out = ComplexMatrix::Zero(shape.rows, shape.cols);

    // Digits of every basis index, leftmost factor most significant.
    std::vector<std::vector<int>> digits(total, std::vector<int>(n));
    for (int idx = 0; idx < total; ++idx)
        for (int k = n - 1, t = idx; k >= 0; --k) {
            digits[idx][k] = t % dims[k];
            t /= dims[k];
        }

    for (int r = 0; r < total; ++r) {
        const auto& a = digits[r];
        for (int c = 0; c < total; ++c) {
            const Complex coef = rho(r, c);
            if (coef == Complex{0.0, 0.0}) continue;
            const auto& b = digits[c];
            std::vector<SparseFactor> factors;
            factors.reserve(n);
            for (int k = 0; k < qi; ++k) factors.push_back(unit_factor(dims[k], a[k], b[k]));
            factors.push_back(bordered_unit_factor(dims[qi], a[qi], b[qi], p.alphas[0], p.l, true));
            for (int k = n - 1; k > qi; --k)
                factors.push_back(bordered_unit_factor(dims[k], a[k], b[k], p.alphas[k - qi], p.l, false));

            // Expand the Kronecker product of the sparse factors.
            std::vector<SparseFactor::Entry> acc{{0, 0, coef}};
            for (const auto& f : factors) {
                std::vector<SparseFactor::Entry> next;
                next.reserve(acc.size() * f.entries.size());
                for (const auto& x : acc)
                    for (const auto& y : f.entries)
                        next.push_back({x.r * f.rows + y.r, x.c * f.cols + y.c, x.v * y.v});
                acc = std::move(next);
            }
            for (const auto& e : acc) out(e.r, e.c) += e.v;
        }
    }
    return out;
}

ComplexMatrix multipartite_bordered_matrix(const DensityMatrix& rho, const MultipartiteParams& p) {
    return multipartite_bordered_matrix(rho.matrix(), rho.dims(), p);
}

double full_separability_bound(const MultipartiteParams& p) {
    double b = 1.0;
    for (double a : p.alphas) b *= std::sqrt(p.l * a * a + 1.0);
    return b;
}

CriterionVerdict full_separability_test(const DensityMatrix& rho, const MultipartiteParams& p,
                                        double tol) {
    return make_verdict(trace_norm(multipartite_bordered_matrix(rho, p)), full_separability_bound(p), tol);
}

} // namespace entdetect
