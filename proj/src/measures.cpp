#include "entdetect/measures.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "entdetect/linalg.hpp"

namespace entdetect {

namespace {

int local_dimension(const DensityMatrix& rho, const char* op) {
    if (rho.parties() != 2)
        throw InvalidArgument(std::string(op) + ": expected a bipartite state");
    const int d = std::min(rho.dims()[0], rho.dims()[1]);
    if (d < 2) throw InvalidArgument(std::string(op) + ": local dimension must be at least 2");
    return d;
}

double maybe_clamp(double v, bool clamp) {
    return clamp ? std::max(v, 0.0) : v;
}

} // namespace

std::string to_string(Measure m) {
    switch (m) {
    case Measure::Concurrence: return "Concurrence";
    case Measure::Cren: return "CREN";
    case Measure::GmeConcurrence: return "GMEConcurrence";
    }
    return "?";
}

double measure_maximum(Measure m, int d) {
    if (m == Measure::Concurrence) return std::sqrt(2.0 * (d - 1) / d);
    return 1.0;
}

double concurrence_pure(const ComplexVector& psi, int dA, int dB) {
    const auto mu = schmidt_coefficients(psi, dA, dB);
    double s = 0.0;
    for (double m : mu) s += m * m;
    return std::sqrt(std::max(0.0, 2.0 * (1.0 - s)));
}

double cren_pure(const ComplexVector& psi, int dA, int dB) {
    const int d = std::min(dA, dB);
    if (d < 2) throw InvalidArgument("cren_pure: local dimension must be at least 2");
    const auto mu = schmidt_coefficients(psi, dA, dB);
    double s = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i)
        for (std::size_t j = i + 1; j < mu.size(); ++j) s += std::sqrt(mu[i] * mu[j]);
    return 2.0 * s / (d - 1);
}

double gme_concurrence_pure(const ComplexVector& psi, const Dims& dims) {
    if (dims.size() != 3) throw InvalidArgument("gme_concurrence_pure: expected three subsystems");
    if (psi.size() != total_dimension(dims))
        throw DimensionError("gme_concurrence_pure: vector length does not match dims");
    if (std::abs(psi.norm() - 1.0) > 1e-10)
        throw InvalidArgument("gme_concurrence_pure: state vector is not normalized");
    const ComplexMatrix rho = projector(psi);
    double best = 1.0;
    for (int i = 0; i < 3; ++i) {
        std::vector<int> traced;
        for (int k = 0; k < 3; ++k)
            if (k != i) traced.push_back(k);
        const ComplexMatrix marginal = partial_trace(rho, dims, traced);
        best = std::min(best, 1.0 - (marginal * marginal).trace().real());
    }
    return std::sqrt(std::max(0.0, best));
}

BoundResult concurrence_lower_bound(const DensityMatrix& rho, const BipartiteParams& p, bool clamp) {
    const int d = local_dimension(rho, "concurrence_lower_bound");
    const double excess = trace_norm(bordered_matrix(rho, p)) - bordered_bound(p);
    return {Measure::Concurrence, maybe_clamp(std::sqrt(2.0 / (d * (d - 1.0))) * excess, clamp), p, {}};
}

BoundResult cren_lower_bound(const DensityMatrix& rho, const BipartiteParams& p, bool clamp) {
    const int d = local_dimension(rho, "cren_lower_bound");
    const double excess = trace_norm(bordered_matrix(rho, p)) - bordered_bound(p);
    return {Measure::Cren, maybe_clamp(excess / (d - 1.0), clamp), p, {}};
}

BoundResult gme_concurrence_lower_bound(const DensityMatrix& rho, const BipartiteParams& p, bool clamp) {
    if (rho.parties() != 3) throw InvalidArgument("gme_concurrence_lower_bound: expected a tripartite state");
    const auto& dims = rho.dims();
    if (dims[0] != dims[1] || dims[1] != dims[2])
        throw InvalidArgument("gme_concurrence_lower_bound requires equal local dimensions");
    const int d = dims[0];
    const double excess = averaged_bordered_norm(rho, p) - gme_bound(p, d);
    return {Measure::GmeConcurrence, maybe_clamp(excess / std::sqrt(d * (d - 1.0)), clamp), p, {}};
}

BoundResult realignment_concurrence_baseline(const DensityMatrix& rho, bool clamp) {
    const int d = local_dimension(rho, "realignment_concurrence_baseline");
    const double r = trace_norm(realign(rho.matrix(), rho.dims()[0], rho.dims()[1]));
    const double t = trace_norm(partial_transpose(rho, 1));
    const double value = std::sqrt(2.0 / (d * (d - 1.0))) * (std::max(r, t) - 1.0);
    return {Measure::Concurrence, maybe_clamp(value, clamp), BipartiteParams{}, {}};
}

} // namespace entdetect
