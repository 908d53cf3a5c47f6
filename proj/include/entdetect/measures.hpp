#pragma once

#include <optional>
#include <string>

#include "entdetect/criteria.hpp"

namespace entdetect {

enum class Measure { Concurrence, Cren, GmeConcurrence };

std::string to_string(Measure m);

/// A lower bound on an entanglement measure. Values <= 0 carry no
/// information; they are reported signed unless clamping is requested.
struct BoundResult {
    Measure measure = Measure::Concurrence;
    double value = 0.0;
    BipartiteParams params;
    std::optional<int> cut; ///< party singled out, when the bound used a cut
};

/// Largest attainable value of the measure on local dimension d.
double measure_maximum(Measure m, int d);

/// sqrt(2 (1 - sum mu_i^2)) from the Schmidt coefficients.
double concurrence_pure(const ComplexVector& psi, int dA, int dB);

/// 2 sum_{i<j} sqrt(mu_i mu_j) / (d - 1), d = min(dA, dB).
double cren_pure(const ComplexVector& psi, int dA, int dB);

/// min_i sqrt(1 - tr rho_i^2) over the three single-site marginals.
double gme_concurrence_pure(const ComplexVector& psi, const Dims& dims);

/// sqrt(2 / (d(d-1))) * (||M||_tr - bordered_bound), d = min(dA, dB).
BoundResult concurrence_lower_bound(const DensityMatrix& rho, const BipartiteParams& p,
                                    bool clamp = false);

/// (||M||_tr - bordered_bound) / (d - 1).
BoundResult cren_lower_bound(const DensityMatrix& rho, const BipartiteParams& p, bool clamp = false);

/// (averaged_bordered_norm - gme_bound) / sqrt(d(d-1)) on d (x) d (x) d.
BoundResult gme_concurrence_lower_bound(const DensityMatrix& rho, const BipartiteParams& p,
                                        bool clamp = false);

/// Comparison bound sqrt(2/(d(d-1))) * (max(||R(rho)||_tr, ||rho^{T_B}||_tr) - 1).
BoundResult realignment_concurrence_baseline(const DensityMatrix& rho, bool clamp = false);

} // namespace entdetect
