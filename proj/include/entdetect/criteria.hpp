#pragma once

#include <optional>
#include <string>
#include <vector>

#include "entdetect/density_matrix.hpp"

namespace entdetect {

/// Margins within this distance of the bound are reported as inconclusive.
inline constexpr double kDecisionTolerance = 1e-9;

/// Border weights for the bipartite bordered realignment matrix. alpha and
/// beta may be any finite reals; l >= 1 is the border repeat count.
struct BipartiteParams {
    double alpha = 0.0;
    double beta = 0.0;
    int l = 1;

    void check() const;
};

/// Parameters for the n-partite bordered matrix: the bordered block starts at
/// subsystem q (1-based, 1 <= q <= n-1) and carries one non-negative weight
/// per subsystem q..n.
struct MultipartiteParams {
    int q = 1;
    std::vector<double> alphas;
    int l = 1;

    void check(int parties) const;
};

enum class Verdict { EntanglementDetected, Inconclusive };

std::string to_string(Verdict v);

struct CriterionVerdict {
    double norm_value = 0.0;
    double bound = 0.0;
    double margin = 0.0; ///< norm_value - bound
    Verdict verdict = Verdict::Inconclusive;

    bool detected() const { return verdict == Verdict::EntanglementDetected; }
};

CriterionVerdict make_verdict(double norm_value, double bound, double tol = kDecisionTolerance);

/// l identical columns, each vec(x).
ComplexMatrix omega(const ComplexMatrix& x, int l);

/// Bordered realignment matrix of a dA (x) dB operator:
///
///     [ alpha*beta*E_{l x l}        alpha * omega_l(tr_A rho)^T ]
///     [ beta * omega_l(tr_B rho)    R(rho)                      ]
///
/// of shape (l + dA^2) x (l + dB^2). Linear in rho for unit-trace inputs.
ComplexMatrix bordered_matrix(const ComplexMatrix& rho, int dA, int dB, const BipartiteParams& p);
ComplexMatrix bordered_matrix(const DensityMatrix& rho, const BipartiteParams& p);

/// sqrt((l alpha^2 + 1)(l beta^2 + 1)), the value attained by every pure
/// product state.
double bordered_bound(const BipartiteParams& p);

/// Separable states satisfy ||M||_tr <= bordered_bound(p).
CriterionVerdict bordered_realignment_test(const DensityMatrix& rho, const BipartiteParams& p,
                                           double tol = kDecisionTolerance);

/// CCNR / realignment criterion: separable states satisfy ||R(rho)||_tr <= 1.
CriterionVerdict realignment_test(const DensityMatrix& rho, double tol = kDecisionTolerance);

/// Partial transpose over `party` (default: the last subsystem). The verdict
/// carries norm_value = -lambda_min, bound = 0.
CriterionVerdict ppt_test(const DensityMatrix& rho, std::optional<int> party = std::nullopt,
                          double tol = kDecisionTolerance);

/// Average of ||M||_tr over the three cuts 1|23, 2|13, 3|12, with the same
/// parameters on every cut.
double averaged_bordered_norm(const DensityMatrix& rho, const BipartiteParams& p);

/// bordered_bound(p) + 2(d - 1)/3.
double gme_bound(const BipartiteParams& p, int d);

/// Biseparable d (x) d (x) d states satisfy averaged_bordered_norm <= gme_bound.
/// A detection certifies genuine tripartite entanglement.
CriterionVerdict gme_test(const DensityMatrix& rho, const BipartiteParams& p,
                          double tol = kDecisionTolerance);

/// One term c * Y_1 (x) ... (x) Y_n of an operator decomposition.
struct ProductTerm {
    Complex coefficient{1.0, 0.0};
    std::vector<ComplexMatrix> factors;
};

/// Multipartite bordered matrix for an explicit decomposition. Each bordered
/// factor k >= q contributes (alpha_k tr(Y_k) E; vec(Y_k)); the column factor
/// is subsystem q and the row factors run over subsystems n, n-1, ..., q+1.
/// Subsystems before q enter as plain Kronecker factors.
ComplexMatrix multipartite_bordered_matrix(const std::vector<ProductTerm>& terms, const Dims& dims,
                                           const MultipartiteParams& p);

/// Same matrix computed from the elementary-matrix expansion of rho.
ComplexMatrix multipartite_bordered_matrix(const ComplexMatrix& rho, const Dims& dims,
                                           const MultipartiteParams& p);
ComplexMatrix multipartite_bordered_matrix(const DensityMatrix& rho, const MultipartiteParams& p);

/// prod_{k=q..n} sqrt(l alpha_k^2 + 1).
double full_separability_bound(const MultipartiteParams& p);

/// Fully separable states satisfy ||MR||_tr <= full_separability_bound(p).
CriterionVerdict full_separability_test(const DensityMatrix& rho, const MultipartiteParams& p,
                                        double tol = kDecisionTolerance);

} // namespace entdetect
