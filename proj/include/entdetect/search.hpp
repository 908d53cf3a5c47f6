#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "entdetect/criteria.hpp"
#include "entdetect/families.hpp"

namespace entdetect {

enum class CriterionKind {
    Realignment,
    Ppt,
    Bordered,            ///< bipartite bordered realignment test
    Gme,                 ///< genuine tripartite entanglement test
    FullSeparability,    ///< multipartite bordered test
    ConcurrenceBound,
    CrenBound,
    GmeConcurrenceBound,
    ConcurrenceBaseline, ///< realignment / PPT concurrence bound
};

std::string to_string(CriterionKind k);

/// A criterion plus the parameters it needs. For bipartite kinds applied to
/// a multipartite state, `party` selects the cut party | rest.
struct CriterionSpec {
    CriterionKind kind = CriterionKind::Realignment;
    BipartiteParams bipartite;
    MultipartiteParams multipartite;
    std::optional<int> party;
    double tolerance = kDecisionTolerance;

    std::string describe() const;
};

/// Signed detection margin: norm - bound for tests, the bound value for
/// measure bounds. Positive beyond `spec.tolerance` means detection.
double evaluate_margin(const DensityMatrix& rho, const CriterionSpec& spec);
double margin(const StateFamily& family, double x, const CriterionSpec& spec);

struct ThresholdResult {
    std::string family;
    std::string criterion;
    double threshold = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    double margin_lo = 0.0;
    double margin_hi = 0.0;
    double tolerance = 0.0;
    int evaluations = 0;
    bool detected_above = true; ///< detection holds on the hi side of the threshold
    bool monotone = true;       ///< pre-scan margins were monotone
};

class NoThresholdFound : public Error {
public:
    NoThresholdFound(std::string what, std::vector<std::pair<double, double>> profile)
        : Error(std::move(what)), profile_(std::move(profile)) {}

    /// (parameter, margin) samples that were scanned.
    const std::vector<std::pair<double, double>>& profile() const { return profile_; }

private:
    std::vector<std::pair<double, double>> profile_;
};

inline constexpr int kPrescanPoints = 64;
inline constexpr double kThresholdTolerance = 1e-6;

/// Locates the detection boundary by bisection. Without an explicit bracket
/// the family interval is pre-scanned at kPrescanPoints uniform points; if
/// the scan shows several sign changes, the one bounding the detected region
/// at an interval end is refined (monotone = false in the result).
ThresholdResult find_threshold(const StateFamily& family, const CriterionSpec& spec,
                               std::optional<std::pair<double, double>> bracket = std::nullopt,
                               double tol = kThresholdTolerance);

enum class SweepObjective { MinimizeThreshold, MaximizeMargin };

struct SweepGrid {
    std::vector<double> alphas;
    std::vector<double> betas;
    std::vector<int> ls;
    SweepObjective objective = SweepObjective::MinimizeThreshold;
    double at = 1.0; ///< parameter value used by MaximizeMargin

    void check() const;
};

struct SweepEntry {
    BipartiteParams params;
    std::optional<double> value; ///< threshold or margin; empty if no threshold
};

/// Evaluates every (alpha, beta, l) cell. For FullSeparability, alpha is
/// used for every weight and beta is ignored. Ranking: best value first,
/// then smaller l, smaller |alpha|, smaller |beta|; cells without a
/// threshold rank last.
std::vector<SweepEntry> sweep(const StateFamily& family, const SweepGrid& grid, const CriterionSpec& base);

struct CurvePoint {
    double x = 0.0;
    double value = 0.0;
};

std::vector<CurvePoint> tabulate_curve(const StateFamily& family, const CriterionSpec& spec,
                                       const std::vector<double>& xs);

/// n points evenly spaced on [lo, hi], both ends included.
std::vector<double> linspace(double lo, double hi, int n);

} // namespace entdetect
