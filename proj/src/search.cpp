#include "entdetect/search.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "entdetect/measures.hpp"

namespace entdetect {

namespace {

DensityMatrix as_bipartite(const DensityMatrix& rho, const CriterionSpec& spec) {
    if (rho.parties() == 2) {
        if (spec.party && *spec.party != 0 && *spec.party != 1)
            throw InvalidArgument("cut party out of range for a bipartite state");
        return spec.party.value_or(0) == 1 ? bipartition(rho, 1) : rho;
    }
    if (!spec.party)
        throw InvalidArgument(to_string(spec.kind) + " on a " + std::to_string(rho.parties()) +
                              "-party state needs a cut");
    return bipartition(rho, *spec.party);
}

bool is_detected(double m, double tol) { return m > tol; }

} // namespace

std::string to_string(CriterionKind k) {
    switch (k) {
    case CriterionKind::Realignment: return "realignment";
    case CriterionKind::Ppt: return "ppt";
    case CriterionKind::Bordered: return "bordered";
    case CriterionKind::Gme: return "gme";
    case CriterionKind::FullSeparability: return "fullsep";
    case CriterionKind::ConcurrenceBound: return "concurrence";
    case CriterionKind::CrenBound: return "cren";
    case CriterionKind::GmeConcurrenceBound: return "gme-concurrence";
    case CriterionKind::ConcurrenceBaseline: return "baseline";
    }
    return "?";
}

std::string CriterionSpec::describe() const {
    std::ostringstream os;
    os << to_string(kind);
    switch (kind) {
    case CriterionKind::Realignment:
    case CriterionKind::Ppt:
    case CriterionKind::ConcurrenceBaseline:
        break;
    case CriterionKind::FullSeparability:
        os << "(q=" << multipartite.q << ", l=" << multipartite.l << ", alphas=";
        for (std::size_t i = 0; i < multipartite.alphas.size(); ++i)
            os << (i ? "," : "") << multipartite.alphas[i];
        os << ")";
        break;
    default:
        os << "(alpha=" << bipartite.alpha << ", beta=" << bipartite.beta << ", l=" << bipartite.l << ")";
    }
    if (party) os << " cut=" << *party + 1;
    return os.str();
}

double evaluate_margin(const DensityMatrix& rho, const CriterionSpec& spec) {
    const double tol = spec.tolerance;
    switch (spec.kind) {
    case CriterionKind::Realignment: return realignment_test(as_bipartite(rho, spec), tol).margin;
    case CriterionKind::Ppt: return ppt_test(rho, spec.party, tol).margin;
    case CriterionKind::Bordered:
        return bordered_realignment_test(as_bipartite(rho, spec), spec.bipartite, tol).margin;
    case CriterionKind::Gme: return gme_test(rho, spec.bipartite, tol).margin;
    case CriterionKind::FullSeparability: return full_separability_test(rho, spec.multipartite, tol).margin;
    case CriterionKind::ConcurrenceBound:
        return concurrence_lower_bound(as_bipartite(rho, spec), spec.bipartite).value;
    case CriterionKind::CrenBound: return cren_lower_bound(as_bipartite(rho, spec), spec.bipartite).value;
    case CriterionKind::GmeConcurrenceBound: return gme_concurrence_lower_bound(rho, spec.bipartite).value;
    case CriterionKind::ConcurrenceBaseline:
        return realignment_concurrence_baseline(as_bipartite(rho, spec)).value;
    }
    throw InvalidArgument("unknown criterion kind");
}

double margin(const StateFamily& family, double x, const CriterionSpec& spec) {
    return evaluate_margin(family.at(x), spec);
}

ThresholdResult find_threshold(const StateFamily& family, const CriterionSpec& spec,
                               std::optional<std::pair<double, double>> bracket, double tol) {
    if (!(tol > 0.0)) throw InvalidArgument("find_threshold: tolerance must be positive");
    ThresholdResult res;
    res.family = family.id;
    res.criterion = spec.describe();
    res.tolerance = tol;

    auto eval = [&](double x) {
        ++res.evaluations;
        return margin(family, x, spec);
    };
    auto detected = [&](double m) { return is_detected(m, spec.tolerance); };

    double lo = 0.0, hi = 0.0, mlo = 0.0, mhi = 0.0;
    if (bracket) {
        std::tie(lo, hi) = *bracket;
        if (!(lo < hi)) throw InvalidArgument("find_threshold: bracket must satisfy lo < hi");
        mlo = eval(lo);
        mhi = eval(hi);
        if (detected(mlo) == detected(mhi)) {
            std::ostringstream os;
            os << "no sign change of the margin on [" << lo << ", " << hi << "]";
            throw NoThresholdFound(os.str(), {{lo, mlo}, {hi, mhi}});
        }
    } else {
        const auto xs = linspace(family.lo, family.hi, kPrescanPoints);
        std::vector<std::pair<double, double>> profile;
        profile.reserve(xs.size());
        for (double x : xs) profile.emplace_back(x, eval(x));

        bool increasing = true, decreasing = true;
        for (std::size_t i = 1; i < profile.size(); ++i) {
            const double step = profile[i].second - profile[i - 1].second;
            const double slack = 1e-12 * std::max(1.0, std::abs(profile[i].second));
            increasing = increasing && step >= -slack;
            decreasing = decreasing && step <= slack;
        }
        res.monotone = increasing || decreasing;

        std::vector<std::size_t> changes;
        for (std::size_t i = 0; i + 1 < profile.size(); ++i)
            if (detected(profile[i].second) != detected(profile[i + 1].second)) changes.push_back(i);
        if (changes.empty()) {
            std::ostringstream os;
            os << "margin of " << spec.describe() << " on " << family.id << " does not change sign on ["
               << family.lo << ", " << family.hi << "]";
            throw NoThresholdFound(os.str(), std::move(profile));
        }
        std::size_t pick = changes.front();
        if (changes.size() > 1) {
            if (detected(profile.back().second))
                pick = changes.back();
            else if (detected(profile.front().second))
                pick = changes.front();
            res.monotone = false;
        }
        std::tie(lo, mlo) = profile[pick];
        std::tie(hi, mhi) = profile[pick + 1];
    }

    const bool lo_detected = detected(mlo);
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double mm = eval(mid);
        if (detected(mm) == lo_detected) {
            lo = mid;
            mlo = mm;
        } else {
            hi = mid;
            mhi = mm;
        }
    }
    res.lo = lo;
    res.hi = hi;
    res.margin_lo = mlo;
    res.margin_hi = mhi;
    res.threshold = 0.5 * (lo + hi);
    res.detected_above = !lo_detected;
    return res;
}

void SweepGrid::check() const {
    if (alphas.empty() || betas.empty() || ls.empty()) throw InvalidArgument("sweep grid axes must be non-empty");
    for (double a : alphas)
        if (!std::isfinite(a)) throw InvalidArgument("sweep grid alpha values must be finite");
    for (double b : betas)
        if (!std::isfinite(b)) throw InvalidArgument("sweep grid beta values must be finite");
    for (int l : ls)
        if (l < 1) throw InvalidArgument("sweep grid l values must be >= 1");
}

std::vector<SweepEntry> sweep(const StateFamily& family, const SweepGrid& grid, const CriterionSpec& base) {
    grid.check();
    std::vector<SweepEntry> out;
    const bool multi = base.kind == CriterionKind::FullSeparability;
    const auto& betas = multi ? std::vector<double>{0.0} : grid.betas;
    for (double a : grid.alphas)
        for (double b : betas)
            for (int l : grid.ls) {
                CriterionSpec spec = base;
                spec.bipartite = {a, b, l};
                if (multi) {
                    spec.multipartite.l = l;
                    std::fill(spec.multipartite.alphas.begin(), spec.multipartite.alphas.end(), a);
                }
                SweepEntry e{{a, b, l}, std::nullopt};
                if (grid.objective == SweepObjective::MinimizeThreshold) {
                    try {
                        e.value = find_threshold(family, spec).threshold;
                    } catch (const NoThresholdFound&) {
                    }
                } else {
                    e.value = margin(family, grid.at, spec);
                }
                out.push_back(e);
            }

    const bool minimize = grid.objective == SweepObjective::MinimizeThreshold;
    std::stable_sort(out.begin(), out.end(), [minimize](const SweepEntry& x, const SweepEntry& y) {
        if (x.value.has_value() != y.value.has_value()) return x.value.has_value();
        if (x.value && *x.value != *y.value) return minimize ? *x.value < *y.value : *x.value > *y.value;
        if (x.params.l != y.params.l) return x.params.l < y.params.l;
        if (std::abs(x.params.alpha) != std::abs(y.params.alpha))
            return std::abs(x.params.alpha) < std::abs(y.params.alpha);
        return std::abs(x.params.beta) < std::abs(y.params.beta);
    });
    return out;
}

std::vector<CurvePoint> tabulate_curve(const StateFamily& family, const CriterionSpec& spec,
                                       const std::vector<double>& xs) {
    std::vector<CurvePoint> out;
    out.reserve(xs.size());
    for (double x : xs) out.push_back({x, margin(family, x, spec)});
    return out;
}

std::vector<double> linspace(double lo, double hi, int n) {
    if (n < 2) throw InvalidArgument("linspace: need at least two points");
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) xs[i] = lo + (hi - lo) * i / (n - 1);
    xs.back() = hi;
    return xs;
}

} // namespace entdetect
