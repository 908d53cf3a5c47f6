#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "entdetect/linalg.hpp"
#include "entdetect/measures.hpp"
#include "entdetect/reproduce.hpp"
#include "entdetect/search.hpp"
#include "entdetect/state_io.hpp"
#include "entdetect/states.hpp"
#include "entdetect/version.hpp"

namespace entdetect::cli {

namespace {

using json = nlohmann::ordered_json;

struct Options {
    // state source
    std::string input;
    std::string family;
    std::string random_kind;
    std::string dims;
    int rank = 0;
    int terms = 4;
    std::uint64_t seed = 1;
    std::optional<double> d, x, p, t, eps, value;
    // criterion
    std::string criterion = "bordered";
    std::string measure;
    double alpha = 0.0;
    double beta = 0.0;
    int l = 1;
    int q = 1;
    std::string alphas;
    std::string cut;
    bool clamp = false;
    // tolerances
    double tol = kDecisionTolerance;
    double search_tol = kThresholdTolerance;
    std::optional<double> lo, hi;
    // curve
    std::optional<double> from, to;
    int points = 51;
    // sweep
    std::string grid_alpha;
    std::string grid_beta;
    std::string grid_l = "1,2";
    std::string objective = "threshold";
    double at = 1.0;
    // output
    std::string format;
    std::string out;
    std::string save_state;
    std::string repro_id;
};

class UsageError : public Error {
public:
    using Error::Error;
};

std::string fmt17(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) parts.push_back(cur);
    return parts;
}

double parse_double(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw UsageError(what + ": '" + s + "' is not a number");
    }
}

int parse_int(const std::string& s, const std::string& what) {
    const double v = parse_double(s, what);
    if (v != std::floor(v)) throw UsageError(what + ": '" + s + "' is not an integer");
    return static_cast<int>(v);
}

/// "a,b,c" or "lo:hi:n".
std::vector<double> parse_grid(const std::string& s, const std::string& what) {
    if (s.find(':') != std::string::npos) {
        const auto parts = split(s, ':');
        if (parts.size() != 3) throw UsageError(what + ": range must be lo:hi:n");
        const int n = parse_int(parts[2], what);
        if (n < 1) throw UsageError(what + ": range needs n >= 1");
        const double lo = parse_double(parts[0], what), hi = parse_double(parts[1], what);
        if (n == 1) return {lo};
        return linspace(lo, hi, n);
    }
    std::vector<double> xs;
    for (const auto& part : split(s, ',')) xs.push_back(parse_double(part, what));
    if (xs.empty()) throw UsageError(what + ": empty list");
    return xs;
}

CriterionKind parse_criterion(const std::string& name) {
    static const std::map<std::string, CriterionKind> names{
        {"realignment", CriterionKind::Realignment},
        {"ccnr", CriterionKind::Realignment},
        {"ppt", CriterionKind::Ppt},
        {"bordered", CriterionKind::Bordered},
        {"theorem1", CriterionKind::Bordered},
        {"gme", CriterionKind::Gme},
        {"theorem4", CriterionKind::Gme},
        {"fullsep", CriterionKind::FullSeparability},
        {"theorem5", CriterionKind::FullSeparability},
        {"concurrence", CriterionKind::ConcurrenceBound},
        {"theorem2", CriterionKind::ConcurrenceBound},
        {"cren", CriterionKind::CrenBound},
        {"theorem3", CriterionKind::CrenBound},
        {"gme-concurrence", CriterionKind::GmeConcurrenceBound},
        {"theorem6", CriterionKind::GmeConcurrenceBound},
        {"baseline", CriterionKind::ConcurrenceBaseline},
    };
    const auto it = names.find(name);
    if (it == names.end()) throw UsageError("unknown criterion or measure '" + name + "'");
    return it->second;
}

bool is_measure(CriterionKind k) {
    return k == CriterionKind::ConcurrenceBound || k == CriterionKind::CrenBound ||
           k == CriterionKind::GmeConcurrenceBound || k == CriterionKind::ConcurrenceBaseline;
}

/// "2" or "2|13" (1-based) -> 0-based party index.
int parse_cut(const std::string& s, int parties) {
    const auto bar = s.find('|');
    const std::string head = s.substr(0, bar);
    const int party = parse_int(head, "--cut");
    if (party < 1 || party > parties)
        throw UsageError("--cut: party " + head + " out of range 1.." + std::to_string(parties));
    if (bar != std::string::npos) {
        std::string expect;
        for (int k = 1; k <= parties; ++k)
            if (k != party) expect += std::to_string(k);
        if (s.substr(bar + 1) != expect)
            throw UsageError("--cut: '" + s + "' is not a bipartition; expected " + head + "|" + expect);
    }
    return party - 1;
}

Dims parse_dims(const std::string& s) {
    Dims dims;
    for (const auto& part : split(s, ',')) dims.push_back(parse_int(part, "--dims"));
    if (dims.empty()) throw UsageError("--dims: empty");
    return dims;
}

struct StateSource {
    std::optional<StateFamily> family;
    std::optional<DensityMatrix> state;
    std::optional<double> value;
    json description;
};

StateSource load_source(const Options& o, bool need_family) {
    const int sources = !o.input.empty() + !o.family.empty() + !o.random_kind.empty();
    if (sources != 1) throw UsageError("give exactly one of --input, --family, --random");
    StateSource src;
    if (!o.input.empty()) {
        if (need_family) throw UsageError("this command needs a --family");
        src.state = read_state_file(o.input);
        src.description = {{"input", o.input}};
        return src;
    }
    if (!o.random_kind.empty()) {
        if (need_family) throw UsageError("this command needs a --family");
        if (o.dims.empty()) throw UsageError("--random needs --dims");
        const Dims dims = parse_dims(o.dims);
        if (o.random_kind == "pure")
            src.state = random_pure(dims, o.seed);
        else if (o.random_kind == "mixed")
            src.state = random_mixed(dims, o.rank > 0 ? o.rank : total_dimension(dims), o.seed);
        else if (o.random_kind == "separable")
            src.state = random_separable(dims, o.terms, o.seed);
        else if (o.random_kind == "biseparable")
            src.state = random_biseparable(dims, o.terms, o.seed);
        else
            throw UsageError("--random: unknown kind '" + o.random_kind + "' (pure, mixed, separable, biseparable)");
        src.description = {{"random", o.random_kind}, {"dims", dims}, {"seed", o.seed}};
        return src;
    }

    // The flag named after the family's free parameter sets its value; the
    // others override fixed parameters.
    const std::vector<std::pair<std::string, std::optional<double>>> flags{
        {"d", o.d}, {"x", o.x}, {"p", o.p}, {"t", o.t}, {"eps", o.eps}};
    std::string parameter;
    {
        const auto probe = make_builtin_family(o.family);
        parameter = probe.parameter;
    }
    std::map<std::string, double> fixed;
    std::optional<double> value = o.value;
    for (const auto& [name, v] : flags) {
        if (!v) continue;
        if (name == parameter) {
            if (value && *value != *v) throw UsageError("--" + name + " and --value disagree");
            value = v;
        } else {
            fixed[name] = *v;
        }
    }
    try {
        src.family = make_builtin_family(o.family, fixed);
    } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
    }
    src.value = value;
    json fx = json::object();
    for (const auto& [k, v] : src.family->fixed) fx[k] = v;
    src.description = {{"family", src.family->id}, {"fixed", fx}, {"parameter", src.family->parameter}};
    if (value) src.description["value"] = *value;
    if (!need_family) {
        if (!value)
            throw UsageError("family " + src.family->id + " needs a value for its parameter '" + parameter +
                             "' (--value)");
        src.state = src.family->at(*value);
    }
    return src;
}

int parties_of(const StateSource& src) {
    if (src.state) return src.state->parties();
    return src.family->at(src.family->lo).parties();
}

CriterionSpec build_spec(const Options& o, int parties, bool allow_measure) {
    CriterionSpec spec;
    spec.kind = parse_criterion(o.measure.empty() ? o.criterion : o.measure);
    if (!o.measure.empty() && !is_measure(spec.kind)) throw UsageError("--measure: '" + o.measure + "' is a test");
    if (!allow_measure && is_measure(spec.kind))
        throw UsageError("'" + to_string(spec.kind) + "' is a measure bound; use the bound command");
    if (!(o.tol >= 0.0)) throw UsageError("--tol must be non-negative");
    spec.tolerance = o.tol;
    spec.bipartite = {o.alpha, o.beta, o.l};
    try {
        if (spec.kind == CriterionKind::FullSeparability) {
            spec.multipartite.q = o.q;
            spec.multipartite.l = o.l;
            if (!o.alphas.empty()) {
                for (const auto& a : split(o.alphas, ',')) spec.multipartite.alphas.push_back(parse_double(a, "--alphas"));
            } else if (o.q >= 1 && o.q <= parties) {
                spec.multipartite.alphas.assign(parties - o.q + 1, o.alpha);
            }
            spec.multipartite.check(parties);
        } else {
            spec.bipartite.check();
        }
    } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
    }
    const bool tripartite_only = spec.kind == CriterionKind::Gme || spec.kind == CriterionKind::GmeConcurrenceBound;
    if (tripartite_only && parties != 3) throw UsageError(to_string(spec.kind) + " needs a tripartite state");
    if (spec.kind == CriterionKind::FullSeparability && parties < 2)
        throw UsageError("fullsep needs at least two parties");
    if (!o.cut.empty()) {
        if (tripartite_only || spec.kind == CriterionKind::FullSeparability)
            throw UsageError("--cut does not apply to " + to_string(spec.kind));
        spec.party = parse_cut(o.cut, parties);
    } else if (parties > 2 && !tripartite_only && spec.kind != CriterionKind::FullSeparability &&
               spec.kind != CriterionKind::Ppt) {
        throw UsageError(to_string(spec.kind) + " on a " + std::to_string(parties) + "-party state needs --cut");
    }
    return spec;
}

CriterionVerdict run_test(const DensityMatrix& rho, const CriterionSpec& spec) {
    const double tol = spec.tolerance;
    auto bip = [&] {
        if (rho.parties() == 2) return spec.party.value_or(0) == 1 ? bipartition(rho, 1) : rho;
        return bipartition(rho, *spec.party);
    };
    switch (spec.kind) {
    case CriterionKind::Realignment: return realignment_test(bip(), tol);
    case CriterionKind::Ppt: return ppt_test(rho, spec.party, tol);
    case CriterionKind::Bordered: return bordered_realignment_test(bip(), spec.bipartite, tol);
    case CriterionKind::Gme: return gme_test(rho, spec.bipartite, tol);
    case CriterionKind::FullSeparability: return full_separability_test(rho, spec.multipartite, tol);
    default: break;
    }
    throw UsageError("not a test: " + to_string(spec.kind));
}

json spec_json(const CriterionSpec& spec) {
    json j{{"id", to_string(spec.kind)}, {"description", spec.describe()}};
    switch (spec.kind) {
    case CriterionKind::Realignment:
    case CriterionKind::Ppt:
    case CriterionKind::ConcurrenceBaseline:
        break;
    case CriterionKind::FullSeparability:
        j["q"] = spec.multipartite.q;
        j["l"] = spec.multipartite.l;
        j["alphas"] = spec.multipartite.alphas;
        break;
    default:
        j["alpha"] = spec.bipartite.alpha;
        j["beta"] = spec.bipartite.beta;
        j["l"] = spec.bipartite.l;
    }
    if (spec.party) j["cut"] = *spec.party + 1;
    return j;
}

// ---- output ----

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;
};

struct Output {
    std::string command;
    json parameters = json::object();
    json tolerances = json::object();
    json result = json::object();
    std::optional<Table> table;
    std::vector<std::string> notes; ///< extra CSV comment lines
};

std::string csv_cell(const json& v) {
    if (v.is_null()) return "";
    if (v.is_number_float()) return fmt17(v.get<double>());
    if (v.is_number()) return v.dump();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    if (s.find_first_of(",\"\n") != std::string::npos) {
        std::string q = "\"";
        for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    }
    return s;
}

void flatten(const json& j, const std::string& prefix, Table& t) {
    for (const auto& [k, v] : j.items()) {
        const std::string key = prefix.empty() ? k : prefix + "." + k;
        if (v.is_object())
            flatten(v, key, t);
        else
            t.rows.push_back({key, v});
    }
}

json meta_json(const Output& o) {
    return {{"tool", "entdetect"},
            {"version", kVersion},
            {"command", o.command},
            {"parameters", o.parameters},
            {"tolerances", o.tolerances}};
}

void write_output(const Output& o, const std::string& format, std::ostream& os) {
    if (format == "json") {
        json doc{{"meta", meta_json(o)}, {"result", o.result}};
        os << doc.dump(2) << '\n';
        return;
    }
    os << "# entdetect " << kVersion << '\n';
    os << "# command: " << o.command << '\n';
    Table meta;
    flatten(o.parameters, "", meta);
    for (const auto& r : meta.rows) os << "# " << r[0].get<std::string>() << ": " << csv_cell(r[1]) << '\n';
    Table tol;
    flatten(o.tolerances, "tolerance", tol);
    for (const auto& r : tol.rows) os << "# " << r[0].get<std::string>() << ": " << csv_cell(r[1]) << '\n';
    for (const auto& n : o.notes) os << "# " << n << '\n';
    Table t;
    if (o.table) {
        t = *o.table;
    } else {
        t.columns = {"key", "value"};
        flatten(o.result, "", t);
    }
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
        os << '\n';
    }
}

json base_tolerances(const Options& o) {
    return {{"decision", o.tol},
            {"hermiticity", kHermiticityTolerance},
            {"trace", kTraceTolerance},
            {"psd", kPsdTolerance}};
}

DensityMatrix checked_state(const StateSource& src) {
    try {
        require_valid(*src.state);
    } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
    }
    return *src.state;
}

// ---- commands ----

int cmd_validate(const Options& o, Output& out, std::ostream& err) {
    const auto src = load_source(o, false);
    const auto report = validate(*src.state);
    out.parameters = {{"state", src.description}};
    out.tolerances = base_tolerances(o);
    out.result = {{"dims", src.state->dims()},
                  {"valid", report.valid()},
                  {"hermitian", report.hermitian()},
                  {"unit_trace", report.unit_trace()},
                  {"positive", report.positive()},
                  {"hermiticity_defect", report.hermiticity_defect},
                  {"trace_defect", report.trace_defect},
                  {"min_eigenvalue", report.min_eigenvalue}};
    if (!o.save_state.empty()) {
        write_state_file(o.save_state, *src.state);
        out.result["saved"] = o.save_state;
    }
    if (!report.valid()) {
        err << "invalid state: ";
        if (!report.hermitian())
            err << "hermiticity defect " << fmt17(report.hermiticity_defect);
        else if (!report.unit_trace())
            err << "trace defect " << fmt17(report.trace_defect);
        else
            err << "min eigenvalue " << fmt17(report.min_eigenvalue) << " below -" << kPsdTolerance;
        err << '\n';
        return kValidation;
    }
    return kOk;
}

int cmd_detect(const Options& o, Output& out) {
    const auto src = load_source(o, false);
    const auto spec = build_spec(o, src.state->parties(), false);
    const auto rho = checked_state(src);
    const auto v = run_test(rho, spec);
    out.parameters = {{"state", src.description}, {"criterion", spec_json(spec)}};
    out.tolerances = base_tolerances(o);
    out.result = {{"verdict", to_string(v.verdict)},
                  {"norm", v.norm_value},
                  {"bound", v.bound},
                  {"margin", v.margin}};
    return kOk;
}

int cmd_bound(const Options& o, Output& out) {
    Options m = o;
    if (m.measure.empty()) m.measure = "concurrence";
    const auto src = load_source(m, false);
    const auto spec = build_spec(m, src.state->parties(), true);
    const auto rho = checked_state(src);
    BoundResult b;
    auto bip = [&] {
        if (rho.parties() == 2) return spec.party.value_or(0) == 1 ? bipartition(rho, 1) : rho;
        return bipartition(rho, *spec.party);
    };
    switch (spec.kind) {
    case CriterionKind::ConcurrenceBound: b = concurrence_lower_bound(bip(), spec.bipartite, m.clamp); break;
    case CriterionKind::CrenBound: b = cren_lower_bound(bip(), spec.bipartite, m.clamp); break;
    case CriterionKind::GmeConcurrenceBound: b = gme_concurrence_lower_bound(rho, spec.bipartite, m.clamp); break;
    case CriterionKind::ConcurrenceBaseline: b = realignment_concurrence_baseline(bip(), m.clamp); break;
    default: throw UsageError("not a measure: " + to_string(spec.kind));
    }
    out.parameters = {{"state", src.description}, {"measure", spec_json(spec)}, {"clamp", m.clamp}};
    out.tolerances = base_tolerances(m);
    out.result = {{"measure", to_string(b.measure)}, {"value", b.value}, {"informative", b.value > 0.0}};
    return kOk;
}

int cmd_threshold(const Options& o, Output& out, std::ostream& err) {
    const auto src = load_source(o, true);
    const auto spec = build_spec(o, parties_of(src), true);
    if (!(o.search_tol > 0.0)) throw UsageError("--search-tol must be positive");
    std::optional<std::pair<double, double>> bracket;
    if (o.lo || o.hi) {
        if (!(o.lo && o.hi)) throw UsageError("--lo and --hi go together");
        bracket = std::make_pair(*o.lo, *o.hi);
    }
    out.parameters = {{"state", src.description}, {"criterion", spec_json(spec)}};
    out.tolerances = base_tolerances(o);
    out.tolerances["search"] = o.search_tol;
    try {
        const auto r = find_threshold(*src.family, spec, bracket, o.search_tol);
        out.result = {{"threshold", r.threshold},
                      {"lo", r.lo},
                      {"hi", r.hi},
                      {"margin_lo", r.margin_lo},
                      {"margin_hi", r.margin_hi},
                      {"detected_above", r.detected_above},
                      {"monotone", r.monotone},
                      {"evaluations", r.evaluations}};
    } catch (const NoThresholdFound& e) {
        json profile = json::array();
        for (const auto& [x, m] : e.profile()) profile.push_back({x, m});
        out.result = {{"threshold", nullptr}, {"error", e.what()}, {"profile", profile}};
        Table t{{src.family->parameter, "margin"}, {}};
        for (const auto& [x, m] : e.profile()) t.rows.push_back({x, m});
        out.table = t;
        out.notes.push_back(std::string("no threshold: ") + e.what());
        err << "no threshold found: " << e.what() << '\n';
        return kNoThreshold;
    }
    return kOk;
}

int cmd_curve(const Options& o, Output& out) {
    const auto src = load_source(o, true);
    const auto spec = build_spec(o, parties_of(src), true);
    const double from = o.from.value_or(src.family->lo), to = o.to.value_or(src.family->hi);
    if (o.points < 2) throw UsageError("--points must be at least 2");
    if (from < src.family->lo || to > src.family->hi || !(from < to))
        throw UsageError("curve range must satisfy " + fmt17(src.family->lo) + " <= from < to <= " +
                         fmt17(src.family->hi));
    const auto pts = tabulate_curve(*src.family, spec, linspace(from, to, o.points));
    out.parameters = {{"state", src.description}, {"criterion", spec_json(spec)}, {"points", o.points}};
    out.tolerances = base_tolerances(o);
    Table t{{src.family->parameter, "margin"}, {}};
    json xs = json::array(), ys = json::array();
    for (const auto& p : pts) {
        t.rows.push_back({p.x, p.value});
        xs.push_back(p.x);
        ys.push_back(p.value);
    }
    out.result = {{"parameter", src.family->parameter}, {"x", xs}, {"margin", ys}};
    out.table = t;
    return kOk;
}

int cmd_sweep(const Options& o, Output& out) {
    const auto src = load_source(o, true);
    const auto base = build_spec(o, parties_of(src), true);
    if (o.grid_alpha.empty()) throw UsageError("sweep needs --grid-alpha");
    SweepGrid grid;
    grid.alphas = parse_grid(o.grid_alpha, "--grid-alpha");
    grid.betas = o.grid_beta.empty() ? grid.alphas : parse_grid(o.grid_beta, "--grid-beta");
    for (double v : parse_grid(o.grid_l, "--grid-l")) {
        if (v != std::floor(v)) throw UsageError("--grid-l values must be integers");
        grid.ls.push_back(static_cast<int>(v));
    }
    if (o.objective == "threshold")
        grid.objective = SweepObjective::MinimizeThreshold;
    else if (o.objective == "margin")
        grid.objective = SweepObjective::MaximizeMargin;
    else
        throw UsageError("--objective must be threshold or margin");
    grid.at = o.at;
    try {
        grid.check();
    } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
    }
    const auto entries = sweep(*src.family, grid, base);
    out.parameters = {{"state", src.description},
                      {"criterion", spec_json(base)},
                      {"objective", o.objective},
                      {"grid_alpha", grid.alphas},
                      {"grid_beta", grid.betas},
                      {"grid_l", grid.ls}};
    if (grid.objective == SweepObjective::MaximizeMargin) out.parameters["at"] = grid.at;
    out.tolerances = base_tolerances(o);
    out.tolerances["search"] = kThresholdTolerance;
    Table t{{"rank", "alpha", "beta", "l", "value"}, {}};
    json rows = json::array();
    int rank = 1;
    for (const auto& e : entries) {
        const json v = e.value ? json(*e.value) : json(nullptr);
        t.rows.push_back({rank, e.params.alpha, e.params.beta, e.params.l, v});
        rows.push_back({{"rank", rank}, {"alpha", e.params.alpha}, {"beta", e.params.beta}, {"l", e.params.l},
                        {"value", v}});
        ++rank;
    }
    out.result = {{"entries", rows}};
    out.table = t;
    return kOk;
}

int cmd_reproduce(const Options& o, Output& out) {
    ReproReport r;
    try {
        r = reproduce(o.repro_id);
    } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
    }
    out.parameters = {{"id", r.id}, {"title", r.title}};
    for (const auto& [k, v] : r.parameters) out.parameters[k] = v;
    out.tolerances = {{"decision", kDecisionTolerance}, {"search", kThresholdTolerance}};
    json checks = json::array();
    Table ct{{"check", "computed", "reference", "tolerance", "delta", "pass", "note"}, {}};
    for (const auto& c : r.checks) {
        const json ref = c.reference ? json(*c.reference) : json(nullptr);
        const json delta = c.reference ? json(c.computed - *c.reference) : json(nullptr);
        const json tol = c.reference ? json(c.tolerance) : json(nullptr);
        json jc{{"label", c.label}, {"computed", std::isfinite(c.computed) ? json(c.computed) : json(nullptr)},
                {"reference", ref}, {"tolerance", tol}, {"delta", delta}, {"pass", c.pass}};
        if (!c.note.empty()) jc["note"] = c.note;
        checks.push_back(jc);
        ct.rows.push_back({c.label, c.computed, ref, tol, delta, c.pass, c.note});
    }
    out.result = {{"passed", r.passed()}, {"checks", checks}};
    if (!r.table_columns.empty()) {
        out.result["columns"] = r.table_columns;
        out.result["rows"] = r.table_rows;
        Table t{r.table_columns, {}};
        for (const auto& row : r.table_rows) t.rows.emplace_back(row.begin(), row.end());
        out.table = t;
        for (const auto& c : r.checks) {
            std::string line = "check: " + c.label + " computed=" + fmt17(c.computed);
            if (c.reference) line += " reference=" + fmt17(*c.reference) + " tolerance=" + fmt17(c.tolerance);
            line += c.pass ? " PASS" : " FAIL";
            out.notes.push_back(line);
        }
    } else {
        out.table = ct;
    }
    out.notes.push_back(std::string("all checks: ") + (r.passed() ? "PASS" : "FAIL"));
    return kOk;
}

void add_state_options(CLI::App* sub, Options& o) {
    sub->add_option("--input", o.input, "State file (JSON)");
    sub->add_option("--family", o.family, "Built-in family: example1 ... example6");
    sub->add_option("--random", o.random_kind, "Random state: pure, mixed, separable, biseparable");
    sub->add_option("--dims", o.dims, "Subsystem dimensions for --random, e.g. 3,3");
    sub->add_option("--rank", o.rank, "Rank for --random mixed (0 = full)");
    sub->add_option("--terms", o.terms, "Mixture terms for --random separable/biseparable");
    sub->add_option("--seed", o.seed, "Seed for --random");
    sub->add_option("--d", o.d, "Family parameter d");
    sub->add_option("--x", o.x, "Family parameter x");
    sub->add_option("--p", o.p, "Family parameter p");
    sub->add_option("--t", o.t, "Family parameter t");
    sub->add_option("--eps", o.eps, "Family parameter eps");
    sub->add_option("--value", o.value, "Value of the family's free parameter");
}

void add_criterion_options(CLI::App* sub, Options& o, bool with_measure) {
    sub->add_option("--criterion", o.criterion,
                    "realignment, ppt, bordered (theorem1), gme (theorem4), fullsep (theorem5)");
    if (with_measure)
        sub->add_option("--measure", o.measure, "concurrence (theorem2), cren (theorem3), gme-concurrence, baseline");
    sub->add_option("--alpha", o.alpha, "Border weight alpha");
    sub->add_option("--beta", o.beta, "Border weight beta");
    sub->add_option("--l", o.l, "Border repeat count");
    sub->add_option("--q", o.q, "First bordered subsystem (fullsep, 1-based)");
    sub->add_option("--alphas", o.alphas, "Per-subsystem weights for fullsep, a1,a2,...");
    sub->add_option("--cut", o.cut, "Bipartition of a multipartite state, i or i|jk (1-based)");
    sub->add_option("--tol", o.tol, "Decision tolerance on the margin");
}

void add_output_options(CLI::App* sub, Options& o) {
    sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", o.out, "Output file (default stdout)");
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Entanglement detection with bordered realignment matrices"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    auto* validate_cmd = app.add_subcommand("validate", "Check that a state is a density matrix");
    add_state_options(validate_cmd, o);
    add_output_options(validate_cmd, o);
    validate_cmd->add_option("--save-state", o.save_state, "Write the state to a JSON state file");

    auto* detect = app.add_subcommand("detect", "Run a separability test on one state");
    add_state_options(detect, o);
    add_criterion_options(detect, o, false);
    add_output_options(detect, o);

    auto* bound = app.add_subcommand("bound", "Lower bound of an entanglement measure");
    add_state_options(bound, o);
    add_criterion_options(bound, o, true);
    add_output_options(bound, o);
    bound->add_flag("--clamp", o.clamp, "Clamp negative bounds to zero");

    auto* threshold = app.add_subcommand("threshold", "Locate the detection threshold along a family");
    add_state_options(threshold, o);
    add_criterion_options(threshold, o, true);
    add_output_options(threshold, o);
    threshold->add_option("--lo", o.lo, "Bracket lower end");
    threshold->add_option("--hi", o.hi, "Bracket upper end");
    threshold->add_option("--search-tol", o.search_tol, "Bisection tolerance");

    auto* curve = app.add_subcommand("curve", "Tabulate the margin along a family");
    add_state_options(curve, o);
    add_criterion_options(curve, o, true);
    add_output_options(curve, o);
    curve->add_option("--from", o.from, "First parameter value");
    curve->add_option("--to", o.to, "Last parameter value");
    curve->add_option("--points", o.points, "Number of points");

    auto* sweep_cmd = app.add_subcommand("sweep", "Rank (alpha, beta, l) on a grid");
    add_state_options(sweep_cmd, o);
    add_criterion_options(sweep_cmd, o, true);
    add_output_options(sweep_cmd, o);
    sweep_cmd->add_option("--grid-alpha", o.grid_alpha, "alpha values: a,b,c or lo:hi:n");
    sweep_cmd->add_option("--grid-beta", o.grid_beta, "beta values (default: same as alpha)");
    sweep_cmd->add_option("--grid-l", o.grid_l, "l values");
    sweep_cmd->add_option("--objective", o.objective, "threshold (minimize) or margin (maximize)");
    sweep_cmd->add_option("--at", o.at, "Parameter value for --objective margin");

    auto* repro = app.add_subcommand("reproduce", "Recompute a built-in reference example");
    repro->add_option("id", o.repro_id, "example1..example6, table1, table2, fig1..fig5")->required();
    add_output_options(repro, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kValidation;
    }

    auto* cmd = app.get_subcommands().front();
    Output output;
    output.command = cmd->get_name();
    const bool tabular = cmd == curve || cmd == sweep_cmd || cmd == repro;
    const std::string format = o.format.empty() ? (tabular ? "csv" : "json") : o.format;
    int code = kOk;
    try {
        if (cmd == validate_cmd)
            code = cmd_validate(o, output, err);
        else if (cmd == detect)
            code = cmd_detect(o, output);
        else if (cmd == bound)
            code = cmd_bound(o, output);
        else if (cmd == threshold)
            code = cmd_threshold(o, output, err);
        else if (cmd == curve)
            code = cmd_curve(o, output);
        else if (cmd == sweep_cmd)
            code = cmd_sweep(o, output);
        else
            code = cmd_reproduce(o, output);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const FormatError& e) {
        err << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const DimensionError& e) {
        err << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }

    if (o.out.empty()) {
        write_output(output, format, out);
    } else {
        std::ofstream f(o.out);
        if (!f) {
            err << "error: cannot open '" << o.out << "' for writing\n";
            return kFailure;
        }
        write_output(output, format, f);
    }
    return code;
}

} // namespace entdetect::cli
