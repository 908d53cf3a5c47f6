// Acceptance run: one PASS/FAIL line per criterion, check details indented.
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "entdetect/measures.hpp"
#include "entdetect/reproduce.hpp"
#include "entdetect/states.hpp"
#include "properties.hpp"

using namespace entdetect;

namespace {

struct Line {
    std::string text;
    bool pass;
};

struct Criterion {
    int id;
    std::string title;
    std::vector<Line> lines;

    bool pass() const {
        for (const auto& l : lines)
            if (!l.pass) return false;
        return !lines.empty();
    }
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void add_report(Criterion& c, const std::string& id) {
    const auto r = reproduce(id);
    for (const auto& k : r.checks) {
        std::string s = id + ": " + k.label + " = " + fmt(k.computed);
        if (k.reference) s += " (reference " + fmt(*k.reference) + " +- " + fmt(k.tolerance) + ")";
        if (!k.note.empty()) s += " [" + k.note + "]";
        c.lines.push_back({s, k.pass});
    }
}

Criterion tightness() {
    Criterion c{9, "Bell state tightness, alpha=beta=0, l=1", {}};
    ComplexVector psi = ComplexVector::Zero(4);
    psi(0) = psi(3) = 1 / std::sqrt(2.0);
    const BipartiteParams p{0, 0, 1};
    const double cb = concurrence_lower_bound(bell_state(), p).value, ce = concurrence_pure(psi, 2, 2);
    const double nb = cren_lower_bound(bell_state(), p).value, ne = cren_pure(psi, 2, 2);
    c.lines.push_back({"concurrence bound " + fmt(cb) + " vs exact " + fmt(ce),
                       std::abs(cb - 1) <= 1e-9 && std::abs(cb - ce) <= 1e-9});
    c.lines.push_back({"CREN bound " + fmt(nb) + " vs exact " + fmt(ne),
                       std::abs(nb - 1) <= 1e-9 && std::abs(nb - ne) <= 1e-9});
    return c;
}

} // namespace

int main() {
    std::vector<Criterion> all;
    auto from_reports = [&](int id, std::string title, std::vector<std::string> ids) {
        Criterion c{id, std::move(title), {}};
        for (const auto& r : ids) add_report(c, r);
        all.push_back(std::move(c));
    };
    from_reports(1, "example1 thresholds", {"example1"});
    from_reports(2, "table1 thresholds", {"table1"});
    from_reports(3, "fig1 zero crossings", {"fig1"});
    from_reports(4, "fig2 and fig4 orderings", {"fig2", "fig4"});
    from_reports(5, "example4 GME thresholds", {"example4"});
    from_reports(6, "table2 full separability thresholds", {"table2"});
    from_reports(7, "example6 closed form and crossing (fig5)", {"fig5"});

    Criterion props_c{8, "Property suites", {}};
    for (const auto& r : props::all())
        props_c.lines.push_back({r.name + ": " + r.detail, r.pass});
    all.push_back(std::move(props_c));
    all.push_back(tightness());

    int failed = 0;
    for (const auto& c : all) {
        std::printf("%s criterion %d: %s\n", c.pass() ? "PASS" : "FAIL", c.id, c.title.c_str());
        for (const auto& l : c.lines) std::printf("    [%s] %s\n", l.pass ? "ok" : "x", l.text.c_str());
        if (!c.pass()) ++failed;
    }
    std::printf("%d of %zu criteria pass\n", int(all.size()) - failed, all.size());
    return failed ? 1 : 0;
}
