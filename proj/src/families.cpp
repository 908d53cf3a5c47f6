#include "entdetect/families.hpp"

#include <sstream>

#include "entdetect/states.hpp"

namespace entdetect {

DensityMatrix StateFamily::at(double value) const {
    if (!(value >= lo && value <= hi)) {
        std::ostringstream os;
        os << id << ": " << parameter << " = " << value << " outside [" << lo << ", " << hi << "]";
        throw InvalidArgument(os.str());
    }
    return generator(value);
}

StateFamily example1_family(double d) {
    const auto start = horodecki_2x4_bell_mixture(d, 0.0);
    const auto end = horodecki_2x4_bell_mixture(d, 1.0);
    return {"example1", {{"d", d}}, "x", 0.0, 1.0, [start, end](double x) {
                return DensityMatrix(x * end.matrix() + (1.0 - x) * start.matrix(), start.dims());
            }};
}

StateFamily example2_family(double x) {
    const auto base = horodecki_3x3(x);
    return {"example2", {{"x", x}}, "p", 0.0, 1.0,
            [base](double p) { return mix_with_white_noise(base, p); }};
}

StateFamily tiles_family() {
    const auto base = tiles_upb_state();
    return {"example3", {}, "t", 0.0, 1.0, [base](double t) { return mix_with_white_noise(base, t); }};
}

StateFamily w_bar_family() {
    const auto base = w_bar_state();
    return {"example4", {}, "q", 0.0, 1.0, [base](double q) { return mix_with_white_noise(base, q); }};
}

StateFamily ghz_epsilon_family(double eps) {
    const auto base = ghz_epsilon_state(eps);
    return {"example5", {{"eps", eps}}, "p", 0.0, 1.0,
            [base](double p) { return mix_with_white_noise(base, p); }};
}

StateFamily ghz3_noise_family() {
    const auto base = ghz3_state();
    return {"example6", {}, "x", 0.0, 1.0,
            [base](double x) { return mix_with_white_noise(base, 1.0 - x); }};
}

StateFamily constant_family(DensityMatrix rho, std::string id) {
    return {std::move(id), {}, "value", 0.0, 1.0, [rho](double) { return rho; }};
}

std::vector<std::string> builtin_family_ids() {
    return {"example1", "example2", "example3", "example4", "example5", "example6"};
}

StateFamily make_builtin_family(const std::string& id, const std::map<std::string, double>& fixed) {
    auto take = [&](const char* key, double fallback) {
        auto it = fixed.find(key);
        return it == fixed.end() ? fallback : it->second;
    };
    auto reject_unknown = [&](std::initializer_list<const char*> allowed) {
        for (const auto& [k, v] : fixed) {
            bool ok = false;
            for (const char* a : allowed) ok = ok || k == a;
            if (!ok) throw InvalidArgument("family " + id + " has no fixed parameter '" + k + "'");
        }
    };
    if (id == "example1") {
        reject_unknown({"d"});
        return example1_family(take("d", 0.9));
    }
    if (id == "example2") {
        reject_unknown({"x"});
        return example2_family(take("x", 0.2));
    }
    if (id == "example3") {
        reject_unknown({});
        return tiles_family();
    }
    if (id == "example4") {
        reject_unknown({});
        return w_bar_family();
    }
    if (id == "example5") {
        reject_unknown({"eps"});
        return ghz_epsilon_family(take("eps", 1.0));
    }
    if (id == "example6") {
        reject_unknown({});
        return ghz3_noise_family();
    }
    std::string known;
    for (const auto& k : builtin_family_ids()) known += (known.empty() ? "" : ", ") + k;
    throw InvalidArgument("unknown family '" + id + "' (known: " + known + ")");
}

} // namespace entdetect
