#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "entdetect/density_matrix.hpp"

namespace entdetect {

/// One-parameter family of states over a closed interval.
struct StateFamily {
    std::string id;
    std::map<std::string, double> fixed;
    std::string parameter;
    double lo = 0.0;
    double hi = 1.0;
    std::function<DensityMatrix(double)> generator;

    /// Throws InvalidArgument when value is outside [lo, hi].
    DensityMatrix at(double value) const;
};

/// x |xi><xi| + (1-x) rho_d over x in [0, 1].
StateFamily example1_family(double d = 0.9);
/// (1-p)/9 I + p * horodecki_3x3(x) over p in [0, 1].
StateFamily example2_family(double x);
/// (1-t)/9 I + t * tiles over t in [0, 1].
StateFamily tiles_family();
/// (1-q)/27 I + q |W-bar><W-bar| over q in [0, 1].
StateFamily w_bar_family();
/// (1-p)/8 I + p |GHZ_eps><GHZ_eps| over p in [0, 1].
StateFamily ghz_epsilon_family(double eps);
/// x/8 I + (1-x) |GHZ><GHZ| over x in [0, 1]; here x is the noise weight.
StateFamily ghz3_noise_family();
/// Ignores its parameter.
StateFamily constant_family(DensityMatrix rho, std::string id = "constant");

/// Ids accepted by make_builtin_family: example1 ... example6.
std::vector<std::string> builtin_family_ids();

/// Builds a built-in family; `fixed` overrides its fixed parameters
/// (example1: d, example2: x, example5: eps). Unknown keys are rejected.
StateFamily make_builtin_family(const std::string& id, const std::map<std::string, double>& fixed = {});

} // namespace entdetect
