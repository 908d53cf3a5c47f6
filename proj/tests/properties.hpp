#pragma once

#include <string>
#include <vector>

namespace props {

/// Outcome of one seeded property suite. `worst` is the suite's extreme
/// statistic (largest deviation, smallest slack or largest margin).
struct Result {
    std::string name;
    bool pass = false;
    int cases = 0;
    double worst = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

Result affinity();             // bordered matrix affine in rho, 1e-12
Result unitary_invariance();   // local unitaries leave ||M|| unchanged, 1e-9
Result vec_identities();       // R(A (x) B) = vec(A)vec(B)^T exactly, vec(ABC), linearity
Result pure_state_inequalities(); // 200 pure states, slack >= -1e-8
Result bipartite_soundness();  // 200 separable states, no detection
Result gme_soundness();        // 100 biseparable states, no detection
Result full_separability_soundness(); // 100 fully separable states, q in {1, 2}
Result decomposition_independence();  // matrix units vs operator-Schmidt terms, 1e-9
Result zero_border_reduction();       // alpha = beta = 0 matches realignment, 50 states
Result product_norm_identity();       // 50 pure product states, 1e-9
Result schmidt_block_consistency();   // Schmidt-diagonal pure states, 1e-9

std::vector<Result> all();

} // namespace props
