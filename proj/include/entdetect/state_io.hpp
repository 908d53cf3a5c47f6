#pragma once

#include <string>

#include "entdetect/density_matrix.hpp"

namespace entdetect {

/// Malformed or inconsistent state document. The message names the offending
/// field (and row/column where relevant).
class FormatError : public Error {
public:
    using Error::Error;
};

/// Document layout:
///
///     {"dims": [2, 2], "matrix": [[[re, im], ...], ...]}
///
/// `matrix` is a list of rows, each a list of [re, im] pairs.
std::string state_to_json(const DensityMatrix& rho);
DensityMatrix state_from_json(const std::string& text);

void write_state_file(const std::string& path, const DensityMatrix& rho);
DensityMatrix read_state_file(const std::string& path);

} // namespace entdetect
