#include "entdetect/state_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "entdetect/linalg.hpp"

namespace entdetect {

using nlohmann::json;

std::string state_to_json(const DensityMatrix& rho) {
    // Written by hand so every number carries 17 significant digits.
    const auto& m = rho.matrix();
    std::string out = "{\"dims\": [";
    for (std::size_t k = 0; k < rho.dims().size(); ++k) out += (k ? ", " : "") + std::to_string(rho.dims()[k]);
    out += "], \"matrix\": [";
    char buf[64];
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        out += i ? ",\n  [" : "\n  [";
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%s[%.17g, %.17g]", j ? ", " : "", m(i, j).real(), m(i, j).imag());
            out += buf;
        }
        out += "]";
    }
    out += "\n]}";
    return out;
}

DensityMatrix state_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("state file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw FormatError("state file: top level must be an object");
    if (!doc.contains("dims") || !doc["dims"].is_array() || doc["dims"].empty())
        throw FormatError("state file: field 'dims' must be a non-empty array of integers");
    Dims dims;
    for (std::size_t k = 0; k < doc["dims"].size(); ++k) {
        const auto& d = doc["dims"][k];
        if (!d.is_number_integer() || d.get<long long>() <= 0)
            throw FormatError("state file: dims[" + std::to_string(k) + "] must be a positive integer");
        dims.push_back(d.get<int>());
    }
    int total = 0;
    try {
        total = total_dimension(dims);
    } catch (const DimensionError& e) {
        throw FormatError(std::string("state file: dims: ") + e.what());
    }
    if (!doc.contains("matrix") || !doc["matrix"].is_array())
        throw FormatError("state file: field 'matrix' must be an array of rows");
    const auto& rows = doc["matrix"];
    if (static_cast<int>(rows.size()) != total)
        throw FormatError("state file: matrix has " + std::to_string(rows.size()) +
                          " rows but dims multiply to " + std::to_string(total));
    ComplexMatrix m(total, total);
    for (int i = 0; i < total; ++i) {
        const auto& row = rows[i];
        if (!row.is_array() || static_cast<int>(row.size()) != total)
            throw FormatError("state file: matrix row " + std::to_string(i) + " must have " +
                              std::to_string(total) + " entries");
        for (int j = 0; j < total; ++j) {
            const auto& e = row[j];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
                throw FormatError("state file: matrix[" + std::to_string(i) + "][" + std::to_string(j) +
                                  "] must be a [re, im] pair of numbers");
            m(i, j) = Complex{e[0].get<double>(), e[1].get<double>()};
        }
    }
    try {
        return DensityMatrix(std::move(m), std::move(dims));
    } catch (const Error& e) {
        throw FormatError(std::string("state file: ") + e.what());
    }
}

void write_state_file(const std::string& path, const DensityMatrix& rho) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << state_to_json(rho) << '\n';
    if (!out) throw Error("failed writing '" + path + "'");
}

DensityMatrix read_state_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return state_from_json(ss.str());
}

} // namespace entdetect
