#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace entdetect {

/// One computed quantity next to its reference value. Checks without a
/// reference (orderings, identities) carry pass/fail only.
struct ReproCheck {
    std::string label;
    double computed = 0.0;
    std::optional<double> reference;
    double tolerance = 0.0;
    bool pass = false;
    std::string note;
};

struct ReproReport {
    std::string id;
    std::string title;
    std::vector<std::pair<std::string, std::string>> parameters;
    std::vector<ReproCheck> checks;
    /// Optional curve or table data: column names and rows.
    std::vector<std::string> table_columns;
    std::vector<std::vector<double>> table_rows;

    bool passed() const;
};

/// example1..example6, table1, table2, fig1..fig5.
std::vector<std::string> reproduce_ids();

/// Throws InvalidArgument listing the valid ids for an unknown id.
ReproReport reproduce(const std::string& id);

} // namespace entdetect
