#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "capdyn/kinematics.hpp"
#include "capdyn/types.hpp"

namespace capdyn {

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double v);

/// Strict double parse of a whole token; context goes into the error message.
double parse_double(std::string_view token, const std::string& context);

/// Matrix plus its header labels, as stored on disk: one header row naming the
/// columns, one label column naming the rows, numeric body. No quoting; labels
/// must not contain commas.
struct LabeledMatrix {
    Matrix values;
    std::string corner;
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;
};

LabeledMatrix load_labeled_csv(const std::filesystem::path& path);

/// Load and validate a requirement / endowment matrix. Parse errors carry the
/// row and column; domain violations list the offending cells.
CapabilityRequirements load_requirements(const std::filesystem::path& path);
Endowments load_endowments(const std::filesystem::path& path);

std::string matrix_to_csv(const LabeledMatrix& m);
std::string trajectory_to_csv(const Trajectory& t);

/// Generic rectangular table with pre-formatted cells.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

std::string table_to_csv(const Table& t);

/// Write via a temp file in the same directory, then rename into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

}  // namespace capdyn
