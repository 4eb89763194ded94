#include "capdyn/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace capdyn {

std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view token, const std::string& context) {
    double value = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    const auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc{} || res.ptr != last)
        throw std::runtime_error(context + ": cannot parse '" + std::string(token) +
                                 "' as a number");
    return value;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            out.emplace_back(trim(line.substr(start)));
            break;
        }
        out.emplace_back(trim(line.substr(start, pos - start)));
        start = pos + 1;
    }
    return out;
}

}  // namespace

LabeledMatrix load_labeled_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path.string() + ": cannot open file");

    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        lines.push_back(line);
    }
    if (lines.size() < 2)
        throw std::runtime_error(path.string() + ": need a header row and at least one data row");

    const std::vector<std::string> header = split_csv_line(lines[0]);
    if (header.size() < 2)
        throw std::runtime_error(path.string() + ": header must name at least one column");

    LabeledMatrix m;
    m.corner = header[0];
    m.col_labels.assign(header.begin() + 1, header.end());
    const std::size_t cols = m.col_labels.size();
    m.values = Matrix(lines.size() - 1, cols);
    m.row_labels.reserve(lines.size() - 1);

    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::vector<std::string> cells = split_csv_line(lines[i]);
        if (cells.size() != cols + 1)
            throw std::runtime_error(path.string() + ":" + std::to_string(i + 1) + ": expected " +
                                     std::to_string(cols + 1) + " cells, got " +
                                     std::to_string(cells.size()));
        m.row_labels.push_back(cells[0]);
        for (std::size_t j = 0; j < cols; ++j) {
            m.values(i - 1, j) =
                parse_double(cells[j + 1], path.string() + ":" + std::to_string(i + 1) +
                                               ": column " + std::to_string(j + 2));
        }
    }
    return m;
}

CapabilityRequirements load_requirements(const std::filesystem::path& path) {
    LabeledMatrix m = load_labeled_csv(path);
    try {
        return CapabilityRequirements(std::move(m.values), std::move(m.row_labels),
                                      std::move(m.col_labels));
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
}

Endowments load_endowments(const std::filesystem::path& path) {
    LabeledMatrix m = load_labeled_csv(path);
    try {
        return Endowments(std::move(m.values), std::move(m.row_labels),
                          std::move(m.col_labels));
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
}

std::string matrix_to_csv(const LabeledMatrix& m) {
    std::ostringstream out;
    out << m.corner;
    for (const auto& label : m.col_labels) out << ',' << label;
    out << '\n';
    for (std::size_t i = 0; i < m.values.rows(); ++i) {
        out << m.row_labels[i];
        for (std::size_t j = 0; j < m.values.cols(); ++j)
            out << ',' << format_double(m.values(i, j));
        out << '\n';
    }
    return out.str();
}

std::string trajectory_to_csv(const Trajectory& t) {
    std::ostringstream out;
    out << 't';
    for (const auto& name : t.series) out << ',' << name;
    out << '\n';
    for (std::size_t i = 0; i < t.times.size(); ++i) {
        out << format_double(t.times[i]);
        for (double v : t.values[i]) out << ',' << format_double(v);
        out << '\n';
    }
    return out.str();
}

std::string table_to_csv(const Table& t) {
    std::ostringstream out;
    for (std::size_t j = 0; j < t.columns.size(); ++j) {
        if (j) out << ',';
        out << t.columns[j];
    }
    out << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) out << ',';
            out << row[j];
        }
        out << '\n';
    }
    return out.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error(tmp.string() + ": cannot open for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw std::runtime_error(tmp.string() + ": write failed");
    }
    std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error(path.string() + ": cannot open file");
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

}  // namespace capdyn
