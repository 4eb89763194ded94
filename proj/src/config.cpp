#include "capdyn/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "capdyn/csv.hpp"

namespace capdyn {

const std::vector<std::string>& RunConfig::known_keys() {
    static const std::vector<std::string> keys = {
        // model parameters
        "gamma", "delta", "q_bar", "q_bars", "q_qe", "rate", "rates", "r0", "r0s",
        // time and integration
        "t_end", "dt", "step",
        // grids
        "points", "r_grid_n", "q_grid_n", "q_lo", "q_hi", "ratio_max", "ratio_grid_n",
        // ensemble
        "members", "activities", "capabilities", "r0_lo", "r0_hi", "seed",
        // io
        "out", "name", "mode", "q_path", "r_path", "dr_path", "dq_path", "weights_path",
        "grads", "svg", "sweep",
    };
    return keys;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    std::size_t b = s.find_last_not_of(" \t\r");
    if (a == std::string::npos) return {};
    return s.substr(a, b - a + 1);
}

void check_known(const std::string& key) {
    const auto& keys = RunConfig::known_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
        throw std::invalid_argument("unknown config key '" + key + "'");
}

}  // namespace

RunConfig RunConfig::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path.string() + ": cannot open config file");
    RunConfig cfg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                                     ": expected 'key = value'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty())
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                                     ": empty key");
        try {
            check_known(key);
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": " +
                                     e.what());
        }
        if (cfg.values_.count(key))
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                                     ": duplicate key '" + key + "'");
        cfg.values_[key] = value;
    }
    return cfg;
}

void RunConfig::set(const std::string& key, std::string value) {
    check_known(key);
    values_[key] = std::move(value);
}

bool RunConfig::has(const std::string& key) const { return values_.count(key) > 0; }

const std::string& RunConfig::raw(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw std::invalid_argument("missing config key '" + key + "'");
    return it->second;
}

double RunConfig::number(const std::string& key) const {
    return parse_double(raw(key), "config key '" + key + "'");
}

double RunConfig::number_or(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
}

std::int64_t RunConfig::integer_or(const std::string& key, std::int64_t fallback) const {
    if (!has(key)) return fallback;
    const double v = number(key);
    const auto n = static_cast<std::int64_t>(v);
    if (static_cast<double>(n) != v)
        throw std::invalid_argument("config key '" + key + "' must be an integer, got " +
                                    raw(key));
    return n;
}

bool RunConfig::flag_or(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const std::string& v = raw(key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw std::invalid_argument("config key '" + key + "' must be a boolean, got '" + v + "'");
}

std::string RunConfig::string_or(const std::string& key, std::string fallback) const {
    return has(key) ? raw(key) : std::move(fallback);
}

std::vector<double> RunConfig::list_or(const std::string& key,
                                       std::vector<double> fallback) const {
    if (!has(key)) return fallback;
    std::vector<double> out;
    std::istringstream in(raw(key));
    std::string token;
    while (std::getline(in, token, ',')) {
        const std::string t = trim(token);
        if (t.empty())
            throw std::invalid_argument("config key '" + key + "': empty list entry");
        out.push_back(parse_double(t, "config key '" + key + "'"));
    }
    if (out.empty()) throw std::invalid_argument("config key '" + key + "': empty list");
    return out;
}

std::uint64_t RunConfig::seed_or_default() const {
    if (has("seed")) {
        const std::int64_t v = integer_or("seed", 0);
        if (v < 0) throw std::invalid_argument("seed must be >= 0");
        return static_cast<std::uint64_t>(v);
    }
    if (const char* env = std::getenv("CAPDYN_SEED")) {
        return static_cast<std::uint64_t>(
            parse_double(env, "CAPDYN_SEED environment variable"));
    }
    return default_seed;
}

void check_range(const std::string& name, double value, double lo, double hi,
                 bool lo_open, bool hi_open) {
    const bool lo_ok = lo_open ? value > lo : value >= lo;
    const bool hi_ok = hi_open ? value < hi : value <= hi;
    if (!lo_ok || !hi_ok) {
        std::ostringstream msg;
        msg << name << " = " << value << " outside " << (lo_open ? '(' : '[') << lo << ", "
            << hi << (hi_open ? ')' : ']');
        throw std::invalid_argument(msg.str());
    }
}

}  // namespace capdyn
