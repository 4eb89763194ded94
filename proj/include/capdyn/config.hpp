#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace capdyn {

/// Flat `key = value` run configuration with `#` comments. Keys come from a
/// fixed registry; unknown or duplicate keys are rejected. Values stay strings
/// until a typed getter pulls them out, so command-line flags can override
/// file entries uniformly.
class RunConfig {
public:
    RunConfig() = default;

    static RunConfig from_file(const std::filesystem::path& path);
    static const std::vector<std::string>& known_keys();

    /// Set (or override) a value; throws on unknown keys.
    void set(const std::string& key, std::string value);

    bool has(const std::string& key) const;
    const std::string& raw(const std::string& key) const;

    double number(const std::string& key) const;
    double number_or(const std::string& key, double fallback) const;
    std::int64_t integer_or(const std::string& key, std::int64_t fallback) const;
    bool flag_or(const std::string& key, bool fallback) const;
    std::string string_or(const std::string& key, std::string fallback) const;
    std::vector<double> list_or(const std::string& key, std::vector<double> fallback) const;

    /// --seed flag / `seed` key, then the CAPDYN_SEED environment variable,
    /// then a fixed default, in that order.
    std::uint64_t seed_or_default() const;

    static constexpr std::uint64_t default_seed = 12345;

private:
    std::map<std::string, std::string> values_;
};

/// Range check with a descriptive error: name = value outside [lo, hi].
void check_range(const std::string& name, double value, double lo, double hi,
                 bool lo_open = false, bool hi_open = false);

}  // namespace capdyn
