// Experiment configuration: flat "key = value" text with optional [section]
// headers (keys become section.key), or a JSON object as an alternative.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace seqemp {

class Config {
public:
    static Config parse(const std::string& text);
    static Config load(const std::string& path);

    [[nodiscard]] bool has(const std::string& key) const;

    [[nodiscard]] std::string get_string(const std::string& key) const;
    [[nodiscard]] double get_double(const std::string& key) const;
    [[nodiscard]] long get_int(const std::string& key) const;
    [[nodiscard]] std::uint64_t get_seed(const std::string& key) const;
    [[nodiscard]] bool get_bool(const std::string& key) const;
    [[nodiscard]] std::vector<double> get_double_list(const std::string& key) const;
    [[nodiscard]] std::vector<long> get_int_list(const std::string& key) const;

    template <typename T>
    [[nodiscard]] T get_or(const std::string& key, T fallback) const;

    void set(const std::string& key, const std::string& value) { values_[key] = value; }
    [[nodiscard]] const std::map<std::string, std::string>& entries() const { return values_; }

private:
    [[nodiscard]] const std::string& require(const std::string& key) const;
    std::map<std::string, std::string> values_;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace seqemp
