#include "seqemp/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace seqemp {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

void flatten_json(const nlohmann::json& j, const std::string& prefix,
                  std::map<std::string, std::string>& out) {
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) {
            flatten_json(value, prefix.empty() ? key : prefix + "." + key, out);
        }
    } else if (j.is_array()) {
        std::string joined;
        for (const auto& v : j) {
            if (!joined.empty()) joined += ",";
            joined += v.is_string() ? v.get<std::string>() : v.dump();
        }
        out[prefix] = joined;
    } else if (j.is_string()) {
        out[prefix] = j.get<std::string>();
    } else {
        out[prefix] = j.dump();
    }
}

} // namespace

Config Config::parse(const std::string& text) {
    Config cfg;
    const std::string body = trim(text);
    if (!body.empty() && body.front() == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(body);
        } catch (const nlohmann::json::parse_error& e) {
            throw ConfigError(std::string("config: invalid JSON: ") + e.what());
        }
        flatten_json(j, "", cfg.values_);
        return cfg;
    }
    std::istringstream is(text);
    std::string line, section;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[' && t.back() == ']') {
            section = trim(t.substr(1, t.size() - 2));
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected 'key = value'");
        }
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        }
        cfg.values_[section.empty() ? key : section + "." + key] = value;
    }
    return cfg;
}

Config Config::load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
}

bool Config::has(const std::string& key) const { return values_.count(key) > 0; }

const std::string& Config::require(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) {
        throw ConfigError("config: missing required field '" + key + "'");
    }
    return it->second;
}

std::string Config::get_string(const std::string& key) const { return require(key); }

double Config::get_double(const std::string& key) const {
    const std::string& v = require(key);
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config: field '" + key + "' is not a number: '" + v + "'");
    }
}

long Config::get_int(const std::string& key) const {
    const std::string& v = require(key);
    try {
        std::size_t pos = 0;
        const long x = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config: field '" + key + "' is not an integer: '" + v + "'");
    }
}

std::uint64_t Config::get_seed(const std::string& key) const {
    const std::string& v = require(key);
    try {
        std::size_t pos = 0;
        const std::uint64_t x = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config: field '" + key + "' is not a seed: '" + v + "'");
    }
}

bool Config::get_bool(const std::string& key) const {
    const std::string& v = require(key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("config: field '" + key + "' is not a boolean: '" + v + "'");
}

std::vector<double> Config::get_double_list(const std::string& key) const {
    const std::string& v = require(key);
    std::vector<double> out;
    std::istringstream is(v);
    std::string item;
    while (std::getline(is, item, ',')) {
        const std::string t = trim(item);
        if (t.empty()) continue;
        try {
            out.push_back(std::stod(t));
        } catch (const std::exception&) {
            throw ConfigError("config: field '" + key + "' has a non-numeric entry '" + t + "'");
        }
    }
    if (out.empty()) throw ConfigError("config: field '" + key + "' is an empty list");
    return out;
}

std::vector<long> Config::get_int_list(const std::string& key) const {
    std::vector<long> out;
    for (double v : get_double_list(key)) out.push_back(static_cast<long>(v));
    return out;
}

template <typename T>
T Config::get_or(const std::string& key, T fallback) const {
    if (!has(key)) return fallback;
    if constexpr (std::is_same_v<T, std::string>) return get_string(key);
    else if constexpr (std::is_same_v<T, bool>) return get_bool(key);
    else if constexpr (std::is_same_v<T, double>) return get_double(key);
    else if constexpr (std::is_same_v<T, long>) return get_int(key);
    else if constexpr (std::is_same_v<T, int>) return static_cast<int>(get_int(key));
    else if constexpr (std::is_same_v<T, std::uint64_t>) return get_seed(key);
    else static_assert(!sizeof(T), "unsupported config type");
}

template std::string Config::get_or(const std::string&, std::string) const;
template bool Config::get_or(const std::string&, bool) const;
template double Config::get_or(const std::string&, double) const;
template long Config::get_or(const std::string&, long) const;
template int Config::get_or(const std::string&, int) const;
template std::uint64_t Config::get_or(const std::string&, std::uint64_t) const;

} // namespace seqemp
