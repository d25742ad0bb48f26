#include "failprob/config.hpp"

#include <fstream>
#include <sstream>

#include "failprob/errors.hpp"

namespace failprob {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

Config Config::parse(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw ConfigError("config line " + std::to_string(lineno) +
                                  ": unterminated section header");
            section = trim(t.substr(1, t.size() - 2));
            cfg.set(section, "", "");  // registers the section
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        cfg.set(section, key, value);
    }
    return cfg;
}

Config Config::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::string Config::serialize() const {
    std::ostringstream out;
    bool first = true;
    for (const auto& [name, entries] : sections_) {
        if (!first) out << "\n";
        first = false;
        if (!name.empty()) out << "[" << name << "]\n";
        for (const auto& [k, v] : entries)
            if (!k.empty()) out << k << " = " << v << "\n";
    }
    return out.str();
}

void Config::set(const std::string& section, const std::string& key, const std::string& value) {
    for (auto& [name, entries] : sections_) {
        if (name != section) continue;
        if (!key.empty()) {
            for (auto& [k, v] : entries) {
                if (k == key) {
                    v = value;
                    return;
                }
            }
            entries.emplace_back(key, value);
        }
        return;
    }
    sections_.push_back({section, {}});
    if (!key.empty()) sections_.back().second.emplace_back(key, value);
}

std::optional<std::string> Config::find(const std::string& section,
                                        const std::string& key) const {
    for (const auto& [name, entries] : sections_) {
        if (name != section) continue;
        for (const auto& [k, v] : entries)
            if (k == key) return v;
    }
    return std::nullopt;
}

bool Config::has(const std::string& section, const std::string& key) const {
    return find(section, key).has_value();
}

std::string Config::get(const std::string& section, const std::string& key) const {
    const auto v = find(section, key);
    if (!v) throw ConfigError("missing config entry [" + section + "] " + key);
    return *v;
}

std::string Config::get_or(const std::string& section, const std::string& key,
                           const std::string& fallback) const {
    return find(section, key).value_or(fallback);
}

double Config::get_double(const std::string& section, const std::string& key) const {
    const std::string v = get(section, key);
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config entry [" + section + "] " + key + " is not a number: " + v);
    }
}

double Config::get_double_or(const std::string& section, const std::string& key,
                             double fallback) const {
    return has(section, key) ? get_double(section, key) : fallback;
}

long Config::get_long_or(const std::string& section, const std::string& key,
                         long fallback) const {
    if (!has(section, key)) return fallback;
    const std::string v = get(section, key);
    try {
        std::size_t pos = 0;
        const long x = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config entry [" + section + "] " + key + " is not an integer: " + v);
    }
}

bool Config::get_bool_or(const std::string& section, const std::string& key,
                         bool fallback) const {
    if (!has(section, key)) return fallback;
    const std::string v = get(section, key);
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("config entry [" + section + "] " + key + " is not a boolean: " + v);
}

std::vector<double> Config::get_doubles_or(const std::string& section, const std::string& key,
                                           const std::vector<double>& fallback) const {
    if (!has(section, key)) return fallback;
    std::istringstream in(get(section, key));
    std::vector<double> out;
    std::string tok;
    while (std::getline(in, tok, ',')) {
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw ConfigError("config entry [" + section + "] " + key +
                              " is not a comma-separated number list");
        }
    }
    if (out.empty()) return fallback;
    return out;
}

}  // namespace failprob
