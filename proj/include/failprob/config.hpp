#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace failprob {

// Flat key-value configuration with [section] headers. Order is preserved;
// re-serializing a parsed file reproduces it up to comments and blank lines.
class Config {
public:
    static Config parse(const std::string& text);
    static Config load(const std::string& path);
    std::string serialize() const;

    bool has(const std::string& section, const std::string& key) const;
    std::optional<std::string> find(const std::string& section, const std::string& key) const;

    std::string get(const std::string& section, const std::string& key) const;
    std::string get_or(const std::string& section, const std::string& key,
                       const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key) const;
    double get_double_or(const std::string& section, const std::string& key,
                         double fallback) const;
    long get_long_or(const std::string& section, const std::string& key, long fallback) const;
    bool get_bool_or(const std::string& section, const std::string& key, bool fallback) const;
    std::vector<double> get_doubles_or(const std::string& section, const std::string& key,
                                       const std::vector<double>& fallback) const;

    void set(const std::string& section, const std::string& key, const std::string& value);

    using Section = std::pair<std::string, std::vector<std::pair<std::string, std::string>>>;
    const std::vector<Section>& sections() const { return sections_; }

private:
    std::vector<Section> sections_;
};

}  // namespace failprob
