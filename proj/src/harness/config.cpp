#include "qv/harness/config.hpp"

#include <cctype>
#include <fstream>
#include <stdexcept>

namespace qv::harness {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_double(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad value for " + key + ": '" + value + "'");
    }
    if (used != value.size())
        throw std::invalid_argument("config: bad value for " + key + ": '" + value + "'");
    return v;
}

std::size_t parse_size(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(value, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad value for " + key + ": '" + value + "'");
    }
    if (used != value.size())
        throw std::invalid_argument("config: bad value for " + key + ": '" + value + "'");
    return static_cast<std::size_t>(v);
}

} // namespace

void apply_config_entry(Config& cfg, const std::string& key, const std::string& value) {
    if (key == "tol_tail") {
        double v = parse_double(key, value);
        if (!(v > 0.0)) throw std::invalid_argument("config: tol_tail must be positive");
        cfg.tol_tail = v;
    } else if (key == "max_terms") {
        cfg.max_terms = parse_size(key, value);
    } else if (key == "max_nodes") {
        cfg.max_nodes = parse_size(key, value);
    } else {
        throw std::invalid_argument("config: unknown key '" + key + "'");
    }
}

Config load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
    Config cfg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                        " is not key=value");
        apply_config_entry(cfg, trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
    return cfg;
}

} // namespace qv::harness
