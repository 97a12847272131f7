#pragma once

#include <cstddef>
#include <string>

namespace qv::harness {

// Runtime knobs shared by the CLI and the scan driver.
struct Config {
    double tol_tail = 1e-12;
    std::size_t max_terms = 4096;
    std::size_t max_nodes = 65536;
};

// File format: one key=value per line; blank lines and '#' comments allowed.
// Recognized keys: tol_tail, max_terms, max_nodes.
Config load_config_file(const std::string& path);

// Applies a single "key=value" assignment; throws invalid_argument on
// unknown keys or malformed values.
void apply_config_entry(Config& cfg, const std::string& key, const std::string& value);

} // namespace qv::harness
