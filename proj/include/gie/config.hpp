#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace gie {

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flat JSON config: a single object of scalar values keyed by option name.
// Parse failures carry origin and line; structural problems name the key.
struct ConfigFile {
    std::map<std::string, nlohmann::json> entries;

    static ConfigFile load(const std::string& path);
    static ConfigFile parse_text(const std::string& text, const std::string& origin);
};

}  // namespace gie
