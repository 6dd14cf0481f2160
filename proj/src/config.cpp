#include "gie/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace gie {

ConfigFile ConfigFile::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str(), path);
}

ConfigFile ConfigFile::parse_text(const std::string& text, const std::string& origin) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        const size_t at = std::min(e.byte > 0 ? e.byte - 1 : 0, text.size());
        const long line = 1 + std::count(text.begin(), text.begin() + at, '\n');
        throw config_error(origin + ":" + std::to_string(line) + ": " + e.what());
    }
    if (!doc.is_object())
        throw config_error(origin + ": config must be a JSON object of flat keys");
    ConfigFile cf;
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        const nlohmann::json& v = it.value();
        if (!(v.is_number() || v.is_string() || v.is_boolean()))
            throw config_error(origin + ": config key \"" + it.key() +
                               "\" must be a scalar (number, string, or boolean)");
        cf.entries[it.key()] = v;
    }
    return cf;
}

}  // namespace gie
