#include "gie/output.hpp"

#include <charconv>
#include <stdexcept>

#include "json.hpp"

namespace gie {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

std::string format_field(const FieldValue& v) {
    switch (v.index()) {
        case 0: return format_double(std::get<double>(v));
        case 1: return std::to_string(std::get<long long>(v));
        case 2: return std::to_string(std::get<unsigned long long>(v));
        default: return std::get<std::string>(v);
    }
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

const FieldValue& field_named(const OutputRecord& rec, const std::string& name, size_t hint) {
    if (hint < rec.fields.size() && rec.fields[hint].first == name) return rec.fields[hint].second;
    for (const auto& [k, v] : rec.fields)
        if (k == name) return v;
    throw std::logic_error("output record is missing column " + name);
}

}  // namespace

void emit_csv(std::ostream& os, const std::vector<std::string>& columns,
              const std::vector<OutputRecord>& rows) {
    for (size_t c = 0; c < columns.size(); ++c) {
        if (c) os << ',';
        os << csv_escape(columns[c]);
    }
    os << '\n';
    for (const OutputRecord& rec : rows) {
        for (size_t c = 0; c < columns.size(); ++c) {
            if (c) os << ',';
            os << csv_escape(format_field(field_named(rec, columns[c], c)));
        }
        os << '\n';
    }
}

void emit_json(std::ostream& os, const std::vector<OutputRecord>& rows) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const OutputRecord& rec : rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (const auto& [name, value] : rec.fields) {
            switch (value.index()) {
                case 0: obj[name] = std::get<double>(value); break;
                case 1: obj[name] = std::get<long long>(value); break;
                case 2: obj[name] = std::get<unsigned long long>(value); break;
                default: obj[name] = std::get<std::string>(value); break;
            }
        }
        arr.push_back(std::move(obj));
    }
    os << arr.dump() << '\n';
}

void emit_plot_data(std::ostream& os, const std::string& x, const std::string& y,
                    const std::vector<OutputRecord>& rows) {
    os << "# " << x << ',' << y << '\n';
    for (const OutputRecord& rec : rows)
        os << format_field(field_named(rec, x, 0)) << ','
           << format_field(field_named(rec, y, 1)) << '\n';
}

}  // namespace gie
