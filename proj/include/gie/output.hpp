#pragma once

#include <concepts>
#include <ostream>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

namespace gie {

// shortest decimal form that round-trips to the same double
std::string format_double(double v);

using FieldValue = std::variant<double, long long, unsigned long long, std::string>;

struct OutputRecord {
    std::vector<std::pair<std::string, FieldValue>> fields;

    OutputRecord& add(std::string name, double v) {
        fields.emplace_back(std::move(name), v);
        return *this;
    }
    OutputRecord& add(std::string name, std::string v) {
        fields.emplace_back(std::move(name), std::move(v));
        return *this;
    }
    OutputRecord& add(std::string name, const char* v) {
        return add(std::move(name), std::string(v));
    }
    template <std::integral T>
    OutputRecord& add(std::string name, T v) {
        if constexpr (std::is_signed_v<T>)
            fields.emplace_back(std::move(name), static_cast<long long>(v));
        else
            fields.emplace_back(std::move(name), static_cast<unsigned long long>(v));
        return *this;
    }
};

// header + one line per record, RFC-4180 quoting, LF line ends; every record
// must carry exactly the given columns in order
void emit_csv(std::ostream& os, const std::vector<std::string>& columns,
              const std::vector<OutputRecord>& rows);

// array of objects with stable key order (insertion order), compact, LF-terminated
void emit_json(std::ostream& os, const std::vector<OutputRecord>& rows);

// gnuplot-ready two-column form: "# x,y" comment header, then value pairs
void emit_plot_data(std::ostream& os, const std::string& x, const std::string& y,
                    const std::vector<OutputRecord>& rows);

}  // namespace gie
