#pragma once

#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ccluster {

// Minimal RFC-4180-style reader: quoted fields, embedded delimiters/quotes/
// newlines inside quotes, configurable delimiter. CRLF and LF both accepted.
class CsvReader {
public:
    explicit CsvReader(std::istream& in, char delimiter = ',')
        : in_(in), delim_(delimiter) {}

    // Reads one record. Returns false on clean EOF.
    bool next(std::vector<std::string>& fields) {
        fields.clear();
        int c = in_.get();
        if (c == std::istream::traits_type::eof()) return false;
        std::string field;
        bool quoted = false;
        for (;; c = in_.get()) {
            if (c == std::istream::traits_type::eof()) {
                fields.push_back(std::move(field));
                return true;
            }
            char ch = static_cast<char>(c);
            if (quoted) {
                if (ch == '"') {
                    if (in_.peek() == '"') {
                        field += '"';
                        in_.get();
                    } else {
                        quoted = false;
                    }
                } else {
                    field += ch;
                }
            } else if (ch == '"' && field.empty()) {
                quoted = true;
            } else if (ch == delim_) {
                fields.push_back(std::move(field));
                field.clear();
            } else if (ch == '\n') {
                if (!field.empty() && field.back() == '\r') field.pop_back();
                fields.push_back(std::move(field));
                return true;
            } else {
                field += ch;
            }
        }
    }

private:
    std::istream& in_;
    char delim_;
};

// Quotes a field only when it needs it.
inline std::string csv_escape(const std::string& s, char delimiter = ',') {
    bool need = false;
    for (char c : s) {
        if (c == '"' || c == delimiter || c == '\n' || c == '\r') {
            need = true;
            break;
        }
    }
    if (!need) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

}  // namespace ccluster
