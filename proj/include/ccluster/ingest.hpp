#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccluster/csv.hpp"
#include "ccluster/numfmt.hpp"
#include "ccluster/order.hpp"

namespace ccluster {

// Column-name mapping from file headers to Order fields. Defaults match the
// common export schema this tool was written against.
struct ColumnSchema {
    std::string id = "origin";
    std::string vol = "vol_cbm";
    std::string weight = "weight_ton";
    std::string lon = "partner_longitude";
    std::string lat = "partner_latitude";
};

// Raised for unrecoverable ingest problems (missing columns, duplicate ids).
class IngestError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::optional<double> parse_double(const std::string& s) {
    std::string t = s;
    // trim surrounding whitespace
    auto issp = [](unsigned char c) { return std::isspace(c) != 0; };
    while (!t.empty() && issp(t.front())) t.erase(t.begin());
    while (!t.empty() && issp(t.back())) t.pop_back();
    if (t.empty()) return std::nullopt;
    double v = 0.0;
    auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc{} || res.ptr != t.data() + t.size()) return std::nullopt;
    if (!std::isfinite(v)) return std::nullopt;
    return v;
}

}  // namespace detail

// Parses the order table. Structural problems (missing column, duplicate id)
// are fatal; bad rows are collected into `rejected` and parsing continues.
// Row order is preserved; all parsed orders land in `eligible` — the
// oversized split happens afterwards in partition_oversized.
inline IngestResult parse_orders(std::istream& in, const ColumnSchema& schema = {},
                                 char delimiter = ',') {
    CsvReader reader(in, delimiter);
    std::vector<std::string> header;
    IngestResult result;
    if (!reader.next(header)) return result;  // empty stream: nothing to do

    // strip a UTF-8 BOM if present
    if (!header.empty() && header[0].size() >= 3 &&
        header[0].compare(0, 3, "\xEF\xBB\xBF") == 0) {
        header[0].erase(0, 3);
    }

    auto find_col = [&](const std::string& name) -> std::size_t {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end())
            throw IngestError("missing required column: " + name);
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t ci = find_col(schema.id);
    const std::size_t cv = find_col(schema.vol);
    const std::size_t cw = find_col(schema.weight);
    const std::size_t clon = find_col(schema.lon);
    const std::size_t clat = find_col(schema.lat);
    const std::size_t need = std::max({ci, cv, cw, clon, clat}) + 1;

    std::map<std::string, std::size_t> seen_ids;
    std::vector<std::string> duplicates;
    std::vector<std::string> fields;
    std::size_t row = 0;
    while (reader.next(fields)) {
        ++row;
        if (fields.size() == 1 && fields[0].empty()) continue;  // blank line
        if (fields.size() < need) {
            result.rejected.push_back({row, "too few fields"});
            continue;
        }
        Order o;
        o.id = fields[ci];
        if (o.id.empty()) {
            result.rejected.push_back({row, "empty id"});
            continue;
        }
        auto vol = detail::parse_double(fields[cv]);
        auto weight = detail::parse_double(fields[cw]);
        auto lon = detail::parse_double(fields[clon]);
        auto lat = detail::parse_double(fields[clat]);
        if (!vol) {
            result.rejected.push_back({row, "unparseable volume"});
            continue;
        }
        if (!weight) {
            result.rejected.push_back({row, "unparseable weight"});
            continue;
        }
        if (!lon || !lat) {
            result.rejected.push_back({row, "unparseable coordinate"});
            continue;
        }
        if (*vol < 0) {
            result.rejected.push_back({row, "negative volume"});
            continue;
        }
        if (*weight < 0) {
            result.rejected.push_back({row, "negative weight"});
            continue;
        }
        if (*lon < -180.0 || *lon > 180.0) {
            result.rejected.push_back({row, "longitude out of range"});
            continue;
        }
        if (*lat < -90.0 || *lat > 90.0) {
            result.rejected.push_back({row, "latitude out of range"});
            continue;
        }
        o.vol_cbm = *vol;
        o.weight_ton = *weight;
        o.lon = *lon;
        o.lat = *lat;
        auto [it, inserted] = seen_ids.emplace(o.id, row);
        if (!inserted) duplicates.push_back(o.id);
        result.eligible.push_back(std::move(o));
    }
    if (!duplicates.empty()) {
        std::ostringstream msg;
        msg << "duplicate order ids:";
        for (const auto& d : duplicates) msg << ' ' << d;
        throw IngestError(msg.str());
    }
    return result;
}

// Splits validated orders into clusterable and oversized per the pre-filter:
// an order is oversized when vol_cbm >= vol_cap OR weight_ton > weight_cap.
// Note the asymmetric comparators; both are deliberate.
inline IngestResult partition_oversized(const std::vector<Order>& orders,
                                        double vol_cap, double weight_cap) {
    IngestResult out;
    for (const Order& o : orders) {
        if (o.vol_cbm >= vol_cap || o.weight_ton > weight_cap)
            out.oversized.push_back(o);
        else
            out.eligible.push_back(o);
    }
    return out;
}

// Reason string for the oversized report column.
inline std::string oversized_reason(const Order& o, double vol_cap, double weight_cap) {
    std::string r;
    if (o.vol_cbm >= vol_cap) r = "volume_ge_cap";
    if (o.weight_ton > weight_cap) {
        if (!r.empty()) r += ';';
        r += "weight_gt_cap";
    }
    return r;
}

// oversized.csv: input columns plus a reason column.
inline std::string export_oversized_csv(const std::vector<Order>& oversized,
                                        double vol_cap, double weight_cap,
                                        const ColumnSchema& schema = {}) {
    std::string out = schema.id + ',' + schema.vol + ',' + schema.weight + ',' +
                      schema.lon + ',' + schema.lat + ",reason\n";
    for (const Order& o : oversized) {
        out += csv_escape(o.id);
        out += ',';
        out += format_double(o.vol_cbm);
        out += ',';
        out += format_double(o.weight_ton);
        out += ',';
        out += format_double(o.lon);
        out += ',';
        out += format_double(o.lat);
        out += ',';
        out += oversized_reason(o, vol_cap, weight_cap);
        out += '\n';
    }
    return out;
}

}  // namespace ccluster
