#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace ccluster {

// One sale order: unique id, size in cubic meters and tons, drop-off position.
struct Order {
    std::string id;
    double vol_cbm = 0.0;
    double weight_ton = 0.0;
    double lon = 0.0;
    double lat = 0.0;
};

struct RejectedRow {
    std::size_t row_index;  // 1-based data row index (header excluded)
    std::string reason;
};

// Result of ingesting an order table: every input row lands in exactly one of
// eligible / oversized / rejected.
struct IngestResult {
    std::vector<Order> eligible;
    std::vector<Order> oversized;
    std::vector<RejectedRow> rejected;
};

}  // namespace ccluster
