#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "ccluster/geo.hpp"
#include "ccluster/rng.hpp"

namespace ccluster {

struct KMeansConfig {
    std::size_t k = 2;
    std::uint64_t seed = 0;
    std::size_t max_iterations = 300;
    // Centroid-shift stopping threshold, relative to the coordinate span of
    // the input.
    double rel_tolerance = 1e-4;
};

struct KMeansResult {
    std::vector<std::size_t> labels;
    std::vector<Point2D> centroids;
    double inertia = 0.0;
    std::size_t iterations = 0;
    // Inertia recorded after each assignment step; non-increasing.
    std::vector<double> inertia_history;
};

// Within-cluster sum of squared distances.
inline double inertia(const std::vector<Point2D>& points,
                      const std::vector<std::size_t>& labels,
                      const std::vector<Point2D>& centroids) {
    double sum = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i)
        sum += squared_distance(points[i], centroids[labels[i]]);
    return sum;
}

// Nearest-centroid labels; ties go to the lowest centroid index.
inline std::vector<std::size_t> assign(const std::vector<Point2D>& points,
                                       const std::vector<Point2D>& centroids) {
    std::vector<std::size_t> labels(points.size(), 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
        double best = squared_distance(points[i], centroids[0]);
        std::size_t best_j = 0;
        for (std::size_t j = 1; j < centroids.size(); ++j) {
            const double d = squared_distance(points[i], centroids[j]);
            if (d < best) {
                best = d;
                best_j = j;
            }
        }
        labels[i] = best_j;
    }
    return labels;
}

// Mean of each cluster's members. An empty cluster keeps its previous
// centroid and is reported through `empty_out` when the caller asks.
inline std::vector<Point2D> update_centroids(const std::vector<Point2D>& points,
                                             const std::vector<std::size_t>& labels,
                                             std::size_t k,
                                             const std::vector<Point2D>& previous,
                                             std::vector<std::size_t>* empty_out = nullptr) {
    std::vector<Point2D> sums(k, Point2D{});
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
        sums[labels[i]].x += points[i].x;
        sums[labels[i]].y += points[i].y;
        ++counts[labels[i]];
    }
    std::vector<Point2D> out(k);
    for (std::size_t j = 0; j < k; ++j) {
        if (counts[j] > 0) {
            out[j] = {sums[j].x / static_cast<double>(counts[j]),
                      sums[j].y / static_cast<double>(counts[j])};
        } else {
            out[j] = previous[j];
            if (empty_out) empty_out->push_back(j);
        }
    }
    return out;
}

// k-means++ seeding: first centroid uniform over the points, each later one
// sampled with probability proportional to squared distance from the nearest
// chosen centroid. Fully determined by (points order, k, rng state). When all
// remaining squared distances are zero (duplicate-heavy input) the first
// not-yet-chosen index is taken instead.
inline std::vector<Point2D> seed_centroids(const std::vector<Point2D>& points,
                                           std::size_t k, SplitMix64& rng) {
    const std::size_t n = points.size();
    if (k == 0) throw std::invalid_argument("k must be positive");
    if (k > n) throw std::invalid_argument("k exceeds number of points");

    std::vector<Point2D> centroids;
    centroids.reserve(k);
    std::vector<bool> chosen(n, false);
    std::vector<double> min_d2(n, std::numeric_limits<double>::infinity());

    std::size_t idx = static_cast<std::size_t>(rng.next_below(n));
    centroids.push_back(points[idx]);
    chosen[idx] = true;

    for (std::size_t c = 1; c < k; ++c) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = squared_distance(points[i], centroids.back());
            if (d < min_d2[i]) min_d2[i] = d;
            total += min_d2[i];
        }
        std::size_t pick = n;
        if (total > 0.0) {
            const double u = rng.next_double() * total;
            double cum = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                cum += min_d2[i];
                if (cum > u) {
                    pick = i;
                    break;
                }
            }
            if (pick == n) {  // u landed on the last sliver of rounding error
                for (std::size_t i = n; i-- > 0;) {
                    if (min_d2[i] > 0.0) {
                        pick = i;
                        break;
                    }
                }
            }
        }
        if (pick == n) {
            for (std::size_t i = 0; i < n; ++i) {
                if (!chosen[i]) {
                    pick = i;
                    break;
                }
            }
            if (pick == n) pick = c % n;  // every point already chosen: all duplicates
        }
        centroids.push_back(points[pick]);
        chosen[pick] = true;
    }
    return centroids;
}

namespace detail {

inline double coordinate_span(const std::vector<Point2D>& points) {
    double min_x = points[0].x, max_x = points[0].x;
    double min_y = points[0].y, max_y = points[0].y;
    for (const Point2D& p : points) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    return std::max(max_x - min_x, max_y - min_y);
}

// If a cluster emptied, move its centroid onto the point farthest from its
// own centroid (lowest index on ties) and relabel that point.
inline void repair_empty_clusters(const std::vector<Point2D>& points,
                                  std::vector<std::size_t>& labels,
                                  std::vector<Point2D>& centroids,
                                  const std::vector<std::size_t>& empty) {
    for (std::size_t j : empty) {
        double best = -1.0;
        std::size_t best_i = 0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            const double d = squared_distance(points[i], centroids[labels[i]]);
            if (d > best) {
                best = d;
                best_i = i;
            }
        }
        centroids[j] = points[best_i];
        labels[best_i] = j;
    }
}

}  // namespace detail

// Lloyd iterations with k-means++ seeding. Deterministic in (points, config):
// a single initialization, fixed traversal order, splitmix64 stream.
inline KMeansResult lloyd(const std::vector<Point2D>& points, const KMeansConfig& cfg) {
    if (points.empty()) throw std::invalid_argument("lloyd: empty input");
    if (cfg.max_iterations == 0) throw std::invalid_argument("lloyd: max_iterations must be positive");
    const std::size_t k = cfg.k;

    SplitMix64 rng(cfg.seed);
    KMeansResult res;
    res.centroids = seed_centroids(points, k, rng);

    const double span = detail::coordinate_span(points);
    const double shift_tol = cfg.rel_tolerance * span;

    for (std::size_t iter = 1; iter <= cfg.max_iterations; ++iter) {
        res.labels = assign(points, res.centroids);
        res.iterations = iter;

        // detect emptied clusters before the mean update
        std::vector<std::size_t> counts(k, 0);
        for (std::size_t l : res.labels) ++counts[l];
        std::vector<std::size_t> empty;
        for (std::size_t j = 0; j < k; ++j)
            if (counts[j] == 0) empty.push_back(j);
        if (!empty.empty())
            detail::repair_empty_clusters(points, res.labels, res.centroids, empty);

        res.inertia_history.push_back(inertia(points, res.labels, res.centroids));

        std::vector<Point2D> next =
            update_centroids(points, res.labels, k, res.centroids);
        double shift = 0.0;
        for (std::size_t j = 0; j < k; ++j)
            shift = std::max(shift, std::sqrt(squared_distance(res.centroids[j], next[j])));
        res.centroids = std::move(next);
        if (shift <= shift_tol) break;
    }

    // final assignment against the converged centroids
    res.labels = assign(points, res.centroids);
    res.inertia = inertia(points, res.labels, res.centroids);
    res.inertia_history.push_back(res.inertia);
    return res;
}

}  // namespace ccluster
