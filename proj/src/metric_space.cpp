#include "antirips/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <queue>
#include <random>
#include <sstream>

#include "antirips/parallel.hpp"

namespace antirips {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double clamped_arccos(double dot) { return std::acos(std::clamp(dot, -1.0, 1.0)); }

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

std::vector<std::string> default_labels(std::size_t n) {
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = "p" + std::to_string(i);
    return labels;
}

void check_square_finite(const std::vector<std::vector<double>>& matrix) {
    std::size_t n = matrix.size();
    for (const auto& row : matrix) {
        if (row.size() != n) fail(ErrorKind::InvalidArgument, "matrix is not square");
        for (double v : row)
            if (!std::isfinite(v)) fail(ErrorKind::InvalidArgument, "non-finite matrix entry");
    }
}

// Symmetrizes by averaging; rejects deviations beyond 1e-9.
std::vector<double> symmetrize(const std::vector<std::vector<double>>& matrix) {
    std::size_t n = matrix.size();
    std::vector<double> dist(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double dev = std::fabs(matrix[i][j] - matrix[j][i]);
            if (dev > 1e-9) {
                std::ostringstream msg;
                msg << "entries (" << i << "," << j << ") deviate by " << dev;
                fail(ErrorKind::NonSymmetric, msg.str());
            }
            double v = 0.5 * (matrix[i][j] + matrix[j][i]);
            dist[i * n + j] = v;
            dist[j * n + i] = v;
        }
    }
    return dist;
}

std::vector<int> unique_sorted(std::span<const int> subset, int n) {
    std::vector<int> idx(subset.begin(), subset.end());
    for (int i : idx)
        if (i < 0 || i >= n) fail(ErrorKind::InvalidArgument, "subset index out of range");
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    return idx;
}

}  // namespace

void FiniteMetricSpace::validate() const {
    std::size_t n = labels.size();
    if (dist.size() != n * n) fail(ErrorKind::InvalidArgument, "distance matrix size mismatch");
    for (std::size_t i = 0; i < n; ++i) {
        if (dist[i * n + i] != 0.0) fail(ErrorKind::InvalidArgument, "nonzero diagonal");
        for (std::size_t j = 0; j < n; ++j) {
            double v = dist[i * n + j];
            if (!std::isfinite(v)) fail(ErrorKind::InvalidArgument, "non-finite distance");
            if (v < 0.0) fail(ErrorKind::NegativeEntry, "negative distance");
            if (v != dist[j * n + i]) fail(ErrorKind::NonSymmetric, "stored matrix not symmetric");
        }
    }
    if (!ambient.empty()) {
        if (ambient.size() != n) fail(ErrorKind::InvalidArgument, "ambient size mismatch");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                double geo = clamped_arccos(dot(ambient[i], ambient[j]));
                if (std::fabs(geo - dist[i * n + j]) > 1e-12)
                    fail(ErrorKind::InvalidArgument, "ambient distances inconsistent");
            }
    }
}

FiniteMetricSpace from_distance_matrix(const std::vector<std::vector<double>>& matrix,
                                       bool strict_metric, std::vector<std::string> labels) {
    check_square_finite(matrix);
    std::size_t n = matrix.size();
    FiniteMetricSpace space;
    space.labels = labels.empty() ? default_labels(n) : std::move(labels);
    if (space.labels.size() != n) fail(ErrorKind::InvalidArgument, "label count mismatch");
    space.dist = symmetrize(matrix);
    for (std::size_t i = 0; i < n; ++i) {
        if (std::fabs(matrix[i][i]) > 1e-9) fail(ErrorKind::InvalidArgument, "nonzero diagonal");
        space.dist[i * n + i] = 0.0;
    }
    for (double v : space.dist)
        if (v < 0.0) fail(ErrorKind::NegativeEntry, "negative distance entry");
    if (strict_metric) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k)
                    if (space.dist[i * n + k] > space.dist[i * n + j] + space.dist[j * n + k] + 1e-9) {
                        std::ostringstream msg;
                        msg << "d(" << i << "," << k << ") > d(" << i << "," << j << ") + d("
                            << j << "," << k << ")";
                        fail(ErrorKind::TriangleViolation, msg.str());
                    }
    }
    return space;
}

FiniteMetricSpace from_similarity_matrix(const std::vector<std::vector<double>>& matrix,
                                         SimilarityMode mode, std::vector<std::string> labels) {
    check_square_finite(matrix);
    std::size_t n = matrix.size();
    std::vector<double> sim = symmetrize(matrix);
    double max_entry = -kInf;
    for (std::size_t i = 0; i < n; ++i) {
        sim[i * n + i] = matrix[i][i];
        for (std::size_t j = 0; j < n; ++j) max_entry = std::max(max_entry, sim[i * n + j]);
    }
    FiniteMetricSpace space;
    space.labels = labels.empty() ? default_labels(n) : std::move(labels);
    if (space.labels.size() != n) fail(ErrorKind::InvalidArgument, "label count mismatch");
    space.dist.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            double s = sim[i * n + j];
            double d = 0.0;
            switch (mode) {
                case SimilarityMode::Reciprocal:
                    if (s <= 0.0) fail(ErrorKind::ZeroSimilarity,
                                       "reciprocal mode requires strictly positive similarities");
                    d = 1.0 / s;
                    break;
                case SimilarityMode::ExpNegative:
                    d = std::exp(-s);
                    break;
                case SimilarityMode::MaxMinus:
                    d = max_entry - s;
                    break;
            }
            space.dist[i * n + j] = d;
        }
    return space;
}

FiniteMetricSpace space_from_points(std::vector<std::vector<double>> points, int sphere_dim) {
    std::size_t n = points.size();
    if (n == 0) fail(ErrorKind::InvalidArgument, "empty point set");
    std::size_t width = points[0].size();
    for (auto& p : points) {
        if (p.size() != width) fail(ErrorKind::InvalidArgument, "ragged point cloud");
        double norm = std::sqrt(dot(p, p));
        if (std::fabs(norm - 1.0) > 1e-9)
            fail(ErrorKind::InvalidArgument, "point is not a unit vector");
        for (double& c : p) c /= norm;
    }
    FiniteMetricSpace space;
    space.labels = default_labels(n);
    space.ambient = std::move(points);
    space.sphere_dim = sphere_dim;
    space.dist.assign(n * n, 0.0);
    parallel_for(n, [&](std::size_t i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            space.dist[i * n + j] = clamped_arccos(dot(space.ambient[i], space.ambient[j]));
        }
    });
    // Enforce exact symmetry; arccos(dot) is order independent, but keep the
    // lower triangle authoritative anyway.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) space.dist[j * n + i] = space.dist[i * n + j];
    return space;
}

FiniteMetricSpace sample_sphere(int n, int num_points, SphereSampling method, std::uint64_t seed) {
    if (n < 1) fail(ErrorKind::InvalidArgument, "sphere dimension must be >= 1");
    if (num_points < 1) fail(ErrorKind::InvalidArgument, "need at least one point");
    std::vector<std::vector<double>> pts;
    pts.reserve(static_cast<std::size_t>(num_points));
    switch (method) {
        case SphereSampling::Evenly: {
            if (n != 1)
                fail(ErrorKind::MethodDimensionMismatch, "evenly sampling requires n = 1");
            for (int k = 0; k < num_points; ++k) {
                double theta = 2.0 * std::numbers::pi * k / num_points;
                pts.push_back({std::cos(theta), std::sin(theta)});
            }
            break;
        }
        case SphereSampling::Fibonacci: {
            if (n != 2)
                fail(ErrorKind::MethodDimensionMismatch, "fibonacci sampling requires n = 2");
            // Golden-angle spiral, offset by half a band to avoid the poles.
            double dz = 2.0 / num_points;
            double dtheta = std::numbers::pi * (std::sqrt(5.0) + 1.0);
            for (int k = 0; k < num_points; ++k) {
                double z = -1.0 + (k + 0.5) * dz;
                double rad = std::sqrt(std::max(0.0, 1.0 - z * z));
                double theta = k * dtheta;
                pts.push_back({rad * std::cos(theta), rad * std::sin(theta), z});
            }
            break;
        }
        case SphereSampling::UniformRandom: {
            std::mt19937_64 rng(seed);
            std::normal_distribution<double> gauss(0.0, 1.0);
            for (int k = 0; k < num_points; ++k) {
                std::vector<double> p(static_cast<std::size_t>(n) + 1);
                double norm = 0.0;
                do {
                    norm = 0.0;
                    for (double& c : p) {
                        c = gauss(rng);
                        norm += c * c;
                    }
                    norm = std::sqrt(norm);
                } while (norm < 1e-12);
                for (double& c : p) c /= norm;
                pts.push_back(std::move(p));
            }
            break;
        }
    }
    return space_from_points(std::move(pts), n);
}

double spread(const FiniteMetricSpace& space, std::span<const int> subset) {
    if (subset.empty()) fail(ErrorKind::EmptySubset, "spread of an empty subset");
    std::vector<int> idx = unique_sorted(subset, space.size());
    if (idx.size() == 1) return kInf;
    double best = kInf;
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a + 1; b < idx.size(); ++b)
            best = std::min(best, space.d(idx[a], idx[b]));
    return best;
}

double diameter(const FiniteMetricSpace& space, std::span<const int> subset) {
    if (subset.empty()) fail(ErrorKind::EmptySubset, "diameter of an empty subset");
    std::vector<int> idx = unique_sorted(subset, space.size());
    double best = 0.0;
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a + 1; b < idx.size(); ++b)
            best = std::max(best, space.d(idx[a], idx[b]));
    return best;
}

double spread_all(const FiniteMetricSpace& space) {
    std::vector<int> all(static_cast<std::size_t>(space.size()));
    for (int i = 0; i < space.size(); ++i) all[static_cast<std::size_t>(i)] = i;
    return spread(space, all);
}

double diameter_all(const FiniteMetricSpace& space) {
    std::vector<int> all(static_cast<std::size_t>(space.size()));
    for (int i = 0; i < space.size(); ++i) all[static_cast<std::size_t>(i)] = i;
    return diameter(space, all);
}

int packing_number_exact(const FiniteMetricSpace& space, double r, int exact_limit) {
    if (r <= 0.0) fail(ErrorKind::InvalidArgument, "packing scale must be positive");
    int n = space.size();
    if (n > exact_limit) {
        std::ostringstream msg;
        msg << n << " points exceeds the exact search limit " << exact_limit;
        fail(ErrorKind::SizeLimitExceeded, msg.str());
    }
    if (n == 0) return 0;
    std::vector<std::pair<int, int>> far;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (at_least(space.d(i, j), r)) far.emplace_back(i, j);
    return std::max(1, max_clique_size(Graph(n, std::move(far))));
}

int packing_number_greedy(const FiniteMetricSpace& space, double r, std::span<const int> order) {
    if (r <= 0.0) fail(ErrorKind::InvalidArgument, "packing scale must be positive");
    int n = space.size();
    std::vector<int> scan;
    if (order.empty()) {
        scan.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) scan[static_cast<std::size_t>(i)] = i;
    } else {
        scan.assign(order.begin(), order.end());
        for (int i : scan)
            if (i < 0 || i >= n) fail(ErrorKind::InvalidArgument, "order index out of range");
    }
    std::vector<int> chosen;
    for (int i : scan) {
        bool ok = true;
        for (int c : chosen)
            if (c == i || !at_least(space.d(i, c), r)) {
                ok = false;
                break;
            }
        if (ok) chosen.push_back(i);
    }
    return static_cast<int>(chosen.size());
}

std::vector<int> epsilon_net(const FiniteMetricSpace& space, double eps) {
    if (eps <= 0.0) fail(ErrorKind::InvalidArgument, "eps must be positive");
    int n = space.size();
    if (n == 0) return {};
    std::vector<int> net{0};
    std::vector<double> mind(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) mind[static_cast<std::size_t>(i)] = space.d(i, 0);
    while (true) {
        int far = 0;
        for (int i = 1; i < n; ++i)
            if (mind[static_cast<std::size_t>(i)] > mind[static_cast<std::size_t>(far)]) far = i;
        if (mind[static_cast<std::size_t>(far)] < eps) break;
        net.push_back(far);
        for (int i = 0; i < n; ++i)
            mind[static_cast<std::size_t>(i)] =
                std::min(mind[static_cast<std::size_t>(i)], space.d(i, far));
    }
    std::sort(net.begin(), net.end());
    return net;
}

SimplexConstants simplex_constants(int n) {
    if (n < 1) fail(ErrorKind::InvalidArgument, "simplex constants need n >= 1");
    SimplexConstants c;
    c.n = n;
    c.r_n = std::acos(-1.0 / (n + 1));
    if (n % 2 == 1) {
        c.s_n = std::acos(-static_cast<double>(n + 1) / (n + 3));
    } else {
        c.s_n = std::acos(-std::sqrt(static_cast<double>(n) / (n + 4)));
    }
    return c;
}

FiniteMetricSpace graph_metric(const Graph& g) {
    int n = g.n;
    auto adj = g.adjacency_lists();
    FiniteMetricSpace space;
    space.labels = default_labels(static_cast<std::size_t>(n));
    space.dist.assign(static_cast<std::size_t>(n) * n, 0.0);
    std::vector<int> depth(static_cast<std::size_t>(n));
    for (int s = 0; s < n; ++s) {
        std::fill(depth.begin(), depth.end(), -1);
        std::queue<int> q;
        q.push(s);
        depth[static_cast<std::size_t>(s)] = 0;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int w : adj[static_cast<std::size_t>(v)])
                if (depth[static_cast<std::size_t>(w)] < 0) {
                    depth[static_cast<std::size_t>(w)] = depth[static_cast<std::size_t>(v)] + 1;
                    q.push(w);
                }
        }
        for (int t = 0; t < n; ++t) {
            if (depth[static_cast<std::size_t>(t)] < 0)
                fail(ErrorKind::DisconnectedGraph, "graph metric requires a connected graph");
            space.dist[static_cast<std::size_t>(s) * n + t] = depth[static_cast<std::size_t>(t)];
        }
    }
    return space;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            cells.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    cells.push_back(cur);
    return cells;
}

bool parse_double(const std::string& s, double* out) {
    const char* begin = s.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    while (end && *end == ' ') ++end;
    if (end == begin || (end && *end != '\0')) return false;
    *out = v;
    return true;
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::ParseError, "cannot open " + path);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        rows.push_back(split_csv_line(line));
    }
    return rows;
}

}  // namespace

FiniteMetricSpace read_distance_csv(const std::string& path, bool strict_metric) {
    auto rows = read_csv(path);
    if (rows.empty()) fail(ErrorKind::ParseError, "empty distance csv");
    std::vector<std::string> labels;
    std::size_t start = 0;
    double probe;
    bool header = false;
    for (const auto& cell : rows[0])
        if (!parse_double(cell, &probe)) {
            header = true;
            break;
        }
    if (header) {
        labels = rows[0];
        start = 1;
    }
    std::vector<std::vector<double>> matrix;
    for (std::size_t r = start; r < rows.size(); ++r) {
        std::vector<double> row;
        row.reserve(rows[r].size());
        for (const auto& cell : rows[r]) {
            double v;
            if (!parse_double(cell, &v)) fail(ErrorKind::ParseError, "bad number: " + cell);
            row.push_back(v);
        }
        matrix.push_back(std::move(row));
    }
    return from_distance_matrix(matrix, strict_metric, std::move(labels));
}

void write_distance_csv(const FiniteMetricSpace& space, const std::string& path,
                        bool with_labels) {
    std::ofstream out(path);
    if (!out) fail(ErrorKind::ParseError, "cannot write " + path);
    std::size_t n = space.labels.size();
    if (with_labels) {
        for (std::size_t i = 0; i < n; ++i) out << (i ? "," : "") << space.labels[i];
        out << "\n";
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            out << (j ? "," : "") << format_double(space.dist[i * n + j]);
        out << "\n";
    }
}

std::vector<std::vector<double>> read_points_csv(const std::string& path) {
    auto rows = read_csv(path);
    std::vector<std::vector<double>> pts;
    for (const auto& row : rows) {
        std::vector<double> p;
        p.reserve(row.size());
        for (const auto& cell : row) {
            double v;
            if (!parse_double(cell, &v)) fail(ErrorKind::ParseError, "bad number: " + cell);
            p.push_back(v);
        }
        pts.push_back(std::move(p));
    }
    return pts;
}

void write_points_csv(const std::vector<std::vector<double>>& points, const std::string& path) {
    std::ofstream out(path);
    if (!out) fail(ErrorKind::ParseError, "cannot write " + path);
    for (const auto& p : points) {
        for (std::size_t k = 0; k < p.size(); ++k) out << (k ? "," : "") << format_double(p[k]);
        out << "\n";
    }
}

}  // namespace antirips
