#include "antirips/complexes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "antirips/errors.hpp"

namespace antirips {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool canonical_less(const Simplex& a, const Simplex& b) {
    if (a.value != b.value) return a.value > b.value;
    if (a.verts.size() != b.verts.size()) return a.verts.size() < b.verts.size();
    return a.verts < b.verts;
}

// All cliques of size <= max_size reachable by ascending-index expansion.
// `accept` may veto a candidate set, which also prunes its supersets (valid
// for downward-closed families). `value` computes the stored scale.
template <typename Accept, typename Value>
void enumerate_downward_closed(int n, const std::vector<char>& adj, int max_size,
                               const Accept& accept, const Value& value,
                               std::vector<Simplex>& out) {
    std::vector<int> current;
    auto extend = [&](auto&& self, const std::vector<int>& cand) -> void {
        out.push_back({current, value(current)});
        if (static_cast<int>(current.size()) >= max_size) return;
        for (std::size_t idx = 0; idx < cand.size(); ++idx) {
            int w = cand[idx];
            current.push_back(w);
            if (accept(current)) {
                std::vector<int> next;
                for (std::size_t rest = idx + 1; rest < cand.size(); ++rest) {
                    int u = cand[rest];
                    if (adj[static_cast<std::size_t>(w) * n + u]) next.push_back(u);
                }
                self(self, next);
            }
            current.pop_back();
        }
    };
    for (int v = 0; v < n; ++v) {
        current.assign(1, v);
        std::vector<int> cand;
        for (int w = v + 1; w < n; ++w)
            if (adj[static_cast<std::size_t>(v) * n + w]) cand.push_back(w);
        extend(extend, cand);
    }
}

std::vector<char> far_adjacency(const FiniteMetricSpace& space, double r) {
    int n = space.size();
    std::vector<char> adj(static_cast<std::size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (at_least(space.d(i, j), r)) {
                adj[static_cast<std::size_t>(i) * n + j] = 1;
                adj[static_cast<std::size_t>(j) * n + i] = 1;
            }
    return adj;
}

double subset_spread(const FiniteMetricSpace& space, const std::vector<int>& verts) {
    if (verts.size() <= 1) return kInf;
    double best = kInf;
    for (std::size_t a = 0; a < verts.size(); ++a)
        for (std::size_t b = a + 1; b < verts.size(); ++b)
            best = std::min(best, space.d(verts[a], verts[b]));
    return best;
}

// Best bipartition value: max over nonempty splits of the min cross distance.
double best_bipartition(const FiniteMetricSpace& space, std::span<const int> verts) {
    std::size_t k = verts.size();
    if (k < 2) return -kInf;
    double best = -kInf;
    // Fix verts[0] on one side to enumerate each split once.
    for (std::uint32_t mask = 0; mask + 1 < (1u << (k - 1)); ++mask) {
        // Side B = indices 1..k-1 whose bit is clear; B nonempty by mask bound.
        double cross = kInf;
        for (std::size_t a = 0; a < k; ++a) {
            bool a_side = (a == 0) || ((mask >> (a - 1)) & 1);
            if (!a_side) continue;
            for (std::size_t b = 1; b < k; ++b) {
                if ((mask >> (b - 1)) & 1) continue;
                cross = std::min(cross, space.d(verts[a], verts[b]));
            }
        }
        best = std::max(best, cross);
    }
    return best;
}

double best_outside_witness(const FiniteMetricSpace& space, std::span<const int> verts) {
    int n = space.size();
    std::vector<char> in(static_cast<std::size_t>(n), 0);
    for (int v : verts) in[static_cast<std::size_t>(v)] = 1;
    double best = -kInf;
    for (int y = 0; y < n; ++y) {
        if (in[static_cast<std::size_t>(y)]) continue;
        double reach = kInf;
        for (int v : verts) reach = std::min(reach, space.d(y, v));
        best = std::max(best, reach);
    }
    return best;
}

}  // namespace

int FilteredComplex::dimension() const {
    int d = -1;
    for (const auto& s : simplices) d = std::max(d, s.dim());
    return d;
}

std::size_t FilteredComplex::count_in_dim(int k) const {
    std::size_t c = 0;
    for (const auto& s : simplices)
        if (s.dim() == k) ++c;
    return c;
}

bool FilteredComplex::contains(std::span<const int> verts) const {
    std::vector<int> key(verts.begin(), verts.end());
    std::sort(key.begin(), key.end());
    for (const auto& s : simplices)
        if (s.verts == key) return true;
    return false;
}

void FilteredComplex::sort_canonical() {
    std::sort(simplices.begin(), simplices.end(), canonical_less);
}

void FilteredComplex::validate_filtration() const {
    std::vector<std::pair<std::vector<int>, double>> seen;
    seen.reserve(simplices.size());
    double prev = kInf;
    for (const auto& s : simplices) {
        if (s.value > prev)
            fail(ErrorKind::InvalidFiltrationOrder, "values increase along the filtration");
        prev = s.value;
        if (s.verts.size() > 1) {
            std::vector<int> facet(s.verts.size() - 1);
            for (std::size_t drop = 0; drop < s.verts.size(); ++drop) {
                facet.clear();
                for (std::size_t i = 0; i < s.verts.size(); ++i)
                    if (i != drop) facet.push_back(s.verts[i]);
                bool found = false;
                for (const auto& [verts, value] : seen)
                    if (verts == facet) {
                        if (value < s.value)
                            fail(ErrorKind::InvalidFiltrationOrder,
                                 "face valued below its coface");
                        found = true;
                        break;
                    }
                if (!found)
                    fail(ErrorKind::InvalidFiltrationOrder, "face missing or after coface");
            }
        }
        seen.emplace_back(s.verts, s.value);
    }
}

Graph far_graph(const FiniteMetricSpace& space, double r) {
    if (r <= 0.0) fail(ErrorKind::InvalidArgument, "scale must be positive");
    int n = space.size();
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (at_least(space.d(i, j), r)) edges.emplace_back(i, j);
    return Graph(n, std::move(edges));
}

Graph near_graph(const FiniteMetricSpace& space, double r) {
    if (r <= 0.0) fail(ErrorKind::InvalidArgument, "scale must be positive");
    int n = space.size();
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!at_least(space.d(i, j), r)) edges.emplace_back(i, j);
    return Graph(n, std::move(edges));
}

FilteredComplex clique_complex(const Graph& g, int dim_cap) {
    if (dim_cap < 0) fail(ErrorKind::InvalidArgument, "dim_cap must be >= 0");
    FilteredComplex complex;
    complex.n_vertices = g.n;
    complex.dim_cap = dim_cap;
    auto adj = g.adjacency_matrix();
    enumerate_downward_closed(
        g.n, adj, dim_cap + 1, [](const std::vector<int>&) { return true; },
        [](const std::vector<int>&) { return kInf; }, complex.simplices);
    complex.sort_canonical();
    return complex;
}

FilteredComplex independence_complex(const Graph& g, int dim_cap) {
    if (dim_cap < 0) fail(ErrorKind::InvalidArgument, "dim_cap must be >= 0");
    FilteredComplex complex;
    complex.n_vertices = g.n;
    complex.dim_cap = dim_cap;
    auto adj = g.adjacency_matrix();
    for (auto& cell : adj) cell = !cell;
    for (int v = 0; v < g.n; ++v) adj[static_cast<std::size_t>(v) * g.n + v] = 0;
    enumerate_downward_closed(
        g.n, adj, dim_cap + 1, [](const std::vector<int>&) { return true; },
        [](const std::vector<int>&) { return kInf; }, complex.simplices);
    complex.sort_canonical();
    return complex;
}

FilteredComplex avr_complex(const FiniteMetricSpace& space, double r, int dim_cap) {
    if (r <= 0.0) fail(ErrorKind::InvalidArgument, "scale must be positive");
    if (dim_cap < 0) fail(ErrorKind::InvalidArgument, "dim_cap must be >= 0");
    FilteredComplex complex;
    complex.n_vertices = space.size();
    complex.dim_cap = dim_cap;
    complex.flavor = "avr";
    auto adj = far_adjacency(space, r);
    enumerate_downward_closed(
        space.size(), adj, dim_cap + 1, [](const std::vector<int>&) { return true; },
        [&](const std::vector<int>& verts) { return subset_spread(space, verts); },
        complex.simplices);
    complex.sort_canonical();
    return complex;
}

double avr_entry_value(const FiniteMetricSpace& space, std::span<const int> verts) {
    std::vector<int> v(verts.begin(), verts.end());
    return subset_spread(space, v);
}

double tavr_entry_value(const FiniteMetricSpace& space, std::span<const int> verts) {
    if (verts.size() <= 1) return kInf;
    return std::max(best_bipartition(space, verts), best_outside_witness(space, verts));
}

FilteredComplex tavr_complex(const FiniteMetricSpace& space, double r, int dim_cap) {
    if (r <= 0.0) fail(ErrorKind::InvalidArgument, "scale must be positive");
    if (dim_cap < 0) fail(ErrorKind::InvalidArgument, "dim_cap must be >= 0");
    int n = space.size();
    FilteredComplex complex;
    complex.n_vertices = n;
    complex.dim_cap = dim_cap;
    complex.flavor = "tavr";
    // 2-skeleton first: pairs are members iff far apart or both far from a
    // common witness. Larger sets are explored only through member faces,
    // which is sound because membership is downward closed.
    std::vector<char> pair_adj(static_cast<std::size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            std::vector<int> pair{i, j};
            if (at_least(tavr_entry_value(space, pair), r)) {
                pair_adj[static_cast<std::size_t>(i) * n + j] = 1;
                pair_adj[static_cast<std::size_t>(j) * n + i] = 1;
            }
        }
    enumerate_downward_closed(
        n, pair_adj, dim_cap + 1,
        [&](const std::vector<int>& verts) {
            return at_least(tavr_entry_value(space, verts), r);
        },
        [&](const std::vector<int>& verts) { return tavr_entry_value(space, verts); },
        complex.simplices);
    complex.sort_canonical();
    return complex;
}

FilteredComplex anti_filtration(const FiniteMetricSpace& space, int dim_cap,
                                ComplexFlavor flavor) {
    if (dim_cap < 0) fail(ErrorKind::InvalidArgument, "dim_cap must be >= 0");
    int n = space.size();
    FilteredComplex complex;
    complex.n_vertices = n;
    complex.dim_cap = dim_cap;
    if (flavor == ComplexFlavor::Avr) {
        complex.flavor = "avr";
        std::vector<char> adj(static_cast<std::size_t>(n) * n, 0);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (space.d(i, j) > 0.0) {
                    adj[static_cast<std::size_t>(i) * n + j] = 1;
                    adj[static_cast<std::size_t>(j) * n + i] = 1;
                }
        enumerate_downward_closed(
            n, adj, dim_cap + 1, [](const std::vector<int>&) { return true; },
            [&](const std::vector<int>& verts) { return subset_spread(space, verts); },
            complex.simplices);
    } else {
        complex.flavor = "tavr";
        std::vector<char> pair_adj(static_cast<std::size_t>(n) * n, 0);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                std::vector<int> pair{i, j};
                if (tavr_entry_value(space, pair) > 0.0) {
                    pair_adj[static_cast<std::size_t>(i) * n + j] = 1;
                    pair_adj[static_cast<std::size_t>(j) * n + i] = 1;
                }
            }
        enumerate_downward_closed(
            n, pair_adj, dim_cap + 1,
            [&](const std::vector<int>& verts) { return tavr_entry_value(space, verts) > 0.0; },
            [&](const std::vector<int>& verts) { return tavr_entry_value(space, verts); },
            complex.simplices);
    }
    complex.sort_canonical();
    return complex;
}

FilteredComplex slice_at(const FilteredComplex& filtered, double r) {
    FilteredComplex out;
    out.n_vertices = filtered.n_vertices;
    out.dim_cap = filtered.dim_cap;
    out.flavor = filtered.flavor;
    for (const auto& s : filtered.simplices)
        if (at_least(s.value, r)) out.simplices.push_back(s);
    out.sort_canonical();
    return out;
}

std::optional<int> is_cone(const FilteredComplex& complex) {
    std::vector<std::vector<int>> keys;
    keys.reserve(complex.simplices.size());
    for (const auto& s : complex.simplices) keys.push_back(s.verts);
    std::sort(keys.begin(), keys.end());
    auto present = [&](const std::vector<int>& verts) {
        return std::binary_search(keys.begin(), keys.end(), verts);
    };
    std::vector<char> has_vertex(static_cast<std::size_t>(complex.n_vertices), 0);
    for (const auto& s : complex.simplices)
        if (s.verts.size() == 1) has_vertex[static_cast<std::size_t>(s.verts[0])] = 1;
    for (int v = 0; v < complex.n_vertices; ++v) {
        if (!has_vertex[static_cast<std::size_t>(v)]) continue;
        bool ok = true;
        for (const auto& s : complex.simplices) {
            if (std::binary_search(s.verts.begin(), s.verts.end(), v)) continue;
            if (static_cast<int>(s.verts.size()) + 1 > complex.dim_cap + 1) continue;
            std::vector<int> joined = s.verts;
            joined.insert(std::lower_bound(joined.begin(), joined.end(), v), v);
            if (!present(joined)) {
                ok = false;
                break;
            }
        }
        if (ok) return v;
    }
    return std::nullopt;
}

long long euler_characteristic(const FilteredComplex& complex) {
    long long chi = 0;
    for (const auto& s : complex.simplices) chi += (s.dim() % 2 == 0) ? 1 : -1;
    return chi;
}

bool same_simplex_sets(const FilteredComplex& a, const FilteredComplex& b) {
    if (a.simplices.size() != b.simplices.size()) return false;
    std::vector<std::vector<int>> ka, kb;
    ka.reserve(a.simplices.size());
    kb.reserve(b.simplices.size());
    for (const auto& s : a.simplices) ka.push_back(s.verts);
    for (const auto& s : b.simplices) kb.push_back(s.verts);
    std::sort(ka.begin(), ka.end());
    std::sort(kb.begin(), kb.end());
    return ka == kb;
}

namespace {

nlohmann::json value_to_json(double v) {
    if (v == kInf) return "inf";
    if (v == -kInf) return "-inf";
    return v;
}

double value_from_json(const nlohmann::json& j) {
    if (j.is_string()) {
        if (j == "inf") return kInf;
        if (j == "-inf") return -kInf;
        fail(ErrorKind::ParseError, "bad value sentinel");
    }
    return j.get<double>();
}

}  // namespace

std::string complex_to_json(const FilteredComplex& complex) {
    nlohmann::json j;
    j["schema"] = "antirips.complex/1";
    j["flavor"] = complex.flavor;
    j["dim_cap"] = complex.dim_cap;
    j["vertices"] = complex.n_vertices;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& s : complex.simplices)
        arr.push_back({{"verts", s.verts}, {"value", value_to_json(s.value)}});
    j["simplices"] = std::move(arr);
    return j.dump(2);
}

FilteredComplex complex_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) fail(ErrorKind::ParseError, "bad complex json");
    FilteredComplex complex;
    complex.flavor = j.value("flavor", "fixed");
    complex.dim_cap = j.at("dim_cap").get<int>();
    complex.n_vertices = j.at("vertices").get<int>();
    for (const auto& s : j.at("simplices")) {
        Simplex simplex;
        simplex.verts = s.at("verts").get<std::vector<int>>();
        simplex.value = value_from_json(s.at("value"));
        std::sort(simplex.verts.begin(), simplex.verts.end());
        complex.simplices.push_back(std::move(simplex));
    }
    complex.sort_canonical();
    return complex;
}

}  // namespace antirips
