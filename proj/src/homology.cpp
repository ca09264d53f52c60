#include "antirips/homology.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>

#include <json.hpp>

#include "antirips/errors.hpp"
#include "antirips/metric_space.hpp"

namespace antirips {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Simplices grouped by dimension with lookup of a facet's index in its layer.
struct Layers {
    std::vector<std::vector<std::vector<int>>> by_dim;  // [k][i] = vertex set

    int index_of(int k, const std::vector<int>& verts) const {
        const auto& layer = by_dim[static_cast<std::size_t>(k)];
        auto it = std::lower_bound(layer.begin(), layer.end(), verts);
        if (it == layer.end() || *it != verts) return -1;
        return static_cast<int>(it - layer.begin());
    }
};

Layers build_layers(const FilteredComplex& complex) {
    Layers layers;
    layers.by_dim.resize(static_cast<std::size_t>(std::max(0, complex.dimension() + 1)));
    for (const auto& s : complex.simplices)
        layers.by_dim[static_cast<std::size_t>(s.dim())].push_back(s.verts);
    for (auto& layer : layers.by_dim) std::sort(layer.begin(), layer.end());
    return layers;
}

std::vector<int> facet_rows(const Layers& layers, const std::vector<int>& verts) {
    int k = static_cast<int>(verts.size()) - 1;
    std::vector<int> rows;
    rows.reserve(verts.size());
    std::vector<int> facet;
    facet.reserve(verts.size() - 1);
    for (std::size_t drop = 0; drop < verts.size(); ++drop) {
        facet.clear();
        for (std::size_t i = 0; i < verts.size(); ++i)
            if (i != drop) facet.push_back(verts[i]);
        int row = layers.index_of(k - 1, facet);
        if (row < 0) fail(ErrorKind::InvalidArgument, "complex is not face-closed");
        rows.push_back(row);
    }
    std::sort(rows.begin(), rows.end());
    return rows;
}

// Rank of the dim-k boundary matrix over Z/2, sparse columns with pivot map.
int boundary_rank(const Layers& layers, int k) {
    if (k <= 0 || k >= static_cast<int>(layers.by_dim.size())) return 0;
    const auto& cols_src = layers.by_dim[static_cast<std::size_t>(k)];
    std::map<int, std::vector<int>> pivot_col;
    int rank = 0;
    for (const auto& verts : cols_src) {
        std::vector<int> col = facet_rows(layers, verts);
        while (!col.empty()) {
            int low = col.back();
            auto it = pivot_col.find(low);
            if (it == pivot_col.end()) break;
            // symmetric difference with the pivot column
            std::vector<int> merged;
            std::set_symmetric_difference(col.begin(), col.end(), it->second.begin(),
                                          it->second.end(), std::back_inserter(merged));
            col = std::move(merged);
        }
        if (!col.empty()) {
            pivot_col.emplace(col.back(), std::move(col));
            ++rank;
        }
    }
    return rank;
}

void check_max_dim(const FilteredComplex& complex, int max_dim) {
    if (max_dim < 0) fail(ErrorKind::InvalidArgument, "max_dim must be >= 0");
    if (max_dim > complex.dim_cap - 1)
        fail(ErrorKind::DimCapTooLow,
             "need dim_cap >= max_dim + 1, have dim_cap = " + std::to_string(complex.dim_cap));
}

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

void Barcode::sort_canonical() {
    std::sort(intervals.begin(), intervals.end(), [](const BarInterval& a, const BarInterval& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        if (a.birth != b.birth) return a.birth > b.birth;
        return a.death > b.death;
    });
}

std::vector<int> betti_numbers(const FilteredComplex& complex, int max_dim) {
    check_max_dim(complex, max_dim);
    Layers layers = build_layers(complex);
    std::vector<int> betti(static_cast<std::size_t>(max_dim) + 1, 0);
    std::vector<int> ranks(static_cast<std::size_t>(max_dim) + 2, 0);
    for (int k = 1; k <= max_dim + 1; ++k) ranks[static_cast<std::size_t>(k)] = boundary_rank(layers, k);
    for (int k = 0; k <= max_dim; ++k) {
        std::size_t nk = k < static_cast<int>(layers.by_dim.size())
                             ? layers.by_dim[static_cast<std::size_t>(k)].size()
                             : 0;
        betti[static_cast<std::size_t>(k)] = static_cast<int>(nk) -
                                             ranks[static_cast<std::size_t>(k)] -
                                             ranks[static_cast<std::size_t>(k) + 1];
    }
    return betti;
}

std::vector<int> betti_numbers_naive(const FilteredComplex& complex, int max_dim,
                                     std::size_t size_limit) {
    check_max_dim(complex, max_dim);
    if (complex.simplices.size() > size_limit)
        fail(ErrorKind::SizeLimitExceeded,
             "naive homology limited to " + std::to_string(size_limit) + " simplices");
    Layers layers = build_layers(complex);
    auto dense_rank = [&](int k) -> int {
        if (k <= 0 || k >= static_cast<int>(layers.by_dim.size())) return 0;
        const auto& cols_src = layers.by_dim[static_cast<std::size_t>(k)];
        std::size_t rows = layers.by_dim[static_cast<std::size_t>(k) - 1].size();
        std::size_t cols = cols_src.size();
        std::vector<std::vector<unsigned char>> m(rows, std::vector<unsigned char>(cols, 0));
        for (std::size_t c = 0; c < cols; ++c)
            for (int r : facet_rows(layers, cols_src[c])) m[static_cast<std::size_t>(r)][c] = 1;
        int rank = 0;
        std::size_t row = 0;
        for (std::size_t col = 0; col < cols && row < rows; ++col) {
            std::size_t pivot = rows;
            for (std::size_t r = row; r < rows; ++r)
                if (m[r][col]) {
                    pivot = r;
                    break;
                }
            if (pivot == rows) continue;
            std::swap(m[row], m[pivot]);
            for (std::size_t r = 0; r < rows; ++r)
                if (r != row && m[r][col])
                    for (std::size_t c2 = 0; c2 < cols; ++c2) m[r][c2] ^= m[row][c2];
            ++row;
            ++rank;
        }
        return rank;
    };
    std::vector<int> betti(static_cast<std::size_t>(max_dim) + 1, 0);
    for (int k = 0; k <= max_dim; ++k) {
        std::size_t nk = k < static_cast<int>(layers.by_dim.size())
                             ? layers.by_dim[static_cast<std::size_t>(k)].size()
                             : 0;
        betti[static_cast<std::size_t>(k)] =
            static_cast<int>(nk) - dense_rank(k) - dense_rank(k + 1);
    }
    return betti;
}

Barcode anti_persistence(const FilteredComplex& filtered, int max_dim) {
    check_max_dim(filtered, max_dim);
    filtered.validate_filtration();

    std::size_t m = filtered.simplices.size();
    // position of each simplex in the filtration order
    std::vector<std::vector<int>> keys(m);
    for (std::size_t i = 0; i < m; ++i) keys[i] = filtered.simplices[i].verts;
    std::vector<std::size_t> order(m);
    for (std::size_t i = 0; i < m; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
    auto index_of = [&](const std::vector<int>& verts) -> long {
        auto it = std::lower_bound(order.begin(), order.end(), verts,
                                   [&](std::size_t a, const std::vector<int>& v) {
                                       return keys[a] < v;
                                   });
        if (it == order.end() || keys[*it] != verts) return -1;
        return static_cast<long>(*it);
    };

    std::vector<std::vector<long>> reduced(m);
    std::vector<long> pivot_owner(m, -1);
    std::vector<char> destroyed(m, 0);

    Barcode barcode;
    std::vector<int> facet(0);
    for (std::size_t j = 0; j < m; ++j) {
        const Simplex& s = filtered.simplices[j];
        if (s.verts.size() == 1) continue;  // vertices create, never kill
        std::vector<long> col;
        col.reserve(s.verts.size());
        for (std::size_t drop = 0; drop < s.verts.size(); ++drop) {
            facet.clear();
            for (std::size_t i = 0; i < s.verts.size(); ++i)
                if (i != drop) facet.push_back(s.verts[i]);
            long row = index_of(facet);
            col.push_back(row);
        }
        std::sort(col.begin(), col.end());
        while (!col.empty()) {
            long low = col.back();
            long owner = pivot_owner[static_cast<std::size_t>(low)];
            if (owner < 0) break;
            std::vector<long> merged;
            std::set_symmetric_difference(col.begin(), col.end(),
                                          reduced[static_cast<std::size_t>(owner)].begin(),
                                          reduced[static_cast<std::size_t>(owner)].end(),
                                          std::back_inserter(merged));
            col = std::move(merged);
        }
        if (!col.empty()) {
            long low = col.back();
            pivot_owner[static_cast<std::size_t>(low)] = static_cast<long>(j);
            reduced[j] = std::move(col);
            destroyed[static_cast<std::size_t>(low)] = 1;
            destroyed[j] = 1;  // a killer is itself never a creator
            const Simplex& born = filtered.simplices[static_cast<std::size_t>(low)];
            int dim = born.dim();
            if (dim <= max_dim && born.value != s.value)
                barcode.intervals.push_back({dim, born.value, s.value});
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        if (destroyed[i]) continue;
        const Simplex& s = filtered.simplices[i];
        if (s.dim() <= max_dim) barcode.intervals.push_back({s.dim(), s.value, -kInf});
    }
    barcode.sort_canonical();
    return barcode;
}

int bars_alive_at(const Barcode& barcode, int dim, double r) {
    int count = 0;
    for (const auto& bar : barcode.intervals)
        if (bar.dim == dim && at_least(bar.birth, r) && !at_least(bar.death, r)) ++count;
    return count;
}

std::string barcode_to_json(const Barcode& barcode) {
    nlohmann::json j;
    j["schema"] = "antirips.barcode/1";
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& bar : barcode.intervals)
        arr.push_back({{"dim", bar.dim},
                       {"birth", value_to_json(bar.birth)},
                       {"death", value_to_json(bar.death)}});
    j["intervals"] = std::move(arr);
    return j.dump(2);
}

Barcode barcode_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) fail(ErrorKind::ParseError, "bad barcode json");
    Barcode barcode;
    for (const auto& bar : j.at("intervals"))
        barcode.intervals.push_back({bar.at("dim").get<int>(), value_from_json(bar.at("birth")),
                                     value_from_json(bar.at("death"))});
    barcode.sort_canonical();
    return barcode;
}

std::string barcode_to_csv(const Barcode& barcode) {
    std::ostringstream out;
    out << "dim,birth,death\n";
    for (const auto& bar : barcode.intervals) {
        out << bar.dim << ",";
        if (bar.birth == kInf) out << "inf";
        else if (bar.birth == -kInf) out << "-inf";
        else out << format_double(bar.birth);
        out << ",";
        if (bar.death == kInf) out << "inf";
        else if (bar.death == -kInf) out << "-inf";
        else out << format_double(bar.death);
        out << "\n";
    }
    return out.str();
}

}  // namespace antirips
