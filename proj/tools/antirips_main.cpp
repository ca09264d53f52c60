// Command-line front end: data ingestion, pipeline commands, and experiment
// reports. All angles and scales are radians; outputs are deterministic for
// fixed inputs, seed, and flags.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "antirips/chromatic.hpp"
#include "antirips/complexes.hpp"
#include "antirips/errors.hpp"
#include "antirips/homology.hpp"
#include "antirips/metric_space.hpp"
#include "antirips/parallel.hpp"
#include "antirips/sphere_maps.hpp"
#include "antirips/transport.hpp"

namespace {

using namespace antirips;

constexpr double kPi = std::numbers::pi;

struct InputOptions {
    std::string matrix_path;
    std::string points_path;
    bool strict_metric = false;
    int sphere_dim = 0;
    int count = 0;
    bool evenly = false;
    bool fibonacci = false;
    bool random = false;
    std::uint64_t seed = 42;
};

void add_input_flags(CLI::App* cmd, InputOptions* in) {
    cmd->add_option("--matrix", in->matrix_path, "square distance matrix CSV");
    cmd->add_flag("--strict-metric", in->strict_metric, "validate the triangle inequality");
    cmd->add_option("--points", in->points_path, "unit point cloud CSV (one vector per row)");
    cmd->add_option("--sphere", in->sphere_dim, "sample the n-sphere instead of reading a file");
    cmd->add_option("--n", in->count, "number of sample points");
    cmd->add_flag("--evenly", in->evenly, "evenly spaced circle sample (n=1)");
    cmd->add_flag("--fibonacci", in->fibonacci, "fibonacci lattice sample (n=2)");
    cmd->add_flag("--random", in->random, "uniform random sample");
    cmd->add_option("--seed", in->seed, "RNG seed (default 42)");
}

FiniteMetricSpace load_space(const InputOptions& in) {
    if (!in.matrix_path.empty()) return read_distance_csv(in.matrix_path, in.strict_metric);
    if (!in.points_path.empty()) {
        auto pts = read_points_csv(in.points_path);
        if (pts.empty()) fail(ErrorKind::ParseError, "empty point cloud");
        int dim = static_cast<int>(pts[0].size()) - 1;
        return space_from_points(std::move(pts), dim);
    }
    if (in.sphere_dim >= 1) {
        SphereSampling method = SphereSampling::UniformRandom;
        if (in.evenly) method = SphereSampling::Evenly;
        if (in.fibonacci) method = SphereSampling::Fibonacci;
        return sample_sphere(in.sphere_dim, in.count, method, in.seed);
    }
    fail(ErrorKind::InvalidArgument, "no input given: use --matrix, --points, or --sphere");
}

void emit(const std::string& text, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream out(output_path);
    if (!out) fail(ErrorKind::ParseError, "cannot write " + output_path);
    out << text;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::ParseError, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int run(int argc, char** argv) {
    CLI::App app{"anti-Vietoris-Rips toolkit"};
    app.require_subcommand(1);

    int threads = 0;
    if (const char* env = std::getenv("ANTIRIPS_THREADS")) threads = std::atoi(env);
    app.add_option("--threads", threads, "cap on internal worker threads");

    // constants
    auto* constants_cmd = app.add_subcommand("constants", "simplex constants r_n, s_n");
    int n_max = 100;
    std::string constants_out, constants_format = "csv";
    constants_cmd->add_option("--n-max", n_max, "largest n (default 100)");
    constants_cmd->add_option("--output", constants_out, "output path (default stdout)");
    constants_cmd->add_option("--format", constants_format, "csv|json");

    // complex
    auto* complex_cmd = app.add_subcommand("complex", "build an anti-VR or total anti-VR complex");
    InputOptions complex_in;
    add_input_flags(complex_cmd, &complex_in);
    double complex_r = 0.0;
    int complex_dim_cap = 8;
    std::string complex_flavor = "avr", complex_out;
    complex_cmd->add_option("--r", complex_r, "scale parameter (radians)")->required();
    complex_cmd->add_option("--flavor", complex_flavor, "avr|tavr");
    complex_cmd->add_option("--dim-cap", complex_dim_cap, "simplex dimension cap (default 8)");
    complex_cmd->add_option("--output", complex_out, "output path");

    // persistence
    auto* pers_cmd = app.add_subcommand("persistence", "decreasing-scale persistence barcode");
    InputOptions pers_in;
    add_input_flags(pers_cmd, &pers_in);
    int pers_dim_cap = 4, pers_max_dim = 1;
    std::string pers_flavor = "avr", pers_out, pers_format = "json";
    pers_cmd->add_option("--flavor", pers_flavor, "avr|tavr");
    pers_cmd->add_option("--dim-cap", pers_dim_cap, "dimension cap (default 4)");
    pers_cmd->add_option("--max-dim", pers_max_dim, "largest homology dimension (default 1)");
    pers_cmd->add_option("--output", pers_out, "output path");
    pers_cmd->add_option("--format", pers_format, "json|csv");

    // betti
    auto* betti_cmd = app.add_subcommand("betti", "Betti numbers of the complex at scale r");
    InputOptions betti_in;
    add_input_flags(betti_cmd, &betti_in);
    double betti_r = 0.0;
    int betti_dim_cap = 4, betti_max_dim = 1;
    std::string betti_flavor = "avr", betti_out, betti_format = "csv";
    betti_cmd->add_option("--r", betti_r, "scale parameter (radians)")->required();
    betti_cmd->add_option("--flavor", betti_flavor, "avr|tavr");
    betti_cmd->add_option("--dim-cap", betti_dim_cap, "dimension cap (default 4)");
    betti_cmd->add_option("--max-dim", betti_max_dim, "largest homology dimension");
    betti_cmd->add_option("--output", betti_out, "output path");
    betti_cmd->add_option("--format", betti_format, "csv|json");

    // transport
    auto* transport_cmd = app.add_subcommand("transport", "exact 1-Wasserstein distance");
    std::string mu_path, nu_path, metric_path, sigma_path, transport_out;
    transport_cmd->add_option("--mu", mu_path, "measure JSON")->required();
    transport_cmd->add_option("--nu", nu_path, "measure JSON")->required();
    transport_cmd->add_option("--metric", metric_path, "distance matrix CSV")->required();
    transport_cmd->add_option("--extend", sigma_path, "partial plan JSON to extend instead");
    transport_cmd->add_option("--output", transport_out, "output path");

    // maps
    auto* maps_cmd = app.add_subcommand("maps", "measure-space map pipelines");
    maps_cmd->require_subcommand(1);
    auto* lift_cmd = maps_cmd->add_subcommand("lift-loop", "loop projection and covering lift");
    int lift_sphere = 1, lift_resolution = 64;
    double lift_r = 2.5;
    bool lift_doubled = false;
    std::string lift_map = "identity", lift_out, lift_loop_out;
    lift_cmd->add_option("--sphere", lift_sphere, "sphere dimension (default 1)");
    lift_cmd->add_option("--r", lift_r, "flashlight scale (default 2.5)");
    lift_cmd->add_option("--resolution", lift_resolution, "loop resolution (default 64)");
    lift_cmd->add_option("--map", lift_map, "identity|snap:<N> pointwise map");
    lift_cmd->add_flag("--doubled", lift_doubled, "traverse the projected loop twice");
    lift_cmd->add_option("--output", lift_out, "output path");
    lift_cmd->add_option("--loop-out", lift_loop_out, "also write the sampled loop JSON");

    auto* cover_cmd = maps_cmd->add_subcommand("cover-dim", "covering-dimension experiment on S^1");
    int cover_n = 360;
    double cover_r = 2.5, cover_eps = 0.3;
    std::string cover_out;
    cover_cmd->add_option("--n", cover_n, "circle sample size (default 360)");
    cover_cmd->add_option("--r", cover_r, "scale in (2pi/3, pi)");
    cover_cmd->add_option("--eps", cover_eps, "cover diameter budget");
    cover_cmd->add_option("--output", cover_out, "output path");

    // color
    auto* color_cmd = app.add_subcommand("color", "Borsuk graph colorings");
    color_cmd->require_subcommand(1);
    auto* faces_cmd = color_cmd->add_subcommand("faces", "simplex face coloring");
    InputOptions faces_in;
    add_input_flags(faces_cmd, &faces_in);
    double faces_alpha = 0.0;
    std::string faces_out;
    faces_cmd->add_option("--alpha", faces_alpha, "Borsuk scale (radians)")->required();
    faces_cmd->add_option("--output", faces_out, "output path");

    auto* greedy_cmd = color_cmd->add_subcommand("greedy", "greedy coloring of the far graph");
    InputOptions greedy_in;
    add_input_flags(greedy_cmd, &greedy_in);
    double greedy_r = 0.0;
    bool greedy_degree = false;
    std::string greedy_out;
    greedy_cmd->add_option("--r", greedy_r, "far-graph scale")->required();
    greedy_cmd->add_flag("--degree-order", greedy_degree, "scan vertices by descending degree");
    greedy_cmd->add_option("--output", greedy_out, "output path");

    auto* exact_cmd = color_cmd->add_subcommand("exact", "exact chromatic number of the far graph");
    InputOptions exact_in;
    add_input_flags(exact_cmd, &exact_in);
    double exact_r = 0.0;
    int exact_limit = 40;
    std::string exact_out;
    exact_cmd->add_option("--r", exact_r, "far-graph scale")->required();
    exact_cmd->add_option("--limit", exact_limit, "vertex limit (default 40)");
    exact_cmd->add_option("--output", exact_out, "output path");

    // homsearch
    auto* hom_cmd = app.add_subcommand("homsearch", "graph homomorphism search");
    InputOptions hom_g_in, hom_h_in;
    double hom_g_r = 0.0, hom_h_r = 0.0;
    int hom_g_complete = 0, hom_h_complete = 0;
    long hom_budget = 10000;
    std::string hom_out;
    hom_cmd->add_option("--g-matrix", hom_g_in.matrix_path, "domain distance matrix CSV");
    hom_cmd->add_option("--g-sphere", hom_g_in.sphere_dim, "domain: sample the n-sphere");
    hom_cmd->add_option("--g-n", hom_g_in.count, "domain sample size");
    hom_cmd->add_flag("--g-evenly", hom_g_in.evenly, "domain evenly sample");
    hom_cmd->add_flag("--g-fibonacci", hom_g_in.fibonacci, "domain fibonacci sample");
    hom_cmd->add_option("--g-r", hom_g_r, "domain far-graph scale");
    hom_cmd->add_option("--g-complete", hom_g_complete, "domain K_k");
    hom_cmd->add_option("--h-matrix", hom_h_in.matrix_path, "codomain distance matrix CSV");
    hom_cmd->add_option("--h-sphere", hom_h_in.sphere_dim, "codomain: sample the n-sphere");
    hom_cmd->add_option("--h-n", hom_h_in.count, "codomain sample size");
    hom_cmd->add_flag("--h-evenly", hom_h_in.evenly, "codomain evenly sample");
    hom_cmd->add_flag("--h-fibonacci", hom_h_in.fibonacci, "codomain fibonacci sample");
    hom_cmd->add_option("--h-r", hom_h_r, "codomain far-graph scale");
    hom_cmd->add_option("--h-complete", hom_h_complete, "codomain K_k");
    hom_cmd->add_option("--budget-ms", hom_budget, "time budget in milliseconds");
    hom_cmd->add_option("--output", hom_out, "output path");

    CLI11_PARSE(app, argc, argv);
    set_max_threads(threads);

    auto parse_flavor = [](const std::string& name) {
        if (name == "avr") return ComplexFlavor::Avr;
        if (name == "tavr") return ComplexFlavor::Tavr;
        fail(ErrorKind::InvalidArgument, "flavor must be avr or tavr");
    };

    if (*constants_cmd) {
        if (n_max < 1) fail(ErrorKind::InvalidArgument, "--n-max must be >= 1");
        if (constants_format == "json") {
            nlohmann::json rows = nlohmann::json::array();
            for (int n = 1; n <= n_max; ++n) {
                auto c = simplex_constants(n);
                rows.push_back({{"n", n}, {"r_n", c.r_n}, {"s_n", c.s_n}});
            }
            emit(nlohmann::json{{"schema", "antirips.constants/1"}, {"rows", rows}}.dump(2),
                 constants_out);
        } else {
            std::ostringstream out;
            out << "n,r_n,s_n\n";
            for (int n = 1; n <= n_max; ++n) {
                auto c = simplex_constants(n);
                out << n << "," << format_double(c.r_n) << "," << format_double(c.s_n) << "\n";
            }
            emit(out.str(), constants_out);
        }
        return 0;
    }

    if (*complex_cmd) {
        auto space = load_space(complex_in);
        auto flavor = parse_flavor(complex_flavor);
        FilteredComplex complex = flavor == ComplexFlavor::Avr
                                      ? avr_complex(space, complex_r, complex_dim_cap)
                                      : tavr_complex(space, complex_r, complex_dim_cap);
        emit(complex_to_json(complex), complex_out);
        return 0;
    }

    if (*pers_cmd) {
        auto space = load_space(pers_in);
        auto filtered = anti_filtration(space, pers_dim_cap, parse_flavor(pers_flavor));
        Barcode barcode = anti_persistence(filtered, pers_max_dim);
        emit(pers_format == "csv" ? barcode_to_csv(barcode) : barcode_to_json(barcode), pers_out);
        return 0;
    }

    if (*betti_cmd) {
        auto space = load_space(betti_in);
        auto flavor = parse_flavor(betti_flavor);
        FilteredComplex complex = flavor == ComplexFlavor::Avr
                                      ? avr_complex(space, betti_r, betti_dim_cap)
                                      : tavr_complex(space, betti_r, betti_dim_cap);
        auto betti = betti_numbers(complex, betti_max_dim);
        if (betti_format == "json") {
            emit(nlohmann::json{{"schema", "antirips.betti/1"},
                                {"r", betti_r},
                                {"betti", betti}}
                     .dump(2),
                 betti_out);
        } else {
            std::ostringstream out;
            out << "dim,betti\n";
            for (std::size_t k = 0; k < betti.size(); ++k) out << k << "," << betti[k] << "\n";
            emit(out.str(), betti_out);
        }
        return 0;
    }

    if (*transport_cmd) {
        auto space = read_distance_csv(metric_path);
        auto mu = measure_from_json(read_file(mu_path));
        auto nu = measure_from_json(read_file(nu_path));
        if (!sigma_path.empty()) {
            nlohmann::json sj = nlohmann::json::parse(read_file(sigma_path));
            std::vector<std::tuple<int, int, double>> entries;
            for (const auto& e : sj.at("entries"))
                entries.emplace_back(e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<double>());
            auto cost = cost_matrix(mu, nu, space);
            TransportPlan sigma = make_plan(static_cast<int>(mu.size()),
                                            static_cast<int>(nu.size()), entries, cost);
            TransportPlan extended = extend_partial_plan(sigma, mu, nu, space);
            emit(plan_to_json(extended), transport_out);
            return 0;
        }
        W1Result result = w1_distance(mu, nu, space);
        nlohmann::json j;
        j["schema"] = "antirips.transport/1";
        j["w1"] = result.value;
        j["plan"] = nlohmann::json::parse(plan_to_json(result.plan));
        emit(j.dump(2), transport_out);
        return 0;
    }

    if (*lift_cmd) {
        if (lift_sphere < 1) fail(ErrorKind::InvalidArgument, "--sphere must be >= 1");
        std::vector<double> base(static_cast<std::size_t>(lift_sphere) + 1, 0.0);
        base[0] = 1.0;
        DiscreteLoop loop = loop_gamma(base, lift_resolution);
        if (lift_map.rfind("snap:", 0) == 0) {
            int grid = std::max(8, std::atoi(lift_map.c_str() + 5));
            if (lift_sphere != 1)
                fail(ErrorKind::InvalidArgument, "snap maps are defined on the circle");
            loop = map_loop(loop, [grid](const std::vector<double>& p) {
                double angle = std::atan2(p[1], p[0]);
                double snapped = 2.0 * kPi * std::llround(angle / (2.0 * kPi) * grid) / grid;
                return std::vector<double>{std::cos(snapped), std::sin(snapped)};
            });
        } else if (lift_map != "identity") {
            fail(ErrorKind::InvalidArgument, "--map must be identity or snap:<N>");
        }
        if (!lift_loop_out.empty()) emit(loop_to_json(loop), lift_loop_out);
        auto classes = project_loop_to_rpn(loop, lift_r);
        if (lift_doubled) {
            std::vector<AntipodalClass> doubled = classes;
            doubled.insert(doubled.end(), classes.begin() + 1, classes.end());
            classes = std::move(doubled);
        }
        LiftResult lifted = lift_loop(classes);
        nlohmann::json j;
        j["schema"] = "antirips.lift/1";
        j["verdict"] = lifted.verdict == LoopVerdict::Nontrivial ? "nontrivial" : "trivial";
        j["samples"] = classes.size();
        emit(j.dump(2), lift_out);
        return 0;
    }

    if (*cover_cmd) {
        auto sample = sample_sphere(1, cover_n, SphereSampling::Evenly);
        auto report = cover_dim_experiment(sample, cover_r, cover_eps);
        emit(cover_dim_report_to_json(report), cover_out);
        return 0;
    }

    if (*faces_cmd) {
        auto space = load_space(faces_in);
        Coloring coloring = simplex_face_coloring(space, faces_alpha);
        Graph borsuk = far_graph(space, faces_alpha);
        bool proper = verify_coloring(borsuk, coloring);
        emit(coloring_to_json(coloring, proper), faces_out);
        return 0;
    }

    if (*greedy_cmd) {
        auto space = load_space(greedy_in);
        Graph g = far_graph(space, greedy_r);
        Coloring coloring =
            greedy_coloring(g, greedy_degree ? GreedyOrder::DegreeDesc : GreedyOrder::Natural);
        emit(coloring_to_json(coloring, verify_coloring(g, coloring)), greedy_out);
        return 0;
    }

    if (*exact_cmd) {
        auto space = load_space(exact_in);
        Graph g = far_graph(space, exact_r);
        int chi = exact_chromatic(g, exact_limit);
        emit(nlohmann::json{{"schema", "antirips.chromatic/1"}, {"chi", chi}}.dump(2), exact_out);
        return 0;
    }

    if (*hom_cmd) {
        auto build = [&](const InputOptions& in, double r, int complete) -> Graph {
            if (complete > 0) return complete_graph(complete);
            InputOptions opts = in;
            auto space = load_space(opts);
            if (r <= 0.0) fail(ErrorKind::InvalidArgument, "far-graph scale required");
            return far_graph(space, r);
        };
        Graph g = build(hom_g_in, hom_g_r, hom_g_complete);
        Graph h = build(hom_h_in, hom_h_r, hom_h_complete);
        HomSearchResult result = graph_homomorphism_search(g, h, hom_budget);
        if (result.status == HomSearchStatus::Found && !verify_homomorphism(g, h, result.map))
            throw std::logic_error("search returned an invalid homomorphism");
        emit(homomorphism_to_json(result), hom_out);
        if (result.status == HomSearchStatus::Timeout) return 2;
        if (result.status == HomSearchStatus::Exhausted) return 3;
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const antirips::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
