#include "flp/analysis.hpp"
#include "flp/core.hpp"
#include "flp/instances.hpp"
#include "flp/io.hpp"
#include "flp/mechanisms.hpp"
#include "flp/optimal.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using flp::Point;
using nlohmann::json;

constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

json point_array(const Point& p) { return json::array({p.x, p.y}); }

Point parse_point(const std::string& text) {
    std::istringstream in(text);
    double x = 0.0, y = 0.0;
    char comma = 0;
    if (!(in >> x >> comma >> y) || comma != ',')
        throw std::invalid_argument("expected point as \"x,y\": " + text);
    return Point{x, y};
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> values;
    std::istringstream in(text);
    std::string token;
    while (std::getline(in, token, ',')) {
        if (token.empty()) continue;
        values.push_back(std::stod(token));
    }
    if (values.empty())
        throw std::invalid_argument("empty grid: " + text);
    return values;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write file: " + path);
    out << text;
}

std::string fmt(double v) {
    std::ostringstream out;
    out.precision(12);
    out << v;
    return out.str();
}

struct PlaceArgs {
    std::string instance_file;
    std::string prediction;
    std::string mechanism = "cmp";
    double c = -1.0;  // -1: take from file, default 0
    bool with_optimal = false;
};

int run_place(const PlaceArgs& args) {
    flp::Instance inst = flp::load_instance(args.instance_file);
    const double c = args.c >= 0.0 ? args.c : inst.confidence.value_or(0.0);
    std::optional<Point> prediction = inst.prediction;
    if (!args.prediction.empty()) prediction = parse_point(args.prediction);

    flp::MechanismOutput out;
    if (args.mechanism == "cm") {
        out = flp::cm(inst.agents);
    } else if (args.mechanism == "cmp") {
        if (c > 0.0 && !prediction)
            throw std::invalid_argument("confidence > 0 requires a prediction");
        out = flp::cmp(inst.agents, prediction.value_or(Point{0.0, 0.0}), c);
    } else {
        throw std::invalid_argument("unknown mechanism: " + args.mechanism);
    }

    json result;
    result["manifest"] = flp::manifest_to_json(flp::make_manifest(
        "place", {{"instance", args.instance_file},
                  {"mechanism", args.mechanism},
                  {"c", fmt(c)}}));
    result["facility"] = point_array(out.facility);
    result["phantom_count"] = out.phantom_count;
    result["mech_cost"] = flp::utilitarian_cost(out.facility, inst.agents).total_cost;
    if (args.with_optimal) {
        const flp::OptimalResult opt = flp::geometric_median_iterative(inst.agents);
        result["optimal"] = point_array(opt.location);
        result["opt_cost"] = opt.cost;
        result["ratio"] =
            flp::approximation_ratio(result["mech_cost"].get<double>(), opt.cost);
    }
    std::cout << result.dump(2) << "\n";
    return 0;
}

struct BoundsArgs {
    std::string c_grid;
    double w_min = 1.0;
    double w_max = 1.0;
    std::string out;
};

int run_bounds(const BoundsArgs& args) {
    const std::vector<double> grid = parse_grid(args.c_grid);
    if (args.w_min > args.w_max)
        throw std::invalid_argument("w_min must not exceed w_max");
    std::ostringstream csv;
    csv << flp::manifest_csv_header(flp::make_manifest(
        "bounds",
        {{"c_grid", args.c_grid}, {"w_min", fmt(args.w_min)}, {"w_max", fmt(args.w_max)}}));
    csv << "c,w_min,w_max,consistency_bound,robustness_bound,"
           "empirical_consistency,empirical_robustness\n";
    csv.precision(12);
    for (const double c : grid) {
        const flp::BoundPair pair = flp::bound_pair(c, args.w_min, args.w_max);
        csv << c << ',' << pair.w_min << ',' << pair.w_max << ','
            << pair.consistency << ',' << pair.robustness << ",,\n";
    }
    write_text(args.out, csv.str());
    return 0;
}

struct GenCoaArgs {
    std::size_t n = 0;
    double c = 0.0;
    double w_min = 1.0;
    double w_max = 1.0;
    std::string mode = "consistency";
    std::string out;
};

int run_gen_coa(const GenCoaArgs& args) {
    const flp::CoaInstance coa = flp::coa_worst_instance(
        args.n, args.c, args.w_min, args.w_max, flp::mode_from_string(args.mode));
    json j = flp::instance_to_json(coa.instance);
    j["manifest"] = flp::manifest_to_json(flp::make_manifest(
        "gen-coa", {{"n", std::to_string(args.n)},
                    {"c", fmt(args.c)},
                    {"w_min", fmt(args.w_min)},
                    {"w_max", fmt(args.w_max)},
                    {"mode", args.mode}}));
    j["coa"] = json{{"worst_x", coa.worst_x},
                    {"mode", flp::to_string(coa.mode)},
                    {"expected_ratio", coa.expected_ratio}};
    flp::save_json(args.out, j);
    return 0;
}

struct SearchArgs {
    std::uint64_t seed = 0;
    int restarts = 10;
    int steps = 2000;
    int n_min = 3;
    int n_max = 9;
    double box_min = -5.0;
    double box_max = 5.0;
    double w_min = 1.0;
    double w_max = 1.0;
    double c = 0.0;
    std::string mode = "consistency";
    bool seed_coa = false;
    std::string out;
};

int run_search(const SearchArgs& args) {
    flp::SearchConfig config;
    config.seed = args.seed;
    config.restarts = args.restarts;
    config.steps_per_restart = args.steps;
    config.n_range = {args.n_min, args.n_max};
    config.coordinate_box = {args.box_min, args.box_max};
    config.weight_box = {args.w_min, args.w_max};
    config.c = args.c;
    config.mode = flp::mode_from_string(args.mode);

    std::optional<flp::Instance> seed_instance;
    if (args.seed_coa) {
        const std::size_t n = flp::smallest_coa_n(args.c);
        seed_instance =
            flp::coa_worst_instance(n, args.c, args.w_min, args.w_max, config.mode)
                .instance;
    }
    const flp::SearchResult result = flp::adversarial_search(config, seed_instance);

    json j;
    j["manifest"] = flp::manifest_to_json(flp::make_manifest(
        "search",
        {{"restarts", std::to_string(args.restarts)},
         {"steps", std::to_string(args.steps)},
         {"n_range", std::to_string(args.n_min) + ".." + std::to_string(args.n_max)},
         {"box", fmt(args.box_min) + ".." + fmt(args.box_max)},
         {"w_box", fmt(args.w_min) + ".." + fmt(args.w_max)},
         {"c", fmt(args.c)},
         {"mode", args.mode},
         {"seed_coa", args.seed_coa ? "true" : "false"}},
        args.seed));
    j["best_ratio"] = result.best_report.ratio;
    j["bound"] = result.bound;
    j["margin"] = result.bound - result.best_report.ratio;
    j["facility"] = point_array(result.best_report.facility);
    j["optimal"] = point_array(result.best_report.optimal);
    j["instance"] = flp::instance_to_json(result.best_instance);
    if (args.out.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        flp::save_json(args.out, j);
        std::cout << "best_ratio: " << fmt(result.best_report.ratio)
                  << " bound: " << fmt(result.bound) << "\n";
    }
    return 0;
}

struct FuzzArgs {
    std::string mechanism = "cmp";
    int trials = 10000;
    std::uint64_t seed = 0;
    double tolerance = 1e-9;
    std::string out;
};

int run_fuzz(const FuzzArgs& args) {
    flp::MechanismKind kind;
    if (args.mechanism == "cmp") {
        kind = flp::MechanismKind::cmp;
    } else if (args.mechanism == "weighted-mean") {
        kind = flp::MechanismKind::weighted_mean;
    } else {
        throw std::invalid_argument("unknown mechanism: " + args.mechanism);
    }
    const flp::FuzzReport report =
        flp::fuzz_strategyproofness(kind, args.trials, args.seed, args.tolerance);

    json j;
    j["manifest"] = flp::manifest_to_json(flp::make_manifest(
        "fuzz",
        {{"mechanism", args.mechanism},
         {"trials", std::to_string(args.trials)},
         {"tolerance", fmt(args.tolerance)}},
        args.seed));
    j["trials"] = report.trials;
    j["violations"] = report.violation_count;
    j["max_gain"] = report.max_gain;
    json samples = json::array();
    for (const auto& v : report.violations) {
        samples.push_back(json{{"agent_index", v.agent_index},
                               {"misreport", point_array(v.misreport)},
                               {"gain", v.gain},
                               {"instance", flp::instance_to_json(v.instance)}});
        if (samples.size() >= 8) break;
    }
    j["sample_violations"] = std::move(samples);
    if (!args.out.empty()) flp::save_json(args.out, j);
    std::cout << "violations: " << report.violation_count << "\n";
    return 0;
}

struct TradeoffArgs {
    std::string instance_file;
    std::string c_grid = "0.2,0.5,0.7";
    std::string predictions = "0,1;0,-10;0,0.5";
    std::string out;
};

int run_tradeoff(const TradeoffArgs& args) {
    const flp::Instance inst = flp::load_instance(args.instance_file);
    const std::vector<double> c_grid = parse_grid(args.c_grid);
    std::vector<Point> predictions;
    std::istringstream in(args.predictions);
    std::string token;
    while (std::getline(in, token, ';'))
        if (!token.empty()) predictions.push_back(parse_point(token));
    if (predictions.empty())
        throw std::invalid_argument("empty prediction list");

    const std::vector<flp::RatioReport> table =
        flp::tradeoff_sweep(inst, predictions, c_grid);
    std::ostringstream csv;
    csv << flp::manifest_csv_header(flp::make_manifest(
        "tradeoff", {{"instance", args.instance_file},
                     {"c_grid", args.c_grid},
                     {"predictions", args.predictions}}));
    csv << "c,pred_x,pred_y,facility_x,facility_y,mech_cost,opt_cost,ratio\n";
    csv.precision(12);
    std::size_t row = 0;
    for (const double c : c_grid) {
        for (const Point& pred : predictions) {
            const flp::RatioReport& r = table[row++];
            csv << c << ',' << pred.x << ',' << pred.y << ',' << r.facility.x << ','
                << r.facility.y << ',' << r.mech_cost << ',' << r.opt_cost << ','
                << r.ratio << "\n";
        }
    }
    write_text(args.out, csv.str());
    return 0;
}

struct ImpossibilityArgs {
    double phantom_y = 21.0;
    int n_max = 10;
    std::string w_ratios = "1,2,5,10";
    std::string out;
};

int run_impossibility(const ImpossibilityArgs& args) {
    const auto [a, b] = flp::impossibility_instances();
    const std::vector<Point> phantoms(4, Point{0.0, args.phantom_y});

    const auto measure = [](const flp::Instance& inst, const Point& facility) {
        const double mech = flp::utilitarian_cost(facility, inst.agents).total_cost;
        const double opt = flp::geometric_median_iterative(inst.agents).cost;
        return flp::approximation_ratio(mech, opt);
    };

    const Point fa = flp::gcm(a.agents, phantoms).facility;
    const Point fb = flp::gcm(b.agents, phantoms).facility;

    json j;
    j["manifest"] = flp::manifest_to_json(flp::make_manifest(
        "impossibility", {{"phantom_y", fmt(args.phantom_y)},
                          {"n_max", std::to_string(args.n_max)},
                          {"w_ratios", args.w_ratios}}));
    j["phantom_y"] = args.phantom_y;
    j["instance_a"] = json{{"facility", point_array(fa)}, {"ratio", measure(a, fa)}};
    j["instance_b"] = json{{"facility", point_array(fb)}, {"ratio", measure(b, fb)}};

    json scaling = json::array();
    for (int n = 2; n <= args.n_max; ++n) {
        for (const double ratio : parse_grid(args.w_ratios)) {
            const flp::Instance inst =
                flp::impossibility_scaled(static_cast<std::size_t>(n), 1.0, ratio);
            const std::vector<Point> consistent_phantoms(
                static_cast<std::size_t>(n - 1), Point{0.0, args.phantom_y});
            const Point f = flp::gcm(inst.agents, consistent_phantoms).facility;
            scaling.push_back(json{
                {"n", n},
                {"w_ratio", ratio},
                {"predicted", flp::impossibility_ratio(static_cast<std::size_t>(n),
                                                       1.0, ratio)},
                {"measured", measure(inst, f)}});
        }
    }
    j["scaling"] = std::move(scaling);

    if (args.out.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        flp::save_json(args.out, j);
        std::cout << "A: " << fmt(j["instance_a"]["ratio"].get<double>())
                  << " B: " << fmt(j["instance_b"]["ratio"].get<double>()) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Prediction-augmented strategyproof facility location in the plane"};
    app.require_subcommand(1);

    PlaceArgs place;
    auto* place_cmd = app.add_subcommand("place", "Run a mechanism on an instance file");
    place_cmd->add_option("instance", place.instance_file, "Instance JSON file")
        ->required();
    place_cmd->add_option("--c", place.c, "Confidence in [0,1); default from file");
    place_cmd->add_option("--prediction", place.prediction, "Prediction as \"x,y\"");
    place_cmd->add_option("--mechanism", place.mechanism, "cm or cmp");
    place_cmd->add_flag("--optimal", place.with_optimal,
                        "Also report the optimal location and the ratio");

    BoundsArgs bounds;
    auto* bounds_cmd = app.add_subcommand("bounds", "Tabulate the closed-form bounds");
    bounds_cmd->add_option("--c-grid", bounds.c_grid, "Comma-separated c values")
        ->required();
    bounds_cmd->add_option("--w-min", bounds.w_min, "Minimum weight");
    bounds_cmd->add_option("--w-max", bounds.w_max, "Maximum weight");
    bounds_cmd->add_option("--out", bounds.out, "Output CSV path (default stdout)");

    GenCoaArgs gen;
    auto* gen_cmd = app.add_subcommand("gen-coa", "Generate a worst-case COA instance");
    gen_cmd->add_option("--n", gen.n, "Number of agents")->required();
    gen_cmd->add_option("--c", gen.c, "Confidence")->required();
    gen_cmd->add_option("--w-min", gen.w_min, "Minimum weight");
    gen_cmd->add_option("--w-max", gen.w_max, "Maximum weight");
    gen_cmd->add_option("--mode", gen.mode, "consistency or robustness");
    gen_cmd->add_option("--out", gen.out, "Output instance JSON path")->required();

    SearchArgs search;
    auto* search_cmd =
        app.add_subcommand("search", "Adversarial ratio maximization by hill climbing");
    search_cmd->add_option("--seed", search.seed, "RNG seed")->required();
    search_cmd->add_option("--restarts", search.restarts, "Random restarts");
    search_cmd->add_option("--steps", search.steps, "Steps per restart");
    search_cmd->add_option("--n-min", search.n_min, "Minimum instance size");
    search_cmd->add_option("--n-max", search.n_max, "Maximum instance size");
    search_cmd->add_option("--box-min", search.box_min, "Coordinate box lower bound");
    search_cmd->add_option("--box-max", search.box_max, "Coordinate box upper bound");
    search_cmd->add_option("--w-min", search.w_min, "Weight box lower bound");
    search_cmd->add_option("--w-max", search.w_max, "Weight box upper bound");
    search_cmd->add_option("--c", search.c, "Confidence");
    search_cmd->add_option("--mode", search.mode, "consistency or robustness");
    search_cmd->add_flag("--seed-coa", search.seed_coa,
                         "Prime the first restart with the worst-case COA instance");
    search_cmd->add_option("--out", search.out, "Output JSON path");

    FuzzArgs fuzz;
    auto* fuzz_cmd = app.add_subcommand("fuzz", "Strategyproofness fuzzing");
    fuzz_cmd->add_option("--mechanism", fuzz.mechanism, "cmp or weighted-mean");
    fuzz_cmd->add_option("--trials", fuzz.trials, "Number of trials");
    fuzz_cmd->add_option("--seed", fuzz.seed, "RNG seed")->required();
    fuzz_cmd->add_option("--tolerance", fuzz.tolerance, "Gain tolerance");
    fuzz_cmd->add_option("--out", fuzz.out, "Output JSON path");

    TradeoffArgs tradeoff;
    auto* tradeoff_cmd =
        app.add_subcommand("tradeoff", "Sweep predictions x confidence values");
    tradeoff_cmd->add_option("--instance", tradeoff.instance_file, "Instance JSON file")
        ->required();
    tradeoff_cmd->add_option("--c-grid", tradeoff.c_grid, "Comma-separated c values");
    tradeoff_cmd->add_option("--predictions", tradeoff.predictions,
                             "Semicolon-separated \"x,y\" points");
    tradeoff_cmd->add_option("--out", tradeoff.out, "Output CSV path (default stdout)");

    ImpossibilityArgs impossibility;
    auto* imp_cmd = app.add_subcommand(
        "impossibility", "The 1-consistency vs robustness demonstration pair");
    imp_cmd->add_option("--phantom-y", impossibility.phantom_y,
                        "y-coordinate of the constant phantom points");
    imp_cmd->add_option("--n-max", impossibility.n_max, "Largest n in the scaling table");
    imp_cmd->add_option("--w-ratios", impossibility.w_ratios,
                        "Comma-separated w_max/w_min ratios");
    imp_cmd->add_option("--out", impossibility.out, "Output JSON path");

    try {
        app.parse(argc, argv);
        if (place_cmd->parsed()) return run_place(place);
        if (bounds_cmd->parsed()) return run_bounds(bounds);
        if (gen_cmd->parsed()) return run_gen_coa(gen);
        if (search_cmd->parsed()) return run_search(search);
        if (fuzz_cmd->parsed()) return run_fuzz(fuzz);
        if (tradeoff_cmd->parsed()) return run_tradeoff(tradeoff);
        if (imp_cmd->parsed()) return run_impossibility(impossibility);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return 0;
}
