// morseprof: command-line front end for persistence, Morse complexity
// profiles, spikes, collapsibility and exact minimal Morse numbers.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <morseprof/io.hpp>
#include <morseprof/morseprof.hpp>

namespace mp = morseprof;
using nlohmann::json;

namespace {

enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kParse = 2,
    kValidation = 3,
};

struct RunConfig {
    std::string input;
    std::string catalog;
    bool auto_close = false;
    bool distance_matrix = false;
    int max_dim = 2;
    std::string thresholds = "all-distances";
    std::size_t exact_cap = mp::kDefaultExactCap;
    std::size_t node_budget = mp::kDefaultNodeBudget;
    std::string output;
    std::string format = "json";
    std::optional<std::size_t> level;
    std::string example_name;
};

/// Thrown for problems reading input files; reported with exit code 2.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const RunConfig& cfg, const std::string& text)
{
    if (cfg.output.empty() || cfg.output == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.output, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + cfg.output + "'");
    out << text;
}

mp::Filtration load_filtration(const RunConfig& cfg)
{
    mp::Filtration f = cfg.catalog.empty()
                           ? mp::parse_filtration(read_file(cfg.input), mp::ParseOptions{cfg.auto_close})
                           : mp::catalog::by_name(cfg.catalog);
    if (f.empty()) throw mp::Error(mp::ErrorCode::EmptyComplex, "the filtration has no simplices");
    return f;
}

std::size_t pick_level(const RunConfig& cfg, const mp::Filtration& f)
{
    const std::size_t level = cfg.level.value_or(f.num_levels() - 1);
    if (level >= f.num_levels()) {
        throw mp::Error(mp::ErrorCode::InvalidArgument,
                        "level " + std::to_string(level) + " out of range (" + std::to_string(f.num_levels()) +
                            " levels)");
    }
    return level;
}

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------

int cmd_rips(const RunConfig& cfg)
{
    const auto cloud = mp::parse_point_cloud(read_file(cfg.input), cfg.distance_matrix);
    std::optional<std::vector<double>> thresholds;
    if (cfg.thresholds != "all-distances") {
        thresholds.emplace();
        for (auto field : mp::detail::split_fields(cfg.thresholds, ", ")) {
            thresholds->push_back(mp::detail::parse_double(field, 0));
        }
    }
    const auto f = mp::vietoris_rips(cloud, cfg.max_dim, thresholds);
    write_output(cfg, mp::serialize_filtration(f));
    (cfg.output.empty() ? std::cerr : std::cout)
        << "N = " << f.size() << " simplices, " << f.num_levels() << " levels\n";
    return kOk;
}

struct Pipeline {
    mp::PersistencePairing pairing;
    mp::GreedyProfile greedy;
    mp::MorseProfile profile;
    mp::SpikeReport spikes;
    double persistence_ms = 0;
    double matching_ms = 0;
    double exact_ms = 0;
};

Pipeline run_pipeline(const RunConfig& cfg, const mp::Filtration& f)
{
    Pipeline p;
    auto t = Clock::now();
    p.pairing = mp::reduce(f);
    p.persistence_ms = ms_since(t);
    t = Clock::now();
    p.greedy = mp::greedy_incremental(f);
    p.matching_ms = ms_since(t);
    t = Clock::now();
    p.profile = mp::morse_complexity_profile(f, p.pairing, p.greedy, {cfg.exact_cap, cfg.node_budget});
    p.exact_ms = ms_since(t);
    p.spikes = mp::detect_spikes(p.profile, p.pairing);
    return p;
}

int cmd_profile(const RunConfig& cfg)
{
    const auto start = Clock::now();
    const auto f = load_filtration(cfg);
    const auto load_ms = ms_since(start);
    const auto p = run_pipeline(cfg, f);
    if (cfg.format == "csv") {
        write_output(cfg, mp::io::profile_csv(p.profile, p.spikes));
    } else {
        json j = mp::io::profile_json(p.profile, p.spikes);
        j["barcode"] = mp::io::barcode_json(p.pairing);
        write_output(cfg, dump(j));
    }
    if (!cfg.output.empty() && cfg.output != "-") {
        std::cout << "N = " << f.size() << " simplices, " << f.num_levels() << " levels\n";
        std::cout << "greedy C:";
        for (const auto& lp : p.profile.levels) std::cout << ' ' << lp.greedy.total();
        std::cout << "\nspikes: " << p.spikes.spikes.size() << "\n";
    }
    std::cerr << "time load " << load_ms << " ms, persistence " << p.persistence_ms << " ms, matching "
              << p.matching_ms << " ms, profile/exact " << p.exact_ms << " ms, total " << ms_since(start)
              << " ms\n";
    return kOk;
}

int cmd_spikes(const RunConfig& cfg)
{
    const auto f = load_filtration(cfg);
    const auto p = run_pipeline(cfg, f);
    if (cfg.format == "csv") {
        std::string out = "level,confidence,before,at,after\n";
        for (const auto& s : p.spikes.spikes) {
            out += std::to_string(s.level) + "," + std::string(mp::to_string(s.confidence)) + "," +
                   std::to_string(s.before) + "," + std::to_string(s.at) + "," + std::to_string(s.after) + "\n";
        }
        write_output(cfg, out);
    } else {
        write_output(cfg, dump({{"spikes", mp::io::spikes_json(p.spikes)}}));
    }
    return kOk;
}

int cmd_homology(const RunConfig& cfg)
{
    const auto f = load_filtration(cfg);
    const auto pairing = mp::reduce(f);
    if (cfg.format == "csv") {
        write_output(cfg, mp::io::barcode_csv(pairing));
        return kOk;
    }
    json levels = json::array();
    for (double g : f.levels()) levels.push_back({{"grade", g}, {"betti", mp::betti_at(pairing, g)}});
    json windows = json::array();
    for (const auto& w : mp::homology_stable_windows(pairing)) {
        windows.push_back({{"from", w.lo}, {"to", w.hi}, {"first_level", w.first_level}, {"last_level", w.last_level}});
    }
    write_output(cfg, dump({{"barcode", mp::io::barcode_json(pairing)},
                            {"levels", std::move(levels)},
                            {"stable_windows", std::move(windows)}}));
    return kOk;
}

int cmd_collapse(const RunConfig& cfg)
{
    const auto f = load_filtration(cfg);
    const auto k = f.complex().prefix(f.level_size(pick_level(cfg, f)));
    const auto cert = mp::collapse_search(k, cfg.node_budget);
    write_output(cfg, dump(mp::io::certificate_json(cert)));
    std::cerr << mp::io::to_string(cert.status) << " (" << cert.states_visited << " states)\n";
    return kOk;
}

int cmd_exact(const RunConfig& cfg)
{
    const auto f = load_filtration(cfg);
    const auto k = f.complex().prefix(f.level_size(pick_level(cfg, f)));
    mp::ExactOptions options;
    options.simplex_cap = cfg.exact_cap;
    options.node_budget = cfg.node_budget;
    const auto exact = mp::exact_min_morse(k, options);
    write_output(cfg, dump(mp::io::exact_json(exact)));
    std::cerr << "M = " << exact.total << "\n";
    return kOk;
}

/// Catalog filtration plus the values it is expected to produce.
int cmd_example(const RunConfig& cfg)
{
    std::string catalog_name;
    if (cfg.example_name == "dunce-hat") catalog_name = "dunce-hat-filtration";
    else if (cfg.example_name == "pentagon") catalog_name = "pentagon-rips";
    else if (cfg.example_name == "point") catalog_name = "point";
    else throw mp::Error(mp::ErrorCode::UnknownName, "no example named '" + cfg.example_name + "'");

    const auto f = mp::catalog::by_name(catalog_name);
    json expected;
    if (cfg.example_name == "pentagon") {
        const auto greedy = mp::greedy_incremental(f);
        json totals = json::array();
        for (const auto& c : greedy.per_level) totals.push_back(c.total());
        expected["greedy"] = totals;
    } else {
        // exact at every level, whatever its size
        const auto pairing = mp::reduce(f);
        const auto profile = mp::morse_complexity_profile(f, pairing, mp::greedy_incremental(f),
                                                          {f.size(), cfg.node_budget});
        json totals = json::array();
        for (const auto& lp : profile.levels) totals.push_back(*lp.exact_total);
        expected["profile"] = totals;
        if (f.num_levels() >= 3) {
            json spikes = json::array();
            for (const auto& s : mp::detect_spikes(profile, pairing).spikes) spikes.push_back(s.level);
            expected["spike"] = spikes;
        }
    }

    const std::filesystem::path dir = cfg.output.empty() ? "." : cfg.output;
    std::filesystem::create_directories(dir);
    const auto filt_path = dir / (cfg.example_name + ".filt");
    const auto json_path = dir / (cfg.example_name + ".expected.json");
    std::ofstream(filt_path, std::ios::binary) << mp::serialize_filtration(f);
    std::ofstream(json_path, std::ios::binary) << dump(expected);
    std::cout << "wrote " << filt_path.string() << " and " << json_path.string() << "\n";
    return kOk;
}

int exit_code_for(mp::ErrorCode code)
{
    switch (code) {
    case mp::ErrorCode::ParseError:
    case mp::ErrorCode::UnknownName:
        return kParse;
    default:
        return kValidation;
    }
}

void add_input_options(CLI::App* sub, RunConfig& cfg)
{
    auto* in = sub->add_option("-i,--input", cfg.input, "Filtration file");
    auto* cat = sub->add_option("--catalog", cfg.catalog, "Built-in filtration name instead of a file");
    in->excludes(cat);
    cat->excludes(in);
    sub->add_flag("--auto-close", cfg.auto_close, "Add missing faces instead of rejecting the file");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Persistent homology, Morse complexity profiles and Morse spikes of filtered simplicial complexes"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* rips = app.add_subcommand("rips", "Build a Vietoris-Rips filtration from a point cloud");
    rips->add_option("-i,--input", cfg.input, "CSV point cloud (or distance matrix)")->required();
    rips->add_flag("--distance-matrix", cfg.distance_matrix, "Input is a full symmetric distance matrix");
    rips->add_option("--max-dim", cfg.max_dim, "Largest simplex dimension")->check(CLI::NonNegativeNumber);
    rips->add_option("--thresholds", cfg.thresholds, "Comma-separated scales, or all-distances");
    rips->add_option("-o,--output", cfg.output, "Filtration file to write");

    auto* profile = app.add_subcommand("profile", "Morse complexity profile, spikes and barcode");
    auto* spikes = app.add_subcommand("spikes", "Morse spike report");
    auto* homology = app.add_subcommand("homology", "Barcode, Betti numbers and homology-stable windows");
    auto* collapse = app.add_subcommand("collapse", "Search for a collapse to a vertex");
    auto* exact = app.add_subcommand("exact-morse", "Exact minimal Morse number");
    for (auto* sub : {profile, spikes, homology, collapse, exact}) {
        add_input_options(sub, cfg);
        sub->add_option("-o,--output", cfg.output, "Output file (default stdout)");
        sub->add_option("--node-budget", cfg.node_budget, "State budget for collapse search")
            ->check(CLI::PositiveNumber);
    }
    for (auto* sub : {profile, spikes, exact}) {
        sub->add_option("--exact-cap", cfg.exact_cap, "Largest complex handed to the exact solver")
            ->check(CLI::PositiveNumber);
    }
    for (auto* sub : {profile, spikes, homology}) {
        sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    }
    for (auto* sub : {collapse, exact}) {
        sub->add_option("--level", cfg.level, "Level index (default: last)");
    }

    auto* example = app.add_subcommand("example", "Write a catalog filtration and its expected results");
    example->add_option("name", cfg.example_name, "dunce-hat | pentagon | point")->required();
    example->add_option("-o,--output", cfg.output, "Directory to write into");
    example->add_option("--node-budget", cfg.node_budget)->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kParse;
    }

    for (auto* sub : {profile, spikes, homology, collapse, exact}) {
        if (sub->parsed() && cfg.input.empty() && cfg.catalog.empty()) {
            std::cerr << "error: one of --input or --catalog is required\n";
            return kParse;
        }
    }

    try {
        if (rips->parsed()) return cmd_rips(cfg);
        if (profile->parsed()) return cmd_profile(cfg);
        if (spikes->parsed()) return cmd_spikes(cfg);
        if (homology->parsed()) return cmd_homology(cfg);
        if (collapse->parsed()) return cmd_collapse(cfg);
        if (exact->parsed()) return cmd_exact(cfg);
        if (example->parsed()) return cmd_example(cfg);
    } catch (const mp::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailure;
    }
    return kFailure;
}
