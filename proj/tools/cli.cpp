#include "cli.hpp"

#include "farch/error.hpp"
#include "farch/estimation.hpp"
#include "farch/export.hpp"
#include "farch/ingest.hpp"
#include "farch/io.hpp"
#include "farch/model.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <optional>

namespace farch::cli {

namespace {

using nlohmann::ordered_json;

constexpr const char* kVersion = "farch " FARCH_VERSION;

/// Flag values that are well-formed for CLI11 but semantically unusable.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ModelFlags {
    std::optional<std::size_t> grid;
    std::string beta = "poly16";
    double beta_scale = 1.0;
    std::string delta = "const:0.01";
    std::string innovation = "bridge";
    double ou_theta = kDefaultOuTheta;
    std::uint64_t seed = 42;
    std::size_t burn_in = kDefaultBurnIn;
};

void add_model_flags(CLI::App& cmd, ModelFlags& f) {
    cmd.add_option("--grid", f.grid, "Grid size M (default 50, or taken from --beta/--delta files)")
        ->check(CLI::Range(std::size_t{2}, std::size_t{100000}));
    cmd.add_option("--beta", f.beta, "Kernel: poly16 or file:PATH (kernel CSV)")->capture_default_str();
    cmd.add_option("--beta-scale", f.beta_scale, "Multiply the kernel by this factor")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    cmd.add_option("--delta", f.delta, "Intercept: const:VALUE or file:PATH (curve CSV)")->capture_default_str();
    cmd.add_option("--innovation", f.innovation, "Error curves: bridge, ou or white")
        ->check(CLI::IsMember({"bridge", "ou", "white"}))
        ->capture_default_str();
    cmd.add_option("--ou-theta", f.ou_theta, "OU decay rate (default 200 ln 2)")->check(CLI::PositiveNumber);
    cmd.add_option("--seed", f.seed, "RNG seed; FARCH_SEED overrides")->capture_default_str();
    cmd.add_option("--burn-in", f.burn_in, "Discarded initial steps")->capture_default_str();
}

std::optional<std::filesystem::path> file_source(const std::string& spec) {
    if (spec.rfind("file:", 0) == 0) {
        if (spec.size() == 5) throw UsageError("empty path in '" + spec + "'");
        return std::filesystem::path(spec.substr(5));
    }
    return std::nullopt;
}

std::uint64_t effective_seed(const ModelFlags& f) {
    if (const char* env = std::getenv("FARCH_SEED"); env != nullptr && *env != '\0') {
        try {
            std::size_t used = 0;
            const auto v = std::stoull(env, &used);
            if (used != std::string(env).size()) throw std::invalid_argument(env);
            return v;
        } catch (const std::exception&) {
            throw UsageError(std::string("FARCH_SEED is not an unsigned integer: '") + env + "'");
        }
    }
    return f.seed;
}

InnovationSpec innovation_spec(const ModelFlags& f) {
    InnovationSpec spec;
    spec.kind = parse_innovation_kind(f.innovation);
    spec.ou_theta = f.ou_theta;
    spec.seed = effective_seed(f);
    return spec;
}

FarchParams model_params(const ModelFlags& f) {
    std::optional<GridKernel> beta_file;
    std::optional<GridFunction> delta_file;
    if (auto p = file_source(f.beta)) {
        beta_file = read_kernel_csv(*p);
    } else if (f.beta != "poly16") {
        throw UsageError("--beta must be poly16 or file:PATH, got '" + f.beta + "'");
    }
    std::optional<double> delta_const;
    if (auto p = file_source(f.delta)) {
        delta_file = read_curve_csv(*p);
    } else if (f.delta.rfind("const:", 0) == 0) {
        try {
            delta_const = parse_double(f.delta.substr(6));
        } catch (const InvalidInput&) {
            throw UsageError("--delta const value is not a number: '" + f.delta + "'");
        }
    } else {
        throw UsageError("--delta must be const:VALUE or file:PATH, got '" + f.delta + "'");
    }

    std::optional<std::size_t> m = f.grid;
    auto agree = [&](std::size_t from_file, const char* what) {
        if (m && *m != from_file) {
            throw UsageError(std::string(what) + " file has M=" + std::to_string(from_file) + " but grid is " +
                             std::to_string(*m));
        }
        m = from_file;
    };
    if (beta_file) agree(beta_file->size(), "--beta");
    if (delta_file) agree(delta_file->size(), "--delta");
    const Grid grid(m.value_or(50));

    GridKernel beta = beta_file ? *beta_file : poly16_kernel(grid);
    if (f.beta_scale != 1.0) beta = f.beta_scale * beta;
    GridFunction delta = delta_file ? *delta_file : GridFunction::constant(grid, *delta_const);
    return FarchParams(std::move(delta), std::move(beta));
}

ordered_json model_flags_json(const ModelFlags& f, const FarchParams& params, std::uint64_t seed) {
    ordered_json j;
    j["grid"] = params.grid().size();
    j["beta"] = f.beta;
    j["beta_scale"] = f.beta_scale;
    j["delta"] = f.delta;
    j["innovation"] = f.innovation;
    j["ou_theta"] = f.ou_theta;
    j["seed"] = seed;
    j["burn_in"] = f.burn_in;
    return j;
}

// --- simulate -------------------------------------------------------------

struct SimulateFlags {
    ModelFlags model;
    std::size_t n = 0;
    std::string out;
};

int do_simulate(const SimulateFlags& f, const std::vector<std::string>& argv, std::ostream& out) {
    const FarchParams params = model_params(f.model);
    const InnovationSpec spec = innovation_spec(f.model);
    const SimulationResult result = simulate(params, spec, f.n, f.model.burn_in);

    const std::filesystem::path dir(f.out);
    write_simulation(dir, result);

    ordered_json manifest;
    manifest["tool"] = "farch";
    manifest["version"] = kVersion;
    manifest["command"] = "simulate";
    manifest["argv"] = argv;
    manifest["flags"] = model_flags_json(f.model, params, spec.seed);
    manifest["flags"]["n"] = f.n;
    manifest["seed_source"] = std::getenv("FARCH_SEED") != nullptr ? "FARCH_SEED" : "--seed";
    manifest["outputs"] = {"y.csv", "sigma2.csv"};
    write_file_atomic(dir / "manifest.json", manifest.dump(2) + "\n");

    out << "wrote " << f.n << " days on M=" << params.grid().size() << " to " << dir.string() << "\n";
    return kExitOk;
}

// --- fit ------------------------------------------------------------------

struct FitFlags {
    std::string panel;
    std::string input;
    std::optional<std::int64_t> h;
    std::optional<std::int64_t> session;
    std::optional<std::size_t> k;
    std::optional<double> gamma;
    bool clip_delta = false;
    std::string out;
};

int do_fit(const FitFlags& f, std::ostream& out) {
    const bool ticks_mode = !f.input.empty();
    if (ticks_mode == !f.panel.empty()) throw UsageError("give exactly one of --panel or --input");
    if (ticks_mode && (!f.h || !f.session)) throw UsageError("--input needs --h and --session");
    if (!ticks_mode && (f.h || f.session)) throw UsageError("--h/--session only apply to --input");

    std::vector<GridFunction> curves;
    if (ticks_mode) {
        auto built = build_returns(load_ticks(f.input), *f.h, *f.session);
        curves = built.panel.curves();
    } else {
        curves = read_panel_csv(f.panel).curves();
    }

    FitOptions options;
    options.k = f.k;
    options.gamma = f.gamma;
    options.clip_delta = f.clip_delta;
    const FitResult result = fit(curves, options);
    write_fit(f.out, result);
    out << fit_summary_json(result);
    return kExitOk;
}

// --- diagnose -------------------------------------------------------------

struct DiagnoseFlags {
    ModelFlags model;
    std::string check;
    std::optional<double> alpha;
    std::optional<std::size_t> nsims;
    std::string functional = "K";
    std::size_t m_max = 6;
};

int do_diagnose(const DiagnoseFlags& f, std::ostream& out) {
    const FarchParams params = model_params(f.model);
    const InnovationSpec spec = innovation_spec(f.model);
    if (f.check == "stationarity") {
        const auto report = check_stationarity(params.beta(), spec, f.alpha.value_or(2.0),
                                               parse_stationarity_functional(f.functional),
                                               f.nsims.value_or(10000));
        out << stationarity_report_json(report) << "\n";
        return kExitOk;
    }

    const double alpha = f.alpha.value_or(1.0);
    const std::size_t reps = f.nsims.value_or(500);
    ordered_json j;
    j["check"] = "coupling";
    j["alpha"] = alpha;
    j["n_reps"] = reps;
    j["head_length"] = f.model.burn_in;
    std::vector<double> ms;
    std::vector<double> values;
    ordered_json rows = ordered_json::array();
    for (std::size_t m = 1; m <= f.m_max; ++m) {
        const auto est = coupling_distance(params, spec, m, reps, alpha, f.model.burn_in);
        rows.push_back({{"m", m}, {"sigma2", est.sigma2}, {"y", est.y}});
        ms.push_back(static_cast<double>(m));
        values.push_back(est.sigma2);
    }
    j["distances"] = rows;
    const bool positive = std::all_of(values.begin(), values.end(), [](double v) { return v > 0.0; });
    if (positive && values.size() >= 2) {
        const auto line = fit_log_linear(ms, values);
        j["slope"] = line.slope;
        j["r_squared"] = line.r_squared;
    } else {
        j["slope"] = nullptr;
        j["r_squared"] = nullptr;
    }
    out << j.dump() << "\n";
    return kExitOk;
}

// --- returns --------------------------------------------------------------

struct ReturnsFlags {
    std::string input;
    std::int64_t h = 0;
    std::int64_t session = 0;
    std::string out;
    std::string drop_report;
};

int do_returns(const ReturnsFlags& f, std::ostream& out) {
    const auto built = build_returns(load_ticks(f.input), f.h, f.session);
    const std::filesystem::path panel_path(f.out);
    if (panel_path.has_parent_path()) std::filesystem::create_directories(panel_path.parent_path());
    write_panel_csv(panel_path, built.panel);
    const std::filesystem::path report_path =
        f.drop_report.empty() ? std::filesystem::path(f.out + ".dropped.csv") : std::filesystem::path(f.drop_report);
    write_file_atomic(report_path, drop_report_csv(built.dropped));
    out << "kept " << built.panel.size() << " days, dropped " << built.dropped.size() << " (M="
        << built.panel.grid().size() << ")\n";
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Functional ARCH(1): simulation, diagnostics and estimation of intraday return curves", "farch"};
    app.set_help_flag("--help", "Print this help message and exit");
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    SimulateFlags sim;
    auto* sim_cmd = app.add_subcommand("simulate", "Simulate return and variance curves");
    add_model_flags(*sim_cmd, sim.model);
    sim_cmd->add_option("--n", sim.n, "Number of retained days")->required()->check(CLI::PositiveNumber);
    sim_cmd->add_option("--out", sim.out, "Output directory")->required();

    FitFlags fitf;
    auto* fit_cmd = app.add_subcommand("fit", "Estimate beta and delta from daily curves");
    fit_cmd->add_option("--panel", fitf.panel, "Panel CSV (day,t,value)");
    fit_cmd->add_option("--input", fitf.input, "Tick CSV (date,time,price)");
    fit_cmd->add_option("--h", fitf.h, "Return horizon in seconds (with --input)")->check(CLI::PositiveNumber);
    fit_cmd->add_option("--session", fitf.session, "Session length in seconds (with --input)")
        ->check(CLI::PositiveNumber);
    auto* k_opt = fit_cmd->add_option("--K", fitf.k, "Truncation level")->check(CLI::PositiveNumber);
    auto* g_opt = fit_cmd->add_option("--gamma", fitf.gamma, "Eigenvalue ratio threshold for choosing K")
                      ->check(CLI::Range(0.0, 1.0));
    k_opt->excludes(g_opt);
    fit_cmd->add_flag("--clip-delta", fitf.clip_delta, "Clip negative delta_hat values to zero");
    fit_cmd->add_option("--out", fitf.out, "Output directory")->required();

    DiagnoseFlags diag;
    auto* diag_cmd = app.add_subcommand("diagnose", "Check stationarity or weak-dependence conditions");
    add_model_flags(*diag_cmd, diag.model);
    diag_cmd->add_option("--check", diag.check, "stationarity or coupling")
        ->required()
        ->check(CLI::IsMember({"stationarity", "coupling"}));
    diag_cmd->add_option("--alpha", diag.alpha, "Moment order (default 2 for stationarity, 1 for coupling)")
        ->check(CLI::PositiveNumber);
    diag_cmd->add_option("--nsims", diag.nsims, "Monte-Carlo draws (default 10000; 500 replications for coupling)");
    diag_cmd->add_option("--functional", diag.functional, "K (L2) or H (sup)")
        ->check(CLI::IsMember({"K", "H"}))
        ->capture_default_str();
    diag_cmd->add_option("--m-max", diag.m_max, "Largest coupling lag")
        ->check(CLI::Range(std::size_t{1}, std::size_t{1000}))
        ->capture_default_str();

    ReturnsFlags ret;
    auto* ret_cmd = app.add_subcommand("returns", "Build daily log-return curves from ticks");
    ret_cmd->add_option("--input", ret.input, "Tick CSV (date,time,price)")->required();
    ret_cmd->add_option("--h", ret.h, "Return horizon in seconds")->required()->check(CLI::PositiveNumber);
    ret_cmd->add_option("--session", ret.session, "Session length in seconds")->required()->check(CLI::PositiveNumber);
    ret_cmd->add_option("--out", ret.out, "Output panel CSV")->required();
    ret_cmd->add_option("--drop-report", ret.drop_report, "Dropped-day report (default OUT.dropped.csv)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << "\n";
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n";
        const auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        err << sub->help();
        return kExitUsage;
    }

    CLI::App* cmd = app.get_subcommands().front();
    try {
        if (cmd == sim_cmd) return do_simulate(sim, args, out);
        if (cmd == fit_cmd) return do_fit(fitf, out);
        if (cmd == diag_cmd) return do_diagnose(diag, out);
        return do_returns(ret, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n\n" << cmd->help();
        return kExitUsage;
    } catch (const IllConditioned& e) {
        err << "IllConditioned: " << e.what();
        if (e.largest_usable_k() > 0) err << "; retry with --K " << e.largest_usable_k();
        err << "\n";
        return kExitFailure;
    } catch (const Error& e) {
        err << e.kind() << ": " << e.what() << "\n";
        return kExitFailure;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "IoError: " << e.what() << "\n";
        return kExitFailure;
    }
}

}  // namespace farch::cli
