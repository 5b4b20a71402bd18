// tsmom - time series momentum / contrarian research engine CLI.
//
// Subcommands:
//   grid     J x K strategy grid for one asset (Table-1 style output)
//   groups   factor-quintile group grids + classification summary
//   regress  profitability regression over quintile grids
//   sectors  per-sector grids (index or within protocol) + proportions
//   synth    seeded synthetic price panels (AR(1) / random walk)
//
// Exit codes: 0 success, 1 data error, 2 usage error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tsmom/backtest.hpp"
#include "tsmom/cross_section.hpp"
#include "tsmom/errors.hpp"
#include "tsmom/io.hpp"
#include "tsmom/market_data.hpp"
#include "tsmom/synthetic.hpp"

namespace {

using namespace tsmom;

/// Command-line misuse distinct from data errors; exits with code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string trim_ws(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

/// Applies a plain key=value config file to every option the command line
/// left untouched, so flags always win on conflict. Keys name long options
/// without the leading dashes; blank lines and # comments are ignored.
void apply_config(CLI::App* cmd, const std::string& path) {
    if (path.empty()) return;
    std::ifstream in(path);
    if (!in.is_open()) throw UsageError("cannot open config file " + path);
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string entry = trim_ws(line);
        if (entry.empty() || entry[0] == '#') continue;
        const auto eq = entry.find('=');
        if (eq == std::string::npos) {
            throw UsageError(path + ":" + std::to_string(line_no) + ": expected key=value");
        }
        const std::string key = trim_ws(entry.substr(0, eq));
        const std::string value = trim_ws(entry.substr(eq + 1));
        CLI::Option* opt = cmd->get_option_no_throw("--" + key);
        if (opt == nullptr) {
            throw UsageError(path + ":" + std::to_string(line_no) + ": unknown option --" + key);
        }
        if (opt->count() > 0) continue;  // set on the command line
        try {
            opt->add_result(value);
            opt->run_callback();
        } catch (const CLI::Error& e) {
            throw UsageError(path + ":" + std::to_string(line_no) + ": --" + key + ": " +
                             e.what());
        }
    }
}

void require_value(const std::string& value, const char* flag) {
    if (value.empty()) throw UsageError(std::string("missing required option ") + flag);
}

struct CommonOpts {
    std::string prices_path;
    std::string riskfree_path;
    std::string method = "mop";
    std::vector<int> lookbacks{1, 3, 6, 9, 12, 24, 36, 48, 60};
    std::vector<int> holdings{1, 3, 6, 9, 12, 24, 36, 48, 60};
    std::string lag = "auto";
    double crit5 = kCrit5;
    double crit1 = kCrit1;
    std::string level = "5";
    std::string format = "text";
    std::string out_path;
    std::string config_path;
    int workers = 1;
    bool rf_annual_pct = false;
    bool hl_use_excess = false;
};

void add_common(CLI::App* cmd, CommonOpts* opts) {
    cmd->add_option("--prices", opts->prices_path,
                    "price panel CSV (asset,month,close,adj_close)");
    cmd->add_option("--riskfree", opts->riskfree_path, "risk-free CSV (month,rate_monthly)");
    cmd->add_option("--method", opts->method, "signal method: hl or mop")
        ->check(CLI::IsMember({"hl", "mop", "HL", "MOP"}));
    cmd->add_option("--lookbacks", opts->lookbacks, "look-back months J (strictly increasing)")
        ->delimiter(',');
    cmd->add_option("--holdings", opts->holdings, "holding months K (strictly increasing)")
        ->delimiter(',');
    cmd->add_option("--lag", opts->lag, "Newey-West lag: auto (K-1) or a fixed integer");
    cmd->add_option("--crit5", opts->crit5, "two-sided critical value for *");
    cmd->add_option("--crit1", opts->crit1, "two-sided critical value for **");
    cmd->add_option("--level", opts->level, "classification level: 5 or 1")
        ->check(CLI::IsMember({"5", "1"}));
    cmd->add_option("--format", opts->format, "output format: text or csv")
        ->check(CLI::IsMember({"text", "csv"}));
    cmd->add_option("--out", opts->out_path, "write output to this path instead of stdout");
    cmd->add_option("--workers", opts->workers, "grid evaluation threads (0 = hardware)")
        ->check(CLI::Range(0, 1024));
    cmd->add_flag("--rf-annual-pct", opts->rf_annual_pct,
                  "risk-free column holds annualized percents; convert to monthly log rates");
    cmd->add_flag("--hl-excess", opts->hl_use_excess,
                  "feed excess returns into HL (sensitivity analysis)");
    cmd->add_option("--config", opts->config_path,
                    "plain key=value config file; flags win on conflict");
}

void finish_common(CLI::App* cmd, CommonOpts* opts) {
    apply_config(cmd, opts->config_path);
    require_value(opts->prices_path, "--prices");
    require_value(opts->riskfree_path, "--riskfree");
}

GridSpec make_spec(const CommonOpts& opts) {
    GridSpec spec;
    spec.lookbacks = opts.lookbacks;
    spec.holdings = opts.holdings;
    spec.method = method_from_name(opts.method);
    if (opts.lag == "auto") {
        spec.nw_lag = LagPolicy::holding_linked();
    } else {
        int fixed = 0;
        try {
            std::size_t used = 0;
            fixed = std::stoi(opts.lag, &used);
            if (used != opts.lag.size()) throw std::invalid_argument(opts.lag);
        } catch (const std::exception&) {
            throw CLI::ValidationError("--lag", "expected 'auto' or a non-negative integer");
        }
        spec.nw_lag = LagPolicy::fixed(fixed);
    }
    spec.levels = SignificanceLevels{opts.crit5, opts.crit1};
    spec.signal_options.hl_use_excess = opts.hl_use_excess;
    spec.validate();
    return spec;
}

SignificanceLevel make_level(const CommonOpts& opts) {
    return opts.level == "1" ? SignificanceLevel::Pct1 : SignificanceLevel::Pct5;
}

TableFormat make_format(const CommonOpts& opts) {
    return opts.format == "csv" ? TableFormat::Csv : TableFormat::AlignedText;
}

void write_output(const CommonOpts& opts, const std::string& text) {
    if (opts.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(opts.out_path, std::ios::binary);
    if (!out.is_open()) throw Error("cannot open output path " + opts.out_path);
    out << text;
}

std::vector<ReturnSeries> returns_from_prices(const std::vector<PriceSeries>& prices,
                                              bool use_adjusted) {
    std::vector<ReturnSeries> out;
    out.reserve(prices.size());
    for (const auto& p : prices) out.push_back(log_returns(p, use_adjusted));
    return out;
}

void require_rf_coverage(const ReturnSeries& series, const RiskFreeSeries& rf) {
    if (!rf.covers(series.span())) {
        MonthStamp missing =
            rf.covers(series.start()) ? rf.span().last().next() : series.start();
        throw MissingRiskFree("risk-free series does not cover " + missing.str() + " needed by " +
                              series.asset());
    }
}

// ---------------------------------------------------------------------------
// grid
// ---------------------------------------------------------------------------

struct GridArgs {
    CommonOpts common;
    std::string asset;
    bool adjusted = false;  // indices trade on raw closes by default
};

int run_grid_command(const GridArgs& args) {
    const auto prices = load_prices(args.common.prices_path);
    const PriceSeries* chosen = nullptr;
    if (args.asset.empty()) {
        if (prices.size() != 1) {
            std::string names;
            for (const auto& p : prices) names += " " + p.asset();
            throw Error("price file has " + std::to_string(prices.size()) +
                        " assets; pick one with --asset:" + names);
        }
        chosen = &prices.front();
    } else {
        for (const auto& p : prices) {
            if (p.asset() == args.asset) chosen = &p;
        }
        if (chosen == nullptr) throw Error("asset " + args.asset + " not in price file");
    }

    const ReturnSeries returns = log_returns(*chosen, args.adjusted);
    const RiskFreeSeries rf = load_riskfree(args.common.riskfree_path, args.common.rf_annual_pct);
    require_rf_coverage(returns, rf);

    const GridSpec spec = make_spec(args.common);
    const GridResult grid = run_grid(returns, rf, spec, args.common.workers);
    write_output(args.common, emit_grid_table(grid, make_format(args.common)));
    return 0;
}

// ---------------------------------------------------------------------------
// groups / regress
// ---------------------------------------------------------------------------

struct GroupsArgs {
    CommonOpts common;
    std::string factors_path;
    std::string factor_name = "ClosingPrice";
    bool raw_close = false;  // stocks trade on adjusted prices by default
};

GroupGridSet build_group_grids(const GroupsArgs& args, const GridSpec& spec,
                               const RiskFreeSeries& rf) {
    const auto prices = load_prices(args.common.prices_path);
    const auto returns = returns_from_prices(prices, !args.raw_close);
    const auto panels = load_factors(args.factors_path);
    const Factor factor = factor_from_name(args.factor_name);
    auto it = panels.find(factor);
    if (it == panels.end()) {
        throw Error(std::string("factor file has no rows for ") + factor_name(factor));
    }
    const FactorPanel& panel = it->second;

    // Assignments run from the first factor month through the last return
    // month; group series shrink to where member data exists.
    MonthStamp lo = panel.cells().begin()->second.begin()->first;
    MonthStamp hi = returns.front().span().last();
    for (const auto& [asset, by_month] : panel.cells()) {
        lo = std::min(lo, by_month.begin()->first);
    }
    for (const auto& r : returns) hi = std::max(hi, r.span().last());
    if (hi < lo) throw Error("factor data starts after the last return month");

    const GroupAssignment assignment =
        form_quintiles_monthly(panel, MonthSpan{lo, hi - lo + 1});
    for (const auto& [label, series] : group_returns(assignment, returns)) {
        require_rf_coverage(series, rf);
    }
    return group_grids(assignment, returns, rf, spec, args.common.workers);
}

int run_groups_command(const GroupsArgs& args) {
    const RiskFreeSeries rf = load_riskfree(args.common.riskfree_path, args.common.rf_annual_pct);
    const GridSpec spec = make_spec(args.common);
    const GroupGridSet set = build_group_grids(args, spec, rf);

    std::string out;
    std::map<std::string, ClassificationSummary> summaries;
    for (const auto& [label, grid] : set.grids) {
        out += "== " + label + " (" + args.factor_name + ") ==\n";
        out += emit_grid_table(grid, make_format(args.common));
        summaries.emplace(label, classify(grid, make_level(args.common)));
    }
    out += emit_classification_table(summaries, make_level(args.common));
    write_output(args.common, out);
    return 0;
}

struct RegressArgs {
    GroupsArgs groups;
    bool both_methods = true;
};

int run_regress_command(RegressArgs args) {
    const RiskFreeSeries rf =
        load_riskfree(args.groups.common.riskfree_path, args.groups.common.rf_annual_pct);

    std::vector<std::string> methods;
    if (args.both_methods) {
        methods = {"hl", "mop"};
    } else {
        methods = {args.groups.common.method};
    }

    std::string out = "ER = alpha + beta_J*J + beta_K*K + g2*D2 + g3*D3 + g4*D4 + g5*D5   (" +
                      args.groups.factor_name + ")\n";
    for (const std::string& method : methods) {
        args.groups.common.method = method;
        const GridSpec spec = make_spec(args.groups.common);
        const GroupGridSet set = build_group_grids(args.groups, spec, rf);
        const RegressionFit fit = fit_profitability_regression(build_regression_dataset(set));
        out += emit_regression(method_name(spec.method), fit, spec.levels);
    }
    write_output(args.groups.common, out);
    return 0;
}

// ---------------------------------------------------------------------------
// sectors
// ---------------------------------------------------------------------------

struct SectorsArgs {
    CommonOpts common;
    std::string sectors_path;
    std::string mode = "index";
    bool raw_close = false;
};

int run_sectors_command(const SectorsArgs& args) {
    const auto prices = load_prices(args.common.prices_path);
    const auto returns = returns_from_prices(prices, !args.raw_close);
    const RiskFreeSeries rf = load_riskfree(args.common.riskfree_path, args.common.rf_annual_pct);
    for (const auto& r : returns) require_rf_coverage(r, rf);
    const SectorMap sectors = load_sectors(args.sectors_path);
    const GridSpec spec = make_spec(args.common);

    const auto grids = args.mode == "within"
                           ? sector_within_grid(sectors, returns, rf, spec, args.common.workers)
                           : sector_index_grid(sectors, returns, rf, spec, args.common.workers);

    std::string out;
    std::map<std::string, ClassificationSummary> summaries;
    for (const auto& [label, grid] : grids) {
        out += "== " + label + " (" + args.mode + ") ==\n";
        out += emit_grid_table(grid, make_format(args.common));
        summaries.emplace(label, classify(grid, make_level(args.common)));
    }
    out += emit_classification_table(summaries, make_level(args.common));
    write_output(args.common, out);
    return 0;
}

// ---------------------------------------------------------------------------
// synth
// ---------------------------------------------------------------------------

struct SynthArgs {
    std::string model = "ar1";
    double phi = 0.0;
    double mu = 0.0;
    double sigma = 0.05;
    int months = 300;
    std::uint64_t seed = 1;
    std::string start = "2000-01";
    std::string asset = "SYN";
    std::string out_path;
};

int run_synth_command(const SynthArgs& args) {
    Ar1Spec spec;
    spec.phi = args.model == "rw" ? 0.0 : args.phi;
    spec.mu = args.mu;
    spec.sigma = args.sigma;
    spec.months = args.months;
    spec.seed = args.seed;
    spec.asset = args.asset;
    try {
        // The price panel starts one month before the first return.
        spec.start = MonthStamp::parse(args.start).next();
    } catch (const std::invalid_argument& e) {
        throw Error(e.what());
    }
    const ReturnSeries returns = gen_ar1(spec);

    // Convert to a price path anchored at 100 so the file round-trips
    // through load_prices / log_returns.
    std::vector<PricePoint> points;
    points.reserve(returns.size() + 1);
    double level = 100.0;
    points.push_back({level, level});
    for (int i = 0; i < returns.size(); ++i) {
        level *= std::exp(returns[i]);
        points.push_back({level, level});
    }
    const PriceSeries prices(args.asset, MonthStamp::parse(args.start), std::move(points));

    const std::string text = emit_prices({prices});
    if (args.out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(args.out_path, std::ios::binary);
        if (!out.is_open()) throw Error("cannot open output path " + args.out_path);
        out << text;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"time series momentum / contrarian research engine"};
    app.require_subcommand(1);

    GridArgs grid_args;
    auto* grid_cmd = app.add_subcommand("grid", "J x K strategy grid for one asset");
    add_common(grid_cmd, &grid_args.common);
    grid_cmd->add_option("--asset", grid_args.asset, "asset to evaluate (required when the file has several)");
    grid_cmd->add_flag("--adjusted", grid_args.adjusted, "use adjusted instead of raw closes");

    GroupsArgs groups_args;
    auto* groups_cmd = app.add_subcommand("groups", "factor-quintile group grids");
    add_common(groups_cmd, &groups_args.common);
    groups_cmd->add_option("--factors", groups_args.factors_path,
                           "factor CSV (asset,month,factor,value)");
    groups_cmd->add_option("--factor", groups_args.factor_name, "factor to sort on");
    groups_cmd->add_flag("--raw-close", groups_args.raw_close, "use raw instead of adjusted closes");

    RegressArgs regress_args;
    auto* regress_cmd = app.add_subcommand("regress", "profitability regression over quintiles");
    add_common(regress_cmd, &regress_args.groups.common);
    regress_cmd->add_option("--factors", regress_args.groups.factors_path,
                            "factor CSV (asset,month,factor,value)");
    regress_cmd->add_option("--factor", regress_args.groups.factor_name, "factor to sort on");
    regress_cmd->add_flag("--raw-close", regress_args.groups.raw_close,
                          "use raw instead of adjusted closes");
    bool regress_single = false;
    regress_cmd->add_flag("--single-method", regress_single,
                          "fit only --method instead of both HL and MOP");

    SectorsArgs sectors_args;
    auto* sectors_cmd = app.add_subcommand("sectors", "per-sector grids");
    add_common(sectors_cmd, &sectors_args.common);
    sectors_cmd->add_option("--sectors", sectors_args.sectors_path, "sector CSV (asset,sector)");
    sectors_cmd->add_option("--mode", sectors_args.mode, "protocol: index or within")
        ->check(CLI::IsMember({"index", "within"}));
    sectors_cmd->add_flag("--raw-close", sectors_args.raw_close,
                          "use raw instead of adjusted closes");

    SynthArgs synth_args;
    std::string synth_config;
    auto* synth_cmd = app.add_subcommand("synth", "seeded synthetic price panel");
    synth_cmd->add_option("--model", synth_args.model, "ar1 or rw")
        ->check(CLI::IsMember({"ar1", "rw"}));
    synth_cmd->add_option("--phi", synth_args.phi, "AR(1) coefficient, |phi| < 1");
    synth_cmd->add_option("--mu", synth_args.mu, "unconditional monthly mean");
    synth_cmd->add_option("--sigma", synth_args.sigma, "innovation standard deviation");
    synth_cmd->add_option("--T", synth_args.months, "number of monthly returns")
        ->check(CLI::PositiveNumber);
    synth_cmd->add_option("--seed", synth_args.seed, "random seed");
    synth_cmd->add_option("--start", synth_args.start, "first price month (YYYY-MM)");
    synth_cmd->add_option("--asset", synth_args.asset, "asset identifier");
    synth_cmd->add_option("--out", synth_args.out_path, "output path (stdout when omitted)");
    synth_cmd->add_option("--config", synth_config,
                          "plain key=value config file; flags win on conflict");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (grid_cmd->parsed()) {
            finish_common(grid_cmd, &grid_args.common);
            return run_grid_command(grid_args);
        }
        if (groups_cmd->parsed()) {
            finish_common(groups_cmd, &groups_args.common);
            require_value(groups_args.factors_path, "--factors");
            return run_groups_command(groups_args);
        }
        if (regress_cmd->parsed()) {
            finish_common(regress_cmd, &regress_args.groups.common);
            require_value(regress_args.groups.factors_path, "--factors");
            regress_args.both_methods = !regress_single;
            return run_regress_command(regress_args);
        }
        if (sectors_cmd->parsed()) {
            finish_common(sectors_cmd, &sectors_args.common);
            require_value(sectors_args.sectors_path, "--sectors");
            return run_sectors_command(sectors_args);
        }
        if (synth_cmd->parsed()) {
            apply_config(synth_cmd, synth_config);
            return run_synth_command(synth_args);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
