// Acceptance suite: runs every release criterion at its stated tolerance and
// prints one pass/fail line per criterion. Exit code is the failure count.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ols_oracle.hpp"
#include "tsmom/backtest.hpp"
#include "tsmom/cross_section.hpp"
#include "tsmom/errors.hpp"
#include "tsmom/io.hpp"
#include "tsmom/market_data.hpp"
#include "tsmom/synthetic.hpp"

using namespace tsmom;

namespace {

struct Outcome {
    std::string name;
    bool pass = false;
    std::string detail;
};

std::vector<Outcome>& outcomes() {
    static std::vector<Outcome> all;
    return all;
}

void record(const std::string& name, bool pass, const std::string& detail) {
    outcomes().push_back({name, pass, detail});
}

ReturnSeries ar1(double phi, double sigma, int months, std::uint64_t seed) {
    Ar1Spec spec;
    spec.phi = phi;
    spec.mu = 0.0;
    spec.sigma = sigma;
    spec.months = months;
    spec.seed = seed;
    return gen_ar1(spec);
}

ReturnSeries uniform_returns(std::mt19937_64& rng, int months) {
    std::uniform_real_distribution<double> dist(-0.1, 0.1);
    std::vector<double> values(months);
    for (auto& v : values) v = dist(rng);
    return ReturnSeries("A", MonthStamp{2000, 1}, std::move(values));
}

// --------------------------------------------------------------------------
// 1. Grid completeness and runtime
// --------------------------------------------------------------------------
void criterion_grid_completeness() {
    GridSpec spec;
    const std::vector<int> expected{1, 3, 6, 9, 12, 24, 36, 48, 60};
    bool pass = spec.lookbacks == expected && spec.holdings == expected;

    const ReturnSeries r = ar1(0.1, 0.05, 300, 42);
    const RiskFreeSeries rf = RiskFreeSeries::zero(r.span());
    const auto t0 = std::chrono::steady_clock::now();
    const GridResult grid = run_grid(r, rf, spec, 1);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    pass = pass && grid.cell_count() == 81 && seconds < 1.0;
    char detail[128];
    std::snprintf(detail, sizeof(detail), "81 cells over J,K in {1,...,60}; %d cells, %.3f s",
                  grid.cell_count(), seconds);
    record("grid-completeness", pass, detail);
}

// --------------------------------------------------------------------------
// 2. Strategy means equal the brute-force month-by-month evaluation
// --------------------------------------------------------------------------
double oracle_strategy_mean(const std::vector<double>& returns, const std::vector<double>& rf,
                            int j_months, int k_months, bool mop) {
    const int t_count = static_cast<int>(returns.size());
    std::vector<int> sig(t_count, 0);
    for (int t = j_months; t < t_count; ++t) {
        double acc = 0.0;
        for (int lag = 1; lag <= j_months; ++lag) {
            if (mop) {
                acc += returns[t - lag] - rf[t - lag];
            } else {
                acc += static_cast<double>(j_months - lag + 1) * returns[t - lag];
            }
        }
        acc /= j_months;
        sig[t] = acc > 0.0 ? 1 : (acc < 0.0 ? -1 : 0);
    }
    // The in-force signals at month t are sig[t], sig[t-1], .., sig[t-K+1]
    // (look-back windows ending t-1 .. t-K; no skip month).
    double sum = 0.0;
    int n = 0;
    for (int t = j_months + k_months - 1; t < t_count; ++t) {
        double avg_sig = 0.0;
        for (int m = 0; m < k_months; ++m) avg_sig += sig[t - m];
        avg_sig /= k_months;
        sum += avg_sig * (returns[t] - rf[t]);
        ++n;
    }
    return sum / n;
}

void criterion_strategy_mean_oracle() {
    std::mt19937_64 rng(1001);
    std::uniform_int_distribution<int> t_dist(15, 60);
    std::uniform_int_distribution<int> jk_dist(1, 6);
    std::uniform_real_distribution<double> ret_dist(-0.1, 0.1);
    std::uniform_real_distribution<double> rf_dist(0.0, 0.004);

    double worst = 0.0;
    int runs = 0;
    while (runs < 1000) {
        const int t_count = t_dist(rng);
        const int j = jk_dist(rng);
        const int k = jk_dist(rng);
        if (t_count <= j + k) continue;
        std::vector<double> returns(t_count), rf_values(t_count);
        for (auto& v : returns) v = ret_dist(rng);
        for (auto& v : rf_values) v = rf_dist(rng);
        const ReturnSeries r("A", MonthStamp{2000, 1}, returns);
        const RiskFreeSeries rf(MonthStamp{2000, 1}, rf_values);
        const bool mop = runs % 2 == 0;

        const StrategyStats stats =
            run_strategy(r, rf, j, k, mop ? SignalMethod::MOP : SignalMethod::HL,
                         LagPolicy::holding_linked());
        const double oracle = oracle_strategy_mean(returns, rf_values, j, k, mop);
        worst = std::max(worst, std::fabs(stats.mean_monthly - oracle));
        ++runs;
    }
    char detail[96];
    std::snprintf(detail, sizeof(detail), "1000 runs, max |engine - oracle| = %.2e", worst);
    record("strategy-mean-oracle", worst <= 1e-12, detail);
}

// --------------------------------------------------------------------------
// 3. HL and MOP coincide for J = 1 with a zero risk-free rate
// --------------------------------------------------------------------------
void criterion_signal_coincidence() {
    std::mt19937_64 rng(1002);
    int mismatches = 0;
    for (int rep = 0; rep < 1000; ++rep) {
        const ReturnSeries r = uniform_returns(rng, 10 + static_cast<int>(rng() % 50));
        const RiskFreeSeries rf = RiskFreeSeries::zero(r.span());
        const SignalSeries hl = signal_series(r, rf, 1, SignalMethod::HL);
        const SignalSeries mop = signal_series(r, rf, 1, SignalMethod::MOP);
        for (int i = 0; i < hl.size(); ++i) {
            if (hl[i] != mop[i]) ++mismatches;
        }
    }
    char detail[96];
    std::snprintf(detail, sizeof(detail), "1000 inputs, %d mismatching signals", mismatches);
    record("signal-coincidence", mismatches == 0, detail);
}

// --------------------------------------------------------------------------
// 4. Scale invariance and antisymmetry of the signals
// --------------------------------------------------------------------------
void criterion_scale_antisymmetry() {
    std::mt19937_64 rng(1003);
    std::uniform_real_distribution<double> lambda_dist(0.01, 100.0);
    int violations = 0;
    for (int rep = 0; rep < 1000; ++rep) {
        const ReturnSeries r = uniform_returns(rng, 30);
        const RiskFreeSeries rf = RiskFreeSeries::zero(r.span());
        const int j = 1 + static_cast<int>(rng() % 6);
        const SignalMethod method = rep % 2 == 0 ? SignalMethod::HL : SignalMethod::MOP;
        const SignalSeries base = signal_series(r, rf, j, method);

        const double lambda = lambda_dist(rng);
        std::vector<double> scaled(r.values().begin(), r.values().end());
        std::vector<double> negated(r.values().begin(), r.values().end());
        for (auto& v : scaled) v *= lambda;
        for (auto& v : negated) v = -v;
        const ReturnSeries rs("A", r.start(), scaled);
        const ReturnSeries rn("A", r.start(), negated);

        const SignalSeries s_scaled = signal_series(rs, rf, j, method);
        const SignalSeries s_negated = signal_series(rn, rf, j, method);
        for (int i = 0; i < base.size(); ++i) {
            if (s_scaled[i] != base[i]) ++violations;
            if (s_negated[i] != -base[i]) ++violations;
        }
    }
    char detail[96];
    std::snprintf(detail, sizeof(detail), "1000 cases, %d violations", violations);
    record("scale-antisymmetry", violations == 0, detail);
}

// --------------------------------------------------------------------------
// 5. Newey-West: lag 0 vs classical; planted MA(2) long-run variance
// --------------------------------------------------------------------------
void criterion_newey_west() {
    std::mt19937_64 rng(1005);
    std::normal_distribution<double> noise(0.005, 0.04);
    double worst = 0.0;
    for (int rep = 0; rep < 500; ++rep) {
        std::vector<double> xs(20 + static_cast<int>(rng() % 200));
        for (auto& x : xs) x = noise(rng);
        double mean = 0.0;
        for (double x : xs) mean += x;
        mean /= xs.size();
        double var = 0.0;
        for (double x : xs) var += (x - mean) * (x - mean);
        var /= xs.size();
        const double classical = mean / std::sqrt(var / xs.size());
        worst = std::max(worst, std::fabs(nw_tstat(xs, 0) - classical));
    }
    const bool lag0_pass = worst <= 1e-10;

    // Planted MA(2): x_t = mu + e_t + th1 e_{t-1} + th2 e_{t-2}; the long-run
    // variance of the sample mean is sigma^2 (1 + th1 + th2)^2 / T.
    const double th1 = 0.1, th2 = -0.05, sigma = 1.0, mu = 0.002;
    const int t_count = 10000;
    const double analytic = sigma * sigma * (1.0 + th1 + th2) * (1.0 + th1 + th2) / t_count;
    std::mt19937_64 ma_rng(1006);
    std::normal_distribution<double> eps_dist(0.0, sigma);
    int within = 0;
    const int reps = 200;
    for (int rep = 0; rep < reps; ++rep) {
        std::vector<double> eps(t_count + 2);
        for (auto& e : eps) e = eps_dist(ma_rng);
        std::vector<double> xs(t_count);
        for (int i = 0; i < t_count; ++i) {
            xs[i] = mu + eps[i + 2] + th1 * eps[i + 1] + th2 * eps[i];
        }
        const double estimate = nw_variance(xs, 2);
        if (std::fabs(estimate - analytic) <= 0.10 * analytic) ++within;
    }
    const bool ma_pass = within >= static_cast<int>(0.95 * reps);

    char detail[128];
    std::snprintf(detail, sizeof(detail),
                  "lag0 max |nw - classical| = %.2e; MA(2) within 10%%: %d/%d", worst, within,
                  reps);
    record("newey-west", lag0_pass && ma_pass, detail);
}

// --------------------------------------------------------------------------
// 6. Profitability-regression recovery
// --------------------------------------------------------------------------
GroupGridSet planted_grid_set(const std::vector<double>& beta, double noise_sd,
                              std::mt19937_64* rng) {
    // beta = (alpha, beta_J, beta_K, g2, g3, g4, g5)
    std::normal_distribution<double> noise(0.0, noise_sd);
    GridSpec spec;
    GroupGridSet set;
    set.spec = spec;
    for (int g = 0; g < 5; ++g) {
        std::vector<StrategyStats> cells;
        for (int j : spec.lookbacks) {
            for (int k : spec.holdings) {
                StrategyStats cell;
                cell.lookback_j = j;
                cell.holding_k = k;
                cell.annualized_er = beta[0] + beta[1] * j + beta[2] * k;
                if (g >= 1) cell.annualized_er += beta[2 + g];
                if (noise_sd > 0.0) cell.annualized_er += noise(*rng);
                cell.mean_monthly = cell.annualized_er / 12.0;
                cell.t_stat = 1.0;
                cell.n_months = 240;
                cells.push_back(cell);
            }
        }
        set.grids.emplace(quintile_label(g), GridResult(spec, cells));
    }
    return set;
}

void criterion_regression_recovery() {
    const std::vector<double> beta{0.16, -0.001, -0.002, -0.07, -0.06, -0.10, -0.05};

    // Zero noise: exact recovery.
    const GroupGridSet clean = planted_grid_set(beta, 0.0, nullptr);
    const RegressionDataset dataset = build_regression_dataset(clean);
    const RegressionFit fit = fit_profitability_regression(dataset);
    double worst = std::fabs(fit.alpha - beta[0]);
    worst = std::max(worst, std::fabs(fit.beta_j - beta[1]));
    worst = std::max(worst, std::fabs(fit.beta_k - beta[2]));
    for (int g = 0; g < 4; ++g) worst = std::max(worst, std::fabs(fit.g[g] - beta[3 + g]));
    const bool clean_pass = worst <= 1e-9 && std::fabs(fit.r_squared - 1.0) <= 1e-9;

    // Gaussian noise: t-stats match the brute-force normal-equation oracle.
    std::mt19937_64 rng(1007);
    double worst_t = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
        const GroupGridSet noisy = planted_grid_set(beta, 0.02, &rng);
        const RegressionDataset data = build_regression_dataset(noisy);
        const RegressionFit noisy_fit = fit_profitability_regression(data);

        std::vector<std::vector<double>> rows;
        std::vector<double> response;
        const Matrix design = data.design();
        for (int i = 0; i < design.rows(); ++i) {
            std::vector<double> row(7);
            for (int c = 0; c < 7; ++c) row[c] = design(i, c);
            rows.push_back(row);
            response.push_back(data.rows[i].er);
        }
        const auto oracle = tsmom::testing::oracle_ols(rows, response);
        const std::vector<double> engine_t{noisy_fit.alpha_t, noisy_fit.beta_j_t,
                                           noisy_fit.beta_k_t, noisy_fit.g_t[0],
                                           noisy_fit.g_t[1], noisy_fit.g_t[2],
                                           noisy_fit.g_t[3]};
        for (int c = 0; c < 7; ++c) {
            worst_t = std::max(worst_t, std::fabs(engine_t[c] - oracle.t_stats[c]));
        }
    }
    const bool noisy_pass = worst_t <= 1e-8;

    char detail[128];
    std::snprintf(detail, sizeof(detail),
                  "zero-noise max coef err = %.2e, R2 = %.12f; noisy max t err = %.2e", worst,
                  fit.r_squared, worst_t);
    record("regression-recovery", clean_pass && noisy_pass, detail);
}

// --------------------------------------------------------------------------
// 7. Directional oracle on planted AR(1) momentum / reversal
// --------------------------------------------------------------------------
void criterion_directional_oracle() {
    int pos_hits = 0, neg_hits = 0;
    const int seeds = 20;
    for (int seed = 1; seed <= seeds; ++seed) {
        const ReturnSeries up = ar1(0.2, 0.05, 600, static_cast<std::uint64_t>(seed));
        const RiskFreeSeries rf = RiskFreeSeries::zero(up.span());
        const StrategyStats s_up =
            run_strategy(up, rf, 1, 1, SignalMethod::MOP, LagPolicy::holding_linked());
        if (s_up.valid() && s_up.mean_monthly > 0.0 && s_up.t_stat > 1.96) ++pos_hits;

        const ReturnSeries down = ar1(-0.2, 0.05, 600, static_cast<std::uint64_t>(seed));
        const StrategyStats s_down =
            run_strategy(down, rf, 1, 1, SignalMethod::MOP, LagPolicy::holding_linked());
        if (s_down.valid() && s_down.mean_monthly < 0.0 && s_down.t_stat < -1.96) ++neg_hits;
    }
    char detail[96];
    std::snprintf(detail, sizeof(detail), "phi=+0.2: %d/20 with t>1.96; phi=-0.2: %d/20 with t<-1.96",
                  pos_hits, neg_hits);
    record("directional-oracle", pos_hits >= 18 && neg_hits >= 18, detail);
}

// --------------------------------------------------------------------------
// 8. Null calibration on pure random walks (+ 9. partition on every grid)
// --------------------------------------------------------------------------
bool check_partition(const GridResult& grid) {
    for (auto level : {SignificanceLevel::Pct5, SignificanceLevel::Pct1}) {
        const ClassificationSummary s = classify(grid, level);
        const double total = s.pos_sig + s.pos_insig + s.neg_sig + s.neg_insig;
        if (std::fabs(total - 1.0) > 1e-12) return false;
        int valid = 0;
        for (const auto& cell : grid.cells()) valid += cell.valid() ? 1 : 0;
        if (valid != s.valid_cells) return false;
    }
    return true;
}

void criterion_null_calibration_and_partition() {
    const int seeds = 200;
    long starred = 0, cells_total = 0, positive = 0;
    bool partition_ok = true;
    GridSpec spec;
    for (int seed = 1; seed <= seeds; ++seed) {
        const ReturnSeries r = ar1(0.0, 0.05, 600, 5000 + static_cast<std::uint64_t>(seed));
        const RiskFreeSeries rf = RiskFreeSeries::zero(r.span());
        const GridResult grid = run_grid(r, rf, spec, 4);
        partition_ok = partition_ok && check_partition(grid);
        for (const auto& cell : grid.cells()) {
            if (!cell.valid()) continue;
            ++cells_total;
            if (cell.significance != Significance::None) ++starred;
            if (cell.mean_monthly > 0.0) ++positive;
        }
    }
    const double star_rate = static_cast<double>(starred) / cells_total;
    const double pos_rate = static_cast<double>(positive) / cells_total;
    const bool rate_ok = star_rate >= 0.005 && star_rate <= 0.15;
    const bool sign_ok = pos_rate >= 0.40 && pos_rate <= 0.60;

    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "200 seeds x 81 cells: starred at 5%% = %.3f (band [0.005, 0.15]); positive share = %.3f",
                  star_rate, pos_rate);
    record("null-calibration", rate_ok && sign_ok, detail);
    record("classification-partition", partition_ok,
           "four categories partition valid cells, proportions sum to 1 +/- 1e-12 (400 grids)");
}

// --------------------------------------------------------------------------
// 10. Sector protocol coincidence on single-member sectors
// --------------------------------------------------------------------------
void criterion_protocol_coincidence() {
    std::vector<ReturnSeries> returns;
    SectorMap sectors;
    const Sector all[] = {Sector::Energy, Sector::Materials, Sector::Technology,
                          Sector::PublicUtilities};
    for (int i = 0; i < 4; ++i) {
        Ar1Spec spec;
        spec.phi = 0.1;
        spec.sigma = 0.05;
        spec.months = 200 + 10 * i;
        spec.seed = 900 + i;
        spec.asset = "S" + std::to_string(i);
        spec.asset_index = i;
        returns.push_back(gen_ar1(spec));
        sectors.insert(returns.back().asset(), all[i]);
    }
    GridSpec spec;
    spec.lookbacks = {1, 3, 6, 12};
    spec.holdings = {1, 3, 6, 12};
    spec.method = SignalMethod::HL;
    const RiskFreeSeries rf = RiskFreeSeries::zero(MonthSpan{MonthStamp{2000, 1}, 240});

    const auto index_grids = sector_index_grid(sectors, returns, rf, spec);
    const auto within_grids = sector_within_grid(sectors, returns, rf, spec);
    bool identical = index_grids.size() == within_grids.size();
    for (const auto& [label, grid] : index_grids) {
        const GridResult& other = within_grids.at(label);
        for (int i = 0; i < grid.cell_count() && identical; ++i) {
            const auto& a = grid.cells()[i];
            const auto& b = other.cells()[i];
            identical = a.mean_monthly == b.mean_monthly &&
                        ((std::isnan(a.t_stat) && std::isnan(b.t_stat)) || a.t_stat == b.t_stat) &&
                        a.n_months == b.n_months && a.error == b.error;
        }
    }
    record("protocol-coincidence", identical,
           "index and within grids bit-identical over 4 single-member sectors x 16 cells");
}

// --------------------------------------------------------------------------
// 11. Determinism across worker counts and repeated runs
// --------------------------------------------------------------------------
void criterion_determinism() {
    // grid
    const ReturnSeries r = ar1(0.15, 0.05, 300, 77);
    const RiskFreeSeries rf = RiskFreeSeries::zero(r.span());
    GridSpec spec;
    spec.method = SignalMethod::HL;
    const std::string grid_once = emit_grid_table(run_grid(r, rf, spec, 1), TableFormat::Csv);
    bool ok = true;
    for (int workers : {1, 2, 8}) {
        ok = ok && emit_grid_table(run_grid(r, rf, spec, workers), TableFormat::Csv) == grid_once;
    }

    // groups (quintiles over a five-asset panel)
    std::vector<ReturnSeries> panel;
    FactorPanel factor(Factor::ClosingPrice);
    for (int i = 0; i < 5; ++i) {
        Ar1Spec s;
        s.phi = 0.05;
        s.sigma = 0.05;
        s.months = 240;
        s.seed = 600 + i;
        s.asset_index = i;
        s.asset = "P" + std::to_string(i);
        panel.push_back(gen_ar1(s));
        factor.insert(panel.back().asset(), MonthStamp{2000, 1}, 10.0 * (i + 1));
    }
    const RiskFreeSeries rf_panel = RiskFreeSeries::zero(MonthSpan{MonthStamp{2000, 1}, 240});
    GridSpec small = spec;
    small.lookbacks = {1, 3, 6};
    small.holdings = {1, 3, 6};
    const GroupAssignment assignment =
        form_quintiles_monthly(factor, MonthSpan{MonthStamp{2000, 1}, 240});
    auto render_groups = [&](int workers) {
        std::string out;
        for (const auto& [label, grid] :
             group_grids(assignment, panel, rf_panel, small, workers).grids) {
            out += label + "\n" + emit_grid_table(grid, TableFormat::Csv);
        }
        return out;
    };
    const std::string groups_once = render_groups(1);
    ok = ok && render_groups(1) == groups_once && render_groups(4) == groups_once;

    // sectors (both protocols)
    SectorMap sectors;
    sectors.insert("P0", Sector::Energy);
    sectors.insert("P1", Sector::Energy);
    sectors.insert("P2", Sector::Materials);
    sectors.insert("P3", Sector::Materials);
    sectors.insert("P4", Sector::Technology);
    auto render_sectors = [&](int workers, bool within) {
        std::string out;
        const auto grids =
            within ? sector_within_grid(sectors, panel, rf_panel, small, workers)
                   : sector_index_grid(sectors, panel, rf_panel, small, workers);
        for (const auto& [label, grid] : grids) {
            out += label + "\n" + emit_grid_table(grid, TableFormat::Csv);
        }
        return out;
    };
    for (bool within : {false, true}) {
        const std::string once = render_sectors(1, within);
        ok = ok && render_sectors(1, within) == once && render_sectors(8, within) == once;
    }

    record("determinism", ok,
           "grid/groups/sectors byte-identical across {1,2,4,8} workers and repeated runs");
}

// --------------------------------------------------------------------------
// 12. Table fidelity against the golden file
// --------------------------------------------------------------------------
void criterion_table_fidelity() {
#ifndef TSMOM_TEST_DIR
#define TSMOM_TEST_DIR "."
#endif
    const std::string golden_path = std::string(TSMOM_TEST_DIR) + "/golden/grid_hl.txt";
    std::ifstream in(golden_path, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string golden = buffer.str();

    const ReturnSeries r = ar1(0.2, 0.05, 300, 7);
    const RiskFreeSeries rf = RiskFreeSeries::zero(r.span());
    GridSpec spec;
    spec.method = SignalMethod::HL;
    const std::string rendered = emit_grid_table(run_grid(r, rf, spec, 1),
                                                 TableFormat::AlignedText);

    // Layout conventions: one row per J, one column per K, two decimals,
    // star markers explained in the legend.
    bool layout = rendered.find("J\\K") != std::string::npos &&
                  rendered.find("*=5% **=1%") != std::string::npos;
    int rows = 0;
    std::istringstream lines(rendered);
    std::string line;
    while (std::getline(lines, line)) ++rows;
    layout = layout && rows == 11;  // legend + header + 9 J rows

    const bool pass = layout && !golden.empty() && rendered == golden;
    record("table-fidelity", pass,
           pass ? "aligned-text grid matches the golden file byte for byte"
                : "rendered table differs from " + golden_path);
}

}  // namespace

int main() {
    criterion_grid_completeness();
    criterion_strategy_mean_oracle();
    criterion_signal_coincidence();
    criterion_scale_antisymmetry();
    criterion_newey_west();
    criterion_regression_recovery();
    criterion_directional_oracle();
    criterion_null_calibration_and_partition();
    criterion_protocol_coincidence();
    criterion_determinism();
    criterion_table_fidelity();

    int failed = 0;
    for (std::size_t i = 0; i < outcomes().size(); ++i) {
        const Outcome& o = outcomes()[i];
        std::printf("[%s] %02zu %-26s %s\n", o.pass ? "PASS" : "FAIL", i + 1, o.name.c_str(),
                    o.detail.c_str());
        if (!o.pass) ++failed;
    }
    std::printf("%zu criteria, %d failed\n", outcomes().size(), failed);
    return failed;
}
