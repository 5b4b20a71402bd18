// Python bindings for the tsmom core: series types, signal generation, the
// J x K backtest grid, Newey-West inference, quintile/sector analytics, and
// the synthetic generators.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tsmom/backtest.hpp"
#include "tsmom/cross_section.hpp"
#include "tsmom/errors.hpp"
#include "tsmom/io.hpp"
#include "tsmom/market_data.hpp"
#include "tsmom/stats.hpp"
#include "tsmom/synthetic.hpp"

namespace py = pybind11;
using namespace tsmom;

namespace {

Matrix matrix_from_rows(const std::vector<std::vector<double>>& rows) {
    const int n = static_cast<int>(rows.size());
    const int p = n > 0 ? static_cast<int>(rows.front().size()) : 0;
    Matrix out(n, p);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[i].size()) != p) {
            throw Error("design rows have unequal lengths");
        }
        for (int j = 0; j < p; ++j) out(i, j) = rows[i][j];
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_tsmom, m) {
    m.doc() = "time series momentum / contrarian research engine";

    py::register_exception<Error>(m, "EngineError");

    py::class_<MonthStamp>(m, "MonthStamp")
        .def(py::init<int, int>(), py::arg("year"), py::arg("month"))
        .def_readonly("year", &MonthStamp::year)
        .def_readonly("month", &MonthStamp::month)
        .def("next", &MonthStamp::next)
        .def("plus", &MonthStamp::plus)
        .def("__str__", &MonthStamp::str)
        .def("__repr__", [](const MonthStamp& s) { return "MonthStamp(" + s.str() + ")"; })
        .def("__eq__", [](const MonthStamp& a, const MonthStamp& b) { return a == b; })
        .def("__lt__", [](const MonthStamp& a, const MonthStamp& b) { return a < b; })
        .def("__sub__", [](const MonthStamp& a, const MonthStamp& b) { return a - b; })
        .def_static("parse", &MonthStamp::parse);

    py::class_<MonthSpan>(m, "MonthSpan")
        .def(py::init([](MonthStamp start, int months) { return MonthSpan{start, months}; }),
             py::arg("start"), py::arg("months"))
        .def_readonly("start", &MonthSpan::start)
        .def_readonly("months", &MonthSpan::months)
        .def("empty", &MonthSpan::empty)
        .def("last", &MonthSpan::last)
        .def("contains", &MonthSpan::contains)
        .def("__repr__", [](const MonthSpan& s) {
            return s.empty() ? std::string("MonthSpan(empty)")
                             : "MonthSpan(" + s.start.str() + ".." + s.last().str() + ")";
        });

    py::class_<PricePoint>(m, "PricePoint")
        .def(py::init([](double close, double adj) { return PricePoint{close, adj}; }),
             py::arg("close"), py::arg("adj_close"))
        .def_readonly("close", &PricePoint::close)
        .def_readonly("adj_close", &PricePoint::adj_close);

    py::class_<PriceSeries>(m, "PriceSeries")
        .def(py::init<std::string, MonthStamp, std::vector<PricePoint>>(), py::arg("asset"),
             py::arg("start"), py::arg("points"))
        .def_property_readonly("asset", &PriceSeries::asset)
        .def("span", &PriceSeries::span)
        .def("__len__", &PriceSeries::size);

    py::class_<ReturnSeries>(m, "ReturnSeries")
        .def(py::init<std::string, MonthStamp, std::vector<double>>(), py::arg("asset"),
             py::arg("start"), py::arg("values"))
        .def_property_readonly("asset", &ReturnSeries::asset)
        .def("span", &ReturnSeries::span)
        .def("month", &ReturnSeries::month)
        .def("at", &ReturnSeries::at)
        .def("values",
             [](const ReturnSeries& s) {
                 return std::vector<double>(s.values().begin(), s.values().end());
             })
        .def("__len__", &ReturnSeries::size);

    py::class_<RiskFreeSeries>(m, "RiskFreeSeries")
        .def(py::init<MonthStamp, std::vector<double>>(), py::arg("start"), py::arg("values"))
        .def_static("zero", &RiskFreeSeries::zero, py::arg("span"))
        .def("span", &RiskFreeSeries::span)
        .def("at", &RiskFreeSeries::at)
        .def("__len__", &RiskFreeSeries::size);

    py::enum_<SignalMethod>(m, "SignalMethod")
        .value("MOP", SignalMethod::MOP)
        .value("HL", SignalMethod::HL);

    py::class_<SignalSeries>(m, "SignalSeries")
        .def_property_readonly("asset", &SignalSeries::asset)
        .def_property_readonly("method", &SignalSeries::method)
        .def_property_readonly("lookback_j", &SignalSeries::lookback_j)
        .def("span", &SignalSeries::span)
        .def("month", &SignalSeries::month)
        .def("at", &SignalSeries::at)
        .def("values",
             [](const SignalSeries& s) {
                 std::vector<int> out;
                 out.reserve(s.size());
                 for (int i = 0; i < s.size(); ++i) out.push_back(s[i]);
                 return out;
             })
        .def("__len__", &SignalSeries::size);

    // market-data operations
    m.def("log_returns", &log_returns, py::arg("prices"), py::arg("use_adjusted") = true);
    m.def("excess_returns", &excess_returns, py::arg("returns"), py::arg("riskfree"));
    m.def("align", py::overload_cast<const std::vector<ReturnSeries>&>(&align),
          py::arg("series"));
    m.def("monthly_rate_from_annual_pct", &monthly_rate_from_annual_pct, py::arg("annual_pct"));

    // signal engine
    m.def("signal_mop", &signal_mop, py::arg("excess"), py::arg("lookback_j"), py::arg("t"));
    m.def("signal_hl", &signal_hl, py::arg("returns"), py::arg("lookback_j"), py::arg("t"));
    m.def(
        "signal_series",
        [](const ReturnSeries& input, const RiskFreeSeries& rf, int lookback_j,
           SignalMethod method, bool hl_use_excess) {
            return signal_series(input, rf, lookback_j, method, SignalOptions{hl_use_excess});
        },
        py::arg("input"), py::arg("riskfree"), py::arg("lookback_j"), py::arg("method"),
        py::arg("hl_use_excess") = false);

    // stats
    py::class_<LagPolicy>(m, "LagPolicy")
        .def_static("fixed", &LagPolicy::fixed, py::arg("lag"))
        .def_static("holding_linked", &LagPolicy::holding_linked)
        .def("lag_for", &LagPolicy::lag_for)
        .def("__repr__", [](const LagPolicy& p) { return "LagPolicy(" + p.describe() + ")"; });

    m.def(
        "nw_variance",
        [](const std::vector<double>& stream, int lag) { return nw_variance(stream, lag); },
        py::arg("stream"), py::arg("lag"));
    m.def(
        "nw_tstat",
        [](const std::vector<double>& stream, int lag) { return nw_tstat(stream, lag); },
        py::arg("stream"), py::arg("lag"));
    m.def("annualize", &annualize, py::arg("mean_monthly"));

    py::class_<OlsFit>(m, "OlsFit")
        .def_readonly("coef", &OlsFit::coef)
        .def_readonly("std_err", &OlsFit::std_err)
        .def_readonly("t_stats", &OlsFit::t_stats)
        .def_readonly("r_squared", &OlsFit::r_squared)
        .def_readonly("sigma_eps_sq", &OlsFit::sigma_eps_sq)
        .def_readonly("n_obs", &OlsFit::n_obs);

    m.def(
        "ols_fit",
        [](const std::vector<std::vector<double>>& design, const std::vector<double>& response) {
            return ols_fit(matrix_from_rows(design), response);
        },
        py::arg("design"), py::arg("response"));

    py::class_<RegressionFit>(m, "RegressionFit")
        .def_readonly("alpha", &RegressionFit::alpha)
        .def_readonly("beta_j", &RegressionFit::beta_j)
        .def_readonly("beta_k", &RegressionFit::beta_k)
        .def_readonly("g", &RegressionFit::g)
        .def_readonly("alpha_t", &RegressionFit::alpha_t)
        .def_readonly("beta_j_t", &RegressionFit::beta_j_t)
        .def_readonly("beta_k_t", &RegressionFit::beta_k_t)
        .def_readonly("g_t", &RegressionFit::g_t)
        .def_readonly("r_squared", &RegressionFit::r_squared)
        .def_readonly("sigma_eps_sq", &RegressionFit::sigma_eps_sq)
        .def_readonly("n_obs", &RegressionFit::n_obs);

    // backtest grid
    py::enum_<StrategyClass>(m, "StrategyClass")
        .value("TSMOM", StrategyClass::TSMOM)
        .value("TSCON", StrategyClass::TSCON);

    py::enum_<Significance>(m, "Significance")
        .value("NONE", Significance::None)
        .value("SIG5", Significance::Sig5)
        .value("SIG1", Significance::Sig1);

    py::enum_<CellError>(m, "CellError")
        .value("NONE", CellError::None)
        .value("INSUFFICIENT_HISTORY", CellError::InsufficientHistory)
        .value("ZERO_VARIANCE", CellError::ZeroVariance);

    py::enum_<SignificanceLevel>(m, "SignificanceLevel")
        .value("PCT5", SignificanceLevel::Pct5)
        .value("PCT1", SignificanceLevel::Pct1);

    py::class_<GridSpec>(m, "GridSpec")
        .def(py::init<>())
        .def_readwrite("lookbacks", &GridSpec::lookbacks)
        .def_readwrite("holdings", &GridSpec::holdings)
        .def_readwrite("method", &GridSpec::method)
        .def_readwrite("nw_lag", &GridSpec::nw_lag)
        .def("validate", &GridSpec::validate);

    py::class_<StrategyStats>(m, "StrategyStats")
        .def_readonly("lookback_j", &StrategyStats::lookback_j)
        .def_readonly("holding_k", &StrategyStats::holding_k)
        .def_readonly("mean_monthly", &StrategyStats::mean_monthly)
        .def_readonly("annualized_er", &StrategyStats::annualized_er)
        .def_readonly("t_stat", &StrategyStats::t_stat)
        .def_readonly("n_months", &StrategyStats::n_months)
        .def_readonly("significance", &StrategyStats::significance)
        .def_readonly("strategy_class", &StrategyStats::strategy_class)
        .def_readonly("zero_mean", &StrategyStats::zero_mean)
        .def_readonly("error", &StrategyStats::error)
        .def("valid", &StrategyStats::valid);

    py::class_<GridResult>(m, "GridResult")
        .def_property_readonly("spec", &GridResult::spec)
        .def("cell", &GridResult::cell, py::arg("j_index"), py::arg("k_index"))
        .def("cells", &GridResult::cells)
        .def("j_count", &GridResult::j_count)
        .def("k_count", &GridResult::k_count);

    py::class_<ClassificationSummary>(m, "ClassificationSummary")
        .def_readonly("pos_sig", &ClassificationSummary::pos_sig)
        .def_readonly("pos_insig", &ClassificationSummary::pos_insig)
        .def_readonly("neg_sig", &ClassificationSummary::neg_sig)
        .def_readonly("neg_insig", &ClassificationSummary::neg_insig)
        .def_readonly("valid_cells", &ClassificationSummary::valid_cells);

    m.def(
        "run_strategy",
        [](const ReturnSeries& input, const RiskFreeSeries& rf, int lookback_j, int holding_k,
           SignalMethod method, const LagPolicy& lag) {
            return run_strategy(input, rf, lookback_j, holding_k, method, lag);
        },
        py::arg("input"), py::arg("riskfree"), py::arg("lookback_j"), py::arg("holding_k"),
        py::arg("method"), py::arg("lag") = LagPolicy::holding_linked());
    m.def("run_grid", &run_grid, py::arg("input"), py::arg("riskfree"), py::arg("spec"),
          py::arg("workers") = 1);
    m.def("classify", &classify, py::arg("grid"), py::arg("level") = SignificanceLevel::Pct5);

    // synthetic oracle
    m.def(
        "gen_ar1",
        [](double phi, double mu, double sigma, int months, std::uint64_t seed, int asset_index,
           const std::string& asset) {
            Ar1Spec spec;
            spec.phi = phi;
            spec.mu = mu;
            spec.sigma = sigma;
            spec.months = months;
            spec.seed = seed;
            spec.asset_index = asset_index;
            spec.asset = asset;
            return gen_ar1(spec);
        },
        py::arg("phi"), py::arg("mu"), py::arg("sigma"), py::arg("months"), py::arg("seed"),
        py::arg("asset_index") = 0, py::arg("asset") = "SYN");
    m.def(
        "gen_rw",
        [](double mu, double sigma, int months, std::uint64_t seed, int asset_index,
           const std::string& asset) {
            return gen_rw(mu, sigma, months, seed, asset_index, MonthStamp{2000, 1}, asset);
        },
        py::arg("mu"), py::arg("sigma"), py::arg("months"), py::arg("seed"),
        py::arg("asset_index") = 0, py::arg("asset") = "SYN");

    // cross section
    py::enum_<Factor>(m, "Factor")
        .value("CLOSING_PRICE", Factor::ClosingPrice)
        .value("ADJUSTED_PRICE", Factor::AdjustedPrice)
        .value("MARKET_VALUE_OUTSTANDING", Factor::MarketValueOutstanding)
        .value("MARKET_VALUE_ALL", Factor::MarketValueAll)
        .value("TURNOVER_RATE", Factor::TurnoverRate)
        .value("TRADING_VOLUME", Factor::TradingVolume);

    py::class_<FactorPanel>(m, "FactorPanel")
        .def(py::init<Factor>(), py::arg("factor"))
        .def_property_readonly("factor", &FactorPanel::factor)
        .def("insert", &FactorPanel::insert, py::arg("asset"), py::arg("month"),
             py::arg("value"))
        .def("__len__", &FactorPanel::size);

    py::enum_<Sector>(m, "Sector")
        .value("ENERGY", Sector::Energy)
        .value("MATERIALS", Sector::Materials)
        .value("INDUSTRY", Sector::Industry)
        .value("DISCRETIONARY_CONSUMPTION", Sector::DiscretionaryConsumption)
        .value("ESSENTIAL_CONSUMPTION", Sector::EssentialConsumption)
        .value("MEDICAL_AND_HEALTH", Sector::MedicalAndHealth)
        .value("FINANCE_AND_ESTATE", Sector::FinanceAndEstate)
        .value("TECHNOLOGY", Sector::Technology)
        .value("TELECOMMUNICATIONS", Sector::Telecommunications)
        .value("PUBLIC_UTILITIES", Sector::PublicUtilities);

    py::class_<SectorMap>(m, "SectorMap")
        .def(py::init<>())
        .def("insert", &SectorMap::insert, py::arg("asset"), py::arg("sector"))
        .def("at", &SectorMap::at, py::arg("asset"))
        .def("__len__", [](const SectorMap& s) { return s.entries().size(); });

    m.def("form_quintiles", &form_quintiles, py::arg("panel"), py::arg("month"));
    m.def("sector_index_grid", &sector_index_grid, py::arg("sectors"), py::arg("returns"),
          py::arg("riskfree"), py::arg("spec"), py::arg("workers") = 1);
    m.def("sector_within_grid", &sector_within_grid, py::arg("sectors"), py::arg("returns"),
          py::arg("riskfree"), py::arg("spec"), py::arg("workers") = 1);

    // rendering
    py::enum_<TableFormat>(m, "TableFormat")
        .value("ALIGNED_TEXT", TableFormat::AlignedText)
        .value("CSV", TableFormat::Csv);

    m.def("render_grid", &emit_grid_table, py::arg("grid"),
          py::arg("format") = TableFormat::AlignedText);
    m.def("render_classification", &emit_classification, py::arg("summary"),
          py::arg("level") = SignificanceLevel::Pct5);
}
