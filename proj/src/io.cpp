#include "tsmom/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "tsmom/errors.hpp"
#include "tsmom/market_data.hpp"

namespace tsmom {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line, char delim) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, delim)) out.push_back(trim(field));
    if (!line.empty() && line.back() == delim) out.push_back("");
    return out;
}

class CsvReader {
public:
    CsvReader(const std::filesystem::path& path, const std::string& expected_header)
        : path_(path.string()), in_(path) {
        if (!in_.is_open()) throw Error("cannot open " + path_);
        std::string header;
        if (!std::getline(in_, header)) {
            throw ParseError(path_, 1, "missing header row");
        }
        ++line_no_;
        if (trim(header) != expected_header) {
            throw ParseError(path_, 1, "expected header '" + expected_header + "'");
        }
        columns_ = static_cast<int>(split(expected_header, ',').size());
    }

    /// next row of exactly the header's arity; empty lines skipped.
    bool next(std::vector<std::string>* fields) {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_no_;
            if (trim(line).empty()) continue;
            *fields = split(line, ',');
            if (static_cast<int>(fields->size()) != columns_) {
                throw ParseError(path_, line_no_,
                                 "expected " + std::to_string(columns_) + " fields, got " +
                                     std::to_string(fields->size()));
            }
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(path_, line_no_, what);
    }

    MonthStamp parse_month(const std::string& text) const {
        try {
            return MonthStamp::parse(text);
        } catch (const std::invalid_argument& e) {
            fail(e.what());
        }
    }

    double parse_real(const std::string& text) const {
        try {
            std::size_t used = 0;
            const double v = std::stod(text, &used);
            if (used != text.size()) fail("trailing characters in number '" + text + "'");
            if (!std::isfinite(v)) fail("non-finite value '" + text + "'");
            return v;
        } catch (const std::invalid_argument&) {
            fail("bad number '" + text + "'");
        } catch (const std::out_of_range&) {
            fail("number out of range '" + text + "'");
        }
    }

    const std::string& path() const { return path_; }
    long line() const { return line_no_; }

private:
    std::string path_;
    std::ifstream in_;
    long line_no_ = 0;
    int columns_ = 0;
};

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::vector<PriceSeries> load_prices(const std::filesystem::path& path) {
    CsvReader reader(path, "asset,month,close,adj_close");

    std::map<std::string, std::map<MonthStamp, PricePoint>> rows;
    std::vector<std::string> fields;
    while (reader.next(&fields)) {
        const std::string& asset = fields[0];
        if (asset.empty()) reader.fail("empty asset identifier");
        const MonthStamp month = reader.parse_month(fields[1]);
        PricePoint point{reader.parse_real(fields[2]), reader.parse_real(fields[3])};
        if (!(point.close > 0.0) || !(point.adj_close > 0.0)) {
            throw NonPositivePrice(reader.path() + ":" + std::to_string(reader.line()) +
                                   ": non-positive price for " + asset + " at " + month.str());
        }
        auto [it, inserted] = rows[asset].emplace(month, point);
        if (!inserted) {
            throw DuplicateRow(reader.path() + ":" + std::to_string(reader.line()) +
                               ": duplicate row (" + asset + ", " + month.str() + ")");
        }
    }
    if (rows.empty()) throw ParseError(path.string(), reader.line(), "no data rows");

    std::vector<PriceSeries> out;
    out.reserve(rows.size());
    for (auto& [asset, by_month] : rows) {
        MonthStamp prev{};
        bool first = true;
        std::vector<PricePoint> points;
        points.reserve(by_month.size());
        for (const auto& [month, point] : by_month) {
            if (!first && month - prev != 1) {
                throw GapInSeries("asset " + asset + " is missing " + prev.next().str() +
                                  " in " + path.string());
            }
            prev = month;
            first = false;
            points.push_back(point);
        }
        out.emplace_back(asset, by_month.begin()->first, std::move(points));
    }
    return out;
}

RiskFreeSeries load_riskfree(const std::filesystem::path& path, bool annual_pct) {
    CsvReader reader(path, "month,rate_monthly");

    std::map<MonthStamp, double> rows;
    std::vector<std::string> fields;
    while (reader.next(&fields)) {
        const MonthStamp month = reader.parse_month(fields[0]);
        double rate = reader.parse_real(fields[1]);
        if (annual_pct) rate = monthly_rate_from_annual_pct(rate);
        if (!rows.emplace(month, rate).second) {
            throw DuplicateRow(reader.path() + ":" + std::to_string(reader.line()) +
                               ": duplicate month " + month.str());
        }
    }
    if (rows.empty()) throw ParseError(path.string(), reader.line(), "no data rows");

    MonthStamp prev{};
    bool first = true;
    std::vector<double> values;
    values.reserve(rows.size());
    for (const auto& [month, rate] : rows) {
        if (!first && month - prev != 1) {
            throw GapInSeries("risk-free series is missing " + prev.next().str() + " in " +
                              path.string());
        }
        prev = month;
        first = false;
        values.push_back(rate);
    }
    return RiskFreeSeries(rows.begin()->first, std::move(values));
}

std::map<Factor, FactorPanel> load_factors(const std::filesystem::path& path) {
    CsvReader reader(path, "asset,month,factor,value");

    std::map<Factor, FactorPanel> out;
    std::vector<std::string> fields;
    while (reader.next(&fields)) {
        const std::string& asset = fields[0];
        if (asset.empty()) reader.fail("empty asset identifier");
        const MonthStamp month = reader.parse_month(fields[1]);
        const Factor factor = factor_from_name(fields[2]);  // throws UnknownFactor
        const double value = reader.parse_real(fields[3]);
        auto it = out.find(factor);
        if (it == out.end()) it = out.emplace(factor, FactorPanel(factor)).first;
        try {
            it->second.insert(asset, month, value);
        } catch (const DuplicateRow&) {
            throw DuplicateRow(reader.path() + ":" + std::to_string(reader.line()) +
                               ": duplicate factor cell (" + asset + ", " + month.str() + ", " +
                               fields[2] + ")");
        } catch (const Error& e) {
            throw ParseError(reader.path(), reader.line(), e.what());
        }
    }
    if (out.empty()) throw ParseError(path.string(), reader.line(), "no data rows");
    return out;
}

SectorMap load_sectors(const std::filesystem::path& path) {
    CsvReader reader(path, "asset,sector");

    SectorMap out;
    std::vector<std::string> fields;
    while (reader.next(&fields)) {
        const std::string& asset = fields[0];
        if (asset.empty()) reader.fail("empty asset identifier");
        const Sector sector = sector_from_name(fields[1]);  // throws UnknownSector
        try {
            out.insert(asset, sector);
        } catch (const DuplicateRow&) {
            throw DuplicateRow(reader.path() + ":" + std::to_string(reader.line()) +
                               ": asset " + asset + " listed twice");
        }
    }
    if (out.entries().empty()) throw ParseError(path.string(), reader.line(), "no data rows");
    return out;
}

std::string emit_prices(const std::vector<PriceSeries>& prices) {
    std::string out = "asset,month,close,adj_close\n";
    for (const auto& series : prices) {
        for (int i = 0; i < series.size(); ++i) {
            out += series.asset();
            out += ',';
            out += series.month(i).str();
            out += ',';
            out += format_full(series[i].close);
            out += ',';
            out += format_full(series[i].adj_close);
            out += '\n';
        }
    }
    return out;
}

double round_half_away(double value, int decimals) {
    const double scale = std::pow(10.0, decimals);
    const double shifted = std::fabs(value) * scale;
    return std::copysign(std::floor(shifted + 0.5) / scale, value);
}

namespace {

const char* stars(Significance s) {
    switch (s) {
        case Significance::Sig1: return "**";
        case Significance::Sig5: return "*";
        default: return "";
    }
}

std::string format_cell(const StrategyStats& cell) {
    if (!cell.valid()) return "--";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", round_half_away(cell.annualized_er, 2));
    return std::string(buf) + stars(cell.significance);
}

}  // namespace

std::string emit_grid_table(const GridResult& grid, TableFormat format) {
    const GridSpec& spec = grid.spec();
    std::ostringstream out;

    if (format == TableFormat::Csv) {
        out << "# method=" << method_name(spec.method) << " lag=" << spec.nw_lag.describe()
            << '\n';
        out << "J,K,mean_monthly,annualized_er,t_stat,n_months,stars,class,error\n";
        for (int j = 0; j < grid.j_count(); ++j) {
            for (int k = 0; k < grid.k_count(); ++k) {
                const StrategyStats& cell = grid.cell(j, k);
                out << spec.lookbacks[j] << ',' << spec.holdings[k] << ',';
                if (cell.valid() || cell.error == CellError::ZeroVariance) {
                    out << format_full(cell.mean_monthly) << ','
                        << format_full(cell.annualized_er) << ',';
                } else {
                    out << ",,";
                }
                if (cell.valid()) out << format_full(cell.t_stat);
                out << ',' << cell.n_months << ',' << stars(cell.significance) << ','
                    << (cell.strategy_class == StrategyClass::TSMOM ? "TSMOM" : "TSCON") << ',';
                switch (cell.error) {
                    case CellError::None: break;
                    case CellError::InsufficientHistory: out << "insufficient-history"; break;
                    case CellError::ZeroVariance: out << "zero-variance"; break;
                }
                out << '\n';
            }
        }
        return out.str();
    }

    // Aligned text, the published layout: J rows, K columns.
    constexpr int kWidth = 9;
    out << "method=" << method_name(spec.method) << " lag=" << spec.nw_lag.describe()
        << " stars: *=5% **=1% (annualized mean monthly excess return)\n";
    out << "J\\K";
    for (int k : spec.holdings) {
        std::string h = std::to_string(k);
        out << std::string(kWidth - h.size(), ' ') << h;
    }
    out << '\n';
    for (int j = 0; j < grid.j_count(); ++j) {
        std::string row = std::to_string(spec.lookbacks[j]);
        out << row << std::string(3 - std::min<std::size_t>(3, row.size()), ' ');
        for (int k = 0; k < grid.k_count(); ++k) {
            const std::string cell = format_cell(grid.cell(j, k));
            out << std::string(kWidth - std::min<std::size_t>(kWidth, cell.size()), ' ')
                << cell;
        }
        out << '\n';
    }
    return out.str();
}

std::string emit_classification(const ClassificationSummary& summary,
                                SignificanceLevel level) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "level=%s cells=%d PosSig=%.4f PosInsig=%.4f NegSig=%.4f NegInsig=%.4f\n",
                  level == SignificanceLevel::Pct5 ? "5%" : "1%", summary.valid_cells,
                  summary.pos_sig, summary.pos_insig, summary.neg_sig, summary.neg_insig);
    return buf;
}

std::string emit_classification_table(
    const std::map<std::string, ClassificationSummary>& by_group, SignificanceLevel level) {
    std::ostringstream out;
    out << "proportions at the " << (level == SignificanceLevel::Pct5 ? "5%" : "1%")
        << " level\n";
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%-28s%10s%10s%10s%10s\n", "group", "PosSig", "PosInsig",
                  "NegSig", "NegInsig");
    out << buf;
    for (const auto& [label, summary] : by_group) {
        std::snprintf(buf, sizeof(buf), "%-28s%10.4f%10.4f%10.4f%10.4f\n", label.c_str(),
                      summary.pos_sig, summary.pos_insig, summary.neg_sig, summary.neg_insig);
        out << buf;
    }
    return out.str();
}

std::string emit_regression(const std::string& row_label, const RegressionFit& fit,
                            SignificanceLevels levels) {
    auto term = [&](double coef, double t) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.4f (%.2f)%s", coef, t,
                      stars(levels.classify(t)));
        return std::string(buf);
    };
    std::ostringstream out;
    out << row_label << "  alpha=" << term(fit.alpha, fit.alpha_t)
        << "  beta_J=" << term(fit.beta_j, fit.beta_j_t)
        << "  beta_K=" << term(fit.beta_k, fit.beta_k_t);
    for (int g = 0; g < 4; ++g) {
        out << "  g" << g + 2 << "=" << term(fit.g[g], fit.g_t[g]);
    }
    char tail[64];
    std::snprintf(tail, sizeof(tail), "  R2=%.4f n=%d", fit.r_squared, fit.n_obs);
    out << tail << '\n';
    return out.str();
}

}  // namespace tsmom
