#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

namespace tsmom {

/// Two-sided normal critical values used for the significance stars.
inline constexpr double kCrit5 = 1.960;
inline constexpr double kCrit1 = 2.576;

enum class Significance { None, Sig5, Sig1 };

/// Star thresholds; the defaults give * at 5% and ** at 1% under the normal.
struct SignificanceLevels {
    double crit5 = kCrit5;
    double crit1 = kCrit1;

    Significance classify(double t) const;
    bool operator==(const SignificanceLevels&) const = default;
};

/// Newey-West lag choice for the HAC t-test on a strategy-return stream.
/// HoldingLinked sets L = K - 1 (the serial correlation horizon induced by a
/// K-month overlapping holding period); Fixed pins an explicit lag.
class LagPolicy {
public:
    enum class Kind { Fixed, HoldingLinked };

    static LagPolicy fixed(int lag);
    static LagPolicy holding_linked() { return LagPolicy(Kind::HoldingLinked, 0); }

    Kind kind() const { return kind_; }
    int fixed_lag() const { return fixed_lag_; }
    int lag_for(int holding_k) const {
        return kind_ == Kind::HoldingLinked ? holding_k - 1 : fixed_lag_;
    }

    /// Human-readable form echoed in every emitted table, e.g. "K-1" or "3".
    std::string describe() const;

    bool operator==(const LagPolicy&) const = default;

private:
    LagPolicy(Kind kind, int lag) : kind_(kind), fixed_lag_(lag) {}
    Kind kind_;
    int fixed_lag_ = 0;
};

/// Long-run variance of the sample mean:
///   (1/T) [ g0 + 2 * sum_{j=1..L} (1 - j/(L+1)) * gj ]
/// with gj the lag-j autocovariance about the sample mean under the 1/T
/// normalization. Floored at zero against rounding (the Bartlett kernel is
/// positive semi-definite analytically).
double nw_variance(std::span<const double> stream, int lag);

/// mean(stream) / sqrt(nw_variance(stream, lag)); throws ZeroVariance when
/// the long-run variance is not strictly positive.
double nw_tstat(std::span<const double> stream, int lag);

/// Arithmetic annualization of a mean monthly return (x12, not compounded).
double annualize(double mean_monthly);

/// Minimal dense row-major matrix; just enough for the regression designs.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, 0.0) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    double& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    double operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

/// Ordinary least squares result for a generic n x p design.
struct OlsFit {
    std::vector<double> coef;      // p coefficients from the normal equations
    std::vector<double> std_err;   // classical homoskedastic standard errors
    std::vector<double> t_stats;   // coef / std_err
    double r_squared = 0.0;        // 1 - RSS/TSS (TSS about the response mean)
    double sigma_eps_sq = 0.0;     // RSS / (n - p)
    int n_obs = 0;
};

/// Solves the normal equations (X'X) b = X'y with classical standard errors
/// from sigma^2 (X'X)^{-1}. Throws SingularDesign when X'X is rank deficient
/// and InsufficientData when n <= p.
OlsFit ols_fit(const Matrix& design, std::span<const double> response);

/// The profitability regression
///   ER = alpha + beta_J * J + beta_K * K + g2 D2 + g3 D3 + g4 D4 + g5 D5 + eps
/// fitted over group/lookback/holding cells; D_k marks group Gk with G1 the
/// omitted base level.
struct RegressionFit {
    double alpha = 0.0;
    double beta_j = 0.0;
    double beta_k = 0.0;
    std::array<double, 4> g{};    // g2..g5
    double alpha_t = 0.0;
    double beta_j_t = 0.0;
    double beta_k_t = 0.0;
    std::array<double, 4> g_t{};  // t-stats for g2..g5
    double r_squared = 0.0;
    double sigma_eps_sq = 0.0;
    int n_obs = 0;

    /// Maps an OlsFit over the 7-column design (1, J, K, D2..D5) into named fields.
    static RegressionFit from_ols(const OlsFit& fit);
};

}  // namespace tsmom
