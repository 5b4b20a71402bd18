#include "tsmom/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tsmom/errors.hpp"

namespace tsmom {

Significance SignificanceLevels::classify(double t) const {
    double a = std::fabs(t);
    if (a >= crit1) return Significance::Sig1;
    if (a >= crit5) return Significance::Sig5;
    return Significance::None;
}

LagPolicy LagPolicy::fixed(int lag) {
    if (lag < 0) throw Error("fixed Newey-West lag must be >= 0");
    return LagPolicy(Kind::Fixed, lag);
}

std::string LagPolicy::describe() const {
    return kind_ == Kind::HoldingLinked ? "K-1" : std::to_string(fixed_lag_);
}

namespace {

double mean_of(std::span<const double> xs) {
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

// Lag-j autocovariance about the sample mean, 1/T normalization.
double autocov(std::span<const double> xs, double mean, int j) {
    const int t = static_cast<int>(xs.size());
    double acc = 0.0;
    for (int i = j; i < t; ++i) {
        acc += (xs[i] - mean) * (xs[i - j] - mean);
    }
    return acc / static_cast<double>(t);
}

}  // namespace

double nw_variance(std::span<const double> stream, int lag) {
    const int t = static_cast<int>(stream.size());
    if (t < 2) throw InsufficientData("Newey-West variance needs at least 2 observations");
    if (lag < 0) throw Error("Newey-West lag must be >= 0");
    if (lag >= t) {
        throw LagTooLarge("Newey-West lag " + std::to_string(lag) + " >= stream length " +
                          std::to_string(t));
    }
    // A constant stream has exactly zero autocovariances; detect it before
    // the mean subtraction can leave rounding residue.
    const bool constant = std::all_of(stream.begin(), stream.end(),
                                      [&](double x) { return x == stream.front(); });
    if (constant) return 0.0;

    const double mean = mean_of(stream);
    double s = autocov(stream, mean, 0);
    for (int j = 1; j <= lag; ++j) {
        const double w = 1.0 - static_cast<double>(j) / (lag + 1.0);
        s += 2.0 * w * autocov(stream, mean, j);
    }
    double variance = s / static_cast<double>(t);
    return variance < 0.0 ? 0.0 : variance;
}

double nw_tstat(std::span<const double> stream, int lag) {
    const double variance = nw_variance(stream, lag);
    if (!(variance > 0.0)) {
        throw ZeroVariance("zero long-run variance; t-statistic undefined");
    }
    return mean_of(stream) / std::sqrt(variance);
}

double annualize(double mean_monthly) { return 12.0 * mean_monthly; }

namespace {

// Gauss-Jordan inverse with partial pivoting. Small p only (<= ~10 here).
Matrix invert(Matrix a) {
    const int n = a.rows();
    Matrix inv(n, n);
    for (int i = 0; i < n; ++i) inv(i, i) = 1.0;

    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r) {
            if (std::fabs(a(r, col)) > std::fabs(a(pivot, col))) pivot = r;
        }
        double scale = 0.0;
        for (int c = 0; c < n; ++c) scale = std::max(scale, std::fabs(a(pivot, c)));
        if (scale <= 0.0 || std::fabs(a(pivot, col)) < 1e-11 * scale) {
            throw SingularDesign("design matrix is rank deficient");
        }
        if (pivot != col) {
            for (int c = 0; c < n; ++c) {
                std::swap(a(col, c), a(pivot, c));
                std::swap(inv(col, c), inv(pivot, c));
            }
        }
        const double d = a(col, col);
        for (int c = 0; c < n; ++c) {
            a(col, c) /= d;
            inv(col, c) /= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a(r, col);
            if (f == 0.0) continue;
            for (int c = 0; c < n; ++c) {
                a(r, c) -= f * a(col, c);
                inv(r, c) -= f * inv(col, c);
            }
        }
    }
    return inv;
}

}  // namespace

OlsFit ols_fit(const Matrix& design, std::span<const double> response) {
    const int n = design.rows();
    const int p = design.cols();
    if (n != static_cast<int>(response.size())) {
        throw Error("design rows and response length differ");
    }
    if (p < 1) throw Error("design has no columns");
    // n == p solves exactly (zero residual); inference needs n > p.
    if (n < p) throw InsufficientData("OLS needs at least as many observations as regressors");

    // Normal equations: xtx b = xty.
    Matrix xtx(p, p);
    std::vector<double> xty(p, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int a = 0; a < p; ++a) {
            xty[a] += design(i, a) * response[i];
            for (int b = a; b < p; ++b) {
                xtx(a, b) += design(i, a) * design(i, b);
            }
        }
    }
    for (int a = 0; a < p; ++a) {
        for (int b = 0; b < a; ++b) xtx(a, b) = xtx(b, a);
    }

    const Matrix xtx_inv = invert(xtx);

    OlsFit fit;
    fit.n_obs = n;
    fit.coef.assign(p, 0.0);
    for (int a = 0; a < p; ++a) {
        for (int b = 0; b < p; ++b) fit.coef[a] += xtx_inv(a, b) * xty[b];
    }

    double rss = 0.0;
    double ybar = mean_of(response);
    double tss = 0.0;
    for (int i = 0; i < n; ++i) {
        double fitted = 0.0;
        for (int a = 0; a < p; ++a) fitted += design(i, a) * fit.coef[a];
        const double resid = response[i] - fitted;
        rss += resid * resid;
        tss += (response[i] - ybar) * (response[i] - ybar);
    }
    fit.sigma_eps_sq = n > p ? rss / static_cast<double>(n - p) : 0.0;
    fit.r_squared = tss > 0.0 ? 1.0 - rss / tss : 1.0;
    if (fit.r_squared < 0.0) fit.r_squared = 0.0;
    if (fit.r_squared > 1.0) fit.r_squared = 1.0;

    fit.std_err.assign(p, 0.0);
    fit.t_stats.assign(p, 0.0);
    for (int a = 0; a < p; ++a) {
        fit.std_err[a] = std::sqrt(fit.sigma_eps_sq * xtx_inv(a, a));
        // IEEE division: +/-inf on a perfect fit, NaN for 0/0.
        fit.t_stats[a] = fit.coef[a] / fit.std_err[a];
    }
    return fit;
}

RegressionFit RegressionFit::from_ols(const OlsFit& fit) {
    if (fit.coef.size() != 7) {
        throw Error("profitability regression expects 7 coefficients");
    }
    RegressionFit out;
    out.alpha = fit.coef[0];
    out.beta_j = fit.coef[1];
    out.beta_k = fit.coef[2];
    for (int i = 0; i < 4; ++i) out.g[i] = fit.coef[3 + i];
    out.alpha_t = fit.t_stats[0];
    out.beta_j_t = fit.t_stats[1];
    out.beta_k_t = fit.t_stats[2];
    for (int i = 0; i < 4; ++i) out.g_t[i] = fit.t_stats[3 + i];
    out.r_squared = fit.r_squared;
    out.sigma_eps_sq = fit.sigma_eps_sq;
    out.n_obs = fit.n_obs;
    return out;
}

}  // namespace tsmom
