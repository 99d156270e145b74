#ifndef SPECINV_CURVE_HPP
#define SPECINV_CURVE_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace specinv {

/// Strictly increasing abscissa grid with values.
struct SampledCurve {
    std::vector<double> x, y;
    std::string meaning;

    SampledCurve() = default;
    SampledCurve(std::vector<double> xs, std::vector<double> ys, std::string m = "")
        : x(std::move(xs)), y(std::move(ys)), meaning(std::move(m)) {
        validate();
    }

    size_t size() const { return x.size(); }

    void validate() const {
        if (x.size() != y.size()) throw std::invalid_argument("SampledCurve: size mismatch");
        if (x.size() < 4) throw std::invalid_argument("SampledCurve: need >= 4 points");
        for (size_t i = 0; i + 1 < x.size(); ++i)
            if (!(x[i] < x[i + 1]))
                throw std::invalid_argument("SampledCurve: abscissae not strictly increasing");
        for (double v : x)
            if (std::isnan(v)) throw std::invalid_argument("SampledCurve: NaN abscissa");
        for (double v : y)
            if (std::isnan(v)) throw std::invalid_argument("SampledCurve: NaN value");
    }

    size_t interval(double t) const {
        // index i with x[i] <= t <= x[i+1], clamped
        auto it = std::upper_bound(x.begin(), x.end(), t);
        size_t i = it - x.begin();
        if (i == 0) return 0;
        if (i >= x.size()) return x.size() - 2;
        return i - 1;
    }
};

/// Shape-preserving monotone cubic interpolation (Fritsch-Carlson).
class Pchip {
  public:
    explicit Pchip(const SampledCurve& c) : x_(c.x), y_(c.y) {
        size_t n = x_.size();
        std::vector<double> h(n - 1), del(n - 1);
        for (size_t i = 0; i + 1 < n; ++i) {
            h[i] = x_[i + 1] - x_[i];
            del[i] = (y_[i + 1] - y_[i]) / h[i];
        }
        d_.assign(n, 0.0);
        for (size_t i = 1; i + 1 < n; ++i) {
            if (del[i - 1] * del[i] <= 0) d_[i] = 0;
            else {
                double w1 = 2 * h[i] + h[i - 1], w2 = h[i] + 2 * h[i - 1];
                d_[i] = (w1 + w2) / (w1 / del[i - 1] + w2 / del[i]);
            }
        }
        auto end_slope = [](double h0, double h1, double d0, double d1) {
            double d = ((2 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
            if (d * d0 <= 0) d = 0;
            else if (d0 * d1 <= 0 && std::abs(d) > 3 * std::abs(d0)) d = 3 * d0;
            return d;
        };
        d_[0] = end_slope(h[0], h[1], del[0], del[1]);
        d_[n - 1] = end_slope(h[n - 2], h[n - 3], del[n - 2], del[n - 3]);
    }

    double eval(double t) const {
        size_t i = idx(t);
        double h = x_[i + 1] - x_[i], s = (t - x_[i]) / h;
        double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
        double h10 = s * (1 - s) * (1 - s);
        double h01 = s * s * (3 - 2 * s);
        double h11 = s * s * (s - 1);
        return h00 * y_[i] + h * h10 * d_[i] + h01 * y_[i + 1] + h * h11 * d_[i + 1];
    }

    double derivative(double t) const {
        size_t i = idx(t);
        double h = x_[i + 1] - x_[i], s = (t - x_[i]) / h;
        double g00 = 6 * s * (s - 1);
        double g10 = (1 - s) * (1 - 3 * s);
        double g01 = -g00;
        double g11 = s * (3 * s - 2);
        return (g00 * y_[i] + g01 * y_[i + 1]) / h + g10 * d_[i] + g11 * d_[i + 1];
    }

  private:
    size_t idx(double t) const {
        auto it = std::upper_bound(x_.begin(), x_.end(), t);
        size_t i = it - x_.begin();
        if (i == 0) return 0;
        if (i >= x_.size()) return x_.size() - 2;
        return i - 1;
    }
    std::vector<double> x_, y_, d_;
};

/// Natural cubic spline interpolation.
class CubicSpline {
  public:
    explicit CubicSpline(const SampledCurve& c) : x_(c.x), y_(c.y) {
        size_t n = x_.size();
        m_.assign(n, 0.0);
        std::vector<double> a(n, 0), b(n, 0), cc(n, 0), r(n, 0);
        b[0] = b[n - 1] = 1;
        for (size_t i = 1; i + 1 < n; ++i) {
            double h0 = x_[i] - x_[i - 1], h1 = x_[i + 1] - x_[i];
            a[i] = h0 / 6;
            b[i] = (h0 + h1) / 3;
            cc[i] = h1 / 6;
            r[i] = (y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0;
        }
        // Thomas algorithm
        for (size_t i = 1; i < n; ++i) {
            double w = a[i] / b[i - 1];
            b[i] -= w * cc[i - 1];
            r[i] -= w * r[i - 1];
        }
        m_[n - 1] = r[n - 1] / b[n - 1];
        for (size_t i = n - 1; i-- > 0;) m_[i] = (r[i] - cc[i] * m_[i + 1]) / b[i];
    }

    double eval(double t) const {
        size_t i = idx(t);
        double h = x_[i + 1] - x_[i];
        double A = (x_[i + 1] - t) / h, B = (t - x_[i]) / h;
        return A * y_[i] + B * y_[i + 1] +
               ((A * A * A - A) * m_[i] + (B * B * B - B) * m_[i + 1]) * h * h / 6;
    }
    double derivative(double t) const {
        size_t i = idx(t);
        double h = x_[i + 1] - x_[i];
        double A = (x_[i + 1] - t) / h, B = (t - x_[i]) / h;
        return (y_[i + 1] - y_[i]) / h +
               ((3 * B * B - 1) * m_[i + 1] - (3 * A * A - 1) * m_[i]) * h / 6;
    }
    double derivative2(double t) const {
        size_t i = idx(t);
        double h = x_[i + 1] - x_[i];
        double A = (x_[i + 1] - t) / h, B = (t - x_[i]) / h;
        return A * m_[i] + B * m_[i + 1];
    }

    size_t intervals() const { return x_.size() - 1; }
    double knot(size_t i) const { return x_[i]; }
    /// Coefficients of the local cubic in (t - x_i) on interval i.
    std::array<double, 4> local_coeffs(size_t i) const {
        double h = x_[i + 1] - x_[i];
        return {y_[i],
                (y_[i + 1] - y_[i]) / h - h * (2 * m_[i] + m_[i + 1]) / 6,
                m_[i] / 2,
                (m_[i + 1] - m_[i]) / (6 * h)};
    }

  private:
    size_t idx(double t) const {
        auto it = std::upper_bound(x_.begin(), x_.end(), t);
        size_t i = it - x_.begin();
        if (i == 0) return 0;
        if (i >= x_.size()) return x_.size() - 2;
        return i - 1;
    }
    std::vector<double> x_, y_, m_;
};

/// Reinsch smoothing spline with the penalty weight chosen by generalized
/// cross-validation; exposes value and first derivative of the fit.
class SmoothingSpline {
  public:
    explicit SmoothingSpline(const SampledCurve& c) {
        const auto& x = c.x;
        const auto& y = c.y;
        int n = int(x.size());
        Eigen::VectorXd yv = Eigen::Map<const Eigen::VectorXd>(y.data(), n);
        Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(n, n - 2);
        Eigen::MatrixXd R = Eigen::MatrixXd::Zero(n - 2, n - 2);
        std::vector<double> h(n - 1);
        for (int i = 0; i + 1 < n; ++i) h[i] = x[i + 1] - x[i];
        for (int j = 0; j < n - 2; ++j) {
            Q(j, j) = 1.0 / h[j];
            Q(j + 1, j) = -1.0 / h[j] - 1.0 / h[j + 1];
            Q(j + 2, j) = 1.0 / h[j + 1];
            R(j, j) = (h[j] + h[j + 1]) / 3.0;
            if (j + 1 < n - 2) {
                R(j, j + 1) = h[j + 1] / 6.0;
                R(j + 1, j) = h[j + 1] / 6.0;
            }
        }
        Eigen::MatrixXd QtQ = Q.transpose() * Q;
        Eigen::VectorXd Qty = Q.transpose() * yv;

        double best_gcv = 1e300, best_p = 1e-14;
        for (int k = 0; k <= 32; ++k) {
            double p = std::pow(10.0, -14.0 + 0.5 * k);
            Eigen::MatrixXd M = R + p * QtQ;
            Eigen::LDLT<Eigen::MatrixXd> solver(M);
            Eigen::VectorXd cvec = solver.solve(Qty);
            Eigen::VectorXd g = yv - p * (Q * cvec);
            double rss = (yv - g).squaredNorm();
            double tr = n - p * solver.solve(QtQ).trace();
            double denom = n - tr;  // effective residual dof
            if (denom < 1e-9) denom = 1e-9;
            double gcv = n * rss / (denom * denom);
            if (gcv < best_gcv) {
                best_gcv = gcv;
                best_p = p;
            }
        }
        Eigen::MatrixXd M = R + best_p * QtQ;
        Eigen::VectorXd cvec = M.ldlt().solve(Qty);
        Eigen::VectorXd g = yv - best_p * (Q * cvec);
        p_ = best_p;
        rss_ = (yv - g).squaredNorm();
        std::vector<double> gy(g.data(), g.data() + n);
        fit_ = std::make_unique<CubicSpline>(SampledCurve(x, gy, c.meaning));
    }

    double eval(double t) const { return fit_->eval(t); }
    double derivative(double t) const { return fit_->derivative(t); }
    double derivative2(double t) const { return fit_->derivative2(t); }
    double chosen_penalty() const { return p_; }
    double residual_ss() const { return rss_; }

  private:
    std::unique_ptr<CubicSpline> fit_;
    double p_ = 0, rss_ = 0;
};

}  // namespace specinv

#endif
