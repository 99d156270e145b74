#ifndef SPECINV_SCHROD1D_HPP
#define SPECINV_SCHROD1D_HPP

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "specinv/potential.hpp"
#include "specinv/quadrature.hpp"
#include "specinv/testfunction.hpp"

namespace specinv {

/// Eigenvalues of -(hbar^2/2) d^2/dx^2 + V on [-L, L] (Dirichlet) up to Emax.
struct Spectrum {
    std::vector<double> eigenvalues;  // ascending, <= Emax
    double hbar = 0;
    double Emax = 0;
    int basis_size = 0;
    bool converged = false;
    double boundary_mass = 0;  // max |psi|^2 at +-0.95 L over retained states
};

namespace detail {

/// Cosine moments C_m = int_{-L}^{L} V(x) cos(m pi (x+L)/(2L)) dx.
class CosineMoments {
  public:
    CosineMoments(const PotentialSpec& V, double L) : V_(&V), L_(L) {}
    double operator()(int m) {
        auto it = cache_.find(m);
        if (it != cache_.end()) return it->second;
        double w = m * M_PI / (2 * L_);
        auto f = [&](double x) { return V_->value(x) * std::cos(w * (x + L_)); };
        int panels = std::max(32, m);
        double v = gauss10_panels(f, -L_, L_, panels);
        cache_[m] = v;
        return v;
    }

  private:
    const PotentialSpec* V_;
    double L_;
    std::map<int, double> cache_;
};

inline std::vector<double> sine_galerkin(const PotentialSpec& V, double hbar, double Emax,
                                         int N, double* boundary_mass) {
    double L = V.L;
    CosineMoments C(V, L);
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(N, N);
    for (int j = 1; j <= N; ++j) {
        double k = j * M_PI / (2 * L);
        H(j - 1, j - 1) = 0.5 * hbar * hbar * k * k;
    }
    for (int j = 1; j <= N; ++j)
        for (int kcol = j; kcol <= N; ++kcol) {
            double v = (C(kcol - j) - C(kcol + j)) / (2 * L);
            H(j - 1, kcol - 1) += v;
            if (kcol != j) H(kcol - 1, j - 1) += v;
        }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    bool want_vectors = boundary_mass != nullptr;
    es.compute(H, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("sine_galerkin: eigensolver failed");
    std::vector<double> out;
    double bmass = 0;
    for (int i = 0; i < N; ++i) {
        double lam = es.eigenvalues()(i);
        if (lam > Emax) break;
        out.push_back(lam);
        if (want_vectors) {
            for (double xs : {-0.95 * L, 0.95 * L}) {
                double psi = 0;
                for (int j = 1; j <= N; ++j)
                    psi += es.eigenvectors()(j - 1, i) *
                           std::sin(j * M_PI * (xs + L) / (2 * L)) / std::sqrt(L);
                bmass = std::max(bmass, psi * psi);
            }
        }
    }
    if (boundary_mass) *boundary_mass = bmass;
    return out;
}

}  // namespace detail

/// Sine-basis spectral Galerkin eigensolve; converged is set from an N vs 2N
/// comparison at tolerance 1e-10 * max(1, Emax).
inline Spectrum eigen_spectrum(const PotentialSpec& V, double hbar, double Emax,
                               int N = 0, bool check_boundary = false) {
    if (Emax > V.cap + 1e-12)
        throw std::invalid_argument("eigen_spectrum: Emax above potential cap");
    if (N == 0)
        N = int(std::ceil(1.6 * std::sqrt(2 * std::max(Emax, 1e-6)) * 2 * V.L /
                          (M_PI * hbar))) + 40;
    if (N < 64) N = 64;
    Spectrum s;
    s.hbar = hbar;
    s.Emax = Emax;
    s.basis_size = N;
    double bmass = 0;
    s.eigenvalues = detail::sine_galerkin(V, hbar, Emax, N,
                                          check_boundary ? &bmass : nullptr);
    s.boundary_mass = bmass;
    auto ref = detail::sine_galerkin(V, hbar, Emax, 2 * N, nullptr);
    double tol = 1e-10 * std::max(1.0, Emax);
    s.converged = ref.size() == s.eigenvalues.size();
    if (s.converged)
        for (size_t i = 0; i < ref.size(); ++i)
            if (std::abs(ref[i] - s.eigenvalues[i]) > tol) {
                s.converged = false;
                break;
            }
    if (s.converged) s.eigenvalues = std::move(ref);
    return s;
}

/// Normalized spectral trace (2 pi hbar) sum_n f(lambda_n).
inline double trace_f(const Spectrum& s, const TestFunction& f) {
    double acc = 0;
    for (double lam : s.eigenvalues) acc += f.value(lam);
    return 2 * M_PI * s.hbar * acc;
}

/// Least-squares fit of trace values against the basis {1, hbar^2, hbar^4};
/// returns (nu0_hat, nu1_hat, nu2_hat).
inline std::array<double, 3> fit_expansion(const std::vector<double>& hbars,
                                           const std::vector<double>& traces) {
    if (hbars.size() != traces.size() || hbars.size() < 3)
        throw std::invalid_argument("fit_expansion: need >= 3 samples");
    int n = int(hbars.size());
    Eigen::MatrixXd A(n, 3);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
        double h2 = hbars[i] * hbars[i];
        A(i, 0) = 1;
        A(i, 1) = h2;
        A(i, 2) = h2 * h2;
        y(i) = traces[i];
    }
    Eigen::Vector3d c = A.colPivHouseholderQr().solve(y);
    return {c(0), c(1), c(2)};
}

/// Number of eigenvalues <= lambda (Weyl count input).
inline int count_below(const Spectrum& s, double lambda) {
    int c = 0;
    for (double v : s.eigenvalues)
        if (v <= lambda) ++c;
    return c;
}

}  // namespace specinv

#endif
