#ifndef SPECINV_TESTFUNCTION_HPP
#define SPECINV_TESTFUNCTION_HPP

#include <vector>

#include "specinv/jet.hpp"

namespace specinv {

/// Smooth compactly-bounded-above test function: an optional polynomial
/// factor times a C-infinity plateau that is identically 1 on (-inf, s0],
/// falls to 0 across [s0, s1] via the exp(-1/u) smoothstep, and vanishes on
/// [s1, inf).  Derivatives to order 12 come from forward Taylor arithmetic.
class TestFunction {
  public:
    static constexpr int MaxOrder = 12;

    TestFunction(double plateau_end, double support_end,
                 std::vector<double> poly = {1.0})
        : s0_(plateau_end), s1_(support_end), poly_(std::move(poly)) {
        if (!(s0_ < s1_)) throw std::invalid_argument("TestFunction: need s0 < s1");
    }

    double plateau_end() const { return s0_; }
    double support_end() const { return s1_; }

    double value(double s) const { return eval_jet(s, 0).value(); }

    double derivative(double s, int k) const {
        if (k > MaxOrder) throw std::invalid_argument("TestFunction: order > 12");
        return eval_jet(s, k).derivative(k);
    }

    /// out[k] = f^(k)(s) for k = 0..order; T selects working precision.
    template <class T = double>
    void jets(const T& s, int order, T* out) const {
        JetT<T> j = eval_jet(s, order);
        for (int k = 0; k <= order; ++k) out[k] = j.derivative(k);
    }

  private:
    template <class T>
    JetT<T> eval_jet(const T& s, int order) const {
        JetT<T> x = JetT<T>::var(s, order);
        JetT<T> p = JetT<T>::con(T(0), order);
        for (size_t i = poly_.size(); i-- > 0;) p = p * x + T(poly_[i]);
        if (s <= s0_) return p;
        if (s >= s1_) return JetT<T>::con(T(0), order);
        // u runs from 1 at s0 down to 0 at s1
        JetT<T> u = (JetT<T>::con(T(s1_), order) - x) / T(s1_ - s0_);
        JetT<T> eu = exp(T(-1) / u);
        JetT<T> ev = exp(T(-1) / (T(1) - u));
        return p * (eu / (eu + ev));
    }

    double s0_, s1_;
    std::vector<double> poly_;
};

}  // namespace specinv

#endif
