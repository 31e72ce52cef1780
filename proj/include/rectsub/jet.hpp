#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace rectsub {

inline constexpr int kMaxJetOrder = 3;
inline constexpr int kMaxJetVars = 8;

/// Monomial bookkeeping shared by every jet with the same (nvars, order).
/// Monomials are stored in graded order, so index 0 is the constant term and
/// indices 1..nvars are the linear terms.
class JetLayout {
 public:
  struct Product {
    int lhs, rhs, out;
  };
  struct PartialEntry {
    int source, target;
    double factor;
  };

  static std::shared_ptr<const JetLayout> get(int nvars, int order);

  int nvars() const { return nvars_; }
  int order() const { return order_; }
  int size() const { return static_cast<int>(exponents_.size()); }

  /// Index of the monomial with exponent vector `alpha`, or -1 if its total
  /// degree exceeds the order.
  int index(std::span<const int> alpha) const;
  const std::array<std::uint8_t, kMaxJetVars>& exponents(int monomial) const {
    return exponents_[monomial];
  }
  int degree(int monomial) const { return degrees_[monomial]; }
  /// alpha! for the monomial.
  double factorial(int monomial) const { return factorials_[monomial]; }

  const std::vector<Product>& products() const { return products_; }
  /// Maps coefficients of this layout onto the order-1 layout of d/dx_var.
  const std::vector<PartialEntry>& partial(int var) const { return partials_[var]; }

  JetLayout(int nvars, int order);

 private:
  int nvars_;
  int order_;
  std::vector<std::array<std::uint8_t, kMaxJetVars>> exponents_;
  std::vector<int> degrees_;
  std::vector<double> factorials_;
  std::vector<int> lookup_;
  std::vector<Product> products_;
  std::vector<std::vector<PartialEntry>> partials_;
};

/// Truncated Taylor expansion of a scalar function of `nvars` variables
/// about a point. Coefficients are Taylor coefficients (derivative / alpha!).
class Jet {
 public:
  Jet();
  Jet(int nvars, int order, double value = 0.0);

  /// The coordinate function x_var expanded about x_var = value.
  static Jet variable(int nvars, int order, int var, double value);

  int nvars() const { return layout_->nvars(); }
  int order() const { return layout_->order(); }
  const JetLayout& layout() const { return *layout_; }

  double value() const { return coeffs_[0]; }
  std::span<const double> coefficients() const { return coeffs_; }
  std::span<double> coefficients() { return coeffs_; }

  double coefficient(std::span<const int> alpha) const;
  /// Partial derivative d^alpha f at the expansion point.
  double derivative(std::span<const int> alpha) const;

  double d(int i) const;
  double d(int i, int j) const;
  double d(int i, int j, int k) const;

  /// Jet of d f / d x_var, one order lower.
  Jet partial(int var) const;
  Jet truncated(int order) const;
  bool is_constant() const;

  Jet& operator+=(const Jet& other);
  Jet& operator-=(const Jet& other);
  Jet& operator*=(const Jet& other);
  Jet& operator/=(const Jet& other);
  Jet& operator+=(double s);
  Jet& operator-=(double s);
  Jet& operator*=(double s);
  Jet& operator/=(double s);

  Jet operator-() const;

  /// Applies a univariate function given its value and first three
  /// derivatives at value().
  Jet compose(const std::array<double, 4>& derivatives) const;

 private:
  std::shared_ptr<const JetLayout> layout_;
  std::vector<double> coeffs_;

  friend Jet multiply(const Jet& a, const Jet& b);
};

Jet multiply(const Jet& a, const Jet& b);

inline Jet operator+(Jet a, const Jet& b) { return a += b; }
inline Jet operator-(Jet a, const Jet& b) { return a -= b; }
inline Jet operator*(const Jet& a, const Jet& b) { return multiply(a, b); }
inline Jet operator/(Jet a, const Jet& b) { return a /= b; }
inline Jet operator+(Jet a, double s) { return a += s; }
inline Jet operator+(double s, Jet a) { return a += s; }
inline Jet operator-(Jet a, double s) { return a -= s; }
inline Jet operator-(double s, const Jet& a) { return -a + s; }
inline Jet operator*(Jet a, double s) { return a *= s; }
inline Jet operator*(double s, Jet a) { return a *= s; }
inline Jet operator/(Jet a, double s) { return a /= s; }
Jet operator/(double s, const Jet& a);

Jet reciprocal(const Jet& a);
Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet tan(const Jet& a);
Jet sinh(const Jet& a);
Jet cosh(const Jet& a);
Jet tanh(const Jet& a);
Jet asinh(const Jet& a);
Jet atanh(const Jet& a);
Jet atan(const Jet& a);
Jet sqrt(const Jet& a);
Jet exp(const Jet& a);
Jet log(const Jet& a);
Jet abs(const Jet& a);
Jet pow(const Jet& base, double exponent);
Jet pow(const Jet& base, const Jet& exponent);

}  // namespace rectsub
