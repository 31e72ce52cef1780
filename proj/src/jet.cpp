#include "rectsub/jet.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <string>

#include "rectsub/error.hpp"

namespace rectsub {
namespace {

void enumerate(int nvars, int var, int remaining, std::array<std::uint8_t, kMaxJetVars>& current,
               std::vector<std::array<std::uint8_t, kMaxJetVars>>& out) {
  if (var == nvars - 1) {
    current[var] = static_cast<std::uint8_t>(remaining);
    out.push_back(current);
    current[var] = 0;
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    current[var] = static_cast<std::uint8_t>(e);
    enumerate(nvars, var + 1, remaining - e, current, out);
  }
  current[var] = 0;
}

int encode(const std::array<std::uint8_t, kMaxJetVars>& alpha, int nvars, int base) {
  int code = 0;
  for (int v = nvars - 1; v >= 0; --v) code = code * base + alpha[v];
  return code;
}

void require_compatible(const Jet& a, const Jet& b) {
  if (a.nvars() != b.nvars()) {
    throw Error(ErrorCode::InvalidArgument,
                "jet arithmetic on different variable counts (" + std::to_string(a.nvars()) +
                    " vs " + std::to_string(b.nvars()) + ")");
  }
}

}  // namespace

JetLayout::JetLayout(int nvars, int order) : nvars_(nvars), order_(order) {
  std::array<std::uint8_t, kMaxJetVars> current{};
  for (int deg = 0; deg <= order; ++deg) enumerate(nvars, 0, deg, current, exponents_);

  const int base = order + 1;
  int table_size = 1;
  for (int v = 0; v < nvars; ++v) table_size *= base;
  lookup_.assign(table_size, -1);
  for (int i = 0; i < size(); ++i) {
    int deg = 0;
    double fact = 1.0;
    for (int v = 0; v < nvars; ++v) {
      deg += exponents_[i][v];
      for (int k = 2; k <= exponents_[i][v]; ++k) fact *= k;
    }
    degrees_.push_back(deg);
    factorials_.push_back(fact);
    lookup_[encode(exponents_[i], nvars, base)] = i;
  }

  for (int i = 0; i < size(); ++i) {
    for (int j = 0; j < size(); ++j) {
      if (degrees_[i] + degrees_[j] > order) continue;
      std::array<std::uint8_t, kMaxJetVars> sum{};
      for (int v = 0; v < nvars; ++v) sum[v] = exponents_[i][v] + exponents_[j][v];
      products_.push_back({i, j, lookup_[encode(sum, nvars, base)]});
    }
  }

  if (order > 0) {
    partials_.resize(nvars);
    // The order-1 layout enumerates identically, so its indices are the
    // positions of degree <= order-1 monomials here.
    for (int v = 0; v < nvars; ++v) {
      for (int i = 0; i < size(); ++i) {
        if (exponents_[i][v] == 0) continue;
        auto reduced = exponents_[i];
        reduced[v] -= 1;
        const int target = lookup_[encode(reduced, nvars, base)];
        partials_[v].push_back({i, target, static_cast<double>(exponents_[i][v])});
      }
    }
  }
}

std::shared_ptr<const JetLayout> JetLayout::get(int nvars, int order) {
  if (nvars < 1 || nvars > kMaxJetVars) {
    throw Error(ErrorCode::InvalidArgument,
                "jet variable count must be in [1, " + std::to_string(kMaxJetVars) + "], got " +
                    std::to_string(nvars));
  }
  if (order < 0 || order > kMaxJetOrder) {
    throw Error(ErrorCode::InvalidArgument,
                "jet order must be in [0, 3], got " + std::to_string(order));
  }
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const JetLayout>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{nvars, order}];
  if (!slot) slot = std::make_shared<const JetLayout>(nvars, order);
  return slot;
}

int JetLayout::index(std::span<const int> alpha) const {
  if (static_cast<int>(alpha.size()) != nvars_) {
    throw Error(ErrorCode::InvalidArgument, "multi-index length does not match jet variables");
  }
  int deg = 0;
  std::array<std::uint8_t, kMaxJetVars> a{};
  for (int v = 0; v < nvars_; ++v) {
    if (alpha[v] < 0) throw Error(ErrorCode::InvalidArgument, "negative multi-index entry");
    deg += alpha[v];
    if (deg > order_) return -1;
    a[v] = static_cast<std::uint8_t>(alpha[v]);
  }
  return lookup_[encode(a, nvars_, order_ + 1)];
}

// Jet -----------------------------------------------------------------------

Jet::Jet() : Jet(1, 0, 0.0) {}

Jet::Jet(int nvars, int order, double value)
    : layout_(JetLayout::get(nvars, order)), coeffs_(layout_->size(), 0.0) {
  coeffs_[0] = value;
}

Jet Jet::variable(int nvars, int order, int var, double value) {
  if (var < 0 || var >= nvars) throw Error(ErrorCode::InvalidArgument, "jet variable out of range");
  Jet j(nvars, order, value);
  if (order >= 1) j.coeffs_[1 + var] = 1.0;
  return j;
}

double Jet::coefficient(std::span<const int> alpha) const {
  const int idx = layout_->index(alpha);
  if (idx < 0) {
    throw Error(ErrorCode::OrderInsufficient, "multi-index exceeds jet order " + std::to_string(order()));
  }
  return coeffs_[idx];
}

double Jet::derivative(std::span<const int> alpha) const {
  const int idx = layout_->index(alpha);
  if (idx < 0) {
    throw Error(ErrorCode::OrderInsufficient, "derivative exceeds jet order " + std::to_string(order()));
  }
  return coeffs_[idx] * layout_->factorial(idx);
}

double Jet::d(int i) const {
  std::array<int, kMaxJetVars> alpha{};
  alpha[i] += 1;
  return derivative(std::span<const int>(alpha.data(), nvars()));
}

double Jet::d(int i, int j) const {
  std::array<int, kMaxJetVars> alpha{};
  alpha[i] += 1;
  alpha[j] += 1;
  return derivative(std::span<const int>(alpha.data(), nvars()));
}

double Jet::d(int i, int j, int k) const {
  std::array<int, kMaxJetVars> alpha{};
  alpha[i] += 1;
  alpha[j] += 1;
  alpha[k] += 1;
  return derivative(std::span<const int>(alpha.data(), nvars()));
}

Jet Jet::partial(int var) const {
  if (order() == 0) {
    throw Error(ErrorCode::OrderInsufficient, "cannot differentiate an order-0 jet");
  }
  Jet out(nvars(), order() - 1);
  for (const auto& e : layout_->partial(var)) out.coeffs_[e.target] += e.factor * coeffs_[e.source];
  return out;
}

Jet Jet::truncated(int new_order) const {
  if (new_order >= order()) return *this;
  Jet out(nvars(), new_order);
  // Graded enumeration: lower-order layout is a prefix of this one.
  for (int i = 0; i < out.layout_->size(); ++i) out.coeffs_[i] = coeffs_[i];
  return out;
}

bool Jet::is_constant() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != 0.0) return false;
  }
  return true;
}

Jet& Jet::operator+=(const Jet& other) {
  require_compatible(*this, other);
  if (other.order() < order()) *this = truncated(other.order());
  for (int i = 0; i < layout_->size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& other) {
  require_compatible(*this, other);
  if (other.order() < order()) *this = truncated(other.order());
  for (int i = 0; i < layout_->size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

Jet multiply(const Jet& a, const Jet& b) {
  require_compatible(a, b);
  if (a.order() != b.order()) {
    const int o = std::min(a.order(), b.order());
    return multiply(a.truncated(o), b.truncated(o));
  }
  Jet out(a.nvars(), a.order());
  for (const auto& p : a.layout_->products()) out.coeffs_[p.out] += a.coeffs_[p.lhs] * b.coeffs_[p.rhs];
  return out;
}

Jet& Jet::operator*=(const Jet& other) { return *this = multiply(*this, other); }

Jet& Jet::operator/=(const Jet& other) { return *this = multiply(*this, reciprocal(other)); }

Jet& Jet::operator+=(double s) {
  coeffs_[0] += s;
  return *this;
}

Jet& Jet::operator-=(double s) {
  coeffs_[0] -= s;
  return *this;
}

Jet& Jet::operator*=(double s) {
  for (double& c : coeffs_) c *= s;
  return *this;
}

Jet& Jet::operator/=(double s) {
  if (s == 0.0) throw DomainError("division by zero");
  for (double& c : coeffs_) c /= s;
  return *this;
}

Jet Jet::operator-() const {
  Jet out = *this;
  for (double& c : out.coeffs_) c = -c;
  return out;
}

Jet Jet::compose(const std::array<double, 4>& g) const {
  Jet out(nvars(), order(), g[0]);
  if (order() == 0) return out;
  Jet delta = *this;
  delta.coeffs_[0] = 0.0;
  Jet power = delta;
  double factorial = 1.0;
  for (int k = 1; k <= order(); ++k) {
    factorial *= k;
    const double scale = g[k] / factorial;
    for (int i = 0; i < layout_->size(); ++i) out.coeffs_[i] += scale * power.coeffs_[i];
    if (k < order()) power = multiply(power, delta);
  }
  return out;
}

Jet operator/(double s, const Jet& a) { return reciprocal(a) * s; }

// Elementary functions -------------------------------------------------------

Jet reciprocal(const Jet& a) {
  const double x = a.value();
  if (x == 0.0) throw DomainError("division by zero");
  const double r = 1.0 / x;
  return a.compose({r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r});
}

Jet sin(const Jet& a) {
  const double s = std::sin(a.value()), c = std::cos(a.value());
  return a.compose({s, c, -s, -c});
}

Jet cos(const Jet& a) {
  const double s = std::sin(a.value()), c = std::cos(a.value());
  return a.compose({c, -s, -c, s});
}

Jet tan(const Jet& a) {
  if (std::cos(a.value()) == 0.0) throw DomainError("tan at a pole");
  const double t = std::tan(a.value());
  const double sec2 = 1.0 + t * t;
  return a.compose({t, sec2, 2.0 * t * sec2, sec2 * (2.0 + 6.0 * t * t)});
}

Jet sinh(const Jet& a) {
  const double s = std::sinh(a.value()), c = std::cosh(a.value());
  return a.compose({s, c, s, c});
}

Jet cosh(const Jet& a) {
  const double s = std::sinh(a.value()), c = std::cosh(a.value());
  return a.compose({c, s, c, s});
}

Jet tanh(const Jet& a) {
  const double t = std::tanh(a.value());
  const double q = 1.0 - t * t;
  return a.compose({t, q, -2.0 * t * q, q * (6.0 * t * t - 2.0)});
}

Jet asinh(const Jet& a) {
  const double x = a.value();
  const double w = 1.0 / (1.0 + x * x);
  const double r = std::sqrt(w);
  return a.compose({std::asinh(x), r, -x * r * w, (2.0 * x * x - 1.0) * r * w * w});
}

Jet atanh(const Jet& a) {
  const double x = a.value();
  if (!(std::abs(x) < 1.0)) throw DomainError("atanh outside (-1, 1)");
  const double w = 1.0 / (1.0 - x * x);
  return a.compose({std::atanh(x), w, 2.0 * x * w * w, (2.0 + 6.0 * x * x) * w * w * w});
}

Jet atan(const Jet& a) {
  const double x = a.value();
  const double w = 1.0 / (1.0 + x * x);
  return a.compose({std::atan(x), w, -2.0 * x * w * w, (6.0 * x * x - 2.0) * w * w * w});
}

Jet sqrt(const Jet& a) {
  const double x = a.value();
  if (x < 0.0 || (x == 0.0 && a.order() > 0)) throw DomainError("sqrt of non-positive value");
  const double r = std::sqrt(x);
  if (a.order() == 0) return Jet(a.nvars(), 0, r);
  return a.compose({r, 0.5 / r, -0.25 / (r * r * r), 0.375 / (r * r * r * r * r)});
}

Jet exp(const Jet& a) {
  const double e = std::exp(a.value());
  return a.compose({e, e, e, e});
}

Jet log(const Jet& a) {
  const double x = a.value();
  if (x <= 0.0) throw DomainError("log of non-positive value");
  const double r = 1.0 / x;
  return a.compose({std::log(x), r, -r * r, 2.0 * r * r * r});
}

Jet abs(const Jet& a) {
  const double x = a.value();
  if (x == 0.0 && a.order() > 0) throw DomainError("abs is not differentiable at 0");
  const double s = x < 0.0 ? -1.0 : 1.0;
  return a.compose({std::abs(x), s, 0.0, 0.0});
}

Jet pow(const Jet& base, double c) {
  const double x = base.value();
  const bool integral = std::floor(c) == c && std::abs(c) < 1e9;
  if (integral && c >= 0.0 && c <= 3.0) {
    // Exact products; also covers x <= 0.
    Jet out(base.nvars(), base.order(), 1.0);
    for (int k = 0; k < static_cast<int>(c); ++k) out = out * base;
    return out;
  }
  if (x == 0.0) {
    if (c < 0.0) throw DomainError("division by zero");
    if (!integral) throw DomainError("pow of non-positive base with non-integer exponent");
  }
  if (x < 0.0 && !integral) throw DomainError("pow of non-positive base with non-integer exponent");
  auto term = [&](int k) {
    double coeff = 1.0;
    for (int j = 0; j < k; ++j) coeff *= (c - j);
    if (coeff == 0.0) return 0.0;
    return coeff * std::pow(x, c - k);
  };
  return base.compose({std::pow(x, c), term(1), term(2), term(3)});
}

Jet pow(const Jet& base, const Jet& exponent) {
  if (exponent.is_constant()) return pow(base, exponent.value());
  if (base.value() <= 0.0) throw DomainError("pow of non-positive base with variable exponent");
  return exp(exponent * log(base));
}

}  // namespace rectsub
