#include "commham/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace commham {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAprimeTol = 1e-8;

double wrap(double x) {
  double y = std::remainder(x, 2.0 * kPi);
  if (y <= -kPi) y += 2.0 * kPi;
  return y;
}

double dlogf(double s, double a) {
  const double w1 = 1.0 - a, w2 = 3.0 + a;
  return w1 / std::tan(0.5 * w1 * s) - w2 / std::tan(0.5 * w2 * s);
}

}  // namespace

cplx ratio_r(double t, double a) {
  const double d = -2.0 - a;
  const cplx num = std::exp(kI * t) - std::exp(kI * (a * t));
  const cplx den = std::exp(kI * (d * t)) - std::exp(kI * t);
  if (std::abs(den) == 0.0) throw Error(ErrorCode::UndefinedRatio, "ratio denominator vanishes");
  return num / den;
}

double ratio_rho(double t, double a) {
  const double den = std::sin(0.5 * (3.0 + a) * t);
  if (den == 0.0) throw Error(ErrorCode::UndefinedRatio, "ratio denominator vanishes");
  return std::sin(0.5 * (a - 1.0) * t) / den;
}

double f_norm(double s, double a) {
  const double den = std::sin(0.5 * (3.0 + a) * s);
  if (den == 0.0) throw Error(ErrorCode::UndefinedRatio, "f denominator vanishes");
  const double q = std::sin(0.5 * (1.0 - a) * s) / den;
  return q * q;
}

double f_limit(double a) {
  const double q = (1.0 - a) / (3.0 + a);
  return q * q;
}

double valid_time_bound(double a) {
  return 2.0 * kPi / std::max(std::abs(1.0 - a), std::abs(3.0 + a));
}

void require_generic(double a) {
  if (std::abs(a - 1.0) <= kAprimeTol || std::abs(a + 1.0) <= kAprimeTol ||
      std::abs(a + 3.0) <= kAprimeTol || !std::isfinite(a)) {
    throw Error(ErrorCode::InvalidAPrime, "a' must avoid 1, -1 and -3");
  }
}

double solve_f(double k, double a, RootLog* log) {
  require_generic(a);
  if (!(k > 0) || !std::isfinite(k)) throw Error(ErrorCode::InvalidAPrime, "target must be positive");
  const double tstar = valid_time_bound(a);
  const double target = std::log(k);
  auto g = [&](double s) { return std::log(f_norm(s, a)) - target; };

  double lo = 1e-9 * tstar, hi = (1.0 - 1e-9) * tstar;
  double glo = g(lo), ghi = g(hi);
  if (glo == 0.0) return lo;
  if (ghi == 0.0) return hi;
  if ((glo > 0) == (ghi > 0)) throw Error(ErrorCode::InvalidAPrime, "target outside the range of f");

  int bis = 0;
  while (hi - lo >= 0.1) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    ++bis;
    if (gm == 0.0) return mid;
    if ((gm > 0) == (glo > 0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  if (log) log->bisection_steps = bis;

  double s = 0.5 * (lo + hi);
  for (int it = 0; it < 100; ++it) {
    const double gs = g(s);
    if (log) log->newton_residuals.push_back(std::abs(gs));
    if (std::abs(gs) <= 1e-15) break;
    if ((gs > 0) == (glo > 0)) {
      lo = s;
      glo = gs;
    } else {
      hi = s;
    }
    double next = s - gs / dlogf(s, a);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - s) <= 1e-16 * std::max(1.0, std::abs(s))) {
      s = next;
      break;
    }
    s = next;
  }
  return s;
}

int phase_sequence_bound(double a) {
  const double w = std::abs(a + 1.0) * valid_time_bound(a);
  return static_cast<int>(std::ceil(kPi / (0.9 * w))) + 2;
}

std::vector<double> solve_phase_sequence(double theta, double a) {
  require_generic(a);
  if (!std::isfinite(theta)) throw Error(ErrorCode::InvalidAPrime, "theta must be finite");
  if (std::abs(wrap(theta)) <= 1e-15) return {};
  const double tstar = valid_time_bound(a);
  const double lo = 0.05 * tstar, hi = 0.9 * tstar;
  const bool flip = ratio_rho(1e-6 * tstar, a) < 0;
  const int kmax = phase_sequence_bound(a);
  for (int k = 1; k <= kmax; ++k) {
    const double total = wrap(theta - (flip ? k * kPi : 0.0)) / (a + 1.0);
    const double each = total / k;
    if (std::abs(each) >= lo && std::abs(each) <= hi) {
      return std::vector<double>(static_cast<std::size_t>(k), each);
    }
    if (k % 2 == 0 && std::abs(each) < lo) {
      const double tau = 0.4 * tstar;
      std::vector<double> ts;
      for (int i = 0; i < k; ++i) ts.push_back(each + (i % 2 == 0 ? tau : -tau));
      return ts;
    }
  }
  throw Error(ErrorCode::BudgetExhausted, "no phase sequence within the length bound");
}

std::vector<double> solve_norm_sequence(double c_target, double a, std::vector<RootLog>* logs) {
  require_generic(a);
  if (!(c_target > 0) || !std::isfinite(c_target)) {
    throw Error(ErrorCode::InvalidAPrime, "c_target must be positive");
  }
  const double log_k = 2.0 * std::log(c_target);
  if (std::abs(log_k) <= 1e-15) return {};
  const double tstar = valid_time_bound(a);
  const double l1 = std::log(f_norm(0.02 * tstar, a));
  const double l2 = std::log(f_norm(0.95 * tstar, a));
  const double lmin = std::min(l1, l2), lmax = std::max(l1, l2);
  const double reach = log_k > 0 ? lmax : lmin;
  const int m = std::max(1, static_cast<int>(std::ceil(log_k / reach)));
  const double each = std::exp(log_k / m);
  std::vector<double> out;
  for (int j = 0; j < m; ++j) {
    RootLog lg;
    out.push_back(solve_f(each, a, &lg));
    if (logs) logs->push_back(std::move(lg));
  }
  return out;
}

}  // namespace commham
