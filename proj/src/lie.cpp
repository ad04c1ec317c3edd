#include "commham/lie.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "commham/gadgets.hpp"

namespace commham {

namespace {

constexpr double kPi = std::numbers::pi;
const double kGrid[] = {0.3, 0.7, 1.1, 2.0};

cplx e(double x) { return std::exp(kI * x); }

using RMatX = Eigen::MatrixXd;

RMatX stack(const std::vector<CMat2>& ms) {
  RMatX a(6, static_cast<Eigen::Index>(ms.size()));
  for (std::size_t j = 0; j < ms.size(); ++j) {
    RVec6 x = embed(ms[j]);
    const double n = x.norm();
    if (n > 0) x /= n;
    a.col(static_cast<Eigen::Index>(j)) = x;
  }
  return a;
}

struct Closure {
  std::vector<TangentElement> items;

  int rank() const {
    std::vector<CMat2> ms;
    for (const auto& t : items) ms.push_back(t.m);
    return real_rank(ms);
  }

  void add(TangentElement t) {
    if (t.m.norm() > 1e-14) items.push_back(std::move(t));
  }

  /// Keeps a maximal independent subset, chosen by column-pivoted QR.
  void prune(int dim) {
    if (items.empty()) return;
    std::vector<CMat2> ms;
    for (const auto& t : items) ms.push_back(t.m);
    Eigen::ColPivHouseholderQR<RMatX> qr(stack(ms));
    std::vector<TangentElement> kept;
    for (int k = 0; k < dim; ++k) {
      kept.push_back(items[static_cast<std::size_t>(qr.colsPermutation().indices()(k))]);
    }
    items = std::move(kept);
  }
};

double sample_time(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  for (;;) {
    const double v = u(rng);
    if (std::abs(std::sin(2.0 * v)) >= 0.05) return v;
  }
}

}  // namespace

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::GSym: return "g_sym";
    case Provenance::GAsym: return "g_asym";
    case Provenance::HAsym: return "h_asym";
    case Provenance::PPhase: return "p_phase";
    case Provenance::Commutator: return "commutator";
    case Provenance::Conjugated: return "conjugated";
    case Provenance::Given: return "given";
  }
  return "unknown";
}

RVec6 embed(const CMat2& m) {
  RVec6 x;
  x << m(0, 0).real(), m(0, 0).imag(), m(0, 1).real(), m(0, 1).imag(), m(1, 0).real(),
      m(1, 0).imag();
  return x;
}

CMat2 unembed(const RVec6& x) {
  CMat2 m;
  m(0, 0) = cplx(x(0), x(1));
  m(0, 1) = cplx(x(2), x(3));
  m(1, 0) = cplx(x(4), x(5));
  m(1, 1) = -m(0, 0);
  return m;
}

TangentElement tangent_g_sym(double v, const CanonicalParams& p) {
  if (!p.symmetric) throw Error(ErrorCode::AsymmetricCase, "symmetric tangent on b != c input");
  const double s = std::sin(2.0 * v);
  if (std::abs(s) < 1e-12) throw Error(ErrorCode::SingularPoint, "sin 2v = 0");
  const double a = p.a_prime;
  const cplx ab = p.alpha / p.beta;
  CMat2 g;
  g << (a + 1.0) * e(-2.0 * v), ab * (1.0 - a) * e((1.0 + a) * v),
      (3.0 + a) / ab * e(-(1.0 + a) * v), -(a + 1.0) * e(-2.0 * v);
  g *= -1.0 / (2.0 * s);
  return {g, Provenance::GSym, v, 0.0};
}

std::pair<TangentElement, TangentElement> tangent_gh_asym(double v1, double v2,
                                                          const CanonicalParams& p) {
  if (p.symmetric) throw Error(ErrorCode::SymmetricCase, "asymmetric tangent on b = c input");
  const double s = v1 + v2;
  const double sn = std::sin(s);
  if (std::abs(sn) < 1e-12) throw Error(ErrorCode::SingularPoint, "sin(v1+v2) = 0");
  const double a = p.a_prime, d = p.d_prime;
  const cplx ab = p.alpha / p.beta;
  const cplx up = e(a * v1 + (a + 1.0) * v2);
  const cplx lo = e((d + 1.0) * v1 + d * v2);
  const cplx g00 = a * e(-s) + std::cos(s);
  const cplx h00 = a * e(-s) - kI * sn;
  CMat2 g, h;
  g << g00, -ab * a * up, (2.0 + a) / ab * lo, -g00;
  h << h00, ab * (1.0 - a) * up, (1.0 + a) / ab * lo, -h00;
  g *= -1.0 / (2.0 * sn);
  h *= -1.0 / (2.0 * sn);
  return {{g, Provenance::GAsym, v1, v2}, {h, Provenance::HAsym, v1, v2}};
}

int real_rank(const std::vector<CMat2>& ms, double cutoff) {
  if (ms.empty()) return 0;
  Eigen::JacobiSVD<RMatX> svd(stack(ms));
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || !(sv(0) > 0)) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff * sv(0)) ++r;
  return r;
}

double span_residual(const CMat2& m, const std::vector<CMat2>& basis) {
  const RVec6 x = embed(m);
  if (basis.empty()) return 1.0;
  const RMatX a = stack(basis);
  const Eigen::VectorXd coef = a.colPivHouseholderQr().solve(x);
  return (x - a * coef).norm() / x.norm();
}

LieSpanReport lie_closure(const std::vector<TangentElement>& generators,
                          const std::vector<CMat2>& conjugators, int max_iter) {
  LieSpanReport rep;
  Closure cl;
  for (const auto& g : generators) {
    if (std::abs(g.m.trace()) > 1e-10 * std::max(1.0, g.m.norm())) {
      throw Error(ErrorCode::InvalidCircuit, "generator is not traceless");
    }
    cl.add(g);
  }
  int dim = cl.rank();
  cl.prune(dim);
  rep.dimension_trace.push_back(dim);
  rep.used_span = dim > 0;

  for (int it = 0; it < max_iter && dim < 6; ++it) {
    ++rep.iterations;
    const int before = dim;

    const std::size_t n = cl.items.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const CMat2 c = cl.items[i].m * cl.items[j].m - cl.items[j].m * cl.items[i].m;
        cl.add({c, Provenance::Commutator, 0.0, 0.0});
      }
    const int after_comm = cl.rank();
    if (after_comm > dim) rep.used_commutator = true;
    cl.prune(after_comm);
    dim = after_comm;
    rep.dimension_trace.push_back(dim);

    const std::size_t m = cl.items.size();
    for (const CMat2& g : conjugators) {
      const CMat2 gi = g.inverse();
      for (std::size_t i = 0; i < m; ++i) {
        cl.add({CMat2(g * cl.items[i].m * gi), Provenance::Conjugated, 0.0, 0.0});
      }
    }
    const int after_conj = cl.rank();
    if (after_conj > dim) rep.used_conjugation = true;
    cl.prune(after_conj);
    dim = after_conj;
    rep.dimension_trace.push_back(dim);

    if (dim == before) break;
  }
  rep.dimension = dim;
  rep.basis = cl.items;
  return rep;
}

LieSpanReport verify_density(const HamClass& c, std::uint64_t seed) {
  const bool ok = c.kind == HamKind::HardSymmetric || c.kind == HamKind::HardAsymmetric ||
                  c.kind == HamKind::Exceptional;
  if (!ok || !c.params) throw Error(ErrorCode::WrongKind, "needs a hard or exceptional class");
  const CanonicalParams& p = *c.params;
  std::mt19937_64 rng(seed);
  std::vector<TangentElement> gens;
  std::vector<CMat2> conj;

  if (p.symmetric) {
    std::vector<double> vs(std::begin(kGrid), std::end(kGrid));
    for (int k = 0; k < 4; ++k) vs.push_back(sample_time(rng, 0.05, kPi - 0.05));
    for (double v : vs) gens.push_back(tangent_g_sym(v, p));
    if (c.kind == HamKind::HardSymmetric &&
        (c.subcase == Subcase::APlusOne || c.subcase == Subcase::AMinusThree)) {
      CMat2 ph = CMat2::Zero();
      ph(0, 0) = kI;
      ph(1, 1) = -kI;
      gens.push_back({ph, Provenance::PPhase, 0.0, 0.0});
    }
    for (double s : kGrid) conj.push_back(*l_matrix(s, p).normalized);
  } else {
    std::vector<std::pair<double, double>> pts;
    for (double v : kGrid) pts.emplace_back(v, kPi / 2.0 - v);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    while (pts.size() < 8) {
      const double v1 = u(rng), v2 = u(rng);
      if (std::abs(std::sin(v1 + v2)) >= 0.05) pts.emplace_back(v1, v2);
    }
    for (const auto& [v1, v2] : pts) {
      auto [g, h] = tangent_gh_asym(v1, v2, p);
      gens.push_back(g);
      gens.push_back(h);
    }
    for (double s : kGrid) conj.push_back(*l2_matrix(s, kPi / 2.0 - s, p).normalized);
  }
  return lie_closure(gens, conj);
}

}  // namespace commham
