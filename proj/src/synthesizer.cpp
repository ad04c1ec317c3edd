#include "commham/synthesizer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "commham/gadgets.hpp"

namespace commham {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMinSin = 0.02;

struct StepEval {
  CMat2 value;
  CMat2 d1 = CMat2::Zero();
  CMat2 d2 = CMat2::Zero();
};

CMat2 adjugate(const CMat2& m) {
  CMat2 a;
  a << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
  return a;
}

/// SL-normalized raw matrix and its derivative given raw′.
std::pair<CMat2, CMat2> normalize_with_derivative(const CMat2& raw, const CMat2& draw) {
  const cplx det = raw.determinant();
  const cplx sq = std::sqrt(det);
  const cplx ddet = (adjugate(raw) * draw).trace();
  return {raw / sq, CMat2(draw / sq - raw * (ddet / (2.0 * det * sq)))};
}

StepEval eval_step(const SynthStep& s, const CanonicalParams& p) {
  StepEval out;
  CMat2 dv1 = CMat2::Zero(), dv2 = CMat2::Zero();
  switch (s.kind) {
    case SynthKind::L: {
      const CMat2 raw = l_matrix(s.t1, p).raw;
      CMat2 draw;
      draw << kI * p.a_prime * raw(0, 0), kI * raw(0, 1), kI * raw(1, 0), kI * p.d_prime * raw(1, 1);
      std::tie(out.value, dv1) = normalize_with_derivative(raw, draw);
      break;
    }
    case SynthKind::L2: {
      const CMat2 raw = l2_matrix(s.t1, s.t2, p).raw;
      CMat2 dr1, dr2;
      dr1 << kI * p.a_prime * raw(0, 0), 0.0, kI * raw(1, 0), kI * p.d_prime * raw(1, 1);
      dr2 << kI * p.a_prime * raw(0, 0), kI * raw(0, 1), 0.0, kI * p.d_prime * raw(1, 1);
      std::tie(out.value, dv1) = normalize_with_derivative(raw, dr1);
      dv2 = normalize_with_derivative(raw, dr2).second;
      break;
    }
    case SynthKind::P: {
      out.value = CMat2::Zero();
      out.value(0, 0) = std::exp(2.0 * kI * s.t1);
      out.value(1, 1) = std::exp(-2.0 * kI * s.t1);
      dv1 = CMat2::Zero();
      dv1(0, 0) = 2.0 * kI * out.value(0, 0);
      dv1(1, 1) = -2.0 * kI * out.value(1, 1);
      break;
    }
  }
  if (s.exponent < 0) {
    const CMat2 inv = adjugate(out.value) / out.value.determinant();
    out.value = inv;
    dv1 = -inv * dv1 * inv;
    dv2 = -inv * dv2 * inv;
  }
  out.d1 = dv1;
  out.d2 = dv2;
  return out;
}

bool step_valid(const SynthStep& s) {
  switch (s.kind) {
    case SynthKind::L: return std::abs(std::sin(2.0 * s.t1)) >= kMinSin;
    case SynthKind::L2: return std::abs(std::sin(s.t1 + s.t2)) >= kMinSin;
    case SynthKind::P: return true;
  }
  return false;
}

int params_of(const SynthStep& s) { return s.kind == SynthKind::L2 ? 2 : s.kind == SynthKind::L ? 1 : 0; }

bool is_exceptional(const CanonicalParams& p) {
  return p.symmetric && std::abs(p.a_prime + 1.0) <= 1e-8 &&
         std::abs(std::abs(p.alpha) - std::abs(p.beta)) <= 1e-8;
}

/// Frobenius-projective distance between Frobenius-normalized matrices.
double frob_distance(const CMat2& an, const CMat2& bn) {
  const double ov = std::abs((bn.adjoint() * an).trace());
  return std::sqrt(std::max(0.0, 2.0 - 2.0 * std::min(1.0, ov)));
}

std::vector<SynthStep> generator_set(const CanonicalParams& p, int grid_points) {
  const std::vector<double> grid = time_grid(grid_points);
  std::vector<SynthStep> gens;
  const int n = static_cast<int>(grid.size());
  for (int k = 0; k < n; ++k) {
    for (int ex : {1, -1}) {
      SynthStep s;
      s.exponent = ex;
      if (p.symmetric) {
        s.kind = SynthKind::L;
        s.t1 = grid[static_cast<std::size_t>(k)];
      } else {
        s.kind = SynthKind::L2;
        s.t1 = grid[static_cast<std::size_t>(k)];
        s.t2 = grid[static_cast<std::size_t>((7 * k + 3) % n)];
      }
      if (step_valid(s)) gens.push_back(s);
    }
  }
  return gens;
}

SynthStep random_step(const CanonicalParams& p, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-kPi, kPi);
  SynthStep s;
  s.kind = p.symmetric ? SynthKind::L : SynthKind::L2;
  do {
    s.t1 = u(rng);
    s.t2 = p.symmetric ? 0.0 : u(rng);
  } while (!step_valid(s));
  s.exponent = (rng() & 1) ? 1 : -1;
  return s;
}

struct Residual {
  Eigen::Matrix<double, 8, 1> r;
  Eigen::MatrixXd jac;
  CMat2 product;
};

Residual residual(const std::vector<SynthStep>& seq, const CanonicalParams& p, const CMat2& target) {
  const std::size_t n = seq.size();
  std::vector<StepEval> ev;
  ev.reserve(n);
  for (const auto& s : seq) ev.push_back(eval_step(s, p));
  std::vector<CMat2> prefix(n + 1, CMat2::Identity());
  for (std::size_t k = 0; k < n; ++k) prefix[k + 1] = ev[k].value * prefix[k];
  std::vector<CMat2> suffix(n + 1, CMat2::Identity());
  for (std::size_t k = n; k-- > 0;) suffix[k] = suffix[k + 1] * ev[k].value;

  Residual out;
  out.product = prefix[n];
  const double plus = (out.product - target).squaredNorm();
  const double minus = (out.product + target).squaredNorm();
  const CMat2 diff = plus <= minus ? CMat2(out.product - target) : CMat2(out.product + target);
  auto put = [](const CMat2& m, auto&& col) {
    col << m(0, 0).real(), m(0, 0).imag(), m(0, 1).real(), m(0, 1).imag(), m(1, 0).real(),
        m(1, 0).imag(), m(1, 1).real(), m(1, 1).imag();
  };
  put(diff, out.r);
  int cols = 0;
  for (const auto& s : seq) cols += params_of(s);
  out.jac.resize(8, cols);
  int c = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const int np = params_of(seq[k]);
    if (np >= 1) put(CMat2(suffix[k + 1] * ev[k].d1 * prefix[k]), out.jac.col(c++));
    if (np >= 2) put(CMat2(suffix[k + 1] * ev[k].d2 * prefix[k]), out.jac.col(c++));
  }
  return out;
}

void apply_delta(std::vector<SynthStep>& seq, const Eigen::VectorXd& delta) {
  int c = 0;
  for (auto& s : seq) {
    const int np = params_of(s);
    if (np >= 1) s.t1 += delta(c++);
    if (np >= 2) s.t2 += delta(c++);
  }
}

/// Levenberg–Marquardt over the continuous times of seq.
void refine(std::vector<SynthStep>& seq, const CanonicalParams& p, const CMat2& target,
            int max_iter, double stop_cost, long& evaluations, long budget) {
  Residual cur = residual(seq, p, target);
  ++evaluations;
  double cost = cur.r.squaredNorm();
  double lambda = 1e-3;
  for (int it = 0; it < max_iter && evaluations < budget; ++it) {
    if (cost <= stop_cost) break;
    const Eigen::MatrixXd jtj = cur.jac.transpose() * cur.jac;
    const Eigen::VectorXd g = cur.jac.transpose() * cur.r;
    Eigen::MatrixXd a = jtj;
    a.diagonal() += lambda * (jtj.diagonal().array() + 1e-9).matrix();
    const Eigen::VectorXd delta = -a.ldlt().solve(g);
    if (!delta.allFinite()) break;
    std::vector<SynthStep> trial = seq;
    apply_delta(trial, delta);
    bool valid = true;
    for (const auto& s : trial) valid = valid && step_valid(s);
    if (!valid) {
      lambda *= 4.0;
      continue;
    }
    Residual next = residual(trial, p, target);
    ++evaluations;
    const double ncost = next.r.squaredNorm();
    if (ncost < cost) {
      const bool stalled = cost - ncost <= 1e-12 * cost;
      seq = std::move(trial);
      cur = std::move(next);
      cost = ncost;
      lambda = std::max(lambda / 3.0, 1e-12);
      if (stalled) break;
    } else {
      lambda *= 4.0;
      if (lambda > 1e12) break;
    }
  }
}

}  // namespace

std::string_view to_string(SynthKind k) {
  switch (k) {
    case SynthKind::L: return "L";
    case SynthKind::L2: return "L2";
    case SynthKind::P: return "P";
  }
  return "?";
}

std::vector<double> time_grid(int grid_points) {
  std::vector<double> g;
  const double half = 0.5 * grid_points;
  for (int k = 0; k < grid_points; ++k) g.push_back((k + 0.5) * kPi / half);
  return g;
}

CMat2 evaluate_sequence(const std::vector<SynthStep>& seq, const CanonicalParams& p) {
  CMat2 m = CMat2::Identity();
  for (const auto& s : seq) m = eval_step(s, p).value * m;
  return m;
}

SynthesisResult synthesize(const CMat2& target, const CanonicalParams& p, double epsilon,
                           long budget, std::uint64_t seed, const SynthOptions& opts) {
  if (is_exceptional(p)) throw Error(ErrorCode::ExceptionalCase, "exceptional class is not dense");
  if (!(epsilon >= 1e-4)) throw Error(ErrorCode::InvalidArgument, "epsilon must be at least 1e-4");
  const cplx det = target.determinant();
  if (!target.allFinite() || std::abs(det) <= 1e-14 * std::max(1e-300, target.squaredNorm())) {
    throw Error(ErrorCode::InvalidArgument, "target must be invertible");
  }
  const CMat2 tgt = target / std::sqrt(det);

  SynthesisResult res;
  res.seed = seed;
  auto finish = [&](std::vector<SynthStep> seq) {
    res.sequence = std::move(seq);
    res.achieved_error = projective_distance(evaluate_sequence(res.sequence, p), tgt);
    res.success = res.achieved_error <= epsilon;
    return res;
  };

  ++res.evaluations;
  if (projective_distance(CMat2(CMat2::Identity()), tgt) <= 1e-12) return finish({});

  const bool phase_case = p.symmetric && (std::abs(p.a_prime - 1.0) <= 1e-8 ||
                                          std::abs(p.a_prime + 3.0) <= 1e-8);
  if (phase_case && std::abs(tgt(0, 1)) <= 1e-12 * tgt.norm() &&
      std::abs(tgt(1, 0)) <= 1e-12 * tgt.norm() &&
      std::abs(std::abs(tgt(0, 0)) - std::abs(tgt(1, 1))) <= 1e-12 * tgt.norm()) {
    ++res.evaluations;
    SynthStep s;
    s.kind = SynthKind::P;
    s.t1 = std::arg(tgt(0, 0) / tgt(1, 1)) / 4.0;
    return finish({s});
  }

  const CMat2 tgt_f = tgt / tgt.norm();
  const std::vector<SynthStep> gens = generator_set(p, opts.grid_points);
  std::vector<CMat2> gen_vals;
  for (const auto& g : gens) gen_vals.push_back(eval_step(g, p).value);

  struct Node {
    std::vector<SynthStep> seq;
    CMat2 m;
    double score;
  };
  std::vector<Node> beam{{{}, CMat2::Identity(), frob_distance(CMat2::Identity() / std::sqrt(2.0), tgt_f)}};
  std::vector<SynthStep> best_seq;
  double best_err = projective_distance(CMat2(CMat2::Identity()), tgt);

  for (int depth = 0; depth < opts.beam_depth && res.evaluations < budget; ++depth) {
    std::vector<Node> cand;
    for (const Node& b : beam) {
      for (std::size_t g = 0; g < gens.size() && res.evaluations < budget; ++g) {
        const CMat2 m = gen_vals[g] * b.m;
        ++res.evaluations;
        Node nd{b.seq, m, frob_distance(CMat2(m / m.norm()), tgt_f)};
        nd.seq.push_back(gens[g]);
        cand.push_back(std::move(nd));
      }
    }
    std::stable_sort(cand.begin(), cand.end(),
                     [](const Node& x, const Node& y) { return x.score < y.score; });
    if (cand.size() > static_cast<std::size_t>(opts.beam_width)) cand.resize(static_cast<std::size_t>(opts.beam_width));
    if (cand.empty()) break;
    beam = std::move(cand);
    const double err = projective_distance(beam.front().m, tgt);
    if (err < best_err) {
      best_err = err;
      best_seq = beam.front().seq;
    }
    if (best_err <= epsilon) return finish(best_seq);
  }

  std::mt19937_64 rng(seed);
  const double stop_cost = std::pow(0.25 * epsilon, 2) * tgt.squaredNorm();
  for (long restart = 0; res.evaluations < budget; ++restart) {
    std::vector<SynthStep> seq = beam[static_cast<std::size_t>(restart) % beam.size()].seq;
    while (static_cast<int>(seq.size()) < opts.sequence_length) seq.push_back(random_step(p, rng));
    refine(seq, p, tgt, opts.lm_iterations, stop_cost, res.evaluations, budget);
    ++res.evaluations;
    const double err = projective_distance(evaluate_sequence(seq, p), tgt);
    if (err < best_err) {
      best_err = err;
      best_seq = seq;
    }
    if (best_err <= epsilon) break;
  }
  return finish(best_seq);
}

CoverageReport net_coverage(const CanonicalParams& p, int sequence_length, int samples,
                            std::uint64_t seed, int products_per_length) {
  if (is_exceptional(p)) throw Error(ErrorCode::ExceptionalCase, "exceptional class is not dense");
  if (sequence_length < 0 || samples < 0) throw Error(ErrorCode::InvalidArgument, "negative size");
  const std::vector<SynthStep> gens = generator_set(p, 64);
  std::vector<CMat2> gen_vals;
  for (const auto& g : gens) gen_vals.push_back(eval_step(g, p).value);

  std::vector<CMat2> products{CMat2::Identity() / std::sqrt(2.0)};
  for (int len = 1; len <= sequence_length; ++len) {
    std::seed_seq sq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                     static_cast<std::uint32_t>(len)};
    std::mt19937_64 rng(sq);
    for (int k = 0; k < products_per_length; ++k) {
      CMat2 m = CMat2::Identity();
      for (int j = 0; j < len; ++j) m = gen_vals[static_cast<std::size_t>(rng() % gen_vals.size())] * m;
      products.push_back(m / m.norm());
    }
  }

  std::mt19937_64 srng(seed);
  CoverageReport rep;
  rep.sequence_length = sequence_length;
  rep.samples = samples;
  rep.products = products.size();
  for (int b = 0; b <= 20; ++b) rep.bin_edges.push_back(0.1 * b);
  rep.histogram.assign(20, 0);
  double sum = 0.0;
  for (int i = 0; i < samples; ++i) {
    CMat2 u = random_unitary2(srng);
    u /= std::sqrt(u.determinant());
    const CMat2 un = u / u.norm();
    double best = 1e300;
    for (const CMat2& m : products) {
      if (frob_distance(m, un) / std::sqrt(2.0) >= best) continue;
      best = std::min(best, projective_distance(m, un));
    }
    rep.max_distance = std::max(rep.max_distance, best);
    sum += best;
    const int bin = std::clamp(static_cast<int>(best / 0.1), 0, 19);
    ++rep.histogram[static_cast<std::size_t>(bin)];
  }
  rep.mean_distance = samples > 0 ? sum / samples : 0.0;
  return rep;
}

}  // namespace commham
