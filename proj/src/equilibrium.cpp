#include "poisongame/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <json.hpp>
#include <sstream>
#include <stdexcept>

namespace poisongame {

namespace {

constexpr double kMergeGap = 1e-4;
constexpr double kThresholdMargin = 1e-4;
constexpr double kPruneMass = 1e-6;
constexpr double kMinStep = 1e-14;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

// Indifference probabilities for n >= 1 radii; a single radius gets mass 1.
std::vector<double> indifference_probs(std::span<const double> radii, const PayoffCurve& e) {
  const std::size_t n = radii.size();
  std::vector<double> c(n + 1, 0.0);
  const double e_first = e(radii[0]);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0 && !(radii[i] > radii[i - 1])) {
      throw std::invalid_argument("find_percentage: radii must be strictly increasing");
    }
    const double ei = e(radii[i]);
    if (!(ei > 0.0)) {
      throw std::invalid_argument("find_percentage: E(" + fmt(radii[i]) + ") = " + fmt(ei) +
                                  " <= 0; radius lies below the attacker benefit threshold");
    }
    c[i] = e_first / ei;
  }
  std::vector<double> p(n);
  for (std::size_t i = 0; i < n; ++i) {
    p[i] = c[i] - c[i + 1];
    if (p[i] < 0.0) {
      if (p[i] < -1e-12) {
        throw std::invalid_argument("find_percentage: E decreases between radii " +
                                    fmt(radii[i]) + " and " + fmt(radii[i + 1]) +
                                    "; indifference would need negative mass");
      }
      p[i] = 0.0;
    }
  }
  return p;
}

double loss_any(std::span<const double> radii, const PayoffCurve& e, const PayoffCurve& gamma,
                std::int64_t n_poison) {
  const auto p = indifference_probs(radii, e);
  double f = static_cast<double>(n_poison) * e(radii[0]);
  for (std::size_t i = 0; i < radii.size(); ++i) f += p[i] * gamma(radii[i]);
  return f;
}

std::vector<double> gradient_any(std::span<const double> radii, const PayoffCurve& e,
                                 const PayoffCurve& gamma, std::int64_t n_poison) {
  const std::size_t n = radii.size();
  const double N = static_cast<double>(n_poison);
  std::vector<double> ev(n), de(n), gv(n), dg(n);
  for (std::size_t i = 0; i < n; ++i) {
    ev[i] = e(radii[i]);
    de[i] = e.slope(radii[i]);
    gv[i] = gamma(radii[i]);
    dg[i] = gamma.slope(radii[i]);
  }
  // f = N E_1 + G_1 + E_1 * sum_{i>=2} (G_i - G_{i-1}) / E_i
  double tail = 0.0;
  for (std::size_t i = 1; i < n; ++i) tail += (gv[i] - gv[i - 1]) / ev[i];
  std::vector<double> grad(n, 0.0);
  grad[0] = N * de[0] + dg[0] + de[0] * tail;
  if (n > 1) grad[0] -= ev[0] * dg[0] / ev[1];
  for (std::size_t k = 1; k < n; ++k) {
    double d = dg[k] / ev[k] - (gv[k] - gv[k - 1]) * de[k] / (ev[k] * ev[k]);
    if (k + 1 < n) d -= dg[k] / ev[k + 1];
    grad[k] = ev[0] * d;
  }
  return grad;
}

// Clamp into [lower, 1], sort, and drop radii closer than kMergeGap to the
// previous one. Returns true if any radius was dropped.
bool project(std::vector<double>& radii, double lower) {
  for (auto& r : radii) r = std::clamp(r, lower, 1.0);
  std::sort(radii.begin(), radii.end());
  std::vector<double> kept;
  kept.reserve(radii.size());
  for (double r : radii) {
    if (kept.empty() || r - kept.back() >= kMergeGap) kept.push_back(r);
  }
  const bool merged = kept.size() != radii.size();
  radii = std::move(kept);
  return merged;
}

}  // namespace

std::vector<double> find_percentage(std::span<const double> radii, const PayoffCurve& e) {
  if (radii.size() < 2) {
    throw std::invalid_argument("find_percentage: a mixed defense needs at least two radii");
  }
  return indifference_probs(radii, e);
}

double defender_loss(std::span<const double> radii, const PayoffCurve& e,
                     const PayoffCurve& gamma, std::int64_t n_poison) {
  if (radii.size() < 2) {
    throw std::invalid_argument("defender_loss: a mixed defense needs at least two radii");
  }
  return loss_any(radii, e, gamma, n_poison);
}

std::vector<double> defender_loss_gradient(std::span<const double> radii, const PayoffCurve& e,
                                           const PayoffCurve& gamma, std::int64_t n_poison) {
  if (radii.size() < 2) {
    throw std::invalid_argument("defender_loss_gradient: need at least two radii");
  }
  indifference_probs(radii, e);  // validates preconditions
  return gradient_any(radii, e, gamma, n_poison);
}

std::vector<double> choose_initial_radius(int n_support, double t_a) {
  if (n_support < 2) throw std::invalid_argument("choose_initial_radius: n_support must be >= 2");
  if (!(t_a < 1.0)) {
    throw std::invalid_argument(
        "choose_initial_radius: attacker benefit threshold >= 1, attacking never profits");
  }
  t_a = std::max(t_a, 0.0);
  std::vector<double> radii(static_cast<std::size_t>(n_support));
  for (int k = 1; k <= n_support; ++k) {
    radii[static_cast<std::size_t>(k - 1)] = t_a + k * (1.0 - t_a) / (n_support + 1);
  }
  return radii;
}

std::vector<double> SolveReport::radii() const {
  std::vector<double> out;
  for (const auto& s : mix.support()) out.push_back(s.theta);
  return out;
}

std::vector<double> SolveReport::probs() const {
  std::vector<double> out;
  for (const auto& s : mix.support()) out.push_back(s.prob);
  return out;
}

SolveReport solve(const PayoffCurve& e, const PayoffCurve& gamma, const SolverOptions& opt) {
  if (opt.n_support < 2) throw std::invalid_argument("solve: n_support must be >= 2");
  if (!(opt.epsilon > 0.0)) throw std::invalid_argument("solve: epsilon must be > 0");
  if (!(opt.step > 0.0)) throw std::invalid_argument("solve: step must be > 0");
  if (opt.n_poison <= 0) throw std::invalid_argument("solve: n_poison must be > 0");
  if (opt.max_iter < 1) throw std::invalid_argument("solve: max_iter must be >= 1");

  const double t_a = attacker_benefit_threshold(e);
  auto radii = choose_initial_radius(opt.n_support, t_a);
  const double lower = e(t_a) > 0.0 ? t_a : std::min(t_a + kThresholdMargin, 1.0);
  if (!(e(lower) > 0.0)) {
    throw std::runtime_error("solve: every feasible radius lies below the attacker benefit "
                             "threshold (E <= 0 at " + fmt(lower) + ")");
  }
  bool shrunk = project(radii, lower);

  auto evaluate = [&](std::span<const double> r) {
    try {
      return loss_any(r, e, gamma, opt.n_poison);
    } catch (const std::invalid_argument&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  double f = loss_any(radii, e, gamma, opt.n_poison);
  std::vector<TracePoint> trace{{0, f}};
  bool converged = false;
  int iteration = 0;
  while (iteration < opt.max_iter) {
    ++iteration;
    const auto grad = gradient_any(radii, e, gamma, opt.n_poison);
    std::vector<double> candidate;
    double f_candidate = std::numeric_limits<double>::infinity();
    bool merged = false;
    for (double alpha = opt.step; alpha >= kMinStep; alpha *= 0.5) {
      candidate = radii;
      for (std::size_t i = 0; i < candidate.size(); ++i) candidate[i] -= alpha * grad[i];
      merged = project(candidate, lower);
      f_candidate = evaluate(candidate);
      if (f_candidate <= f) break;
    }
    if (!(f_candidate <= f)) {
      // No non-increasing step: stationary up to the projection.
      trace.push_back({iteration, f});
      converged = true;
      break;
    }
    const double improvement = f - f_candidate;
    radii = std::move(candidate);
    shrunk = shrunk || merged;
    f = f_candidate;
    trace.push_back({iteration, f});
    if (improvement < opt.epsilon) {
      converged = true;
      break;
    }
  }

  // Drop radii carrying negligible mass, recomputing the indifference
  // probabilities on the survivors so the attacker stays exactly indifferent.
  for (;;) {
    const auto p = indifference_probs(radii, e);
    std::vector<double> kept;
    for (std::size_t i = 0; i < radii.size(); ++i) {
      if (p[i] >= kPruneMass) kept.push_back(radii[i]);
    }
    if (kept.empty()) kept.push_back(radii.back());
    if (kept.size() == radii.size()) break;
    radii = std::move(kept);
    shrunk = true;
  }
  const auto probs = indifference_probs(radii, e);
  std::vector<SupportPoint> support;
  double total = 0.0;
  for (double p : probs) total += p;
  for (std::size_t i = 0; i < radii.size(); ++i) support.push_back({radii[i], probs[i] / total});

  SolveReport report{MixedDefense(std::move(support)),
                     loss_any(radii, e, gamma, opt.n_poison),
                     iteration,
                     std::move(trace),
                     converged};
  report.support_shrunk = shrunk || static_cast<int>(radii.size()) < opt.n_support;
  report.degenerate = radii.size() < 2;
  return report;
}

std::string to_json(const SolveReport& report) {
  nlohmann::ordered_json doc;
  doc["radii"] = report.radii();
  doc["probs"] = report.probs();
  doc["loss"] = report.defender_loss;
  doc["iterations"] = report.iterations;
  doc["converged"] = report.converged;
  doc["support_shrunk"] = report.support_shrunk;
  doc["degenerate"] = report.degenerate;
  auto trace = nlohmann::ordered_json::array();
  for (const auto& t : report.trace) trace.push_back({t.iteration, t.loss});
  doc["trace"] = std::move(trace);
  return doc.dump(2) + "\n";
}

SolveReport solve_report_from_json(const std::string& text) {
  const auto doc = nlohmann::json::parse(text);
  const auto radii = doc.at("radii").get<std::vector<double>>();
  const auto probs = doc.at("probs").get<std::vector<double>>();
  if (radii.size() != probs.size()) {
    throw std::runtime_error("solve report: radii and probs differ in length");
  }
  std::vector<SupportPoint> support;
  for (std::size_t i = 0; i < radii.size(); ++i) support.push_back({radii[i], probs[i]});
  std::vector<TracePoint> trace;
  for (const auto& t : doc.at("trace")) {
    trace.push_back({t.at(0).get<int>(), t.at(1).get<double>()});
  }
  SolveReport report{MixedDefense(std::move(support)), doc.at("loss").get<double>(),
                     doc.at("iterations").get<int>(), std::move(trace),
                     doc.at("converged").get<bool>()};
  report.support_shrunk = doc.value("support_shrunk", false);
  report.degenerate = doc.value("degenerate", false);
  return report;
}

}  // namespace poisongame
