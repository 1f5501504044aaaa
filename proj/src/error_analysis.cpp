#include "tofkit/error_analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

#include "tofkit/constructions.hpp"

namespace tofkit {

namespace {

constexpr uint64_t kClassifySeed = kDefaultSeed ^ 0x5a5a5a5aull;
constexpr int kRandomInputs = 4;
constexpr double kClassifyTol = 1e-8;

const std::vector<int> kDataQubits = {0, 1, 2};

std::vector<StateVector> classification_inputs() {
  std::vector<StateVector> inputs;
  for (int i = 0; i < 8; ++i) inputs.push_back(StateVector::basis(3, i));
  for (int r = 0; r < kRandomInputs; ++r) {
    inputs.push_back(random_state(3, kClassifySeed + static_cast<uint64_t>(r)));
  }
  return inputs;
}

}  // namespace

ErrorPattern ErrorPattern::z_mask(uint32_t mask) {
  ErrorPattern p;
  for (int s = 0; s < kTSiteCount; ++s) {
    if (mask & (1u << s)) p.faults[s] = Pauli::Z;
  }
  return p;
}

std::string to_string(PatternClass c) {
  switch (c) {
    case PatternClass::detected:
      return "detected";
    case PatternClass::accepted_correct:
      return "accepted_correct";
    case PatternClass::accepted_faulty:
      return "accepted_faulty";
  }
  return "?";
}

Circuit inject(const Circuit& circuit, const ErrorPattern& pattern) {
  auto sites = circuit.t_sites();
  for (const auto& [ordinal, pauli] : pattern.faults) {
    if (ordinal < 0 || ordinal >= static_cast<int>(sites.size())) {
      throw CircuitError("fault site " + std::to_string(ordinal) +
                         " out of range; circuit has " +
                         std::to_string(sites.size()) + " T sites");
    }
  }
  Circuit out(circuit.qubit_count(), circuit.classical_count());
  for (int q = 0; q < circuit.qubit_count(); ++q) {
    out = out.with_init(q, circuit.init(q));
  }
  int ordinal = 0;
  for (const Gate& g : circuit.gates()) {
    out = out.appended(g);
    if (is_t_like(g)) {
      auto it = pattern.faults.find(ordinal);
      if (it != pattern.faults.end()) {
        GateKind k = it->second == Pauli::Z ? GateKind::Z : GateKind::X;
        out = out.appended(Gate::single(k, g.a));
      }
      ++ordinal;
    }
  }
  return out;
}

namespace {

struct ClassifyDetail {
  PatternClass cls;
  double detection_probability;
};

ClassifyDetail classify_detail(const ErrorPattern& pattern) {
  const bool pure_z = std::all_of(
      pattern.faults.begin(), pattern.faults.end(),
      [](const auto& kv) { return kv.second == Pauli::Z; });

  Circuit circuit = inject(build_error_detecting_toffoli(), pattern);
  DenseUnitary target = reference_toffoli();

  double detect_sum = 0.0;
  int input_count = 0;
  bool all_detected = true;
  bool all_correct = true;

  for (const StateVector& in : classification_inputs()) {
    StateVector full = initial_state(circuit, in, kDataQubits);
    StateVector expected = apply(target, in);
    auto branches = run(circuit, full);

    if (pure_z && branches.size() != 1) {
      throw SimulationError(
          "internal invariant violated: non-deterministic syndrome for a "
          "pure-Z fault pattern");
    }

    double p_detect = 0.0;
    for (const Branch& br : branches) {
      if (br.outcomes.at(0) == 1) {
        p_detect += br.probability;
      } else if (data_residual(br.state, kDataQubits, expected) > kClassifyTol) {
        all_correct = false;
      }
    }
    detect_sum += p_detect;
    ++input_count;
    if (p_detect < 1.0 - 1e-9) all_detected = false;
  }

  ClassifyDetail out;
  out.detection_probability = detect_sum / input_count;
  if (all_detected) {
    out.cls = PatternClass::detected;
  } else {
    out.cls = all_correct ? PatternClass::accepted_correct
                          : PatternClass::accepted_faulty;
  }
  return out;
}

}  // namespace

PatternClass classify(const ErrorPattern& pattern) {
  return classify_detail(pattern).cls;
}

std::array<int64_t, kTSiteCount + 1> PosteriorReport::accept_by_weight() const {
  std::array<int64_t, kTSiteCount + 1> out{};
  for (int w = 0; w <= kTSiteCount; ++w) {
    out[w] = correct_by_weight[w] + faulty_by_weight[w];
  }
  return out;
}

namespace {

double eval_weight_poly(const std::array<int64_t, kTSiteCount + 1>& counts,
                        double p) {
  double total = 0.0;
  for (int w = 0; w <= kTSiteCount; ++w) {
    if (counts[w] == 0) continue;
    total += static_cast<double>(counts[w]) * std::pow(p, w) *
             std::pow(1.0 - p, kTSiteCount - w);
  }
  return total;
}

}  // namespace

double PosteriorReport::p_accept(double p) const {
  return eval_weight_poly(accept_by_weight(), p);
}

double PosteriorReport::p_reject(double p) const {
  return eval_weight_poly(detected_by_weight, p);
}

double PosteriorReport::p_accepted_faulty(double p) const {
  return eval_weight_poly(faulty_by_weight, p);
}

double PosteriorReport::posterior(double p) const {
  return p_accepted_faulty(p) / p_accept(p);
}

PosteriorReport enumerate_all() {
  PosteriorReport report;
  for (uint32_t mask = 0; mask < (1u << kTSiteCount); ++mask) {
    ErrorPattern pattern = ErrorPattern::z_mask(mask);
    PatternClass cls = classify(pattern);
    report.classes[mask] = cls;
    int w = std::popcount(mask);
    switch (cls) {
      case PatternClass::detected:
        ++report.detected_by_weight[w];
        break;
      case PatternClass::accepted_correct:
        ++report.correct_by_weight[w];
        break;
      case PatternClass::accepted_faulty:
        ++report.faulty_by_weight[w];
        break;
    }
  }
  return report;
}

WilsonInterval wilson_interval(int64_t successes, int64_t trials, double z) {
  if (trials <= 0) return {};
  double n = static_cast<double>(trials);
  double phat = static_cast<double>(successes) / n;
  double z2 = z * z;
  double denom = 1.0 + z2 / n;
  double center = (phat + z2 / (2.0 * n)) / denom;
  double half =
      z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  return {center - half, center + half};
}

MonteCarloResult monte_carlo(const PosteriorReport& report, double p,
                             int64_t trials, uint64_t seed) {
  if (p < 0.0 || p > 1.0) throw SimulationError("p must lie in [0, 1]");
  if (trials < 1) throw SimulationError("trials must be positive");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution fault(p);

  MonteCarloResult out;
  out.trials = trials;
  for (int64_t t = 0; t < trials; ++t) {
    uint32_t mask = 0;
    for (int s = 0; s < kTSiteCount; ++s) {
      if (fault(rng)) mask |= 1u << s;
    }
    switch (report.classes[mask]) {
      case PatternClass::detected:
        break;
      case PatternClass::accepted_correct:
        ++out.accepted;
        break;
      case PatternClass::accepted_faulty:
        ++out.accepted;
        ++out.accepted_faulty;
        break;
    }
  }
  out.acceptance_rate = static_cast<double>(out.accepted) / trials;
  out.posterior_rate =
      out.accepted ? static_cast<double>(out.accepted_faulty) / out.accepted
                   : 0.0;
  out.acceptance_ci = wilson_interval(out.accepted, out.trials);
  out.posterior_ci = wilson_interval(out.accepted_faulty, out.accepted);
  return out;
}

std::vector<XSurveyRow> x_error_survey() {
  std::vector<XSurveyRow> rows;
  for (int s = 0; s < kTSiteCount; ++s) {
    ErrorPattern pattern;
    pattern.faults[s] = Pauli::X;
    ClassifyDetail detail = classify_detail(pattern);
    rows.push_back({s, detail.cls, detail.detection_probability});
  }
  return rows;
}

}  // namespace tofkit
