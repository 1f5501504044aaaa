#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tofkit/circuit.hpp"
#include "tofkit/simulate.hpp"

namespace tofkit {

inline constexpr int kTSiteCount = 8;  // T gates in the error-detecting Toffoli

enum class Pauli { Z, X };

/// A subset of T sites carrying a Pauli fault injected right after the gate.
struct ErrorPattern {
  std::map<int, Pauli> faults;

  int weight() const { return static_cast<int>(faults.size()); }
  static ErrorPattern z_mask(uint32_t mask);
};

enum class PatternClass { detected, accepted_correct, accepted_faulty };

std::string to_string(PatternClass c);

/// Inserts the pattern's Pauli gates immediately after the faulted T/Tdg
/// gates; the T-site ordinals of the result are unchanged.
Circuit inject(const Circuit& circuit, const ErrorPattern& pattern);

/// Classifies a fault pattern on the error-detecting Toffoli by exact
/// simulation over all basis data inputs plus seeded random states. Pure-Z
/// patterns must give a deterministic, input-independent syndrome.
PatternClass classify(const ErrorPattern& pattern);

/// Exact pattern counts per (weight, class) over all 2^8 Z-patterns, plus
/// polynomial evaluation in the basis p^k (1-p)^(8-k).
struct PosteriorReport {
  std::array<int64_t, kTSiteCount + 1> detected_by_weight{};
  std::array<int64_t, kTSiteCount + 1> correct_by_weight{};
  std::array<int64_t, kTSiteCount + 1> faulty_by_weight{};
  std::array<PatternClass, 1u << kTSiteCount> classes{};

  std::array<int64_t, kTSiteCount + 1> accept_by_weight() const;
  double p_accept(double p) const;
  double p_reject(double p) const;
  double p_accepted_faulty(double p) const;
  /// P(faulty | accepted).
  double posterior(double p) const;
};

PosteriorReport enumerate_all();

struct WilsonInterval {
  double low = 0.0;
  double high = 0.0;
  double width() const { return high - low; }
};

WilsonInterval wilson_interval(int64_t successes, int64_t trials,
                               double z = 1.96);

struct MonteCarloResult {
  int64_t trials = 0;
  int64_t accepted = 0;
  int64_t accepted_faulty = 0;
  double acceptance_rate = 0.0;
  double posterior_rate = 0.0;  // faulty fraction among accepted
  WilsonInterval acceptance_ci;
  WilsonInterval posterior_ci;
};

/// Samples i.i.d. Bernoulli(p) Z-faults per site and tallies classes from the
/// exhaustive table; reproducible per seed.
MonteCarloResult monte_carlo(const PosteriorReport& report, double p,
                             int64_t trials, uint64_t seed);

struct XSurveyRow {
  int site = 0;
  PatternClass cls = PatternClass::detected;
  double detection_probability = 0.0;  // may be fractional for X faults
};

/// Ground-truth classification of the 8 single-X patterns for this layout.
std::vector<XSurveyRow> x_error_survey();

}  // namespace tofkit
