#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tofkit {

class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

/// One distillation round: n_in raw-equivalent inputs yield n_out outputs
/// with error c * p_in^k, succeeding with probability (1 - p_in)^n_in.
struct DistillationProtocol {
  std::string name;
  int n_in = 0;
  int n_out = 1;
  double error_coeff = 0.0;
  int error_power = 2;

  double output_error(double p_in) const;
  double success_prob(double p_in) const;
  void validate() const;
};

DistillationProtocol bravyi_kitaev();     // 15 -> 1, 35 p^3
DistillationProtocol meier_eastin_knill();  // 10 -> 2, 8 p^2
std::vector<DistillationProtocol> default_protocol_menu();

struct RoundTrace {
  std::string protocol;
  double p_in = 0.0;
  double p_out = 0.0;
  double success_prob = 0.0;
  double cost_after = 0.0;  // raw states per surviving output so far
};

struct PipelineResult {
  double raw_states_per_output = 1.0;
  double p_out = 0.0;
  std::vector<RoundTrace> trace;
};

/// Cost recurrence: C_i = C_{i-1} * (n_in/n_out) / P_s(p_{i-1}),
/// p_i = c * p_{i-1}^k. Throws if a round fails to reduce the error.
PipelineResult pipeline_cost(const std::vector<DistillationProtocol>& rounds,
                             double p_raw);

enum class SchemeKind { seven_t, four_t, error_detecting };

std::string to_string(SchemeKind k);

/// A Toffoli production scheme: how many distilled T states one Toffoli
/// consumes and how a per-T error p_T turns into a Toffoli error.
struct ToffoliScheme {
  SchemeKind kind = SchemeKind::four_t;
  int t_gates_needed = 4;
  std::function<double(double)> toffoli_error;
  /// Retry overhead from discarding on a detected error (1 for the
  /// non-detecting schemes).
  std::function<double(double)> retry_factor;
};

ToffoliScheme seven_t_scheme();
ToffoliScheme four_t_scheme();
/// `posterior` and `reject` come from the exhaustive error analysis so the
/// scheme error is the exact polynomial, not its leading term.
ToffoliScheme error_detecting_scheme(std::function<double(double)> posterior,
                                     std::function<double(double)> reject);

/// t_gates_needed * raw_states_per_output * retry_factor(p_out).
double scheme_cost(const ToffoliScheme& scheme, const PipelineResult& pipeline);

/// Cheapest protocol sequence (up to max_rounds) with p_out <= target_p_T.
std::optional<PipelineResult> min_rounds(
    double p_raw, double target_p_T,
    const std::vector<DistillationProtocol>& menu, int max_rounds = 6);

/// Cheapest menu-ordered hybrid (rounds consume the menu left to right, so
/// the strongest protocol runs first) whose distilled-T error keeps the
/// scheme's Toffoli error at or below `target`.
std::optional<PipelineResult> min_pipeline_for_scheme(
    const ToffoliScheme& scheme, double p_raw, double target,
    const std::vector<DistillationProtocol>& menu, int max_rounds = 6);

struct SchemeResult {
  SchemeKind kind;
  PipelineResult pipeline;
  double p_t_final = 0.0;
  double toffoli_error = 0.0;
  double raw_states_total = 0.0;
};

struct SchemeReport {
  std::vector<SchemeResult> schemes;
  /// cost(four_t) / cost(error_detecting), when both are present.
  double savings_factor = 0.0;
  /// cost(seven_t) / cost(four_t), when both are present.
  double seven_over_four = 0.0;

  const SchemeResult& scheme(SchemeKind k) const;
  double aggregate_failure(SchemeKind k, double n_toffolis) const;
};

SchemeReport compare(const std::vector<ToffoliScheme>& schemes, double p_raw,
                     double target_toffoli_error,
                     const std::vector<DistillationProtocol>& menu);

}  // namespace tofkit
