#include "tofkit/resources.hpp"

#include <algorithm>
#include <cmath>

namespace tofkit {

double DistillationProtocol::output_error(double p_in) const {
  return error_coeff * std::pow(p_in, error_power);
}

double DistillationProtocol::success_prob(double p_in) const {
  return std::pow(1.0 - p_in, n_in);
}

void DistillationProtocol::validate() const {
  if (n_in <= n_out || n_out < 1) {
    throw ResourceError(name + ": requires n_in > n_out >= 1");
  }
  if (error_coeff <= 0.0) throw ResourceError(name + ": error_coeff must be positive");
  if (error_power < 2) throw ResourceError(name + ": error_power must be >= 2");
}

DistillationProtocol bravyi_kitaev() { return {"BK", 15, 1, 35.0, 3}; }

DistillationProtocol meier_eastin_knill() { return {"MEK", 10, 2, 8.0, 2}; }

std::vector<DistillationProtocol> default_protocol_menu() {
  return {bravyi_kitaev(), meier_eastin_knill()};
}

PipelineResult pipeline_cost(const std::vector<DistillationProtocol>& rounds,
                             double p_raw) {
  if (p_raw <= 0.0 || p_raw >= 1.0) {
    throw ResourceError("p_raw must lie strictly between 0 and 1");
  }
  PipelineResult out;
  out.p_out = p_raw;
  for (const DistillationProtocol& proto : rounds) {
    proto.validate();
    double p_in = out.p_out;
    double p_next = proto.output_error(p_in);
    if (p_next >= p_in) {
      throw ResourceError("pipeline not contractive: " + proto.name +
                          " raises error from " + std::to_string(p_in));
    }
    double success = proto.success_prob(p_in);
    out.raw_states_per_output *=
        (static_cast<double>(proto.n_in) / proto.n_out) / success;
    out.p_out = p_next;
    out.trace.push_back(
        {proto.name, p_in, p_next, success, out.raw_states_per_output});
  }
  return out;
}

std::string to_string(SchemeKind k) {
  switch (k) {
    case SchemeKind::seven_t:
      return "seven_t";
    case SchemeKind::four_t:
      return "four_t";
    case SchemeKind::error_detecting:
      return "error_detecting";
  }
  return "?";
}

namespace {

std::function<double(double)> unity_retry() {
  return [](double) { return 1.0; };
}

}  // namespace

ToffoliScheme seven_t_scheme() {
  return {SchemeKind::seven_t, 7, [](double p) { return 7.0 * p; },
          unity_retry()};
}

ToffoliScheme four_t_scheme() {
  return {SchemeKind::four_t, 4, [](double p) { return 4.0 * p; },
          unity_retry()};
}

ToffoliScheme error_detecting_scheme(std::function<double(double)> posterior,
                                     std::function<double(double)> reject) {
  ToffoliScheme s;
  s.kind = SchemeKind::error_detecting;
  s.t_gates_needed = 8;
  s.toffoli_error = std::move(posterior);
  s.retry_factor = [reject = std::move(reject)](double p) {
    return 1.0 / (1.0 - reject(p));
  };
  return s;
}

double scheme_cost(const ToffoliScheme& scheme, const PipelineResult& pipeline) {
  return scheme.t_gates_needed * pipeline.raw_states_per_output *
         scheme.retry_factor(pipeline.p_out);
}

namespace {

/// Visits protocol sequences of length <= max_rounds, depth first. With
/// menu_ordered set, only hybrids that consume the menu left to right are
/// visited (BK rounds before MEK rounds with the default menu).
template <typename Visit>
void for_each_pipeline(const std::vector<DistillationProtocol>& menu,
                       double p_raw, int max_rounds, bool menu_ordered,
                       const Visit& visit) {
  std::vector<DistillationProtocol> current;
  auto recurse = [&](auto&& self, size_t min_index) -> void {
    PipelineResult result;
    try {
      result = pipeline_cost(current, p_raw);
    } catch (const ResourceError&) {
      return;  // non-contractive prefix; deeper stacks only get worse
    }
    visit(result);
    if (static_cast<int>(current.size()) >= max_rounds) return;
    for (size_t i = menu_ordered ? min_index : 0; i < menu.size(); ++i) {
      current.push_back(menu[i]);
      self(self, i);
      current.pop_back();
    }
  };
  recurse(recurse, 0);
}

}  // namespace

std::optional<PipelineResult> min_rounds(
    double p_raw, double target_p_T,
    const std::vector<DistillationProtocol>& menu, int max_rounds) {
  std::optional<PipelineResult> best;
  for_each_pipeline(menu, p_raw, max_rounds, false, [&](const PipelineResult& r) {
    if (r.p_out > target_p_T) return;
    if (!best || r.raw_states_per_output < best->raw_states_per_output) {
      best = r;
    }
  });
  return best;
}

std::optional<PipelineResult> min_pipeline_for_scheme(
    const ToffoliScheme& scheme, double p_raw, double target,
    const std::vector<DistillationProtocol>& menu, int max_rounds) {
  std::optional<PipelineResult> best;
  for_each_pipeline(menu, p_raw, max_rounds, true, [&](const PipelineResult& r) {
    if (scheme.toffoli_error(r.p_out) > target) return;
    double cost = scheme_cost(scheme, r);
    if (!best || cost < scheme_cost(scheme, *best)) best = r;
  });
  return best;
}

const SchemeResult& SchemeReport::scheme(SchemeKind k) const {
  for (const SchemeResult& s : schemes) {
    if (s.kind == k) return s;
  }
  throw ResourceError("scheme " + to_string(k) + " not present in report");
}

double SchemeReport::aggregate_failure(SchemeKind k, double n_toffolis) const {
  double err = scheme(k).toffoli_error;
  return 1.0 - std::pow(1.0 - err, n_toffolis);
}

SchemeReport compare(const std::vector<ToffoliScheme>& schemes, double p_raw,
                     double target_toffoli_error,
                     const std::vector<DistillationProtocol>& menu) {
  SchemeReport report;
  for (const ToffoliScheme& scheme : schemes) {
    auto pipeline =
        min_pipeline_for_scheme(scheme, p_raw, target_toffoli_error, menu);
    if (!pipeline) {
      throw ResourceError("target Toffoli error unreachable for scheme " +
                          to_string(scheme.kind));
    }
    SchemeResult result;
    result.kind = scheme.kind;
    result.pipeline = *pipeline;
    result.p_t_final = pipeline->p_out;
    result.toffoli_error = scheme.toffoli_error(pipeline->p_out);
    result.raw_states_total = scheme_cost(scheme, *pipeline);
    report.schemes.push_back(std::move(result));
  }

  auto maybe_cost = [&](SchemeKind k) -> std::optional<double> {
    for (const SchemeResult& s : report.schemes) {
      if (s.kind == k) return s.raw_states_total;
    }
    return std::nullopt;
  };
  auto four = maybe_cost(SchemeKind::four_t);
  auto detect = maybe_cost(SchemeKind::error_detecting);
  auto seven = maybe_cost(SchemeKind::seven_t);
  if (four && detect) report.savings_factor = *four / *detect;
  if (seven && four) report.seven_over_four = *seven / *four;
  return report;
}

}  // namespace tofkit
