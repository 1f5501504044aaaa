#include "tofkit/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace tofkit {

namespace {

constexpr double kBranchEps = 1e-14;

int bit_of(uint64_t index, int qubit, int qubit_count) {
  return static_cast<int>((index >> (qubit_count - 1 - qubit)) & 1u);
}

void apply_single(StateVector& v, int qubit, const cplx m[2][2]) {
  const uint64_t dim = v.amplitudes.size();
  const uint64_t stride = 1ull << (v.qubit_count - 1 - qubit);
  for (uint64_t base = 0; base < dim; base += 2 * stride) {
    for (uint64_t i = base; i < base + stride; ++i) {
      cplx a0 = v.amplitudes[i];
      cplx a1 = v.amplitudes[i + stride];
      v.amplitudes[i] = m[0][0] * a0 + m[0][1] * a1;
      v.amplitudes[i + stride] = m[1][0] * a0 + m[1][1] * a1;
    }
  }
}

void apply_diag(StateVector& v, int qubit, cplx phase1) {
  const uint64_t dim = v.amplitudes.size();
  for (uint64_t i = 0; i < dim; ++i) {
    if (bit_of(i, qubit, v.qubit_count)) v.amplitudes[i] *= phase1;
  }
}

void apply_cnot(StateVector& v, int control, int target) {
  const uint64_t dim = v.amplitudes.size();
  const uint64_t tmask = 1ull << (v.qubit_count - 1 - target);
  for (uint64_t i = 0; i < dim; ++i) {
    if (bit_of(i, control, v.qubit_count) && !(i & tmask)) {
      std::swap(v.amplitudes[i], v.amplitudes[i | tmask]);
    }
  }
}

void apply_cz(StateVector& v, int a, int b) {
  const uint64_t dim = v.amplitudes.size();
  for (uint64_t i = 0; i < dim; ++i) {
    if (bit_of(i, a, v.qubit_count) && bit_of(i, b, v.qubit_count)) {
      v.amplitudes[i] = -v.amplitudes[i];
    }
  }
}

void apply_unitary_gate(StateVector& v, GateKind kind, int a, int b) {
  constexpr double inv_sqrt2 = std::numbers::sqrt2 / 2.0;
  const cplx i_unit(0.0, 1.0);
  switch (kind) {
    case GateKind::H: {
      const cplx h[2][2] = {{inv_sqrt2, inv_sqrt2}, {inv_sqrt2, -inv_sqrt2}};
      apply_single(v, a, h);
      break;
    }
    case GateKind::X: {
      const cplx x[2][2] = {{0.0, 1.0}, {1.0, 0.0}};
      apply_single(v, a, x);
      break;
    }
    case GateKind::Z:
      apply_diag(v, a, -1.0);
      break;
    case GateKind::S:
      apply_diag(v, a, i_unit);
      break;
    case GateKind::Sdg:
      apply_diag(v, a, -i_unit);
      break;
    case GateKind::T:
      apply_diag(v, a, std::polar(1.0, std::numbers::pi / 4.0));
      break;
    case GateKind::Tdg:
      apply_diag(v, a, std::polar(1.0, -std::numbers::pi / 4.0));
      break;
    case GateKind::CNOT:
      apply_cnot(v, a, b);
      break;
    case GateKind::CZ:
      apply_cz(v, a, b);
      break;
    default:
      throw SimulationError("not a unitary gate");
  }
}

double prob_of_outcome(const StateVector& v, int qubit, int outcome) {
  double p = 0.0;
  for (uint64_t i = 0; i < v.amplitudes.size(); ++i) {
    if (bit_of(i, qubit, v.qubit_count) == outcome) {
      p += std::norm(v.amplitudes[i]);
    }
  }
  return p;
}

void project(StateVector& v, int qubit, int outcome, double prob) {
  const double scale = 1.0 / std::sqrt(prob);
  for (uint64_t i = 0; i < v.amplitudes.size(); ++i) {
    if (bit_of(i, qubit, v.qubit_count) == outcome) {
      v.amplitudes[i] *= scale;
    } else {
      v.amplitudes[i] = 0.0;
    }
  }
}

}  // namespace

StateVector StateVector::basis(int qubit_count, int index) {
  StateVector v;
  v.qubit_count = qubit_count;
  v.amplitudes.assign(1ull << qubit_count, 0.0);
  v.amplitudes[static_cast<size_t>(index)] = 1.0;
  return v;
}

double StateVector::norm_sq() const {
  double s = 0.0;
  for (const cplx& a : amplitudes) s += std::norm(a);
  return s;
}

DenseUnitary DenseUnitary::identity(int dim) {
  DenseUnitary u;
  u.dim = dim;
  u.entries.assign(static_cast<size_t>(dim) * dim, 0.0);
  for (int i = 0; i < dim; ++i) u.at(i, i) = 1.0;
  return u;
}

DenseUnitary DenseUnitary::adjoint() const {
  DenseUnitary out;
  out.dim = dim;
  out.entries.assign(entries.size(), 0.0);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) out.at(r, c) = std::conj(at(c, r));
  }
  return out;
}

bool DenseUnitary::is_unitary(double tol) const {
  DenseUnitary prod = multiply(adjoint(), *this);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      cplx want = (r == c) ? 1.0 : 0.0;
      if (std::abs(prod.at(r, c) - want) > tol) return false;
    }
  }
  return true;
}

DenseUnitary multiply(const DenseUnitary& lhs, const DenseUnitary& rhs) {
  if (lhs.dim != rhs.dim) throw SimulationError("dimension mismatch");
  DenseUnitary out;
  out.dim = lhs.dim;
  out.entries.assign(lhs.entries.size(), 0.0);
  for (int r = 0; r < lhs.dim; ++r) {
    for (int k = 0; k < lhs.dim; ++k) {
      cplx l = lhs.at(r, k);
      if (l == cplx{}) continue;
      for (int c = 0; c < lhs.dim; ++c) out.at(r, c) += l * rhs.at(k, c);
    }
  }
  return out;
}

StateVector apply(const DenseUnitary& u, const StateVector& v) {
  if (u.dim != static_cast<int>(v.amplitudes.size())) {
    throw SimulationError("dimension mismatch");
  }
  StateVector out;
  out.qubit_count = v.qubit_count;
  out.amplitudes.assign(v.amplitudes.size(), 0.0);
  for (int r = 0; r < u.dim; ++r) {
    for (int c = 0; c < u.dim; ++c) {
      out.amplitudes[static_cast<size_t>(r)] += u.at(r, c) * v.amplitudes[static_cast<size_t>(c)];
    }
  }
  return out;
}

DenseUnitary kron(const DenseUnitary& lhs, const DenseUnitary& rhs) {
  DenseUnitary out;
  out.dim = lhs.dim * rhs.dim;
  out.entries.assign(static_cast<size_t>(out.dim) * out.dim, 0.0);
  for (int r1 = 0; r1 < lhs.dim; ++r1) {
    for (int c1 = 0; c1 < lhs.dim; ++c1) {
      for (int r2 = 0; r2 < rhs.dim; ++r2) {
        for (int c2 = 0; c2 < rhs.dim; ++c2) {
          out.at(r1 * rhs.dim + r2, c1 * rhs.dim + c2) =
              lhs.at(r1, c1) * rhs.at(r2, c2);
        }
      }
    }
  }
  return out;
}

double phase_insensitive_distance(const DenseUnitary& u, const DenseUnitary& v) {
  if (u.dim != v.dim) throw SimulationError("dimension mismatch");
  cplx tr = 0.0;
  for (int r = 0; r < u.dim; ++r) {
    for (int c = 0; c < u.dim; ++c) tr += std::conj(u.at(c, r)) * v.at(c, r);
  }
  return 1.0 - std::abs(tr) / u.dim;
}

std::vector<Branch> run(const Circuit& circuit, const StateVector& input,
                        const OutcomePolicy& policy) {
  if (circuit.qubit_count() > kMaxQubits) {
    throw SimulationError("circuit exceeds the dense-simulation qubit cap");
  }
  if (input.qubit_count != circuit.qubit_count() ||
      input.amplitudes.size() != (1ull << circuit.qubit_count())) {
    throw SimulationError("input state dimension does not match circuit");
  }

  const auto* fixed = std::get_if<FixedOutcomes>(&policy);
  const auto* sample = std::get_if<SampleOutcome>(&policy);
  std::mt19937_64 rng(sample ? sample->seed : 0);

  std::vector<Branch> branches;
  branches.push_back(Branch{{}, 1.0, input});

  for (const Gate& g : circuit.gates()) {
    switch (g.kind) {
      case GateKind::MeasureZ: {
        std::vector<Branch> next;
        for (Branch& br : branches) {
          double p1 = prob_of_outcome(br.state, g.a, 1);
          double p0 = 1.0 - p1;
          auto emit = [&](int outcome, double p) {
            Branch child;
            child.outcomes = br.outcomes;
            child.outcomes[g.bit] = outcome;
            child.probability = br.probability * p;
            child.state = br.state;
            project(child.state, g.a, outcome, p);
            next.push_back(std::move(child));
          };
          if (fixed) {
            auto it = fixed->bits.find(g.bit);
            if (it == fixed->bits.end()) {
              throw SimulationError("fixed outcome for c" +
                                    std::to_string(g.bit) + " not supplied");
            }
            double p = it->second ? p1 : p0;
            if (p < kBranchEps) {
              Branch dead;
              dead.outcomes = br.outcomes;
              dead.outcomes[g.bit] = it->second;
              dead.probability = 0.0;
              dead.state = br.state;
              for (auto& amp : dead.state.amplitudes) amp = 0.0;
              next.push_back(std::move(dead));
            } else {
              emit(it->second, p);
            }
          } else if (sample) {
            double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
            int outcome = (u < p1) ? 1 : 0;
            emit(outcome, outcome ? p1 : p0);
          } else {
            if (p0 > kBranchEps) emit(0, p0);
            if (p1 > kBranchEps) emit(1, p1);
          }
        }
        branches = std::move(next);
        break;
      }
      case GateKind::Conditional: {
        for (Branch& br : branches) {
          auto it = br.outcomes.find(g.bit);
          if (it == br.outcomes.end()) {
            throw SimulationError("conditional reads unmeasured bit");
          }
          if (it->second == 1 && br.probability > 0.0) {
            apply_unitary_gate(br.state, g.inner, g.a, g.b);
          }
        }
        break;
      }
      default:
        for (Branch& br : branches) {
          if (br.probability > 0.0) apply_unitary_gate(br.state, g.kind, g.a, g.b);
        }
    }
  }
  return branches;
}

namespace {

/// Generic product-state assembly: joint states on explicit qubit groups,
/// init tags on the rest.
StateVector compose_input(const Circuit& circuit,
                          const std::vector<std::pair<std::vector<int>,
                                                      const StateVector*>>& groups) {
  const int n = circuit.qubit_count();
  std::vector<int> owner(static_cast<size_t>(n), -1);
  for (size_t gi = 0; gi < groups.size(); ++gi) {
    for (int q : groups[gi].first) {
      if (q < 0 || q >= n) throw SimulationError("qubit index out of range");
      if (owner[static_cast<size_t>(q)] != -1) {
        throw SimulationError("qubit assigned to two input groups");
      }
      owner[static_cast<size_t>(q)] = static_cast<int>(gi);
    }
    const auto& [qubits, state] = groups[gi];
    if (state->amplitudes.size() != (1ull << qubits.size())) {
      throw SimulationError("group state dimension mismatch");
    }
  }

  constexpr double inv_sqrt2 = std::numbers::sqrt2 / 2.0;
  StateVector out;
  out.qubit_count = n;
  out.amplitudes.assign(1ull << n, 0.0);
  for (uint64_t i = 0; i < out.amplitudes.size(); ++i) {
    cplx amp = 1.0;
    for (int q = 0; q < n && amp != cplx{}; ++q) {
      if (owner[static_cast<size_t>(q)] != -1) continue;
      int b = bit_of(i, q, n);
      switch (circuit.init(q)) {
        case InitState::zero:
          if (b) amp = 0.0;
          break;
        case InitState::plus:
          amp *= inv_sqrt2;
          break;
        case InitState::data:
          throw SimulationError(
              "data-tagged qubit q" + std::to_string(q) +
              " has no supplied input state");
      }
    }
    for (const auto& [qubits, state] : groups) {
      if (amp == cplx{}) break;
      uint64_t sub = 0;
      for (int q : qubits) sub = (sub << 1) | static_cast<uint64_t>(bit_of(i, q, n));
      amp *= state->amplitudes[sub];
    }
    out.amplitudes[i] = amp;
  }
  return out;
}

}  // namespace

StateVector initial_state(const Circuit& circuit, const StateVector& data_state,
                          const std::vector<int>& data_qubits) {
  return compose_input(circuit, {{data_qubits, &data_state}});
}

StateVector initial_state(const Circuit& circuit, const StateVector& data_state,
                          const std::vector<int>& data_qubits,
                          const StateVector& ancilla_state,
                          const std::vector<int>& ancilla_qubits) {
  return compose_input(
      circuit, {{data_qubits, &data_state}, {ancilla_qubits, &ancilla_state}});
}

DenseUnitary extract_unitary(const Circuit& circuit) {
  if (circuit.has_measurement()) {
    throw SimulationError("circuit with measurements has no unitary");
  }
  const int n = circuit.qubit_count();
  const int dim = 1 << n;
  DenseUnitary u;
  u.dim = dim;
  u.entries.assign(static_cast<size_t>(dim) * dim, 0.0);
  for (int col = 0; col < dim; ++col) {
    auto branches = run(circuit, StateVector::basis(n, col));
    const StateVector& out = branches.front().state;
    for (int row = 0; row < dim; ++row) {
      u.at(row, col) = out.amplitudes[static_cast<size_t>(row)];
    }
  }
  return u;
}

StateVector random_state(int qubit_count, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  StateVector v;
  v.qubit_count = qubit_count;
  v.amplitudes.resize(1ull << qubit_count);
  for (auto& a : v.amplitudes) a = cplx(gauss(rng), gauss(rng));
  double scale = 1.0 / std::sqrt(v.norm_sq());
  for (auto& a : v.amplitudes) a *= scale;
  return v;
}

double data_residual(const StateVector& state,
                     const std::vector<int>& data_qubits,
                     const StateVector& expected_data) {
  const int n = state.qubit_count;
  std::vector<bool> is_data(static_cast<size_t>(n), false);
  for (int q : data_qubits) is_data[static_cast<size_t>(q)] = true;
  std::vector<int> anc_qubits;
  for (int q = 0; q < n; ++q) {
    if (!is_data[static_cast<size_t>(q)]) anc_qubits.push_back(q);
  }
  const uint64_t ddim = 1ull << data_qubits.size();
  const uint64_t adim = 1ull << anc_qubits.size();

  std::vector<cplx> m(ddim * adim, 0.0);
  for (uint64_t i = 0; i < state.amplitudes.size(); ++i) {
    uint64_t d = 0, a = 0;
    for (int q : data_qubits) d = (d << 1) | static_cast<uint64_t>(bit_of(i, q, n));
    for (int q : anc_qubits) a = (a << 1) | static_cast<uint64_t>(bit_of(i, q, n));
    m[d * adim + a] = state.amplitudes[i];
  }

  // chi = <expected|M>; residual = M - expected * chi^T
  std::vector<cplx> chi(adim, 0.0);
  for (uint64_t d = 0; d < ddim; ++d) {
    cplx e = std::conj(expected_data.amplitudes[d]);
    for (uint64_t a = 0; a < adim; ++a) chi[a] += e * m[d * adim + a];
  }
  double resid = 0.0;
  for (uint64_t d = 0; d < ddim; ++d) {
    for (uint64_t a = 0; a < adim; ++a) {
      resid += std::norm(m[d * adim + a] -
                         expected_data.amplitudes[d] * chi[a]);
    }
  }
  return std::sqrt(resid);
}

GadgetCheckResult gadget_implements(const Circuit& circuit,
                                    const DenseUnitary& target,
                                    const std::vector<int>& data_qubits,
                                    double tol, const GadgetOptions& opts) {
  const uint64_t ddim = 1ull << data_qubits.size();
  if (target.dim != static_cast<int>(ddim)) {
    throw SimulationError("target dimension does not match data qubits");
  }

  std::vector<StateVector> inputs;
  for (uint64_t i = 0; i < ddim; ++i) {
    inputs.push_back(StateVector::basis(static_cast<int>(data_qubits.size()),
                                        static_cast<int>(i)));
  }
  for (int r = 0; r < opts.random_states; ++r) {
    inputs.push_back(random_state(static_cast<int>(data_qubits.size()),
                                  opts.seed + static_cast<uint64_t>(r)));
  }

  for (size_t idx = 0; idx < inputs.size(); ++idx) {
    const StateVector& in = inputs[idx];
    StateVector full =
        opts.ancilla_state
            ? compose_input(circuit, {{data_qubits, &in},
                                      {opts.ancilla_qubits, &*opts.ancilla_state}})
            : initial_state(circuit, in, data_qubits);
    StateVector expected = apply(target, in);

    auto branches = run(circuit, full);
    double total = 0.0;
    for (const Branch& br : branches) {
      total += br.probability;
      if (br.probability < 1e-12) continue;
      double resid = data_residual(br.state, data_qubits, expected);
      if (resid > tol) {
        std::ostringstream msg;
        msg << "input " << idx << " (first " << ddim
            << " are basis states), branch {";
        for (auto [bit, val] : br.outcomes) msg << " c" << bit << "=" << val;
        msg << " } p=" << br.probability << ": residual " << resid
            << " exceeds tol " << tol;
        return GadgetCheckResult{false, msg.str()};
      }
    }
    if (std::abs(total - 1.0) > 1e-10) {
      std::ostringstream msg;
      msg << "input " << idx << ": branch probabilities sum to " << total;
      return GadgetCheckResult{false, msg.str()};
    }
  }
  return GadgetCheckResult{};
}

}  // namespace tofkit
