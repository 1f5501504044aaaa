#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tofkit/circuit.hpp"

namespace tofkit {

using cplx = std::complex<double>;

inline constexpr int kMaxQubits = 16;
inline constexpr double kNormTol = 1e-12;
inline constexpr double kOperatorTol = 1e-10;
inline constexpr uint64_t kDefaultSeed = 0x746f666b6974ull;  // fixed default

class SimulationError : public std::runtime_error {
 public:
  explicit SimulationError(const std::string& what)
      : std::runtime_error(what) {}
};

/// Dense amplitude vector over `qubit_count` qubits. Qubit 0 is the most
/// significant bit of the basis index, so |x,y,z> sits at index 4x+2y+z.
struct StateVector {
  int qubit_count = 0;
  std::vector<cplx> amplitudes;

  static StateVector basis(int qubit_count, int index);
  double norm_sq() const;
};

/// Column-major-free dense matrix; entries(row, col) via at().
struct DenseUnitary {
  int dim = 0;
  std::vector<cplx> entries;

  static DenseUnitary identity(int dim);
  cplx& at(int row, int col) { return entries[static_cast<size_t>(row) * dim + col]; }
  const cplx& at(int row, int col) const {
    return entries[static_cast<size_t>(row) * dim + col];
  }
  DenseUnitary adjoint() const;
  bool is_unitary(double tol = kOperatorTol) const;
};

DenseUnitary multiply(const DenseUnitary& lhs, const DenseUnitary& rhs);
StateVector apply(const DenseUnitary& u, const StateVector& v);

/// Kronecker product; `lhs` supplies the high-order qubits.
DenseUnitary kron(const DenseUnitary& lhs, const DenseUnitary& rhs);

/// 1 - |tr(U^dag V)| / dim; zero exactly when U and V agree up to global phase.
double phase_insensitive_distance(const DenseUnitary& u, const DenseUnitary& v);

/// One measurement outcome assignment with its probability and the
/// (normalized) post-measurement state, conditionals already applied.
struct Branch {
  std::map<int, int> outcomes;
  double probability = 0.0;
  StateVector state;
};

struct EnumerateAll {};
struct FixedOutcomes {
  std::map<int, int> bits;
};
struct SampleOutcome {
  uint64_t seed = kDefaultSeed;
};
using OutcomePolicy = std::variant<EnumerateAll, FixedOutcomes, SampleOutcome>;

/// Runs `circuit` on `input`. Under EnumerateAll every nonzero-probability
/// branch is returned; FixedOutcomes forces each measurement (and reports the
/// branch probability of that path); SampleOutcome draws one branch.
std::vector<Branch> run(const Circuit& circuit, const StateVector& input,
                        const OutcomePolicy& policy = EnumerateAll{});

/// Product input built from the circuit's init tags; `data_state` fills the
/// `data_qubits` wires (in the given order, wire 0 most significant).
StateVector initial_state(const Circuit& circuit, const StateVector& data_state,
                          const std::vector<int>& data_qubits);

/// As above, with a second (possibly entangled) joint state on more wires.
StateVector initial_state(const Circuit& circuit, const StateVector& data_state,
                          const std::vector<int>& data_qubits,
                          const StateVector& ancilla_state,
                          const std::vector<int>& ancilla_qubits);

/// Unitary of a measurement-free circuit, one simulated basis column at a time.
DenseUnitary extract_unitary(const Circuit& circuit);

struct GadgetOptions {
  int random_states = 8;
  uint64_t seed = kDefaultSeed;
  /// Overrides the init-tag ancilla preparation: the listed qubits start in
  /// this (possibly entangled) joint state instead.
  std::optional<StateVector> ancilla_state;
  std::vector<int> ancilla_qubits;
};

struct GadgetCheckResult {
  bool pass = true;
  std::string diagnostics;

  explicit operator bool() const { return pass; }
};

/// Checks that the circuit enacts `target` on `data_qubits` for every
/// computational-basis input and `random_states` seeded random inputs, on
/// every nonzero measurement branch, with the non-data qubits left
/// disentangled. Equality is up to a per-branch global phase.
GadgetCheckResult gadget_implements(const Circuit& circuit,
                                    const DenseUnitary& target,
                                    const std::vector<int>& data_qubits,
                                    double tol = kOperatorTol,
                                    const GadgetOptions& opts = {});

/// Random normalized state with Gaussian components, reproducible per seed.
StateVector random_state(int qubit_count, uint64_t seed);

/// Norm of the residual of `state` against (expected_data on data_qubits)
/// tensor (anything on the remaining qubits); zero iff the data wires carry
/// exactly expected_data up to global phase with the rest disentangled.
double data_residual(const StateVector& state,
                     const std::vector<int>& data_qubits,
                     const StateVector& expected_data);

}  // namespace tofkit
