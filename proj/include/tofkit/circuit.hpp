#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace tofkit {

/// Raised on malformed circuit construction or parsing.
class CircuitError : public std::runtime_error {
 public:
  explicit CircuitError(const std::string& what) : std::runtime_error(what) {}
};

enum class GateKind {
  H,
  X,
  Z,
  S,
  Sdg,
  T,
  Tdg,
  CNOT,
  CZ,
  MeasureZ,
  Conditional,
};

/// Initial state of a qubit wire. `data` wires receive caller-supplied input;
/// `zero` and `plus` wires are ancillas prepared as |0> or |+>.
enum class InitState { zero, plus, data };

/// One gate in a circuit. Single-qubit gates use `a`; CNOT/CZ use (a, b) as
/// (control, target) / (pair). MeasureZ records qubit `a` into classical bit
/// `bit`. Conditional applies the gate described by (inner, a, b) when `bit`
/// reads 1; the inner gate is never itself a measurement or conditional.
struct Gate {
  GateKind kind;
  int a = -1;
  int b = -1;
  int bit = -1;
  GateKind inner = GateKind::H;

  static Gate single(GateKind k, int q) { return Gate{k, q}; }
  static Gate cnot(int control, int target) {
    return Gate{GateKind::CNOT, control, target};
  }
  static Gate cz(int q0, int q1) { return Gate{GateKind::CZ, q0, q1}; }
  static Gate measure_z(int q, int bit) {
    return Gate{GateKind::MeasureZ, q, -1, bit};
  }
  static Gate conditional(int bit, const Gate& g);

  bool operator==(const Gate&) const = default;
};

bool is_t_like(const Gate& g);

/// An immutable sequence of gates over `qubit_count` qubits and
/// `classical_count` classical bits. Classical bits are write-once and must
/// be written before any conditional reads them.
class Circuit {
 public:
  Circuit(int qubit_count, int classical_count);

  int qubit_count() const { return qubit_count_; }
  int classical_count() const { return classical_count_; }
  const std::vector<Gate>& gates() const { return gates_; }
  InitState init(int qubit) const { return init_[qubit]; }

  /// Returns a copy with `g` appended; validates operands and classical
  /// write-before-read ordering.
  Circuit appended(const Gate& g) const;

  /// Returns a copy with the tag of `qubit` replaced.
  Circuit with_init(int qubit, InitState s) const;

  /// Gate positions of all T/Tdg gates, in program order.
  std::vector<int> t_sites() const;
  int t_count() const;

  bool has_measurement() const;

  bool operator==(const Circuit&) const = default;

 private:
  int qubit_count_;
  int classical_count_;
  std::vector<Gate> gates_;
  std::vector<InitState> init_;
  std::vector<bool> written_;  // classical bits already assigned

  void check_gate(const Gate& g) const;
};

inline Circuit build(int qubit_count, int classical_count) {
  return Circuit(qubit_count, classical_count);
}
inline Circuit append(const Circuit& c, const Gate& g) { return c.appended(g); }

/// Reverses the gate list and inverts each gate (T<->Tdg, S<->Sdg, the rest
/// self-inverse). Rejects circuits containing measurements or conditionals.
Circuit inverse(const Circuit& c);

/// Text dump, one gate per line, bit-exact under parse() round-trip.
std::string serialize(const Circuit& c);
Circuit parse(const std::string& text);

std::string gate_name(GateKind k);

}  // namespace tofkit
