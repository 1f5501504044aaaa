#include "tofkit/constructions.hpp"

#include <cmath>

namespace tofkit {

namespace {

const cplx kI{0.0, 1.0};

// Gate sequence of the 4-T almost-Toffoli: phase polynomial on the target
// wire between two H gates.
std::vector<Gate> toffoli_star_gates(int x, int y, int t) {
  return {
      Gate::single(GateKind::H, t),   Gate::cnot(x, t),
      Gate::single(GateKind::Tdg, t), Gate::cnot(y, t),
      Gate::single(GateKind::T, t),   Gate::cnot(x, t),
      Gate::single(GateKind::Tdg, t), Gate::cnot(y, t),
      Gate::single(GateKind::T, t),   Gate::single(GateKind::H, t),
  };
}

GateKind invert_kind(GateKind k) {
  switch (k) {
    case GateKind::T:
      return GateKind::Tdg;
    case GateKind::Tdg:
      return GateKind::T;
    case GateKind::S:
      return GateKind::Sdg;
    case GateKind::Sdg:
      return GateKind::S;
    default:
      return k;
  }
}

}  // namespace

DenseUnitary reference_toffoli() {
  DenseUnitary u = DenseUnitary::identity(8);
  u.at(6, 6) = 0.0;
  u.at(7, 7) = 0.0;
  u.at(7, 6) = 1.0;
  u.at(6, 7) = 1.0;
  return u;
}

DenseUnitary controlled_s() {
  DenseUnitary u = DenseUnitary::identity(4);
  u.at(3, 3) = kI;
  return u;
}

DenseUnitary controlled_s_dagger() {
  DenseUnitary u = DenseUnitary::identity(4);
  u.at(3, 3) = -kI;
  return u;
}

DenseUnitary controlled_matrix(const DenseUnitary& base) {
  DenseUnitary u = DenseUnitary::identity(2 * base.dim);
  for (int r = 0; r < base.dim; ++r) {
    for (int c = 0; c < base.dim; ++c) {
      u.at(base.dim + r, base.dim + c) = base.at(r, c);
    }
  }
  return u;
}

Circuit append_toffoli_star(Circuit c, int x, int y, int target) {
  for (const Gate& g : toffoli_star_gates(x, y, target)) c = c.appended(g);
  return c;
}

Circuit append_toffoli_star_dagger(Circuit c, int x, int y, int target) {
  auto gates = toffoli_star_gates(x, y, target);
  for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
    Gate g = *it;
    g.kind = invert_kind(g.kind);
    c = c.appended(g);
  }
  return c;
}

Circuit build_toffoli_star() {
  return append_toffoli_star(Circuit(3, 0), 0, 1, 2);
}

Circuit build_toffoli_star_dagger() {
  return append_toffoli_star_dagger(Circuit(3, 0), 0, 1, 2);
}

Circuit build_four_t_toffoli() {
  Circuit c = Circuit(4, 1).with_init(3, InitState::zero);
  c = append_toffoli_star(std::move(c), 0, 1, 3);
  c = c.appended(Gate::single(GateKind::S, 3));
  c = c.appended(Gate::cnot(3, 2));
  c = c.appended(Gate::single(GateKind::H, 3));
  c = c.appended(Gate::measure_z(3, 0));
  c = c.appended(Gate::conditional(0, Gate::cz(0, 1)));
  return c;
}

Circuit build_error_detecting_toffoli() {
  // Target (q2) copied into the bit-flip-code partner q3; the two almost-
  // Toffolis act one per code qubit, and the decode CNOT routes any T-gate
  // Z fault into the syndrome bit.
  Circuit c = Circuit(4, 1).with_init(3, InitState::zero);
  c = c.appended(Gate::cnot(2, 3));
  c = append_toffoli_star(std::move(c), 0, 1, 2);
  c = append_toffoli_star_dagger(std::move(c), 0, 1, 3);
  c = c.appended(Gate::cnot(2, 3));
  c = c.appended(Gate::measure_z(3, 0));
  return c;
}

Circuit build_ancilla_prep() {
  Circuit c = build_error_detecting_toffoli();
  c = c.with_init(0, InitState::plus);
  c = c.with_init(1, InitState::plus);
  c = c.with_init(2, InitState::zero);
  return c;
}

StateVector toffoli_ancilla_state() {
  StateVector v;
  v.qubit_count = 3;
  v.amplitudes.assign(8, 0.0);
  v.amplitudes[0b000] = 0.5;
  v.amplitudes[0b010] = 0.5;
  v.amplitudes[0b100] = 0.5;
  v.amplitudes[0b111] = 0.5;
  return v;
}

namespace {

// Teleportation of data (da, db, dc) through an ancilla block (e1, e2, e3)
// holding sum_xy |x, y, xy>/2; `bit0` is the first classical bit to use.
Circuit append_consumption(Circuit c, int da, int db, int dc, int e1, int e2,
                           int e3, int bit0) {
  c = c.appended(Gate::cnot(da, e1));
  c = c.appended(Gate::measure_z(e1, bit0));
  c = c.appended(Gate::conditional(bit0, Gate::cnot(e2, e3)));
  c = c.appended(Gate::cnot(db, e2));
  c = c.appended(Gate::measure_z(e2, bit0 + 1));
  c = c.appended(Gate::conditional(bit0 + 1, Gate::cnot(da, e3)));
  c = c.appended(Gate::cnot(e3, dc));
  c = c.appended(Gate::single(GateKind::H, e3));
  c = c.appended(Gate::measure_z(e3, bit0 + 2));
  c = c.appended(Gate::conditional(bit0 + 2, Gate::cz(da, db)));
  return c;
}

}  // namespace

Circuit build_ancilla_consumption() {
  return append_consumption(Circuit(6, 3), 0, 1, 2, 3, 4, 5, 0);
}

Circuit build_teleported_toffoli() {
  Circuit c = Circuit(7, 4)
                  .with_init(3, InitState::plus)
                  .with_init(4, InitState::plus)
                  .with_init(5, InitState::zero)
                  .with_init(6, InitState::zero);
  c = c.appended(Gate::cnot(5, 6));
  c = append_toffoli_star(std::move(c), 3, 4, 5);
  c = append_toffoli_star_dagger(std::move(c), 3, 4, 6);
  c = c.appended(Gate::cnot(5, 6));
  c = c.appended(Gate::measure_z(6, 0));
  return append_consumption(std::move(c), 0, 1, 2, 3, 4, 5, 1);
}

Circuit build_standard_seven_t_toffoli() {
  Circuit c(3, 0);
  c = c.appended(Gate::single(GateKind::H, 2));
  c = c.appended(Gate::cnot(1, 2));
  c = c.appended(Gate::single(GateKind::Tdg, 2));
  c = c.appended(Gate::cnot(0, 2));
  c = c.appended(Gate::single(GateKind::T, 2));
  c = c.appended(Gate::cnot(1, 2));
  c = c.appended(Gate::single(GateKind::Tdg, 2));
  c = c.appended(Gate::cnot(0, 2));
  c = c.appended(Gate::single(GateKind::T, 1));
  c = c.appended(Gate::single(GateKind::T, 2));
  c = c.appended(Gate::single(GateKind::H, 2));
  c = c.appended(Gate::cnot(0, 1));
  c = c.appended(Gate::single(GateKind::T, 0));
  c = c.appended(Gate::single(GateKind::Tdg, 1));
  c = c.appended(Gate::cnot(0, 1));
  return c;
}

std::vector<int> controlled_gate_data_qubits(const ControlledGate& g) {
  int base_wires = 0;
  for (int d = g.base.dim; d > 1; d >>= 1) ++base_wires;
  std::vector<int> qubits;
  for (int q = 0; q <= base_wires; ++q) qubits.push_back(q);
  return qubits;
}

DenseUnitary full_unitary(const ControlledGate& g) {
  return controlled_matrix(g.base);
}

namespace {

ControlledGate make_primitive(const DenseUnitary& base, const Gate& g2) {
  ControlledGate out;
  out.base = base;
  out.realization = Circuit(2, 0).appended(g2);
  out.t_cost = 0;
  out.verified = gadget_implements(out.realization, controlled_matrix(base),
                                   {0, 1})
                     .pass;
  return out;
}

}  // namespace

ControlledGate controlled_not_gate() {
  DenseUnitary x;
  x.dim = 2;
  x.entries = {0.0, 1.0, 1.0, 0.0};
  return make_primitive(x, Gate::cnot(0, 1));
}

ControlledGate controlled_z_gate() {
  DenseUnitary z;
  z.dim = 2;
  z.entries = {1.0, 0.0, 0.0, -1.0};
  return make_primitive(z, Gate::cz(0, 1));
}

ControlledGate extend_control(const ControlledGate& g) {
  if (!g.verified) {
    throw CircuitError("extend_control requires a verified controlled gate");
  }
  int base_wires = 0;
  for (int d = g.base.dim; d > 1; d >>= 1) ++base_wires;

  const Circuit& inner = g.realization;
  const int inner_qubits = inner.qubit_count();
  const int inner_bits = inner.classical_count();

  // New layout: 0 = x, 1 = y, 2..base_wires+1 = base wires, then the fresh
  // ancilla, then the inner realization's own ancillas.
  const int ancilla = base_wires + 2;
  auto remap = [&](int q) {
    if (q == 0) return ancilla;       // inner control rides on the ancilla
    if (q <= base_wires) return q + 1;
    return q + 2;                     // inner ancillas shift past x and a
  };

  Circuit c(inner_qubits + 2, inner_bits + 1);
  c = c.with_init(ancilla, InitState::zero);
  for (int q = base_wires + 1; q < inner_qubits; ++q) {
    c = c.with_init(remap(q), inner.init(q));
  }

  c = append_toffoli_star(std::move(c), 0, 1, ancilla);
  c = c.appended(Gate::single(GateKind::S, ancilla));
  for (Gate gate : inner.gates()) {
    gate.a = remap(gate.a);
    if (gate.b >= 0) gate.b = remap(gate.b);
    c = c.appended(gate);
  }
  c = c.appended(Gate::single(GateKind::H, ancilla));
  c = c.appended(Gate::measure_z(ancilla, inner_bits));
  c = c.appended(Gate::conditional(inner_bits, Gate::cz(0, 1)));

  ControlledGate out;
  out.base = controlled_matrix(g.base);
  out.realization = std::move(c);
  out.t_cost = g.t_cost + 4;
  out.verified =
      gadget_implements(out.realization, controlled_matrix(out.base),
                        controlled_gate_data_qubits(out))
          .pass;
  return out;
}

ControlledGate build_multi_controlled(const ControlledGate& g, int n) {
  if (n < 0) throw CircuitError("control count must be non-negative");
  ControlledGate out = g;
  for (int i = 0; i < n; ++i) out = extend_control(out);
  return out;
}

}  // namespace tofkit
